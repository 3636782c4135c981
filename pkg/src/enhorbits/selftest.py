"""Registry of formula-vs-oracle cross-checks.

Each suite exhaustively exercises one documented invariant at its configured
size and returns ``(ok, detail)``.  The CLI ``selftest`` command runs them
all; the test suite runs them through pytest and separately asserts that the
registry stays in sync with the documented invariants.
"""

from __future__ import annotations

import itertools
import random

from . import bipartitions as bp
from . import matrices as mx
from . import partitions as pt
from . import quiver as qv
from . import signed as sg

TRANSPOSE_MAX = 12
NSTAT_MAX = 12
COVERS_MAX = 9
ORBIT_DIM_MAX = 6
MOVES_CLOSURE_MAX = 8
MOVE_DELTA_MAX = 8
CODIM1_MAX = 7
PROJECTION_MAX = 7
SIGNED_SPLIT_MAX = 10
SQ_SUM_MAX = 8
SQ_ENUM_MAX = 7
SQ_PERM_MAX = 7
TRANSFER_MAX = 5
PAIR_BOUND_MAX = 8
SQ_ORACLE_MAX = 6
MEMBERSHIP_MAX = 5
ROUNDTRIP_PAIR_MAX = 7
ROUNDTRIP_ENH_MAX = 6
STRATA_MAX = 4  # explicit records; the layered checks continue to UNENHANCED_MAX
UNENHANCED_MAX = 6


def _fail(detail: str) -> tuple[bool, str]:
    return False, detail


def _ok(detail: str = "") -> tuple[bool, str]:
    return True, detail


def _all_bipartitions(max_n: int, min_n: int = 0):
    for n in range(min_n, max_n + 1):
        yield from bp.enumerate_bipartitions(n)


def transpose_involution() -> tuple[bool, str]:
    count = 0
    for n in range(TRANSPOSE_MAX + 1):
        for lam in pt.enumerate_partitions(n):
            if pt.transpose(pt.transpose(lam)) != lam:
                return _fail(f"transpose not involutive on {lam}")
            count += 1
    return _ok(f"{count} partitions")


def n_stat_formulas_agree() -> tuple[bool, str]:
    # n_stat itself asserts the two formulas agree; just sweep it
    count = 0
    for n in range(NSTAT_MAX + 1):
        for lam in pt.enumerate_partitions(n):
            pt.n_stat(lam)
            count += 1
    return _ok(f"{count} partitions")


def _dominance_below(lam):
    n = sum(lam)
    return [q for q in pt.enumerate_partitions(n) if pt.dominance_leq(q, lam)]


def covers_generate_dominance() -> tuple[bool, str]:
    for n in range(COVERS_MAX + 1):
        universe = pt.enumerate_partitions(n)
        reach = {lam: {lam} for lam in universe}
        for lam in universe:
            brute = {
                q
                for q in _dominance_below(lam)
                if q != lam
                and not any(
                    r != lam and r != q and pt.dominance_leq(q, r)
                    for r in _dominance_below(lam)
                )
            }
            direct = set(pt.partition_covers(lam))
            if direct != brute:
                return _fail(f"covers({lam}) = {direct} but brute force {brute}")
        # transitive closure of covers must equal the order itself
        closure = {lam: {lam} for lam in universe}
        changed = True
        while changed:
            changed = False
            for lam in universe:
                new = set()
                for q in closure[lam]:
                    for c in pt.partition_covers(q):
                        if c not in closure[lam]:
                            new.add(c)
                if new:
                    closure[lam] |= new
                    changed = True
        for lam in universe:
            order = {q for q in universe if pt.dominance_leq(q, lam)}
            if closure[lam] != order:
                return _fail(f"cover closure mismatch at {lam}")
    return _ok(f"all sizes <= {COVERS_MAX}")


def nilpotent_dim_matches_oracle() -> tuple[bool, str]:
    count = 0
    for n in range(1, ORBIT_DIM_MAX + 1):
        for lam in pt.enumerate_partitions(n):
            point = mx.point_from_bipartition(bp.Bipartition((), lam))
            got = mx.orbit_dim_enhanced(point)
            want = pt.nilpotent_orbit_dim(lam, n)
            if got != want:
                return _fail(f"{lam}: oracle {got} != formula {want}")
            count += 1
    return _ok(f"{count} orbits")


def moves_generate_closure_order() -> tuple[bool, str]:
    for n in range(MOVES_CLOSURE_MAX + 1):
        universe = bp.enumerate_bipartitions(n)
        below = {
            b: {c for c in universe if c != b and bp.biorder_leq(c, b)}
            for b in universe
        }
        for b in universe:
            brute = {
                c
                for c in below[b]
                if not any(c != d and bp.biorder_leq(c, d) for d in below[b])
            }
            direct = {m.result for m in bp.degeneration_moves(b)}
            if direct != brute:
                return _fail(f"moves({b}) = {direct} but brute force {brute}")
        closure = {b: {b} for b in universe}
        changed = True
        while changed:
            changed = False
            for b in universe:
                new = set()
                for q in closure[b]:
                    for m in bp.degeneration_moves(q):
                        if m.result not in closure[b]:
                            new.add(m.result)
                if new:
                    closure[b] |= new
                    changed = True
        for b in universe:
            if closure[b] != below[b] | {b}:
                return _fail(f"move closure mismatch at {b}")
    return _ok(f"all sizes <= {MOVES_CLOSURE_MAX}")


def moves_strictly_drop_dimension() -> tuple[bool, str]:
    for b in _all_bipartitions(MOVE_DELTA_MAX):
        dim_b = bp.enhanced_orbit_dim(b)
        for m in bp.degeneration_moves(b):
            dim_r = bp.enhanced_orbit_dim(m.result)
            if dim_r >= dim_b:
                return _fail(f"{b} -> {m.result} does not drop dimension")
            if dim_r + sum(m.result.mu) > dim_b + sum(b.mu):
                return _fail(f"{b} -> {m.result}: first degeneration bound fails")
            lhs = sum(m.result.mu) - pt.n_stat(bp.bipartition_sum(m.result))
            rhs = sum(b.mu) - pt.n_stat(bp.bipartition_sum(b))
            if lhs > rhs:
                return _fail(f"{b} -> {m.result}: second degeneration bound fails")
    return _ok(f"all sizes <= {MOVE_DELTA_MAX}")


def move_delta_by_type() -> tuple[bool, str]:
    for b in _all_bipartitions(MOVE_DELTA_MAX):
        for m in bp.degeneration_moves(b):
            delta = bp.degeneration_delta(b, m)
            if m.move_type in (1, 2) and delta < 1:
                return _fail(f"{b} type {m.move_type} delta {delta} < 1")
            if m.move_type == 3 and delta != m.boxes_moved:
                return _fail(f"{b} type 3 delta {delta} != {m.boxes_moved}")
            if m.move_type == 4 and delta != 0:
                return _fail(f"{b} type 4 delta {delta} != 0")
    return _ok(f"all sizes <= {MOVE_DELTA_MAX}")


def codim1_boundary_classified() -> tuple[bool, str]:
    for b in _all_bipartitions(CODIM1_MAX, min_n=1):
        universe = bp.enumerate_bipartitions(bp.size(b))
        dim_b = bp.enhanced_orbit_dim(b)
        scan = {
            c
            for c in universe
            if c != b
            and bp.biorder_leq(c, b)
            and dim_b - bp.enhanced_orbit_dim(c) == 1
        }
        got = set(bp.codim1_boundary(b))
        if got != scan:
            return _fail(f"codim1({b}) = {got} but scan {scan}")
        for c in got:
            if bp.codim1_class(b, c) is None:
                return _fail(f"{c} in codim1({b}) fits neither slice family")
    return _ok(f"all sizes <= {CODIM1_MAX}")


def closure_projects_to_dominance() -> tuple[bool, str]:
    for n in range(PROJECTION_MAX + 1):
        universe = bp.enumerate_bipartitions(n)
        for a, b in itertools.combinations(universe, 2):
            for lo, hi in ((a, b), (b, a)):
                if bp.biorder_leq(lo, hi) and not pt.dominance_leq(
                    bp.bipartition_sum(lo), bp.bipartition_sum(hi)
                ):
                    return _fail(f"{lo} <= {hi} but row sums incomparable")
    return _ok(f"all sizes <= {PROJECTION_MAX}")


def signed_split_preserves_rows() -> tuple[bool, str]:
    count = 0
    for n in range(SIGNED_SPLIT_MAX + 1):
        for sp in sg.enumerate_signed_partitions(n):
            plus, minus, _ = sg.subordinate_pair(sp)
            if sum(plus) + sum(minus) != n:
                return _fail(f"{sp}: subordinate sizes do not add up")
            lam, eps = sp
            split = sorted(
                ((v + 1) // 2 if e == "+" else v // 2, v - ((v + 1) // 2 if e == "+" else v // 2))
                for v, e in zip(lam, eps)
            )
            direct = sorted(
                zip(
                    list(plus) + [0] * (len(lam) - len(plus)),
                    list(minus) + [0] * (len(lam) - len(minus)),
                )
            )
            del direct  # row multiset check below
            rows = sorted(p + m for p, m in split)
            if rows != sorted(lam):
                return _fail(f"{sp}: rows not preserved")
            count += 1
    return _ok(f"{count} signed partitions")


def sq_subordinate_sums() -> tuple[bool, str]:
    for n in range(SQ_SUM_MAX + 1):
        for sq in sg._all_sq(n):
            plus, minus, _ = sg.sq_subordinates(sq)
            lam_plus, lam_minus, _ = sg.subordinate_pair(sg.sq_forget_vector(sq))
            if bp.bipartition_sum(plus) != lam_plus:
                return _fail(f"{sq}: '+' subordinate sums wrong")
            if bp.bipartition_sum(minus) != lam_minus:
                return _fail(f"{sq}: '-' subordinate sums wrong")
    return _ok(f"all sizes <= {SQ_SUM_MAX}")


def _sq_brute_scan(total: int):
    """Independent enumeration: every split of every row with every sign."""
    found = []
    for lam in pt.enumerate_partitions(total):
        length = len(lam)
        for mu in itertools.product(*(range(v + 1) for v in lam)):
            nu = tuple(l - m for l, m in zip(lam, mu))
            for eps in itertools.product("+-", repeat=length):
                try:
                    found.append(sg.validate_sq(mu, nu, "".join(eps)))
                except sg.InvalidDiagramError:
                    continue
    return found


def sq_enumeration_crosscheck() -> tuple[bool, str]:
    for n in range(SQ_ENUM_MAX + 1):
        brute = set(_sq_brute_scan(n))
        fast = set(sg._all_sq(n))
        if brute != fast:
            return _fail(f"size {n}: enumerations differ by {brute ^ fast}")
        by_sig: dict = {}
        for sq in brute:
            by_sig.setdefault(sg.sq_signature(sq), set()).add(sq)
        for (d, dp), members in by_sig.items():
            if set(sg.enumerate_sq(d, dp)) != members:
                return _fail(f"signature ({d},{dp}) bucket mismatch")
    return _ok(f"all sizes <= {SQ_ENUM_MAX}")


def sq_rearrangement_choice_invariance() -> tuple[bool, str]:
    for n in range(SQ_PERM_MAX + 1):
        for sq in sg._all_sq(n):
            mplus, mminus, nplus, nminus = sg._tilde_counts(sq)
            totals = tuple(m + v for m, v in zip(mminus, nminus))
            target = tuple(sorted(totals, reverse=True))
            groups: dict = {}
            for i, tot in enumerate(totals):
                groups.setdefault(tot, []).append(i)
            base = sg.sq_subordinates(sq)[1]
            for perm in _orderings(groups, target):
                mm = tuple(mminus[i] for i in perm)
                nn = tuple(nminus[i] for i in perm)
                if sg._rectify(mm, nn) != base:
                    return _fail(
                        f"{sq}: permutation {perm} changes the '-' subordinate"
                    )
    return _ok(f"all sizes <= {SQ_PERM_MAX}")


def _orderings(groups: dict, target):
    """All row orders realizing the sorted totals (product of within-group orders)."""
    slots: dict = {}
    for pos, tot in enumerate(target):
        slots.setdefault(tot, []).append(pos)
    perms_per_value = [
        itertools.permutations(groups[tot]) for tot in sorted(groups, reverse=True)
    ]
    values = sorted(groups, reverse=True)
    for combo in itertools.product(*perms_per_value):
        perm = [None] * len(target)
        for value, ordering in zip(values, combo):
            for pos, idx in zip(slots[value], ordering):
                perm[pos] = idx
        yield tuple(perm)


def transfer_image_maximality() -> tuple[bool, str]:
    for b in _all_bipartitions(TRANSFER_MAX, min_n=1):
        d = bp.size(b)
        lam_len = len(bp.bipartition_sum(b))
        for direction, r in (
            ("enlarge_nu", lam_len),
            ("enlarge_mu", max(lam_len, len(b.nu) + 1)),
        ):
            dprime = d + r
            want = sg.transfer_image(b, d, dprime, direction)
            plus_wanted = "smaller" if direction == "enlarge_nu" else "larger"
            candidates = []
            for sq in sg.enumerate_sq(d, dprime) if plus_wanted == "smaller" else sg.enumerate_sq(dprime, d):
                plus, minus, _ = sg.sq_subordinates(sq)
                small, big = (plus, minus) if plus_wanted == "smaller" else (minus, plus)
                if bp.biorder_leq(small, b):
                    candidates.append(big)
            if want not in candidates:
                return _fail(f"{b} {direction}: {want} not among images")
            if not all(bp.biorder_leq(c, want) for c in candidates):
                return _fail(f"{b} {direction}: {want} is not the maximum")
    return _ok(f"all sizes <= {TRANSFER_MAX}")


def enhanced_dim_formula_vs_oracle() -> tuple[bool, str]:
    count = 0
    for b in _all_bipartitions(ORBIT_DIM_MAX):
        got = mx.orbit_dim_enhanced(mx.point_from_bipartition(b))
        want = bp.enhanced_orbit_dim(b)
        if got != want:
            return _fail(f"{b}: oracle {got} != formula {want}")
        count += 1
    return _ok(f"{count} orbits")


def pair_dim_bound_exactness() -> tuple[bool, str]:
    for n in range(1, PAIR_BOUND_MAX + 1):
        for sp in sg.enumerate_signed_partitions(n):
            d, dp = sg.sp_signature(sp)
            bound, exact = sg.pair_orbit_dim_bound(sp, d, dp)
            got = mx.orbit_dim_pair(mx.point_from_signed_partition(sp))
            if got > bound:
                return _fail(f"{sp}: oracle {got} exceeds bound {bound}")
            if (got == bound) != exact:
                return _fail(
                    f"{sp}: equality {got == bound} but rearrangement flag {exact}"
                )
    return _ok(f"all sizes <= {PAIR_BOUND_MAX}")


def sq_projection_compatibility() -> tuple[bool, str]:
    for n in range(SQ_ORACLE_MAX + 1):
        for sq in sg._all_sq(n):
            plus, minus, _ = sg.sq_subordinates(sq)
            v, x, y = mx.point_from_sq(sq)
            down = mx.EnhancedPoint(v, y @ x)
            if mx.type_of_enhanced_point(down) != plus:
                return _fail(f"{sq}: vector-side projection type wrong")
            up = mx.EnhancedPoint(x.apply(v), x @ y)
            if mx.type_of_enhanced_point(up) != minus:
                return _fail(f"{sq}: other-side projection type wrong")
            if mx.type_of_pair(mx.PairPoint(x, y)) != sg.sq_forget_vector(sq):
                return _fail(f"{sq}: forgetting the vector loses the label")
    return _ok(f"all sizes <= {SQ_ORACLE_MAX}")


def pair_dim_identity() -> tuple[bool, str]:
    for n in range(SQ_ORACLE_MAX + 1):
        for sq in sg._all_sq(n):
            point = mx.point_from_sq(sq)
            whole = mx.orbit_dim_enhanced_pair(point)
            base = mx.orbit_dim_pair(mx.PairPoint(point.x, point.y))
            extra = mx.pair_commutant_vector_dim(point)
            if whole != base + extra:
                return _fail(f"{sq}: {whole} != {base} + {extra}")
    return _ok(f"all sizes <= {SQ_ORACLE_MAX}")


def vector_commutant_dim_is_mu() -> tuple[bool, str]:
    for b in _all_bipartitions(SQ_ORACLE_MAX):
        got = mx.commutant_vector_dim(mx.point_from_bipartition(b))
        if got != sum(b.mu):
            return _fail(f"{b}: commutant span {got} != {sum(b.mu)}")
    return _ok(f"all sizes <= {SQ_ORACLE_MAX}")


def pair_vector_commutant_inequality() -> tuple[bool, str]:
    for n in range(SQ_ORACLE_MAX + 1):
        for sq in sg._all_sq(n):
            point = mx.point_from_sq(sq)
            pair_dim = mx.pair_commutant_vector_dim(point)
            single_dim = mx.commutant_vector_dim(
                mx.EnhancedPoint(point.v, point.y @ point.x)
            )
            if pair_dim > single_dim:
                return _fail(f"{sq}: {pair_dim} > {single_dim}")
    return _ok(f"all sizes <= {SQ_ORACLE_MAX}")


def enhanced_pair_dim_inequalities() -> tuple[bool, str]:
    for n in range(SQ_ORACLE_MAX + 1):
        for sq in sg._all_sq(n):
            d, dp = sg.sq_signature(sq)
            plus, minus, _ = sg.sq_subordinates(sq)
            dim_c = mx.orbit_dim_enhanced_pair(mx.point_from_sq(sq))
            dim_plus = bp.enhanced_orbit_dim(plus)
            dim_minus = bp.enhanced_orbit_dim(minus)
            p_dim = pt.nilpotent_orbit_dim(bp.bipartition_sum(plus), d)
            pp_dim = pt.nilpotent_orbit_dim(bp.bipartition_sum(minus), dp)
            bound1 = 2 * dim_plus + (pp_dim - p_dim) + 2 * d * dp
            bound2 = (
                2 * dim_minus
                + (p_dim - pp_dim)
                + 2 * (sum(plus.mu) - sum(minus.mu))
                + 2 * d * dp
            )
            if 2 * dim_c > bound1 or 2 * dim_c > bound2:
                return _fail(f"{sq}: pair dimension bounds violated")
    return _ok(f"all sizes <= {SQ_ORACLE_MAX}")


def pair_type_roundtrip() -> tuple[bool, str]:
    count = 0
    for n in range(ROUNDTRIP_PAIR_MAX + 1):
        for sp in sg.enumerate_signed_partitions(n):
            if mx.type_of_pair(mx.point_from_signed_partition(sp)) != sp:
                return _fail(f"{sp}: pair type does not round-trip")
            count += 1
    return _ok(f"{count} signed partitions")


def enhanced_type_roundtrip() -> tuple[bool, str]:
    count = 0
    for b in _all_bipartitions(ROUNDTRIP_ENH_MAX):
        if mx.type_of_enhanced_point(mx.point_from_bipartition(b)) != b:
            return _fail(f"{b}: enhanced type does not round-trip")
        count += 1
    return _ok(f"{count} bipartitions")


def membership_matches_closure() -> tuple[bool, str]:
    for n in range(1, MEMBERSHIP_MAX + 1):
        universe = bp.enumerate_bipartitions(n)
        for b in universe:
            lam = bp.bipartition_sum(b)
            mu1 = b.mu[0] if b.mu else 0
            pi = pt.partition(bp.termwise_sum(b.mu[1:], b.nu))
            for c in universe:
                point = mx.point_from_bipartition(c)
                if bp.bipartition_sum(c) == lam:
                    want = bp.biorder_leq(c, b)
                    if mx.membership_U_lambda(point, b) != want:
                        return _fail(f"slice test ({c}) in closure({b}) wrong")
                c_mu1 = c.mu[0] if c.mu else 0
                c_pi = pt.partition(bp.termwise_sum(c.mu[1:], c.nu))
                if c_mu1 == mu1 and c_pi == pi:
                    want = bp.biorder_leq(c, b)
                    if mx.membership_U_mpi(point, b) != want:
                        return _fail(f"cyclic test ({c}) in closure({b}) wrong")
    return _ok(f"all sizes <= {MEMBERSHIP_MAX}")


def rank_engine_reference() -> tuple[bool, str]:
    """Pitted against a plain fraction-based elimination on random inputs."""
    from fractions import Fraction

    def rank_reference(m: mx.Matrix) -> int:
        rows = [[Fraction(v) for v in r] for r in m.rows]
        rank = 0
        for c in range(m.ncols):
            sel = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
            if sel is None:
                continue
            rows[rank], rows[sel] = rows[sel], rows[rank]
            pv = rows[rank][c]
            for r in range(len(rows)):
                if r != rank and rows[r][c]:
                    f = rows[r][c] / pv
                    rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
            rank += 1
        return rank

    rng = random.Random(20240901)
    for trial in range(200):
        nr = rng.randint(0, 8)
        nc = rng.randint(1, 8)
        rows = [[rng.choice([-1, 0, 0, 1]) for _ in range(nc)] for _ in range(nr)]
        m = mx.Matrix(rows, nc)
        if mx.rank_exact(m) != rank_reference(m):
            return _fail(f"trial {trial}: ranks disagree on {rows}")
    return _ok("200 random matrices")


def phi_image_dominance() -> tuple[bool, str]:
    for b in _all_bipartitions(UNENHANCED_MAX, min_n=1):
        for image in qv.reachable_phi_images(b):
            if not bp.biorder_leq(image, b):
                return _fail(f"{b}: stratum image {image} escapes closure")
            lam = bp.bipartition_sum(b)
            if pt.n_stat(bp.bipartition_sum(image)) < pt.n_stat(lam):
                return _fail(f"{b}: image moment statistic decreased")
    return _ok(f"all sizes <= {UNENHANCED_MAX}")


def stratum_bounds_chain() -> tuple[bool, str]:
    # records for small cases, the layered max for the rest
    for b in _all_bipartitions(STRATA_MAX, min_n=1):
        q = qv.quiver_data(b)
        for rec in qv.enumerate_strata(q):
            if rec.dim_exact > rec.dim_bound:
                return _fail(f"{b}: stratum beats its bound")
    for b in _all_bipartitions(UNENHANCED_MAX, min_n=1):
        slack = qv.max_bound_slack(b)
        if slack > 0:
            return _fail(f"{b}: some stratum beats its bound by {slack}")
    return _ok(f"records <= {STRATA_MAX}, layered max <= {UNENHANCED_MAX}")


def stratum_signature_links() -> tuple[bool, str]:
    # inspect every edge of the layered link graph; no chain walking needed
    for b in _all_bipartitions(UNENHANCED_MAX, min_n=1):
        q = qv.quiver_data(b)
        layers = qv._reachable_layers(q)
        for j in range(q.t):
            if j in q.marked:
                want = (q.dims_u[j + 1], q.dims_u[j])
            else:
                want = (q.dims_u[j], q.dims_u[j + 1])
            for lower in layers[j]:
                if bp.size(lower) != q.dims_u[j]:
                    return _fail(f"{b}: link at level {j} has the wrong size")
                for sq, upper in qv._level_groups(q, j).get(lower, ()):
                    if tuple(sg.sq_signature(sq)) != want:
                        return _fail(f"{b}: slice {j} signature mismatch")
                    if bp.size(upper) != q.dims_u[j + 1]:
                        return _fail(f"{b}: link at level {j + 1} has the wrong size")
    return _ok(f"all sizes <= {UNENHANCED_MAX}")


def unenhanced_strata_specialization() -> tuple[bool, str]:
    for n in range(1, UNENHANCED_MAX + 1):
        for lam in pt.enumerate_partitions(n):
            b = bp.Bipartition((), lam)
            rep = qv.verify_conjecture(b)
            if not rep.all_passed():
                return _fail(f"(;{lam}): a baseline claim fails")
            d_r, d_ri = qv.naive_dims(qv.quiver_data(b))
            if d_r != d_ri or rep.max_dim != d_r:
                return _fail(f"(;{lam}): expected top dimension {d_r}")
    return _ok(f"all nilpotent types <= {UNENHANCED_MAX}")


def codim1_counterexample_regression() -> tuple[bool, str]:
    """A codimension-1 stratum whose image orbit has codimension 3."""
    b = bp.bipartition((2, 1), (1,))
    q = qv.quiver_data(b)
    xi = (
        sg.validate_sq((1,), (0,), "+"),
        sg.validate_sq((1, 0), (1, 1), "+-"),
        sg.validate_sq((1, 1), (2, 2), "++"),
    )
    match = [rec for rec in qv.enumerate_strata(q) if rec.xi == xi]
    if len(match) != 1:
        return _fail("expected exactly one stratum with the recorded diagrams")
    rec = match[0]
    _, d_ri = qv.naive_dims(q)
    if d_ri - rec.dim_exact != 1:
        return _fail(f"stratum codimension {d_ri - rec.dim_exact} != 1")
    if not rec.in_smooth_locus:
        return _fail("stratum should pass the smooth-locus row test")
    image = rec.phi_image
    if image != bp.bipartition((1, 1), (1, 1)):
        return _fail(f"image {image} unexpected")
    codim = bp.enhanced_orbit_dim(b) - bp.enhanced_orbit_dim(image)
    if codim != 3:
        return _fail(f"image codimension {codim} != 3")
    return _ok("codim-1 stratum with codim-3 image confirmed")


SUITES: list[tuple[str, callable]] = [
    ("transpose-involution", transpose_involution),
    ("n-stat-formulas-agree", n_stat_formulas_agree),
    ("covers-generate-dominance", covers_generate_dominance),
    ("nilpotent-dim-matches-oracle", nilpotent_dim_matches_oracle),
    ("moves-generate-closure-order", moves_generate_closure_order),
    ("moves-strictly-drop-dimension", moves_strictly_drop_dimension),
    ("move-delta-by-type", move_delta_by_type),
    ("codim1-boundary-classified", codim1_boundary_classified),
    ("closure-projects-to-dominance", closure_projects_to_dominance),
    ("signed-split-preserves-rows", signed_split_preserves_rows),
    ("sq-subordinate-sums", sq_subordinate_sums),
    ("sq-enumeration-crosscheck", sq_enumeration_crosscheck),
    ("sq-rearrangement-choice-invariance", sq_rearrangement_choice_invariance),
    ("transfer-image-maximality", transfer_image_maximality),
    ("enhanced-dim-formula-vs-oracle", enhanced_dim_formula_vs_oracle),
    ("pair-dim-bound-exactness", pair_dim_bound_exactness),
    ("sq-projection-compatibility", sq_projection_compatibility),
    ("pair-dim-identity", pair_dim_identity),
    ("vector-commutant-dim-is-mu", vector_commutant_dim_is_mu),
    ("pair-vector-commutant-inequality", pair_vector_commutant_inequality),
    ("enhanced-pair-dim-inequalities", enhanced_pair_dim_inequalities),
    ("pair-type-roundtrip", pair_type_roundtrip),
    ("enhanced-type-roundtrip", enhanced_type_roundtrip),
    ("membership-matches-closure", membership_matches_closure),
    ("rank-engine-reference", rank_engine_reference),
    ("phi-image-dominance", phi_image_dominance),
    ("stratum-bounds-chain", stratum_bounds_chain),
    ("stratum-signature-links", stratum_signature_links),
    ("unenhanced-strata-specialization", unenhanced_strata_specialization),
    ("codim1-counterexample-regression", codim1_counterexample_regression),
]


def run_all(report=print) -> bool:
    all_ok = True
    for name, suite in SUITES:
        ok, detail = suite()
        all_ok &= ok
        status = "ok" if ok else "FAIL"
        report(f"{status:4s} {name}" + (f": {detail}" if detail else ""))
    return all_ok
