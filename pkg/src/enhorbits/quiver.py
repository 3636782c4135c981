"""Chains of linear maps attached to a bipartition, and their stratification.

A bipartition determines column lengths ``r_0 <= ... <= r_{t-1}`` and a set
``I`` marking which columns came from the left of the wall.  The associated
variety of chains carries a stratification indexed by compatible sequences
of signed quasibipartitions; each stratum's exact dimension is a sum of
rank-oracle orbit dimensions, and the headline conjecture bounds them all by
the expected dimension of the whole chain variety.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cache

from .bipartitions import (
    Bipartition,
    bipartition,
    bipartition_sum,
    biorder_leq,
    enhanced_orbit_dim,
    format_bipartition,
    size as bp_size,
    sort_key,
)
from .matrices import (
    Matrix,
    orbit_dim_enhanced_pair,
    point_from_sq,
    rank_exact,
)
from .partitions import n_stat, partition, transpose
from .signed import (
    SignedQuasibipartition,
    enumerate_sq,
    sq_codim1_predicate,
    sq_generic_predicate,
    sq_subordinates,
    sq_to_json,
)
from typing import NamedTuple

__all__ = [
    "QuiverData",
    "StratumRecord",
    "quiver_data",
    "bipartition_of",
    "naive_dims",
    "enumerate_strata",
    "stratum_dim_exact",
    "stratum_dim_bound",
    "stratum_is_generic",
    "stratum_in_smooth_locus",
    "phi_image",
    "ConjectureReport",
    "verify_conjecture",
    "GenericChain",
    "ChainConstructionError",
    "generic_point_jacobian",
]


class QuiverData(NamedTuple):
    r: tuple[int, ...]  # weakly increasing column lengths, length t
    marked: frozenset[int]  # indices whose column lies left of the wall
    t: int
    dims_u: tuple[int, ...]  # dims_u[i] = r_0 + ... + r_{i-1}, length t + 1


def quiver_data(b: Bipartition) -> QuiverData:
    """Column data (r_i) and marker set derived from a bipartition.

    Among equal column lengths the marked ("left of wall") positions sit
    leftmost, which pins the set down uniquely.
    """
    b = bipartition(*b)
    if bp_size(b) < 1:
        raise ValueError("bipartition must be nonempty")
    lam = bipartition_sum(b)
    t = lam[0]
    lam_t = transpose(lam)
    r = tuple(lam_t[t - 1 - i] for i in range(t))
    mu_cols = list(transpose(b.mu))
    marked = set()
    for value in set(r):
        positions = [i for i, ri in enumerate(r) if ri == value]
        take = sum(1 for c in mu_cols if c == value)
        marked.update(positions[:take])
    dims = [0]
    for ri in r:
        dims.append(dims[-1] + ri)
    return QuiverData(r, frozenset(marked), t, tuple(dims))


def bipartition_of(q: QuiverData) -> Bipartition:
    """Inverse of :func:`quiver_data`."""
    mu_cols = sorted((q.r[i] for i in q.marked), reverse=True)
    nu_cols = sorted(
        (q.r[i] for i in range(q.t) if i not in q.marked), reverse=True
    )
    return Bipartition(transpose(partition(mu_cols)), transpose(partition(nu_cols)))


def naive_dims(q: QuiverData) -> tuple[int, int]:
    """Coordinates minus equations, without and with the vector chain."""
    d_r = sum(q.dims_u[i] ** 2 for i in range(1, q.t)) + 2 * sum(
        q.r[i] * q.r[j] for i in range(q.t) for j in range(i + 1, q.t)
    )
    return d_r, d_r + sum(q.r[i] for i in q.marked)


@dataclass
class StratumRecord:
    quiver: QuiverData
    xi: tuple[SignedQuasibipartition, ...]
    subordinates: tuple[Bipartition, ...]  # length t + 1, starts at the empty pair
    dim_exact: int = field(default=-1)
    dim_bound: int = field(default=-1)
    generic: bool = field(default=False)
    in_smooth_locus: bool = field(default=False)

    @property
    def phi_image(self) -> Bipartition:
        return self.subordinates[-1]

    def to_json(self) -> dict:
        return {
            "xi": [sq_to_json(s) for s in self.xi],
            "subordinates": [
                {"mu": list(s.mu), "nu": list(s.nu)} for s in self.subordinates
            ],
            "dim_exact": self.dim_exact,
            "dim_bound": self.dim_bound,
            "generic": self.generic,
            "in_smooth_locus": self.in_smooth_locus,
            "phi_image": format_bipartition(self.phi_image),
        }


def _vector_side(q: QuiverData, j: int) -> str:
    return "plus_is_larger" if j in q.marked else "plus_is_smaller"


@cache
def _grouped_by_lower(plus_dim: int, minus_dim: int, lower_is_plus: bool):
    """Members of a signed-quasibipartition set bucketed by one subordinate."""
    groups: dict[Bipartition, list] = {}
    for sq in enumerate_sq(plus_dim, minus_dim):
        plus_bp, minus_bp, _ = sq_subordinates(sq)
        lower, upper = (plus_bp, minus_bp) if lower_is_plus else (minus_bp, plus_bp)
        groups.setdefault(lower, []).append((sq, upper))
    return groups


def _level_groups(q: QuiverData, j: int):
    if j in q.marked:
        return _grouped_by_lower(q.dims_u[j + 1], q.dims_u[j], False)
    return _grouped_by_lower(q.dims_u[j], q.dims_u[j + 1], True)


def _iter_chains(q: QuiverData):
    """Depth-first walk over compatible diagram sequences."""
    empty = Bipartition((), ())
    stack_xi: list[SignedQuasibipartition] = []
    stack_sub: list[Bipartition] = [empty]

    def rec(j: int):
        if j == q.t:
            yield tuple(stack_xi), tuple(stack_sub)
            return
        for sq, upper in _level_groups(q, j).get(stack_sub[-1], ()):
            stack_xi.append(sq)
            stack_sub.append(upper)
            yield from rec(j + 1)
            stack_xi.pop()
            stack_sub.pop()

    yield from rec(0)


@cache
def _dim_c(sq: SignedQuasibipartition) -> int:
    return orbit_dim_enhanced_pair(point_from_sq(sq))


def stratum_dim_exact(rec: StratumRecord) -> int:
    """Sum over slices of (pair-orbit dimension - lower orbit dimension)."""
    return sum(
        _dim_c(rec.xi[j]) - enhanced_orbit_dim(rec.subordinates[j])
        for j in range(rec.quiver.t)
    )


def stratum_dim_bound(rec: StratumRecord) -> int:
    """Combinatorial upper bound for the stratum dimension."""
    q = rec.quiver
    lam = bipartition_sum(bipartition_of(q))
    d_r, _ = naive_dims(q)
    total = d_r + n_stat(lam) - n_stat(bipartition_sum(rec.subordinates[q.t]))
    for i in range(1, q.t + 1):
        weight = sum(rec.subordinates[i].mu)
        if i in q.marked and (i - 1) not in q.marked:
            total -= weight
        elif i not in q.marked and (i - 1) in q.marked:
            total += weight
    return total


def stratum_is_generic(rec: StratumRecord) -> bool:
    q = rec.quiver
    return all(
        sq_generic_predicate(rec.xi[j], _vector_side(q, j)) for j in range(q.t)
    )


def stratum_in_smooth_locus(rec: StratumRecord) -> bool:
    q = rec.quiver
    return all(
        sq_codim1_predicate(rec.xi[j], _vector_side(q, j)) for j in range(q.t)
    )


def phi_image(rec: StratumRecord) -> Bipartition:
    """Orbit hit by collapsing a chain to its top vector and map."""
    return rec.subordinates[-1]


def _build_record(q: QuiverData, xi, subs) -> StratumRecord:
    rec = StratumRecord(q, xi, subs)
    rec.dim_exact = stratum_dim_exact(rec)
    rec.dim_bound = stratum_dim_bound(rec)
    rec.generic = stratum_is_generic(rec)
    rec.in_smooth_locus = stratum_in_smooth_locus(rec)
    return rec


def enumerate_strata(q: QuiverData) -> list[StratumRecord]:
    """All strata of the chain variety, fully annotated."""
    records = [_build_record(q, xi, subs) for xi, subs in _iter_chains(q)]
    records.sort(key=lambda r: (-r.dim_exact, [sort_key(s) for s in r.subordinates]))
    return records


@dataclass
class PartResult:
    passed: bool
    witnesses: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"passed": self.passed, "witnesses": self.witnesses}


@dataclass
class ConjectureReport:
    bipartition: Bipartition
    expected_dim: int
    stratum_count: int
    max_dim: int
    part1: PartResult
    part2: PartResult
    part3: PartResult
    unique_max: bool
    max_is_generic: bool

    def parts_passed(self) -> tuple[bool, bool, bool]:
        return (self.part1.passed, self.part2.passed, self.part3.passed)

    def all_passed(self, parts=(1, 2, 3)) -> bool:
        flags = self.parts_passed()
        return all(flags[p - 1] for p in parts)

    def to_json(self) -> dict:
        return {
            "bipartition": format_bipartition(self.bipartition),
            "expected_dim": self.expected_dim,
            "stratum_count": self.stratum_count,
            "max_dim": self.max_dim,
            "part1": self.part1.to_json(),
            "part2": self.part2.to_json(),
            "part3": self.part3.to_json(),
            "unique_max": self.unique_max,
            "max_is_generic": self.max_is_generic,
        }


_WITNESS_CAP = 5

_EMPTY = Bipartition((), ())


def _edge_weight(sq: SignedQuasibipartition, lower: Bipartition) -> int:
    return _dim_c(sq) - enhanced_orbit_dim(lower)


def _reachable_layers(q: QuiverData) -> list[set[Bipartition]]:
    """Forward-reachable chain links, one set per level 0..t."""
    layers = [{_EMPTY}]
    for j in range(q.t):
        groups = _level_groups(q, j)
        nxt = set()
        for lower in layers[j]:
            for _, upper in groups.get(lower, ()):
                nxt.add(upper)
        layers.append(nxt)
    return layers


def _weight_distribution(q: QuiverData):
    """Stratum-dimension tallies without walking individual chains.

    A stratum is a source-to-top path in the layered link graph and its
    dimension a sum of per-level weights, so counts by (dimension, flags)
    follow from one forward pass.  Flags record whether some level's diagram
    fails the full-rank row test, resp. the smooth-locus row test.
    """
    state: dict[Bipartition, dict[tuple[int, bool, bool], int]] = {
        _EMPTY: {(0, False, False): 1}
    }
    for j in range(q.t):
        groups = _level_groups(q, j)
        side = _vector_side(q, j)
        nxt: dict[Bipartition, dict[tuple[int, bool, bool], int]] = {}
        for lower, dist in state.items():
            for sq, upper in groups.get(lower, ()):
                w = _edge_weight(sq, lower)
                nongeneric = not sq_generic_predicate(sq, side)
                nonsmooth = not sq_codim1_predicate(sq, side)
                target = nxt.setdefault(upper, {})
                for (acc, badg, bads), count in dist.items():
                    key = (acc + w, badg or nongeneric, bads or nonsmooth)
                    target[key] = target.get(key, 0) + count
        state = nxt
    return state


def _witness_paths(q: QuiverData, target: int, bad_edge, cap: int = _WITNESS_CAP):
    """Up to ``cap`` chains of total weight ``target``; if ``bad_edge`` is
    given, each must use at least one edge where it holds."""
    layers = _reachable_layers(q)
    any_rest: list[dict[Bipartition, set[int]]] = [dict() for _ in range(q.t + 1)]
    bad_rest: list[dict[Bipartition, set[int]]] = [dict() for _ in range(q.t + 1)]
    for node in layers[q.t]:
        any_rest[q.t][node] = {0}
        bad_rest[q.t][node] = set()
    for j in range(q.t - 1, -1, -1):
        groups = _level_groups(q, j)
        side = _vector_side(q, j)
        for lower in layers[j]:
            total_any: set[int] = set()
            total_bad: set[int] = set()
            for sq, upper in groups.get(lower, ()):
                w = _edge_weight(sq, lower)
                ups_any = any_rest[j + 1].get(upper, set())
                total_any |= {w + s for s in ups_any}
                if bad_edge is not None and bad_edge(sq, side):
                    total_bad |= {w + s for s in ups_any}
                else:
                    total_bad |= {
                        w + s for s in bad_rest[j + 1].get(upper, set())
                    }
            any_rest[j][lower] = total_any
            bad_rest[j][lower] = total_bad

    found: list[tuple] = []
    xi_acc: list[SignedQuasibipartition] = []
    sub_acc: list[Bipartition] = [_EMPTY]

    def rec(j: int, acc: int, has_bad: bool):
        if len(found) >= cap:
            return
        node = sub_acc[-1]
        rest = target - acc
        feasible = (
            any_rest[j].get(node, set())
            if (has_bad or bad_edge is None)
            else bad_rest[j].get(node, set())
        )
        if rest not in feasible:
            return
        if j == q.t:
            found.append((tuple(xi_acc), tuple(sub_acc)))
            return
        side = _vector_side(q, j)
        for sq, upper in _level_groups(q, j).get(node, ()):
            xi_acc.append(sq)
            sub_acc.append(upper)
            rec(
                j + 1,
                acc + _edge_weight(sq, node),
                has_bad or (bad_edge is not None and bad_edge(sq, side)),
            )
            xi_acc.pop()
            sub_acc.pop()
            if len(found) >= cap:
                return

    rec(0, 0, False)
    return [_build_record(q, xi, subs) for xi, subs in found]


def verify_conjecture(b: Bipartition) -> ConjectureReport:
    """Check the three stratum-dimension claims for one bipartition.

    Part 1: no stratum exceeds the expected dimension.  Part 2: exactly one
    stratum attains it, and its diagrams all pass the full-rank row test.
    Part 3: every stratum one below it lies in the smooth locus.  Failures
    are reported as witness data, never raised.
    """
    b = bipartition(*b)
    q = quiver_data(b)
    _, d_expected = naive_dims(q)
    final = _weight_distribution(q)
    count = 0
    max_dim = 0
    by_weight: dict[int, int] = {}
    bad_generic_at: dict[int, int] = {}
    bad_smooth_at: dict[int, int] = {}
    for dist in final.values():
        for (w, badg, bads), c in dist.items():
            count += c
            max_dim = max(max_dim, w)
            by_weight[w] = by_weight.get(w, 0) + c
            if badg:
                bad_generic_at[w] = bad_generic_at.get(w, 0) + c
            if bads:
                bad_smooth_at[w] = bad_smooth_at.get(w, 0) + c

    part1_ok = max_dim <= d_expected
    over = []
    if not part1_ok:
        for w in sorted(by_weight, reverse=True):
            if w <= d_expected or len(over) >= _WITNESS_CAP:
                break
            over.extend(
                r.to_json()
                for r in _witness_paths(q, w, None, _WITNESS_CAP - len(over))
            )
    part1 = PartResult(part1_ok, over)

    unique_max = max_dim == d_expected and by_weight.get(d_expected, 0) == 1
    max_is_generic = unique_max and bad_generic_at.get(d_expected, 0) == 0
    part2_witnesses = []
    if not (unique_max and max_is_generic):
        part2_witnesses.append(
            {
                "max_dim": max_dim,
                "strata_at_max": by_weight.get(max_dim, 0),
                "examples": [
                    r.to_json() for r in _witness_paths(q, max_dim, None, 2)
                ],
            }
        )
    part2 = PartResult(unique_max and max_is_generic, part2_witnesses)

    part3_ok = bad_smooth_at.get(d_expected - 1, 0) == 0
    codim1_bad = []
    if not part3_ok:
        codim1_bad = [
            r.to_json()
            for r in _witness_paths(
                q,
                d_expected - 1,
                lambda sq, side: not sq_codim1_predicate(sq, side),
            )
        ]
    part3 = PartResult(part3_ok, codim1_bad)

    return ConjectureReport(
        bipartition=b,
        expected_dim=d_expected,
        stratum_count=count,
        max_dim=max_dim,
        part1=part1,
        part2=part2,
        part3=part3,
        unique_max=unique_max,
        max_is_generic=max_is_generic,
    )


def reachable_phi_images(b: Bipartition) -> set[Bipartition]:
    """All orbits hit by collapsing some stratum (top links of the graph)."""
    b = bipartition(*b)
    q = quiver_data(b)
    return _reachable_layers(q)[q.t]


def max_bound_slack(b: Bipartition) -> int:
    """Max over strata of (exact dimension - combinatorial bound), via the
    same layered-path reading of both quantities.  Nonpositive means the
    bound holds for every stratum."""
    b = bipartition(*b)
    q = quiver_data(b)
    lam = bipartition_sum(b)
    d_r, _ = naive_dims(q)
    best: dict[Bipartition, int] = {_EMPTY: 0}
    for j in range(q.t):
        groups = _level_groups(q, j)
        nxt: dict[Bipartition, int] = {}
        for lower, acc in best.items():
            for sq, upper in groups.get(lower, ()):
                w = acc + _edge_weight(sq, lower)
                i = j + 1
                weight = sum(upper.mu)
                if i in q.marked and (i - 1) not in q.marked:
                    w += weight  # bound subtracts it, slack adds it back
                elif i not in q.marked and (i - 1) in q.marked:
                    w -= weight
                if i == q.t:
                    w += n_stat(bipartition_sum(upper))
                if upper not in nxt or w > nxt[upper]:
                    nxt[upper] = w
        best = nxt
    return max(best.values()) - d_r - n_stat(lam)


# ---------------------------------------------------------------------------
# explicit generic chain and the defining-equation Jacobian


class ChainConstructionError(RuntimeError):
    """The descending-vector construction left the required subspace."""

    def __init__(self, index: int, message: str):
        super().__init__(message)
        self.index = index


@dataclass
class GenericChain:
    quiver: QuiverData
    us: tuple[tuple[int, ...], ...]  # u_i in the basis of U_i, length t + 1
    maps_in: tuple[Matrix, ...]  # A_i : U_i -> U_{i+1}
    maps_out: tuple[Matrix, ...]  # B_i : U_{i+1} -> U_i
    in_smooth_locus: bool


class JacobianResult(NamedTuple):
    chain: GenericChain
    corank: int


def generic_point_jacobian(b: Bipartition) -> JacobianResult:
    """Build the image-filtration chain through a normal-basis point and
    rank its defining-equation differential.

    ``U_i`` is the image of the (t-i)-th power of the nilpotent map; the
    vectors descend by applying the map at marked indices and by inclusion
    elsewhere (the inclusion step can fail, which raises
    :class:`ChainConstructionError` with the offending index).
    """
    from .matrices import point_from_bipartition

    b = bipartition(*b)
    q = quiver_data(b)
    lam = bipartition_sum(b)
    mu = b.mu + (0,) * (len(lam) - len(b.mu))
    t = q.t

    # box (i, c) with c <= lam_i - k spans the image of the k-th power
    boxes = [(i, c) for i in range(len(lam)) for c in range(1, lam[i] + 1)]
    level_boxes = [
        [box for box in boxes if box[1] <= lam[box[0]] - (t - i)] for i in range(t + 1)
    ]
    level_index = [
        {box: k for k, box in enumerate(lb)} for lb in level_boxes
    ]
    dims = [len(lb) for lb in level_boxes]
    assert tuple(dims) == q.dims_u, "image filtration does not match column data"

    maps_in = []
    maps_out = []
    for i in range(t):
        a = [[0] * dims[i] for _ in range(dims[i + 1])]
        for box, k in level_index[i].items():
            a[level_index[i + 1][box]][k] = 1
        maps_in.append(Matrix(a, dims[i]))
        bmat = [[0] * dims[i + 1] for _ in range(dims[i])]
        for box, k in level_index[i + 1].items():
            row, col = box
            if col >= 2:
                bmat[level_index[i][(row, col - 1)]][k] = 1
        maps_out.append(Matrix(bmat, dims[i + 1]))

    # vector chain, descending from v at the top
    top = {}
    for i in range(len(lam)):
        if mu[i] >= 1:
            top[(i, mu[i])] = 1
    u_boxes: list[dict] = [dict() for _ in range(t + 1)]
    u_boxes[t] = top
    for i in range(t - 1, -1, -1):
        current = u_boxes[i + 1]
        if i in q.marked:
            shifted = {}
            for (row, col), coeff in current.items():
                if col >= 2:
                    shifted[(row, col - 1)] = shifted.get((row, col - 1), 0) + coeff
            u_boxes[i] = shifted
        else:
            outside = [box for box in current if box not in level_index[i]]
            if outside:
                raise ChainConstructionError(
                    i,
                    f"vector at level {i + 1} has support outside level {i}: {outside}",
                )
            u_boxes[i] = dict(current)
    us = tuple(
        tuple(u_boxes[i].get(box, 0) for box in level_boxes[i]) for i in range(t + 1)
    )

    # the defining equations must hold on the nose
    for i in range(t):
        if i in q.marked:
            assert maps_out[i].apply(us[i + 1]) == us[i]
        else:
            assert maps_in[i].apply(us[i]) == us[i + 1]
    for i in range(1, t):
        assert maps_out[i] @ maps_in[i] == maps_in[i - 1] @ maps_out[i - 1]

    smooth = True
    for j in range(t):
        a_rank = rank_exact(maps_in[j])
        b_rank = rank_exact(maps_out[j])
        a_inj = a_rank == dims[j]
        b_surj = b_rank == dims[j]
        if j in q.marked:
            outside_image = (
                rank_exact(maps_in[j].augment_cols([us[j + 1]])) == a_rank + 1
            )
            if not ((a_inj and outside_image) or b_surj):
                smooth = False
        else:
            if not (a_inj or b_surj):
                smooth = False

    corank = _jacobian_corank(q, dims, us, maps_in, maps_out)
    chain = GenericChain(q, us, tuple(maps_in), tuple(maps_out), smooth)
    return JacobianResult(chain, corank)


def _jacobian_corank(q, dims, us, maps_in, maps_out) -> int:
    """Corank of the differential of the defining equations at the chain."""
    t = q.t
    # domain layout: u'_0..u'_t, then A'_i blocks, then B'_i blocks
    u_off = []
    pos = 0
    for i in range(t + 1):
        u_off.append(pos)
        pos += dims[i]
    a_off = []
    for i in range(t):
        a_off.append(pos)
        pos += dims[i + 1] * dims[i]
    b_off = []
    for i in range(t):
        b_off.append(pos)
        pos += dims[i] * dims[i + 1]
    ncols = pos

    # codomain layout: one vector equation per index, then bracket blocks
    vec_rows = {}
    nrows = 0
    for i in range(t):
        vec_rows[i] = nrows
        nrows += dims[i] if i in q.marked else dims[i + 1]
    end_rows = {}
    for i in range(1, t):
        end_rows[i] = nrows
        nrows += dims[i] * dims[i]

    m = [[0] * ncols for _ in range(nrows)]

    def a_col(i, r, c):  # entry (r, c) of A'_i, r in U_{i+1}, c in U_i
        return a_off[i] + r * dims[i] + c

    def b_col(i, r, c):  # entry (r, c) of B'_i, r in U_i, c in U_{i+1}
        return b_off[i] + r * dims[i + 1] + c

    for i in range(t):
        base = vec_rows[i]
        if i in q.marked:
            # B'_i u_{i+1} + B_i u'_{i+1} - u'_i  in U_i
            for r in range(dims[i]):
                for c in range(dims[i + 1]):
                    if us[i + 1][c]:
                        m[base + r][b_col(i, r, c)] += us[i + 1][c]
                    if maps_out[i].rows[r][c]:
                        m[base + r][u_off[i + 1] + c] += maps_out[i].rows[r][c]
                m[base + r][u_off[i] + r] -= 1
        else:
            # A'_i u_i + A_i u'_i - u'_{i+1}  in U_{i+1}
            for r in range(dims[i + 1]):
                for c in range(dims[i]):
                    if us[i][c]:
                        m[base + r][a_col(i, r, c)] += us[i][c]
                    if maps_in[i].rows[r][c]:
                        m[base + r][u_off[i] + c] += maps_in[i].rows[r][c]
                m[base + r][u_off[i + 1] + r] -= 1

    for i in range(1, t):
        base = end_rows[i]
        di, dn = dims[i], dims[i + 1]
        dprev = dims[i - 1]
        arows = maps_in[i].rows  # A_i : U_i -> U_{i+1}
        brows = maps_out[i].rows  # B_i : U_{i+1} -> U_i
        aprev = maps_in[i - 1].rows  # A_{i-1} : U_{i-1} -> U_i
        bprev = maps_out[i - 1].rows  # B_{i-1} : U_i -> U_{i-1}
        for r in range(di):
            for s in range(di):
                row = base + r * di + s
                # (B'_i A_i)_{rs}: coefficient of B'_i[r, c] is A_i[c, s]
                for c in range(dn):
                    if arows[c][s]:
                        m[row][b_col(i, r, c)] += arows[c][s]
                    # (B_i A'_i)_{rs}: coefficient of A'_i[c, s] is B_i[r, c]
                    if brows[r][c]:
                        m[row][a_col(i, c, s)] += brows[r][c]
                for c in range(dprev):
                    # -(A'_{i-1} B_{i-1})_{rs}: coeff of A'_{i-1}[r, c] is B_{i-1}[c, s]
                    if bprev[c][s]:
                        m[row][a_col(i - 1, r, c)] -= bprev[c][s]
                    # -(A_{i-1} B'_{i-1})_{rs}: coeff of B'_{i-1}[c, s] is A_{i-1}[r, c]
                    if aprev[r][c]:
                        m[row][b_col(i - 1, c, s)] -= aprev[r][c]

    return nrows - rank_exact(Matrix(m, ncols))
