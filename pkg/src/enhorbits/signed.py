"""Signed partitions and signed quasibipartitions.

A signed partition fills the rows of a Young diagram with alternating '+'
and '-' boxes, the sign of each row's first box recorded in ``eps``.  A
signed quasibipartition is the two-sided variant: each row has ``mu_i``
boxes left of a wall and ``nu_i`` to the right, with every box immediately
left of the wall a '+'.  Erasing all boxes of one sign and tidying up yields
the subordinate shapes, which is how these diagrams talk to the bipartition
world.
"""

from __future__ import annotations

import json
from functools import cache
from typing import NamedTuple

from .bipartitions import Bipartition, bipartition, biorder_leq, size as bp_size
from .partitions import (
    SizeMismatchError,
    enumerate_partitions,
    nilpotent_orbit_dim,
    partition,
)

__all__ = [
    "SignedPartition",
    "SignedQuasibipartition",
    "Signature",
    "InvalidDiagramError",
    "signed_partition",
    "subordinate_pair",
    "sp_signature",
    "enumerate_signed_partitions",
    "pair_orbit_dim_bound",
    "forced_sign",
    "validate_sq",
    "sq_signature",
    "sq_subordinates",
    "sq_forget_vector",
    "enumerate_sq",
    "sq_generic_predicate",
    "sq_codim1_predicate",
    "transfer_image",
    "row_signs",
    "sq_to_json",
    "sq_from_json",
    "sq_ascii",
]


class SignedPartition(NamedTuple):
    lam: tuple[int, ...]
    eps: str


class SignedQuasibipartition(NamedTuple):
    mu: tuple[int, ...]  # per-row boxes left of the wall, length = number of rows
    nu: tuple[int, ...]  # per-row boxes right of the wall, same length
    eps: str  # sign of the first box of each row


class Signature(NamedTuple):
    plus_count: int
    minus_count: int


class InvalidDiagramError(ValueError):
    """A candidate diagram violates one of the defining rules."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


NOT_QUASIPARTITION = "not_quasipartition"
SUM_NOT_PARTITION = "sum_not_partition"
ORDERING_VIOLATED = "ordering_violated"
FORCED_SIGN_CONTRADICTED = "forced_sign_contradicted"
MALFORMED = "malformed"

_FLIP = {"+": "-", "-": "+"}


def _check_ordering(lam: tuple[int, ...], eps: str) -> None:
    # among rows of equal length, '+' rows must sit above '-' rows
    for i in range(len(lam) - 1):
        if lam[i] == lam[i + 1] and eps[i] == "-" and eps[i + 1] == "+":
            raise InvalidDiagramError(
                ORDERING_VIOLATED,
                f"row {i + 2} starts '+' above an equal-length '-' row",
            )


def signed_partition(lam, eps) -> SignedPartition:
    """Validate and canonicalize a signed partition."""
    lam = partition(lam)
    eps = "".join(eps)
    if len(eps) != len(lam) or any(ch not in "+-" for ch in eps):
        raise InvalidDiagramError(MALFORMED, f"bad sign sequence {eps!r} for {lam!r}")
    _check_ordering(lam, eps)
    return SignedPartition(lam, eps)


def subordinate_pair(sp: SignedPartition) -> tuple[tuple[int, ...], tuple[int, ...], bool]:
    """Split a signed partition into its '+' and '-' row counts.

    The '+' side is a partition as it stands; the '-' side may need its rows
    re-sorted, reported by the third component.
    """
    lam, eps = signed_partition(*sp)
    plus = tuple(
        (v + 1) // 2 if e == "+" else v // 2 for v, e in zip(lam, eps)
    )
    minus_raw = tuple(v - p for v, p in zip(lam, plus))
    rearranged = any(
        minus_raw[i] < minus_raw[i + 1] for i in range(len(minus_raw) - 1)
    )
    return (
        partition(plus),
        partition(sorted(minus_raw, reverse=True)),
        rearranged,
    )


def sp_signature(sp: SignedPartition) -> Signature:
    plus, minus, _ = subordinate_pair(sp)
    return Signature(sum(plus), sum(minus))


@cache
def enumerate_signed_partitions(n: int) -> tuple[SignedPartition, ...]:
    """All signed partitions with n boxes, in a fixed deterministic order."""
    out = []
    for lam in enumerate_partitions(n):
        for eps in _sign_choices(lam, [None] * len(lam)):
            out.append(SignedPartition(lam, eps))
    return tuple(out)


def pair_orbit_dim_bound(sp: SignedPartition, d: int, dprime: int) -> tuple[int, bool]:
    """Upper bound for the dimension of the two-space orbit labelled by sp.

    The bound is half the sum of the two one-space orbit dimensions plus
    d*d'; it is attained exactly when no row re-sorting happened on the '-'
    side, which is the second return value.
    """
    plus, minus, rearranged = subordinate_pair(sp)
    if (sum(plus), sum(minus)) != (d, dprime):
        raise SizeMismatchError(
            f"signature {(sum(plus), sum(minus))} != ({d}, {dprime})"
        )
    a = nilpotent_orbit_dim(plus, d)
    b = nilpotent_orbit_dim(minus, dprime)
    assert (a + b) % 2 == 0
    return (a + b) // 2 + d * dprime, not rearranged


# ---------------------------------------------------------------------------
# signed quasibipartitions


def _is_quasipartition(seq) -> bool:
    # entries may rise, but never by more than 1 above any earlier entry
    lo = None
    for v in seq:
        if v < 0:
            return False
        if lo is not None and v > lo + 1:
            return False
        lo = v if lo is None else min(lo, v)
    return True


def forced_sign(mu, nu, i: int) -> str | None:
    """Sign forced on row i by the diagram shape, or None when free."""
    if mu[i] >= 1:
        return "+" if mu[i] % 2 == 1 else "-"
    if any(nu[j] == nu[i] - 1 for j in range(i)):
        return "-"
    if any(mu[j] == 1 for j in range(i + 1, len(mu))):
        return "-"
    return None


def validate_sq(mu, nu, eps) -> SignedQuasibipartition:
    """Validate a signed quasibipartition, reporting the first broken rule."""
    mu = tuple(int(v) for v in mu)
    nu = tuple(int(v) for v in nu)
    if any(v < 0 for v in mu) or any(v < 0 for v in nu):
        raise InvalidDiagramError(MALFORMED, "negative row counts")
    length = max(len(mu), len(nu))
    mu = mu + (0,) * (length - len(mu))
    nu = nu + (0,) * (length - len(nu))
    while length and mu[length - 1] == 0 and nu[length - 1] == 0:
        length -= 1
    mu, nu = mu[:length], nu[:length]
    if not _is_quasipartition(mu) or not _is_quasipartition(nu):
        raise InvalidDiagramError(NOT_QUASIPARTITION, f"{mu!r} / {nu!r}")
    lam = tuple(m + n for m, n in zip(mu, nu))
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)) or 0 in lam:
        raise InvalidDiagramError(SUM_NOT_PARTITION, f"row sums {lam!r}")
    eps = "".join(eps)
    if len(eps) != length or any(ch not in "+-" for ch in eps):
        raise InvalidDiagramError(MALFORMED, f"bad sign sequence {eps!r}")
    for i in range(length):
        want = forced_sign(mu, nu, i)
        if want is not None and eps[i] != want:
            raise InvalidDiagramError(
                FORCED_SIGN_CONTRADICTED,
                f"row {i + 1} must carry {want!r}",
            )
    _check_ordering(lam, eps)
    return SignedQuasibipartition(mu, nu, eps)


def _tilde_counts(sq: SignedQuasibipartition):
    """Per-row '+'/'-' box counts on each side of the wall."""
    mu, nu, eps = sq
    mplus = tuple((m + 1) // 2 for m in mu)
    mminus = tuple(m - p for m, p in zip(mu, mplus))
    nplus = tuple(
        (n + 1) // 2 if (m == 0 and e == "+") else n // 2
        for m, n, e in zip(mu, nu, eps)
    )
    nminus = tuple(n - p for n, p in zip(nu, nplus))
    return mplus, mminus, nplus, nminus


def sq_signature(sq: SignedQuasibipartition) -> Signature:
    mplus, mminus, nplus, nminus = _tilde_counts(sq)
    return Signature(sum(mplus) + sum(nplus), sum(mminus) + sum(nminus))


def _rectify(mt, nt) -> Bipartition:
    # push a left-side row count up by one where a lower row sticks out past
    # it, or an upper row's right side falls short; then rebalance the rows
    out = []
    for i in range(len(mt)):
        bump = any(mt[j] == mt[i] + 1 for j in range(i + 1, len(mt))) or any(
            nt[j] == nt[i] - 1 for j in range(i)
        )
        out.append(mt[i] + 1 if bump else mt[i])
    lam = [m + n for m, n in zip(mt, nt)]
    return bipartition(out, [l - m for l, m in zip(lam, out)])


def sq_subordinates(sq: SignedQuasibipartition) -> tuple[Bipartition, Bipartition, bool]:
    """The bipartitions left after erasing all '-' boxes, resp. all '+' boxes.

    The '-' side rows are re-sorted (stable, by total, descending) when their
    totals come out of order; the third component reports whether that
    happened.
    """
    sq = validate_sq(*sq)
    mplus, mminus, nplus, nminus = _tilde_counts(sq)
    raw_minus_total = tuple(m + n for m, n in zip(mminus, nminus))
    rearranged = any(
        raw_minus_total[i] < raw_minus_total[i + 1]
        for i in range(len(raw_minus_total) - 1)
    )
    order = sorted(range(len(raw_minus_total)), key=lambda i: -raw_minus_total[i])
    mminus_s = tuple(mminus[i] for i in order)
    nminus_s = tuple(nminus[i] for i in order)
    return _rectify(mplus, nplus), _rectify(mminus_s, nminus_s), rearranged


def sq_forget_vector(sq: SignedQuasibipartition) -> SignedPartition:
    """Collapse the wall: the signed partition of row totals."""
    sq = validate_sq(*sq)
    return signed_partition(tuple(m + n for m, n in zip(sq.mu, sq.nu)), sq.eps)


def _sign_choices(lam, forced):
    """Sign strings compatible with the row ordering rule and forced entries.

    Within each run of equal-length rows the signs must read '+'* then '-'*,
    so the choices per run are the cut positions compatible with ``forced``.
    """
    runs = []
    start = 0
    for i in range(1, len(lam) + 1):
        if i == len(lam) or lam[i] != lam[start]:
            runs.append((start, i))
            start = i

    def rec(ri: int, prefix: str):
        if ri == len(runs):
            yield prefix
            return
        a, b = runs[ri]
        for cut in range(a, b + 1):
            signs = "+" * (cut - a) + "-" * (b - cut)
            if all(
                forced[a + k] is None or forced[a + k] == signs[k]
                for k in range(b - a)
            ):
                yield from rec(ri + 1, prefix + signs)

    yield from rec(0, "")


@cache
def _all_sq(total: int) -> tuple[SignedQuasibipartition, ...]:
    """Every signed quasibipartition with the given number of boxes."""
    out = []
    big = total + 1
    for lam in enumerate_partitions(total):
        length = len(lam)

        def splits(i: int, acc: list[int], min_mu: int, min_nu: int):
            if i == length:
                yield tuple(acc)
                return
            lo = max(0, lam[i] - (min_nu + 1))
            hi = min(lam[i], min_mu + 1)
            for m in range(lo, hi + 1):
                acc.append(m)
                yield from splits(i + 1, acc, min(min_mu, m), min(min_nu, lam[i] - m))
                acc.pop()

        for mu in splits(0, [], big, big):
            nu = tuple(l - m for l, m in zip(lam, mu))
            forced = [forced_sign(mu, nu, i) for i in range(length)]
            for eps in _sign_choices(lam, forced):
                out.append(SignedQuasibipartition(mu, nu, eps))
    out.sort(key=lambda s: (tuple(m + n for m, n in zip(s.mu, s.nu)), s.mu, s.eps))
    return tuple(out)


@cache
def enumerate_sq(d: int, dprime: int) -> tuple[SignedQuasibipartition, ...]:
    """All signed quasibipartitions with d '+' boxes and d' '-' boxes."""
    want = Signature(d, dprime)
    return tuple(s for s in _all_sq(d + dprime) if sq_signature(s) == want)


def row_signs(sq: SignedQuasibipartition, i: int) -> str:
    """Signs of row i's boxes, left to right across the wall."""
    mu, nu, eps = sq
    length = mu[i] + nu[i]
    sign = eps[i]
    out = []
    for _ in range(length):
        out.append(sign)
        sign = _FLIP[sign]
    return "".join(out)


def _row_ends(sq: SignedQuasibipartition):
    mu, nu, eps = sq
    for i in range(len(mu)):
        length = mu[i] + nu[i]
        first = eps[i]
        last = first if length % 2 == 1 else _FLIP[first]
        yield first, last


def _has_wall_end_row(sq: SignedQuasibipartition) -> bool:
    # some row stops at the wall: its last box sits immediately left of it
    return any(m >= 1 and n == 0 for m, n in zip(sq.mu, sq.nu))


def sq_generic_predicate(sq: SignedQuasibipartition, side_of_vector: str) -> bool:
    """Row test satisfied exactly by the diagrams of full-rank slices.

    ``side_of_vector`` says which space the distinguished vector lives in:
    "plus_is_smaller" when the '+' boxes span the smaller space of the slice,
    "plus_is_larger" when they span the larger one.
    """
    sq = validate_sq(*sq)
    if side_of_vector == "plus_is_smaller":
        return all(f == "-" and l == "-" for f, l in _row_ends(sq))
    if side_of_vector == "plus_is_larger":
        return (
            all(f == "+" and l == "+" for f, l in _row_ends(sq))
            and _has_wall_end_row(sq)
        )
    raise ValueError(f"unknown side_of_vector {side_of_vector!r}")


def sq_codim1_predicate(sq: SignedQuasibipartition, side_of_vector: str) -> bool:
    """Weaker row test cutting out the smooth locus."""
    sq = validate_sq(*sq)
    ends = list(_row_ends(sq))
    if side_of_vector == "plus_is_smaller":
        return all(f == "-" for f, _ in ends) or all(l == "-" for _, l in ends)
    if side_of_vector == "plus_is_larger":
        return (
            all(f == "+" for f, _ in ends) and _has_wall_end_row(sq)
        ) or all(l == "+" for _, l in ends)
    raise ValueError(f"unknown side_of_vector {side_of_vector!r}")


def transfer_image(b: Bipartition, d: int, dprime: int, direction: str) -> Bipartition:
    """Image of b's closure after a round trip through a larger space.

    Growing through maps into a space of dimension d' = d + r pads one side
    of b with a column of r boxes: the right side for "enlarge_nu" (needs
    r >= number of rows of mu+nu), the left for "enlarge_mu" (additionally
    needs r > number of rows of nu).
    """
    b = bipartition(*b)
    if bp_size(b) != d:
        raise SizeMismatchError(f"|{b}| != {d}")
    r = dprime - d
    lam_len = max(len(b.mu), len(b.nu))
    if r < lam_len:
        raise ValueError(f"need r = {r} >= {lam_len} rows")
    if direction == "enlarge_nu":
        nu = tuple((b.nu[i] if i < len(b.nu) else 0) + 1 for i in range(r))
        return bipartition(b.mu, nu)
    if direction == "enlarge_mu":
        if r <= len(b.nu):
            raise ValueError(f"need r = {r} > {len(b.nu)} rows of nu")
        mu = tuple((b.mu[i] if i < len(b.mu) else 0) + 1 for i in range(r))
        return bipartition(mu, b.nu)
    raise ValueError(f"unknown direction {direction!r}")


def sq_to_json(sq: SignedQuasibipartition) -> dict:
    return {"mu": list(sq.mu), "nu": list(sq.nu), "eps": sq.eps}


def sq_from_json(obj) -> SignedQuasibipartition:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return validate_sq(obj["mu"], obj["nu"], obj["eps"])


def sq_ascii(sq: SignedQuasibipartition) -> str:
    """Back-to-back picture with the wall drawn as a double bar."""
    sq = validate_sq(*sq)
    width = max(sq.mu, default=0)
    lines = []
    for i in range(len(sq.mu)):
        signs = row_signs(sq, i)
        left = "".join(f"[{s}]" for s in signs[: sq.mu[i]])
        right = "".join(f"[{s}]" for s in signs[sq.mu[i] :])
        lines.append(" " * (3 * (width - sq.mu[i])) + left + "‖" + right)
    return "\n".join(lines)
