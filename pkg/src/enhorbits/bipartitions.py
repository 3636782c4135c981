"""Bipartition labels for vector-plus-nilpotent orbits: order, moves, dimensions.

A bipartition is an ordered pair of partitions ``(mu; nu)``; its diagram puts
the rows of ``mu`` left of a vertical wall (right-justified) and the rows of
``nu`` to the right.  The closure order, its four kinds of covering moves and
the dimension bookkeeping live here; the exact matrix realizations that
cross-check them live in :mod:`enhorbits.matrices`.
"""

from __future__ import annotations

import json
from functools import cache
from typing import NamedTuple

from .partitions import (
    SizeMismatchError,
    composition,
    format_partition,
    n_stat,
    parse_partition,
    partition,
    enumerate_partitions,
)

__all__ = [
    "Bipartition",
    "MoveRecord",
    "bipartition",
    "size",
    "bipartition_sum",
    "termwise_sum",
    "biorder_leq",
    "enhanced_orbit_dim",
    "degeneration_moves",
    "degeneration_delta",
    "codim1_boundary",
    "codim1_class",
    "enumerate_bipartitions",
    "sort_key",
    "parse_bipartition",
    "format_bipartition",
    "bipartition_to_json",
    "bipartition_from_json",
]


class Bipartition(NamedTuple):
    mu: tuple[int, ...]
    nu: tuple[int, ...]


class MoveRecord(NamedTuple):
    move_type: int  # 1..4
    result: Bipartition
    boxes_moved: int


def bipartition(mu, nu) -> Bipartition:
    return Bipartition(partition(mu), partition(nu))


def size(b: Bipartition) -> int:
    return sum(b.mu) + sum(b.nu)


def termwise_sum(a, b) -> tuple[int, ...]:
    """Termwise sum of two compositions (padded with zeros)."""
    n = max(len(a), len(b))
    return composition(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def bipartition_sum(b: Bipartition) -> tuple[int, ...]:
    """The partition mu + nu (termwise); always weakly decreasing."""
    b = bipartition(*b)
    return partition(termwise_sum(b.mu, b.nu))


def biorder_leq(a: Bipartition, b: Bipartition) -> bool:
    """Closure order on bipartitions of equal size.

    Requires, for every k >= 0, that the first k rows of a's diagram hold no
    more boxes than b's, and likewise after adding one more left-of-wall row.
    """
    a, b = bipartition(*a), bipartition(*b)
    if size(a) != size(b):
        raise SizeMismatchError(f"|{a}| != |{b}|")
    sa = termwise_sum(a.mu, a.nu)
    sb = termwise_sum(b.mu, b.nu)
    length = max(len(sa), len(sb), len(a.mu), len(b.mu)) + 1
    ta = tb = 0
    for k in range(length):
        next_a = a.mu[k] if k < len(a.mu) else 0
        next_b = b.mu[k] if k < len(b.mu) else 0
        if ta + next_a > tb + next_b:
            return False
        ta += sa[k] if k < len(sa) else 0
        tb += sb[k] if k < len(sb) else 0
        if ta > tb:
            return False
    return True


def enhanced_orbit_dim(b: Bipartition) -> int:
    """Orbit dimension: d^2 - d - 2 n(mu+nu) + |mu| with d the total size."""
    b = bipartition(*b)
    d = size(b)
    return d * d - d - 2 * n_stat(bipartition_sum(b)) + sum(b.mu)


def _partition_or_none(parts) -> tuple[int, ...] | None:
    out = list(parts)
    while out and out[-1] == 0:
        out.pop()
    if any(v < 0 for v in out):
        return None
    if any(out[i] < out[i + 1] for i in range(len(out) - 1)):
        return None
    return tuple(out)


def _single_box_drops(p: tuple[int, ...]):
    """All ways to move one box of p strictly down a row (not only covers)."""
    for i in range(len(p)):
        for j in range(i + 1, len(p) + 1):
            q = list(p)
            q[i] -= 1
            if j < len(q):
                q[j] += 1
            else:
                q.append(1)
            r = _partition_or_none(q)
            if r is not None:
                yield r


def _candidate_moves(b: Bipartition) -> dict[Bipartition, tuple[int, int]]:
    """Liberal generation of the four move shapes; covers are filtered later."""
    mu, nu = b
    cand: dict[Bipartition, tuple[int, int]] = {}

    for res in _single_box_drops(mu):  # type 1: box down, left of the wall
        cand[Bipartition(res, nu)] = (1, 1)
    for res in _single_box_drops(nu):  # type 2: box down, right of the wall
        cand[Bipartition(mu, res)] = (2, 1)

    # type 3: boxes in rows k..h hop from the wall's left side to its right
    for k in range(len(mu)):
        for h in range(k, len(mu)):
            mu2 = list(mu)
            nu2 = list(nu) + [0] * max(0, h + 1 - len(nu))
            for r in range(k, h + 1):
                mu2[r] -= 1
                nu2[r] += 1
            pm, pn = _partition_or_none(mu2), _partition_or_none(nu2)
            if pm is not None and pn is not None:
                cand[Bipartition(pm, pn)] = (3, h - k + 1)

    # type 4: boxes in rows k..h hop right-to-left landing one row lower
    for k in range(len(nu)):
        for h in range(k, len(nu)):
            nu2 = list(nu)
            mu2 = list(mu) + [0] * max(0, h + 2 - len(mu))
            for r in range(k, h + 1):
                nu2[r] -= 1
                mu2[r + 1] += 1
            pm, pn = _partition_or_none(mu2), _partition_or_none(nu2)
            if pm is not None and pn is not None:
                cand[Bipartition(pm, pn)] = (4, h - k + 1)

    cand.pop(b, None)
    return cand


@cache
def _moves_cached(b: Bipartition) -> tuple[MoveRecord, ...]:
    cand = _candidate_moves(b)
    below = {c: tb for c, tb in cand.items() if biorder_leq(c, b)}
    records = [
        MoveRecord(tb[0], c, tb[1])
        for c, tb in below.items()
        if not any(c != d and biorder_leq(c, d) for d in below)
    ]
    records.sort(key=lambda m: sort_key(m.result))
    return tuple(records)


def degeneration_moves(b: Bipartition) -> list[MoveRecord]:
    """All covering moves out of b, with their move type and box count."""
    return list(_moves_cached(bipartition(*b)))


def degeneration_delta(b: Bipartition, move: MoveRecord) -> int:
    """Drop of |mu| - n(mu+nu) along a covering move.

    Zero for type 4, the box count for type 3, and at least 1 for types 1, 2.
    """
    b = bipartition(*b)
    if move.result not in {m.result for m in degeneration_moves(b)}:
        raise ValueError(f"{move!r} is not a move out of {b}")
    rho, sigma = move.result
    return (sum(b.mu) - n_stat(bipartition_sum(b))) - (
        sum(rho) - n_stat(bipartition_sum(move.result))
    )


def codim1_boundary(b: Bipartition) -> list[Bipartition]:
    """Boundary orbits of codimension exactly 1 in the closure of b's orbit."""
    b = bipartition(*b)
    d = enhanced_orbit_dim(b)
    return [
        m.result
        for m in degeneration_moves(b)
        if d - enhanced_orbit_dim(m.result) == 1
    ]


def codim1_class(b: Bipartition, boundary: Bipartition) -> str | None:
    """Which smooth-slice family a boundary orbit of b belongs to.

    Returns "same_sum" when the row sums agree (single box crossed the wall in
    its own row), "same_head" when the first left row and the remaining shape
    agree (single box crossed and dropped a row), else None.
    """
    b = bipartition(*b)
    boundary = bipartition(*boundary)
    if bipartition_sum(boundary) == bipartition_sum(b):
        return "same_sum"
    mu1 = b.mu[0] if b.mu else 0
    rho1 = boundary.mu[0] if boundary.mu else 0
    pi_b = termwise_sum(b.mu[1:], b.nu)
    pi_r = termwise_sum(boundary.mu[1:], boundary.nu)
    if rho1 == mu1 and pi_r == pi_b:
        return "same_head"
    return None


@cache
def enumerate_bipartitions(n: int) -> tuple[Bipartition, ...]:
    """All bipartitions of n: |mu| descending, then reverse-lex on mu, then nu."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = []
    for a in range(n, -1, -1):
        for mu in enumerate_partitions(a):
            for nu in enumerate_partitions(n - a):
                out.append(Bipartition(mu, nu))
    return tuple(out)


def sort_key(b: Bipartition):
    """Key realizing the enumeration order of :func:`enumerate_bipartitions`."""
    return (
        -sum(b.mu),
        tuple(-v for v in b.mu),
        tuple(-v for v in b.nu),
    )


def parse_bipartition(text: str) -> Bipartition:
    """Parse the text form "2,1;1" (either side may be empty)."""
    if ";" not in text:
        raise ValueError(f"expected 'mu;nu', got {text!r}")
    left, right = text.split(";", 1)
    return Bipartition(parse_partition(left), parse_partition(right))


def format_bipartition(b: Bipartition) -> str:
    b = bipartition(*b)
    return f"{format_partition(b.mu)};{format_partition(b.nu)}"


def bipartition_to_json(b: Bipartition) -> dict:
    b = bipartition(*b)
    return {"mu": list(b.mu), "nu": list(b.nu)}


def bipartition_from_json(obj) -> Bipartition:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return bipartition(obj["mu"], obj["nu"])
