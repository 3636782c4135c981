"""Integer partition arithmetic: transpose, dominance order, covers, enumeration.

Partitions are tuples of weakly decreasing positive integers; ``()`` is the
unique partition of 0.  Compositions use the same representation with the
monotonicity requirement dropped.  Everything here is a pure function on
immutable values, so unrestricted concurrent use is safe.
"""

from __future__ import annotations

from functools import cache

__all__ = [
    "SizeMismatchError",
    "composition",
    "partition",
    "transpose",
    "n_stat",
    "dominance_leq",
    "partition_covers",
    "enumerate_partitions",
    "nilpotent_orbit_dim",
    "parse_partition",
    "format_partition",
]


class SizeMismatchError(ValueError):
    """Inputs that must partition the same total do not."""


def composition(parts) -> tuple[int, ...]:
    """Canonicalize a composition: integer entries, nonnegative, no trailing zeros."""
    out = tuple(int(p) for p in parts)
    if any(p < 0 for p in out):
        raise ValueError(f"negative part in {out!r}")
    while out and out[-1] == 0:
        out = out[:-1]
    return out


def partition(parts) -> tuple[int, ...]:
    """Canonicalize a partition; raise ValueError if not weakly decreasing."""
    out = composition(parts)
    if any(out[i] < out[i + 1] for i in range(len(out) - 1)):
        raise ValueError(f"{out!r} is not weakly decreasing")
    return out


def transpose(p) -> tuple[int, ...]:
    """Column lengths of the Young diagram of p."""
    p = partition(p)
    if not p:
        return ()
    return tuple(sum(1 for part in p if part >= c) for c in range(1, p[0] + 1))


def n_stat(p) -> int:
    """The moment statistic: sum of (row index) * (row length), rows indexed from 0.

    Computed two ways (row form and column binomial form) and cross-checked.
    """
    p = partition(p)
    by_rows = sum(i * part for i, part in enumerate(p))
    by_cols = sum(c * (c - 1) // 2 for c in transpose(p))
    assert by_rows == by_cols
    return by_rows


def dominance_leq(a, b) -> bool:
    """True iff every prefix sum of a is at most the matching prefix sum of b."""
    a, b = partition(a), partition(b)
    if sum(a) != sum(b):
        raise SizeMismatchError(f"|{a!r}| != |{b!r}|")
    ta = tb = 0
    for i in range(max(len(a), len(b))):
        ta += a[i] if i < len(a) else 0
        tb += b[i] if i < len(b) else 0
        if ta > tb:
            return False
    return True


def partition_covers(p) -> list[tuple[int, ...]]:
    """All partitions covered by p in the dominance order.

    Each cover moves one box from a removable row end down to the first row
    that can receive it; a long-distance drop is a cover only when the box
    lands exactly two columns in from where it started.
    """
    p = partition(p)
    n = len(p)
    out = []
    for i in range(n):
        if i + 1 < n and p[i] == p[i + 1]:
            continue  # box at end of row i is not removable
        for j in range(i + 1, n + 1):
            target = p[j] if j < n else 0
            above = p[j - 1] - (1 if j - 1 == i else 0)
            if target + 1 > above:
                continue  # row j cannot receive; keep scanning down
            if j == i + 1 or target == p[i] - 2:
                q = list(p)
                q[i] -= 1
                if j < n:
                    q[j] += 1
                else:
                    q.append(1)
                out.append(composition(q))
            break
    return sorted(out, reverse=True)


@cache
def enumerate_partitions(n: int) -> tuple[tuple[int, ...], ...]:
    """All partitions of n, in reverse-lexicographic order ((n) first, 1^n last)."""
    if n < 0:
        raise ValueError("n must be nonnegative")

    def gen(remaining: int, maxpart: int):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, maxpart), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return tuple(gen(n, n))


def nilpotent_orbit_dim(lam, d: int) -> int:
    """Dimension of the conjugation orbit of a nilpotent d x d matrix of type lam."""
    lam = partition(lam)
    if sum(lam) != d:
        raise SizeMismatchError(f"|{lam!r}| != {d}")
    return d * d - d - 2 * n_stat(lam)


def parse_partition(text: str) -> tuple[int, ...]:
    """Parse the compact text form, e.g. "3,2,1,1"; empty string is ()."""
    text = text.strip()
    if not text:
        return ()
    return partition(int(tok) for tok in text.split(","))


def format_partition(p) -> str:
    return ",".join(str(v) for v in partition(p))
