"""Exact integer matrix models of orbit representatives.

Every combinatorial dimension formula in this library is cross-checked
against ranks of explicit integer matrices built from diagram normal bases.
All arithmetic is exact: Python integers never overflow, and the elimination
below only ever scales rows by nonzero integers, so ranks are ranks over the
rationals.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from math import gcd
from typing import NamedTuple

from .bipartitions import Bipartition, bipartition, bipartition_sum, termwise_sum
from .partitions import partition, transpose
from .signed import (
    SignedPartition,
    SignedQuasibipartition,
    signed_partition,
    validate_sq,
    row_signs,
)

__all__ = [
    "Matrix",
    "rank_exact",
    "kernel_basis",
    "in_column_span",
    "EnhancedPoint",
    "PairPoint",
    "EnhancedPairPoint",
    "point_from_bipartition",
    "point_from_signed_partition",
    "point_from_sq",
    "orbit_dim_enhanced",
    "orbit_dim_pair",
    "orbit_dim_enhanced_pair",
    "type_of_enhanced_point",
    "type_of_pair",
    "commutant_vector_dim",
    "pair_commutant_vector_dim",
    "membership_U_lambda",
    "membership_U_mpi",
]


class Matrix:
    """Immutable exact-integer matrix."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows, ncols: int | None = None):
        data = tuple(tuple(int(v) for v in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged rows")
            if ncols is not None and ncols != width:
                raise ValueError(f"ncols {ncols} != row width {width}")
            ncols = width
        elif ncols is None:
            raise ValueError("empty matrix needs an explicit column count")
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, *args):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"{self.ncols} != {other.nrows}")
        ot = list(zip(*other.rows)) if other.rows else []
        out = []
        for row in self.rows:
            if ot:
                out.append([sum(a * b for a, b in zip(row, col)) for col in ot])
            else:
                out.append([0] * other.ncols)
        return Matrix(out, other.ncols)

    def apply(self, vec) -> tuple[int, ...]:
        vec = tuple(vec)
        if len(vec) != self.ncols:
            raise ValueError(f"vector length {len(vec)} != {self.ncols}")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.rows)

    def pow(self, k: int) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("pow needs a square matrix")
        result = Matrix.identity(self.nrows)
        for _ in range(k):
            result = result @ self
        return result

    def augment_cols(self, vectors) -> "Matrix":
        """Append column vectors on the right."""
        vectors = [tuple(v) for v in vectors]
        if any(len(v) != self.nrows for v in vectors):
            raise ValueError("column length mismatch")
        rows = [
            tuple(row) + tuple(v[i] for v in vectors)
            for i, row in enumerate(self.rows)
        ]
        if self.nrows == 0:
            return Matrix([], self.ncols + len(vectors))
        return Matrix(rows)

    def is_zero(self) -> bool:
        return all(all(v == 0 for v in row) for row in self.rows)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.ncols, self.rows))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols})"


def rank_exact(m: Matrix) -> int:
    """Rank over the rationals by integer row elimination.

    Rows are kept as sparse dicts; pivots of minimal magnitude are preferred
    and rows are divided by their gcd after each combination, which keeps the
    entries small.  Only row swaps, integer combinations and division by a
    common factor are used, so the rank is exact.
    """
    rows = []
    for r in m.rows:
        d = {j: v for j, v in enumerate(r) if v}
        if d:
            rows.append(d)
    rank = 0
    for c in range(m.ncols):
        pivot = None
        for idx, row in enumerate(rows):
            v = row.get(c)
            if v and (pivot is None or abs(v) < abs(rows[pivot][c])):
                pivot = idx
                if abs(v) == 1:
                    break
        if pivot is None:
            continue
        prow = rows.pop(pivot)
        pv = prow[c]
        rank += 1
        survivors = []
        for row in rows:
            v = row.get(c)
            if not v:
                survivors.append(row)
                continue
            combined = {j: pv * w for j, w in row.items()}
            for j, w in prow.items():
                val = combined.get(j, 0) - v * w
                if val:
                    combined[j] = val
                else:
                    combined.pop(j, None)
            if combined:
                g = 0
                for w in combined.values():
                    g = gcd(g, w)
                if g > 1:
                    combined = {j: w // g for j, w in combined.items()}
                survivors.append(combined)
        rows = survivors
        if not rows:
            break
    return rank


def kernel_basis(m: Matrix) -> list[tuple[int, ...]]:
    """Integer vectors spanning the rational kernel of m."""
    nr, nc = m.nrows, m.ncols
    if nc == 0:
        return []
    rows = [[Fraction(v) for v in row] for row in m.rows]
    pivots: list[tuple[int, int]] = []  # (row, col)
    rank = 0
    for c in range(nc):
        sel = None
        for r in range(rank, nr):
            if rows[r][c]:
                sel = r
                break
        if sel is None:
            continue
        rows[rank], rows[sel] = rows[sel], rows[rank]
        pv = rows[rank][c]
        rows[rank] = [v / pv for v in rows[rank]]
        for r in range(nr):
            if r != rank and rows[r][c]:
                f = rows[r][c]
                rows[r] = [v - f * w for v, w in zip(rows[r], rows[rank])]
        pivots.append((rank, c))
        rank += 1
    pivot_cols = {c for _, c in pivots}
    basis = []
    for free in range(nc):
        if free in pivot_cols:
            continue
        vec = [Fraction(0)] * nc
        vec[free] = Fraction(1)
        for r, c in pivots:
            vec[c] = -rows[r][free]
        scale = 1
        for v in vec:
            scale = scale * v.denominator // gcd(scale, v.denominator)
        basis.append(tuple(int(v * scale) for v in vec))
    return basis


def in_column_span(m: Matrix, vec, base_rank: int | None = None) -> bool:
    """True iff vec lies in the span of m's columns."""
    if base_rank is None:
        base_rank = rank_exact(m)
    return rank_exact(m.augment_cols([vec])) == base_rank


# ---------------------------------------------------------------------------
# diagram realizations


class EnhancedPoint(NamedTuple):
    v: tuple[int, ...]
    x: Matrix  # nilpotent endomorphism of the space spanned by the boxes


class PairPoint(NamedTuple):
    x: Matrix  # '+' space -> '-' space
    y: Matrix  # '-' space -> '+' space


class EnhancedPairPoint(NamedTuple):
    v: tuple[int, ...]  # vector in the '+' space
    x: Matrix
    y: Matrix


def point_from_bipartition(b: Bipartition) -> EnhancedPoint:
    """Normal-basis representative: boxes are basis vectors, x shifts left,
    v is the sum of the boxes immediately left of the wall."""
    b = bipartition(*b)
    lam = bipartition_sum(b)
    mu = b.mu + (0,) * (len(lam) - len(b.mu))
    idx = {}
    for i, length in enumerate(lam):
        for c in range(1, length + 1):
            idx[(i, c)] = len(idx)
    d = len(idx)
    x = [[0] * d for _ in range(d)]
    for (i, c), k in idx.items():
        if c >= 2:
            x[idx[(i, c - 1)]][k] = 1
    v = [0] * d
    for i in range(len(lam)):
        if mu[i] >= 1:
            v[idx[(i, mu[i])]] = 1
    return EnhancedPoint(tuple(v), Matrix(x, d))


def _two_space_point(mu, nu, eps, with_vector: bool):
    """Bases and left-shift maps for a back-to-back signed diagram."""
    plus_idx: dict[tuple[int, int], int] = {}
    minus_idx: dict[tuple[int, int], int] = {}
    signs = {}
    for i in range(len(mu)):
        rs = row_signs(SignedQuasibipartition(mu, nu, eps), i)
        for c in range(1, mu[i] + nu[i] + 1):
            s = rs[c - 1]
            signs[(i, c)] = s
            table = plus_idx if s == "+" else minus_idx
            table[(i, c)] = len(table)
    d, dp = len(plus_idx), len(minus_idx)
    x = [[0] * d for _ in range(dp)]
    y = [[0] * dp for _ in range(d)]
    for (i, c), s in signs.items():
        if c < 2:
            continue
        if s == "+":
            x[minus_idx[(i, c - 1)]][plus_idx[(i, c)]] = 1
        else:
            y[plus_idx[(i, c - 1)]][minus_idx[(i, c)]] = 1
    v = [0] * d
    if with_vector:
        for i in range(len(mu)):
            if mu[i] >= 1:
                v[plus_idx[(i, mu[i])]] = 1  # wall-adjacent boxes are all '+'
    return tuple(v), Matrix(x, d), Matrix(y, dp)


def point_from_signed_partition(sp: SignedPartition) -> PairPoint:
    """Normal-basis pair: x left-shifts '+' boxes onto '-' boxes, y the reverse."""
    sp = signed_partition(*sp)
    _, x, y = _two_space_point(sp.lam, (0,) * len(sp.lam), sp.eps, with_vector=False)
    return PairPoint(x, y)


def point_from_sq(sq: SignedQuasibipartition) -> EnhancedPairPoint:
    sq = validate_sq(*sq)
    v, x, y = _two_space_point(sq.mu, sq.nu, sq.eps, with_vector=True)
    return EnhancedPairPoint(v, x, y)


# ---------------------------------------------------------------------------
# orbit dimensions via the rank of the group-action differential


def orbit_dim_enhanced(p: EnhancedPoint) -> int:
    """Rank of a |-> (a v, a x - x a) over all d x d matrices a."""
    v, x = p
    d = len(v)
    ncols = d * d
    m = [[0] * ncols for _ in range(d + d * d)]
    xr = x.rows
    for k in range(d):
        for l in range(d):
            col = k * d + l
            m[k][col] += v[l]
            row_base = d + k * d
            for s in range(d):
                m[row_base + s][col] += xr[l][s]
            for r in range(d):
                m[d + r * d + l][col] -= xr[r][k]
    return rank_exact(Matrix(m, ncols))


def _pair_action_rows(x: Matrix, y: Matrix, with_vector=None):
    """Matrix of (a, b) |-> ([a v,] b x - x a, a y - y b)."""
    d, dp = x.ncols, x.nrows
    acols, bcols = d * d, dp * dp
    vrows = d if with_vector is not None else 0
    nrows = vrows + dp * d + d * dp
    m = [[0] * (acols + bcols) for _ in range(nrows)]
    xr, yr = x.rows, y.rows
    for k in range(d):
        for l in range(d):
            col = k * d + l
            if with_vector is not None:
                m[k][col] += with_vector[l]
            # -(x a): (x E_kl)_{r s} = x_{r k} delta_{l s}
            for r in range(dp):
                m[vrows + r * d + l][col] -= xr[r][k]
            # +(a y): (E_kl y)_{r s} = delta_{r k} y_{l s}
            for s in range(dp):
                m[vrows + dp * d + k * dp + s][col] += yr[l][s]
    for k in range(dp):
        for l in range(dp):
            col = acols + k * dp + l
            # +(b x): (E_kl x)_{r s} = delta_{r k} x_{l s}
            for s in range(d):
                m[vrows + k * d + s][col] += xr[l][s]
            # -(y b): (y E_kl)_{r s} = y_{r k} delta_{l s}
            for r in range(d):
                m[vrows + dp * d + r * dp + l][col] -= yr[r][k]
    return Matrix(m, acols + bcols)


def orbit_dim_pair(p: PairPoint) -> int:
    return rank_exact(_pair_action_rows(p.x, p.y))


def orbit_dim_enhanced_pair(p: EnhancedPairPoint) -> int:
    return rank_exact(_pair_action_rows(p.x, p.y, with_vector=p.v))


# ---------------------------------------------------------------------------
# type extraction


def _power_ranks(x: Matrix) -> list[int]:
    """Ranks of the powers of a nilpotent map, starting at rank(x^0) = d."""
    ranks = [x.ncols]
    power = x
    while True:
        r = rank_exact(power)
        ranks.append(r)
        if r == 0:
            return ranks
        power = power @ x


def type_of_enhanced_point(p: EnhancedPoint) -> Bipartition:
    """Recover the bipartition type from ranks of powers and span membership."""
    v, x = p
    d = len(v)
    if d == 0:
        return Bipartition((), ())
    ranks = _power_ranks(x)
    lam_t = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    lam = transpose(partition(lam_t))
    powers = [Matrix.identity(d)]
    for _ in range(len(ranks)):
        powers.append(powers[-1] @ x)
    mu = []
    span_rank: dict[int, int] = {}
    for part in lam:
        target = powers[part]
        if part not in span_rank:
            span_rank[part] = rank_exact(target)
        s = 0
        w = v
        while not in_column_span(target, w, span_rank[part]):
            w = x.apply(w)
            s += 1
        mu.append(s)
    mu = partition(mu)
    nu = partition(tuple(l - m for l, m in zip(lam, mu + (0,) * len(lam))))
    return Bipartition(mu, nu)


def type_of_pair(p: PairPoint) -> SignedPartition:
    """Recover the signed partition from ranks of alternating words."""
    x, y = p
    d, dp = x.ncols, x.nrows
    maxlen = d + dp + 1
    p_ranks = [d]
    q_ranks = [dp]
    wx, wy = x, y
    for k in range(1, maxlen + 1):
        p_ranks.append(rank_exact(wx))
        q_ranks.append(rank_exact(wy))
        wx = (y if k % 2 == 1 else x) @ wx
        wy = (x if k % 2 == 1 else y) @ wy
    plus_ge = {}  # rows of length >= k whose first box is '+'
    minus_ge = {}
    for k in range(1, maxlen + 1):
        pdiff = p_ranks[k - 1] - p_ranks[k]
        qdiff = q_ranks[k - 1] - q_ranks[k]
        if k % 2 == 1:
            plus_ge[k], minus_ge[k] = pdiff, qdiff
        else:
            plus_ge[k], minus_ge[k] = qdiff, pdiff
    plus_ge[maxlen + 1] = minus_ge[maxlen + 1] = 0
    rows = []
    for k in range(1, maxlen + 1):
        rows += [(k, "+")] * (plus_ge[k] - plus_ge[k + 1])
        rows += [(k, "-")] * (minus_ge[k] - minus_ge[k + 1])
    rows.sort(key=lambda t: (-t[0], t[1] != "+"))
    return signed_partition(
        tuple(k for k, _ in rows), "".join(s for _, s in rows)
    )


# ---------------------------------------------------------------------------
# commutant spans and membership predicates


def _span_dim(vectors) -> int:
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return 0
    return rank_exact(Matrix(vectors))


def commutant_vector_dim(p: EnhancedPoint) -> int:
    """Dimension of { a v : a x = x a }."""
    v, x = p
    d = len(v)
    if d == 0:
        return 0
    ncols = d * d
    m = [[0] * ncols for _ in range(d * d)]
    xr = x.rows
    for k in range(d):
        for l in range(d):
            col = k * d + l
            for s in range(d):
                m[k * d + s][col] += xr[l][s]
            for r in range(d):
                m[r * d + l][col] -= xr[r][k]
    images = []
    for a_flat in kernel_basis(Matrix(m, ncols)):
        images.append(
            tuple(
                sum(a_flat[r * d + c] * v[c] for c in range(d)) for r in range(d)
            )
        )
    return _span_dim(images)


def pair_commutant_vector_dim(p: EnhancedPairPoint) -> int:
    """Dimension of { a v : exists b with x a = b x and a y = y b }."""
    v, x, y = p
    d, dp = x.ncols, x.nrows
    if d == 0:
        return 0
    acols, bcols = d * d, dp * dp
    m = [[0] * (acols + bcols) for _ in range(dp * d + d * dp)]
    xr, yr = x.rows, y.rows
    for k in range(d):
        for l in range(d):
            col = k * d + l
            for r in range(dp):  # x a
                m[r * d + l][col] += xr[r][k]
            for s in range(dp):  # a y
                m[dp * d + k * dp + s][col] += yr[l][s]
    for k in range(dp):
        for l in range(dp):
            col = acols + k * dp + l
            for s in range(d):  # -(b x)
                m[k * d + s][col] -= xr[l][s]
            for r in range(d):  # -(y b)
                m[dp * d + r * dp + l][col] -= yr[r][k]
    images = []
    for sol in kernel_basis(Matrix(m, acols + bcols)):
        images.append(
            tuple(
                sum(sol[r * d + c] * v[c] for c in range(d)) for r in range(d)
            )
        )
    return _span_dim(images)


def _cyclic_span(v, x: Matrix) -> list[tuple[int, ...]]:
    """Basis (in fact the chain v, xv, ...) of the smallest x-stable span of v."""
    out = []
    w = v
    while any(w):
        out.append(tuple(w))
        w = x.apply(w)
    return out


def membership_U_lambda(p: EnhancedPoint, b: Bipartition) -> bool:
    """Closure membership inside the constant-Jordan-type slice of b."""
    b = bipartition(*b)
    lam = bipartition_sum(b)
    if bipartition_sum(type_of_enhanced_point(p)) != lam:
        raise ValueError("point's Jordan type differs from the target's")
    v, x = p
    mu = b.mu + (0,) * (len(lam) - len(b.mu))
    powers = {0: Matrix.identity(len(v))}

    def power(k: int) -> Matrix:
        if k not in powers:
            powers[k] = power(k - 1) @ x
        return powers[k]

    for i in range(len(lam)):
        target = power(lam[i])
        w = power(mu[i]).apply(v)
        if not in_column_span(target, w):
            return False
    return True


def membership_U_mpi(p: EnhancedPoint, b: Bipartition) -> bool:
    """Closure membership inside the slice with fixed cyclic-vector data."""
    b = bipartition(*b)
    m = b.mu[0] if b.mu else 0
    pi = partition(termwise_sum(b.mu[1:], b.nu))
    t = type_of_enhanced_point(p)
    t_head = t.mu[0] if t.mu else 0
    if t_head != m or partition(termwise_sum(t.mu[1:], t.nu)) != pi:
        raise ValueError("point's cyclic data differs from the target's")
    v, x = p
    d = len(v)
    chain = _cyclic_span(v, x)
    assert len(chain) == m
    nu = b.nu + (0,) * max(0, len(pi) - len(b.nu))
    powers = {0: Matrix.identity(d)}

    def power(k: int) -> Matrix:
        if k not in powers:
            powers[k] = power(k - 1) @ x
        return powers[k]

    for i in range(len(pi)):
        aug = power(pi[i]).augment_cols(chain)
        killer = power(m + nu[i])
        for sol in kernel_basis(aug):
            w = sol[:d]
            if any(killer.apply(w)):
                return False
    return True
