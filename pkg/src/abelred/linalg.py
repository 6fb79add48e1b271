"""Exact dense linear algebra over the rationals.

Matrices are tuples of row tuples of :class:`fractions.Fraction`; vectors are
tuples of Fractions. Every routine is pure and deterministic: row reduction
pivots on the first nonzero column, taking the first row with a nonzero entry
there, so kernels, solutions and complements are reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DependentInput, DimensionError, NoSolution

Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[Vector, ...]


def Q(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction (never floats)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point input is not accepted; use Fraction or 'p/q'")
    return Fraction(x)


def vec(values: Iterable) -> Vector:
    return tuple(Q(x) for x in values)


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    m = tuple(vec(r) for r in rows)
    if m and len({len(r) for r in m}) != 1:
        raise DimensionError("ragged matrix")
    return m


def zeros(n: int) -> Vector:
    return (Fraction(0),) * n


def unit(n: int, k: int) -> Vector:
    return tuple(Fraction(1 if i == k else 0) for i in range(n))


def identity(n: int) -> Matrix:
    return tuple(unit(n, k) for k in range(n))


def is_zero(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def add(v: Sequence, w: Sequence) -> Vector:
    if len(v) != len(w):
        raise DimensionError(f"length mismatch {len(v)} != {len(w)}")
    return tuple(a + b for a, b in zip(v, w))


def sub(v: Sequence, w: Sequence) -> Vector:
    if len(v) != len(w):
        raise DimensionError(f"length mismatch {len(v)} != {len(w)}")
    return tuple(a - b for a, b in zip(v, w))


def scale(c, v: Sequence) -> Vector:
    c = Q(c)
    return tuple(c * a for a in v)


def dot(v: Sequence, w: Sequence) -> Fraction:
    if len(v) != len(w):
        raise DimensionError(f"length mismatch {len(v)} != {len(w)}")
    return sum((a * b for a, b in zip(v, w) if a and b), Fraction(0))


def lincomb(coeffs: Sequence, vectors: Sequence[Sequence], n: int | None = None) -> Vector:
    """Return sum(coeffs[r] * vectors[r]); ``n`` is needed when ``vectors`` is empty."""
    if n is None:
        if not vectors:
            raise DimensionError("empty combination needs an explicit length")
        n = len(vectors[0])
    out = [Fraction(0)] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, x in enumerate(v):
                if x:
                    out[k] += c * x
    return tuple(out)


def transpose(m: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*m))


def mat_vec(m: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def _ncols(m: Sequence[Sequence], ncols: int | None) -> int:
    if m:
        return len(m[0])
    if ncols is None:
        raise DimensionError("matrix with no rows needs an explicit column count")
    return ncols


def rref(m: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form; returns (nonzero rows, pivot columns)."""
    rows = [list(vec(r)) for r in m]
    if not rows:
        return (), []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        if inv != 1:
            rows[r] = [x * inv for x in rows[r]]
        pivot_row = rows[r]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [x - f * y if y else x for x, y in zip(rows[i], pivot_row)]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in rows[:r]), pivots


def rank(m: Sequence[Sequence]) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of the right null space.

    One vector per free column, in increasing column order; each has that free
    variable set to 1 and every other free variable set to 0.
    """
    n = _ncols(m, ncols)
    red, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def solve(m: Sequence[Sequence], b: Sequence, ncols: int | None = None) -> Vector:
    """Some exact x with m @ x == b (free variables set to 0).

    Raises NoSolution when b is not in the column space.
    """
    n = _ncols(m, ncols)
    if len(b) != len(m):
        raise DimensionError(f"right-hand side has length {len(b)}, matrix has {len(m)} rows")
    aug = [tuple(row) + (Q(x),) for row, x in zip(m, b)]
    if not aug:
        return zeros(n)
    red, pivots = rref(aug)
    if pivots and pivots[-1] == n:
        raise NoSolution("right-hand side is not in the column space")
    x = [Fraction(0)] * n
    for row, p in zip(red, pivots):
        x[p] = row[n]
    return tuple(x)


def det(m: Sequence[Sequence]) -> Fraction:
    rows = [list(vec(r)) for r in m]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionError("determinant of a non-square matrix")
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            d = -d
        d *= rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return d


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    aug = [tuple(row) + unit(n, i) for i, row in enumerate(vec(r) for r in m)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise NoSolution("matrix is singular")
    return tuple(row[n:] for row in red)


def extend_to_basis(vectors: Sequence[Sequence], ambient_dim: int) -> list[Vector]:
    """Standard basis vectors e_k (increasing k) completing ``vectors`` to a basis.

    Raises DependentInput if ``vectors`` are linearly dependent.
    """
    vs = [vec(v) for v in vectors]
    if any(len(v) != ambient_dim for v in vs):
        raise DimensionError("vector length differs from ambient dimension")
    current = rank(vs)
    if current != len(vs):
        raise DependentInput("input vectors are linearly dependent")
    red, pivots = rref(vs) if vs else ((), [])
    added = []
    rows = list(red)
    for k in range(ambient_dim):
        if current == ambient_dim:
            break
        e = unit(ambient_dim, k)
        if rank(rows + [e]) > current:
            rows.append(e)
            added.append(e)
            current += 1
    return added
