"""Lie algebras given by rational structure constants, and their subspaces."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import linalg as la
from .errors import DimensionError, GradingFailure, JacobiFailure, NotAnIdeal


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^n stored by its reduced row-echelon basis.

    Because the basis is canonical, two Subspace objects are equal exactly when
    they describe the same subspace.
    """

    ambient_dim: int
    basis: tuple = ()

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vs = [la.vec(v) for v in vectors]
        if any(len(v) != ambient_dim for v in vs):
            raise DimensionError("vector length differs from ambient dimension")
        red, _ = la.rref(vs)
        return cls(ambient_dim, red)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, la.identity(n))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def contains(self, v: Sequence) -> bool:
        v = la.vec(v)
        if la.is_zero(v):
            return True
        return la.rank(self.basis + (v,)) == self.dim

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def issubspace(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __le__(self, other: "Subspace") -> bool:
        return self.issubspace(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient_dim)
        # s·U = t·V  <=>  (s, -t) in ker [U^T | V^T]
        cols = self.basis + tuple(la.scale(-1, b) for b in other.basis)
        ker = la.kernel_basis(la.transpose(cols))
        k = self.dim
        return Subspace.span((la.lincomb(s[:k], self.basis) for s in ker), self.ambient_dim)

    def coordinates(self, v: Sequence) -> la.Vector:
        """Coefficients of v in this subspace's basis (raises NoSolution if v is outside)."""
        return la.solve(la.transpose(self.basis, self.ambient_dim), la.vec(v), ncols=self.dim)

    def complement_in(self, other: "Subspace") -> list:
        """Rows of ``other``'s basis that, in order, complete this subspace to ``other``."""
        rows = list(self.basis)
        picked = []
        for b in other.basis:
            if la.rank(rows + [b]) > len(rows):
                rows.append(b)
                picked.append(b)
        return picked


class LieAlgebra:
    """A finite-dimensional Lie algebra over Q.

    ``brackets`` maps index pairs (i, j) with i < j to the coordinate vector of
    [e_i, e_j] (a sequence or a sparse ``{k: coeff}`` mapping); antisymmetry fills
    in the rest. Construction validates antisymmetry, the Jacobi identity and,
    when given, the grading ``{degree: Subspace}``.
    """

    def __init__(self, names: Sequence[str], brackets: Mapping | None = None,
                 grading: Mapping[int, Subspace] | None = None, validate: bool = True):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate basis names")
        n = self.dim = len(self.names)
        self._index = {name: i for i, name in enumerate(self.names)}
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), value in (brackets or {}).items():
            if not (0 <= i < n and 0 <= j < n):
                raise DimensionError(f"bracket index out of range: {(i, j)}")
            if isinstance(value, Mapping):
                sparse = {int(k): la.Q(c) for k, c in value.items() if la.Q(c) != 0}
            else:
                if len(value) != n:
                    raise DimensionError(f"bracket value for {(i, j)} has wrong length")
                sparse = {k: la.Q(c) for k, c in enumerate(value) if la.Q(c) != 0}
            if i == j:
                if sparse:
                    raise JacobiFailure((i, j, None), f"[e_{i}, e_{i}] must vanish")
                continue
            if i > j:
                i, j = j, i
                sparse = {k: -c for k, c in sparse.items()}
            if (i, j) in table and table[(i, j)] != sparse:
                raise JacobiFailure((i, j, None), f"conflicting values for [e_{i}, e_{j}]")
            if sparse:
                table[(i, j)] = sparse
        self._table = table
        self.grading: dict[int, Subspace] = dict(sorted((grading or {}).items()))
        self._dense = None
        if validate:
            self.validate()

    # ------------------------------------------------------------------ basics
    @classmethod
    def from_names(cls, names: Sequence[str], brackets: Mapping[tuple[str, str], Mapping[str, object]],
                   grading: Mapping[int, Sequence[str]] | None = None, validate: bool = True):
        """Build from name-level data, e.g. ``{("X", "Y"): {"Z": 1}}``."""
        idx = {name: i for i, name in enumerate(names)}
        n = len(names)
        table = {}
        for (a, b), rhs in brackets.items():
            table[(idx[a], idx[b])] = {idx[k]: c for k, c in rhs.items()}
        layers = None
        if grading:
            layers = {deg: Subspace.span((la.unit(n, idx[x]) for x in members), n)
                      for deg, members in grading.items()}
        return cls(names, table, layers, validate=validate)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown basis element {name!r}") from None

    def e(self, k) -> la.Vector:
        """Standard basis vector, by index or by name."""
        if isinstance(k, str):
            k = self.index(k)
        return la.unit(self.dim, k)

    def element(self, coeffs: Mapping[str, object]) -> la.Vector:
        """Vector from ``{name: coeff}``; unspecified coordinates are zero."""
        v = [Fraction(0)] * self.dim
        for name, c in coeffs.items():
            v[self.index(name)] += la.Q(c)
        return tuple(v)

    covector = element  # same coordinates, read in the dual basis

    def basis_bracket(self, i: int, j: int) -> dict[int, Fraction]:
        """Sparse coordinates of [e_i, e_j]."""
        if i == j:
            return {}
        if i < j:
            return self._table.get((i, j), {})
        return {k: -c for k, c in self._table.get((j, i), {}).items()}

    @property
    def structure_constants(self):
        """Dense c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k."""
        if self._dense is None:
            n = self.dim
            self._dense = tuple(
                tuple(tuple(self.basis_bracket(i, j).get(k, Fraction(0)) for k in range(n))
                      for j in range(n))
                for i in range(n))
        return self._dense

    def nonzero_brackets(self):
        """Yield (i, j, {k: c}) for i < j with [e_i, e_j] != 0, in index order."""
        for (i, j) in sorted(self._table):
            yield i, j, dict(sorted(self._table[(i, j)].items()))

    def bracket(self, v: Sequence, w: Sequence) -> la.Vector:
        if len(v) != self.dim or len(w) != self.dim:
            raise DimensionError(f"expected vectors of length {self.dim}")
        out = [Fraction(0)] * self.dim
        vi = [(i, la.Q(x)) for i, x in enumerate(v) if x]
        wj = [(j, la.Q(x)) for j, x in enumerate(w) if x]
        for i, a in vi:
            for j, b in wj:
                if i == j:
                    continue
                ab = a * b
                for k, c in self.basis_bracket(i, j).items():
                    out[k] += ab * c
        return tuple(out)

    def ad_matrix(self, v: Sequence) -> la.Matrix:
        """Matrix of ad_v (column j is [v, e_j])."""
        cols = [self.bracket(v, self.e(j)) for j in range(self.dim)]
        return la.transpose(cols)

    def is_abelian(self) -> bool:
        return not self._table

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return (self.names == other.names and self._table == other._table
                and self.grading == other.grading)

    def __hash__(self):
        return hash((self.names, tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self._table.items()))))

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, names={list(self.names)})"

    def validate(self) -> None:
        """Raise JacobiFailure / GradingFailure if the data is not a (graded) Lie algebra."""
        triple = jacobi_failure(self)
        if triple is not None:
            names = ", ".join(self.names[t] for t in triple)
            raise JacobiFailure(triple, f"Jacobi identity fails on ({names})")
        if self.grading:
            check_grading(self)


def jacobi_failure(g: LieAlgebra):
    """First basis triple (i, j, k), i < j < k, violating Jacobi, or None."""
    n = g.dim
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                total: dict[int, Fraction] = {}
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    for l, x in g.basis_bracket(b, c).items():
                        for m, y in g.basis_bracket(a, l).items():
                            total[m] = total.get(m, Fraction(0)) + x * y
                if any(total.values()):
                    return (i, j, k)
    return None


def validate(g: LieAlgebra):
    """Return True, or raise JacobiFailure naming the first failing triple."""
    g.validate()
    return True


def check_grading(g: LieAlgebra) -> None:
    layers = g.grading
    n = g.dim
    if any(deg < 1 for deg in layers):
        raise GradingFailure("grading degrees must be positive integers")
    total = sum(layer.dim for layer in layers.values())
    union = Subspace.span((b for layer in layers.values() for b in layer.basis), n)
    if total != n or union.dim != n:
        raise GradingFailure("declared layers do not form a direct-sum decomposition")
    for a, va in layers.items():
        for b, vb in layers.items():
            if b < a:
                continue
            target = layers.get(a + b, Subspace.zero(n))
            for x in va.basis:
                for y in vb.basis:
                    if not target.contains(g.bracket(x, y)):
                        raise GradingFailure(f"[V_{a}, V_{b}] is not inside V_{a + b}")


def bracket(g: LieAlgebra, v: Sequence, w: Sequence) -> la.Vector:
    return g.bracket(v, w)


def pair(mu: Sequence, v: Sequence) -> Fraction:
    """Duality pairing <mu, v>."""
    return la.dot(mu, v)


def ad_star(g: LieAlgebra, w: Sequence, mu: Sequence) -> la.Vector:
    """The covector ad*_w mu defined by <ad*_w mu, v> = <mu, [w, v]>."""
    if len(mu) != g.dim:
        raise DimensionError(f"covector has length {len(mu)}, algebra has dimension {g.dim}")
    return tuple(la.dot(mu, g.bracket(w, g.e(k))) for k in range(g.dim))


def bracket_span(g: LieAlgebra, u: Subspace, v: Subspace) -> Subspace:
    """span{[x, y] : x in u, y in v}."""
    return Subspace.span((g.bracket(x, y) for x in u.basis for y in v.basis), g.dim)


def is_ideal(g: LieAlgebra, h: Subspace) -> bool:
    return all(h.contains(g.bracket(g.e(i), y)) for i in range(g.dim) for y in h.basis)


@dataclass(frozen=True)
class Quotient:
    """Result of :func:`quotient`: the algebra, its projection matrix, and the section."""

    algebra: LieAlgebra
    projection: la.Matrix  # q x n
    complement: tuple  # standard vectors of g whose images form the quotient basis

    def project(self, v: Sequence) -> la.Vector:
        return la.mat_vec(self.projection, v)

    def lift(self, w: Sequence) -> la.Vector:
        """The preimage of w inside the span of ``complement``."""
        return la.lincomb(w, self.complement, n=len(self.projection[0]) if self.projection else None)

    def __iter__(self):
        yield self.algebra
        yield self.projection


def quotient(g: LieAlgebra, ideal: Subspace) -> Quotient:
    """g / ideal on the complement chosen by extend_to_basis, with its projection."""
    if not is_ideal(g, ideal):
        raise NotAnIdeal("subspace is not closed under bracketing with g")
    n = g.dim
    comp = la.extend_to_basis(ideal.basis, n)
    q = len(comp)
    # columns of B: complement vectors then ideal basis; pi(v) = first q coords of B^-1 v
    b_inv = la.inverse(la.transpose(tuple(comp) + tuple(ideal.basis)))
    proj = tuple(b_inv[:q]) if q else ()
    names = [g.names[c.index(1)] for c in comp]
    table = {}
    for a in range(q):
        for b in range(a + 1, q):
            img = la.mat_vec(proj, g.bracket(comp[a], comp[b]))
            if not la.is_zero(img):
                table[(a, b)] = img
    grading = None
    if g.grading:
        grading = {}
        for deg, layer in g.grading.items():
            img = Subspace.span((la.mat_vec(proj, x) for x in layer.basis), q) if q else Subspace.zero(0)
            if img.dim:
                grading[deg] = img
    qa = LieAlgebra(names, table, grading=None)
    if grading and sum(s.dim for s in grading.values()) == q:
        try:
            qa = LieAlgebra(names, table, grading=grading)
        except GradingFailure:
            pass
    result = Quotient(qa, proj, tuple(comp))
    for i in range(n):
        for j in range(i + 1, n):
            lhs = result.project(g.bracket(g.e(i), g.e(j)))
            rhs = qa.bracket(result.project(g.e(i)), result.project(g.e(j))) if q else ()
            if lhs != rhs:
                raise NotAnIdeal("projection fails to be a homomorphism")
    return result
