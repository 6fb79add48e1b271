"""Built-in algebra families and the semidirect-product construction."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb
from typing import Sequence

from . import linalg as la
from .algebra import LieAlgebra, Subspace
from .errors import DimensionCapExceeded, HomomorphismFailure

DIMENSION_CAP = 60


def _check_cap(dim: int, cap: int) -> None:
    if dim > cap:
        raise DimensionCapExceeded(f"dimension {dim} exceeds the cap of {cap}")


def heisenberg(n: int, cap: int = DIMENSION_CAP) -> LieAlgebra:
    """h^{2n+1} with [X_i, Y_i] = Z, basis ordered Z, Y_1..Y_n, X_1..X_n."""
    if n < 1:
        raise ValueError("heisenberg(n) needs n >= 1")
    _check_cap(2 * n + 1, cap)
    ys = [f"Y{i}" for i in range(1, n + 1)]
    xs = [f"X{i}" for i in range(1, n + 1)]
    brackets = {(x, y): {"Z": 1} for x, y in zip(xs, ys)}
    return LieAlgebra.from_names(["Z", *ys, *xs], brackets, grading={1: xs + ys, 2: ["Z"]})


def cartan_f23() -> LieAlgebra:
    """The Cartan algebra: free step-3 nilpotent algebra on two generators."""
    return LieAlgebra.from_names(
        ["X1", "X2", "Y", "Z1", "Z2"],
        {("X1", "X2"): {"Y": 1}, ("X1", "Y"): {"Z1": 1}, ("X2", "Y"): {"Z2": 1}},
        grading={1: ["X1", "X2"], 2: ["Y"], 3: ["Z1", "Z2"]},
    )


def free_f24() -> LieAlgebra:
    """Free step-4 nilpotent algebra on two generators (dimension 8)."""
    return LieAlgebra.from_names(
        ["X1", "X2", "Y1", "Y2", "Y3", "Z1", "Z2", "Z3"],
        {
            ("X1", "X2"): {"Y3": 1},
            ("X1", "Y3"): {"Y2": 1},
            ("X2", "Y3"): {"Y1": 1},
            ("X1", "Y2"): {"Z1": 1},
            ("X1", "Y1"): {"Z2": 1},
            ("X2", "Y2"): {"Z2": 1},
            ("X2", "Y1"): {"Z3": 1},
        },
        grading={1: ["X1", "X2"], 2: ["Y3"], 3: ["Y1", "Y2"], 4: ["Z1", "Z2", "Z3"]},
    )


def filiform(n: int, cap: int = DIMENSION_CAP) -> LieAlgebra:
    """Standard filiform algebra L_n: [Y_i, X] = Y_{i+1}; same constants as jet(n-2, 1, 1)."""
    if n < 3:
        raise ValueError("filiform(n) needs n >= 3")
    _check_cap(n, cap)
    ys = [f"Y{i}" for i in range(1, n)]
    brackets = {(ys[i], "X"): {ys[i + 1]: 1} for i in range(n - 2)}
    grading = {1: ["X", "Y1"]}
    grading.update({j: [f"Y{j}"] for j in range(2, n)})
    return LieAlgebra.from_names(["X", *ys], brackets, grading=grading)


def multi_indices(n: int, k: int) -> list[tuple[int, ...]]:
    """All I in N^n with |I| <= k: total degree descending, then lexicographic."""
    out = [I for I in product(range(k + 1), repeat=n) if sum(I) <= k]
    return sorted(out, key=lambda I: (-sum(I), I))


def jet_dimension(k: int, n: int, m: int) -> int:
    return n + m * comb(n + k, k)


def jet_name(ell: int, I: Sequence[int]) -> str:
    return f"Y{ell}_" + "_".join(str(i) for i in I)


def jet(k: int, n: int, m: int, cap: int = DIMENSION_CAP) -> LieAlgebra:
    """The jet algebra j^k(R^n, R^m) with [Y^l_{I+e_i}, X_i] = Y^l_I.

    Basis: X_1..X_n, then Y^l_I grouped by l, by |I| descending, then
    lexicographically. Stratified with V_1 = <X_i, Y^l_I : |I| = k> and
    Y^l_I in layer k - |I| + 1, so the step is k + 1.
    """
    if min(k, n, m) < 1:
        raise ValueError("jet(k, n, m) needs k, n, m >= 1")
    _check_cap(jet_dimension(k, n, m), cap)
    xs = [f"X{i}" for i in range(1, n + 1)]
    idx = multi_indices(n, k)
    names = list(xs)
    grading: dict[int, list[str]] = {1: list(xs)}
    brackets = {}
    for ell in range(1, m + 1):
        for I in idx:
            names.append(jet_name(ell, I))
            grading.setdefault(k - sum(I) + 1, []).append(jet_name(ell, I))
            for i in range(n):
                if I[i] >= 1:
                    lower = I[:i] + (I[i] - 1,) + I[i + 1:]
                    brackets[(jet_name(ell, I), xs[i])] = {jet_name(ell, lower): 1}
    return LieAlgebra.from_names(names, brackets, grading=grading)


@dataclass(frozen=True)
class SemidirectSpec:
    """A Lie algebra h acting linearly on A = Q^d: ``action[b]`` is rho(xi_b), d x d."""

    h: LieAlgebra
    action: tuple
    a_names: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "action", tuple(la.as_matrix(m) for m in self.action))
        if len(self.action) != self.h.dim:
            raise HomomorphismFailure("need one action matrix per basis vector of h")
        d = self.dim_a
        if any(len(m) != d or any(len(r) != d for r in m) for m in self.action):
            raise HomomorphismFailure("action matrices must all be square of the same size")
        if not self.a_names:
            object.__setattr__(self, "a_names", tuple(f"A{r}" for r in range(1, d + 1)))
        elif len(self.a_names) != d:
            raise HomomorphismFailure("wrong number of names for A")

    @property
    def dim_a(self) -> int:
        return len(self.action[0]) if self.action else 0

    def rho(self, xi: Sequence) -> la.Matrix:
        d = self.dim_a
        out = [[la.Q(0)] * d for _ in range(d)]
        for c, m in zip(xi, self.action):
            if c:
                for r in range(d):
                    for s in range(d):
                        out[r][s] += c * m[r][s]
        return tuple(tuple(r) for r in out)

    def validate(self) -> None:
        """Check rho([xi_a, xi_b]) = [rho(xi_a), rho(xi_b)] on all basis pairs."""
        h = self.h
        for a in range(h.dim):
            for b in range(a + 1, h.dim):
                lhs = self.rho(h.bracket(h.e(a), h.e(b)))
                ra, rb = self.action[a], self.action[b]
                ab, ba = la.mat_mul(ra, rb), la.mat_mul(rb, ra)
                rhs = tuple(la.sub(x, y) for x, y in zip(ab, ba))
                if lhs != rhs:
                    raise HomomorphismFailure(
                        f"action is not a homomorphism on ({h.names[a]}, {h.names[b]})")


def semidirect(spec: SemidirectSpec, dim_a: int | None = None) -> LieAlgebra:
    """h ⋉ A with [(xi1, a1), (xi2, a2)] = ([xi1, xi2], rho(xi1) a2 - rho(xi2) a1).

    A occupies the last ``dim_a`` coordinates.
    """
    spec.validate()
    d = spec.dim_a
    if dim_a is not None and dim_a != d:
        raise HomomorphismFailure(f"dim A mismatch: {dim_a} != {d}")
    h = spec.h
    p = h.dim
    names = list(h.names) + list(spec.a_names)
    table = {}
    for i, j, rhs in h.nonzero_brackets():
        table[(i, j)] = rhs
    for b in range(p):
        for r in range(d):
            col = {p + s: spec.action[b][s][r] for s in range(d) if spec.action[b][s][r]}
            if col:
                table[(b, p + r)] = col
    g = LieAlgebra(names, table)
    a = Subspace.span((g.e(p + r) for r in range(d)), g.dim)
    for x in a.basis:
        for y in a.basis:
            if not la.is_zero(g.bracket(x, y)):
                raise HomomorphismFailure("A is not abelian in the semidirect product")
    return g


def h_nu_stabilizer(spec: SemidirectSpec, nu: Sequence) -> Subspace:
    """Infinitesimal stabilizer h_nu = {xi : rho(xi)^T nu = 0} of nu in A*.

    Only the identity component is visible at the Lie algebra level: h_nu = 0
    says H_nu is discrete, not that it is trivial.
    """
    nu = la.vec(nu)
    if len(nu) != spec.dim_a:
        raise ValueError(f"nu must have length {spec.dim_a}")
    cols = [la.mat_vec(la.transpose(m), nu) for m in spec.action]
    return Subspace.span(la.kernel_basis(la.transpose(cols, spec.dim_a), ncols=spec.h.dim), spec.h.dim)


def se2_spec() -> SemidirectSpec:
    so2 = LieAlgebra(["R"])
    return SemidirectSpec(so2, ([[0, -1], [1, 0]],), ("E1", "E2"))


def se2() -> LieAlgebra:
    """se(2) = so(2) ⋉ R^2: [R, E1] = E2, [R, E2] = -E1."""
    return semidirect(se2_spec())


FAMILIES = {
    "heisenberg": (heisenberg, 1),
    "cartan": (cartan_f23, 0),
    "f24": (free_f24, 0),
    "filiform": (filiform, 1),
    "jet": (jet, 3),
    "se2": (se2, 0),
}


def build(family: str, *params: int) -> LieAlgebra:
    try:
        fn, arity = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}") from None
    if len(params) != arity:
        raise ValueError(f"{family} takes {arity} integer parameter(s)")
    return fn(*params)
