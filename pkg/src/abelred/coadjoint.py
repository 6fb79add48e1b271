"""Computations indexed by a covector mu: Omega_mu, isotropy, T_mu, psi, shifts, verdicts."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg as la
from .algebra import LieAlgebra, Subspace, ad_star, is_ideal, pair
from .errors import (CenterNotInsideA, DimensionError, NoShift, NoSolution, NotAbelianIdeal,
                     NotAComplement, PreconditionFailure, RestrictionMismatch)
from .structure import center, is_abelian_subspace, is_nilpotent

EQUIVALENT = "EQUIVALENT"
NOT_EQUIVALENT = "NOT_EQUIVALENT"
ISOTROPY_REASON = "isotropy not inside a"
INJECTIVITY_REASON = "T_mu not injective"
GROUP_CAVEAT = "Lie-algebra level; assumes G_mu connected / G simply connected"


def _covector(g: LieAlgebra, mu: Sequence) -> la.Vector:
    mu = la.vec(mu)
    if len(mu) != g.dim:
        raise DimensionError(f"covector has length {len(mu)}, algebra has dimension {g.dim}")
    return mu


def omega_matrix(g: LieAlgebra, mu: Sequence) -> la.Matrix:
    """Antisymmetric matrix <mu, [e_i, e_j]>."""
    mu = _covector(g, mu)
    n = g.dim
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i, j, rhs in g.nonzero_brackets():
        v = sum((mu[k] * c for k, c in rhs.items()), Fraction(0))
        rows[i][j] = v
        rows[j][i] = -v
    return tuple(tuple(r) for r in rows)


def isotropy(g: LieAlgebra, mu: Sequence) -> Subspace:
    """g_mu = ker Omega_mu."""
    return Subspace.span(la.kernel_basis(omega_matrix(g, mu), ncols=g.dim), g.dim)


def orbit_dimension(g: LieAlgebra, mu: Sequence) -> int:
    return la.rank(omega_matrix(g, mu))


def _require_abelian_ideal(g: LieAlgebra, a: Subspace) -> None:
    if a.ambient_dim != g.dim:
        raise DimensionError("subspace lives in the wrong ambient space")
    if not (is_abelian_subspace(g, a) and is_ideal(g, a)):
        raise NotAbelianIdeal("a must be an abelian ideal")


def dimension_condition(g: LieAlgebra, a: Subspace, mu: Sequence) -> bool:
    """dim g + dim g_mu == 2 dim a."""
    _require_abelian_ideal(g, a)
    return g.dim + isotropy(g, mu).dim == 2 * a.dim


def maximal_isotropic_check(g: LieAlgebra, a: Subspace, mu: Sequence) -> bool:
    """Omega_mu vanishes on a x a and dim a is half of dim g + dim g_mu."""
    if not dimension_condition(g, a, mu):
        raise PreconditionFailure("dimension condition does not hold at this mu")
    mu = _covector(g, mu)
    isotropic = all(pair(mu, g.bracket(x, y)) == 0 for x in a.basis for y in a.basis)
    return isotropic and 2 * a.dim == g.dim + isotropy(g, mu).dim


def default_complement(g: LieAlgebra, a: Subspace) -> list:
    return la.extend_to_basis(a.basis, g.dim)


def central_complement(g: LieAlgebra, a: Subspace) -> list:
    """Fixed basis of a complement of Z(g) inside a; raises if Z(g) is not in a."""
    z = center(g)
    if not z <= a:
        raise CenterNotInsideA("the center is not contained in a")
    return z.complement_in(a)


def _check_complement(g: LieAlgebra, a: Subspace, xs: Sequence[Sequence]) -> list:
    xs = [la.vec(x) for x in xs]
    if any(len(x) != g.dim for x in xs):
        raise DimensionError("complement vector has the wrong length")
    if len(xs) + a.dim != g.dim or Subspace.span(list(a.basis) + xs, g.dim).dim != g.dim:
        raise NotAComplement("X is not a direct complement of a")
    return xs


def t_mu_matrix(g: LieAlgebra, a: Subspace, X, mu: Sequence, ys: Optional[Sequence] = None) -> la.Matrix:
    """Matrix of T_mu: X -> (a/Z(g))*.

    Rows follow the X basis, columns the complement basis of Z(g) in a; entry
    (i, b) is <mu, [Y_b, X_i]>. ``X=None`` uses the default standard complement.
    """
    mu = _covector(g, mu)
    xs = _check_complement(g, a, default_complement(g, a) if X is None else _basis_of(X))
    ys = central_complement(g, a) if ys is None else [la.vec(y) for y in ys]
    for z in center(g).basis:
        for x in xs:
            if pair(mu, g.bracket(z, x)) != 0:
                raise PreconditionFailure("T_mu is not well defined: pairing with the center is nonzero")
    return tuple(tuple(pair(mu, g.bracket(y, x)) for y in ys) for x in xs)


def _basis_of(X) -> list:
    return list(X.basis) if isinstance(X, Subspace) else list(X)


def t_mu_injective(tm: la.Matrix, nrows: int) -> bool:
    return nrows == 0 or la.rank(tm) == nrows


def m_matrix(g: LieAlgebra, xs: Sequence, ys: Sequence, mu: Sequence) -> la.Matrix:
    """M(mu)_ij = <ad*_{-X_i} mu, Y_j> = -<mu, [X_i, Y_j]>."""
    mu = _covector(g, mu)
    return tuple(tuple(-pair(mu, g.bracket(x, y)) for y in ys) for x in xs)


def psi(g: LieAlgebra, basis, mu: Sequence) -> Fraction:
    """det M(mu) for a canonical basis (anything with ``X_i`` and ``Y_j`` lists)."""
    return la.det(m_matrix(g, basis.X_i, basis.Y_j, mu))


def coadjoint_shift(g: LieAlgebra, a: Subspace, mu: Sequence, mu_tilde: Sequence) -> la.Vector:
    """Y in a with mu - ad*_Y mu = mu_tilde, i.e. exp(-ad*_Y) mu = mu_tilde.

    The series stops after the linear term because (ad*_Y)^2 mu = 0 for Y in an
    abelian ideal; both facts are checked before returning.
    """
    _require_abelian_ideal(g, a)
    mu, mt = _covector(g, mu), _covector(g, mu_tilde)
    diff = la.sub(mu, mt)
    if any(pair(diff, y) != 0 for y in a.basis):
        raise RestrictionMismatch("mu and mu_tilde restrict differently to a")
    if not a.basis:
        if not la.is_zero(diff):
            raise NoShift("a is zero and mu != mu_tilde")
        return la.zeros(g.dim)
    cols = [ad_star(g, y, mu) for y in a.basis]
    try:
        t = la.solve(la.transpose(cols), diff, ncols=len(cols))
    except NoSolution:
        raise NoShift("mu - mu_tilde is not of the form ad*_Y mu with Y in a") from None
    y = la.lincomb(t, a.basis)
    first = ad_star(g, y, mu)
    if not la.is_zero(ad_star(g, y, first)):
        raise NoShift("(ad*_Y)^2 mu does not vanish")
    if la.sub(mu, first) != mt:
        raise NoShift("shift verification failed")
    return y


def apply_shift(g: LieAlgebra, y: Sequence, mu: Sequence, terms: int = 4) -> la.Vector:
    """Truncated sum_k (-1)^k / k! (ad*_Y)^k mu, with ``terms`` terms."""
    out = la.vec(mu)
    cur = la.vec(mu)
    fact = 1
    for k in range(1, terms):
        cur = ad_star(g, y, cur)
        fact *= k
        out = la.add(out, la.scale(Fraction((-1) ** k, fact), cur))
    return out


@dataclass
class MomentumAnalysis:
    mu: tuple
    omega: tuple
    isotropy: Subspace
    orbit_dim: int
    dim_condition_holds: bool
    isotropy_in_a: bool
    T_matrix: Optional[tuple]
    T_injective: bool
    M_matrix: Optional[tuple] = None
    psi: Optional[Fraction] = None


def analyze_momentum(g: LieAlgebra, a: Subspace, mu: Sequence, X=None, basis=None) -> MomentumAnalysis:
    _require_abelian_ideal(g, a)
    mu = _covector(g, mu)
    om = omega_matrix(g, mu)
    iso = Subspace.span(la.kernel_basis(om, ncols=g.dim), g.dim)
    xs = default_complement(g, a) if X is None else _basis_of(X)
    # T_mu needs Z(g) inside a; without it the map is undefined and reported as such
    tm = t_mu_matrix(g, a, xs, mu) if center(g) <= a else None
    res = MomentumAnalysis(
        mu=mu, omega=om, isotropy=iso, orbit_dim=g.dim - iso.dim,
        dim_condition_holds=g.dim + iso.dim == 2 * a.dim,
        isotropy_in_a=iso <= a, T_matrix=tm,
        T_injective=tm is not None and t_mu_injective(tm, len(xs)),
    )
    if basis is not None:
        res.M_matrix = m_matrix(g, basis.X_i, basis.Y_j, mu)
        res.psi = la.det(res.M_matrix)
    return res


@dataclass
class EquivalenceVerdict:
    status: str
    reasons: list
    caveats: list
    analysis: MomentumAnalysis

    @property
    def equivalent(self) -> bool:
        return self.status == EQUIVALENT


def equivalence_verdict(g: LieAlgebra, a: Subspace, mu: Sequence, X=None) -> EquivalenceVerdict:
    """EQUIVALENT exactly when g_mu lies in a and T_mu is injective.

    If Z(g) is not inside a, g_mu (which always contains Z(g)) is not either, so
    the verdict is NOT_EQUIVALENT with T_mu left undefined.
    """
    an = analyze_momentum(g, a, mu, X=X)
    reasons = []
    if not an.isotropy_in_a:
        reasons.append(ISOTROPY_REASON)
    if not an.T_injective and an.T_matrix is not None:
        reasons.append(INJECTIVITY_REASON)
    caveats = [] if is_nilpotent(g) else [GROUP_CAVEAT]
    return EquivalenceVerdict(NOT_EQUIVALENT if reasons else EQUIVALENT, reasons, caveats, an)


@dataclass
class GenericReport:
    seed: int
    trials: int
    bound: int
    samples: list = field(default_factory=list)
    verdicts: list = field(default_factory=list)
    label: str = "generic (probabilistic)"

    @property
    def orbit_dims(self) -> list:
        return [v.analysis.orbit_dim for v in self.verdicts]

    @property
    def max_orbit_dim(self) -> int:
        return max(self.orbit_dims)

    @property
    def equivalent_count(self) -> int:
        return sum(v.equivalent for v in self.verdicts)

    @property
    def equivalent_fraction(self) -> Fraction:
        return Fraction(self.equivalent_count, self.trials)

    @property
    def representative(self) -> tuple:
        """First sampled mu reaching the maximal orbit dimension."""
        top = self.max_orbit_dim
        return next(mu for mu, d in zip(self.samples, self.orbit_dims) if d == top)


def random_covector(rng: random.Random, n: int, bound: int) -> la.Vector:
    return tuple(Fraction(rng.randint(-bound, bound)) for _ in range(n))


def generic_scan(g: LieAlgebra, a: Subspace, trials: int = 5, bound: int = 10 ** 4, seed: int = 0,
                 X=None) -> GenericReport:
    """Equivalence verdicts at ``trials`` seeded random integer covectors."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    report = GenericReport(seed, trials, bound)
    for _ in range(trials):
        mu = random_covector(rng, g.dim, bound)
        report.samples.append(mu)
        report.verdicts.append(equivalence_verdict(g, a, mu, X=X))
    return report
