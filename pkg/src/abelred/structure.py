"""Structural invariants: central series, centers, centralizers, gradings, ideals."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import linalg as la
from .algebra import LieAlgebra, Subspace, bracket_span, check_grading, is_ideal
from .errors import GradingFailure, MaximalAbelianIdealNotSupported, NoGradingDeclared


def full(g: LieAlgebra) -> Subspace:
    return Subspace.full(g.dim)


def derived(g: LieAlgebra) -> Subspace:
    """[g, g]."""
    return Subspace.span((g.bracket(g.e(i), g.e(j)) for i, j, _ in g.nonzero_brackets()), g.dim)


def descending_series(g: LieAlgebra) -> list[Subspace]:
    """g^1 = g, g^{i+1} = [g, g^i], listed until the series stabilizes.

    A nilpotent algebra ends with the zero subspace; otherwise the last entry is
    the nonzero limit of the series.
    """
    series = [full(g)]
    while True:
        nxt = bracket_span(g, series[0], series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series


def step(g: LieAlgebra) -> Optional[int]:
    """Nilpotency step, 0 for the zero algebra, None when g is not nilpotent."""
    series = descending_series(g)
    if series[-1].dim != 0:
        return None
    return len(series) - 1


def is_nilpotent(g: LieAlgebra) -> bool:
    return step(g) is not None


def centralizer(g: LieAlgebra, h: Subspace) -> Subspace:
    """C(h, g) = {W : [h, W] = 0}."""
    rows = [row for x in h.basis for row in g.ad_matrix(x)]
    return Subspace.span(la.kernel_basis(rows, ncols=g.dim), g.dim)


def center(g: LieAlgebra) -> Subspace:
    return centralizer(g, full(g))


def _mod_matrix(g: LieAlgebra, s: Subspace) -> la.Matrix:
    """Annihilator basis of ``s``, as rows: a linear map whose kernel is exactly ``s``."""
    return tuple(la.kernel_basis(s.basis, ncols=g.dim))


def second_center(g: LieAlgebra) -> Subspace:
    """Z_2(g) = {W : [g, [g, W]] = 0} = {W : [g, W] inside Z(g)}."""
    mod_z = _mod_matrix(g, center(g))
    rows = [row for i in range(g.dim) for row in la.mat_mul(mod_z, g.ad_matrix(g.e(i)))] if mod_z else []
    return Subspace.span(la.kernel_basis(rows, ncols=g.dim), g.dim)


def is_abelian_subspace(g: LieAlgebra, s: Subspace) -> bool:
    return all(la.is_zero(g.bracket(x, y)) for i, x in enumerate(s.basis) for y in s.basis[i + 1:])


def is_metabelian(g: LieAlgebra) -> bool:
    return is_abelian_subspace(g, derived(g))


def _layers(g: LieAlgebra) -> dict[int, Subspace]:
    if not g.grading:
        raise NoGradingDeclared("no grading declared for this algebra")
    return g.grading


def verify_grading(g: LieAlgebra) -> bool:
    """Direct-sum decomposition with [V_a, V_b] inside V_{a+b}."""
    _layers(g)
    try:
        check_grading(g)
    except GradingFailure:
        return False
    return True


def verify_stratification(g: LieAlgebra) -> bool:
    """A grading V_1..V_s with [V_1, V_a] = V_{a+1} and V_{s+1} = 0."""
    layers = _layers(g)
    if not verify_grading(g):
        return False
    top = max(layers)
    if sorted(layers) != list(range(1, top + 1)) or any(v.dim == 0 for v in layers.values()):
        return False
    zero = Subspace.zero(g.dim)
    v1 = layers[1]
    for a in range(1, top + 1):
        if bracket_span(g, v1, layers[a]) != layers.get(a + 1, zero):
            return False
    return True


def carnot_rank(g: LieAlgebra) -> Optional[int]:
    """dim g - dim [g, g]; None when g is not nilpotent."""
    if not is_nilpotent(g):
        return None
    return g.dim - derived(g).dim


def maximal_abelian_ideal(g: LieAlgebra) -> Subspace:
    """A maximal abelian ideal containing [g, g] and Z(g).

    Greedy and deterministic: start from [g, g] + Z(g) and keep adjoining the
    lowest-index standard basis vector in C(a, g) but not in a. When no standard
    vector qualifies, the first reduced basis row of C(a, g) outside a is used.
    Stops when C(a, g) = a, which certifies maximality among abelian subalgebras.
    """
    d = derived(g)
    if not is_abelian_subspace(g, d):
        raise MaximalAbelianIdealNotSupported("[g, g] is not abelian; g is not metabelian")
    a = d + center(g)
    while True:
        c = centralizer(g, a)
        if c == a:
            return a
        pick = next((g.e(k) for k in range(g.dim) if c.contains(g.e(k)) and not a.contains(g.e(k))), None)
        if pick is None:
            pick = next(b for b in c.basis if not a.contains(b))
        a = Subspace.span(a.basis + (pick,), g.dim)


def is_maximal_abelian_ideal(g: LieAlgebra, a: Subspace) -> bool:
    """Abelian ideal that equals its own centralizer."""
    return is_abelian_subspace(g, a) and is_ideal(g, a) and centralizer(g, a) == a


@dataclass
class StructureReport:
    dim: int
    series: list
    step: Optional[int]
    center: Subspace
    second_center: Subspace
    derived: Subspace
    is_metabelian: bool
    declared_grading_valid: Optional[bool]
    stratification_valid: Optional[bool]
    carnot_rank: Optional[int]
    abelian_ideal: Optional[Subspace] = None
    notes: list = field(default_factory=list)

    @property
    def nilpotent(self) -> bool:
        return self.step is not None


def analyze(g: LieAlgebra) -> StructureReport:
    series = descending_series(g)
    stp = None if series[-1].dim else len(series) - 1
    der = derived(g)
    meta = is_abelian_subspace(g, der)
    grading_ok = strat_ok = None
    if g.grading:
        grading_ok = verify_grading(g)
        strat_ok = verify_stratification(g)
    report = StructureReport(
        dim=g.dim, series=series, step=stp, center=center(g), second_center=second_center(g),
        derived=der, is_metabelian=meta, declared_grading_valid=grading_ok,
        stratification_valid=strat_ok,
        carnot_rank=None if stp is None else g.dim - der.dim,
    )
    if meta:
        report.abelian_ideal = maximal_abelian_ideal(g)
    else:
        report.notes.append("not metabelian: no maximal abelian ideal constructed")
    return report
