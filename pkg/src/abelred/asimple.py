"""A-simplicity: certificates, constructive certification, search, canonical bases.

A certificate for (g, a) is a basis X_1..X_n of a complement of a together with
Y_1..Y_n in a, independent modulo Z(g), such that each [X_i, Y_i] is a nonzero
central vector.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from . import linalg as la
from .algebra import LieAlgebra, Subspace, is_ideal, quotient
from .catalog import jet, jet_name, multi_indices
from .errors import (CertificateError, ConstructionFailure, DegeneratePairing, NoSolution,
                     PreconditionFailure)
from .structure import (_mod_matrix, center, centralizer, derived, is_abelian_subspace,
                        is_maximal_abelian_ideal, is_metabelian, is_nilpotent,
                        maximal_abelian_ideal, second_center, step, verify_stratification)

PROVEN_YES = "PROVEN_YES"
PROVEN_NO = "PROVEN_NO"
UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class ASimpleCertificate:
    a: Subspace
    X_basis: tuple
    Y_witnesses: tuple
    brackets: tuple

    @property
    def n(self) -> int:
        return len(self.X_basis)


def make_certificate(g: LieAlgebra, a: Subspace, xs: Sequence, ys: Sequence) -> ASimpleCertificate:
    """Certificate with the brackets [X_i, Y_i] filled in (not yet verified)."""
    xs = tuple(la.vec(x) for x in xs)
    ys = tuple(la.vec(y) for y in ys)
    return ASimpleCertificate(a, xs, ys, tuple(g.bracket(x, y) for x, y in zip(xs, ys)))


@dataclass(frozen=True)
class CertificateCheck:
    ok: bool
    index: Optional[int] = None
    reason: str = ""

    def __bool__(self):
        return self.ok

    def raise_for_failure(self) -> None:
        if not self.ok:
            raise CertificateError(self.index, self.reason)


def _fail(index, reason) -> CertificateCheck:
    return CertificateCheck(False, index, reason)


def verify_certificate(g: LieAlgebra, cert: ASimpleCertificate) -> CertificateCheck:
    """Check every certificate invariant exactly; the first violation is reported."""
    a, xs, ys, bs = cert.a, cert.X_basis, cert.Y_witnesses, cert.brackets
    n = len(xs)
    if a.ambient_dim != g.dim or any(len(v) != g.dim for v in (*xs, *ys, *bs)):
        return _fail(None, "vector lengths do not match the algebra")
    if not (len(ys) == n and len(bs) == n):
        return _fail(None, "need as many witnesses and brackets as complement vectors")
    if not is_nilpotent(g):
        return _fail(None, "algebra is not nilpotent")
    if not is_metabelian(g):
        return _fail(None, "algebra is not metabelian")
    if not (is_abelian_subspace(g, a) and is_ideal(g, a)):
        return _fail(None, "a is not an abelian ideal")
    if centralizer(g, a) != a:
        return _fail(None, "a is not a maximal abelian ideal")
    if n + a.dim != g.dim or Subspace.span(a.basis + xs, g.dim).dim != g.dim:
        return _fail(None, "X is not a basis of a complement of a")
    z = center(g)
    mod = list(z.basis)
    for i, (x, y, b) in enumerate(zip(xs, ys, bs)):
        if not a.contains(y):
            return _fail(i, "witness is not in a")
        if la.rank(mod + [y]) == len(mod):
            return _fail(i, "witnesses are linearly dependent modulo the center")
        mod.append(y)
        if g.bracket(x, y) != tuple(b):
            return _fail(i, "recorded bracket differs from [X_i, Y_i]")
        if la.is_zero(b):
            return _fail(i, "bracket [X_i, Y_i] is zero")
        if not z.contains(b):
            return _fail(i, "bracket [X_i, Y_i] is not central")
    return CertificateCheck(True)


@dataclass
class ASimpleVerdict:
    status: str
    reason: str = ""
    certificate: Optional[ASimpleCertificate] = None
    candidates_tried: int = 0

    def __bool__(self):
        return self.status == PROVEN_YES


def _yes(g, cert, reason, tried=0) -> ASimpleVerdict:
    verify_certificate(g, cert).raise_for_failure()
    return ASimpleVerdict(PROVEN_YES, reason, cert, tried)


def necessary_condition(g: LieAlgebra, a: Subspace) -> bool:
    """dim g + dim Z(g) <= 2 dim a."""
    if not is_maximal_abelian_ideal(g, a):
        raise PreconditionFailure("a must be a maximal abelian ideal")
    return g.dim + center(g).dim <= 2 * a.dim


def kirillov_pair(g: LieAlgebra, Z: Sequence, D, W) -> tuple[list, la.Matrix]:
    """Unique basis X_i of W with [X_i, D_j] = delta_ij Z.

    The pairing B(W_k, D_j) is read off from [W_k, D_j] = B_kj Z and inverted.
    Returns (X basis, B).
    """
    z = la.vec(Z)
    ds = list(D.basis) if isinstance(D, Subspace) else [la.vec(v) for v in D]
    ws = list(W.basis) if isinstance(W, Subspace) else [la.vec(v) for v in W]
    if la.is_zero(z):
        raise DegeneratePairing("Z must be nonzero")
    if len(ds) != len(ws):
        raise DegeneratePairing(f"dim W = {len(ws)} but dim D = {len(ds)}")
    zcol = la.transpose([z])
    pairing = []
    for w in ws:
        row = []
        for d in ds:
            try:
                (coef,) = la.solve(zcol, g.bracket(w, d), ncols=1)
            except NoSolution:
                raise DegeneratePairing("[W, D] is not inside the line spanned by Z") from None
            row.append(coef)
        pairing.append(tuple(row))
    pairing = tuple(pairing)
    try:
        inv = la.inverse(pairing) if pairing else ()
    except NoSolution:
        raise DegeneratePairing("pairing between W and D is singular") from None
    xs = [la.lincomb(row, ws, n=g.dim) for row in inv]
    return xs, pairing


def certify_onedim_center(g: LieAlgebra, a: Subspace) -> ASimpleVerdict:
    """Constructive certificate for stratified metabelian algebras with a line as center."""
    if not is_metabelian(g):
        raise PreconditionFailure("algebra is not metabelian")
    if not g.grading or not verify_stratification(g):
        raise PreconditionFailure("algebra has no valid declared stratification")
    z = center(g)
    if z.dim != 1:
        raise PreconditionFailure(f"center has dimension {z.dim}, expected 1")
    if not derived(g) <= a:
        raise PreconditionFailure("a does not contain [g, g]")
    if not is_maximal_abelian_ideal(g, a):
        raise PreconditionFailure("a is not a maximal abelian ideal")
    zv = z.basis[0]
    if step(g) == 2:
        d = z.complement_in(a)
        w = la.extend_to_basis(a.basis, g.dim)
        route = "step 2: direct pairing against the center"
    else:
        z2 = second_center(g)
        if not z2 <= a:
            raise PreconditionFailure("second center is not inside a")
        if centralizer(g, z2) != a:
            raise PreconditionFailure("a differs from the centralizer of the second center")
        d = z.complement_in(z2)
        w = la.extend_to_basis(a.basis, g.dim)
        route = "second center paired against a complement of its centralizer"
    xs, _ = kirillov_pair(g, zv, d, w)
    return _yes(g, make_certificate(g, a, xs, d), route)


def _solution_space(g: LieAlgebra, a: Subspace, mod_z, x) -> list:
    """Basis of {Y in a : [x, Y] in Z(g)}."""
    if not mod_z:
        return list(a.basis)
    cols = [la.mat_vec(mod_z, g.bracket(x, y)) for y in a.basis]
    ker = la.kernel_basis(la.transpose(cols), ncols=a.dim)
    return list(Subspace.span((la.lincomb(t, a.basis) for t in ker), g.dim).basis)


def _pick_witnesses(g, xs, spaces, zbasis, node_limit=2000):
    n = len(xs)
    options = []
    for x, s in zip(xs, spaces):
        cands = list(s) + [la.add(u, v) for k, u in enumerate(s) for v in s[k + 1:]]
        options.append([y for y in cands if not la.is_zero(g.bracket(x, y))])
    chosen: list = []
    nodes = [0]

    def dfs(i):
        if i == n:
            return True
        for y in options[i]:
            nodes[0] += 1
            if nodes[0] > node_limit:
                return False
            rows = list(zbasis) + chosen
            if la.rank(rows + [y]) == len(rows) and rows:
                continue
            if not rows and la.is_zero(y):
                continue
            chosen.append(y)
            if dfs(i + 1):
                return True
            chosen.pop()
        return False

    return list(chosen) if dfs(0) else None


def _perturbed_complement(rng: random.Random, xs: list, a: Subspace) -> list:
    n = len(xs)
    while True:
        r = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        if la.det(r) != 0:
            break
    out = []
    for row in r:
        v = la.lincomb(row, xs)
        shift = [rng.randint(-1, 1) for _ in a.basis]
        out.append(la.add(v, la.lincomb(shift, a.basis, n=len(v))))
    return out


def heuristic_search(g: LieAlgebra, a: Subspace, seed: int = 0, budget: int = 64) -> ASimpleVerdict:
    """Search complements for witnesses; UNKNOWN when the budget runs out."""
    if not is_nilpotent(g):
        return ASimpleVerdict(PROVEN_NO, "algebra is not nilpotent")
    if not is_metabelian(g):
        return ASimpleVerdict(PROVEN_NO, "algebra is not metabelian")
    if not necessary_condition(g, a):
        zd = center(g).dim
        return ASimpleVerdict(
            PROVEN_NO, f"dim g + dim Z(g) = {g.dim + zd} > {2 * a.dim} = 2 dim a")
    z = center(g)
    mod_z = _mod_matrix(g, z)
    base = la.extend_to_basis(a.basis, g.dim)
    if not base:
        return _yes(g, make_certificate(g, a, [], []), "a = g", 1)
    rng = random.Random(seed)
    for attempt in range(budget):
        xs = base if attempt == 0 else _perturbed_complement(rng, base, a)
        spaces = [_solution_space(g, a, mod_z, x) for x in xs]
        ys = _pick_witnesses(g, xs, spaces, z.basis)
        if ys is not None:
            cert = make_certificate(g, a, xs, ys)
            if verify_certificate(g, cert):
                return _yes(g, cert, f"witnesses found on candidate complement {attempt}", attempt + 1)
    return ASimpleVerdict(UNKNOWN, f"no witnesses found in {budget} candidate complements",
                          candidates_tried=budget)


def decide(g: LieAlgebra, a: Optional[Subspace] = None, seed: int = 0, budget: int = 64) -> ASimpleVerdict:
    """Constructive route when it applies, otherwise the necessary condition and search."""
    if not is_nilpotent(g):
        return ASimpleVerdict(PROVEN_NO, "algebra is not nilpotent")
    if not is_metabelian(g):
        return ASimpleVerdict(PROVEN_NO, "algebra is not metabelian")
    if a is None:
        a = maximal_abelian_ideal(g)
    if center(g).dim == 1 and g.grading and verify_stratification(g):
        try:
            return certify_onedim_center(g, a)
        except (PreconditionFailure, DegeneratePairing):
            pass
    return heuristic_search(g, a, seed=seed, budget=budget)


def jet_certificate(k: int, n: int, m: int) -> ASimpleCertificate:
    """Witnesses Y^1_{e_j} for X_j in the jet algebra; brackets are -Y^1_0."""
    g = jet(k, n, m)
    xs = [g.e(f"X{i}") for i in range(1, n + 1)]
    ys = [g.e(jet_name(1, tuple(int(r == j) for r in range(n)))) for j in range(n)]
    a = Subspace.span((g.e(jet_name(ell, I)) for ell in range(1, m + 1) for I in multi_indices(n, k)), g.dim)
    return make_certificate(g, a, xs, ys)


# ---------------------------------------------------------------- canonical basis

@dataclass
class CanonicalBasis:
    """Basis {Z0, Z_I, Y_j, Y_a, X_i} with [X_i, Y_j] = d_ij Z0 + sum C^I Z_I + sum C^a Y_a."""

    Z0: tuple
    Z_I: list
    Y_j: list
    Y_a: list
    X_i: list
    C_I: list = field(default_factory=list)  # C_I[i][j][I]
    C_a: list = field(default_factory=list)  # C_a[i][j][a]

    @property
    def n(self) -> int:
        return len(self.X_i)

    def vectors(self) -> list:
        return [self.Z0, *self.Z_I, *self.Y_j, *self.Y_a, *self.X_i]

    def labels(self) -> list:
        return (["Z0"] + [f"Z_{k + 1}" for k in range(len(self.Z_I))]
                + [f"Y_{j + 1}" for j in range(self.n)]
                + [f"Ya_{k + 1}" for k in range(len(self.Y_a))]
                + [f"X_{i + 1}" for i in range(self.n)])

    def covector(self, c, eps=(), beta=(), gamma=(), alpha=()) -> la.Vector:
        """mu with <mu, Z0> = c, <mu, Z_I> = eps, <mu, Y_j> = beta, <mu, Y_a> = gamma, <mu, X_i> = alpha.

        Missing trailing values default to zero.
        """
        def pad(vals, k):
            vals = list(vals)
            if len(vals) > k:
                raise ValueError("too many coordinates")
            return vals + [0] * (k - len(vals))
        values = ([c] + pad(eps, len(self.Z_I)) + pad(beta, self.n)
                  + pad(gamma, len(self.Y_a)) + pad(alpha, self.n))
        return la.solve(self.vectors(), la.vec(values))

    def relation_residual(self, g: LieAlgebra, i: int, j: int) -> la.Vector:
        """[X_i, Y_j] minus the right-hand side built from the stored coefficients."""
        rhs = la.scale(1 if i == j else 0, self.Z0)
        rhs = la.add(rhs, la.lincomb(self.C_I[i][j], self.Z_I, n=g.dim))
        rhs = la.add(rhs, la.lincomb(self.C_a[i][j], self.Y_a, n=g.dim))
        return la.sub(g.bracket(self.X_i[i], self.Y_j[j]), rhs)

    def verify(self, g: LieAlgebra, a: Subspace) -> None:
        vs = self.vectors()
        if len(vs) != g.dim or la.rank(vs) != g.dim:
            raise ConstructionFailure("vectors do not form a basis of g")
        if Subspace.span([self.Z0, *self.Z_I], g.dim) != center(g):
            raise ConstructionFailure("Z0 and Z_I do not span the center")
        if Subspace.span([self.Z0, *self.Z_I, *self.Y_j, *self.Y_a], g.dim) != a:
            raise ConstructionFailure("Z0, Z_I, Y_j, Y_a do not span a")
        for i in range(self.n):
            for j in range(self.n):
                if not la.is_zero(self.relation_residual(g, i, j)):
                    raise ConstructionFailure(f"commutation relation fails at ({i + 1}, {j + 1})")


def _integer_vectors(dim: int, max_norm: int):
    """Nonzero integer vectors by max-norm, then support size, then position, then sign."""
    for norm in range(1, max_norm + 1):
        pool = [v for v in product(range(-norm, norm + 1), repeat=dim) if max(map(abs, v)) == norm]
        pool.sort(key=lambda v: (sum(1 for x in v if x), tuple(-abs(x) for x in v), tuple(x < 0 for x in v)))
        yield from pool


@dataclass
class _Stage:
    algebra: LieAlgebra
    proj: tuple  # composite projection g -> algebra


def _witnesses_ok(h: LieAlgebra, proj, ys, bs) -> bool:
    zh = center(h)
    rows = list(zh.basis)
    for y, b in zip(ys, bs):
        img = la.mat_vec(proj, b)
        if la.is_zero(img):
            return False
        yi = la.mat_vec(proj, y)
        if la.rank(rows + [yi]) == len(rows):
            return False
        rows.append(yi)
    return True


def _reduction_candidates(stage: _Stage, a: Subspace, cert: ASimpleCertificate, max_norm: int):
    h, proj = stage.algebra, stage.proj
    zh = center(h)
    lines = [Subspace.span([la.mat_vec(proj, b)], h.dim) for b in cert.brackets]
    for coeffs in _integer_vectors(zh.dim, max_norm):
        zeta = la.lincomb(coeffs, zh.basis)
        if any(line.contains(zeta) for line in lines):
            continue
        q = quotient(h, Subspace.span([zeta], h.dim))
        new_proj = la.mat_mul(q.projection, proj)
        h2 = q.algebra
        a2 = Subspace.span((la.mat_vec(new_proj, v) for v in a.basis), h2.dim)
        if not center(h2) <= a2:
            continue
        if not _witnesses_ok(h2, new_proj, cert.Y_witnesses, cert.brackets):
            continue
        yield _Stage(h2, new_proj)


def _base_case(g: LieAlgebra, a: Subspace, cert: ASimpleCertificate, stage: _Stage):
    """Pairing construction in an algebra whose center is a line; None on failure."""
    h, proj = stage.algebra, stage.proj
    dim = h.dim
    n = cert.n
    zt = center(h).basis[0]
    at = Subspace.span((la.mat_vec(proj, v) for v in a.basis), dim)
    xt = [la.mat_vec(proj, x) for x in cert.X_basis]
    yt = [la.mat_vec(proj, y) for y in cert.Y_witnesses]
    dsp = Subspace.span(yt, dim)
    if dsp.dim != n:
        return None
    s = Subspace.span([h.bracket(x, y) for x in xt for y in yt] + [zt], dim)
    if s.intersect(dsp).dim:
        return None
    zline = Subspace.span([zt], dim)
    r = zline.complement_in(s)
    rest = (s + dsp).complement_in(at)
    ya_t = r + rest
    frame = [zt, *yt, *ya_t]
    if la.rank(frame) != at.dim:
        return None
    frame_t = la.transpose(frame)
    pairing = []
    for x in xt:
        row = []
        for y in yt:
            coords = la.solve(frame_t, h.bracket(x, y), ncols=len(frame))
            if any(coords[1:1 + n]):
                return None
            row.append(coords[0])
        pairing.append(tuple(row))
    try:
        inv = la.inverse(tuple(pairing))
    except NoSolution:
        return None

    # lift back to g
    def lift(target, within):
        cols = la.transpose([la.mat_vec(proj, v) for v in within], dim)
        t = la.solve(cols, target, ncols=len(within))
        return la.lincomb(t, within, n=g.dim)

    zg = center(g)
    z0 = lift(zt, list(zg.basis))
    xs = [la.lincomb(row, cert.X_basis) for row in inv]
    ys = list(cert.Y_witnesses)
    ya_lift = [lift(v, list(a.basis)) for v in ya_t]
    ker = Subspace.span(la.kernel_basis(proj, ncols=g.dim), g.dim)
    z_i = list((ker.intersect(zg)).basis)
    y_hat = Subspace.span(z_i, g.dim).complement_in(ker)
    return CanonicalBasis(z0, z_i, ys, ya_lift + y_hat, xs)


def _reduce(g, a, cert, stage, max_norm, tries):
    if center(stage.algebra).dim == 1:
        return _base_case(g, a, cert, stage)
    for k, nxt in enumerate(_reduction_candidates(stage, a, cert, max_norm)):
        if k >= tries:
            break
        out = _reduce(g, a, cert, nxt, max_norm, tries)
        if out is not None:
            return out
    return None


def canonical_basis(g: LieAlgebra, cert: ASimpleCertificate, max_norm: int = 2,
                    tries: int = 8) -> CanonicalBasis:
    """Canonical basis obtained by quotienting central lines down to a one-dimensional center."""
    verify_certificate(g, cert).raise_for_failure()
    a = cert.a
    start = _Stage(g, la.identity(g.dim))
    cb = _reduce(g, a, cert, start, max_norm, tries)
    if cb is None:
        raise ConstructionFailure("no admissible chain of central quotients found")
    corr = cb.Z_I + cb.Y_a
    n, nz = cb.n, len(cb.Z_I)
    cb.C_I = [[None] * n for _ in range(n)]
    cb.C_a = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            rest = la.sub(g.bracket(cb.X_i[i], cb.Y_j[j]), la.scale(1 if i == j else 0, cb.Z0))
            try:
                if corr:
                    coords = la.solve(la.transpose(corr), rest, ncols=len(corr))
                elif la.is_zero(rest):
                    coords = ()
                else:
                    raise NoSolution("nonzero residual")
            except NoSolution:
                raise ConstructionFailure(f"commutation relation fails at ({i + 1}, {j + 1})") from None
            cb.C_I[i][j] = tuple(coords[:nz])
            cb.C_a[i][j] = tuple(coords[nz:])
    cb.verify(g, a)
    return cb

