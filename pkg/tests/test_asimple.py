from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from abelred import asimple as A
from abelred import coadjoint as co
from abelred import linalg as la
from abelred.algebra import LieAlgebra, Subspace
from abelred.catalog import cartan_f23, filiform, free_f24, heisenberg, jet
from abelred.errors import CertificateError, ConstructionFailure, DegeneratePairing, PreconditionFailure
from abelred.structure import center, maximal_abelian_ideal, second_center


def f24_certificate(g=None):
    g = g or free_f24()
    return A.make_certificate(g, maximal_abelian_ideal(g), [g.e("X1"), g.e("X2")], [g.e("Y1"), g.e("Y2")])


def direct_sum(g, h):
    names = [f"{x}_a" for x in g.names] + [f"{x}_b" for x in h.names]
    table = {(i, j): rhs for i, j, rhs in g.nonzero_brackets()}
    table.update({(g.dim + i, g.dim + j): {g.dim + k: c for k, c in rhs.items()}
                  for i, j, rhs in h.nonzero_brackets()})
    return LieAlgebra(names, table)


def test_heisenberg_certificate():
    for n in (1, 2, 3):
        g = heisenberg(n)
        a = maximal_abelian_ideal(g)
        cert = A.make_certificate(g, a, [g.e(f"X{i}") for i in range(1, n + 1)],
                                  [g.e(f"Y{i}") for i in range(1, n + 1)])
        assert A.verify_certificate(g, cert)
        assert all(b == g.e("Z") for b in cert.brackets)


def test_f24_standard_witnesses():
    g = free_f24()
    cert = f24_certificate(g)
    assert A.verify_certificate(g, cert)
    assert cert.brackets == (g.e("Z2"), g.e("Z2"))


def test_duplicate_witness_rejected():
    g = heisenberg(2)
    cert = A.make_certificate(g, maximal_abelian_ideal(g), [g.e("X1"), g.e("X2")], [g.e("Y1"), g.e("Y1")])
    check = A.verify_certificate(g, cert)
    assert not check and check.index == 1 and "dependent" in check.reason
    with pytest.raises(CertificateError):
        check.raise_for_failure()


def test_witnesses_must_be_independent_modulo_center():
    # Y and Y + Z1 are independent vectors but equal modulo the center
    g = cartan_f23()
    a = maximal_abelian_ideal(g)
    cert = A.make_certificate(g, a, [g.e("X1"), g.e("X2")], [g.e("Y"), la.add(g.e("Y"), g.e("Z1"))])
    assert all(center(g).contains(b) and not la.is_zero(b) for b in cert.brackets)
    assert not A.verify_certificate(g, cert)


def test_certificate_failures():
    g = heisenberg(1)
    a = maximal_abelian_ideal(g)
    assert not A.verify_certificate(g, A.make_certificate(g, a, [g.e("Y1")], [g.e("Y1")]))
    assert not A.verify_certificate(g, A.make_certificate(g, a, [g.e("X1")], [g.e("X1")]))
    bad = A.ASimpleCertificate(a, (g.e("X1"),), (g.e("Y1"),), (la.scale(2, g.e("Z")),))
    assert A.verify_certificate(g, bad).reason.startswith("recorded bracket")
    g2 = free_f24()
    cert = A.make_certificate(g2, maximal_abelian_ideal(g2), [g2.e("X1"), g2.e("X2")], [g2.e("Y3"), g2.e("Y2")])
    assert A.verify_certificate(g2, cert).reason == "bracket [X_i, Y_i] is not central"


@pytest.mark.parametrize("g, expected", [(cartan_f23(), False), (heisenberg(1), True), (free_f24(), True)])
def test_necessary_condition(g, expected):
    assert A.necessary_condition(g, maximal_abelian_ideal(g)) is expected


def test_necessary_condition_requires_maximal_ideal():
    g = heisenberg(1)
    with pytest.raises(PreconditionFailure):
        A.necessary_condition(g, Subspace.span([g.e("Z")], 3))


def test_kirillov_pair_filiform4():
    g = filiform(4)
    xs, b = A.kirillov_pair(g, g.e("Y3"), [g.e("Y2")], [g.e("X")])
    assert b == ((-1,),)
    assert xs == [la.scale(-1, g.e("X"))]
    assert g.bracket(xs[0], g.e("Y2")) == g.e("Y3")


def test_kirillov_pair_scaling_and_jet():
    g = filiform(4)
    z2 = la.scale(2, g.e("Y3"))
    xs, b = A.kirillov_pair(g, z2, [g.e("Y2")], [g.e("X")])
    assert b == ((Fraction(-1, 2),),)
    assert xs == [la.scale(-2, g.e("X"))]
    assert g.bracket(xs[0], g.e("Y2")) == z2
    j = jet(2, 1, 1)
    z = center(j).basis[0]
    d = center(j).complement_in(second_center(j))
    xs, _ = A.kirillov_pair(j, z, d, [j.e("X1")])
    assert j.bracket(xs[0], d[0]) == z


def test_kirillov_pair_errors():
    g = filiform(4)
    with pytest.raises(DegeneratePairing):
        A.kirillov_pair(g, g.e("Y3"), [g.e("Y2"), g.e("Y1")], [g.e("X")])
    with pytest.raises(DegeneratePairing):
        A.kirillov_pair(g, g.e("Y3"), [g.e("Y3")], [g.e("X")])
    with pytest.raises(DegeneratePairing):
        A.kirillov_pair(g, g.e("Y3"), [g.e("Y1")], [g.e("X")])


@pytest.mark.parametrize("g", [heisenberg(1), heisenberg(3), filiform(3), filiform(4), filiform(5),
                               filiform(6), jet(1, 1, 1), jet(2, 1, 1), jet(3, 1, 1), jet(1, 2, 1)])
def test_onedim_center_and_search_agree(g):
    a = maximal_abelian_ideal(g)
    v1 = A.certify_onedim_center(g, a)
    v2 = A.heuristic_search(g, a)
    assert v1.status == v2.status == A.PROVEN_YES
    assert A.verify_certificate(g, v1.certificate) and A.verify_certificate(g, v2.certificate)


def test_onedim_center_preconditions():
    with pytest.raises(PreconditionFailure):
        A.certify_onedim_center(free_f24(), maximal_abelian_ideal(free_f24()))
    g = LieAlgebra.from_names(["X", "Y", "Z"], {("X", "Y"): {"Z": 1}})
    with pytest.raises(PreconditionFailure):
        A.certify_onedim_center(g, Subspace.span([g.e("Y"), g.e("Z")], 3))


def test_jet_certificate_matches_onedim_route():
    for k in (1, 2, 3):
        g = jet(k, 1, 1)
        cert = A.jet_certificate(k, 1, 1)
        assert A.verify_certificate(g, cert)
        assert cert.brackets == (la.scale(-1, g.e("Y1_0")),)
        assert A.certify_onedim_center(g, maximal_abelian_ideal(g))


@pytest.mark.parametrize("k, n, m, dim", [(1, 1, 1, 3), (2, 1, 1, 4), (1, 2, 1, 5), (2, 2, 2, 14), (3, 2, 1, 12)])
def test_jet_certificates(k, n, m, dim):
    cert = A.jet_certificate(k, n, m)
    g = jet(k, n, m)
    assert g.dim == dim and A.verify_certificate(g, cert)


def test_heuristic_search_outcomes():
    g = free_f24()
    v = A.heuristic_search(g, maximal_abelian_ideal(g))
    assert v.status == A.PROVEN_YES and v.candidates_tried == 1
    assert v.certificate.Y_witnesses == (g.e("Y1"), g.e("Y2"))
    f = cartan_f23()
    v = A.heuristic_search(f, maximal_abelian_ideal(f))
    assert v.status == A.PROVEN_NO and "7 > 6" in v.reason


def test_search_never_claims_no_when_condition_holds():
    g = direct_sum(free_f24(), cartan_f23())
    a = maximal_abelian_ideal(g)
    assert A.necessary_condition(g, a)
    v = A.heuristic_search(g, a, seed=3, budget=4)
    assert v.status in (A.PROVEN_YES, A.UNKNOWN)
    if v.status == A.PROVEN_YES:
        assert A.verify_certificate(g, v.certificate)


def test_decide_routes():
    assert A.decide(cartan_f23()).status == A.PROVEN_NO
    assert A.decide(filiform(5)).reason.startswith("second center")
    so3 = LieAlgebra.from_names(["X", "Y", "Z"], {("X", "Y"): {"Z": 1}, ("Y", "Z"): {"X": 1}, ("X", "Z"): {"Y": -1}})
    assert A.decide(so3).status == A.PROVEN_NO


# ---------------------------------------------------------------- canonical basis

def test_canonical_basis_h3():
    g = heisenberg(1)
    cb = A.canonical_basis(g, A.certify_onedim_center(g, maximal_abelian_ideal(g)).certificate)
    assert cb.Z0 == g.e("Z") and cb.Z_I == [] and cb.Y_a == []
    assert g.bracket(cb.X_i[0], cb.Y_j[0]) == cb.Z0
    cert = A.make_certificate(g, maximal_abelian_ideal(g), [g.e("X1")], [g.e("Y1")])
    cb = A.canonical_basis(g, cert)
    assert (cb.Z0, cb.Y_j, cb.X_i) == (g.e("Z"), [g.e("Y1")], [g.e("X1")])


def test_canonical_basis_f24():
    g = free_f24()
    cb = A.canonical_basis(g, f24_certificate(g))
    assert len(cb.vectors()) == 8 and la.rank(cb.vectors()) == 8
    assert Subspace.span([cb.Z0, *cb.Z_I], 8) == center(g)
    for i in range(2):
        for j in range(2):
            assert la.is_zero(cb.relation_residual(g, i, j))


def test_canonical_basis_scaled_witnesses():
    g = free_f24()
    cert = f24_certificate(g)
    scaled = A.make_certificate(g, cert.a, cert.X_basis, [la.scale(2, y) for y in cert.Y_witnesses])
    cb = A.canonical_basis(g, scaled)
    cb.verify(g, cert.a)


def test_canonical_basis_rejects_bad_certificate():
    g = heisenberg(2)
    cert = A.make_certificate(g, maximal_abelian_ideal(g), [g.e("X1"), g.e("X2")], [g.e("Y1"), g.e("Y1")])
    with pytest.raises(CertificateError):
        A.canonical_basis(g, cert)


def test_verify_catches_tampering():
    g = free_f24()
    cb = A.canonical_basis(g, f24_certificate(g))
    cb.C_I[0][1] = tuple(c + 1 for c in cb.C_I[0][1])
    with pytest.raises(ConstructionFailure):
        cb.verify(g, maximal_abelian_ideal(g))


CERTIFIED = [
    ("heisenberg(2)", heisenberg(2), None),
    ("f24", free_f24(), f24_certificate()),
    ("filiform(6)", filiform(6), None),
    ("jet(2,2,2)", jet(2, 2, 2), A.jet_certificate(2, 2, 2)),
    ("jet(1,2,1)", jet(1, 2, 1), A.jet_certificate(1, 2, 1)),
]
BASES = []
for _label, _g, _cert in CERTIFIED:
    _cert = _cert or A.decide(_g).certificate
    BASES.append((_g, _cert, A.canonical_basis(_g, _cert)))


@pytest.mark.parametrize("g, cert, cb", BASES)
def test_psi_on_slice(g, cert, cb):
    n = cb.n
    for c in (1, -2, Fraction(3, 5)):
        mu = cb.covector(c, beta=range(1, n + 1), alpha=[7] * n)
        assert co.psi(g, cb, mu) == (-1) ** n * Fraction(c) ** n
    assert co.psi(g, cb, la.zeros(g.dim)) == 0


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(BASES), st.data())
def test_psi_nonzero_implies_t_injective(entry, data):
    g, cert, cb = entry
    mu = tuple(Fraction(data.draw(st.integers(-5, 5))) for _ in range(g.dim))
    an = co.analyze_momentum(g, cert.a, mu, X=cb.X_i, basis=cb)
    if an.psi != 0:
        assert an.T_injective
