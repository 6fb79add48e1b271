"""Exact Lie algebra computations for symplectic reduction by abelian ideals."""

from .algebra import LieAlgebra, Subspace, ad_star, bracket, pair, quotient, validate
from .asimple import (ASimpleCertificate, ASimpleVerdict, CanonicalBasis, canonical_basis,
                      certify_onedim_center, heuristic_search, jet_certificate, kirillov_pair,
                      necessary_condition, verify_certificate)
from .catalog import SemidirectSpec, cartan_f23, filiform, free_f24, h_nu_stabilizer, heisenberg, jet, se2, semidirect
from .coadjoint import (coadjoint_shift, dimension_condition, equivalence_verdict, generic_scan, isotropy,
                        omega_matrix, psi, t_mu_matrix)
from .fileformat import read_algebra, read_document, write_algebra
from .structure import analyze, center, maximal_abelian_ideal, second_center

__version__ = "0.1.0"
