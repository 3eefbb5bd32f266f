"""Exact computations with pluriharmonic polynomials on n x n matrices over Q(kappa)."""

from .bases import descending_basis, monomial_basis, project_Pi, reconstruct_from_seed
from .errors import (AmbientMismatch, NonHomogeneous, NonTVariable, PlurikitError, PoleAtKappa, PoleAtS,
                     SingularGram, SingularSystem, ZeroPochhammer)
from .field import KAPPA, K, KappaRational, asc_poch, desc_poch, eval_at
from .genfun import build_G, build_symmetric_G, seed_A, seed_B, sigma
from .poly import Ambient, Bidegree, Poly
from .pullback import WeightPair, build_diff2_operator, c_mn, c_pullback, phi_inverse, phi_kappa
from .weyl import apply_D, apply_E, apply_Eprime, apply_F, e_kappa, inner_product

__version__ = "0.1.0"
