"""G2 character varieties, octonion arithmetic and symmetric Fricke cubic surfaces."""
__version__ = "0.1.0"

from .octonion import Octonion, vector7, unit_sum
from .g2 import G2Element, AlphaBeta, TorusPoint, conj_map, alpha_beta_of, is_automorphism, fixed_vector
from .fricke import (PInvariants, SurfacePoint, SurfaceParams, AsymParams, p_invariants,
                     alpha_beta_from_p, phi, phi_inv, pr, pr_fiber, realize_triple)
from .braid import BraidWord, braid_orbit, braid_p, braid_xyz, braid_oct, braid_triple
from .fano import fano_lines, lines_through, point_invariants, group_closure
from .sl2 import SL2Matrix, seven_functions, fricke_params, theta_to_m, triality, d4_roots, reflect

__all__ = [
    "Octonion", "vector7", "unit_sum",
    "G2Element", "AlphaBeta", "TorusPoint", "conj_map", "alpha_beta_of", "is_automorphism",
    "fixed_vector",
    "PInvariants", "SurfacePoint", "SurfaceParams", "AsymParams", "p_invariants",
    "alpha_beta_from_p", "phi", "phi_inv", "pr", "pr_fiber", "realize_triple",
    "BraidWord", "braid_orbit", "braid_p", "braid_xyz", "braid_oct", "braid_triple",
    "fano_lines", "lines_through", "point_invariants", "group_closure",
    "SL2Matrix", "seven_functions", "fricke_params", "theta_to_m", "triality", "d4_roots",
    "reflect",
]
