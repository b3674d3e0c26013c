"""Exact basepoint-freeness thresholds of polarized abelian surfaces."""

from .bft import (
    FamilyMatch,
    SubadditivityReport,
    ThresholdResult,
    beta0_principal,
    beta_inverse,
    beta_lower_bound_sup,
    beta_pair,
    beta_principal,
    family_beta,
    family_matches,
    product_surface_beta,
    subadditivity_check,
)
from .crf import CrfTriple, PiecewiseQuad, Quad, crf_eval, crf_ideal_l, crf_ideal_n, crf_semihomog
from .errors import BFTError, HypothesisFailed
from .exact import QuadVal, quad_cmp, quad_normalize
from .lattice import (
    NSLattice,
    destab_candidates,
    pair_from_classes,
    realize_corollary_lattice,
    search_irrational,
    trivial_solution_decomposition,
)
from .pell import PellSolution, PerfectSquareMarker, fundamental_solution, nth_solution, pell_for_type
from .polarization import PolarizedPair
from .semihomog import ChernVector, chern_vector, chern_vector_raw, hom_euler, roots_s, torsion_count_u

__version__ = "0.1.0"
