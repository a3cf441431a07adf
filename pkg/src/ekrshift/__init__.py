"""Exterior algebraic shifting, depth, near-cones and EKR bounds for simplicial complexes."""

__version__ = "0.1.0"

from .complex import (Complex, ComplexError, antistar, boundary_of_simplex, cone, format_facet_list, from_facets,
                      is_shifted, is_subcomplex, join, link, parse_facet_list, pure_skeleton, simplex, skeleton)
from .ekr import (EkrReport, MaxFamilyResult, NoTFaceError, check_prop_easy, max_intersecting_family, star_bound,
                  verify_borg)
from .family import Family, is_t_intersecting
from .fflinalg import DEFAULT_PRIME, FieldConfig, RankOracle, det_mod_p, rank_mod_p
from .homology import (BettiTable, DepthReport, boundary_matrix, depth, is_cohen_macaulay, is_sequentially_cm,
                       reduced_betti)
from .nearcone import (ApexSequence, check_apex_face, check_link_commutation, check_skeleton_shifting,
                       find_apex_sequence, is_near_cone, validate_apex_sequence)
from .shifting import ShiftResult, check_axioms, exterior_shift, shift_family
