"""Exact computation of covering functionals of the 3D cross-polytope."""

__version__ = "0.1.0"

from .certifier import (COVERED, INCONCLUSIVE, NOT_COVERED, CoverageResult,
                        CoveringConfig, cross_polytope_config, sample_check,
                        verify_covering, verify_covering_2d)
from .configs import (binary_search_lambda, catalog, catalog_entry, complete_by_symmetry,
                      gamma_table, local_search_upper)
from .exact import LpProblem, parse_rational, solve_lp
from .polytope import (HalfSpace, HPolytope, cross_polytope, facets_of_cross_polytope,
                       homothet, is_empty, symmetry_group)
from .radius import cross_polytope_body, min_ratio, triangle_body
from .triangle import triangle_gamma3
from .witness import (build_witness_set, certify_lower_bound, node_midpoints,
                      node_points)
