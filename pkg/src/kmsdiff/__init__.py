"""Boundary combinatorics of strata of k-differentials and checks of the
local flat-area metric model."""

from .errors import CheckFailure, KDiffError, ValidationError
from .stratum import (Signature, CoverSignature, validate_signature, cover_signature,
                      power_divisors, reduce_signature, riemann_hurwitz_genus, stratum_dimension)
from .graphs import (Edge, Leg, EnhancedLevelGraph, make_graph, one_vertex_graph,
                     validate_enhanced_graph, vertex_signature, undegenerate, canonical_form)
from .boundary import enumerate_boundary_graphs
from .covers import (GraphCover, build_cover, enumerate_covers, validate_cover,
                     cover_edge_enhancement, cover_canonical_form, vertex_types)
from .prongs import (TorusData, TorusEdge, ProngMatching, TwistLattice, global_prong_matchings,
                     rotation_action, twist_group, simple_twist_and_index, prong_orbit_count,
                     slrt_parametrization_check)
from .residues import (LevelComponentData, ResidueSystem, eigenspace_dim, grc_system,
                       check_dimension_identity, pper_coordinate_shape)
from .plumbing import vertical_fixture_identity, horizontal_fixture_identity
from .metric import (Poly, Coefficient, LevelModel, MetricModel, counterexample_model,
                     eval_metric, curvature_blocks, area_from_periods)
from .estimates import (QuadratureReport, poincare_radial_integral, goodness_violation,
                        tube_integral, tube_integral_estimates)

__version__ = "0.1.0"
