"""tangentlab: exact verification of tangent-bundle structure on
polynomial maps over the rationals, with differential bundles,
connections, curvature, and torsion."""

from .poly import (DimensionError, ParseError, Poly, PolyMap, compose_chain,
                   poly_arith, poly_compose, poly_eval, poly_parse,
                   poly_partial, stack)
from .tangent import (DEFAULT_MAX_TANGENT_ORDER, FiberedObject, InputError,
                      TangentStructure, cartesian_pair, cartesian_prod,
                      iterate_tangent, projection, structure_map,
                      tangent_map, to_terminal, whisker)
from .axioms import (Composite, SquareSpec, VerificationResult,
                     check_equation, generate_monomial_corpus,
                     polynomial_inverse, verify_iso, verify_pullback_square,
                     verify_tangent_axioms)
from .bundles import (DiffBundle, DiffObject, bundle_morphism_is_linear,
                      bundle_point_to_diff_object,
                      diff_object_to_bundle_point, standard_diff_object,
                      tangent_bundle_of, tangent_diff_bundle,
                      tangent_diff_object, trivial_bundle,
                      verify_diff_bundle, verify_diff_object)
from .connections import (BundleSection, ChristoffelField, Connection,
                          VectorField, connection_from_christoffel,
                          covariant_derivative, curvature_morphism,
                          curvature_tensor, flat_connection, lie_bracket,
                          riemann_oracle, tangent_connection, torsion_morphism,
                          torsion_oracle, torsion_tensor,
                          verify_full_connection,
                          verify_horizontal_connection,
                          verify_vertical_connection)
from .workspace import (Report, RunOptions, Workspace, WorkspaceError,
                        emit_report, parse_workspace, run_workspace)

__version__ = "0.1.0"
