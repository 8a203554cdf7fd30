"""Equivariant cohomology of finite G-simplicial sets with local coefficients.

Exact integer computations of Bredon-Illman cohomology with local
coefficients and of equivariant twisted cohomology, the comparison maps
between them, and the classification of twisted cochains by lifts into
O_G-Eilenberg-MacLane twisted cartesian products.
"""
from .cohomology import (BREDON, TWISTED, EquivariantCochain, EquivariantComplex,
                         bredon_coboundary, cohomology, evaluate, twisted_to_bredon, bredon_to_twisted,
                         twisted_coboundary)
from .equivariant import (FinGroup, GSimplicialSet, Morphism, OrbitCategory, cosets,
                          fixed_points, is_G_connected, orbit_times_simplex, subgroups)
from .errors import (ComplexNotExact, DimensionMismatch, EquicohomError, HypothesisViolation,
                     IndexOutOfRange, LiftInvariantViolation, NotCohomologous, ParseError,
                     PathMissing, ValidationError)
from .localsys import (CoefficientSystem, LocalSystem, OGAbelianGroup, OGAction, OGGroup,
                       PathSystem, TwistingCocycle, derive_kappa_q, based_twisting_labels,
                       validate_twisting)
from .simplicial import FormalSimplex, SimplicialSet, boundary, product, standard_simplex
from .zmodule import AbHom, FGAbelianGroup, IntMatrix, cohomology_of_complex, smith_normal_form

__version__ = "0.1.0"
