"""Exact germ computations: preparation, discriminant towers, Eisenstein bounds, descent."""
from .errors import GermError, ParseError
from .field import QQ, FieldElement, NumberField, Unsupported, conjugate_images, field_arith
from .series import INFINITE, AtLeast, PolyRing, Series, parse_expr, series_arith
from .weierstrass import (MonicPoly, PreparationResult, WeierstrassPoly, make_transverse,
                          prepare, regularity_order)
from .gendisc import (DiscriminantRecord, classical_discriminant, first_nonvanishing,
                      gen_disc, newton_sums, oracle_disc, resultant)
from .tower import (InputGerm, Tower, TowerStage, build_function_tower, build_set_tower,
                    build_tower, verify_tower)
from .eisenstein import (BranchSeed, EisensteinResult, clear_denominators, compute_e,
                         eisenstein_extract, verify_eisenstein)
from .descent import (BranchPoint, DescentResult, basis_decompose, branch_taylor,
                      inverse_taylor, specialize_family, vandermonde_verify)

__version__ = "0.1.0"
