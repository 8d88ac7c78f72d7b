"""Few-weight Hamming codes from maximum h-scattered linear sets.

Build the linear sets of PG(r-1, q^n) defined by q-polynomial maps, turn
them into codes over GF(q^n), enumerate weight distributions exhaustively
and compare against the closed forms.
"""

__version__ = "0.1.0"

from ._enum import DEFAULT_BUDGET, BudgetExceeded  # noqa: E402
from .codes import (GeneratorMatrix, codeword_weight, generator_matrix,  # noqa: E402
                    is_almost_mds, is_q_divisible, minimum_distance, singleton_defect,
                    weight_enumerator_direct, weight_enumerator_geometric)
from .enumerator import PredictedEnumerator, Report, WeightEnumerator, verify  # noqa: E402
from .finite_field import (FieldCtx, FieldElement, SubfieldView,  # noqa: E402
                           coords_over_subfield, frobenius, make_field, make_subfield_view, norm)
from .formulas import (TValues, gauss_binom, mrd_weight_distribution,  # noqa: E402
                       predict_2scattered, predict_full_scattered, t_values, theta)
from .linsets import (HyperplaneWeightProfile, LinearSet, ProjectivePoint,  # noqa: E402
                      build_direct_sum_set, build_linear_set, hyperplane_weight, is_scattered,
                      subspace_weight, verify_h_scattered, weight_profile)
from .qpoly import (ConditionError, MapTuple, QPolynomial, combine, evaluate,  # noqa: E402
                    gabidulin_tuple, kernel_dim, table1_tuple, twisted_gabidulin_tuple)
