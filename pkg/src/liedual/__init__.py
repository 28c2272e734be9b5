"""Exact computational toolkit for dual-group centralizers of the regular
nilpotent element, with loop-space Hilbert-series verification."""

from .rings import GF, QQ, ZZ, ring_from_name
from .root_datum import (FiniteAbelianGroup, RootDatum, RootDatumError,
                         load_datum, preset, preset_names)
from .chevalley import (ChevalleyBasis, LieElement, ad_kernel_dim, bracket,
                        build_chevalley, principal_e, simple_sum_e1)
from .commalg import (BudgetExceeded, HilbertSeries, Ideal, PolyRing,
                      Polynomial, groebner_basis, hilbert_series,
                      ideal_dimension, normal_form, parse_polynomial,
                      smith_normal_form, invariant_factors)
from .centralizer import (BadPrimeError, BorelCoordinates,
                          CentralizerPresentation, EquivariantElement,
                          borel_adjoint, brute_force_group_check, build_eT,
                          centralizer_ideal, compute_nG,
                          coproduct_on_generators, f_form,
                          localization_restriction, present_centralizer,
                          specialize_eT, truncated_dist,
                          verify_coassociativity)
from .loop_oracle import (WeightedRep, adjoint_rep, compare_report, degree_dV,
                          fixed_point_chern_weight, omega_poincare)

__version__ = "1.0.0"
