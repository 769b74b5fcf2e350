"""Real numbers, continuous functions, and the intermediate value theorem."""

from .functions import (
    ContFuncCode, PointCode, SpaceCode, cf_add, cf_apply, cf_apply_rational, cf_from_function,
    cf_integrate, cf_piecewise_linear, cf_sup, estimate_lipschitz, integral_rational,
    lipschitz_modulus, load_function, modulus_sound_on_samples, point_from_rational,
    sup_rational, table_modulus, validate_cf,
)
from .ivt import certified_sign, decode_zero, gadget_intervals, ivt_gadget, ivt_localize, ivt_sequence
from .reals import (
    APPROXIMATE, DEFAULT_APPROX_RANGE, GREATER, LESS, ORDINARY, WITHIN, RealCode, format_real,
    from_approximator, from_digits, precision_for, real_add, real_approx, real_compare,
    real_from_rational, real_mul, real_neg, real_sub, redundant_variant, tolerance,
)
