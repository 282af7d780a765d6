"""Boolean radii of functions on the Boolean cube from their Fourier-Walsh spectra."""

from .cube import (
    MAX_DENSE_N,
    BooleanFunction,
    Spectrum,
    SymmetricSpectrum,
    degree,
    expectation,
    from_truth_table,
    homogeneous_part,
    inverse_walsh,
    noise_operator,
    p_norm,
    subset_levels,
    sup_norm,
    walsh_transform,
    walsh_transform_naive,
)
from .families import (
    ThresholdSpec,
    biased_indicator,
    canonical_alpha,
    dictator,
    extremal_indicator_flip,
    majority,
    parity,
    random_sign_homogeneous,
    threshold,
)
from .inequalities import (
    InequalityReport,
    bh_ratio,
    biased_radius_lower_check,
    caratheodory_check,
    caratheodory_sharpness,
    degree_l2_check,
    hypercontractivity_check,
    level_m_bound_check,
    norm_comparison_check,
    random_bounded_function,
    run_suite,
    split_pointwise_check,
    wiener_pair_check,
)
from .radius import (
    LevelProfile,
    RadiusResult,
    bn_radius_formula,
    boolean_radius,
    boolean_radius_symmetric,
    brute_force_bn_radius,
    class_radius,
    homogeneous_class_scan,
    level_profile,
    majorant,
)
from .threshold import (
    ThresholdReport,
    branch_point,
    g_function,
    gamma_constant,
    i_integral,
    maj_identity_eval,
    majority_scan,
    mckay_residual,
    sandwich_check,
    tail_lower_bound_check,
    threshold_radius,
    threshold_spectrum_exact,
    tn_lower_bound,
    y_function,
)

__version__ = "0.1.0"
