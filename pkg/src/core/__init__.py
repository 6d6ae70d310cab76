from src.core.bandlimited import (
    BandlimitedFunction,
    check_kadec_parameter,
    fejer_square,
    higgins_g,
    kadec_node,
    l2_error,
    parse_function_spec,
    pw_combo,
    sinc,
    sinc_function,
    trig_spectrum_function,
    zero_function,
)
from src.core.errors import (
    DimensionMismatch,
    DivergentDerivative,
    FactorizationFailure,
    GaussInterpError,
    IndexOutOfRange,
    InsufficientData,
    NonIncreasingError,
    ParameterError,
    ZeroData,
)
from src.core.gram import (
    DecayFit,
    GramSystem,
    assemble,
    central_inverse_column,
    fit_exponential_decay,
    inverse_column,
    measure_inverse_decay,
    solve,
    spectral_bounds,
)
from src.core.interp1d import (
    GaussianInterpolant,
    InterpolantSpectrum,
    check_p,
    default_step,
    evaluate,
    evaluation_grid,
    fundamental_decay_samples,
    fundamental_function,
    interpolate_function,
    interpolate_sequence,
    lp_norm_ratio,
    measure_fundamental_decay,
    periodic_factor,
    restricted_factor,
    spectrum_value,
)
from src.core.interp2d import (
    GridInterpolant2D,
    evaluate2d,
    evaluate2d_grid,
    interpolate_grid,
    interpolate_product,
    sup_grid_error,
)
from src.core.kernel import ScaleParameter, check_lambda, gaussian, gaussian_ft, gaussian_symbol, kappa
from src.core.nodes import (
    NodeWindow,
    counter_uniform,
    explicit_nodes,
    jittered_nodes,
    kadec_nodes,
    make_window,
    punctured_integer_nodes,
    rademacher,
    riesz_bounds_estimate,
    splitmix64,
    uniform_nodes,
    validate_window,
)

__all__ = [
    # kernel
    "ScaleParameter",
    "check_lambda",
    "gaussian",
    "gaussian_ft",
    "gaussian_symbol",
    "kappa",
    # nodes
    "NodeWindow",
    "counter_uniform",
    "explicit_nodes",
    "jittered_nodes",
    "kadec_nodes",
    "make_window",
    "punctured_integer_nodes",
    "rademacher",
    "riesz_bounds_estimate",
    "splitmix64",
    "uniform_nodes",
    "validate_window",
    # bandlimited
    "BandlimitedFunction",
    "check_kadec_parameter",
    "fejer_square",
    "higgins_g",
    "kadec_node",
    "l2_error",
    "parse_function_spec",
    "pw_combo",
    "sinc",
    "sinc_function",
    "trig_spectrum_function",
    "zero_function",
    # gram
    "DecayFit",
    "GramSystem",
    "assemble",
    "central_inverse_column",
    "fit_exponential_decay",
    "inverse_column",
    "measure_inverse_decay",
    "solve",
    "spectral_bounds",
    # interp1d
    "GaussianInterpolant",
    "InterpolantSpectrum",
    "check_p",
    "default_step",
    "evaluate",
    "evaluation_grid",
    "fundamental_decay_samples",
    "fundamental_function",
    "interpolate_function",
    "interpolate_sequence",
    "lp_norm_ratio",
    "measure_fundamental_decay",
    "periodic_factor",
    "restricted_factor",
    "spectrum_value",
    # interp2d
    "GridInterpolant2D",
    "evaluate2d",
    "evaluate2d_grid",
    "interpolate_grid",
    "interpolate_product",
    "sup_grid_error",
    # errors
    "DimensionMismatch",
    "DivergentDerivative",
    "FactorizationFailure",
    "GaussInterpError",
    "IndexOutOfRange",
    "InsufficientData",
    "NonIncreasingError",
    "ParameterError",
    "ZeroData",
]
