"""Photon statistics of a two-waveguide quadratic-nonlinearity coupler.

The library evaluates closed-form perturbative expressions for the second
harmonic occupation of the system waveguide, with and without the probe
coupling, and derives linear and nonlinear Zeno parameters from them.  A
truncated Fock-space propagator provides an independent brute-force check,
and a sweep layer turns parameter grids into deterministic CSV/JSON tables.
"""

from .params import (
    AmplitudeOutOfRange,
    CoherentAmplitudes,
    CouplerParams,
    PerturbativeCeilingExceeded,
    SingularDenominator,
    ValidationError,
    singular_distances,
    validate_amplitudes,
    validate_params,
)
from .coeffs import (
    CoeffSet,
    HelperQuantities,
    ProbeOffCoeffs,
    coeff_l,
    coeff_p,
    dump_coeffs,
    helpers,
)
from .zeno import (
    ConsistencyFailure,
    DeltaNotZero,
    ZenoResult,
    classify,
    mean_photon_b2,
    zeno_linear,
    zeno_nonlinear,
    zeno_spontaneous,
)
from .fock import (
    Basis,
    BasisTooLarge,
    FockStateVector,
    NormDriftExceeded,
    PerMode,
    StepControl,
    StepSizeUnderflow,
    TailMassTooLarge,
    WeightedTotal,
    build_basis,
    build_generator,
    coherent_state,
    expected_slope_at_zero,
    mean_n_b2,
    mean_occupation,
    mean_weighted_m,
    oracle_mean_n_b2,
    oracle_zeno,
    propagate,
    slope_at_zero,
    weighted_m,
)
from .sweep import (
    Axis,
    ConfigParse,
    Linked,
    OracleSettings,
    OutputIO,
    PRESET_IDS,
    Series,
    SweepConfig,
    SweepRow,
    UnknownPreset,
    config_from_mapping,
    emit,
    figure_preset,
    load_config,
    parse_config_text,
    point_inputs,
    render,
    run_sweep,
    zero_crossings,
)

__version__ = "0.1.0"

__all__ = [
    "AmplitudeOutOfRange",
    "Axis",
    "Basis",
    "BasisTooLarge",
    "CoeffSet",
    "CoherentAmplitudes",
    "ConfigParse",
    "ConsistencyFailure",
    "CouplerParams",
    "DeltaNotZero",
    "FockStateVector",
    "HelperQuantities",
    "Linked",
    "NormDriftExceeded",
    "OracleSettings",
    "OutputIO",
    "PRESET_IDS",
    "PerMode",
    "PerturbativeCeilingExceeded",
    "ProbeOffCoeffs",
    "Series",
    "SingularDenominator",
    "StepControl",
    "StepSizeUnderflow",
    "SweepConfig",
    "SweepRow",
    "TailMassTooLarge",
    "UnknownPreset",
    "ValidationError",
    "WeightedTotal",
    "ZenoResult",
    "build_basis",
    "build_generator",
    "classify",
    "coeff_l",
    "coeff_p",
    "coherent_state",
    "config_from_mapping",
    "dump_coeffs",
    "emit",
    "expected_slope_at_zero",
    "figure_preset",
    "helpers",
    "load_config",
    "mean_n_b2",
    "mean_occupation",
    "mean_photon_b2",
    "mean_weighted_m",
    "oracle_mean_n_b2",
    "oracle_zeno",
    "parse_config_text",
    "point_inputs",
    "propagate",
    "render",
    "run_sweep",
    "singular_distances",
    "slope_at_zero",
    "validate_amplitudes",
    "weighted_m",
    "validate_params",
    "zeno_linear",
    "zeno_nonlinear",
    "zeno_spontaneous",
    "zero_crossings",
]
