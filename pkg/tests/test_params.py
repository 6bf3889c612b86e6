"""Validation and normalization of coupler parameters and amplitudes."""

import cmath

import pytest

from zenocoupler import (
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

GOOD = {"k": 1.0, "gamma_a": 0.01, "gamma_b": 0.01, "dk_a": 1.1e-3, "dk_b": 1e-3}


def test_normalizes_to_unit_probe_coupling():
    raw = {"k": 2.0, "gamma_a": 0.02, "gamma_b": 0.04, "dk_a": 0.002, "dk_b": 0.006}
    p = validate_params(raw)
    assert p.k == 1.0
    assert p.gamma_a == 0.01
    assert p.gamma_b == 0.02
    assert p.dk_a == 0.001
    assert p.dk_b == 0.003


def test_normalization_preserves_phases():
    k = 2.0 * cmath.exp(0.4j)
    p = validate_params({"k": k, "gamma_a": 0.02j, "gamma_b": 0.01, "dk_a": 0.1, "dk_b": 0.3})
    assert abs(abs(p.k) - 1.0) < 1e-15
    assert cmath.isclose(p.k, cmath.exp(0.4j))
    assert cmath.isclose(p.gamma_a, 0.01j)


def test_idempotent():
    p = validate_params(GOOD)
    assert validate_params(p) == p


def test_accepts_dataclass_input():
    p = validate_params(CouplerParams(k=1.0, gamma_a=0.01, gamma_b=0.01,
                                      dk_a=1.1e-3, dk_b=1e-3))
    assert p.dk_b == 1e-3


def test_rejects_unknown_mapping_key():
    with pytest.raises(ValidationError):
        validate_params({**GOOD, "dk_c": 1.0})


def test_rejects_zero_probe_coupling():
    with pytest.raises(ValidationError, match="k = 0"):
        validate_params({**GOOD, "k": 0.0})


@pytest.mark.parametrize("field", ["k", "gamma_a", "gamma_b", "dk_a", "dk_b"])
@pytest.mark.parametrize("bad", [float("nan"), float("inf")])
def test_rejects_non_finite(field, bad):
    with pytest.raises(ValidationError):
        validate_params({**GOOD, field: bad})


def test_rejects_complex_mismatch():
    with pytest.raises(ValidationError, match="real"):
        validate_params({**GOOD, "dk_a": 1e-3 + 1e-3j})


def test_perturbative_ceiling():
    with pytest.raises(PerturbativeCeilingExceeded) as err:
        validate_params({**GOOD, "gamma_b": 0.3})
    assert err.value.which == "gamma_b"
    # the ceiling is configurable
    p = validate_params({**GOOD, "gamma_b": 0.3}, max_gamma_ratio=0.5)
    assert p.gamma_b == 0.3


def test_perturbative_warning_band():
    p = validate_params({**GOOD, "gamma_b": 0.08})
    assert any(w.startswith("perturbative_ratio:gamma_b") for w in p.warnings)
    assert validate_params(GOOD).warnings == ()


def test_warn_threshold_scales_with_k():
    # same ratio, different absolute couplings
    p = validate_params({"k": 10.0, "gamma_a": 0.0, "gamma_b": 0.8,
                         "dk_a": 0.0, "dk_b": 0.01})
    assert any("gamma_b" in w for w in p.warnings)


@pytest.mark.parametrize(
    "raw,which",
    [
        ({**GOOD, "dk_b": 0.0}, "dk_b"),
        ({**GOOD, "dk_a": 0.0}, "dk_a"),
        ({**GOOD, "dk_a": 1e-3}, "dk_ab"),
        ({**GOOD, "dk_b": 2.0}, "resonance_b"),
        ({**GOOD, "dk_a": 2.0}, "resonance_a"),
        ({**GOOD, "dk_a": 2.0 + 1e-3}, "resonance_ab"),
    ],
)
def test_singular_manifolds(raw, which):
    with pytest.raises(SingularDenominator) as err:
        validate_params(raw)
    assert err.value.which == which


def test_probe_singularities_ignored_without_probe_nonlinearity():
    # gamma_a = 0 removes every dk_a-related denominator
    p = validate_params({"k": 1.0, "gamma_a": 0.0, "gamma_b": 0.01,
                         "dk_a": 0.0, "dk_b": 1e-3})
    assert p.gamma_a == 0


def test_all_mismatch_singularities_ignored_without_any_nonlinearity():
    p = validate_params({"k": 1.0, "gamma_a": 0.0, "gamma_b": 0.0,
                         "dk_a": 0.0, "dk_b": 0.0})
    assert p.k == 1.0


def test_singularity_tolerance_is_relative_and_configurable():
    raw = {**GOOD, "dk_b": 1e-8}
    with pytest.raises(SingularDenominator):
        validate_params(raw, tol_sing=1e-6)
    assert validate_params(raw, tol_sing=1e-9).dk_b == 1e-8


def test_singular_distances_keys():
    d = singular_distances(1.0, 0.01, 0.01, 1.1e-3, 1e-3)
    assert set(d) == {"dk_a", "dk_b", "dk_ab", "resonance_a",
                      "resonance_b", "resonance_ab"}
    d_lin = singular_distances(1.0, 0.0, 0.01, 1.1e-3, 1e-3)
    assert set(d_lin) == {"dk_b", "resonance_b"}
    assert d["dk_b"] == pytest.approx(1e-3)


def test_amplitudes_pass_through():
    amps = CoherentAmplitudes(alpha=0.8, beta=0.6j, gamma=0.4, delta=-0.5)
    assert validate_amplitudes(amps) == amps


def test_amplitude_ceiling():
    with pytest.raises(AmplitudeOutOfRange):
        validate_amplitudes(CoherentAmplitudes(alpha=101.0))
    big = validate_amplitudes(CoherentAmplitudes(alpha=101.0), ceiling=200.0)
    assert big.alpha == 101.0


def test_amplitude_non_finite():
    with pytest.raises(ValidationError):
        validate_amplitudes(CoherentAmplitudes(beta=complex("nan")))
