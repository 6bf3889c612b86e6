"""Physical parameter model and validation for the two-waveguide coupler.

Two evanescently coupled waveguides, each operating under second harmonic
generation (the probe waveguide may be purely linear).  Mode labels: a1/b1
are the fundamental modes of the probe/system waveguide, a2/b2 the matching
second-harmonic modes.

Parameters:

    k        complex evanescent coupling between the fundamental modes
    gamma_a  complex quadratic coupling of the probe waveguide (0 = linear probe)
    gamma_b  complex quadratic coupling of the system waveguide
    dk_a     real phase mismatch between fundamental and second harmonic, probe
    dk_b     same for the system waveguide

Everything is measured against the linear coupling: `validate_params` rescales
a raw set so that |k| = 1, and interaction length is passed around as the
dimensionless product kz.  The closed-form coefficient expressions are genuinely
singular on a handful of parameter manifolds (vanishing mismatches, two-photon
resonances); validation rejects points closer than `tol_sing` to any of them
rather than regularizing, since the truncated-Fock cross-check remains usable
there.
"""

from __future__ import annotations

import cmath
from collections.abc import Mapping
from dataclasses import dataclass, field


class ValidationError(ValueError):
    """Rejected input; maps to CLI exit code 1."""


class SingularDenominator(ValidationError):
    """Parameter point too close to a singular manifold of the closed form.

    `which` names the manifold: dk_b, dk_a, dk_ab, resonance_a, resonance_b,
    resonance_ab.
    """

    def __init__(self, which: str, distance: float, tol: float):
        self.which = which
        self.distance = distance
        self.tol = tol
        super().__init__(
            f"singular denominator {which}: relative distance {distance:.3e} <= {tol:.3e}"
        )


class PerturbativeCeilingExceeded(ValidationError):
    def __init__(self, which: str, ratio: float, ceiling: float):
        self.which = which
        self.ratio = ratio
        self.ceiling = ceiling
        super().__init__(
            f"|{which}|/|k| = {ratio:.3e} exceeds the perturbative ceiling {ceiling:.3e}"
        )


class AmplitudeOutOfRange(ValidationError):
    pass


@dataclass(frozen=True)
class CouplerParams:
    """Coupler constants.  Treat instances from `validate_params` as canonical:
    they satisfy |k| = 1 and carry any advisory warnings."""

    k: complex = 1.0 + 0.0j
    gamma_a: complex = 0.0j
    gamma_b: complex = 0.01 + 0.0j
    dk_a: float = 0.0
    dk_b: float = 1e-3
    warnings: tuple = field(default=(), compare=True)


@dataclass(frozen=True)
class CoherentAmplitudes:
    """Initial coherent amplitudes of modes a1, b1, a2, b2 (z = 0).

    delta = 0 selects the spontaneous regime (no seed photons in the system
    second-harmonic mode); anything else is the stimulated regime.
    """

    alpha: complex = 0.0j
    beta: complex = 0.0j
    gamma: complex = 0.0j
    delta: complex = 0.0j


def singular_distances(k, gamma_a, gamma_b, dk_a, dk_b) -> dict:
    """Relative distances to the singular manifolds of the closed form.

    Only manifolds that can actually be hit are reported: the system-side
    denominators require gamma_b != 0, the probe-side ones gamma_a != 0.
    Distances are relative to the |k| scale (mismatches) or to 4|k|^2
    (two-photon resonance denominators).
    """
    kk = abs(k)
    kk2 = 4.0 * kk * kk
    dk_ab = dk_a - dk_b
    out = {}
    if gamma_b != 0:
        out["dk_b"] = abs(dk_b) / kk
        out["resonance_b"] = abs(kk2 - dk_b * dk_b) / kk2
    if gamma_a != 0:
        out["dk_a"] = abs(dk_a) / kk
        out["dk_ab"] = abs(dk_ab) / kk
        out["resonance_a"] = abs(kk2 - dk_a * dk_a) / kk2
        out["resonance_ab"] = abs(kk2 - dk_ab * dk_ab) / kk2
    return out


def _require_finite(name, value):
    v = complex(value)
    if not (cmath.isfinite(v)):
        raise ValidationError(f"{name} must be finite, got {value!r}")
    return v


def validate_params(
    raw: CouplerParams,
    tol_sing: float = 1e-9,
    *,
    max_gamma_ratio: float = 0.2,
    warn_gamma_ratio: float = 0.05,
) -> CouplerParams:
    """Check a raw parameter set and rescale it to |k| = 1.

    Raises SingularDenominator when the point sits within `tol_sing`
    (relative) of a singular manifold, and PerturbativeCeilingExceeded when a
    nonlinear-to-linear coupling ratio exceeds `max_gamma_ratio`.  Ratios above
    `warn_gamma_ratio` only add a warning string.  Idempotent: feeding the
    result back in returns an equal object.
    """
    if not tol_sing > 0:
        raise ValidationError(f"tol_sing must be positive, got {tol_sing!r}")
    if isinstance(raw, Mapping):
        try:
            raw = CouplerParams(**raw)
        except TypeError as exc:
            raise ValidationError(f"bad parameter mapping: {exc}") from exc
    k = _require_finite("k", raw.k)
    gamma_a = _require_finite("gamma_a", raw.gamma_a)
    gamma_b = _require_finite("gamma_b", raw.gamma_b)
    dk_a = _require_finite("dk_a", raw.dk_a)
    dk_b = _require_finite("dk_b", raw.dk_b)
    if dk_a.imag != 0 or dk_b.imag != 0:
        raise ValidationError("phase mismatches dk_a, dk_b must be real")
    dk_a, dk_b = dk_a.real, dk_b.real

    kk = abs(k)
    if kk == 0:
        raise ValidationError(
            "k = 0 cannot be normalized; the probe-off limit is exposed "
            "separately through the probe-off coefficient set"
        )

    warnings = []
    for name, g in (("gamma_a", gamma_a), ("gamma_b", gamma_b)):
        ratio = abs(g) / kk
        if ratio > max_gamma_ratio:
            raise PerturbativeCeilingExceeded(name, ratio, max_gamma_ratio)
        if ratio > warn_gamma_ratio:
            warnings.append(f"perturbative_ratio:{name}={ratio:.3e}")

    for which, dist in singular_distances(k, gamma_a, gamma_b, dk_a, dk_b).items():
        if dist <= tol_sing:
            raise SingularDenominator(which, dist, tol_sing)

    return CouplerParams(
        k=k / kk,
        gamma_a=gamma_a / kk,
        gamma_b=gamma_b / kk,
        dk_a=dk_a / kk,
        dk_b=dk_b / kk,
        warnings=tuple(warnings),
    )


def validate_amplitudes(
    amps: CoherentAmplitudes, ceiling: float = 100.0
) -> CoherentAmplitudes:
    """Reject non-finite or oversized coherent amplitudes.

    The ceiling (default 100) keeps |beta|^4-type expectation terms far from
    float64 overflow; it is a sanity bound, not a physics statement.
    """
    vals = {}
    for name in ("alpha", "beta", "gamma", "delta"):
        v = _require_finite(name, getattr(amps, name))
        if abs(v) > ceiling:
            raise AmplitudeOutOfRange(
                f"|{name}| = {abs(v):.3e} exceeds the ceiling {ceiling:.3e}"
            )
        vals[name] = v
    return CoherentAmplitudes(**vals)
