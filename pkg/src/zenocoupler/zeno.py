"""Photon-number expectations and Zeno / anti-Zeno measures for mode b2.

The central quantity is the Zeno parameter

    delta_n = <N_b2(z)>  -  <N_b2(z)> at k = 0,

the change in second-harmonic photon number caused by coupling the system
waveguide to the probe.  Negative values mean the probe inhibits second
harmonic generation (Zeno regime), positive values mean enhancement
(anti-Zeno regime).

Every variant is computed twice on purpose: once from its grouped closed form
and once as the literal difference of the two mean photon numbers.  The two
routes share coefficient values but exercise different algebra; disagreement
beyond CONSISTENCY_TOL raises ConsistencyFailure instead of returning a
number.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .coeffs import coeff_l, coeff_p
from .params import CoherentAmplitudes, CouplerParams, ValidationError, validate_params

REGIME_ZENO = "Zeno"
REGIME_ANTI_ZENO = "AntiZeno"
REGIME_NEUTRAL = "Neutral"

VARIANT_NONLINEAR = "Nonlinear"
VARIANT_LINEAR = "Linear"
VARIANT_SPONTANEOUS = "Spontaneous"

# closed form vs difference form agreement, relative (see _consistency_residual)
CONSISTENCY_TOL = 1e-9


class DeltaNotZero(ValidationError):
    """Spontaneous-case evaluation requires delta = 0."""


class ConsistencyFailure(ArithmeticError):
    """Closed form and mean-difference form disagreed beyond tolerance."""

    def __init__(self, closed: float, difference: float, residual: float):
        self.closed = closed
        self.difference = difference
        self.residual = residual
        super().__init__(
            f"closed form {closed!r} vs difference form {difference!r} "
            f"(residual {residual:.3e} > {CONSISTENCY_TOL:.1e})"
        )


@dataclass(frozen=True)
class ZenoResult:
    value: float
    mean_n_probe_on: float
    mean_n_probe_off: float
    regime: str
    variant: str
    residual: float
    value_imag: float
    warnings: tuple = ()


def classify(delta_n: float, tol: float | None = None, scale: float = 1.0) -> str:
    """Zeno for delta_n < -tol, AntiZeno for delta_n > +tol, else Neutral.

    The default tolerance is 1e-15 * max(1, |scale|), where `scale` should be
    the mean photon number the difference was computed from; there is no
    physically meaningful regime label below float64 cancellation noise.
    """
    if tol is None:
        tol = 1e-15 * max(1.0, abs(scale))
    if tol < 0:
        raise ValidationError(f"classification tolerance must be >= 0, got {tol!r}")
    if delta_n < -tol:
        return REGIME_ZENO
    if delta_n > tol:
        return REGIME_ANTI_ZENO
    return REGIME_NEUTRAL


def _mean_from_coeffs(c, amps: CoherentAmplitudes) -> complex:
    """Coherent-state expectation of N_b2 given expansion coefficients c[1..14].

    Substitutes the z = 0 mode operators by their coherent amplitudes
    (a1 -> alpha, b1 -> beta, a2 -> gamma, b2 -> delta, daggers -> conjugates)
    in the normally ordered expansion of b2'(z) b2(z).  The imaginary part is
    zero by construction; it is returned for the realness checks.
    """
    a, b, g, d = amps.alpha, amps.beta, amps.gamma, amps.delta
    ac, bc, gc, dc = np.conj(a), np.conj(b), np.conj(g), np.conj(d)
    na, nb, nd = (a * ac).real, (b * bc).real, (d * dc).real

    real = (
        nd
        + (c[2] * np.conj(c[2])).real * nb * nb
        + (c[3] * np.conj(c[3])).real * na * nb
        + (c[4] * np.conj(c[4])).real * na * na
    )
    br = c[2] * dc * b * b
    br = br + c[3] * dc * a * b
    br = br + c[4] * dc * a * a
    br = br + np.conj(c[2]) * c[3] * nb * a * bc
    br = br + np.conj(c[2]) * c[4] * a * a * bc * bc
    br = br + np.conj(c[3]) * c[4] * na * a * bc
    br = br + c[5] * nb * nd
    br = br + c[6] * nd
    br = br + c[7] * nd * a * bc
    br = br + c[8] * nd * ac * b
    br = br + c[9] * na * nd
    br = br + c[10] * ac * b * g * dc
    br = br + c[11] * na * g * dc
    br = br + c[12] * g * dc
    br = br + c[13] * nb * g * dc
    br = br + c[14] * a * bc * g * dc
    return real + br + np.conj(br)


def mean_photon_b2(
    params: CouplerParams,
    amps: CoherentAmplitudes,
    kz,
    probe_coupled: bool = True,
) -> float:
    """<N_b2(kz)> over the four-mode coherent state.

    probe_coupled=False evaluates the k = 0 reference evolution, in which only
    the probe-off coefficients p2, p5, p6 survive.
    """
    if probe_coupled:
        c = coeff_l(params, kz).l
    else:
        p = coeff_p(params, kz)
        zero = 0.0 * p.p2
        c = (zero, zero, p.p2, zero, zero, p.p5, p.p6,
             zero, zero, zero, zero, zero, zero, zero, zero)
    value = _mean_from_coeffs(c, amps)
    return float(np.real(value)) if np.ndim(kz) == 0 else np.real(value)


def _consistency_residual(closed: float, mean_on: float, mean_off: float) -> float:
    """Relative disagreement between the closed form and mean_on - mean_off.

    The denominator is floored at 1e-5 * (1 + |mean_on| + |mean_off|): near
    zero crossings of delta_n both routes cancel to roundoff of the photon
    number scale, where a bare relative measure would be pure noise.  The
    floor still demands absolute agreement ~1e-14 of that scale.
    """
    diff = mean_on - mean_off
    scale = 1.0 + abs(mean_on) + abs(mean_off)
    denom = max(abs(closed), abs(diff), 1e-5 * scale)
    return abs(closed - diff) / denom


def _finish(
    params: CouplerParams,
    coeff_warnings: tuple,
    variant: str,
    closed: complex,
    mean_on: float,
    mean_off: float,
    check_consistency: bool,
) -> ZenoResult:
    value = float(np.real(closed))
    residual = _consistency_residual(value, mean_on, mean_off)
    if check_consistency and residual > CONSISTENCY_TOL:
        raise ConsistencyFailure(value, mean_on - mean_off, residual)
    return ZenoResult(
        value=value,
        mean_n_probe_on=mean_on,
        mean_n_probe_off=mean_off,
        regime=classify(value, scale=mean_on),
        variant=variant,
        residual=residual,
        value_imag=float(np.imag(closed)),
        warnings=tuple(params.warnings) + tuple(coeff_warnings),
    )


def zeno_nonlinear(
    params: CouplerParams,
    amps: CoherentAmplitudes,
    kz: float,
    check_consistency: bool = True,
) -> ZenoResult:
    """Zeno parameter with the full (quadratic) probe waveguide.

    Term ordering of the shared part is kept identical to zeno_linear so that
    gamma_a = 0 reproduces the linear result bit for bit; the five probe
    cross terms are appended at the end and vanish exactly in that limit.
    """
    cs = coeff_l(params, kz)
    ps = coeff_p(params, kz)
    l, p2, p5, p6 = cs.l, ps.p2, ps.p5, ps.p6
    a, b, g, d = amps.alpha, amps.beta, amps.gamma, amps.delta
    ac, bc, dc = np.conj(a), np.conj(b), np.conj(d)
    na, nb, nd = (a * ac).real, (b * bc).real, (d * dc).real

    real = (
        ((l[2] * np.conj(l[2])).real - (p2 * np.conj(p2)).real) * nb * nb
        + (l[3] * np.conj(l[3])).real * na * nb
        + (l[4] * np.conj(l[4])).real * na * na
    )
    br = (l[2] - p2) * b * b * dc
    br = br + l[3] * a * b * dc
    br = br + l[4] * a * a * dc
    br = br + np.conj(l[2]) * l[3] * nb * a * bc
    br = br + np.conj(l[2]) * l[4] * a * a * bc * bc
    br = br + np.conj(l[3]) * l[4] * na * a * bc
    br = br + (l[5] - p5) * nb * nd
    br = br + (l[6] - p6) * nd
    br = br + l[7] * nd * a * bc
    br = br + l[8] * nd * ac * b
    br = br + l[9] * na * nd
    br = br + l[10] * ac * b * g * dc
    br = br + l[11] * na * g * dc
    br = br + l[12] * g * dc
    br = br + l[13] * nb * g * dc
    br = br + l[14] * a * bc * g * dc
    closed = real + br + np.conj(br)

    mean_on = mean_photon_b2(params, amps, kz, probe_coupled=True)
    mean_off = mean_photon_b2(params, amps, kz, probe_coupled=False)
    return _finish(params, cs.warnings, VARIANT_NONLINEAR, closed,
                   mean_on, mean_off, check_consistency)


def zeno_linear(
    params: CouplerParams,
    amps: CoherentAmplitudes,
    kz: float,
    check_consistency: bool = True,
) -> ZenoResult:
    """Zeno parameter with a linear probe waveguide (gamma_a treated as 0)."""
    if params.gamma_a != 0:
        params = validate_params(replace(params, gamma_a=0.0j))
    cs = coeff_l(params, kz)
    ps = coeff_p(params, kz)
    l, p2, p5, p6 = cs.l, ps.p2, ps.p5, ps.p6
    a, b, d = amps.alpha, amps.beta, amps.delta
    ac, bc, dc = np.conj(a), np.conj(b), np.conj(d)
    na, nb, nd = (a * ac).real, (b * bc).real, (d * dc).real

    real = (
        ((l[2] * np.conj(l[2])).real - (p2 * np.conj(p2)).real) * nb * nb
        + (l[3] * np.conj(l[3])).real * na * nb
        + (l[4] * np.conj(l[4])).real * na * na
    )
    br = (l[2] - p2) * b * b * dc
    br = br + l[3] * a * b * dc
    br = br + l[4] * a * a * dc
    br = br + np.conj(l[2]) * l[3] * nb * a * bc
    br = br + np.conj(l[2]) * l[4] * a * a * bc * bc
    br = br + np.conj(l[3]) * l[4] * na * a * bc
    br = br + (l[5] - p5) * nb * nd
    br = br + (l[6] - p6) * nd
    br = br + l[7] * nd * a * bc
    br = br + l[8] * nd * ac * b
    br = br + l[9] * na * nd
    closed = real + br + np.conj(br)

    mean_on = mean_photon_b2(params, amps, kz, probe_coupled=True)
    mean_off = mean_photon_b2(params, amps, kz, probe_coupled=False)
    return _finish(params, cs.warnings, VARIANT_LINEAR, closed,
                   mean_on, mean_off, check_consistency)


def zeno_spontaneous(
    params: CouplerParams,
    amps: CoherentAmplitudes,
    kz: float,
    check_consistency: bool = True,
) -> ZenoResult:
    """Zeno parameter with no seed photons in the system second harmonic.

    Requires delta = 0.  Only the three first-order coefficients enter, so the
    result is independent of the probe nonlinearity (gamma_a, dk_a) and of the
    probe second-harmonic amplitude gamma; both are accepted and ignored.
    """
    if amps.delta != 0:
        raise DeltaNotZero(
            f"spontaneous evaluation requires delta = 0, got {amps.delta!r}"
        )
    cs = coeff_l(params, kz)
    ps = coeff_p(params, kz)
    l, p2 = cs.l, ps.p2
    a, b = amps.alpha, amps.beta
    bc = np.conj(b)
    na, nb = (a * np.conj(a)).real, (b * bc).real

    real = (
        ((l[2] * np.conj(l[2])).real - (p2 * np.conj(p2)).real) * nb * nb
        + (l[3] * np.conj(l[3])).real * na * nb
        + (l[4] * np.conj(l[4])).real * na * na
    )
    br = np.conj(l[2]) * l[3] * nb * a * bc
    br = br + np.conj(l[2]) * l[4] * a * a * bc * bc
    br = br + np.conj(l[3]) * l[4] * na * a * bc
    closed = real + br + np.conj(br)

    mean_on = mean_photon_b2(params, amps, kz, probe_coupled=True)
    mean_off = mean_photon_b2(params, amps, kz, probe_coupled=False)
    return _finish(params, cs.warnings, VARIANT_SPONTANEOUS, closed,
                   mean_on, mean_off, check_consistency)
