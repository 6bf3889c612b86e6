"""Closed-form expansion coefficients of the system second-harmonic mode.

The Heisenberg-picture solution for mode b2, kept through second order in the
quadratic couplings, is an expansion over z = 0 operators:

    b2(z) = l1 b2 + l2 b1^2 + l3 a1 b1 + l4 a1^2
          + l5 b1'b1 b2 + l6 b2 + l7 a1 b1' b2 + l8 a1' b1 b2 + l9 a1' a1 b2
          + l10 a1' a2 b1 + l11 a1' a1 a2 + l12 a2 + l13 a2 b1' b1 + l14 a1 a2 b1'

(primes are daggers; l2-l4 are first order in gamma_b, l5-l9 carry |gamma_b|^2,
l10-l14 carry conj(gamma_a) gamma_b).  This module evaluates l1..l14, the
helper quantities they are built from, and the probe-off (k = 0) limits
p2, p5, p6 of the three coefficients that survive without the linear coupling.

The expressions are long and were transcribed term by term from the worked
derivation; grouping deliberately mirrors the derivation notes rather than any
algebraically "simplified" form.  Their semantic check is
tests/test_coeffs.py, which re-derives every coefficient by integrating the
defining mode equations and compares against high-precision frozen values.

Arithmetic is plain complex float64 throughout.  Near resonance denominators
(relative distance below 1e-4) catastrophic cancellation degrades accuracy;
results then carry a `near_singular:` warning flag instead of extra precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .params import CouplerParams, singular_distances

# relative distance to a singular manifold below which results are flagged
NEAR_SINGULAR_BAND = 1e-4


@dataclass(frozen=True)
class HelperQuantities:
    """Shared building blocks: G_plus[i] = 1 + exp(-i dk_i z) and
    G_minus[i] = 1 - exp(-i dk_i z) for i in {a, b, ab}, the mismatch
    difference dk_ab = dk_a - dk_b, and the resonance constants C_a, C_b,
    C_ab."""

    G_plus: dict
    G_minus: dict
    dk_ab: float
    C_a: complex
    C_b: complex
    C_ab: complex


@dataclass(frozen=True)
class CoeffSet:
    """l1..l14 at one interaction length (l[0] is an unused placeholder)."""

    l: tuple
    warnings: tuple = field(default=())

    def __getitem__(self, i: int):
        return self.l[i]


@dataclass(frozen=True)
class ProbeOffCoeffs:
    """k = 0 limits: p2, p5 = 2 p6.  All other coefficients vanish without
    the probe coupling."""

    p2: complex
    p5: complex
    p6: complex
    warnings: tuple = field(default=())


def _resonance_constants(params: CouplerParams):
    KK = abs(params.k)
    da, db = params.dk_a, params.dk_b
    dab = da - db
    Ga, Gb = params.gamma_a, params.gamma_b
    # guard the 0/0 cases: a vanishing coupling kills the whole constant even
    # when its denominator sits on a (then-harmless) singular manifold
    C_a = Ga / (4 * KK**2 - da**2) if Ga != 0 else 0.0j
    C_b = Gb / (4 * KK**2 - db**2) if Gb != 0 else 0.0j
    if Ga != 0 and Gb != 0:
        C_ab = (
            np.conj(Ga)
            * Gb
            / (
                da
                * db
                * dab
                * (4 * KK**2 - da**2)
                * (4 * KK**2 - db**2)
                * (4 * KK**2 - dab**2)
            )
        )
    else:
        C_ab = 0.0j
    return C_a, C_b, C_ab


def _near_singular_warnings(params: CouplerParams) -> tuple:
    dists = singular_distances(
        params.k, params.gamma_a, params.gamma_b, params.dk_a, params.dk_b
    )
    return tuple(
        f"near_singular:{which}"
        for which, dist in sorted(dists.items())
        if dist < NEAR_SINGULAR_BAND
    )


def helpers(params: CouplerParams, kz) -> HelperQuantities:
    """Evaluate the helper quantities at rescaled length kz (kz = |k| z)."""
    z = np.asarray(kz, dtype=float) / abs(params.k)
    da, db = params.dk_a, params.dk_b
    dab = da - db
    G_plus = {}
    G_minus = {}
    for name, dk in (("a", da), ("b", db), ("ab", dab)):
        e = np.exp(-1j * dk * z)
        G_plus[name] = 1 + e
        G_minus[name] = 1 - e
    C_a, C_b, C_ab = _resonance_constants(params)
    return HelperQuantities(
        G_plus=G_plus, G_minus=G_minus, dk_ab=dab, C_a=C_a, C_b=C_b, C_ab=C_ab
    )


def coeff_l(params: CouplerParams, kz) -> CoeffSet:
    """Evaluate l1..l14 at rescaled interaction length kz.

    Accepts a scalar or an ndarray of lengths; coefficients broadcast
    elementwise.  `params` must come from validate_params (the singular
    denominators below are assumed guarded).
    """
    scalar = np.ndim(kz) == 0
    z = np.asarray(kz, dtype=float) / abs(params.k)

    kk = complex(params.k)
    kc = np.conj(kk)
    KK = abs(kk)
    da, db = params.dk_a, params.dk_b
    dab = da - db
    Gb = complex(params.gamma_b)
    Gbc = np.conj(Gb)

    # conjugated phase factors: G_{i-}^* = 1 - exp(+i dk_i z), etc.
    Ea = np.exp(1j * da * z)
    Eb = np.exp(1j * db * z)
    Eab = np.exp(1j * dab * z)
    Gam_c, Gap_c = 1 - Ea, 1 + Ea
    Gbm_c, Gbp_c = 1 - Eb, 1 + Eb
    Gabm_c, Gabp_c = 1 - Eab, 1 + Eab
    Gabp = 1 + np.exp(-1j * dab * z)

    s2 = np.sin(2 * KK * z)
    c2 = np.cos(2 * KK * z)
    sinsq = np.sin(KK * z) ** 2

    C_a, Cb, Cab = _resonance_constants(params)
    CbCbc = (Gb * Gbc) / (4 * KK**2 - db**2) ** 2 if Gb != 0 else 0.0j

    one = np.ones_like(z)
    zero = np.zeros_like(z) * 1j

    l = [zero, one + 0j]  # l[0] placeholder, l[1] = 1

    if Gb == 0:
        # no system-side downconversion: b2 is inert through second order
        l.extend([zero] * 13)
    else:
        l2 = -Gb * Gbm_c / (2 * db) + (1j * Cb / 2) * (
            2 * KK * (Gbp_c - 1) * s2 - 1j * db * (1 - (Gbp_c - 1) * c2)
        )

        l3 = -Cb * KK * (
            1j * db * (Gbp_c - 1) * s2 + 2 * KK * (1 - (Gbp_c - 1) * c2)
        ) / kc

        l4 = Gb * KK**2 * Gbm_c / (2 * kc**2 * db) + (
            1j * Cb * KK**2 / (2 * kc**2)
        ) * (2 * KK * (Gbp_c - 1) * s2 - 1j * db * (1 - (Gbp_c - 1) * c2))

        l5 = (CbCbc / (KK * db**2)) * (
            -16 * KK**5 * (Gbm_c + 1j * db * z)
            - 8j * KK**4 * db * Gbm_c * s2
            + 6j * KK**2 * db**3 * Gbm_c * s2
            - 1j * db**5 * s2
            + 4 * KK**3 * db**2 * (c2 - 1 + 3 * Gbm_c + 3j * db * z)
            + db**4 * KK * ((1 - 2 * Gbm_c) * c2 - 1 - 2 * Gbm_c - 2j * db * z)
        )

        l6 = (CbCbc / db**2) * (
            -16 * KK**4 * (Gbm_c + 1j * db * z)
            - 4j * KK * db**3 * (Gbp_c - 1) * s2
            + 4 * KK**2 * db**2 * (c2 * (Gbp_c - 1) + 2 * Gbm_c - 1 + 3j * db * z)
            + db**4 * (c2 * (Gbp_c - 1) - 1 - Gbm_c - 2j * db * z)
        )

        l7 = (CbCbc / (kc * db)) * (
            2 * db**4 * sinsq
            + 4j * KK**3 * db * s2
            - 1j * KK * db**3 * (2 * Gbm_c - 1) * s2
            + 8 * KK**4 * (-Gbm_c * c2 + Gbm_c - 1j * db * z)
            + 2 * KK**2 * db**2 * (3 * Gbm_c * c2 - Gbm_c + 1j * db * z)
        )

        l8 = -(CbCbc / (kk * db)) * (
            2 * db**4 * sinsq
            - 1j * KK * db**3 * s2
            + 4j * KK**3 * db * (2 * Gbm_c - 1) * s2
            + 8 * KK**4 * (-Gbm_c * c2 + Gbm_c + 1j * db * z)
            + 2 * KK**2 * db**2 * ((Gbp_c + 2) * c2 - Gbm_c - 4 - 1j * db * z)
        )

        l9 = (CbCbc / (KK * db**2)) * (
            -16 * KK**5 * (Gbm_c + 1j * db * z)
            + (8j * KK**4 * db * Gbm_c - 2j * KK**2 * db**3 * (Gbp_c + 2) + 1j * db**5)
            * s2
            + 4 * KK**3 * ((1 - 2 * Gbm_c) * c2 - 1 + Gbm_c + 3j * db * z) * db**2
            + KK * db**4 * (c2 - 1 - 2j * db * z)
        )

        l.extend([l2, l3, l4, l5, l6, l7, l8, l9])

        if Cab == 0:
            # linear probe: the cross-waveguide coefficients vanish identically
            l.extend([zero] * 5)
        else:
            l10 = (2 * Cab * KK * (Gabp - 1) / kc) * (
                2j * KK**2 * db * dab * s2 * (
                    4 * KK**2 * (db * (Gam_c - 1) - da * (Gam_c + 1) + db)
                    - (db**2 * (db - 2 * da) - (dab**3 - 2 * da**2 * db) * (Gam_c - 1))
                )
                - 1j * da**2 * db**2 * dab**3 * (Gap_c - 1) * s2
                + 16 * KK**5 * (
                    -db * dab * Gam_c * c2
                    + (da * (Gabm_c - 1) + dab * (Gap_c - 1) + db) * da
                )
                - 4 * KK**3 * (
                    db * dab * c2 * (da**2 * (3 * Gap_c - 2) - da * db * Gap_c - db**2 * Gam_c)
                    + da * (
                        (db**2 * dab + dab**3) * (Gap_c - 1)
                        + db**3
                        + db * dab**2
                        - (Gabp_c - 1) * (2 * da**2 * db - 4 * da * db**2 + da**3 + 2 * db**3)
                    )
                )
                - KK * da * db * dab**2 * (
                    db * dab * (Gam_c - 1)
                    + 2 * da**2 * (Gabp_c - 1)
                    - db**2
                    + c2 * (-db**2 + (da * db - 2 * da**2 + db**2) * (Gap_c - 1))
                )
            )

            l11 = -(2 * Cab * kk * (Gabp - 1) / kc) * (
                32 * KK**6 * (da * (Gabm_c - 1) + db + dab * (Gap_c - 1))
                + 16j * db * dab * KK**5 * Gam_c * s2
                - 2 * da**2 * db**2 * dab**3 * (Gap_c - 1) * sinsq
                + (
                    4j * db * dab * KK**3
                    * (-da * db * Gap_c - db**2 * Gam_c + da**2 * (3 * Gap_c - 2))
                    - 1j * da * (db**2 + (2 * da**2 - da * db - db**2) * (Gap_c - 1))
                    * db * dab**2 * KK
                ) * s2
                - 8 * KK**4 * (
                    db * dab * c2 * (db * Gam_c - da * (Gam_c + 1))
                    - da * (Gabp_c - 1) * (da * db + 3 * dab**2)
                    + db * (dab**2 + db**2)
                    + (Gap_c - 1) * (-5 * da**2 * db + 4 * da * db**2 + 3 * da**3 - 2 * db**3)
                )
                + 2 * dab * KK**2 * (
                    db * (db**2 * (db - 2 * da) + (Gap_c - 1) * (dab**3 - 2 * da**2 * db)) * c2
                    + da**3 * (Gabm_c - 1) * (2 * dab - db)
                    + db**3 * dab
                    + (Gap_c - 1) * (2 * da**2 * dab**2 - 2 * da * db**3 + 3 * da**2 * db**2 + db**4)
                )
            )

            l12 = -(2 * Cab * kk * (Gabp - 1) * (4 * KK**2 - dab**2) / kc) * (
                8 * KK**4 * (da * (Gabm_c - 1) + dab * (Gap_c - 1) + db)
                + da**2 * db**2 * dab * sinsq * (Gap_c - 1)
                - 2 * KK**2 * (
                    da * dab * (Gap_c - 1) * c2 * db
                    + dab * (da**2 + db**2) * (Gap_c - 1)
                    + da**3 * (Gabm_c - 1)
                    + db**3
                )
                + 1j * da * db * KK * (da**2 - db**2) * (Gap_c - 1) * s2
            )

            l13 = -(2 * Cab * kk * KK * (Gabp - 1) / kc) * (
                32 * KK**5 * (da * (Gabm_c - 1) + db + dab * (Gap_c - 1))
                - 4j * db * dab * KK**2 * s2 * (
                    4 * KK**2 * Gam_c - da * db * (3 * Gap_c - 2) + da**2 * Gap_c - db**2 * Gam_c
                )
                - 1j * da * db**2 * dab**2 * s2 * (-db + dab * (Gap_c - 1))
                - 8 * KK**3 * (
                    db * dab * (-db * Gam_c + da * (Gap_c + 1)) * c2
                    - da * (Gabp_c - 1) * (da**2 + db * dab)
                    + (db + dab * (Gap_c - 1)) * (db**2 + dab**2)
                )
                - 2 * db * dab * KK * (
                    c2 * (-db**2 * (da + dab) - dab**2 * (da + db) * (Gap_c - 1))
                    - db * dab**2 * (Gap_c - 1)
                    + da**3 * (Gabp_c - 1)
                    - db**2 * dab
                )
            )

            l14 = -(2 * Cab * kk**2 * (Gabp - 1) / kc) * (
                2 * da * db**2 * dab**2 * (-db + dab * (Gap_c - 1)) * sinsq
                + 2j * db * dab * KK * s2 * (
                    -4 * KK**2 * (-db * Gam_c + da * (Gap_c + 1))
                    + (da + dab) * db**2
                    + dab**2 * (da + db) * (Gap_c - 1)
                )
                + 16 * KK**4 * (
                    -db * dab * Gam_c * c2
                    + da * ((Gap_c - 1) * dab + ((db - dab) * (Gabp_c - 1) - db))
                )
                - 4 * KK**2 * (
                    db * dab * (-da * db * (3 * Gap_c - 2) - db**2 * Gam_c + da**2 * Gap_c) * c2
                    + da * ((db - dab) * da**2 * (Gabp_c - 1) + (db**2 + dab**2) * (-db + dab * (Gap_c - 1)))
                )
            )

            l.extend([l10, l11, l12, l13, l14])

    # the value at z = 0 is identically zero; the bracket forms only cancel
    # to rounding there, so pin the exact limit
    if np.any(z == 0):
        l[2:] = [np.where(z == 0, 0.0j, li) for li in l[2:]]

    if scalar:
        l = [complex(v) for v in l]
    return CoeffSet(l=tuple(l), warnings=_near_singular_warnings(params))


def coeff_p(params: CouplerParams, kz) -> ProbeOffCoeffs:
    """Probe-off (k = 0) coefficients at the same rescaled length kz.

    With the linear coupling removed, only the b2/b1 sector survives:
    p2 replaces l2, p5 replaces l5 and p6 = p5/2 replaces l6; every other
    coefficient of the expansion is identically zero.
    """
    scalar = np.ndim(kz) == 0
    z = np.asarray(kz, dtype=float) / abs(params.k)
    db = params.dk_b
    Gb = complex(params.gamma_b)

    if Gb == 0:
        zero = np.zeros_like(z) * 1j
        p2 = p5 = p6 = complex(0) if scalar else zero
        return ProbeOffCoeffs(p2=p2, p5=p5, p6=p6,
                              warnings=_near_singular_warnings(params))

    Gbm_c = 1 - np.exp(1j * db * z)  # G_{b-}^* = 1 - exp(+i dk_b z)
    p2 = -Gb * Gbm_c / db
    p6 = -2 * (Gb * np.conj(Gb)) * (Gbm_c + 1j * db * z) / db**2
    p5 = 2 * p6
    if scalar:
        p2, p5, p6 = complex(p2), complex(p5), complex(p6)
    return ProbeOffCoeffs(p2=p2, p5=p5, p6=p6,
                          warnings=_near_singular_warnings(params))


def dump_coeffs(coeffs: CoeffSet) -> str:
    """Fixed-format debug dump: one `l<i> = <re> <im>` line per coefficient,
    17 significant digits, suitable for golden-file comparisons."""
    lines = []
    for i in range(1, 15):
        v = coeffs.l[i]
        if np.ndim(v) != 0:
            raise ValueError("dump_coeffs expects coefficients at a single point")
        v = complex(v)
        lines.append(f"l{i} = {v.real:.16e} {v.imag:.16e}")
    return "\n".join(lines)
