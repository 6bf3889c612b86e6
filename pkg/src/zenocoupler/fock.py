"""Brute-force cross-check on a truncated four-mode Fock space.

The generator of spatial evolution for the coupler is

    G(z) = k a1 b1' + gamma_a a1^2 a2' e^{+i dk_a z}
                    + gamma_b b1^2 b2' e^{+i dk_b z} + h.c.

(primes are daggers).  States evolve as d|psi>/dz = +i G(z) |psi>; the sign is
fixed so that d<A>/dz = i <[A, G]> reproduces the mode equations, e.g.
db2/dz = i gamma_b b1^2 e^{+i dk_b z}.  Propagating a coherent initial state
twice, with and without the linear coupling k, and measuring <b2' b2> gives a
perturbation-free Zeno parameter to compare the closed forms against.

G commutes with the weighted excitation number M = N_a1 + N_b1 + 2 N_a2 +
2 N_b2 (each term moves two fundamental quanta into one second-harmonic
quantum or shuffles quanta between the fundamentals), so truncating at fixed
M_max is exact once the initial state fits: no amplitude ever leaks across the
cut.  That is the default truncation; a plain per-mode cut is also available.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.integrate import solve_ivp

from .params import CoherentAmplitudes, CouplerParams, ValidationError

# weights of (n_a1, n_b1, n_a2, n_b2) in the conserved excitation number
M_WEIGHTS = (1, 1, 2, 2)

DEFAULT_MAX_STATES = 200_000


class BasisTooLarge(ValidationError):
    pass


class TailMassTooLarge(ValidationError):
    pass


class StepSizeUnderflow(RuntimeError):
    pass


class NormDriftExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class PerMode:
    """Keep number states with n <= n_max in every mode."""

    n_max: int


@dataclass(frozen=True)
class WeightedTotal:
    """Keep number states with n_a1 + n_b1 + 2 n_a2 + 2 n_b2 <= m_max."""

    m_max: int


@dataclass(frozen=True)
class StepControl:
    """Adaptive embedded Runge-Kutta settings for the propagator."""

    rtol: float = 1e-10
    atol: float = 1e-12
    method: str = "RK45"
    max_step: float = np.inf


@dataclass(frozen=True)
class Basis:
    """Deterministic enumeration of the truncated basis, lexicographic in
    (n_a1, n_b1, n_a2, n_b2)."""

    states: np.ndarray
    spec: object
    index: dict = field(repr=False)

    @property
    def dim(self) -> int:
        return self.states.shape[0]


@dataclass(frozen=True)
class FockStateVector:
    amplitudes: np.ndarray
    basis: Basis
    tail_mass: float = 0.0
    warnings: tuple = ()


def build_basis(trunc, max_states: int = DEFAULT_MAX_STATES) -> Basis:
    states = []
    if isinstance(trunc, WeightedTotal):
        m = int(trunc.m_max)
        if m < 0:
            raise ValidationError(f"m_max must be >= 0, got {trunc.m_max!r}")
        for na1 in range(m + 1):
            for nb1 in range(m - na1 + 1):
                r = m - na1 - nb1
                for na2 in range(r // 2 + 1):
                    for nb2 in range((r - 2 * na2) // 2 + 1):
                        states.append((na1, nb1, na2, nb2))
                        if len(states) > max_states:
                            raise BasisTooLarge(
                                f"basis exceeds {max_states} states"
                            )
    elif isinstance(trunc, PerMode):
        n = int(trunc.n_max)
        if n < 0:
            raise ValidationError(f"n_max must be >= 0, got {trunc.n_max!r}")
        if (n + 1) ** 4 > max_states:
            raise BasisTooLarge(
                f"basis would have {(n + 1) ** 4} > {max_states} states"
            )
        for na1 in range(n + 1):
            for nb1 in range(n + 1):
                for na2 in range(n + 1):
                    for nb2 in range(n + 1):
                        states.append((na1, nb1, na2, nb2))
    else:
        raise ValidationError(f"unknown truncation spec {trunc!r}")
    arr = np.asarray(states, dtype=np.int64)
    index = {tuple(s): i for i, s in enumerate(states)}
    return Basis(states=arr, spec=trunc, index=index)


def weighted_m(basis: Basis) -> np.ndarray:
    return basis.states @ np.asarray(M_WEIGHTS, dtype=np.int64)


def _hop_matrix(basis: Basis, delta, amp_fn) -> sp.csr_matrix:
    """Sparse matrix of a single normally ordered hopping term.

    delta is the occupation change of the target state; amp_fn(state) gives
    the ladder amplitude.  Raising amplitudes that would leave the truncated
    basis are dropped (matrix elements simply absent).
    """
    rows, cols, vals = [], [], []
    delta = np.asarray(delta, dtype=np.int64)
    for j, state in enumerate(basis.states):
        amp = amp_fn(state)
        if amp == 0.0:
            continue
        target = tuple(state + delta)
        i = basis.index.get(target)
        if i is None:
            continue
        rows.append(i)
        cols.append(j)
        vals.append(amp)
    return sp.csr_matrix(
        (np.asarray(vals, dtype=np.complex128), (rows, cols)),
        shape=(basis.dim, basis.dim),
    )


def _term_matrices(basis: Basis):
    """The three z-independent coupling terms of the generator."""
    t_lin = _hop_matrix(
        basis,
        (-1, 1, 0, 0),
        lambda s: math.sqrt(s[0] * (s[1] + 1)),
    )
    t_a = _hop_matrix(
        basis,
        (-2, 0, 1, 0),
        lambda s: math.sqrt(s[0] * (s[0] - 1) * (s[2] + 1)) if s[0] >= 2 else 0.0,
    )
    t_b = _hop_matrix(
        basis,
        (0, -2, 0, 1),
        lambda s: math.sqrt(s[1] * (s[1] - 1) * (s[3] + 1)) if s[1] >= 2 else 0.0,
    )
    return t_lin, t_a, t_b


def build_generator(params: CouplerParams, z: float, trunc_or_basis) -> sp.csr_matrix:
    """Assemble the sparse Hermitian generator G(z) on the truncated basis.

    Singular-manifold parameters are fine here: the generator has no
    denominators.
    """
    basis = (
        trunc_or_basis
        if isinstance(trunc_or_basis, Basis)
        else build_basis(trunc_or_basis)
    )
    t_lin, t_a, t_b = _term_matrices(basis)
    s = (
        params.k * t_lin
        + params.gamma_a * np.exp(1j * params.dk_a * z) * t_a
        + params.gamma_b * np.exp(1j * params.dk_b * z) * t_b
    )
    return (s + s.conjugate().transpose()).tocsr()


def coherent_state(
    amps: CoherentAmplitudes,
    trunc_or_basis,
    *,
    tail_warn: float = 1e-8,
    tail_max: float = 1e-3,
) -> FockStateVector:
    """Truncated, renormalized product of coherent states.

    tail_mass records the probability the untruncated state assigns outside
    the basis; above tail_warn it is flagged, above tail_max construction
    fails (expectation values would not be trustworthy).
    """
    basis = (
        trunc_or_basis
        if isinstance(trunc_or_basis, Basis)
        else build_basis(trunc_or_basis)
    )
    values = (amps.alpha, amps.beta, amps.gamma, amps.delta)
    n_max = basis.states.max(initial=0)
    # per-mode amplitude tables x^n / sqrt(n!) via the stable recurrence
    tables = np.empty((4, n_max + 1), dtype=np.complex128)
    for m, x in enumerate(values):
        tables[m, 0] = 1.0
        for n in range(1, n_max + 1):
            tables[m, n] = tables[m, n - 1] * x / math.sqrt(n)
    amp = (
        tables[0, basis.states[:, 0]]
        * tables[1, basis.states[:, 1]]
        * tables[2, basis.states[:, 2]]
        * tables[3, basis.states[:, 3]]
    )
    weight = math.exp(-0.5 * sum(abs(x) ** 2 for x in values))
    amp = amp * weight
    captured = float(np.vdot(amp, amp).real)
    tail = max(0.0, 1.0 - captured)
    if tail > tail_max:
        raise TailMassTooLarge(
            f"truncated coherent state loses {tail:.3e} probability "
            f"(> {tail_max:.1e}); enlarge the basis"
        )
    warnings = ()
    if tail > tail_warn:
        warnings = (f"tail_mass:{tail:.3e}",)
    amp = amp / math.sqrt(captured)
    return FockStateVector(
        amplitudes=amp, basis=basis, tail_mass=tail, warnings=warnings
    )


def propagate(
    params: CouplerParams,
    state0: FockStateVector,
    kz_grid,
    step_control: StepControl = StepControl(),
    *,
    norm_tol: float = 1e-8,
) -> list[FockStateVector]:
    """Integrate d|psi>/dz = +i G(z) |psi> and return states at the grid points.

    kz_grid must be ascending and start at >= 0.  The grid is in rescaled
    units kz; for k = 0 (probe-off reference) the same z coordinates are used
    directly, matching the |k| = 1 normalization of validated parameters.
    """
    grid = np.atleast_1d(np.asarray(kz_grid, dtype=float))
    if grid.size == 0:
        return []
    if grid[0] < 0 or np.any(np.diff(grid) < 0):
        raise ValidationError("kz_grid must be ascending and start at >= 0")
    scale = abs(params.k)
    z_grid = grid / scale if scale > 0 else grid.copy()

    basis = state0.basis
    t_lin, t_a, t_b = _term_matrices(basis)
    t_lin_h = t_lin.conjugate().transpose().tocsr()
    t_a_h = t_a.conjugate().transpose().tocsr()
    t_b_h = t_b.conjugate().transpose().tocsr()
    k = complex(params.k)
    ga = complex(params.gamma_a)
    gb = complex(params.gamma_b)
    dk_a, dk_b = params.dk_a, params.dk_b

    def rhs(z, y):
        out = k * (t_lin @ y) + np.conj(k) * (t_lin_h @ y)
        if ga != 0:
            pa = ga * np.exp(1j * dk_a * z)
            out += pa * (t_a @ y) + np.conj(pa) * (t_a_h @ y)
        if gb != 0:
            pb = gb * np.exp(1j * dk_b * z)
            out += pb * (t_b @ y) + np.conj(pb) * (t_b_h @ y)
        return 1j * out

    y0 = np.asarray(state0.amplitudes, dtype=np.complex128)
    if z_grid[-1] == 0.0:
        cols = [y0.copy() for _ in z_grid]
    else:
        sol = solve_ivp(
            rhs,
            (0.0, float(z_grid[-1])),
            y0,
            t_eval=z_grid,
            method=step_control.method,
            rtol=step_control.rtol,
            atol=step_control.atol,
            max_step=step_control.max_step,
        )
        if not sol.success:
            raise StepSizeUnderflow(f"propagation failed: {sol.message}")
        cols = [sol.y[:, i].copy() for i in range(sol.y.shape[1])]

    states = []
    for col in cols:
        drift = abs(float(np.linalg.norm(col)) - 1.0)
        if drift > norm_tol:
            raise NormDriftExceeded(
                f"norm drift {drift:.3e} exceeds {norm_tol:.1e}"
            )
        states.append(
            FockStateVector(
                amplitudes=col,
                basis=basis,
                tail_mass=state0.tail_mass,
                warnings=state0.warnings,
            )
        )
    return states


def mean_occupation(state: FockStateVector, mode: int) -> float:
    prob = (state.amplitudes * state.amplitudes.conj()).real
    return float(prob @ state.basis.states[:, mode])


def mean_n_b2(state: FockStateVector) -> float:
    return mean_occupation(state, 3)


def mean_weighted_m(state: FockStateVector) -> float:
    prob = (state.amplitudes * state.amplitudes.conj()).real
    return float(prob @ weighted_m(state.basis))


def oracle_mean_n_b2(
    params: CouplerParams,
    amps: CoherentAmplitudes,
    kz_grid,
    trunc_or_basis,
    step_control: StepControl = StepControl(),
    probe_coupled: bool = True,
) -> np.ndarray:
    """<N_b2> along kz_grid by direct propagation.

    probe_coupled=False removes the linear coupling from the generator (k = 0
    reference run) while keeping the grid in the original kz units.
    """
    basis = (
        trunc_or_basis
        if isinstance(trunc_or_basis, Basis)
        else build_basis(trunc_or_basis)
    )
    run_params = params
    if not probe_coupled:
        scale = abs(params.k)
        run_params = CouplerParams(
            k=0.0j,
            gamma_a=params.gamma_a / (scale if scale else 1.0),
            gamma_b=params.gamma_b / (scale if scale else 1.0),
            dk_a=params.dk_a / (scale if scale else 1.0),
            dk_b=params.dk_b / (scale if scale else 1.0),
            warnings=params.warnings,
        )
        grid = np.atleast_1d(np.asarray(kz_grid, dtype=float)) / (scale if scale else 1.0)
    else:
        grid = kz_grid
    state0 = coherent_state(amps, basis)
    states = propagate(run_params, state0, grid, step_control)
    return np.asarray([mean_n_b2(s) for s in states])


def oracle_zeno(
    params: CouplerParams,
    amps: CoherentAmplitudes,
    kz_grid,
    trunc_or_basis,
    step_control: StepControl = StepControl(),
) -> np.ndarray:
    """Zeno parameter by brute force: probe-on minus probe-off mean occupation."""
    basis = (
        trunc_or_basis
        if isinstance(trunc_or_basis, Basis)
        else build_basis(trunc_or_basis)
    )
    on = oracle_mean_n_b2(params, amps, kz_grid, basis, step_control, True)
    off = oracle_mean_n_b2(params, amps, kz_grid, basis, step_control, False)
    return on - off


def slope_at_zero(
    params: CouplerParams,
    amps: CoherentAmplitudes,
    trunc_or_basis,
    step_control: StepControl = StepControl(rtol=1e-12, atol=1e-14),
    h: float = 5e-4,
    probe_coupled: bool = True,
) -> float:
    """Numerical d<N_b2>/dz at z = 0 from a fourth-order one-sided stencil.

    Locks the propagator sign convention: the result must match
    2 Re(i gamma_b beta^2 conj(delta)) regardless of every other parameter.
    """
    grid = h * np.arange(5)
    vals = oracle_mean_n_b2(
        params, amps, grid, trunc_or_basis, step_control, probe_coupled
    )
    w = np.array([-25.0 / 12.0, 4.0, -3.0, 4.0 / 3.0, -1.0 / 4.0])
    return float(w @ vals / h)


def expected_slope_at_zero(params: CouplerParams, amps: CoherentAmplitudes) -> float:
    """Closed-form d<N_b2>/dz at z = 0: 2 Re(i gamma_b beta^2 conj(delta))."""
    return float(
        2.0 * np.real(1j * params.gamma_b * amps.beta**2 * np.conj(amps.delta))
    )
