"""Steady-state solve, time evolution, and Fock-truncation convergence.

The steady state is found by replacing one row of L with the vectorized
trace constraint and solving the dense linear system (one LU solve,
machine-precision residual). The SVD of L supplies the uniqueness gap.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import solve_ivp

from .errors import SteadyStateError
from .liouville import Liouvillian, assemble, unvectorize, vectorize
from .observables import quadrature_variance
from .operators import DensityMatrix, build_operators, expectation
from .params import PhononEnv, SystemParams
from .phonon import get_kernel

RESIDUAL_REL_TOL = 1e-10
GAP_TOL = 1e-8
HERMITIZATION_TOL = 1e-8
N_FOCK_MAX = 20


@dataclass(frozen=True)
class SteadyStateResult:
    rho: DensityMatrix
    residual: float  # ||L vec(rho)||_2
    gap: float  # second-smallest singular value of L
    n_fock_used: int


def steady_state(liouvillian: Liouvillian) -> SteadyStateResult:
    """Unique null state of L with Tr rho = 1; validated and Hermitized."""
    lmat = liouvillian.matrix
    dim = liouvillian.space.dim

    singular_values = np.linalg.svd(lmat, compute_uv=False)
    norm_l, gap = singular_values[0], singular_values[-2]
    if gap <= GAP_TOL:
        raise SteadyStateError(f"non-unique steady state: gap {gap:.3e}")

    system = lmat.copy()
    trace_row = vectorize(np.eye(dim)).astype(complex)
    system[0, :] = trace_row
    rhs = np.zeros(dim * dim, dtype=complex)
    rhs[0] = 1.0
    rho_raw = unvectorize(np.linalg.solve(system, rhs))

    hermitized = (rho_raw + rho_raw.conj().T) / 2
    correction = np.max(np.abs(rho_raw - hermitized))
    if correction > HERMITIZATION_TOL:
        raise SteadyStateError(
            f"Hermitization correction {correction:.3e} signals an assembly bug"
        )
    residual = float(np.linalg.norm(lmat @ vectorize(hermitized)))
    if residual > RESIDUAL_REL_TOL * norm_l:
        raise SteadyStateError(
            f"steady-state residual {residual:.3e} exceeds {RESIDUAL_REL_TOL:.0e}*||L||"
        )
    rho = DensityMatrix(liouvillian.space, hermitized)  # validates invariants
    return SteadyStateResult(
        rho=rho, residual=residual, gap=float(gap),
        n_fock_used=liouvillian.space.n_fock,
    )


def evolve(
    liouvillian: Liouvillian,
    rho0: DensityMatrix,
    t_final: float,
    dt_hint: float | None = None,
    n_store: int = 51,
):
    """Adaptive RK45 integration of d vec(rho)/dt = L vec(rho).

    Returns (times ps, list of DensityMatrix). Trace deviation beyond
    1e-8 at any stored point is an error.
    """
    if t_final <= 0:
        raise ValueError("t_final must be > 0")
    lmat = liouvillian.matrix
    times = np.linspace(0.0, t_final, n_store)
    sol = solve_ivp(
        lambda _t, y: lmat @ y,
        (0.0, t_final),
        vectorize(rho0.matrix).astype(complex),
        t_eval=times,
        method="RK45",
        rtol=1e-9,
        atol=1e-12,
        first_step=dt_hint,
    )
    if not sol.success:
        raise SteadyStateError(f"time evolution failed: {sol.message}")
    states = []
    for column in sol.y.T:
        rho = unvectorize(column)
        if abs(np.trace(rho) - 1.0) > 1e-8:
            raise SteadyStateError("trace drifted beyond 1e-8 during evolution")
        states.append(DensityMatrix(liouvillian.space, (rho + rho.conj().T) / 2))
    return times, states


def converge_truncation(
    sys: SystemParams,
    env: PhononEnv | None = None,
    *,
    include_phonon_rates: bool = True,
    n_max: int = N_FOCK_MAX,
) -> SteadyStateResult:
    """Increase the Fock cutoff until <a+a> and the variance stop moving.

    Stops when consecutive N, N+2 agree to 1e-6 in <a+a> and 1e-7 in the
    normally ordered variance.
    """
    if env is None:
        env = PhononEnv(enabled=False)
    kernel = get_kernel(env)
    previous = None
    n = sys.n_fock
    while n <= n_max:
        liouvillian = assemble(
            replace(sys, n_fock=n), env, kernel=kernel,
            include_phonon_rates=include_phonon_rates,
        )
        result = steady_state(liouvillian)
        ops = build_operators(result.rho.space)
        n_photon = expectation(ops.a_dagger @ ops.a, result.rho).real
        variance = quadrature_variance(result.rho)
        if previous is not None:
            prev_n, prev_var = previous
            if abs(n_photon - prev_n) <= 1e-6 and abs(variance - prev_var) <= 1e-7:
                return result
        previous = (n_photon, variance)
        n += 2
    raise SteadyStateError(f"no truncation convergence by N = {n_max}")
