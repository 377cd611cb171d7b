"""Observables of a steady state: field moments, normally ordered quadrature
variance, exciton coherence, and Fock-space statistics of the cavity mode.

Moments are always computed via exact operator traces on the full joint
state, never via pure-state shortcuts.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operators import DensityMatrix, build_operators, expectation, partial_trace_qd
from .params import SystemParams

__all__ = [
    "ObservableSet",
    "compute_observables",
    "quadrature_variance",
    "exciton_coherence",
    "fock_statistics",
    "cavity_field_relation_check",
]


@dataclass(frozen=True)
class ObservableSet:
    exp_a: complex
    exp_adag_a: float
    exp_a2: complex
    exp_sigma_minus: complex
    variance_normord: float
    theta: float
    fock_populations: np.ndarray
    fock_coherences: np.ndarray


def _field_moments(rho: DensityMatrix):
    ops = build_operators(rho.space)
    exp_a = expectation(ops.a, rho)
    exp_n = expectation(ops.a_dagger @ ops.a, rho).real
    exp_a2 = expectation(ops.a @ ops.a, rho)
    return exp_a, exp_n, exp_a2


def quadrature_variance(rho: DensityMatrix, theta: float = 0.0) -> float:
    """<:dX_theta^2:> = 1/2 [<a+a> - |<a>|^2 + Re(e^{-2i theta}(<a^2> - <a>^2))].

    Negative values signal quadrature squeezing below the shot-noise level.
    theta = 0 is the phase used throughout the figure recipes.
    """
    exp_a, exp_n, exp_a2 = _field_moments(rho)
    anomalous = exp_a2 - exp_a**2
    return 0.5 * (
        exp_n - abs(exp_a) ** 2 + (np.exp(-2j * theta) * anomalous).real
    )


def exciton_coherence(rho: DensityMatrix) -> float:
    """|<sigma->| in [0, 0.5]."""
    ops = build_operators(rho.space)
    return abs(expectation(ops.sigma_minus, rho))


def fock_statistics(rho: DensityMatrix):
    """(populations P_n, full cavity coherence matrix) after tracing out the QD."""
    rho_cav = partial_trace_qd(rho)
    populations = np.real(np.diag(rho_cav)).copy()
    return populations, rho_cav


def cavity_field_relation_check(
    rho: DensityMatrix, sys: SystemParams, b_mean: float
) -> float:
    """Error of <a> = -g_R <sigma-> / (delta_cl - i kappa/2).

    Exact for a steady state computed with the phonon incoherent rates
    disabled; with the rates on the deviation measures the phonon
    correction. Returns the relative error, or the absolute error when
    |<a>| < 1e-12.
    """
    ops = build_operators(rho.space)
    exp_a = expectation(ops.a, rho)
    exp_sm = expectation(ops.sigma_minus, rho)
    _, g_r = sys.renormalized_couplings(b_mean)
    predicted = -g_r * exp_sm / (sys.delta_cl - 1j * sys.kappa / 2)
    error = abs(exp_a - predicted)
    if abs(exp_a) < 1e-12:
        return error
    return error / abs(exp_a)


def compute_observables(rho: DensityMatrix, theta: float = 0.0) -> ObservableSet:
    exp_a, exp_n, exp_a2 = _field_moments(rho)
    ops = build_operators(rho.space)
    populations, rho_cav = fock_statistics(rho)
    return ObservableSet(
        exp_a=exp_a,
        exp_adag_a=exp_n,
        exp_a2=exp_a2,
        exp_sigma_minus=expectation(ops.sigma_minus, rho),
        variance_normord=quadrature_variance(rho, theta),
        theta=theta,
        fock_populations=populations,
        fock_coherences=rho_cav,
    )
