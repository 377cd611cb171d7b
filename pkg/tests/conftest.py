"""Shared fixtures: the common operating point and its (cached) steady state."""

import math

import numpy as np
import pytest

from qdcav import PhononEnv, SystemParams, converge_truncation, get_kernel

DELTA_SCALE = math.sqrt(50.0**2 + 75.0**2)


def make_system(**overrides) -> SystemParams:
    """Operating point: (Omega_R, g_R) = (50, 75) ueV, kappa = 45 ueV,
    delta_xl = -75 ueV, delta_cl = -0.3 sqrt(Omega_R^2 + delta_xl^2)."""
    params = dict(
        omega=50.0,
        g_c=75.0,
        delta_xl=-75.0,
        delta_cl=-0.3 * DELTA_SCALE,
        kappa=45.0,
        gamma=2.0,
        gamma_prime=0.5,
        n_fock=5,
        input_mode="renormalized",
    )
    params.update(overrides)
    return SystemParams(**params)


@pytest.fixture(scope="session")
def base_system():
    return make_system()


@pytest.fixture(scope="session")
def base_env():
    return PhononEnv(alpha_p=0.06, omega_b=1000.0, temperature=4.0, enabled=True)


@pytest.fixture(scope="session")
def base_kernel(base_env):
    return get_kernel(base_env)


@pytest.fixture(scope="session")
def steady_on(base_system, base_env):
    """Converged steady state at the operating point with phonons."""
    return converge_truncation(base_system, base_env)


@pytest.fixture(scope="session")
def steady_off(base_system, base_env):
    """Converged steady state at the operating point without the bath."""
    from qdcav.params import replace

    return converge_truncation(base_system, replace(base_env, enabled=False))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
