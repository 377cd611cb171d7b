"""System Hamiltonian and the vectorized master-equation generator.

Vectorization is column-stacking: vec(A rho B) = (B^T kron A) vec(rho).
The dissipator convention is A[O] rho = 2 O rho O+ - O+O rho - rho O+O,
so a term (rate/2) A[O] is a standard-form Lindblad channel at `rate`.
Energies stay in ueV during assembly; the single division by hbar at the
end puts the generator in rad/ps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import HBAR_UEV_PS
from .errors import LiouvillianError
from .operators import HilbertSpace, QOperator, build_operators
from .params import PhononEnv, SystemParams
from .phonon import BathKernel, PhononRates, get_kernel

TRACE_PRESERVATION_TOL = 1e-10


@dataclass(frozen=True)
class Liouvillian:
    """Superoperator generating the master-equation flow on vec(rho).

    `matrix` is D^2 x D^2 in rad/ps; `channels` records the (name,
    rate ueV, collapse operator) triples used to build it.
    """

    space: HilbertSpace
    matrix: np.ndarray
    hamiltonian: QOperator
    channels: tuple
    b_mean: float
    rates: PhononRates | None

    def __post_init__(self):
        self.matrix.setflags(write=False)


def vectorize(matrix: np.ndarray) -> np.ndarray:
    """Column-stacking vec."""
    return np.asarray(matrix).reshape(-1, order="F")


def unvectorize(vec: np.ndarray) -> np.ndarray:
    d = int(round(np.sqrt(vec.size)))
    return vec.reshape(d, d, order="F")


def build_hamiltonian(sys: SystemParams, b_mean: float) -> QOperator:
    """H = dxl s+s- + dcl a+a + <B>[Omega/2 (s+ + s-) + g_c (s+a + a+s-)], ueV."""
    space = HilbertSpace(sys.n_fock)
    ops = build_operators(space)
    omega_r, g_r = sys.renormalized_couplings(b_mean)
    h = (
        sys.delta_xl * (ops.sigma_plus @ ops.sigma_minus)
        + sys.delta_cl * (ops.a_dagger @ ops.a)
        + (omega_r / 2) * (ops.sigma_plus + ops.sigma_minus)
        + g_r * (ops.sigma_plus @ ops.a + ops.a_dagger @ ops.sigma_minus)
    )
    return h


def dissipator(rate_uev: float, collapse: QOperator) -> np.ndarray:
    """(rate/2) A[O] in vectorized form, still in ueV (hbar applied later)."""
    if rate_uev < 0:
        raise LiouvillianError(f"negative collapse rate {rate_uev}")
    o = collapse.matrix
    odo = o.conj().T @ o
    eye = np.eye(o.shape[0])
    return (rate_uev / 2) * (
        2 * np.kron(o.conj(), o) - np.kron(eye, odo) - np.kron(odo.T, eye)
    )


def hamiltonian_superop(h: QOperator) -> np.ndarray:
    """-i [H, .] in vectorized form with H in ueV (hbar applied later)."""
    eye = np.eye(h.space.dim)
    return -1j * (np.kron(eye, h.matrix) - np.kron(h.matrix.T, eye))


def assemble(
    sys: SystemParams,
    env: PhononEnv | None = None,
    *,
    kernel: BathKernel | None = None,
    include_phonon_rates: bool = True,
) -> Liouvillian:
    """Build the full generator for (sys, env).

    With `env` None or disabled, <B> = 1 and the four phonon channels are
    omitted; `include_phonon_rates=False` keeps the <B>-renormalized
    Hamiltonian but drops the phonon channels (used by the cavity-field
    relation check).
    """
    if env is None:
        env = PhononEnv(enabled=False)
    if kernel is None:
        kernel = get_kernel(env)
    b_mean = kernel.b_mean
    space = HilbertSpace(sys.n_fock)
    ops = build_operators(space)
    h = build_hamiltonian(sys, b_mean)

    channels = []
    rates = None
    if env.enabled and include_phonon_rates:
        rates = kernel.rates(sys)
        channels += [
            ("phonon_sigma_plus", rates.gamma_sigma_plus, ops.sigma_plus),
            ("phonon_sigma_minus", rates.gamma_sigma_minus, ops.sigma_minus),
            ("phonon_adag_sigma_minus", rates.gamma_adag_sigma_minus,
             ops.a_dagger @ ops.sigma_minus),
            ("phonon_sigma_plus_a", rates.gamma_sigma_plus_a,
             ops.sigma_plus @ ops.a),
        ]
    channels += [
        ("radiative", sys.gamma, ops.sigma_minus),
        ("dephasing", sys.gamma_prime, ops.sigma_plus @ ops.sigma_minus),
        ("cavity", sys.kappa, ops.a),
    ]

    mat = hamiltonian_superop(h)
    for _, rate, op in channels:
        mat = mat + dissipator(rate, op)
    mat = mat / HBAR_UEV_PS  # single ueV -> rad/ps conversion point

    trace_residual = np.max(np.abs(vectorize(np.eye(space.dim)) @ mat))
    if trace_residual > TRACE_PRESERVATION_TOL:
        raise LiouvillianError(
            f"generator is not trace preserving: residual {trace_residual:.3e}"
        )
    return Liouvillian(
        space=space,
        matrix=mat,
        hamiltonian=h,
        channels=tuple(channels),
        b_mean=b_mean,
        rates=rates,
    )
