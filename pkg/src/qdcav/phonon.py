"""Phonon-bath quantities: spectral function, mean displacement <B>,
phonon phase phi(tau), and the four phonon-induced incoherent rates.

Frequency integrals use Gauss-Legendre on [0, 8 w_b]; the integrands are
smooth with Gaussian decay so 2000 nodes are far beyond sufficient and
convergence is asserted by node doubling. The tau integrals use the
trapezoid rule on a uniform grid; the kernel exp(phi) - 1 decays within
~3 ps (phonon correlation time about 2 ps).

For T > 0 the phase phi(tau) decays exponentially at rate 2 pi kB T /
hbar (set by the poles of coth on the imaginary frequency axis), so the
tau window scales like 1/T: 12 ps suffices above ~2 K, and lower
temperatures get proportionally longer grids. At T = 0 (and below the
temperature where the required window would exceed TAU_MAX_CAP) the
decay is only algebraic, phi ~ -alpha_p / tau^2, because the T = 0
integrand omega exp(-omega^2/2 w_b^2) extends to an odd function of
omega and its half-line cosine transform falls off as 1/tau^2. That
regime verifies decay against the known asymptote and adds the analytic
tail contribution to the rate integrals in closed form (sine integral).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
from scipy.special import sici

from .constants import HBAR_UEV_PS, KB_UEV_PER_K, energy_to_angular_frequency
from .errors import QuadratureError
from .params import PhononEnv, SystemParams

N_OMEGA_DEFAULT = 2000
OMEGA_SPAN = 8.0  # integration window [0, OMEGA_SPAN * w_b]
TAU_MAX_DEFAULT = 12.0  # ps
TAU_MAX_LOW_T = 64.0  # ps, minimum window below LOW_T_K
TAU_MAX_CAP = 512.0  # ps, upper bound on the adaptive window
LOW_T_K = 2.0  # below this phi(tau) keeps an algebraic -alpha/tau^2 tail
DTAU_DEFAULT = 0.01  # ps
RATE_CLAMP_UEV = 1e-6  # negative quadrature noise below this is clamped to 0


@dataclass(frozen=True)
class PhononRates:
    """The four incoherent rates (ueV) and the detunings in their exponents."""

    gamma_sigma_plus: float
    gamma_sigma_minus: float
    gamma_adag_sigma_minus: float
    gamma_sigma_plus_a: float
    delta_lx: float  # w_l - w_x = -delta_xl, ueV
    delta_cx: float  # w_c - w_x = delta_cl - delta_xl, ueV

    ZERO = None  # filled in below

    def as_dict(self) -> dict:
        return {
            "gamma_sigma_plus_ueV": self.gamma_sigma_plus,
            "gamma_sigma_minus_ueV": self.gamma_sigma_minus,
            "gamma_adag_sigma_minus_ueV": self.gamma_adag_sigma_minus,
            "gamma_sigma_plus_a_ueV": self.gamma_sigma_plus_a,
        }


def spectral_function(omega_radps, env: PhononEnv):
    """j(w) = alpha_p w^3 exp(-w^2 / 2 w_b^2), w in rad/ps."""
    wb = energy_to_angular_frequency(env.omega_b)
    omega = np.asarray(omega_radps, dtype=float)
    return env.alpha_p * omega**3 * np.exp(-(omega**2) / (2 * wb**2))


@functools.lru_cache(maxsize=32)
def _leggauss(n_nodes: int):
    x, w = np.polynomial.legendre.leggauss(n_nodes)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _gauss_legendre(n_nodes: int, upper: float):
    # node generation is O(n^2) and reused across every kernel, so cache it
    x, w = _leggauss(n_nodes)
    return (x + 1) * (upper / 2), w * (upper / 2)


def _coth_factor(omega_radps: np.ndarray, temperature: float) -> np.ndarray:
    """coth(hbar w / 2 kB T), with the T = 0 limit of 1."""
    if temperature == 0:
        return np.ones_like(omega_radps)
    x = HBAR_UEV_PS * omega_radps / (2 * KB_UEV_PER_K * temperature)
    return 1.0 / np.tanh(x)


def _displacement_exponent(env: PhononEnv, n_nodes: int) -> float:
    # integrand j(w)/w^2 * coth = alpha w exp(-w^2/2wb^2) coth; finite at w -> 0
    wb = energy_to_angular_frequency(env.omega_b)
    nodes, weights = _gauss_legendre(n_nodes, OMEGA_SPAN * wb)
    integrand = (
        env.alpha_p
        * nodes
        * np.exp(-(nodes**2) / (2 * wb**2))
        * _coth_factor(nodes, env.temperature)
    )
    return float(np.sum(weights * integrand))


def mean_displacement(env: PhononEnv, n_nodes: int = N_OMEGA_DEFAULT) -> float:
    """Thermally averaged displacement <B> in (0, 1]; exactly 1 when disabled."""
    if not env.enabled:
        return 1.0
    exponent = _displacement_exponent(env, n_nodes)
    check = _displacement_exponent(env, 2 * n_nodes)
    b = float(np.exp(-0.5 * exponent))
    if abs(b - np.exp(-0.5 * check)) > 1e-8:
        raise QuadratureError(
            f"<B> quadrature not converged: {b} vs {np.exp(-0.5 * check)}"
        )
    return b


class BathKernel:
    """Precomputed quadrature grids, <B>, and phi(tau) for one PhononEnv.

    Immutable after construction; `rates` is a pure function safe to call
    from parallel sweep workers. The kernel exp(phi) - 1 is shared across
    all four rates and all detunings of a sweep.
    """

    def __init__(
        self,
        env: PhononEnv,
        n_omega: int = N_OMEGA_DEFAULT,
        tau_max: float | None = None,
        dtau: float = DTAU_DEFAULT,
    ):
        self.env = env
        decay = 2 * np.pi * KB_UEV_PER_K * env.temperature / HBAR_UEV_PS  # 1/ps
        self._algebraic = env.enabled and (
            env.temperature == 0 or 20.0 / decay > TAU_MAX_CAP
        )
        if tau_max is None:
            if not env.enabled or env.temperature >= LOW_T_K:
                tau_max = TAU_MAX_DEFAULT
            elif self._algebraic:
                tau_max = TAU_MAX_LOW_T
            else:
                # run the window out to 20 thermal decay lengths
                tau_max = max(TAU_MAX_DEFAULT, 20.0 / decay)
        self.tau_max = tau_max
        self.dtau = dtau
        self.b_mean = mean_displacement(env, n_omega)
        if not env.enabled:
            return
        wb = energy_to_angular_frequency(env.omega_b)
        nodes, weights = _gauss_legendre(n_omega, OMEGA_SPAN * wb)
        # w * j(w)/w^2 weight table; shared by phi and <B>
        self._omega = nodes
        self._jw2 = weights * env.alpha_p * nodes * np.exp(-(nodes**2) / (2 * wb**2))
        self._coth = _coth_factor(nodes, env.temperature)

        self.tau = np.arange(0.0, tau_max + dtau / 2, dtau)
        self.phi = self.phonon_phase(self.tau)
        if self._algebraic:
            # decay check against the algebraic asymptote -alpha/tau^2; at
            # tiny nonzero T an uncaptured thermal remnant of envelope
            # ~ 8 alpha (kB T / hbar) exp(-2 pi kB T tau / hbar) may persist
            remnant = 8 * env.alpha_p * decay / (2 * np.pi) * np.exp(-decay * tau_max)
            tol = max(1e-7, remnant)
            residual = abs(self.phi[-1] + env.alpha_p / tau_max**2)
            # the remnant integrates to ~ remnant/decay in each rate integral
            # (per unit prefactor); rates in this corner carry that uncertainty
            self._tail_slack = remnant / decay if env.temperature > 0 else 0.0
        else:
            tol = 1e-8
            residual = abs(self.phi[-1])
            self._tail_slack = 0.0
        if residual > tol:
            raise QuadratureError(
                f"phi(tau_max={tau_max}) = {self.phi[-1]:.3e} has not decayed"
            )
        if abs(self.phi[0] + 2 * np.log(self.b_mean)) > 1e-10:
            raise QuadratureError("phi(0) != -2 ln<B>: inconsistent quadratures")
        self.kernel = np.expm1(self.phi)
        # half-step tables back the tau-grid convergence check in _rate
        self._tau_fine = np.arange(0.0, tau_max + dtau / 4, dtau / 2)
        self._kernel_fine = np.expm1(self.phonon_phase(self._tau_fine))

    def phonon_phase(self, tau):
        """phi(tau) = int dw j/w^2 [coth(..) cos(w tau) - i sin(w tau)], tau >= 0."""
        tau = np.atleast_1d(np.asarray(tau, dtype=float))
        if not self.env.enabled:
            return np.zeros(tau.shape, dtype=complex)
        out = np.empty(tau.shape, dtype=complex)
        for start in range(0, len(tau), 4096):  # bound the outer-product size
            arg = np.outer(tau[start:start + 4096], self._omega)
            re = np.cos(arg) @ (self._jw2 * self._coth)
            im = np.sin(arg) @ self._jw2
            out[start:start + 4096] = re - 1j * im
        return out

    def _rate(self, prefactor_uev: float, delta_uev: float, sign: int) -> float:
        """prefactor * Re int_0^inf dtau exp(sign i delta tau / hbar) (e^phi - 1)."""
        nu = sign * delta_uev / HBAR_UEV_PS  # rad/ps
        dtau_needed = np.pi / (10 * abs(nu)) if nu != 0 else np.inf
        if dtau_needed < self.dtau / 2:
            tau = np.arange(0.0, self.tau_max + dtau_needed / 2, dtau_needed)
            coarse = self._integrate(np.expm1(self.phonon_phase(tau))[:: 2], tau[::2], nu)
            fine = self._integrate(np.expm1(self.phonon_phase(tau)), tau, nu)
        else:
            coarse = self._integrate(self.kernel, self.tau, nu)
            fine = self._integrate(self._kernel_fine, self._tau_fine, nu)
        value = prefactor_uev * (fine + self._tail_correction(nu))
        if abs(prefactor_uev * (fine - coarse)) > 1e-6:
            raise QuadratureError(
                f"rate tau-integral not converged at delta={delta_uev} ueV"
            )
        if value < -(RATE_CLAMP_UEV + prefactor_uev * self._tail_slack):
            raise QuadratureError(
                f"negative phonon rate {value:.3e} ueV at delta={delta_uev} ueV"
            )
        return max(value, 0.0)

    @staticmethod
    def _integrate(kernel, tau, nu) -> float:
        return float(np.real(np.trapezoid(np.exp(1j * nu * tau) * kernel, tau)))

    def _tail_correction(self, nu: float) -> float:
        """Closed-form Re integral of the algebraic tail beyond tau_max.

        For tau > tau_max at T = 0, exp(phi) - 1 ~ phi ~ -alpha/tau^2, so
        Re int_{tau_max}^inf e^{i nu tau} (-alpha/tau^2) dtau
          = -alpha [cos(|nu| tau_max)/tau_max - |nu| (pi/2 - Si(|nu| tau_max))].
        At T > 0 the true tail is exponentially small and this is skipped.
        """
        if not self._algebraic:
            return 0.0
        a, x = abs(nu), self.tau_max
        si = sici(a * x)[0]
        return -self.env.alpha_p * (np.cos(a * x) / x - a * (np.pi / 2 - si))

    def rates(self, sys: SystemParams) -> PhononRates:
        """The four incoherent rates of the master equation, in ueV.

        Exponent signs follow the +/- superscript order: sigma+ and
        sigma+ a take e^{+i delta tau}, their partners the conjugate.
        """
        delta_lx = -sys.delta_xl
        delta_cx = sys.delta_cl - sys.delta_xl
        if not self.env.enabled:
            return PhononRates(0.0, 0.0, 0.0, 0.0, delta_lx, delta_cx)
        omega_r, g_r = sys.renormalized_couplings(self.b_mean)
        pref_sigma = omega_r**2 / (2 * HBAR_UEV_PS)
        pref_cav = 2 * g_r**2 / HBAR_UEV_PS
        return PhononRates(
            gamma_sigma_plus=self._rate(pref_sigma, delta_lx, +1),
            gamma_sigma_minus=self._rate(pref_sigma, delta_lx, -1),
            gamma_adag_sigma_minus=self._rate(pref_cav, delta_cx, -1),
            gamma_sigma_plus_a=self._rate(pref_cav, delta_cx, +1),
            delta_lx=delta_lx,
            delta_cx=delta_cx,
        )


@functools.lru_cache(maxsize=256)
def get_kernel(env: PhononEnv) -> BathKernel:
    """Cached kernel per environment (PhononEnv is hashable and immutable)."""
    return BathKernel(env)


def phonon_phase(tau, env: PhononEnv):
    """Convenience wrapper evaluating phi(tau) for a bare environment."""
    return get_kernel(env).phonon_phase(tau)


def compute_rates(sys: SystemParams, env: PhononEnv) -> PhononRates:
    """Convenience wrapper: rates for (sys, env) via the cached kernel."""
    return get_kernel(env).rates(sys)
