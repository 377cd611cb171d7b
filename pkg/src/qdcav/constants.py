"""Physical constants and the energy/angular-frequency unit bridge.

Internal unit system: energies in ueV, times in ps, angular frequencies
in rad/ps, temperatures in K. These constants are fixed, never configurable.
"""

HBAR_UEV_PS: float = 658.2119569  # reduced Planck constant, ueV * ps
KB_UEV_PER_K: float = 86.17333262  # Boltzmann constant, ueV / K


def energy_to_angular_frequency(energy_uev):
    """Convert an energy in ueV to an angular frequency in rad/ps."""
    return energy_uev / HBAR_UEV_PS


def angular_frequency_to_energy(omega_radps):
    """Exact inverse of :func:`energy_to_angular_frequency`."""
    return omega_radps * HBAR_UEV_PS
