"""Figure-reproduction recipes as pure data.

Every preset pins the operating point of the figure it reproduces; adding
a preset touches no solver code. The common operating point is the
renormalized pair (Omega_R, g_R) = (50, 75) ueV with kappa = 0.9 Omega_R
and delta_xl = -1.5 Omega_R.
"""

import math

DELTA_SCALE_UEV = math.sqrt(50.0**2 + 75.0**2)  # sqrt(Omega_R^2 + delta_xl^2)

BASE_SYSTEM = {
    "omega_ueV": 50.0,
    "g_c_ueV": 75.0,
    "delta_xl_ueV": -75.0,
    "delta_cl_ueV": -0.3 * DELTA_SCALE_UEV,
    "kappa_ueV": 45.0,
    "gamma_ueV": 2.0,
    "gamma_prime_ueV": 0.5,
    "n_fock": 5,
    "input_mode": "renormalized",
}

BASE_PHONONS = {
    "alpha_p_ps2": 0.06,
    "omega_b_ueV": 1000.0,
    "T_K": 4.0,
    "enabled": True,
}

PRESETS = {
    "fig2a": {
        "kind": "rates",
        "branch": "sigma",
        "detuning_min_ueV": -2000.0,
        "detuning_max_ueV": 2000.0,
        "n_points": 121,
        "temperatures_K": (4.0, 10.0),
    },
    "fig2b": {
        "kind": "rates",
        "branch": "cavity",
        "detuning_min_ueV": -2000.0,
        "detuning_max_ueV": 2000.0,
        "n_points": 121,
        "temperatures_K": (4.0, 10.0),
    },
    "fig3a": {
        "kind": "contour",
        "delta_xl_min_ueV": -125.0,
        "delta_xl_max_ueV": -12.5,
        "delta_cl_min_ueV": -125.0,
        "delta_cl_max_ueV": 0.0,
        "n_delta_xl": 61,
        "n_delta_cl": 61,
    },
    "fig3b": {
        "kind": "variance",
        "delta_xl_ueV": -75.0,
        "axis_min": -1.2,
        "axis_max": 0.2,
        "n_points": 121,
    },
    "fig4": {
        "kind": "variance-multi",
        "delta_xl_list_ueV": (-50.0, -75.0, -100.0),
        "axis_min": -1.2,
        "axis_max": 0.2,
        "n_points": 121,
    },
    "fig5": {"kind": "fock", "T_K": 4.0},
    "fig7": {
        "kind": "temperature",
        "T_min_K": 0.0,
        "T_max_K": 20.0,
        "n_points": 81,
    },
    "fig8": {"kind": "fock", "T_K": 9.0},
}
