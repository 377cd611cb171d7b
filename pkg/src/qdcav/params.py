"""Validated simulation parameters and strict JSON config loading.

All parameter sets are immutable after construction and safe to share
across parallel workers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

from .errors import ConfigError, ParameterError

__all__ = ["SystemParams", "PhononEnv", "load_config", "replace"]

_INPUT_MODES = ("bare", "renormalized")


@dataclass(frozen=True)
class SystemParams:
    """Drive, coupling, detuning and decay parameters of the QD-cavity system.

    All energies in ueV. In "renormalized" input mode `omega` and `g_c`
    are interpreted as the phonon-renormalized values Omega_R and g_R;
    bare values are recovered by dividing by the mean displacement <B>.
    """

    omega: float
    g_c: float
    delta_xl: float
    delta_cl: float
    kappa: float
    gamma: float = 2.0
    gamma_prime: float = 0.5
    n_fock: int = 5
    input_mode: str = "bare"

    def __post_init__(self):
        for name in ("omega", "g_c", "gamma", "gamma_prime", "kappa"):
            if getattr(self, name) < 0:
                raise ParameterError(f"{name} must be >= 0", field=name)
        if self.n_fock < 2:
            raise ParameterError("n_fock must be >= 2", field="n_fock")
        if self.input_mode not in _INPUT_MODES:
            raise ParameterError(
                f"input_mode must be one of {_INPUT_MODES}", field="input_mode"
            )

    def bare_couplings(self, b_mean: float) -> tuple[float, float]:
        """Bare (Omega, g_c) in ueV given the mean displacement <B>."""
        if self.input_mode == "renormalized":
            return self.omega / b_mean, self.g_c / b_mean
        return self.omega, self.g_c

    def renormalized_couplings(self, b_mean: float) -> tuple[float, float]:
        """(Omega_R, g_R) = <B> * (Omega, g_c); these enter the Hamiltonian."""
        if self.input_mode == "renormalized":
            return self.omega, self.g_c
        return b_mean * self.omega, b_mean * self.g_c


@dataclass(frozen=True)
class PhononEnv:
    """Acoustic phonon bath: spectral-density parameters and temperature.

    `alpha_p` is the effective coupling strength entering j(w) directly
    (ps^2), calibrated so that <B> = 0.91 at 4 K with the default cutoff.
    `enabled = False` forces <B> = 1 and all phonon rates to zero.
    """

    alpha_p: float = 0.06
    omega_b: float = 1000.0  # cutoff, ueV
    temperature: float = 4.0  # K
    enabled: bool = True

    def __post_init__(self):
        if self.alpha_p < 0:
            raise ParameterError("alpha_p must be >= 0", field="alpha_p")
        if self.omega_b <= 0:
            raise ParameterError("omega_b must be > 0", field="omega_b")
        if self.temperature < 0:
            raise ParameterError("temperature must be >= 0", field="temperature")


# JSON schema: key -> (dataclass field, default); _REQUIRED marks mandatory keys.
_REQUIRED = object()

_SYSTEM_SCHEMA = {
    "omega_ueV": ("omega", _REQUIRED),
    "g_c_ueV": ("g_c", _REQUIRED),
    "delta_xl_ueV": ("delta_xl", _REQUIRED),
    "delta_cl_ueV": ("delta_cl", _REQUIRED),
    "kappa_ueV": ("kappa", _REQUIRED),
    "gamma_ueV": ("gamma", 2.0),
    "gamma_prime_ueV": ("gamma_prime", 0.5),
    "n_fock": ("n_fock", 5),
    "input_mode": ("input_mode", "bare"),
}

_PHONON_SCHEMA = {
    "alpha_p_ps2": ("alpha_p", 0.06),
    "omega_b_ueV": ("omega_b", 1000.0),
    "T_K": ("temperature", 4.0),
    "enabled": ("enabled", True),
}


def _parse_section(raw: dict, schema: dict, section: str) -> dict:
    if not isinstance(raw, dict):
        raise ConfigError(f"section '{section}' must be an object", field=section)
    unknown = set(raw) - set(schema)
    if unknown:
        key = sorted(unknown)[0]
        raise ConfigError(
            f"unknown key '{key}' in section '{section}'", field=f"{section}.{key}"
        )
    out = {}
    for key, (field, default) in schema.items():
        if key in raw:
            out[field] = raw[key]
        elif default is _REQUIRED:
            raise ConfigError(
                f"missing required key '{key}' in section '{section}'",
                field=f"{section}.{key}",
            )
        else:
            out[field] = default
    return out


def load_config(path) -> tuple[SystemParams, PhononEnv, dict]:
    """Load and validate a JSON config; returns (system, phonons, run directives).

    The schema is closed-world: any unknown key is an error so that typos
    in physics parameters never pass silently.
    """
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        line = text.splitlines()[exc.lineno - 1] if text.splitlines() else ""
        raise ConfigError(
            f"{path}: JSON parse error at line {exc.lineno}: {exc.msg}\n  {line}"
        ) from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be an object")
    unknown = set(raw) - {"system", "phonons", "run"}
    if unknown:
        raise ConfigError(f"unknown top-level section '{sorted(unknown)[0]}'")
    if "system" not in raw:
        raise ConfigError("missing required section 'system'", field="system")
    system = SystemParams(**_parse_section(raw["system"], _SYSTEM_SCHEMA, "system"))
    phonons = PhononEnv(**_parse_section(raw.get("phonons", {}), _PHONON_SCHEMA, "phonons"))
    run = raw.get("run", {})
    if not isinstance(run, dict):
        raise ConfigError("section 'run' must be an object", field="run")
    return system, phonons, run
