"""Parameter sweeps over steady-state solves, with CSV serialization.

Sweep points are independent; the map over points runs serially or on a
process pool with results collected in input order, so parallel and
serial runs produce byte-identical output.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import QdcavError
from .observables import (
    cavity_field_relation_check,
    compute_observables,
    exciton_coherence,
    fock_statistics,
)
from .params import PhononEnv, SystemParams
from .phonon import get_kernel
from .steady import converge_truncation

AXES = ("delta_cl_over_scale", "delta_xl", "temperature", "detuning_for_rates")


@dataclass(frozen=True)
class SweepSpec:
    """One sweep axis plus the frozen operating point it varies around.

    `delta_cl_over_scale` points are in units of sqrt(Omega_R^2 + delta_xl^2),
    matching the figure axes.
    """

    axis: str
    points: tuple
    system: SystemParams
    phonons: PhononEnv
    recorded: tuple = ()

    def __post_init__(self):
        if self.axis not in AXES:
            raise QdcavError(f"unknown sweep axis '{self.axis}'")
        if len(self.points) == 0:
            raise QdcavError("sweep needs at least one point")
        diffs = np.diff(np.asarray(self.points, dtype=float))
        if len(diffs) and not (np.all(diffs > 0) or np.all(diffs < 0)):
            raise QdcavError("sweep points must be strictly monotone")


@dataclass
class SweepResult:
    spec: SweepSpec | None
    columns: list
    rows: list
    meta: dict = field(default_factory=dict)


def _map_points(worker, args_list, workers: int):
    if workers <= 1:
        return [worker(args) for args in args_list]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(worker, args_list))


def delta_cl_scale(system: SystemParams, phonons: PhononEnv) -> float:
    """sqrt(Omega_R^2 + delta_xl^2) in ueV, the figure-axis unit for delta_cl."""
    omega_r, _ = system.renormalized_couplings(get_kernel(phonons).b_mean)
    return math.hypot(omega_r, system.delta_xl)


# -- rates sweep (Fig. 2) ----------------------------------------------------

def _rates_point(args):
    system, phonons = args
    rates = get_kernel(phonons).rates(system)
    row = {"detuning_ueV": None, "T_K": phonons.temperature}
    row.update(rates.as_dict())
    return row


def run_rates_sweep(
    spec: SweepSpec,
    branch: str = "sigma",
    temperatures=(4.0, 10.0),
    workers: int = 1,
) -> SweepResult:
    """All four phonon rates on a detuning grid, one block per temperature.

    branch 'sigma' sweeps the laser-exciton detuning delta_lx; 'cavity'
    sweeps the cavity-exciton detuning delta_cx (the other detuning keeps
    its operating-point value).
    """
    if spec.axis != "detuning_for_rates":
        raise QdcavError("rates sweep requires axis 'detuning_for_rates'")
    args_list = []
    for temperature in temperatures:
        env = replace(spec.phonons, temperature=temperature)
        for detuning in spec.points:
            if branch == "sigma":
                sys_point = replace(spec.system, delta_xl=-detuning)
            elif branch == "cavity":
                sys_point = replace(
                    spec.system, delta_cl=detuning + spec.system.delta_xl
                )
            else:
                raise QdcavError(f"unknown rates branch '{branch}'")
            args_list.append((sys_point, env))
    rows = _map_points(_rates_point, args_list, workers)
    i = 0
    for temperature in temperatures:
        for detuning in spec.points:
            rows[i]["detuning_ueV"] = detuning
            i += 1
    columns = [
        "detuning_ueV", "T_K",
        "gamma_sigma_plus_ueV", "gamma_sigma_minus_ueV",
        "gamma_sigma_plus_a_ueV", "gamma_adag_sigma_minus_ueV",
    ]
    return SweepResult(spec, columns, rows, meta={"branch": branch})


# -- variance sweep (Figs. 3b-d, 4) ------------------------------------------

def _variance_point(args):
    system, phonons, axis_value = args
    result_on = converge_truncation(system, phonons)
    obs = compute_observables(result_on.rho)
    env_off = replace(phonons, enabled=False)
    result_off = converge_truncation(system, env_off)
    obs_off = compute_observables(result_off.rho)
    return {
        "delta_cl_scaled": axis_value,
        "delta_cl_ueV": system.delta_cl,
        "variance_normord": obs.variance_normord,
        "variance_normord_nophonon": obs_off.variance_normord,
        "n_photon": obs.exp_adag_a,
        "a_abs_sq": abs(obs.exp_a) ** 2,
        "re_anomalous": (obs.exp_a2 - obs.exp_a**2).real,
        "sigma_minus_abs": abs(obs.exp_sigma_minus),
        "n_fock_used": result_on.n_fock_used,
        "residual": result_on.residual,
    }


def run_variance_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """Variance decomposition versus delta_cl, with and without phonons."""
    if spec.axis != "delta_cl_over_scale":
        raise QdcavError("variance sweep requires axis 'delta_cl_over_scale'")
    scale = delta_cl_scale(spec.system, spec.phonons)
    args_list = [
        (replace(spec.system, delta_cl=x * scale), spec.phonons, x)
        for x in spec.points
    ]
    rows = _map_points(_variance_point, args_list, workers)
    columns = [
        "delta_cl_scaled", "delta_cl_ueV",
        "variance_normord", "variance_normord_nophonon",
        "n_photon", "a_abs_sq", "re_anomalous", "sigma_minus_abs",
        "n_fock_used", "residual",
    ]
    meta = {"scale_ueV": scale, "delta_xl_ueV": spec.system.delta_xl}
    return SweepResult(spec, columns, rows, meta=meta)


# -- coherence contour (Fig. 3a) ----------------------------------------------

def _contour_point(args):
    system, phonons = args
    result = converge_truncation(system, phonons)
    return {
        "delta_xl_ueV": system.delta_xl,
        "delta_cl_ueV": system.delta_cl,
        "sigma_minus_abs": exciton_coherence(result.rho),
    }


def run_coherence_contour(
    system: SystemParams,
    phonons: PhononEnv,
    delta_xl_points,
    delta_cl_points,
    workers: int = 1,
) -> SweepResult:
    """|<sigma->| on a (delta_xl, delta_cl) grid, long-form, with argmax."""
    args_list = [
        (replace(system, delta_xl=dxl, delta_cl=dcl), phonons)
        for dxl in delta_xl_points
        for dcl in delta_cl_points
    ]
    rows = _map_points(_contour_point, args_list, workers)
    best = max(rows, key=lambda r: r["sigma_minus_abs"])
    meta = {
        "argmax_delta_xl_ueV": best["delta_xl_ueV"],
        "argmax_delta_cl_ueV": best["delta_cl_ueV"],
        "max_sigma_minus_abs": best["sigma_minus_abs"],
    }
    columns = ["delta_xl_ueV", "delta_cl_ueV", "sigma_minus_abs"]
    return SweepResult(None, columns, rows, meta=meta)


# -- temperature sweep (Fig. 7) -----------------------------------------------

def _temperature_point(args):
    system, phonons = args
    result = converge_truncation(system, phonons)
    obs = compute_observables(result.rho)
    return {
        "T_K": phonons.temperature,
        "variance_normord": obs.variance_normord,
        "sigma_minus_abs": abs(obs.exp_sigma_minus),
        "b_mean": get_kernel(phonons).b_mean,
        "n_fock_used": result.n_fock_used,
        "residual": result.residual,
    }


def run_temperature_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """Variance and coherence over a bath-temperature grid.

    With renormalized input mode, Omega_R and g_R stay fixed across the
    sweep (bare values are implicitly re-derived through <B>(T)). The
    squeezing cutoff is reported as the first negative-to-positive zero
    crossing of the variance, by linear interpolation.
    """
    if spec.axis != "temperature":
        raise QdcavError("temperature sweep requires axis 'temperature'")
    args_list = [
        (spec.system, replace(spec.phonons, temperature=t, enabled=True))
        for t in spec.points
    ]
    rows = _map_points(_temperature_point, args_list, workers)
    columns = [
        "T_K", "variance_normord", "sigma_minus_abs", "b_mean",
        "n_fock_used", "residual",
    ]
    meta = {"zero_crossing_K": variance_zero_crossing(rows)}
    return SweepResult(spec, columns, rows, meta=meta)


def variance_zero_crossing(rows) -> float | None:
    """First T where variance_normord crosses from negative to >= 0."""
    temps = [r["T_K"] for r in rows]
    values = [r["variance_normord"] for r in rows]
    for i in range(len(values) - 1):
        if values[i] < 0 <= values[i + 1]:
            frac = -values[i] / (values[i + 1] - values[i])
            return temps[i] + frac * (temps[i + 1] - temps[i])
    return None


# -- Fock report (Figs. 5, 6, 8) ----------------------------------------------

def run_fock_report(system: SystemParams, phonons: PhononEnv) -> dict:
    """Populations and cavity coherence matrix at a single operating point."""
    result = converge_truncation(system, phonons)
    populations, rho_cav = fock_statistics(result.rho)
    obs = compute_observables(result.rho)
    kernel = get_kernel(phonons)
    population_rows = [
        {"n": n, "population": float(p)} for n, p in enumerate(populations)
    ]
    coherence_rows = [
        {"n": n, "m": m,
         "re": float(rho_cav[n, m].real),
         "im": float(rho_cav[n, m].imag),
         "abs": float(abs(rho_cav[n, m]))}
        for n in range(rho_cav.shape[0])
        for m in range(rho_cav.shape[1])
    ]
    return {
        "populations": SweepResult(None, ["n", "population"], population_rows),
        "coherences": SweepResult(None, ["n", "m", "re", "im", "abs"],
                                  coherence_rows),
        "observables": obs,
        "relation_error": cavity_field_relation_check(
            result.rho, system, kernel.b_mean
        ),
        "n_fock_used": result.n_fock_used,
    }


# -- CSV ------------------------------------------------------------------

def _format_value(value):
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return format(float(value), ".17g")


def write_csv(result: SweepResult, path) -> None:
    """LF line endings, UTF-8, 17 significant digits (full float round trip)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(result.columns)
        for row in result.rows:
            writer.writerow([_format_value(row[c]) for c in result.columns])


def read_csv(path) -> SweepResult:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        columns = next(reader)
        rows = []
        for record in reader:
            row = {}
            for name, text in zip(columns, record):
                value = float(text)
                row[name] = int(value) if name in ("n", "m", "n_fock_used") else value
            rows.append(row)
    return SweepResult(None, columns, rows)
