"""Command-line front end: figure-reproduction recipes to CSV and SVG.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .errors import (
    ConfigError,
    LiouvillianError,
    QdcavError,
    QuadratureError,
    SteadyStateError,
    StateValidationError,
)
from .observables import compute_observables
from .params import PhononEnv, SystemParams, load_config, replace
from .presets import BASE_PHONONS, BASE_SYSTEM, PRESETS
from .steady import converge_truncation
from .svgchart import bar_chart, heatmap, line_chart
from .sweeps import (
    SweepSpec,
    read_csv,
    run_coherence_contour,
    run_fock_report,
    run_rates_sweep,
    run_temperature_sweep,
    run_variance_sweep,
    write_csv,
)

_RUN_KEYS = {"preset", "out", "workers", "n_points"}


def _base_params(args):
    """Parameters from --config when given, else the paper operating point."""
    run = {}
    if args.config:
        system, phonons, run = load_config(args.config)
        unknown = set(run) - _RUN_KEYS
        if unknown:
            raise ConfigError(
                f"unknown key '{sorted(unknown)[0]}' in section 'run'",
                field=f"run.{sorted(unknown)[0]}",
            )
    else:
        system = SystemParams(
            omega=BASE_SYSTEM["omega_ueV"],
            g_c=BASE_SYSTEM["g_c_ueV"],
            delta_xl=BASE_SYSTEM["delta_xl_ueV"],
            delta_cl=BASE_SYSTEM["delta_cl_ueV"],
            kappa=BASE_SYSTEM["kappa_ueV"],
            gamma=BASE_SYSTEM["gamma_ueV"],
            gamma_prime=BASE_SYSTEM["gamma_prime_ueV"],
            n_fock=BASE_SYSTEM["n_fock"],
            input_mode=BASE_SYSTEM["input_mode"],
        )
        phonons = PhononEnv(
            alpha_p=BASE_PHONONS["alpha_p_ps2"],
            omega_b=BASE_PHONONS["omega_b_ueV"],
            temperature=BASE_PHONONS["T_K"],
            enabled=BASE_PHONONS["enabled"],
        )
    preset = args.preset or run.get("preset")
    out = args.out or run.get("out", ".")
    workers = args.workers or int(run.get("workers", 1))
    n_points = args.n_points or run.get("n_points")
    return system, phonons, preset, Path(out), workers, n_points


def _preset_of_kind(name, kinds):
    if name is None:
        raise ConfigError("a --preset is required for this command")
    if name not in PRESETS:
        raise ConfigError(f"unknown preset '{name}'")
    preset = PRESETS[name]
    if preset["kind"] not in kinds:
        raise ConfigError(
            f"preset '{name}' is of kind '{preset['kind']}', expected one of {kinds}"
        )
    return preset


def _cmd_rates(args):
    system, phonons, name, out, workers, n_points = _base_params(args)
    preset = _preset_of_kind(name, ("rates",))
    points = tuple(np.linspace(
        preset["detuning_min_ueV"], preset["detuning_max_ueV"],
        int(n_points or preset["n_points"]),
    ))
    spec = SweepSpec("detuning_for_rates", points, system, phonons)
    result = run_rates_sweep(
        spec, branch=preset["branch"],
        temperatures=preset["temperatures_K"], workers=workers,
    )
    out.mkdir(parents=True, exist_ok=True)
    write_csv(result, out / f"{name}_rates.csv")
    print(f"wrote {out / f'{name}_rates.csv'}")
    return 0


def _cmd_steady(args):
    system, phonons, _name, out, _workers, _n = _base_params(args)
    result = converge_truncation(system, phonons)
    obs = compute_observables(result.rho)
    print(f"n_fock_used = {result.n_fock_used}, residual = {result.residual:.3e}")
    print(f"<a>            = {obs.exp_a:.6g}")
    print(f"<a+a>          = {obs.exp_adag_a:.6g}")
    print(f"<a^2>          = {obs.exp_a2:.6g}")
    print(f"<sigma->       = {obs.exp_sigma_minus:.6g}")
    print(f"variance (:X^2:) = {obs.variance_normord:.6g}")
    pops = ", ".join(f"P{n}={p:.4f}" for n, p in enumerate(obs.fock_populations))
    print(f"populations: {pops}")
    return 0


def _cmd_sweep(args):
    system, phonons, name, out, workers, n_points = _base_params(args)
    preset = _preset_of_kind(name, ("variance", "variance-multi"))
    points = tuple(np.linspace(
        preset["axis_min"], preset["axis_max"], int(n_points or preset["n_points"])
    ))
    out.mkdir(parents=True, exist_ok=True)
    if preset["kind"] == "variance":
        spec = SweepSpec(
            "delta_cl_over_scale", points,
            replace(system, delta_xl=preset["delta_xl_ueV"]), phonons,
        )
        write_csv(run_variance_sweep(spec, workers=workers),
                  out / f"{name}_variance.csv")
        print(f"wrote {out / f'{name}_variance.csv'}")
    else:
        for delta_xl in preset["delta_xl_list_ueV"]:
            spec = SweepSpec(
                "delta_cl_over_scale", points,
                replace(system, delta_xl=delta_xl), phonons,
            )
            path = out / f"{name}_dxl{int(delta_xl)}.csv"
            write_csv(run_variance_sweep(spec, workers=workers), path)
            print(f"wrote {path}")
    return 0


def _cmd_contour(args):
    system, phonons, name, out, workers, n_points = _base_params(args)
    preset = _preset_of_kind(name, ("contour",))
    n_x = int(n_points or preset["n_delta_xl"])
    n_y = int(n_points or preset["n_delta_cl"])
    dxl = np.linspace(preset["delta_xl_min_ueV"], preset["delta_xl_max_ueV"], n_x)
    dcl = np.linspace(preset["delta_cl_min_ueV"], preset["delta_cl_max_ueV"], n_y)
    result = run_coherence_contour(system, phonons, dxl, dcl, workers=workers)
    out.mkdir(parents=True, exist_ok=True)
    write_csv(result, out / f"{name}_contour.csv")
    print(f"wrote {out / f'{name}_contour.csv'}")
    print(
        "argmax |<sigma->| = {max_sigma_minus_abs:.5f} at "
        "delta_xl = {argmax_delta_xl_ueV:.2f} ueV, "
        "delta_cl = {argmax_delta_cl_ueV:.2f} ueV".format(**result.meta)
    )
    return 0


def _cmd_temp_sweep(args):
    system, phonons, name, out, workers, n_points = _base_params(args)
    preset = _preset_of_kind(name, ("temperature",))
    points = tuple(np.linspace(
        preset["T_min_K"], preset["T_max_K"], int(n_points or preset["n_points"])
    ))
    spec = SweepSpec("temperature", points, system, phonons)
    result = run_temperature_sweep(spec, workers=workers)
    out.mkdir(parents=True, exist_ok=True)
    write_csv(result, out / f"{name}_temperature.csv")
    print(f"wrote {out / f'{name}_temperature.csv'}")
    crossing = result.meta["zero_crossing_K"]
    if crossing is not None:
        print(f"variance zero crossing at T = {crossing:.2f} K")
    else:
        print("no variance zero crossing in the sweep range")
    return 0


def _cmd_fock(args):
    system, phonons, name, out, _workers, _n = _base_params(args)
    preset = _preset_of_kind(name, ("fock",))
    report = run_fock_report(
        system, replace(phonons, temperature=preset["T_K"])
    )
    out.mkdir(parents=True, exist_ok=True)
    write_csv(report["populations"], out / f"{name}_populations.csv")
    write_csv(report["coherences"], out / f"{name}_coherences.csv")
    print(f"wrote {out / f'{name}_populations.csv'}")
    print(f"wrote {out / f'{name}_coherences.csv'}")
    pops = [r["population"] for r in report["populations"].rows]
    print("populations:", ", ".join(f"P{n}={p:.4f}" for n, p in enumerate(pops)))
    return 0


def _series_by_temperature(rows, column):
    temps = sorted({r["T_K"] for r in rows})
    series = []
    for t in temps:
        block = [r for r in rows if r["T_K"] == t]
        series.append((
            f"{column.replace('_ueV', '')} {t:g} K",
            [r["detuning_ueV"] for r in block],
            [r[column] for r in block],
        ))
    return series


def _cmd_plot(args):
    _system, _phonons, name, out, _workers, _n = _base_params(args)
    if name is None or name not in PRESETS:
        raise ConfigError(f"unknown preset '{name}'")
    kind = PRESETS[name]["kind"]
    written = []
    if kind == "rates":
        rows = read_csv(out / f"{name}_rates.csv").rows
        cols = (
            ("gamma_sigma_plus_ueV", "gamma_sigma_minus_ueV")
            if PRESETS[name]["branch"] == "sigma"
            else ("gamma_sigma_plus_a_ueV", "gamma_adag_sigma_minus_ueV")
        )
        series = _series_by_temperature(rows, cols[0])
        series += _series_by_temperature(rows, cols[1])
        svg = line_chart(series, "detuning (ueV)", "rate (ueV)")
        written.append(_write(out / f"{name}_rates.svg", svg))
    elif kind == "variance":
        rows = read_csv(out / f"{name}_variance.csv").rows
        xs = [r["delta_cl_scaled"] for r in rows]
        svg = line_chart(
            [("with phonons", xs, [r["variance_normord"] for r in rows]),
             ("no phonons", xs, [r["variance_normord_nophonon"] for r in rows])],
            "delta_cl / scale", "normally ordered variance",
        )
        written.append(_write(out / f"{name}_variance.svg", svg))
        svg = line_chart(
            [("<a+a>", xs, [r["n_photon"] for r in rows]),
             ("|<a>|^2", xs, [r["a_abs_sq"] for r in rows])],
            "delta_cl / scale", "photon moments",
        )
        written.append(_write(out / f"{name}_moments.svg", svg))
        svg = line_chart(
            [("Re(<a^2>-<a>^2)", xs, [r["re_anomalous"] for r in rows])],
            "delta_cl / scale", "anomalous moment",
        )
        written.append(_write(out / f"{name}_anomalous.svg", svg))
    elif kind == "variance-multi":
        var_series, coh_series = [], []
        for delta_xl in PRESETS[name]["delta_xl_list_ueV"]:
            rows = read_csv(out / f"{name}_dxl{int(delta_xl)}.csv").rows
            xs = [r["delta_cl_scaled"] for r in rows]
            label = f"dxl = {delta_xl:g} ueV"
            var_series.append((label, xs, [r["variance_normord"] for r in rows]))
            coh_series.append((label, xs, [r["sigma_minus_abs"] for r in rows]))
        written.append(_write(
            out / f"{name}_variance.svg",
            line_chart(var_series, "delta_cl / scale", "normally ordered variance"),
        ))
        written.append(_write(
            out / f"{name}_coherence.svg",
            line_chart(coh_series, "delta_cl / scale", "|<sigma->|"),
        ))
    elif kind == "contour":
        rows = read_csv(out / f"{name}_contour.csv").rows
        xs = sorted({r["delta_xl_ueV"] for r in rows})
        ys = sorted({r["delta_cl_ueV"] for r in rows})
        lookup = {(r["delta_xl_ueV"], r["delta_cl_ueV"]): r["sigma_minus_abs"]
                  for r in rows}
        grid = [[lookup[(x, y)] for y in ys] for x in xs]
        svg = heatmap(xs, ys, grid, "delta_xl (ueV)", "delta_cl (ueV)",
                      title="|<sigma->|")
        written.append(_write(out / f"{name}_contour.svg", svg))
    elif kind == "temperature":
        rows = read_csv(out / f"{name}_temperature.csv").rows
        xs = [r["T_K"] for r in rows]
        written.append(_write(
            out / f"{name}_variance.svg",
            line_chart([("variance", xs, [r["variance_normord"] for r in rows])],
                       "T (K)", "normally ordered variance"),
        ))
        written.append(_write(
            out / f"{name}_coherence.svg",
            line_chart([("|<sigma->|", xs, [r["sigma_minus_abs"] for r in rows])],
                       "T (K)", "|<sigma->|"),
        ))
    elif kind == "fock":
        pops = read_csv(out / f"{name}_populations.csv").rows
        written.append(_write(
            out / f"{name}_populations.svg",
            bar_chart([str(r["n"]) for r in pops],
                      [r["population"] for r in pops],
                      "photon number", "occupation probability"),
        ))
        coh = read_csv(out / f"{name}_coherences.csv").rows
        upper = [r for r in coh if r["m"] >= r["n"]]
        written.append(_write(
            out / f"{name}_coherences.svg",
            bar_chart([f"{r['n']}{r['m']}" for r in upper],
                      [r["abs"] for r in upper],
                      "element (n m)", "|rho_cav[n,m]|"),
        ))
    for path in written:
        print(f"wrote {path}")
    return 0


def _write(path, text):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdcav",
        description="Steady-state simulator for a driven QD-cavity system "
        "with an acoustic phonon bath.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    handlers = {
        "rates": _cmd_rates,
        "steady": _cmd_steady,
        "sweep": _cmd_sweep,
        "contour": _cmd_contour,
        "temp-sweep": _cmd_temp_sweep,
        "fock": _cmd_fock,
        "plot": _cmd_plot,
    }
    for command, handler in handlers.items():
        p = sub.add_parser(command)
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--preset", choices=sorted(PRESETS),
                       help="figure recipe to run")
        p.add_argument("--out", help="output directory (default: cwd)")
        p.add_argument("--workers", type=int, default=0,
                       help="parallel sweep workers (default 1)")
        p.add_argument("--n-points", type=int, default=0, dest="n_points",
                       help="override the preset grid resolution")
        p.set_defaults(handler=handler)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (QuadratureError, SteadyStateError, LiouvillianError,
            StateValidationError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except QdcavError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
