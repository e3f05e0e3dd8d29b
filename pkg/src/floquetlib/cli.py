"""Configuration-driven command line: wire models to solvers, write files.

Subcommands:

    floquet run <config.json>                 execute one task
    floquet sweep <config.json> --param KEY --values V1,V2,...
    floquet validate <config.json>            schema check only

A config is a JSON object:

    {
      "model": "chain1d" | "dirac" | "honeycomb" | "custom",
      "drive": {"omega": 8.0, "amplitude": 1.0, "polarization": "linear"},
      "task": "spectrum" | "hfe" | "chern" | "greens" | "ness",
      "output": "out_dir",
      "numerics": {"n_max": ..., "M": ..., "n_steps": ..., "Nk": ...,
                   "nu_points": ..., "n_k": ..., "k_min": ..., "k_max": ...,
                   "tol": ..., "max_periods": ..., "steps_per_period": ...},
      "bath": {"gamma": 0.05, "beta": 20.0},          # greens only
      "lindblad": {"gamma": 0.4, "k": [0.0, 0.0]},    # ness only
      "custom_modes": [[n, re_matrix, im_matrix], ...],  # custom only
      "write_curvature": true,                        # chern, optional
      "summary_metric": "J_eff"                       # sweep, optional
    }

All numerics have defaults; energies are in units of the hopping (J = 1).
Exit codes: 0 success, 2 config/schema error, 3 solver error. Outputs are
deterministic for a fixed config and written atomically (temp + rename),
with a manifest.json recording the config hash, version and wall time.
"""

import argparse
import concurrent.futures
import copy
import hashlib
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from . import highfreq, models, open_system, sambe, topology

MODELS = ("chain1d", "dirac", "honeycomb", "custom")
TASKS = ("spectrum", "hfe", "chern", "greens", "ness")

NUMERIC_DEFAULTS = {
    "n_steps": 4096,
    "Nk": 24,
    "nu_points": 401,
    "n_k": 64,
    "k_min": -math.pi,
    "k_max": math.pi,
    "tol": 1e-9,
    "max_periods": 2000,
    "steps_per_period": 256,
}


class ConfigError(ValueError):
    """Invalid configuration; message names the offending key."""


@dataclass
class RunConfig:
    model: str
    task: str
    drive: models.DriveProtocol
    output: str
    numerics: dict = field(default_factory=dict)
    bath: dict = field(default_factory=dict)
    lindblad: dict = field(default_factory=dict)
    custom_triples: list = field(default_factory=list)
    write_curvature: bool = False
    summary_metric: str = ""
    raw: dict = field(default_factory=dict)

    def numeric(self, key):
        return self.numerics.get(key, NUMERIC_DEFAULTS.get(key))

    @property
    def n_max(self):
        got = self.numerics.get("n_max")
        return int(got) if got is not None else models.suggested_n_max(self.drive.amplitude)

    @property
    def m_cut(self):
        got = self.numerics.get("M")
        return int(got) if got is not None else self.n_max + 6


def _require(cond, key, message):
    if not cond:
        raise ConfigError(f"{key}: {message}")


def _is_number(value):
    # bool is an int subclass; JSON true/false must not pass as numbers
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def validate_config(raw):
    """Parse a config dict into a RunConfig, raising ConfigError on violations."""
    _require(isinstance(raw, dict), "<root>", "config must be a JSON object")
    model = raw.get("model")
    _require(model in MODELS, "model", f"must be one of {MODELS}, got {model!r}")
    task = raw.get("task")
    _require(task in TASKS, "task", f"must be one of {TASKS}, got {task!r}")
    drive_raw = raw.get("drive")
    _require(isinstance(drive_raw, dict), "drive", "must be an object")
    omega = drive_raw.get("omega")
    _require(_is_number(omega) and omega > 0, "drive.omega",
             f"must be a positive number, got {omega!r}")
    amplitude = drive_raw.get("amplitude", 0.0)
    _require(_is_number(amplitude) and amplitude >= 0, "drive.amplitude",
             f"must be a number >= 0, got {amplitude!r}")
    default_pol = "linear" if model == "chain1d" else "circular"
    polarization = drive_raw.get("polarization", default_pol)
    _require(polarization in ("linear", "circular"), "drive.polarization",
             f"must be 'linear' or 'circular', got {polarization!r}")
    if model in ("dirac", "honeycomb"):
        _require(polarization == "circular", "drive.polarization",
                 f"model {model!r} is defined for circular polarization")
    output = raw.get("output")
    _require(isinstance(output, str) and output, "output", "must be a non-empty path")

    numerics = raw.get("numerics", {})
    _require(isinstance(numerics, dict), "numerics", "must be an object")
    for key, value in numerics.items():
        _require(key in NUMERIC_DEFAULTS or key in ("n_max", "M"), f"numerics.{key}",
                 "unknown numerics key")
        _require(_is_number(value), f"numerics.{key}", "must be a number")
        if key not in ("k_min", "k_max"):
            _require(value > 0, f"numerics.{key}", f"must be positive, got {value!r}")

    bath = raw.get("bath", {})
    if task == "greens":
        _require(isinstance(bath, dict), "bath", "must be an object")
        gamma = bath.get("gamma")
        _require(_is_number(gamma) and gamma > 0, "bath.gamma",
                 "greens task needs a positive bath.gamma")
        beta = bath.get("beta", "inf")
        if beta != "inf":
            _require(_is_number(beta) and beta > 0, "bath.beta",
                     "must be positive or the string 'inf'")

    lindblad = raw.get("lindblad", {})
    if task == "ness":
        _require(isinstance(lindblad, dict), "lindblad", "must be an object")
        gamma = lindblad.get("gamma")
        _require(_is_number(gamma) and gamma > 0, "lindblad.gamma",
                 "ness task needs a positive lindblad.gamma")
        _require(model != "chain1d", "model",
                 "ness task needs a two-level model (dirac, honeycomb or custom)")
        kpt = lindblad.get("k", [0.0, 0.0])
        _require(isinstance(kpt, list) and len(kpt) == 2
                 and all(_is_number(v) for v in kpt), "lindblad.k",
                 "must be a [kx, ky] pair")

    triples = raw.get("custom_modes", [])
    if model == "custom":
        _require(isinstance(triples, list) and triples, "custom_modes",
                 "custom model needs a non-empty list of (n, re, im) triples")

    if task == "chern":
        _require(model in ("honeycomb", "custom"), "model",
                 "chern task needs a model on a compact zone (honeycomb or custom)")

    metric = raw.get("summary_metric", "")
    _require(isinstance(metric, str), "summary_metric", "must be a string")

    return RunConfig(
        model=model, task=task,
        drive=models.DriveProtocol(omega=float(omega), amplitude=float(amplitude),
                                   polarization=polarization),
        output=output,
        numerics=dict(numerics),
        bath=dict(bath),
        lindblad=dict(lindblad),
        custom_triples=list(triples),
        write_curvature=bool(raw.get("write_curvature", False)),
        summary_metric=metric,
        raw=copy.deepcopy(raw),
    )


# ---------------------------------------------------------------------------
# model wiring

def _mode_builder(cfg: RunConfig):
    """Per-momentum FourierModeSet builder for the configured model."""
    drive, n_max = cfg.drive, cfg.n_max
    if cfg.model == "chain1d":
        return lambda kx, ky=0.0: models.fourier_modes(
            lambda t: models.sample_chain_1d(kx, 1.0, drive, t), drive.omega, n_max)
    if cfg.model == "dirac":
        return lambda kx, ky=0.0: models.dirac_modes(kx, ky, drive)
    if cfg.model == "honeycomb":
        return lambda kx, ky=0.0: models.honeycomb_modes(kx, ky, 1.0, drive, n_max)
    mode_set = models.custom_modes(cfg.drive.omega, cfg.custom_triples)
    return lambda kx=0.0, ky=0.0: mode_set


def _sampler(cfg: RunConfig, kx, ky=0.0):
    drive = cfg.drive
    if cfg.model == "chain1d":
        return lambda t: models.sample_chain_1d(kx, 1.0, drive, t)
    if cfg.model == "dirac":
        return lambda t: models.sample_dirac(kx, ky, drive, t)
    if cfg.model == "honeycomb":
        return lambda t: models.sample_honeycomb(kx, ky, 1.0, drive, t)
    mode_set = models.custom_modes(cfg.drive.omega, cfg.custom_triples)
    return mode_set.sample


def _k_grid(cfg: RunConfig):
    n_k = int(cfg.numeric("n_k"))
    return np.linspace(cfg.numeric("k_min"), cfg.numeric("k_max"), n_k, endpoint=False)


# ---------------------------------------------------------------------------
# output helpers

def _fmt(x):
    return f"{x:.12g}"


def _write_atomic(path, text):
    tmp = path + ".tmp"
    with open(tmp, "w") as handle:
        handle.write(text)
    os.replace(tmp, path)


def _write_csv(path, header, rows):
    lines = [header]
    lines.extend(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row)
                 for row in rows)
    _write_atomic(path, "\n".join(lines) + "\n")


def _write_json(path, payload):
    _write_atomic(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def config_hash(raw):
    canonical = json.dumps(raw, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


# ---------------------------------------------------------------------------
# tasks

def task_spectrum(cfg: RunConfig, outdir):
    builder = _mode_builder(cfg)
    rows = []
    for k in _k_grid(cfg):
        sol = sambe.select_physical_band(
            sambe.quasienergies(sambe.build_floquet_matrix(builder(k), cfg.m_cut)))
        centers = sambe.replica_centers(sol)
        w0 = sol.weight0()
        for branch in range(sol.dim):
            rows.append((float(k), branch, int(centers[branch]),
                         float(sol.quasienergies[branch]), float(w0[branch])))
    _write_csv(os.path.join(outdir, "spectrum.csv"),
               "k,branch,n_replica,quasienergy,weight0", rows)
    band = np.array([r[3] for r in rows])
    return {"summary_metric": float(band.max() - band.min())}


def task_hfe(cfg: RunConfig, outdir):
    amplitude, omega = cfg.drive.amplitude, cfg.drive.omega
    pars = highfreq.haldane_effective(1.0, amplitude, omega)
    builder = _mode_builder(cfg)
    report = highfreq.van_vleck_hf(builder(0.0, 0.0))
    payload = {
        "J_eff": float(pars.j_eff),
        "K_eff": float(pars.k_eff),
        "dirac_gap": float(highfreq.dirac_gap(amplitude, omega)),
        "correction_norm": report.correction_norm,
    }
    _write_json(os.path.join(outdir, "hfe.json"), payload)
    metric = cfg.summary_metric or "J_eff"
    if metric not in payload:
        raise ConfigError(f"summary_metric: {metric!r} not in hfe report {sorted(payload)}")
    return {"summary_metric": payload[metric], **payload}


def task_chern(cfg: RunConfig, outdir):
    builder = _mode_builder(cfg)
    solver = topology.floquet_band_solver(lambda kx, ky: builder(kx, ky), cfg.m_cut)
    grid = topology.band_grid(solver, int(cfg.numeric("Nk")))
    reports = []
    for band in range(grid.n_bands):
        fieldvals = topology.berry_curvature_grid(grid, band)
        number = topology.chern_number(fieldvals)
        residual = abs(fieldvals.total / (2.0 * np.pi) - number)
        reports.append({"band": band, "chern": number,
                        "residual": float(residual), "min_gap": fieldvals.min_gap})
        if cfg.write_curvature:
            nk = grid.nk
            rows = []
            for i in range(nk):
                for j in range(nk):
                    kvec = ((i + 0.5) / nk) * grid.b1 + ((j + 0.5) / nk) * grid.b2
                    rows.append((float(kvec[0]), float(kvec[1]),
                                 float(fieldvals.flux[i, j])))
            _write_csv(os.path.join(outdir, f"curvature_band{band}.csv"),
                       "kx,ky,F", rows)
    _write_json(os.path.join(outdir, "chern.json"), {"bands": reports})
    return {"summary_metric": float(reports[0]["chern"]), "bands": reports}


def task_greens(cfg: RunConfig, outdir):
    beta = cfg.bath.get("beta", "inf")
    bath = open_system.BathSpec(gamma=float(cfg.bath["gamma"]),
                                beta=math.inf if beta == "inf" else float(beta))
    builder = _mode_builder(cfg)
    omega = cfg.drive.omega
    nu = np.linspace(-0.5 * omega, 0.5 * omega, int(cfg.numeric("nu_points")),
                     endpoint=False)
    rows = []
    peak = 0.0
    for k in _k_grid(cfg):
        grid = open_system.floquet_greens(builder(k), bath, cfg.m_cut, nu)
        freqs, spec = open_system.spectral_function(grid)
        _, occ = open_system.occupation_function(grid)
        peak = max(peak, float(spec.max()))
        rows.extend((float(f), float(k), float(a), float(n))
                    for f, a, n in zip(freqs, spec, occ))
    _write_csv(os.path.join(outdir, "greens.csv"), "nu_unfolded,k,A,N", rows)
    return {"summary_metric": peak}


def task_ness(cfg: RunConfig, outdir):
    kx, ky = cfg.lindblad.get("k", [0.0, 0.0])
    sampler = _sampler(cfg, float(kx), float(ky))
    dim = np.asarray(sampler(0.0)).shape[0]
    if dim != 2:
        raise ConfigError("lindblad.k: ness task needs a two-level Hamiltonian at this k")
    gamma = float(cfg.lindblad["gamma"])
    lowering = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    system = open_system.LindbladSystem(hamiltonian=sampler,
                                        jumps=[np.sqrt(gamma) * lowering])
    ness = open_system.find_ness(
        system, cfg.drive.omega,
        tol=float(cfg.numeric("tol")),
        max_periods=int(cfg.numeric("max_periods")),
        steps_per_period=int(cfg.numeric("steps_per_period")))
    header = ["t"]
    for i in range(2):
        for j in range(2):
            header.extend((f"rho_re_{i}{j}", f"rho_im_{i}{j}"))
    rows = []
    for t, rho in zip(ness.times, ness.states):
        row = [float(t)]
        for i in range(2):
            for j in range(2):
                row.extend((float(rho[i, j].real), float(rho[i, j].imag)))
        rows.append(tuple(row))
    _write_csv(os.path.join(outdir, "ness.csv"), ",".join(header), rows)
    purity = float(np.real(np.trace(ness.rho0 @ ness.rho0)))
    return {"summary_metric": purity, "residual": ness.residual, "periods": ness.periods}


TASK_RUNNERS = {
    "spectrum": task_spectrum,
    "hfe": task_hfe,
    "chern": task_chern,
    "greens": task_greens,
    "ness": task_ness,
}


def run_config(cfg: RunConfig):
    """Execute one validated config; returns the task summary dict."""
    outdir = cfg.output
    os.makedirs(outdir, exist_ok=True)
    started = time.monotonic()
    summary = TASK_RUNNERS[cfg.task](cfg, outdir)
    manifest = {
        "config_sha256": config_hash(cfg.raw),
        "version": __version__,
        "task": cfg.task,
        "wall_time_s": time.monotonic() - started,
    }
    _write_json(os.path.join(outdir, "manifest.json"), manifest)
    return summary


# ---------------------------------------------------------------------------
# sweep

def _set_by_path(raw, dotted, value):
    keys = dotted.split(".")
    node = raw
    for key in keys[:-1]:
        node = node.setdefault(key, {})
        if not isinstance(node, dict):
            raise ConfigError(f"{dotted}: path runs through a non-object")
    node[keys[-1]] = value


def run_sweep(raw, parameter, values, workers=None):
    """One run per parameter value; aggregate CSV plus per-value directories.

    Individual failures do not stop the sweep; they are recorded in the
    manifest and skipped in the aggregate.
    """
    if not values:
        raise ConfigError("--values: at least one value required")
    base = validate_config(raw)  # fail fast before spawning work
    root = base.output
    os.makedirs(root, exist_ok=True)
    leaf = parameter.split(".")[-1]

    def one(value):
        raw_v = copy.deepcopy(raw)
        _set_by_path(raw_v, parameter, value)
        raw_v["output"] = os.path.join(root, f"{leaf}_{value:.10g}")
        cfg = validate_config(raw_v)
        return run_config(cfg)

    if workers is None:
        workers = int(os.environ.get("FLOQUET_WORKERS", "4"))
    workers = max(1, min(workers, len(values)))
    results, failures = {}, {}
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        futures = {pool.submit(one, v): v for v in values}
        for fut in concurrent.futures.as_completed(futures):
            value = futures[fut]
            try:
                results[value] = fut.result()
            except Exception as exc:  # noqa: BLE001 - recorded, sweep continues
                failures[value] = str(exc)
    rows = [(float(v), float(results[v]["summary_metric"]))
            for v in values if v in results]
    _write_csv(os.path.join(root, "sweep.csv"), "value,summary_metric", rows)
    manifest = {
        "config_sha256": config_hash(raw),
        "version": __version__,
        "parameter": parameter,
        "values": list(values),
        "failures": {str(k): v for k, v in failures.items()},
    }
    _write_json(os.path.join(root, "manifest.json"), manifest)
    return results, failures


# ---------------------------------------------------------------------------
# entry point

def _load_raw(path):
    try:
        with open(path) as handle:
            return json.load(handle)
    except FileNotFoundError:
        raise ConfigError(f"config: file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config: invalid JSON: {exc}") from None


def _apply_overrides(raw, overrides):
    for item in overrides or []:
        if "=" not in item:
            raise ConfigError(f"--set: expected KEY=VALUE, got {item!r}")
        key, text = item.split("=", 1)
        try:
            value = json.loads(text)
        except json.JSONDecodeError:
            value = text
        _set_by_path(raw, key, value)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="floquet",
        description="Quasienergy spectra and steady states of driven systems")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute one task from a JSON config")
    p_run.add_argument("config")
    p_run.add_argument("--output", help="override the output directory")
    p_run.add_argument("--set", action="append", dest="overrides", metavar="KEY=VALUE",
                       help="override a config key (dotted path, JSON value)")

    p_sweep = sub.add_parser("sweep", help="run once per value of a config key")
    p_sweep.add_argument("config")
    p_sweep.add_argument("--param", required=True, help="dotted config key to sweep")
    p_sweep.add_argument("--values", required=True,
                         help="comma-separated numeric values")
    p_sweep.add_argument("--set", action="append", dest="overrides", metavar="KEY=VALUE")

    p_val = sub.add_parser("validate", help="check a config against the schema")
    p_val.add_argument("config")

    args = parser.parse_args(argv)
    try:
        raw = _load_raw(args.config)
        _apply_overrides(raw, getattr(args, "overrides", None))
        if getattr(args, "output", None):
            raw["output"] = args.output
        if args.command == "validate":
            validate_config(raw)
            print("config OK")
            return 0
        if args.command == "run":
            cfg = validate_config(raw)
        elif args.command == "sweep":
            try:
                values = [float(v) for v in args.values.split(",") if v.strip()]
            except ValueError:
                raise ConfigError(f"--values: not numeric: {args.values!r}") from None
            if not values:
                raise ConfigError("--values: at least one value required")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    try:
        if args.command == "run":
            summary = run_config(cfg)
            print(json.dumps(summary, sort_keys=True, default=float))
            return 0
        results, failures = run_sweep(raw, args.param, values)
        print(json.dumps({"completed": len(results), "failed": len(failures)}))
        return 0
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - solver failure surface
        print(f"solver error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
