"""Command-line front end: runs the showcase experiments and writes
plot-ready CSV/JSON data files.

Every command resolves its configuration from built-in defaults, then an
optional JSON config file (``--config``), then explicit flags, and writes
the fully resolved configuration next to its data files so a run can be
reproduced exactly.  Identical configuration and seed produce byte-identical
output.

Exit codes: 0 success, 2 configuration or input error, 3 numeric
verification failure (``propagate --verify``).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__, classical_bpm
from .classical_bpm import Field, GridSpec
from .propagator import build_qbpm_circuit, build_qbpm_circuit_2d, decompose_monomial
from .qft import build_iqft, build_qft
from .qstate import StateVector
from .scenarios import (
    DEFAULT_DOUBLE_SLIT,
    DEFAULT_GAUSSIAN_2D,
    DoubleSlitParams,
    GaussianParams,
    double_slit_analytic,
    double_slit_initial,
    error_analysis,
    gaussian_initial_2d,
    waist_from_counts,
    waist_from_field,
)

MAX_QUBITS_1D = 24
MAX_QUBITS_PER_AXIS = 12


class VerificationError(Exception):
    """Numeric check requested by the user failed."""


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, int, np.integer)):
        return str(int(value))
    return repr(float(value))


def _write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _write_json(path: Path, payload) -> None:
    with open(path, "w", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_grid(path_stem: Path, grid_values: np.ndarray, fmt: str) -> Path:
    if fmt == "json":
        path = path_stem.with_suffix(".json")
        _write_json(path, [[float(v) for v in row] for row in grid_values])
    else:
        path = path_stem.with_suffix(".csv")
        _write_csv(path, [f"c{i}" for i in range(grid_values.shape[1])], grid_values)
    return path


DEFAULTS: dict[str, dict] = {
    "double-slit": {
        "qubits": DEFAULT_DOUBLE_SLIT.n_qubits,
        "shots": 100_000,
        "z": [0.1, 0.2, 0.35],
        "wavelength": DEFAULT_DOUBLE_SLIT.wavelength,
        "slit_separation": DEFAULT_DOUBLE_SLIT.slit_separation,
        "slit_width": DEFAULT_DOUBLE_SLIT.slit_width,
        "domain_length": DEFAULT_DOUBLE_SLIT.domain_length,
        "seed": 1234,
        "out": "qbpm-double-slit",
        "format": "csv",
    },
    "gaussian-2d": {
        "qubits": DEFAULT_GAUSSIAN_2D.n_qubits_per_axis,
        "shots": 50_000,
        "zr": [0.0, 1.0, 2.0, 3.0],
        "wavelength": DEFAULT_GAUSSIAN_2D.wavelength,
        "waist": DEFAULT_GAUSSIAN_2D.waist,
        "domain_length": DEFAULT_GAUSSIAN_2D.domain_length,
        "sims": 100,
        "sweep_shots": [100, 1000, 10_000],
        "seed": 1234,
        "out": "qbpm-gaussian-2d",
        "format": "csv",
    },
    "propagate": {
        "input": None,
        "wavelength": 532e-9,
        "dx": 1e-5,
        "z": [0.1],
        "verify": False,
        "tolerance": 1e-9,
        "out": "qbpm-propagate",
        "format": "csv",
    },
    "error-analysis": {
        "scenario": "double-slit",
        "qubits": None,
        "domain_length": None,
        "z": [0.0, 1.0, 3.0, 8.0, 16.0],
        "zr": [0.0, 1.0, 2.0, 3.0],
        "shots": [1000, 10_000, 100_000],
        "sims": 100,
        "seed": 1234,
        "out": "qbpm-error-analysis",
        "format": "csv",
    },
    "gate-count": {
        "qubits": 15,
        "order": 2,
        "out": None,
    },
    "export-qasm": {
        "qubits": 8,
        "order": 2,
        "wavelength": 532e-9,
        "domain_length": 0.1024,
        "z": [0.1],
        "out": "qbpm-qasm",
    },
}


def _resolve(command: str, args: argparse.Namespace) -> dict:
    config = dict(DEFAULTS[command])
    if getattr(args, "config", None):
        try:
            with open(args.config) as fh:
                from_file = json.load(fh)
        except OSError as exc:
            raise ValueError(f"cannot read config file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ValueError(f"config file is not valid JSON: {exc}") from exc
        unknown = set(from_file) - set(config)
        if unknown:
            raise ValueError(f"unknown config keys for {command}: {sorted(unknown)}")
        config.update(from_file)
    for key in config:
        value = getattr(args, key, None)
        if value is not None and value is not False:
            config[key] = value
    return config


def _check_positive(config: dict, keys: tuple[str, ...]) -> None:
    for key in keys:
        if not (float(config[key]) > 0.0):
            raise ValueError(f"{key} must be positive, got {config[key]}")


def _out_dir(config: dict) -> Path:
    out = Path(config["out"])
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_config(out: Path, command: str, config: dict) -> None:
    payload = {"command": command, "version": __version__}
    payload.update(config)
    _write_json(out / "config.json", payload)


def cmd_double_slit(config: dict) -> int:
    _check_positive(config, ("wavelength", "slit_separation", "slit_width", "domain_length"))
    n = int(config["qubits"])
    if not 1 <= n <= MAX_QUBITS_1D:
        raise ValueError(f"qubits must be in 1..{MAX_QUBITS_1D}, got {n}")
    params = DoubleSlitParams(
        slit_separation=float(config["slit_separation"]),
        slit_width=float(config["slit_width"]),
        wavelength=float(config["wavelength"]),
        n_qubits=n,
        domain_length=float(config["domain_length"]),
    )
    grid = params.make_grid()
    initial = double_slit_initial(params, grid)
    state0 = StateVector.from_amplitudes(initial.values)
    order = np.argsort(grid.coordinates(), kind="stable")
    x_sorted = grid.coordinates()[order]

    out = _out_dir(config)
    _write_config(out, "double-slit", config)
    rmse_rows = []
    for index, z in enumerate(config["z"]):
        z = float(z)
        circuit = build_qbpm_circuit(n, grid, params.wavelength, z)
        state = circuit.run(state0)
        exact = state.probabilities()
        sampled = state.sample(int(config["shots"]), int(config["seed"])).frequencies(
            state.n_states
        )
        if z == 0.0:
            analytic = initial.intensity()
            analytic = analytic / analytic.sum()
        else:
            analytic = double_slit_analytic(params, grid, z)
        rows = zip(x_sorted, sampled[order], exact[order], analytic[order])
        _write_csv(
            out / f"pattern_z{index:02d}.csv",
            ["x", "p_sampled", "p_exact", "i_analytic"],
            rows,
        )
        rmse_rows.append(
            (z, classical_bpm.rmse(analytic, sampled), classical_bpm.rmse(analytic, exact))
        )
    _write_csv(out / "rmse.csv", ["z", "rmse_sampled", "rmse_exact"], rmse_rows)
    print(f"double-slit: wrote {len(config['z'])} patterns to {out}")
    return 0


def cmd_gaussian_2d(config: dict) -> int:
    _check_positive(config, ("wavelength", "waist", "domain_length"))
    n = int(config["qubits"])
    if not 1 <= n <= MAX_QUBITS_PER_AXIS:
        raise ValueError(f"qubits per axis must be in 1..{MAX_QUBITS_PER_AXIS}, got {n}")
    params = GaussianParams(
        waist=float(config["waist"]),
        wavelength=float(config["wavelength"]),
        n_qubits_per_axis=n,
        domain_length=float(config["domain_length"]),
    )
    grids = params.make_grids()
    initial = gaussian_initial_2d(params, grids)
    state0 = StateVector.from_amplitudes(initial.values)
    z0 = params.rayleigh_length
    shape = (grids[1].n_points, grids[0].n_points)

    out = _out_dir(config)
    _write_config(out, "gaussian-2d", config)
    waist_rows = []
    for index, zr in enumerate(config["zr"]):
        zr = float(zr)
        z = zr * z0
        circuit = build_qbpm_circuit_2d(n, grids[0], grids[1], params.wavelength, z)
        state = circuit.run(state0)
        counts = state.sample(int(config["shots"]), int(config["seed"]))
        sampled = counts.frequencies(state.n_states).reshape(shape)
        _write_grid(out / f"intensity_zr{index:02d}_sampled", sampled, config["format"])
        _write_grid(
            out / f"intensity_zr{index:02d}_exact",
            state.probabilities().reshape(shape),
            config["format"],
        )
        reference = classical_bpm.propagate_2d(initial, params.wavelength, z)
        w_ref = waist_from_field(reference, params.center)
        w_q = waist_from_counts(counts, grids, params.center)
        waist_rows.append((zr, z, w_q, w_ref, w_q - w_ref))
    _write_csv(out / "waist.csv", ["z_ratio", "z", "w_sampled", "w_reference", "error"], waist_rows)

    sweep_rows = []
    z_values = [float(zr) * z0 for zr in config["zr"]]
    table = error_analysis(
        params, z_values, [int(s) for s in config["sweep_shots"]], int(config["sims"]),
        int(config["seed"]),
    )
    for (z, n_shots), stats in sorted(table.items()):
        sweep_rows.append((z / z0 if z0 else 0.0, z, n_shots, stats.n_sim, stats.mu, stats.sigma))
    _write_csv(
        out / "sigma_w.csv",
        ["z_ratio", "z", "n_shots", "n_sim", "mu_error", "sigma_w"],
        sweep_rows,
    )
    print(f"gaussian-2d: wrote {len(config['zr'])} intensity grids to {out}")
    return 0


def _load_field(path: str) -> np.ndarray:
    try:
        raw = np.loadtxt(path, delimiter=",", dtype=float, ndmin=2)
    except OSError as exc:
        raise ValueError(f"cannot read input field: {exc}") from exc
    except ValueError as exc:
        raise ValueError(f"malformed input field file: {exc}") from exc
    if raw.ndim != 2 or raw.shape[1] != 2:
        raise ValueError("input field must have two columns: real,imaginary")
    values = raw[:, 0] + 1j * raw[:, 1]
    if len(values) < 2 or not classical_bpm.is_power_of_two(len(values)):
        raise ValueError(f"input field length must be a power of two >= 2, got {len(values)}")
    return values


def cmd_propagate(config: dict) -> int:
    if not config["input"]:
        raise ValueError("propagate requires --input FILE with real,imaginary columns")
    _check_positive(config, ("wavelength", "dx", "tolerance"))
    if len(config["z"]) != 1:
        raise ValueError("propagate expects exactly one --z value")
    z = float(config["z"][0])
    values = _load_field(config["input"])
    n = len(values).bit_length() - 1
    if n > MAX_QUBITS_1D:
        raise ValueError(f"input field needs {n} qubits, budget is {MAX_QUBITS_1D}")
    grid = GridSpec(len(values), float(config["dx"]))
    state0 = StateVector.from_amplitudes(values)

    quantum = build_qbpm_circuit(n, grid, float(config["wavelength"]), z).run(state0)
    classical = classical_bpm.propagate_1d(
        Field((grid,), state0.amplitudes), float(config["wavelength"]), z
    )
    deviation = float(np.max(np.abs(quantum.amplitudes - classical.values)))

    out = _out_dir(config)
    _write_config(out, "propagate", config)
    for name, data in (("quantum", quantum.amplitudes), ("classical", classical.values)):
        _write_csv(out / f"field_{name}.csv", ["real", "imaginary"], zip(data.real, data.imag))
    _write_json(
        out / "report.json",
        {
            "max_abs_deviation": deviation,
            "tolerance": float(config["tolerance"]),
            "verified": bool(config["verify"]),
            "within_tolerance": deviation < float(config["tolerance"]),
        },
    )
    print(f"propagate: max |quantum - classical| = {deviation:.3e}")
    if config["verify"] and deviation >= float(config["tolerance"]):
        raise VerificationError(
            f"deviation {deviation:.3e} exceeds tolerance {config['tolerance']:.3e}"
        )
    return 0


def cmd_error_analysis(config: dict) -> int:
    scenario_name = config["scenario"]

    def override(value, default):
        return default if value is None else value

    if scenario_name == "double-slit":
        base = DEFAULT_DOUBLE_SLIT
        params = DoubleSlitParams(
            base.slit_separation,
            base.slit_width,
            base.wavelength,
            int(override(config["qubits"], base.n_qubits)),
            float(override(config["domain_length"], base.domain_length)),
        )
        z_values = [float(z) for z in config["z"]]
    elif scenario_name == "gaussian-2d":
        base = DEFAULT_GAUSSIAN_2D
        params = GaussianParams(
            base.waist,
            base.wavelength,
            int(override(config["qubits"], base.n_qubits_per_axis)),
            float(override(config["domain_length"], base.domain_length)),
        )
        z_values = [float(zr) * params.rayleigh_length for zr in config["zr"]]
    else:
        raise ValueError(f"unknown scenario {scenario_name!r}")

    table = error_analysis(
        params,
        z_values,
        [int(s) for s in config["shots"]],
        int(config["sims"]),
        int(config["seed"]),
    )
    out = _out_dir(config)
    _write_config(out, "error-analysis", config)
    rows = [
        (scenario_name, z, n_shots, stats.n_sim, stats.mu, stats.sigma)
        for (z, n_shots), stats in sorted(table.items())
    ]
    _write_csv(
        out / "error_stats.csv", ["scenario", "z", "n_shots", "n_sim", "mu", "sigma"], rows
    )
    print(f"error-analysis: wrote {len(rows)} rows to {out}")
    return 0


_KIND_LABELS = {
    "Hadamard": "hadamard",
    "Phase": "phase",
    "ControlledPhase": "controlled-phase",
    "MultiControlledPhase": "multi-controlled-phase",
    "Swap": "swap",
}


def _fmt_kinds(counts: dict[str, int]) -> str:
    parts = [f"{_KIND_LABELS[kind]} {count}" for kind, count in counts.items() if count]
    return ", ".join(parts) if parts else "none"


def cmd_gate_count(config: dict) -> int:
    n = int(config["qubits"])
    p = int(config["order"])
    if not 1 <= n <= MAX_QUBITS_1D:
        raise ValueError(f"qubits must be in 1..{MAX_QUBITS_1D}, got {n}")
    qft_counts = build_qft(n).gate_count()
    iqft_counts = build_iqft(n).gate_count()
    propagator_total = len(decompose_monomial(n, p))
    qft_total = sum(qft_counts.values())
    lines = [
        f"qubits: {n}",
        f"order: {p}",
        f"qft: {qft_total} gates ({_fmt_kinds(qft_counts)})",
        f"propagator: {propagator_total} gates",
        f"iqft: {sum(iqft_counts.values())} gates ({_fmt_kinds(iqft_counts)})",
        f"pipeline total: {qft_total + propagator_total + sum(iqft_counts.values())}",
    ]
    closed_qft = n + n * (n - 1) // 2 + n // 2
    lines.append(
        f"closed form qft  n + n(n-1)/2 + n//2 = {closed_qft}"
        f"  [{'match' if closed_qft == qft_total else 'MISMATCH'}]"
    )
    if p == 2:
        closed_prop = n * (n + 1) // 2
        lines.append(
            f"closed form propagator  n(n+1)/2 = {closed_prop}"
            f"  [{'match' if closed_prop == propagator_total else 'MISMATCH'}]"
        )
    else:
        lines.append(f"propagator gate count grows as O(n^{p})")
    report = "\n".join(lines)
    print(report)
    if config["out"]:
        out = _out_dir(config)
        _write_config(out, "gate-count", config)
        _write_json(
            out / "gate_count.json",
            {
                "qubits": n,
                "order": p,
                "qft": qft_counts,
                "iqft": iqft_counts,
                "propagator_total": propagator_total,
                "qft_closed_form": closed_qft,
            },
        )
    return 0


def cmd_export_qasm(config: dict) -> int:
    _check_positive(config, ("wavelength", "domain_length"))
    n = int(config["qubits"])
    if not 1 <= n <= MAX_QUBITS_1D:
        raise ValueError(f"qubits must be in 1..{MAX_QUBITS_1D}, got {n}")
    if len(config["z"]) != 1:
        raise ValueError("export-qasm expects exactly one --z value")
    grid = GridSpec.from_qubits(n, float(config["domain_length"]))
    p = int(config["order"])
    from .propagator import DispersionPolynomial

    wavelength = float(config["wavelength"])
    if p == 2:
        polynomial = None
    else:
        k = 2.0 * np.pi / wavelength
        polynomial = DispersionPolynomial({p: -1.0 / (2.0 * k)})
    circuit = build_qbpm_circuit(n, grid, wavelength, float(config["z"][0]), polynomial)
    text = circuit.to_qasm_text()
    out = _out_dir(config)
    _write_config(out, "export-qasm", config)
    path = out / "qbpm_circuit.qasm"
    with open(path, "w", newline="\n") as fh:
        fh.write(text)
    print(f"export-qasm: wrote {len(circuit)} gates to {path}")
    return 0


COMMANDS = {
    "double-slit": cmd_double_slit,
    "gaussian-2d": cmd_gaussian_2d,
    "propagate": cmd_propagate,
    "error-analysis": cmd_error_analysis,
    "gate-count": cmd_gate_count,
    "export-qasm": cmd_export_qasm,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qbpm",
        description="Quantum beam propagation experiments and data export.",
    )
    parser.add_argument("--version", action="version", version=f"qbpm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="JSON config file; flags override file values")
        p.add_argument("--seed", type=int, help="random seed for sampling")
        p.add_argument("--out", help="output directory")
        p.add_argument("--format", choices=("csv", "json"), help="2D grid output format")

    p = sub.add_parser("double-slit", help="1D double-slit interference experiment")
    add_common(p)
    p.add_argument("--qubits", type=int)
    p.add_argument("--shots", type=int)
    p.add_argument("--z", type=float, action="append", help="propagation distance (repeatable)")
    p.add_argument("--wavelength", type=float)
    p.add_argument("--slit-separation", dest="slit_separation", type=float)
    p.add_argument("--slit-width", dest="slit_width", type=float)
    p.add_argument("--domain-length", dest="domain_length", type=float)

    p = sub.add_parser("gaussian-2d", help="2D Gaussian beam broadening experiment")
    add_common(p)
    p.add_argument("--qubits", type=int, help="qubits per axis")
    p.add_argument("--shots", type=int)
    p.add_argument("--zr", type=float, action="append", help="z / rayleigh_length (repeatable)")
    p.add_argument("--wavelength", type=float)
    p.add_argument("--waist", type=float)
    p.add_argument("--domain-length", dest="domain_length", type=float)
    p.add_argument("--sims", type=int, help="repetitions for the sampling-error sweep")
    p.add_argument(
        "--sweep-shots", dest="sweep_shots", type=int, action="append",
        help="shot counts for the sampling-error sweep (repeatable)",
    )

    p = sub.add_parser("propagate", help="propagate a user field on both paths and compare")
    add_common(p)
    p.add_argument("--input", help="CSV field file, columns real,imaginary")
    p.add_argument("--z", type=float, action="append")
    p.add_argument("--wavelength", type=float)
    p.add_argument("--dx", type=float, help="grid spacing in meters")
    p.add_argument("--verify", action="store_true", help="exit 3 if paths deviate")
    p.add_argument("--tolerance", type=float, help="verification threshold")

    p = sub.add_parser("error-analysis", help="mean/standard error over repeated simulations")
    add_common(p)
    p.add_argument("--scenario", choices=("double-slit", "gaussian-2d"))
    p.add_argument("--qubits", type=int)
    p.add_argument("--domain-length", dest="domain_length", type=float)
    p.add_argument("--z", type=float, action="append", help="double-slit distances (repeatable)")
    p.add_argument("--zr", type=float, action="append", help="gaussian z ratios (repeatable)")
    p.add_argument("--shots", type=int, action="append", help="shot counts (repeatable)")
    p.add_argument("--sims", type=int)

    p = sub.add_parser("gate-count", help="exact gate counts and closed-form checks")
    add_common(p)
    p.add_argument("--qubits", type=int)
    p.add_argument("--order", type=int, help="polynomial order of the transfer phase")

    p = sub.add_parser("export-qasm", help="write the propagation circuit as OpenQASM 2.0")
    add_common(p)
    p.add_argument("--qubits", type=int)
    p.add_argument("--order", type=int)
    p.add_argument("--wavelength", type=float)
    p.add_argument("--domain-length", dest="domain_length", type=float)
    p.add_argument("--z", type=float, action="append")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _resolve(args.command, args)
        return COMMANDS[args.command](config)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
