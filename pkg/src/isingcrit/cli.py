"""Command-line interface: parameter sweeps emitted as CSV or JSON.

Commands: spectrum, echo-scan, lz, protocol, phase-diagram. Output is fully
deterministic (floats printed at 12 significant digits, config embedded in
every file), so identical configs produce byte-identical files. Exit codes:
0 success, 1 configuration error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass

import numpy as np

from . import dynamics
from .criticality import (
    EXACT_GROUND,
    INITIAL_STATE_SOURCES,
    VALUE_KINDS,
    default_b_z_grid,
    echo_scan,
    find_minima,
)
from .hamiltonian import ChainParams, closed_form_energy, hamiltonian_diagonal, phase_labels
from .network import preparation_network, prepared_state, run_protocol
from .perturbation import LandauZenerParams, lz_echo_gaussian, lz_gap, lz_matrix_element_sq
from .states import fidelity

SCHEMA_VERSION = 1


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    n: int
    bz_min: float
    bz_max: float
    bz_step: float
    bx: float
    epsilon: float
    tau: float
    value_kind: str
    initial_state: str
    znu: float
    delta_min: float
    readout_qubit: int
    output_format: str
    out: str | None

    def grid(self) -> np.ndarray:
        if self.bz_step <= 0:
            raise ConfigError("--bz-step must be positive")
        if self.bz_min >= self.bz_max:
            raise ConfigError("--bz-min must be below --bz-max")
        return default_b_z_grid(self.bz_min, self.bz_max, self.bz_step)


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _round12(x: float) -> float:
    return float(f"{x:.12g}")


def _emit(config: RunConfig, columns, rows, minima) -> str:
    if config.output_format == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "config": {k: v for k, v in asdict(config).items()},
            "columns": list(columns),
            "rows": [[_round12(v) for v in row] for row in rows],
            "minima": [[_round12(b), _round12(v)] for b, v in minima],
        }
        return json.dumps(payload, indent=2) + "\n"
    lines = [f"# schema_version = {SCHEMA_VERSION}"]
    for k, v in asdict(config).items():
        lines.append(f"# {k} = {_fmt(v)}")
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    if minima:
        lines.append("# minima: b_z,value")
        for b, v in minima:
            lines.append(f"# minimum,{_fmt(b)},{_fmt(v)}")
    return "\n".join(lines) + "\n"


def _cmd_spectrum(config: RunConfig):
    grid = config.grid()
    with_closed = config.bx == 0.0 and (config.n >= 4 or config.n == 3)
    columns = ["b_z", "e0", "e1", "gap"] + (["closed_form_energy"] if with_closed else [])
    rows = []
    for bz in grid:
        params = ChainParams(config.n, bz, config.bx)
        w = dynamics.spectral_for(params).eigenvalues
        row = [bz, w[0], w[1], w[1] - w[0]]
        if with_closed:
            row.append(closed_form_energy(params))
        rows.append(row)
    return columns, rows, []


def _cmd_echo_scan(config: RunConfig):
    scan = echo_scan(
        config.n,
        config.bx,
        config.epsilon,
        config.tau,
        config.grid(),
        value_kind=config.value_kind,
        initial_state_source=config.initial_state,
        readout_qubit=config.readout_qubit,
    )
    rows = [[b, v] for b, v in scan.grid]
    return ["b_z", "value"], rows, list(scan.minima)


def _cmd_lz(config: RunConfig):
    if config.delta_min <= 0:
        raise ConfigError("--delta-min must be positive")
    grid = config.grid()
    columns = ["lambda", "gap", "matrix_element_sq", "gaussian_echo", "two_level_echo"]
    rows = []
    for lam in grid:
        p = LandauZenerParams(config.delta_min, lam, config.znu, config.epsilon, config.tau)
        gap = lz_gap(p)
        me = lz_matrix_element_sq(p)
        two_level = 1.0 - 2.0 * (me / gap**2) * config.epsilon**2 * (1.0 - np.cos(gap * config.tau))
        rows.append([lam, gap, me, lz_echo_gaussian(p), two_level])
    return columns, rows, []


def _cmd_protocol(config: RunConfig):
    if config.n not in (3, 4):
        raise ConfigError("protocol networks exist for --n 3 and --n 4 only")
    grid = config.grid()
    columns = ["b_z", "amplitude", "l_value", "fidelity_prepared_vs_exact"]
    rows = []
    for bz in grid:
        net = preparation_network(config.n, bz, config.bx)
        res = run_protocol(net, config.epsilon, config.tau, config.readout_qubit)
        fid = fidelity(
            prepared_state(net), dynamics.ground_state(ChainParams(config.n, bz, config.bx))
        )
        rows.append([bz, res.amplitude, res.l_value, fid])
    minima = find_minima([r[0] for r in rows], [r[1] for r in rows])
    return columns, rows, minima


def _cmd_phase_diagram(config: RunConfig):
    if config.bx != 0.0:
        raise ConfigError("phase-diagram uses the closed forms; --bx must be 0")
    labels = phase_labels(config.n)
    grid = config.grid()
    columns = ["b_z"] + [f"e_phase_{lab.k}" for lab in labels] + ["e_min"]
    diag0 = hamiltonian_diagonal(ChainParams(config.n, 0.0, 0.0))
    diag1 = hamiltonian_diagonal(ChainParams(config.n, 1.0, 0.0)) - diag0
    weights = [np.abs(lab.state().amplitudes) ** 2 for lab in labels]
    rows = []
    for bz in grid:
        diag = diag0 + bz * diag1
        energies = [float(w @ diag) for w in weights]
        rows.append([bz] + energies + [min(energies)])
    return columns, rows, []


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "echo-scan": _cmd_echo_scan,
    "lz": _cmd_lz,
    "protocol": _cmd_protocol,
    "phase-diagram": _cmd_phase_diagram,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # config errors exit 1, not argparse's default 2
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="isingcrit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name, help=f"{name} sweep")
        p.add_argument("--n", type=int, default=3, help="chain length")
        p.add_argument("--bz-min", type=float, default=-3.0,
                       help="sweep start (the lambda grid for lz)")
        p.add_argument("--bz-max", type=float, default=3.0)
        p.add_argument("--bz-step", type=float, default=0.02)
        p.add_argument("--bx", type=float, default=0.1, help="transverse field")
        p.add_argument("--epsilon", type=float, default=0.1, help="perturbation strength")
        p.add_argument("--tau", type=float, default=float(np.pi), help="evolution time")
        p.add_argument("--value-kind", default="exact_echo", choices=VALUE_KINDS)
        p.add_argument("--initial-state", default=EXACT_GROUND, choices=INITIAL_STATE_SOURCES)
        p.add_argument("--znu", type=float, default=1.0, help="gap-closing exponent (lz)")
        p.add_argument("--delta-min", type=float, default=0.1, help="minimum gap (lz)")
        p.add_argument("--readout-qubit", type=int, default=1)
        p.add_argument("--format", default="csv", choices=("csv", "json"))
        p.add_argument("--out", default=None, help="output path (stdout if omitted)")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        n=args.n,
        bz_min=args.bz_min,
        bz_max=args.bz_max,
        bz_step=args.bz_step,
        bx=args.bx,
        epsilon=args.epsilon,
        tau=args.tau,
        value_kind=args.value_kind,
        initial_state=args.initial_state,
        znu=args.znu,
        delta_min=args.delta_min,
        readout_qubit=args.readout_qubit,
        output_format=args.format,
        out=args.out,
    )


def run(config: RunConfig) -> str:
    columns, rows, minima = _COMMANDS[config.command](config)
    return _emit(config, columns, rows, minima)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        config = _config_from_args(args)
        text = run(config)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        if config.out is None:
            sys.stdout.write(text)
        else:
            with open(config.out, "w", encoding="utf-8") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
