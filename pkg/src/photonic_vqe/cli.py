"""Command line front end: grouping reports, seeded VQE batches, noise
sweeps, Hamiltonian scans and a Bell-setting check.

Exit codes: 0 success, 2 bad configuration, 3 unparsable input file,
4 failure while running.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .grouping import CommutativityMode, group_strings
from .io import ParseError, format_records, load_hamiltonian, load_table
from .measurement import BELL_EIGENVALUES
from .noise import DEFAULT_EPSILONS, noise_sweep
from .optics import BELL_ANGLES, BELL_DETECTOR_ORDER, bell_fidelities, measurement_povm
from .pauli import ground_energy_exact, matrix_of
from .vqe import EXACT, METHODS, Mode, OptimizerConfig, run_vqe, trial_seeds

EXIT_OK, EXIT_CONFIG, EXIT_PARSE, EXIT_RUNTIME = 0, 2, 3, 4

MODE_FLAGS = {"pauli": (Mode.VQE_P,), "entangled": (Mode.VQE_E,), "both": (Mode.VQE_P, Mode.VQE_E)}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    hamiltonian_path: Path | None
    modes: tuple
    shots: object
    trials: int
    seed: int
    optimizer: OptimizerConfig
    output_dir: Path

    @classmethod
    def from_args(cls, args):
        try:
            opt = OptimizerConfig(method=args.method, rel_tol=args.tol, max_iterations=args.max_iter)
        except ValueError as e:
            raise ConfigError(str(e)) from None
        if args.trials < 1:
            raise ConfigError("--trials must be at least 1")
        path = Path(args.hamiltonian) if args.hamiltonian else None
        if path is not None and not path.is_file():
            raise ConfigError(f"no such file: {path}")
        return cls(path, MODE_FLAGS[args.mode], args.shots, args.trials, args.seed, opt, Path(args.out))


def _shots(text):
    if text.lower() == "exact":
        return EXACT
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer or 'exact', got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("shots must be positive")
    return n


def _epsilons(text):
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad epsilon list {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty epsilon list")
    if any(v < 0 or not np.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError("epsilons must be finite and non-negative")
    return vals


def _require_hamiltonian(cfg):
    if cfg.hamiltonian_path is None:
        raise ConfigError("--hamiltonian is required")
    return load_hamiltonian(cfg.hamiltonian_path)


def _write(cfg, name, text):
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    (cfg.output_dir / name).write_text(text)


def cmd_group(args, out):
    cfg = ExperimentConfig.from_args(args)
    h = _require_hamiltonian(cfg)
    modes = {"pauli": [CommutativityMode.QWC], "entangled": [CommutativityMode.GC_BELL]}.get(
        args.mode, [CommutativityMode.QWC, CommutativityMode.GC_BELL]
    )
    for mode in modes:
        groups = group_strings(h.strings, mode, weights=h.weights)
        kinds = sorted({g.kind.value for g in groups})
        n = len(groups)
        print(f"{mode.value}: {n} setting{'s' if n != 1 else ''} ({', '.join(kinds)})", file=out)
        for g in groups:
            print(f"  {g}", file=out)
    return EXIT_OK


def cmd_run(args, out):
    cfg = ExperimentConfig.from_args(args)
    h = _require_hamiltonian(cfg)
    rows, summary = [], []
    # every mode starts from the same child seeds, so trial k shares its initial angles
    seeds = trial_seeds(cfg.seed, cfg.trials)
    for mode in cfg.modes:
        finals, iters = [], []
        for t, s in enumerate(seeds):
            tr = run_vqe(h, mode, cfg.shots, cfg.optimizer, s)
            _write(cfg, f"trace_{mode.value}_{t}.txt", "\n".join(tr.to_lines()) + "\n")
            rows.append((mode.value, t, tr.iteration_count, tr.final_energy))
            finals.append(tr.final_energy)
            iters.append(tr.iteration_count)
        sd = lambda v: float(np.std(v, ddof=1)) if len(v) > 1 else 0.0
        summary.append((mode.value, "Avg.", float(np.mean(iters)), float(np.mean(finals))))
        summary.append((mode.value, "Stdev.", sd(iters), sd(finals)))
    _write(cfg, "runs.csv", format_records(["mode", "trial", "iterations", "final_energy"], rows))
    _write(cfg, "summary.csv", format_records(["mode", "stat", "iterations", "final_energy"], summary))
    e_g, _ = ground_energy_exact(h)
    print(f"{h.label}: exact ground energy {e_g:.4f}, shots {cfg.shots}, {cfg.trials} trial(s)", file=out)
    print(f"{'mode':6} {'trial':>5} {'iter':>5} {'energy':>9}", file=out)
    for m, t, n, e in rows:
        print(f"{m:6} {t:5d} {n:5d} {e:9.4f}", file=out)
    for m, stat, n, e in summary:
        print(f"{m:6} {stat:>5} {n:5.1f} {e:9.4f}", file=out)
    return EXIT_OK


def cmd_noise_sweep(args, out):
    cfg = ExperimentConfig.from_args(args)
    h = _require_hamiltonian(cfg)
    res = noise_sweep(h, args.epsilons, cfg.trials, cfg.shots, cfg.optimizer, cfg.seed, cfg.modes)
    rows = [(float(e), m.value, t, f) for e, m, t, f in res.records]
    summ = [(float(e), m.value, mean, sd, n) for e, m, mean, sd, n in res.summary()]
    _write(cfg, "sweep.csv", format_records(["epsilon", "mode", "trial", "final_energy"], rows))
    _write(cfg, "sweep_summary.csv", format_records(["epsilon", "mode", "mean", "stdev", "trials"], summ))
    print(f"{'eps':>5} {'mode':6} {'mean':>9} {'stdev':>8}", file=out)
    for e, m, mean, sd, _ in summ:
        print(f"{e:5.1f} {m:6} {mean:9.4f} {sd:8.4f}", file=out)
    return EXIT_OK


def cmd_scan(args, out):
    cfg = ExperimentConfig.from_args(args)
    if cfg.hamiltonian_path is None:
        raise ConfigError("--hamiltonian must point to a table file for scan")
    table = load_table(cfg.hamiltonian_path)
    rows = []
    for r, h in table.items():
        e_g, _ = ground_energy_exact(h)
        for mode in cfg.modes:
            for t, s in enumerate(trial_seeds(cfg.seed, cfg.trials)):
                tr = run_vqe(h, mode, cfg.shots, cfg.optimizer, s)
                rows.append((float(r), mode.value, t, tr.final_energy, e_g))
    _write(cfg, "scan.csv", format_records(["R", "mode", "trial", "final_energy", "exact_energy"], rows))
    print(f"{'R':>6} {'mode':6} {'trial':>5} {'energy':>9} {'exact':>9}", file=out)
    for r, m, t, e, g in rows:
        print(f"{r:6.3f} {m:6} {t:5d} {e:9.4f} {g:9.4f}", file=out)
    return EXIT_OK


def cmd_bell_check(args, out):
    angles = BELL_ANGLES if args.angles is None else tuple(args.angles)
    if len(angles) != 8:
        raise ConfigError("--angles needs eight comma-separated values")
    fid = bell_fidelities(angles)
    print("angles H4 Q4 H5 Q5 H6 Q6 H7 Q7: " + " ".join(f"{a:g}" for a in angles), file=out)
    for k, (name, f) in enumerate(zip(BELL_DETECTOR_ORDER, fid), 1):
        print(f"D{k} -> {name:5} fidelity {f:.12f}", file=out)
    proj = measurement_povm(angles).projectors()
    for label in ("XX", "YY", "ZZ"):
        e = np.array([BELL_EIGENVALUES[label][b] for b in BELL_DETECTOR_ORDER], dtype=float)
        r = np.linalg.norm(np.einsum("k,kij->ij", e, proj) - matrix_of(label))
        print(f"{label} reconstruction residual {r:.3e}", file=out)
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--hamiltonian", help="Hamiltonian file (or R table for scan)")
    common.add_argument("--mode", choices=sorted(MODE_FLAGS), default="both")
    common.add_argument("--shots", type=_shots, default=9000, help="shots per iteration, or 'exact'")
    common.add_argument("--trials", type=int, default=5)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=0.01, help="relative energy-change tolerance")
    common.add_argument("--max-iter", type=int, default=200)
    common.add_argument("--method", choices=METHODS, default="cobyla")
    common.add_argument("--out", default="vqe-out", help="output directory")

    p = argparse.ArgumentParser(prog="photonic-vqe", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("group", parents=[common], help="measurement groups and setting counts").set_defaults(fn=cmd_group)
    sub.add_parser("run", parents=[common], help="seeded VQE trials").set_defaults(fn=cmd_run)
    sw = sub.add_parser("noise-sweep", parents=[common], help="Monte-Carlo over waveplate offsets")
    sw.add_argument("--epsilons", type=_epsilons, default=list(DEFAULT_EPSILONS))
    sw.set_defaults(fn=cmd_noise_sweep)
    sub.add_parser("scan", parents=[common], help="VQE over an R table").set_defaults(fn=cmd_scan)
    bc = sub.add_parser("bell-check", help="verify the Bell measurement setting")
    bc.add_argument("--angles", type=_angle_list, default=None)
    bc.set_defaults(fn=cmd_bell_check)
    return p


def _angle_list(text):
    try:
        return [float(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad angle list {text!r}") from None


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_CONFIG
    try:
        return args.fn(args, out)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except Exception as e:  # noqa: BLE001
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
