"""Variational loop: ansatz preparation, grouped energy estimation and
derivative-free angle updates."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .grouping import CommutativityMode, group_strings
from .measurement import compile_settings, estimate_energy
from .optics import prepare_ansatz
from .optimize import linear_trust_region, nelder_mead
from .pauli import Hamiltonian, check_state

EXACT = "EXACT"


class Mode(str, Enum):
    VQE_P = "VQE_P"  # Pauli (qubit-wise) measurement settings
    VQE_E = "VQE_E"  # entangled (Bell) settings allowed


GROUPING_FOR_MODE = {Mode.VQE_P: CommutativityMode.QWC, Mode.VQE_E: CommutativityMode.GC_BELL}

METHODS = ("cobyla", "nelder-mead")


@dataclass(frozen=True)
class OptimizerConfig:
    method: str = "cobyla"
    rel_tol: float = 0.01
    max_iterations: int = 200
    initial_step: float = 15.0

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown optimizer {self.method!r}; expected one of {METHODS}")
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 1:
            raise ValueError("max_iterations must be a positive integer")
        if not self.initial_step > 0:
            raise ValueError("initial_step must be positive")

    def minimize(self, fun, x0):
        if self.method == "cobyla":
            return linear_trust_region(
                fun, x0, rho_begin=self.initial_step, rel_tol=self.rel_tol, max_evals=self.max_iterations
            )
        return nelder_mead(fun, x0, step=self.initial_step, rel_tol=self.rel_tol, max_evals=self.max_iterations)


@dataclass
class RunTrace:
    """One VQE run. ``iterations`` holds (six angles, estimated energy) per
    objective evaluation, in order."""

    iterations: list
    mode: Mode
    shots: object
    seed: object = None
    converged: bool = False
    message: str = ""
    settings_count: int = 0
    shot_counts: list = field(default_factory=list)

    @property
    def iteration_count(self) -> int:
        return len(self.iterations)

    @property
    def energies(self) -> np.ndarray:
        return np.array([e for _, e in self.iterations])

    @property
    def final_energy(self) -> float:
        return float(self.energies.min())

    @property
    def final_angles(self) -> tuple:
        return self.iterations[int(np.argmin(self.energies))][0]

    def mean_of_smallest(self, k: int = 5) -> float:
        """Average of the ``k`` smallest trace energies."""
        return float(np.sort(self.energies)[:k].mean())

    def to_lines(self) -> list[str]:
        return [
            f"{i} " + " ".join(repr(float(a)) for a in x) + f" {e!r}"
            for i, (x, e) in enumerate(self.iterations)
        ]


def parse_trace_lines(lines) -> list:
    """Inverse of :meth:`RunTrace.to_lines` (blank lines and # comments skipped)."""
    out = []
    for n, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 8:
            raise ValueError(f"line {n}: expected index, six angles and an energy")
        if int(parts[0]) != len(out):
            raise ValueError(f"line {n}: iteration index {parts[0]} out of sequence")
        out.append((tuple(float(p) for p in parts[1:7]), float(parts[7])))
    return out


def rayleigh_quotient(state, h: Hamiltonian) -> float:
    psi = np.asarray(state, dtype=complex).reshape(-1)
    norm = np.vdot(psi, psi).real
    if norm == 0.0:
        raise ValueError("zero vector")
    check_state(psi / np.sqrt(norm), 2**h.qubit_count)
    return float(np.vdot(psi, h.matrix() @ psi).real / norm)


def settings_for(h: Hamiltonian, mode) -> list:
    mode = Mode(mode)
    groups = group_strings(h.strings, GROUPING_FOR_MODE[mode], weights=h.weights)
    return compile_settings(groups)


def _seed_sequence(seed):
    if isinstance(seed, np.random.SeedSequence):
        return seed
    return np.random.SeedSequence(seed)


def child_seeds(seed, n: int) -> list:
    """``n`` independent children of ``seed``.

    Unlike ``SeedSequence.spawn`` this does not advance the parent, so the
    same seed always yields the same children.
    """
    ss = _seed_sequence(seed)
    return [
        np.random.SeedSequence(ss.entropy, spawn_key=ss.spawn_key + (k,), pool_size=ss.pool_size)
        for k in range(n)
    ]


def run_vqe(h: Hamiltonian, mode, shots=9000, opt: OptimizerConfig | None = None, seed=None, noise=None) -> RunTrace:
    """Run one seeded VQE optimization of ``h`` on the photonic processor.

    ``shots`` is the per-iteration budget shared equally by the settings, or
    ``EXACT`` to use the true outcome probabilities. ``noise`` (a
    ``NoiseSpec``) miscalibrates every measurement setting once for the
    whole run.
    """
    from .noise import perturb_settings

    if h.qubit_count != 2:
        raise ValueError("the photonic processor holds two qubits")
    mode = Mode(mode)
    opt = opt or OptimizerConfig()
    exact = shots == EXACT
    if not exact and (int(shots) != shots or shots < 1):
        raise ValueError("shots must be a positive integer or EXACT")
    init_ss, shot_ss, noise_ss = child_seeds(seed, 3)

    settings = settings_for(h, mode)
    if noise is not None:
        settings = perturb_settings(settings, noise, np.random.default_rng(noise_ss))
    shot_rng = np.random.default_rng(shot_ss)
    x0 = np.random.default_rng(init_ss).uniform(0.0, 180.0, 6)
    counts = []

    def objective(x):
        est = estimate_energy(prepare_ansatz(x), h, settings, None if exact else int(shots), shot_rng, exact=exact)
        counts.append(est.shots_used)
        return est.value, est.stderr

    res = opt.minimize(objective, x0)
    return RunTrace(
        iterations=[(tuple(float(a) for a in x), f) for x, f in res.history],
        mode=mode,
        shots=EXACT if exact else int(shots),
        seed=seed if not isinstance(seed, np.random.SeedSequence) else seed.entropy,
        converged=res.converged,
        message=res.message,
        settings_count=len(settings),
        shot_counts=counts,
    )


def trial_seeds(seed, trials: int) -> list:
    """Independent child seeds for ``trials`` runs from one master seed."""
    return child_seeds(seed, trials)
