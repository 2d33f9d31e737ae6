"""Gaussian waveplate-offset miscalibration of the measurement stage and
Monte-Carlo sweeps over its strength."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .jacobi import eigh_jacobi
from .measurement import effective_observable, estimate_energy
from .optics import ansatz_angles, prepare_ansatz
from .pauli import Hamiltonian
from .vqe import Mode, OptimizerConfig, child_seeds, run_vqe, settings_for

DEFAULT_EPSILONS = (0.0, 1.0, 2.0, 3.0, 5.0, 7.0, 10.0)
PER_RUN_PER_SETTING = "PER_RUN_PER_SETTING"


@dataclass(frozen=True)
class NoiseSpec:
    """Offsets on H4..Q7 drawn from N(0, epsilon^2), epsilon in degrees."""

    epsilon: float
    resample_policy: str = PER_RUN_PER_SETTING

    def __post_init__(self):
        if not np.isfinite(self.epsilon) or self.epsilon < 0:
            raise ValueError("epsilon must be a finite non-negative number of degrees")
        if self.resample_policy != PER_RUN_PER_SETTING:
            raise ValueError(f"unsupported resample policy {self.resample_policy!r}")


def perturb_angles(angles, spec: NoiseSpec, rng) -> np.ndarray:
    a = np.asarray(angles, dtype=float)
    if a.shape != (8,):
        raise ValueError("expected the eight measurement angles")
    rng = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    return a + rng.normal(0.0, spec.epsilon, size=8)


def perturb_settings(settings, spec: NoiseSpec, rng) -> list:
    """One offset draw per setting; eigenvalue tables stay nominal."""
    return [s.with_angles(perturb_angles(s.angles, spec, rng)) for s in settings]


def minimized_energy(h: Hamiltonian, settings) -> float:
    """Lowest exact-probability energy any two-qubit state can reach under
    the given (possibly miscalibrated) settings.

    The ansatz reaches every two-qubit state, so this is the smallest
    eigenvalue of the effective observable.
    """
    w, _ = eigh_jacobi(effective_observable(h, settings))
    return float(w.min())


def minimizing_angles(h: Hamiltonian, settings) -> np.ndarray:
    """Preparation angles of a state attaining :func:`minimized_energy`."""
    w, v = eigh_jacobi(effective_observable(h, settings))
    return ansatz_angles(v[:, int(np.argmin(w))])


def realized_minimum(h: Hamiltonian, settings) -> float:
    """Exact-probability energy measured at :func:`minimizing_angles`;
    agrees with :func:`minimized_energy` through an independent route."""
    state = prepare_ansatz(minimizing_angles(h, settings))
    return estimate_energy(state, h, settings, exact=True).value


def miscalibrated_minimum(h: Hamiltonian, mode, spec: NoiseSpec, rng) -> float:
    settings = perturb_settings(settings_for(h, mode), spec, rng)
    return minimized_energy(h, settings)


@dataclass
class SweepResult:
    epsilon_grid: list
    records: list = field(default_factory=list)  # (epsilon, mode, trial, final_energy)

    def energies(self, epsilon, mode) -> np.ndarray:
        mode = Mode(mode)
        return np.array([e for eps, m, _, e in self.records if eps == epsilon and m is mode])

    def summary(self) -> list:
        """(epsilon, mode, mean, sample stdev, trials) rows."""
        rows = []
        for eps in self.epsilon_grid:
            for mode in Mode:
                e = self.energies(eps, mode)
                sd = float(e.std(ddof=1)) if len(e) > 1 else 0.0
                rows.append((eps, mode, float(e.mean()), sd, len(e)))
        return rows


def noise_sweep(
    h: Hamiltonian,
    epsilon_grid=DEFAULT_EPSILONS,
    trials_per_epsilon: int = 10,
    shots=9000,
    opt: OptimizerConfig | None = None,
    seed=None,
    modes=(Mode.VQE_P, Mode.VQE_E),
) -> SweepResult:
    """Seeded VQE runs per epsilon and mode under systematic
    measurement-angle offsets.

    Trial ``t`` uses the same child seed at every epsilon and in every mode,
    as the ``run`` command does, so epsilon = 0 reproduces a noiseless batch
    and differences across the grid come from the offsets alone.
    """
    if trials_per_epsilon < 1:
        raise ValueError("trials_per_epsilon must be at least 1")
    specs = [NoiseSpec(float(e)) for e in epsilon_grid]
    if not specs:
        raise ValueError("empty epsilon grid")
    modes = [Mode(m) for m in modes]
    children = child_seeds(seed, trials_per_epsilon)
    result = SweepResult([s.epsilon for s in specs])
    for spec in specs:
        for mode in modes:
            for t, child in enumerate(children):
                trace = run_vqe(h, mode, shots, opt, child, spec)
                result.records.append((spec.epsilon, mode, t, trace.final_energy))
    return result
