"""Simulator for variational eigensolvers on a two-qubit photonic processor
(path and polarization of one photon), comparing qubit-wise Pauli
measurements with Bell-basis measurements."""

from .grouping import CommutativityMode, GroupKind, MeasurementGroup, group_strings
from .measurement import EnergyEstimate, MeasurementSetting, compile_settings, estimate_energy
from .noise import NoiseSpec, SweepResult, noise_sweep, perturb_angles
from .optics import bell_setting, measurement_povm, prepare_ansatz
from .pauli import Hamiltonian, PauliString, PauliTerm, ground_energy_exact, heisenberg
from .vqe import EXACT, Mode, OptimizerConfig, RunTrace, rayleigh_quotient, run_vqe

__all__ = [
    "CommutativityMode", "GroupKind", "MeasurementGroup", "group_strings",
    "EnergyEstimate", "MeasurementSetting", "compile_settings", "estimate_energy",
    "NoiseSpec", "SweepResult", "noise_sweep", "perturb_angles",
    "bell_setting", "measurement_povm", "prepare_ansatz",
    "Hamiltonian", "PauliString", "PauliTerm", "ground_energy_exact", "heisenberg",
    "EXACT", "Mode", "OptimizerConfig", "RunTrace", "rayleigh_quotient", "run_vqe",
]
