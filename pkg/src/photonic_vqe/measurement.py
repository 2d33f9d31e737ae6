"""Measurement settings, Born-rule probabilities, shot sampling and
energy estimation from grouped Pauli measurements.

Sampling uses numpy's PCG64 generator (``np.random.default_rng``); draws
are made by inverse-CDF lookup of uniform variates, so a given seed yields
the same counts on every platform numpy supports.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .grouping import GroupKind, MeasurementGroup, local_bases
from .optics import BELL_DETECTOR_ORDER, DetectorPOVM, bell_setting, measurement_povm, product_basis_angles
from .pauli import Hamiltonian, PauliString, as_pauli, check_state, matrix_of

IDENTITY_2Q = PauliString("II")

# Bell-basis eigenvalues of the Bell-diagonal strings.
BELL_EIGENVALUES = {
    "XX": {"psi+": 1, "phi+": 1, "psi-": -1, "phi-": -1},
    "YY": {"psi+": 1, "phi-": 1, "psi-": -1, "phi+": -1},
    "ZZ": {"phi+": 1, "phi-": 1, "psi+": -1, "psi-": -1},
    "II": {"psi+": 1, "psi-": 1, "phi+": 1, "phi-": 1},
}

RECONSTRUCTION_TOL = 1e-10


def make_rng(seed=None) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


@dataclass(frozen=True)
class MeasurementSetting:
    angles: tuple[float, ...]
    povm: DetectorPOVM
    eig_table: dict
    source_group: MeasurementGroup

    @property
    def members(self):
        return self.source_group.members

    def covers(self, p) -> bool:
        return as_pauli(p) in self.eig_table

    def with_angles(self, angles) -> "MeasurementSetting":
        """Same eigenvalue bookkeeping, physically realized at other angles."""
        angles = tuple(float(a) for a in angles)
        return replace(self, angles=angles, povm=measurement_povm(angles))

    def residuals(self) -> dict:
        """Norm of sum_k e_k |u_k><u_k| - M_sigma for each covered string."""
        proj = self.povm.projectors()
        return {
            s: float(np.linalg.norm(np.einsum("k,kij->ij", e, proj) - matrix_of(s)))
            for s, e in self.eig_table.items()
        }


@dataclass(frozen=True)
class ShotRecord:
    counts: tuple[int, ...]
    total: int

    def __post_init__(self):
        if sum(self.counts) != self.total:
            raise ValueError("counts do not sum to total")

    def frequencies(self) -> np.ndarray:
        return np.asarray(self.counts, dtype=float) / self.total


@dataclass(frozen=True)
class EnergyEstimate:
    value: float
    per_string: dict
    shots_used: dict = field(default_factory=dict)
    stderr: float = 0.0  # plug-in shot-noise standard error; 0 in exact mode


def compile_setting(group: MeasurementGroup) -> MeasurementSetting:
    if group.kind is GroupKind.BELL:
        angles = tuple(float(a) for a in bell_setting())
        table = {}
        for m in group.members:
            if m.label not in BELL_EIGENVALUES:
                raise ValueError(f"{m} is not measurable in the Bell basis")
            row = BELL_EIGENVALUES[m.label]
            table[m] = np.array([row[b] for b in BELL_DETECTOR_ORDER], dtype=float)
    else:
        if len(group.members[0]) != 2:
            raise ValueError("optical settings exist for two-qubit strings only")
        bases = local_bases(group.members)
        angles = product_basis_angles(*bases)
        vecs = measurement_povm(angles).vectors
        table = {}
        for m in group.members:
            diag = np.einsum("ki,ij,kj->k", vecs.conj(), matrix_of(m), vecs).real
            table[m] = np.rint(diag)
    setting = MeasurementSetting(angles, measurement_povm(angles), table, group)
    for s, r in setting.residuals().items():
        if r > RECONSTRUCTION_TOL:
            raise ValueError(f"setting does not measure {s} (residual {r:.2e})")
    return setting


def compile_settings(groups) -> list[MeasurementSetting]:
    return [compile_setting(g) for g in groups]


def outcome_probabilities(state, setting: MeasurementSetting) -> np.ndarray:
    psi = check_state(state, 4)
    p = setting.povm.probabilities(psi)
    p = np.clip(p, 0.0, None)
    return p / p.sum()


def sample_shots(probs, n: int, rng=None) -> ShotRecord:
    """Multinomial draw of ``n`` shots by inverse-CDF lookup."""
    p = np.asarray(probs, dtype=float)
    if n < 0:
        raise ValueError("negative shot count")
    if np.any(p < -1e-12) or abs(p.sum() - 1.0) > 1e-8:
        raise ValueError(f"invalid probability vector {p}")
    p = np.clip(p, 0.0, None)
    cdf = np.cumsum(p / p.sum())
    cdf[-1] = 1.0
    u = make_rng(rng).random(n)
    idx = np.searchsorted(cdf, u, side="right")
    counts = np.bincount(idx, minlength=len(p))
    return ShotRecord(tuple(int(c) for c in counts), int(n))


def split_shots(n_total: int, n_settings: int) -> list[int]:
    base, extra = divmod(n_total, n_settings)
    return [base + (i < extra) for i in range(n_settings)]


def assign_strings(h: Hamiltonian, settings) -> dict:
    """Map each non-identity string to the index of the first setting covering it."""
    out = {}
    for s in h.strings:
        if s.support == 0:
            continue
        for i, st in enumerate(settings):
            if st.covers(s):
                out[s] = i
                break
        else:
            raise ValueError(f"string {s} is not covered by any setting")
    return out


def estimate_energy(state, h: Hamiltonian, settings, n_total=None, rng=None, exact=False) -> EnergyEstimate:
    """Weighted sum of per-string estimates; identity strings count as exactly 1.

    With ``exact`` the sampled frequencies are replaced by the true
    outcome probabilities and ``n_total`` is ignored.
    """
    settings = list(settings)
    owner = assign_strings(h, settings)
    if not exact:
        if n_total is None or n_total < len(settings):
            raise ValueError("n_total must be at least the number of settings")
        rng = make_rng(rng)
        shots = split_shots(int(n_total), len(settings))
    freqs, used = [], {}
    for i, st in enumerate(settings):
        p = outcome_probabilities(state, st)
        if exact:
            freqs.append(p)
        else:
            rec = sample_shots(p, shots[i], rng)
            freqs.append(rec.frequencies())
            used[i] = shots[i]
    per_string = {}
    value = 0.0
    outcome_values = [np.zeros(4) for _ in settings]
    for t in h.terms:
        if t.string.support == 0:
            ev = 1.0
        else:
            i = owner[t.string]
            ev = float(settings[i].eig_table[t.string] @ freqs[i])
            outcome_values[i] += t.weight * settings[i].eig_table[t.string]
        per_string[t.string] = ev
        value += t.weight * ev
    var = 0.0
    if not exact:
        for i, v in enumerate(outcome_values):
            f = freqs[i]
            var += max(f @ v**2 - (f @ v) ** 2, 0.0) / shots[i]
    return EnergyEstimate(float(value), per_string, used, float(np.sqrt(var)))


def effective_observable(h: Hamiltonian, settings) -> np.ndarray:
    """Operator whose exact expectation equals the exact-mode estimate.

    Equals ``h.matrix()`` for ideal settings; differs once the settings'
    physical angles are miscalibrated.
    """
    owner = assign_strings(h, settings)
    obs = np.zeros((4, 4), dtype=complex)
    for t in h.terms:
        if t.string.support == 0:
            obs += t.weight * np.eye(4)
            continue
        st = settings[owner[t.string]]
        obs += t.weight * np.einsum("k,kij->ij", st.eig_table[t.string], st.povm.projectors())
    return obs


def estimator_std(state, h: Hamiltonian, settings, n_total: int) -> float:
    """Analytic shot-noise standard deviation of the sampled estimate."""
    owner = assign_strings(h, settings)
    shots = split_shots(int(n_total), len(settings))
    var = 0.0
    for i, st in enumerate(settings):
        v = np.zeros(4)
        for t in h.terms:
            if owner.get(t.string) == i:
                v += t.weight * st.eig_table[t.string]
        p = outcome_probabilities(state, st)
        var += (p @ v**2 - (p @ v) ** 2) / shots[i]
    return float(np.sqrt(max(var, 0.0)))
