"""Pauli strings, qubit Hamiltonians and exact expectation values.

Qubit order is fixed project-wide: the leftmost label acts on the path
qubit (a -> |0>, b -> |1>), the next on polarization (H -> |0>, V -> |1>).
Two-qubit amplitudes are therefore ordered (aH, aV, bH, bV).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .jacobi import eigh_jacobi

PAULI_LABELS = "IXYZ"

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

NORM_TOL = 1e-10
MAX_DENSE_QUBITS = 6


@dataclass(frozen=True, order=True)
class PauliString:
    """Tensor product of single-qubit Paulis, e.g. ``PauliString("XZ")``."""

    label: str

    def __post_init__(self):
        if not isinstance(self.label, str) or not self.label:
            raise ValueError("Pauli string must be a nonempty str")
        bad = set(self.label) - set(PAULI_LABELS)
        if bad:
            raise ValueError(f"invalid Pauli label(s) {sorted(bad)} in {self.label!r}")

    @property
    def ops(self) -> tuple[str, ...]:
        return tuple(self.label)

    @property
    def n_qubits(self) -> int:
        return len(self.label)

    @property
    def support(self) -> int:
        """Number of non-identity positions."""
        return sum(c != "I" for c in self.label)

    def __len__(self):
        return len(self.label)

    def __str__(self):
        return self.label


def parse_pauli_string(text: str) -> PauliString:
    text = text.strip()
    if not text:
        raise ValueError("empty Pauli string")
    return PauliString(text)


def as_pauli(p) -> PauliString:
    return p if isinstance(p, PauliString) else parse_pauli_string(p)


def matrix_of(p) -> np.ndarray:
    """Dense ``2**n x 2**n`` matrix; leftmost label is the most significant qubit."""
    p = as_pauli(p)
    m = np.ones((1, 1), dtype=complex)
    for c in p.label:
        m = np.kron(m, _SINGLE[c])
    return m


@dataclass(frozen=True)
class PauliTerm:
    string: PauliString
    weight: float

    def __post_init__(self):
        object.__setattr__(self, "string", as_pauli(self.string))
        w = float(self.weight)
        if not math.isfinite(w):
            raise ValueError(f"non-finite weight for {self.string}")
        object.__setattr__(self, "weight", w)


@dataclass(frozen=True)
class Hamiltonian:
    """Weighted sum of Pauli strings with unique strings.

    Build with :meth:`from_terms` so duplicate strings are merged.
    """

    terms: tuple[PauliTerm, ...]
    qubit_count: int
    label: str = ""

    def __post_init__(self):
        if self.qubit_count < 1:
            raise ValueError("qubit_count must be positive")
        seen = set()
        for t in self.terms:
            if len(t.string) != self.qubit_count:
                raise ValueError(
                    f"{t.string} has length {len(t.string)}, expected {self.qubit_count}"
                )
            if t.string in seen:
                raise ValueError(f"duplicate string {t.string}; use Hamiltonian.from_terms")
            seen.add(t.string)

    @classmethod
    def from_terms(cls, terms: Iterable, label: str = "", qubit_count: int | None = None):
        """Accepts ``PauliTerm`` objects or ``(string, weight)`` pairs.

        Duplicates are merged by adding weights; first-seen order is kept and
        zero-weight terms are retained.
        """
        merged: dict[PauliString, float] = {}
        for t in terms:
            if not isinstance(t, PauliTerm):
                t = PauliTerm(*t)
            merged[t.string] = merged.get(t.string, 0.0) + t.weight
        if qubit_count is None:
            if not merged:
                raise ValueError("qubit_count required for an empty Hamiltonian")
            qubit_count = len(next(iter(merged)))
        return cls(tuple(PauliTerm(s, w) for s, w in merged.items()), qubit_count, label)

    @property
    def strings(self) -> list[PauliString]:
        return [t.string for t in self.terms]

    @property
    def weights(self) -> dict[PauliString, float]:
        return {t.string: t.weight for t in self.terms}

    def matrix(self) -> np.ndarray:
        dim = 2**self.qubit_count
        m = np.zeros((dim, dim), dtype=complex)
        for t in self.terms:
            m += t.weight * matrix_of(t.string)
        return m

    def __len__(self):
        return len(self.terms)


def heisenberg() -> Hamiltonian:
    """Two-qubit antiferromagnetic Heisenberg model XX + YY + ZZ."""
    return Hamiltonian.from_terms([("XX", 1.0), ("YY", 1.0), ("ZZ", 1.0)], label="Heisenberg-2q")


# Nine-string structure of the two-qubit HeH+ Hamiltonian, in the listed order.
HEH_STRINGS = ("II", "IZ", "ZI", "ZZ", "IX", "ZX", "XI", "XZ", "XX")
HEISENBERG_STRINGS = ("XX", "YY", "ZZ")


# ---------------------------------------------------------------- states

_S2 = 1 / math.sqrt(2)

BASIS = {
    "aH": np.array([1, 0, 0, 0], dtype=complex),
    "aV": np.array([0, 1, 0, 0], dtype=complex),
    "bH": np.array([0, 0, 1, 0], dtype=complex),
    "bV": np.array([0, 0, 0, 1], dtype=complex),
}

# psi+- = (|01> +- |10>)/sqrt2, phi+- = (|00> +- |11>)/sqrt2
BELL_STATES = {
    "psi+": np.array([0, _S2, _S2, 0], dtype=complex),
    "psi-": np.array([0, _S2, -_S2, 0], dtype=complex),
    "phi+": np.array([_S2, 0, 0, _S2], dtype=complex),
    "phi-": np.array([_S2, 0, 0, -_S2], dtype=complex),
}

SINGLET = BELL_STATES["psi-"]


def check_state(state, dim: int | None = None) -> np.ndarray:
    psi = np.asarray(state, dtype=complex).reshape(-1)
    if dim is not None and psi.shape[0] != dim:
        raise ValueError(f"state has dimension {psi.shape[0]}, expected {dim}")
    if psi.shape[0] & (psi.shape[0] - 1) or psi.shape[0] < 2:
        raise ValueError("state dimension must be a power of two")
    norm = np.vdot(psi, psi).real
    if abs(norm - 1.0) > NORM_TOL:
        raise ValueError(f"state is not normalized (|psi|^2 = {norm:.3e})")
    return psi


def random_state(rng, dim: int = 4) -> np.ndarray:
    """Haar-random pure state."""
    z = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return z / np.linalg.norm(z)


def expectation_exact(state, p) -> float:
    p = as_pauli(p)
    psi = check_state(state, 2 ** len(p))
    return float(np.vdot(psi, matrix_of(p) @ psi).real)


def hamiltonian_expectation_exact(state, h: Hamiltonian) -> float:
    psi = check_state(state, 2**h.qubit_count)
    return float(sum(t.weight * np.vdot(psi, matrix_of(t.string) @ psi).real for t in h.terms))


def ground_energy_exact(h: Hamiltonian) -> tuple[float, np.ndarray]:
    """Minimum eigenvalue and a normalized eigenvector, by dense Jacobi diagonalization."""
    if h.qubit_count > MAX_DENSE_QUBITS:
        raise ValueError(f"dense diagonalization limited to {MAX_DENSE_QUBITS} qubits")
    w, v = eigh_jacobi(h.matrix())
    k = int(np.argmin(w))
    vec = v[:, k]
    # fix global phase: largest component real positive
    j = int(np.argmax(np.abs(vec)))
    vec = vec * np.exp(-1j * np.angle(vec[j]))
    return float(w[k]), vec / np.linalg.norm(vec)
