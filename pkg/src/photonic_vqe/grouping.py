"""Commutativity tests and greedy partitioning of Pauli strings into
simultaneously measurable groups."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .pauli import BELL_STATES, PauliString, as_pauli, matrix_of


class CommutativityMode(str, Enum):
    QWC = "QWC"
    GC_BELL = "GC_BELL"


class GroupKind(str, Enum):
    SEPARABLE = "SEPARABLE"
    BELL = "BELL"


@dataclass(frozen=True)
class MeasurementGroup:
    members: tuple[PauliString, ...]
    mode: CommutativityMode
    kind: GroupKind

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(as_pauli(p) for p in self.members))
        if not self.members:
            raise ValueError("empty measurement group")
        if not is_valid_group(self.members, self.kind):
            raise ValueError(f"{[str(m) for m in self.members]} is not a valid {self.kind.value} group")

    @property
    def labels(self) -> list[str]:
        return [m.label for m in self.members]

    def __contains__(self, p):
        return as_pauli(p) in self.members

    def __str__(self):
        return f"{self.kind.value}{{{', '.join(self.labels)}}}"


def _check_lengths(p, q):
    if len(p) != len(q):
        raise ValueError(f"length mismatch: {p} vs {q}")


def qubit_wise_commute(p, q) -> bool:
    p, q = as_pauli(p), as_pauli(q)
    _check_lengths(p, q)
    return all(a == b or a == "I" or b == "I" for a, b in zip(p.label, q.label))


def general_commute(p, q) -> bool:
    p, q = as_pauli(p), as_pauli(q)
    _check_lengths(p, q)
    clashes = sum(a != b and a != "I" and b != "I" for a, b in zip(p.label, q.label))
    return clashes % 2 == 0


_BELL_PROJECTORS = [np.outer(v, v.conj()) for v in BELL_STATES.values()]


def is_bell_diagonal(p) -> bool:
    """True when the string's matrix commutes with every Bell projector."""
    p = as_pauli(p)
    if len(p) != 2:
        return False
    m = matrix_of(p)
    return all(np.abs(m @ P - P @ m).max() < 1e-12 for P in _BELL_PROJECTORS)


def is_valid_group(members, kind: GroupKind) -> bool:
    members = [as_pauli(m) for m in members]
    if kind is GroupKind.BELL:
        return all(is_bell_diagonal(m) for m in members)
    return all(
        qubit_wise_commute(p, q) for i, p in enumerate(members) for q in members[i + 1 :]
    )


def local_bases(members) -> tuple[str, ...]:
    """Per-qubit measurement basis of a QWC group (Z where every member is I)."""
    members = [as_pauli(m) for m in members]
    out = []
    for k in range(len(members[0])):
        letters = {m.label[k] for m in members} - {"I"}
        if len(letters) > 1:
            raise ValueError("members are not qubit-wise commuting")
        out.append(letters.pop() if letters else "Z")
    return tuple(out)


def _ordered(strings, weights):
    # stable: ties keep input order
    keyed = [(-s.support, -abs(weights.get(s, 0.0)), i, s) for i, s in enumerate(strings)]
    return [s for *_, s in sorted(keyed, key=lambda t: t[:3])]


def _first_fit_qwc(strings, mode):
    bins: list[list[PauliString]] = []
    for s in strings:
        for b in bins:
            if all(qubit_wise_commute(s, m) for m in b):
                b.append(s)
                break
        else:
            bins.append([s])
    return [MeasurementGroup(tuple(b), mode, GroupKind.SEPARABLE) for b in bins]


def group_strings(strings, mode=CommutativityMode.QWC, weights=None) -> list[MeasurementGroup]:
    """Greedy first-fit partition of ``strings`` into measurement groups.

    Strings are visited by decreasing support, then decreasing ``|weight|``,
    then input order. Under ``GC_BELL`` the Bell-diagonal strings are pulled
    into one Bell group first (when at least two of them are non-identity) and
    the remainder is packed qubit-wise; if plain QWC packing needs fewer
    groups it is returned instead, so GC_BELL never uses more settings.
    """
    mode = CommutativityMode(mode)
    strings = [as_pauli(s) for s in strings]
    if not strings:
        raise ValueError("no strings to group")
    if len(set(strings)) != len(strings):
        raise ValueError("duplicate strings")
    n = len(strings[0])
    if any(len(s) != n for s in strings):
        raise ValueError("strings must have equal length")
    weights = {as_pauli(k): float(v) for k, v in (weights or {}).items()}

    order = _ordered(strings, weights)
    qwc = _first_fit_qwc(order, mode)
    if mode is CommutativityMode.QWC:
        return qwc

    bell = [s for s in strings if is_bell_diagonal(s)]
    if sum(s.support > 0 for s in bell) < 2:
        return qwc
    rest = [s for s in order if s not in bell]
    with_bell = [MeasurementGroup(tuple(bell), mode, GroupKind.BELL)]
    with_bell += _first_fit_qwc(rest, mode)
    return with_bell if len(with_bell) <= len(qwc) else qwc


def group_report(groups) -> list[dict]:
    """Plain-data form of a grouping, in emission order."""
    return [{"kind": g.kind.value, "members": g.labels} for g in groups]
