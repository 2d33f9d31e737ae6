"""Jones-calculus model of the path/polarization photonic processor.

Conventions (angles in degrees at the interface, radians inside):

* ``HWP(t) = [[cos 2t, sin 2t], [sin 2t, -cos 2t]]`` in the {H, V} basis.
* ``QWP(t) = R(t) diag(1, i) R(-t)``.
* Preparation: the input photon is |H>; it meets H1 then Q1, then PBD1
  sends H to path a and V to path b. Path a then meets H2, Q2 and path b
  meets H3, Q3.
* Measurement: each waveplate pair is met quarter-wave plate first
  (Q4 then H4 on path a, Q5 then H5 on path b). PBD2 keeps H in its port
  and moves V to the other port (a CNOT with polarization as control).
  Port 1 then meets Q6, H6 and port 2 meets Q7, H7, and a PBS per port
  sends H and V to separate detectors.
* Detectors: D1 = (port 1, H), D2 = (port 1, V), D3 = (port 2, H),
  D4 = (port 2, V).

With these conventions the angle vector {45, 90, 45, 0, 22.5, 45, 22.5, 45}
registers psi+, psi-, phi+, phi- at D1..D4 without relabeling.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .pauli import BELL_STATES, matrix_of

PREP_NAMES = ("H1", "Q1", "H2", "Q2", "H3", "Q3")
MEAS_NAMES = ("H4", "Q4", "H5", "Q5", "H6", "Q6", "H7", "Q7")

BELL_DETECTOR_ORDER = ("psi+", "psi-", "phi+", "phi-")
BELL_ANGLES = (45.0, 90.0, 45.0, 0.0, 22.5, 45.0, 22.5, 45.0)

_H = np.array([1, 0], dtype=complex)
_V = np.array([0, 1], dtype=complex)


def _rot(t):
    c, s = np.cos(t), np.sin(t)
    return np.array([[c, -s], [s, c]], dtype=complex)


def hwp_jones(theta) -> np.ndarray:
    t = np.deg2rad(theta)
    c, s = np.cos(2 * t), np.sin(2 * t)
    return np.array([[c, s], [s, -c]], dtype=complex)


def qwp_jones(theta) -> np.ndarray:
    t = np.deg2rad(theta)
    return _rot(t) @ np.diag([1, 1j]) @ _rot(-t)


def _angles(angles, n, what):
    a = np.asarray(angles, dtype=float).reshape(-1)
    if a.shape[0] != n:
        raise ValueError(f"{what} needs {n} angles, got {a.shape[0]}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{what} angles must be finite")
    return a


def _block(top, bottom):
    m = np.zeros((4, 4), dtype=complex)
    m[:2, :2] = top
    m[2:, 2:] = bottom
    return m


# PBD2 mode map: (path, pol) -> (port, pol) with port = path XOR pol
_PBD2 = np.zeros((4, 4))
for _path, _pol in itertools.product(range(2), range(2)):
    _PBD2[2 * (_path ^ _pol) + _pol, 2 * _path + _pol] = 1.0


def prepare_ansatz(angles) -> np.ndarray:
    """Ansatz amplitudes (aH, aV, bH, bV) from six waveplate angles."""
    h1, q1, h2, q2, h3, q3 = _angles(angles, 6, "preparation")
    c = qwp_jones(q1) @ hwp_jones(h1) @ _H
    pa = qwp_jones(q2) @ hwp_jones(h2) @ _H
    pb = qwp_jones(q3) @ hwp_jones(h3) @ _V
    return np.concatenate([c[0] * pa, c[1] * pb])


def measurement_unitary(angles) -> np.ndarray:
    """4x4 transfer matrix from (aH, aV, bH, bV) to detectors D1..D4."""
    h4, q4, h5, q5, h6, q6, h7, q7 = _angles(angles, 8, "measurement")
    pre = _block(hwp_jones(h4) @ qwp_jones(q4), hwp_jones(h5) @ qwp_jones(q5))
    post = _block(hwp_jones(h6) @ qwp_jones(q6), hwp_jones(h7) @ qwp_jones(q7))
    return post @ _PBD2 @ pre


@dataclass(frozen=True)
class DetectorPOVM:
    """Rank-1 projective measurement; row ``k`` of ``vectors`` is detector k's ket."""

    vectors: np.ndarray

    def __post_init__(self):
        v = np.array(self.vectors, dtype=complex)
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)

    def projectors(self) -> np.ndarray:
        return np.einsum("ki,kj->kij", self.vectors, self.vectors.conj())

    def gram(self) -> np.ndarray:
        return self.vectors.conj() @ self.vectors.T

    def probabilities(self, state) -> np.ndarray:
        amp = self.vectors.conj() @ np.asarray(state, dtype=complex)
        return np.abs(amp) ** 2


def measurement_povm(angles) -> DetectorPOVM:
    u = measurement_unitary(angles)
    # amplitude at D_k is <u_k|psi> = (U psi)_k, so u_k = conj(U[k])
    return DetectorPOVM(u.conj())


def bell_setting() -> np.ndarray:
    return np.array(BELL_ANGLES)


def bell_fidelities(angles=None) -> np.ndarray:
    """|<bell_k|povm_k>|^2 for each detector, with the documented labeling."""
    povm = measurement_povm(bell_setting() if angles is None else angles)
    return np.array(
        [abs(np.vdot(BELL_STATES[name], povm.vectors[k])) ** 2 for k, name in enumerate(BELL_DETECTOR_ORDER)]
    )


_HWP_GRID = (0.0, 22.5, 45.0, 67.5)
_QWP_GRID = (0.0, 45.0, 90.0, 135.0)


@lru_cache(maxsize=None)
def product_basis_angles(path_basis: str, pol_basis: str) -> tuple[float, ...]:
    """Measurement angles whose POVM is a product eigenbasis of
    ``path_basis (x) pol_basis`` (each one of X, Y, Z).

    Searches a 22.5/45 degree grid; the first hit in lexicographic angle
    order is returned, so the choice is deterministic.
    """
    ops = [matrix_of(path_basis + "I"), matrix_of("I" + pol_basis)]
    pair_angles = [(h, q) for h in _HWP_GRID for q in _QWP_GRID]
    pairs = np.array([hwp_jones(h) @ qwp_jones(q) for h, q in pair_angles])
    n = len(pairs)
    stage = np.zeros((n, n, 4, 4), dtype=complex)
    stage[:, :, :2, :2] = pairs[:, None]
    stage[:, :, 2:, 2:] = pairs[None, :]
    stage = stage.reshape(n * n, 4, 4)
    # all (pre, post) combinations, pre-major so flat index order is lexicographic
    us = np.einsum("bij,jk,akl->abil", stage, _PBD2, stage).reshape(-1, 4, 4)
    ok = np.ones(len(us), dtype=bool)
    for m in ops:
        d = np.einsum("nij,jk,nlk->nil", us, m, us.conj())
        off = np.abs(d - np.einsum("nii->ni", d)[:, :, None] * np.eye(4)).sum(axis=(1, 2))
        ok &= off < 1e-9
    hits = np.flatnonzero(ok)
    if not len(hits):
        raise ValueError(f"no grid setting realizes {path_basis}{pol_basis}")
    idx = int(hits[0])
    pre, post = divmod(idx, n * n)
    i4, i5 = divmod(pre, n)
    i6, i7 = divmod(post, n)
    return tuple(float(a) for k in (i4, i5, i6, i7) for a in pair_angles[k])


def _pair_for(target, source):
    """(h, q) with QWP(q) HWP(h) source parallel to target (both normalized)."""
    t = np.asarray(target, dtype=complex)
    t = t / np.linalg.norm(t)
    s1 = abs(t[0]) ** 2 - abs(t[1]) ** 2
    s2 = 2 * (t[0].conjugate() * t[1]).real
    s3 = 2 * (t[0].conjugate() * t[1]).imag
    azimuth = 0.5 * np.degrees(np.arctan2(s2, s1))
    chi = 0.5 * np.degrees(np.arcsin(np.clip(s3, -1.0, 1.0)))
    offset = 0.0 if abs(source[0]) > 0.5 else 90.0  # |H> or |V> input
    best = None
    for sign in (1.0, -1.0):
        # HWP turns the input into linear light at 2h; a QWP on the ellipse
        # azimuth then sets the ellipticity
        h = (azimuth + sign * chi + offset) / 2.0
        out = qwp_jones(azimuth) @ hwp_jones(h) @ source
        fid = abs(np.vdot(t, out)) ** 2
        if best is None or fid > best[0]:
            best = (fid, h % 180.0, azimuth % 180.0)
    return best[1], best[2]


def ansatz_angles(state) -> np.ndarray:
    """Six preparation angles whose ansatz equals ``state`` up to global phase."""
    psi = np.asarray(state, dtype=complex).reshape(4)
    psi = psi / np.linalg.norm(psi)
    a, b = psi[:2], psi[2:]
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    h2, q2 = _pair_for(a if na > 1e-12 else _H, _H)
    h3, q3 = _pair_for(b if nb > 1e-12 else _V, _V)
    pa = qwp_jones(q2) @ hwp_jones(h2) @ _H
    pb = qwp_jones(q3) @ hwp_jones(h3) @ _V
    # path amplitudes absorb the phases left on each polarization
    c = np.array([np.vdot(pa, a), np.vdot(pb, b)])
    h1, q1 = _pair_for(c, _H)
    return np.array([h1, q1, h2, q2, h3, q3])
