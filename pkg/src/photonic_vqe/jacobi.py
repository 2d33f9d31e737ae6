"""Cyclic Jacobi eigensolver for small dense Hermitian matrices.

A complex Hermitian ``A = B + iC`` is embedded as the real symmetric
``[[B, -C], [C, B]]``; every eigenvalue of ``A`` appears twice in the
embedding and a real eigenvector ``(u, v)`` maps back to ``u + iv``.
"""

import numpy as np


def _sym_jacobi(a, tol=1e-14, max_sweeps=100):
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.tril(a, -1) ** 2))
        if off <= tol * max(1.0, np.abs(np.diag(a)).max()):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # rotate rows/cols p, q
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        raise RuntimeError("Jacobi sweeps did not converge")
    return np.diag(a).copy(), v


def eigh_jacobi(h, tol=1e-14):
    """Eigenvalues (ascending) and orthonormal eigenvectors of Hermitian ``h``.

    Returns ``(w, V)`` with ``h @ V[:, k] == w[k] * V[:, k]``.
    """
    h = np.asarray(h, dtype=complex)
    n = h.shape[0]
    if h.shape != (n, n):
        raise ValueError("matrix must be square")
    if not np.allclose(h, h.conj().T, atol=1e-12):
        raise ValueError("matrix is not Hermitian")
    b, c = h.real, h.imag
    big = np.block([[b, -c], [c, b]])
    w2, v2 = _sym_jacobi(big, tol=tol)
    order = np.argsort(w2, kind="stable")
    w2, v2 = w2[order], v2[:, order]

    # Each eigenvalue is doubled; pick n complex vectors by Gram-Schmidt.
    vecs, vals = [], []
    for k in range(2 * n):
        z = v2[:n, k] + 1j * v2[n:, k]
        for u in vecs:
            z = z - np.vdot(u, z) * u
        nz = np.linalg.norm(z)
        if nz > 1e-6:
            vecs.append(z / nz)
            vals.append(w2[k])
        if len(vecs) == n:
            break
    V = np.column_stack(vecs)
    w = np.real(np.einsum("ik,ij,jk->k", V.conj(), h, V))
    return w, V
