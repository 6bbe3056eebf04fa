"""Small dense linear-algebra kernels.

``jacobi_eigh`` is a cyclic Jacobi eigensolver for complex Hermitian
matrices. It is slow compared to LAPACK but fully deterministic: the
rotation order is fixed (row-cyclic over p < q) and the output is sorted
by descending eigenvalue.
"""
from __future__ import annotations

import numpy as np

JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def jacobi_eigh(a, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(w, v)`` with eigenvalues ``w`` in descending order and the
    matching orthonormal eigenvectors as the columns of ``v``, so that
    ``a @ v ≈ v @ diag(w)``.

    Iteration stops once the off-diagonal Frobenius norm is at most
    ``tol * max(1, ||a||_F)``.
    """
    a = np.array(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("jacobi_eigh needs a square matrix")
    if not np.allclose(a, a.conj().T, atol=1e-10, rtol=0.0):
        raise ValueError("jacobi_eigh needs a Hermitian matrix")
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    threshold = tol * max(1.0, float(np.linalg.norm(a)))

    for _ in range(max_sweeps):
        if _off_norm(a) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = a[p, q]
                beta = abs(b)
                if beta == 0.0:
                    continue
                # phase first, then a real symmetric rotation
                phase = b / beta
                app = a[p, p].real
                aqq = a[q, q].real
                theta = 0.5 * np.arctan2(2.0 * beta, aqq - app)
                c, s = np.cos(theta), np.sin(theta)
                u = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ u
                a[idx, :] = u.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ u
    else:
        if _off_norm(a) > threshold:
            raise RuntimeError(
                f"Jacobi iteration did not converge in {max_sweeps} sweeps "
                f"(off-diagonal norm {_off_norm(a):.3e})"
            )

    w = np.diag(a).real.copy()
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def fix_phases(v: np.ndarray, eps: float = 1e-12) -> np.ndarray:
    """Rotate each column so its first entry of modulus > eps is real positive."""
    v = np.array(v, dtype=complex)
    for k in range(v.shape[1]):
        col = v[:, k]
        nz = np.flatnonzero(np.abs(col) > eps)
        if nz.size:
            z = col[nz[0]]
            v[:, k] = col * (abs(z) / z)
    return v


def numerical_rank(a: np.ndarray, tol: float = 1e-10) -> int:
    """Rank as the number of singular values above ``tol * max(1, s_max)``."""
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    return int(np.sum(s > tol * max(1.0, s[0])))
