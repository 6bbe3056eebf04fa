"""Projections onto the unit-norm tight frames.

The tight frames with frame operator (n/m) I are reached from a full-rank
synthesis matrix by its polar factor; unit norms are restored by column
scaling. Alternating the two is the feasibility mechanism used by the
random constructions and the tight-mode solver.
"""
from __future__ import annotations

import numpy as np

from .frames import Frame, FrameError, RANK_TOL


def polar_tight(a: np.ndarray) -> np.ndarray:
    """sqrt(n/m) (A A^*)^{-1/2} A, computed from the thin SVD."""
    m, n = a.shape
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    if s[-1] <= RANK_TOL * max(1.0, s[0]):
        raise FrameError("cannot project rank-deficient frame")
    return np.sqrt(n / m) * (u @ vh)


def normalize_columns(a: np.ndarray) -> np.ndarray:
    return a / np.linalg.norm(a, axis=0)


def residual_of(a: np.ndarray) -> float:
    m, n = a.shape
    return float(np.linalg.norm(a @ a.conj().T - (n / m) * np.eye(m)))


def tight_projection(frame: Frame) -> Frame:
    """One alternation: polar tight factor, then column renormalization."""
    a = normalize_columns(polar_tight(frame.matrix()))
    return Frame.from_array(a, frame.field)


def alternate(a: np.ndarray, tol: float = 1e-10, max_iter: int = 200):
    """Alternate polar and renormalization steps on a raw array.

    Returns ``(array, residual, iterations)``; the array always has unit
    columns. Stops as soon as the tightness residual is at most ``tol``.
    """
    a = normalize_columns(a)
    res = residual_of(a)
    it = 0
    while res > tol and it < max_iter:
        a = normalize_columns(polar_tight(a))
        res = residual_of(a)
        it += 1
    return a, res, it
