"""Naimark complements of unit-norm tight frames.

For a unit-norm tight frame Phi in F^m with n vectors, G = (m/n) Gram(Phi)
is an orthogonal projection of rank m. Its complement I - G has rank n - m
and factors as ((n - m)/n) Gram(Psi) for a unit-norm tight frame Psi in
F^(n-m). Off-diagonal Gramian entries transform as

    Gram(Psi)[j, l] = -(m / (n - m)) * Gram(Phi)[j, l],

so the coherence scales by the ratio of input to complement dimension.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .frames import Frame, FrameError, coherence, gramian, tightness_residual
from .linalg import fix_phases, jacobi_eigh

DEFAULT_TOL = 1e-8


@dataclass(frozen=True)
class NaimarkResult:
    complement: Frame
    input_coherence: float
    output_coherence: float
    gram_projection_residual: float

    def to_dict(self) -> dict:
        from .io import frame_to_dict

        return {
            "complement": frame_to_dict(self.complement),
            "input_coherence": self.input_coherence,
            "output_coherence": self.output_coherence,
            "gram_projection_residual": self.gram_projection_residual,
        }


def naimark_complement(frame: Frame, tol: float = DEFAULT_TOL) -> NaimarkResult:
    m, n = frame.m, frame.n
    if n == m:
        raise FrameError("complement dimension zero (n == m)")
    if n < m:
        raise FrameError(f"undersampled system: n={n} < m={m}")
    res = tightness_residual(frame)
    if res > tol:
        raise FrameError(
            f"Naimark requires a tight input: tightness residual {res:.3e} exceeds tol {tol:.1e}"
        )

    g = (m / n) * gramian(frame).entries
    w, v = jacobi_eigh(np.eye(n) - g)
    dist = np.minimum(np.abs(w), np.abs(w - 1.0))
    if dist.max() > tol:
        raise FrameError(
            f"Gramian is not a projection: eigenvalue {w[np.argmax(dist)]:.6g} "
            f"is {dist.max():.3e} from {{0, 1}}"
        )
    k = n - m
    if np.sum(np.abs(w - 1.0) <= tol) != k:
        raise FrameError(f"Gramian is not a projection: expected {k} unit eigenvalues")

    basis = fix_phases(v[:, :k])
    # rows of the eigenvector block become the complement's columns
    psi = np.sqrt(n / k) * basis.T
    psi = psi / np.linalg.norm(psi, axis=0)
    if frame.field == "R":
        psi = psi.real
    comp = Frame.from_array(psi, frame.field)
    return NaimarkResult(
        complement=comp,
        input_coherence=coherence(frame),
        output_coherence=coherence(comp),
        gram_projection_residual=float(dist.max()),
    )


def naimark_involution_check(frame: Frame, tol: float = DEFAULT_TOL) -> float:
    """Frobenius distance between Gram(Phi) and the Gramian of its double complement."""
    once = naimark_complement(frame, tol).complement
    twice = naimark_complement(once, tol).complement
    return float(np.linalg.norm(gramian(frame).entries - gramian(twice).entries))
