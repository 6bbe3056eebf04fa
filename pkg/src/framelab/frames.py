"""Frames, Gramians and the exact (non-iterative) analyzers.

A frame is stored as its m x n synthesis matrix, one frame vector per
column. Inner products conjugate the second argument,

    <x, y> = sum_i x_i * conj(y_i),

so the Gramian entry (j, l) is <phi_j, phi_l> and the Gramian matrix is
``Phi.T @ Phi.conj()``, the entrywise conjugate of ``Phi^H Phi``. Absolute
values, and therefore coherence and angle sets, do not depend on the
convention.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from .linalg import numerical_rank

UNIT_NORM_TOL = 1e-12
TIGHT_TOL = 1e-10
RANK_TOL = 1e-10
ANGLE_TOL = 1e-8
CERTIFY_TOL = 1e-6

FIELDS = ("R", "C")


class FrameError(ValueError):
    """Raised when an input violates a precondition of a frame operation."""


def _check_field(field: str) -> str:
    if field not in FIELDS:
        raise FrameError(f"unknown scalar field {field!r}; expected 'R' or 'C'")
    return field


@dataclass(frozen=True, eq=False)
class Frame:
    """A finite system of unit vectors in F^m, stored as an m x n matrix.

    ``columns`` is always complex128; for ``field == "R"`` its imaginary part
    is identically zero. The array is read-only.
    """

    field: str
    columns: np.ndarray

    def __post_init__(self):
        _check_field(self.field)
        cols = np.array(self.columns, dtype=complex)
        if cols.ndim != 2 or cols.shape[0] < 1 or cols.shape[1] < 1:
            raise FrameError(f"frame matrix must be m x n with m, n >= 1, got shape {cols.shape}")
        if not np.all(np.isfinite(cols)):
            raise FrameError("frame entries must be finite")
        if self.field == "R" and np.any(cols.imag != 0.0):
            raise FrameError("real frame has nonzero imaginary parts")
        norms = np.linalg.norm(cols, axis=0)
        bad = np.flatnonzero(np.abs(norms - 1.0) > UNIT_NORM_TOL)
        if bad.size:
            j = int(bad[0])
            raise FrameError(f"column {j} has norm {norms[j]!r}, expected 1")
        cols.setflags(write=False)
        object.__setattr__(self, "columns", cols)

    @classmethod
    def from_array(cls, a, field: Optional[str] = None, normalize: bool = False) -> "Frame":
        """Build a frame from any m x n array.

        The field defaults to "R" when the array has no imaginary part.
        With ``normalize=True`` columns are scaled to unit norm first.
        """
        a = np.array(a, dtype=complex)
        if a.ndim == 1:
            a = a[np.newaxis, :]
        if field is None:
            field = "R" if not np.any(a.imag) else "C"
        if normalize:
            norms = np.linalg.norm(a, axis=0)
            if np.any(norms == 0.0):
                raise FrameError("cannot normalize a zero column")
            a = a / norms
        if field == "R":
            a = a.real.astype(complex)
        return cls(field, a)

    @property
    def m(self) -> int:
        return self.columns.shape[0]

    @property
    def n(self) -> int:
        return self.columns.shape[1]

    def matrix(self) -> np.ndarray:
        """Writable copy of the synthesis matrix (real dtype for real frames)."""
        if self.field == "R":
            return self.columns.real.copy()
        return self.columns.copy()

    def column(self, j: int) -> np.ndarray:
        return self.columns[:, j]

    def delete(self, j: int) -> "Frame":
        return Frame(self.field, np.delete(self.columns, j, axis=1))

    def __eq__(self, other):
        if not isinstance(other, Frame):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.columns, other.columns)

    def __hash__(self):
        return hash((self.field, self.columns.shape, self.columns.tobytes()))

    def __repr__(self):
        return f"Frame(field={self.field!r}, m={self.m}, n={self.n})"


@dataclass(frozen=True, eq=False)
class Gramian:
    entries: np.ndarray

    def __post_init__(self):
        g = np.array(self.entries, dtype=complex)
        g.setflags(write=False)
        object.__setattr__(self, "entries", g)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def off_diagonal_abs(self) -> np.ndarray:
        """Absolute values of the strictly upper triangle, row-major order."""
        iu = np.triu_indices(self.n, k=1)
        return np.abs(self.entries[iu])


@dataclass(frozen=True)
class AngleSet:
    values: tuple
    multiplicities: tuple

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class Certificate:
    m: int
    n: int
    field: str
    tol: float
    coherence: float
    welch: float
    orthoplex: Optional[float]
    tightness_residual: float
    tight_constant: float
    is_tight: bool
    is_equiangular: bool
    is_etf: bool
    meets_welch: Optional[bool]
    meets_orthoplex: Optional[bool]
    eq1_max_deviation: float
    angle_count: int = dc_field(default=0)

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def gramian(frame: Frame) -> Gramian:
    cols = frame.columns
    return Gramian(cols.T @ cols.conj())


def _require_pairs(frame: Frame):
    if frame.n < 2:
        raise FrameError("coherence undefined for a single vector")


def coherence(frame: Frame) -> float:
    """Largest absolute inner product between two distinct frame vectors."""
    _require_pairs(frame)
    mu = float(gramian(frame).off_diagonal_abs().max())
    return min(max(mu, 0.0), 1.0)


def angle_set(frame: Frame, tol: float = ANGLE_TOL) -> AngleSet:
    """Distinct absolute pairwise inner products, merged within ``tol``.

    Each cluster is represented by its largest member, so the last value is
    exactly the coherence.
    """
    _require_pairs(frame)
    vals = np.sort(np.minimum(gramian(frame).off_diagonal_abs(), 1.0))
    groups: list[list[float]] = [[float(vals[0])]]
    for v in vals[1:]:
        if v - groups[-1][-1] <= tol:
            groups[-1].append(float(v))
        else:
            groups.append([float(v)])
    return AngleSet(tuple(g[-1] for g in groups), tuple(len(g) for g in groups))


def frame_operator(frame: Frame) -> np.ndarray:
    cols = frame.columns
    return cols @ cols.conj().T


def tightness_residual(frame: Frame) -> float:
    """Frobenius distance from Phi Phi^* to (n/m) I."""
    s = frame_operator(frame)
    return float(np.linalg.norm(s - (frame.n / frame.m) * np.eye(frame.m)))


def eq1_deviation(frame: Frame) -> float:
    """max_j | sum_l |<phi_j, phi_l>|^2 - n/m |, which vanishes on unit-norm tight frames."""
    sq = np.abs(gramian(frame).entries) ** 2
    return float(np.max(np.abs(sq.sum(axis=1) - frame.n / frame.m)))


def welch_bound(n: int, m: int) -> float:
    if n < m:
        raise FrameError(f"undersampled system: n={n} < m={m}")
    if m < 1 or n < 2:
        raise FrameError(f"Welch bound needs m >= 1 and n >= 2, got n={n}, m={m}")
    return math.sqrt((n - m) / (m * (n - 1)))


def orthoplex_threshold(m: int, field: str) -> int:
    _check_field(field)
    return m * (m + 1) // 2 if field == "R" else m * m


def orthoplex_bound(n: int, m: int, field: str) -> Optional[float]:
    """1/sqrt(m) when n exceeds the threshold d, otherwise None (not applicable)."""
    if n < m or m < 1:
        raise FrameError(f"orthoplex bound needs n >= m >= 1, got n={n}, m={m}")
    if n > orthoplex_threshold(m, field):
        return 1.0 / math.sqrt(m)
    return None


def certify(frame: Frame, tol: float = CERTIFY_TOL) -> Certificate:
    mu = coherence(frame)
    n, m = frame.n, frame.m
    welch = welch_bound(n, m)
    ortho = orthoplex_bound(n, m, frame.field)
    residual = tightness_residual(frame)
    offdiag = gramian(frame).off_diagonal_abs()
    is_tight = residual <= tol
    is_equiangular = bool(offdiag.max() - offdiag.min() <= tol)
    return Certificate(
        m=m,
        n=n,
        field=frame.field,
        tol=tol,
        coherence=mu,
        welch=welch,
        orthoplex=ortho,
        tightness_residual=residual,
        tight_constant=n / m,
        is_tight=is_tight,
        is_equiangular=is_equiangular,
        is_etf=is_tight and is_equiangular,
        # at n == m the Welch constant is 0 and says nothing
        meets_welch=None if n == m else abs(mu - welch) <= tol,
        meets_orthoplex=None if ortho is None else abs(mu - ortho) <= tol,
        eq1_max_deviation=eq1_deviation(frame),
        angle_count=len(angle_set(frame)),
    )


def unitary_apply(frame: Frame, u) -> Frame:
    u = np.asarray(u, dtype=complex)
    if u.shape != (frame.m, frame.m):
        raise FrameError(f"expected a {frame.m}x{frame.m} matrix, got {u.shape}")
    if np.linalg.norm(u.conj().T @ u - np.eye(frame.m)) > 1e-10:
        raise FrameError("matrix is not unitary")
    if frame.field == "R" and np.any(u.imag != 0.0):
        raise FrameError("complex matrix applied to a real frame")
    return Frame(frame.field, u @ frame.columns)


def _first_coherent_pair(frame: Frame) -> tuple[int, int]:
    g = np.abs(gramian(frame).entries)
    mu = max(g[j, l] for j, l in itertools.combinations(range(frame.n), 2))
    for j, l in itertools.combinations(range(frame.n), 2):
        if g[j, l] == mu:
            return j, l
    raise AssertionError("unreachable")


def repair_span(frame: Frame, tol: float = RANK_TOL) -> Frame:
    """Make a rank-deficient unit-norm system span F^m without raising its coherence.

    The lexicographically first pair attaining the coherence is kept, a
    spanning set of the current span H is completed greedily by pivoted
    column selection, and the k = m - dim H remaining columns whose
    residual (after projecting out the kept pair) is smallest are replaced
    by an orthonormal basis of the orthogonal complement of H.
    """
    phi = frame.columns
    m, n = frame.m, frame.n
    rank = numerical_rank(phi, tol)
    if rank == m:
        return frame
    k = m - rank
    if n < 2:
        raise FrameError("Remark hypothesis violated: need at least two vectors")

    j0, l0 = _first_coherent_pair(frame)
    fixed = [j0, l0]

    # orthonormal basis Q of span{phi_j0, phi_l0}
    q = np.zeros((m, 0), dtype=complex)
    for j in fixed:
        r = phi[:, j] - q @ (q.conj().T @ phi[:, j])
        if np.linalg.norm(r) > tol:
            q = np.column_stack([q, r / np.linalg.norm(r)])
    pair_residual = np.linalg.norm(phi - q @ (q.conj().T @ phi), axis=0)

    # pivoted completion to a basis of H
    while q.shape[1] < rank:
        res = phi - q @ (q.conj().T @ phi)
        norms = np.linalg.norm(res, axis=0)
        norms[fixed] = -1.0
        p = int(np.argmax(norms))
        fixed.append(p)
        q = np.column_stack([q, res[:, p] / norms[p]])

    free = [j for j in range(n) if j not in fixed]
    if len(free) < k:
        raise FrameError(
            f"Remark hypothesis violated: rank {rank} < m={m} and only {len(free)} "
            f"replaceable vectors for a {k}-dimensional complement"
        )
    free.sort(key=lambda j: (pair_residual[j], j))
    replace = sorted(free[:k])

    # orthonormal basis of H-perp from the full SVD of the span basis
    basis = q.real if frame.field == "R" else q
    u, _, _ = np.linalg.svd(basis, full_matrices=True)
    perp = u[:, q.shape[1]:]

    out = np.array(phi)
    out[:, replace] = perp
    return Frame(frame.field, out)
