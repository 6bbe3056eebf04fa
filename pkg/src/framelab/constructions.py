"""Catalog of explicit frames and seeded random generators."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .frames import Frame, FrameError, _check_field
from .tightness import alternate

FAMILIES = (
    "orthonormal",
    "simplex",
    "regular_polygon",
    "pentagon",
    "icosahedron6",
    "mub_c2",
    "random_unit_norm",
    "random_tight",
)

RANDOM_TIGHT_MAX_ITER = 10_000


@dataclass(frozen=True)
class ConstructionSpec:
    family: str
    m: Optional[int] = None
    n: Optional[int] = None
    field: str = "R"
    seed: int = 0


def orthonormal(m: int, field: str = "R") -> Frame:
    if m < 1:
        raise FrameError("orthonormal basis needs m >= 1")
    return Frame(_check_field(field), np.eye(m))


def simplex(m: int) -> Frame:
    """m + 1 unit vectors in R^m with all pairwise inner products -1/m.

    The centred standard basis of R^(m+1) is written in the orthonormal
    Helmert basis of the hyperplane orthogonal to the all-ones vector.
    """
    if m < 1:
        raise FrameError("simplex needs m >= 1")
    k = m + 1
    helmert = np.zeros((m, k))
    for r in range(1, k):
        helmert[r - 1, :r] = 1.0
        helmert[r - 1, r] = -r
        helmert[r - 1] /= math.sqrt(r * (r + 1))
    centred = np.eye(k) - 1.0 / k
    cols = helmert @ centred
    return Frame.from_array(cols, "R", normalize=True)


def regular_polygon(n: int) -> Frame:
    if n < 3:
        raise FrameError(f"regular polygon needs n >= 3, got {n}")
    t = 2.0 * np.pi * np.arange(n) / n
    return Frame.from_array(np.vstack([np.cos(t), np.sin(t)]), "R")


def pentagon() -> Frame:
    return regular_polygon(5)


def icosahedron6() -> Frame:
    """Six pairwise non-antipodal vertices of the regular icosahedron.

    One vertex from each antipodal pair, the one whose first nonzero
    coordinate is positive.
    """
    g = (1.0 + math.sqrt(5.0)) / 2.0
    verts = [
        (0.0, 1.0, g),
        (0.0, 1.0, -g),
        (1.0, g, 0.0),
        (1.0, -g, 0.0),
        (g, 0.0, 1.0),
        (g, 0.0, -1.0),
    ]
    return Frame.from_array(np.array(verts).T, "R", normalize=True)


def mub_c2() -> Frame:
    """The three mutually unbiased bases of C^2 (a complete set)."""
    r = 1.0 / math.sqrt(2.0)
    cols = np.array(
        [
            [1, 0],
            [0, 1],
            [r, r],
            [r, -r],
            [r, 1j * r],
            [r, -1j * r],
        ],
        dtype=complex,
    ).T
    return Frame.from_array(cols, "C", normalize=True)


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed) % 2**64))


def _random_array(m: int, n: int, field: str, seed: int) -> np.ndarray:
    _check_field(field)
    rng = _rng(seed)
    a = rng.standard_normal((m, n))
    if field == "C":
        a = a + 1j * rng.standard_normal((m, n))
    return a


def random_unit_norm(m: int, n: int, field: str = "R", seed: int = 0) -> Frame:
    """n independent uniform points on the unit sphere of F^m."""
    if m < 1 or n < 1:
        raise FrameError("random frame needs m, n >= 1")
    return Frame.from_array(_random_array(m, n, field, seed), field, normalize=True)


def random_tight(m: int, n: int, field: str = "R", seed: int = 0, tol: float = 1e-10) -> Frame:
    """A unit-norm tight frame reached by alternating projections from a random start."""
    if n < m or m < 1:
        raise FrameError(f"tight frame needs n >= m >= 1, got m={m}, n={n}")
    a = _random_array(m, n, field, seed)
    a, res, _ = alternate(a, tol=tol, max_iter=RANDOM_TIGHT_MAX_ITER)
    if res > 1e-8:
        raise FrameError(f"random_tight did not converge: tightness residual {res:.3e}")
    return Frame.from_array(a, field)


def construct(spec: ConstructionSpec) -> Frame:
    f = spec.family
    if f == "orthonormal":
        return orthonormal(spec.m, spec.field)
    if f == "simplex":
        return simplex(spec.m)
    if f == "regular_polygon":
        return regular_polygon(spec.n)
    if f == "pentagon":
        return pentagon()
    if f == "icosahedron6":
        return icosahedron6()
    if f == "mub_c2":
        return mub_c2()
    if f == "random_unit_norm":
        return random_unit_norm(spec.m, spec.n, spec.field, spec.seed)
    if f == "random_tight":
        return random_tight(spec.m, spec.n, spec.field, spec.seed)
    raise FrameError(f"unknown family {f!r}")
