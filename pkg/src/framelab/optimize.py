"""Multi-start coherence minimization.

Two feasible sets are supported: all unit-norm frames ("unconstrained"
mode, whose optimum is the Grassmannian constant) and unit-norm tight
frames ("tight" mode, the 1-Grassmannian constant).

The max over pairs is replaced by the smooth surrogate

    f_p(Phi) = ( sum_{j<l} |<phi_j, phi_l>|^(2p) )^(1/(2p)),

which satisfies mu <= f_p <= mu * (n(n-1)/2)^(1/(2p)), and p is increased
along a continuation schedule. Each stage runs projected gradient descent
with backtracking on the product of spheres. In tight mode the gradient
is also projected onto the tangent space of the tight constraint, the
iterate is pulled back by a polar step every few iterations, and every
stage ends with an alternating-projection cleanup onto the unit-norm
tight frames.
"""
from __future__ import annotations

import dataclasses
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .constructions import orthonormal, random_tight, random_unit_norm
from .frames import (
    Frame,
    FrameError,
    _check_field,
    coherence,
    orthoplex_bound,
    tightness_residual,
    welch_bound,
)
from .tightness import alternate, normalize_columns, polar_tight, tight_projection

__all__ = [
    "SolverConfig",
    "SolverReport",
    "RestartResult",
    "smoothed_coherence",
    "smoothed_coherence_grad",
    "tight_projection",
    "minimize_coherence",
    "estimate_constants",
]

DEFAULT_SCHEDULE = (2, 4, 8, 16, 32, 64, 128)
MODES = ("unconstrained", "tight")
MAX_HALVINGS = 30
FEASIBLE_TOL = 1e-8


@dataclass(frozen=True)
class SolverConfig:
    m: int
    n: int
    field: str = "R"
    mode: str = "unconstrained"
    restarts: int = 50
    max_iters: int = 2000
    stage_iters: int = 400
    seed: int = 0
    smoothing_schedule: tuple = DEFAULT_SCHEDULE
    step_size: float = 0.1
    tight_projection_period: int = 10
    cleanup_iters: int = 200
    convergence_eps: float = 1e-10
    workers: Optional[int] = None

    def __post_init__(self):
        _check_field(self.field)
        if self.mode not in MODES:
            raise FrameError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        if self.m < 1 or self.n < self.m or self.n < 2:
            raise FrameError(f"solver needs n >= m >= 1 and n >= 2, got m={self.m}, n={self.n}")
        for name in ("restarts", "max_iters", "stage_iters", "tight_projection_period"):
            if getattr(self, name) < 1:
                raise FrameError(f"{name} must be positive")
        if self.cleanup_iters < 0:
            raise FrameError("cleanup_iters must be non-negative")
        sched = tuple(float(p) for p in self.smoothing_schedule)
        if not sched or sched[0] < 2 or any(b <= a for a, b in zip(sched, sched[1:])):
            raise FrameError("smoothing schedule must be strictly increasing with every p >= 2")
        if not self.step_size > 0:
            raise FrameError("step_size must be positive")
        object.__setattr__(self, "smoothing_schedule", tuple(self.smoothing_schedule))

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["smoothing_schedule"] = list(self.smoothing_schedule)
        return d


@dataclass
class RestartResult:
    index: int
    seed: int
    coherence: float
    iterations: int
    converged: bool
    failed: bool = False
    message: str = ""
    frame: Optional[Frame] = None
    trace: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "seed": self.seed,
            "coherence": self.coherence,
            "iterations": self.iterations,
            "converged": self.converged,
            "failed": self.failed,
            "message": self.message,
        }


@dataclass
class SolverReport:
    config: SolverConfig
    best_frame: Frame
    best_coherence: float
    best_restart: int
    tightness_residual: float
    per_restart: list
    trace: list
    welch: float
    orthoplex: Optional[float]

    @property
    def mode(self) -> str:
        return self.config.mode

    def to_dict(self, include_trace: bool = False) -> dict:
        from .io import frame_to_dict

        d = {
            "mode": self.config.mode,
            "config": self.config.to_dict(),
            "best_coherence": self.best_coherence,
            "best_restart": self.best_restart,
            "tightness_residual": self.tightness_residual,
            "welch": self.welch,
            "orthoplex": self.orthoplex,
            "best_frame": frame_to_dict(self.best_frame),
            "per_restart": [r.to_dict() for r in self.per_restart],
        }
        if include_trace:
            d["trace"] = list(self.trace)
        return d


# -- objective -------------------------------------------------------------


def _value_grad(a: np.ndarray, p: float):
    """Smoothed coherence of the columns of ``a`` and its Euclidean gradient.

    Entries are scaled by the current max before exponentiation so large p
    cannot overflow or underflow to zero.
    """
    g = a.conj().T @ a
    absg = np.abs(g)
    np.fill_diagonal(absg, 0.0)
    mu = absg.max()
    if mu == 0.0:
        return 0.0, np.zeros_like(a)
    r = absg / mu
    s = 0.5 * np.sum(r ** (2 * p))
    value = mu * s ** (1.0 / (2 * p))
    h = r ** (2 * p - 2) * g
    np.fill_diagonal(h, 0.0)
    grad = (s ** (1.0 / (2 * p) - 1.0) / mu) * (a @ h)
    return float(value), grad


def smoothed_coherence(frame: Frame, p: float) -> float:
    if p < 2:
        raise FrameError("smoothing exponent p must be >= 2")
    if frame.n < 2:
        raise FrameError("coherence undefined for a single vector")
    return _value_grad(frame.matrix(), p)[0]


def smoothed_coherence_grad(frame: Frame, p: float) -> np.ndarray:
    """Euclidean gradient of the smoothed coherence.

    For a complex frame the real and imaginary parts of the result are the
    partial derivatives with respect to the real and imaginary parts of the
    entries.
    """
    return _value_grad(frame.matrix(), p)[1]


# -- feasible directions ---------------------------------------------------


def _sphere_project(a: np.ndarray, d: np.ndarray) -> np.ndarray:
    return d - a * np.real(np.sum(a.conj() * d, axis=0))


def _to_real(x: np.ndarray) -> np.ndarray:
    if np.iscomplexobj(x):
        return np.concatenate([x.real.ravel(), x.imag.ravel()])
    return x.ravel()


def _tight_tangent_project(a: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Project d onto the tangent space of the unit-norm tight frames at a.

    The normal space is spanned by column scalings a diag(lambda) and left
    products S a with S Hermitian (the gradients of the norm and frame
    operator constraints); it is removed by least squares.
    """
    m, n = a.shape
    cplx = np.iscomplexobj(a)
    normals = []
    for j in range(n):
        e = np.zeros_like(a)
        e[:, j] = a[:, j]
        normals.append(e)
    for i in range(m):
        for k in range(i, m):
            e = np.zeros_like(a)
            e[i] += a[k]
            if k != i:
                e[k] += a[i]
            normals.append(e)
            if cplx and k != i:
                e = np.zeros_like(a)
                e[i] += 1j * a[k]
                e[k] -= 1j * a[i]
                normals.append(e)
    basis = np.column_stack([_to_real(e) for e in normals])
    coef, *_ = np.linalg.lstsq(basis, _to_real(d), rcond=1e-12)
    out = d.copy()
    for c, e in zip(coef, normals):
        out = out - c * e
    return out


# -- single restart --------------------------------------------------------


def _initial(cfg: SolverConfig, seed: int) -> np.ndarray:
    if cfg.mode == "tight":
        return random_tight(cfg.m, cfg.n, cfg.field, seed).matrix()
    return random_unit_norm(cfg.m, cfg.n, cfg.field, seed).matrix()


def _coh(a: np.ndarray) -> float:
    g = np.abs(a.conj().T @ a)
    np.fill_diagonal(g, 0.0)
    return min(float(g.max()), 1.0)


def _run_restart(cfg: SolverConfig, index: int) -> RestartResult:
    seed = (cfg.seed + index) % 2**64
    tight = cfg.mode == "tight"
    try:
        a = _initial(cfg, seed)
    except FrameError as exc:
        return RestartResult(index, seed, float("inf"), 0, False, True, str(exc))

    best_a = a
    best = _coh(a)
    trace = []
    iters = 0
    converged = False

    def project_dir(x, grad):
        d = _sphere_project(x, grad)
        return _tight_tangent_project(x, d) if tight else d

    try:
        for p in cfg.smoothing_schedule:
            if iters >= cfg.max_iters:
                break
            t = cfg.step_size
            f, grad = _value_grad(a, p)
            stage_converged = False
            since_projection = 0
            for _ in range(cfg.stage_iters):
                if iters >= cfg.max_iters:
                    break
                d = project_dir(a, grad)
                accepted = False
                for _h in range(MAX_HALVINGS + 1):
                    cand = normalize_columns(a - t * d)
                    fc, gc = _value_grad(cand, p)
                    if fc < f:
                        accepted = True
                        break
                    t *= 0.5
                if not accepted:
                    stage_converged = True
                    break
                change = float(np.linalg.norm(cand - a))
                a, f, grad = cand, fc, gc
                iters += 1
                t = min(2.0 * t, cfg.step_size)
                if tight:
                    since_projection += 1
                    if since_projection >= cfg.tight_projection_period:
                        a = normalize_columns(polar_tight(a))
                        f, grad = _value_grad(a, p)
                        since_projection = 0
                else:
                    mu = _coh(a)
                    if mu < best:
                        best, best_a = mu, a
                trace.append(best)
                if change < cfg.convergence_eps:
                    stage_converged = True
                    break
            if tight:
                clean, res, _ = alternate(a, tol=1e-10, max_iter=cfg.cleanup_iters)
                if res <= FEASIBLE_TOL:
                    a = clean
                    mu = _coh(a)
                    if mu < best:
                        best, best_a = mu, a
                    if trace:
                        trace[-1] = best
            converged = stage_converged
    except FrameError as exc:
        # rank collapse inside a polar step
        return RestartResult(index, seed, float("inf"), iters, False, True, str(exc), trace=trace)

    frame = Frame.from_array(best_a, cfg.field)
    return RestartResult(index, seed, coherence(frame), iters, converged, frame=frame, trace=trace)


def _workers(cfg: SolverConfig) -> int:
    if cfg.workers is not None:
        return max(1, cfg.workers)
    env = os.environ.get("FRAMELAB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def minimize_coherence(cfg: SolverConfig) -> SolverReport:
    """Best frame over ``cfg.restarts`` independent descents.

    Results are merged in restart order, ties within 1e-12 going to the
    lowest index, so the report does not depend on the worker count.
    """
    welch = welch_bound(cfg.n, cfg.m)
    ortho = orthoplex_bound(cfg.n, cfg.m, cfg.field)
    if cfg.n == cfg.m:
        basis = orthonormal(cfg.m, cfg.field)
        runs = [RestartResult(0, cfg.seed, 0.0, 0, True, frame=basis, trace=[0.0])]
        return SolverReport(cfg, basis, 0.0, 0, tightness_residual(basis), runs, [0.0], welch, ortho)

    workers = _workers(cfg)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            runs = list(pool.map(lambda i: _run_restart(cfg, i), range(cfg.restarts)))
    else:
        runs = [_run_restart(cfg, i) for i in range(cfg.restarts)]

    best_run = None
    for r in runs:
        if r.failed:
            continue
        if best_run is None or r.coherence < best_run.coherence - 1e-12:
            best_run = r
    if best_run is None:
        raise RuntimeError("every restart failed: " + "; ".join(r.message for r in runs))

    trace = []
    running = float("inf")
    for r in runs:
        if r.failed:
            continue
        for v in r.trace:
            running = min(running, v)
            trace.append(running)
    if trace:
        trace[-1] = min(trace[-1], best_run.coherence)

    frame = best_run.frame
    return SolverReport(
        config=cfg,
        best_frame=frame,
        best_coherence=best_run.coherence,
        best_restart=best_run.index,
        tightness_residual=tightness_residual(frame),
        per_restart=runs,
        trace=trace,
        welch=welch,
        orthoplex=ortho,
    )


def estimate_constants(m: int, n: int, field: str = "R", budget: int = 50, seed: int = 0, **kwargs):
    """Numerical estimates of the Grassmannian and 1-Grassmannian constants.

    Every tight frame is a unit-norm frame, so the Grassmannian estimate
    is the smaller of the two runs.
    """
    free = minimize_coherence(SolverConfig(m, n, field, "unconstrained", budget, seed=seed, **kwargs))
    tight = minimize_coherence(SolverConfig(m, n, field, "tight", budget, seed=seed, **kwargs))
    mu = tight.best_coherence
    mu_bar = min(free.best_coherence, mu)
    return mu_bar, mu, free, tight
