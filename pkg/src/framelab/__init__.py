"""Construction, analysis and coherence optimization of finite unit-norm frames."""
from .constructions import (
    icosahedron6,
    mub_c2,
    orthonormal,
    pentagon,
    random_tight,
    random_unit_norm,
    regular_polygon,
    simplex,
)
from .frames import (
    AngleSet,
    Certificate,
    Frame,
    FrameError,
    Gramian,
    angle_set,
    certify,
    coherence,
    eq1_deviation,
    gramian,
    orthoplex_bound,
    repair_span,
    tightness_residual,
    unitary_apply,
    welch_bound,
)
from .naimark import NaimarkResult, naimark_complement, naimark_involution_check
from .optimize import (
    SolverConfig,
    SolverReport,
    estimate_constants,
    minimize_coherence,
    smoothed_coherence,
    tight_projection,
)

__version__ = "0.1.0"
