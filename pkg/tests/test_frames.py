import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from framelab import (
    Frame,
    FrameError,
    angle_set,
    certify,
    coherence,
    eq1_deviation,
    gramian,
    icosahedron6,
    mub_c2,
    orthonormal,
    orthoplex_bound,
    pentagon,
    random_tight,
    random_unit_norm,
    repair_span,
    simplex,
    tightness_residual,
    unitary_apply,
    welch_bound,
)
from framelab.linalg import numerical_rank

from conftest import e, frame_params


def brute_abs_products(frame):
    """All |<phi_j, phi_l>|, j < l, by explicit summation over coordinates."""
    cols = frame.columns
    out = []
    for j, l in itertools.combinations(range(frame.n), 2):
        s = sum(cols[i, j] * np.conj(cols[i, l]) for i in range(frame.m))
        out.append(abs(s))
    return out


def random_unitary(m, seed, field="R"):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((m, m))
    if field == "C":
        x = x + 1j * rng.standard_normal((m, m))
    q, r = np.linalg.qr(x)
    return q * (np.diag(r) / np.abs(np.diag(r)))


# -- Frame validation ------------------------------------------------------


def test_frame_rejects_non_unit_columns():
    with pytest.raises(FrameError):
        Frame("R", np.array([[1.0, 2.0], [0.0, 0.0]]))


def test_real_frame_rejects_imaginary_parts():
    with pytest.raises(FrameError):
        Frame("R", np.array([[1.0, 1j]]))


def test_frame_is_read_only():
    f = pentagon()
    with pytest.raises(ValueError):
        f.columns[0, 0] = 2.0


# -- gramian ---------------------------------------------------------------


def test_gramian_identity_basis():
    np.testing.assert_array_equal(gramian(orthonormal(2)).entries, np.eye(2))


def test_gramian_pentagon_entries():
    g = gramian(pentagon()).entries
    for j in range(5):
        for l in range(5):
            assert g[j, l] == pytest.approx(math.cos(2 * math.pi * (j - l) / 5), abs=1e-12)


def test_gramian_conjugates_second_argument():
    f = Frame.from_array(np.array([[1, 1j], [0, 1]]) / np.array([1, math.sqrt(2)]), "C")
    g = gramian(f).entries
    # <phi_0, phi_1> = 1 * conj(i / sqrt 2)
    assert g[0, 1] == pytest.approx(-1j / math.sqrt(2))
    assert g[1, 0] == pytest.approx(np.conj(g[0, 1]))


@settings(max_examples=25, deadline=None)
@given(frame_params())
def test_gramian_unitary_invariance(params):
    m, n, field, seed = params
    f = random_unit_norm(m, n, field, seed)
    g2 = gramian(unitary_apply(f, random_unitary(m, seed, field))).entries
    np.testing.assert_allclose(g2, gramian(f).entries, atol=1e-12)


# -- coherence and angle sets ----------------------------------------------


def test_coherence_examples():
    assert coherence(orthonormal(4)) == 0.0
    assert coherence(pentagon()) == pytest.approx(math.cos(math.pi / 5), abs=1e-12)
    assert coherence(icosahedron6()) == pytest.approx(1 / math.sqrt(5), abs=1e-12)


def test_coherence_single_vector():
    with pytest.raises(FrameError, match="single vector"):
        coherence(Frame.from_array([[1.0], [0.0]]))


def test_angle_set_icosahedron():
    a = angle_set(icosahedron6())
    assert len(a) == 1
    assert a.values[0] == pytest.approx(1 / math.sqrt(5), abs=1e-12)
    assert a.multiplicities == (15,)


def test_angle_set_pentagon_brute_force():
    vals = brute_abs_products(pentagon())
    distinct = sorted({round(v, 9) for v in vals})
    a = angle_set(pentagon())
    assert len(distinct) == 2
    np.testing.assert_allclose(a.values, distinct, atol=1e-9)
    np.testing.assert_allclose(a.values, [math.cos(2 * math.pi / 5), math.cos(math.pi / 5)], atol=1e-12)
    assert sum(a.multiplicities) == 10


def test_angle_set_orthonormal():
    a = angle_set(orthonormal(3, "C"))
    assert a.values == (0.0,) and a.multiplicities == (3,)


@settings(max_examples=30, deadline=None)
@given(frame_params())
def test_angle_set_invariants(params):
    m, n, field, seed = params
    f = random_unit_norm(m, n, field, seed)
    a = angle_set(f)
    assert max(a.values) == coherence(f)
    assert all(x < y for x, y in zip(a.values, a.values[1:]))
    assert sum(a.multiplicities) == n * (n - 1) // 2
    assert max(brute_abs_products(f)) == pytest.approx(coherence(f), abs=1e-14)


# -- tightness and row-sum identity ---------------------------------------


def test_tightness_residual_examples(e1e2e1):
    assert tightness_residual(pentagon()) <= 1e-12
    # diag(2, 1) - 1.5 I by hand
    assert tightness_residual(e1e2e1) == pytest.approx(math.sqrt(2) / 2, abs=1e-15)


def test_eq1_examples(e1e2e1):
    assert eq1_deviation(pentagon()) <= 1e-10
    assert eq1_deviation(e1e2e1) == pytest.approx(0.5, abs=1e-15)
    assert eq1_deviation(orthonormal(3)) == 0.0


@settings(max_examples=40, deadline=None)
@given(frame_params(), st.booleans())
def test_eq1_tracks_tightness(params, make_tight):
    m, n, field, seed = params
    f = random_tight(m, n, field, seed) if make_tight else random_unit_norm(m, n, field, seed)
    assert (eq1_deviation(f) <= 1e-8) == (tightness_residual(f) <= 1e-8)


# -- bounds ------------------------------------------------------------------


def test_welch_values():
    assert welch_bound(6, 3) == pytest.approx(1 / math.sqrt(5), abs=1e-15)
    assert welch_bound(4, 3) == pytest.approx(1 / 3, abs=1e-15)
    assert welch_bound(5, 3) == pytest.approx(1 / math.sqrt(6), abs=1e-15)
    assert welch_bound(3, 3) == 0.0


def test_welch_undersampled():
    with pytest.raises(FrameError, match="undersampled"):
        welch_bound(2, 3)


@settings(max_examples=100, deadline=None)
@given(frame_params())
def test_welch_lower_bound_random(params):
    m, n, field, seed = params
    assert coherence(random_unit_norm(m, n, field, seed)) >= welch_bound(n, m) - 1e-12


def test_orthoplex_examples():
    assert orthoplex_bound(5, 2, "C") == pytest.approx(1 / math.sqrt(2))
    assert orthoplex_bound(6, 3, "R") is None
    assert orthoplex_bound(7, 3, "R") == pytest.approx(1 / math.sqrt(3))
    assert orthoplex_bound(6, 2, "C") == pytest.approx(1 / math.sqrt(2))
    assert orthoplex_bound(4, 2, "C") is None


# -- certify -----------------------------------------------------------------


def test_certify_icosahedron():
    c = certify(icosahedron6(), 1e-10)
    assert c.is_tight and c.is_equiangular and c.is_etf and c.meets_welch
    assert c.orthoplex is None and c.meets_orthoplex is None


def test_certify_pentagon():
    c = certify(pentagon(), 1e-10)
    assert c.is_tight and not c.is_equiangular and not c.is_etf
    assert c.tight_constant == 2.5


def test_certify_non_tight(e1e2e1):
    c = certify(e1e2e1)
    assert not c.is_tight and c.coherence == 1.0
    assert c.eq1_max_deviation == pytest.approx(0.5)


def test_certify_orthonormal_reports_welch_not_applicable():
    c = certify(orthonormal(3))
    assert c.meets_welch is None and c.is_etf and c.coherence == 0.0


def test_certify_mub_meets_orthoplex():
    c = certify(mub_c2(), 1e-12)
    assert c.meets_orthoplex and c.is_tight and not c.is_equiangular


@pytest.mark.parametrize("frame", [icosahedron6(), simplex(3), simplex(5)], ids=["ico", "s3", "s5"])
def test_meets_welch_implies_etf(frame):
    c = certify(frame, 1e-10)
    assert c.meets_welch and c.is_etf


@pytest.mark.parametrize("eps", [1e-3, 1e-2])
def test_perturbed_etf_fails_welch(eps):
    a = icosahedron6().matrix()
    a[:, 0] += eps * np.array([1.0, -2.0, 0.5])
    c = certify(Frame.from_array(a, normalize=True), 1e-6)
    assert not c.meets_welch and not c.is_etf


# -- unitary_apply -----------------------------------------------------------


def test_unitary_apply_identity():
    f = pentagon()
    assert unitary_apply(f, np.eye(2)) == f


def test_rotated_pentagon_coherence():
    t = 0.37
    u = np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])
    assert coherence(unitary_apply(pentagon(), u)) == pytest.approx(math.cos(math.pi / 5), abs=1e-12)


def test_rotated_icosahedron_certificate():
    c0 = certify(icosahedron6(), 1e-10)
    c1 = certify(unitary_apply(icosahedron6(), random_unitary(3, 5)), 1e-10)
    assert (c0.is_etf, c0.is_tight, c0.meets_welch) == (c1.is_etf, c1.is_tight, c1.meets_welch)
    assert c1.coherence == pytest.approx(c0.coherence, abs=1e-12)


def test_unitary_apply_rejects_non_unitary():
    with pytest.raises(FrameError, match="unitary"):
        unitary_apply(pentagon(), np.array([[1.0, 0.1], [0.0, 1.0]]))


@settings(max_examples=20, deadline=None)
@given(frame_params(fields=("C",)))
def test_phase_invariance(params):
    m, n, field, seed = params
    f = random_unit_norm(m, n, field, seed)
    phases = np.exp(2j * np.pi * np.random.default_rng(seed).random(n))
    g = Frame(field, f.columns * phases)
    assert coherence(g) == pytest.approx(coherence(f), abs=1e-14)
    np.testing.assert_allclose(angle_set(g).values, angle_set(f).values, atol=1e-12)


# -- repair_span -------------------------------------------------------------


def test_repair_spanning_frame_unchanged():
    f = pentagon()
    assert repair_span(f) is f


def test_repair_interleaved_pairs():
    f = Frame.from_array(np.column_stack([e(0, 3), e(1, 3), e(0, 3), e(1, 3)]))
    out = repair_span(f)
    assert numerical_rank(out.columns) == 3
    assert coherence(out) <= 1.0


def test_repair_traced_by_hand():
    f = Frame.from_array(np.column_stack([e(0, 3), e(0, 3), e(1, 3), e(1, 3)]))
    out = repair_span(f).matrix()
    # pair (0, 1) kept, column 2 completes the span, column 3 becomes +-e3
    np.testing.assert_array_equal(out[:, :3], f.matrix()[:, :3])
    assert abs(abs(out[2, 3]) - 1.0) < 1e-15


def test_repair_too_few_free_vectors():
    f = Frame.from_array(np.column_stack([e(0, 2), e(0, 2)]))
    with pytest.raises(FrameError, match="Remark hypothesis violated"):
        repair_span(f)


def rank_deficient(m, n, r, field, seed):
    """n unit vectors spread over a random r-dimensional subspace of F^m."""
    rng = np.random.default_rng(seed)
    base = random_unit_norm(r, n, field, seed).columns
    u = random_unitary(m, seed + 1, field)[:, :r]
    a = u @ base
    return Frame.from_array(a / np.linalg.norm(a, axis=0), field)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 5), st.integers(1, 3), st.sampled_from("RC"), st.integers(0, 10**6))
def test_repair_property(m, deficit, field, seed):
    r = max(1, m - deficit)
    n = m + 2 + seed % 3
    f = rank_deficient(m, n, r, field, seed)
    assert numerical_rank(f.columns) == r
    out = repair_span(f)
    assert numerical_rank(out.columns) == m
    assert coherence(out) <= coherence(f) + 1e-12
