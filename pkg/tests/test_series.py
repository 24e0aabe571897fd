import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trigconv.sequences import (
    CoefficientSequence,
    Sector,
    SequenceError,
    TwoSidedSequence,
    sequence_from_text,
)
from trigconv.series import (
    GridSpec,
    abel_tail_bound,
    convergence_curve,
    dirichlet_sine,
    dyadic_variation_bound,
    parse_grid_spec,
    partial_sum_sine,
    partial_sum_two_sided,
    tail_sup_norm,
    truncation_slack,
    two_sided_split,
)
from trigconv.series import testpoint_block_probe as block_probe
from trigconv.summation import exact_sum


def _direct_dirichlet(n, x):
    return math.fsum(math.sin(k * x) for k in range(1, n + 1))


# --- sine kernel -----------------------------------------------------------

def test_dirichlet_sine_known_value():
    # sin(pi/2) + sin(pi) = 1 at n = 2, x = pi/2
    assert dirichlet_sine(2, math.pi / 2) == pytest.approx(1.0, abs=1e-12)


def test_dirichlet_sine_matches_direct_sum():
    rng = np.random.default_rng(23)
    for _ in range(200):
        n = int(rng.integers(1, 10_000))
        x = float(rng.uniform(1e-4, math.pi - 1e-4))
        assert abs(dirichlet_sine(n, x) - _direct_dirichlet(n, x)) <= 1e-9


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 512), st.floats(1e-6, math.pi - 1e-6))
def test_dirichlet_sine_sup_bound(n, x):
    # |sin(n x/2) sin((n+1) x/2) / sin(x/2)| <= 1/sin(x/2) <= pi/x
    assert abs(dirichlet_sine(n, x)) <= math.pi / x + 1e-9


def test_dirichlet_sine_domain():
    with pytest.raises(SequenceError):
        dirichlet_sine(4, 0.0)
    with pytest.raises(SequenceError):
        dirichlet_sine(4, math.pi + 0.5)


# --- partial sums ----------------------------------------------------------

def test_partial_sum_harmonic_quarter_period():
    # S_4(pi/2) = 1 - 1/3 = 2/3 for b_n = 1/n (sin terms vanish at even n)
    val = partial_sum_sine(sequence_from_text("harmonic(1.0)"), 4, math.pi / 2)
    assert val == pytest.approx(2.0 / 3.0, abs=1e-12)


def test_partial_sum_real_input_returns_float():
    val = partial_sum_sine(sequence_from_text("harmonic(1.0)"), 16, 0.3)
    assert isinstance(val, float)


def test_partial_sum_euler_identity():
    # sum sin(kx)/k converges to (pi - x)/2; at n = 20000 the error is
    # O(1/(n x)) which this tolerance comfortably covers
    x = 1.0
    val = partial_sum_sine(sequence_from_text("harmonic(1.0)"), 20_000, x)
    assert val == pytest.approx((math.pi - x) / 2.0, abs=1e-3)


def test_two_sided_split_identity():
    pos = CoefficientSequence.explicit(np.array([0.5 + 0.2j, 0.25, 0.1j]))
    neg = CoefficientSequence.explicit(np.array([0.3, 0.1 - 0.05j, 0.02]))
    ts = TwoSidedSequence(0.7 + 0j, pos, neg)
    x = 0.9
    s = partial_sum_two_sided(ts, 3, x)
    i1, i2 = two_sided_split(ts, 3, x)
    assert s - ts.c0 == pytest.approx(i1 + 2j * i2, abs=1e-14)


# --- grids -----------------------------------------------------------------

def test_grid_contains_testpoint_exactly():
    g = GridSpec(n_ref=64)
    assert math.pi / (8 * 64) in g.points().tolist()


def test_grid_points_sorted_in_halfperiod():
    pts = GridSpec(n_ref=256).points()
    assert np.all(np.diff(pts) > 0)
    assert pts[0] > 0 and pts[-1] <= math.pi


def test_grid_spec_round_trip():
    g = GridSpec(n_ref=128, oversample=16)
    assert parse_grid_spec(g.describe()) == g


@given(st.integers(1, 2048))
def test_grid_size_monotone_in_oversample(n_ref):
    a = GridSpec(n_ref=n_ref, oversample=4).points().size
    b = GridSpec(n_ref=n_ref, oversample=8).points().size
    assert a <= b


# --- tail norms and curves -------------------------------------------------

def test_tail_sup_norm_zero_sequence():
    assert tail_sup_norm(sequence_from_text("zero"), 8, N_ref=256) == 0.0


def test_tail_sup_norm_nonnegative_and_reference_monotone():
    seq = sequence_from_text("harmonic(1.0)")
    v1 = tail_sup_norm(seq, 64, N_ref=1 << 12)
    assert v1 > 0.2     # uniform convergence genuinely fails here


def test_truncation_slack_settled_flag():
    # exact zero tail: nothing beyond the reference, vacuously settled
    vals = np.zeros(4096)
    vals[:100] = 1.0 / np.arange(1, 101)
    slack, settled = truncation_slack(CoefficientSequence.explicit(vals), 256)
    assert slack == 0.0 and settled
    # power decay halves per octave: the last octave keeps contributing
    _, settled = truncation_slack(sequence_from_text("harmonic(2.0)"), 1 << 8)
    assert not settled


def test_convergence_curve_shape_and_csv():
    curve = convergence_curve(sequence_from_text("harmonic(2.0)"),
                              [8, 16, 32], N_ref=1 << 10)
    assert [e.n for e in curve.entries] == [8, 16, 32]
    csv = curve.to_csv()
    lines = csv.strip().split("\n")
    assert lines[0] == "n,sup_estimate,truncation_slack,max_k_ck"
    assert len(lines) == 4
    # float fields round-trip through repr
    val = float(lines[1].split(",")[1])
    assert val == curve.entries[0].sup_estimate


def test_convergence_curve_validates_n_list():
    seq = sequence_from_text("harmonic(1.0)")
    with pytest.raises(SequenceError):
        convergence_curve(seq, [64, 64], N_ref=1 << 10)
    with pytest.raises(SequenceError):
        convergence_curve(seq, [1024], N_ref=512)


# --- summation-by-parts bounds ---------------------------------------------

def test_abel_tail_bound_matches_direct_formula():
    seq = sequence_from_text("harmonic(1.0)")
    N, x, H = 10, 0.1, 1 << 14
    vals = np.asarray(seq.prefix(H + 1))
    oracle = (math.pi / x) * (np.abs(np.diff(vals[N - 1:])).sum()
                              + abs(vals[N - 1]))
    assert abel_tail_bound(seq, N, x, H) == pytest.approx(oracle, rel=1e-12)


def test_abel_tail_bound_dominates_actual_tail():
    seq = sequence_from_text("harmonic(1.0)")
    H = 1 << 14
    vals = np.asarray(seq.prefix(H))
    for N, x in ((3, 0.05), (17, 1.2), (100, 3.0)):
        bound = abel_tail_bound(seq, N, x, H, check_dominance=True)
        k = np.arange(N, H + 1, dtype=float)
        actual = abs(exact_sum(vals[N - 1:] * np.sin(k * x)))
        assert actual <= bound


def test_abel_dominance_check_raises_on_growth():
    # coefficients that grow violate the monotone-envelope premise
    seq = CoefficientSequence.explicit(np.linspace(0.1, 5.0, 64))
    with pytest.raises(SequenceError):
        abel_tail_bound(seq, 2, 0.5, 64, check_dominance=True)


def test_dyadic_variation_bound_harmonic():
    seq = sequence_from_text("harmonic(1.0)")
    lhs, maxima = dyadic_variation_bound(seq, 16, 1, 1 << 8)
    # monotone telescoping oracle: sum_{k=16}^{256} |c_k - c_{k+1}|
    assert lhs == pytest.approx(1.0 / 16.0 - 1.0 / 257.0, rel=1e-12)
    # N0 = 1 window maxima are c at the block heads 16, 32, ..., 256
    assert maxima == pytest.approx(1.0 / (16 * 2.0 ** np.arange(5)), rel=1e-12)


# --- test-point probe ------------------------------------------------------

def test_testpoint_probe_frozen_log_damped():
    # frozen from a direct run of this estimator; the slack is the
    # measured gap in the three-term inequality
    ts = TwoSidedSequence(0.0, sequence_from_text("log_damped"),
                          sequence_from_text("zero"), label="logd-onesided")
    pr = block_probe(ts, 256, Sector(0.0))
    assert pr.premises_ok and pr.sin_floor_ok
    assert pr.lhs == pytest.approx(0.3099495497932236, rel=1e-12)
    assert pr.norm_diff == pytest.approx(0.22270288135143979, rel=1e-12)
    assert pr.pair_abs_sum == pytest.approx(0.2227028813514399, rel=1e-12)
    assert pr.slack == pytest.approx(0.1354562129096561, rel=1e-9)
    assert pr.lower_reference == pytest.approx(0.08009966621460493, rel=1e-12)
    assert pr.grid_size == 4162


def test_testpoint_probe_premises_flag():
    # a pair falling outside the sector flips premises_ok off but still
    # reports the measured sides
    pos = CoefficientSequence.explicit(
        np.concatenate([[1.0 + 0.9j], 1.0 / np.arange(2, 41) ** 2]))
    ts = TwoSidedSequence(0.0, pos, sequence_from_text("zero"))
    pr = block_probe(ts, 10, Sector(math.pi / 8))
    assert not pr.premises_ok
    assert math.isfinite(pr.slack)


@settings(max_examples=20, deadline=None)
@given(st.integers(4, 200))
def test_sine_floor_on_probe_blocks(n):
    x0 = math.pi / (8 * n)
    k = np.arange(n + 1, 4 * n + 1)
    assert np.sin(k * x0).min() >= math.sin(math.pi / 8) - 1e-12
