import json
import math

import numpy as np
import pytest

from trigconv.harness import (
    CLAIM_SECTOR,
    CLAIM_WEIGHTED,
    STATUS_OK,
    STATUS_PREMISES,
    STATUS_VIOLATED,
    _null_trend_ok,
    _suffix,
    corpus_member,
    probe_necessity,
    probe_sufficiency,
    run_weighted_implication_corpus,
    verify_equivalence_diagnostics,
    verify_lacunary_counterexample,
    verify_orvqm_implication,
    verify_weighted_bv_implication,
)
from trigconv.sequences import (
    CoefficientSequence,
    Sector,
    parse_family_spec,
    sequence_from_text,
    weight_from_spec,
)


def _one():
    return weight_from_spec(parse_family_spec("one"))


# --- corpus ----------------------------------------------------------------

def test_corpus_member_deterministic():
    s1, w1, sec1 = corpus_member(9)
    s2, w2, sec2 = corpus_member(9)
    assert s1.label == s2.label
    assert np.array_equal(s1.prefix(4096), s2.prefix(4096))
    assert (sec1 is None) == (sec2 is None)


def test_corpus_member_parity_convention():
    # odd seeds carry a sector (complex members), even seeds are real
    _, _, sec_odd = corpus_member(3)
    seq_even, _, sec_even = corpus_member(4)
    assert sec_odd is not None
    assert sec_even is None
    assert seq_even.is_real


def test_corpus_member_has_exact_zero_tail():
    seq, _, _ = corpus_member(5)
    vals = np.asarray(seq.prefix(4096))
    assert np.all(vals[2048:] == 0)
    assert np.all(vals[:1536] != 0)


# --- trend premise ---------------------------------------------------------

def test_null_trend_accepts_decay_with_wobble():
    n = np.arange(1, 2049, dtype=float)
    assert _null_trend_ok(n ** -0.5)
    wobble = n ** -0.5 * (1.0 + 0.04 * np.sin(n))
    assert _null_trend_ok(wobble)


def test_null_trend_rejects_flat_and_growing():
    assert not _null_trend_ok(np.ones(2048))
    assert not _null_trend_ok(np.log(np.arange(1, 2049, dtype=float) + 2))
    assert _null_trend_ok(np.zeros(64))


# --- single-instance implication chain -------------------------------------

def test_weighted_chain_on_corpus_member():
    seq, weight, _ = corpus_member(1)
    out = verify_weighted_bv_implication(seq, weight)
    assert out.status == STATUS_OK
    names = [r.name for r in out.records]
    assert "chain/dominated_tail" in names
    assert "chain/block_variation" in names
    assert "chain/predicted_constant" in names
    for r in out.records:
        assert r.passed
    assert out.summary["measured_constant"] <= out.summary["predicted_bound"]


def test_weighted_chain_premises_not_met_for_lacunary():
    out = verify_weighted_bv_implication(sequence_from_text("lacunary(1.0)"),
                                         _one(), horizon=1 << 12)
    assert out.status == STATUS_PREMISES


def test_corpus_run_aggregates():
    out = run_weighted_implication_corpus(1, 6)
    assert out.status == STATUS_OK
    assert out.summary["headline"] == "6/6 chains hold"
    assert out.claim == CLAIM_WEIGHTED


# --- sector implication ----------------------------------------------------

def test_sector_chain_boundary_angle_constant():
    # alternating phases just inside +/- theta0: the measured weighted
    # constant approaches 1/cos(theta0) = 2/sqrt(3) from below
    theta0 = math.pi / 6
    k = np.arange(1, 2049, dtype=float)
    phases = np.where(k.astype(int) % 2 == 0, 1.0, -1.0) * theta0 * (1 - 1e-6)
    d = k ** -2.0 * np.exp(1j * phases)
    g = np.zeros(4096, dtype=complex)
    g[:2048] = _suffix(d)
    seq = CoefficientSequence.explicit(g, label="boundary")
    out = verify_orvqm_implication(seq, _one(), Sector(theta0))
    assert out.status == STATUS_OK
    assert out.summary["weighted_constant"] <= 2.0 / math.sqrt(3.0) * (1 + 1e-9)
    assert out.summary["weighted_constant"] > 1.15


def test_sector_chain_rejects_lacunary():
    out = verify_orvqm_implication(sequence_from_text("lacunary(1.0)"),
                                   _one(), Sector(math.pi / 6),
                                   horizon=1 << 12)
    assert out.status == STATUS_PREMISES
    assert out.claim == CLAIM_SECTOR


def test_sector_chain_on_odd_corpus_member():
    seq, weight, sector = corpus_member(7)
    out = verify_orvqm_implication(seq, weight, sector)
    assert out.status == STATUS_OK
    telescoping = [r for r in out.records if r.name == "sector/telescoping"]
    assert telescoping and telescoping[0].passed


# --- lacunary counterexample -----------------------------------------------

def test_lacunary_outcome_alpha_one():
    out = verify_lacunary_counterexample(1.0)
    assert out.status == STATUS_OK
    by_name = {r.name: r for r in out.records}
    assert by_name["maxima/exactly_one"].passed
    assert by_name["group_bv/window_1"].witness == 1
    assert by_name["group_bv/window_16"].witness == 33
    assert by_name["tail/below_threshold"].passed


def test_lacunary_outcome_alpha_half_fails_only_threshold():
    # alpha = 1/2 decays too slowly for the 1e-3 cutoff at n = 2^15: the
    # certified bound is ~1.3e-2 there, so only that record can fail
    out = verify_lacunary_counterexample(0.5)
    assert out.status == STATUS_VIOLATED
    for r in out.records:
        if r.name == "tail/below_threshold":
            assert not r.passed
        else:
            assert r.passed, r.name


def test_lacunary_rejects_nonpositive_alpha():
    with pytest.raises(Exception):
        verify_lacunary_counterexample(0.0)


# --- equivalence diagnostics -----------------------------------------------

def test_equivalence_small_profile():
    # reduced horizon keeps this fast; lacunary is waived because its
    # group-variation check fails
    out = verify_equivalence_diagnostics(
        corpus=("harmonic(1.0)", "lacunary(1.0)"),
        n_list=(64, 128, 256), N_ref=1 << 13, horizon=1 << 14)
    assert out.status == STATUS_OK
    by_instance = {r.instance: r for r in out.records}
    assert by_instance["harmonic(1.0)"].name == "equivalence/co_trending"
    assert by_instance["lacunary(1.0)"].name == "equivalence/waived"
    # harmonic: both diagnostics persist above their thresholds
    assert by_instance["harmonic(1.0)"].lhs > 0.15
    assert by_instance["harmonic(1.0)"].rhs > 0.15


# --- probes ----------------------------------------------------------------

def test_probe_necessity_small():
    out = probe_necessity(n_values=(10, 100), instances=4)
    assert out.status == STATUS_OK
    floors = [r for r in out.records if r.name == "testpoint/sine_floor"]
    assert len(floors) == 2
    probes = [r for r in out.records if r.name == "testpoint/three_term"]
    assert len(probes) == 4
    for r in probes:
        assert r.slack >= -1e-9


def test_probe_sufficiency_small():
    out = probe_sufficiency(cases=15, horizon=1 << 12)
    assert out.status == STATUS_OK
    assert len(out.records) == 15
    assert out.summary["worst_slack"] >= 0.0


# --- serialization ---------------------------------------------------------

def test_outcome_json_round_trip_strict():
    out = run_weighted_implication_corpus(2, 3)
    text = json.dumps(out.to_json_dict(), sort_keys=True, allow_nan=False)
    back = json.loads(text)
    assert back["claim"] == CLAIM_WEIGHTED
    assert back["status"] == "ok"
    assert all(isinstance(r["passed"], bool) for r in back["records"])


def test_outcome_json_nonfinite_goes_null():
    out = verify_weighted_bv_implication(sequence_from_text("lacunary(1.0)"),
                                         _one(), horizon=1 << 12)
    d = out.to_json_dict()
    text = json.dumps(d, allow_nan=False)   # must not raise
    assert "Infinity" not in text


def test_outcome_table_format():
    out = run_weighted_implication_corpus(1, 2)
    table = out.table()
    assert table.splitlines()[0].startswith("claim: weighted_bv_implies")
    assert "[pass]" in table
