import numpy as np
import pytest

from rsswc import kv, rs
from rsswc.correlation import (build_qary_symmetric, reliability_from_side_info,
                               sample_pair)
from rsswc.gf import build_field
from rsswc.rs import RsCode
from rsswc.sw import (feedback_decode_session, shift_multiplicity, sw_decode,
                      sw_encode)


@pytest.fixture(scope="module")
def gf16_code():
    return RsCode(build_field(4), 3)


@pytest.fixture(scope="module")
def gf4_code():
    return RsCode(build_field(2), 1)


def exhaustive_coset_ml(code, s, x, model):
    """Oracle: most likely block among *all* blocks matching the syndrome."""
    q, n = code.field.q, code.n
    best, best_p = None, -1.0
    for idx in range(q ** n):
        y = np.array([(idx // q ** j) % q for j in range(n)], dtype=np.int64)
        if not np.array_equal(rs.syndrome(code, y, s.rows).values, s.values):
            continue
        p = float(np.prod(model.conditional[y, x]))
        if p > best_p or (p == best_p and tuple(y) < tuple(best)):
            best, best_p = y, p
    return best


def test_sw_encode_zero_syndrome_for_codeword(gf16_code):
    c = rs.encode_eval(gf16_code, [3, 1, 4])
    enc = sw_encode(gf16_code, c, 12)
    assert not enc.syndrome.values.any()
    assert enc.rate_bits_per_symbol == pytest.approx(12 * 4 / 15)


def test_sw_encode_rate_bookkeeping():
    code = RsCode(build_field(8), 204)
    y = np.zeros(255, dtype=np.int64)
    assert sw_encode(code, y, 51).rate_bits_per_symbol == pytest.approx(1.6)
    code9 = RsCode(build_field(9), 102)  # rate k/n close to 0.2
    y9 = np.zeros(511, dtype=np.int64)
    assert sw_encode(code9, y9, 511 - 102).rate_bits_per_symbol == pytest.approx(7.2, abs=5e-3)


def test_shift_identity():
    rng = np.random.default_rng(1)
    m = rng.integers(0, 5, size=(16, 15))
    assert np.array_equal(shift_multiplicity(m, np.zeros(15, dtype=np.int64)), m)


def test_shift_pinned_column_permutation():
    m = np.array([[3], [5], [2], [7]])
    assert shift_multiplicity(m, [1]).ravel().tolist() == [5, 3, 7, 2]


def test_shift_preserves_cost_and_score():
    rng = np.random.default_rng(4)
    for _ in range(100):
        m = rng.integers(0, 6, size=(16, 15)).astype(np.int64)
        z = rng.integers(0, 16, 15)
        y = rng.integers(0, 16, 15)
        shifted = shift_multiplicity(m, z)
        assert kv.cost(shifted) == kv.cost(m)
        assert kv.score(shifted, y ^ z) == kv.score(m, y)
        for j in range(15):
            assert sorted(shifted[:, j]) == sorted(m[:, j])


def test_decode_deterministic_model(gf16_code):
    model = build_qary_symmetric(16, 1.0)
    rng = np.random.default_rng(2)
    x = rng.integers(0, 16, 15)
    for r in (1, 6, 14):
        enc = sw_encode(gf16_code, x, r)
        out = sw_decode(gf16_code, enc, x, model, lam=3.99)
        assert out.success and np.array_equal(out.decoded, x)


def test_decode_gf4_matches_coset_ml_oracle(gf4_code):
    model = build_qary_symmetric(4, 0.9)
    y = np.array([1, 0, 0])
    enc = sw_encode(gf4_code, y, 2)
    assert enc.syndrome.values.tolist() == [1, 1]
    pi = reliability_from_side_info(model, y)
    assert np.allclose(pi[y, np.arange(3)], 0.9)
    out = sw_decode(gf4_code, enc, y, model, lam=10)
    assert out.success and out.decoded.tolist() == [1, 0, 0]
    oracle = exhaustive_coset_ml(gf4_code, enc.syndrome, y, model)
    assert np.array_equal(out.decoded, oracle)


def test_decode_success_satisfies_syndrome(gf16_code):
    model = build_qary_symmetric(16, 0.9)
    for t in range(30):
        x, y = sample_pair(model, 15, seed=100 + t)
        enc = sw_encode(gf16_code, y, 10)
        out = sw_decode(gf16_code, enc, x, model, lam=3.99, truth=y)
        if out.success:
            got = rs.syndrome(gf16_code, out.decoded, enc.syndrome.rows)
            assert np.array_equal(got.values, enc.syndrome.values)
        assert out.score_truth == kv.score(
            np.floor(3.99 * reliability_from_side_info(model, x)).astype(np.int64), y)


def test_decode_all_zero_multiplicity_is_failure(gf16_code):
    model = build_qary_symmetric(16, 0.5)
    x = np.zeros(15, dtype=np.int64)
    enc = sw_encode(gf16_code, x, 12)
    out = sw_decode(gf16_code, enc, x, model, lam=1.2)  # floor(1.2 * 0.5) = 0
    assert not out.success and out.decoded is None and out.list_size == 0


def test_score_condition_trials(gf16_code):
    # 200 draws at p_a = 0.95: every trial satisfying the score condition decodes
    model = build_qary_symmetric(16, 0.95)
    successes = 0
    for t in range(200):
        x, y = sample_pair(model, 15, seed=5000 + t)
        enc = sw_encode(gf16_code, y, 12)
        out = sw_decode(gf16_code, enc, x, model, lam=3.99, truth=y)
        if out.score_truth >= out.delta:
            assert out.success and np.array_equal(out.decoded, y)
            successes += 1
    assert successes > 150


def test_score_condition_monotone_in_rows(gf16_code):
    # score and cost do not depend on the row count; the threshold only drops
    model = build_qary_symmetric(16, 0.9)
    x, y = sample_pair(model, 15, seed=12)
    pi = reliability_from_side_info(model, x)
    mult = np.floor(3.99 * pi).astype(np.int64)
    c = kv.cost(mult)
    thresholds = [kv.delta_threshold(15 - r - 1, c) for r in range(1, 14)]
    assert all(a >= b for a, b in zip(thresholds, thresholds[1:]))


def test_feedback_immediate_success_when_deterministic(gf16_code):
    model = build_qary_symmetric(16, 1.0)
    x, y = sample_pair(model, 15, seed=3)
    result = feedback_decode_session(gf16_code, y, x, model, lam=3.99)
    assert result.correct and result.rows == 1 and result.attempts == 1


def test_feedback_step_bracketing(gf16_code):
    model = build_qary_symmetric(16, 0.9)
    for t in range(10):
        x, y = sample_pair(model, 15, seed=900 + t)
        fine = feedback_decode_session(gf16_code, y, x, model, 3.99, r_start=1, r_step=1)
        coarse = feedback_decode_session(gf16_code, y, x, model, 3.99, r_start=1, r_step=4)
        assert fine.correct and coarse.correct
        assert fine.rows <= coarse.rows < fine.rows + 4


def test_feedback_trace_is_complete(gf16_code):
    model = build_qary_symmetric(16, 0.85)
    x, y = sample_pair(model, 15, seed=77)
    result = feedback_decode_session(gf16_code, y, x, model, 3.99, r_start=2, r_step=3)
    rows_seen = [r for r, _, _ in result.trace]
    assert rows_seen[0] == 2 and rows_seen == sorted(rows_seen)
    assert all(b - a == 3 for a, b in zip(rows_seen[:-2], rows_seen[1:-1]))
    _, final, correct = result.trace[-1]
    assert correct == result.correct


def test_feedback_mean_rows_close_to_classical_threshold(gf16_code):
    # cross-check between the two measurement modes on identical trials
    model = build_qary_symmetric(16, 0.9)
    rows_needed = []
    for t in range(100):
        x, y = sample_pair(model, 15, seed=42_000 + t)
        result = feedback_decode_session(gf16_code, y, x, model, 3.99)
        assert result.correct
        rows_needed.append(result.rows)
    mean_rows = float(np.mean(rows_needed))

    fers = {}
    for r in range(1, 15):
        fails = 0
        for t in range(100):
            x, y = sample_pair(model, 15, seed=42_000 + t)
            enc = sw_encode(gf16_code, y, r)
            out = sw_decode(gf16_code, enc, x, model, 3.99)
            fails += not (out.success and np.array_equal(out.decoded, y))
        fers[r] = fails / 100
        if fers[r] == 0:
            break

    # when per-trial success is monotone in rows, the mean minimum row count
    # equals 1 + sum of one-shot frame error rates over the same trials
    assert mean_rows == pytest.approx(1 + sum(fers.values()), abs=0.2)
    # and it sits within one row of the classical sweep threshold at 0.2
    crossing = min(r for r, f in fers.items() if f < 0.2)
    assert abs(mean_rows - crossing) <= 1.0


def test_decoding_statistics_independent_of_primitive_polynomial():
    # same experiment under two different degree-4 primitive polynomials;
    # success statistics must agree within Monte-Carlo noise
    model = build_qary_symmetric(16, 0.9)
    counts = []
    for poly in (None, 0x19):  # default x^4+x+1 vs x^4+x^3+1
        code = RsCode(build_field(4, primitive_poly=poly), 3)
        ok = 0
        for t in range(150):
            x, y = sample_pair(model, 15, seed=60_000 + t)
            out = sw_decode(code, sw_encode(code, y, 8), x, model, 3.99)
            ok += out.success and np.array_equal(out.decoded, y)
        counts.append(ok)
    p = (counts[0] + counts[1]) / 300
    sigma = np.sqrt(max(p * (1 - p), 1e-9) / 150)
    assert abs(counts[0] - counts[1]) / 150 <= 3 * np.sqrt(2) * sigma + 1e-9


def test_feedback_validates_arguments(gf16_code):
    model = build_qary_symmetric(16, 0.9)
    x, y = sample_pair(model, 15, seed=1)
    with pytest.raises(ValueError):
        feedback_decode_session(gf16_code, y, x, model, 3.99, r_start=0)
    with pytest.raises(ValueError):
        feedback_decode_session(gf16_code, y, x, model, 3.99, r_step=0)
