"""Asymmetric distributed compression with RS syndromes.

The encoder sends the syndrome of the hidden block y.  The decoder, holding
side information x, builds a reliability matrix from the correlation model,
converts it to multiplicities, shifts the multiplicity columns by a coset
representative z (so that y + z becomes a codeword), runs soft-decision
list decoding, un-shifts the candidates, drops any that violate the
received syndrome, and keeps the most likely survivor.  Appending syndrome
rows lowers the effective code rate without re-encoding, which gives the
feedback session its retry loop.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import kv, rs
from .correlation import CorrelationModel, reliability_from_side_info
from .rs import RsCode, Syndrome


@dataclass(frozen=True)
class SwEncoding:
    """Transmitted description of a block: its syndrome plus the rate it costs."""
    syndrome: Syndrome
    rate_bits_per_symbol: float


@dataclass
class DecodeOutcome:
    success: bool
    decoded: np.ndarray | None
    list_size: int
    cost: int
    delta: int | None
    score_truth: int | None = None
    survivors: int = 0


@dataclass
class FeedbackResult:
    """Outcome of a rate-adaptive session: rows actually needed, or the
    failure flag when even the full n-1 rows never produced the truth."""
    rows: int
    correct: bool
    attempts: int
    trace: list = dc_field(default_factory=list)


def sw_encode(code: RsCode, y, r: int) -> SwEncoding:
    """Compress y to its r-row syndrome; rate is r*m/n bits per symbol."""
    s = rs.syndrome(code, y, r)
    return SwEncoding(s, r * code.field.m / code.n)


def shift_multiplicity(mult: np.ndarray, z) -> np.ndarray:
    """Column-permuted matrix with m'_j(g) = m_j(g + z_j).

    Under the integer element ordering the row permutation of column j is
    an XOR with z_j, so cost and per-column entry multisets are preserved.
    """
    mult = np.asarray(mult, dtype=np.int64)
    z = np.asarray(z, dtype=np.int64)
    q, n = mult.shape
    rows = np.arange(q, dtype=np.int64)[:, None] ^ z[None, :]
    return mult[rows, np.arange(n)[None, :]]


def sw_decode(code: RsCode, enc: SwEncoding, x, model: CorrelationModel,
              lam: float, truth=None) -> DecodeOutcome:
    """One-shot decoding of a syndrome given side information x.

    Failure (no candidate survives the syndrome filter, or the reliability
    floors to an all-zero multiplicity matrix) is reported in the outcome,
    not raised.
    """
    x = np.asarray(x, dtype=np.int64)
    if len(x) != code.n:
        raise ValueError(f"side information length {len(x)} != n = {code.n}")
    r = enc.syndrome.rows
    k_eff = code.n - r
    pi = reliability_from_side_info(model, x)

    mult = np.floor(lam * kv.validate_reliability(pi)).astype(np.int64)
    if not mult.any():
        return DecodeOutcome(False, None, 0, 0, None,
                             kv.score(mult, truth) if truth is not None else None)
    c_total = kv.cost(mult)
    score_truth = kv.score(mult, truth) if truth is not None else None

    z = rs.coset_representative(code, enc.syndrome)
    if k_eff == 1:
        # Degenerate dimension: the coset has exactly q members z + const,
        # all syndrome-consistent, so list decoding reduces to exhaustive ML.
        candidates = z[None, :] ^ np.arange(code.field.q, dtype=np.int64)[:, None]
        delta = None
    else:
        shifted = shift_multiplicity(mult, z)
        q_poly = kv.interpolate(shifted, code, k=k_eff)
        messages = kv.factor_candidates(q_poly, k_eff)
        points = code.eval_points()
        candidates = [code.field.poly_eval_arr(f, points) ^ z for f in messages]
        delta = kv.delta_threshold(k_eff - 1, c_total)

    survivors = [cand for cand in candidates
                 if np.array_equal(rs.syndrome(code, cand, r).values, enc.syndrome.values)]
    chosen = kv.ml_select(survivors, pi)
    return DecodeOutcome(chosen is not None, chosen, len(candidates), c_total,
                         delta, score_truth, len(survivors))


def feedback_decode_session(code: RsCode, y, x, model: CorrelationModel, lam: float,
                            r_start: int = 1, r_step: int = 1) -> FeedbackResult:
    """Grow the syndrome until the decoder reproduces y exactly.

    The simulator verifies against the ground truth y; per-attempt outcomes
    (including decoder-side success without correctness) stay in the trace.
    """
    if not 1 <= r_start <= code.n - 1:
        raise ValueError("r_start out of range")
    if r_step < 1:
        raise ValueError("r_step must be >= 1")
    y = np.asarray(y, dtype=np.int64)
    synd = rs.syndrome(code, y, r_start)
    r = r_start
    trace = []
    while True:
        enc = SwEncoding(synd, r * code.field.m / code.n)
        out = sw_decode(code, enc, x, model, lam, truth=y)
        correct = out.success and np.array_equal(out.decoded, y)
        trace.append((r, out, correct))
        if correct:
            return FeedbackResult(r, True, len(trace), trace)
        if r >= code.n - 1:
            return FeedbackResult(code.n - 1, False, len(trace), trace)
        r_next = min(r + r_step, code.n - 1)
        synd = rs.extend_syndrome(code, y, synd, r_next)
        r = r_next
