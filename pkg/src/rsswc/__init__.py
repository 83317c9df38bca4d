"""rsswc: Reed-Solomon syndrome coding for asymmetric Slepian-Wolf
compression of nonbinary sources, with soft-decision list decoding,
correlation-model generators, and Monte-Carlo experiment harnesses."""

from .correlation import (CorrelationModel, SparseSpec, build_explicit,
                          build_qary_symmetric, build_sparse_conditional,
                          conditional_entropy, mismatch_pdf, peak_factor,
                          reliability_from_side_info, sample_pair)
from .gf import GF, build_field
from .harness import (ExperimentConfig, RateGapReport, TrialRecord, emit_report,
                      find_min_rate, run_classical, run_experiment, run_feedback)
from .kv import (BivariatePoly, cost, delta_threshold, factor_candidates,
                 interpolate, ml_select, multiplicity_assign, score)
from .rs import (RsCode, Syndrome, bm_unique_decode, coset_representative,
                 encode_eval, extend_syndrome, parity_check_matrix, syndrome)
from .sw import (DecodeOutcome, FeedbackResult, SwEncoding,
                 feedback_decode_session, shift_multiplicity, sw_decode, sw_encode)

__all__ = [
    "GF", "build_field",
    "RsCode", "Syndrome", "parity_check_matrix", "encode_eval", "syndrome",
    "extend_syndrome", "coset_representative", "bm_unique_decode",
    "BivariatePoly", "multiplicity_assign", "cost", "score", "delta_threshold",
    "interpolate", "factor_candidates", "ml_select",
    "SwEncoding", "DecodeOutcome", "FeedbackResult", "sw_encode",
    "shift_multiplicity", "sw_decode", "feedback_decode_session",
    "CorrelationModel", "SparseSpec", "build_qary_symmetric",
    "build_sparse_conditional", "build_explicit", "mismatch_pdf", "sample_pair",
    "conditional_entropy", "reliability_from_side_info", "peak_factor",
    "ExperimentConfig", "TrialRecord", "RateGapReport", "run_classical",
    "find_min_rate", "run_feedback", "run_experiment", "emit_report",
]
