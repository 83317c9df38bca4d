"""Monte-Carlo experiment harness: classical (one-shot) and feedback
(rate-adaptive) scenarios, with deterministic seeding and CSV reports.

Trials are keyed by index; the per-trial seed is derived from the base seed
with a splitmix-style mix, so results do not depend on worker count and
disjoint index ranges give independent streams.
"""

from __future__ import annotations

import csv
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field, replace

import numpy as np

from .correlation import (CorrelationModel, SparseSpec, build_qary_symmetric,
                          build_sparse_conditional, conditional_entropy,
                          mismatch_pdf, sample_pair)
from .gf import build_field
from .rs import RsCode
from .sw import feedback_decode_session, sw_decode, sw_encode

_SEED_MIX = 0x9E3779B97F4A7C15
# Multiplicities beyond this make interpolation cost explode; callers must
# opt in explicitly (the --full-scale CLI flag).
DESK_LAMBDA_MAX = 10.0


def derive_trial_seed(base: int, index: int) -> int:
    """Splittable per-trial seed: independent of worker layout."""
    return (base ^ ((index + 1) * _SEED_MIX)) % 2**63


@dataclass
class ExperimentConfig:
    scenario: str = "classical"
    m: int = 8
    rows: int | None = None
    rows_grid: tuple = ()
    model: str = "qary"
    p_a: float | None = None
    d: tuple = ()
    form: str = "diagonal"
    placement_seed: int = 0
    epsilon: float = 0.0015
    lam: float = 3.99
    trials: int = 100
    fer_target: float = 0.1
    seed: int = 1
    mismatch: bool = False
    r_start: int = 1
    r_step: int = 1
    workers: int = 1
    out: str = "results"
    full_scale: bool = False

    @property
    def q(self) -> int:
        return 1 << self.m

    @property
    def n(self) -> int:
        return self.q - 1

    def validate(self):
        if self.scenario not in ("classical", "feedback"):
            raise ValueError(f"unknown scenario {self.scenario!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not 0 < self.fer_target < 1:
            raise ValueError("fer_target must lie in (0, 1)")
        if self.lam <= 0:
            raise ValueError("lambda must be positive")
        if self.lam > DESK_LAMBDA_MAX and not self.full_scale:
            raise ValueError(
                f"lambda = {self.lam} exceeds the desk-scale limit {DESK_LAMBDA_MAX}; "
                "pass --full-scale to enable expensive regimes")
        if self.scenario == "classical":
            grid = self.rows_grid or ((self.rows,) if self.rows is not None else ())
            if not grid:
                raise ValueError("classical scenario needs rows or rows_grid")
            for r in grid:
                if not 1 <= r <= self.n - 1:
                    raise ValueError(f"rows value {r} out of range [1, {self.n - 1}]")
            if self.rows_grid and list(self.rows_grid) != sorted(self.rows_grid):
                raise ValueError("rows_grid must be ascending")
        else:
            if not 1 <= self.r_start <= self.n - 1:
                raise ValueError("r_start out of range")
            if self.r_step < 1:
                raise ValueError("r_step must be >= 1")
        if self.model == "qary":
            if self.p_a is None:
                raise ValueError("q-ary symmetric model needs p_a")
        elif self.model == "sparse":
            if not self.d:
                raise ValueError("sparse model needs a dominant vector d")
        else:
            raise ValueError(f"unknown model kind {self.model!r}")
        if self.mismatch and self.model != "sparse":
            raise ValueError("mismatch experiments require a sparse model")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        return self

    def build_model(self) -> CorrelationModel:
        if self.model == "qary":
            return build_qary_symmetric(self.q, self.p_a)
        spec = SparseSpec(tuple(self.d), self.epsilon, self.form, self.placement_seed)
        return build_sparse_conditional(self.q, spec)

    @classmethod
    def from_mapping(cls, mapping: dict) -> "ExperimentConfig":
        kwargs = {}
        for raw_key, raw in mapping.items():
            key = raw_key.strip().lower().replace("-", "_")
            if key == "lambda":
                key = "lam"
            if key not in cls.__dataclass_fields__:
                raise ValueError(f"unknown config key {raw_key!r}")
            kwargs[key] = _convert(key, raw)
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path: str) -> "ExperimentConfig":
        with open(path) as f:
            return cls.from_mapping(parse_config_text(f.read()))


def _convert(key: str, raw):
    if not isinstance(raw, str):
        return raw
    raw = raw.strip()
    kind = {
        "m": int, "rows": int, "placement_seed": int, "trials": int, "seed": int,
        "r_start": int, "r_step": int, "workers": int,
        "p_a": float, "epsilon": float, "lam": float, "fer_target": float,
        "mismatch": _parse_bool, "full_scale": _parse_bool,
    }.get(key)
    if key == "rows_grid":
        return tuple(int(x) for x in raw.split(",") if x.strip())
    if key == "d":
        return tuple(float(x) for x in raw.split(",") if x.strip())
    return kind(raw) if kind else raw


def _parse_bool(raw: str) -> bool:
    low = raw.strip().lower()
    if low in ("true", "yes", "1", "on"):
        return True
    if low in ("false", "no", "0", "off"):
        return False
    raise ValueError(f"expected a boolean, got {raw!r}")


def parse_config_text(text: str) -> dict:
    """key = value lines; '#' starts a comment."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected 'key = value'")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


@dataclass
class TrialRecord:
    seed: int
    rows: int
    rate_bits_per_sym: float
    success: bool
    list_size: int
    score: int | None
    cost: int
    delta: int | None
    attempts: int


@dataclass
class RateGapReport:
    model: str
    q: int
    n: int
    h_cond_bits: float
    rate_bits_per_sym: float | None
    gap_bits: float | None
    fer_or_std: float
    trials: int
    elapsed_s: float = 0.0


def _make_code(config: ExperimentConfig) -> RsCode:
    field = build_field(config.m)
    if config.scenario == "classical":
        grid = config.rows_grid or (config.rows,)
        r0 = grid[0]
    else:
        r0 = config.r_start
    return RsCode(field, max(1, field.q - 1 - r0))


def _classical_trial(code, model, decoder_model, lam, rows, trial_seed) -> TrialRecord:
    x, y = sample_pair(model, code.n, trial_seed)
    enc = sw_encode(code, y, rows)
    out = sw_decode(code, enc, x, decoder_model, lam, truth=y)
    ok = out.success and np.array_equal(out.decoded, y)
    return TrialRecord(trial_seed, rows, enc.rate_bits_per_symbol, ok,
                       out.list_size, out.score_truth, out.cost, out.delta, 1)


def _classical_chunk(args) -> list:
    config, rows, mismatched, indices = args
    code = _make_code(config)
    model = config.build_model()
    decoder_model = mismatch_pdf(model) if mismatched else model
    return [_classical_trial(code, model, decoder_model, config.lam, rows,
                             derive_trial_seed(config.seed, i)) for i in indices]


def _run_trials(config: ExperimentConfig, rows: int, mismatched: bool,
                index_offset: int) -> list:
    indices = list(range(index_offset, index_offset + config.trials))
    if config.workers == 1:
        return _classical_chunk((config, rows, mismatched, indices))
    chunks = max(1, len(indices) // (4 * config.workers))
    batches = [indices[i:i + chunks] for i in range(0, len(indices), chunks)]
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        parts = pool.map(_classical_chunk,
                         [(config, rows, mismatched, b) for b in batches])
        return [rec for part in parts for rec in part]


def run_classical(config: ExperimentConfig, rows: int | None = None,
                  mismatched: bool = False, index_offset: int = 0):
    """Fixed-rate FER estimate: (fer, records, report)."""
    config.validate()
    rows = config.rows if rows is None else rows
    started = time.perf_counter()
    records = _run_trials(config, rows, mismatched, index_offset)
    fer = sum(1 for rec in records if not rec.success) / len(records)
    model = config.build_model()
    decoder = mismatch_pdf(model) if mismatched else model
    h = conditional_entropy(model)
    rate = rows * config.m / config.n
    report = RateGapReport(decoder.label, config.q, config.n, h, rate, rate - h,
                           fer, config.trials, time.perf_counter() - started)
    return fer, records, report


def find_min_rate(config: ExperimentConfig, mismatched: bool = False):
    """Sweep the ascending rows grid until the FER target is met.

    Returns (achieved_report_or_None, point_reports, records); each grid
    point uses a disjoint trial-index range.
    """
    config.validate()
    grid = config.rows_grid or (config.rows,)
    reports, records = [], []
    achieved = None
    for idx, rows in enumerate(grid):
        fer, recs, report = run_classical(config, rows=rows, mismatched=mismatched,
                                          index_offset=idx * config.trials)
        reports.append(report)
        records.extend(recs)
        if fer < config.fer_target:
            achieved = report
            break
    if achieved is None:
        base = reports[-1]
        achieved = replace(base, rate_bits_per_sym=None, gap_bits=None)
    return achieved, reports, records


def _feedback_chunk(args) -> list:
    config, mismatched, indices = args
    code = _make_code(config)
    model = config.build_model()
    decoder_model = mismatch_pdf(model) if mismatched else model
    out = []
    for i in indices:
        trial_seed = derive_trial_seed(config.seed, i)
        x, y = sample_pair(model, code.n, trial_seed)
        result = feedback_decode_session(code, y, x, decoder_model, config.lam,
                                         config.r_start, config.r_step)
        rows, final, _ = result.trace[-1]
        out.append(TrialRecord(trial_seed, result.rows, result.rows * config.m / config.n,
                               result.correct, final.list_size, final.score_truth,
                               final.cost, final.delta, result.attempts))
    return out


def run_feedback(config: ExperimentConfig, mismatched: bool = False):
    """Minimum-rate statistics over feedback sessions: (mean, std, records, report)."""
    config.validate()
    started = time.perf_counter()
    indices = list(range(config.trials))
    if config.workers == 1:
        records = _feedback_chunk((config, mismatched, indices))
    else:
        chunks = max(1, len(indices) // (4 * config.workers))
        batches = [indices[i:i + chunks] for i in range(0, len(indices), chunks)]
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            parts = pool.map(_feedback_chunk,
                             [(config, mismatched, b) for b in batches])
            records = [rec for part in parts for rec in part]
    rates = np.array([rec.rate_bits_per_sym for rec in records])
    mean, std = float(rates.mean()), float(rates.std())
    model = config.build_model()
    decoder = mismatch_pdf(model) if mismatched else model
    h = conditional_entropy(model)
    report = RateGapReport(decoder.label, config.q, config.n, h, mean, mean - h,
                           std, config.trials, time.perf_counter() - started)
    return mean, std, records, report


def run_experiment(config: ExperimentConfig):
    """Dispatch on scenario; with the mismatch flag, run the matched and
    mismatched decoder variants back to back on the same trial seeds so the
    rate degradation is a paired difference."""
    config.validate()
    variants = [False, True] if config.mismatch else [False]
    reports, records = [], []
    for mismatched in variants:
        if config.scenario == "classical":
            achieved, point_reports, recs = find_min_rate(config, mismatched=mismatched)
            reports.extend(point_reports)
            if achieved.rate_bits_per_sym is None:
                reports.append(achieved)
        else:
            _, _, recs, report = run_feedback(config, mismatched=mismatched)
            reports.append(report)
        records.extend(recs)
    return reports, records


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def emit_report(reports, records, out_dir: str, scenario: str = "classical",
                figures: bool = True) -> list:
    """Write trials.csv, summary.csv, and (by default) a PNG figure.

    Output is a deterministic function of the inputs, so identical runs
    produce byte-identical files.
    """
    os.makedirs(out_dir, exist_ok=True)
    paths = []

    trials_path = os.path.join(out_dir, "trials.csv")
    with open(trials_path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["seed", "rows", "rate_bits_per_sym", "success", "list_size",
                         "score", "cost", "delta", "attempts"])
        for rec in records:
            writer.writerow([_fmt(rec.seed), _fmt(rec.rows), _fmt(rec.rate_bits_per_sym),
                             _fmt(rec.success), _fmt(rec.list_size), _fmt(rec.score),
                             _fmt(rec.cost), _fmt(rec.delta), _fmt(rec.attempts)])
    paths.append(trials_path)

    summary_path = os.path.join(out_dir, "summary.csv")
    with open(summary_path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["model", "q", "n", "H_cond_bits", "rate_bits_per_sym",
                         "gap_bits", "fer_or_std", "trials"])
        for rep in reports:
            writer.writerow([rep.model, _fmt(rep.q), _fmt(rep.n), _fmt(rep.h_cond_bits),
                             _fmt(rep.rate_bits_per_sym), _fmt(rep.gap_bits),
                             _fmt(rep.fer_or_std), _fmt(rep.trials)])
    paths.append(summary_path)

    if figures:
        from . import plots
        fig_path = os.path.join(out_dir, f"{scenario}.png")
        plots.render_report(scenario, reports, records, fig_path)
        paths.append(fig_path)
    return paths
