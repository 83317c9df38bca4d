import csv
import os

import numpy as np
import pytest

from rsswc.cli import main as cli_main
from rsswc.harness import (ExperimentConfig, RateGapReport, derive_trial_seed,
                           emit_report, find_min_rate, parse_config_text,
                           run_classical, run_experiment, run_feedback)

QARY16 = """
# small q-ary experiment
scenario = classical
m = 4
rows = 8
model = qary
p_a = 0.9
lambda = 3.99
trials = 25
fer_target = 0.2
seed = 7
"""


def write_config(tmp_path, text):
    path = tmp_path / "exp.cfg"
    path.write_text(text)
    return str(path)


def test_parse_config_text():
    parsed = parse_config_text("a = 1 # trailing\n\n# full comment\nb=x,y\n")
    assert parsed == {"a": "1", "b": "x,y"}
    with pytest.raises(ValueError):
        parse_config_text("just a line\n")


def test_config_from_file(tmp_path):
    config = ExperimentConfig.from_file(write_config(tmp_path, QARY16))
    assert config.scenario == "classical"
    assert config.m == 4 and config.rows == 8
    assert config.lam == pytest.approx(3.99)
    assert config.q == 16 and config.n == 15
    config.validate()


def test_config_rejects_unknown_key():
    with pytest.raises(ValueError):
        ExperimentConfig.from_mapping({"frobnicate": "1"})


def test_config_validation_errors():
    base = dict(scenario="classical", m=4, rows=8, model="qary", p_a=0.9)
    ExperimentConfig.from_mapping(base).validate()
    bad = [
        dict(base, scenario="hybrid"),
        dict(base, trials=0),
        dict(base, fer_target=0.0),
        dict(base, rows=None),
        dict(base, rows=15),
        dict(base, model="qary", p_a=None),
        dict(base, model="sparse"),
        dict(base, mismatch=True),
        dict(base, workers=0),
        dict(base, rows_grid=(8, 4)),
    ]
    for mapping in bad:
        with pytest.raises(ValueError):
            ExperimentConfig.from_mapping(mapping).validate()


def test_lambda_guard_requires_full_scale():
    base = dict(scenario="classical", m=4, rows=8, model="qary", p_a=0.9, lam=100.99)
    with pytest.raises(ValueError):
        ExperimentConfig.from_mapping(base).validate()
    ExperimentConfig.from_mapping(dict(base, full_scale=True)).validate()


def test_derive_trial_seed_is_splittable():
    seeds = {derive_trial_seed(1, i) for i in range(1000)}
    assert len(seeds) == 1000
    assert derive_trial_seed(1, 0) != derive_trial_seed(2, 0)
    assert derive_trial_seed(5, 3) == derive_trial_seed(5, 3)


def make_config(**kwargs):
    base = dict(scenario="classical", m=4, rows=8, model="qary", p_a=0.9,
                lam=3.99, trials=25, fer_target=0.2, seed=7)
    base.update(kwargs)
    return ExperimentConfig.from_mapping(base)


def test_run_classical_deterministic_and_error_free_when_pa_one():
    config = make_config(p_a=1.0, rows=1, trials=10)
    fer, records, report = run_classical(config)
    assert fer == 0.0
    assert all(rec.success for rec in records)
    fer2, records2, _ = run_classical(config)
    assert fer2 == fer and [r.seed for r in records2] == [r.seed for r in records]


def test_run_classical_workers_do_not_change_results():
    config = make_config(trials=12)
    _, serial, _ = run_classical(config)
    _, parallel, _ = run_classical(make_config(trials=12, workers=2))
    assert [(r.seed, r.success, r.score) for r in serial] == \
           [(r.seed, r.success, r.score) for r in parallel]


def test_run_classical_disjoint_seed_ranges_agree():
    config = make_config(rows=6, trials=150)
    fer_a, _, _ = run_classical(config, index_offset=0)
    fer_b, _, _ = run_classical(config, index_offset=150)
    p = (fer_a + fer_b) / 2
    sigma = np.sqrt(max(p * (1 - p), 1e-9) / 150)
    assert abs(fer_a - fer_b) <= 3 * np.sqrt(2) * sigma + 1e-9


def test_find_min_rate_deterministic_grid():
    config = make_config(p_a=1.0, rows=None, rows_grid=(2, 4, 6), trials=10)
    achieved, reports, records = find_min_rate(config)
    assert achieved.rate_bits_per_sym == pytest.approx(2 * 4 / 15)
    assert len(reports) == 1  # stops at the first passing rate
    assert achieved.gap_bits == pytest.approx(achieved.rate_bits_per_sym)


def test_find_min_rate_reports_absent_rate_when_unreachable():
    config = make_config(p_a=0.55, rows=None, rows_grid=(1, 2), trials=20,
                         fer_target=0.01)
    achieved, reports, _ = find_min_rate(config)
    assert achieved.rate_bits_per_sym is None and achieved.gap_bits is None
    assert len(reports) == 2


def test_find_min_rate_never_beats_the_entropy_bound():
    # converse sanity: any rate that actually decodes sits above H(Y|X)
    config = make_config(rows=None, rows_grid=tuple(range(1, 15)), trials=60,
                         fer_target=0.1)
    achieved, _, _ = find_min_rate(config)
    assert achieved.rate_bits_per_sym is not None
    assert achieved.rate_bits_per_sym >= achieved.h_cond_bits
    assert achieved.gap_bits > 0


def test_rate_gap_arithmetic_on_reference_inputs():
    # gap column = rate - H(Y|X), checked on two published operating points
    rep1 = RateGapReport("ref", 512, 511, 5.3175, 7.2, 7.2 - 5.3175, 0.0, 1)
    rep2 = RateGapReport("ref", 512, 511, 2.8474, 4.5, 4.5 - 2.8474, 0.0, 1)
    assert round(rep1.gap_bits, 6) == 1.8825
    assert round(rep2.gap_bits, 6) == 1.6526


def test_run_feedback_pa_one_statistics():
    config = make_config(scenario="feedback", rows=None, p_a=1.0, trials=20)
    mean, std, records, report = run_feedback(config)
    assert mean == pytest.approx(4 / 15)
    assert std == 0.0
    assert report.fer_or_std == 0.0
    assert all(rec.attempts == 1 for rec in records)


def test_emit_report_files(tmp_path):
    out = str(tmp_path / "results")
    config = make_config(trials=5)
    _, records, report = run_classical(config)
    paths = emit_report([report], records, out, scenario="classical")
    trials_csv, summary_csv, figure = paths
    with open(trials_csv) as f:
        rows = list(csv.reader(f))
    assert rows[0] == ["seed", "rows", "rate_bits_per_sym", "success", "list_size",
                       "score", "cost", "delta", "attempts"]
    assert len(rows) == 6
    with open(summary_csv) as f:
        srows = list(csv.reader(f))
    assert srows[0] == ["model", "q", "n", "H_cond_bits", "rate_bits_per_sym",
                        "gap_bits", "fer_or_std", "trials"]
    rate, gap, h = float(srows[1][4]), float(srows[1][5]), float(srows[1][3])
    assert gap == pytest.approx(rate - h, abs=2e-6)  # columns rounded separately
    assert os.path.getsize(figure) > 0


def test_emit_report_header_only_for_empty_records(tmp_path):
    out = str(tmp_path / "empty")
    paths = emit_report([], [], out, scenario="classical", figures=False)
    with open(paths[0]) as f:
        assert len(f.read().splitlines()) == 1


def test_emit_report_idempotent(tmp_path):
    out = str(tmp_path / "twice")
    config = make_config(trials=5)
    _, records, report = run_classical(config)
    emit_report([report], records, out, figures=False)
    first = open(os.path.join(out, "trials.csv")).read()
    emit_report([report], records, out, figures=False)
    assert open(os.path.join(out, "trials.csv")).read() == first


def test_run_experiment_mismatch_emits_both_variants():
    config = ExperimentConfig.from_mapping(dict(
        scenario="feedback", m=4, model="sparse", d=(0.05, 0.7, 0.05),
        epsilon=0.03, lam=3.99, trials=5, seed=3, mismatch=True,
        r_start=1, r_step=2))
    reports, records = run_experiment(config)
    assert len(reports) == 2
    assert reports[0].model + "+mismatch" == reports[1].model
    assert len(records) == 10


def test_cli_end_to_end(tmp_path, capsys):
    cfg = write_config(tmp_path, QARY16)
    out = str(tmp_path / "out")
    rc = cli_main(["classical", "--config", cfg, "--out", out, "--seed", "11"])
    assert rc == 0
    captured = capsys.readouterr()
    assert "wrote" in captured.out
    assert os.path.exists(os.path.join(out, "trials.csv"))
    assert os.path.exists(os.path.join(out, "summary.csv"))
    assert os.path.exists(os.path.join(out, "classical.png"))


def test_cli_feedback_no_figures(tmp_path):
    cfg = write_config(tmp_path, """
scenario = feedback
m = 4
model = qary
p_a = 0.95
lambda = 3.99
trials = 5
seed = 2
""")
    out = str(tmp_path / "fb")
    rc = cli_main(["feedback", "--config", cfg, "--out", out, "--no-figures"])
    assert rc == 0
    assert not os.path.exists(os.path.join(out, "feedback.png"))


def test_cli_rejects_bad_config(tmp_path, capsys):
    cfg = write_config(tmp_path, "scenario = classical\nm = 4\nmodel = qary\np_a = 0.9\n")
    assert cli_main(["classical", "--config", cfg]) == 1  # rows missing
    assert "config error" in capsys.readouterr().err
    assert cli_main(["classical", "--config", str(tmp_path / "missing.cfg")]) == 1


def test_cli_full_scale_flag(tmp_path):
    cfg = write_config(tmp_path, QARY16 + "lambda = 12.0\ntrials = 1\nrows = 12\n")
    out = str(tmp_path / "fs")
    assert cli_main(["classical", "--config", cfg, "--out", out]) == 1
    assert cli_main(["classical", "--config", cfg, "--out", out,
                     "--full-scale", "--no-figures"]) == 0
