"""Figure rendering for experiment reports (PNG files next to the CSVs)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def render_report(scenario: str, reports, records, path: str) -> str:
    if scenario == "classical":
        _render_classical(reports, path)
    else:
        _render_feedback(reports, records, path)
    return path


def _render_classical(reports, path):
    fig, ax = plt.subplots(figsize=(5, 3.5))
    by_model = {}
    for rep in reports:
        if rep.rate_bits_per_sym is not None:
            by_model.setdefault(rep.model, []).append(rep)
    for model, reps in by_model.items():
        rates = [r.rate_bits_per_sym for r in reps]
        fers = [max(r.fer_or_std, 0.5 / r.trials) for r in reps]  # keep log scale finite
        ax.semilogy(rates, fers, "o-", label=model)
    if reports:
        ax.axvline(reports[0].h_cond_bits, color="gray", ls="--", lw=1,
                   label="H(Y|X)")
    ax.set_xlabel("rate (bits/symbol)")
    ax.set_ylabel("frame error rate")
    ax.legend(fontsize=7)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _render_feedback(reports, records, path):
    fig, ax = plt.subplots(figsize=(5, 3.5))
    rates = [rec.rate_bits_per_sym for rec in records]
    if rates:
        ax.hist(rates, bins=min(30, max(5, len(set(rates)))), color="steelblue",
                edgecolor="black", alpha=0.8)
    for rep in reports:
        if rep.rate_bits_per_sym is not None:
            ax.axvline(rep.rate_bits_per_sym, color="crimson", lw=1.2,
                       label=f"mean {rep.model}")
        ax.axvline(rep.h_cond_bits, color="gray", ls="--", lw=1, label="H(Y|X)")
    handles, labels = ax.get_legend_handles_labels()
    uniq = dict(zip(labels, handles))
    ax.legend(uniq.values(), uniq.keys(), fontsize=7)
    ax.set_xlabel("minimum rate (bits/symbol)")
    ax.set_ylabel("sessions")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
