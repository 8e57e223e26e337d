"""Figures written next to the CSV reports."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .bounds import BoundsReport  # noqa: E402
from .experiment import ExperimentReport  # noqa: E402

_STYLE = {
    "font.size": 10,
    "axes.labelsize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "figure.figsize": (6.4, 4.0),
    "savefig.dpi": 120,
}

_BOUND_CURVES = ("lower_evident", "lower_thm2", "lower_thm2_sharp", "lower_prop4", "upper_thm1")


def plot_experiment(report: ExperimentReport, path) -> None:
    """Attempts-per-trial histogram and outcome counts."""
    agg = report.aggregate()
    with plt.rc_context(_STYLE):
        fig, (ax1, ax2) = plt.subplots(1, 2, gridspec_kw={"width_ratios": [3, 1]})
        ok = [r["attempts"] for r in report.rows if r["outcome"] == "success"]
        if ok:
            ax1.hist(ok, bins=min(30, max(5, len(set(ok)))), color="0.35")
        ax1.set_xlabel("attempts to success")
        ax1.set_ylabel("trials")
        spec = report.spec
        ax1.set_title(f"{spec.method}, r={spec.r}, {spec.family} {spec.family_params}", fontsize=8)
        names = list(agg["outcomes"])
        ax2.bar(names, [agg["outcomes"][k] for k in names], color=["0.3", "0.55", "0.8"])
        ax2.tick_params(axis="x", rotation=45)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)


def plot_bounds(reports: list[BoundsReport], path) -> None:
    """log p(n, r) bounds against n, one panel per r (up to four r values)."""
    rs = sorted({rep.r for rep in reports})[:4]
    with plt.rc_context(_STYLE):
        fig, axes = plt.subplots(1, len(rs), sharey=False, squeeze=False,
                                 figsize=(3.2 * len(rs), 3.2))
        for ax, r in zip(axes[0], rs):
            sub = [rep for rep in reports if rep.r == r]
            for name in _BOUND_CURVES:
                pts = [(rep.n, rep[name].log_value) for rep in sub if rep[name].log_value is not None]
                if pts:
                    xs, ys = zip(*pts)
                    ax.plot(xs, ys, marker=".", label=name, linestyle="--" if name.startswith("upper") else "-")
            ax.set_title(f"r = {r}")
            ax.set_xlabel("n")
        axes[0][0].set_ylabel("log bound")
        axes[0][-1].legend()
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
