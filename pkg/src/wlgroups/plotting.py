"""Figures for the CLI report paths.  Uses the non-interactive Agg backend."""
from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _figure(width=6.0, height=None):
    if height is None:
        height = width * (math.sqrt(5) - 1) / 2
    fig, ax = plt.subplots(figsize=(width, height))
    ax.grid(alpha=0.3)
    return fig, ax


def _save(fig, path):
    fig.tight_layout()
    # fixed metadata so repeated runs write identical files
    fig.savefig(path, dpi=120, metadata={"Software": None} if str(path).endswith(".png") else None)
    plt.close(fig)
    return path


def plot_wl_rounds(report, path, labels=("G", "H")):
    """Color classes per round on each side, with the first separating round marked."""
    fig, ax = _figure()
    rounds = list(range(len(report.rounds)))
    ax.plot(rounds, [t[1] for t in report.rounds], "o-", label=f"{labels[0]} classes")
    ax.plot(rounds, [t[2] for t in report.rounds], "s--", label=f"{labels[1]} classes")
    ax.plot(rounds, [t[0] for t in report.rounds], ":", color="gray", label="joint classes")
    if report.first_round is not None and report.rounds:
        ax.axvline(report.first_round, color="crimson", lw=1, label="identity tuples differ")
    ax.set_xlabel("round")
    ax.set_ylabel("color classes")
    ax.set_xticks(rounds or [0])
    ax.set_title(f"k={report.k} q={report.q} version {report.version}: {report.verdict()}", fontsize=9)
    ax.legend(fontsize=8)
    return _save(fig, path)


def plot_check_matrix(rows, cols, status, path, title=""):
    """``status[i][j]`` is True (pass), False (fail) or None (not run)."""
    fig, ax = _figure(width=max(4.0, 0.5 * len(cols) + 2), height=max(3.0, 0.35 * len(rows) + 1.5))
    ax.grid(False)
    code = [[0.5 if s is None else (1.0 if s else 0.0) for s in row] for row in status]
    ax.imshow(code, cmap="RdYlGn", vmin=0, vmax=1, aspect="auto")
    ax.set_xticks(range(len(cols)))
    ax.set_xticklabels(cols, rotation=60, ha="right", fontsize=7)
    ax.set_yticks(range(len(rows)))
    ax.set_yticklabels(rows, fontsize=7)
    for i, row in enumerate(status):
        for j, s in enumerate(row):
            ax.text(j, i, "-" if s is None else ("ok" if s else "X"), ha="center", va="center", fontsize=6)
    if title:
        ax.set_title(title, fontsize=9)
    return _save(fig, path)
