"""Benchmark tables and figures written to disk."""

from __future__ import annotations

import csv
import io
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

BENCH_FIELDS = ["instance", "n", "m", "k", "decision", "size", "nodes", "leaves", "max_width", "millis"]

LEAF_BASE = 1.749


def bench_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def plot_leaves(rows, path):
    """Search-tree leaves against budget, with the 1.749^k envelope."""
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ks = [int(r["k"]) for r in rows]
    leaves = [max(int(r["leaves"]), 1) for r in rows]
    ax.scatter(ks, leaves, s=12, label="measured")
    if ks:
        grid = range(0, max(ks) + 1)
        ax.plot(grid, [LEAF_BASE ** k for k in grid], "r--", lw=1, label=f"{LEAF_BASE}^k")
    ax.set_yscale("log")
    ax.set_xlabel("budget k")
    ax.set_ylabel("leaves")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_widths(rows, path):
    """Largest leaf decomposition width per instance against budget."""
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ks = [int(r["k"]) for r in rows]
    widths = [int(r["max_width"]) for r in rows]
    ax.scatter(ks, widths, s=12)
    if ks:
        grid = range(0, max(ks) + 1)
        ax.step(grid, [-(-5 * k // 12) + 2 for k in grid], "r--", where="post", lw=1,
                label="ceil(2.5k/6)+2")
        ax.legend(frameon=False)
    ax.set_xlabel("budget k")
    ax.set_ylabel("max leaf width")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_dp_scaling(points, path):
    """DP time per width, next to a 3^p curve anchored at the first point.

    ``points`` is a list of ``(width, seconds)``.
    """
    fig, ax = plt.subplots(figsize=(5, 3.5))
    ws = [p for p, _ in points]
    ts = [t for _, t in points]
    ax.plot(ws, ts, "o-", label="measured")
    if points:
        w0, t0 = points[0]
        ax.plot(ws, [t0 * 3 ** (w - w0) for w in ws], "r--", lw=1, label="3^p model")
    ax.set_yscale("log")
    ax.set_xlabel("decomposition width p")
    ax.set_ylabel("seconds")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_bench_report(rows, out_dir) -> list[str]:
    """Write bench.csv plus its figures into ``out_dir``; return the paths written."""
    os.makedirs(out_dir, exist_ok=True)
    paths = [os.path.join(out_dir, name) for name in ("bench.csv", "leaves.png", "widths.png")]
    with open(paths[0], "w") as fh:
        fh.write(bench_csv(rows))
    plot_leaves(rows, paths[1])
    plot_widths(rows, paths[2])
    return paths
