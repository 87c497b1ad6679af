"""Figure rendering for the CLI report path.

Each helper writes one PNG next to the delimited output.  matplotlib is
imported lazily with the Agg backend so headless runs and figure-free runs
pay nothing.
"""

from __future__ import annotations

import math


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def weight_overlay(xs, base, families, labels, path: str) -> str:
    """Base weight and each family member on a log scale."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(8.0, 4.5))
    ax.semilogy(xs, base, "k-", lw=2.0, label="base weight")
    for w, label in zip(families, labels):
        ax.semilogy(xs, w, lw=1.0, label=label)
    ax.set_xlabel("x")
    ax.set_ylabel("weight")
    ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def error_scatter(case_ids, errors, tol_lines, path: str, title: str) -> str:
    """Per-case error magnitudes against their pass thresholds."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(9.0, 4.5))
    idx = range(len(errors))
    floor = 1e-18
    ax.semilogy(idx, [max(e, floor) for e in errors], ".", ms=4)
    for label, tol in tol_lines:
        ax.axhline(tol, ls="--", lw=0.8, label=f"{label} tol = {tol:g}")
    ax.set_xlabel("case index")
    ax.set_ylabel("error")
    ax.set_title(title)
    if tol_lines:
        ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def moment_bars(ns, ks, rel_errs, tol, path: str) -> str:
    """Cross-route moment agreement per (n, k)."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(8.0, 4.5))
    floor = 1e-18
    for k in ks:
        errs = [max(rel_errs[(n, k)], floor) for n in ns]
        ax.semilogy(ns, errs, "o-", ms=4, lw=1.0, label=f"k = {k:g}")
    ax.axhline(tol, ls="--", lw=0.8, color="k", label=f"tol = {tol:g}")
    ax.set_xlabel("moment index n")
    ax.set_ylabel("relative difference")
    ax.set_title("series route vs quadrature route")
    ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def chain_deviation(vs, ks, devs, tol, path: str) -> str:
    """Max pairwise stage deviation of the lattice chain per (v, k)."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(8.0, 4.5))
    floor = 1e-18
    for k in ks:
        ax.semilogy(vs, [max(devs[(v, k)], floor) for v in vs], "s-", ms=4, lw=1.0,
                    label=f"k = {k:g}")
    ax.axhline(tol, ls="--", lw=0.8, color="k", label=f"tol = {tol:g}")
    ax.set_xlabel("v")
    ax.set_ylabel("max pairwise stage deviation")
    ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
