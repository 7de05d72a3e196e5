"""PNG rendering for regions, gap sweeps, and simulation error curves.

Everything draws through the Agg backend so the CLI can run headless; each
function writes one file and returns the path.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["plot_regions", "plot_gap_scatter", "plot_error_curves"]


def plot_regions(named_regions, path, title=None):
    """Draw one or more rate regions as closed polygons over R1/R2."""
    fig, ax = plt.subplots(figsize=(5.0, 4.5))
    for label, region in named_regions:
        vs = region.vertices()
        if not vs:
            continue
        xs = [float(v[0]) for v in vs] + [float(vs[0][0])]
        ys = [float(v[1]) for v in vs] + [float(vs[0][1])]
        ax.plot(xs, ys, marker="o", markersize=3, label=label)
        ax.fill(xs, ys, alpha=0.15)
    ax.set_xlabel("R1 (bits)")
    ax.set_ylabel("R2 (bits)")
    if title:
        ax.set_title(title)
    if len(named_regions) > 1 or (named_regions and named_regions[0][0]):
        ax.legend(loc="best", fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_gap_scatter(gaps, deltas, path, title=None):
    """Scatter per-trial (gap_R1, gap_R2) pairs against the certified box."""
    fig, ax = plt.subplots(figsize=(5.0, 4.5))
    xs = [g1 for g1, _ in gaps]
    ys = [g2 for _, g2 in gaps]
    ax.scatter(xs, ys, s=6, alpha=0.4)
    ax.axvline(deltas[0], color="tab:red", linewidth=1, label="certified gap")
    ax.axhline(deltas[1], color="tab:red", linewidth=1)
    ax.set_xlabel("gap on R1 (bits)")
    ax.set_ylabel("gap on R2 (bits)")
    if title:
        ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_error_curves(rows, path, title=None):
    """Block error rate vs noise variance; rows are noise_sweep output."""
    fig, ax = plt.subplots(figsize=(5.0, 4.5))
    noises = [r[0] for r in rows]
    ax.semilogx(noises, [r[4] for r in rows], marker="o", label="destination 1")
    ax.semilogx(noises, [r[5] for r in rows], marker="s", label="destination 2")
    ax.set_xlabel("noise variance")
    ax.set_ylabel("block error rate")
    ax.invert_xaxis()
    if title:
        ax.set_title(title)
    ax.legend(loc="best", fontsize=8)
    ax.grid(True, alpha=0.3, which="both")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
