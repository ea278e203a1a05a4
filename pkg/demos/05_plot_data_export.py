"""Export plot-ready grids and render them.

The ``pgduse plotdata`` command (used here through its Python entry
point) writes three whitespace-delimited text files: fitted densities,
failure rates, and the ECDF overlaid with fitted cdfs.  Any plotting
tool can consume them; matplotlib renders them below.
"""

import pathlib

import numpy as np

from pgduse.cli import main

out_dir = pathlib.Path("plot_output")
out_dir.mkdir(exist_ok=True)
prefix = out_dir / "bearing"

code = main(["plotdata", "--data", "lawless", "--out", str(prefix)])
assert code == 0
print(f"wrote {prefix}_density.tsv, {prefix}_hazard.tsv, {prefix}_ecdf.tsv")


def read_grid(path):
    with open(path) as handle:
        header = handle.readline().split()
        rows = np.loadtxt(handle)
    return header, rows


try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("matplotlib not installed; skipping the rendering step")
    raise SystemExit(0)

for name, ylabel in (("density", "density"), ("hazard", "failure rate"), ("ecdf", "cdf")):
    header, rows = read_grid(f"{prefix}_{name}.tsv")
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for col, label in enumerate(header[1:], start=1):
        style = dict(lw=2) if label in ("ecdf", "pgduse") else dict(lw=1, alpha=0.8)
        drawstyle = "steps-post" if label == "ecdf" else "default"
        ax.plot(rows[:, 0], rows[:, col], label=label, drawstyle=drawstyle, **style)
    ax.set_xlabel("millions of revolutions")
    ax.set_ylabel(ylabel)
    ax.legend(frameon=False)
    fig.tight_layout()
    target = out_dir / f"{name}.png"
    fig.savefig(target, dpi=120)
    print(f"rendered {target}")
