"""Emit matplotlib scripts that redraw a figure from a written CSV file."""
from __future__ import annotations

from enum import StrEnum
from pathlib import Path

from .const import _LOGGER


class PlotKind(StrEnum):
    """CSV layouts that have a plot template."""

    SWEEP = "sweep"
    PROFILE = "profile"
    PROCESS = "process"
    TRAJECTORY = "trajectory"
    PAIRS_STUDY = "pairs_study"
    HEIGHT_CHANGES = "height_changes"
    DISTRIBUTION = "distribution"


_HEADER = '''"""Plot {csv_name} (written by rebalance-lab)."""
from collections import defaultdict
import csv
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

plt.rcParams["font.size"] = 9
plt.rcParams["axes.spines.top"] = False
plt.rcParams["axes.spines.right"] = False

with open({csv_path!r}, encoding="utf-8") as stream:
    rows = list(csv.DictReader(stream))
'''

_FOOTER = """
fig.tight_layout()
fig.savefig({png_path!r}, dpi=150)
print("wrote", {png_path!r})
"""

_BODIES = {
    PlotKind.SWEEP: """
series = defaultdict(list)
for row in rows:
    key = (row["scheme"], int(row["n"]), row["sequence"])
    series[key].append((float(Fraction(row["p"])), float(row["avg_depth_mean"])))
panels = sorted({(scheme, n) for scheme, n, _ in series})
fig, axes = plt.subplots(1, len(panels), figsize=(4.5 * len(panels), 3.5), squeeze=False)
for ax, (scheme, n) in zip(axes[0], panels):
    for (s, m, sequence), points in sorted(series.items()):
        if (s, m) == (scheme, n):
            xs, ys = zip(*sorted(points))
            ax.plot(xs, ys, marker=".", label=sequence)
    ax.set_title(f"{scheme}, n={n}")
    ax.set_xlabel("p")
    ax.set_ylabel("average node depth")
    ax.set_yscale("log")
    ax.legend(fontsize=7)
""",
    PlotKind.PROFILE: """
depths = [int(row["depth"]) for row in rows]
counts = [int(row["count"]) for row in rows]
fig, ax = plt.subplots(figsize=(5, 3.5))
ax.bar(depths, counts, width=1.0)
ax.set_xlabel("depth")
ax.set_ylabel("nodes")
""",
    PlotKind.PROCESS: """
points = sorted((float(row["p_plus"]), float(row["exponent"])) for row in rows)
fig, ax = plt.subplots(figsize=(5, 3.5))
ax.plot(*zip(*points), marker="o")
ax.axhline(0.5, linestyle=":", color="grey")
ax.set_xlabel("p+")
ax.set_ylabel("lg mean / lg n")
""",
    PlotKind.TRAJECTORY: """
series = defaultdict(list)
for row in rows:
    series[float(row["p_plus"])].append((int(row["step"]), int(row["y"])))
fig, ax = plt.subplots(figsize=(5, 3.5))
for p_plus, points in sorted(series.items()):
    ax.plot(*zip(*points), label=f"p+={p_plus}")
ax.set_xlabel("step")
ax.set_ylabel("Y")
ax.legend(fontsize=7)
""",
    PlotKind.PAIRS_STUDY: """
series = defaultdict(list)
for row in rows:
    series[row["p"]].append(
        (
            int(row["n"]),
            float(row["avg_depth_mean"]),
            float(row["left_height_mean"]),
            float(row["right_height_mean"]),
        )
    )
fig, axes = plt.subplots(1, len(series), figsize=(4.5 * len(series), 3.5), squeeze=False)
for ax, (p, points) in zip(axes[0], sorted(series.items(), key=lambda s: Fraction(s[0]))):
    ns, avg, left, right = zip(*sorted(points))
    ax.loglog(ns, avg, marker=".", label="average depth")
    ax.loglog(ns, left, marker=".", label="left height")
    ax.loglog(ns, right, marker=".", label="right height")
    ax.set_title(f"zig, pairs, p={p}")
    ax.set_xlabel("n")
    ax.legend(fontsize=7)
""",
    PlotKind.HEIGHT_CHANGES: """
series = defaultdict(list)
for row in rows:
    series[row["p"]].append(
        (int(row["right_height"]), float(row["mean_change"]), float(row["predicted_change"]))
    )
fig, ax = plt.subplots(figsize=(5, 3.5))
for p, points in sorted(series.items(), key=lambda s: Fraction(s[0])):
    heights, observed, predicted = zip(*sorted(points))
    ax.plot(heights, observed, marker="o", linestyle="", label=f"observed p={p}")
    ax.plot(heights, predicted, label=f"predicted p={p}")
ax.set_xlabel("right height before the pair")
ax.set_ylabel("mean change")
ax.legend(fontsize=7)
""",
    PlotKind.DISTRIBUTION: """
def probability(row):
    if "probability" in row:
        return float(row["probability"])
    return int(row["probability_numerator"]) / int(row["probability_denominator"])

fig, ax = plt.subplots(figsize=(max(5, 0.3 * len(rows)), 3.5))
ax.bar(range(len(rows)), [probability(row) for row in rows])
ax.set_xticks(range(len(rows)))
ax.set_xticklabels([row["shape"] for row in rows], rotation=90, fontsize=5)
ax.set_ylabel("probability")
""",
}


def plot_script(csv_path: Path, kind: PlotKind) -> str:
    """Return the source of a script that plots ``csv_path``."""
    png_path = str(csv_path.with_suffix(".png"))
    return (
        _HEADER.format(csv_name=csv_path.name, csv_path=str(csv_path))
        + _BODIES[kind]
        + _FOOTER.format(png_path=png_path)
    )


def write_plot_script(csv_path: str | Path, kind: PlotKind) -> Path:
    """Write ``<stem>.plot.py`` next to ``csv_path`` and return its path."""
    csv_path = Path(csv_path)
    script = csv_path.with_name(f"{csv_path.stem}.plot.py")
    script.write_text(plot_script(csv_path, kind), encoding="utf-8")
    _LOGGER.debug("wrote plot script %s", script)
    return script
