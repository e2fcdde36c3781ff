"""Report serialization: delimited output plus rendered convergence figures.

The CSV is the contract: deterministic bytes for a given configuration and
seed (rationals as "p/q", no floats, no timestamps), with the
configuration hash embedded in a leading comment line.  The figure
rendered next to it is a convenience view of the same rows.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path

from .experiments import ExperimentReport
from .serialize import rat_to_str


def config_hash(report: ExperimentReport) -> str:
    blob = json.dumps({"command": report.command, "config": report.config,
                       "seed": report.seed}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def report_to_csv(report: ExperimentReport) -> str:
    lines = [f"# command={report.command} config_hash={config_hash(report)}"
             + (f" seed={report.seed}" if report.seed is not None else "")]
    lines.append(",".join(report.columns))
    for row in report.rows:
        cells = []
        for v in row:
            if isinstance(v, Fraction):
                cells.append(rat_to_str(v))
            else:
                cells.append(str(v))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def write_report(report: ExperimentReport, path: str | Path,
                 plot: bool = True) -> list[Path]:
    """Write the CSV (and by default a PNG figure alongside it)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(report_to_csv(report), encoding="utf-8")
    written = [path]
    if plot:
        png = path.with_suffix(".png")
        plot_report(report, png)
        written.append(png)
    return written


def plot_report(report: ExperimentReport, path: str | Path) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    path = Path(path)
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    cols = report.columns
    if cols[:2] == ("N", "k"):
        by_k: dict[int, list[tuple[int, float]]] = {}
        for row in report.rows:
            by_k.setdefault(row[1], []).append((row[0], float(row[4])))
        for k, pts in sorted(by_k.items()):
            pts.sort()
            ax.plot([p[0] for p in pts], [p[1] for p in pts],
                    marker="o", label=f"k = {k}")
        ax.set_xlabel("N")
        ax.set_ylabel("|finite - limit|")
        if all(p[1] > 0 for pts in by_k.values() for p in pts):
            ax.set_yscale("log")
        ax.legend()
        ax.set_title(report.command)
    elif cols[0] == "width":
        widths = sorted({row[0] for row in report.rows})
        for w in widths:
            pts = [(float(r[2]) / w, abs(float(r[5]) - float(r[6])))
                   for r in report.rows if r[0] == w and r[1] != 0]
            pts.sort()
            ax.plot([p[0] for p in pts], [p[1] for p in pts],
                    marker=".", linestyle="none", label=f"width {w}")
        ax.set_xlabel("y / width")
        ax.set_ylabel("|mean height gap| / N")
        ax.legend()
        ax.set_title("strong vs weak symmetric tilings")
    else:
        xs = range(len(report.rows))
        ax.plot(list(xs), [float(r[-1]) for r in report.rows], marker="o")
        ax.set_title(report.command)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
