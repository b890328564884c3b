"""Static figure rendering: dual-axis profit/VoI curves and reputation paths.

Output is deterministic for a given input: fixed canvas, no timestamps or
tool-version metadata embedded.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "womplot"

import matplotlib.pyplot as plt

from .csvdata import read_trajectory, read_voi_sweep

KINDS = ("voi_sweep", "trajectory")
FIGSIZE = (8.0, 4.5)
DPI = 120


@dataclass(frozen=True)
class PlotSpec:
    input_csv: Path
    kind: str
    output: Path
    title: str = ""
    x_label: str = ""
    input2: Optional[Path] = None  # second trajectory for an overlay

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        suffix = Path(self.output).suffix.lower()
        if suffix not in (".png", ".svg"):
            raise ValueError("output must end in .png or .svg")


def _save(fig, output) -> None:
    suffix = Path(output).suffix.lower()
    if suffix == ".png":
        fig.savefig(output, format="png", metadata={"Software": None})
    else:
        fig.savefig(output, format="svg",
                    metadata={"Date": None, "Creator": None})
    plt.close(fig)


def _render_voi_sweep(spec: PlotSpec):
    data = read_voi_sweep(spec.input_csv)
    fig, profit_ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    voi_ax = profit_ax.twinx()
    profit_ax.plot(data.values, data.profit_aware, color="tab:red",
                   marker="x", label="profit (aware)")
    profit_ax.plot(data.values, data.profit_naive, color="black",
                   marker="o", markersize=4, label="profit (naive)")
    voi_ax.plot(data.values, data.voi_pct, color="tab:green", marker=".",
                label="% value of information")
    profit_ax.set_xlabel(spec.x_label or data.param or "parameter")
    profit_ax.set_ylabel("total profit")
    voi_ax.set_ylabel("% value of information")
    voi_ax.set_ylim(0.0, 100.0)
    lines = (profit_ax.get_lines() + voi_ax.get_lines())
    profit_ax.legend(lines, [line.get_label() for line in lines],
                     loc="center left", fontsize=8)
    if spec.title:
        profit_ax.set_title(spec.title)
    fig.tight_layout()
    return fig


def _render_trajectory(spec: PlotSpec):
    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    labels = ("aware", "naive") if spec.input2 else ("reputation",)
    sources = [spec.input_csv] + ([spec.input2] if spec.input2 else [])
    colors = ("tab:red", "black")
    for path, label, color in zip(sources, labels, colors):
        data = read_trajectory(path)
        ax.plot(data.periods, data.reputation, marker="x", color=color,
                label=label)
    ax.set_xlabel(spec.x_label or "time period")
    ax.set_ylabel("reputation")
    ax.set_ylim(0.0, 1.0)
    ax.legend(loc="best", fontsize=8)
    if spec.title:
        ax.set_title(spec.title)
    fig.tight_layout()
    return fig


def render(spec: PlotSpec) -> Path:
    """Render the figure described by ``spec``; returns the output path."""
    if spec.kind == "voi_sweep":
        fig = _render_voi_sweep(spec)
    else:
        fig = _render_trajectory(spec)
    _save(fig, spec.output)
    return Path(spec.output)
