"""Readers for the solver toolkit's CSV outputs.

Two schemas are understood: parameter-sweep rows (profits and value of
information per swept value) and per-period trajectories. Headers are
validated strictly so a mismatched file fails with the offending header.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

VOI_SWEEP_HEADER = ("param", "value", "profit_aware", "profit_naive",
                    "voi_pct", "policy_aware", "policy_naive", "omega",
                    "method", "skipped")
TRAJECTORY_HEADER = ("period", "reputation", "post_ad", "ad", "demand",
                     "capacity", "fill_rate", "profit")


class SchemaError(ValueError):
    """The CSV header does not match the expected schema."""


def _check_header(found, expected, kind):
    found = tuple(found or ())
    if found != expected:
        raise SchemaError(
            f"{kind} CSV header mismatch: got {','.join(found) or '<empty>'}")


@dataclass(frozen=True)
class VoiSweepData:
    param: str
    values: list[float]
    profit_aware: list[float]
    profit_naive: list[float]
    voi_pct: list[float]


@dataclass(frozen=True)
class TrajectoryData:
    periods: list[int]
    reputation: list[float]


def read_voi_sweep(path) -> VoiSweepData:
    """Solved sweep rows; skipped rows are dropped."""
    values, aware, naive, vois = [], [], [], []
    param = ""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        _check_header(reader.fieldnames, VOI_SWEEP_HEADER, "voi_sweep")
        for row in reader:
            if row["skipped"]:
                continue
            param = row["param"] or param
            values.append(float(row["value"]))
            aware.append(float(row["profit_aware"]))
            naive.append(float(row["profit_naive"]))
            vois.append(float(row["voi_pct"]))
    return VoiSweepData(param=param, values=values, profit_aware=aware,
                        profit_naive=naive, voi_pct=vois)


def read_trajectory(path) -> TrajectoryData:
    periods, reputation = [], []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        _check_header(reader.fieldnames, TRAJECTORY_HEADER, "trajectory")
        for row in reader:
            periods.append(int(row["period"]))
            reputation.append(float(row["reputation"]))
    return TrajectoryData(periods=periods, reputation=reputation)
