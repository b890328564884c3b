"""Scenario files and trajectory CSVs.

A scenario file is UTF-8 text with one ``key = value`` per line and ``#``
comments. Keys: r1, l, h, alpha, w, lambda, c, m, u, p, c_a, n, and the
optional s (fixed capacity).
"""

from __future__ import annotations

import csv
import io

from .model import ScenarioError, ScenarioParams, Trajectory

SCENARIO_KEYS = ("r1", "l", "h", "alpha", "w", "lambda", "c", "m", "u", "p",
                 "c_a", "n", "s")
REQUIRED_KEYS = tuple(k for k in SCENARIO_KEYS if k != "s")

TRAJECTORY_CSV_HEADER = ("period", "reputation", "post_ad", "ad", "demand",
                         "capacity", "fill_rate", "profit")

_KEY_TO_FIELD = {
    "r1": "r1", "l": "l_level", "h": "h_level", "alpha": "alpha", "w": "w",
    "lambda": "market_size", "c": "cap_cost", "m": "rep_value",
    "u": "reservation", "p": "price", "c_a": "ad_cost", "n": "horizon",
    "s": "capacity",
}


def parse_scenario(text: str) -> ScenarioParams:
    """Parse scenario text into validated parameters."""
    values: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioError(f"line {lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key = key.strip().lower()
        if key not in SCENARIO_KEYS:
            raise ScenarioError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ScenarioError(f"line {lineno}: duplicate key {key!r}")
        try:
            values[key] = float(value.strip())
        except ValueError:
            raise ScenarioError(
                f"line {lineno}: value for {key!r} is not a number") from None
    missing = [k for k in REQUIRED_KEYS if k not in values]
    if missing:
        raise ScenarioError(f"missing keys: {', '.join(missing)}")
    fields = {_KEY_TO_FIELD[k]: v for k, v in values.items()}
    fields["horizon"] = int(round(fields["horizon"]))
    return ScenarioParams(**fields)


def read_scenario(path) -> ScenarioParams:
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(fh.read())


def scenario_text(params: ScenarioParams) -> str:
    """Render parameters back to scenario-file text."""
    lines = []
    for key in SCENARIO_KEYS:
        value = getattr(params, _KEY_TO_FIELD[key])
        if value is None:
            continue
        lines.append(f"{key} = {value!r}" if isinstance(value, float)
                     else f"{key} = {value}")
    return "\n".join(lines) + "\n"


def format_real(x: float) -> str:
    return f"{x:.9g}"


def trajectory_to_csv(traj: Trajectory) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TRAJECTORY_CSV_HEADER)
    for rec in traj.records:
        writer.writerow((
            rec.period,
            format_real(rec.reputation_in),
            format_real(rec.post_ad),
            rec.ad.value,
            format_real(rec.demand),
            format_real(rec.capacity_used),
            format_real(rec.fill_rate),
            format_real(rec.profit),
        ))
    return buf.getvalue()


def write_trajectory_csv(traj: Trajectory, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(trajectory_to_csv(traj))


def read_trajectory_csv(path) -> list[dict]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != TRAJECTORY_CSV_HEADER:
            raise ValueError(
                f"unexpected trajectory CSV header: {reader.fieldnames}")
        return list(reader)
