"""Threshold tables over the families, written as CSV next to the figures."""

from __future__ import annotations

import csv
import io
from pathlib import Path

from .counter import BinTracker, trace
from .families import canonical_word, generate
from .plots import thresholds_figure, trace_figure
from .solver import solve_mortality

COLUMNS = (
    "family", "param", "states", "letters", "threshold", "lower_bound",
    "shortest_count", "canonical_length",
)

DEFAULT_RANGES = {
    "linear": range(1, 11),
    "ternary": range(2, 7),
    "binary": range(2, 6),
    "dfa-tail": range(2, 7),
}


def lower_bound(family: str, param: int) -> int:
    if family == "linear":
        return 2**param - 1
    if family == "ternary":
        return 2 ** (param - 1)
    if family == "binary":
        return 2**param
    return param * param + 4 * param - 3


def threshold_table(ranges=None) -> list[dict]:
    rows = []
    for family, params in (ranges or DEFAULT_RANGES).items():
        for param in params:
            inst = generate(family, param)
            res = solve_mortality(inst.nfa, count_shortest=True)
            rows.append({
                "family": family,
                "param": param,
                "states": inst.nfa.n,
                "letters": inst.nfa.m,
                "threshold": res.threshold,
                "lower_bound": lower_bound(family, param),
                "shortest_count": res.shortest_count,
                "canonical_length": len(canonical_word(inst)),
            })
    return rows


def to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def write_report(outdir, ranges=None) -> tuple[str, list[Path]]:
    """Write thresholds.csv, thresholds.png and one counter-trace figure per
    counter family; returns the CSV text and the written paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    rows = threshold_table(ranges)
    text = to_csv(rows)
    csv_path = outdir / "thresholds.csv"
    csv_path.write_text(text)
    paths = [csv_path, thresholds_figure(rows, outdir / "thresholds.png")]
    for family, param in (("linear", 4), ("ternary", 3), ("binary", 2)):
        inst = generate(family, param)
        tracker = BinTracker.for_instance(inst)
        rows_ = trace(inst.nfa, tracker, canonical_word(inst))
        paths.append(trace_figure(
            rows_, inst.names, tracker.states, inst.nfa.letters,
            outdir / f"trace_{family}_{param}.png", title=f"{family} {param}",
        ))
    return text, paths
