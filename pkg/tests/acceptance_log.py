"""Collects one verdict per acceptance criterion for the end-of-run summary."""

import contextlib

RESULTS = {}


@contextlib.contextmanager
def criterion(number, title):
    entry = RESULTS.setdefault(number, {"title": title, "failures": []})
    try:
        yield
    except AssertionError as exc:
        first = str(exc).strip().splitlines()[0] if str(exc).strip() else "assertion failed"
        entry["failures"].append(first)
        raise
    else:
        entry["passes"] = entry.get("passes", 0) + 1


def lines():
    out = []
    for number in sorted(RESULTS):
        entry = RESULTS[number]
        status = "FAIL" if entry["failures"] else "PASS"
        detail = f" ({len(entry['failures'])} failing: {entry['failures'][0]})" if entry["failures"] else ""
        out.append(f"criterion {number:>2} {status}  {entry['title']}{detail}")
    return out
