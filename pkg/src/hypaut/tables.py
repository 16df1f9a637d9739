"""Regenerate the admissible-prime tables from scratch and render them."""

from __future__ import annotations

import csv
import io
import json

from .admissible import ProblemInstance, admissible_primes, max_admissible_prime

TABLE1_DEGREE = 4
TABLE1_DIMS = tuple(range(3, 11))
TABLE2_DIMS = tuple(range(2, 10))
TABLE2_DEGREES = tuple(range(3, 10))
EXCLUDED = {(2, 4)}


def table1(dims=TABLE1_DIMS, d: int = TABLE1_DEGREE) -> list[tuple[int, list[int]]]:
    return [(n, admissible_primes(ProblemInstance(n, d))) for n in dims]


def table2(dims=TABLE2_DIMS, degrees=TABLE2_DEGREES) -> list[tuple[int, list[int | None]]]:
    rows = []
    for n in dims:
        cells = [None if (n, d) in EXCLUDED else max_admissible_prime(ProblemInstance(n, d))
                 for d in degrees]
        rows.append((n, cells))
    return rows


def _cell(v) -> str:
    return "-" if v is None else str(v)


def render_table1(rows, fmt: str, d: int = TABLE1_DEGREE) -> str:
    if fmt == "json":
        return json.dumps({"table": 1, "d": d,
                           "rows": [{"n": n, "primes": ps} for n, ps in rows]}, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "admissible primes"])
        for n, ps in rows:
            w.writerow([n, " ".join(map(str, ps))])
        return buf.getvalue()
    if fmt == "plain":
        return "".join(f"{n}: {', '.join(map(str, ps))}\n" for n, ps in rows)
    out = ["| n | admissible primes |", "|---|---|"]
    out += [f"| {n} | {', '.join(map(str, ps))} |" for n, ps in rows]
    return "\n".join(out) + "\n"


def render_table2(rows, fmt: str, degrees=TABLE2_DEGREES) -> str:
    if fmt == "json":
        return json.dumps({"table": 2, "degrees": list(degrees),
                           "rows": [{"n": n, "max_primes": cells} for n, cells in rows]},
                          indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n"] + [str(d) for d in degrees])
        for n, cells in rows:
            w.writerow([n] + [_cell(c) for c in cells])
        return buf.getvalue()
    if fmt == "plain":
        if len(rows) == 1:
            return ", ".join(_cell(c) for c in rows[0][1]) + "\n"
        return "".join(f"{n}: {', '.join(_cell(c) for c in cells)}\n" for n, cells in rows)
    out = ["| n\\d | " + " | ".join(str(d) for d in degrees) + " |",
           "|---" * (len(degrees) + 1) + "|"]
    out += [f"| {n} | " + " | ".join(_cell(c) for c in cells) + " |" for n, cells in rows]
    return "\n".join(out) + "\n"
