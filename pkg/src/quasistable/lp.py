"""Desk-scale LP solving and MPS/JSON interchange.

Solving is delegated to scipy's HiGHS backend (deterministic, simplex-based);
problems beyond the desk-scale cap are rejected with a pointer to MPS export.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .errors import CapacityError, ParameterError, ParseError
from .reduce import LinearProgram

DESK_SCALE = 2000


@dataclass
class LPSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    objective: float
    x: np.ndarray | None


def solve_lp(lp: LinearProgram, tol: float = 1e-6) -> LPSolution:
    """maximize c^T x subject to A x <= b, x >= 0."""
    if lp.m > DESK_SCALE or lp.n > DESK_SCALE:
        raise CapacityError(
            f"LP is {lp.m}x{lp.n}; desk-scale solver caps at {DESK_SCALE}. "
            "Use export_mps and an external solver."
        )
    res = linprog(
        c=-lp.c,
        A_ub=lp.dense() if lp.m else None,
        b_ub=lp.b if lp.m else None,
        bounds=(0, None),
        method="highs",
    )
    if res.status == 2:
        return LPSolution("infeasible", float("-inf"), None)
    if res.status == 3:
        return LPSolution("unbounded", float("inf"), None)
    if res.status != 0:
        raise RuntimeError(f"LP solver failed: {res.message}")
    return LPSolution("optimal", -float(res.fun), np.asarray(res.x))


def lp_to_json(lp: LinearProgram) -> str:
    return json.dumps(
        {
            "m": lp.m,
            "n": lp.n,
            "A": [[int(i), int(j), float(v)] for i, j, v in zip(lp.rows, lp.cols, lp.vals)],
            "b": [float(v) for v in lp.b],
            "c": [float(v) for v in lp.c],
        }
    )


def lp_from_json(text: str) -> LinearProgram:
    try:
        doc = json.loads(text)
        triples = doc["A"]
        rows = [t[0] for t in triples]
        cols = [t[1] for t in triples]
        vals = [t[2] for t in triples]
        return LinearProgram(doc["m"], doc["n"], rows, cols, vals, doc["b"], doc["c"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad LP JSON: {exc}") from exc


def solution_to_json(sol: LPSolution) -> str:
    return json.dumps(
        {
            "status": sol.status,
            "objective": sol.objective,
            "x": None if sol.x is None else [float(v) for v in sol.x],
        }
    )


def _num(v: float) -> str:
    return f"{v:.17g}"


def export_mps(lp: LinearProgram, path) -> None:
    """Write fixed MPS for the maximization form; OBJSENSE records the sense."""
    lines = ["NAME          QSC", "OBJSENSE", "    MAX", "ROWS", " N  OBJ"]
    for i in range(lp.m):
        lines.append(f" L  R{i + 1:07d}")
    lines.append("COLUMNS")
    by_col: dict[int, list[tuple[int, float]]] = {j: [] for j in range(lp.n)}
    for i, j, v in zip(lp.rows, lp.cols, lp.vals):
        by_col[int(j)].append((int(i), float(v)))
    for j in range(lp.n):
        name = f"X{j + 1:07d}"
        entries = [("OBJ", float(lp.c[j]))] if lp.c[j] != 0 else []
        entries += [(f"R{i + 1:07d}", v) for i, v in sorted(by_col[j])]
        if not entries:
            entries = [("OBJ", 0.0)]  # declare the column so dimensions round-trip
        for row_name, v in entries:
            lines.append(f"    {name}  {row_name}  {_num(v)}")
    lines.append("RHS")
    for i in range(lp.m):
        if lp.b[i] != 0:
            lines.append(f"    RHS  R{i + 1:07d}  {_num(float(lp.b[i]))}")
    lines.append("ENDATA")
    try:
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise ParameterError(f"cannot write MPS to {path}: {exc}") from exc


def read_mps(path) -> LinearProgram:
    """Read fixed MPS with N/L/G/E rows; minimization is flipped to Eq-4 form.

    G rows are negated into L rows; E rows become an L pair.  RANGES and
    non-default BOUNDS are not supported.
    """
    try:
        with open(path) as fh:
            raw = fh.readlines()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc

    section = None
    maximize = False
    obj_row = None
    row_type: dict[str, str] = {}
    row_order: list[str] = []
    col_order: list[str] = []
    col_index: dict[str, int] = {}
    entries: list[tuple[str, str, float]] = []  # (col, row, val)
    rhs: dict[str, float] = {}

    for line_no, raw_line in enumerate(raw, start=1):
        line = raw_line.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("*"):
            continue
        if not line[0].isspace():
            section = line.split()[0].upper()
            if section == "OBJSENSE" and len(line.split()) > 1:
                maximize = line.split()[1].upper().startswith("MAX")
            if section == "ENDATA":
                break
            if section == "RANGES":
                raise ParseError("RANGES not supported", line_no)
            if section == "BOUNDS":
                raise ParseError("non-default BOUNDS not supported", line_no)
            continue
        fields = line.split()
        if section == "OBJSENSE":
            maximize = fields[0].upper().startswith("MAX")
        elif section == "ROWS":
            kind, name = fields[0].upper(), fields[1]
            if kind == "N":
                if obj_row is None:
                    obj_row = name
            elif kind in ("L", "G", "E"):
                row_type[name] = kind
                row_order.append(name)
            else:
                raise ParseError(f"unsupported row type {kind}", line_no)
        elif section == "COLUMNS":
            if "MARKER" in line.upper():
                raise ParseError("integer markers not supported", line_no)
            col = fields[0]
            if col not in col_index:
                col_index[col] = len(col_order)
                col_order.append(col)
            for name, val in zip(fields[1::2], fields[2::2]):
                entries.append((col, name, float(val)))
        elif section == "RHS":
            for name, val in zip(fields[1::2], fields[2::2]):
                rhs[name] = float(val)
        elif section == "RANGES":
            raise ParseError("RANGES not supported", line_no)
        elif section == "BOUNDS":
            raise ParseError("non-default BOUNDS not supported", line_no)

    n = len(col_order)
    c = np.zeros(n)
    out_rows: list[int] = []
    out_cols: list[int] = []
    out_vals: list[float] = []
    b: list[float] = []
    row_out: dict[str, list[tuple[int, float]]] = {}  # name -> (constraint idx, sign)
    for name in row_order:
        kind = row_type[name]
        if kind == "L":
            row_out[name] = [(len(b), 1.0)]
            b.append(rhs.get(name, 0.0))
        elif kind == "G":
            row_out[name] = [(len(b), -1.0)]
            b.append(-rhs.get(name, 0.0))
        else:  # E -> <= and >=
            row_out[name] = [(len(b), 1.0), (len(b) + 1, -1.0)]
            b.append(rhs.get(name, 0.0))
            b.append(-rhs.get(name, 0.0))
    for col, name, val in entries:
        if name == obj_row:
            c[col_index[col]] += val
        elif name in row_out:
            for idx, sign in row_out[name]:
                out_rows.append(idx)
                out_cols.append(col_index[col])
                out_vals.append(sign * val)
        else:
            raise ParseError(f"entry references unknown row {name!r}")
    if not maximize:
        c = -c
    return LinearProgram(
        len(b), n, out_rows, out_cols, out_vals, b, c,
        meta={"converted_from_min": not maximize},
    )
