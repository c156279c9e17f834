"""File formats: JSON (canonical) and CSV for symbol tables, density matrices and grids.

Floats are written with ``repr``, the shortest string that parses back to
the identical double, so every value round-trips without loss.  Complex
numbers are split into ``re`` and ``im`` fields.
"""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import numpy as np

from .su2 import projections
from .tomography import SphereQuadrature, SymbolTable, validate_density_matrix

__all__ = [
    "BASIS_TAG",
    "dumps_json",
    "write_text",
    "symbol_table_to_dict",
    "symbol_table_from_dict",
    "symbol_table_to_csv",
    "density_matrix_to_dict",
    "density_matrix_from_dict",
    "rows_to_csv",
    "load",
]

BASIS_TAG = "jm-descending"  # row/column i carries m = j - i
SYMBOL_COLUMNS = ("twice_m", "theta", "phi", "weight", "re", "im")


def _plain(value):
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def dumps_json(obj) -> str:
    """Deterministic JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(_plain(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_text(path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    return path


def _symbol_rows(table: SymbolTable):
    q = table.quad
    for i, tm in enumerate(projections(table.twice_j)):
        for k in range(q.size):
            v = complex(table.values[i, k])
            yield int(tm), float(q.theta[k]), float(q.phi[k]), float(q.weights[k]), v.real, v.imag


def symbol_table_to_dict(table: SymbolTable) -> dict:
    return {
        "kind": "tomogram" if table.is_probability else "symbol",
        "twice_j": table.twice_j,
        "quad_L": table.quad.L,
        "quad_M": table.quad.M,
        "columns": list(SYMBOL_COLUMNS),
        "rows": [list(r) for r in _symbol_rows(table)],
    }


def symbol_table_from_dict(data: dict) -> SymbolTable:
    """Rebuild a table; the stored nodes must match the Gauss-Legendre grid of that order."""
    twice_j, L, M = int(data["twice_j"]), int(data["quad_L"]), int(data["quad_M"])
    quad = SphereQuadrature.gauss_legendre(L, M)
    rows = np.asarray(data["rows"], dtype=float)
    d = twice_j + 1
    if rows.shape != (d * quad.size, len(SYMBOL_COLUMNS)):
        raise ValueError(f"expected {d * quad.size} rows of {len(SYMBOL_COLUMNS)} columns, got {rows.shape}")
    expected_m = np.repeat(projections(twice_j), quad.size)
    if not np.array_equal(rows[:, 0].astype(int), expected_m):
        raise ValueError("rows are not ordered by descending m then quadrature node")
    for col, ref in ((1, quad.theta), (2, quad.phi), (3, quad.weights)):
        if np.abs(rows[:, col] - np.tile(ref, d)).max() > 1e-12:
            raise ValueError(f"column {SYMBOL_COLUMNS[col]!r} does not match the L={L}, M={M} grid")
    is_prob = data.get("kind") == "tomogram"
    values = rows[:, 4] if is_prob else rows[:, 4] + 1j * rows[:, 5]
    return SymbolTable(twice_j, quad, values.reshape(d, quad.size), is_probability=is_prob)


def rows_to_csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def symbol_table_to_csv(table: SymbolTable) -> str:
    return rows_to_csv(SYMBOL_COLUMNS, _symbol_rows(table))


def density_matrix_to_dict(rho) -> dict:
    rho = np.asarray(rho, dtype=complex)
    return {"kind": "density_matrix", "dim": rho.shape[0], "basis": BASIS_TAG, "re": rho.real, "im": rho.imag}


def density_matrix_from_dict(data: dict) -> np.ndarray:
    if data.get("basis", BASIS_TAG) != BASIS_TAG:
        raise ValueError(f"unsupported basis ordering {data.get('basis')!r}; expected {BASIS_TAG!r}")
    d = int(data["dim"])
    rho = np.asarray(data["re"], dtype=float) + 1j * np.asarray(data.get("im", np.zeros((d, d))), dtype=float)
    if rho.shape != (d, d):
        raise ValueError(f"matrix shape {rho.shape} does not match dim={d}")
    return validate_density_matrix(rho)


def load(path) -> dict:
    """Read a JSON file written by this package."""
    return json.loads(Path(path).read_text())
