"""JSON encodings of matrices, polynomials and Jordan specs."""
from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import ParseError, ShapeError
from .hmat import HMatrix, format_rows


def hmatrix_to_json(A: HMatrix, pretty: bool = False) -> dict:
    if pretty:
        return {"n": A.n, "rows": format_rows(A)}
    comp = A.components()
    return {"n": A.n, "rows": [[[float(x) + 0.0 for x in e] for e in row] for row in comp]}


def _number(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError(f"{where}: expected a number, got {x!r}")
    if not math.isfinite(x):
        raise ParseError(f"{where}: non-finite value {x!r}")
    return float(x)


def hmatrix_from_json(doc) -> HMatrix:
    """Parse {"n": int, "rows": [[[a, b, c, d], ...], ...]}; a bare number is a real entry."""
    if not isinstance(doc, dict) or "rows" not in doc:
        raise ParseError('matrix document must be an object with "rows"')
    rows = doc["rows"]
    if not isinstance(rows, list) or not rows:
        raise ShapeError("matrix needs at least one row")
    n = doc.get("n", len(rows))
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ParseError(f'"n" must be a positive integer, got {n!r}')
    if len(rows) != n:
        raise ShapeError(f"n = {n} but {len(rows)} rows given")
    comp = np.zeros((n, n, 4))
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ShapeError(f"row {i} must have {n} entries")
        for j, e in enumerate(row):
            where = f"entry ({i}, {j})"
            if isinstance(e, list):
                if len(e) != 4:
                    raise ShapeError(f"{where}: quaternion needs 4 components, got {len(e)}")
                comp[i, j] = [_number(x, where) for x in e]
            else:
                comp[i, j, 0] = _number(e, where)
    return HMatrix.from_components(comp)


def cmatrix_to_json(M: np.ndarray) -> dict:
    M = np.asarray(M, dtype=complex)
    return {
        "rows": M.shape[0],
        "cols": M.shape[1],
        "entries": [[[float(z.real) + 0.0, float(z.imag) + 0.0] for z in row] for row in M],
    }


def cmatrix_from_json(doc) -> np.ndarray:
    try:
        r, c, entries = doc["rows"], doc["cols"], doc["entries"]
        M = np.array([[complex(_number(e[0], "re"), _number(e[1], "im")) for e in row] for row in entries])
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"bad complex matrix document: {exc}") from None
    if M.shape != (r, c):
        raise ShapeError(f"declared {r}x{c}, got {M.shape}")
    return M


def poly_to_json(p) -> list:
    p = np.asarray(p)
    if np.iscomplexobj(p):
        return [[float(z.real) + 0.0, float(z.imag) + 0.0] for z in p]
    return [float(x) + 0.0 for x in p]


def spec_from_json(doc):
    """[{"re": .., "im": .., "size": ..}, ...] -> list of (complex, int)."""
    from .jordan import make_spec

    if isinstance(doc, dict) and "spec" in doc:
        doc = doc["spec"]
    if not isinstance(doc, list) or not doc:
        raise ParseError("spec must be a nonempty list of blocks")
    blocks = []
    for b in doc:
        if not isinstance(b, dict) or "size" not in b:
            raise ParseError(f"bad block {b!r}")
        size = b["size"]
        if isinstance(size, bool) or not isinstance(size, int) or size < 1:
            raise ParseError(f"block size must be a positive integer, got {size!r}")
        lam = complex(_number(b.get("re", 0.0), "re"), _number(b.get("im", 0.0), "im"))
        if lam.imag < 0:
            raise ParseError("spec eigenvalues must have Im >= 0")
        blocks.append((lam, size))
    return make_spec(blocks)


def load_json(source: str | None, inline: str | None = None):
    """Read a JSON document from inline text, a path, or '-' for stdin."""
    import sys

    try:
        if inline is not None:
            return json.loads(inline)
        if source is None or source == "-":
            return json.load(sys.stdin)
        return json.loads(Path(source).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    except OSError as exc:
        raise ParseError(f"cannot read {source}: {exc}") from None
