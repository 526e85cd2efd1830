"""Matrix (de)serialization.

On-disk schema: ``{"n": <int>, "entries": [[[re, im], ...], ...]}`` with
row-major entries. Floats are emitted by ``json`` at ``repr`` precision,
which round-trips IEEE-754 doubles exactly.
"""

import json
import math

import numpy as np

from .errors import ParseError


def matrix_to_json(x) -> dict:
    x = np.asarray(x, dtype=complex)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise ParseError("matrix must be square, got shape %r" % (x.shape,))
    n = int(x.shape[0])
    entries = [
        [[float(x[i, j].real), float(x[i, j].imag)] for j in range(n)]
        for i in range(n)
    ]
    return {"n": n, "entries": entries}


def _cell(value, i, j):
    ok = (
        isinstance(value, (list, tuple))
        and len(value) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    )
    if not ok:
        raise ParseError("entry (%d,%d) is not a [re, im] pair" % (i, j))
    re, im = float(value[0]), float(value[1])
    if not (math.isfinite(re) and math.isfinite(im)):
        raise ParseError("entry (%d,%d) is not finite" % (i, j))
    return complex(re, im)


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise ParseError("expected a JSON object with keys 'n' and 'entries'")
    n = obj.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("'n' must be a positive integer")
    entries = obj.get("entries")
    if not isinstance(entries, list) or len(entries) != n:
        raise ParseError("'entries' must be a list of %d rows" % n)
    out = np.zeros((n, n), dtype=complex)
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError("row %d must have %d cells" % (i, n))
        for j, cell in enumerate(row):
            out[i, j] = _cell(cell, i, j)
    return out


def load_matrix(path) -> np.ndarray:
    return matrix_from_json(load_json(path))


def save_matrix(path, x) -> None:
    dump_json(path, matrix_to_json(x))


def load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError("cannot read %s: %s" % (path, exc)) from exc
    except json.JSONDecodeError as exc:
        raise ParseError("invalid JSON in %s: %s" % (path, exc)) from exc


def dump_json(path, obj) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")
