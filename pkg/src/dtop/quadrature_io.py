"""Serialization (symbol/vector JSON, matrix/series CSV) and seeded fixtures.

Symbol JSON::

    {"pos": [[k, re, im], ...], "neg": [[k, re, im], ...]}

with ``k >= 0`` in ``pos`` (coefficient of ``z^k``) and ``k >= 1`` in ``neg``
(coefficient of ``conj(z)^k``).  Optional ``"name"`` / ``"description"``
strings are carried through.  Vectors use ``{"coeffs": [[n, re, im], ...]}``
with ``n >= 1``.

Matrix CSV: a header ``# re,im pairs, N=<n>`` followed by N rows of 2N
comma-separated numbers ``re,im,re,im,...``; ``\\n`` line endings and no
quoting.  Numbers are written in shortest round-trip form so re-reading is
bit-exact.
"""

import json
import math
from pathlib import Path

import numpy as np

from .errors import SymbolFormatError
from .kernels import AnalyticVector
from .operator import ORTHOGONAL, ORTHONORMAL, TruncatedOperator
from .symbols import HarmonicSymbol


def format_number(x):
    """Shortest text that parses back to exactly ``x``."""
    x = float(x)
    if x == 0.0:
        return "-0" if math.copysign(1.0, x) < 0 else "0"
    if x.is_integer() and abs(x) < 2.0**53:
        return str(int(x))
    return repr(x)


def _finite(value, where):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SymbolFormatError(f"{where}: expected a number, got {value!r}")
    if not math.isfinite(value):
        raise SymbolFormatError(f"{where}: non-finite value {value!r}")
    return float(value)


def _load_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SymbolFormatError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc


def _triples(doc, field, min_index):
    raw = doc.get(field, [])
    if not isinstance(raw, list):
        raise SymbolFormatError(f"field {field!r}: expected an array of [k, re, im]")
    out = {}
    for pos, item in enumerate(raw):
        where = f"{field}[{pos}]"
        if not isinstance(item, list) or len(item) != 3:
            raise SymbolFormatError(f"{where}: expected [k, re, im], got {item!r}")
        k, re, im = item
        if isinstance(k, bool) or not isinstance(k, int):
            raise SymbolFormatError(f"{where}: index must be an integer, got {k!r}")
        if k < min_index:
            raise SymbolFormatError(f"{where}: index {k} below minimum {min_index}")
        if k in out:
            raise SymbolFormatError(f"{where}: duplicate index {k} in {field!r}")
        out[k] = complex(_finite(re, f"{where} re"), _finite(im, f"{where} im"))
    return out


def _check_keys(doc, allowed):
    if not isinstance(doc, dict):
        raise SymbolFormatError(f"top level must be a JSON object, got {type(doc).__name__}")
    extra = set(doc) - allowed
    if extra:
        raise SymbolFormatError(f"unknown field(s): {', '.join(sorted(extra))}")


def parse_symbol(text):
    """Parse the symbol JSON document; explicit zeros are pruned."""
    doc = _load_json(text)
    _check_keys(doc, {"pos", "neg", "name", "description"})
    return HarmonicSymbol(_triples(doc, "pos", 0), _triples(doc, "neg", 1))


def _triple_list(mapping):
    return [[k, float(c.real), float(c.imag)] for k, c in sorted(mapping.items())]


def serialize_symbol(phi, name=None, description=None):
    """JSON text for ``phi``; :func:`parse_symbol` inverts it exactly."""
    doc = {}
    if name is not None:
        doc["name"] = name
    if description is not None:
        doc["description"] = description
    doc["pos"] = _triple_list(phi.pos)
    doc["neg"] = _triple_list(phi.neg)
    return json.dumps(doc) + "\n"


def load_symbol(path):
    return parse_symbol(Path(path).read_text(encoding="utf-8"))


def save_symbol(phi, path, **meta):
    Path(path).write_text(serialize_symbol(phi, **meta), encoding="utf-8")


def parse_vector(text):
    doc = _load_json(text)
    _check_keys(doc, {"coeffs", "name", "description"})
    return AnalyticVector.from_dict(_triples(doc, "coeffs", 1))


def serialize_vector(f):
    return json.dumps({"coeffs": _triple_list(f.to_dict())}) + "\n"


def load_vector(path):
    return parse_vector(Path(path).read_text(encoding="utf-8"))


def save_vector(f, path):
    Path(path).write_text(serialize_vector(f), encoding="utf-8")


def _write_lines(path, lines):
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _read_lines(path):
    path = Path(path)
    try:
        return path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror or exc}") from exc


def matrix_csv_text(a):
    header = f"# re,im pairs, N={a.N}"
    if a.basis == ORTHONORMAL:
        header += ", basis=orthonormal"
    rows = [header]
    for row in a.entries:
        cells = []
        for c in row:
            cells.append(format_number(c.real))
            cells.append(format_number(c.imag))
        rows.append(",".join(cells))
    return "\n".join(rows) + "\n"


def write_matrix_csv(a, path):
    """Row-major ``re,im`` cells under a ``# re,im pairs, N=<n>`` header."""
    _write_lines(path, matrix_csv_text(a).rstrip("\n").split("\n"))


def read_matrix_csv(path):
    lines = [ln for ln in _read_lines(path) if ln.strip()]
    if not lines or not lines[0].startswith("#"):
        raise SymbolFormatError(f"{path}: missing '# re,im pairs, N=<n>' header")
    meta = {}
    for part in lines[0].lstrip("#").split(","):
        if "=" in part:
            key, val = part.split("=", 1)
            meta[key.strip()] = val.strip()
    try:
        n = int(meta["N"])
    except (KeyError, ValueError):
        raise SymbolFormatError(f"{path}: header does not state N") from None
    basis = meta.get("basis", ORTHOGONAL)
    body = lines[1:]
    if len(body) != n:
        raise SymbolFormatError(f"{path}: expected {n} rows, found {len(body)}")
    out = np.empty((n, n), dtype=np.complex128)
    for i, line in enumerate(body):
        cells = line.split(",")
        if len(cells) != 2 * n:
            raise SymbolFormatError(
                f"{path}: row {i + 1} has {len(cells)} cells, expected {2 * n}"
            )
        try:
            vals = [float(c) for c in cells]
        except ValueError as exc:
            raise SymbolFormatError(f"{path}: row {i + 1}: {exc}") from None
        out[i] = np.array(vals[0::2]) + 1j * np.array(vals[1::2])
    return TruncatedOperator(out, basis)


def matrix_to_json(a):
    """Nonzero entries as ``[i, j, re, im]`` (1-based) plus ``N`` and ``basis``."""
    entries = [
        [int(i) + 1, int(j) + 1, float(a.entries[i, j].real), float(a.entries[i, j].imag)]
        for i, j in zip(*np.nonzero(a.entries))
    ]
    return json.dumps({"N": a.N, "basis": a.basis, "entries": entries}) + "\n"


def matrix_from_json(text):
    doc = _load_json(text)
    _check_keys(doc, {"N", "basis", "entries", "name", "description"})
    n = doc.get("N")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise SymbolFormatError(f"field 'N': expected a positive integer, got {n!r}")
    basis = doc.get("basis", ORTHOGONAL)
    if basis not in (ORTHOGONAL, ORTHONORMAL):
        raise SymbolFormatError(f"field 'basis': unknown basis {basis!r}")
    out = np.zeros((n, n), dtype=np.complex128)
    seen = set()
    for pos, item in enumerate(doc.get("entries", [])):
        where = f"entries[{pos}]"
        if not isinstance(item, list) or len(item) != 4:
            raise SymbolFormatError(f"{where}: expected [i, j, re, im], got {item!r}")
        i, j, re, im = item
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (i, j)):
            raise SymbolFormatError(f"{where}: indices must be integers")
        if not (1 <= i <= n and 1 <= j <= n):
            raise SymbolFormatError(f"{where}: index ({i}, {j}) outside 1..{n}")
        if (i, j) in seen:
            raise SymbolFormatError(f"{where}: duplicate entry ({i}, {j})")
        seen.add((i, j))
        out[i - 1, j - 1] = complex(_finite(re, f"{where} re"), _finite(im, f"{where} im"))
    return TruncatedOperator(out, basis)


def write_matrix_json(a, path):
    Path(path).write_text(matrix_to_json(a), encoding="utf-8")


def read_matrix(path):
    """Read a matrix from ``.json`` or CSV, chosen by extension."""
    if str(path).endswith(".json"):
        return matrix_from_json(Path(path).read_text(encoding="utf-8"))
    return read_matrix_csv(path)


def _cell(x):
    if isinstance(x, str):
        if "," in x or "\n" in x:
            raise ValueError(f"CSV cell may not contain ',' or newline: {x!r}")
        return x
    return format_number(x)


def write_series_csv(pairs, path, columns=("x", "value")):
    """One row per item under a ``# x,value`` style header; empty -> header only."""
    lines = ["# " + ",".join(columns)]
    for row in pairs:
        if len(row) != len(columns):
            raise ValueError(f"row {row!r} does not match columns {columns}")
        lines.append(",".join(_cell(x) for x in row))
    _write_lines(path, lines)


def read_series_csv(path):
    """Rows of a series CSV; numeric cells become floats, others stay text."""
    rows = []
    for line in _read_lines(path):
        if not line or line.startswith("#"):
            continue
        row = []
        for cell in line.split(","):
            try:
                row.append(float(cell))
            except ValueError:
                row.append(cell)
        rows.append(tuple(row))
    return rows


def _dyadic(rng, size, scale):
    # multiples of 1/scale keep every product and short sum exact
    return rng.integers(-2 * scale, 2 * scale + 1, size=size) / scale


def random_symbol(rng, max_degree=12, density=0.6, scale=4, pos_degree=None, neg_degree=None):
    """Random trigonometric polynomial with dyadic complex coefficients.

    Degrees of the two halves are drawn uniformly from ``0..max_degree``
    unless given; each coefficient is present with probability ``density``.
    The top coefficient of each half is forced nonzero so the degree is exact.
    """
    p = int(rng.integers(0, max_degree + 1)) if pos_degree is None else pos_degree
    q = int(rng.integers(0, max_degree + 1)) if neg_degree is None else neg_degree

    def draw(count):
        vals = _dyadic(rng, count, scale) + 1j * _dyadic(rng, count, scale)
        keep = rng.random(count) < density
        return np.where(keep, vals, 0)

    pos = dict(enumerate(draw(p + 1)))
    neg = {k + 1: c for k, c in enumerate(draw(q))}
    for half, top in ((pos, p), (neg, q)):
        if top >= 1 and half.get(top, 0) == 0:
            half[top] = complex(1 + int(rng.integers(0, 4)), 0) / scale
    return HarmonicSymbol(pos, neg)


def random_symbols(seed, count, max_degree=12, **kw):
    """Reproducible list of ``count`` symbols from ``numpy.random.default_rng(seed)``."""
    rng = np.random.default_rng(seed)
    return [random_symbol(rng, max_degree, **kw) for _ in range(count)]


__all__ = [
    "format_number",
    "load_symbol",
    "load_vector",
    "matrix_csv_text",
    "matrix_from_json",
    "matrix_to_json",
    "parse_symbol",
    "parse_vector",
    "random_symbol",
    "random_symbols",
    "read_matrix",
    "read_matrix_csv",
    "read_series_csv",
    "save_symbol",
    "save_vector",
    "serialize_symbol",
    "serialize_vector",
    "write_matrix_csv",
    "write_matrix_json",
    "write_series_csv",
]
