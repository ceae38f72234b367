"""Dense MatrixMarket ("array real general") and plain-text vector I/O.

Parse failures raise :class:`~oblique_ls.errors.ParseError` carrying the
1-based line and column of the offending token.
"""
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, ParseError
from .la_core import DenseMatrix, as_dense

HEADER = "%%MatrixMarket matrix array real general"


def _tokens(lines, start):
    """Yield ``(token, line_no, column)`` for non-comment lines from ``start``."""
    for line_no, line in enumerate(lines[start:], start=start + 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            continue
        pos = 0
        for tok in line.split():
            pos = line.index(tok, pos)
            yield tok, line_no, pos + 1
            pos += len(tok)


def _float(tok, path, line, col):
    try:
        v = float(tok)
    except ValueError:
        raise ParseError(f"expected a decimal number, got {tok!r}", path, line, col) from None
    if not np.isfinite(v):
        raise ParseError(f"non-finite value {tok!r}", path, line, col)
    return v


def _int(tok, path, line, col):
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"expected a positive integer, got {tok!r}", path, line, col) from None
    if v < 1:
        raise ParseError(f"dimension must be positive, got {v}", path, line, col)
    return v


def read_dense_matrix(path):
    """Read a MatrixMarket array file (values listed column by column)."""
    path = Path(path)
    lines = path.read_text().splitlines()
    if not lines:
        raise ParseError("empty file", path, 1, 1)
    header = lines[0].split()
    expected = HEADER.split()
    if len(header) != 5 or header[0] != expected[0] or \
            [h.lower() for h in header[1:]] != expected[1:]:
        raise ParseError(f"expected header {HEADER!r}", path, 1, 1)
    toks = _tokens(lines, 1)
    size = []
    for tok, line, col in toks:
        size.append(_int(tok, path, line, col))
        if len(size) == 2:
            size_line = line
            break
    if len(size) != 2:
        raise ParseError("missing 'rows cols' size line", path, len(lines), 1)
    rows, cols = size
    values = []
    for tok, line, col in toks:
        if line == size_line:
            raise ParseError("size line must hold exactly two integers", path, line, col)
        if len(values) == rows * cols:
            raise ParseError(f"more than {rows * cols} values", path, line, col)
        values.append(_float(tok, path, line, col))
    if len(values) != rows * cols:
        raise ParseError(f"expected {rows * cols} values, found {len(values)}",
                         path, len(lines), 1)
    return DenseMatrix.from_column_major(values, rows, cols)


def write_dense_matrix(path, A):
    A = as_dense(A)
    with open(path, "w") as fh:
        fh.write(HEADER + "\n")
        fh.write(f"{A.rows} {A.cols}\n")
        for v in A.data:
            fh.write(f"{v:.17g}\n")


def read_vector(path, length=None):
    """Whitespace-separated decimals; checks ``length`` when given."""
    path = Path(path)
    lines = path.read_text().splitlines()
    values = []
    last = (1, 1)
    for tok, line, col in _tokens(lines, 0):
        values.append(_float(tok, path, line, col))
        last = (line, col)
    if not values:
        raise ParseError("no values found", path, 1, 1)
    if length is not None and len(values) != length:
        raise ParseError(f"expected {length} values, found {len(values)}", path, *last)
    return np.array(values)


def write_vector(path, x):
    """One value per line, 17 significant digits; ``path`` may be a file object."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise DimensionMismatch("expected a 1-D vector")
    text = "".join(f"{v:.17g}\n" for v in x)
    if hasattr(path, "write"):
        path.write(text)
    else:
        Path(path).write_text(text)
