"""Matrix Market reader/writer.

Supports the ``array`` and ``coordinate`` formats with ``real`` or
``integer`` fields and ``general`` or ``symmetric`` symmetry. Array files
load as dense matrices (the file's column-major value order matches the
in-memory layout); square coordinate files load as CSR operators, with the
stored triangle of a symmetric file expanded. Values are written with
shortest round-trip precision, so write -> read reproduces them bitwise.
"""

import numpy as np

from .exceptions import DimensionError, ParseError, UnsupportedFormatError
from .operators import CsrSpdOperator, DenseSpdOperator, SpdOperator, as_matrix, csr_from_coo

_HEADER_PREFIX = "%%matrixmarket"


class _Lines:
    def __init__(self, path):
        with open(path, "r", encoding="ascii") as fh:
            self.lines = fh.read().splitlines()
        self.pos = 0

    def next_content(self):
        """Next non-comment, non-blank line; returns (line_number, text)."""
        while self.pos < len(self.lines):
            self.pos += 1
            text = self.lines[self.pos - 1]
            stripped = text.strip()
            if stripped and not stripped.startswith("%"):
                return self.pos, stripped
        return None, None


def _parse_header(path, lines):
    if not lines.lines:
        raise ParseError("empty file", 1)
    header = lines.lines[0].strip()
    lines.pos = 1
    parts = header.lower().split()
    if len(parts) != 5 or parts[0] != _HEADER_PREFIX or parts[1] != "matrix":
        raise ParseError(f"not a Matrix Market header: {header!r}", 1)
    fmt, field, symmetry = parts[2], parts[3], parts[4]
    if fmt not in ("array", "coordinate"):
        raise UnsupportedFormatError(f"unsupported format {fmt!r} in {path}")
    if field not in ("real", "integer"):
        raise UnsupportedFormatError(f"unsupported field {field!r} in {path}")
    if symmetry not in ("general", "symmetric"):
        raise UnsupportedFormatError(f"unsupported symmetry {symmetry!r} in {path}")
    return fmt, field, symmetry


def _parse_floats(text, count, lineno):
    parts = text.split()
    if len(parts) != count:
        raise ParseError(f"expected {count} fields, got {len(parts)}", lineno)
    try:
        return [float(p) for p in parts]
    except ValueError as exc:
        raise ParseError(str(exc), lineno) from None


def read_matrix_market(path):
    """Read a Matrix Market file.

    Returns a dense matrix for array files and a CSR operator for square
    coordinate files; non-square coordinate files densify to a matrix.
    """
    lines = _Lines(path)
    fmt, _field, symmetry = _parse_header(path, lines)
    lineno, size_line = lines.next_content()
    if size_line is None:
        raise ParseError("missing size line", len(lines.lines))

    if fmt == "array":
        dims = size_line.split()
        if len(dims) != 2:
            raise ParseError(f"array size line needs 2 fields, got {len(dims)}", lineno)
        try:
            rows, cols = int(dims[0]), int(dims[1])
        except ValueError:
            raise ParseError(f"bad size line {size_line!r}", lineno) from None
        if rows < 1 or cols < 1:
            raise ParseError("dimensions must be positive", lineno)
        if symmetry == "symmetric" and rows != cols:
            raise ParseError("symmetric array file must be square", lineno)
        n_entries = rows * cols if symmetry == "general" else rows * (rows + 1) // 2
        values = np.empty(n_entries)
        for k in range(n_entries):
            lineno, text = lines.next_content()
            if text is None:
                raise ParseError(f"expected {n_entries} values, found {k}", len(lines.lines))
            values[k] = _parse_floats(text, 1, lineno)[0]
        M = np.empty((rows, cols), order="F")
        if symmetry == "general":
            M.ravel(order="F")[:] = values
        else:
            k = 0
            for j in range(cols):
                for i in range(j, rows):
                    M[i, j] = values[k]
                    M[j, i] = values[k]
                    k += 1
        if not np.all(np.isfinite(M)):
            raise ParseError("non-finite value in array data", lineno)
        return M

    dims = size_line.split()
    if len(dims) != 3:
        raise ParseError(f"coordinate size line needs 3 fields, got {len(dims)}", lineno)
    try:
        rows, cols, nnz = int(dims[0]), int(dims[1]), int(dims[2])
    except ValueError:
        raise ParseError(f"bad size line {size_line!r}", lineno) from None
    if rows < 1 or cols < 1 or nnz < 0:
        raise ParseError("bad coordinate dimensions", lineno)
    if symmetry == "symmetric" and rows != cols:
        raise ParseError("symmetric coordinate file must be square", lineno)
    ri = np.empty(nnz, dtype=np.int64)
    ci = np.empty(nnz, dtype=np.int64)
    vv = np.empty(nnz)
    for k in range(nnz):
        lineno, text = lines.next_content()
        if text is None:
            raise ParseError(f"expected {nnz} entries, found {k}", len(lines.lines))
        parts = text.split()
        if len(parts) != 3:
            raise ParseError(f"expected 'i j value', got {text!r}", lineno)
        try:
            i, j, v = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        if not (1 <= i <= rows and 1 <= j <= cols):
            raise ParseError(f"index ({i}, {j}) outside {rows}x{cols}", lineno)
        if not np.isfinite(v):
            raise ParseError("non-finite value", lineno)
        ri[k], ci[k], vv[k] = i - 1, j - 1, v

    if symmetry == "symmetric":
        off = ri != ci
        ri, ci, vv = (
            np.concatenate([ri, ci[off]]),
            np.concatenate([ci, ri[off]]),
            np.concatenate([vv, vv[off]]),
        )

    if rows == cols:
        return csr_from_coo(rows, ri, ci, vv)
    M = np.zeros((rows, cols), order="F")
    np.add.at(M, (ri, ci), vv)
    return M


def _fmt(v):
    # repr of a Python float is the shortest string that round-trips.
    return repr(float(v))


def write_matrix_market(path, obj, comment=None):
    """Write a dense matrix (array format) or CSR operator (coordinate format)."""
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        if isinstance(obj, CsrSpdOperator):
            fh.write("%%MatrixMarket matrix coordinate real general\n")
            if comment:
                fh.write(f"% {comment}\n")
            fh.write(f"{obj.dim} {obj.dim} {obj.nnz}\n")
            for i in range(obj.dim):
                for k in range(obj.indptr[i], obj.indptr[i + 1]):
                    fh.write(f"{i + 1} {obj.indices[k] + 1} {_fmt(obj.data[k])}\n")
            return
        if isinstance(obj, DenseSpdOperator):
            obj = obj.matrix
        elif isinstance(obj, SpdOperator):
            raise DimensionError(f"cannot serialize operator type {type(obj).__name__}")
        M = as_matrix(obj)
        fh.write("%%MatrixMarket matrix array real general\n")
        if comment:
            fh.write(f"% {comment}\n")
        fh.write(f"{M.shape[0]} {M.shape[1]}\n")
        for v in M.ravel(order="F"):
            fh.write(f"{_fmt(v)}\n")
