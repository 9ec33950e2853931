"""Matrix Market reader and writer for dense matrices.

Reads ``array`` and ``coordinate`` files with ``real``, ``integer`` or
``complex`` fields and ``general``, ``symmetric``, ``skew-symmetric`` or
``hermitian`` symmetry.  Hand-rolled rather than ``scipy.io.mmread`` so that
every error carries its line number.
"""
import numpy as np

from ..errors import IoError, ParseError, UnsupportedField

FIELDS = ("real", "integer", "complex")
SYMMETRIES = ("general", "symmetric", "skew-symmetric", "hermitian")


def _data_lines(lines, start):
    for k in range(start, len(lines)):
        s = lines[k].strip()
        if s and not s.startswith("%"):
            yield k + 1, s.split()


def _number(tokens, field, lineno):
    want = 2 if field == "complex" else 1
    if len(tokens) != want:
        raise ParseError(f"expected {want} value(s), got {len(tokens)}", lineno)
    try:
        if field == "integer":
            return complex(int(tokens[0]))
        if field == "complex":
            return complex(float(tokens[0]), float(tokens[1]))
        return complex(float(tokens[0]))
    except ValueError:
        raise ParseError(f"bad number {' '.join(tokens)!r}", lineno) from None


def _mirror(M, i, j, v, symmetry):
    if i == j:
        return
    if symmetry == "symmetric":
        M[j, i] = v
    elif symmetry == "skew-symmetric":
        M[j, i] = -v
    elif symmetry == "hermitian":
        M[j, i] = np.conj(v)


def parse_matrix_market(text):
    """Dense complex matrix from Matrix Market text."""
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty file", 1)
    head = lines[0].split()
    if len(head) != 5 or head[0] != "%%MatrixMarket" or head[1].lower() != "matrix":
        raise ParseError("expected '%%MatrixMarket matrix <format> <field> <symmetry>'", 1)
    fmt, field, symmetry = (h.lower() for h in head[2:])
    if field == "pattern":
        raise UnsupportedField("pattern matrices carry no values")
    if fmt not in ("array", "coordinate"):
        raise ParseError(f"unknown format {fmt!r}", 1)
    if field not in FIELDS:
        raise UnsupportedField(f"field {field!r} is not supported")
    if symmetry not in SYMMETRIES:
        raise ParseError(f"unknown symmetry {symmetry!r}", 1)
    if symmetry == "hermitian" and field != "complex":
        raise ParseError("hermitian symmetry needs a complex field", 1)

    data = _data_lines(lines, 1)
    try:
        lineno, size = next(data)
    except StopIteration:
        raise ParseError("missing size line", len(lines)) from None
    try:
        dims = [int(t) for t in size]
    except ValueError:
        raise ParseError(f"bad size line {' '.join(size)!r}", lineno) from None
    want = 2 if fmt == "array" else 3
    if len(dims) != want or min(dims) < 0:
        raise ParseError(f"size line needs {want} non-negative integers", lineno)
    nr, nc = dims[0], dims[1]
    if symmetry != "general" and nr != nc:
        raise ParseError(f"{symmetry} matrix must be square", lineno)
    M = np.zeros((nr, nc), dtype=np.complex128)

    if fmt == "array":
        if symmetry == "general":
            slots = [(i, j) for j in range(nc) for i in range(nr)]
        elif symmetry == "skew-symmetric":
            slots = [(i, j) for j in range(nc) for i in range(j + 1, nr)]
        else:
            slots = [(i, j) for j in range(nc) for i in range(j, nr)]
        for i, j in slots:
            try:
                lineno, tok = next(data)
            except StopIteration:
                raise ParseError(f"expected {len(slots)} entries", len(lines)) from None
            v = _number(tok, field, lineno)
            M[i, j] = v
            _mirror(M, i, j, v, symmetry)
    else:
        nnz = dims[2]
        for _ in range(nnz):
            try:
                lineno, tok = next(data)
            except StopIteration:
                raise ParseError(f"expected {nnz} entries", len(lines)) from None
            try:
                i, j = int(tok[0]) - 1, int(tok[1]) - 1
            except (ValueError, IndexError):
                raise ParseError("bad entry indices", lineno) from None
            if not (0 <= i < nr and 0 <= j < nc):
                raise ParseError(f"index ({i + 1}, {j + 1}) outside {nr}x{nc}", lineno)
            if symmetry != "general" and j > i:
                raise ParseError("symmetric storage expects the lower triangle", lineno)
            v = _number(tok[2:], field, lineno)
            M[i, j] = v
            _mirror(M, i, j, v, symmetry)
    for lineno, _ in data:
        raise ParseError("trailing data after the last entry", lineno)
    return M


def read_matrix_market(path):
    try:
        with open(path, encoding="ascii") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise IoError(f"cannot read {path}: {exc}") from None
    return parse_matrix_market(text)


def format_matrix_market(M, comment=None):
    """Array-format text; the field is ``real`` when every entry is real."""
    M = np.asarray(M)
    if M.ndim == 1:
        M = M.reshape(-1, 1)
    is_real = not np.iscomplexobj(M) or not np.any(M.imag)
    out = [f"%%MatrixMarket matrix array {'real' if is_real else 'complex'} general"]
    if comment:
        out.extend(f"% {line}" for line in comment.splitlines())
    out.append(f"{M.shape[0]} {M.shape[1]}")
    for v in M.T.ravel():
        v = complex(v)
        out.append(f"{v.real:.17g}" if is_real else f"{v.real:.17g} {v.imag:.17g}")
    return "\n".join(out) + "\n"


def write_matrix_market(path, M, comment=None):
    try:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(format_matrix_market(M, comment))
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from None
