"""Plain-text matrix, vector and weights files.

Format::

    matrix <n> <m>          vector <n>          weights <n>
    <m numbers>  (n lines)  <n numbers>         <n numbers>

Blank lines are ignored. Numbers are written with 17 significant digits so a
printed value re-parses to the same double.
"""

from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np

from .errors import ParseError
from .models import Completion

DATA_DIR = Path(__file__).parent.parent / "data"


def _content_lines(path: Path, text: str) -> List[Tuple[int, str]]:
    lines = [(i, line.strip()) for i, line in enumerate(text.splitlines(), start=1)]
    lines = [(i, line) for i, line in lines if line]
    if not lines:
        raise ParseError(path, 1, "file is empty")
    return lines


def _parse_numbers(path: Path, line_no: int, line: str, count: int, nonnegative: bool) -> List[float]:
    tokens = line.split()
    if len(tokens) != count:
        raise ParseError(path, line_no, f"expected {count} numbers, found {len(tokens)}")
    values = []
    for token in tokens:
        try:
            value = float(token)
        except ValueError:
            raise ParseError(path, line_no, f"not a number: {token!r}") from None
        if not np.isfinite(value):
            raise ParseError(path, line_no, f"non-finite value: {token!r}")
        if nonnegative and value < 0:
            raise ParseError(path, line_no, f"negative value {token} where non-negative is required")
        values.append(value)
    return values


def _parse_header(path: Path, line_no: int, line: str, keyword: str, dims: int) -> List[int]:
    tokens = line.split()
    if len(tokens) != dims + 1 or tokens[0] != keyword:
        shape = " ".join(["<n>", "<m>"][:dims])
        raise ParseError(path, line_no, f"expected header '{keyword} {shape}', found {line!r}")
    try:
        sizes = [int(t) for t in tokens[1:]]
    except ValueError:
        raise ParseError(path, line_no, f"header sizes must be integers: {line!r}") from None
    if any(s < 1 for s in sizes):
        raise ParseError(path, line_no, f"header sizes must be >= 1: {line!r}")
    return sizes


def parse_matrix(text: str, path="<string>", nonnegative: bool = True) -> np.ndarray:
    lines = _content_lines(path, text)
    header_no, header = lines[0]
    n, m = _parse_header(path, header_no, header, "matrix", 2)
    rows = lines[1 : n + 1]
    if len(rows) != n:
        last = lines[-1][0]
        raise ParseError(path, last, f"expected {n} matrix rows, found {len(rows)}")
    if len(lines) > n + 1:
        raise ParseError(path, lines[n + 1][0], "unexpected trailing content")
    return np.array([_parse_numbers(path, no, line, m, nonnegative) for no, line in rows])


def _parse_flat(text: str, path, keyword: str, nonnegative: bool) -> np.ndarray:
    lines = _content_lines(path, text)
    header_no, header = lines[0]
    (n,) = _parse_header(path, header_no, header, keyword, 1)
    if len(lines) < 2:
        raise ParseError(path, header_no, f"missing the line of {n} numbers")
    if len(lines) > 2:
        raise ParseError(path, lines[2][0], "unexpected trailing content")
    no, line = lines[1]
    return np.array(_parse_numbers(path, no, line, n, nonnegative))


def parse_vector(text: str, path="<string>", nonnegative: bool = True) -> np.ndarray:
    return _parse_flat(text, path, "vector", nonnegative)


def parse_weights(text: str, path="<string>") -> np.ndarray:
    weights = _parse_flat(text, path, "weights", nonnegative=True)
    if np.any(weights <= 0):
        lines = _content_lines(path, text)
        raise ParseError(path, lines[1][0], "weights must be strictly positive")
    return weights


def read_matrix(path, nonnegative: bool = True) -> np.ndarray:
    path = Path(path)
    return parse_matrix(_read(path), path, nonnegative)


def read_vector(path, nonnegative: bool = True) -> np.ndarray:
    path = Path(path)
    return parse_vector(_read(path), path, nonnegative)


def read_weights(path) -> np.ndarray:
    path = Path(path)
    return parse_weights(_read(path), path)


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(path, 0, f"cannot read file: {exc.strerror}") from None


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def format_matrix(entries: np.ndarray) -> str:
    n, m = entries.shape
    rows = [" ".join(_fmt(v) for v in row) for row in entries]
    return "\n".join([f"matrix {n} {m}", *rows]) + "\n"


def format_vector(entries: np.ndarray, keyword: str = "vector") -> str:
    return f"{keyword} {entries.shape[0]}\n" + " ".join(_fmt(v) for v in entries) + "\n"


def format_completion(completion: Completion) -> str:
    return format_matrix(completion.A.entries) + f"completion lambda={_fmt(completion.lam)}\n"


def parse_completion(text: str, path="<string>") -> Tuple[np.ndarray, float]:
    """Inverse of ``format_completion``: the matrix and its lambda."""
    lines = _content_lines(path, text)
    sidecar_no, sidecar = lines[-1]
    if not sidecar.startswith("completion lambda="):
        raise ParseError(path, sidecar_no, f"expected 'completion lambda=<value>', found {sidecar!r}")
    try:
        lam = float(sidecar.split("=", 1)[1])
    except ValueError:
        raise ParseError(path, sidecar_no, f"bad lambda value: {sidecar!r}") from None
    body = "\n".join(line for _, line in lines[:-1])
    return parse_matrix(body, path), lam


def read_completion(path) -> Tuple[np.ndarray, float]:
    path = Path(path)
    return parse_completion(_read(path), path)


def load_example(name: str, directory: Optional[Path] = None) -> np.ndarray:
    """Load a bundled example from ``data/`` by file stem, dispatching on its header."""
    path = (directory or DATA_DIR) / f"{name}.txt"
    text = _read(path)
    keyword = text.split(maxsplit=1)[0] if text.strip() else ""
    if keyword == "matrix":
        return parse_matrix(text, path)
    if keyword == "weights":
        return parse_weights(text, path)
    return parse_vector(text, path)
