"""Text formats for schemes and Hadamard matrices.

Scheme file: first line ``n r``, then ``n`` lines of ``n`` relation indices.
Hadamard file: first line ``n``, then ``n`` lines of ``+``/``-`` characters
(space-separated ``1``/``-1`` is accepted on read).  Lines starting with ``#``
are comments.
"""

from __future__ import annotations

import hashlib
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .builder import BuiltScheme
from .hadamard import HadamardMatrix, verify_hadamard
from .scheme import AssociationScheme, verify_scheme

PathLike = Union[str, Path]


class FormatError(ValueError):
    pass


def _content_lines(text: str) -> list[str]:
    out = []
    for line in text.splitlines():
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            out.append(stripped)
    return out


def parse_scheme(text: str) -> AssociationScheme:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty scheme file")
    try:
        n, r = (int(v) for v in lines[0].split())
        rows = [[int(v) for v in line.split()] for line in lines[1:]]
    except ValueError as exc:
        raise FormatError(f"bad scheme file: {exc}") from exc
    if len(rows) != n or any(len(row) != n for row in rows):
        raise FormatError(f"expected {n} rows of {n} entries")
    scheme = verify_scheme(np.array(rows, dtype=np.int64))
    if scheme.r != r:
        raise FormatError(f"header says {r} relations but the matrix has {scheme.r}")
    return scheme


def format_scheme(scheme: AssociationScheme, header: Optional[str] = None) -> str:
    lines = [f"{scheme.n} {scheme.r}"]
    if header:
        lines.append(header)
    lines += [" ".join(str(int(v)) for v in row) for row in scheme.rel]
    return "\n".join(lines) + "\n"


def format_built(built: BuiltScheme) -> str:
    return format_scheme(built.scheme, built.label_line())


def parse_hadamard(text: str) -> HadamardMatrix:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty Hadamard file")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise FormatError(f"bad order line {lines[0]!r}") from exc
    body = lines[1:]
    if len(body) != n:
        raise FormatError(f"expected {n} rows, got {len(body)}")
    rows = []
    for line in body:
        if set(line) <= {"+", "-"}:
            rows.append([1 if ch == "+" else -1 for ch in line])
        else:
            try:
                rows.append([int(v) for v in line.split()])
            except ValueError as exc:
                raise FormatError(f"bad Hadamard row {line!r}") from exc
        if len(rows[-1]) != n:
            raise FormatError(f"row {line!r} does not have {n} entries")
    return verify_hadamard(np.array(rows, dtype=np.int64))


def format_hadamard(h: HadamardMatrix) -> str:
    return f"{h.n}\n{h}\n"


def read_scheme(path: PathLike) -> AssociationScheme:
    return parse_scheme(Path(path).read_text())


def write_scheme(path: PathLike, scheme: AssociationScheme) -> None:
    Path(path).write_text(format_scheme(scheme))


def read_hadamard(path: PathLike) -> HadamardMatrix:
    return parse_hadamard(Path(path).read_text())


def write_hadamard(path: PathLike, h: HadamardMatrix) -> None:
    Path(path).write_text(format_hadamard(h))


def file_digest(path: PathLike) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
