"""
Group files.

.gtab   gtab 1
        order N
        labels l0 ... l(N-1)        (optional; shell-style quoting for labels with spaces)
        N rows of N indices          row i lists the products i*j; index 0 is the identity

.gperm  gperm 1
        degree D
        gen (1 2 3)(4 5)             one line per generator, 1-based cycles

Blank lines and lines starting with '#' are ignored.
"""
import hashlib
import logging
import shlex
from pathlib import Path
from typing import List, Optional, TextIO, Tuple, Union

import numpy as np

from .config import Config, get_config
from .errors import BadParameter, GroupFileError, OrderCapExceeded
from .groups import (FiniteGroup, Provenance, from_multiplication_table,
                     from_permutation_generators, parse_cycles)

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _content_lines(text: str) -> List[Tuple[int, str]]:
    """(1-based line number, text) for every line that carries content."""
    lines = []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            lines.append((number, line.rstrip()))
    return lines


def _column(line: str, token: str, start: int = 0) -> int:
    return line.find(token, start) + 1


class _Reader:
    def __init__(self, path: str, text: str) -> None:
        self.path = path
        self.lines = _content_lines(text)
        self.i = 0
        self.last_line = len(text.splitlines())

    def error(self, line: int, column: int, message: str) -> GroupFileError:
        return GroupFileError(self.path, line, column, message)

    def next(self, what: str) -> Tuple[int, str]:
        if self.i >= len(self.lines):
            raise self.error(self.last_line + 1, 1, f"unexpected end of file, expected {what}")
        item = self.lines[self.i]
        self.i += 1
        return item

    def peek_keyword(self) -> Optional[str]:
        if self.i >= len(self.lines):
            return None
        return self.lines[self.i][1].split()[0]

    def keyword_int(self, keyword: str) -> int:
        number, line = self.next(f"'{keyword} <n>'")
        parts = line.split()
        if parts[0] != keyword:
            raise self.error(number, _column(line, parts[0]) , f"expected '{keyword}'")
        if len(parts) != 2:
            raise self.error(number, len(line) + 1, f"'{keyword}' takes one integer")
        try:
            value = int(parts[1])
        except ValueError:
            raise self.error(number, _column(line, parts[1], len(keyword)),
                             f"{parts[1]!r} is not an integer")
        if value < 1:
            raise self.error(number, _column(line, parts[1], len(keyword)),
                             f"{keyword} must be positive")
        return value

    def header(self, magic: str) -> None:
        number, line = self.next(f"'{magic} 1'")
        if line.split() != [magic, "1"]:
            raise self.error(number, 1, f"expected header '{magic} 1'")


def _read_gtab(reader: _Reader, config: Config, provenance: Provenance,
               name: str) -> FiniteGroup:
    reader.header("gtab")
    n = reader.keyword_int("order")
    if n > config.max_order:
        raise OrderCapExceeded("group order", config.max_order, n)
    labels = None
    if reader.peek_keyword() == "labels":
        number, line = reader.next("labels")
        try:
            labels = shlex.split(line)[1:]
        except ValueError as exc:
            raise reader.error(number, 1, f"bad labels line: {exc}")
        if len(labels) != n:
            raise reader.error(number, len(line) + 1, f"{len(labels)} labels for order {n}")
    table = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        number, line = reader.next(f"table row {i}")
        tokens = line.split()
        pos = 0
        for j, token in enumerate(tokens[:n]):
            col = line.find(token, pos) + 1
            pos = col + len(token) - 1
            try:
                value = int(token)
            except ValueError:
                raise reader.error(number, col, f"{token!r} is not an integer")
            if not 0 <= value < n:
                raise reader.error(number, col, f"index {value} outside 0..{n - 1}")
            table[i, j] = value
        if len(tokens) != n:
            raise reader.error(number, len(line) + 1, f"row {i} has {len(tokens)} entries, expected {n}")
    if reader.i < len(reader.lines):
        number, line = reader.lines[reader.i]
        raise reader.error(number, 1, "trailing content after the table")
    G = from_multiplication_table(table, labels, provenance=provenance, name=name, config=config)
    if not ((table[0] == np.arange(n)).all() and (table[:, 0] == np.arange(n)).all()):
        raise reader.error(reader.lines[3 if labels else 2][0], 1, "element 0 must be the identity")
    return G


def _read_gperm(reader: _Reader, config: Config, provenance: Provenance,
                name: str) -> FiniteGroup:
    reader.header("gperm")
    degree = reader.keyword_int("degree")
    gens = []
    while reader.i < len(reader.lines):
        number, line = reader.next("gen")
        stripped = line.lstrip()
        if not stripped.startswith("gen"):
            raise reader.error(number, len(line) - len(stripped) + 1, "expected 'gen <cycles>'")
        body = stripped[3:]
        try:
            gens.append(parse_cycles(body, degree))
        except BadParameter as exc:
            raise reader.error(number, line.find(body.strip()) + 1 if body.strip() else len(line) + 1,
                               str(exc))
    return from_permutation_generators(degree, gens, name=name, provenance=provenance,
                                       config=config)


def ingest_group(path: PathLike, config: Optional[Config] = None) -> FiniteGroup:
    """Read a .gtab or .gperm file; the header line decides the format."""
    config = get_config(config)
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise BadParameter(f"cannot read {path}: {exc.strerror}")
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise GroupFileError(str(path), 1, 1, "file is not UTF-8 text")
    provenance = Provenance("file", str(path), hashlib.sha256(raw).hexdigest())
    reader = _Reader(str(path), text)
    magic = reader.peek_keyword()
    name = path.stem
    if magic == "gtab":
        G = _read_gtab(reader, config, provenance, name)
    elif magic == "gperm":
        G = _read_gperm(reader, config, provenance, name)
    else:
        line = reader.lines[0][0] if reader.lines else 1
        raise GroupFileError(str(path), line, 1, "expected a 'gtab 1' or 'gperm 1' header")
    logger.info("read %s: order %d", path, G.order)
    return G


def write_gtab(G: FiniteGroup, stream: TextIO) -> None:
    stream.write("gtab 1\n")
    stream.write(f"order {G.order}\n")
    stream.write("labels " + " ".join(shlex.quote(label) for label in G.labels) + "\n")
    for row in G.mul.tolist():
        stream.write(" ".join(str(v) for v in row) + "\n")


def export_gtab(G: FiniteGroup, path: PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        write_gtab(G, fh)
    logger.info("wrote %s (%s)", path, G.name)
