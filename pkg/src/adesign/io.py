"""Plain-text block, matrix and group-subset files.

Block file:   first line `v b`, then one block per line as 0-based point indices.
Matrix file:  first line `n`, then n rows of n integers.
Subset file:  first line `group n_1 ... n_r`, then one element tuple per line.

Everything after `#` on a line is a comment; blank lines are skipped.
"""

import logging
from pathlib import Path
from typing import Iterator, Optional

import numpy as np

from adesign.algebra import AbelianGroup
from adesign.errors import AdesignError, FormatError
from adesign.incidence import IncidenceStructure, from_blocks
from adesign.setdiff import GroupSubset

logger = logging.getLogger(__name__)

_COMMENT = "#"


def _content_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    """Yield (line number, tokens) for every line that is not blank or a comment."""
    for number, line in enumerate(text.splitlines(), start=1):
        tokens = line.split(_COMMENT, 1)[0].split()
        if tokens:
            yield number, tokens


def _ints(number: int, tokens: list[str]) -> list[int]:
    try:
        return [int(tok) for tok in tokens]
    except ValueError:
        raise FormatError(f"Line {number}: expected integers, got {' '.join(tokens)!r}.") from None


def parse_blocks(text: str) -> IncidenceStructure:
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("Block file is empty.")
    number, header = lines[0]
    values = _ints(number, header)
    if len(values) != 2:
        raise FormatError(f"Line {number}: header must be `v b`, got {' '.join(header)!r}.")
    v, b = values
    blocks = [_ints(n, tokens) for n, tokens in lines[1:]]
    if len(blocks) != b:
        raise FormatError(f"Header announces {b} blocks, file has {len(blocks)}.")
    repeated = len({tuple(sorted(block)) for block in blocks}) != len(blocks)
    if repeated:
        logger.warning("Block file repeats a block; reading it as a multiset.")
    try:
        return from_blocks(v, blocks, allow_multiset=repeated)
    except AdesignError as e:
        raise FormatError(f"Invalid block file: {e}") from e


def format_blocks(structure: IncidenceStructure, comment: Optional[str] = None) -> str:
    lines = [f"{_COMMENT} {comment}"] if comment else []
    lines.append(f"{structure.v} {structure.b}")
    lines.extend(" ".join(str(x) for x in block) for block in structure.blocks)
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("Matrix file is empty.")
    number, header = lines[0]
    values = _ints(number, header)
    if len(values) != 1 or values[0] < 1:
        raise FormatError(f"Line {number}: header must be a positive `n`, got {' '.join(header)!r}.")
    n = values[0]
    rows = []
    for number, tokens in lines[1:]:
        row = _ints(number, tokens)
        if len(row) != n:
            raise FormatError(f"Line {number}: expected {n} entries, got {len(row)}.")
        try:
            rows.append(np.array(row, dtype=np.int64))
        except OverflowError:
            raise FormatError(f"Line {number}: entry does not fit in a 64-bit integer.") from None
    if len(rows) != n:
        raise FormatError(f"Header announces {n} rows, file has {len(rows)}.")
    return np.array(rows, dtype=np.int64)


def format_matrix(matrix) -> str:
    a = np.asarray(matrix, dtype=np.int64)
    lines = [str(a.shape[0])]
    lines.extend(" ".join(str(int(x)) for x in row) for row in a)
    return "\n".join(lines) + "\n"


def parse_group_subset(text: str) -> GroupSubset:
    lines = list(_content_lines(text))
    if not lines:
        raise FormatError("Subset file is empty.")
    number, header = lines[0]
    if header[0] != "group" or len(header) < 2:
        raise FormatError(f"Line {number}: header must be `group n_1 ... n_r`, got {' '.join(header)!r}.")
    factors = _ints(number, header[1:])
    try:
        group = AbelianGroup(tuple(factors))
        return GroupSubset(group, tuple(tuple(_ints(n, tokens)) for n, tokens in lines[1:]))
    except AdesignError as e:
        if isinstance(e, FormatError):
            raise
        raise FormatError(f"Invalid subset file: {e}") from e


def format_group_subset(subset: GroupSubset) -> str:
    lines = ["group " + " ".join(str(n) for n in subset.group.factors)]
    lines.extend(" ".join(str(x) for x in g) for g in subset.elements)
    return "\n".join(lines) + "\n"


def _read_text(path: str | Path) -> str:
    data = Path(path).read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        line = data[: e.start].count(b"\n") + 1
        raise FormatError(f"Line {line}: not valid UTF-8 text.") from None


def read_blocks(path: str | Path) -> IncidenceStructure:
    return parse_blocks(_read_text(path))


def write_blocks(path: str | Path, structure: IncidenceStructure, comment: Optional[str] = None) -> None:
    Path(path).write_text(format_blocks(structure, comment))


def read_matrix(path: str | Path) -> np.ndarray:
    return parse_matrix(_read_text(path))


def write_matrix(path: str | Path, matrix) -> None:
    Path(path).write_text(format_matrix(matrix))


def read_group_subset(path: str | Path) -> GroupSubset:
    return parse_group_subset(_read_text(path))


def write_group_subset(path: str | Path, subset: GroupSubset) -> None:
    Path(path).write_text(format_group_subset(subset))
