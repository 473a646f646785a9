"""Load, validate, and align the two input tables.

Inputs are comma-delimited text files with a header row. The p-D table
needs an integer ``ID`` column plus coordinate columns named ``x1..xp``;
the layout table needs ``ID``, ``emb1`` and ``emb2``. Rows are
canonicalized to ascending ID order so every downstream computation is
deterministic. Non-finite cells are rejected rather than imputed.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import (
    DegenerateAxisError,
    DuplicateIdError,
    IdMismatchError,
    InputFormatError,
)

_X_COL = re.compile(r"^x(\d+)$")


@dataclass(frozen=True)
class HighDTable:
    """n rows of p-D coordinates keyed by unique integer IDs, sorted by ID."""

    ids: np.ndarray     # (n,) int64
    coords: np.ndarray  # (n, p) float64

    @property
    def n(self) -> int:
        return int(self.ids.size)

    @property
    def p(self) -> int:
        return int(self.coords.shape[1])


@dataclass(frozen=True)
class EmbeddingTable:
    """n rows of 2-D layout coordinates keyed by the same IDs, sorted by ID."""

    ids: np.ndarray     # (n,) int64
    coords: np.ndarray  # (n, 2) float64

    @property
    def n(self) -> int:
        return int(self.ids.size)


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


def _sorted_by_id(ids: np.ndarray, coords: np.ndarray):
    order = np.argsort(ids, kind="stable")
    return _freeze(ids[order]), _freeze(coords[order])


def _check_unique_ids(ids: np.ndarray) -> None:
    uniq, counts = np.unique(ids, return_counts=True)
    if np.any(counts > 1):
        raise DuplicateIdError(uniq[counts > 1])


def highd_from_arrays(ids, coords) -> HighDTable:
    """Build a validated HighDTable from in-memory arrays."""
    ids = np.asarray(ids, dtype=np.int64)
    coords = np.asarray(coords, dtype=np.float64)
    if coords.ndim != 2 or coords.shape[0] != ids.size:
        raise InputFormatError("coords must be (n, p) matching ids")
    if coords.shape[1] < 2:
        raise InputFormatError(f"need at least 2 coordinate columns, got {coords.shape[1]}")
    _check_unique_ids(ids)
    if not np.all(np.isfinite(coords)):
        bad = np.argwhere(~np.isfinite(coords))[0]
        raise InputFormatError(
            f"non-finite value in column x{bad[1] + 1} for ID {int(ids[bad[0]])}"
        )
    ids, coords = _sorted_by_id(ids, coords)
    return HighDTable(ids=ids, coords=coords)


def embedding_from_arrays(ids, coords) -> EmbeddingTable:
    """Build a validated EmbeddingTable from in-memory arrays."""
    ids = np.asarray(ids, dtype=np.int64)
    if ids.size == 0:
        raise InputFormatError("embedding table has no rows")
    coords = np.asarray(coords, dtype=np.float64)
    if coords.ndim != 2 or coords.shape != (ids.size, 2):
        raise InputFormatError("embedding coords must be (n, 2) matching ids")
    _check_unique_ids(ids)
    if not np.all(np.isfinite(coords)):
        bad = np.argwhere(~np.isfinite(coords))[0]
        raise InputFormatError(
            f"non-finite value in column emb{bad[1] + 1} for ID {int(ids[bad[0]])}"
        )
    for axis, col in (("emb1", coords[:, 0]), ("emb2", coords[:, 1])):
        if float(col.max() - col.min()) == 0.0:
            raise DegenerateAxisError(axis)
    ids, coords = _sorted_by_id(ids, coords)
    return EmbeddingTable(ids=ids, coords=coords)


def _read_rows(path) -> tuple[list[str], list[list[str]]]:
    path = Path(path)
    if not path.exists():
        raise InputFormatError(f"input file not found: {path}")
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise InputFormatError(f"empty file, no header row: {path}") from None
        rows = [row for row in reader if row]
    return [c.strip() for c in header], rows


def _parse_id(cell: str, row_num: int) -> int:
    try:
        return int(cell)
    except ValueError:
        raise InputFormatError(
            f"non-integer value {cell!r} in column ID (row {row_num})"
        ) from None


def _parse_float(cell: str, col: str, row_num: int) -> float:
    try:
        return float(cell)
    except ValueError:
        raise InputFormatError(
            f"non-numeric value {cell!r} in column {col} (row {row_num})"
        ) from None


def load_highd(path) -> HighDTable:
    """Load a p-D data file with columns ID, x1..xp.

    p is inferred from the x-prefixed columns, which must be the
    contiguous run x1..xp with p >= 2.
    """
    header, rows = _read_rows(path)
    if "ID" not in header:
        raise InputFormatError(f"missing ID column in {path}")
    id_pos = header.index("ID")
    x_cols: dict[int, int] = {}
    for pos, name in enumerate(header):
        m = _X_COL.match(name)
        if m:
            x_cols[int(m.group(1))] = pos
    extra = [c for c in header if c != "ID" and not _X_COL.match(c)]
    if extra:
        raise InputFormatError(f"unexpected columns {extra}; expected ID and x1..xp")
    p = len(x_cols)
    if p < 2:
        raise InputFormatError(f"need at least 2 x-columns, found {p}")
    if sorted(x_cols) != list(range(1, p + 1)):
        raise InputFormatError(
            f"x-columns must be the contiguous run x1..x{p}, found {sorted(x_cols)}"
        )
    positions = [x_cols[j] for j in range(1, p + 1)]

    ids = np.empty(len(rows), dtype=np.int64)
    coords = np.empty((len(rows), p), dtype=np.float64)
    for i, row in enumerate(rows):
        if len(row) != len(header):
            raise InputFormatError(f"row {i + 2} has {len(row)} cells, expected {len(header)}")
        ids[i] = _parse_id(row[id_pos], i + 2)
        for j, pos in enumerate(positions):
            coords[i, j] = _parse_float(row[pos], f"x{j + 1}", i + 2)
    return highd_from_arrays(ids, coords)


def load_embedding(path) -> EmbeddingTable:
    """Load a 2-D layout file with columns ID, emb1, emb2."""
    header, rows = _read_rows(path)
    for col in ("ID", "emb1", "emb2"):
        if col not in header:
            raise InputFormatError(f"missing {col} column in {path}")
    id_pos = header.index("ID")
    e1_pos = header.index("emb1")
    e2_pos = header.index("emb2")

    ids = np.empty(len(rows), dtype=np.int64)
    coords = np.empty((len(rows), 2), dtype=np.float64)
    for i, row in enumerate(rows):
        if len(row) != len(header):
            raise InputFormatError(f"row {i + 2} has {len(row)} cells, expected {len(header)}")
        ids[i] = _parse_id(row[id_pos], i + 2)
        coords[i, 0] = _parse_float(row[e1_pos], "emb1", i + 2)
        coords[i, 1] = _parse_float(row[e2_pos], "emb2", i + 2)
    return embedding_from_arrays(ids, coords)


def align(highd: HighDTable, emb: EmbeddingTable) -> tuple[HighDTable, EmbeddingTable]:
    """Check that both tables cover the same ID set; return them ID-sorted.

    Raises IdMismatchError carrying the symmetric difference of the two
    ID sets when they disagree.
    """
    if not np.array_equal(highd.ids, emb.ids):
        hset = set(highd.ids.tolist())
        eset = set(emb.ids.tolist())
        raise IdMismatchError(missing_in_emb=hset - eset, missing_in_highd=eset - hset)
    return highd, emb


def write_highd(table: HighDTable, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["ID"] + [f"x{j + 1}" for j in range(table.p)])
        for i in range(table.n):
            writer.writerow([int(table.ids[i])] + [repr(v) for v in table.coords[i].tolist()])


def write_embedding(table: EmbeddingTable, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["ID", "emb1", "emb2"])
        for i in range(table.n):
            writer.writerow([int(table.ids[i])] + [repr(v) for v in table.coords[i].tolist()])
