"""Exception types shared across the toolkit."""

from __future__ import annotations


class LiftmeshError(Exception):
    """Base class for all liftmesh errors."""


class InputFormatError(LiftmeshError):
    """Malformed input table: missing columns, bad cells, broken header."""


class DuplicateIdError(InputFormatError):
    """An ID column contains repeated values."""

    def __init__(self, ids) -> None:
        self.ids = sorted(int(i) for i in ids)
        super().__init__(f"duplicate ID values: {self.ids}")


class DegenerateAxisError(LiftmeshError):
    """An embedding axis has zero range and cannot be rescaled."""

    def __init__(self, axis: str) -> None:
        self.axis = axis
        super().__init__(f"axis {axis!r} has zero range")


class IdMismatchError(LiftmeshError):
    """The two input tables do not share the same ID set."""

    def __init__(self, missing_in_emb, missing_in_highd) -> None:
        self.missing_in_emb = sorted(int(i) for i in missing_in_emb)
        self.missing_in_highd = sorted(int(i) for i in missing_in_highd)
        super().__init__(
            f"ID sets differ: missing_in_emb={self.missing_in_emb}, "
            f"missing_in_highd={self.missing_in_highd}"
        )


class ConfigError(LiftmeshError):
    """Invalid grid or run parameter."""


class EmptyModelError(LiftmeshError):
    """Pruning removed every bin; no model remains."""
