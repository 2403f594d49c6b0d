"""Exception hierarchy shared by the whole package.

Every domain failure raises an UltranormError subclass so callers (and the
CLI) can distinguish bad inputs from bugs.
"""

from __future__ import annotations


class UltranormError(Exception):
    """Base class for all domain errors raised by this package."""


class ParseError(UltranormError):
    """A textual form (field tag, scalar, vector, probe file) is malformed.

    The message always names the offending token.
    """


class FieldMismatchError(UltranormError):
    """Two values from different fields were combined."""


class DimensionMismatchError(UltranormError):
    """Vectors (or a vector and a norm) of incompatible dimension were mixed."""


class EnumerationTooLargeError(UltranormError):
    """An enumeration would exceed its cap.

    `size` is the number of elements the enumeration would produce and
    `cap` the limit that was in force.
    """

    def __init__(self, size: int, cap: int, detail: str = ""):
        self.size = size
        self.cap = cap
        msg = f"enumeration of {size} elements exceeds cap {cap}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class DecompositionError(UltranormError):
    """A probe table is not the restriction of any axial taxicab isometry.

    `witness` is the first probe point whose image is inconsistent with the
    axial form, as a (point, image) pair.
    """

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class UnderdeterminedError(UltranormError):
    """A probe table lacks the axis probes needed to pin down a decomposition.

    `axis` is the 0-based index of the bare axis.
    """

    def __init__(self, message: str, axis: int):
        self.axis = axis
        super().__init__(message)


class HypothesisError(UltranormError):
    """A construction's hypothesis is violated (e.g. the sphere-shift map
    needs an ultrametric field with ||e0|| < ||v0||)."""
