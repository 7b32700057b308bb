"""Time series on explicit integer supports and the shift-minimized squared distance.

A series is defined exactly on [start_index, start_index + len - 1]; reading
outside that range raises SupportError rather than fabricating zeros. All types
here are immutable and all operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Optional, Sequence

import numpy as np

from .errors import ParamError, SupportError


class Label(IntEnum):
    POSITIVE = 1
    NEGATIVE = -1

    @classmethod
    def from_int(cls, value: int) -> "Label":
        if value == 1:
            return cls.POSITIVE
        if value == -1:
            return cls.NEGATIVE
        raise ParamError(f"label must be +1 or -1, got {value!r}")


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """A real-valued signal on the integer range [start_index, start_index + len - 1]."""

    start_index: int
    values: np.ndarray
    id: str = ""

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 1:
            raise ParamError(f"series {self.id!r}: values must be one-dimensional")
        if arr.size == 0:
            raise ParamError(f"series {self.id!r}: values must be non-empty")
        if not np.all(np.isfinite(arr)):
            raise ParamError(f"series {self.id!r}: values must be finite")
        if arr is self.values and arr.flags.writeable:
            arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "start_index", int(self.start_index))

    def __len__(self) -> int:
        return self.values.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return (
            self.start_index == other.start_index
            and self.id == other.id
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self) -> str:
        return (
            f"TimeSeries(id={self.id!r}, support=[{self.start_index}, "
            f"{self.end_index}], n={len(self)})"
        )

    @property
    def end_index(self) -> int:
        return self.start_index + len(self) - 1

    def covers(self, first: int, last: int) -> bool:
        return self.start_index <= first and last <= self.end_index

    def window(self, first: int, last: int) -> np.ndarray:
        """Values on [first, last] as a read-only view."""
        if last < first:
            raise ParamError(f"empty window [{first}, {last}]")
        if not self.covers(first, last):
            raise SupportError(
                f"series {self.id!r} is defined on [{self.start_index}, "
                f"{self.end_index}] but [{first}, {last}] was requested"
            )
        offset = first - self.start_index
        return self.values[offset : offset + (last - first + 1)]

    def value_at(self, t: int) -> float:
        return float(self.window(t, t)[0])

    def with_id(self, new_id: str) -> "TimeSeries":
        return TimeSeries(self.start_index, self.values, id=new_id)


@dataclass(frozen=True)
class Provenance:
    """Which latent source generated an example and at what shift."""

    source_index: int
    shift: int


@dataclass(frozen=True)
class LabeledDataset:
    """Training examples split by label, with optional generation provenance."""

    positives: tuple
    negatives: tuple
    positive_provenance: Optional[tuple] = None
    negative_provenance: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "positives", tuple(self.positives))
        object.__setattr__(self, "negatives", tuple(self.negatives))
        if self.positive_provenance is not None:
            object.__setattr__(self, "positive_provenance", tuple(self.positive_provenance))
            if len(self.positive_provenance) != len(self.positives):
                raise ParamError("positive_provenance length must match positives")
        if self.negative_provenance is not None:
            object.__setattr__(self, "negative_provenance", tuple(self.negative_provenance))
            if len(self.negative_provenance) != len(self.negatives):
                raise ParamError("negative_provenance length must match negatives")
        if self.n == 0:
            raise ParamError("dataset must contain at least one example")

    @property
    def n(self) -> int:
        return len(self.positives) + len(self.negatives)

    @property
    def n_pos(self) -> int:
        return len(self.positives)

    @property
    def n_neg(self) -> int:
        return len(self.negatives)

    def examples(self) -> tuple:
        """All examples in insertion order: positives first, then negatives."""
        return self.positives + self.negatives

    def labels(self) -> np.ndarray:
        return np.array([1] * self.n_pos + [-1] * self.n_neg, dtype=np.int64)

    def provenance(self) -> tuple:
        """Per-example provenance in insertion order; ProvenanceError when absent."""
        from .errors import ProvenanceError

        if self.positive_provenance is None or self.negative_provenance is None:
            raise ProvenanceError("dataset carries no generation provenance")
        return self.positive_provenance + self.negative_provenance

    def require_both_classes(self) -> None:
        if self.n_pos == 0 or self.n_neg == 0:
            raise ParamError(
                f"both classes must be non-empty (n+={self.n_pos}, n-={self.n_neg})"
            )

    def swapped(self) -> "LabeledDataset":
        return LabeledDataset(
            self.negatives, self.positives, self.negative_provenance, self.positive_provenance
        )


_SHIFT_MODES = ("min", "sum")


@dataclass(frozen=True)
class VotingParams:
    """Knobs of the voting classifiers.

    gamma scales the vote weight exp(-gamma * distance); theta is the class
    ratio threshold; T is the observed prefix length; delta_max bounds the
    integer alignment shift; shift_mode "min" takes the best shift per example
    while "sum" pools votes from every shift.
    """

    gamma: float
    T: int
    delta_max: int = 0
    theta: float = 1.0
    shift_mode: str = "min"

    def __post_init__(self):
        if not (self.gamma >= 0.0):
            raise ParamError(f"gamma must be >= 0, got {self.gamma}")
        if not (self.theta > 0.0):
            raise ParamError(f"theta must be > 0, got {self.theta}")
        if int(self.T) < 1:
            raise ParamError(f"T must be >= 1, got {self.T}")
        if int(self.delta_max) < 0:
            raise ParamError(f"delta_max must be >= 0, got {self.delta_max}")
        if self.shift_mode not in _SHIFT_MODES:
            raise ParamError(f"shift_mode must be one of {_SHIFT_MODES}, got {self.shift_mode!r}")
        object.__setattr__(self, "T", int(self.T))
        object.__setattr__(self, "delta_max", int(self.delta_max))
        object.__setattr__(self, "gamma", float(self.gamma))
        object.__setattr__(self, "theta", float(self.theta))


def advance(q: TimeSeries, delta: int) -> TimeSeries:
    """The series q advanced by delta steps: result(t) = q(t + delta)."""
    delta = int(delta)
    if delta == 0:
        return q
    return TimeSeries(q.start_index - delta, q.values, id=q.id)


def window_sq_dist(r: TimeSeries, s: TimeSeries, delta: int, T: int) -> float:
    """Squared Euclidean distance between r shifted by delta and s over [1, T].

    Requires r defined on [1 + delta, T + delta] and s on [1, T].
    """
    T = int(T)
    if T < 1:
        raise ParamError(f"T must be >= 1, got {T}")
    delta = int(delta)
    diff = r.window(1 + delta, T + delta) - s.window(1, T)
    return float(np.sum(diff**2))


def shift_min_distance(
    r: TimeSeries, s: TimeSeries, T: int, delta_max: int
) -> tuple[float, int]:
    """Minimum of window_sq_dist over shifts in {-delta_max, ..., delta_max}.

    Returns (distance, shift); ties resolve to the first minimizer in
    ascending shift order so runs are reproducible. Requires r defined on
    [1 - delta_max, T + delta_max] and s on [1, T].
    """
    T = int(T)
    delta_max = int(delta_max)
    if delta_max < 0:
        raise ParamError(f"delta_max must be >= 0, got {delta_max}")
    best_val = None
    best_delta = 0
    for delta in range(-delta_max, delta_max + 1):
        val = window_sq_dist(r, s, delta, T)
        if best_val is None or val < best_val:
            best_val = val
            best_delta = delta
    return best_val, best_delta


def stacked_windows(seriess: Sequence[TimeSeries], first: int, last: int) -> np.ndarray:
    """Matrix whose i-th row is seriess[i] on [first, last]; SupportError if any lacks it."""
    if not seriess:
        raise ParamError("need at least one series")
    return np.stack([ts.window(first, last) for ts in seriess])
