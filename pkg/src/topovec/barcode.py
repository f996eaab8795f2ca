"""Barcode containers: intervals with multiplicity and essential-bar policies.

A barcode is a finite multiset of real intervals attached to one homology
dimension.  Entries with identical endpoints are merged (multiplicities add),
and iteration order is fixed to (birth, death), so two barcodes holding the
same multiset always compare equal.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

INF = math.inf


class BarcodeError(ValueError):
    """Invalid barcode data or barcode parameters."""


class EmptyBarcodeError(BarcodeError):
    """Raised by operations that need at least one bar."""


@dataclass(frozen=True, order=True)
class Interval:
    """One bar [birth, death]; death may be +inf for an essential class."""

    birth: float
    death: float

    def __post_init__(self) -> None:
        birth, death = float(self.birth), float(self.death)
        object.__setattr__(self, "birth", birth)
        object.__setattr__(self, "death", death)
        if math.isnan(birth) or math.isnan(death):
            raise BarcodeError("interval endpoints must not be NaN")
        if not math.isfinite(birth):
            raise BarcodeError("birth must be finite")
        if death < birth:
            raise BarcodeError(f"birth {birth!r} exceeds death {death!r}")

    @property
    def lifespan(self) -> float:
        return self.death - self.birth

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.birth + self.death)

    @property
    def is_essential(self) -> bool:
        return math.isinf(self.death)


def _coerce_entry(entry) -> tuple[Interval, int]:
    if isinstance(entry, Interval):
        return entry, 1
    if isinstance(entry, (tuple, list)):
        if len(entry) == 2 and isinstance(entry[0], Interval):
            interval, mult = entry
        elif len(entry) == 2:
            interval, mult = Interval(entry[0], entry[1]), 1
        elif len(entry) == 3:
            interval, mult = Interval(entry[0], entry[1]), entry[2]
        else:
            raise BarcodeError(f"cannot interpret bar entry {entry!r}")
        if mult != int(mult) or int(mult) < 1:
            raise BarcodeError(f"multiplicity must be a positive integer, got {mult!r}")
        return interval, int(mult)
    raise BarcodeError(f"cannot interpret bar entry {entry!r}")


class Barcode:
    """Multiset of intervals in a single homology dimension."""

    __slots__ = ("dimension", "_bars")

    def __init__(self, dimension: int, bars: Iterable = ()) -> None:
        if dimension != int(dimension) or int(dimension) < 0:
            raise BarcodeError(f"dimension must be a nonnegative integer, got {dimension!r}")
        object.__setattr__(self, "dimension", int(dimension))
        merged: dict[Interval, int] = {}
        for entry in bars:
            interval, mult = _coerce_entry(entry)
            merged[interval] = merged.get(interval, 0) + mult
        object.__setattr__(self, "_bars", tuple(sorted(merged.items())))

    def __setattr__(self, name, value):  # immutable after construction
        raise AttributeError("Barcode is immutable")

    def __reduce__(self):  # __setattr__ blocks default unpickling
        return (Barcode, (self.dimension, self._bars))

    @property
    def bars(self) -> tuple[tuple[Interval, int], ...]:
        return self._bars

    def __iter__(self) -> Iterator[tuple[Interval, int]]:
        return iter(self._bars)

    def __len__(self) -> int:
        """Number of distinct intervals (see n_bars for the multiset size)."""
        return len(self._bars)

    @property
    def n_bars(self) -> int:
        """Total bar count, with multiplicity."""
        return sum(m for _, m in self._bars)

    @property
    def is_empty(self) -> bool:
        return not self._bars

    def expand(self) -> Iterator[Interval]:
        """Yield every bar, repeated by multiplicity, in (birth, death) order."""
        for interval, mult in self._bars:
            for _ in range(mult):
                yield interval

    def to_array(self) -> np.ndarray:
        """(n_bars, 2) float array of (birth, death) rows, multiplicity expanded."""
        if self.is_empty:
            return np.empty((0, 2), dtype=np.float64)
        return np.array([(iv.birth, iv.death) for iv in self.expand()], dtype=np.float64)

    def require_finite(self) -> None:
        for interval, _ in self._bars:
            if interval.is_essential:
                raise BarcodeError(
                    "barcode contains essential bars; apply normalize() first"
                )

    def require_nonempty(self) -> None:
        if self.is_empty:
            raise EmptyBarcodeError("empty barcode")

    @property
    def min_birth(self) -> float:
        self.require_nonempty()
        return min(iv.birth for iv, _ in self._bars)

    @property
    def max_death(self) -> float:
        self.require_nonempty()
        return max(iv.death for iv, _ in self._bars)

    def max_finite_death(self) -> float | None:
        deaths = [iv.death for iv, _ in self._bars if not iv.is_essential]
        return max(deaths) if deaths else None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Barcode):
            return NotImplemented
        return self.dimension == other.dimension and self._bars == other._bars

    def __hash__(self) -> int:
        return hash((self.dimension, self._bars))

    def __repr__(self) -> str:
        inner = ", ".join(
            f"[{iv.birth:g},{iv.death:g}]" + (f"x{m}" if m > 1 else "")
            for iv, m in self._bars
        )
        return f"Barcode(dim={self.dimension}, {{{inner}}})"


@dataclass(frozen=True)
class EssentialPolicy:
    """How to make infinite bars finite before vectorization.

    mode "drop" removes essential bars; mode "clamp" replaces the infinite
    death by clamp_value.  A clamp_value of None means clamp to the largest
    finite death in the same barcode (bars are dropped when there is none).
    """

    mode: str
    clamp_value: float | None = None

    def __post_init__(self) -> None:
        if self.mode not in ("drop", "clamp"):
            raise BarcodeError(f"unknown essential policy mode {self.mode!r}")
        if self.mode == "drop" and self.clamp_value is not None:
            raise BarcodeError("clamp_value is only meaningful with mode='clamp'")
        if self.clamp_value is not None and not math.isfinite(self.clamp_value):
            raise BarcodeError("clamp_value must be finite")


DEFAULT_POLICY = EssentialPolicy("clamp")  # clamp to the max finite death


def normalize(barcode: Barcode, policy: EssentialPolicy = DEFAULT_POLICY) -> Barcode:
    """Resolve essential bars per policy and drop zero-length bars.

    The result contains only finite intervals with birth < death and is a
    fixed point of this function.  An explicit clamp_value smaller than some
    finite death in the barcode is rejected ("invalid clamp").
    """
    if policy.mode == "clamp":
        clamp = policy.clamp_value
        if clamp is None:
            clamp = barcode.max_finite_death()  # None -> drop essentials
        else:
            top = barcode.max_finite_death()
            if top is not None and clamp < top:
                raise BarcodeError(
                    f"invalid clamp: clamp_value {clamp!r} is below finite death {top!r}"
                )
    else:
        clamp = None

    bars = []
    for interval, mult in barcode:
        if interval.is_essential:
            if clamp is None or clamp <= interval.birth:
                continue
            interval = Interval(interval.birth, clamp)
        if interval.lifespan <= 0.0:
            continue
        bars.append((interval, mult))
    return Barcode(barcode.dimension, bars)
