"""Counterpoint symmetries, admissible successors and the 42-successor bound.

A consonant interval ``ξ = x + e.y`` (cantus ``x``, interval ``y``) is a
deformed dissonance of a symmetry ``g`` of the subgroup H when

1. ξ lies in g(D[ε]),
2. the induced polarity carries g(K[ε]) onto g(D[ε]),
3. |g(K[ε]) ∩ K[ε]| is maximal among the survivors of 1 and 2.

Three readings of condition 2 are provided, see :class:`PolarityVariant`.
All searches are exhaustive over the 576 elements of H on 144-bit masks.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from statistics import mean
from typing import Iterable, Sequence

from .dual_numbers import (
    DualNumber,
    DualSymmetry,
    cantus_translation,
    enumerate_H,
    image_mask,
    lift,
    points_of,
)
from .pitch_algebra import MODULUS, STANDARD_DICHOTOMY, Dichotomy, polarities

__all__ = [
    "CounterpointInterval",
    "CounterpointWorld",
    "DissonantIntervalError",
    "PolarityVariant",
    "SequenceAnalysis",
    "TheoremReport",
    "TransitionAnalysis",
    "admissible_successors",
    "analyze_sequence",
    "counterpoint_symmetries",
    "little_theorem_report",
    "parsimony_summary",
    "transition_symmetries",
    "SUCCESSOR_BOUND",
]

SUCCESSOR_BOUND = 42


class DissonantIntervalError(ValueError):
    """Counterpoint symmetries are only defined at consonances."""

    def __init__(self, interval: "CounterpointInterval", index: int | None = None):
        self.interval = interval
        self.index = index
        where = f" at index {index}" if index is not None else ""
        super().__init__(f"dissonant interval {interval}{where}")


class PolarityVariant(str, enum.Enum):
    """How the polarity of condition 2 is read.

    ``global``
        the induced polarity π = e^{ε.2}∘5 exactly as printed;
    ``localized``
        π conjugated by the cantus translation, e^x∘π∘e^{-x}, with g still in H;
    ``normalized``
        the search runs at ξ translated to cantus 0 and the successor test is
        made in that frame. Equivalently g ranges over e^x∘H∘e^{-x}, the
        symmetries whose cantus part fixes x, and is reported by its H
        representative. This is the reading that reproduces the published
        symmetry tables, hence the default.
    """

    GLOBAL = "global"
    LOCALIZED = "localized"
    NORMALIZED = "normalized"


@dataclass(frozen=True, order=True)
class CounterpointInterval:
    """``cantus + e.interval``: the upper voice sits ``interval`` above ``cantus``."""

    cantus: int
    interval: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "cantus", self.cantus % MODULUS)
        object.__setattr__(self, "interval", self.interval % MODULUS)

    @classmethod
    def parse(cls, text: str) -> "CounterpointInterval":
        return cls.from_dual(DualNumber.parse(text))

    @classmethod
    def from_dual(cls, d: DualNumber) -> "CounterpointInterval":
        return cls(d.base, d.eps)

    def as_dual(self) -> DualNumber:
        return DualNumber(self.cantus, self.interval)

    @property
    def consonant(self) -> bool:
        return self.interval in STANDARD_DICHOTOMY.half

    @property
    def index(self) -> int:
        return self.cantus * MODULUS + self.interval

    def shifted(self, n: int) -> "CounterpointInterval":
        return CounterpointInterval(self.cantus + n, self.interval)

    def __str__(self) -> str:
        return f"{self.cantus}+e.{self.interval}"

    def pretty(self) -> str:
        return f"{self.cantus}+ε.{self.interval}"


def _induced_polarity(d: Dichotomy) -> DualSymmetry:
    ps = polarities(d)
    if len(ps) != 1:
        raise ValueError(f"{d} is not a strong dichotomy; pass induced_polarity explicitly")
    (p,) = ps
    return DualSymmetry(t=p.shift, u=p.scale)


@dataclass(frozen=True)
class CounterpointWorld:
    dichotomy: Dichotomy = STANDARD_DICHOTOMY
    induced_polarity: DualSymmetry | None = None
    polarity_variant: PolarityVariant = PolarityVariant.NORMALIZED

    def __post_init__(self) -> None:
        object.__setattr__(self, "polarity_variant", PolarityVariant(self.polarity_variant))
        if self.induced_polarity is None:
            object.__setattr__(self, "induced_polarity", _induced_polarity(self.dichotomy))
        if image_mask(self.induced_polarity, self.consonances) != self.dissonances:
            raise ValueError(f"{self.induced_polarity.pretty()} does not map K[ε] onto D[ε]")

    @property
    def consonances(self) -> int:
        return lift(self.dichotomy.half)

    @property
    def dissonances(self) -> int:
        return lift(self.dichotomy.complement)

    def is_consonant(self, xi: CounterpointInterval) -> bool:
        return xi.interval in self.dichotomy.half

    def polarity_at(self, cantus: int) -> DualSymmetry:
        """The polarity used in condition 2 when the search runs at ``cantus``."""
        if self.polarity_variant is PolarityVariant.LOCALIZED:
            e = cantus_translation(cantus)
            return e @ self.induced_polarity @ e.inverse()
        return self.induced_polarity

    def frame(self, xi: CounterpointInterval) -> int:
        """Cantus shift taking ξ into the frame where the H search runs."""
        return -xi.cantus if self.polarity_variant is PolarityVariant.NORMALIZED else 0

    def acting(self, g: DualSymmetry, xi: CounterpointInterval) -> DualSymmetry:
        """The symmetry that ``g`` stands for at ξ, in the original frame."""
        if self.polarity_variant is PolarityVariant.NORMALIZED:
            e = cantus_translation(xi.cantus)
            return e @ g @ e.inverse()
        return g


@dataclass(frozen=True)
class _Images:
    consonant: int
    dissonant: int
    overlap: int


@lru_cache(maxsize=None)
def _images(world: CounterpointWorld) -> dict[DualSymmetry, _Images]:
    k, d = world.consonances, world.dissonances
    out = {}
    for g in enumerate_H():
        gk = image_mask(g, k)
        out[g] = _Images(gk, image_mask(g, d), bin(gk & k).count("1"))
    return out


@lru_cache(maxsize=None)
def _symmetries(world: CounterpointWorld, xi: CounterpointInterval) -> tuple[DualSymmetry, ...]:
    local = xi.shifted(world.frame(xi))
    bit = 1 << local.index
    pi = world.polarity_at(local.cantus)
    survivors = []
    for g, im in _images(world).items():
        if not im.dissonant & bit:
            continue
        if image_mask(pi, im.consonant) != im.dissonant:
            continue
        survivors.append((g, im.overlap))
    if not survivors:
        return ()
    best = max(n for _, n in survivors)
    return tuple(sorted(g for g, n in survivors if n == best))


def counterpoint_symmetries(world: CounterpointWorld, xi: CounterpointInterval) -> frozenset[DualSymmetry]:
    """Counterpoint symmetries at the consonance ξ, as elements of H."""
    if not world.is_consonant(xi):
        raise DissonantIntervalError(xi)
    return frozenset(_symmetries(world, xi))


def _admits(world: CounterpointWorld, g: DualSymmetry, xi: CounterpointInterval, eta: CounterpointInterval) -> bool:
    local = eta.shifted(world.frame(xi))
    return bool(_images(world)[g].consonant >> local.index & 1)


@dataclass(frozen=True)
class TransitionAnalysis:
    source: CounterpointInterval
    target: CounterpointInterval
    symmetries: tuple[DualSymmetry, ...]
    acting: tuple[DualSymmetry, ...] = field(default=(), compare=False)

    @property
    def cardinality(self) -> int:
        return len(self.symmetries)

    @property
    def allowed(self) -> bool:
        return bool(self.symmetries)


def transition_symmetries(
    world: CounterpointWorld, xi: CounterpointInterval, eta: CounterpointInterval
) -> TransitionAnalysis:
    """Symmetries at ξ that admit η; an empty result marks a forbidden step."""
    if not world.is_consonant(eta):
        raise DissonantIntervalError(eta)
    gs = tuple(g for g in sorted(counterpoint_symmetries(world, xi)) if _admits(world, g, xi, eta))
    return TransitionAnalysis(xi, eta, gs, tuple(world.acting(g, xi) for g in gs))


def admissible_successors(world: CounterpointWorld, xi: CounterpointInterval) -> frozenset[CounterpointInterval]:
    shift = world.frame(xi)
    mask = 0
    for g in counterpoint_symmetries(world, xi):
        mask |= _images(world)[g].consonant
    mask &= world.consonances
    return frozenset(CounterpointInterval(p.base - shift, p.eps) for p in points_of(mask))


@dataclass(frozen=True)
class SequenceAnalysis:
    intervals: tuple[CounterpointInterval, ...]
    transitions: tuple[TransitionAnalysis, ...]

    @property
    def cardinalities(self) -> list[int]:
        return [t.cardinality for t in self.transitions]

    @property
    def summary(self) -> dict[str, float]:
        return parsimony_summary(self.transitions)

    def __iter__(self):
        return iter(self.transitions)

    def __len__(self) -> int:
        return len(self.transitions)

    def __getitem__(self, i):
        return self.transitions[i]


def parsimony_summary(rows: Sequence[TransitionAnalysis]) -> dict[str, float]:
    cards = [r.cardinality for r in rows]
    if not cards:
        return {"min": 0, "max": 0, "mean": 0.0}
    return {"min": min(cards), "max": max(cards), "mean": float(mean(cards))}


def analyze_sequence(world: CounterpointWorld, intervals: Iterable[CounterpointInterval]) -> SequenceAnalysis:
    seq = tuple(intervals)
    if len(seq) < 2:
        raise ValueError("a succession needs at least two intervals")
    for i, xi in enumerate(seq):
        if not world.is_consonant(xi):
            raise DissonantIntervalError(xi, i)
    return SequenceAnalysis(seq, tuple(transition_symmetries(world, a, b) for a, b in zip(seq, seq[1:])))


@dataclass(frozen=True)
class TheoremReport:
    counts: dict[CounterpointInterval, int]
    bound: int = SUCCESSOR_BOUND

    @property
    def below_bound(self) -> list[CounterpointInterval]:
        return sorted(xi for xi, n in self.counts.items() if n < self.bound)

    @property
    def holds(self) -> bool:
        return not self.below_bound

    @property
    def minimum(self) -> int:
        return min(self.counts.values())

    def per_cantus(self) -> dict[int, dict[int, int]]:
        """cantus -> {interval: successor count}."""
        table: dict[int, dict[int, int]] = {}
        for xi, n in sorted(self.counts.items()):
            table.setdefault(xi.cantus, {})[xi.interval] = n
        return table


def little_theorem_report(world: CounterpointWorld) -> TheoremReport:
    """Successor counts for every consonance of the world (72 for K/D)."""
    counts = {}
    for x in range(MODULUS):
        for y in sorted(world.dichotomy.half):
            xi = CounterpointInterval(x, y)
            counts[xi] = len(admissible_successors(world, xi))
    return TheoremReport(counts)
