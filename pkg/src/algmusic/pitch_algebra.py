"""Arithmetic in Z/12Z and its 48-element affine group.

Pitch classes are plain ``int`` residues and pitch-class sets are
``frozenset[int]``; the affine maps ``x -> u*x + t`` are :class:`AffineMap`
values written ``e<t>*<u>`` in text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

MODULUS = 12
UNITS = (1, 5, 7, 11)
CHROMATIC = frozenset(range(MODULUS))

PitchClass = int
PcSet = frozenset

__all__ = [
    "MODULUS",
    "UNITS",
    "CHROMATIC",
    "CONSONANCES",
    "AffineMap",
    "Dichotomy",
    "ALL_MAPS",
    "IDENTITY",
    "pc",
    "pcset",
    "parse_pcset",
    "format_pcset",
    "affine_apply",
    "affine_compose",
    "affine_invert",
    "stabilizer",
    "is_rigid",
    "polarities",
    "is_strong_dichotomy",
    "STANDARD_DICHOTOMY",
]


def pc(x: int) -> PitchClass:
    return x % MODULUS


def pcset(members: Iterable[int]) -> PcSet:
    return frozenset(x % MODULUS for x in members)


def parse_pcset(text: str) -> PcSet:
    """Parse ``"0,3,4,7"`` (also ``|`` separated, or empty) into a pitch-class set."""
    text = text.strip().strip("{}")
    if not text:
        return frozenset()
    parts = re.split(r"[,|\s]+", text)
    try:
        return pcset(int(p) for p in parts if p)
    except ValueError:
        raise ValueError(f"not a pitch-class set: {text!r}") from None


def format_pcset(s: Iterable[int], sep: str = ",") -> str:
    return sep.join(str(x) for x in sorted(s))


_MAP_RE = re.compile(r"^\s*e\^?\{?(-?\d+)\}?\s*[*·.]\s*(-?\d+)\s*$")


@dataclass(frozen=True, order=True)
class AffineMap:
    """The map ``x -> scale*x + shift`` on Z/12Z (written e^shift·scale)."""

    shift: int
    scale: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "shift", self.shift % MODULUS)
        object.__setattr__(self, "scale", self.scale % MODULUS)
        if self.scale not in UNITS:
            raise ValueError(f"scale {self.scale} is not a unit of Z/12Z")

    @classmethod
    def parse(cls, text: str) -> "AffineMap":
        """Read ``e6*11``; ``e6*-1`` and ``e^6·-1`` are accepted too."""
        m = _MAP_RE.match(text)
        if not m:
            raise ValueError(f"not an affine map: {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    def __call__(self, x):
        if isinstance(x, int):
            return (self.scale * x + self.shift) % MODULUS
        return frozenset((self.scale * y + self.shift) % MODULUS for y in x)

    def __matmul__(self, other: "AffineMap") -> "AffineMap":
        # (self ∘ other)(x) = u1(u2 x + t2) + t1
        return AffineMap(self.scale * other.shift + self.shift, self.scale * other.scale)

    def inverse(self) -> "AffineMap":
        inv = pow(self.scale, -1, MODULUS)
        return AffineMap(-inv * self.shift, inv)

    def __str__(self) -> str:
        return f"e{self.shift}*{self.scale}"

    def pretty(self, signed: bool = False) -> str:
        scale = "-1" if signed and self.scale == 11 else str(self.scale)
        return f"e^{self.shift}·{scale}"


IDENTITY = AffineMap(0, 1)
ALL_MAPS: tuple[AffineMap, ...] = tuple(AffineMap(t, u) for u in UNITS for t in range(MODULUS))


def affine_apply(m: AffineMap, x: Union[int, Iterable[int]]):
    return m(x)


def affine_compose(a: AffineMap, b: AffineMap) -> AffineMap:
    """``a ∘ b``: apply ``b`` first."""
    return a @ b


def affine_invert(m: AffineMap) -> AffineMap:
    return m.inverse()


@lru_cache(maxsize=4096)
def _stabilizer(s: PcSet) -> frozenset[AffineMap]:
    return frozenset(g for g in ALL_MAPS if g(s) == s)


def stabilizer(s: Iterable[int]) -> frozenset[AffineMap]:
    """All affine maps fixing ``s`` setwise."""
    return _stabilizer(pcset(s))


def is_rigid(s: Iterable[int]) -> bool:
    return stabilizer(s) == {IDENTITY}


@dataclass(frozen=True)
class Dichotomy:
    """A 6/6 split of Z/12Z. Orientation matters: (K/D) != (D/K)."""

    half: PcSet

    def __post_init__(self) -> None:
        half = pcset(self.half)
        if len(half) != 6:
            raise ValueError(f"a dichotomy half has 6 elements, got {format_pcset(half)}")
        object.__setattr__(self, "half", half)

    @property
    def complement(self) -> PcSet:
        return CHROMATIC - self.half

    def flipped(self) -> "Dichotomy":
        return Dichotomy(self.complement)

    def __str__(self) -> str:
        return f"({format_pcset(self.half)}/{format_pcset(self.complement)})"


def polarities(d: Dichotomy) -> frozenset[AffineMap]:
    """Every affine map carrying ``d.half`` onto its complement.

    Exhaustive over the 48 maps; no involution assumption is made.
    """
    target = d.complement
    return frozenset(g for g in ALL_MAPS if g(d.half) == target)


def is_strong_dichotomy(d: Dichotomy) -> bool:
    return len(polarities(d)) == 1


CONSONANCES = frozenset({0, 3, 4, 7, 8, 9})
STANDARD_DICHOTOMY = Dichotomy(CONSONANCES)
