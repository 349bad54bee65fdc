"""Dual numbers over Z/12Z and affine symmetries of the dual plane.

A dual number ``x + e.y`` is a point of the 144-element plane; sets of points
are kept as 144-bit integer masks (bit ``12*x + y``) so that images and
intersections stay exact and cheap.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .pitch_algebra import MODULUS, UNITS

PLANE_SIZE = MODULUS * MODULUS
FULL_MASK = (1 << PLANE_SIZE) - 1

__all__ = [
    "DualNumber",
    "DualSymmetry",
    "PLANE_SIZE",
    "FULL_MASK",
    "dual_mul",
    "dual_apply",
    "enumerate_H",
    "image_of_interval_set",
    "image_mask",
    "lift",
    "mask_of",
    "points_of",
    "cantus_translation",
]

_DUAL_RE = re.compile(r"^\s*(-?\d+)\s*\+\s*(?:e|ε)\s*\.?\s*(-?\d+)\s*$")


@dataclass(frozen=True, order=True)
class DualNumber:
    """``base + ε.eps`` with ε² = 0."""

    base: int
    eps: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", self.base % MODULUS)
        object.__setattr__(self, "eps", self.eps % MODULUS)

    @classmethod
    def parse(cls, text: str) -> "DualNumber":
        m = _DUAL_RE.match(text)
        if not m:
            raise ValueError(f"expected '<x>+e.<y>', got {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))

    def __add__(self, other: "DualNumber") -> "DualNumber":
        return DualNumber(self.base + other.base, self.eps + other.eps)

    def __mul__(self, other: "DualNumber") -> "DualNumber":
        return dual_mul(self, other)

    @property
    def is_unit(self) -> bool:
        return self.base in UNITS

    @property
    def index(self) -> int:
        return self.base * MODULUS + self.eps

    def __str__(self) -> str:
        return f"{self.base}+e.{self.eps}"

    def pretty(self) -> str:
        return f"{self.base}+ε.{self.eps}"


def dual_mul(p: DualNumber, q: DualNumber) -> DualNumber:
    return DualNumber(p.base * q.base, p.base * q.eps + p.eps * q.base)


_SYM_RE = re.compile(
    r"""^\s*e\[\s*(?:(-?\d+)\s*\+\s*e\.)?\s*(-?\d+)\s*\]\s*\*\s*
        (?:\(\s*(-?\d+)\s*(?:\+\s*(-?\d+)\s*e)?\s*\)|(-?\d+))\s*$""",
    re.VERBOSE,
)
_PRETTY_RE = re.compile(
    r"""^\s*(?:e\^\{?(-?\d+)\}?\s*∘\s*)?e\^\{\s*ε\.(-?\d+)\s*\}\s*∘\s*
        (?:\(\s*(-?\d+)\s*(?:\+\s*ε\.(-?\d+))?\s*\)|(-?\d+))\s*$""",
    re.VERBOSE,
)


@dataclass(frozen=True, order=True)
class DualSymmetry:
    """``(x + e.y) -> (u.x + w) + e.(v.x + u.y + t)``.

    Fields are ordered ``(t, u, v, w)`` so sorting follows the printed form
    ``e^{ε.t}∘(u+ε.v)``. Members of the subgroup H have ``w == 0``.
    """

    t: int
    u: int = 1
    v: int = 0
    w: int = 0

    def __post_init__(self) -> None:
        for name in ("t", "u", "v", "w"):
            object.__setattr__(self, name, getattr(self, name) % MODULUS)
        if self.u not in UNITS:
            raise ValueError(f"u + e.v is a unit only for u in {UNITS}, got u={self.u}")

    @classmethod
    def parse(cls, text: str) -> "DualSymmetry":
        """Read ``e[6]*(7+6e)``, ``e[0]*7``, ``e[w+e.t]*(u+ve)`` or the pretty form."""
        m = _SYM_RE.match(text) or _PRETTY_RE.match(text)
        if not m:
            raise ValueError(f"not a dual symmetry: {text!r}")
        w, t, u, v, bare = m.groups()
        if bare is not None:
            u, v = bare, 0
        return cls(int(t), int(u), int(v or 0), int(w or 0))

    @property
    def in_H(self) -> bool:
        return self.w == 0

    def __call__(self, xi: DualNumber) -> DualNumber:
        return dual_apply(self, xi)

    def __matmul__(self, other: "DualSymmetry") -> "DualSymmetry":
        a, b = self, other
        return DualSymmetry(
            t=a.v * b.w + a.u * b.t + a.t,
            u=a.u * b.u,
            v=a.v * b.u + a.u * b.v,
            w=a.u * b.w + a.w,
        )

    def inverse(self) -> "DualSymmetry":
        ui = pow(self.u, -1, MODULUS)
        k = ui * self.v * ui
        return DualSymmetry(t=k * self.w - ui * self.t, u=ui, v=-k, w=-ui * self.w)

    def permutation(self) -> tuple[int, ...]:
        return _permutation(self)

    def __str__(self) -> str:
        head = f"e[{self.w}+e.{self.t}]" if self.w else f"e[{self.t}]"
        return f"{head}*({self.u}+{self.v}e)" if self.v else f"{head}*{self.u}"

    def pretty(self) -> str:
        scale = f"({self.u}+ε.{self.v})" if self.v else str(self.u)
        head = f"e^{{{self.w}}}∘" if self.w else ""
        return f"{head}e^{{ε.{self.t}}}∘{scale}"


def dual_apply(g: DualSymmetry, xi: DualNumber) -> DualNumber:
    x, y = xi.base, xi.eps
    return DualNumber(g.u * x + g.w, g.v * x + g.u * y + g.t)


def cantus_translation(x: int) -> DualSymmetry:
    """``e^x``: shift the cantus by ``x`` and leave the interval alone."""
    return DualSymmetry(t=0, u=1, v=0, w=x)


@lru_cache(maxsize=None)
def enumerate_H() -> tuple[DualSymmetry, ...]:
    """The 576 symmetries e^{ε.t}∘(u+ε.v) without cantus translation."""
    return tuple(DualSymmetry(t, u, v) for t in range(MODULUS) for u in UNITS for v in range(MODULUS))


@lru_cache(maxsize=None)
def _permutation(g: DualSymmetry) -> tuple[int, ...]:
    return tuple(dual_apply(g, DualNumber(i // MODULUS, i % MODULUS)).index for i in range(PLANE_SIZE))


def mask_of(points: Iterable[DualNumber]) -> int:
    mask = 0
    for p in points:
        mask |= 1 << p.index
    return mask


def points_of(mask: int) -> Iterator[DualNumber]:
    while mask:
        low = mask & -mask
        i = low.bit_length() - 1
        yield DualNumber(i // MODULUS, i % MODULUS)
        mask ^= low


def lift(intervals: Iterable[int]) -> int:
    """Mask of ``{x + e.k : x in Z/12Z, k in intervals}``, e.g. K -> K[ε]."""
    row = 0
    for k in intervals:
        row |= 1 << (k % MODULUS)
    return sum(row << (MODULUS * x) for x in range(MODULUS))


def image_mask(g: DualSymmetry, mask: int) -> int:
    perm = _permutation(g)
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << perm[low.bit_length() - 1]
        mask ^= low
    return out


def image_of_interval_set(g: DualSymmetry, points: Iterable[DualNumber]) -> frozenset[DualNumber]:
    return frozenset(dual_apply(g, p) for p in points)
