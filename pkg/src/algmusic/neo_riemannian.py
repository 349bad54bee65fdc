"""The 24 consonant triads under the TI and PLR groups.

Both groups are realized as permutations of the triads (tuples of 24 indices,
index ``12*mode + root``) so their closure, commutation and regularity can be
checked exhaustively.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .modulation import Degree, Tonality, parse_degree, parse_tonic
from .pitch_algebra import MODULUS, PcSet

__all__ = [
    "Mode",
    "Triad",
    "TIElement",
    "NotATriad",
    "ALL_TRIADS",
    "ti_apply",
    "plr_apply",
    "word_apply",
    "parse_word",
    "format_word",
    "degree_as_triad",
    "verify_group_properties",
    "GroupReport",
    "cadence_transform",
    "CadenceTransform",
    "cadence_diagram",
    "ti_group",
    "plr_group",
    "permutation_of",
]

_SHARP_NAMES = ("C", "C#", "D", "Eb", "E", "F", "F#", "G", "Ab", "A", "Bb", "B")
_MINOR_NAMES = ("c", "c#", "d", "eb", "e", "f", "f#", "g", "g#", "a", "bb", "b")


class Mode(str, enum.Enum):
    MAJOR = "major"
    MINOR = "minor"

    def flipped(self) -> "Mode":
        return Mode.MINOR if self is Mode.MAJOR else Mode.MAJOR


class NotATriad(ValueError):
    """The pitch set or degree has no major/minor triad image (e.g. a diminished VII)."""


@dataclass(frozen=True, order=True)
class Triad:
    root: int
    mode: Mode = Mode.MAJOR

    def __post_init__(self) -> None:
        object.__setattr__(self, "root", self.root % MODULUS)
        object.__setattr__(self, "mode", Mode(self.mode))

    @property
    def pitches(self) -> PcSet:
        third = 4 if self.mode is Mode.MAJOR else 3
        return frozenset({self.root, (self.root + third) % MODULUS, (self.root + 7) % MODULUS})

    @property
    def index(self) -> int:
        return self.root + (MODULUS if self.mode is Mode.MINOR else 0)

    @classmethod
    def from_pitches(cls, pcs: Iterable[int]) -> "Triad":
        s = frozenset(x % MODULUS for x in pcs)
        for t in ALL_TRIADS:
            if t.pitches == s:
                return t
        raise NotATriad(f"{sorted(s)} is not a major or minor triad")

    @classmethod
    def parse(cls, text: str) -> "Triad":
        """``C``, ``c``, ``F#``, ``bb`` (case gives the mode) or ``deg:V@D``."""
        text = text.strip()
        if text.startswith("deg:"):
            m = re.fullmatch(r"deg:([IVXivx]+)@(.+)", text)
            if not m:
                raise ValueError(f"expected deg:<roman>@<key>, got {text!r}")
            return degree_as_triad(Tonality(parse_tonic(m.group(2))), parse_degree(m.group(1)))
        if not text:
            raise ValueError("empty triad name")
        mode = Mode.MAJOR if text[0].isupper() else Mode.MINOR
        return cls(parse_tonic(text[0].upper() + text[1:]), mode)

    @property
    def name(self) -> str:
        names = _SHARP_NAMES if self.mode is Mode.MAJOR else _MINOR_NAMES
        return names[self.root]

    def __str__(self) -> str:
        return self.name


ALL_TRIADS: tuple[Triad, ...] = tuple(Triad(r, m) for m in (Mode.MAJOR, Mode.MINOR) for r in range(MODULUS))


def degree_as_triad(t: Tonality, degree: Degree) -> Triad:
    try:
        return Triad.from_pitches(t.triad(degree))
    except NotATriad:
        raise NotATriad(f"degree {Degree(degree).name} of {t} is diminished") from None


@dataclass(frozen=True)
class TIElement:
    """``T_n: x -> x + n`` or ``I_n: x -> -x + n``."""

    kind: str
    n: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("T", "I"):
            raise ValueError(f"TI element kind must be T or I, got {self.kind!r}")
        object.__setattr__(self, "n", self.n % MODULUS)

    def __call__(self, x: int) -> int:
        return (x + self.n if self.kind == "T" else -x + self.n) % MODULUS

    def __str__(self) -> str:
        return f"{self.kind}{self.n}"


def ti_apply(op: TIElement, t: Triad) -> Triad:
    return Triad.from_pitches(op(x) for x in t.pitches)


def plr_apply(letter: str, t: Triad) -> Triad:
    major = t.mode is Mode.MAJOR
    if letter == "P":
        return Triad(t.root, t.mode.flipped())
    if letter == "L":
        return Triad(t.root + 4, Mode.MINOR) if major else Triad(t.root + 8, Mode.MAJOR)
    if letter == "R":
        return Triad(t.root + 9, Mode.MINOR) if major else Triad(t.root + 3, Mode.MAJOR)
    raise ValueError(f"unknown PLR letter {letter!r}")


Step = Union[str, TIElement]


def parse_word(text: str) -> list[Step]:
    """``"R,T7"`` -> ``["R", TIElement("T", 7)]``."""
    steps: list[Step] = []
    for tok in (p.strip() for p in text.split(",")):
        if not tok:
            continue
        if tok in ("P", "L", "R"):
            steps.append(tok)
            continue
        m = re.fullmatch(r"([TI])_?\^?(-?\d+)", tok)
        if not m:
            raise ValueError(f"unknown transformation {tok!r}")
        steps.append(TIElement(m.group(1), int(m.group(2))))
    return steps


def format_word(word: Sequence[Step]) -> str:
    return ",".join(str(s) for s in word)


def word_apply(word: Sequence[Step] | str, t: Triad) -> Triad:
    """Apply the steps in reading order: the first step acts first."""
    if isinstance(word, str):
        word = parse_word(word)
    for step in word:
        t = ti_apply(step, t) if isinstance(step, TIElement) else plr_apply(step, t)
    return t


Perm = tuple[int, ...]


def permutation_of(step: Step) -> Perm:
    return tuple(word_apply([step], t).index for t in ALL_TRIADS)


def _compose(a: Perm, b: Perm) -> Perm:
    """``a ∘ b`` (b first)."""
    return tuple(a[i] for i in b)


def _generate(gens: Sequence[Perm]) -> frozenset[Perm]:
    identity = tuple(range(len(ALL_TRIADS)))
    group = {identity}
    frontier = [identity]
    while frontier:
        p = frontier.pop()
        for g in gens:
            q = _compose(g, p)
            if q not in group:
                group.add(q)
                frontier.append(q)
    return frozenset(group)


@lru_cache(maxsize=None)
def ti_group() -> frozenset[Perm]:
    return _generate([permutation_of(TIElement("T", 1)), permutation_of(TIElement("I", 0))])


@lru_cache(maxsize=None)
def plr_group() -> frozenset[Perm]:
    return _generate([permutation_of(x) for x in "PLR"])


def _order(p: Perm) -> int:
    identity = tuple(range(len(p)))
    q, k = p, 1
    while q != identity:
        q, k = _compose(p, q), k + 1
    return k


def _inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def _dihedral_witness(group: frozenset[Perm]) -> tuple[Perm, Perm] | None:
    """(r, s) with r of order n, s an involution outside <r>, s r s = r^-1, <r, s> = group."""
    n = len(group) // 2
    if 2 * n != len(group):
        return None
    for r in sorted(group):
        if _order(r) != n:
            continue
        rotations = _generate([r])
        r_inv = _inverse(r)
        for s in sorted(group - rotations):
            if _order(s) == 2 and _compose(s, _compose(r, s)) == r_inv:
                if _generate([r, s]) == group:
                    return r, s
    return None


def _simply_transitive(group: frozenset[Perm]) -> bool:
    size = len(ALL_TRIADS)
    counts = [[0] * size for _ in range(size)]
    for g in group:
        for a in range(size):
            counts[a][g[a]] += 1
    return all(c == 1 for row in counts for c in row)


@dataclass(frozen=True)
class GroupReport:
    ti_order: int
    plr_order: int
    dual_commute: bool
    ti_simply_transitive: bool
    plr_simply_transitive: bool
    ti_dihedral: bool
    plr_dihedral: bool

    @property
    def isomorphic(self) -> bool:
        return self.ti_dihedral and self.plr_dihedral and self.ti_order == self.plr_order

    @property
    def ok(self) -> bool:
        return (
            self.ti_order == self.plr_order == 24
            and self.dual_commute
            and self.ti_simply_transitive
            and self.plr_simply_transitive
            and self.isomorphic
        )


def verify_group_properties() -> GroupReport:
    ti, plr = ti_group(), plr_group()
    return GroupReport(
        ti_order=len(ti),
        plr_order=len(plr),
        dual_commute=all(_compose(a, b) == _compose(b, a) for a in ti for b in plr),
        ti_simply_transitive=_simply_transitive(ti),
        plr_simply_transitive=_simply_transitive(plr),
        ti_dihedral=_dihedral_witness(ti) is not None,
        plr_dihedral=_dihedral_witness(plr) is not None,
    )


@dataclass(frozen=True)
class CadenceTransform:
    tonic: Triad
    major_cadence: tuple[Triad, Triad]
    minor_cadence: tuple[Triad, Triad]


def cadence_transform(major_tonic: int | str) -> CadenceTransform:
    """The {IV, V} cadence of a major key and its R-image {ii, iii}."""
    tonic = Triad(parse_tonic(major_tonic), Mode.MAJOR)
    major = (ti_apply(TIElement("T", 5), tonic), ti_apply(TIElement("T", 7), tonic))
    minor = (plr_apply("R", major[0]), plr_apply("R", major[1]))
    return CadenceTransform(tonic, major, minor)


def cadence_diagram(major_tonic: int | str) -> dict[str, object]:
    """The square ``IV <-T5- I -T7-> V`` over ``ii <-T5- vi -T7-> iii`` joined by R.

    ``closes`` is true when both paths around every square meet.
    """
    tonic = Triad(parse_tonic(major_tonic), Mode.MAJOR)
    relative = plr_apply("R", tonic)
    top = {n: ti_apply(TIElement("T", n), tonic) for n in (5, 7)}
    bottom = {n: ti_apply(TIElement("T", n), relative) for n in (5, 7)}
    closes = all(plr_apply("R", top[n]) == bottom[n] for n in (5, 7))
    return {
        "top": (top[5], tonic, top[7]),
        "bottom": (bottom[5], relative, bottom[7]),
        "closes": closes,
    }
