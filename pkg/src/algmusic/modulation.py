"""Major tonalities as triad coverings, cadences, modulators and modulation quanta."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from .pitch_algebra import (
    ALL_MAPS,
    CHROMATIC,
    MODULUS,
    AffineMap,
    PcSet,
    format_pcset,
    is_rigid,
)

__all__ = [
    "Degree",
    "Tonality",
    "CadentialSet",
    "CADENCES",
    "ModulationResult",
    "QuantumNotFound",
    "major_tonality",
    "degree_triad",
    "cadential_sets",
    "cadence_notes",
    "find_modulators",
    "modulation_quantum",
    "modulation_sweep",
    "transpose_modulation",
    "minimal_quanta_rescan",
    "parse_tonic",
    "parse_degree",
    "tonic_name",
    "MAJOR_STEPS",
]

MAJOR_STEPS = (0, 2, 4, 5, 7, 9, 11)

_LETTERS = {"C": 0, "D": 2, "E": 4, "F": 5, "G": 7, "A": 9, "B": 11}
_SHARP_NAMES = ("C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B")
_FLAT_NAMES = ("C", "Db", "D", "Eb", "E", "F", "Gb", "G", "Ab", "A", "Bb", "B")
# major keys spelled the usual way
_KEY_NAMES = ("C", "Db", "D", "Eb", "E", "F", "F#", "G", "Ab", "A", "Bb", "B")


def parse_tonic(name: str | int) -> int:
    """``"Eb"``, ``"D#"``, ``"E♭"``, ``"bb"`` or a residue -> 0..11 with C = 0."""
    if isinstance(name, int):
        return name % MODULUS
    text = name.strip()
    if re.fullmatch(r"-?\d+", text):
        return int(text) % MODULUS
    m = re.fullmatch(r"([A-Ga-g])([#♯sb♭]*)", text)
    if not m:
        raise ValueError(f"unknown pitch name {name!r}")
    value = _LETTERS[m.group(1).upper()]
    for acc in m.group(2):
        value += 1 if acc in "#♯s" else -1
    return value % MODULUS


def tonic_name(tonic: int, flats: bool | None = None) -> str:
    if flats is None:
        return _KEY_NAMES[tonic % MODULUS]
    return (_FLAT_NAMES if flats else _SHARP_NAMES)[tonic % MODULUS]


class Degree(enum.IntEnum):
    I = 1
    II = 2
    III = 3
    IV = 4
    V = 5
    VI = 6
    VII = 7


def parse_degree(text: str | int | Degree) -> Degree:
    if isinstance(text, int):
        return Degree(text)
    try:
        return Degree[text.strip().upper()]
    except KeyError:
        raise ValueError(f"not a scale degree: {text!r}") from None


@dataclass(frozen=True)
class Tonality:
    tonic: int
    scale: tuple[int, ...] = field(init=False)
    degrees: tuple[PcSet, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        tonic = self.tonic % MODULUS
        scale = tuple((tonic + s) % MODULUS for s in MAJOR_STEPS)
        object.__setattr__(self, "tonic", tonic)
        object.__setattr__(self, "scale", scale)
        object.__setattr__(
            self,
            "degrees",
            tuple(frozenset({scale[n], scale[(n + 2) % 7], scale[(n + 4) % 7]}) for n in range(7)),
        )

    @property
    def pcs(self) -> PcSet:
        return frozenset(self.scale)

    def triad(self, degree: Degree | int) -> PcSet:
        return self.degrees[int(degree) - 1]

    @property
    def name(self) -> str:
        return tonic_name(self.tonic)

    def __str__(self) -> str:
        return self.name


def major_tonality(tonic: int | str) -> Tonality:
    return Tonality(parse_tonic(tonic))


def degree_triad(t: Tonality, degree: Degree | int | str) -> PcSet:
    return t.triad(parse_degree(degree))


@dataclass(frozen=True)
class CadentialSet:
    label: str
    degrees: frozenset[Degree]

    def __str__(self) -> str:
        return f"{self.label}={{{','.join(d.name for d in sorted(self.degrees))}}}"


CADENCES: dict[str, CadentialSet] = {
    label: CadentialSet(label, frozenset(Degree[d] for d in ds))
    for label, ds in (
        ("k1", ("II", "V")),
        ("k2", ("II", "III")),
        ("k3", ("III", "IV")),
        ("k4", ("IV", "V")),
        ("k5", ("VII",)),
    )
}


def _cadence(c: CadentialSet | str) -> CadentialSet:
    return CADENCES[c] if isinstance(c, str) else c


def cadence_notes(t: Tonality, cadence: CadentialSet | str) -> PcSet:
    return frozenset().union(*(t.triad(d) for d in _cadence(cadence).degrees))


@lru_cache(maxsize=None)
def _all_chords() -> tuple[frozenset[PcSet], ...]:
    return tuple(frozenset(Tonality(k).degrees) for k in range(MODULUS))


def cadential_sets(t: Tonality) -> list[CadentialSet]:
    """Inclusion-minimal degree sets whose triads sit together in one major key only.

    Found by brute force over all 127 non-empty degree subsets. Results that
    coincide with k1..k5 take those labels.
    """
    keys = _all_chords()
    minimal: list[frozenset[Degree]] = []
    for size in range(1, 8):
        for combo in combinations(Degree, size):
            ds = frozenset(combo)
            if any(m <= ds for m in minimal):
                continue
            chords = {t.triad(d) for d in ds}
            if sum(chords <= k for k in keys) == 1:
                minimal.append(ds)
    by_degrees = {c.degrees: c for c in CADENCES.values()}
    out = [by_degrees.get(ds, CadentialSet("k?", ds)) for ds in minimal]
    return sorted(out, key=lambda c: (c.label, sorted(c.degrees)))


def find_modulators(source: Tonality, target: Tonality) -> frozenset[AffineMap]:
    return frozenset(m for m in ALL_MAPS if m(source.pcs) == target.pcs)


class QuantumNotFound(LookupError):
    """No note set satisfies the three quantum conditions for this modulator and cadence."""


@dataclass(frozen=True)
class ModulationResult:
    source: Tonality
    target: Tonality
    modulator: AffineMap
    cadence: CadentialSet
    quantum: PcSet
    pivots: frozenset[Degree]
    source_cover: frozenset[Degree]
    alternatives: tuple[PcSet, ...] = ()

    @property
    def target_intersection(self) -> PcSet:
        return self.quantum & self.target.pcs

    @property
    def label(self) -> str:
        return f"{self.source.name}->{self.target.name}"

    def __str__(self) -> str:
        pivots = ",".join(d.name for d in sorted(self.pivots))
        return (
            f"{self.label} m={self.modulator} {self.cadence.label} "
            f"M={{{format_pcset(self.quantum)}}} pivots={{{pivots}}}"
        )


def _is_quantum(s: PcSet, m: AffineMap, notes: PcSet, target: PcSet) -> bool:
    return notes <= s and m(s) == s and is_rigid(s & target)


def _orbit_closure(s: PcSet, m: AffineMap) -> PcSet:
    closed = set(s)
    frontier = list(s)
    while frontier:
        y = m(frontier.pop())
        if y not in closed:
            closed.add(y)
            frontier.append(y)
    return frozenset(closed)


def _covered(t: Tonality, s: PcSet) -> frozenset[Degree]:
    return frozenset(d for d in Degree if t.triad(d) <= s)


def modulation_quantum(
    source: Tonality, target: Tonality, m: AffineMap, cadence: CadentialSet | str
) -> ModulationResult:
    """The minimal m-invariant set holding the target cadence with a rigid trace on the target scale.

    Every valid set contains the m-orbit closure of the cadence notes, so the
    search walks the supersets of that closure by size, then lexicographically.
    All minimal sets are kept; ``quantum`` is the first of them.

    Raises:
        QuantumNotFound: no subset of Z/12Z qualifies.
    """
    cadence = _cadence(cadence)
    if m(source.pcs) != target.pcs:
        raise ValueError(f"{m} does not map {source} onto {target}")
    notes = cadence_notes(target, cadence)
    seed = _orbit_closure(notes, m)
    free = sorted(CHROMATIC - seed)
    for extra in range(len(free) + 1):
        found = []
        for combo in combinations(free, extra):
            s = seed | frozenset(combo)
            if _is_quantum(s, m, notes, target.pcs):
                found.append(s)
        if found:
            found.sort(key=sorted)
            quantum = found[0]
            return ModulationResult(
                source,
                target,
                m,
                cadence,
                quantum,
                pivots=_covered(target, quantum),
                source_cover=_covered(source, quantum),
                alternatives=tuple(found),
            )
    raise QuantumNotFound(f"no quantum for {source}->{target} with {m} and {cadence.label}")


def minimal_quanta_rescan(result: ModulationResult) -> list[PcSet]:
    """Independent scan of all 4096 subsets; returns every valid set of minimum size."""
    notes = cadence_notes(result.target, result.cadence)
    for size in range(MODULUS + 1):
        hits = [
            frozenset(c)
            for c in combinations(range(MODULUS), size)
            if _is_quantum(frozenset(c), result.modulator, notes, result.target.pcs)
        ]
        if hits:
            return sorted(hits, key=sorted)
    return []


@dataclass(frozen=True)
class SweepEntry:
    modulator: AffineMap
    cadence: CadentialSet
    result: ModulationResult | None


def modulation_sweep(source: Tonality, target: Tonality) -> list[SweepEntry]:
    """Try every modulator against every cadence; ``result`` is None where no quantum exists."""
    out = []
    for m in sorted(find_modulators(source, target), key=lambda a: (a.scale, a.shift)):
        for c in CADENCES.values():
            try:
                r = modulation_quantum(source, target, m, c)
            except QuantumNotFound:
                r = None
            out.append(SweepEntry(m, c, r))
    return out


def transpose_modulation(r: ModulationResult, n: int) -> ModulationResult:
    """Carry a result along ``e^n``; the modulator is conjugated, degree labels are kept."""
    shift = AffineMap(n, 1)
    return ModulationResult(
        source=Tonality(r.source.tonic + n),
        target=Tonality(r.target.tonic + n),
        modulator=shift @ r.modulator @ shift.inverse(),
        cadence=r.cadence,
        quantum=shift(r.quantum),
        pivots=r.pivots,
        source_cover=r.source_cover,
        alternatives=tuple(shift(a) for a in r.alternatives),
    )

