"""Embedded golden corpus: Monteverdi excerpts as interval sequences and chord plans.

Interval sequences and symmetry tables are stored as printed, not re-read from
notation. :func:`run_fixture_suite` recomputes everything and diffs it
against the stored values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from .counterpoint import CounterpointInterval, CounterpointWorld, analyze_sequence
from .dual_numbers import DualSymmetry
from .modulation import (
    CADENCES,
    Degree,
    cadence_notes,
    find_modulators,
    major_tonality,
    minimal_quanta_rescan,
    modulation_quantum,
    transpose_modulation,
)
from .neo_riemannian import Triad, cadence_diagram, cadence_transform
from .pitch_algebra import AffineMap, is_rigid, parse_pcset
from .report import AnalysisReport
from .scores import chord_pitches

__all__ = [
    "CounterpointFixture",
    "COUNTERPOINT_FIXTURES",
    "QuantumFixture",
    "QUANTUM_FIXTURES",
    "TRANSPOSITION_FIXTURES",
    "MODULATION_PLAN",
    "ARIETTA_FIXTURES",
    "run_fixture_suite",
    "fixture_by_name",
]


@dataclass(frozen=True)
class CounterpointFixture:
    name: str
    title: str
    passage: str
    intervals: tuple[str, ...]
    table: tuple[tuple[str, ...], ...]
    annotations: dict[int, str] = field(default_factory=dict)

    def sequence(self) -> list[CounterpointInterval]:
        return [CounterpointInterval.parse(s) for s in self.intervals]

    def expected(self) -> list[frozenset[DualSymmetry]]:
        return [frozenset(DualSymmetry.parse(g) for g in row) for row in self.table]


# shorthand for the recurring table entries
_G7 = "e[0]*7"
_G7_6 = "e[6]*(7+6e)"
_G1_6 = "e[6]*(1+6e)"
_G5_4 = "e[8]*(5+4e)"
_G5_8 = "e[8]*(5+8e)"
_G11_8 = "e[11]*(11+8e)"
_G11_4 = "e[11]*(11+4e)"
_G11 = "e[11]*11"
_G3_7_8 = "e[3]*(7+8e)"
_G3_7 = "e[3]*7"

_OCTAVE_SIXTH_TABLE = (
    (_G1_6, _G7_6),
    (_G5_8, _G5_4),
    (_G1_6, _G7_6),
    (_G5_8, _G5_4),
    (_G11_8, _G11_4, _G11),
    (_G3_7_8, _G3_7),
    (_G11_8, _G11_4, _G11),
    (_G3_7_8, _G3_7),
)

COUNTERPOINT_FIXTURES: tuple[CounterpointFixture, ...] = (
    CounterpointFixture(
        "confitebor",
        "Confitebor primo (1640)",
        "mm. 64-67, 5-3 succession",
        ("0+e.7", "0+e.4", "10+e.7", "10+e.4", "9+e.7", "9+e.3", "7+e.7", "7+e.4", "5+e.7"),
        ((_G7,), (_G7_6,), (_G7,), (_G1_6,), (_G7,), (_G5_4,), (_G7,), (_G7_6,)),
        {3: "mirabilium"},
    ),
    CounterpointFixture(
        "ma_tu",
        "Ma tu, più che mai dura",
        "Book V, mm. 6-8, 5-3 succession",
        ("5+e.7", "5+e.4", "3+e.7", "3+e.4", "2+e.7"),
        ((_G7,), (_G7_6,), (_G7,), (_G1_6,)),
        {3: "pietà"},
    ),
    CounterpointFixture(
        "io_mi_son",
        "Io mi son giovinetta",
        "Book IV, mm. 52-53, 5-3 succession",
        ("7+e.7", "7+e.3", "5+e.7", "5+e.4", "3+e.7", "3+e.4", "2+e.7", "2+e.3", "0+e.7"),
        ((_G7,), (_G5_4,), (_G7,), (_G7_6,), (_G7,), (_G1_6,), (_G7,), (_G5_4,)),
        {5: "fuggi"},
    ),
    CounterpointFixture(
        "laudate",
        "Laudate Dominum (1640)",
        "mm. 98-103, 8-6 succession",
        ("2+e.0", "2+e.9", "0+e.0", "0+e.9", "11+e.0", "11+e.8", "9+e.0", "9+e.8", "7+e.0", "7+e.9"),
        _OCTAVE_SIXTH_TABLE + ((_G1_6, _G7_6),),
    ),
    CounterpointFixture(
        "gloria_8_6",
        "Gloria a 7 (1640)",
        "mm. 1-5, 8-6 succession",
        ("2+e.0", "2+e.9", "0+e.0", "0+e.9", "11+e.0", "11+e.8", "9+e.0", "9+e.8", "7+e.0"),
        _OCTAVE_SIXTH_TABLE,
    ),
    CounterpointFixture(
        "gloria_10_8",
        "Gloria a 7 (1640)",
        "mm. 1-5, 10-8 succession",
        ("11+e.3", "11+e.0", "9+e.3", "9+e.0", "7+e.4"),
        (
            (_G5_8, _G5_4),
            (_G1_6, _G7_6, _G11_8, _G11_4, _G11),
            (_G5_8, _G5_4),
            (_G11_4, _G11),
        ),
        {1: "tutti entrance"},
    ),
)


def fixture_by_name(name: str) -> CounterpointFixture:
    for f in COUNTERPOINT_FIXTURES:
        if f.name == name:
            return f
    raise KeyError(name)


@dataclass(frozen=True)
class QuantumFixture:
    name: str
    source: str
    target: str
    modulator: str
    cadence: str
    quantum: str
    intersection: str
    pivots: tuple[str, ...]
    source_degrees: tuple[str, ...]


QUANTUM_FIXTURES: tuple[QuantumFixture, ...] = (
    QuantumFixture("C->D", "C", "D", "e6*-1", "k4", "1,2,4,5,7,9,11", "1,2,4,7,9,11",
                   ("II", "IV", "V", "VII"), ("II", "III", "V", "VII")),
    QuantumFixture("C->G", "C", "G", "e11*-1", "k5", "0,2,5,6,9,11", "0,2,6,9,11",
                   ("III", "V", "VII"), ("II", "IV", "VII")),
    QuantumFixture("C->Eb", "C", "Eb", "e7*11", "k1", "0,2,5,7,8,9,10,11", "0,2,5,7,8,10",
                   ("II", "III", "V", "VII"), ("II", "V", "VII")),
)

# (base quantum, semitones, expected target key, expected pivot chords, expected cadence chords)
TRANSPOSITION_FIXTURES = (
    ("C->G", 2, "D", "A", ("c#", "E", "g#°"), ("g#°",)),
    ("C->Eb", 9, "A", "C", ("d", "e", "G", "b°"), ("d", "G")),
)

# In questo lieto e fortunato giorno: C -> D -> A -> C
MODULATION_PLAN = (
    {"step": "C->D", "base": "C->D", "shift": 0, "cadence_chords": ("G", "A"),
     "pivot_chords": ("e", "G", "A", "c#°")},
    {"step": "D->A", "base": "C->G", "shift": 2, "cadence_chords": ("g#°",),
     "pivot_chords": ("c#", "E", "g#°")},
    {"step": "A->C", "base": "C->Eb", "shift": 9, "cadence_chords": ("d", "G"),
     "pivot_chords": None},
)

ARIETTA_FIXTURES = (
    {"name": "ecco_pur", "title": "Ecco pur", "key": "Bb", "major": ("Eb", "F"), "minor": ("c", "d"), "relative": "g"},
    {"name": "mira", "title": "Mira, deh mira Orfeo", "key": "C", "major": ("F", "G"), "minor": ("d", "e"), "relative": "a"},
)


def _chords(names) -> set:
    return {chord_pitches(n) for n in names}


def _fmt(value: Any) -> Any:
    if isinstance(value, (set, frozenset)):
        return sorted(_fmt(v) for v in value)
    if isinstance(value, (list, tuple)):
        return [_fmt(v) for v in value]
    if isinstance(value, (DualSymmetry, AffineMap, Triad)):
        return str(value)
    if isinstance(value, Degree):
        return value.name
    return value


class _Collector:
    def __init__(self) -> None:
        self.rows: list[dict[str, Any]] = []

    def check(self, fixture: str, check: str, expected: Any, actual: Any, match: bool | None = None) -> None:
        ok = expected == actual if match is None else match
        self.rows.append(
            {"fixture": fixture, "check": check, "expected": _fmt(expected), "actual": _fmt(actual), "match": bool(ok)}
        )

    def guard(self, fixture: str, check: str, fn: Callable[[], None]) -> None:
        try:
            fn()
        except Exception as exc:  # a crash counts as one mismatch
            self.rows.append({"fixture": fixture, "check": check, "expected": "no error", "actual": repr(exc), "match": False})


def _run_counterpoint(c: _Collector, world: CounterpointWorld) -> None:
    for fx in COUNTERPOINT_FIXTURES:
        def run(fx=fx) -> None:
            analysis = analyze_sequence(world, fx.sequence())
            expected = fx.expected()
            c.check(fx.name, "rows", len(expected), len(analysis))
            for i, (t, exp) in enumerate(zip(analysis, expected), start=1):
                c.check(fx.name, f"transition {i}: {t.source}->{t.target}", set(exp), set(t.symmetries))

        c.guard(fx.name, "analyze", run)


def _quantum(fx: QuantumFixture):
    return modulation_quantum(
        major_tonality(fx.source), major_tonality(fx.target), AffineMap.parse(fx.modulator), fx.cadence
    )


def _run_quanta(c: _Collector) -> None:
    for fx in QUANTUM_FIXTURES:
        def run(fx=fx) -> None:
            r = _quantum(fx)
            name = f"quantum {fx.name}"
            m = AffineMap.parse(fx.modulator)
            c.check(name, "modulator", True, m in find_modulators(r.source, r.target))
            c.check(name, "M", parse_pcset(fx.quantum), r.quantum)
            c.check(name, "unique minimum", 1, len(r.alternatives))
            c.check(name, "M∩T", parse_pcset(fx.intersection), r.target_intersection)
            c.check(name, "M∩T rigid", True, is_rigid(r.target_intersection))
            c.check(name, "pivots", {Degree[d] for d in fx.pivots}, set(r.pivots))
            # the printed decomposition: M = union of listed source degrees and the pivots
            listed = [r.source.triad(Degree[d]) for d in fx.source_degrees] + [r.target.triad(d) for d in r.pivots]
            c.check(name, "decomposition", r.quantum, frozenset().union(*listed))
            c.check(name, "minimal (4096 rescan)", [r.quantum], minimal_quanta_rescan(r))

        c.guard(f"quantum {fx.name}", "solve", run)


def _base(name: str):
    return _quantum(next(f for f in QUANTUM_FIXTURES if f.name == name))


def _run_transpositions(c: _Collector) -> None:
    for base, n, src, tgt, pivots, cadence in TRANSPOSITION_FIXTURES:
        def run(base=base, n=n, src=src, tgt=tgt, pivots=pivots, cadence=cadence) -> None:
            name = f"transpose {base} by {n}"
            r = transpose_modulation(_base(base), n)
            c.check(name, "keys", (major_tonality(src).tonic, major_tonality(tgt).tonic), (r.source.tonic, r.target.tonic))
            c.check(name, "pivot chords", _chords(pivots), {r.target.triad(d) for d in r.pivots})
            c.check(name, "cadence chords", _chords(cadence), {r.target.triad(d) for d in r.cadence.degrees})
            direct = modulation_quantum(r.source, r.target, r.modulator, r.cadence)
            c.check(name, "commutes with solving", r.quantum, direct.quantum)

        c.guard(f"transpose {base} by {n}", "transpose", run)


def _run_plan(c: _Collector) -> None:
    name = "in_questo_lieto"
    for step in MODULATION_PLAN:
        def run(step=step) -> None:
            r = transpose_modulation(_base(step["base"]), step["shift"])
            label = step["step"]
            c.check(name, f"{label} keys", label, f"{r.source.name}->{r.target.name}")
            cadence = {r.target.triad(d) for d in r.cadence.degrees}
            pivots = {r.target.triad(d) for d in r.pivots}
            c.check(name, f"{label} cadence", _chords(step["cadence_chords"]), cadence)
            if step["pivot_chords"] is not None:
                c.check(name, f"{label} pivots", _chords(step["pivot_chords"]), pivots)
            c.check(name, f"{label} cadence within pivots", True, cadence <= pivots)

        c.guard(name, step["step"], run)


def _run_ariettas(c: _Collector) -> None:
    for fx in ARIETTA_FIXTURES:
        def run(fx=fx) -> None:
            ct = cadence_transform(fx["key"])
            c.check(fx["name"], "major cadence k4", [Triad.parse(t) for t in fx["major"]], list(ct.major_cadence))
            c.check(fx["name"], "minor cadence k2", [Triad.parse(t) for t in fx["minor"]], list(ct.minor_cadence))
            d = cadence_diagram(fx["key"])
            c.check(fx["name"], "relative", Triad.parse(fx["relative"]), d["bottom"][1])
            c.check(fx["name"], "diagram closes", True, d["closes"])
            # k4 and k2 of the major key are those chords, by degree
            key = major_tonality(fx["key"])
            c.check(fx["name"], "k4 notes", cadence_notes(key, CADENCES["k4"]),
                    frozenset().union(*(t.pitches for t in ct.major_cadence)))
            c.check(fx["name"], "k2 notes", cadence_notes(key, CADENCES["k2"]),
                    frozenset().union(*(t.pitches for t in ct.minor_cadence)))

        c.guard(fx["name"], "diagram", run)


def run_fixture_suite(world: CounterpointWorld | None = None) -> AnalysisReport:
    """Recompute every embedded fixture; ``metadata['mismatches']`` counts failed checks."""
    world = world or CounterpointWorld()
    c = _Collector()
    _run_counterpoint(c, world)
    _run_quanta(c)
    _run_transpositions(c)
    _run_plan(c)
    _run_ariettas(c)
    per: dict[str, dict[str, int]] = {}
    for row in c.rows:
        entry = per.setdefault(row["fixture"], {"checks": 0, "mismatches": 0})
        entry["checks"] += 1
        entry["mismatches"] += not row["match"]
    mismatches = sum(v["mismatches"] for v in per.values())
    notes = [f"{name}: {v['checks'] - v['mismatches']}/{v['checks']} match" for name, v in per.items()]
    meta = {
        "view": "fixtures",
        "polarity_variant": world.polarity_variant.value,
        "mismatches": mismatches,
        "fixtures": per,
        "notes": notes,
    }
    return AnalysisReport(
        "verify",
        c.rows,
        meta,
        [("fixture", "Fixture"), ("check", "Check"), ("match", "Match")],
    )
