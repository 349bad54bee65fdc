"""Reading two-voice event files, chord streams and interval lists.

Three UTF-8 text formats are recognised from their first data line:

* ``onset,lower,upper`` header: two-voice events with MIDI-style pitches;
* ``onset,pcs[,label]`` header: chord events, ``pcs`` as ``|``-separated residues;
* no header: one ``<x>+e.<y>`` counterpoint interval per line.

Blank lines and lines starting with ``#`` are skipped everywhere.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .counterpoint import CounterpointInterval
from .modulation import Degree, Tonality, parse_tonic, tonic_name
from .pitch_algebra import MODULUS, PcSet, pcset

log = logging.getLogger(__name__)

__all__ = [
    "VoiceEvent",
    "ChordEvent",
    "ChordLabel",
    "InputFormatError",
    "parse_events",
    "format_events",
    "extract_intervals",
    "label_chord",
    "chord_name",
    "chord_pitches",
]


class InputFormatError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass(frozen=True)
class VoiceEvent:
    onset: Fraction
    lower: int
    upper: int


@dataclass(frozen=True)
class ChordEvent:
    onset: Fraction
    pcs: PcSet
    label: str | None = None


Event = Union[VoiceEvent, ChordEvent, CounterpointInterval]

_VOICE_HEADER = ("onset", "lower", "upper")
_CHORD_HEADERS = (("onset", "pcs"), ("onset", "pcs", "label"))
_INTERVAL_RE = re.compile(r"^\s*-?\d+\s*\+\s*(e|ε)\s*\.?\s*-?\d+\s*$")


def _onset(text: str, line: int, column: int) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise InputFormatError(f"bad onset {text!r}", line, column) from None


def _fields(raw: str) -> tuple[list[str], list[int]]:
    """Split a CSV line, keeping the 1-based column where each field starts."""
    parts = raw.split(",")
    cols, pos = [], 1
    for p in parts:
        cols.append(pos)
        pos += len(p) + 1
    return [p.strip() for p in parts], cols


def _data_lines(text: str) -> list[tuple[int, str]]:
    text = text.lstrip("﻿")
    out = []
    for n, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            out.append((n, raw.rstrip("\r")))
    return out


def parse_events(text: str) -> list[Event]:
    """Parse any of the three formats; the kind is fixed by the first data line.

    Raises:
        InputFormatError: malformed field or a line of another format, with
            its line and column.
    """
    lines = _data_lines(text)
    if not lines:
        return []
    first_no, first = lines[0]
    header = tuple(f.lower() for f in _fields(first)[0])
    if header == _VOICE_HEADER:
        return _parse_voice(lines[1:])
    if header in _CHORD_HEADERS:
        return _parse_chords(lines[1:], len(header))
    return _parse_intervals(lines)


def _reject_mixed(no: int, raw: str, expected: str) -> None:
    if _INTERVAL_RE.match(raw.split(" #")[0]):
        raise InputFormatError(f"interval line in a {expected} file (mixed formats)", no)
    head = tuple(f.lower() for f in _fields(raw)[0])
    if head == _VOICE_HEADER or head in _CHORD_HEADERS:
        raise InputFormatError("second header line (mixed formats)", no)


def _parse_voice(lines: list[tuple[int, str]]) -> list[VoiceEvent]:
    out: list[VoiceEvent] = []
    for no, raw in lines:
        _reject_mixed(no, raw, "voice-event")
        fields, cols = _fields(raw)
        if len(fields) != 3:
            raise InputFormatError(f"expected 3 fields onset,lower,upper, got {len(fields)}", no)
        onset = _onset(fields[0], no, cols[0])
        pitches = []
        for f, c in zip(fields[1:], cols[1:]):
            try:
                p = int(f)
            except ValueError:
                raise InputFormatError(f"bad pitch {f!r}", no, c) from None
            if not 0 <= p <= 127:
                raise InputFormatError(f"pitch {p} outside 0..127", no, c)
            pitches.append(p)
        if out and onset < out[-1].onset:
            raise InputFormatError("onsets must not decrease", no, cols[0])
        out.append(VoiceEvent(onset, *pitches))
    return out


def _parse_chords(lines: list[tuple[int, str]], width: int) -> list[ChordEvent]:
    out: list[ChordEvent] = []
    for no, raw in lines:
        _reject_mixed(no, raw, "chord")
        fields, cols = _fields(raw)
        if len(fields) not in (2, 3) or len(fields) > width:
            raise InputFormatError(f"expected onset,pcs[,label], got {len(fields)} fields", no)
        onset = _onset(fields[0], no, cols[0])
        try:
            pcs = pcset(int(x) for x in fields[1].split("|") if x.strip())
        except ValueError:
            raise InputFormatError(f"bad pitch-class list {fields[1]!r}", no, cols[1]) from None
        if not pcs:
            raise InputFormatError("empty pitch-class set", no, cols[1])
        if out and onset < out[-1].onset:
            raise InputFormatError("onsets must not decrease", no, cols[0])
        label = fields[2] if len(fields) == 3 and fields[2] else None
        out.append(ChordEvent(onset, pcs, label))
    return out


def _parse_intervals(lines: list[tuple[int, str]]) -> list[CounterpointInterval]:
    out = []
    for no, raw in lines:
        body = raw.split(" #")[0].split("\t#")[0]
        if "," in body:
            raise InputFormatError("CSV line in an interval file (mixed formats)", no, body.index(",") + 1)
        try:
            out.append(CounterpointInterval.parse(body))
        except ValueError:
            col = len(body) - len(body.lstrip()) + 1
            raise InputFormatError(f"expected '<x>+e.<y>', got {body.strip()!r}", no, col) from None
    return out


def format_events(events: Sequence[Event]) -> str:
    """Inverse of :func:`parse_events` for a homogeneous list."""
    if not events:
        return ""
    first = events[0]
    if isinstance(first, VoiceEvent):
        rows = ["onset,lower,upper"] + [f"{e.onset},{e.lower},{e.upper}" for e in events]
    elif isinstance(first, ChordEvent):
        rows = ["onset,pcs,label"] + [
            f"{e.onset},{'|'.join(map(str, sorted(e.pcs)))},{e.label or ''}" for e in events
        ]
    else:
        rows = [str(e) for e in events]
    return "\n".join(rows) + "\n"


def extract_intervals(events: Iterable[VoiceEvent]) -> list[CounterpointInterval]:
    """Lower voice as cantus, upper-minus-lower as interval, repeats collapsed.

    Dissonant intervals are kept; they are visible through ``.consonant``.
    """
    out: list[CounterpointInterval] = []
    for e in events:
        if e.upper < e.lower:
            log.warning("voice crossing at onset %s: upper %d below lower %d", e.onset, e.upper, e.lower)
        xi = CounterpointInterval(e.lower % MODULUS, (e.upper - e.lower) % MODULUS)
        if not out or out[-1] != xi:
            out.append(xi)
    if not out:
        raise ValueError("no events")
    return out


_MAJOR = ("C", "C#", "D", "Eb", "E", "F", "F#", "G", "Ab", "A", "Bb", "B")
_MINOR = ("c", "c#", "d", "eb", "e", "f", "f#", "g", "g#", "a", "bb", "b")
_DIM = ("c°", "c#°", "d°", "d#°", "e°", "f°", "f#°", "g°", "g#°", "a°", "bb°", "b°")
_SHAPES = {"major": (0, 4, 7), "minor": (0, 3, 7), "diminished": (0, 3, 6)}
_NAMES = {"major": _MAJOR, "minor": _MINOR, "diminished": _DIM}


def _triad_table() -> dict[PcSet, tuple[str, str]]:
    table = {}
    for quality, shape in _SHAPES.items():
        for root in range(MODULUS):
            table[pcset(root + s for s in shape)] = (quality, _NAMES[quality][root])
    return table


_TRIADS = _triad_table()


def chord_name(pcs: Iterable[int]) -> str | None:
    hit = _TRIADS.get(pcset(pcs))
    return hit[1] if hit else None


def chord_pitches(name: str) -> PcSet:
    """``"G"`` -> {7,11,2}, ``"e"`` -> {4,7,11}, ``"g#°"`` -> {8,11,2}."""
    key = name.strip().replace("♯", "#").replace("♭", "b").replace("o", "°")
    for pcs, (_, n) in _TRIADS.items():
        if n == key:
            return pcs
    # enharmonic spellings
    dim = key.endswith("°")
    body = key.rstrip("°")
    if not body:
        raise ValueError(f"unknown chord {name!r}")
    root = parse_tonic(body[0].upper() + body[1:])
    quality = "diminished" if dim else ("major" if body[0].isupper() else "minor")
    return pcset(root + s for s in _SHAPES[quality])


@dataclass(frozen=True)
class ChordLabel:
    pcs: PcSet
    quality: str
    name: str | None
    degrees: tuple[tuple[str, Degree], ...]

    def __str__(self) -> str:
        if self.name is None:
            return "unknown"
        where = ", ".join(f"{d.name} of {k}" for k, d in self.degrees)
        return f"{self.name} ({where})" if where else self.name


def label_chord(pcs: Iterable[int]) -> ChordLabel:
    """Name a triad (24 consonant + 12 diminished) and list the major keys holding it."""
    s = pcset(pcs)
    hit = _TRIADS.get(s)
    if hit is None:
        return ChordLabel(s, "unknown", None, ())
    degrees = tuple(
        (tonic_name(k), d) for k in range(MODULUS) for d in Degree if Tonality(k).triad(d) == s
    )
    return ChordLabel(s, hit[0], hit[1], degrees)
