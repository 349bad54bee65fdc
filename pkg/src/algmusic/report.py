"""Analysis reports and their JSON / CSV / markdown renderings.

A report is a list of flat row dicts plus metadata. ``columns`` picks the
row keys shown (and their headers) in the markdown table; CSV carries every
row key. Rendering is deterministic: the same report gives the same bytes.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .counterpoint import (
    CounterpointWorld,
    SequenceAnalysis,
    TheoremReport,
    TransitionAnalysis,
)
from .dual_numbers import DualSymmetry
from .modulation import ModulationResult, SweepEntry, CadentialSet, Tonality
from .neo_riemannian import GroupReport
from .pitch_algebra import format_pcset
from .scores import chord_name

FORMATS = ("json", "csv", "md")
KINDS = ("counterpoint", "modulation", "plr", "verify")
SCHEMA_VERSION = 1


@dataclass
class AnalysisReport:
    kind: str
    rows: list[dict[str, Any]]
    metadata: dict[str, Any] = field(default_factory=dict)
    columns: list[tuple[str, str]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"report kind must be one of {KINDS}, got {self.kind!r}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": self.kind,
            "metadata": self.metadata,
            "columns": [{"key": k, "header": h} for k, h in self.columns],
            "rows": self.rows,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "AnalysisReport":
        return cls(
            kind=data["kind"],
            rows=list(data["rows"]),
            metadata=dict(data.get("metadata", {})),
            columns=[(c["key"], c["header"]) for c in data.get("columns", [])],
        )

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.from_dict(json.loads(text))


def _cell(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        return " ".join(_cell(v) for v in value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    return str(value)


def _render_json(r: AnalysisReport) -> str:
    return json.dumps(r.to_dict(), indent=2, ensure_ascii=False, sort_keys=False) + "\n"


def _csv_keys(r: AnalysisReport) -> list[str]:
    keys: list[str] = []
    for row in r.rows:
        keys.extend(k for k in row if k not in keys)
    return keys


def _render_csv(r: AnalysisReport) -> str:
    buf = io.StringIO()
    keys = _csv_keys(r)
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(keys)
    for row in r.rows:
        writer.writerow([_cell(row.get(k)) for k in keys])
    return buf.getvalue()


def _render_md(r: AnalysisReport) -> str:
    columns = r.columns or [(k, k) for k in _csv_keys(r)]
    headers = [h for _, h in columns]
    body = [[_cell(row.get(k)).replace("|", "\\|") for k, _ in columns] for row in r.rows]
    widths = [max([len(h)] + [len(line[i]) for line in body]) for i, h in enumerate(headers)]

    def fmt(cells: Sequence[str]) -> str:
        return "| " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)) + " |"

    lines = []
    title = r.metadata.get("title")
    if title:
        lines += [f"### {title}", ""]
    lines.append(fmt(headers))
    lines.append("|" + "|".join("-" * (w + 2) for w in widths) + "|")
    lines += [fmt(line) for line in body]
    notes = r.metadata.get("notes", [])
    if notes:
        lines += [""] + list(notes)
    return "\n".join(lines) + "\n"


def render_report(r: AnalysisReport, fmt: str = "md") -> str:
    if fmt == "json":
        return _render_json(r)
    if fmt == "csv":
        return _render_csv(r)
    if fmt == "md":
        return _render_md(r)
    raise ValueError(f"unknown format {fmt!r}; choose from {FORMATS}")


# builders


def symmetry_set(gs: Iterable[DualSymmetry]) -> str:
    return "{" + ", ".join(g.pretty() for g in gs) + "}"


def transition_row(i: int, t: TransitionAnalysis) -> dict[str, Any]:
    return {
        "index": i,
        "from": str(t.source),
        "to": str(t.target),
        "symmetries": [str(g) for g in t.symmetries],
        "acting": [str(g) for g in t.acting],
        "symmetry_set": symmetry_set(t.symmetries),
        "cardinality": t.cardinality,
    }


def counterpoint_report(
    analysis: SequenceAnalysis,
    world: CounterpointWorld,
    name: str = "",
    annotations: dict[int, str] | None = None,
) -> AnalysisReport:
    rows = [transition_row(i + 1, t) for i, t in enumerate(analysis.transitions)]
    for i, note in (annotations or {}).items():
        rows[i]["annotation"] = note
    meta = {
        "name": name,
        "view": "sequence",
        "polarity_variant": world.polarity_variant.value,
        "intervals": [str(x) for x in analysis.intervals],
        "parsimony": analysis.summary,
    }
    return AnalysisReport(
        "counterpoint",
        rows,
        meta,
        [("symmetry_set", "Set of symmetries"), ("cardinality", "Cardinality")],
    )


def successors_report(world: CounterpointWorld, xi, symmetries, successors) -> AnalysisReport:
    rows = [
        {"successor": str(eta), "cantus": eta.cantus, "interval": eta.interval}
        for eta in sorted(successors)
    ]
    meta = {
        "view": "successors",
        "interval": str(xi),
        "polarity_variant": world.polarity_variant.value,
        "symmetries": [str(g) for g in sorted(symmetries)],
        "count": len(rows),
        "notes": [f"{len(rows)} admissible successors of {xi.pretty()} via {symmetry_set(sorted(symmetries))}"],
    }
    return AnalysisReport("counterpoint", rows, meta, [("successor", "Successor"), ("cantus", "Cantus"), ("interval", "Interval")])


def theorem_report(world: CounterpointWorld, report: TheoremReport) -> AnalysisReport:
    rows = [
        {
            "interval": str(xi),
            "cantus": xi.cantus,
            "consonance": xi.interval,
            "successors": n,
            "below_bound": n < report.bound,
        }
        for xi, n in sorted(report.counts.items())
    ]
    meta = {
        "view": "theorem",
        "polarity_variant": world.polarity_variant.value,
        "bound": report.bound,
        "minimum": report.minimum,
        "holds": report.holds,
        "notes": [
            f"{len(rows)} consonances, minimum {report.minimum} successors, "
            f"bound {report.bound} {'holds' if report.holds else 'FAILS'}"
        ],
    }
    return AnalysisReport(
        "counterpoint",
        rows,
        meta,
        [("interval", "Consonance"), ("successors", "Successors"), ("below_bound", "Below bound")],
    )


def _degree_list(ds) -> str:
    return ", ".join(d.name for d in sorted(ds))


def _cadence_cell(c: CadentialSet) -> str:
    return f"{c.label}={{{_degree_list(c.degrees)}}}"


def modulation_row(r: ModulationResult) -> dict[str, Any]:
    return {
        "modulation": f"{r.source.name}→{r.target.name}",
        "source": r.source.name,
        "target": r.target.name,
        "modulator": str(r.modulator),
        "m": r.modulator.pretty(),
        "cadence": _cadence_cell(r.cadence),
        "quantum": "{" + format_pcset(r.quantum) + "}",
        "intersection": "{" + format_pcset(r.target_intersection) + "}",
        "pivots": _degree_list(r.pivots),
        "pivot_chords": [chord_name(r.target.triad(d)) for d in sorted(r.pivots)],
        "source_cover": _degree_list(r.source_cover),
        "alternatives": len(r.alternatives),
    }


_MOD_COLUMNS = [
    ("modulation", "Modulation"),
    ("m", "m"),
    ("cadence", "Cadence"),
    ("intersection", "M∩T"),
    ("pivots", "Pivots"),
]


def modulation_report(results: Sequence[ModulationResult], title: str = "") -> AnalysisReport:
    meta: dict[str, Any] = {"view": "quantum"}
    if title:
        meta["title"] = title
    return AnalysisReport("modulation", [modulation_row(r) for r in results], meta, list(_MOD_COLUMNS))


def sweep_report(source: Tonality, target: Tonality, entries: Sequence[SweepEntry]) -> AnalysisReport:
    rows = []
    for e in entries:
        if e.result is None:
            rows.append(
                {
                    "modulation": f"{source.name}→{target.name}",
                    "modulator": str(e.modulator),
                    "m": e.modulator.pretty(),
                    "cadence": _cadence_cell(e.cadence),
                    "found": False,
                    "quantum": "",
                    "intersection": "",
                    "pivots": "",
                }
            )
        else:
            rows.append({**modulation_row(e.result), "found": True})
    meta = {"view": "sweep", "source": source.name, "target": target.name}
    cols = _MOD_COLUMNS[:3] + [("found", "Quantum"), ("quantum", "M")] + _MOD_COLUMNS[3:]
    return AnalysisReport("modulation", rows, meta, cols)


def cadences_report(t: Tonality, sets: Sequence[CadentialSet]) -> AnalysisReport:
    rows = []
    for c in sets:
        ds = sorted(c.degrees)
        rows.append(
            {
                "label": c.label,
                "degrees": _degree_list(ds),
                "chords": ", ".join(chord_name(t.triad(d)) or "?" for d in ds),
                "notes": "{" + format_pcset(frozenset().union(*(t.triad(d) for d in ds))) + "}",
            }
        )
    return AnalysisReport(
        "modulation",
        rows,
        {"view": "cadences", "key": t.name},
        [("label", "Cadence"), ("degrees", "Degrees"), ("chords", "Chords"), ("notes", "Notes")],
    )


def plr_report(word: str, start, end) -> AnalysisReport:
    rows = [{"word": word, "triad": str(start), "result": str(end), "pitches": "{" + format_pcset(end.pitches) + "}"}]
    return AnalysisReport(
        "plr", rows, {"view": "apply"}, [("word", "Word"), ("triad", "Triad"), ("result", "Result"), ("pitches", "Pitches")]
    )


def group_report(g: GroupReport) -> AnalysisReport:
    rows = [
        {"property": "ti_order", "value": g.ti_order, "expected": 24},
        {"property": "plr_order", "value": g.plr_order, "expected": 24},
        {"property": "dual_commute", "value": g.dual_commute, "expected": True},
        {"property": "ti_simply_transitive", "value": g.ti_simply_transitive, "expected": True},
        {"property": "plr_simply_transitive", "value": g.plr_simply_transitive, "expected": True},
        {"property": "isomorphic", "value": g.isomorphic, "expected": True},
    ]
    for row in rows:
        row["ok"] = row["value"] == row["expected"]
    return AnalysisReport(
        "plr",
        rows,
        {"view": "verify", "ok": g.ok},
        [("property", "Property"), ("value", "Value"), ("ok", "OK")],
    )
