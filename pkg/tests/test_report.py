import csv
import io
import json
from importlib import resources

import pytest
from jsonschema import Draft202012Validator

from algmusic.counterpoint import CounterpointInterval, analyze_sequence, little_theorem_report
from algmusic.fixtures import fixture_by_name, run_fixture_suite
from algmusic.modulation import CADENCES, cadential_sets, major_tonality, modulation_quantum, modulation_sweep
from algmusic.neo_riemannian import Triad, verify_group_properties, word_apply
from algmusic.pitch_algebra import AffineMap
from algmusic.report import (
    FORMATS,
    AnalysisReport,
    cadences_report,
    counterpoint_report,
    group_report,
    modulation_report,
    plr_report,
    render_report,
    sweep_report,
    theorem_report,
)

SCHEMA = json.loads(resources.files("algmusic").joinpath("schema/report.schema.json").read_text(encoding="utf-8"))
ROW_DEFS = {"sequence": "transition_row", "quantum": "modulation_row", "fixtures": "fixture_row"}


def row_validator(name):
    return Draft202012Validator({"$defs": SCHEMA["$defs"], "$ref": f"#/$defs/{name}"})


@pytest.fixture(scope="module")
def reports(world):
    C, D = major_tonality("C"), major_tonality("D")
    confitebor = analyze_sequence(world, fixture_by_name("confitebor").sequence())
    return {
        "sequence": counterpoint_report(confitebor, world, name="confitebor"),
        "theorem": theorem_report(world, little_theorem_report(world)),
        "quantum": modulation_report([modulation_quantum(C, D, AffineMap(6, 11), "k4")], title="C->D"),
        "sweep": sweep_report(C, D, modulation_sweep(C, D)),
        "cadences": cadences_report(C, cadential_sets(C)),
        "apply": plr_report("T7,R", Triad.parse("C"), word_apply("T7,R", Triad.parse("C"))),
        "verify": group_report(verify_group_properties()),
        "fixtures": run_fixture_suite(world),
    }


def test_schema_is_valid():
    Draft202012Validator.check_schema(SCHEMA)


def test_every_report_validates(reports):
    validator = Draft202012Validator(SCHEMA)
    for view, r in reports.items():
        doc = json.loads(render_report(r, "json"))
        validator.validate(doc)
        assert doc["metadata"]["view"] == view
        if view in ROW_DEFS:
            rv = row_validator(ROW_DEFS[view])
            for row in doc["rows"]:
                rv.validate(row)


@pytest.mark.parametrize("fmt", FORMATS)
def test_rendering_is_deterministic(reports, fmt):
    for r in reports.values():
        assert render_report(r, fmt) == render_report(r, fmt)


def test_json_round_trip_is_lossless(reports):
    for r in reports.values():
        text = render_report(r, "json")
        back = AnalysisReport.from_json(text)
        assert back == r
        assert render_report(back, "json") == text


def test_csv_carries_every_row(reports):
    for r in reports.values():
        rows = list(csv.DictReader(io.StringIO(render_report(r, "csv"))))
        assert len(rows) == len(r.rows)


def test_counterpoint_markdown_headers(reports):
    md = render_report(reports["sequence"], "md")
    assert md.splitlines()[0].split("|")[1:3] == [" Set of symmetries ", " Cardinality "]
    assert "{e^{ε.6}∘(1+ε.6)}" in md


def test_modulation_markdown_headers(reports):
    md = render_report(reports["quantum"], "md")
    lines = md.splitlines()
    assert lines[0] == "### C->D"
    assert [c.strip() for c in lines[2].strip("|").split("|")] == ["Modulation", "m", "Cadence", "M∩T", "Pivots"]
    assert "C→D" in md and "e^6·11" in md and "{1,2,4,7,9,11}" in md and "II, IV, V, VII" in md


def test_unknown_kind_and_format():
    with pytest.raises(ValueError):
        AnalysisReport("tables", [])
    with pytest.raises(ValueError):
        render_report(AnalysisReport("plr", []), "xml")


def test_pipes_are_escaped_in_markdown():
    r = AnalysisReport("plr", [{"a": "x|y"}])
    assert "x\\|y" in render_report(r, "md")


def test_annotations_go_into_rows(world):
    seq = [CounterpointInterval.parse(s) for s in ("0+e.7", "0+e.4", "10+e.7")]
    r = counterpoint_report(analyze_sequence(world, seq), world, annotations={1: "mirabilium"})
    assert r.rows[1]["annotation"] == "mirabilium"
    assert "annotation" in render_report(r, "csv").splitlines()[0]


def test_cadence_report_lists_five_sets():
    r = cadences_report(major_tonality("C"), cadential_sets(major_tonality("C")))
    assert [row["label"] for row in r.rows] == list(CADENCES)
    assert r.rows[3]["chords"] == "F, G"
