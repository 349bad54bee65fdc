import pytest
from hypothesis import given, settings, strategies as st

from algmusic.modulation import (
    CADENCES,
    Degree,
    QuantumNotFound,
    Tonality,
    cadence_notes,
    cadential_sets,
    degree_triad,
    find_modulators,
    major_tonality,
    minimal_quanta_rescan,
    modulation_quantum,
    modulation_sweep,
    parse_tonic,
    tonic_name,
    transpose_modulation,
)
from algmusic.pitch_algebra import AffineMap, is_rigid
from algmusic.scores import chord_pitches

C, D, G, Eb, A = (major_tonality(k) for k in ("C", "D", "G", "Eb", "A"))
EXPECTED_CADENCES = {
    frozenset({Degree.II, Degree.V}),
    frozenset({Degree.II, Degree.III}),
    frozenset({Degree.III, Degree.IV}),
    frozenset({Degree.IV, Degree.V}),
    frozenset({Degree.VII}),
}


def degs(*names):
    return frozenset(Degree[n] for n in names)


@pytest.mark.parametrize(
    "key, scale",
    [("C", {0, 2, 4, 5, 7, 9, 11}), ("G", {7, 9, 11, 0, 2, 4, 6}), ("Eb", {3, 5, 7, 8, 10, 0, 2})],
)
def test_major_scales(key, scale):
    assert major_tonality(key).pcs == scale


@pytest.mark.parametrize(
    "key, degree, triad",
    [("D", "II", {4, 7, 11}), ("A", "VII", {8, 11, 2}), ("C", "I", {0, 4, 7}), ("C", "vii", {11, 2, 5})],
)
def test_degree_triads(key, degree, triad):
    assert degree_triad(major_tonality(key), degree) == triad


def test_tonic_names():
    assert parse_tonic("Eb") == parse_tonic("D#") == parse_tonic("E♭") == 3
    assert parse_tonic("bb") == 10
    assert tonic_name(3) == "Eb" and tonic_name(6) == "F#"
    with pytest.raises(ValueError):
        parse_tonic("H")


@pytest.mark.parametrize("tonic", range(12))
def test_cadential_sets_by_brute_force(tonic):
    sets = cadential_sets(Tonality(tonic))
    assert {c.degrees for c in sets} == EXPECTED_CADENCES
    assert [c.label for c in sets] == ["k1", "k2", "k3", "k4", "k5"]


def test_cadences_as_triads():
    assert {C.triad(d) for d in CADENCES["k4"].degrees} == {frozenset({5, 9, 0}), frozenset({7, 11, 2})}
    assert {A.triad(d) for d in CADENCES["k5"].degrees} == {frozenset({8, 11, 2})}


def test_cadences_identify_a_unique_key():
    for label, c in CADENCES.items():
        chords = {C.triad(d) for d in c.degrees}
        homes = [k for k in range(12) if chords <= set(Tonality(k).degrees)]
        assert homes == [0], label


@pytest.mark.parametrize(
    "target, m",
    [(D, AffineMap(6, 11)), (G, AffineMap(11, 11)), (Eb, AffineMap(7, 11))],
)
def test_find_modulators(target, m):
    found = find_modulators(C, target)
    assert m in found
    assert all(x(C.pcs) == target.pcs for x in found)


QUANTA = [
    (D, "e6*-1", "k4", {1, 2, 4, 5, 7, 9, 11}, degs("II", "IV", "V", "VII"), degs("II", "III", "V", "VII")),
    (G, "e11*-1", "k5", {0, 2, 5, 6, 9, 11}, degs("III", "V", "VII"), None),
    (Eb, "e7*11", "k1", {0, 2, 5, 7, 8, 9, 10, 11}, degs("II", "III", "V", "VII"), None),
]


@pytest.mark.parametrize("target, m, k, quantum, pivots, cover", QUANTA, ids=["C->D", "C->G", "C->Eb"])
def test_worked_quanta(target, m, k, quantum, pivots, cover):
    r = modulation_quantum(C, target, AffineMap.parse(m), CADENCES[k])
    assert r.quantum == quantum
    assert r.pivots == pivots
    if cover is not None:
        assert r.source_cover == cover
    assert len(r.alternatives) == 1
    assert minimal_quanta_rescan(r) == [r.quantum]


@pytest.mark.parametrize("target, m, k", [(q[0], q[1], q[2]) for q in QUANTA])
def test_quantum_invariants(target, m, k):
    r = modulation_quantum(C, target, AffineMap.parse(m), k)
    assert r.modulator(r.quantum) == r.quantum
    assert cadence_notes(target, k) <= r.quantum
    assert is_rigid(r.target_intersection)
    assert r.pivots == {d for d in Degree if target.triad(d) <= r.quantum}
    # removing any note breaks some condition
    for x in r.quantum:
        smaller = r.quantum - {x}
        assert not (
            r.modulator(smaller) == smaller
            and cadence_notes(target, k) <= smaller
            and is_rigid(smaller & target.pcs)
        )


def test_summary_intersections():
    rows = {
        "C->D": (D, "e6*-1", "k4", {1, 2, 4, 7, 9, 11}),
        "C->G": (G, "e11*-1", "k5", {0, 2, 6, 9, 11}),
        "C->Eb": (Eb, "e7*11", "k1", {0, 2, 5, 7, 8, 10}),
    }
    for name, (t, m, k, inter) in rows.items():
        assert modulation_quantum(C, t, AffineMap.parse(m), k).target_intersection == inter, name


def test_wrong_modulator_rejected():
    with pytest.raises(ValueError):
        modulation_quantum(C, D, AffineMap(0, 1), "k4")


def test_sweep_covers_every_pair():
    entries = modulation_sweep(C, G)
    assert len(entries) == len(find_modulators(C, G)) * len(CADENCES)
    for e in entries:
        if e.result is None:
            with pytest.raises(QuantumNotFound):
                modulation_quantum(C, G, e.modulator, e.cadence)
        else:
            assert e.result.modulator == e.modulator


def test_transpose_c_to_g_by_two():
    r = transpose_modulation(modulation_quantum(C, G, AffineMap(11, 11), "k5"), 2)
    assert (r.source.tonic, r.target.tonic) == (2, 9)
    assert r.pivots == degs("III", "V", "VII")
    assert {r.target.triad(d) for d in r.pivots} == {chord_pitches(n) for n in ("c#", "E", "g#°")}


def test_transpose_c_to_eb_by_nine():
    r = transpose_modulation(modulation_quantum(C, Eb, AffineMap(7, 11), "k1"), 9)
    assert (r.source.name, r.target.name) == ("A", "C")
    assert {r.target.triad(d) for d in r.cadence.degrees} == {chord_pitches("d"), chord_pitches("G")}


def test_transpose_by_zero_is_identity():
    r = modulation_quantum(C, D, AffineMap(6, 11), "k4")
    assert transpose_modulation(r, 0) == r


@settings(max_examples=12, deadline=None)
@given(st.sampled_from(QUANTA), st.integers(0, 11))
def test_transposition_commutes_with_solving(row, n):
    target, m, k = row[0], row[1], row[2]
    r = modulation_quantum(C, target, AffineMap.parse(m), k)
    moved = transpose_modulation(r, n)
    direct = modulation_quantum(moved.source, moved.target, moved.modulator, k)
    assert direct.quantum == moved.quantum
    assert direct.pivots == moved.pivots
    assert direct.alternatives == moved.alternatives
