import pytest
from hypothesis import given, settings, strategies as st

from algmusic.counterpoint import (
    SUCCESSOR_BOUND,
    CounterpointInterval,
    CounterpointWorld,
    DissonantIntervalError,
    PolarityVariant,
    admissible_successors,
    analyze_sequence,
    counterpoint_symmetries,
    little_theorem_report,
    parsimony_summary,
    transition_symmetries,
)
from algmusic.dual_numbers import DualSymmetry, dual_apply, image_mask
from algmusic.pitch_algebra import Dichotomy
import oracles

K = (0, 3, 4, 7, 8, 9)
CONSONANCES = [CounterpointInterval(x, y) for x in range(12) for y in K]
consonances = st.sampled_from(CONSONANCES)


def tuples(gs):
    return sorted((g.t, g.u, g.v, g.w) for g in gs)


def pairs(xs):
    return {(x.cantus, x.interval) for x in xs}


# frozen from the brute-force oracle
SYMMETRIES_AT_UNISON = [(6, 1, 6, 0), (6, 7, 6, 0), (11, 11, 0, 0), (11, 11, 4, 0), (11, 11, 8, 0)]
SUCCESSORS_OF_0_3 = {(x, y) for x in range(12) for y in ((0, 4, 7, 8) if x % 3 == 0 else K)}
COUNTS_BY_INTERVAL = {0: 70, 3: 64, 4: 54, 7: 60, 8: 70, 9: 64}


def test_interval_parsing_and_text():
    xi = CounterpointInterval.parse("0+e.7")
    assert (xi.cantus, xi.interval) == (0, 7)
    assert str(xi) == "0+e.7"
    assert xi.pretty() == "0+ε.7"
    assert CounterpointInterval.parse("10+ε.3") == CounterpointInterval(10, 3)
    assert CounterpointInterval(13, -1) == CounterpointInterval(1, 11)
    assert xi.shifted(5) == CounterpointInterval(5, 7)
    assert xi.as_dual().eps == 7
    assert not CounterpointInterval(0, 6).consonant


def test_unison_symmetries_frozen(world):
    gs = counterpoint_symmetries(world, CounterpointInterval(0, 0))
    assert tuples(gs) == SYMMETRIES_AT_UNISON
    assert {g.pretty() for g in gs} == {
        "e^{ε.6}∘(1+ε.6)",
        "e^{ε.6}∘(7+ε.6)",
        "e^{ε.11}∘11",
        "e^{ε.11}∘(11+ε.4)",
        "e^{ε.11}∘(11+ε.8)",
    }


@pytest.mark.parametrize("variant", ["global", "localized"])
def test_unison_symmetries_agree_across_variants_at_cantus_zero(variant):
    w = CounterpointWorld(polarity_variant=variant)
    assert tuples(counterpoint_symmetries(w, CounterpointInterval(0, 0))) == SYMMETRIES_AT_UNISON


def test_normalized_symmetries_match_oracle_everywhere(world):
    for xi in CONSONANCES:
        expect = oracles.normalized_symmetries((xi.cantus, xi.interval))
        assert tuples(counterpoint_symmetries(world, xi)) == expect, xi


@pytest.mark.parametrize("variant, localized", [("global", False), ("localized", True)])
def test_literal_variants_match_oracle(variant, localized):
    w = CounterpointWorld(polarity_variant=variant)
    for xi in CONSONANCES[::5]:
        expect = oracles.symmetries_at((xi.cantus, xi.interval), localized)
        assert tuples(counterpoint_symmetries(w, xi)) == expect, xi


def test_symmetry_conditions_hold(any_world):
    w = any_world
    for xi in CONSONANCES[::3]:
        local = xi.shifted(w.frame(xi))
        pi = w.polarity_at(local.cantus)
        for g in counterpoint_symmetries(w, xi):
            gk, gd = image_mask(g, w.consonances), image_mask(g, w.dissonances)
            assert gd >> local.index & 1
            assert image_mask(pi, gk) == gd


def test_returned_symmetries_have_equal_overlap(any_world):
    for xi in CONSONANCES[::4]:
        overlaps = {
            bin(image_mask(g, any_world.consonances) & any_world.consonances).count("1")
            for g in counterpoint_symmetries(any_world, xi)
        }
        assert len(overlaps) == 1


def test_successors_of_minor_third_frozen(world):
    succ = admissible_successors(world, CounterpointInterval(0, 3))
    assert len(succ) == 64
    assert pairs(succ) == SUCCESSORS_OF_0_3


def test_successors_of_unison(world):
    assert len(admissible_successors(world, CounterpointInterval(0, 0))) == 70


def test_successors_match_oracle(world):
    for xi in CONSONANCES:
        assert pairs(admissible_successors(world, xi)) == oracles.normalized_successors((xi.cantus, xi.interval))


def test_transitions_match_oracle_exhaustive(world):
    for xi in CONSONANCES:
        succ = admissible_successors(world, xi)
        gs = set(counterpoint_symmetries(world, xi))
        for eta in CONSONANCES:
            t = transition_symmetries(world, xi, eta)
            assert set(t.symmetries) <= gs
            assert t.allowed == (eta in succ)
            assert tuples(t.symmetries) == oracles.normalized_transition(
                (xi.cantus, xi.interval), (eta.cantus, eta.interval)
            )


def test_literal_transition_oracle_global():
    w = CounterpointWorld(polarity_variant="global")
    for xi in CONSONANCES[::7]:
        for eta in CONSONANCES[::5]:
            got = tuples(transition_symmetries(w, xi, eta).symmetries)
            assert got == oracles.literal_transition((xi.cantus, xi.interval), (eta.cantus, eta.interval))


@settings(max_examples=200)
@given(consonances, consonances)
def test_acting_symmetry_admits_successor(xi, eta):
    w = CounterpointWorld()
    t = transition_symmetries(w, xi, eta)
    k = w.consonances
    for g in t.acting:
        assert image_mask(g, k) >> eta.index & 1
        # the acting symmetry also moves ξ into a dissonance, as condition 1 requires
        assert not world_consonant(dual_apply(g.inverse(), xi.as_dual()))
    assert len(t.acting) == t.cardinality


def world_consonant(p):
    return p.eps in K


@settings(max_examples=60)
@given(consonances, st.integers(0, 11))
def test_normalized_is_cantus_invariant(xi, n):
    w = CounterpointWorld()
    assert counterpoint_symmetries(w, xi) == counterpoint_symmetries(w, xi.shifted(n))
    moved = {s.shifted(n) for s in admissible_successors(w, xi)}
    assert moved == admissible_successors(w, xi.shifted(n))


def test_dissonant_inputs_rejected(world):
    with pytest.raises(DissonantIntervalError):
        counterpoint_symmetries(world, CounterpointInterval(0, 6))
    with pytest.raises(DissonantIntervalError):
        transition_symmetries(world, CounterpointInterval(0, 0), CounterpointInterval(0, 1))
    seq = [CounterpointInterval(0, 0), CounterpointInterval(2, 9), CounterpointInterval(4, 2)]
    with pytest.raises(DissonantIntervalError) as err:
        analyze_sequence(world, seq)
    assert err.value.index == 2
    assert "4+e.2" in str(err.value) or "4+ε.2" in str(err.value)


def test_sequence_needs_two_intervals(world):
    with pytest.raises(ValueError):
        analyze_sequence(world, [CounterpointInterval(0, 0)])


def test_sequence_analysis_and_summary(world):
    seq = [CounterpointInterval.parse(s) for s in ("0+e.0", "0+e.3", "5+e.4", "7+e.0")]
    a = analyze_sequence(world, seq)
    assert len(a) == 3
    assert a.cardinalities == [t.cardinality for t in a]
    assert a.summary == parsimony_summary(a.transitions)
    assert a.summary["min"] == min(a.cardinalities)
    assert parsimony_summary([]) == {"min": 0, "max": 0, "mean": 0.0}


def test_successor_counts_by_interval(world):
    report = little_theorem_report(world)
    assert len(report.counts) == 72
    for xi, n in report.counts.items():
        assert n == COUNTS_BY_INTERVAL[xi.interval]
    assert report.minimum == 54 >= SUCCESSOR_BOUND
    assert report.holds and report.below_bound == []
    table = report.per_cantus()
    assert sorted(table) == list(range(12))
    assert table[5] == COUNTS_BY_INTERVAL


@pytest.mark.parametrize("variant", list(PolarityVariant))
def test_successor_bound_holds_in_every_variant(variant):
    assert little_theorem_report(CounterpointWorld(polarity_variant=variant)).minimum >= SUCCESSOR_BOUND


def test_world_rejects_non_strong_dichotomy():
    with pytest.raises(ValueError):
        CounterpointWorld(dichotomy=Dichotomy({0, 1, 2, 3, 4, 5}))


def test_world_rejects_wrong_polarity():
    with pytest.raises(ValueError):
        CounterpointWorld(induced_polarity=DualSymmetry(0, 1, 0))


def test_explicit_polarity_for_non_strong_dichotomy():
    w = CounterpointWorld(dichotomy=Dichotomy({0, 1, 2, 3, 4, 5}), induced_polarity=DualSymmetry(6, 1, 0))
    assert counterpoint_symmetries(w, CounterpointInterval(0, 0))


def _global_oracle_count(xi):
    out = set()
    for g in oracles.symmetries_at(xi):
        out |= oracles.image(g, oracles.K_EPS) & oracles.K_EPS
    return len(out)


@pytest.mark.parametrize("variant", ["normalized", "localized"])
def test_count_table_is_cantus_invariant(variant):
    table = little_theorem_report(CounterpointWorld(polarity_variant=variant)).per_cantus()
    assert all(row == COUNTS_BY_INTERVAL for row in table.values())


def test_global_count_table_has_period_three():
    table = little_theorem_report(CounterpointWorld(polarity_variant="global")).per_cantus()
    for x in range(12):
        assert table[x] == table[x % 3]
        for y in K:
            assert table[x][y] == _global_oracle_count((x, y))
    assert table[0] == COUNTS_BY_INTERVAL
    assert table[1] != table[0]
    assert table[1] == {0: 70, 3: 56, 4: 70, 7: 60, 8: 70, 9: 68}
