import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from teamcheck import formula as fm
from teamcheck.bisim import EmptyTeamError, ktype, team_kbisim
from teamcheck.formula import parse, render
from teamcheck.hintikka import (
    PropertyClass, all_types, chi, count_types, express_property, formula_for_type,
    hintikka_team, hintikka_team_set, hintikka_world,
)
from teamcheck.kripke import KripkeModel, bits
from teamcheck.semantics import Evaluator, evaluate

import reference
from strategies import model_and_team, models


@pytest.fixture
def m0():
    return KripkeModel(["a", "b", "c"], [("a", "b"), ("a", "c"), ("b", "b")],
                       {"p": ["a", "b"], "q": ["c"]}, ["p", "q"])


@pytest.fixture
def separating():
    return KripkeModel(["w1", "w2"], [], {"p": ["w1"]}, ["p"])


def test_world_formula_examples(m0):
    assert hintikka_world(m0, "a", 0) == parse("p & !q")
    lone = KripkeModel(["x"], [], {"p": ["x"]}, ["p"])
    assert hintikka_world(lone, "x", 1) == parse("p & []bot")


def test_team_examples(separating):
    assert hintikka_team_set(separating, 0b11, 0) == (parse("p"), parse("!p"))
    assert hintikka_team_set(separating, 0b10, 0) == (parse("!p"),)
    assert hintikka_team(separating, 0b11, 0) == parse("(E p & E !p) & (p | !p)")
    assert hintikka_team(separating, 0b01, 0) == parse("E p & p")
    with pytest.raises(EmptyTeamError):
        hintikka_team(separating, 0, 0)


def test_empty_sets():
    assert chi([]) == fm.And(fm.TOP, fm.BOT)


def test_count_types():
    assert [count_types(1, k) for k in range(3)] == [2, 8, 512]
    assert count_types(2, 0) == 4
    assert [count_types(0, k) for k in range(4)] == [1, 2, 4, 16]
    with pytest.raises(OverflowError):
        count_types(1, 5)
    with pytest.raises(ValueError):
        count_types(-1, 0)


def test_all_types_enumerates_every_type():
    for k in range(3):
        types = list(all_types(["p"], k))
        assert len(types) == len(set(types)) == count_types(1, k)
        assert max(fm.modal_depth(formula_for_type(t)) for t in types) == k


def expected_depth(m, w, k):
    # a world without successors gets []bot, which stops the nesting early
    if k == 0:
        return 0
    return 1 + max((expected_depth(m, s, k - 1) for s in bits(m.succ[w])), default=0)


@settings(deadline=None)
@given(models(), st.integers(0, 3))
def test_self_satisfaction_and_depth(m, k):
    for w in range(len(m)):
        phi = hintikka_world(m, w, k)
        assert reference.pointed(m, w, phi)
        assert fm.modal_depth(phi) == expected_depth(m, w, k)


@settings(deadline=None)
@given(model_and_team(nonempty=True), st.integers(0, 2))
def test_team_formula(mt, k):
    m, team = mt
    forms = hintikka_team_set(m, team, k)
    assert len(forms) == len({ktype(m, w, k) for w in bits(team)})
    assert len(forms) <= count_types(len(m.variables), k)
    f = hintikka_team(m, team, k)
    assert fm.modal_depth(f) == max(expected_depth(m, w, k) for w in bits(team))
    assert evaluate(m, team, f)


@settings(deadline=None)
@given(models(), models(), st.integers(0, 2))
def test_canonical_rendering(m1, m2, k):
    for a in range(len(m1)):
        for b in range(len(m2)):
            same = ktype(m1, a, k) == ktype(m2, b, k)
            assert same == (render(hintikka_world(m1, a, k)) == render(hintikka_world(m2, b, k)))


@settings(max_examples=150, deadline=None)
@given(model_and_team(nonempty=True), model_and_team(nonempty=True), st.integers(0, 2))
def test_characterization(a, b, k):
    assert evaluate(*a, hintikka_team(*b, k)) == team_kbisim(*a, *b, k)


@settings(deadline=None)
@given(model_and_team(nonempty=True), st.integers(0, 2), st.data())
def test_split_disjunction_of_hintikka_sets(mt, k, data):
    m, team = mt
    pool = list(all_types(["p", "q"], min(k, 1)))
    chosen = data.draw(st.lists(st.sampled_from(pool), min_size=1, max_size=6, unique=True))
    forms = [formula_for_type(t) for t in chosen]
    ev = Evaluator(m)
    want = all(any(reference.pointed(m, w, f) for f in forms) for w in bits(team))
    assert ev.holds(team, fm.split_disj(forms)) == want


def test_property_expression(separating):
    prop = PropertyClass([(separating, 0b01)], 0)
    assert express_property(prop) == parse("E p & p")
    twin = KripkeModel(["u", "v"], [], {"p": ["u", "v"]}, ["p"])
    prop = PropertyClass([(separating, 0b01), (twin, 0b11)], 0)
    assert express_property(prop) == parse("E p & p")


def test_property_class_validation(separating):
    with pytest.raises(EmptyTeamError):
        PropertyClass([(separating, 0)], 0)
    other = KripkeModel(["x"], [], {"q": []}, ["q"])
    with pytest.raises(ValueError):
        PropertyClass([(separating, 1), (other, 1)], 0)
    with pytest.raises(ValueError):
        express_property(PropertyClass([], 0))
