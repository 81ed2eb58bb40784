import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from teamcheck import formula as fm
from teamcheck.formula import parse
from teamcheck.fo import AtomError, AtomRegistry
from teamcheck.kripke import KripkeModel, bits, subsets
from teamcheck.semantics import (
    EvalConfig, EvalError, Evaluator, TeamTooLargeError, UndeclaredVariableError,
    dep_holds, eval_pointed, evaluate, gen_atom_holds, incl_holds, indep_holds,
)

import reference
from strategies import ml_formulas, model_and_team, mtl_formulas

CONFIGS = [
    EvalConfig(strategy=s, engine=e, memo=memo)
    for s in ("general", "flat") for e in ("team", "table") for memo in (True, False)
]


@pytest.fixture
def m0():
    return KripkeModel(["a", "b", "c"], [("a", "b"), ("a", "c"), ("b", "b")],
                       {"p": ["a", "b"], "q": ["c"]}, ["p", "q"])


@pytest.fixture
def grid():
    """Worlds wxy carry p=x and q=y; no edges."""
    worlds = ["w00", "w01", "w10", "w11"]
    return KripkeModel(worlds, [], {"p": ["w10", "w11"], "q": ["w01", "w11"]}, ["p", "q"])


@pytest.fixture
def separating():
    return KripkeModel(["w1", "w2"], [], {"p": ["w1"]}, ["p"])


def holds(m, names, text, **kw):
    return evaluate(m, m.team(names), parse(text), EvalConfig(**kw) if kw else None)


def test_clause_examples(m0, separating):
    assert holds(m0, ["a", "b"], "p")
    assert holds(separating, ["w1", "w2"], "E p")
    assert not holds(separating, ["w2"], "E p")
    assert holds(m0, ["a"], "<>q")
    assert not holds(m0, ["a"], "[]q")
    assert holds(m0, ["b", "c"], "[]p")


def test_pointed_examples(m0):
    assert eval_pointed(m0, "a", parse("<>p"))
    assert eval_pointed(m0, "c", parse("[]bot"))
    assert not eval_pointed(m0, "b", parse("q"))
    with pytest.raises(EvalError):
        eval_pointed(m0, "a", parse("E p"))


@pytest.mark.parametrize("text", [
    "dep(p, q)", "dep(<>p, q, []q)", "indep(p ; q ; <>q)", "inc(p, q ; q, p)",
    "dep(p) & inc(p ; q)", "indep(p ; ; q) | dep(q)", "<>dep(p, q) & []inc(p ; <>q)",
])
def test_empty_team_property(m0, text):
    assert holds(m0, [], text)


def test_empty_team_follows_the_letter(m0):
    # diamond on the empty team picks the empty successor team
    assert holds(m0, [], "<>p")
    assert holds(m0, [], "<>bot")
    assert not holds(m0, [], "~p")
    assert not holds(m0, [], "E top")


def test_dependence_examples(grid):
    p, q = fm.PropAtom("p"), fm.PropAtom("q")
    assert dep_holds(grid, grid.team(["w00", "w11"]), [p, q])
    assert not dep_holds(grid, grid.team(["w00", "w01"]), [p, q])
    for w in range(4):
        assert dep_holds(grid, 1 << w, [q])


def test_independence_examples(grid):
    p, q = fm.PropAtom("p"), fm.PropAtom("q")
    assert indep_holds(grid, grid.full, [p], [], [q])
    assert not indep_holds(grid, grid.team(["w00", "w11"]), [p], [], [q])
    for w in range(4):
        assert indep_holds(grid, 1 << w, [p, q], [], [q])


@pytest.mark.parametrize("names", [["w00", "w11"], ["w00", "w01", "w10"], ["w01", "w10"]])
def test_independence_reads_lists_as_sets(grid, names):
    assert holds(grid, names, "indep(p, p ; ; q)") == holds(grid, names, "indep(p ; ; q)")
    assert holds(grid, names, "indep(q, p ; ; p)") == holds(grid, names, "indep(p, q ; ; p)")


def test_inclusion_examples(grid):
    p, q = fm.PropAtom("p"), fm.PropAtom("q")
    assert incl_holds(grid, grid.team(["w10", "w01"]), [p], [q])
    assert not incl_holds(grid, grid.team(["w10"]), [p, q], [q, p])
    assert incl_holds(grid, 0, [p, q], [q, p])
    with pytest.raises(EvalError):
        incl_holds(grid, 1, [p], [p, q])


def test_generalized_atom_examples(grid):
    reg = AtomRegistry()
    reg.register("nonempty", 1, "exists x. A1(x)")
    reg.register("all", 1, "forall x. A1(x)")
    p = fm.PropAtom("p")
    assert gen_atom_holds(grid, grid.team(["w11"]), "nonempty", [p], reg)
    assert not gen_atom_holds(grid, grid.team(["w00"]), "nonempty", [p], reg)
    assert gen_atom_holds(grid, 0, "all", [p], reg)
    with pytest.raises(AtomError):
        gen_atom_holds(grid, 1, "nonempty", [p, p], reg)
    with pytest.raises(AtomError):
        evaluate(grid, 1, parse("atom missing(p)"), EvalConfig(registry=reg))


def test_overlapping_split_is_needed(separating):
    # both halves must be the whole team: E p fails on the empty half of any disjoint split
    f = parse("E p | E p")
    team = separating.team(["w1"])
    assert evaluate(separating, team, f)
    disjoint = any(
        reference.sat(separating, a, f.left) and reference.sat(separating, team & ~a, f.right)
        for a in subsets(team)
    )
    assert not disjoint


@settings(max_examples=150, deadline=None)
@given(model_and_team(), mtl_formulas())
def test_matches_reference(mt, f):
    m, team = mt
    want = reference.sat(m, team, f)
    for cfg in CONFIGS:
        assert Evaluator(m, cfg).holds(team, f) == want, cfg


@settings(max_examples=60, deadline=None)
@given(model_and_team(), st.sampled_from([
    "indep(p ; ; q)", "indep(p, <>q ; q ; p)", "inc(p ; q)", "inc(p, <>p ; q, top)",
    "indep(p ; ; q) lor inc(q ; p)", "~inc(p ; <>q) | dep(q)",
]))
def test_atoms_match_reference(mt, text):
    m, team = mt
    f = parse(text)
    want = reference.sat(m, team, f)
    for cfg in CONFIGS:
        assert Evaluator(m, cfg).holds(team, f) == want


@settings(deadline=None)
@given(model_and_team(), ml_formulas())
def test_flatness(mt, f):
    m, team = mt
    ev = Evaluator(m, EvalConfig(strategy="general"))
    assert ev.holds(team, f) == all(ev.holds(1 << w, f) for w in bits(team))
    assert ev.holds(team, f) == all(reference.pointed(m, w, f) for w in bits(team))


@settings(deadline=None)
@given(model_and_team(nonempty=True), ml_formulas(max_leaves=4))
def test_existential_characterization(mt, f):
    m, team = mt
    for strategy in ("general", "flat"):
        got = evaluate(m, team, fm.Exists(f), EvalConfig(strategy=strategy))
        assert got == any(eval_pointed(m, w, f) for w in bits(team))


@settings(deadline=None)
@given(model_and_team(), mtl_formulas(max_leaves=3), mtl_formulas(max_leaves=3))
def test_implication_quantifies_over_subteams(mt, a, b):
    m, team = mt
    ev = Evaluator(m, EvalConfig(strategy="general", engine="team"))
    want = all(not ev.holds(s, a) or ev.holds(s, b) for s in subsets(team))
    assert evaluate(m, team, fm.IntImpl(a, b)) == want


@settings(deadline=None)
@given(model_and_team(nonempty=True), mtl_formulas(max_leaves=4))
def test_desugaring_preserves_truth(mt, f):
    m, team = mt
    assert evaluate(m, team, fm.desugar(f)) == evaluate(m, team, f)


def test_implication_rewrite_differs_on_empty_team():
    m = KripkeModel(["w0"], [], {"p": []}, ["p"])
    f = parse("top -> E top")
    assert not evaluate(m, 0, f)
    assert evaluate(m, 0, fm.desugar(f))
    # when the empty team satisfies the consequent both sides are true
    g = parse("E p -> p")
    assert evaluate(m, 0, g) == evaluate(m, 0, fm.desugar(g))


def test_team_table_bits(m0):
    ev = Evaluator(m0)
    table = ev.team_table(parse("E p"))
    assert [t for t in range(8) if table >> t & 1] == [t for t in range(8) if t & 0b011]


def test_undeclared_variable(m0):
    with pytest.raises(UndeclaredVariableError):
        evaluate(m0, 1, parse("r"))


def test_team_outside_model(m0):
    with pytest.raises(EvalError):
        evaluate(m0, 0b1000, parse("p"))


def test_cap_applies_to_split_search():
    big = KripkeModel([f"w{i}" for i in range(8)], [], {"p": []}, ["p"])
    cfg = EvalConfig(max_team=3, strategy="general")
    with pytest.raises(TeamTooLargeError):
        evaluate(big, big.full, parse("~p | ~p"), cfg)
    # flat strategy needs no split search for modal subformulas
    assert evaluate(big, big.full, parse("!p | !p"), EvalConfig(max_team=3))


def test_cap_from_environment(monkeypatch):
    monkeypatch.setenv("TEAMCHECK_MAX_TEAM", "5")
    assert EvalConfig().max_team == 5
    monkeypatch.setenv("TEAMCHECK_MAX_TEAM", "many")
    with pytest.raises(EvalError):
        EvalConfig()
    monkeypatch.delenv("TEAMCHECK_MAX_TEAM")
    assert EvalConfig().max_team == 16


def test_config_validation():
    with pytest.raises(EvalError):
        EvalConfig(strategy="fast")
    with pytest.raises(EvalError):
        EvalConfig(engine="gpu")
    with pytest.raises(EvalError):
        EvalConfig(max_team=0)


def test_mutated_diamond_drops_forward_condition(m0):
    # {a, c}: c has no successor, so the forward condition fails
    f = parse("<>p")
    assert not evaluate(m0, m0.team(["a", "c"]), f)
    for engine in ("team", "table"):
        cfg = EvalConfig(mutate_diamond=True, engine=engine, strategy="general")
        assert evaluate(m0, m0.team(["a", "c"]), f, cfg)
