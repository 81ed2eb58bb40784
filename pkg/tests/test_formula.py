import warnings

import pytest
from hypothesis import given, settings

from teamcheck import formula as fm
from teamcheck.formula import (
    Box, ClassicalNeg, Dep, Diamond, Exists, Fragment, Incl, NegAtom, PropAtom, SplitOr,
    FormulaError, ParseError, desugar, dual, fragment_of, modal_depth, parse, render,
)

from strategies import any_formulas, ml_formulas, mtl_formulas

p, q = PropAtom("p"), PropAtom("q")


def test_parse_examples():
    assert parse("p & !q") == fm.And(p, NegAtom("q"))
    assert parse("~(<>p | []q)") == ClassicalNeg(SplitOr(Diamond(p), Box(q)))
    assert parse("dep(p, q)") == Dep([p, q])


def test_render_examples():
    assert render(Dep([p, q])) == "dep(p, q)"
    assert render(Exists(p)) == "E p"
    assert render(Incl([fm.TOP], [p])) == "inc(top ; p)"


@pytest.mark.parametrize("text, expected", [
    ("p & q | r", "(p & q) | r"),
    ("p | q otimes r", "(p | q) otimes r"),
    ("p lor q -> r", "(p lor q) -> r"),
    ("p -> q -> r", "p -> (q -> r)"),
    ("p & q & r", "p & (q & r)"),
    ("~p & q", "(~p) & q"),
    ("<>p & []q", "(<>p) & ([]q)"),
    ("E p & q", "(E p) & q"),
])
def test_precedence(text, expected):
    assert parse(text) == parse(expected)


def test_render_parenthesizes_left_nesting():
    f = fm.And(fm.And(p, q), p)
    assert render(f) == "(p & q) & p"
    assert parse(render(f)) == f


@settings(max_examples=300)
@given(any_formulas())
def test_round_trip(f):
    assert parse(render(f)) == f


@pytest.mark.parametrize("text, column", [("p &", 4), ("p & )", 5), ("dep()", 1)])
def test_syntax_errors_carry_position(text, column):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.line == 1
    assert info.value.column == column


def test_atom_argument_must_be_ml():
    with pytest.raises(FormulaError):
        parse("dep(~p, q)")
    with pytest.raises(FormulaError):
        parse("E E p")
    with pytest.raises(FormulaError):
        parse("inc(p, q ; p)")


def test_registry_checks_arity():
    from teamcheck.fo import AtomRegistry
    reg = AtomRegistry()
    reg.register("nonempty", 1, "exists x. A1(x)")
    assert parse("atom nonempty(p)", reg) == fm.GenAtom("nonempty", [p])
    with pytest.raises(ParseError):
        parse("atom nonempty(p, q)", reg)
    with pytest.raises(ParseError):
        parse("atom other(p)", reg)


@pytest.mark.parametrize("text, depth", [
    ("p", 0), ("<>[]p & q", 2), ("dep(<>p, q)", 1), ("E []<>p lor <>q", 2), ("inc(p ; [][]q)", 2),
])
def test_modal_depth(text, depth):
    assert modal_depth(parse(text)) == depth


@pytest.mark.parametrize("text, expected", [
    ("p", "!p"),
    ("<>(p & q)", "[](!p | !q)"),
    ("[]p", "<>!p"),
    ("top", "bot"),
])
def test_dual_examples(text, expected):
    assert dual(parse(text)) == parse(expected)


@given(ml_formulas())
def test_dual_is_an_involution(f):
    assert dual(dual(f)) == f


def test_dual_rejects_team_connectives():
    with pytest.raises(FormulaError):
        dual(parse("~p"))


@pytest.mark.parametrize("text, expected", [
    ("E p", "~!p"),
    ("dep(p)", "~(~p & ~!p)"),
    ("p lor q", "~(~p & ~q)"),
    ("p otimes q", "~(~p | ~q)"),
    ("p -> q", "~(p & ~q | ~bot)"),
    ("dep(p, q)", "~(~(~p & ~!p) & ~q & ~!q | ~bot)"),
])
def test_desugar_examples(text, expected):
    assert desugar(parse(text)) == parse(expected)


_CORE = (fm.Top, fm.Bot, PropAtom, NegAtom, ClassicalNeg, fm.And, SplitOr, Diamond, Box)


@given(mtl_formulas())
def test_desugar_leaves_core_connectives(f):
    g = desugar(f)
    assert all(isinstance(s, _CORE) for s in fm.subformulas(g))
    assert modal_depth(g) == modal_depth(f)


def test_desugar_flags_atoms_without_rewrite():
    f = parse("indep(p ; ; q) & E p")
    with pytest.warns(fm.DesugarWarning):
        g = desugar(f)
    assert g.left == f.left
    with pytest.raises(FormulaError):
        desugar(f, strict=True)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        desugar(parse("dep(p, q)"))


@pytest.mark.parametrize("text, frag", [
    ("<>p | q", Fragment.ML),
    ("p lor <>q", Fragment.MLc),
    ("dep(p, q)", Fragment.MDL),
    ("dep(<>p, q)", Fragment.EMDL),
    ("indep(p ; ; q)", Fragment.EMIL),
    ("indep(p ; ; q) lor p", Fragment.EMILc),
    ("inc(p ; q)", Fragment.EMINCL),
    ("inc(p ; q) lor q", Fragment.EMINCLc),
    ("atom D(p)", Fragment.MLFO),
    ("~p", Fragment.MTL),
    ("E p & dep(p)", Fragment.MTL),
    ("~p & inc(p ; q)", Fragment.MTLplus),
])
def test_fragment_of(text, frag):
    assert fragment_of(parse(text)) is frag


def test_fragment_with_identity_atom_is_not_mlfo():
    from teamcheck.fo import AtomRegistry, IdentityWarning
    reg = AtomRegistry()
    with pytest.warns(IdentityWarning):
        reg.register("two", 1, "exists x. exists y. A1(x) & A1(y) & !(x = y)")
    assert fragment_of(parse("atom two(p)"), reg) is Fragment.MTLplus


def test_ml_is_included_everywhere():
    assert all(frag.includes(Fragment.ML) for frag in Fragment)
    assert Fragment.MTLplus.includes(Fragment.MTL)
    assert not Fragment.EMIL.includes(Fragment.EMINCL)


def test_nary_helpers():
    assert fm.conj([]) == fm.TOP
    assert fm.split_disj([]) == fm.BOT
    assert fm.conj([p]) == p
    assert fm.conj([p, q, p]) == fm.And(p, fm.And(q, p))
    assert fm.classical_disj([p, q]) == fm.ClassicalOr(p, q)
