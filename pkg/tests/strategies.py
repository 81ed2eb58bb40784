"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from teamcheck import formula as fm
from teamcheck.kripke import KripkeModel

VARS = ("p", "q")


def literals(variables=VARS):
    return st.one_of(
        st.sampled_from([fm.TOP, fm.BOT]),
        st.sampled_from(variables).map(fm.PropAtom),
        st.sampled_from(variables).map(fm.NegAtom),
    )


def ml_formulas(variables=VARS, max_leaves=8):
    def extend(sub):
        return st.one_of(
            st.builds(fm.And, sub, sub),
            st.builds(fm.SplitOr, sub, sub),
            sub.map(fm.Diamond),
            sub.map(fm.Box),
        )

    return st.recursive(literals(variables), extend, max_leaves=max_leaves)


def mtl_formulas(variables=VARS, max_leaves=6):
    """Formulas with every connective and the dependence atom; atom arguments stay ML."""
    ml = ml_formulas(variables, 3)
    base = st.one_of(
        literals(variables),
        ml.map(fm.Exists),
        st.lists(ml, min_size=1, max_size=3).map(fm.Dep),
    )

    def extend(sub):
        return st.one_of(
            st.builds(fm.And, sub, sub),
            st.builds(fm.SplitOr, sub, sub),
            st.builds(fm.ClassicalOr, sub, sub),
            st.builds(fm.Tensor, sub, sub),
            st.builds(fm.IntImpl, sub, sub),
            sub.map(fm.ClassicalNeg),
            sub.map(fm.Diamond),
            sub.map(fm.Box),
        )

    return st.recursive(base, extend, max_leaves=max_leaves)


def any_formulas(variables=VARS):
    """Everything the parser accepts, including independence, inclusion and named atoms."""
    ml = ml_formulas(variables, 3)
    args = st.lists(ml, min_size=0, max_size=2)
    atoms = st.one_of(
        st.builds(fm.Indep, st.lists(ml, min_size=1, max_size=2), args,
                  st.lists(ml, min_size=1, max_size=2)),
        st.integers(1, 3).flatmap(
            lambda n: st.builds(fm.Incl, st.lists(ml, min_size=n, max_size=n),
                                st.lists(ml, min_size=n, max_size=n))
        ),
        st.builds(fm.GenAtom, st.sampled_from(["D", "nonempty", "x_2"]), args),
    )
    return st.one_of(mtl_formulas(variables), atoms, st.builds(fm.And, atoms, mtl_formulas(variables)))


@st.composite
def models(draw, variables=VARS, max_worlds=3):
    n = draw(st.integers(1, max_worlds))
    worlds = [f"w{i}" for i in range(n)]
    pairs = [(a, b) for a in worlds for b in worlds]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    val = {v: draw(st.lists(st.sampled_from(worlds), unique=True)) for v in variables}
    return KripkeModel(worlds, edges, val, list(variables))


@st.composite
def model_and_team(draw, variables=VARS, max_worlds=3, nonempty=False):
    m = draw(models(variables, max_worlds))
    team = draw(st.integers(1 if nonempty else 0, m.full))
    return m, team
