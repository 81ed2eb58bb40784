"""Team semantics for every supported fragment.

:class:`Evaluator` binds one model and memoizes verdicts per
``(subformula node, team)``.  Two strategies are available and must agree:

``general``
    follows the satisfaction clauses literally, including split search for
    ``|`` on plain modal subformulas.
``flat`` (default)
    evaluates maximal plain modal subformulas pointwise, which is sound by
    flatness and avoids split search on them.

Independently of the strategy, small models use the ``table`` engine: each
node is evaluated once for all ``2^|W|`` teams and stored as a bitmask whose
bit ``t`` says whether team ``t`` satisfies it.  Larger models use the
``team`` engine, which recurses on one team at a time.
"""

from __future__ import annotations

import functools
import os
from dataclasses import dataclass, field
from typing import Sequence

from . import formula as fm
from .fo import DEFAULT_REGISTRY, AtomError, AtomRegistry
from .kripke import KripkeModel, Team, bits, popcount, subsets

STRATEGIES = ("general", "flat")
ENGINES = ("auto", "team", "table")

# the table engine is used up to this many worlds under engine="auto"
TABLE_WORLDS = 6
PREIMAGE_TABLE_WORLDS = 12


class EvalError(ValueError):
    pass


class UndeclaredVariableError(EvalError):
    pass


class TeamTooLargeError(EvalError):
    """Split or subteam enumeration would exceed the configured team-size cap."""


def _default_cap() -> int:
    raw = os.environ.get("TEAMCHECK_MAX_TEAM")
    if raw is None:
        return 16
    try:
        return int(raw)
    except ValueError:
        raise EvalError(f"TEAMCHECK_MAX_TEAM must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class EvalConfig:
    strategy: str = "flat"
    memo: bool = True
    max_team: int = field(default_factory=_default_cap)
    registry: AtomRegistry | None = None
    native_atoms: bool = True
    engine: str = "auto"
    # mutation harness: drop the forward condition of the diamond clause
    mutate_diamond: bool = False

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise EvalError(f"unknown strategy {self.strategy!r}")
        if self.engine not in ENGINES:
            raise EvalError(f"unknown engine {self.engine!r}")
        if self.max_team < 1:
            raise EvalError("max_team must be positive")


class Evaluator:
    def __init__(self, model: KripkeModel, config: EvalConfig | None = None) -> None:
        self.model = model
        self.config = config or EvalConfig()
        self.registry = self.config.registry or DEFAULT_REGISTRY
        self._flat = self.config.strategy == "flat"
        n = len(model)
        engine = self.config.engine
        if engine == "auto":
            engine = "table" if n <= min(TABLE_WORLDS, self.config.max_team) else "team"
        elif engine == "table" and n > self.config.max_team:
            raise TeamTooLargeError(
                f"table engine on {n} worlds exceeds cap {self.config.max_team}"
            )
        self.engine = engine
        # caches keyed by id(node); each value holds the node so its id is never reused
        self._nodes: dict[int, list] = {}  # [node, team verdicts, use pointwise?]
        self._pw: dict[int, tuple] = {}
        self._tabs: dict[int, tuple] = {}
        self._pw_rules = {
            fm.PropAtom: self._pw_prop,
            fm.NegAtom: self._pw_negatom,
            fm.And: self._pw_and,
            fm.SplitOr: self._pw_or,
            fm.Diamond: self._pw_diamond,
            fm.Box: self._pw_box,
            fm.Top: lambda f: model.full,
            fm.Bot: lambda f: 0,
        }
        pred = model.pred
        self._pre = None
        if n <= PREIMAGE_TABLE_WORLDS:
            # preimage of every world set: worlds with a successor inside it
            pre = [0] * (1 << n)
            for mask in range(1, 1 << n):
                low = mask & -mask
                pre[mask] = pre[mask ^ low] | pred[low.bit_length() - 1]
            self._pre = pre
        self._checked: dict[int, fm.Formula] = {}
        self._duals: dict[int, fm.Formula] = {}
        self._varset = frozenset(model.variables)
        succ = model.succ
        self._image = lambda team: _image(succ, team)
        if engine == "table":
            self._nteams = 1 << n
            # modal steps depend only on the table of the argument
            self._box_tables: dict[int, int] = {}
            self._diamond_tables: dict[int, int] = {}
            self._all = (1 << self._nteams) - 1
            self._images = [_image(succ, t) for t in range(self._nteams)]
            # hit[t'] = worlds with at least one successor in t'
            self._hit = [
                sum(1 << w for w in range(n) if succ[w] & t) for t in range(self._nteams)
            ]

    # -- public API -------------------------------------------------------

    def holds(self, team: Team, f: fm.Formula) -> bool:
        if team < 0 or team & ~self.model.full:
            raise EvalError("team contains worlds outside the model")
        self._check_vars(f)
        if not self.config.memo:
            self._nodes.clear()
            self._tabs.clear()
        if self.engine == "table":
            return bool(self._table(f) >> team & 1)
        return self._eval(f, team)

    def team_table(self, f: fm.Formula) -> int:
        """Bitmask over all teams of the model: bit ``t`` is set iff team ``t`` satisfies ``f``."""
        self._check_vars(f)
        if self.engine == "table":
            return self._table(f)
        out = 0
        for t in range(1 << len(self.model)):
            if self._eval(f, t):
                out |= 1 << t
        return out

    def truth_set(self, f: fm.Formula) -> int:
        """Worlds where an ML formula holds under pointed semantics, as a bitmask."""
        if not f.is_ml():
            raise EvalError(f"pointed evaluation needs a modal logic formula: {fm.render(f)!r}")
        self._check_vars(f)
        return self._pointwise(f)

    def pointed(self, w: str | int, f: fm.Formula) -> bool:
        return bool(self.truth_set(f) >> self.model.world(w) & 1)

    # -- shared -------------------------------------------------------------

    def _check_vars(self, f: fm.Formula) -> None:
        if id(f) in self._checked:
            return
        missing = f.variables() - self._varset
        if missing:
            raise UndeclaredVariableError(
                f"formula uses undeclared variables {sorted(missing)}"
            )
        self._checked[id(f)] = f

    def _node(self, f: fm.Formula) -> list:
        entry = self._nodes.get(id(f))
        if entry is None:
            entry = self._nodes[id(f)] = [f, {}, self._flat and f.is_ml()]
        return entry

    def _pointwise(self, f: fm.Formula) -> int:
        hit = self._pw.get(id(f))
        if hit is not None:
            return hit[1]
        out = self._pw_rules[type(f)](f)
        self._pw[id(f)] = (f, out)
        return out

    def _pw_prop(self, f):
        return self.model.val[f.name]

    def _pw_negatom(self, f):
        return self.model.full & ~self.model.val[f.name]

    def _pw_and(self, f):
        return self._pointwise(f.left) & self._pointwise(f.right)

    def _pw_or(self, f):
        return self._pointwise(f.left) | self._pointwise(f.right)

    def _pw_diamond(self, f):
        if self.config.mutate_diamond:
            return self.model.full
        return self._preimage(self._pointwise(f.sub))

    def _pw_box(self, f):
        full = self.model.full
        return full & ~self._preimage(full & ~self._pointwise(f.sub))

    def _preimage(self, mask: int) -> int:
        """Worlds with a successor in ``mask``."""
        if self._pre is not None:
            return self._pre[mask]
        pred = self.model.pred
        out = 0
        for w in bits(mask):
            out |= pred[w]
        return out

    def _dual_of(self, f: fm.Exists) -> fm.Formula:
        d = self._duals.get(id(f))
        if d is None:
            d = self._duals[id(f)] = fm.dual(f.sub)
        return d

    def _cap(self, team: Team, what: str) -> None:
        if popcount(team) > self.config.max_team:
            raise TeamTooLargeError(
                f"{what} on a team of {popcount(team)} worlds exceeds cap {self.config.max_team}"
            )

    def _columns(self, args: Sequence[fm.Formula]) -> list[int]:
        """Per-argument world extents; ``general`` reads them off singleton teams."""
        if self._flat:
            return [self._pointwise(a) for a in args]
        out = []
        for a in args:
            if self.engine == "table":
                tab = self._table(a)
                out.append(sum(1 << w for w in range(len(self.model)) if tab >> (1 << w) & 1))
            else:
                out.append(sum(1 << w for w in range(len(self.model)) if self._eval(a, 1 << w)))
        return out

    def _atom(self, f: fm.Formula, team: Team) -> bool:
        t = type(f)
        if t is fm.Dep:
            return dep_values(team, self._columns(f.args))
        if t is fm.Indep:
            return indep_values(
                team,
                self._columns(_dedupe(f.p)),
                self._columns(_dedupe(f.r)),
                self._columns(_dedupe(f.q)),
            )
        if t is fm.Incl:
            return incl_values(team, self._columns(f.lhs), self._columns(f.rhs))
        atom = self.registry.get(f.name)
        if atom is None:
            raise AtomError(f"unregistered atom {f.name!r}")
        if atom.arity != len(f.args):
            raise AtomError(f"atom {f.name!r} takes {atom.arity} arguments, got {len(f.args)}")
        return atom.holds_masks(team, self._columns(f.args), self.config.native_atoms)

    # -- team engine ----------------------------------------------------------

    def _eval(self, f: fm.Formula, team: Team) -> bool:
        entry = self._nodes.get(id(f)) or self._node(f)
        verdicts = entry[1]
        hit = verdicts.get(team)
        if hit is not None:
            return hit
        if entry[2]:
            out = not team & ~self._pointwise(f)
        else:
            out = self._clause(f, team)
        if self.config.memo:
            verdicts[team] = out
        return out

    def _clause(self, f: fm.Formula, team: Team) -> bool:
        t = type(f)
        m = self.model
        ev = self._eval
        if t is fm.PropAtom:
            return not team & ~m.val[f.name]
        if t is fm.NegAtom:
            return not team & m.val[f.name]
        if t is fm.And:
            return ev(f.left, team) and ev(f.right, team)
        if t is fm.ClassicalNeg:
            return not ev(f.sub, team)
        if t is fm.ClassicalOr:
            return ev(f.left, team) or ev(f.right, team)
        if t is fm.SplitOr:
            return self._split(f.left, f.right, team)
        if t is fm.Tensor:
            return not self._split(f.left, f.right, team, negate=True)
        if t is fm.Box:
            return ev(f.sub, self._image(team))
        if t is fm.Diamond:
            return self._diamond(f.sub, team)
        if t is fm.Exists:
            if self._flat:
                return bool(team & self._pointwise(f.sub))
            return not ev(self._dual_of(f), team)
        if t is fm.IntImpl:
            self._cap(team, "implication")
            return all(not ev(f.left, s) or ev(f.right, s) for s in subsets(team))
        if t is fm.Top:
            return True
        if t is fm.Bot:
            return team == 0
        if t in (fm.Dep, fm.Indep, fm.Incl, fm.GenAtom):
            return self._atom(f, team)
        raise AssertionError(t)

    def _split(self, left, right, team: Team, negate: bool = False) -> bool:
        """Is there a cover ``team = t1 | t2`` with t1 |= left and t2 |= right?

        With ``negate`` both parts must instead fail their formula.
        """
        self._cap(team, "split")
        ev = self._eval
        for t1 in subsets(team):
            if ev(left, t1) == negate:
                continue
            rest = team & ~t1
            for extra in subsets(t1):
                if ev(right, rest | extra) != negate:
                    return True
        return False

    def _diamond(self, sub: fm.Formula, team: Team) -> bool:
        img = self._image(team)
        self._cap(img, "diamond")
        succ = self.model.succ
        members = list(bits(team))
        forward = not self.config.mutate_diamond
        for cand in subsets(img):
            if forward and any(not succ[w] & cand for w in members):
                continue
            if self._eval(sub, cand):
                return True
        return False

    # -- table engine ---------------------------------------------------------

    def _table(self, f: fm.Formula) -> int:
        hit = self._tabs.get(id(f))
        if hit is not None:
            return hit[1]
        if self._flat and f.is_ml():
            out = _downset(self._pointwise(f))
        else:
            out = self._table_clause(f)
        if self.config.memo:
            self._tabs[id(f)] = (f, out)
        return out

    def _table_clause(self, f: fm.Formula) -> int:
        t = type(f)
        m = self.model
        tab = self._table
        full = self._all
        if t is fm.PropAtom:
            return _downset(m.val[f.name])
        if t is fm.NegAtom:
            return _downset(m.full & ~m.val[f.name])
        if t is fm.And:
            return tab(f.left) & tab(f.right)
        if t is fm.ClassicalNeg:
            return full & ~tab(f.sub)
        if t is fm.ClassicalOr:
            return tab(f.left) | tab(f.right)
        if t is fm.SplitOr:
            return _unions(tab(f.left), tab(f.right))
        if t is fm.Tensor:
            return full & ~_unions(full & ~tab(f.left), full & ~tab(f.right))
        if t is fm.Box:
            sub = tab(f.sub)
            out = self._box_tables.get(sub)
            if out is None:
                out = sum(1 << s for s, img in enumerate(self._images) if sub >> img & 1)
                self._box_tables[sub] = out
            return out
        if t is fm.Diamond:
            sub = tab(f.sub)
            out = self._diamond_tables.get(sub)
            if out is None:
                out = self._diamond_tables[sub] = self._table_diamond(sub)
            return out
        if t is fm.Exists:
            if self._flat:
                return full & ~_downset(m.full & ~self._pointwise(f.sub))
            return full & ~tab(self._dual_of(f))
        if t is fm.IntImpl:
            bad = tab(f.left) & ~tab(f.right)
            out = full
            for b in bits(bad):
                # every superset of a bad subteam fails
                for s in range(self._nteams):
                    if s & b == b:
                        out &= ~(1 << s)
            return out
        if t is fm.Top:
            return full
        if t is fm.Bot:
            return 1
        if t in (fm.Dep, fm.Indep, fm.Incl, fm.GenAtom):
            return sum(1 << s for s in range(self._nteams) if self._atom(f, s))
        raise AssertionError(t)

    def _table_diamond(self, sub: int) -> int:
        images, hit = self._images, self._hit
        witnesses = list(bits(sub))
        forward = not self.config.mutate_diamond
        out = 0
        for s in range(self._nteams):
            img = images[s]
            for c in witnesses:
                # c must lie in the image; forward: every member of s sees c
                if c & ~img:
                    continue
                if forward and s & ~hit[c]:
                    continue
                out |= 1 << s
                break
        return out


@functools.lru_cache(maxsize=1 << 12)
def _downset(mask: int) -> int:
    """Table of the teams contained in ``mask``."""
    out = 0
    for s in subsets(mask):
        out |= 1 << s
    return out


@functools.lru_cache(maxsize=1 << 18)
def _unions(a: int, b: int) -> int:
    """Table of teams ``t1 | t2`` with t1 in table ``a`` and t2 in table ``b``."""
    out = 0
    right = list(bits(b))
    for t1 in bits(a):
        for t2 in right:
            out |= 1 << (t1 | t2)
    return out


def _image(succ, team: Team) -> Team:
    out = 0
    while team:
        low = team & -team
        out |= succ[low.bit_length() - 1]
        team ^= low
    return out


def _dedupe(items: Sequence[fm.Formula]) -> list[fm.Formula]:
    return list(dict.fromkeys(items))


def _profile(w: int, cols: Sequence[int]) -> tuple[bool, ...]:
    return tuple(bool(c >> w & 1) for c in cols)


def dep_values(team: Team, cols: Sequence[int]) -> bool:
    """Last column is a function of the others across the team."""
    *given, dependent = cols
    seen: dict = {}
    for w in bits(team):
        k = _profile(w, given)
        v = bool(dependent >> w & 1)
        if seen.setdefault(k, v) != v:
            return False
    return True


def indep_values(team: Team, p: Sequence[int], r: Sequence[int], q: Sequence[int]) -> bool:
    rows = [(_profile(w, p), _profile(w, r), _profile(w, q)) for w in bits(team)]
    present = set(rows)
    for vp, vr, _ in rows:
        for _, vr2, vq2 in rows:
            if vr == vr2 and (vp, vr, vq2) not in present:
                return False
    return True


def incl_values(team: Team, lhs: Sequence[int], rhs: Sequence[int]) -> bool:
    available = {_profile(w, rhs) for w in bits(team)}
    return all(_profile(w, lhs) in available for w in bits(team))


# ---------------------------------------------------------------------------
# functional entry points

def evaluate(
    model: KripkeModel, team: Team, f: fm.Formula, config: EvalConfig | None = None
) -> bool:
    """Does ``model, team`` satisfy ``f``?"""
    return Evaluator(model, config).holds(team, f)


def eval_pointed(model: KripkeModel, w: str | int, f: fm.Formula) -> bool:
    """Classical Kripke truth of an ML formula at one world."""
    return Evaluator(model).pointed(w, f)


def _cols(model: KripkeModel, args: Sequence[fm.Formula]) -> list[int]:
    ev = Evaluator(model)
    return [ev.truth_set(a) for a in args]


def dep_holds(model: KripkeModel, team: Team, args: Sequence[fm.Formula]) -> bool:
    return dep_values(team, _cols(model, args))


def indep_holds(model, team, p, r, q) -> bool:
    return indep_values(
        team,
        _cols(model, _dedupe(p)),
        _cols(model, _dedupe(r)),
        _cols(model, _dedupe(q)),
    )


def incl_holds(model, team, lhs, rhs) -> bool:
    if len(lhs) != len(rhs):
        raise EvalError("inclusion tuples must have equal length")
    return incl_values(team, _cols(model, lhs), _cols(model, rhs))


def gen_atom_holds(
    model: KripkeModel,
    team: Team,
    name: str,
    args: Sequence[fm.Formula],
    registry: AtomRegistry | None = None,
    native: bool = True,
) -> bool:
    atom = (registry or DEFAULT_REGISTRY)[name]
    if atom.arity != len(args):
        raise AtomError(f"atom {name!r} takes {atom.arity} arguments, got {len(args)}")
    return atom.holds_masks(team, _cols(model, args), native)
