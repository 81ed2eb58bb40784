"""First-order logic over finite relational structures.

Covers the sigma_X encoding of a model with a team (binary ``E``, unary
``T``, one unary ``W_x`` per variable), Tarski evaluation, the standard
translation of modal formulas, first-order versions of the team
characteristic formulas, and generalized dependence atoms defined by
sentences over unary relations ``A1 .. An``.
"""

from __future__ import annotations

import json
import re
import warnings
from dataclasses import dataclass, field, fields
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from . import formula as fm
from .hintikka import PropertyClass, distinct_type_sets, hintikka_team_set, type_set_formulas
from .kripke import KripkeModel, Team, bits


class FOError(ValueError):
    """Ill-formed first-order input or evaluation request."""


class AtomError(FOError):
    """Bad generalized atom definition or use."""


class IdentityWarning(UserWarning):
    """A generalized atom definition uses equality."""


class FOFormula:
    def _key(self) -> tuple:
        k = self.__dict__.get("_k")
        if k is None:
            k = (type(self),) + tuple(getattr(self, f.name) for f in fields(self))
            object.__setattr__(self, "_k", k)
        return k

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if type(self) is not type(other):
            return NotImplemented
        return hash(self) == hash(other) and self._key() == other._key()

    def __hash__(self) -> int:
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash(self._key())
            object.__setattr__(self, "_hash", h)
        return h

    def __str__(self) -> str:
        return render_fo(self)

    def children(self) -> tuple[FOFormula, ...]:
        return ()

    def free_vars(self) -> frozenset[str]:
        fv = self.__dict__.get("_fv")
        if fv is None:
            fv = self._free_vars()
            object.__setattr__(self, "_fv", fv)
        return fv

    def _free_vars(self) -> frozenset[str]:
        return frozenset().union(*(c.free_vars() for c in self.children()))

    def relations(self) -> frozenset[tuple[str, int]]:
        """Relation symbols used, as ``(name, arity)`` pairs."""
        rs = self.__dict__.get("_rels")
        if rs is None:
            rs = frozenset().union(*(c.relations() for c in self.children()))
            object.__setattr__(self, "_rels", rs)
        return rs

    def uses_equality(self) -> bool:
        return isinstance(self, Equal) or any(c.uses_equality() for c in self.children())


def _fo_node(cls):
    return dataclass(frozen=True, eq=False)(cls)


@_fo_node
class Truth(FOFormula):
    value: bool


@_fo_node
class Rel(FOFormula):
    name: str
    args: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    def _free_vars(self):
        return frozenset(self.args)

    def relations(self):
        return frozenset({(self.name, len(self.args))})


@_fo_node
class Equal(FOFormula):
    left: str
    right: str

    def _free_vars(self):
        return frozenset((self.left, self.right))


@_fo_node
class Not(FOFormula):
    sub: FOFormula

    def children(self):
        return (self.sub,)


@_fo_node
class Conj(FOFormula):
    items: tuple[FOFormula, ...]

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))

    def children(self):
        return self.items


@_fo_node
class Disj(FOFormula):
    items: tuple[FOFormula, ...]

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))

    def children(self):
        return self.items


@_fo_node
class Implies(FOFormula):
    left: FOFormula
    right: FOFormula

    def children(self):
        return (self.left, self.right)


@_fo_node
class Iff(FOFormula):
    left: FOFormula
    right: FOFormula

    def children(self):
        return (self.left, self.right)


@_fo_node
class Exists(FOFormula):
    var: str
    body: FOFormula

    def children(self):
        return (self.body,)

    def _free_vars(self):
        return self.body.free_vars() - {self.var}


@_fo_node
class Forall(FOFormula):
    var: str
    body: FOFormula

    def children(self):
        return (self.body,)

    def _free_vars(self):
        return self.body.free_vars() - {self.var}


TRUE = Truth(True)
FALSE = Truth(False)


def conj(items: Sequence[FOFormula]) -> FOFormula:
    items = tuple(items)
    if not items:
        return TRUE
    return items[0] if len(items) == 1 else Conj(items)


def disj(items: Sequence[FOFormula]) -> FOFormula:
    items = tuple(items)
    if not items:
        return FALSE
    return items[0] if len(items) == 1 else Disj(items)


# ---------------------------------------------------------------------------
# structures

@dataclass(frozen=True)
class FOStructure:
    """Finite relational structure; every relation is a frozenset of tuples."""

    universe: tuple
    relations: Mapping[str, frozenset]
    arities: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "universe", tuple(self.universe))
        rels = {name: frozenset(tuple(t) for t in ts) for name, ts in self.relations.items()}
        object.__setattr__(self, "relations", rels)
        arities = dict(self.arities)
        members = set(self.universe)
        for name, ts in rels.items():
            for t in ts:
                arities.setdefault(name, len(t))
                if len(t) != arities[name]:
                    raise FOError(f"relation {name} mixes tuple lengths")
                if not members.issuperset(t):
                    raise FOError(f"relation {name} mentions elements outside the universe")
        for name in arities:
            rels.setdefault(name, frozenset())
        object.__setattr__(self, "arities", arities)

    def with_relations(self, **updates: Iterable[tuple]) -> FOStructure:
        rels = dict(self.relations)
        rels.update(updates)
        return FOStructure(self.universe, rels, self.arities)


def prop_relation(var: str) -> str:
    return f"W_{var}"


def to_structure(model: KripkeModel, team: Team) -> FOStructure:
    """The sigma_X structure of a model with a team: universe W, E = R, T = team, W_x = pi(x)."""
    names = model.worlds
    rels = {
        "E": frozenset((names[a], names[b]) for a in range(len(names)) for b in bits(model.succ[a])),
        "T": frozenset((names[i],) for i in bits(team)),
    }
    arities = {"E": 2, "T": 1}
    for v in model.variables:
        rels[prop_relation(v)] = frozenset((names[i],) for i in bits(model.val[v]))
        arities[prop_relation(v)] = 1
    return FOStructure(names, rels, arities)


def from_structure(structure: FOStructure, variables: Sequence[str]) -> tuple[KripkeModel, Team]:
    """Inverse of :func:`to_structure`."""
    worlds = [str(u) for u in structure.universe]
    edges = [(str(a), str(b)) for a, b in structure.relations.get("E", ())]
    valuation = {
        v: [str(t[0]) for t in structure.relations.get(prop_relation(v), ())] for v in variables
    }
    model = KripkeModel(worlds, edges, valuation, variables)
    team = model.team(str(t[0]) for t in structure.relations.get("T", ()))
    return model, team


# ---------------------------------------------------------------------------
# evaluation

class FOEvaluator:
    """Tarski semantics over one universe.

    Quantified subformulas are memoized on their free-variable values and
    on the interpretations of the relations they mention, so an evaluator
    derived with :meth:`rebind` reuses work for subformulas untouched by
    the new interpretations.
    """

    def __init__(self, structure: FOStructure, memo: dict | None = None) -> None:
        self.structure = structure
        self.memo = {} if memo is None else memo

    def rebind(self, structure: FOStructure) -> FOEvaluator:
        if structure.universe != self.structure.universe:
            raise FOError("rebind requires the same universe")
        return FOEvaluator(structure, self.memo)

    def holds(self, f: FOFormula, env: Mapping | None = None) -> bool:
        env = dict(env or {})
        missing = f.free_vars() - env.keys()
        if missing:
            raise FOError(f"unbound variables: {sorted(missing)}")
        for name, arity in f.relations():
            if name not in self.structure.relations:
                raise FOError(f"relation {name} is not in the signature")
            if self.structure.arities.get(name, arity) != arity:
                raise FOError(f"relation {name} used with arity {arity}")
        return self._eval(f, env)

    def _eval(self, f: FOFormula, env: dict) -> bool:
        t = type(f)
        if t is Rel:
            return tuple(env[a] for a in f.args) in self.structure.relations[f.name]
        if t is Conj:
            return all(self._eval(g, env) for g in f.items)
        if t is Disj:
            return any(self._eval(g, env) for g in f.items)
        if t is Not:
            return not self._eval(f.sub, env)
        if t is Implies:
            return not self._eval(f.left, env) or self._eval(f.right, env)
        if t is Exists or t is Forall:
            free, rels = _scope(f)
            rel_map = self.structure.relations
            key = (f, tuple(env[v] for v in free), tuple(rel_map[r] for r in rels))
            hit = self.memo.get(key)
            if hit is not None:
                return hit
            saved = env.get(f.var, _UNSET)
            want = t is Exists
            result = not want
            for u in self.structure.universe:
                env[f.var] = u
                if self._eval(f.body, env) == want:
                    result = want
                    break
            if saved is _UNSET:
                env.pop(f.var, None)
            else:
                env[f.var] = saved
            self.memo[key] = result
            return result
        if t is Iff:
            return self._eval(f.left, env) == self._eval(f.right, env)
        if t is Equal:
            return env[f.left] == env[f.right]
        if t is Truth:
            return f.value
        raise TypeError(f"not a first-order formula: {f!r}")


_UNSET = object()


def _scope(f: FOFormula) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Sorted free variables and relation names of ``f``, cached on the node."""
    sc = f.__dict__.get("_scope")
    if sc is None:
        sc = (tuple(sorted(f.free_vars())), tuple(r for r, _ in sorted(f.relations())))
        object.__setattr__(f, "_scope", sc)
    return sc


def eval_fo(structure: FOStructure, f: FOFormula, assignment: Mapping | None = None) -> bool:
    """Truth of ``f`` in ``structure``; empty-universe ``forall`` is true, ``exists`` false."""
    return FOEvaluator(structure).holds(f, assignment)


# ---------------------------------------------------------------------------
# text syntax

_FO_TOKEN = re.compile(r"\s*(<->|->|[!&|().,=]|[A-Za-z_][A-Za-z0-9_]*)")
_FO_KEYWORDS = {"forall", "exists", "true", "false"}


def _fo_tokens(text: str) -> list[tuple[str, int]]:
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _FO_TOKEN.match(text, pos)
        if m is None:
            raise FOError(f"unexpected character {text[pos]!r} at offset {pos}")
        out.append((m.group(1), m.start(1)))
        pos = m.end()
    out.append(("", len(text)))
    return out


class _FOParser:
    def __init__(self, text: str) -> None:
        self.toks = _fo_tokens(text)
        self.i = 0

    @property
    def tok(self) -> str:
        return self.toks[self.i][0]

    def error(self, msg: str) -> FOError:
        return FOError(f"{msg} at offset {self.toks[self.i][1]}")

    def accept(self, s: str) -> bool:
        if self.tok == s:
            self.i += 1
            return True
        return False

    def expect(self, s: str) -> None:
        if not self.accept(s):
            raise self.error(f"expected {s!r}, found {self.tok or 'end of input'!r}")

    def ident(self) -> str:
        tok = self.tok
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok) or tok in _FO_KEYWORDS:
            raise self.error(f"expected identifier, found {tok or 'end of input'!r}")
        self.i += 1
        return tok

    def parse(self) -> FOFormula:
        f = self.formula()
        if self.tok:
            raise self.error(f"unexpected {self.tok!r}")
        return f

    def formula(self) -> FOFormula:
        left = self.implication()
        if self.accept("<->"):
            return Iff(left, self.formula())
        return left

    def implication(self) -> FOFormula:
        left = self.disjunction()
        if self.accept("->"):
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> FOFormula:
        items = [self.conjunction()]
        while self.accept("|"):
            items.append(self.conjunction())
        return disj(items)

    def conjunction(self) -> FOFormula:
        items = [self.unary()]
        while self.accept("&"):
            items.append(self.unary())
        return conj(items)

    def unary(self) -> FOFormula:
        if self.accept("!"):
            return Not(self.unary())
        for word, cls in (("forall", Forall), ("exists", Exists)):
            if self.accept(word):
                var = self.ident()
                self.expect(".")
                return cls(var, self.formula())
        if self.accept("("):
            f = self.formula()
            self.expect(")")
            return f
        if self.accept("true"):
            return TRUE
        if self.accept("false"):
            return FALSE
        name = self.ident()
        if self.accept("="):
            return Equal(name, self.ident())
        self.expect("(")
        args = [self.ident()]
        while self.accept(","):
            args.append(self.ident())
        self.expect(")")
        return Rel(name, tuple(args))


def parse_fo(text: str) -> FOFormula:
    return _FOParser(text).parse()


def _fo_prec(f: FOFormula) -> int:
    if isinstance(f, (Exists, Forall)):
        return -1
    return {Iff: 0, Implies: 1, Disj: 2, Conj: 3}.get(type(f), 4)


def render_fo(f: FOFormula) -> str:
    def wrap(g: FOFormula, need: int) -> str:
        s = render_fo(g)
        return f"({s})" if _fo_prec(g) < need else s

    if isinstance(f, Truth):
        return "true" if f.value else "false"
    if isinstance(f, Rel):
        return f"{f.name}({', '.join(f.args)})"
    if isinstance(f, Equal):
        return f"{f.left} = {f.right}"
    if isinstance(f, Not):
        return "!" + wrap(f.sub, 4)
    if isinstance(f, Conj):
        return " & ".join(wrap(g, 4) for g in f.items)
    if isinstance(f, Disj):
        return " | ".join(wrap(g, 3) for g in f.items)
    if isinstance(f, Implies):
        return f"{wrap(f.left, 2)} -> {wrap(f.right, 1)}"
    if isinstance(f, Iff):
        return f"{wrap(f.left, 1)} <-> {wrap(f.right, 0)}"
    if isinstance(f, (Exists, Forall)):
        word = "exists" if isinstance(f, Exists) else "forall"
        return f"{word} {f.var}. {render_fo(f.body)}"
    raise TypeError(f"not a first-order formula: {f!r}")


# ---------------------------------------------------------------------------
# standard translation

def standard_translation(f: fm.Formula, var: str = "x") -> FOFormula:
    """First-order formula with one free variable ``var`` equivalent to ``f`` at a world.

    Quantified variables alternate between ``var`` and one other name, so the
    result stays in the two-variable fragment.
    """
    if not f.is_ml():
        raise FOError(f"standard translation needs a modal logic formula: {fm.render(f)!r}")
    other = "y" if var != "y" else "x"
    cache: dict = {}

    def st(g: fm.Formula, here: str, there: str) -> FOFormula:
        key = (id(g), here)
        hit = cache.get(key)
        if hit is not None:
            return hit[1]
        if isinstance(g, fm.Top):
            out = TRUE
        elif isinstance(g, fm.Bot):
            out = FALSE
        elif isinstance(g, fm.PropAtom):
            out = Rel(prop_relation(g.name), (here,))
        elif isinstance(g, fm.NegAtom):
            out = Not(Rel(prop_relation(g.name), (here,)))
        elif isinstance(g, fm.And):
            out = Conj((st(g.left, here, there), st(g.right, here, there)))
        elif isinstance(g, fm.SplitOr):
            out = Disj((st(g.left, here, there), st(g.right, here, there)))
        elif isinstance(g, fm.Diamond):
            out = Exists(there, Conj((Rel("E", (here, there)), st(g.sub, there, here))))
        elif isinstance(g, fm.Box):
            out = Forall(there, Implies(Rel("E", (here, there)), st(g.sub, there, here)))
        else:
            raise AssertionError(type(g))
        # share structurally equal nodes so evaluator memo lookups compare by identity
        out = _shared(out)
        cache[key] = (g, out)
        return out

    return st(f, var, other)


_SHARED: dict = {}
SHARED_LIMIT = 1 << 18


def _shared(node: FOFormula) -> FOFormula:
    hit = _SHARED.get(node)
    if hit is None:
        if len(_SHARED) >= SHARED_LIMIT:
            _SHARED.clear()
        hit = _SHARED[node] = node
    return hit


def _chi_fo(formulas: Sequence[fm.Formula]) -> FOFormula:
    translated = [standard_translation(phi, "x") for phi in formulas]
    somewhere = [_shared(Exists("x", Conj((Rel("T", ("x",)), t)))) for t in translated]
    everywhere = Forall("x", Implies(Rel("T", ("x",)), disj(translated)))
    return Conj((*somewhere, everywhere))


def chi_to_fo(model: KripkeModel, team: Team, k: int) -> FOFormula:
    """Sentence over sigma_X equivalent to the team characteristic formula at level ``k``."""
    return _chi_fo(hintikka_team_set(model, team, k))


def property_to_fo(prop: PropertyClass) -> FOFormula:
    """Disjunction of the first-order characteristic sentences of a property's members."""
    seen = distinct_type_sets(prop)
    if not seen:
        raise FOError("property class is empty")
    return disj([_chi_fo(type_set_formulas(ts)) for ts in seen])


# ---------------------------------------------------------------------------
# generalized atoms

def atom_relation(i: int) -> str:
    return f"A{i}"


@dataclass(frozen=True)
class GeneralizedAtom:
    """A team predicate given by a sentence over unary relations ``A1 .. An``.

    ``native`` optionally computes the same predicate directly from the team
    and the argument extents (bitmasks within the team).
    """

    name: str
    arity: int
    sentence: FOFormula
    identity_free: bool = True
    native: Callable[[int, Sequence[int]], bool] | None = field(default=None, compare=False)

    def holds(self, universe: Sequence, extents: Sequence[Iterable]) -> bool:
        """Evaluate the defining sentence on the induced structure."""
        if len(extents) != self.arity:
            raise AtomError(f"atom {self.name} takes {self.arity} arguments, got {len(extents)}")
        rels = {atom_relation(i + 1): frozenset((u,) for u in ext) for i, ext in enumerate(extents)}
        arities = {atom_relation(i + 1): 1 for i in range(self.arity)}
        return eval_fo(FOStructure(tuple(universe), rels, arities), self.sentence)

    def holds_masks(self, team: int, masks: Sequence[int], native: bool = True) -> bool:
        """Evaluate on a team bitmask with argument extents given as bitmasks."""
        masks = [m & team for m in masks]
        if len(masks) != self.arity:
            raise AtomError(f"atom {self.name} takes {self.arity} arguments, got {len(masks)}")
        if native and self.native is not None:
            return self.native(team, masks)
        return self.holds(tuple(bits(team)), [tuple(bits(m)) for m in masks])


def make_atom(name: str, arity: int, sentence: FOFormula | str, native=None) -> GeneralizedAtom:
    """Validate a definition and build the atom; warns if equality is used."""
    if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
        raise AtomError(f"bad atom name {name!r}")
    if arity < 0:
        raise AtomError("arity must be non-negative")
    if isinstance(sentence, str):
        sentence = parse_fo(sentence)
    if sentence.free_vars():
        raise AtomError(f"definition of {name} has free variables {sorted(sentence.free_vars())}")
    allowed = {(atom_relation(i + 1), 1) for i in range(arity)}
    bad = sentence.relations() - allowed
    if bad:
        shown = ", ".join(f"{r}/{a}" for r, a in sorted(bad))
        raise AtomError(f"definition of {name} may only use A1..A{arity} (unary); found {shown}")
    identity_free = not sentence.uses_equality()
    if not identity_free:
        warnings.warn(
            f"atom {name} is defined with equality; it is not an identity-free atom",
            IdentityWarning,
            stacklevel=2,
        )
    return GeneralizedAtom(name, arity, sentence, identity_free, native)


class AtomRegistry:
    """Append-only table of generalized atoms."""

    def __init__(self, atoms: Iterable[GeneralizedAtom] = ()) -> None:
        self._atoms: dict[str, GeneralizedAtom] = {}
        for a in atoms:
            self.add(a)

    def add(self, atom: GeneralizedAtom) -> GeneralizedAtom:
        existing = self._atoms.get(atom.name)
        if existing is not None:
            if existing == atom:
                return existing
            raise AtomError(f"atom {atom.name!r} is already registered")
        self._atoms[atom.name] = atom
        return atom

    def register(self, name: str, arity: int, sentence: FOFormula | str, native=None):
        return self.add(make_atom(name, arity, sentence, native))

    def get(self, name: str) -> GeneralizedAtom | None:
        return self._atoms.get(name)

    def __getitem__(self, name: str) -> GeneralizedAtom:
        try:
            return self._atoms[name]
        except KeyError:
            raise AtomError(f"unregistered atom {name!r}") from None

    def __contains__(self, name: object) -> bool:
        return name in self._atoms

    def __iter__(self) -> Iterator[GeneralizedAtom]:
        return iter(self._atoms.values())

    def __len__(self) -> int:
        return len(self._atoms)

    def dumps(self) -> str:
        rows = [
            {"name": a.name, "arity": a.arity, "sentence": render_fo(a.sentence)} for a in self
        ]
        return json.dumps(rows, indent=2) + "\n"

    @classmethod
    def loads(cls, text: str) -> AtomRegistry:
        reg = cls()
        try:
            rows = json.loads(text)
        except json.JSONDecodeError as exc:
            raise AtomError(f"invalid registry file: {exc}") from None
        if not isinstance(rows, list):
            raise AtomError("registry file must hold a list")
        for row in rows:
            if not isinstance(row, dict) or set(row) != {"name", "arity", "sentence"}:
                raise AtomError(f"bad registry entry {row!r}")
            reg.register(row["name"], row["arity"], row["sentence"])
        return reg


DEFAULT_REGISTRY = AtomRegistry()


def register_atom(name: str, arity: int, sentence: FOFormula | str, registry=None):
    return (registry or DEFAULT_REGISTRY).register(name, arity, sentence)


def theorem8_name(n: int, m: int) -> str:
    return f"D_{n}_{m}"


def theorem8_sentence(n: int, m: int) -> FOFormula:
    groups = []
    for g in range(m):
        rels = [atom_relation(g * n + j + 1) for j in range(n)]
        covered = Forall("x", disj([Rel(r, ("x",)) for r in rels]))
        inhabited = [Exists("x", Rel(r, ("x",))) for r in rels]
        groups.append(Conj((covered, *inhabited)))
    return disj(groups)


def theorem8_atom(n: int, m: int, native: bool = True) -> GeneralizedAtom:
    """The atom over m groups of n arguments.

    It holds when for some group every team world satisfies a member of the
    group and every member of the group is satisfied somewhere in the team.
    With ``native=False`` only the defining sentence is attached.
    """
    if n < 1 or m < 1:
        raise AtomError("n and m must be at least 1")

    def evaluate(team: int, masks: Sequence[int]) -> bool:
        for g in range(m):
            group = masks[g * n:(g + 1) * n]
            cover = 0
            for a in group:
                cover |= a
            if cover == team and all(group):
                return True
        return False

    name = theorem8_name(n, m) + ("" if native else "_fo")
    return GeneralizedAtom(name, n * m, theorem8_sentence(n, m), True, evaluate if native else None)


def property_atom_formula(
    prop: PropertyClass, registry: AtomRegistry | None = None
) -> fm.GenAtom:
    """Express a property class with a single atom from ``theorem8_atom``.

    Each member's Hintikka set becomes one argument group; groups are padded
    to a common width by repeating their last formula, which leaves the atom's
    truth unchanged.  The atom is registered in ``registry`` if missing.
    """
    seen = distinct_type_sets(prop)
    if not seen:
        raise FOError("property class is empty")
    groups = [list(type_set_formulas(ts)) for ts in seen]
    n = max(len(g) for g in groups)
    args: list[fm.Formula] = []
    for g in groups:
        args.extend(g + [g[-1]] * (n - len(g)))
    atom = theorem8_atom(n, len(groups))
    (registry or DEFAULT_REGISTRY).add(atom)
    return fm.GenAtom(atom.name, tuple(args))
