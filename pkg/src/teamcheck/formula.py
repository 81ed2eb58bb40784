"""Formula syntax for modal team logics.

One AST covers plain modal logic and every extension handled by the
package: split and classical disjunction, classical negation, the
team-existential ``E``, tensor, intuitionistic implication and the
dependence, independence, inclusion and generalized atoms.

Nodes are immutable and compare structurally.  Parsing and rendering use
the ASCII grammar documented in the README.
"""

from __future__ import annotations

import enum
import re
import warnings
from dataclasses import dataclass, fields
from typing import Iterable, Iterator, Sequence


class FormulaError(ValueError):
    """Raised when a formula violates a syntactic invariant."""


class ParseError(FormulaError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class DesugarWarning(UserWarning):
    """Emitted when desugaring meets atoms that have no MTL rewrite."""


class Formula:
    """Base class of all formula nodes."""

    def _key(self) -> tuple:
        return (type(self),) + tuple(getattr(self, f.name) for f in fields(self))

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
        return render(self)

    def children(self) -> tuple[Formula, ...]:
        return ()

    def is_ml(self) -> bool:
        """True for plain modal logic formulas (no team-level operators or atoms)."""
        ml = self.__dict__.get("_ml")
        if ml is None:
            ml = isinstance(self, _ML_KINDS) and all(c.is_ml() for c in self.children())
            object.__setattr__(self, "_ml", ml)
        return ml

    def modal_depth(self) -> int:
        md = self.__dict__.get("_md")
        if md is None:
            inner = max((c.modal_depth() for c in self.children()), default=0)
            md = inner + 1 if isinstance(self, (Diamond, Box)) else inner
            object.__setattr__(self, "_md", md)
        return md

    def variables(self) -> frozenset[str]:
        vs = self.__dict__.get("_vars")
        if vs is None:
            if isinstance(self, (PropAtom, NegAtom)):
                vs = frozenset((self.name,))
            else:
                vs = frozenset().union(*(c.variables() for c in self.children()))
            object.__setattr__(self, "_vars", vs)
        return vs

    def size(self) -> int:
        """Number of AST nodes."""
        return 1 + sum(c.size() for c in self.children())


def _node(cls):
    return dataclass(frozen=True, eq=False, repr=True)(cls)


@_node
class Top(Formula):
    pass


@_node
class Bot(Formula):
    pass


@_node
class PropAtom(Formula):
    name: str


@_node
class NegAtom(Formula):
    name: str


@_node
class ClassicalNeg(Formula):
    sub: Formula

    def children(self):
        return (self.sub,)


class _Binary(Formula):
    def children(self):
        return (self.left, self.right)


@_node
class And(_Binary):
    left: Formula
    right: Formula


@_node
class SplitOr(_Binary):
    left: Formula
    right: Formula


@_node
class ClassicalOr(_Binary):
    left: Formula
    right: Formula


@_node
class Tensor(_Binary):
    left: Formula
    right: Formula


@_node
class IntImpl(_Binary):
    left: Formula
    right: Formula


@_node
class Diamond(Formula):
    sub: Formula

    def children(self):
        return (self.sub,)


@_node
class Box(Formula):
    sub: Formula

    def children(self):
        return (self.sub,)


def _require_ml(args: Iterable[Formula], what: str) -> None:
    for a in args:
        if not isinstance(a, Formula):
            raise FormulaError(f"{what}: argument {a!r} is not a formula")
        if not a.is_ml():
            raise FormulaError(f"{what}: argument {render(a)!r} is not a modal logic formula")


@_node
class Exists(Formula):
    sub: Formula

    def __post_init__(self):
        _require_ml((self.sub,), "E")

    def children(self):
        return (self.sub,)


@_node
class Dep(Formula):
    args: tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        if not self.args:
            raise FormulaError("dep needs at least one argument")
        _require_ml(self.args, "dep")

    def children(self):
        return self.args


@_node
class Indep(Formula):
    """``P ⊥_R Q``; argument lists are read as sets by the evaluator."""

    p: tuple[Formula, ...]
    r: tuple[Formula, ...]
    q: tuple[Formula, ...]

    def __post_init__(self):
        for name in ("p", "r", "q"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        _require_ml(self.p + self.r + self.q, "indep")

    def children(self):
        return self.p + self.r + self.q


@_node
class Incl(Formula):
    lhs: tuple[Formula, ...]
    rhs: tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))
        if len(self.lhs) != len(self.rhs):
            raise FormulaError(
                f"inc: tuple lengths differ ({len(self.lhs)} vs {len(self.rhs)})"
            )
        if not self.lhs:
            raise FormulaError("inc needs at least one argument on each side")
        _require_ml(self.lhs + self.rhs, "inc")

    def children(self):
        return self.lhs + self.rhs


@_node
class GenAtom(Formula):
    name: str
    args: tuple[Formula, ...]

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        _require_ml(self.args, f"atom {self.name}")

    def children(self):
        return self.args


_ML_KINDS = (Top, Bot, PropAtom, NegAtom, And, SplitOr, Diamond, Box)
_ATOM_KINDS = (Dep, Indep, Incl, GenAtom)

TOP = Top()
BOT = Bot()


# ---------------------------------------------------------------------------
# n-ary helpers

def conj(items: Sequence[Formula]) -> Formula:
    """Right-nested conjunction; the empty conjunction is ``top``."""
    if not items:
        return TOP
    out = items[-1]
    for f in reversed(items[:-1]):
        out = And(f, out)
    return out


def split_disj(items: Sequence[Formula]) -> Formula:
    """Right-nested split disjunction; the empty one is ``bot``."""
    if not items:
        return BOT
    out = items[-1]
    for f in reversed(items[:-1]):
        out = SplitOr(f, out)
    return out


def classical_disj(items: Sequence[Formula]) -> Formula:
    """Right-nested classical disjunction; the empty one is ``~top``."""
    if not items:
        return ClassicalNeg(TOP)
    out = items[-1]
    for f in reversed(items[:-1]):
        out = ClassicalOr(f, out)
    return out


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order walk, atom arguments included."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(g.children()))


def modal_depth(f: Formula) -> int:
    return f.modal_depth()


# ---------------------------------------------------------------------------
# dual and desugaring

def dual(f: Formula) -> Formula:
    """Negation normal form of the classical negation of an ML formula."""
    if not f.is_ml():
        raise FormulaError(f"dual is defined on modal logic formulas only: {render(f)!r}")
    return _dual(f)


def _dual(f: Formula) -> Formula:
    if isinstance(f, Top):
        return BOT
    if isinstance(f, Bot):
        return TOP
    if isinstance(f, PropAtom):
        return NegAtom(f.name)
    if isinstance(f, NegAtom):
        return PropAtom(f.name)
    if isinstance(f, And):
        return SplitOr(_dual(f.left), _dual(f.right))
    if isinstance(f, SplitOr):
        return And(_dual(f.left), _dual(f.right))
    if isinstance(f, Diamond):
        return Box(_dual(f.sub))
    if isinstance(f, Box):
        return Diamond(_dual(f.sub))
    raise AssertionError(type(f))


def desugar(f: Formula, strict: bool = False) -> Formula:
    """Rewrite ``E``, tensor, ``->``, ``lor`` and ``dep`` into the core MTL connectives.

    Independence, inclusion and generalized atoms have no rewrite; they are
    left in place with a :class:`DesugarWarning`, or rejected when
    ``strict`` is set.

    The result agrees with ``f`` on every nonempty team.  On the empty team
    the rewrite of ``a -> b`` is always true, while ``a -> b`` itself fails
    when the empty team satisfies ``a`` but not ``b`` (``top -> E top``).
    """
    leftovers: list[Formula] = []
    out = _desugar(f, leftovers)
    if leftovers:
        msg = "not MTL-desugarable, left unchanged: " + ", ".join(
            sorted({render(a) for a in leftovers})
        )
        if strict:
            raise FormulaError(msg)
        warnings.warn(msg, DesugarWarning, stacklevel=2)
    return out


def _neg(a: Formula) -> Formula:
    # ~~a and a agree on every team
    return a.sub if isinstance(a, ClassicalNeg) else ClassicalNeg(a)


def _lor(a: Formula, b: Formula) -> Formula:
    return _neg(And(_neg(a), _neg(b)))


def _tensor(a: Formula, b: Formula) -> Formula:
    return _neg(SplitOr(_neg(a), _neg(b)))


def _impl(a: Formula, b: Formula) -> Formula:
    return _tensor(_lor(_neg(a), b), BOT)


def _desugar(f: Formula, leftovers: list) -> Formula:
    if f.is_ml():
        return f
    if isinstance(f, ClassicalNeg):
        return _neg(_desugar(f.sub, leftovers))
    if isinstance(f, (And, SplitOr)):
        return type(f)(_desugar(f.left, leftovers), _desugar(f.right, leftovers))
    if isinstance(f, (Diamond, Box)):
        return type(f)(_desugar(f.sub, leftovers))
    if isinstance(f, ClassicalOr):
        return _lor(_desugar(f.left, leftovers), _desugar(f.right, leftovers))
    if isinstance(f, Tensor):
        return _tensor(_desugar(f.left, leftovers), _desugar(f.right, leftovers))
    if isinstance(f, IntImpl):
        return _impl(_desugar(f.left, leftovers), _desugar(f.right, leftovers))
    if isinstance(f, Exists):
        return _neg(dual(f.sub))
    if isinstance(f, Dep):
        *determiners, dependent = f.args
        constant = _lor(dependent, dual(dependent))
        if not determiners:
            return constant
        return _impl(conj([_lor(a, dual(a)) for a in determiners]), constant)
    leftovers.append(f)
    return f


# ---------------------------------------------------------------------------
# fragments

class Fragment(enum.Enum):
    ML = "ML"
    MLc = "ML(lor)"
    MDL = "MDL"
    EMDL = "EMDL"
    EMIL = "EMIL"
    EMILc = "EMIL(lor)"
    EMINCL = "EMINCL"
    EMINCLc = "EMINCL(lor)"
    MLFO = "ML^FO"
    MTL = "MTL"
    MTLplus = "MTL+"

    @property
    def features(self) -> frozenset[str]:
        return _ADMITS[self]

    def includes(self, other: Fragment) -> bool:
        """Syntactic inclusion: every formula of ``other`` is a formula of ``self``."""
        return other.features <= self.features


_TEAM_OPS = frozenset({"neg", "exists", "tensor", "impl"})
_ADMITS = {
    Fragment.ML: frozenset(),
    Fragment.MLc: frozenset({"lor"}),
    Fragment.MDL: frozenset({"dep"}),
    Fragment.EMDL: frozenset({"dep", "extdep"}),
    Fragment.EMIL: frozenset({"indep"}),
    Fragment.EMILc: frozenset({"indep", "lor"}),
    Fragment.EMINCL: frozenset({"incl"}),
    Fragment.EMINCLc: frozenset({"incl", "lor"}),
    Fragment.MLFO: frozenset({"genatom"}),
    Fragment.MTL: frozenset({"lor", "dep", "extdep"}) | _TEAM_OPS,
    Fragment.MTLplus: frozenset(
        {"lor", "dep", "extdep", "indep", "incl", "genatom", "genatom_eq"}
    ) | _TEAM_OPS,
}


def features(f: Formula, registry=None) -> frozenset[str]:
    out = set()
    for g in subformulas(f):
        if isinstance(g, ClassicalOr):
            out.add("lor")
        elif isinstance(g, ClassicalNeg):
            out.add("neg")
        elif isinstance(g, Exists):
            out.add("exists")
        elif isinstance(g, Tensor):
            out.add("tensor")
        elif isinstance(g, IntImpl):
            out.add("impl")
        elif isinstance(g, Dep):
            out.add("dep")
            if not all(isinstance(a, PropAtom) for a in g.args):
                out.add("extdep")
        elif isinstance(g, Indep):
            out.add("indep")
        elif isinstance(g, Incl):
            out.add("incl")
        elif isinstance(g, GenAtom):
            atom = registry.get(g.name) if registry is not None else None
            if atom is not None and not atom.identity_free:
                out.add("genatom_eq")
            else:
                out.add("genatom")
    return frozenset(out)


def fragment_of(f: Formula, registry=None) -> Fragment:
    """Smallest fragment whose syntax admits ``f``.

    A generalized atom whose registered definition uses equality is not an
    ML^FO atom, so such formulas land in MTL+.
    """
    feats = features(f, registry)
    for frag in Fragment:
        if feats <= frag.features:
            return frag
    raise AssertionError(feats)


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+|\n)
  | (?P<sym><>|\[\]|->|[!~&|(),;])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)
KEYWORDS = frozenset({"top", "bot", "E", "otimes", "lor", "dep", "indep", "inc", "atom"})

# binary operators from loosest to tightest binding
_BINARY_LEVELS = (
    ("->", IntImpl),
    ("lor", ClassicalOr),
    ("otimes", Tensor),
    ("|", SplitOr),
    ("&", And),
)


@dataclass(frozen=True)
class _Tok:
    kind: str  # "sym", "ident", "eof"
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind != "ws":
            toks.append(_Tok(kind, s, line, col))
        if s == "\n":
            line, col = line + 1, 1
        else:
            col += len(s)
        pos = m.end()
    toks.append(_Tok("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str, registry=None) -> None:
        self.toks = _tokenize(text)
        self.i = 0
        self.registry = registry

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: _Tok | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def accept(self, text: str) -> bool:
        if self.tok.kind != "eof" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> _Tok:
        tok = self.tok
        if not self.accept(text):
            found = tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return tok

    def parse(self) -> Formula:
        f = self.binary(0)
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")
        return f

    def binary(self, level: int) -> Formula:
        if level == len(_BINARY_LEVELS):
            return self.prefix()
        op, cls = _BINARY_LEVELS[level]
        left = self.binary(level + 1)
        if self.accept(op):
            right = self.binary(level)
            return cls(left, right)
        return left

    def build(self, tok: _Tok, cls, *args) -> Formula:
        try:
            return cls(*args)
        except ParseError:
            raise
        except FormulaError as exc:
            raise self.error(str(exc), tok) from None

    def prefix(self) -> Formula:
        tok = self.tok
        if tok.kind == "sym":
            if self.accept("~"):
                return ClassicalNeg(self.prefix())
            if self.accept("<>"):
                return Diamond(self.prefix())
            if self.accept("[]"):
                return Box(self.prefix())
            if self.accept("!"):
                name = self.tok
                if name.kind != "ident" or name.text in KEYWORDS:
                    raise self.error("'!' must be followed by a proposition name")
                self.i += 1
                return NegAtom(name.text)
            if self.accept("("):
                f = self.binary(0)
                self.expect(")")
                return f
            raise self.error(f"unexpected {tok.text!r}")
        if tok.kind == "eof":
            raise self.error("unexpected end of input")
        self.i += 1
        word = tok.text
        if word == "top":
            return TOP
        if word == "bot":
            return BOT
        if word == "E":
            return self.build(tok, Exists, self.prefix())
        if word == "dep":
            self.expect("(")
            args = self.formula_list((")",))
            self.expect(")")
            return self.build(tok, Dep, args)
        if word == "indep":
            self.expect("(")
            p = self.formula_list((";",))
            self.expect(";")
            r = self.formula_list((";",))
            self.expect(";")
            q = self.formula_list((")",))
            self.expect(")")
            return self.build(tok, Indep, p, r, q)
        if word == "inc":
            self.expect("(")
            lhs = self.formula_list((";",))
            self.expect(";")
            rhs = self.formula_list((")",))
            self.expect(")")
            return self.build(tok, Incl, lhs, rhs)
        if word == "atom":
            name = self.tok
            if name.kind != "ident" or name.text in KEYWORDS:
                raise self.error("expected atom name after 'atom'")
            self.i += 1
            self.expect("(")
            args = self.formula_list((")",))
            self.expect(")")
            f = self.build(tok, GenAtom, name.text, args)
            if self.registry is not None:
                atom = self.registry.get(name.text)
                if atom is None:
                    raise self.error(f"unregistered atom {name.text!r}", name)
                if atom.arity != len(args):
                    raise self.error(
                        f"atom {name.text!r} takes {atom.arity} arguments, got {len(args)}", name
                    )
            return f
        if word in KEYWORDS:
            raise self.error(f"unexpected keyword {word!r}", tok)
        return PropAtom(word)

    def formula_list(self, stops: tuple[str, ...]) -> list[Formula]:
        if self.tok.kind == "sym" and self.tok.text in stops:
            return []
        items = [self.binary(0)]
        while self.accept(","):
            items.append(self.binary(0))
        return items


def parse(text: str, registry=None) -> Formula:
    """Parse ASCII formula syntax.

    With a ``registry`` the arity of ``atom NAME(...)`` occurrences is checked.
    """
    return _Parser(text, registry).parse()


# ---------------------------------------------------------------------------
# rendering

_PREC = {IntImpl: 0, ClassicalOr: 1, Tensor: 2, SplitOr: 3, And: 4}
_OPS = {IntImpl: "->", ClassicalOr: "lor", Tensor: "otimes", SplitOr: "|", And: "&"}
_PREFIX_PREC = 5


def _prec(f: Formula) -> int:
    return _PREC.get(type(f), _PREFIX_PREC)


def _list(items: Sequence[Formula]) -> str:
    return ", ".join(render(a) for a in items)


def render(f: Formula) -> str:
    if isinstance(f, Top):
        return "top"
    if isinstance(f, Bot):
        return "bot"
    if isinstance(f, PropAtom):
        return f.name
    if isinstance(f, NegAtom):
        return "!" + f.name
    if isinstance(f, _Binary):
        p = _PREC[type(f)]
        left = render(f.left)
        if _prec(f.left) <= p:
            left = f"({left})"
        right = render(f.right)
        if _prec(f.right) < p:
            right = f"({right})"
        return f"{left} {_OPS[type(f)]} {right}"
    if isinstance(f, (ClassicalNeg, Diamond, Box, Exists)):
        sub = render(f.sub)
        if _prec(f.sub) < _PREFIX_PREC:
            sub = f"({sub})"
        if isinstance(f, Exists):
            return "E " + sub
        return {ClassicalNeg: "~", Diamond: "<>", Box: "[]"}[type(f)] + sub
    if isinstance(f, Dep):
        return f"dep({_list(f.args)})"
    if isinstance(f, Indep):
        parts = [_list(f.p), _list(f.r), _list(f.q)]
        return "indep(" + " ;".join((" " + s) if s else "" for s in parts).lstrip() + ")"
    if isinstance(f, Incl):
        return f"inc({_list(f.lhs)} ; {_list(f.rhs)})"
    if isinstance(f, GenAtom):
        return f"atom {f.name}({_list(f.args)})"
    raise TypeError(f"not a formula: {f!r}")
