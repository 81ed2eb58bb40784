"""Bounded and full bisimulation between worlds and teams.

k-bisimilarity is decided through canonical types: the level-0 type of a
world is its valuation, the level-(j+1) type adds the set of level-j types
of its successors.  Types are interned, so structurally equal types are the
same object.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from typing import Iterable, Sequence

from .formula import Formula
from .kripke import KripkeModel, Team, bits, disjoint_union, shift_team


class EmptyTeamError(ValueError):
    """Team-level bisimulation and property tooling reject the empty team."""


class CanonicalType:
    """The k-bisimilarity type of a pointed model.

    ``cell`` lists ``(variable, value)`` pairs sorted by variable name;
    ``successors`` holds the distinct level-(k-1) types of successor worlds
    in canonical order.
    """

    __slots__ = ("level", "cell", "successors", "key", "_hash", "__weakref__")

    def __init__(self, level, cell, successors, key):
        self.level = level
        self.cell = cell
        self.successors = successors
        self.key = key
        self._hash = hash(key)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, CanonicalType):
            return NotImplemented
        return self._hash == other._hash and self.key == other.key

    def __lt__(self, other: CanonicalType) -> bool:
        return self.key < other.key

    def serialize(self) -> str:
        lits = ",".join(v if b else "!" + v for v, b in self.cell)
        if self.level == 0:
            return f"({lits})"
        inner = ",".join(s.serialize() for s in self.successors)
        return f"({lits}){{{inner}}}"

    def __repr__(self) -> str:
        return f"CanonicalType[{self.level}]{self.serialize()}"


_interned: "weakref.WeakValueDictionary[tuple, CanonicalType]" = weakref.WeakValueDictionary()


def make_type(
    cell: Iterable[tuple[str, bool]], successors: Iterable[CanonicalType] = (), level: int = 0
) -> CanonicalType:
    """Interned constructor; ``successors`` must be level ``level - 1`` types."""
    cell = tuple(sorted(cell))
    succ = tuple(sorted(set(successors), key=lambda t: t.key)) if level else ()
    for s in succ:
        if s.level != level - 1:
            raise ValueError("successor types must be one level lower")
    # true literals sort first
    key = (level, tuple((v, 0 if b else 1) for v, b in cell), tuple(s.key for s in succ))
    t = _interned.get(key)
    if t is None:
        t = CanonicalType(level, cell, succ, key)
        _interned[key] = t
    return t


def ktypes(model: KripkeModel, k: int) -> list[CanonicalType]:
    """Level-k types of all worlds, bottom-up in k rounds."""
    if k < 0:
        raise ValueError("k must be non-negative")
    names = sorted(model.variables)
    cells = [tuple((v, bool(model.val[v] >> w & 1)) for v in names) for w in range(len(model))]
    level = [make_type(c) for c in cells]
    for j in range(1, k + 1):
        seen: dict = {}
        nxt = []
        for w in range(len(model)):
            succ = frozenset(level[s] for s in bits(model.succ[w]))
            sig = (cells[w], succ)
            t = seen.get(sig)
            if t is None:
                t = seen[sig] = make_type(cells[w], succ, j)
            nxt.append(t)
        level = nxt
    return level


def ktype(model: KripkeModel, w: str | int, k: int) -> CanonicalType:
    return ktypes(model, k)[model.world(w)]


def _nonempty(*teams: Team) -> None:
    if any(t == 0 for t in teams):
        raise EmptyTeamError("teams must be nonempty")


def team_kbisim(m1: KripkeModel, t1: Team, m2: KripkeModel, t2: Team, k: int) -> bool:
    """Every world of each team has a k-bisimilar partner in the other team."""
    _nonempty(t1, t2)
    union, left, right = disjoint_union(m1, m2)
    types = ktypes(union, k)
    a = {types[i] for i in bits(shift_team(t1, left))}
    b = {types[i] for i in bits(shift_team(t2, right))}
    return a == b


def bisim_classes(model: KripkeModel) -> list[int]:
    """Coarsest stable partition (block id per world) by naive refinement."""
    names = sorted(model.variables)
    ids: dict = {}
    block = [ids.setdefault(tuple(model.val[v] >> w & 1 for v in names), len(ids))
             for w in range(len(model))]
    count = len(ids)
    while True:
        ids = {}
        refined = [
            ids.setdefault(
                (block[w], frozenset(block[s] for s in bits(model.succ[w]))), len(ids)
            )
            for w in range(len(model))
        ]
        if len(ids) == count:
            return refined
        block, count = refined, len(ids)


def team_full_bisim(m1: KripkeModel, t1: Team, m2: KripkeModel, t2: Team) -> bool:
    _nonempty(t1, t2)
    union, left, right = disjoint_union(m1, m2)
    block = bisim_classes(union)
    a = {block[i] for i in bits(shift_team(t1, left))}
    b = {block[i] for i in bits(shift_team(t2, right))}
    return a == b


def distinguishing_k(
    m1: KripkeModel, t1: Team, m2: KripkeModel, t2: Team, kmax: int
) -> int | None:
    """Smallest k <= kmax at which the teams stop being k-bisimilar, if any."""
    if kmax < 0:
        raise ValueError("kmax must be non-negative")
    _nonempty(t1, t2)
    if team_kbisim(m1, t1, m2, t2, kmax):
        return None
    lo, hi = 0, kmax  # invariant: not k-bisimilar at hi
    while lo < hi:
        mid = (lo + hi) // 2
        if team_kbisim(m1, t1, m2, t2, mid):
            lo = mid + 1
        else:
            hi = mid
    return lo


@dataclass(frozen=True)
class BisimVerdict:
    bisimilar: bool
    k: int | None = None
    separating: Formula | None = None


def compare(
    m1: KripkeModel, t1: Team, m2: KripkeModel, t2: Team, kmax: int | None = None
) -> BisimVerdict:
    """Decide (k-)bisimilarity and, when it fails, give a separating formula.

    Without ``kmax`` full bisimilarity is decided.  The separating formula is
    the level-k characteristic formula of the first team, which holds there
    and fails on the second.
    """
    from .hintikka import hintikka_team

    if kmax is None:
        if team_full_bisim(m1, t1, m2, t2):
            return BisimVerdict(True)
        kmax = len(m1) + len(m2)
    k = distinguishing_k(m1, t1, m2, t2, kmax)
    if k is None:
        return BisimVerdict(True)
    return BisimVerdict(False, k, hintikka_team(m1, t1, k))


def type_profile(types: Sequence[CanonicalType], team: Team) -> frozenset[CanonicalType]:
    return frozenset(types[i] for i in bits(team))
