"""Characteristic formulas and the property-to-formula construction.

All generated conjunctions and disjunctions are ordered by canonical type,
so k-bisimilar inputs produce identical formulas.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .bisim import CanonicalType, EmptyTeamError, ktype, ktypes, make_type, type_profile
from .formula import (
    Box,
    Diamond,
    Exists,
    Formula,
    NegAtom,
    PropAtom,
    And,
    classical_disj,
    conj,
    split_disj,
)
from .kripke import KripkeModel, Team

# guards count_types against astronomically large exponents
MAX_TYPE_BITS = 1 << 20


@functools.lru_cache(maxsize=1 << 16)
def formula_for_type(t: CanonicalType) -> Formula:
    """The Hintikka formula of a canonical type.

    Its modal depth is at most ``t.level``; it is smaller when every path from
    the world ends early, since a world without successors contributes ``[]bot``.
    """
    literals = [PropAtom(v) if b else NegAtom(v) for v, b in t.cell]
    if t.level == 0:
        return conj(literals)
    below = [formula_for_type(s) for s in t.successors]
    parts = literals + [Diamond(f) for f in below] + [Box(split_disj(below))]
    return conj(parts)


def hintikka_world(model: KripkeModel, w: str | int, k: int) -> Formula:
    return formula_for_type(ktype(model, w, k))


def team_type_set(model: KripkeModel, team: Team, k: int) -> frozenset[CanonicalType]:
    if team == 0:
        raise EmptyTeamError("the empty team has no characteristic formula")
    return type_profile(ktypes(model, k), team)


def type_set_formulas(types: Iterable[CanonicalType]) -> tuple[Formula, ...]:
    return tuple(formula_for_type(t) for t in sorted(types, key=lambda t: t.key))


def hintikka_team_set(model: KripkeModel, team: Team, k: int) -> tuple[Formula, ...]:
    """Distinct Hintikka formulas of the team's worlds, in canonical order."""
    return type_set_formulas(team_type_set(model, team, k))


def chi(formulas: Sequence[Formula]) -> Formula:
    """``(AND of E phi) & (split-OR of phi)`` over a Hintikka set."""
    return And(conj([Exists(f) for f in formulas]), split_disj(formulas))


def hintikka_team(model: KripkeModel, team: Team, k: int) -> Formula:
    return chi(hintikka_team_set(model, team, k))


@dataclass
class PropertyClass:
    """Finite representatives of a k-bisimulation invariant team property."""

    members: list[tuple[KripkeModel, Team]]
    k: int

    def __post_init__(self):
        self.members = list(self.members)
        if self.k < 0:
            raise ValueError("k must be non-negative")
        universes = {frozenset(m.variables) for m, _ in self.members}
        if len(universes) > 1:
            raise ValueError("all members must share one variable universe")
        for _, t in self.members:
            if t == 0:
                raise EmptyTeamError("property members must have nonempty teams")


def _typeset_key(ts: frozenset[CanonicalType]):
    return tuple(t.key for t in sorted(ts, key=lambda t: t.key))


def distinct_type_sets(prop: PropertyClass) -> list[frozenset[CanonicalType]]:
    return sorted({team_type_set(m, t, prop.k) for m, t in prop.members}, key=_typeset_key)


def express_property(prop: PropertyClass) -> Formula:
    """Classical disjunction of the distinct team characteristic formulas of the members."""
    if not prop.members:
        raise ValueError("property class is empty")
    return classical_disj([chi(type_set_formulas(ts)) for ts in distinct_type_sets(prop)])


def count_types(nvars: int, k: int) -> int:
    """Number of k-bisimilarity types over ``nvars`` variables: t0 = 2^n, t(j+1) = 2^n * 2^t(j)."""
    if nvars < 0 or k < 0:
        raise ValueError("nvars and k must be non-negative")
    t = 1 << nvars
    for _ in range(k):
        exponent = nvars + t
        if exponent > MAX_TYPE_BITS:
            raise OverflowError(f"type count at level {k} exceeds 2^{MAX_TYPE_BITS}")
        t = 1 << exponent
    return t


def all_types(variables: Sequence[str], k: int) -> Iterator[CanonicalType]:
    """Every level-k type over ``variables``, in canonical order."""
    total = count_types(len(variables), k)
    if total > 1 << 16:
        raise OverflowError(f"{total} types at level {k}; refusing to enumerate")
    names = sorted(variables)
    cells = [
        tuple((v, bool(mask >> i & 1)) for i, v in enumerate(names))
        for mask in range(1 << len(names))
    ]
    level = [make_type(c) for c in cells]
    for j in range(1, k + 1):
        nxt = []
        for c in cells:
            for sel in range(1 << len(level)):
                succ = [t for i, t in enumerate(level) if sel >> i & 1]
                nxt.append(make_type(c, succ, j))
        level = nxt
    return iter(sorted(level, key=lambda t: t.key))
