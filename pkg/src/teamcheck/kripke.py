"""Finite Kripke models and teams.

Worlds are addressed by index in file order; a team is an ``int`` bitmask
over those indices (bit ``i`` set means world ``i`` is a member).
"""

from __future__ import annotations

import json
import random
from typing import Iterable, Iterator, Mapping, Sequence

Team = int


class ModelError(ValueError):
    """Malformed model or team data."""


def bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def subsets(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, from the empty set upwards in numeric order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


class KripkeModel:
    """A model ``(W, R, pi)`` over a declared variable universe."""

    __slots__ = ("worlds", "variables", "succ", "pred", "val", "index", "full", "_edges")

    def __init__(
        self,
        worlds: Sequence[str],
        edges: Iterable[tuple[str, str]] = (),
        valuation: Mapping[str, Iterable[str]] | None = None,
        variables: Sequence[str] | None = None,
    ) -> None:
        worlds = tuple(worlds)
        if not worlds:
            raise ModelError("a model needs at least one world")
        index = {}
        for i, w in enumerate(worlds):
            if not isinstance(w, str):
                raise ModelError(f"world names must be strings: {w!r}")
            if w in index:
                raise ModelError(f"duplicate world {w!r}")
            index[w] = i
        valuation = dict(valuation or {})
        if variables is None:
            variables = sorted(valuation)
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ModelError("duplicate variable names")
        for v in valuation:
            if v not in variables:
                raise ModelError(f"valuation for undeclared variable {v!r}")

        def lookup(w: str, what: str) -> int:
            try:
                return index[w]
            except (KeyError, TypeError):
                raise ModelError(f"{what} refers to undeclared world {w!r}") from None

        succ = [0] * len(worlds)
        pred = [0] * len(worlds)
        edge_set = set()
        for edge in edges:
            if len(edge) != 2:
                raise ModelError(f"edge must be a pair: {edge!r}")
            a, b = lookup(edge[0], "edge"), lookup(edge[1], "edge")
            succ[a] |= 1 << b
            pred[b] |= 1 << a
            edge_set.add((a, b))
        val = {}
        for v in variables:
            mask = 0
            for w in valuation.get(v, ()):
                mask |= 1 << lookup(w, f"valuation of {v!r}")
            val[v] = mask

        self.worlds = worlds
        self.variables = variables
        self.succ = tuple(succ)
        self.pred = tuple(pred)
        self.val = val
        self.index = index
        self.full = (1 << len(worlds)) - 1
        self._edges = frozenset(edge_set)

    @classmethod
    def from_masks(cls, worlds, succ, val, variables) -> KripkeModel:
        """Build directly from successor masks and valuation masks."""
        edges = [(worlds[a], worlds[b]) for a in range(len(worlds)) for b in bits(succ[a])]
        valuation = {v: [worlds[i] for i in bits(val[v])] for v in variables}
        return cls(worlds, edges, valuation, variables)

    def __len__(self) -> int:
        return len(self.worlds)

    @property
    def edges(self) -> list[tuple[str, str]]:
        return [(self.worlds[a], self.worlds[b]) for a, b in sorted(self._edges)]

    def team(self, names: Iterable[str]) -> Team:
        mask = 0
        for w in names:
            if w not in self.index:
                raise ModelError(f"team refers to undeclared world {w!r}")
            mask |= 1 << self.index[w]
        return mask

    def team_names(self, team: Team) -> list[str]:
        return [self.worlds[i] for i in bits(team)]

    def world(self, w: str | int) -> int:
        if isinstance(w, int):
            if not 0 <= w < len(self.worlds):
                raise ModelError(f"no world with index {w}")
            return w
        try:
            return self.index[w]
        except KeyError:
            raise ModelError(f"undeclared world {w!r}") from None

    def cell(self, w: int) -> tuple[bool, ...]:
        """Truth values of the declared variables at world ``w``, in declaration order."""
        return tuple(bool(self.val[v] >> w & 1) for v in self.variables)

    def _canonical(self):
        names = self.worlds
        return (
            frozenset(self.variables),
            frozenset(names),
            frozenset((names[a], names[b]) for a, b in self._edges),
            frozenset((v, frozenset(self.team_names(m))) for v, m in self.val.items()),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KripkeModel):
            return NotImplemented
        return self._canonical() == other._canonical()

    def __hash__(self) -> int:
        return hash(self._canonical())

    def __repr__(self) -> str:
        val = {v: self.team_names(m) for v, m in self.val.items()}
        return f"KripkeModel(worlds={list(self.worlds)}, edges={self.edges}, valuation={val})"

    def to_dict(self, teams: Mapping[str, Team] | None = None) -> dict:
        d = {
            "variables": list(self.variables),
            "worlds": list(self.worlds),
            "edges": [list(e) for e in self.edges],
            "valuation": {v: self.team_names(self.val[v]) for v in self.variables},
        }
        if teams:
            d["teams"] = {name: self.team_names(t) for name, t in teams.items()}
        return d


_MODEL_KEYS = {"variables", "worlds", "edges", "valuation", "teams"}


def model_from_dict(data: Mapping) -> tuple[KripkeModel, dict[str, Team]]:
    if not isinstance(data, Mapping):
        raise ModelError("model file must hold a JSON object")
    unknown = set(data) - _MODEL_KEYS
    if unknown:
        raise ModelError(f"unknown keys in model file: {sorted(unknown)}")
    for key in ("variables", "worlds"):
        if key not in data:
            raise ModelError(f"model file lacks {key!r}")
    variables = data["variables"]
    if not isinstance(variables, list) or not all(isinstance(v, str) for v in variables):
        raise ModelError("'variables' must be a list of names")
    worlds = data["worlds"]
    if not isinstance(worlds, list):
        raise ModelError("'worlds' must be a list of names")
    valuation = data.get("valuation", {})
    if not isinstance(valuation, Mapping):
        raise ModelError("'valuation' must be an object")
    model = KripkeModel(worlds, data.get("edges", []), valuation, variables)
    teams_raw = data.get("teams", {})
    if not isinstance(teams_raw, Mapping):
        raise ModelError("'teams' must be an object")
    teams = {}
    for name, members in teams_raw.items():
        if len(set(members)) != len(members):
            raise ModelError(f"team {name!r} lists a world twice")
        teams[name] = model.team(members)
    return model, teams


def load_model(data: bytes | str) -> tuple[KripkeModel, dict[str, Team]]:
    """Decode a JSON model file into a model and its named teams."""
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ModelError(f"invalid JSON: {exc}") from None
    return model_from_dict(raw)


def save_model(model: KripkeModel, teams: Mapping[str, Team] | None = None) -> bytes:
    return (json.dumps(model.to_dict(teams), indent=2) + "\n").encode()


def image(model: KripkeModel, team: Team) -> Team:
    """Successor set of a team."""
    out = 0
    succ = model.succ
    for i in bits(team):
        out |= succ[i]
    return out


def neighborhood(
    model: KripkeModel, team: Team, d: int, undirected: bool = False
) -> tuple[KripkeModel, Team]:
    """Restrict ``model`` to worlds within distance ``d`` of the team.

    Distance follows edges forward unless ``undirected`` is set.  The team
    is carried over into the restricted model.
    """
    if d < 0:
        raise ValueError("distance bound must be non-negative")
    reach = team
    frontier = team
    for _ in range(d):
        step = 0
        for i in bits(frontier):
            step |= model.succ[i]
            if undirected:
                step |= model.pred[i]
        frontier = step & ~reach
        if not frontier:
            break
        reach |= frontier
    return restrict(model, reach, team)


def restrict(model: KripkeModel, keep: Team, team: Team = 0) -> tuple[KripkeModel, Team]:
    """Submodel induced by the worlds in ``keep``; ``team`` is re-indexed."""
    kept = list(bits(keep))
    names = [model.worlds[i] for i in kept]
    edges = [
        (model.worlds[a], model.worlds[b]) for a in kept for b in bits(model.succ[a] & keep)
    ]
    valuation = {v: model.team_names(model.val[v] & keep) for v in model.variables}
    sub = KripkeModel(names, edges, valuation, model.variables)
    return sub, sub.team(model.team_names(team & keep))


def disjoint_union(
    m1: KripkeModel, m2: KripkeModel
) -> tuple[KripkeModel, list[int], list[int]]:
    """Side-by-side union; returns the model and the index maps of both sides."""
    if set(m1.variables) != set(m2.variables):
        raise ModelError(
            f"variable universes differ: {sorted(m1.variables)} vs {sorted(m2.variables)}"
        )
    n1 = len(m1)
    worlds = [f"1.{w}" for w in m1.worlds] + [f"2.{w}" for w in m2.worlds]
    succ = list(m1.succ) + [s << n1 for s in m2.succ]
    val = {v: m1.val[v] | (m2.val[v] << n1) for v in m1.variables}
    union = KripkeModel.from_masks(worlds, succ, val, m1.variables)
    return union, list(range(n1)), [n1 + i for i in range(len(m2))]


def shift_team(team: Team, mapping: Sequence[int]) -> Team:
    out = 0
    for i in bits(team):
        out |= 1 << mapping[i]
    return out


def random_model(
    seed: int, n_worlds: int, edge_prob: float, variables: Sequence[str]
) -> KripkeModel:
    """Random model with independent edges and fair-coin valuation, reproducible per seed."""
    if n_worlds < 1:
        raise ValueError("n_worlds must be at least 1")
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError("edge_prob must lie in [0, 1]")
    rng = random.Random(seed)
    worlds = [f"w{i}" for i in range(n_worlds)]
    edges = [(a, b) for a in worlds for b in worlds if rng.random() < edge_prob]
    valuation = {v: [w for w in worlds if rng.random() < 0.5] for v in variables}
    return KripkeModel(worlds, edges, valuation, variables)
