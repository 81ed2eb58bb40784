"""Brute-force verification over small models.

Models are enumerated exhaustively up to isomorphism for small world
counts and sampled beyond that.  Every check returns a :class:`CheckReport`;
falsified reports carry a serializable :class:`Counterexample` that
:func:`replay` re-evaluates from scratch.
"""

from __future__ import annotations

import functools
import itertools
import json
import random
import time
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Iterator, Sequence

from . import formula as fm
from .bisim import ktypes, team_full_bisim, team_kbisim
from .fo import (
    AtomRegistry,
    FOEvaluator,
    _chi_fo,
    chi_to_fo,
    eval_fo,
    standard_translation,
    theorem8_atom,
    to_structure,
)
from .hintikka import (
    PropertyClass,
    all_types,
    chi,
    count_types,
    express_property,
    formula_for_type,
    hintikka_team,
    hintikka_team_set,
    type_set_formulas,
)
from .kripke import KripkeModel, Team, bits, model_from_dict, neighborhood, random_model, subsets
from .semantics import EvalConfig, Evaluator, TeamTooLargeError

VERIFIED = "verified-in-bounds"
FALSIFIED = "falsified"
SKIPPED = "skipped"

_TAGS = {VERIFIED: "VERIFIED", FALSIFIED: "FALSIFIED", SKIPPED: "SKIPPED"}

CLOSURE_PROPERTIES = ("flat", "downward-closed", "union-closed", "empty-team")


class OracleError(ValueError):
    pass


@dataclass(frozen=True)
class Bounds:
    """Search limits.  Models up to ``exhaustive_worlds`` worlds are enumerated,
    larger ones (up to ``max_worlds``) are drawn at random, ``model_samples`` per size."""

    max_worlds: int = 3
    variables: tuple[str, ...] = ("p", "q")
    max_teams: int | None = None
    max_depth: int = 2
    max_size: int = 12
    exhaustive_size: int = 5
    samples: int = 1000
    seed: int = 0
    exhaustive_worlds: int = 3
    model_samples: int = 200

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        for name in ("max_worlds", "max_size", "exhaustive_size", "exhaustive_worlds"):
            if getattr(self, name) < 1:
                raise OracleError(f"{name} must be positive")
        for name in ("max_depth", "samples", "model_samples"):
            if getattr(self, name) < 0:
                raise OracleError(f"{name} must be non-negative")
        if self.max_teams is not None and self.max_teams < 1:
            raise OracleError("max_teams must be positive")
        if len(set(self.variables)) != len(self.variables):
            raise OracleError("duplicate variable names")

    def with_(self, **changes) -> Bounds:
        return replace(self, **changes)

    def describe(self, variables: Sequence[str] | None = None) -> str:
        worlds = f"<={self.max_worlds} worlds"
        if self.max_worlds > self.exhaustive_worlds:
            worlds += f" (sampled above {self.exhaustive_worlds})"
        return f"{worlds} over {{{','.join(variables or self.variables)}}}"


# ---------------------------------------------------------------------------
# reports

@dataclass
class Counterexample:
    """A single failing instance in replayable form.

    ``models`` are model-file dictionaries (teams included), ``formulas``
    are in the formula grammar, ``params`` hold the remaining inputs.
    """

    kind: str
    models: list[dict]
    formulas: list[str] = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "models": self.models,
            "formulas": self.formulas,
            "params": self.params,
        }

    @classmethod
    def from_dict(cls, d: dict) -> Counterexample:
        return cls(d["kind"], list(d["models"]), list(d.get("formulas", [])), dict(d.get("params", {})))


@dataclass
class CheckReport:
    claim: str
    verdict: str
    instances: int = 0
    detail: str = ""
    counterexample: Counterexample | None = None
    seconds: float = 0.0

    @property
    def falsified(self) -> bool:
        return self.verdict == FALSIFIED

    def line(self, timing: bool = False) -> str:
        text = f"{_TAGS[self.verdict]:<9} {self.claim}: {self.detail} [{self.instances} instances]"
        if timing:
            text += f" ({self.seconds:.2f}s)"
        return text

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "claim": self.claim,
            "verdict": self.verdict,
            "instances": self.instances,
            "detail": self.detail,
            "counterexample": self.counterexample.to_dict() if self.counterexample else None,
        }
        if timing:
            d["seconds"] = round(self.seconds, 3)
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True)


def _model_entry(model: KripkeModel, **teams: Team) -> dict:
    return model.to_dict(teams or None) | ({} if teams else {"teams": {}})


def _config_params(config: EvalConfig) -> dict:
    return {"mutate_diamond": True} if config.mutate_diamond else {}


class _Timer:
    def __init__(self):
        self.start = time.perf_counter()

    def report(self, claim, verdict, instances, detail, cx=None) -> CheckReport:
        return CheckReport(claim, verdict, instances, detail, cx, time.perf_counter() - self.start)


# ---------------------------------------------------------------------------
# model and team enumeration

def _encode(succ, cells, perm, n):
    # perm[old] = new position
    new_cells = [0] * n
    new_succ = [0] * n
    for old in range(n):
        new = perm[old]
        new_cells[new] = cells[old]
        s = 0
        for b in bits(succ[old]):
            s |= 1 << perm[b]
        new_succ[new] = s
    return tuple(new_cells), tuple(new_succ)


@functools.lru_cache(maxsize=64)
def _canonical_models(n: int, variables: tuple[str, ...], edges: bool) -> tuple[KripkeModel, ...]:
    """One representative per isomorphism class of n-world models."""
    nv = len(variables)
    perms = list(itertools.permutations(range(n)))[1:]
    ident = tuple(range(n))
    worlds = [f"w{i + 1}" for i in range(n)]
    row = (1 << n) - 1
    cellmask = (1 << nv) - 1
    out = []
    for cells_code in range(1 << (n * nv)):
        cells = [(cells_code >> (w * nv)) & cellmask for w in range(n)]
        for adj in range(1 << (n * n)) if edges else (0,):
            succ = [(adj >> (a * n)) & row for a in range(n)]
            code = _encode(succ, cells, ident, n)
            if any(_encode(succ, cells, p, n) < code for p in perms):
                continue
            val = {
                v: sum(1 << w for w in range(n) if cells[w] >> i & 1)
                for i, v in enumerate(variables)
            }
            out.append(KripkeModel.from_masks(worlds, succ, val, variables))
    return tuple(out)


def enumerate_models(
    bounds: Bounds,
    variables: Sequence[str] | None = None,
    *,
    edges: bool = True,
    min_worlds: int = 1,
    max_worlds: int | None = None,
) -> Iterator[KripkeModel]:
    """Deterministic model stream: exhaustive up to isomorphism, then seeded samples."""
    variables = tuple(bounds.variables if variables is None else variables)
    top = bounds.max_worlds if max_worlds is None else max_worlds
    for n in range(min_worlds, top + 1):
        if n <= bounds.exhaustive_worlds:
            yield from _canonical_models(n, variables, edges)
        else:
            for i in range(bounds.model_samples):
                seed = hash((bounds.seed, n, i)) & 0xFFFFFFFF
                yield random_model(seed, n, 0.4 if edges else 0.0, variables)


def count_models(bounds: Bounds, variables=None, *, edges: bool = True) -> int:
    return sum(1 for _ in enumerate_models(bounds, variables, edges=edges))


def enumerate_teams(model: KripkeModel, bounds: Bounds | None = None, include_empty: bool = False) -> list[Team]:
    teams = list(range(1, model.full + 1))
    if bounds is not None and bounds.max_teams is not None:
        teams = teams[: bounds.max_teams]
    return ([0] if include_empty else []) + teams


# ---------------------------------------------------------------------------
# formula enumeration and sampling

def _leaves(variables: Sequence[str]) -> list[fm.Formula]:
    return [fm.TOP, fm.BOT] + [fm.PropAtom(v) for v in variables] + [fm.NegAtom(v) for v in variables]


def ml_formulas(variables: Sequence[str], max_depth: int, max_size: int) -> list[fm.Formula]:
    """Every ML formula up to ``max_size`` nodes and modal depth ``max_depth``, smallest first."""
    return enumerate_formulas(variables, max_size, max_depth)


def enumerate_formulas(
    variables: Sequence[str],
    max_size: int,
    max_depth: int | None = None,
    *,
    lor: bool = False,
    indep: bool = False,
    incl: bool = False,
) -> list[fm.Formula]:
    """Exhaustive enumeration by node count.

    Atom arguments range over literals and constants only; ``indep``
    arguments are enumerated as sets with nonempty outer lists.
    """
    leaves = _leaves(variables)
    depth_cap = max_depth if max_depth is not None else max_size
    # by_size[s] = list of (formula, depth, is_ml)
    by_size: dict[int, list[tuple[fm.Formula, int, bool]]] = {1: [(f, 0, True) for f in leaves]}
    for s in range(2, max_size + 1):
        cur = []
        for f, d, ml in by_size[s - 1]:
            if d < depth_cap:
                cur.append((fm.Diamond(f), d + 1, ml))
                cur.append((fm.Box(f), d + 1, ml))
        for a in range(1, s - 1):
            for f, df, mf in by_size[a]:
                for g, dg, mg in by_size[s - 1 - a]:
                    d = max(df, dg)
                    cur.append((fm.And(f, g), d, mf and mg))
                    cur.append((fm.SplitOr(f, g), d, mf and mg))
                    if lor:
                        cur.append((fm.ClassicalOr(f, g), d, False))
        if indep:
            cur.extend((a, 0, False) for a in _indep_atoms(leaves, s - 1))
        if incl and (s - 1) % 2 == 0:
            width = (s - 1) // 2
            for lhs in itertools.product(leaves, repeat=width):
                for rhs in itertools.product(leaves, repeat=width):
                    cur.append((fm.Incl(lhs, rhs), 0, False))
        by_size[s] = cur
    return [f for s in range(1, max_size + 1) for f, _, _ in by_size[s]]


def _indep_atoms(leaves, nargs):
    for np_ in range(1, nargs):
        for nq in range(1, nargs - np_ + 1):
            nr = nargs - np_ - nq
            for p in itertools.combinations(leaves, np_):
                for q in itertools.combinations(leaves, nq):
                    for r in itertools.combinations(leaves, nr):
                        yield fm.Indep(p, r, q)


def _composition(rng: random.Random, total: int, parts: int) -> list[int]:
    """Random positive integers summing to ``total``."""
    cuts = sorted(rng.sample(range(1, total), parts - 1)) if parts > 1 else []
    edges = [0, *cuts, total]
    return [b - a for a, b in zip(edges, edges[1:])]


class FormulaSampler:
    """Random formulas of an exact node count over chosen connectives.

    ``features`` uses the fragment feature names: ``lor``, ``dep``,
    ``indep``, ``incl``, ``neg``, ``exists``, ``tensor``, ``impl``.
    """

    def __init__(
        self,
        variables: Sequence[str],
        features: Iterable[str] = (),
        seed: int = 0,
        max_depth: int | None = None,
    ) -> None:
        self.variables = tuple(variables)
        self.features = frozenset(features)
        unknown = self.features - {"lor", "dep", "indep", "incl", "neg", "exists", "tensor", "impl"}
        if unknown:
            raise OracleError(f"unknown features {sorted(unknown)}")
        self.rng = random.Random(seed)
        self.max_depth = max_depth
        self.leaves = _leaves(self.variables)

    def ml(self, size: int, depth: int | None = None) -> fm.Formula:
        return self._build(size, depth if depth is not None else self.max_depth, ml_only=True)

    def formula(self, size: int) -> fm.Formula:
        return self._build(size, self.max_depth, ml_only=False)

    def _build(self, size: int, depth: int | None, ml_only: bool) -> fm.Formula:
        rng = self.rng
        if size <= 1:
            return rng.choice(self.leaves)
        feats = frozenset() if ml_only else self.features
        options = ["and", "or"] if size >= 3 else []
        if depth is None or depth > 0:
            options += ["dia", "box"]
        if size >= 3:
            options += [k for k in ("lor", "tensor", "impl") if k in feats]
        options += [k for k in ("neg", "exists") if k in feats]
        if "dep" in feats:
            options.append("dep")
        if "indep" in feats and size >= 3:
            options.append("indep")
        if "incl" in feats and size >= 3:
            options.append("incl")
        if not options:
            return rng.choice(self.leaves)
        kind = rng.choice(options)
        sub_depth = None if depth is None else depth - 1
        if kind in ("dia", "box"):
            node = fm.Diamond if kind == "dia" else fm.Box
            return node(self._build(size - 1, sub_depth, ml_only))
        if kind == "neg":
            return fm.ClassicalNeg(self._build(size - 1, depth, ml_only))
        if kind == "exists":
            return fm.Exists(self.ml(size - 1, depth))
        if kind in ("and", "or", "lor", "tensor", "impl"):
            node = {"and": fm.And, "or": fm.SplitOr, "lor": fm.ClassicalOr,
                    "tensor": fm.Tensor, "impl": fm.IntImpl}[kind]
            left = rng.randint(1, size - 2)
            return node(self._build(left, depth, ml_only), self._build(size - 1 - left, depth, ml_only))
        if kind == "dep":
            nargs = rng.randint(1, min(3, size - 1))
            return fm.Dep([self.ml(s, depth) for s in _composition(rng, size - 1, nargs)])
        if kind == "indep":
            nargs = rng.randint(2, min(4, size - 1))
            args = [self.ml(s, depth) for s in _composition(rng, size - 1, nargs)]
            np_ = rng.randint(1, nargs - 1)
            nq = rng.randint(1, nargs - np_)
            return fm.Indep(args[:np_], args[np_ + nq:], args[np_:np_ + nq])
        if kind == "incl":
            width = rng.randint(1, (size - 1) // 2)
            args = [self.ml(s, depth) for s in _composition(rng, size - 1, 2 * width)]
            return fm.Incl(args[:width], args[width:])
        raise AssertionError(kind)


# ---------------------------------------------------------------------------
# replay

def _evaluator(model: KripkeModel, params: dict, strategy: str = "flat") -> Evaluator:
    return Evaluator(model, EvalConfig(strategy=strategy, mutate_diamond=params.get("mutate_diamond", False)))


def replay(cx: Counterexample | dict, registry: AtomRegistry | None = None) -> bool:
    """Re-run a counterexample; True iff it still exhibits the failure."""
    if isinstance(cx, dict):
        cx = Counterexample.from_dict(cx)
    loaded = [model_from_dict(d) for d in cx.models]
    forms = [fm.parse(s, registry) for s in cx.formulas]
    p = cx.params
    m, teams = loaded[0]
    strategy = p.get("strategy", "flat")
    ev = _evaluator(m, p, strategy)
    kind = cx.kind
    if kind == "equiv":
        return ev.holds(teams["T"], forms[0]) != ev.holds(teams["T"], forms[1])
    if kind == "flat":
        t = teams["T"]
        return ev.holds(t, forms[0]) != all(ev.holds(1 << w, forms[0]) for w in bits(t))
    if kind == "pointwise":
        t = teams["T"]
        mask = Evaluator(m).truth_set(forms[0])
        return ev.holds(t, forms[0]) != (not t & ~mask)
    if kind == "downward-closed":
        return ev.holds(teams["T"], forms[0]) and not ev.holds(teams["S"], forms[0])
    if kind == "union-closed":
        t1, t2 = teams["T1"], teams["T2"]
        return ev.holds(t1, forms[0]) and ev.holds(t2, forms[0]) and not ev.holds(t1 | t2, forms[0])
    if kind == "empty-team":
        return not ev.holds(0, forms[0])
    if kind == "collapse":
        t = teams["T"]
        w = m.world(p["world"])
        return ev.holds(t, forms[0]) and not ev.holds(1 << w, forms[0])
    if kind == "separation":
        return not (ev.holds(teams["T1"], forms[0]) and not ev.holds(teams["T2"], forms[0]))
    if kind == "union-witness":
        t1, t2 = teams["T1"], teams["T2"]
        return not (ev.holds(t1, forms[0]) and ev.holds(t2, forms[0]) and not ev.holds(t1 | t2, forms[0]))
    if kind == "splitjunction":
        t = teams["T"]
        cover = 0
        for f in forms:
            cover |= ev.truth_set(f)
        return ev.holds(t, fm.split_disj(forms)) != (not t & ~cover)
    if kind in ("k-invariance", "full-invariance", "characterization", "chi-translation"):
        m2, teams2 = loaded[1]
        t1, t2 = teams["T"], teams2["T"]
        if kind == "full-invariance":
            same = team_full_bisim(m, t1, m2, t2)
        else:
            same = team_kbisim(m, t1, m2, t2, p["k"])
        if kind == "characterization":
            return ev.holds(t1, hintikka_team(m2, t2, p["k"])) != same
        if kind == "chi-translation":
            modal = ev.holds(t1, hintikka_team(m2, t2, p["k"]))
            return eval_fo(to_structure(m, t1), chi_to_fo(m2, t2, p["k"])) != modal
        ev2 = _evaluator(m2, p, strategy)
        return same and ev.holds(t1, forms[0]) != ev2.holds(t2, forms[0])
    if kind == "locality":
        t = teams["T"]
        sub, st = neighborhood(m, t, p["d"], p.get("undirected", False))
        return ev.holds(t, forms[0]) != _evaluator(sub, p, strategy).holds(st, forms[0])
    if kind == "standard-translation":
        w = p["world"]
        return eval_fo(to_structure(m, 0), standard_translation(forms[0]), {"x": w}) != ev.pointed(w, forms[0])
    if kind == "atom-agreement":
        atom = theorem8_atom(p["n"], p["m"])
        t = teams["T"]
        masks = [Evaluator(m).truth_set(f) for f in forms]
        return atom.holds_masks(t, masks, native=True) != atom.holds_masks(t, masks, native=False)
    raise OracleError(f"unknown counterexample kind {kind!r}")


# ---------------------------------------------------------------------------
# generic checks

def _teams_of(model, bounds, include_empty):
    return enumerate_teams(model, bounds, include_empty)


def equiv_many(
    pairs: Sequence[tuple[fm.Formula, fm.Formula]],
    bounds: Bounds,
    *,
    include_empty: bool = False,
    config: EvalConfig | None = None,
    claim: str = "equivalence",
    variables: Sequence[str] | None = None,
    edges: bool = True,
) -> CheckReport:
    """Each pair agrees on every (model, team) in bounds."""
    clock = _Timer()
    config = config or EvalConfig()
    n = 0
    try:
        for m in enumerate_models(bounds, variables, edges=edges):
            ev = Evaluator(m, config)
            for t in _teams_of(m, bounds, include_empty):
                for f, g in pairs:
                    n += 1
                    if ev.holds(t, f) != ev.holds(t, g):
                        cx = Counterexample(
                            "equiv", [_model_entry(m, T=t)], [fm.render(f), fm.render(g)],
                            _config_params(config),
                        )
                        return clock.report(claim, FALSIFIED, n, f"{fm.render(f)} vs {fm.render(g)}", cx)
    except TeamTooLargeError as exc:
        return clock.report(claim, SKIPPED, n, str(exc))
    teams = "all teams" if include_empty else "all nonempty teams"
    return clock.report(claim, VERIFIED, n, f"{len(pairs)} pair(s), {bounds.describe(variables)}, {teams}")


def equiv_check(f: fm.Formula, g: fm.Formula, bounds: Bounds, **kw) -> CheckReport:
    return equiv_many([(f, g)], bounds, **kw)


def closure_check(
    f: fm.Formula,
    prop: str,
    bounds: Bounds,
    *,
    config: EvalConfig | None = None,
    claim: str | None = None,
    variables: Sequence[str] | None = None,
) -> CheckReport:
    """Test flatness, downward closure, union closure or the empty team property."""
    if prop not in CLOSURE_PROPERTIES:
        raise OracleError(f"unknown property {prop!r}; choose from {', '.join(CLOSURE_PROPERTIES)}")
    claim = claim or prop
    clock = _Timer()
    config = config or EvalConfig()
    params = _config_params(config)
    n = 0
    text = fm.render(f)
    try:
        for m in enumerate_models(bounds, variables):
            ev = Evaluator(m, config)
            if prop == "empty-team":
                n += 1
                if not ev.holds(0, f):
                    cx = Counterexample("empty-team", [_model_entry(m)], [text], params)
                    return clock.report(claim, FALSIFIED, n, text, cx)
                continue
            teams = _teams_of(m, bounds, include_empty=True)
            sat = {t: ev.holds(t, f) for t in teams}
            for t in teams:
                if prop == "flat":
                    n += 1
                    if sat[t] != all(ev.holds(1 << w, f) for w in bits(t)):
                        cx = Counterexample("flat", [_model_entry(m, T=t)], [text], params)
                        return clock.report(claim, FALSIFIED, n, text, cx)
                elif prop == "downward-closed":
                    if not sat[t]:
                        continue
                    for s in subsets(t):
                        n += 1
                        if not ev.holds(s, f):
                            cx = Counterexample("downward-closed", [_model_entry(m, T=t, S=s)], [text], params)
                            return clock.report(claim, FALSIFIED, n, text, cx)
                elif prop == "union-closed":
                    if not sat[t]:
                        continue
                    for u in teams:
                        if u <= t or not sat[u]:
                            continue
                        n += 1
                        if not ev.holds(t | u, f):
                            cx = Counterexample("union-closed", [_model_entry(m, T1=t, T2=u)], [text], params)
                            return clock.report(claim, FALSIFIED, n, text, cx)
    except TeamTooLargeError as exc:
        return clock.report(claim, SKIPPED, n, str(exc))
    return clock.report(claim, VERIFIED, n, f"{text} is {prop}, {bounds.describe(variables)}")


def _type_key(types, team):
    return frozenset(types[i] for i in bits(team))


def _full_bisim_depth(bounds: Bounds) -> int:
    # refinement on a disjoint union of two models stabilizes within this many rounds
    return 2 * bounds.max_worlds


def invariance_check(
    prop: fm.Formula | Callable[[KripkeModel, Team], bool],
    mode: str | int,
    bounds: Bounds,
    *,
    d: int | None = None,
    undirected: bool = False,
    config: EvalConfig | None = None,
    claim: str | None = None,
    variables: Sequence[str] | None = None,
) -> CheckReport:
    """k-bisimulation invariance (``mode`` an int), full invariance (``"full"``)
    or d-locality (``"local"`` with ``d``), over nonempty teams.

    Bisimilar pairs are found by grouping teams on their canonical type sets,
    which is exactly team k-bisimilarity, so every bisimilar pair is covered.
    """
    clock = _Timer()
    config = config or EvalConfig()
    params = _config_params(config)
    if isinstance(prop, fm.Formula):
        formula = prop
        text = fm.render(prop)
        evaluators: dict = {}

        def member(m, t):
            ev = evaluators.get(id(m))
            if ev is None:
                ev = evaluators[id(m)] = (m, Evaluator(m, config))
            return ev[1].holds(t, formula)
    else:
        formula, text, member = None, getattr(prop, "__name__", "property"), prop
    forms = [text] if formula is not None else []
    n = 0
    try:
        if mode == "local":
            if d is None or d < 0:
                raise OracleError("locality needs a non-negative distance d")
            claim = claim or f"{d}-locality"
            for m in enumerate_models(bounds, variables):
                for t in _teams_of(m, bounds, False):
                    n += 1
                    sub, st = neighborhood(m, t, d, undirected)
                    if member(m, t) != member(sub, st):
                        cx = Counterexample(
                            "locality", [_model_entry(m, T=t)], forms,
                            params | {"d": d, "undirected": undirected},
                        )
                        return clock.report(claim, FALSIFIED, n, text, cx)
            return clock.report(claim, VERIFIED, n, f"{text} is {d}-local, {bounds.describe(variables)}")
        if mode == "full":
            depth, kind = _full_bisim_depth(bounds), "full-invariance"
            claim = claim or "bisimulation-invariance"
        elif isinstance(mode, int) and mode >= 0:
            depth, kind = mode, "k-invariance"
            claim = claim or f"{mode}-bisimulation-invariance"
        else:
            raise OracleError(f"bad invariance mode {mode!r}")
        groups: dict = {}
        for m in enumerate_models(bounds, variables):
            types = ktypes(m, depth)
            for t in _teams_of(m, bounds, False):
                n += 1
                key = _type_key(types, t)
                verdict = member(m, t)
                first = groups.setdefault(key, (m, t, verdict))
                if first[2] != verdict:
                    m0, t0, _ = first
                    p = params | ({"k": depth} if kind == "k-invariance" else {})
                    cx = Counterexample(kind, [_model_entry(m0, T=t0), _model_entry(m, T=t)], forms, p)
                    return clock.report(claim, FALSIFIED, n, text, cx)
        return clock.report(claim, VERIFIED, n, f"{text}, {len(groups)} bisimilarity classes, {bounds.describe(variables)}")
    except TeamTooLargeError as exc:
        return clock.report(claim, SKIPPED, n, str(exc))


def kbisimilar_bruteforce(m1: KripkeModel, w1: int, m2: KripkeModel, w2: int, k: int) -> bool:
    """Literal back-and-forth definition of k-bisimilarity between pointed models."""
    if sorted(m1.variables) != sorted(m2.variables):
        raise OracleError("variable universes differ")
    if any(bool(m1.val[v] >> w1 & 1) != bool(m2.val[v] >> w2 & 1) for v in m1.variables):
        return False
    if k == 0:
        return True
    for a in bits(m1.succ[w1]):
        if not any(kbisimilar_bruteforce(m1, a, m2, b, k - 1) for b in bits(m2.succ[w2])):
            return False
    for b in bits(m2.succ[w2]):
        if not any(kbisimilar_bruteforce(m1, a, m2, b, k - 1) for a in bits(m1.succ[w1])):
            return False
    return True


def team_kbisimilar_bruteforce(m1, t1, m2, t2, k) -> bool:
    forth = all(any(kbisimilar_bruteforce(m1, a, m2, b, k) for b in bits(t2)) for a in bits(t1))
    back = all(any(kbisimilar_bruteforce(m1, a, m2, b, k) for a in bits(t1)) for b in bits(t2))
    return forth and back


# ---------------------------------------------------------------------------
# claim checks

def check_flatness(bounds: Bounds, *, config: EvalConfig | None = None, formulas=None) -> CheckReport:
    """Team truth by the literal clauses equals pointwise classical truth, for ML formulas."""
    clock = _Timer()
    claim = "flatness"
    general = replace(config or EvalConfig(), strategy="general")
    if formulas is None:
        formulas = flatness_formulas(bounds)
    n = 0
    for m in enumerate_models(bounds):
        ev = Evaluator(m, general)
        teams = range(m.full + 1)
        downsets: dict[int, int] = {}
        for f in formulas:
            # pointed truth is strategy independent
            mask = ev.truth_set(f)
            want = downsets.get(mask)
            if want is None:
                want = downsets[mask] = sum(1 << t for t in teams if not t & ~mask)
            got = ev.team_table(f)
            n += len(teams)
            if got != want:
                t = (got ^ want).bit_length() - 1
                cx = Counterexample(
                    "pointwise", [_model_entry(m, T=t)], [fm.render(f)],
                    _config_params(general) | {"strategy": "general"},
                )
                return clock.report(claim, FALSIFIED, n, fm.render(f), cx)
    return clock.report(
        claim, VERIFIED, n,
        f"{len(formulas)} ML formulas of depth <={bounds.max_depth} "
        f"(all of size <={_flat_exhaustive(bounds)}, plus samples), {bounds.describe()}, all teams",
    )


def _flat_exhaustive(bounds: Bounds) -> int:
    return min(bounds.exhaustive_size, 4)


def flatness_formulas(bounds: Bounds) -> list[fm.Formula]:
    """Exhaustive small ML formulas plus seeded random ones up to ``max_size`` nodes."""
    base = ml_formulas(bounds.variables, bounds.max_depth, _flat_exhaustive(bounds))
    sampler = FormulaSampler(bounds.variables, seed=bounds.seed, max_depth=bounds.max_depth)
    seen = set(base)
    extra = []
    for i in range(bounds.samples // 4):
        f = sampler.ml(5 + i % max(1, bounds.max_size - 4))
        if f not in seen:
            seen.add(f)
            extra.append(f)
    return base + extra


def check_dep_desugaring(bounds: Bounds, *, config: EvalConfig | None = None) -> CheckReport:
    """Dependence atoms over 1 to 3 propositional arguments against their MTL rewriting."""
    names = bounds.variables
    pairs = []
    for n in (1, 2, 3):
        for args in itertools.product(names, repeat=n):
            f = fm.Dep([fm.PropAtom(a) for a in args])
            pairs.append((f, fm.desugar(f)))
    return equiv_many(pairs, bounds, include_empty=True, config=config, claim="dependence-desugaring")


def low_hintikka_formulas(variables: Sequence[str], level: int = 1) -> list[fm.Formula]:
    """Hintikka formulas of every level up to ``level``, in canonical order."""
    out = []
    for k in range(level + 1):
        out.extend(formula_for_type(t) for t in all_types(variables, k))
    return out


def check_splitjunction(
    bounds: Bounds, *, max_set: int = 8, config: EvalConfig | None = None
) -> CheckReport:
    """Split disjunction of a formula set holds iff every team world satisfies a member."""
    clock = _Timer()
    claim = "splitjunction"
    general = replace(config or EvalConfig(), strategy="general")
    pool = low_hintikka_formulas(("p",), 1)
    sets = [c for r in range(max_set + 1) for c in itertools.combinations(pool, r)]
    # right-nested disjunctions share suffix nodes so the evaluator memo reuses them
    nodes: dict = {(): fm.BOT}
    for s in sorted(sets, key=len):
        if s not in nodes:
            nodes[s] = s[0] if len(s) == 1 else fm.SplitOr(s[0], nodes[s[1:]])
    n = 0
    for m in enumerate_models(bounds, ("p",)):
        ev = Evaluator(m, general)
        pointed = Evaluator(m)
        masks = {f: pointed.truth_set(f) for f in pool}
        teams = range(m.full + 1)
        for s in sets:
            cover = 0
            for f in s:
                cover |= masks[f]
            want = sum(1 << t for t in teams if not t & ~cover)
            got = ev.team_table(nodes[s])
            n += len(teams)
            if got != want:
                t = (got ^ want).bit_length() - 1
                cx = Counterexample(
                    "splitjunction", [_model_entry(m, T=t)], [fm.render(f) for f in s],
                    _config_params(general) | {"strategy": "general"},
                )
                return clock.report(claim, FALSIFIED, n, f"set of {len(s)}", cx)
    return clock.report(
        claim, VERIFIED, n,
        f"{len(sets)} subsets (size <={max_set}) of the {len(pool)} level-<=1 Hintikka formulas, "
        f"<={bounds.max_worlds} worlds over {{p}}, all teams",
    )


@dataclass
class _TeamEntry:
    model: KripkeModel
    team: Team
    types: frozenset


def _team_entries(bounds: Bounds, variables, k: int) -> list[_TeamEntry]:
    out = []
    for m in enumerate_models(bounds, variables):
        types = ktypes(m, k)
        for t in _teams_of(m, bounds, False):
            out.append(_TeamEntry(m, t, _type_key(types, t)))
    return out


def _distinct(entries: list[_TeamEntry]) -> dict:
    reps: dict = {}
    for e in entries:
        reps.setdefault(e.types, e)
    return reps


def check_characterization(
    bounds: Bounds,
    *,
    ks: Sequence[int] = (0, 1, 2),
    config: EvalConfig | None = None,
    spot_checks: int = 300,
) -> CheckReport:
    """``M1,T1 |= chi(M2,T2)`` iff the teams are k-bisimilar, for every pair of teams.

    chi(M2,T2) depends only on the type set of T2, so each (M1,T1) is
    evaluated once per distinct type set and the verdict is compared with
    type-set equality; a deterministic sample of pairs re-derives
    bisimilarity with the literal back-and-forth definition.
    """
    clock = _Timer()
    claim = "team-characterization"
    config = config or EvalConfig()
    params = _config_params(config)
    variables = ("p",)
    n = 0
    evaluated = 0
    for k in ks:
        entries = _team_entries(bounds, variables, k)
        reps = _distinct(entries)
        chis = {ts: chi(type_set_formulas(ts)) for ts in reps}
        by_model: dict = {}
        for e in entries:
            by_model.setdefault(id(e.model), []).append(e)
        for group in by_model.values():
            ev = Evaluator(group[0].model, config)
            for ts, phi in chis.items():
                for e in group:
                    evaluated += 1
                    if ev.holds(e.team, phi) != (e.types == ts):
                        r = reps[ts]
                        cx = Counterexample(
                            "characterization",
                            [_model_entry(e.model, T=e.team), _model_entry(r.model, T=r.team)],
                            [fm.render(phi)], params | {"k": k},
                        )
                        return clock.report(claim, FALSIFIED, n + evaluated, f"k={k}", cx)
        n += len(entries) ** 2
        rng = random.Random(bounds.seed * 7919 + k)
        for _ in range(spot_checks):
            a, b = rng.choice(entries), rng.choice(entries)
            if rng.random() < 0.3:
                # bias toward bisimilar pairs
                b = reps[a.types]
            same = a.types == b.types
            if team_kbisimilar_bruteforce(a.model, a.team, b.model, b.team, k) != same or \
                    team_kbisim(a.model, a.team, b.model, b.team, k) != same:
                cx = Counterexample(
                    "characterization",
                    [_model_entry(a.model, T=a.team), _model_entry(b.model, T=b.team)],
                    [], params | {"k": k},
                )
                return clock.report(claim, FALSIFIED, n, f"k={k}: type sets disagree with bisimilarity", cx)
    return clock.report(
        claim, VERIFIED, n,
        f"all team pairs, k in {{{','.join(map(str, ks))}}}, <={bounds.max_worlds} worlds over {{p}} "
        f"({evaluated} distinct evaluations, {spot_checks * len(ks)} pairs re-checked by definition)",
    )


def _e_p_members(bounds: Bounds) -> list[tuple[KripkeModel, Team]]:
    e_p = fm.Exists(fm.PropAtom("p"))
    members = []
    for m in enumerate_models(bounds, ("p",), max_worlds=2):
        ev = Evaluator(m)
        members.extend((m, t) for t in _teams_of(m, None, False) if ev.holds(t, e_p))
    return members


def check_property_expression(bounds: Bounds, *, config: EvalConfig | None = None) -> CheckReport:
    """The formula built from the witnesses of "E p" defines "E p" on all nonempty teams."""
    clock = _Timer()
    claim = "property-expression"
    prop = PropertyClass(_e_p_members(bounds), 0)
    phi = express_property(prop)
    report = equiv_many(
        [(phi, fm.Exists(fm.PropAtom("p")))], bounds, config=config,
        claim=claim, variables=("p",),
    )
    report.detail = f"{len(prop.members)} witnesses (<=2 worlds), k=0; " + report.detail
    report.seconds = time.perf_counter() - clock.start
    return report


def check_standard_translation(
    bounds: Bounds,
    *,
    ks: Sequence[int] = (0, 1, 2),
    config: EvalConfig | None = None,
) -> CheckReport:
    """First-order translations agree with modal evaluation: pointed and team level.

    Every team is tested against the chi of every realized type set.
    """
    clock = _Timer()
    claim = "standard-translation"
    config = config or EvalConfig()
    params = _config_params(config)
    variables = ("p",)
    n = 0
    for k in ks:
        entries = _team_entries(bounds, variables, k)
        reps = _distinct(entries)
        chis = {ts: chi(type_set_formulas(ts)) for ts in reps}
        fos = {ts: _chi_fo(type_set_formulas(ts)) for ts in reps}
        pointed_formulas = sorted({f for ts in reps for f in type_set_formulas(ts)}, key=fm.render)
        sts = [standard_translation(f) for f in pointed_formulas]
        by_model: dict = {}
        for e in entries:
            by_model.setdefault(id(e.model), []).append(e)
        for group in by_model.values():
            m = group[0].model
            ev = Evaluator(m, config)
            fo_ev = FOEvaluator(to_structure(m, 0))
            for f, st in zip(pointed_formulas, sts):
                mask = ev.truth_set(f)
                for w in range(len(m)):
                    n += 1
                    if fo_ev.holds(st, {"x": m.worlds[w]}) != bool(mask >> w & 1):
                        cx = Counterexample(
                            "standard-translation", [_model_entry(m)], [fm.render(f)],
                            params | {"world": m.worlds[w]},
                        )
                        return clock.report(claim, FALSIFIED, n, "pointed", cx)
            for e in group:
                tev = fo_ev.rebind(to_structure(m, e.team))
                for ts in reps:
                    phi = chis[ts]
                    n += 1
                    if tev.holds(fos[ts]) != ev.holds(e.team, phi):
                        r = reps[ts]
                        cx = Counterexample(
                            "chi-translation",
                            [_model_entry(m, T=e.team), _model_entry(r.model, T=r.team)],
                            [], params | {"k": k},
                        )
                        return clock.report(claim, FALSIFIED, n, f"team level, k={k}", cx)
    return clock.report(
        claim, VERIFIED, n,
        f"pointed translation of every realized Hintikka formula and first-order chi for all team pairs, "
        f"k in {{{','.join(map(str, ks))}}}, <={bounds.max_worlds} worlds over {{p}}",
    )


def check_singleton_independence(bounds: Bounds, *, config: EvalConfig | None = None) -> CheckReport:
    """Every independence atom holds on every singleton team."""
    clock = _Timer()
    claim = "singleton-independence"
    # only singletons are asked, so skip whole-table evaluation
    config = replace(config or EvalConfig(), engine="team")
    leaves = _leaves(bounds.variables) + [fm.Diamond(fm.PropAtom(bounds.variables[0]))]
    atoms = [a for s in range(2, 5) for a in _indep_atoms(leaves, s)]
    # singleton verdicts depend on the leaf values at one world; two worlds realize them all
    bounds = bounds.with_(max_worlds=min(bounds.max_worlds, 2))
    n = 0
    for m in enumerate_models(bounds):
        ev = Evaluator(m, config)
        for w in range(len(m)):
            for a in atoms:
                n += 1
                if not ev.holds(1 << w, a):
                    cx = Counterexample("equiv", [_model_entry(m, T=1 << w)], [fm.render(a), "top"],
                                        _config_params(config))
                    return clock.report(claim, FALSIFIED, n, fm.render(a), cx)
    return clock.report(claim, VERIFIED, n, f"{len(atoms)} atoms with 2-4 arguments, {bounds.describe()}")


def existential_witness() -> tuple[KripkeModel, dict[str, Team]]:
    """Two worlds, no edges, p true only at w1."""
    m = KripkeModel(["w1", "w2"], [], {"p": ["w1"]}, ["p"])
    return m, {"both": m.team(["w1", "w2"]), "second": m.team(["w2"])}


def exactly_one_witness() -> tuple[KripkeModel, dict[str, Team]]:
    """Two worlds, no edges, p1 true only at w1 and p2 only at w2."""
    m = KripkeModel(["w1", "w2"], [], {"p1": ["w1"], "p2": ["w2"]}, ["p1", "p2"])
    return m, {"first": m.team(["w1"]), "second": m.team(["w2"])}


EXACTLY_ONE_E = "(E p1 & ~E p2) lor (~E p1 & E p2)"


def emil_formulas(bounds: Bounds, variables=("p",)) -> tuple[list[fm.Formula], int]:
    """Exhaustive EMIL(lor) formulas to a small size plus seeded samples up to ``max_size``.

    Returns the formulas and the exhaustive size bound.
    """
    exhaustive = min(bounds.exhaustive_size, 5)
    base = enumerate_formulas(variables, exhaustive, None, lor=True, indep=True)
    sampler = FormulaSampler(variables, {"lor", "indep"}, seed=bounds.seed)
    seen = set(base)
    for i in range(bounds.samples):
        size = exhaustive + 1 + i % max(1, bounds.max_size - exhaustive)
        f = sampler.formula(size)
        if f not in seen:
            seen.add(f)
            base.append(f)
    return base, exhaustive


def check_independence_separation(bounds: Bounds, *, config: EvalConfig | None = None) -> CheckReport:
    """"E p" separates the two-world witness teams, while EMIL(lor) formulas collapse to
    singletons on edgeless models and so cannot."""
    clock = _Timer()
    claim = "independence-separation"
    config = config or EvalConfig()
    params = _config_params(config)
    m, teams = existential_witness()
    e_p = fm.parse("E p")
    ev = Evaluator(m, config)
    if not (ev.holds(teams["both"], e_p) and not ev.holds(teams["second"], e_p)):
        cx = Counterexample("separation", [_model_entry(m, T1=teams["both"], T2=teams["second"])], ["E p"], params)
        return clock.report(claim, FALSIFIED, 1, "witness does not separate", cx)
    formulas, exhaustive = emil_formulas(bounds)
    n = 1
    for model in enumerate_models(bounds, ("p",), edges=False):
        mev = Evaluator(model, config)
        for f in formulas:
            for t in _teams_of(model, bounds, False):
                if not mev.holds(t, f):
                    continue
                for w in bits(t):
                    n += 1
                    if not mev.holds(1 << w, f):
                        cx = Counterexample(
                            "collapse", [_model_entry(model, T=t)], [fm.render(f)],
                            params | {"world": model.worlds[w]},
                        )
                        return clock.report(claim, FALSIFIED, n, fm.render(f), cx)
    return clock.report(
        claim, VERIFIED, n,
        f"witness {{w1,w2}} vs {{w2}} separated by E p; {len(formulas)} EMIL(lor) formulas "
        f"(all of size <={exhaustive}, seeded samples up to {bounds.max_size}) collapse on edgeless "
        f"models with <={bounds.max_worlds} worlds",
    )


def check_inclusion_separation(bounds: Bounds, *, config: EvalConfig | None = None, instances: int = 1000) -> CheckReport:
    """The exactly-one-E property is not union closed; random EMINCL instances are."""
    clock = _Timer()
    claim = "inclusion-separation"
    config = config or EvalConfig()
    params = _config_params(config)
    m, teams = exactly_one_witness()
    prop = fm.parse(EXACTLY_ONE_E)
    ev = Evaluator(m, config)
    t1, t2 = teams["first"], teams["second"]
    if not (ev.holds(t1, prop) and ev.holds(t2, prop) and not ev.holds(t1 | t2, prop)):
        cx = Counterexample("union-witness", [_model_entry(m, T1=t1, T2=t2)], [EXACTLY_ONE_E], params)
        return clock.report(claim, FALSIFIED, 1, "witness is union closed", cx)
    sampler = FormulaSampler(bounds.variables, {"incl"}, seed=bounds.seed + 1)
    rng = random.Random(bounds.seed + 2)
    models = list(enumerate_models(bounds))
    n = 1
    for i in range(instances):
        f = sampler.formula(rng.randint(3, bounds.max_size))
        model = rng.choice(models)
        mev = Evaluator(model, config)
        sat = [t for t in range(model.full + 1) if mev.holds(t, f)]
        for a in sat:
            for b in sat:
                if b <= a:
                    continue
                n += 1
                if not mev.holds(a | b, f):
                    cx = Counterexample("union-closed", [_model_entry(model, T1=a, T2=b)], [fm.render(f)], params)
                    return clock.report(claim, FALSIFIED, n, fm.render(f), cx)
    return clock.report(
        claim, VERIFIED, n,
        f"exactly-one-E fails union closure on {{w1}},{{w2}}; {instances} random EMINCL instances "
        f"(size <={bounds.max_size}, seed {bounds.seed}) union closed",
    )


def check_existential_inclusion(bounds: Bounds, *, config: EvalConfig | None = None) -> CheckReport:
    pairs = [
        (fm.parse(f"E {lit}"), fm.parse(f"inc(top ; {lit})"))
        for v in bounds.variables for lit in (v, "!" + v, f"<>{v}")
    ]
    return equiv_many(pairs, bounds, config=config, claim="existential-inclusion")


def _atom_args(pool: Sequence[fm.Formula], width: int, rng: random.Random, count: int):
    combos = list(itertools.product(pool, repeat=width))
    if len(combos) <= count:
        return combos
    return rng.sample(combos, count)


def check_generalized_atoms(
    bounds: Bounds, *, config: EvalConfig | None = None, ks: Sequence[int] = (0, 1, 2)
) -> CheckReport:
    """Native and first-order evaluation of the n,m <= 2 atoms agree; on Hintikka
    sets the atoms reproduce the characteristic formulas."""
    clock = _Timer()
    claim = "generalized-atoms"
    config = config or EvalConfig()
    params = _config_params(config)
    n = 0
    # structure level: every team and every tuple of argument extents on <= max_worlds elements
    for size in range(bounds.max_worlds + 1):
        full = (1 << size) - 1
        for nn, mm in itertools.product((1, 2), repeat=2):
            atom = theorem8_atom(nn, mm)
            width = nn * mm
            for team in subsets(full):
                for masks in itertools.product(list(subsets(team)), repeat=width):
                    n += 1
                    if atom.holds_masks(team, masks, True) != atom.holds_masks(team, masks, False):
                        return clock.report(claim, FALSIFIED, n, f"{atom.name} on extents {masks}")
    # model level: atoms applied to modal formulas
    rng = random.Random(bounds.seed)
    pool = [fm.parse(s) for s in ("p", "!p", "<>p", "[]p", "<>!p", "[]bot")]
    cache: dict = {}
    for m in enumerate_models(bounds, ("p",)):
        pointed = Evaluator(m)
        cols = [pointed.truth_set(f) for f in pool]
        for nn, mm in itertools.product((1, 2), repeat=2):
            atom = theorem8_atom(nn, mm)
            for idx in _atom_args(range(len(pool)), nn * mm, rng, 40):
                for t in _teams_of(m, bounds, True):
                    n += 1
                    masks = tuple(cols[i] & t for i in idx)
                    key = (nn, mm, t, masks)
                    fo = cache.get(key)
                    if fo is None:
                        fo = cache[key] = atom.holds_masks(t, masks, False)
                    if atom.holds_masks(t, masks, True) != fo:
                        args = [fm.render(pool[i]) for i in idx]
                        cx = Counterexample("atom-agreement", [_model_entry(m, T=t)], args,
                                            {"n": nn, "m": mm})
                        return clock.report(claim, FALSIFIED, n, atom.name, cx)
    # Hintikka sets: one group reproduces chi, two groups the classical disjunction of two chis
    registry = AtomRegistry()
    for nn, mm in itertools.product((1, 2), repeat=2):
        registry.add(theorem8_atom(nn, mm))
        registry.add(theorem8_atom(nn, mm, native=False))

    def padded(ts, width):
        forms = list(type_set_formulas(ts))
        return forms + [forms[-1]] * (width - len(forms))

    hint = 0
    for k in ks:
        entries = _team_entries(bounds, ("p",), k)
        reps = _distinct(entries)
        small = [ts for ts in reps if len(ts) <= 2]
        cases = []
        for ts in small:
            for width in range(len(ts), 3):
                args = padded(ts, width)
                cases.append((chi(type_set_formulas(ts)), f"D_{width}_1", args))
        pair_rng = random.Random(bounds.seed + k)
        for _ in range(40):
            a, b = pair_rng.choice(small), pair_rng.choice(small)
            phi = fm.ClassicalOr(chi(type_set_formulas(a)), chi(type_set_formulas(b)))
            cases.append((phi, "D_2_2", padded(a, 2) + padded(b, 2)))
        by_model: dict = {}
        for e in entries:
            by_model.setdefault(id(e.model), []).append(e)
        for group in by_model.values():
            ev = Evaluator(group[0].model, replace(config, registry=registry))
            for phi, name, args in cases:
                native = fm.GenAtom(name, args)
                fo = fm.GenAtom(name + "_fo", args)
                for e in group:
                    hint += 1
                    want = ev.holds(e.team, phi)
                    if ev.holds(e.team, native) != want or ev.holds(e.team, fo) != want:
                        cx = Counterexample(
                            "equiv", [_model_entry(e.model, T=e.team)],
                            [fm.render(native), fm.render(phi)], params,
                        )
                        return clock.report(claim, FALSIFIED, n + hint, f"Hintikka atom at k={k}", cx)
    return clock.report(
        claim, VERIFIED, n + hint,
        f"native vs first-order for n,m<=2 on all extents over <={bounds.max_worlds} elements and "
        f"on modal arguments; atoms on Hintikka sets match chi for k in "
        f"{{{','.join(map(str, ks))}}}",
    )


def check_type_counts(bounds: Bounds) -> CheckReport:
    clock = _Timer()
    claim = "type-counts"
    expected = {0: 2, 1: 8, 2: 512}
    n = 0
    for k, want in expected.items():
        n += 1
        got = count_types(1, k)
        if got != want:
            return clock.report(claim, FALSIFIED, n, f"count_types(1,{k}) = {got}, expected {want}")
        listed = sum(1 for _ in all_types(("p",), k))
        if listed != want:
            return clock.report(claim, FALSIFIED, n, f"{listed} enumerated level-{k} types, expected {want}")
    for m in enumerate_models(bounds, ("p",)):
        for k, want in expected.items():
            for t in _teams_of(m, bounds, False):
                n += 1
                size = len(hintikka_team_set(m, t, k))
                if size > want:
                    cx = Counterexample("equiv", [_model_entry(m, T=t)], [], {"k": k})
                    return clock.report(claim, FALSIFIED, n, f"{size} Hintikka formulas at k={k}", cx)
    return clock.report(claim, VERIFIED, n, "2, 8, 512 types over {p} for k=0,1,2; team Hintikka sets within them")


SUITE: dict[str, Callable[..., CheckReport]] = {
    "flatness": check_flatness,
    "dependence-desugaring": check_dep_desugaring,
    "splitjunction": check_splitjunction,
    "team-characterization": check_characterization,
    "property-expression": check_property_expression,
    "standard-translation": check_standard_translation,
    "singleton-independence": check_singleton_independence,
    "independence-separation": check_independence_separation,
    "inclusion-separation": check_inclusion_separation,
    "existential-inclusion": check_existential_inclusion,
    "generalized-atoms": check_generalized_atoms,
    "type-counts": check_type_counts,
}


def paper_suite(
    bounds: Bounds | None = None,
    *,
    config: EvalConfig | None = None,
    only: Iterable[str] | None = None,
) -> list[CheckReport]:
    """Run every named claim; reports come back in a fixed order."""
    bounds = bounds or Bounds()
    wanted = set(SUITE if only is None else only)
    unknown = sorted(wanted - set(SUITE))
    if unknown:
        raise OracleError(f"unknown claims {unknown}; choose from {', '.join(SUITE)}")
    names = [name for name in SUITE if name in wanted]
    reports = []
    for name in names:
        check = SUITE[name]
        start = time.perf_counter()
        try:
            if name == "type-counts":
                report = check(bounds)
            else:
                report = check(bounds, config=config)
        except TeamTooLargeError as exc:
            report = CheckReport(name, SKIPPED, 0, str(exc), None, time.perf_counter() - start)
        reports.append(report)
    return reports
