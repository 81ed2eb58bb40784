"""Command-line front end.

Exit codes: 0 when the checked statement holds, 1 when it fails or a claim
is falsified, 2 on usage or data errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import formula as fm
from . import oracle
from .bisim import EmptyTeamError, compare, team_kbisim
from .fo import (
    DEFAULT_REGISTRY,
    AtomRegistry,
    FOError,
    chi_to_fo,
    property_atom_formula,
    property_to_fo,
    render_fo,
    standard_translation,
)
from .hintikka import PropertyClass, express_property, hintikka_team, hintikka_team_set, hintikka_world
from .kripke import KripkeModel, ModelError, Team, load_model, model_from_dict, random_model, save_model
from .semantics import EvalConfig, EvalError, Evaluator

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(args, text: str, payload: dict) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _read_model(path: str) -> tuple[KripkeModel, dict[str, Team]]:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise ModelError(f"cannot read {path}: {exc.strerror}") from None
    return load_model(data)


def _team(teams: dict[str, Team], name: str, path: str) -> Team:
    if name not in teams:
        known = ", ".join(sorted(teams)) or "none"
        raise ModelError(f"{path} has no team {name!r} (teams: {known})")
    return teams[name]


def _registry(args) -> AtomRegistry:
    if not getattr(args, "atoms", None):
        return DEFAULT_REGISTRY
    try:
        text = Path(args.atoms).read_text()
    except OSError as exc:
        raise ModelError(f"cannot read {args.atoms}: {exc.strerror}") from None
    return AtomRegistry.loads(text)


def _config(args, registry) -> EvalConfig:
    return EvalConfig(strategy=getattr(args, "strategy", "flat"), registry=registry)


def _vars(text: str) -> tuple[str, ...]:
    names = tuple(v.strip() for v in text.split(",") if v.strip())
    if not names:
        raise UsageError("--vars needs at least one variable")
    return names


# ---------------------------------------------------------------------------
# subcommands

def cmd_check(args) -> int:
    model, teams = _read_model(args.model)
    team = _team(teams, args.team, args.model)
    registry = _registry(args)
    f = fm.parse(args.formula, registry)
    holds = Evaluator(model, _config(args, registry)).holds(team, f)
    verdict = "SAT" if holds else "UNSAT"
    _emit(
        args,
        f"{verdict}: {args.team} {'satisfies' if holds else 'does not satisfy'} {fm.render(f)}",
        {
            "verdict": verdict,
            "holds": holds,
            "formula": fm.render(f),
            "fragment": fm.fragment_of(f, registry).value,
            "team": model.team_names(team),
        },
    )
    return EXIT_OK if holds else EXIT_FAIL


def cmd_bisim(args) -> int:
    m1, teams1 = _read_model(args.model_a)
    m2, teams2 = _read_model(args.model_b)
    t1 = _team(teams1, args.team_a, args.model_a)
    t2 = _team(teams2, args.team_b, args.model_b)
    if args.k is not None:
        if args.k < 0:
            raise UsageError("--k must be non-negative")
        same = team_kbisim(m1, t1, m2, t2, args.k)
        label = f"{args.k}-bisimilar"
        separating = None if same else hintikka_team(m1, t1, args.k)
        first = None if same else args.k
    else:
        verdict = compare(m1, t1, m2, t2)
        same, label = verdict.bisimilar, "bisimilar"
        separating, first = verdict.separating, verdict.k
    text = label if same else f"not {label}"
    payload = {"bisimilar": same, "k": args.k, "verdict": text}
    if separating is not None:
        text += f"\nseparated at k={first} by: {fm.render(separating)}"
        payload["separating_k"] = first
        payload["separating_formula"] = fm.render(separating)
    _emit(args, text, payload)
    return EXIT_OK if same else EXIT_FAIL


def cmd_hintikka(args) -> int:
    if args.k < 0:
        raise UsageError("--k must be non-negative")
    model, teams = _read_model(args.model)
    if args.world is not None:
        f = hintikka_world(model, args.world, args.k)
        payload = {"world": args.world, "k": args.k, "formula": fm.render(f)}
    else:
        team = _team(teams, args.team, args.model)
        f = hintikka_team(model, team, args.k)
        members = hintikka_team_set(model, team, args.k)
        payload = {
            "team": args.team,
            "k": args.k,
            "formula": fm.render(f),
            "hintikka_set": [fm.render(g) for g in members],
        }
    _emit(args, fm.render(f), payload)
    return EXIT_OK


def _load_class(path: str) -> list[tuple[KripkeModel, Team]]:
    try:
        raw = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ModelError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ModelError(f"invalid JSON in {path}: {exc}") from None
    if not isinstance(raw, list) or not raw:
        raise ModelError("a property class file holds a nonempty list of {model, team} entries")
    base = Path(path).parent
    members = []
    for i, entry in enumerate(raw):
        if not isinstance(entry, dict) or set(entry) != {"model", "team"}:
            raise ModelError(f"entry {i}: expected exactly the keys 'model' and 'team'")
        spec = entry["model"]
        if isinstance(spec, str):
            where = spec if Path(spec).is_absolute() else str(base / spec)
            model, teams = _read_model(where)
        else:
            where = f"entry {i}"
            model, teams = model_from_dict(spec)
        members.append((model, _team(teams, entry["team"], where)))
    return members


def cmd_express(args) -> int:
    if args.k < 0:
        raise UsageError("--k must be non-negative")
    prop = PropertyClass(_load_class(args.class_file), args.k)
    if args.target == "fo":
        text = render_fo(property_to_fo(prop))
    elif args.target == "atom":
        registry = AtomRegistry()
        text = fm.render(property_atom_formula(prop, registry))
    else:
        text = fm.render(express_property(prop))
    _emit(args, text, {"k": args.k, "target": args.target, "members": len(prop.members), "formula": text})
    return EXIT_OK


def cmd_translate(args) -> int:
    if args.chi:
        missing = [o for o in ("model", "team", "k") if getattr(args, o) is None]
        if missing:
            raise UsageError("--chi needs " + ", ".join("--" + m for m in missing))
        if args.k < 0:
            raise UsageError("--k must be non-negative")
        model, teams = _read_model(args.model)
        sentence = chi_to_fo(model, _team(teams, args.team, args.model), args.k)
        text = render_fo(sentence)
        _emit(args, text, {"kind": "chi", "k": args.k, "fo": text})
        return EXIT_OK
    if args.formula is None:
        raise UsageError("translate needs --formula or --chi")
    f = fm.parse(args.formula)
    text = render_fo(standard_translation(f, args.var))
    _emit(args, text, {"kind": "standard", "formula": fm.render(f), "fo": text})
    return EXIT_OK


def _bounds(args, variables) -> oracle.Bounds:
    return oracle.Bounds(
        max_worlds=args.max_worlds,
        variables=variables,
        exhaustive_worlds=min(args.max_worlds, 3),
        seed=args.seed,
    )


def _report_exit(args, report: oracle.CheckReport) -> int:
    _emit(args, report.line(), report.to_dict())
    if report.verdict == oracle.FALSIFIED:
        if args.format == "text" and report.counterexample is not None:
            print("counterexample: " + json.dumps(report.counterexample.to_dict(), sort_keys=True))
        return EXIT_FAIL
    return EXIT_OK


def _formula_vars(args, *formulas: fm.Formula) -> tuple[str, ...]:
    if args.vars:
        return _vars(args.vars)
    names = sorted(set().union(*(f.variables() for f in formulas)))
    return tuple(names) or ("p",)


def cmd_equiv(args) -> int:
    registry = _registry(args)
    f = fm.parse(args.formula_a, registry)
    g = fm.parse(args.formula_b, registry)
    bounds = _bounds(args, _formula_vars(args, f, g))
    report = oracle.equiv_check(
        f, g, bounds, include_empty=args.include_empty, config=_config(args, registry)
    )
    return _report_exit(args, report)


def cmd_properties(args) -> int:
    registry = _registry(args)
    f = fm.parse(args.formula, registry)
    bounds = _bounds(args, _formula_vars(args, f))
    config = _config(args, registry)
    if args.check in oracle.CLOSURE_PROPERTIES:
        report = oracle.closure_check(f, args.check, bounds, config=config)
    elif args.check == "invariance":
        mode = "full" if args.k is None else args.k
        report = oracle.invariance_check(f, mode, bounds, config=config)
    elif args.check == "local":
        if args.d is None:
            raise UsageError("--check local needs --d")
        report = oracle.invariance_check(
            f, "local", bounds, d=args.d, undirected=args.undirected, config=config
        )
    else:
        raise AssertionError(args.check)
    return _report_exit(args, report)


_BOUND_FIELDS = {
    "max_worlds": int, "max_teams": int, "max_depth": int, "max_size": int,
    "exhaustive_size": int, "samples": int, "seed": int, "exhaustive_worlds": int,
    "model_samples": int, "variables": _vars,
}


def _parse_bounds(items: Sequence[str]) -> oracle.Bounds:
    changes = {}
    for item in items:
        key, sep, value = item.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in _BOUND_FIELDS:
            raise UsageError(f"bad bound {item!r}; use KEY=VALUE with KEY in {', '.join(_BOUND_FIELDS)}")
        try:
            changes[key] = _BOUND_FIELDS[key](value)
        except ValueError:
            raise UsageError(f"bad value in {item!r}") from None
    return oracle.Bounds(**changes)


def cmd_suite(args) -> int:
    bounds = _parse_bounds(args.bounds or [])
    config = EvalConfig(mutate_diamond=args.mutate)
    reports = oracle.paper_suite(bounds, config=config, only=args.only)
    failed = any(r.falsified for r in reports)
    if args.format == "json":
        print(json.dumps(
            {"bounds": bounds.describe(), "reports": [r.to_dict(args.timing) for r in reports]},
            sort_keys=True,
        ))
    else:
        for r in reports:
            print(r.line(args.timing))
            if r.falsified and r.counterexample is not None:
                print("  counterexample: " + json.dumps(r.counterexample.to_dict(), sort_keys=True))
    return EXIT_FAIL if failed else EXIT_OK


def cmd_random(args) -> int:
    if args.worlds < 1:
        raise UsageError("--worlds must be at least 1")
    if not 0.0 <= args.edge_prob <= 1.0:
        raise UsageError("--edge-prob must lie in [0, 1]")
    model = random_model(args.seed, args.worlds, args.edge_prob, _vars(args.vars))
    sys.stdout.write(save_model(model, {"all": model.full}).decode())
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--json", dest="format", action="store_const", const="json",
                        help="shorthand for --format json")
    common.add_argument("--atoms", metavar="FILE", help="registry of generalized atoms (JSON)")
    common.add_argument("--strategy", choices=("flat", "general"), default="flat")

    p = _Parser(prog="teamcheck", description="Model checking and bounded verification for modal team logics.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", parents=[common], help="evaluate a formula on a team")
    c.add_argument("--model", required=True)
    c.add_argument("--team", required=True)
    c.add_argument("--formula", required=True)
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("bisim", parents=[common], help="compare two teams up to (k-)bisimilarity")
    c.add_argument("--model-a", required=True)
    c.add_argument("--team-a", required=True)
    c.add_argument("--model-b", required=True)
    c.add_argument("--team-b", required=True)
    c.add_argument("--k", type=int)
    c.set_defaults(func=cmd_bisim)

    c = sub.add_parser("hintikka", parents=[common], help="characteristic formula of a world or team")
    c.add_argument("--model", required=True)
    which = c.add_mutually_exclusive_group(required=True)
    which.add_argument("--world")
    which.add_argument("--team")
    c.add_argument("--k", type=int, required=True)
    c.set_defaults(func=cmd_hintikka)

    c = sub.add_parser("express", parents=[common], help="formula for a property given by representatives")
    c.add_argument("--class", dest="class_file", required=True, metavar="FILE")
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--target", choices=("mtl", "fo", "atom"), default="mtl")
    c.set_defaults(func=cmd_express)

    c = sub.add_parser("translate", parents=[common], help="first-order translations")
    c.add_argument("--formula")
    c.add_argument("--var", default="x")
    c.add_argument("--chi", action="store_true")
    c.add_argument("--model")
    c.add_argument("--team")
    c.add_argument("--k", type=int)
    c.set_defaults(func=cmd_translate)

    for name, func, help_text in (
        ("equiv", cmd_equiv, "bounded equivalence check"),
        ("properties", cmd_properties, "bounded closure, invariance or locality check"),
    ):
        c = sub.add_parser(name, parents=[common], help=help_text)
        if name == "equiv":
            c.add_argument("--formula-a", required=True)
            c.add_argument("--formula-b", required=True)
            c.add_argument("--include-empty", action="store_true")
        else:
            c.add_argument("--formula", required=True)
            c.add_argument(
                "--check", required=True,
                choices=(*oracle.CLOSURE_PROPERTIES, "invariance", "local"),
            )
            c.add_argument("--k", type=int, help="invariance depth (default: full bisimulation)")
            c.add_argument("--d", type=int, help="locality radius")
            c.add_argument("--undirected", action="store_true",
                           help="measure neighborhood distance ignoring edge direction")
        c.add_argument("--max-worlds", type=int, default=3)
        c.add_argument("--vars", help="comma-separated variables (default: those of the formulas)")
        c.add_argument("--seed", type=int, default=0)
        c.set_defaults(func=func)

    c = sub.add_parser("suite", parents=[common], help="run the bounded claim suite")
    c.add_argument("--bounds", nargs="*", metavar="KEY=VALUE")
    c.add_argument("--only", nargs="+", choices=list(oracle.SUITE), metavar="CLAIM")
    c.add_argument("--mutate", action="store_true", help="corrupt the diamond clause (mutation test)")
    c.add_argument("--timing", action="store_true", help="include wall times")
    c.set_defaults(func=cmd_suite)

    c = sub.add_parser("random", parents=[common], help="print a seeded random model file")
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("--worlds", type=int, required=True)
    c.add_argument("--edge-prob", type=float, required=True)
    c.add_argument("--vars", required=True)
    c.set_defaults(func=cmd_random)
    return p


_DATA_ERRORS = (
    ModelError, fm.FormulaError, EvalError, FOError, oracle.OracleError,
    EmptyTeamError, ValueError, OverflowError,
)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"teamcheck: usage error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except _DATA_ERRORS as exc:
        print(f"teamcheck: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
