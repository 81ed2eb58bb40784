"""Model checking and bounded verification for modal team logics."""

from .formula import Formula, Fragment, desugar, dual, fragment_of, parse, render
from .kripke import KripkeModel, ModelError, load_model, save_model
from .semantics import EvalConfig, Evaluator, eval_pointed, evaluate
from .bisim import team_kbisim, team_full_bisim, ktype, ktypes
from .hintikka import (
    PropertyClass,
    chi,
    count_types,
    express_property,
    hintikka_team,
    hintikka_team_set,
    hintikka_world,
)
from .fo import chi_to_fo, standard_translation, theorem8_atom

__version__ = "0.1.0"

__all__ = [
    "EvalConfig", "Evaluator", "Formula", "Fragment", "KripkeModel", "ModelError",
    "PropertyClass", "chi", "chi_to_fo", "count_types", "desugar", "dual", "eval_pointed",
    "evaluate", "express_property", "fragment_of", "hintikka_team", "hintikka_team_set",
    "hintikka_world", "ktype", "ktypes", "load_model", "parse", "render", "save_model",
    "standard_translation", "team_full_bisim", "team_kbisim", "theorem8_atom",
]
