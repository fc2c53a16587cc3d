"""Default-logic engine that explains car crashes by the norm they violate."""

from .engine import (
    Extension,
    RunResult,
    compute_extension,
    enumerate_extensions,
    generate_persistence,
    ground_rules,
    is_extension,
    run_strata,
    strict_closure,
)
from .kbformat import KbError, RuleBase, Scenario, parse_rulebase, parse_scenario, validate_crossrefs
from .logic import Literal, Modality, canonicalize, complements, fold_arity

__version__ = "0.1.0"

__all__ = [
    "Extension",
    "KbError",
    "Literal",
    "Modality",
    "RuleBase",
    "RunResult",
    "Scenario",
    "canonicalize",
    "complements",
    "compute_extension",
    "enumerate_extensions",
    "fold_arity",
    "generate_persistence",
    "ground_rules",
    "is_extension",
    "parse_rulebase",
    "parse_scenario",
    "run_strata",
    "strict_closure",
    "validate_crossrefs",
]
