"""The shipped car-crash norm base and its bundled scenarios."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .kbformat import RuleBase, Scenario, parse_rulebase, parse_scenario

SCENARIO_NAMES = ("b21", "b21_no_control", "bend", "perturb", "calm")


@dataclass(frozen=True)
class CatalogueEntry:
    rule_id: str
    origin: str  # "printed", "bridge" or "generated"
    context: str
    gloss: str


def _read(*parts: str) -> str:
    return resources.files(__package__).joinpath(*parts).read_text(encoding="utf-8")


def rulebase_text() -> str:
    return _read("kb", "crash_norms.nrk")


def scenario_text(name: str) -> str:
    if name not in SCENARIO_NAMES:
        raise KeyError(f"unknown builtin scenario {name!r}; choose from {', '.join(SCENARIO_NAMES)}")
    return _read("scenarios", f"{name}.scn")


@lru_cache(maxsize=None)
def builtin_rulebase() -> RuleBase:
    return parse_rulebase(rulebase_text())


@lru_cache(maxsize=None)
def builtin_scenario(name: str) -> Scenario:
    return parse_scenario(scenario_text(name))


def builtin_scenarios() -> list[Scenario]:
    return [builtin_scenario(n) for n in SCENARIO_NAMES]


@lru_cache(maxsize=None)
def catalogue() -> dict[str, CatalogueEntry]:
    data = json.loads(_read("kb", "catalogue.json"))
    return {rid: CatalogueEntry(rid, **entry) for rid, entry in data["rules"].items()}


def catalogue_gaps() -> list[dict]:
    return json.loads(_read("kb", "catalogue.json"))["gaps"]
