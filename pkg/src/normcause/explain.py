"""Turn basic-anomaly atoms into reports, sentences and derivation trees."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .engine import GIVEN, Extension, RunResult
from .kbformat import render_literal
from .logic import Literal, Modality, base_predicate

F = "F"
F_PRIME = "F_prime"

VERB_PHRASES = {
    "stops": "stop",
    "runs_slowly": "slow down",
    "control": "keep control",
}


@dataclass(frozen=True)
class AnomalyReport:
    kind: str
    predicate: str
    agent: str
    state: int
    blamed_transition: Optional[tuple]
    support: tuple  # ((Literal, rule id), ...)
    literal: Literal

    @property
    def sort_key(self) -> tuple:
        return (self.state, self.agent, self.predicate)


def _property_name(lit: Literal) -> str:
    return base_predicate(lit.atom.property) or str(lit.atom.property)


def _report(ext: Extension, lit: Literal) -> AnomalyReport:
    why = ext.derivation(lit)
    premises = why.premises if why is not None else ()
    perturbed = [p for p in premises if p.atom.modality is Modality.PERTURBATION]
    kind = F_PRIME if perturbed else F
    support = tuple((p, ext.derivation(p).rule if ext.derivation(p) else GIVEN) for p in premises)
    t = lit.atom.time
    return AnomalyReport(
        kind=kind,
        predicate=_property_name(lit),
        agent=str(lit.atom.subject),
        state=t,
        blamed_transition=(t, t + 1) if kind == F else None,
        support=support,
        literal=lit,
    )


def collect_anomalies(r: RunResult, extension: int = 0) -> list[AnomalyReport]:
    """Reports for every B-An atom of one extension, ordered by (state, agent, predicate)."""
    if not r.extensions or extension >= len(r.extensions):
        return []
    ext = r.extensions[extension]
    return sorted((_report(ext, a) for a in ext.anomalies()), key=lambda a: a.sort_key)


def explain(a: AnomalyReport) -> str:
    if a.kind == F_PRIME:
        return f"because of an abnormal perturbation ({a.predicate}) affecting vehicle {a.agent} at state {a.state}"
    verb = VERB_PHRASES.get(a.predicate, f"do {a.predicate}")
    return f"because vehicle {a.agent} did not {verb} at state {a.state + 1}"


# -- derivation trees -------------------------------------------------------


def derivation_tree(ext: Extension, lit: Literal, _path: frozenset = frozenset()) -> dict:
    why = ext.derivation(lit)
    node = {"literal": render_literal(lit), "rule": why.rule if why else GIVEN}
    if why is not None and why.instance and why.instance != why.rule:
        node["instance"] = why.instance
    children = []
    if why is not None and lit not in _path:
        for p in why.premises:
            children.append(derivation_tree(ext, p, _path | {lit}))
    node["premises"] = children
    return node


def render_tree(node: dict, depth: int = 0) -> list[str]:
    lines = [f"{'  ' * depth}{node['literal']}  [{node['rule']}]"]
    for child in node["premises"]:
        lines.extend(render_tree(child, depth + 1))
    return lines


# -- reports ----------------------------------------------------------------


def _anomaly_json(a: AnomalyReport) -> dict:
    return {
        "kind": a.kind,
        "predicate": a.predicate,
        "agent": a.agent,
        "state": a.state,
        "explanation": explain(a),
        "support": [{"literal": render_literal(l), "rule": rid} for l, rid in a.support],
    }


def render_report(
    r: RunResult,
    reports: Optional[list[AnomalyReport]] = None,
    fmt: str = "text",
    *,
    trace: bool = False,
    per_extension: bool = False,
) -> str:
    """Render a run as text or as a stable JSON document."""
    if reports is None:
        reports = collect_anomalies(r)
    per_ext = [collect_anomalies(r, i) for i in range(len(r.extensions))] if per_extension else None

    if fmt == "json":
        doc = {
            "status": r.status,
            "anomalies": [_anomaly_json(a) for a in reports],
            "extensions_count": len(r.extensions),
            "stratum_log": [
                {
                    "stratum": rec.stratum,
                    "rules": rec.rules,
                    "defaults": rec.defaults,
                    "extensions": rec.extensions,
                    "derived": rec.derived,
                    "anomalies": rec.anomalies,
                }
                for rec in r.stratum_log
            ],
            "halted_at": r.halted_at,
            "warnings": list(r.warnings),
        }
        if r.error:
            doc["error"] = r.error
        if per_ext is not None:
            doc["extensions"] = [{"anomalies": [_anomaly_json(a) for a in reps]} for reps in per_ext]
        if trace:
            doc["trace"] = [derivation_tree(r.extensions[0], a.literal) for a in reports] if r.extensions else []
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")

    lines: list[str] = []
    if per_ext is not None and len(per_ext) > 1:
        for i, reps in enumerate(per_ext, 1):
            lines.append(f"extension {i}:")
            lines.extend(f"  {explain(a)}" for a in reps)
            if not reps:
                lines.append("  no basic anomaly found")
    elif reports:
        lines.extend(explain(a) for a in reports)
    elif r.error:
        lines.append(f"error: {r.error}")
    else:
        lines.append("no basic anomaly found")
    if trace and r.extensions and reports:
        lines.append("")
        lines.append("derivation:")
        for a in reports:
            lines.extend("  " + ln for ln in render_tree(derivation_tree(r.extensions[0], a.literal)))
    return "\n".join(lines) + "\n"
