"""Grounding, strict closure and default extensions over ground literals.

Entailment is restricted to the literal fragment: strict rules are applied by
forward chaining over canonical ground literals and a set is inconsistent
exactly when it contains a complementary pair.  Under that restriction the
extension condition is checked by rebuilding the candidate from the facts and
the defaults it keeps applicable.
"""

from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Union

from .kbformat import RuleBase, Scenario, rule_sorts
from .logic import (
    AGENT,
    PROPERTY,
    SYMBOL,
    TIME,
    Atom,
    Combine,
    Constant,
    Literal,
    Modality,
    PredicateSymbol,
    Term,
    base_predicate,
    canonicalize,
    iter_variables,
    substitute,
)

log = logging.getLogger(__name__)

DEFAULT_GROUNDING_CAP = 50_000
DEFAULT_EXTENSION_CAP = 20
DEFAULT_MAX_EXTENSIONS = 8

GIVEN = "given"

ANOMALY_FOUND = "anomaly_found"
NO_ANOMALY = "no_anomaly"
INCONSISTENT_FACTS = "inconsistent_facts"
EXTENSION_LIMIT_HIT = "extension_limit_hit"


class EngineError(Exception):
    pass


class InconsistencyError(EngineError):
    def __init__(self, literal: Literal, other: Literal):
        self.literal = literal
        self.other = other
        super().__init__(f"inconsistent: both {literal} and {other} derived")


class ExtensionCapError(EngineError):
    pass


class GroundingLimitError(EngineError):
    pass


class NoExtensionError(EngineError):
    pass


@dataclass(frozen=True)
class Derivation:
    rule: str
    premises: tuple = ()
    instance: str = ""


GIVEN_DERIVATION = Derivation(GIVEN)


def _value_key(v) -> tuple:
    if isinstance(v, int):
        return (0, v, "")
    return (1, 0, str(v))


def _binding_label(origin: str, binding: tuple) -> str:
    if not binding:
        return origin
    return origin + "{" + ", ".join(f"{k}={v}" for k, v in binding) + "}"


@dataclass(frozen=True)
class GroundRule:
    origin: str
    layer: int
    body: tuple
    head: tuple
    binding: tuple = ()

    @property
    def label(self) -> str:
        return _binding_label(self.origin, self.binding)


@dataclass(frozen=True)
class GroundDefault:
    origin: str
    layer: int
    prerequisite: tuple
    consequent: tuple
    justification: tuple
    binding: tuple = ()

    @property
    def label(self) -> str:
        return _binding_label(self.origin, self.binding)

    @property
    def scan_key(self) -> tuple:
        return (-self.layer, self.origin, tuple(_value_key(v) for _, v in self.binding))

    def bound(self, **values) -> bool:
        """True if every named variable is bound to the given value."""
        b = dict(self.binding)
        return all(str(b.get(k)) == str(v) for k, v in values.items())


@dataclass
class Extension:
    literals: frozenset
    applied: tuple = ()
    trace: Mapping[Literal, Derivation] = field(default_factory=dict)

    def __contains__(self, lit: Literal) -> bool:
        return canonicalize(lit) in self.literals

    def anomalies(self) -> list[Literal]:
        found = [l for l in self.literals if l.positive and l.atom.modality is Modality.B_AN]
        return sorted(found, key=lambda l: (l.atom.time, str(l.atom.subject), str(l.atom.property)))

    def derivation(self, lit: Literal) -> Optional[Derivation]:
        return self.trace.get(canonicalize(lit))


# -- grounding --------------------------------------------------------------


@dataclass(frozen=True)
class Domains:
    agents: tuple
    symbols: tuple
    properties: tuple
    horizon: int

    def of(self, sort: str) -> Sequence:
        if sort == AGENT:
            return self.agents
        if sort == SYMBOL:
            return self.symbols
        if sort == PROPERTY:
            return self.properties
        if sort == TIME:
            return range(self.horizon + 1)
        raise ValueError(f"no domain for sort {sort!r}")

    @classmethod
    def build(cls, rb: RuleBase, s: Scenario) -> "Domains":
        agents = tuple(Constant(a) for a in s.agents)
        registry = rb.predicates
        symbols = set()
        lits = list(s.facts)
        for r in rb.strict + rb.defaults:
            lits.extend(r.literals)
        for lit in lits:
            prop = lit.atom.property
            if isinstance(prop, Combine) and isinstance(prop.extra, Constant):
                sym = registry.get(prop.predicate.name)
                if prop.extra.name not in s.agents and (sym is None or sym.extra_kind == SYMBOL):
                    symbols.add(prop.extra.name)
            elif isinstance(prop, Constant) and prop.name not in registry:
                symbols.add(prop.name)
        symbol_terms = tuple(Constant(n) for n in sorted(symbols))
        props: list[Term] = []
        for sym in registry.values():
            if sym.surface_arity == 1:
                props.append(Constant(sym.name))
                continue
            extras = agents if sym.extra_kind == AGENT else symbol_terms
            for e in extras:
                props.append(Combine(Constant(sym.name), e, extra_first=sym.subject_index == 1))
        props.extend(symbol_terms)
        return cls(agents, symbol_terms, tuple(props), s.horizon)


def _in_range(lit: Literal, horizon: int) -> bool:
    t = lit.atom.time
    return t is None or 0 <= t <= horizon


def _instances(rule, groups: Sequence[Sequence[Literal]], registry, dom: Domains, budget: list):
    sorts = rule_sorts(rule, registry)
    names = list(dict.fromkeys(v for g in groups for lit in g for v in iter_variables(lit)))
    domains = [dom.of(sorts[n]) for n in names]
    agent_pos = [i for i, n in enumerate(names) if sorts[n] == AGENT]
    for values in itertools.product(*domains):
        if not rule.allow_same and len(agent_pos) > 1:
            chosen = [values[i] for i in agent_pos]
            if len(set(chosen)) < len(chosen):
                continue
        binding = dict(zip(names, values))
        out = []
        for g in groups:
            ground = tuple(canonicalize(substitute(l, binding)) for l in g)
            if not all(_in_range(l, dom.horizon) for l in ground):
                break
            out.append(ground)
        else:
            budget[0] -= 1
            if budget[0] < 0:
                raise GroundingLimitError(
                    f"grounding exceeded the cap of {budget[1]} instances (at rule {rule.id})"
                )
            yield tuple(zip(names, values)), out


def ground_rules(
    rb: RuleBase, s: Scenario, cap: int = DEFAULT_GROUNDING_CAP
) -> tuple[list[GroundRule], list[GroundDefault]]:
    """Instantiate every rule and default over the scenario's domains.

    Distinct agent variables take distinct agents unless the rule says
    ``allow_same``; instances with a time outside the state range are dropped.
    """
    dom = Domains.build(rb, s)
    budget = [cap, cap]
    strict = []
    for r in rb.strict:
        for binding, (body, head) in _instances(r, (r.body, r.head), rb.predicates, dom, budget):
            strict.append(GroundRule(r.id, r.layer, body, head, binding))
    defaults = []
    for d in rb.defaults:
        groups = (d.prerequisite, d.consequent, d.constraint)
        for binding, (pre, cons, constraint) in _instances(d, groups, rb.predicates, dom, budget):
            defaults.append(GroundDefault(d.id, d.layer, pre, cons, cons + constraint, binding))
    return strict, defaults


def generate_persistence(rb: RuleBase, s: Scenario) -> list[GroundDefault]:
    """Forward persistence for static predicates, backward for flagged ones."""
    dom = Domains.build(rb, s)
    out = []
    for sym in rb.predicates.values():
        if not (sym.static or sym.backward_persistent):
            continue
        props = [p for p in dom.properties if base_predicate(p) == sym.name]
        for prop in props:
            for ag in dom.agents:
                if isinstance(prop, Combine) and prop.extra == ag:
                    continue
                for t in s.states:
                    here = Literal(Atom(Modality.HOLDS, prop, ag, t))
                    binding = (("P", prop), ("Ag", ag), ("T", t))
                    if sym.static and t + 1 <= s.horizon:
                        nxt = Literal(Atom(Modality.HOLDS, prop, ag, t + 1))
                        static = Literal(Atom(Modality.STATIC, Constant(sym.name)))
                        out.append(GroundDefault(f"PF_{sym.name}", sym.layer, (static, here), (nxt,), (nxt,), binding))
                    if sym.backward_persistent and t - 1 >= 0:
                        prev = Literal(Atom(Modality.HOLDS, prop, ag, t - 1))
                        out.append(GroundDefault(f"PB_{sym.name}", sym.layer, (here,), (prev,), (prev,), binding))
    return out


def static_facts(rb: RuleBase) -> list[Literal]:
    return [Literal(Atom(Modality.STATIC, Constant(name))) for name in sorted(rb.static_set)]


# -- compiled ground theory -------------------------------------------------


class _Program:
    """Ground rules and defaults over interned literal ids."""

    def __init__(self, strict: Sequence[GroundRule], defaults: Sequence[GroundDefault]):
        self.lits: list[Literal] = []
        self.index: dict[Literal, int] = {}
        self.comp: list[int] = []
        self.rules = []
        self.watch: dict[int, list[int]] = defaultdict(list)
        self.unconditional: list[int] = []
        for r in strict:
            body = tuple(dict.fromkeys(self.intern(l) for l in r.body))
            head = tuple(self.intern(l) for l in r.head)
            k = len(self.rules)
            self.rules.append((body, head, Derivation(r.origin, r.body, r.label)))
            for b in body:
                self.watch[b].append(k)
            if not body:
                self.unconditional.append(k)
        self.defaults = sorted(defaults, key=lambda d: d.scan_key)
        self.dpre = [frozenset(self.intern(l) for l in d.prerequisite) for d in self.defaults]
        self.dcons = [tuple(self.intern(l) for l in d.consequent) for d in self.defaults]
        self.djust = [tuple(self.comp[self.intern(l)] for l in d.justification) for d in self.defaults]
        self.dwhy = [Derivation(d.origin, d.prerequisite, d.label) for d in self.defaults]

    def intern(self, lit: Literal) -> int:
        i = self.index.get(lit)
        if i is None:
            i = len(self.lits)
            c = lit.complement()
            self.lits += [lit, c]
            self.index[lit] = i
            self.index[c] = i + 1
            self.comp += [i + 1, i]
        return i

    def blocked(self, k: int, true: set) -> bool:
        return any(c in true for c in self.djust[k])

    def reachable(self, seed: Iterable[int]) -> set[int]:
        """Over-approximation: everything derivable if no default were ever blocked."""
        true = set(seed)
        missing = [len(body) for body, _, _ in self.rules]
        dmissing = [len(p) for p in self.dpre]
        dwatch = defaultdict(list)
        for k, pre in enumerate(self.dpre):
            for i in pre:
                dwatch[i].append(k)
        stack = list(true)
        fired = [self.rules[k][1] for k in self.unconditional]
        fired += [self.dcons[k] for k, p in enumerate(self.dpre) if not p]
        for heads in fired:
            for h in heads:
                if h not in true:
                    true.add(h)
                    stack.append(h)
        while stack:
            i = stack.pop()
            batches = []
            for k in self.watch.get(i, ()):
                missing[k] -= 1
                if missing[k] == 0:
                    batches.append(self.rules[k][1])
            for k in dwatch.get(i, ()):
                dmissing[k] -= 1
                if dmissing[k] == 0:
                    batches.append(self.dcons[k])
            for heads in batches:
                for h in heads:
                    if h not in true:
                        true.add(h)
                        stack.append(h)
        return true


class _State:
    """A strictly closed, consistent set of literal ids with its trace."""

    __slots__ = ("prog", "true", "missing", "trace")

    def __init__(self, prog: _Program):
        self.prog = prog
        self.true: set[int] = set()
        self.missing = [len(body) for body, _, _ in prog.rules]
        self.trace: dict[int, Derivation] = {}

    @classmethod
    def seeded(cls, prog: _Program, facts: Iterable[Literal], base_trace: Mapping = None) -> "_State":
        st = cls(prog)
        base_trace = base_trace or {}
        stack: list[int] = []
        for lit in facts:
            st._assert(prog.intern(lit), base_trace.get(lit, GIVEN_DERIVATION), stack)
        for k in prog.unconditional:
            _, head, why = prog.rules[k]
            for h in head:
                st._assert(h, why, stack)
        st._propagate(stack)
        return st

    def copy(self) -> "_State":
        st = _State.__new__(_State)
        st.prog = self.prog
        st.true = set(self.true)
        st.missing = list(self.missing)
        st.trace = dict(self.trace)
        return st

    def _assert(self, i: int, why: Derivation, stack: list) -> None:
        if i in self.true:
            return
        c = self.prog.comp[i]
        if c in self.true:
            raise InconsistencyError(self.prog.lits[i], self.prog.lits[c])
        self.true.add(i)
        self.trace.setdefault(i, why)
        stack.append(i)

    def _propagate(self, stack: list) -> None:
        prog = self.prog
        while stack:
            i = stack.pop()
            for k in prog.watch.get(i, ()):
                self.missing[k] -= 1
                if self.missing[k] == 0:
                    _, head, why = prog.rules[k]
                    for h in head:
                        self._assert(h, why, stack)

    def add(self, ids: Iterable[int], why: Derivation) -> None:
        stack: list[int] = []
        for i in ids:
            self._assert(i, why, stack)
        self._propagate(stack)

    def applicable(self, k: int) -> bool:
        return self.prog.dpre[k] <= self.true and not self.prog.blocked(k, self.true)

    def extension(self, applied: Sequence[int]) -> Extension:
        prog = self.prog
        lits = frozenset(prog.lits[i] for i in self.true)
        trace = {prog.lits[i]: d for i, d in self.trace.items()}
        return Extension(lits, tuple(prog.defaults[k] for k in applied), trace)


def _rebuild(prog: _Program, facts, base_trace, candidate: set[int]) -> Optional[tuple[_State, list[int]]]:
    """Reconstruct ``candidate`` from the facts and the defaults it keeps usable.

    Returns the rebuilt state when it equals the candidate, else ``None``.
    """
    if any(prog.comp[i] in candidate for i in candidate):
        return None
    usable = [k for k in range(len(prog.defaults))
              if prog.dpre[k] <= candidate and not prog.blocked(k, candidate)]
    try:
        st = _State.seeded(prog, facts, base_trace)
        applied: list[int] = []
        pending = list(usable)
        progress = True
        while progress:
            progress = False
            for k in pending:
                if prog.dpre[k] <= st.true:
                    st.add(prog.dcons[k], prog.dwhy[k])
                    applied.append(k)
                    pending.remove(k)
                    progress = True
                    break
    except InconsistencyError:
        return None
    if st.true != candidate:
        return None
    return st, applied


def _deterministic(prog: _Program, facts, base_trace) -> tuple[_State, list[int]]:
    st = _State.seeded(prog, facts, base_trace)
    applied: list[int] = []
    settled: set[int] = set()
    while True:
        for k in range(len(prog.defaults)):
            if k in settled or not st.applicable(k):
                continue
            trial = st.copy()
            try:
                trial.add(prog.dcons[k], prog.dwhy[k])
            except InconsistencyError:
                settled.add(k)
                continue
            st = trial
            applied.append(k)
            settled.add(k)
            break
        else:
            return st, applied


def _enumerate(prog: _Program, facts, base_trace, limit: int, cap: int) -> tuple[list[Extension], bool]:
    base = _State.seeded(prog, facts, base_trace)
    reach = prog.reachable(base.true)
    relevant = [k for k in range(len(prog.defaults)) if prog.dpre[k] <= reach]
    if len(relevant) > cap:
        raise ExtensionCapError(
            f"{len(relevant)} applicable ground defaults exceed the enumeration cap of {cap}; "
            "use the deterministic extension instead"
        )
    found: list[Extension] = []
    seen: set[frozenset] = set()
    for size in range(len(relevant) + 1):
        for subset in itertools.combinations(relevant, size):
            st = base.copy()
            try:
                for k in subset:
                    st.add(prog.dcons[k], prog.dwhy[k])
            except InconsistencyError:
                continue
            cand = st.true
            generating = [k for k in relevant if prog.dpre[k] <= cand and not prog.blocked(k, cand)]
            if generating != list(subset):
                continue
            key = frozenset(cand)
            if key in seen:
                continue
            rebuilt = _rebuild(prog, facts, base_trace, set(cand))
            if rebuilt is None:
                continue
            seen.add(key)
            found.append(rebuilt[0].extension(rebuilt[1]))
            if len(found) > limit:
                return found[:limit], True
    return found, False


def _extension(prog: _Program, facts, base_trace, cap: int) -> Optional[Extension]:
    st, applied = _deterministic(prog, facts, base_trace)
    if _rebuild(prog, facts, base_trace, set(st.true)) is not None:
        return st.extension(applied)
    log.debug("deterministic pass produced a non-extension; enumerating")
    exts, _ = _enumerate(prog, facts, base_trace, 1, cap)
    return exts[0] if exts else None


# -- public operations ------------------------------------------------------


def strict_closure(facts: Iterable[Literal], rules: Sequence[GroundRule]) -> frozenset:
    """Least set containing ``facts`` and closed under ``rules``.

    Raises :class:`InconsistencyError` on the first complementary pair.
    """
    prog = _Program(rules, ())
    st = _State.seeded(prog, [canonicalize(f) for f in facts])
    return frozenset(prog.lits[i] for i in st.true)


def applicable(d: GroundDefault, current: Union[set, frozenset]) -> bool:
    return all(p in current for p in d.prerequisite) and not any(
        j.complement() in current for j in d.justification
    )


def compute_extension(
    facts: Iterable[Literal],
    strict: Sequence[GroundRule],
    defaults: Sequence[GroundDefault],
    *,
    cap: int = DEFAULT_EXTENSION_CAP,
) -> Optional[Extension]:
    """One extension, chosen by scanning defaults in a fixed order.

    Defaults are tried by descending layer, then id, then ground instance;
    the first applicable one is applied and the scan restarts.  If the
    result fails the extension check (possible with semi-normal defaults)
    the first enumerated extension is returned instead, or ``None``.
    """
    prog = _Program(strict, defaults)
    return _extension(prog, [canonicalize(f) for f in facts], None, cap)


def enumerate_extensions(
    facts: Iterable[Literal],
    strict: Sequence[GroundRule],
    defaults: Sequence[GroundDefault],
    limit: int = DEFAULT_MAX_EXTENSIONS,
    *,
    cap: int = DEFAULT_EXTENSION_CAP,
) -> list[Extension]:
    """All extensions (at most ``limit``), by testing every generating set."""
    prog = _Program(strict, defaults)
    exts, _ = _enumerate(prog, [canonicalize(f) for f in facts], None, limit, cap)
    return exts


def is_extension(
    facts: Iterable[Literal],
    strict: Sequence[GroundRule],
    defaults: Sequence[GroundDefault],
    candidate: Iterable[Literal],
) -> bool:
    prog = _Program(strict, defaults)
    cand = {prog.intern(canonicalize(l)) for l in candidate}
    return _rebuild(prog, [canonicalize(f) for f in facts], None, cand) is not None


# -- strata -----------------------------------------------------------------


def literal_layer(lit: Literal, registry: Mapping[str, PredicateSymbol]) -> int:
    sym = registry.get(base_predicate(lit.atom.property))
    return sym.layer if sym is not None else 1


@dataclass(frozen=True)
class StratumRecord:
    stratum: Union[int, str]
    rules: int
    defaults: int
    extensions: int
    derived: int
    anomalies: int


@dataclass
class RunResult:
    status: str
    extensions: tuple = ()
    stratum_log: tuple = ()
    halted_at: Union[int, str, None] = None
    truncated: bool = False
    warnings: tuple = ()
    error: Optional[str] = None

    def anomaly_atoms(self) -> list[list[Literal]]:
        return [ext.anomalies() for ext in self.extensions]


def _participates(layer: int, heads: Sequence[Literal], stratum, registry) -> bool:
    if stratum == "all":
        return True
    return layer >= stratum and all(literal_layer(h, registry) >= stratum - 1 for h in heads)


def run_strata(
    rb: RuleBase,
    s: Scenario,
    *,
    strata: bool = True,
    all_extensions: bool = False,
    max_extensions: int = DEFAULT_MAX_EXTENSIONS,
    extension_cap: int = DEFAULT_EXTENSION_CAP,
    grounding_cap: int = DEFAULT_GROUNDING_CAP,
) -> RunResult:
    """Saturate layer 3, then 2, then 1, halting once a basic anomaly appears.

    With ``strata=False`` a single fixpoint over every rule is computed.
    Conclusions of a higher stratum enter the next one as facts.
    """
    strict, defaults = ground_rules(rb, s, grounding_cap)
    defaults += generate_persistence(rb, s)
    facts = list(s.facts) + static_facts(rb)
    registry = rb.predicates
    plan = [3, 2, 1] if strata else ["all"]

    branches = [Extension(frozenset(facts), (), {f: GIVEN_DERIVATION for f in facts})]
    records, truncated, halted = [], False, None
    try:
        for stratum in plan:
            st_rules = [r for r in strict if _participates(r.layer, r.head, stratum, registry)]
            st_defaults = [d for d in defaults if _participates(d.layer, d.consequent, stratum, registry)]
            prog = _Program(st_rules, st_defaults)
            nxt: list[Extension] = []
            seen = set()
            for br in branches:
                if all_extensions:
                    found, cut = _enumerate(prog, br.literals, br.trace, max_extensions, extension_cap)
                    truncated = truncated or cut
                else:
                    one = _extension(prog, br.literals, br.trace, extension_cap)
                    if one is None:
                        raise NoExtensionError(f"no extension exists at stratum {stratum}")
                    found = [one]
                for ext in found:
                    if ext.literals in seen:
                        continue
                    seen.add(ext.literals)
                    applied = {d.label: d for d in br.applied + ext.applied}
                    nxt.append(Extension(ext.literals, tuple(applied.values()), ext.trace))
            if len(nxt) > max_extensions:
                nxt, truncated = nxt[:max_extensions], True
            derived = len(nxt[0].literals - branches[0].literals) if nxt else 0
            branches = nxt
            n_anom = len({a for ext in branches for a in ext.anomalies()})
            records.append(StratumRecord(stratum, len(st_rules), len(st_defaults), len(branches), derived, n_anom))
            log.debug("stratum %s: %d extension(s), %d anomalies", stratum, len(branches), n_anom)
            if n_anom:
                halted = stratum
                break
    except InconsistencyError as exc:
        return RunResult(INCONSISTENT_FACTS, (), tuple(records), None, False, (), str(exc))

    if any(ext.anomalies() for ext in branches):
        status = ANOMALY_FOUND
    elif truncated:
        status = EXTENSION_LIMIT_HIT
    else:
        status = NO_ANOMALY
    warnings = []
    for i, ext in enumerate(branches):
        times = {a.atom.time for a in ext.anomalies()}
        if len(times) > 1:
            warnings.append(
                f"extension {i + 1}: basic anomalies at {len(times)} distinct states "
                f"({', '.join(map(str, sorted(times)))}); a single abnormal transition is expected"
            )
    return RunResult(status, tuple(branches), tuple(records), halted, truncated, tuple(warnings))
