"""Rule-base and scenario file formats.

Rule base (``.nrk``)::

    # comment
    predicate is_follower/2 layer 2 backward_persist.
    predicate disruptive_factor/2 layer 1 unforeseeable kinds(symbol, agent).
    rule R1 layer 2: -holds(stops, Ag', T) <- holds(crash, Ag, Ag', T).
    rule R2: must(control, Ag, T).          # layer defaults to 1
    default D1 layer 1: normally(P, Ag, T) : holds(P, Ag, T+1).
    default D2 layer 2: holds(is_follower, Ag', Ag, T) & holds(stops, Ag, T)
        : must(stops, Ag', T) [holds(control, Ag', T)].

Scenario (``.scn``)::

    scenario b21.
    agents A, B.
    states 0..2.
    holds(stops, A, 1).

In rule bases identifiers starting with an uppercase letter are variables.
In scenarios they name agents, and lowercase identifiers in argument
position are plain symbols.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .logic import (
    AGENT,
    FLAGS,
    NEGATION_PREFIX,
    SYMBOL,
    ArityError,
    Atom,
    Combine,
    Constant,
    Literal,
    Modality,
    NegatedProperty,
    PredicateSymbol,
    Term,
    TimeVar,
    Variable,
    base_predicate,
    canonicalize,
    fold_arity,
    iter_variables,
    merge_sorts,
    unfold,
    variable_sorts,
)

LAYERS = (1, 2, 3)
MODAL_KEYWORDS = {m.value: m for m in Modality}


@dataclass(frozen=True)
class Diagnostic:
    line: int
    column: int
    message: str
    code: str = "syntax"

    def format(self, source: str = "<input>") -> str:
        return f"{source}:{self.line}:{self.column}: error[{self.code}]: {self.message}"


class KbError(Exception):
    """Raised with every diagnostic found in one input."""

    def __init__(self, diagnostics: Sequence[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(d.format() for d in self.diagnostics))

    def format(self, source: str = "<input>") -> str:
        return "\n".join(d.format(source) for d in self.diagnostics)


@dataclass(frozen=True)
class StrictRule:
    id: str
    layer: int
    body: tuple
    head: tuple
    allow_same: bool = False
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)

    @property
    def literals(self) -> tuple:
        return self.body + self.head


@dataclass(frozen=True)
class DefaultRule:
    id: str
    layer: int
    prerequisite: tuple
    consequent: tuple
    constraint: tuple = ()
    allow_same: bool = False
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)

    @property
    def justification(self) -> tuple:
        return self.consequent + self.constraint

    @property
    def literals(self) -> tuple:
        return self.prerequisite + self.consequent + self.constraint


@dataclass(frozen=True)
class RuleBase:
    predicates: Mapping[str, PredicateSymbol] = field(default_factory=dict)
    strict: tuple = ()
    defaults: tuple = ()

    def rule(self, rule_id: str):
        for r in self.strict + self.defaults:
            if r.id == rule_id:
                return r
        raise KeyError(rule_id)

    @property
    def rule_ids(self) -> list[str]:
        return [r.id for r in self.strict + self.defaults]

    @property
    def static_set(self) -> frozenset:
        return frozenset(p.name for p in self.predicates.values() if p.static)

    @property
    def backward_persistent_set(self) -> frozenset:
        return frozenset(p.name for p in self.predicates.values() if p.backward_persistent)

    @property
    def unforeseeable_set(self) -> frozenset:
        return frozenset(p.name for p in self.predicates.values() if p.unforeseeable)


@dataclass(frozen=True)
class Scenario:
    label: str
    agents: tuple
    horizon: int
    facts: tuple = ()
    fact_positions: tuple = field(default=(), compare=False)

    @property
    def state_range(self) -> tuple[int, int]:
        return (0, self.horizon)

    @property
    def states(self) -> range:
        return range(self.horizon + 1)


# -- tokenizer --------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*'*)
  | (?P<int>[0-9]+)
  | (?P<op><-|\.\.|[().,:&\[\]/+-])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


class _Syntax(Exception):
    def __init__(self, tok: Token, message: str):
        self.diagnostic = Diagnostic(tok.line, tok.column, message)


def tokenize(text: str) -> tuple[list[Token], list[Diagnostic]]:
    tokens: list[Token] = []
    diags: list[Diagnostic] = []
    line, line_start, i = 1, 0, 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            diags.append(Diagnostic(line, i - line_start + 1, f"unexpected character {text[i]!r}"))
            i += 1
            continue
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, i - line_start + 1))
        i = m.end()
    tokens.append(Token("eof", "", line, i - line_start + 1))
    return tokens, diags


# -- raw syntax -------------------------------------------------------------


@dataclass
class _RawArg:
    kind: str  # "ident" | "int" | "timevar"
    text: str
    value: int
    tok: Token


@dataclass
class _RawLiteral:
    positive: bool
    keyword: str
    args: list
    tok: Token


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def at(self, text: str) -> bool:
        t = self.tok
        return t.text == text and t.kind in ("op", "ident")

    def next(self) -> Token:
        t = self.tokens[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise _Syntax(self.tok, f"expected {text!r}, found {self._show(self.tok)}")
        return self.next()

    def expect_kind(self, kind: str, what: str) -> Token:
        if self.tok.kind != kind:
            raise _Syntax(self.tok, f"expected {what}, found {self._show(self.tok)}")
        return self.next()

    @staticmethod
    def _show(t: Token) -> str:
        return "end of input" if t.kind == "eof" else repr(t.text)

    def recover(self) -> None:
        """Skip past the next statement terminator."""
        while self.tok.kind != "eof":
            if self.next().text == "." and self.tokens[self.i - 1].kind == "op":
                return

    def integer(self) -> int:
        return int(self.expect_kind("int", "an integer").text)

    def literals(self) -> list[_RawLiteral]:
        out = [self.literal()]
        while self.at("&"):
            self.next()
            out.append(self.literal())
        return out

    def literal(self) -> _RawLiteral:
        start = self.tok
        positive = True
        if self.at("-"):
            self.next()
            positive = False
        kw = self.expect_kind("ident", "a literal")
        if kw.text not in MODAL_KEYWORDS:
            raise _Syntax(kw, f"unknown modality {kw.text!r}; expected one of {', '.join(MODAL_KEYWORDS)}")
        self.expect("(")
        args = [self.arg()]
        while self.at(","):
            self.next()
            args.append(self.arg())
        self.expect(")")
        return _RawLiteral(positive, kw.text, args, start if not positive else kw)

    def arg(self) -> _RawArg:
        t = self.tok
        if t.kind == "int":
            self.next()
            return _RawArg("int", t.text, int(t.text), t)
        if t.kind == "ident":
            self.next()
            if self.at("+") or self.at("-"):
                sign = 1 if self.next().text == "+" else -1
                off = self.expect_kind("int", "a time offset")
                return _RawArg("timevar", t.text, sign * int(off.text), t)
            return _RawArg("ident", t.text, 0, t)
        raise _Syntax(t, f"expected an argument, found {self._show(t)}")


def _is_var(name: str) -> bool:
    return name[:1].isupper()


# -- literal conversion -----------------------------------------------------


class _Builder:
    """Turns raw literals into folded, canonical ones and collects diagnostics."""

    def __init__(self, registry: Mapping[str, PredicateSymbol], diags: list[Diagnostic]):
        self.registry = registry
        self.diags = diags

    def error(self, tok: Token, message: str, code: str) -> None:
        self.diags.append(Diagnostic(tok.line, tok.column, message, code))

    def property_term(self, raw: _RawArg, modality: Modality, nargs: int) -> Optional[Term]:
        if raw.kind != "ident":
            self.error(raw.tok, f"expected a property name, found {raw.text!r}", "syntax")
            return None
        name = raw.text
        if _is_var(name):
            return Variable(name)
        depth = 0
        while name.startswith(NEGATION_PREFIX) and name not in self.registry:
            name = name[len(NEGATION_PREFIX):]
            depth += 1
        if depth and modality is not Modality.HOLDS:
            self.error(raw.tok, f"'{NEGATION_PREFIX}' properties are only allowed under holds", "negation")
            return None
        if name not in self.registry:
            if modality in (Modality.PERTURBATION, Modality.B_AN) and nargs == 1 and depth == 0:
                return Constant(name)  # perturbation factor symbol
            self.error(raw.tok, f"undeclared predicate {name!r}", "undeclared-predicate")
            return None
        term: Term = Constant(name)
        for _ in range(depth):
            term = NegatedProperty(term)
        return term

    def literal(self, raw: _RawLiteral, arg_term, time_term) -> Optional[Literal]:
        modality = MODAL_KEYWORDS[raw.keyword]
        if modality is Modality.STATIC:
            if len(raw.args) != 1:
                self.error(raw.tok, "static(...) takes exactly one property", "arity")
                return None
            prop = self.property_term(raw.args[0], modality, 0)
            if prop is None:
                return None
            return Literal(Atom(modality, prop), raw.positive)
        if len(raw.args) < 3:
            self.error(raw.tok, f"{raw.keyword}(...) needs a property, a subject and a time", "arity")
            return None
        middle = raw.args[1:-1]
        prop = self.property_term(raw.args[0], modality, len(middle))
        args = [arg_term(a) for a in middle]
        time = time_term(raw.args[-1])
        if prop is None or any(a is None for a in args) or time is None:
            return None
        registry = self.registry
        base = base_predicate(prop)
        if base is not None and base not in registry:
            registry = {base: PredicateSymbol(base, 1, 1)}
        try:
            atom = fold_arity(modality, prop, args, time, registry)
        except ArityError as exc:
            self.error(raw.tok, str(exc), "arity")
            return None
        return canonicalize(Literal(atom, raw.positive))


# -- rule bases -------------------------------------------------------------


def parse_rulebase(text: str) -> RuleBase:
    """Parse and validate a rule base; raises :class:`KbError`."""
    tokens, diags = tokenize(text)
    p = _Parser(tokens)
    decls: list[tuple[Token, PredicateSymbol]] = []
    raw_rules: list[tuple] = []
    while p.tok.kind != "eof":
        try:
            kw = p.expect_kind("ident", "'predicate', 'rule' or 'default'")
            if kw.text == "predicate":
                decls.append(_predicate_decl(p, kw, diags))
            elif kw.text in ("rule", "default"):
                raw_rules.append(_rule_statement(p, kw))
            else:
                raise _Syntax(kw, f"expected 'predicate', 'rule' or 'default', found {kw.text!r}")
        except _Syntax as exc:
            diags.append(exc.diagnostic)
            p.recover()

    registry: dict[str, PredicateSymbol] = {}
    for tok, sym in decls:
        if sym.name in registry:
            diags.append(Diagnostic(tok.line, tok.column, f"duplicate predicate {sym.name!r}", "duplicate-id"))
        else:
            registry[sym.name] = sym

    builder = _Builder(registry, diags)

    def arg_term(a: _RawArg) -> Optional[Term]:
        if a.kind != "ident":
            builder.error(a.tok, f"expected an agent or symbol, found {a.text!r}", "syntax")
            return None
        return Variable(a.text) if _is_var(a.text) else Constant(a.text)

    def time_term(a: _RawArg):
        if a.kind == "int":
            return a.value
        if not _is_var(a.text):
            builder.error(a.tok, f"time must be an integer or a variable, found {a.text!r}", "syntax")
            return None
        if a.value not in (-1, 0, 1):
            builder.error(a.tok, f"time offset {a.value:+d} outside -1..+1", "syntax")
            return None
        return TimeVar(a.text, a.value)

    strict, defaults, seen = [], [], set()
    for kind, tok, rid, layer, allow_same, groups in raw_rules:
        before = len(diags)
        built = [[builder.literal(r, arg_term, time_term) for r in g] for g in groups]
        if rid.text in seen:
            builder.error(rid, f"duplicate rule id {rid.text!r}", "duplicate-id")
        seen.add(rid.text)
        if layer not in LAYERS:
            builder.error(tok, f"layer {layer} outside 1..3", "layer")
        if len(diags) > before:
            continue
        built = [tuple(g) for g in built]
        if kind == "rule":
            body, head = built[1], built[0]
            rule = StrictRule(rid.text, layer, body, head, allow_same, tok.line, tok.column)
            _check_rule_vars(rule, body, head, registry, builder, tok)
            strict.append(rule)
        else:
            pre, cons, constraint = built
            rule = DefaultRule(rid.text, layer, pre, cons, constraint, allow_same, tok.line, tok.column)
            _check_rule_vars(rule, pre, cons + constraint, registry, builder, tok)
            defaults.append(rule)
    if diags:
        raise KbError(sorted(diags, key=lambda d: (d.line, d.column)))
    return RuleBase(registry, tuple(strict), tuple(defaults))


def _predicate_decl(p: _Parser, kw: Token, diags: list[Diagnostic]) -> tuple[Token, PredicateSymbol]:
    name = p.expect_kind("ident", "a predicate name")
    if _is_var(name.text) or name.text.startswith(NEGATION_PREFIX):
        raise _Syntax(name, f"predicate names must be lowercase and not start with {NEGATION_PREFIX!r}")
    if name.text in MODAL_KEYWORDS:
        raise _Syntax(name, f"{name.text!r} is a reserved word")
    p.expect("/")
    arity_tok = p.tok
    arity = p.integer()
    if arity not in (1, 2):
        raise _Syntax(arity_tok, f"surface arity must be 1 or 2, got {arity}")
    p.expect("layer")
    layer_tok = p.tok
    layer = p.integer()
    if layer not in LAYERS:
        raise _Syntax(layer_tok, f"layer {layer} outside 1..3")
    flags, kinds = set(), ()
    while not p.at("."):
        t = p.expect_kind("ident", "a flag or '.'")
        if t.text in FLAGS:
            flags.add(t.text)
        elif t.text == "kinds":
            p.expect("(")
            ks = [p.expect_kind("ident", "a kind").text]
            while p.at(","):
                p.next()
                ks.append(p.expect_kind("ident", "a kind").text)
            p.expect(")")
            if len(ks) != arity or not set(ks) <= {AGENT, SYMBOL} or AGENT not in ks:
                raise _Syntax(t, f"kinds must list {arity} of agent/symbol including an agent")
            kinds = tuple(ks)
        else:
            raise _Syntax(t, f"unknown predicate flag {t.text!r}")
    p.expect(".")
    return name, PredicateSymbol(name.text, arity, layer, frozenset(flags), kinds)


def _rule_statement(p: _Parser, kw: Token):
    rid = p.expect_kind("ident", "a rule id")
    layer = 1
    if p.at("layer"):
        p.next()
        layer = p.integer()
    allow_same = False
    if p.at("allow_same"):
        p.next()
        allow_same = True
    p.expect(":")
    if kw.text == "rule":
        head = p.literals()
        body = []
        if p.at("<-"):
            p.next()
            body = p.literals()
        p.expect(".")
        return ("rule", kw, rid, layer, allow_same, (head, body))
    pre = [] if p.at(":") else p.literals()
    p.expect(":")
    cons = p.literals()
    constraint = []
    if p.at("["):
        p.next()
        constraint = p.literals()
        p.expect("]")
    p.expect(".")
    return ("default", kw, rid, layer, allow_same, (pre, cons, constraint))


def rule_sorts(rule, registry: Mapping[str, PredicateSymbol]) -> dict[str, Optional[str]]:
    seen: dict[str, set] = {}
    for lit in rule.literals:
        for var, sort in variable_sorts(lit, registry):
            seen.setdefault(var, set()).add(sort)
    return {v: merge_sorts(s) for v, s in seen.items()}


def _check_rule_vars(rule, body, head, registry, builder: _Builder, tok: Token) -> None:
    for var, sort in rule_sorts(rule, registry).items():
        if sort is None:
            builder.error(tok, f"variable {var} used with conflicting sorts in {rule.id}", "sort")
    if not body:
        return  # universally quantified schema
    bound = {v for lit in body for v in iter_variables(lit)}
    for lit in head:
        for v in iter_variables(lit):
            if v not in bound:
                builder.error(tok, f"variable {v} in {rule.id} does not occur in its body", "unbound-variable")
                bound.add(v)


# -- scenarios --------------------------------------------------------------


def parse_scenario(text: str) -> Scenario:
    """Parse a scenario; facts come back folded and canonical."""
    tokens, diags = tokenize(text)
    p = _Parser(tokens)
    label, agents, horizon = "scenario", None, None
    raw_facts: list[_RawLiteral] = []
    header = p.tok
    while p.tok.kind != "eof":
        try:
            t = p.tok
            if t.kind == "ident" and t.text == "scenario":
                p.next()
                label = p.expect_kind("ident", "a label").text
                p.expect(".")
            elif t.kind == "ident" and t.text == "agents":
                p.next()
                names = [p.expect_kind("ident", "an agent name")]
                while p.at(","):
                    p.next()
                    names.append(p.expect_kind("ident", "an agent name"))
                p.expect(".")
                for n in names:
                    if not _is_var(n.text):
                        _late(diags, n, f"agent names must start uppercase: {n.text!r}")
                if agents is not None:
                    _late(diags, t, "agents declared twice")
                agents = tuple(n.text for n in names)
                if len(set(agents)) != len(agents):
                    _late(diags, t, "duplicate agent name")
            elif t.kind == "ident" and t.text == "states":
                p.next()
                lo_tok = p.tok
                lo = p.integer()
                p.expect("..")
                hi_tok = p.tok
                hi = p.integer()
                p.expect(".")
                if lo != 0:
                    _late(diags, lo_tok, "state range must start at 0")
                if hi < 1:
                    _late(diags, hi_tok, "state range must contain at least states 0 and 1")
                if horizon is not None:
                    _late(diags, t, "states declared twice")
                horizon = max(hi, 1)
            else:
                raw_facts.append(p.literal())
                p.expect(".")
        except _Syntax as exc:
            diags.append(exc.diagnostic)
            p.recover()
    if agents is None:
        diags.append(Diagnostic(header.line, header.column, "missing 'agents' declaration", "syntax"))
        agents = ()
    if horizon is None:
        diags.append(Diagnostic(header.line, header.column, "missing 'states' declaration", "syntax"))
        horizon = 1

    facts, positions = [], []
    for raw in raw_facts:
        lit = _scenario_fact(raw, agents, horizon, diags)
        if lit is not None:
            facts.append(lit)
            positions.append((raw.tok.line, raw.tok.column))
    if diags:
        raise KbError(sorted(diags, key=lambda d: (d.line, d.column)))
    return Scenario(label, agents, horizon, tuple(facts), tuple(positions))


def _late(diags: list[Diagnostic], tok: Token, message: str) -> None:
    # statement already consumed; report without resynchronising
    diags.append(Diagnostic(tok.line, tok.column, message))


def _scenario_fact(raw: _RawLiteral, agents, horizon, diags) -> Optional[Literal]:
    kinds = []

    def arg_term(a: _RawArg) -> Optional[Term]:
        if a.kind != "ident":
            diags.append(Diagnostic(a.tok.line, a.tok.column, f"expected an agent or symbol, found {a.text!r}", "syntax"))
            return None
        if _is_var(a.text):
            if a.text not in agents:
                diags.append(Diagnostic(a.tok.line, a.tok.column, f"unknown agent {a.text!r}", "unknown-agent"))
                return None
            kinds.append(AGENT)
        else:
            kinds.append(SYMBOL)
        return Constant(a.text)

    def time_term(a: _RawArg):
        if a.kind != "int":
            diags.append(Diagnostic(a.tok.line, a.tok.column, f"fact time must be an integer, found {a.text!r}", "non-ground"))
            return None
        if not 0 <= a.value <= horizon:
            diags.append(Diagnostic(a.tok.line, a.tok.column, f"time {a.value} outside states 0..{horizon}", "range"))
            return None
        return a.value

    if raw.args and raw.args[0].kind == "ident" and _is_var(raw.args[0].text):
        a = raw.args[0]
        diags.append(Diagnostic(a.tok.line, a.tok.column, f"facts must be ground; {a.text!r} is a variable", "non-ground"))
        return None

    class _Inferred(dict):
        """Registry that declares whatever predicate a fact uses, with the fact's own argument kinds."""

        def get(self, name, default=None):
            if AGENT not in kinds:
                return default
            return PredicateSymbol(name, len(kinds), 1, frozenset(), tuple(kinds))

        def __contains__(self, name):
            return not name.startswith(NEGATION_PREFIX)

    before = len(diags)
    builder = _Builder(_Inferred(), diags)
    lit = builder.literal(raw, arg_term, time_term)
    if lit is None:
        return None
    if lit.atom.modality is not Modality.STATIC and AGENT not in kinds and len(diags) == before:
        diags.append(Diagnostic(raw.tok.line, raw.tok.column, "fact has no agent argument", "unknown-agent"))
        return None
    return lit


def validate_crossrefs(rb: RuleBase, s: Scenario) -> list[Diagnostic]:
    """Check scenario facts against the rule base's predicate declarations."""
    out: list[Diagnostic] = []
    positions = s.fact_positions or [(0, 0)] * len(s.facts)
    for lit, (line, col) in zip(s.facts, positions):
        modality, prop, args, _ = unfold(lit.atom)
        name = base_predicate(prop)
        sym = rb.predicates.get(name)
        if sym is None:
            if modality in (Modality.PERTURBATION, Modality.B_AN) and len(args) == 1:
                continue
            out.append(Diagnostic(line, col, f"undeclared predicate {name!r}", "undeclared-predicate"))
            continue
        if modality is Modality.STATIC:
            continue
        if len(args) != sym.surface_arity:
            out.append(Diagnostic(
                line, col,
                f"{name} declared with {sym.surface_arity} argument(s), fact has {len(args)}",
                "arity",
            ))
            continue
        kinds = tuple(AGENT if a.name in s.agents else SYMBOL for a in args)
        if kinds != sym.kinds:
            out.append(Diagnostic(
                line, col,
                f"{name} expects arguments ({', '.join(sym.kinds)}), fact has ({', '.join(kinds)})",
                "kind",
            ))
    return out


# -- pretty-printing --------------------------------------------------------


def render_term(t) -> str:
    if isinstance(t, int):
        return str(t)
    if isinstance(t, TimeVar):
        return str(t)
    if isinstance(t, NegatedProperty):
        return NEGATION_PREFIX + render_term(t.inner)
    if isinstance(t, Combine):
        raise ValueError("Combine terms are rendered through their atom")
    return t.name


def render_literal(lit: Literal) -> str:
    """Surface syntax of a (possibly ground) literal."""
    modality, prop, args, time = unfold(lit.atom)
    parts = [render_term(prop)] + [render_term(a) for a in args]
    if time is not None:
        parts.append(render_term(time))
    sign = "" if lit.positive else "-"
    return f"{sign}{modality.value}({', '.join(parts)})"


def _render_conj(lits) -> str:
    return " & ".join(render_literal(l) for l in lits)


def render_rulebase(rb: RuleBase) -> str:
    lines = []
    for sym in rb.predicates.values():
        decl = f"predicate {sym.name}/{sym.surface_arity} layer {sym.layer}"
        for flag in sorted(sym.flags):
            decl += f" {flag}"
        if sym.kinds != (AGENT,) * sym.surface_arity:
            decl += f" kinds({', '.join(sym.kinds)})"
        lines.append(decl + ".")
    for r in rb.strict:
        head = f"rule {r.id} layer {r.layer}{' allow_same' if r.allow_same else ''}: {_render_conj(r.head)}"
        if r.body:
            head += f" <- {_render_conj(r.body)}"
        lines.append(head + ".")
    for d in rb.defaults:
        line = f"default {d.id} layer {d.layer}{' allow_same' if d.allow_same else ''}: "
        line += f"{_render_conj(d.prerequisite)} : {_render_conj(d.consequent)}"
        if d.constraint:
            line += f" [{_render_conj(d.constraint)}]"
        lines.append(line + ".")
    return "\n".join(lines) + "\n"


def render_scenario(s: Scenario) -> str:
    lines = [f"scenario {s.label}."]
    if s.agents:
        lines.append(f"agents {', '.join(s.agents)}.")
    lines.append(f"states 0..{s.horizon}.")
    lines.extend(render_literal(f) + "." for f in s.facts)
    return "\n".join(lines) + "\n"
