"""Terms and literals of the reified norm logic.

Properties are first-class terms, so modal-looking operators (``HOLDS``,
``MUST-DO``, ...) are ordinary predicates over them.  Surface atoms with two
argument slots are folded into ternary form by packing the extra argument into
a :class:`Combine` term, and the reified negation ``not-p`` is rewritten onto
the literal sign.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Iterator, Mapping, Optional, Sequence, Union


class Modality(str, enum.Enum):
    HOLDS = "holds"
    MUST_DO = "must"
    ABLE_TO_DO = "able"
    NORMALLY = "normally"
    PERTURBATION = "perturb"
    STATIC = "static"
    B_AN = "b_an"

    @property
    def display(self) -> str:
        return _DISPLAY[self]


_DISPLAY = {
    Modality.HOLDS: "HOLDS",
    Modality.MUST_DO: "MUST-DO",
    Modality.ABLE_TO_DO: "ABLE-TO-DO",
    Modality.NORMALLY: "NORMALLY",
    Modality.PERTURBATION: "ABNORMAL-PERTURBATION",
    Modality.STATIC: "STATIC",
    Modality.B_AN: "B-An",
}

AGENT = "agent"
SYMBOL = "symbol"
PROPERTY = "property"
TIME = "time"

FLAGS = frozenset({"static", "backward_persist", "unforeseeable"})
NEGATION_PREFIX = "not_"


class ArityError(ValueError):
    pass


@dataclass(frozen=True)
class PredicateSymbol:
    """A declared property predicate.

    ``kinds`` gives the sort of each surface argument before the time
    argument; exactly one position per predicate becomes the subject (the
    first ``agent`` position).
    """

    name: str
    surface_arity: int
    layer: int
    flags: frozenset = frozenset()
    kinds: tuple = ()

    def __post_init__(self):
        if not self.kinds:
            object.__setattr__(self, "kinds", (AGENT,) * self.surface_arity)

    @property
    def kernel(self) -> bool:
        return self.layer == 1

    @property
    def static(self) -> bool:
        return "static" in self.flags

    @property
    def backward_persistent(self) -> bool:
        return "backward_persist" in self.flags

    @property
    def unforeseeable(self) -> bool:
        return "unforeseeable" in self.flags

    @property
    def subject_index(self) -> int:
        return self.kinds.index(AGENT)

    @property
    def extra_kind(self) -> Optional[str]:
        if self.surface_arity == 1:
            return None
        return self.kinds[1 - self.subject_index]


@dataclass(frozen=True)
class Constant:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Variable:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class NegatedProperty:
    inner: "Term"

    def __str__(self) -> str:
        return f"not-{self.inner}"


@dataclass(frozen=True)
class Combine:
    """Folded property ``COMBINE(p, extra)``.

    ``extra_first`` records whether the extra argument preceded the subject
    in the surface form, which is all :func:`unfold` needs to rebuild it.
    """

    predicate: Constant
    extra: "Term"
    extra_first: bool = False

    def __str__(self) -> str:
        return f"COMBINE({self.predicate}, {self.extra})"


Term = Union[Constant, Variable, NegatedProperty, Combine]


@dataclass(frozen=True)
class TimeVar:
    name: str
    offset: int = 0

    def __post_init__(self):
        if self.offset not in (-1, 0, 1):
            raise ValueError(f"time offset {self.offset} outside -1..1")

    def __str__(self) -> str:
        if self.offset == 0:
            return self.name
        return f"{self.name}{self.offset:+d}"


TimeExpr = Union[int, TimeVar]


@dataclass(frozen=True)
class Atom:
    modality: Modality
    property: Term
    subject: Optional[Term] = None
    time: Optional[TimeExpr] = None

    def __post_init__(self):
        if self.modality is Modality.STATIC:
            if self.subject is not None or self.time is not None:
                raise ValueError("STATIC atoms carry only a property")
        elif self.subject is None or self.time is None:
            raise ValueError(f"{self.modality.display} atoms need a subject and a time")

    @property
    def witness(self) -> Optional[tuple]:
        if self.modality is not Modality.B_AN:
            return None
        return (self.property, self.subject, self.time)

    def __str__(self) -> str:
        if self.modality is Modality.STATIC:
            return f"STATIC({self.property})"
        return f"{self.modality.display}({self.property}, {self.subject}, {self.time})"


@dataclass(frozen=True)
class Literal:
    atom: Atom
    positive: bool = True
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.atom, self.positive)))

    def __hash__(self) -> int:
        return self._hash

    def complement(self) -> "Literal":
        return Literal(self.atom, not self.positive)

    @property
    def modality(self) -> Modality:
        return self.atom.modality

    def __str__(self) -> str:
        return str(self.atom) if self.positive else f"¬{self.atom}"


def pos(atom: Atom) -> Literal:
    return Literal(atom, True)


def neg(atom: Atom) -> Literal:
    return Literal(atom, False)


def holds(prop: Union[str, Term], subject: Union[str, Term], time: TimeExpr) -> Atom:
    return Atom(Modality.HOLDS, _term(prop), _term(subject), time)


def _term(x: Union[str, Term]) -> Term:
    return Constant(x) if isinstance(x, str) else x


# -- negation ---------------------------------------------------------------


def _peel(prop: Term) -> tuple[Term, int]:
    depth = 0
    while isinstance(prop, NegatedProperty):
        prop = prop.inner
        depth += 1
    return prop, depth


def canonicalize(lit: Literal) -> Literal:
    """Return the canonical form of ``lit``.

    ``HOLDS(not-p, ...)`` is rewritten to ``¬HOLDS(p, ...)`` (and vice versa
    for a negative sign), and stacked property negations cancel pairwise.
    Other modalities only get the double-negation collapse.
    """
    base, depth = _peel(lit.atom.property)
    if depth == 0:
        return lit
    if lit.atom.modality is Modality.HOLDS:
        positive = lit.positive if depth % 2 == 0 else not lit.positive
        return Literal(replace(lit.atom, property=base), positive)
    prop = base if depth % 2 == 0 else NegatedProperty(base)
    return Literal(replace(lit.atom, property=prop), lit.positive)


def complements(a: Literal, b: Literal) -> bool:
    a, b = canonicalize(a), canonicalize(b)
    return a.atom == b.atom and a.positive != b.positive


# -- arity folding ----------------------------------------------------------


def fold_arity(
    modality: Modality,
    prop: Union[str, Term],
    args: Sequence[Union[str, Term]],
    time: TimeExpr,
    registry: Mapping[str, PredicateSymbol],
) -> Atom:
    """Fold a surface atom ``modality(prop, *args, time)`` to ternary form.

    The subject is the first ``agent``-kind argument; for a two-argument
    predicate the other argument goes into ``Combine(prop, extra)``.  A
    variable property takes exactly one argument, the subject.
    """
    prop = _term(prop)
    args = [_term(a) for a in args]
    base, depth = _peel(prop)
    if isinstance(base, Variable):
        if len(args) != 1:
            raise ArityError(f"variable property {base} takes exactly one argument, got {len(args)}")
        folded: Term = base
        subject = args[0]
    else:
        if not isinstance(base, Constant):
            raise ArityError(f"property {base} is already folded")
        sym = registry.get(base.name)
        if sym is None:
            raise ArityError(f"undeclared predicate {base.name}")
        if len(args) != sym.surface_arity:
            raise ArityError(
                f"{base.name} takes {sym.surface_arity} argument(s) before the time, got {len(args)}"
            )
        si = sym.subject_index
        subject = args[si]
        if sym.surface_arity == 1:
            folded = base
        else:
            folded = Combine(base, args[1 - si], extra_first=si == 1)
    for _ in range(depth):
        folded = NegatedProperty(folded)
    return Atom(modality, folded, subject, time)


def unfold(atom: Atom) -> tuple[Modality, Term, list, Optional[TimeExpr]]:
    """Inverse of :func:`fold_arity`: ``(modality, property, args, time)``."""
    if atom.modality is Modality.STATIC:
        return atom.modality, atom.property, [], None
    base, depth = _peel(atom.property)
    if isinstance(base, Combine):
        args = [base.extra, atom.subject] if base.extra_first else [atom.subject, base.extra]
        prop: Term = base.predicate
    else:
        args = [atom.subject]
        prop = base
    for _ in range(depth):
        prop = NegatedProperty(prop)
    return atom.modality, prop, args, atom.time


def base_predicate(prop: Term) -> Optional[str]:
    """Name of the predicate constant underlying a property term, if any."""
    prop, _ = _peel(prop)
    if isinstance(prop, Combine):
        return prop.predicate.name
    if isinstance(prop, Constant):
        return prop.name
    return None


# -- substitution -----------------------------------------------------------

Binding = Mapping[str, Union[Term, int]]


def substitute(x, binding: Binding):
    """Apply ``binding`` to a term, time expression, atom or literal."""
    if not binding:
        return x
    if isinstance(x, Literal):
        return Literal(substitute(x.atom, binding), x.positive)
    if isinstance(x, Atom):
        return Atom(
            x.modality,
            substitute(x.property, binding),
            None if x.subject is None else substitute(x.subject, binding),
            None if x.time is None else substitute(x.time, binding),
        )
    if isinstance(x, TimeVar):
        value = binding.get(x.name)
        if value is None:
            return x
        if not isinstance(value, int):
            raise TypeError(f"time variable {x.name} bound to non-integer {value!r}")
        return value + x.offset
    if isinstance(x, Variable):
        return binding.get(x.name, x)
    if isinstance(x, NegatedProperty):
        return NegatedProperty(substitute(x.inner, binding))
    if isinstance(x, Combine):
        return Combine(x.predicate, substitute(x.extra, binding), x.extra_first)
    return x


def iter_variables(x) -> Iterator[str]:
    if isinstance(x, Literal):
        yield from iter_variables(x.atom)
    elif isinstance(x, Atom):
        yield from iter_variables(x.property)
        if x.subject is not None:
            yield from iter_variables(x.subject)
        if isinstance(x.time, TimeVar):
            yield x.time.name
    elif isinstance(x, Variable):
        yield x.name
    elif isinstance(x, NegatedProperty):
        yield from iter_variables(x.inner)
    elif isinstance(x, Combine):
        yield from iter_variables(x.extra)


def is_ground(x) -> bool:
    return next(iter_variables(x), None) is None


def variable_sorts(lit: Literal, registry: Mapping[str, PredicateSymbol]) -> Iterator[tuple[str, str]]:
    """Yield ``(variable, sort)`` for every variable occurrence in ``lit``."""
    atom = lit.atom
    base, _ = _peel(atom.property)
    if isinstance(base, Variable):
        yield base.name, PROPERTY
    elif isinstance(base, Combine) and isinstance(base.extra, Variable):
        sym = registry.get(base.predicate.name)
        yield base.extra.name, (sym.extra_kind if sym is not None else AGENT)
    if isinstance(atom.subject, Variable):
        yield atom.subject.name, AGENT
    if isinstance(atom.time, TimeVar):
        yield atom.time.name, TIME


def merge_sorts(sorts: set) -> Optional[str]:
    """Combine the sorts a variable is used with; ``None`` on conflict.

    Symbols may stand in property position (a perturbation factor such as
    ``slippery``), so ``{symbol, property}`` narrows to ``symbol``.
    """
    if len(sorts) == 1:
        return next(iter(sorts))
    if sorts == {SYMBOL, PROPERTY}:
        return SYMBOL
    return None
