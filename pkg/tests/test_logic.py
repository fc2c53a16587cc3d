import pytest
from hypothesis import given
from hypothesis import strategies as st

from normcause.logic import (
    AGENT,
    SYMBOL,
    ArityError,
    Atom,
    Combine,
    Constant,
    Literal,
    Modality,
    NegatedProperty,
    PredicateSymbol,
    TimeVar,
    Variable,
    canonicalize,
    complements,
    fold_arity,
    holds,
    is_ground,
    neg,
    pos,
    substitute,
    unfold,
)

REGISTRY = {
    "stops": PredicateSymbol("stops", 1, 1),
    "control": PredicateSymbol("control", 1, 1),
    "crash": PredicateSymbol("crash", 2, 2),
    "is_follower": PredicateSymbol("is_follower", 2, 2, frozenset({"backward_persist"})),
    "changes_speed": PredicateSymbol("changes_speed", 2, 1, kinds=(SYMBOL, AGENT)),
}

A, B = Constant("A"), Constant("B")
STOPS = Constant("stops")


def test_predicate_symbol_flags():
    sym = REGISTRY["is_follower"]
    assert sym.backward_persistent and not sym.static and not sym.kernel
    assert REGISTRY["stops"].kernel
    assert REGISTRY["changes_speed"].subject_index == 1


# -- canonicalize -----------------------------------------------------------


def test_not_p_rewritten_onto_sign():
    lit = pos(holds(NegatedProperty(STOPS), B, 2))
    assert canonicalize(lit) == neg(holds(STOPS, B, 2))


def test_double_negation_collapses():
    lit = neg(holds(NegatedProperty(NegatedProperty(STOPS)), B, 2))
    assert canonicalize(lit) == neg(holds(STOPS, B, 2))


def test_canonical_literal_unchanged():
    lit = pos(Atom(Modality.MUST_DO, STOPS, B, 1))
    assert canonicalize(lit) is lit


def test_negated_hold_of_not_p_is_positive():
    assert canonicalize(neg(holds(NegatedProperty(STOPS), A, 0))) == pos(holds(STOPS, A, 0))


# -- complements ------------------------------------------------------------


def test_complements_examples():
    assert complements(pos(holds(STOPS, B, 2)), neg(holds(STOPS, B, 2)))
    assert complements(pos(holds(STOPS, B, 2)), pos(holds(NegatedProperty(STOPS), B, 2)))
    assert not complements(pos(holds(STOPS, B, 2)), pos(holds(STOPS, B, 1)))


names = st.sampled_from(["stops", "control", "runs_slowly", "bend"])
agents = st.sampled_from(["A", "B", "C"])
times = st.integers(0, 6)


@st.composite
def literals(draw):
    prop = Constant(draw(names))
    for _ in range(draw(st.integers(0, 3))):
        prop = NegatedProperty(prop)
    return Literal(holds(prop, draw(agents), draw(times)), draw(st.booleans()))


@given(literals())
def test_canonicalize_idempotent(lit):
    once = canonicalize(lit)
    assert canonicalize(once) == once
    assert not isinstance(once.atom.property, NegatedProperty)


@given(names, agents, times)
def test_four_encodings_give_two_complementary_literals(p, ag, t):
    base = Constant(p)
    encodings = [
        Literal(holds(prop, ag, t), sign)
        for prop in (base, NegatedProperty(base))
        for sign in (True, False)
    ]
    canon = {canonicalize(e) for e in encodings}
    assert len(canon) == 2
    a, b = canon
    assert complements(a, b)


@given(literals(), literals())
def test_complements_symmetric_and_irreflexive(a, b):
    assert complements(a, b) == complements(b, a)
    assert not complements(a, a)


# -- arity folding ----------------------------------------------------------


def test_fold_binary_is_follower():
    atom = fold_arity(Modality.HOLDS, "is_follower", ["B", "A"], 2, REGISTRY)
    assert atom == Atom(Modality.HOLDS, Combine(Constant("is_follower"), A), B, 2)


def test_fold_unary_unchanged():
    assert fold_arity(Modality.HOLDS, "stops", ["A"], 1, REGISTRY) == holds("stops", "A", 1)


def test_fold_crash_subject_is_first_agent():
    atom = fold_arity(Modality.HOLDS, "crash", ["A", "B"], 2, REGISTRY)
    assert atom == Atom(Modality.HOLDS, Combine(Constant("crash"), B), A, 2)


def test_fold_symbol_first_predicate_uses_agent_as_subject():
    atom = fold_arity(Modality.HOLDS, "changes_speed", ["plus", "A"], 1, REGISTRY)
    assert atom.subject == A
    assert atom.property == Combine(Constant("changes_speed"), Constant("plus"), extra_first=True)


def test_fold_arity_mismatch():
    with pytest.raises(ArityError):
        fold_arity(Modality.HOLDS, "crash", ["A"], 2, REGISTRY)
    with pytest.raises(ArityError):
        fold_arity(Modality.HOLDS, "stops", ["A", "B"], 2, REGISTRY)
    with pytest.raises(ArityError):
        fold_arity(Modality.HOLDS, "bogus", ["A"], 2, REGISTRY)


def test_fold_variable_property():
    atom = fold_arity(Modality.NORMALLY, Variable("P"), [Variable("Ag")], TimeVar("T"), REGISTRY)
    assert atom == Atom(Modality.NORMALLY, Variable("P"), Variable("Ag"), TimeVar("T"))


@given(
    st.sampled_from(sorted(REGISTRY)),
    st.sampled_from([Modality.HOLDS, Modality.MUST_DO, Modality.ABLE_TO_DO]),
    st.lists(agents, min_size=2, max_size=2),
    times,
)
def test_fold_unfold_round_trip(name, modality, ags, t):
    sym = REGISTRY[name]
    args = [Constant(a) if k == AGENT else Constant("plus") for a, k in zip(ags, sym.kinds)]
    atom = fold_arity(modality, name, args, t, REGISTRY)
    assert unfold(atom) == (modality, Constant(name), args, t)


# -- substitution -----------------------------------------------------------


def test_substitute_time_offset():
    pattern = pos(holds("stops", Variable("Ag"), TimeVar("T", 1)))
    assert substitute(pattern, {"Ag": B, "T": 1}) == pos(holds("stops", "B", 2))


def test_substitute_combine():
    pattern = pos(Atom(Modality.HOLDS, Combine(Constant("is_follower"), Variable("Ag2")), Variable("Ag1"), TimeVar("T")))
    got = substitute(pattern, {"Ag1": B, "Ag2": A, "T": 1})
    assert got == pos(Atom(Modality.HOLDS, Combine(Constant("is_follower"), A), B, 1))
    assert is_ground(got)


def test_substitute_empty_binding_is_identity():
    pattern = pos(holds("stops", Variable("Ag"), TimeVar("T", -1)))
    assert substitute(pattern, {}) is pattern


def test_partial_binding_leaves_variables():
    pattern = pos(holds(Variable("P"), Variable("Ag"), TimeVar("T")))
    got = substitute(pattern, {"Ag": A})
    assert not is_ground(got)
    assert got.atom.subject == A


@given(st.sampled_from(["stops", "control"]), agents, st.integers(1, 5), st.sampled_from([-1, 0, 1]))
def test_full_binding_is_ground_and_idempotent(p, ag, t, off):
    pattern = pos(holds(Variable("P"), Variable("Ag"), TimeVar("T", off)))
    b = {"P": Constant(p), "Ag": Constant(ag), "T": t}
    once = substitute(pattern, b)
    assert is_ground(once)
    assert once.atom.time == t + off
    assert substitute(once, b) == once


def test_static_atom_shape():
    with pytest.raises(ValueError):
        Atom(Modality.STATIC, STOPS, A, 1)
    with pytest.raises(ValueError):
        Atom(Modality.HOLDS, STOPS)
    b_an = Atom(Modality.B_AN, STOPS, B, 1)
    assert b_an.witness == (STOPS, B, 1)
