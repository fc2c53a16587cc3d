"""Independent reference implementations used as test oracles.

Nothing here calls into ``normcause.engine`` beyond the plain data classes:
the closure is a naive fixpoint loop and extensions are checked straight
from the fixpoint definition, candidate by candidate.
"""

from __future__ import annotations

import itertools
import random

from normcause.engine import GroundDefault, GroundRule
from normcause.logic import Literal, holds


def lit(name: str, positive: bool = True, who: str = "X", t: int = 0) -> Literal:
    return Literal(holds(name, who, t), positive)


def naive_closure(lits, rules) -> set:
    out = set(lits)
    changed = True
    while changed:
        changed = False
        for r in rules:
            if all(b in out for b in r.body) and not all(h in out for h in r.head):
                out.update(r.head)
                changed = True
    return out


def consistent(lits) -> bool:
    return not any(l.complement() in lits for l in lits)


def gamma(candidate, facts, rules, defaults) -> set:
    """Smallest rule-closed superset of the facts closed under the defaults
    whose justifications ``candidate`` does not contradict."""
    s = naive_closure(facts, rules)
    changed = True
    while changed:
        changed = False
        for d in defaults:
            if all(p in s for p in d.prerequisite) \
                    and not any(j.complement() in candidate for j in d.justification) \
                    and not all(c in s for c in d.consequent):
                s = naive_closure(s | set(d.consequent), rules)
                changed = True
    return s


def oracle_extensions(facts, rules, defaults) -> set[frozenset]:
    """Apply every subset of defaults, close, keep the fixpoints of gamma."""
    found = set()
    for n in range(len(defaults) + 1):
        for subset in itertools.combinations(defaults, n):
            cand = naive_closure(set(facts).union(*[d.consequent for d in subset]), rules)
            if consistent(cand) and gamma(cand, facts, rules, defaults) == cand:
                found.add(frozenset(cand))
    return found


def random_theory(rng: random.Random, *, n_atoms=10, n_defaults=6, n_rules=6, normal_only=False):
    """A ground theory over ``HOLDS(pK, X, 0)`` atoms with a consistent fact set."""
    atoms = [f"p{i}" for i in range(rng.randint(2, n_atoms))]

    def rand_lit():
        return lit(rng.choice(atoms), rng.random() < 0.6)

    def rand_lits(lo, hi):
        return tuple(dict.fromkeys(rand_lit() for _ in range(rng.randint(lo, hi))))

    while True:
        facts = set()
        for _ in range(rng.randint(0, 3)):
            l = rand_lit()
            if l.complement() not in facts:
                facts.add(l)
        rules = [
            GroundRule(f"r{i}", 1, rand_lits(1, 2), rand_lits(1, 1))
            for i in range(rng.randint(0, n_rules))
        ]
        defaults = []
        for i in range(rng.randint(0, n_defaults)):
            cons = rand_lits(1, 2)
            constraint = () if normal_only else rand_lits(0, 1)
            defaults.append(GroundDefault(f"d{i}", 1, rand_lits(0, 2), cons, cons + constraint))
        if consistent(naive_closure(facts, rules)):
            return sorted(facts, key=str), rules, defaults


def rename_defaults(defaults, order):
    """Same defaults, ids permuted so the engine scans them in ``order``."""
    out = []
    for rank, k in enumerate(order):
        d = defaults[k]
        out.append(GroundDefault(f"d{rank:02d}", d.layer, d.prerequisite, d.consequent, d.justification))
    return out

