"""Seeded random instances: posets, standard closure operators, isotone
expansions and terms.  All generators take a ``random.Random``."""

from __future__ import annotations

import itertools
import random

from .closure import ClosureOperator, family_closure
from .expansion import Operation, PosetExpansion
from .poset import FinitePoset, all_up_sets, up_set_mask
from .terms import App, Term, Var


def random_poset(rng: random.Random, n: int, density: float = 0.4) -> FinitePoset:
    """Transitive closure of a random DAG on labels p0..p{n-1}."""
    up = [1 << i for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                up[i] |= 1 << j
    for j in reversed(range(n)):
        for i in range(j):
            if up[i] >> j & 1:
                up[i] |= up[j]
    # shuffle labels so the order is not always aligned with the index
    perm = list(range(n))
    rng.shuffle(perm)
    matrix = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if up[i] >> j & 1:
                matrix[perm[i]][perm[j]] = True
    return FinitePoset([f"p{i}" for i in range(n)], matrix)


def random_standard_closure(
    rng: random.Random, P: FinitePoset, k: int | None = None, include_empty: bool = True
) -> ClosureOperator:
    """Closure onto k random up-sets plus every principal up-set, the whole
    carrier and (optionally) the empty set, closed under intersection."""
    ups = all_up_sets(P)
    if k is None:
        k = rng.randint(0, len(ups))
    chosen = {up_set_mask(P, u) for u in rng.sample(ups, min(k, len(ups)))}
    family = chosen | {P.up_mask(p) for p in P.elements} | {(1 << len(P)) - 1}
    if include_empty:
        family.add(0)
    family = _intersection_closed(family)
    return family_closure(P, family, name="random")


def _intersection_closed(family: set[int]) -> set[int]:
    family = set(family)
    frontier = list(family)
    while frontier:
        new = set()
        for a in frontier:
            for b in list(family):
                c = a & b
                if c not in family:
                    new.add(c)
        family |= new
        frontier = list(new)
    return family


def random_isotone_op(rng: random.Random, P: FinitePoset, arity: int, tries: int = 50) -> Operation:
    """Assign values along a linear extension of P^arity, each drawn from
    the common upper bounds of the values already fixed below it."""
    tuples = list(itertools.product(P.elements, repeat=arity))
    rank = {x: bin(P.down_mask(x)).count("1") for x in P.elements}
    tuples.sort(key=lambda t: sum(rank[x] for x in t))
    for _ in range(tries):
        table = {}
        ok = True
        for t in tuples:
            lower = [table[s] for s in table if all(P.leq(a, b) for a, b in zip(s, t))]
            cands = [v for v in P.elements if all(P.leq(w, v) for w in lower)]
            if not cands:
                ok = False
                break
            table[t] = rng.choice(cands)
        if ok:
            return Operation(arity, table)
    c = rng.choice(P.elements)
    return Operation(arity, {t: c for t in tuples})


def random_expansion(rng: random.Random, max_size: int = 4) -> PosetExpansion:
    P = random_poset(rng, rng.randint(1, max_size))
    return PosetExpansion(P, {"u": random_isotone_op(rng, P, 1), "b": random_isotone_op(rng, P, 2)})


def random_term(rng: random.Random, arities: dict, variables, max_depth: int) -> Term:
    if max_depth == 0 or rng.random() < 0.3:
        nullary = [op for op, n in arities.items() if n == 0]
        if nullary and rng.random() < 0.1:
            return App(rng.choice(nullary))
        return Var(rng.choice(list(variables)))
    op = rng.choice([op for op, n in arities.items() if n > 0])
    return App(op, tuple(random_term(rng, arities, variables, max_depth - 1) for _ in range(arities[op])))
