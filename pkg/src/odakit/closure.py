"""Standard closure operators on up-set lattices and their correspondence
with meet-completions.

Closure laws are stated for inclusion; the completions built from closed
sets are ordered by reverse inclusion.
"""

from __future__ import annotations

from typing import Callable, Iterable, Sequence

from .errors import InputError
from .poset import (
    CompletionMap,
    FinitePoset,
    UpSet,
    all_up_sets,
    closed_sets_poset,
    is_meet_completion,
    up_set_mask,
)


class ClosureOperator:
    def __init__(self, parent: FinitePoset, apply: Callable[[UpSet], UpSet], name: str = ""):
        self.parent = parent
        self._apply = apply
        self.name = name

    def __call__(self, S: UpSet) -> UpSet:
        return self._apply(S)

    def __repr__(self):
        return f"ClosureOperator({self.name or '?'}, {self.parent!r})"

    def closed_sets(self, guard: int | None = None) -> list[UpSet]:
        return [S for S in all_up_sets(self.parent, guard) if self(S) == S]


def identity_closure(P: FinitePoset) -> ClosureOperator:
    return ClosureOperator(P, lambda S: S, name="identity")


def family_closure(P: FinitePoset, family: Iterable[int], name: str = "family") -> ClosureOperator:
    """Closure onto an intersection-closed family of member bitmasks.

    Each set goes to the smallest family member containing it.  The whole
    carrier is always added so that every set has a closure.
    """
    full = (1 << len(P)) - 1
    members = sorted(set(family) | {full}, key=lambda m: (bin(m).count("1"), m))

    def apply(S: UpSet) -> UpSet:
        s = up_set_mask(P, S)
        best = full
        for m in members:
            if s & ~m == 0:
                best &= m
        return UpSet(P, P.minimal(P.from_mask(best)))

    return ClosureOperator(P, apply, name=name)


def standard_closure_failure(gamma: ClosureOperator, sets: Sequence[UpSet] | None = None):
    """First violated closure clause as a string, or None.

    Clauses are checked over ``sets`` (all up-sets when omitted); the
    principal up-sets are always checked for standardness.
    """
    P = gamma.parent
    if sets is None:
        sets = all_up_sets(P)
    images = {S: gamma(S) for S in sets}
    for p in P.elements:
        pu = P.principal(p)
        if gamma(pu) != pu:
            return f"not standard at {p!r}"
    for S, G in images.items():
        if not S.issubset(G):
            return f"not extensive at {S!r}"
        if gamma(G) != G:
            return f"not idempotent at {S!r}"
    for S in sets:
        for T in sets:
            if S.issubset(T) and not images[S].issubset(images[T]):
                return f"not isotone at {S!r} <= {T!r}"
    return None


def is_standard_closure(gamma: ClosureOperator, sets: Sequence[UpSet] | None = None) -> bool:
    return standard_closure_failure(gamma, sets) is None


def _require_meet_completion(e: CompletionMap):
    if not is_meet_completion(e):
        raise InputError("map is not a meet-completion")


def gamma_from_completion(e: CompletionMap, check: bool = True) -> ClosureOperator:
    """S -> {p : e(p) >= meet of e[S]}."""
    if check:
        _require_meet_completion(e)
    P, Q = e.source, e.target

    def apply(S: UpSet) -> UpSet:
        bound = Q.meet(e(p) for p in S.members())
        return UpSet(P, [p for p in P.elements if Q.leq(bound, e(p))])

    return ClosureOperator(P, apply, name="from-completion")


def h_iso(e: CompletionMap, check: bool = True) -> tuple[dict, dict]:
    """The isomorphism q -> {p : e(p) >= q} and its inverse S -> meet e[S]."""
    if check:
        _require_meet_completion(e)
    P, Q = e.source, e.target
    forward = {q: UpSet(P, [p for p in P.elements if Q.leq(q, e(p))]) for q in Q.elements}
    backward = {S: Q.meet(e(p) for p in S.members()) for S in forward.values()}
    return forward, backward


def completion_from_gamma(gamma: ClosureOperator, sets: Sequence[UpSet] | None = None) -> CompletionMap:
    """p -> p↑ into the gamma-closed up-sets under reverse inclusion."""
    failure = standard_closure_failure(gamma, sets)
    if failure:
        raise InputError(f"closure operator is not standard: {failure}")
    P = gamma.parent
    closed = gamma.closed_sets()
    target = closed_sets_poset(closed)
    return CompletionMap(P, target, {p: P.principal(p) for p in P.elements})


def same_operator(g1: ClosureOperator, g2: ClosureOperator, sets: Sequence[UpSet] | None = None):
    """First up-set where the two operators differ, or None."""
    if sets is None:
        sets = all_up_sets(g1.parent)
    for S in sets:
        if g1(S) != g2(S):
            return S
    return None


def is_order_isomorphism(f: dict, Q1: FinitePoset, Q2: FinitePoset) -> bool:
    if len(Q1) != len(Q2) or set(f) != set(Q1.elements):
        return False
    if set(f.values()) != set(Q2.elements):
        return False
    return all(Q1.leq(a, b) == Q2.leq(f[a], f[b]) for a in Q1.elements for b in Q1.elements)


def find_isomorphisms(Q1: FinitePoset, Q2: FinitePoset, fixed: dict | None = None) -> list[dict]:
    """All order isomorphisms Q1 -> Q2 extending ``fixed``, by backtracking."""
    if len(Q1) != len(Q2):
        return []
    fixed = dict(fixed or {})
    if len(set(fixed.values())) != len(fixed):
        return []
    todo = [a for a in Q1.elements if a not in fixed]
    found = []

    def consistent(f, a, b):
        for x, y in f.items():
            if Q1.leq(a, x) != Q2.leq(b, y) or Q1.leq(x, a) != Q2.leq(y, b):
                return False
        return True

    for a, b in list(fixed.items()):
        rest = {x: y for x, y in fixed.items() if x != a}
        if not consistent(rest, a, b) or not Q1.leq(a, a) == Q2.leq(b, b):
            return []

    def extend(f, i):
        if i == len(todo):
            found.append(dict(f))
            return
        a = todo[i]
        used = set(f.values())
        for b in Q2.elements:
            if b not in used and consistent(f, a, b):
                f[a] = b
                extend(f, i + 1)
                del f[a]

    extend(fixed, 0)
    return found
