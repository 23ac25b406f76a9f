"""Seeded randomized trial runners shared by the CLI and the test-suite."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .closure import (
    completion_from_gamma,
    find_isomorphisms,
    gamma_from_completion,
    h_iso,
    is_order_isomorphism,
    same_operator,
)
from .expansion import CompletedExpansion, holds_inequality, pointwise_image
from .poset import (
    CompletionMap,
    FinitePoset,
    all_up_sets,
    is_meet_completion,
    power_map,
    restrict_product,
)
from .relations import AbstractODA, BinRel, generate_subalgebra
from .representation import build_representation, verify_representation
from .randgen import random_expansion, random_poset, random_standard_closure, random_term
from .terms import App, Var, term_variables


@dataclass
class TrialSummary:
    trials: int = 0
    failures: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def bump(self, key, by=1):
        self.stats[key] = self.stats.get(key, 0) + by


# -- preservation of inequalities -------------------------------------------


def random_linear_term(rng: random.Random, variables, max_depth: int):
    """A term over unary ``u`` and binary ``b`` using each variable once."""

    def shape(leaves, d):
        if leaves == 1:
            if d > 0 and rng.random() < 0.4:
                return App("u", (shape(1, d - 1),))
            return None
        if d == 0:
            raise ValueError
        if d >= 2 and rng.random() < 0.3:
            return App("u", (shape(leaves, d - 1),))
        k = rng.randint(1, leaves - 1)
        return App("b", (shape(k, d - 1), shape(leaves - k, d - 1)))

    names = list(variables)
    rng.shuffle(names)
    it = iter(names)

    def fill(t):
        if t is None:
            return Var(next(it))
        return App(t.op, tuple(fill(a) for a in t.args))

    return fill(shape(len(names), max_depth))


def preservation_trials(
    seed: int = 0, trials: int = 200, max_poset: int = 4, max_depth: int = 3, terms: str = "general"
) -> TrialSummary:
    """Compare P |= phi <= psi with its counterpart over all up-sets.

    ``terms="general"`` draws arbitrary terms over x, y; ``"linear"`` draws
    pairs using the same variables, each exactly once.  Every lifted
    evaluation is also compared with the pointwise image of the term.
    """
    rng = random.Random(seed)
    out = TrialSummary()
    for trial in range(trials):
        M = random_expansion(rng, max_poset)
        E = CompletedExpansion(M)
        if terms == "linear":
            vs = ["x", "y"][: rng.randint(1, 2)]
            phi = random_linear_term(rng, vs, max_depth)
            psi = random_linear_term(rng, vs, max_depth)
        else:
            vs = ["x", "y"]
            phi = random_term(rng, M.arities, vs, max_depth)
            psi = random_term(rng, M.arities, vs, max_depth)
        base, _ = holds_inequality(M, phi, psi, vs)
        lifted, witness = holds_inequality(E, phi, psi, vs)
        out.trials += 1
        out.bump("holds" if base else "refuted")
        if base != lifted:
            out.failures.append(
                {"trial": trial, "kind": "inequality", "phi": str(phi), "psi": str(psi),
                 "in_poset": base, "in_completion": lifted,
                 "witness": {k: repr(v) for k, v in (witness or {}).items()}}
            )
        for t in (phi, psi):
            tv = sorted(term_variables(t))
            for values in itertools.product(E.closed_sets, repeat=len(tv)):
                env = dict(zip(tv, values))
                if E.eval(t, env) != pointwise_image(M, t, env, tv):
                    out.failures.append(
                        {"trial": trial, "kind": "term-semantics", "term": str(t),
                         "witness": {k: repr(v) for k, v in env.items()}}
                    )
                    break
    return out


# -- closure / completion correspondence ------------------------------------


def relabel(e: CompletionMap, rng: random.Random) -> tuple[CompletionMap, dict]:
    """An isomorphic copy of ``e`` with fresh target labels, plus the iso."""
    Q = e.target
    names = [f"q{i}" for i in range(len(Q))]
    rng.shuffle(names)
    iso = dict(zip(Q.elements, names))
    Q2 = FinitePoset(
        [iso[q] for q in Q.elements],
        [[Q.leq(a, b) for b in Q.elements] for a in Q.elements],
    )
    return CompletionMap(e.source, Q2, {p: iso[e(p)] for p in e.source.elements}), iso


def correspondence_trials(seed: int = 0, trials: int = 100, max_poset: int = 6, iso_limit: int = 6) -> TrialSummary:
    rng = random.Random(seed)
    out = TrialSummary()

    def fail(trial, what, detail=""):
        out.failures.append({"trial": trial, "check": what, "detail": detail})

    for trial in range(trials):
        P = random_poset(rng, rng.randint(1, max_poset))
        ups = all_up_sets(P)
        gamma = random_standard_closure(rng, P, k=rng.randint(0, 4))
        out.trials += 1
        e = completion_from_gamma(gamma, ups)
        if not is_meet_completion(e):
            fail(trial, "e_gamma is a meet-completion")
            continue
        S = same_operator(gamma_from_completion(e), gamma, ups)
        if S is not None:
            fail(trial, "gamma of e_gamma = gamma", repr(S))

        e1, iso = relabel(e, rng)
        h, h_inv = h_iso(e1)
        g1 = gamma_from_completion(e1)
        closed = [X for X in ups if g1(X) == X]
        target = e.target  # closed sets of gamma = closed sets of g1
        if not is_order_isomorphism(h, e1.target, target):
            fail(trial, "h_e is an order isomorphism")
        if any(h_inv[h[q]] != q for q in e1.target.elements) or any(h[h_inv[X]] != X for X in closed):
            fail(trial, "h_e and its inverse compose to identities")
        if any(h[e1(p)] != P.principal(p) for p in P.elements):
            fail(trial, "triangle h_e . e = e_(gamma_e)")
        if same_operator(g1, gamma_from_completion(e), ups) is not None:
            fail(trial, "isomorphic completions induce the same closure")
        if len(e1.target) <= iso_limit:
            out.bump("iso-searches")
            fixed = {e1(p): P.principal(p) for p in P.elements}
            found = find_isomorphisms(e1.target, target, fixed)
            if len(found) != 1 or found[0] != h:
                fail(trial, "isomorphism commuting with the maps is unique", f"{len(found)} found")
    return out


# -- products of completions -------------------------------------------------


def product_trials(seed: int = 0, trials: int = 50, max_poset: int = 3, max_product: int = 512) -> TrialSummary:
    """The power map is a meet-completion iff P has a top sent to the top,
    and dropping the uncovered tuples always yields one."""
    rng = random.Random(seed)
    out = TrialSummary()
    while out.trials < trials:
        P = random_poset(rng, rng.randint(1, max_poset))
        gamma = random_standard_closure(rng, P, k=rng.randint(0, 3), include_empty=rng.random() < 0.5)
        e = completion_from_gamma(gamma)
        n = rng.choice([2, 3])
        if len(e.target) ** n > max_product:
            continue
        out.trials += 1
        top = P.top
        condition = top is not None and e(top) == e.target.top
        out.bump("top-preserved" if condition else "top-not-preserved")
        full = power_map(e, n)
        restricted = restrict_product(e, n)
        if is_meet_completion(full) != condition:
            out.failures.append({"trial": out.trials, "check": "power map iff top to top", "n": n})
        if not is_meet_completion(restricted):
            out.failures.append({"trial": out.trials, "check": "restriction is a meet-completion", "n": n})
        if (len(restricted.target) == len(full.target)) != condition:
            out.failures.append({"trial": out.trials, "check": "restriction trivial iff top to top", "n": n})
    return out


# -- representation over small proper algebras --------------------------------


def all_subalgebras(base_size: int) -> list[AbstractODA]:
    """Every subalgebra of the full proper algebra on a tiny base, found by
    adding one relation at a time to already generated subalgebras."""
    universe = [BinRel(base_size, b) for b in range(2 ** (base_size**2))]
    start = generate_subalgebra(base_size)
    seen = {frozenset(start.relations): start}
    frontier = [start]
    while frontier:
        nxt = []
        for A in frontier:
            have = set(A.relations)
            for r in universe:
                if r in have:
                    continue
                B = generate_subalgebra(base_size, [*A.relations, r])
                key = frozenset(B.relations)
                if key not in seen:
                    seen[key] = B
                    nxt.append(B)
        frontier = nxt
    return sorted(seen.values(), key=lambda A: (len(A), sorted(r.bits for r in A.relations)))


def representation_trials(max_base: int = 2) -> TrialSummary:
    out = TrialSummary()
    for base in range(1, max_base + 1):
        for A in all_subalgebras(base):
            R = build_representation(A)
            report = verify_representation(R)
            out.trials += 1
            out.bump(f"base-{base}-algebras")
            out.stats.setdefault("max-representation-base", 0)
            out.stats["max-representation-base"] = max(out.stats["max-representation-base"], len(R.base))
            if not report.ok:
                out.failures.append({"algebra": A.labels, "failed": report.failed()})
    return out
