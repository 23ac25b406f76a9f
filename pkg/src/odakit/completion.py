"""The domain/range closure on up-sets of an ODA and the completed algebra
of closed sets.

An up-set X is closed when {dom(x);y;ran(z) : x, y, z in X}↑ = X.  All
computation runs on minimal antichains, so the algebra may be the virtual
full relation algebra on a base of four or five points.

Two different "empty" things appear here and are never conflated:
``empty_upset`` has no members (the top of the completion) while
``zero_up`` is the up-closure of the bottom element, i.e. the whole
carrier (the bottom of the completion).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .axioms import Law, LawReport, check_laws, oda_laws
from .errors import InputError, ResourceError
from .poset import UpSet, all_up_sets, minimize

ANTICHAIN_GUARD = 100_000

# laws the completion is known to satisfy for every ODA
MUST_HOLD = (
    "order-reflexive",
    "order-antisymmetric",
    "order-transitive",
    "bottom",
    "isotone-conv",
    "isotone-dom",
    "isotone-ran",
    "isotone-comp",
    "normality",
    "identity",
    "id-conv",
    "involution",
    "conv-comp",
    "D1",
    "D3",
    "D4",
    "D5",
    "D7",
    "lifted-unary-closed",
    "closure-conv",
    "union-closed",
)
# laws that may fail; reported with witnesses
MAY_FAIL = ("D2", "D6", "associativity")


class ODACompletion:
    """Closed up-sets of an ODA with the lifted operations.

    Doubles as a law-checkable structure: its ``elements`` are the closed
    sets, ``leq`` is reverse inclusion, and ``zero``/``one`` are the
    lifted constants.
    """

    def __init__(self, algebra, debug: bool = False, guard: int = ANTICHAIN_GUARD):
        self.algebra = algebra
        self.order = algebra.order
        self.debug = debug
        self.guard = guard
        self.empty_upset = UpSet(self.order, ())
        self.zero_up = UpSet(self.order, (algebra.zero,))
        self.id_up = UpSet(self.order, (algebra.one,))
        self._closure = {}
        self._comp = {}
        self._elements = None

    def __repr__(self):
        return f"ODACompletion({self.algebra!r})"

    def upset(self, generators: Iterable) -> UpSet:
        return UpSet(self.order, generators)

    # -- closure ------------------------------------------------------------

    def _step(self, gens: frozenset) -> frozenset:
        A = self.algebra
        doms = {A.dom(x) for x in gens}
        rans = {A.ran(z) for z in gens}
        new = set(gens)
        for dx in doms:
            for y in gens:
                left = A.comp(dx, y)
                for rz in rans:
                    new.add(A.comp(left, rz))
        mins = minimize(self.order, new)
        if len(mins) > self.guard:
            raise ResourceError(f"closure antichain grew past {self.guard}")
        return mins

    def closure_trace(self, X: UpSet) -> list[UpSet]:
        """X_0 = X, X_1, ... up to the first repeated antichain."""
        trace = [X]
        gens = X.minimals
        while True:
            nxt = self._step(gens)
            if nxt == gens:
                return trace
            gens = nxt
            trace.append(UpSet._trusted(self.order, gens))

    def closure(self, X: UpSet) -> UpSet:
        self._check_parent(X)
        hit = self._closure.get(X.minimals)
        if hit is None:
            hit = self.closure_trace(X)[-1]
            self._closure[X.minimals] = hit
            self._closure.setdefault(hit.minimals, hit)
        return hit

    def is_closed(self, X: UpSet) -> bool:
        return self.closure(X) == X

    def _check_parent(self, X: UpSet):
        if X.parent is not self.order:
            raise InputError("up-set belongs to a different algebra")

    def _require_closed(self, *xs: UpSet):
        for X in xs:
            if not self.is_closed(X):
                raise InputError(f"{X!r} is not closed")

    # -- lifted operations --------------------------------------------------

    def comp_c(self, X: UpSet, Y: UpSet) -> UpSet:
        key = (X.minimals, Y.minimals)
        hit = self._comp.get(key)
        if hit is None:
            self._require_closed(X, Y)
            A = self.algebra
            hit = self.closure(self.upset(A.comp(x, y) for x in X.minimals for y in Y.minimals))
            self._comp[key] = hit
        return hit

    def _unary(self, f, X: UpSet) -> UpSet:
        self._require_closed(X)
        out = self.upset(f(x) for x in X.minimals)
        if self.debug and self.closure(out) != out:
            raise AssertionError(f"lifted unary image of {X!r} is not closed")
        return out

    def dom_c(self, X: UpSet) -> UpSet:
        return self._unary(self.algebra.dom, X)

    def ran_c(self, X: UpSet) -> UpSet:
        return self._unary(self.algebra.ran, X)

    def conv_c(self, X: UpSet) -> UpSet:
        return self._unary(self.algebra.conv, X)

    @property
    def zero_c(self) -> UpSet:
        return self.zero_up

    @property
    def id_c(self) -> UpSet:
        return self.id_up

    # -- structure interface for law checking -------------------------------

    @property
    def elements(self) -> list[UpSet]:
        if self._elements is None:
            self._elements = enumerate_closed_sets(self)
        return self._elements

    @staticmethod
    def leq(X: UpSet, Y: UpSet) -> bool:
        return X.issuperset(Y)

    comp = comp_c
    dom = dom_c
    ran = ran_c
    conv = conv_c

    @property
    def zero(self):
        return self.zero_up

    @property
    def one(self):
        return self.id_up

    def describe(self, X: UpSet):
        return [self.algebra.describe(m) for m in X.sorted_minimals()]


def oda_closure(X: UpSet, completion: ODACompletion) -> UpSet:
    return completion.closure(X)


def enumerate_closed_sets(completion: ODACompletion, guard: int | None = None) -> list[UpSet]:
    """Every closed up-set, in the canonical up-set order."""
    ups = all_up_sets(completion.order, guard)
    return [X for X in ups if completion.closure(X) == X]


@dataclass
class CompletionReport:
    laws: LawReport
    must_hold: tuple = MUST_HOLD
    may_fail: tuple = MAY_FAIL
    closed_count: int = 0
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.laws.passed_all(self.must_hold)


def completion_laws(C: ODACompletion, up_sets: list[UpSet]):
    """Completion laws over closed tuples, plus the conv/closure law that
    ranges over all up-sets (indexed, returned separately)."""
    wanted = set(MUST_HOLD) | set(MAY_FAIL)
    laws = [l for l in oda_laws(C) if l.name in wanted]
    A = C.algebra
    closed = set(C.elements)

    def unary_images_closed(X):
        return all(
            C.upset(f(x) for x in X.minimals) in closed for f in (A.dom, A.ran, A.conv)
        )

    def closure_commutes_with_conv(i):
        S = up_sets[i]
        return C.conv_c(C.closure(S)) == C.closure(C.upset(A.conv(s) for s in S.minimals))

    def union_closed(X, Y):
        if C.dom_c(X) != C.dom_c(Y) or C.ran_c(X) != C.ran_c(Y):
            return True
        return X.union(Y) in closed

    laws += [
        Law("lifted-unary-closed", 1, unary_images_closed),
        Law("union-closed", 2, union_closed),
    ]
    return laws, Law("closure-conv", 1, closure_commutes_with_conv)


def check_completion_axioms(A, guard: int | None = None) -> CompletionReport:
    """Law report for the completed algebra of closed up-sets of ``A``."""
    C = A if isinstance(A, ODACompletion) else ODACompletion(A)
    up_sets = all_up_sets(C.order, guard)
    C._elements = [X for X in up_sets if C.closure(X) == X]
    laws, conv_law = completion_laws(C, up_sets)
    report = check_laws(C, laws)
    report.results.extend(check_laws(C, [conv_law], elements=range(len(up_sets))).results)
    # the conv-closure witness is an index into the up-set list
    for r in report.results:
        if r.name == "closure-conv" and r.witness is not None:
            r.witness = (up_sets[r.witness[0]],)
    order = {name: i for i, name in enumerate(MUST_HOLD + MAY_FAIL)}
    report.results.sort(key=lambda r: order.get(r.name, len(order)))
    return CompletionReport(report, closed_count=len(C.elements))


def star_product(C: ODACompletion, B: UpSet, D: UpSet):
    """B * D, defined only when ranC(B) = domC(D)."""
    if C.ran_c(B) != C.dom_c(D):
        return None
    return C.comp_c(B, D)


@dataclass
class StarReport:
    triples_checked: int
    violations: list
    conclusive: bool
    closed_count: int

    @property
    def outcome(self) -> str:
        if self.violations:
            return "violations found"
        return "none found" if self.conclusive else "inconclusive"


def partial_star_explore(A, budget: int = 10**6, max_violations: int = 10) -> StarReport:
    """Search closed triples for failures of associativity of the partial
    product.  A mismatch in definedness between the two bracketings counts
    as a violation, as does a mismatch in value.  No claim is made beyond
    the triples actually examined."""
    C = A if isinstance(A, ODACompletion) else ODACompletion(A)
    closed = C.elements
    violations = []
    checked = 0
    for X in closed:
        for Y in closed:
            xy = star_product(C, X, Y)
            for Z in closed:
                if checked >= budget:
                    return StarReport(checked, violations, False, len(closed))
                checked += 1
                yz = star_product(C, Y, Z)
                left = None if yz is None else star_product(C, X, yz)
                right = None if xy is None else star_product(C, xy, Z)
                if left is None and right is None:
                    continue
                if left is None or right is None:
                    violations.append(("definedness", X, Y, Z))
                elif left != right:
                    violations.append(("value", X, Y, Z))
                if len(violations) >= max_violations:
                    return StarReport(checked, violations, False, len(closed))
    return StarReport(checked, violations, True, len(closed))
