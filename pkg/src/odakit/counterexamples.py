"""Exact reconstructions of the D2, D6 and associativity failures in the
completion, and of the product map that is not a meet-completion."""

from __future__ import annotations

from dataclasses import dataclass, field

from .completion import ODACompletion
from .errors import InputError
from .poset import CompletionMap, FinitePoset, is_meet_completion, power_map, removed_by_restriction, restrict_product
from .relations import FullRelationAlgebra, rel_comp, rel_conv


@dataclass
class ExampleRecord:
    name: str
    sets: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "checks": dict(self.checks), "sets": dict(self.sets)}


def _antichain(C: ODACompletion, X):
    return C.describe(X)


def reproduce_d2() -> ExampleRecord:
    F = FullRelationAlgebra(4)
    C = ODACompletion(F)
    x, y = F.rel("ab cd"), F.rel("ad cb")
    A = C.upset([x, y])
    dom_a = C.dom_c(A)
    prod = C.comp_c(A, C.conv_c(A))
    xy = rel_comp(x, rel_conv(y))
    rec = ExampleRecord("d2")
    rec.sets = {
        "A": _antichain(C, A),
        "domC(A)": _antichain(C, dom_a),
        "A compC convC(A)": _antichain(C, prod),
        "x;y^": F.describe(xy),
    }
    rec.checks = {
        "A is closed": C.is_closed(A),
        "domC(A) = {(a,a),(c,c)}↑": dom_a == C.upset([F.rel("aa cc")]),
        "x;y^ = {(a,c),(c,a)}": xy == F.rel("ac ca"),
        "x;y^ in A compC convC(A)": xy in prod,
        "x;y^ not in domC(A)": xy not in dom_a,
        "D2 fails: A compC convC(A) not within domC(A)": not prod.issubset(dom_a),
    }
    return rec


def reproduce_d6() -> ExampleRecord:
    F = FullRelationAlgebra(2)
    C = ODACompletion(F)
    x = F.rel("ab ba")
    A = C.upset([F.rel("aa")])
    B = C.upset([x, F.one])
    ab = C.comp_c(A, B)
    left = C.dom_c(ab)
    right = C.dom_c(C.comp_c(A, C.dom_c(B)))
    rec = ExampleRecord("d6")
    rec.sets = {
        "A": _antichain(C, A),
        "B": _antichain(C, B),
        "A compC B": _antichain(C, ab),
        "domC(A compC B)": _antichain(C, left),
        "domC(A compC domC(B))": _antichain(C, right),
    }
    rec.checks = {
        "B is closed": C.is_closed(B),
        "A compC B = 0↑": ab == C.zero_up,
        "domC(A compC B) = 0↑": left == C.zero_up,
        "domC(B) = idC": C.dom_c(B) == C.id_c,
        "domC(A compC domC(B)) = {(a,a)}↑": right == C.upset([F.rel("aa")]),
        "D6 fails": left != right,
    }
    return rec


def reproduce_assoc() -> ExampleRecord:
    F = FullRelationAlgebra(5)
    C = ODACompletion(F)
    A = C.upset([F.rel("aa")])
    B = C.upset([F.rel("ab cd"), F.rel("ad cb")])
    D = C.upset([F.rel("be de")])
    ab = C.comp_c(A, B)
    bd = C.comp_c(B, D)
    left = C.comp_c(ab, D)
    right = C.comp_c(A, bd)
    rec = ExampleRecord("assoc")
    rec.sets = {
        "A": _antichain(C, A),
        "B": _antichain(C, B),
        "C": _antichain(C, D),
        "A compC B": _antichain(C, ab),
        "B compC C": _antichain(C, bd),
        "(A compC B) compC C": _antichain(C, left),
        "A compC (B compC C)": _antichain(C, right),
    }
    rec.checks = {
        "A, B, C closed": all(C.is_closed(X) for X in (A, B, D)),
        "A compC B = 0↑": ab == C.zero_up,
        "B compC C = {(a,e),(c,e)}↑": bd == C.upset([F.rel("ae ce")]),
        "(A compC B) compC C = 0↑": left == C.zero_up,
        "A compC (B compC C) = {(a,e)}↑": right == C.upset([F.rel("ae")]),
        "associativity fails": left != right,
        "A <= idC (weak associativity also fails)": A.issuperset(C.id_c),
    }
    return rec


def reproduce_product() -> ExampleRecord:
    P = FinitePoset(["p"], [[True]])
    Q = FinitePoset(["q", "top"], [[True, True], [False, True]])
    e = CompletionMap(P, Q, {"p": "q"})
    e2 = power_map(e, 2)
    r2 = restrict_product(e, 2)
    removed = removed_by_restriction(e, 2)
    rec = ExampleRecord("product")
    rec.sets = {
        "Q^2": [list(t) for t in e2.target.elements],
        "removed": [list(t) for t in removed],
        "restricted": [list(t) for t in r2.target.elements],
    }
    rec.checks = {
        "e is a meet-completion": is_meet_completion(e),
        "e^2 is not a meet-completion": not is_meet_completion(e2),
        "removed = (q,top), (top,q)": sorted(removed) == sorted([("q", "top"), ("top", "q")]),
        "restriction = (q,q), (top,top)": sorted(r2.target.elements) == [("q", "q"), ("top", "top")],
        "restricted map is a meet-completion": is_meet_completion(r2),
    }
    return rec


EXAMPLES = {
    "d2": reproduce_d2,
    "d6": reproduce_d6,
    "assoc": reproduce_assoc,
    "product": reproduce_product,
}


def reproduce_example(which: str) -> ExampleRecord:
    try:
        return EXAMPLES[which]()
    except KeyError:
        raise InputError(f"unknown example {which!r}; choose from {sorted(EXAMPLES)}") from None
