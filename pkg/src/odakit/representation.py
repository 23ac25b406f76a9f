"""Representing a finite ODA as relations over its closed up-sets.

Points are the closed up-sets X other than the empty up-set and the one
containing 0.  An element a relates X to Y when X;a↑ ⊆ Y and Y;(a˘)↑ ⊆ X,
both products taken in the completion.
"""

from __future__ import annotations

from dataclasses import dataclass

from .axioms import LawReport, LawResult
from .completion import ODACompletion
from .poset import UpSet


@dataclass
class Representation:
    algebra: object
    completion: ODACompletion
    base: list[UpSet]
    image: dict  # element -> tuple of row bitmasks over base indices

    def pairs(self, a) -> list[tuple[int, int]]:
        return [(i, j) for i, row in enumerate(self.image[a]) for j in range(len(self.base)) if row >> j & 1]

    def to_json(self) -> dict:
        C = self.completion
        return {
            "base": [C.describe(X) for X in self.base],
            "image": {str(a): [list(p) for p in self.pairs(a)] for a in self.algebra.elements},
        }


def representation_points(C: ODACompletion) -> list[UpSet]:
    zero = C.algebra.zero
    return [X for X in C.elements if X.minimals and zero not in X]


def build_representation(A) -> Representation:
    C = A if isinstance(A, ODACompletion) else ODACompletion(A)
    A = C.algebra
    base = representation_points(C)
    image = {}
    for a in A.elements:
        a_up = C.upset((a,))
        av_up = C.upset((A.conv(a),))
        forward = [C.comp_c(X, a_up) for X in base]
        backward = [C.comp_c(Y, av_up) for Y in base]
        rows = []
        for i, X in enumerate(base):
            row = 0
            for j, Y in enumerate(base):
                if forward[i].issubset(Y) and backward[j].issubset(X):
                    row |= 1 << j
            rows.append(row)
        image[a] = tuple(rows)
    return Representation(A, C, base, image)


# -- concrete relations on the point set, as tuples of row masks ------------


def _compose(r, s):
    out = []
    for row in r:
        acc = 0
        k = 0
        while row:
            if row & 1:
                acc |= s[k]
            row >>= 1
            k += 1
        out.append(acc)
    return tuple(out)


def _dom(r):
    return tuple((1 << i) if row else 0 for i, row in enumerate(r))


def _ran(r):
    cols = 0
    for row in r:
        cols |= row
    return tuple((1 << i) if cols >> i & 1 else 0 for i in range(len(r)))


def _conv(r):
    n = len(r)
    return tuple(sum(1 << j for j in range(n) if r[j] >> i & 1) for i in range(n))


def _subset(r, s):
    return all(a & ~b == 0 for a, b in zip(r, s))


def verify_representation(R: Representation) -> LawReport:
    """Per-clause verdicts, each with its first counterexample."""
    A, h = R.algebra, R.image
    n = len(R.base)
    identity = tuple(1 << i for i in range(n))
    empty = tuple(0 for _ in range(n))
    els = list(A.elements)
    clauses = [
        ("order-faithful", 2, lambda a, b: A.leq(a, b) == _subset(h[a], h[b])),
        ("comp", 2, lambda a, b: h[A.comp(a, b)] == _compose(h[a], h[b])),
        ("dom", 1, lambda a: h[A.dom(a)] == _dom(h[a])),
        ("ran", 1, lambda a: h[A.ran(a)] == _ran(h[a])),
        ("conv", 1, lambda a: h[A.conv(a)] == _conv(h[a])),
        ("zero", 0, lambda: h[A.zero] == empty),
        ("id", 0, lambda: h[A.one] == identity),
    ]
    report = LawReport()
    for name, arity, holds in clauses:
        res = LawResult(name, True)
        if arity == 0:
            tuples = [()]
        elif arity == 1:
            tuples = [(a,) for a in els]
        else:
            tuples = [(a, b) for a in els for b in els]
        for t in tuples:
            res.checked += 1
            if not holds(*t):
                res.passed = False
                res.witness = t
                break
        report.results.append(res)
    return report


@dataclass
class FrpSummary:
    algebra_size: int
    base_size: int
    verified: bool
    failed: list

    def to_json(self):
        return {
            "algebra_size": self.algebra_size,
            "base_size": self.base_size,
            "verified": self.verified,
            "failed": self.failed,
        }


def frp_report(A) -> FrpSummary:
    R = build_representation(A)
    report = verify_representation(R)
    return FrpSummary(len(R.algebra.elements), len(R.base), report.ok, report.failed())
