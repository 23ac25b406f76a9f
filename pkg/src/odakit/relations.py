"""Binary relations on a small finite base, the full algebra of them, and
abstract ordered domain algebras given by operation tables.

A relation on base ``n`` is a single int: bit ``u*n + v`` is set iff the
pair ``(u, v)`` belongs to it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from string import ascii_lowercase
from typing import Iterable, Sequence

from .errors import InputError, ResourceError, guard_limit
from .poset import FinitePoset

MAX_BASE = 32
SUBALGEBRA_GUARD = 4096


def _point_name(u: int) -> str:
    return ascii_lowercase[u] if u < 26 else str(u)


@dataclass(frozen=True, order=True)
class BinRel:
    base_size: int
    bits: int = 0

    def __post_init__(self):
        if not 1 <= self.base_size <= MAX_BASE:
            raise InputError(f"base size must be in 1..{MAX_BASE}, got {self.base_size}")
        if self.bits < 0 or self.bits >> (self.base_size * self.base_size):
            raise InputError("relation bits exceed the base")

    @classmethod
    def from_pairs(cls, base_size: int, pairs: Iterable[tuple[int, int]]) -> "BinRel":
        bits = 0
        for u, v in pairs:
            if not (0 <= u < base_size and 0 <= v < base_size):
                raise InputError(f"pair ({u}, {v}) outside base of size {base_size}")
            bits |= 1 << (u * base_size + v)
        return cls(base_size, bits)

    @classmethod
    def parse(cls, base_size: int, text: str) -> "BinRel":
        """Read letter pairs such as ``"ab cd"`` meaning {(a,b), (c,d)}."""
        pairs = []
        for tok in text.replace(",", " ").split():
            if len(tok) != 2:
                raise InputError(f"bad pair token {tok!r}")
            pairs.append((ascii_lowercase.index(tok[0]), ascii_lowercase.index(tok[1])))
        return cls.from_pairs(base_size, pairs)

    def pairs(self) -> list[tuple[int, int]]:
        n = self.base_size
        return [(u, v) for u in range(n) for v in range(n) if self.bits >> (u * n + v) & 1]

    def row(self, u: int) -> int:
        n = self.base_size
        return self.bits >> (u * n) & ((1 << n) - 1)

    def __contains__(self, pair) -> bool:
        u, v = pair
        return bool(self.bits >> (u * self.base_size + v) & 1)

    def __len__(self):
        return bin(self.bits).count("1")

    def issubset(self, other: "BinRel") -> bool:
        return self.bits & ~other.bits == 0

    def __repr__(self):
        inner = ",".join(f"({_point_name(u)},{_point_name(v)})" for u, v in self.pairs())
        return "{" + inner + "}"


def _check_base(x: BinRel, y: BinRel):
    if x.base_size != y.base_size:
        raise InputError(f"base mismatch: {x.base_size} vs {y.base_size}")


def rel_comp(x: BinRel, y: BinRel) -> BinRel:
    _check_base(x, y)
    n = x.base_size
    out = 0
    for u in range(n):
        r = x.row(u)
        acc = 0
        w = 0
        while r:
            if r & 1:
                acc |= y.row(w)
            r >>= 1
            w += 1
        out |= acc << (u * n)
    return BinRel(n, out)


def rel_dom(x: BinRel) -> BinRel:
    n = x.base_size
    return BinRel(n, sum(1 << (u * n + u) for u in range(n) if x.row(u)))


def rel_ran(x: BinRel) -> BinRel:
    n = x.base_size
    cols = 0
    for u in range(n):
        cols |= x.row(u)
    return BinRel(n, sum(1 << (v * n + v) for v in range(n) if cols >> v & 1))


def rel_conv(x: BinRel) -> BinRel:
    return BinRel.from_pairs(x.base_size, [(v, u) for u, v in x.pairs()])


def rel_id(base_size: int) -> BinRel:
    return BinRel(base_size, sum(1 << (u * base_size + u) for u in range(base_size)))


def rel_zero(base_size: int) -> BinRel:
    return BinRel(base_size, 0)


class FullRelationAlgebra:
    """All relations on a base, used without materializing the carrier.

    Serves as its own order for up-sets: ``leq`` is inclusion.
    """

    def __init__(self, base_size: int):
        if not 1 <= base_size <= MAX_BASE:
            raise InputError(f"base size must be in 1..{MAX_BASE}")
        self.base_size = base_size
        self.zero = rel_zero(base_size)
        self.one = rel_id(base_size)
        self.order = self

    def __repr__(self):
        return f"FullRelationAlgebra({self.base_size})"

    def rel(self, pairs) -> BinRel:
        if isinstance(pairs, str):
            return BinRel.parse(self.base_size, pairs)
        return BinRel.from_pairs(self.base_size, pairs)

    @property
    def elements(self) -> tuple[BinRel, ...]:
        count = 2 ** (self.base_size**2)
        if count > guard_limit():
            raise ResourceError(f"full algebra on base {self.base_size} has {count} elements")
        return tuple(BinRel(self.base_size, b) for b in range(count))

    @staticmethod
    def leq(x: BinRel, y: BinRel) -> bool:
        return x.bits & ~y.bits == 0

    @staticmethod
    def sort_key(x: BinRel):
        return x.bits

    comp = staticmethod(rel_comp)
    dom = staticmethod(rel_dom)
    ran = staticmethod(rel_ran)
    conv = staticmethod(rel_conv)

    def describe(self, x: BinRel):
        return [list(p) for p in x.pairs()]


@dataclass
class AbstractODA:
    """A finite algebra in the ODA signature, given by tables over indices.

    Only totality is checked here; the order and the ODA laws are the
    business of :func:`odakit.axioms.check_axioms`.
    """

    labels: list
    leq_matrix: list
    comp_table: list
    conv_table: list
    dom_table: list
    ran_table: list
    zero: int
    one: int
    relations: list | None = field(default=None, repr=False)

    def __post_init__(self):
        n = len(self.labels)
        if n == 0:
            raise InputError("algebra must have at least one element")

        def idx(v, what):
            if not isinstance(v, int) or not 0 <= v < n:
                raise InputError(f"{what}: {v!r} is not an element index")
            return v

        if len(self.leq_matrix) != n or any(len(r) != n for r in self.leq_matrix):
            raise InputError(f"leq must be {n}x{n}")
        if len(self.comp_table) != n or any(len(r) != n for r in self.comp_table):
            raise InputError(f"comp table must be {n}x{n}")
        for i, row in enumerate(self.comp_table):
            for j, v in enumerate(row):
                idx(v, f"comp[{i}][{j}]")
        for name in ("conv_table", "dom_table", "ran_table"):
            tab = getattr(self, name)
            if len(tab) != n:
                raise InputError(f"{name} must have {n} entries")
            for i, v in enumerate(tab):
                idx(v, f"{name}[{i}]")
        idx(self.zero, "zero")
        idx(self.one, "id")
        self.elements = tuple(range(n))
        self._poset = None

    def __len__(self):
        return len(self.labels)

    def leq(self, a: int, b: int) -> bool:
        return bool(self.leq_matrix[a][b])

    def comp(self, a: int, b: int) -> int:
        return self.comp_table[a][b]

    def dom(self, a: int) -> int:
        return self.dom_table[a]

    def ran(self, a: int) -> int:
        return self.ran_table[a]

    def conv(self, a: int) -> int:
        return self.conv_table[a]

    @staticmethod
    def sort_key(a: int):
        return a

    @property
    def poset(self) -> FinitePoset:
        """The order as a validated FinitePoset over element indices."""
        if self._poset is None:
            self._poset = FinitePoset(self.elements, self.leq_matrix)
        return self._poset

    @property
    def order(self) -> FinitePoset:
        return self.poset

    def describe(self, a: int):
        if self.relations is not None:
            return [list(p) for p in self.relations[a].pairs()]
        return self.labels[a]

    def index_of(self, rel: BinRel) -> int:
        if self.relations is None:
            raise InputError("algebra has no concrete relations attached")
        try:
            return self.relations.index(rel)
        except ValueError:
            raise InputError(f"{rel!r} is not in the algebra") from None

    def copy_with(self, **changes) -> "AbstractODA":
        data = {
            "labels": list(self.labels),
            "leq_matrix": [list(r) for r in self.leq_matrix],
            "comp_table": [list(r) for r in self.comp_table],
            "conv_table": list(self.conv_table),
            "dom_table": list(self.dom_table),
            "ran_table": list(self.ran_table),
            "zero": self.zero,
            "one": self.one,
            "relations": self.relations,
        }
        data.update(changes)
        return AbstractODA(**data)

    def to_json(self) -> dict:
        n = len(self)
        return {
            "elements": [str(x) for x in self.labels],
            "leq": [[i, j] for i in range(n) for j in range(n) if self.leq_matrix[i][j]],
            "comp": [list(r) for r in self.comp_table],
            "conv": list(self.conv_table),
            "dom": list(self.dom_table),
            "ran": list(self.ran_table),
            "zero": self.zero,
            "id": self.one,
        }

    @classmethod
    def from_json(cls, data) -> "AbstractODA":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            labels = list(data["elements"])
            n = len(labels)
            matrix = [[False] * n for _ in range(n)]
            for i, j in data["leq"]:
                if not (0 <= i < n and 0 <= j < n):
                    raise InputError(f"leq pair ({i}, {j}) out of range")
                matrix[i][j] = True
            return cls(
                labels=labels,
                leq_matrix=matrix,
                comp_table=[list(r) for r in data["comp"]],
                conv_table=list(data["conv"]),
                dom_table=list(data["dom"]),
                ran_table=list(data["ran"]),
                zero=data["zero"],
                one=data["id"],
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"malformed algebra JSON: {exc}") from None


def generate_subalgebra(
    base_size: int, generators: Sequence[BinRel] = (), guard: int = SUBALGEBRA_GUARD
) -> AbstractODA:
    """Smallest set of relations containing the generators, 0 and id,
    closed under composition, domain, range and converse."""
    for g in generators:
        if g.base_size != base_size:
            raise InputError(f"generator {g!r} is not on base {base_size}")
    seen = {rel_zero(base_size), rel_id(base_size), *generators}
    frontier = list(seen)
    while frontier:
        done = list(seen)
        new = set()
        for x in frontier:
            for f in (rel_dom, rel_ran, rel_conv):
                new.add(f(x))
            for y in done:
                new.add(rel_comp(x, y))
                new.add(rel_comp(y, x))
        new -= seen
        seen |= new
        if len(seen) > guard:
            raise ResourceError(f"subalgebra exceeds {guard} elements")
        frontier = list(new)
    return algebra_from_relations(sorted(seen, key=lambda r: r.bits))


def algebra_from_relations(rels: Sequence[BinRel]) -> AbstractODA:
    """Tables for a set of relations already closed under the operations."""
    rels = list(rels)
    index = {r: i for i, r in enumerate(rels)}
    base = rels[0].base_size

    def at(r):
        try:
            return index[r]
        except KeyError:
            raise InputError(f"relations not closed: {r!r} missing") from None

    return AbstractODA(
        labels=[repr(r) for r in rels],
        leq_matrix=[[a.issubset(b) for b in rels] for a in rels],
        comp_table=[[at(rel_comp(a, b)) for b in rels] for a in rels],
        conv_table=[at(rel_conv(a)) for a in rels],
        dom_table=[at(rel_dom(a)) for a in rels],
        ran_table=[at(rel_ran(a)) for a in rels],
        zero=at(rel_zero(base)),
        one=at(rel_id(base)),
        relations=rels,
    )


def full_algebra(base_size: int) -> AbstractODA:
    """The full proper algebra on a (tiny) base as explicit tables."""
    count = 2 ** (base_size**2)
    if count > SUBALGEBRA_GUARD:
        raise ResourceError(f"full algebra on base {base_size} has {count} elements")
    return algebra_from_relations([BinRel(base_size, b) for b in range(count)])


def one_element_algebra() -> AbstractODA:
    return AbstractODA(["0"], [[True]], [[0]], [0], [0], [0], 0, 0)


def relation_from_json(data) -> BinRel:
    """``{"base": k, "pairs": [[u, v], ...]}``."""
    if isinstance(data, str):
        data = json.loads(data)
    try:
        return BinRel.from_pairs(int(data["base"]), [tuple(p) for p in data["pairs"]])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed relation JSON: {exc}") from None


def relation_to_json(x: BinRel) -> dict:
    return {"base": x.base_size, "pairs": [list(p) for p in x.pairs()]}
