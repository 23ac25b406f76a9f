"""Finite posets, up-sets stored as antichains, and completion maps.

Anything with an ``elements`` sequence, a ``leq(a, b)`` predicate and a
``sort_key(a)`` can act as the parent order of an :class:`UpSet`;
:class:`FinitePoset` is the explicit case, the relation algebras in
:mod:`odakit.relations` provide virtual ones.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Any, Hashable, Iterable, Mapping, Sequence

from .errors import InputError, ResourceError, guard_limit


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FinitePoset:
    """A finite carrier with an explicit order matrix.

    ``leq[i][j]`` is true iff ``elements[i] <= elements[j]``.  The matrix
    must already be reflexive, antisymmetric and transitive; nothing is
    closed automatically.
    """

    def __init__(self, elements: Sequence[Hashable], leq: Sequence[Sequence[bool]]):
        self.elements = tuple(elements)
        n = len(self.elements)
        self._index = {x: i for i, x in enumerate(self.elements)}
        if len(self._index) != n:
            raise InputError("poset elements must be distinct")
        if len(leq) != n or any(len(row) != n for row in leq):
            raise InputError(f"order matrix must be {n}x{n}")
        up = [0] * n
        down = [0] * n
        for i, row in enumerate(leq):
            for j, v in enumerate(row):
                if v:
                    up[i] |= 1 << j
                    down[j] |= 1 << i
        self._up = up
        self._down = down
        self._validate()

    def _validate(self):
        for i in range(len(self.elements)):
            if not self._up[i] >> i & 1:
                raise InputError(f"order is not reflexive at {self.elements[i]!r}")
            strict = self._up[i] & ~(1 << i)
            both = strict & self._down[i]
            if both:
                j = next(_bits(both))
                raise InputError(
                    f"order is not antisymmetric: {self.elements[i]!r} and {self.elements[j]!r}"
                )
            for j in _bits(self._up[i]):
                if self._up[j] & ~self._up[i]:
                    k = next(_bits(self._up[j] & ~self._up[i]))
                    raise InputError(
                        "order is not transitive: "
                        f"{self.elements[i]!r} <= {self.elements[j]!r} <= {self.elements[k]!r}"
                    )

    @classmethod
    def from_pairs(cls, elements, pairs):
        """Build from an explicit list of index pairs ``(i, j)`` meaning i <= j."""
        n = len(elements)
        matrix = [[False] * n for _ in range(n)]
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise InputError(f"order pair ({i}, {j}) out of range for {n} elements")
            matrix[i][j] = True
        return cls(elements, matrix)

    @classmethod
    def from_relation(cls, elements, le):
        elements = list(elements)
        return cls(elements, [[bool(le(a, b)) for b in elements] for a in elements])

    @classmethod
    def chain(cls, n: int):
        return cls(list(range(n)), [[i <= j for j in range(n)] for i in range(n)])

    @classmethod
    def antichain(cls, n: int):
        return cls(list(range(n)), [[i == j for j in range(n)] for i in range(n)])

    # -- basic access -------------------------------------------------------

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._index

    def __repr__(self):
        return f"FinitePoset({len(self.elements)} elements)"

    def index(self, x) -> int:
        try:
            return self._index[x]
        except (KeyError, TypeError):
            raise InputError(f"{x!r} is not an element of the poset") from None

    def sort_key(self, x):
        return self._index[x]

    def leq(self, a, b) -> bool:
        return bool(self._up[self.index(a)] >> self.index(b) & 1)

    def up_mask(self, x) -> int:
        return self._up[self.index(x)]

    def down_mask(self, x) -> int:
        return self._down[self.index(x)]

    def mask_of(self, xs: Iterable) -> int:
        m = 0
        for x in xs:
            m |= 1 << self.index(x)
        return m

    def from_mask(self, mask: int) -> tuple:
        return tuple(self.elements[i] for i in _bits(mask))

    def order_pairs(self):
        return [(i, j) for i in range(len(self)) for j in _bits(self._up[i])]

    # -- bounds -------------------------------------------------------------

    def _glb_mask(self, lower: int):
        for i in _bits(lower):
            if self._down[i] == lower:
                return self.elements[i]
        return None

    def _lub_mask(self, upper: int):
        for i in _bits(upper):
            if self._up[i] == upper:
                return self.elements[i]
        return None

    def meet(self, xs: Iterable):
        """Greatest lower bound of ``xs`` or None; the meet of nothing is the top."""
        lower = (1 << len(self)) - 1
        for x in xs:
            lower &= self.down_mask(x)
        return self._glb_mask(lower)

    def join(self, xs: Iterable):
        upper = (1 << len(self)) - 1
        for x in xs:
            upper &= self.up_mask(x)
        return self._lub_mask(upper)

    @property
    def top(self):
        return self.meet(())

    @property
    def bottom(self):
        return self.join(())

    def minimal(self, xs: Iterable) -> tuple:
        mask = self.mask_of(xs)
        return tuple(self.elements[i] for i in _bits(mask) if not (self._down[i] & mask) & ~(1 << i))

    # -- constructions ------------------------------------------------------

    def up_closure(self, xs: Iterable) -> "UpSet":
        return up_closure(xs, self)

    def principal(self, x) -> "UpSet":
        return UpSet(self, (x,))

    def dual(self) -> "FinitePoset":
        n = len(self)
        return FinitePoset(self.elements, [[bool(self._up[j] >> i & 1) for j in range(n)] for i in range(n)])

    def power(self, n: int, guard: int | None = None) -> "FinitePoset":
        return product_poset([self] * n, guard=guard)

    def subposet(self, keep: Iterable) -> "FinitePoset":
        keep = sorted(set(keep), key=self.index)
        return FinitePoset(keep, [[self.leq(a, b) for b in keep] for a in keep])


def product_poset(factors: Sequence[FinitePoset], guard: int | None = None) -> FinitePoset:
    """Cartesian product with the componentwise order."""
    guard = guard_limit() if guard is None else guard
    size = 1
    for f in factors:
        size *= len(f)
    if size > guard:
        raise ResourceError(f"product of size {size} exceeds guard {guard}")
    elements = list(itertools.product(*(f.elements for f in factors)))
    idx = [tuple(f.index(c) for f, c in zip(factors, t)) for t in elements]
    matrix = [
        [all(f._up[i] >> j & 1 for f, i, j in zip(factors, a, b)) for b in idx]
        for a in idx
    ]
    return FinitePoset(elements, matrix)


# -- up-sets -----------------------------------------------------------------


def minimize(parent, xs: Iterable) -> frozenset:
    """Minimal elements of ``xs`` under ``parent.leq``."""
    xs = set(xs)
    if isinstance(parent, FinitePoset):
        return frozenset(parent.minimal(xs))
    leq = parent.leq
    return frozenset(x for x in xs if not any(y != x and leq(y, x) for y in xs))


class UpSet:
    """An up-closed subset, held as the antichain of its minimal elements.

    The empty antichain is the empty up-set, which is the *top* of the
    reverse-inclusion lattice of up-sets.
    """

    __slots__ = ("parent", "minimals")

    def __init__(self, parent, generators: Iterable = ()):
        self.parent = parent
        self.minimals = minimize(parent, generators)

    @classmethod
    def _trusted(cls, parent, antichain: frozenset) -> "UpSet":
        u = cls.__new__(cls)
        u.parent = parent
        u.minimals = antichain
        return u

    def __contains__(self, x) -> bool:
        leq = self.parent.leq
        return any(leq(m, x) for m in self.minimals)

    def __bool__(self):
        return bool(self.minimals)

    def __eq__(self, other):
        if not isinstance(other, UpSet):
            return NotImplemented
        return self.parent is other.parent and self.minimals == other.minimals

    def __hash__(self):
        return hash(self.minimals)

    def __repr__(self):
        if not self.minimals:
            return "∅"
        inner = ", ".join(repr(m) for m in self.sorted_minimals())
        return f"{{{inner}}}↑"

    def sorted_minimals(self) -> list:
        return sorted(self.minimals, key=self.parent.sort_key)

    def key(self):
        """Canonical sort key: antichain size, then the sorted element keys."""
        sk = self.parent.sort_key
        return (len(self.minimals), sorted(sk(m) for m in self.minimals))

    def issubset(self, other: "UpSet") -> bool:
        return all(m in other for m in self.minimals)

    def issuperset(self, other: "UpSet") -> bool:
        return other.issubset(self)

    def union(self, other: "UpSet") -> "UpSet":
        return UpSet(self.parent, self.minimals | other.minimals)

    def members(self) -> tuple:
        """Materialize the up-set over the parent's full carrier."""
        return tuple(x for x in self.parent.elements if x in self)


def up_closure(xs: Iterable, P) -> UpSet:
    xs = list(xs)
    if isinstance(P, FinitePoset):
        for x in xs:
            P.index(x)
    return UpSet(P, xs)


def _level_width(n, up, down, order):
    # elements at the same height form an antichain
    height = [0] * n
    for i in order:
        below = down[i] & ~(1 << i)
        height[i] = 1 + max((height[j] for j in _bits(below)), default=-1)
    counts: dict[int, int] = {}
    for h in height:
        counts[h] = counts.get(h, 0) + 1
    return max(counts.values(), default=0)


def all_up_sets(P, guard: int | None = None) -> list[UpSet]:
    """Every up-set of ``P``, deterministically ordered.

    Raises ResourceError when the number of up-sets would exceed ``guard``.
    """
    guard = guard_limit() if guard is None else guard
    elements = list(P.elements)
    n = len(elements)
    if isinstance(P, FinitePoset):
        up, down = P._up, P._down
    else:
        up = [0] * n
        down = [0] * n
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                if P.leq(a, b):
                    up[i] |= 1 << j
                    down[j] |= 1 << i
    # process an element only after everything strictly above it
    top_first = sorted(range(n), key=lambda i: bin(up[i]).count("1"))
    width = _level_width(n, up, down, reversed(top_first))
    if 2**width > guard:
        raise ResourceError(f"at least 2^{width} up-sets; guard is {guard}")

    masks = []
    stack = [(0, 0)]
    while stack:
        pos, chosen = stack.pop()
        if pos == n:
            masks.append(chosen)
            if len(masks) > guard:
                raise ResourceError(f"more than {guard} up-sets")
            continue
        i = top_first[pos]
        if up[i] & ~(1 << i) & ~chosen == 0:
            stack.append((pos + 1, chosen | 1 << i))
        stack.append((pos + 1, chosen))

    result = []
    for mask in masks:
        mins = frozenset(elements[i] for i in _bits(mask) if not (down[i] & mask) & ~(1 << i))
        result.append(UpSet._trusted(P, mins))
    result.sort(key=UpSet.key)
    return result


def up_set_mask(P: FinitePoset, U: UpSet) -> int:
    m = 0
    for x in U.minimals:
        m |= P.up_mask(x)
    return m


def star(P: FinitePoset, guard: int | None = None) -> FinitePoset:
    """The lattice of all up-sets of ``P`` ordered by reverse inclusion."""
    ups = all_up_sets(P, guard)
    masks = [up_set_mask(P, u) for u in ups]
    matrix = [[mb & ~ma == 0 for mb in masks] for ma in masks]
    return FinitePoset(ups, matrix)


def closed_sets_poset(sets: Sequence[UpSet]) -> FinitePoset:
    """A family of up-sets as a poset under reverse inclusion."""
    return FinitePoset(sets, [[a.issuperset(b) for b in sets] for a in sets])


def is_complete_lattice(P: FinitePoset) -> bool:
    """Finite case: nonempty with all binary meets and joins."""
    if len(P) == 0:
        return False
    if P.top is None or P.bottom is None:
        return False
    n = len(P)
    for i in range(n):
        for j in range(i + 1, n):
            if P._glb_mask(P._down[i] & P._down[j]) is None:
                return False
            if P._lub_mask(P._up[i] & P._up[j]) is None:
                return False
    return True


# -- completions -------------------------------------------------------------


@dataclass(frozen=True)
class CompletionMap:
    source: FinitePoset
    target: FinitePoset
    mapping: Mapping[Any, Any]

    def __post_init__(self):
        for p in self.source.elements:
            if p not in self.mapping:
                raise InputError(f"map is not total: no image for {p!r}")
            if self.mapping[p] not in self.target:
                raise InputError(f"image of {p!r} is not in the target")

    def __call__(self, p):
        return self.mapping[p]

    def image(self, ps: Iterable) -> list:
        return [self.mapping[p] for p in ps]

    def is_order_embedding(self) -> bool:
        S, T = self.source, self.target
        return all(
            S.leq(p, q) == T.leq(self(p), self(q)) for p in S.elements for q in S.elements
        )


def is_meet_completion(e: CompletionMap) -> bool:
    """True iff ``e`` is an order embedding whose image is meet-dense."""
    T = e.target
    if not is_complete_lattice(T):
        raise InputError("target of a completion must be a complete lattice")
    if not e.is_order_embedding():
        return False
    images = [e(p) for p in e.source.elements]
    for q in T.elements:
        above = [x for x in images if T.leq(q, x)]
        if T.meet(above) != q:
            return False
    return True


def iota(P: FinitePoset, guard: int | None = None) -> CompletionMap:
    """p -> p↑ into the lattice of up-sets."""
    target = star(P, guard)
    return CompletionMap(P, target, {p: P.principal(p) for p in P.elements})


def power_map(e: CompletionMap, n: int, guard: int | None = None) -> CompletionMap:
    if n < 1:
        raise InputError("power must be at least 1")
    if n == 1:
        return e
    src = e.source.power(n, guard)
    tgt = e.target.power(n, guard)
    return CompletionMap(src, tgt, {t: tuple(e(p) for p in t) for t in src.elements})


def restrict_product(e: CompletionMap, n: int, guard: int | None = None) -> CompletionMap:
    """Drop the tuples lying below no image tuple, except the top."""
    full = power_map(e, n, guard)
    if n == 1:
        return full
    T = full.target
    top = T.top
    images = set(full.mapping.values())
    keep = [q for q in T.elements if q == top or any(T.leq(q, x) for x in images)]
    return CompletionMap(full.source, T.subposet(keep), dict(full.mapping))


def removed_by_restriction(e: CompletionMap, n: int) -> list:
    full = power_map(e, n)
    kept = set(restrict_product(e, n).target.elements)
    return [q for q in full.target.elements if q not in kept]


# -- file format -------------------------------------------------------------


def poset_from_json(data) -> FinitePoset:
    """``{"elements": [...], "leq": [[i, j], ...]}`` with an explicit full order."""
    if isinstance(data, str):
        data = json.loads(data)
    try:
        elements = data["elements"]
        pairs = data["leq"]
    except (KeyError, TypeError):
        raise InputError("poset JSON needs 'elements' and 'leq'") from None
    return FinitePoset.from_pairs(elements, [tuple(p) for p in pairs])


def poset_to_json(P: FinitePoset) -> dict:
    return {"elements": [str(x) for x in P.elements], "leq": [list(p) for p in P.order_pairs()]}
