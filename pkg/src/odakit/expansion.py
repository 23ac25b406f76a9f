"""Isotone poset expansions and their completions by closure operators.

An n-ary operation f lifts to closed sets as
C_1..C_n -> closure(f[C_1 x ... x C_n]↑).  Because f is isotone the
product only needs the minimal elements of each argument.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .closure import ClosureOperator, identity_closure
from .errors import InputError
from .poset import FinitePoset, UpSet
from .terms import App, Term, Var, parse_term


@dataclass(frozen=True)
class Operation:
    arity: int
    table: Mapping[tuple, object]

    def __call__(self, *args):
        return self.table[args]


class PosetExpansion:
    def __init__(self, poset: FinitePoset, ops: Mapping[str, Operation]):
        self.poset = poset
        self.ops = dict(ops)
        for name, op in self.ops.items():
            self._validate(name, op)

    @classmethod
    def from_functions(cls, poset: FinitePoset, funcs: Mapping[str, tuple[int, Callable]]):
        ops = {}
        for name, (arity, f) in funcs.items():
            table = {t: f(*t) for t in itertools.product(poset.elements, repeat=arity)}
            ops[name] = Operation(arity, table)
        return cls(poset, ops)

    def _validate(self, name, op):
        P = self.poset
        tuples = list(itertools.product(P.elements, repeat=op.arity))
        for t in tuples:
            if t not in op.table:
                raise InputError(f"operation {name} undefined at {t!r}")
            if op.table[t] not in P:
                raise InputError(f"operation {name} leaves the poset at {t!r}")
        for s in tuples:
            for t in tuples:
                if all(P.leq(a, b) for a, b in zip(s, t)) and not P.leq(op.table[s], op.table[t]):
                    raise InputError(f"operation {name} is not isotone: {s!r} <= {t!r}")

    @property
    def arities(self) -> dict[str, int]:
        return {name: op.arity for name, op in self.ops.items()}

    def parse(self, text: str, variables: Sequence[str]) -> Term:
        return parse_term(text, self.arities, variables)

    def eval(self, t: Term, env: Mapping[str, object]):
        if isinstance(t, Var):
            try:
                return env[t.name]
            except KeyError:
                raise InputError(f"unbound variable {t.name}") from None
        return self.ops[t.op](*(self.eval(a, env) for a in t.args))


def lift_op(op: Operation, gamma: ClosureOperator) -> Callable[..., UpSet]:
    """The lifted operation on closed sets; an empty argument yields closure(∅)."""
    P = gamma.parent

    def lifted(*args: UpSet) -> UpSet:
        if len(args) != op.arity:
            raise InputError(f"expected {op.arity} arguments, got {len(args)}")
        gens = (op.table[t] for t in itertools.product(*(a.minimals for a in args)))
        return gamma(UpSet(P, gens))

    return lifted


def lift_op_two_case(op: Operation, gamma: ClosureOperator) -> Callable[..., UpSet]:
    """The case-split form of the lift: closure(∅) whenever an argument is
    empty, the image formula otherwise."""
    P = gamma.parent

    def lifted(*args: UpSet) -> UpSet:
        if any(not a.minimals for a in args):
            return gamma(UpSet(P, ()))
        members = [a.members() for a in args]
        return gamma(UpSet(P, (op.table[t] for t in itertools.product(*members))))

    return lifted


def pointwise_image(M: PosetExpansion, t: Term, env: Mapping[str, UpSet], variables: Sequence[str]) -> UpSet:
    """t[C_1 x ... x C_n]↑ by evaluating t at every tuple of members."""
    members = [env[v].members() for v in variables]
    out = set()
    for values in itertools.product(*members):
        out.add(M.eval(t, dict(zip(variables, values))))
    return UpSet(M.poset, out)


class CompletedExpansion:
    """Closed up-sets under reverse inclusion with every operation lifted."""

    def __init__(self, M: PosetExpansion, gamma: ClosureOperator | None = None):
        self.expansion = M
        self.gamma = gamma if gamma is not None else identity_closure(M.poset)
        if self.gamma.parent is not M.poset:
            raise InputError("closure operator acts on a different poset")
        self.lifted = {name: lift_op(op, self.gamma) for name, op in M.ops.items()}
        self._closed = None

    @property
    def closed_sets(self) -> list[UpSet]:
        if self._closed is None:
            self._closed = self.gamma.closed_sets()
        return self._closed

    def eval(self, t: Term, env: Mapping[str, UpSet]) -> UpSet:
        if isinstance(t, Var):
            try:
                return env[t.name]
            except KeyError:
                raise InputError(f"unbound variable {t.name}") from None
        return self.lifted[t.op](*(self.eval(a, env) for a in t.args))


def eval_term(t: Term, env: Mapping[str, UpSet], E: CompletedExpansion) -> UpSet:
    return E.eval(t, env)


def holds_inequality(S, phi: Term, psi: Term, variables: Sequence[str]):
    """Whether phi <= psi under every assignment.

    ``S`` is a PosetExpansion (elements, order of P) or a CompletedExpansion
    (closed sets, reverse inclusion).  Returns ``(True, None)`` or
    ``(False, witness)`` with the first failing assignment in canonical
    order.
    """
    variables = list(variables)
    if isinstance(S, CompletedExpansion):
        domain = S.closed_sets
        le = UpSet.issuperset
    else:
        domain = list(S.poset.elements)
        le = S.poset.leq
    for values in itertools.product(domain, repeat=len(variables)):
        env = dict(zip(variables, values))
        if not le(S.eval(phi, env), S.eval(psi, env)):
            return False, env
    return True, None


def sahl_condition(E: CompletedExpansion, psi: Term, variables: Sequence[str], tuples: Iterable | None = None):
    """Whether psi's lifted value equals the closure of its pointwise image
    on each tested tuple of closed sets.  Returns ``(ok, first_failure)``."""
    variables = list(variables)
    if tuples is None:
        tuples = itertools.product(E.closed_sets, repeat=len(variables))
    for values in tuples:
        env = dict(zip(variables, values))
        lifted = E.eval(psi, env)
        image = E.gamma(pointwise_image(E.expansion, psi, env, variables))
        if lifted != image:
            return False, env
    return True, None


def oda_expansion(A) -> PosetExpansion:
    """An abstract ODA viewed as a poset expansion over its index poset."""
    P = A.poset
    return PosetExpansion.from_functions(
        P,
        {
            "comp": (2, A.comp),
            "dom": (1, A.dom),
            "ran": (1, A.ran),
            "conv": (1, A.conv),
            "zero": (0, lambda: A.zero),
            "id": (0, lambda: A.one),
        },
    )


def oda_closure_operator(A) -> ClosureOperator:
    from .completion import ODACompletion

    C = ODACompletion(A)
    return ClosureOperator(A.poset, C.closure, name="oda")
