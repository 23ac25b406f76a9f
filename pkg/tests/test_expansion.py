import itertools
import random

import pytest
from hypothesis import given

from strategies import seeds
from odakit.closure import identity_closure
from odakit.completion import ODACompletion
from odakit.errors import InputError
from odakit.expansion import (
    CompletedExpansion,
    Operation,
    PosetExpansion,
    eval_term,
    holds_inequality,
    lift_op,
    lift_op_two_case,
    oda_closure_operator,
    oda_expansion,
    pointwise_image,
    sahl_condition,
)
from odakit.poset import FinitePoset, UpSet, up_set_mask
from odakit.randgen import random_expansion, random_standard_closure
from odakit.relations import full_algebra
from odakit.terms import App, Var, depth, parse_term, term_variables


def materialized_lift(op, gamma, args):
    """Oracle: apply op to every tuple of members, then close."""
    P = gamma.parent
    image = {op.table[t] for t in itertools.product(*(a.members() for a in args))}
    mask = 0
    for v in image:
        mask |= P.up_mask(v)
    return gamma(UpSet(P, P.minimal(P.from_mask(mask))))


@pytest.fixture
def chain3():
    P = FinitePoset.chain(3)
    return PosetExpansion.from_functions(
        P, {"s": (1, lambda x: min(x + 1, 2)), "m": (2, min), "c": (0, lambda: 1)}
    )


def test_non_isotone_rejected():
    P = FinitePoset.chain(2)
    with pytest.raises(InputError, match="isotone"):
        PosetExpansion.from_functions(P, {"neg": (1, lambda x: 1 - x)})
    with pytest.raises(InputError, match="undefined"):
        PosetExpansion(P, {"f": Operation(1, {(0,): 0})})


def test_constant_lifts_to_principal(chain3):
    E = CompletedExpansion(chain3)
    assert E.lifted["c"]() == chain3.poset.principal(1)


def test_principal_arguments(chain3):
    E = CompletedExpansion(chain3)
    P = chain3.poset
    for a, b in itertools.product(P.elements, repeat=2):
        assert E.lifted["m"](P.principal(a), P.principal(b)) == P.principal(min(a, b))


def test_empty_argument_gives_closure_of_empty(chain3):
    E = CompletedExpansion(chain3)
    empty = UpSet(chain3.poset, [])
    assert E.lifted["m"](empty, chain3.poset.principal(0)) == empty
    with pytest.raises(InputError, match="arguments"):
        E.lifted["m"](empty)


def test_eval_term_basics(chain3):
    E = CompletedExpansion(chain3)
    P = chain3.poset
    t = chain3.parse("(m (s x) y)", ["x", "y"])
    assert E.eval(Var("x"), {"x": P.principal(2)}) == P.principal(2)
    assert eval_term(t, {"x": P.principal(0), "y": P.principal(2)}, E) == P.principal(1)
    empty = UpSet(P, [])
    assert E.eval(t, {"x": empty, "y": empty}) == empty
    with pytest.raises(InputError, match="unbound"):
        E.eval(t, {"x": empty})


def test_terms_parse_and_reject():
    ar = {"f": 2, "g": 1}
    t = parse_term("(f (g x) y)", ar, ["x", "y"])
    assert t == App("f", (App("g", (Var("x"),)), Var("y")))
    assert depth(t) == 2 and term_variables(t) == {"x", "y"}
    assert str(t) == "(f (g x) y)"
    for bad in ["(f x)", "(h x)", "(g z)", "(g x", "(g x))"]:
        with pytest.raises(InputError):
            parse_term(bad, ar, ["x", "y"])


@given(seeds)
def test_generator_lift_matches_materialized(seed):
    rng = random.Random(seed)
    M = random_expansion(rng, 4)
    gamma = random_standard_closure(rng, M.poset, k=2, include_empty=rng.random() < 0.5)
    E = CompletedExpansion(M, gamma)
    for name, op in M.ops.items():
        lifted = lift_op(op, gamma)
        two_case = lift_op_two_case(op, gamma)
        for args in itertools.product(E.closed_sets, repeat=op.arity):
            want = materialized_lift(op, gamma, args)
            assert lifted(*args) == want
            assert two_case(*args) == want
            assert gamma(want) == want


@given(seeds)
def test_lifted_ops_isotone(seed):
    rng = random.Random(seed)
    M = random_expansion(rng, 3)
    E = CompletedExpansion(M, random_standard_closure(rng, M.poset, k=2))
    f = E.lifted["u"]
    for X, Y in itertools.product(E.closed_sets, repeat=2):
        if X.issuperset(Y):
            assert f(X).issuperset(f(Y))


@given(seeds)
def test_term_semantics_on_principal_assignments(seed):
    rng = random.Random(seed)
    M = random_expansion(rng, 4)
    E = CompletedExpansion(M)
    from odakit.randgen import random_term

    t = random_term(rng, M.arities, ["x", "y"], 3)
    for a, b in itertools.product(M.poset.elements, repeat=2):
        env = {"x": M.poset.principal(a), "y": M.poset.principal(b)}
        assert E.eval(t, env) == M.poset.principal(M.eval(t, {"x": a, "y": b}))


def test_trivial_inequality_holds(chain3):
    t = chain3.parse("(s x)", ["x"])
    assert holds_inequality(chain3, t, t, ["x"]) == (True, None)
    assert holds_inequality(CompletedExpansion(chain3), t, t, ["x"]) == (True, None)


def test_inequality_witness_is_first(chain3):
    x, sx = Var("x"), chain3.parse("(s x)", ["x"])
    ok, w = holds_inequality(chain3, sx, x, ["x"])
    assert not ok and w == {"x": 0}
    assert holds_inequality(chain3, x, sx, ["x"])[0]


def test_duplicated_variable_image_is_not_the_lift():
    # a binary op that is only "large" on the diagonal: the lift sees
    # off-diagonal generator pairs that the pointwise image never visits
    P = FinitePoset.antichain(3)
    M = PosetExpansion.from_functions(P, {"b": (2, lambda a, c: a if a == c else 2)})
    E = CompletedExpansion(M)
    C = UpSet(P, [0, 1])
    t = parse_term("(b y y)", M.arities, ["y"])
    assert pointwise_image(M, t, {"y": C}, ["y"]) == C
    assert E.eval(t, {"y": C}) == UpSet(P, [0, 1, 2])
    assert holds_inequality(M, Var("y"), t, ["y"])[0]
    assert not holds_inequality(E, Var("y"), t, ["y"])[0]


def test_sahl_condition_examples():
    A = full_algebra(2)
    M = oda_expansion(A)
    E = CompletedExpansion(M, oda_closure_operator(A))
    for text in ["(dom x)", "(ran x)", "(conv x)", "x"]:
        ok, bad = sahl_condition(E, parse_term(text, M.arities, ["x"]), ["x"])
        assert ok, (text, bad)
    # composition is defined as the closure of the image
    ok, _ = sahl_condition(E, parse_term("(comp x y)", M.arities, ["x", "y"]), ["x", "y"])
    assert ok


def test_oda_expansion_agrees_with_completion():
    A = full_algebra(1)
    M = oda_expansion(A)
    C = ODACompletion(A)
    E = CompletedExpansion(M, oda_closure_operator(A))
    assert {up_set_mask(A.poset, X) for X in E.closed_sets} == {up_set_mask(A.poset, X) for X in C.elements}
    for X, Y in itertools.product(C.elements, repeat=2):
        assert E.lifted["comp"](X, Y) == C.comp_c(X, Y)
        assert E.lifted["dom"](X) == C.dom_c(X)


def test_expansion_on_wrong_poset_rejected(chain3):
    with pytest.raises(InputError):
        CompletedExpansion(chain3, identity_closure(FinitePoset.chain(3)))


def test_linear_terms_preserved():
    from odakit.suites import preservation_trials

    out = preservation_trials(seed=11, trials=200, terms="linear")
    assert out.ok, out.failures[:3]
    assert out.stats.get("holds", 0) > 0 and out.stats.get("refuted", 0) > 0


def test_unbalanced_variables_break_preservation():
    # y <= u(x) holds in P when u is constantly the top, but the empty
    # up-set is a value for y in the completion that u(x) cannot reach
    P = FinitePoset.chain(2)
    M = PosetExpansion.from_functions(P, {"u": (1, lambda x: 1)})
    phi, psi = Var("y"), parse_term("(u x)", M.arities, ["x"])
    assert holds_inequality(M, phi, psi, ["x", "y"])[0]
    ok, w = holds_inequality(CompletedExpansion(M), phi, psi, ["x", "y"])
    assert not ok and w["y"] == UpSet(P, [])
