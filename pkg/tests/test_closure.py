import random

import pytest
from hypothesis import given

from strategies import posets, seeds
from odakit.closure import (
    ClosureOperator,
    completion_from_gamma,
    find_isomorphisms,
    gamma_from_completion,
    h_iso,
    identity_closure,
    is_order_isomorphism,
    is_standard_closure,
    same_operator,
    standard_closure_failure,
)
from odakit.errors import InputError
from odakit.expansion import oda_closure_operator
from odakit.poset import CompletionMap, FinitePoset, UpSet, all_up_sets, iota, is_meet_completion
from odakit.randgen import random_standard_closure
from odakit.relations import full_algebra
from odakit.suites import correspondence_trials


def test_identity_is_standard(diamond):
    assert is_standard_closure(identity_closure(diamond))


def test_constant_carrier_is_not_standard(diamond):
    whole = UpSet(diamond, ["bot"])
    gamma = ClosureOperator(diamond, lambda S: whole, name="const")
    assert standard_closure_failure(gamma).startswith("not standard")


def test_non_extensive_operator_detected():
    P = FinitePoset.antichain(2)
    # sends {0,1}↑ to 0↑, so it shrinks
    gamma = ClosureOperator(P, lambda S: S if len(S.minimals) < 2 else P.principal(0))
    assert "extensive" in standard_closure_failure(gamma)


def test_oda_closure_is_standard():
    A = full_algebra(1)
    assert is_standard_closure(oda_closure_operator(A))


def test_oda_closure_is_standard_base_two(full2):
    assert is_standard_closure(oda_closure_operator(full2))


def test_gamma_of_iota_is_identity(diamond):
    e = iota(diamond)
    assert same_operator(gamma_from_completion(e), identity_closure(diamond)) is None


def test_gamma_of_point_into_chain_fixes_empty():
    P = FinitePoset(["p"], [[True]])
    Q = FinitePoset(["q", "top"], [[True, True], [False, True]])
    g = gamma_from_completion(CompletionMap(P, Q, {"p": "q"}))
    assert g(UpSet(P, [])) == UpSet(P, [])
    assert g(P.principal("p")) == P.principal("p")


def test_gamma_requires_meet_completion():
    P = FinitePoset.chain(2)
    Q = FinitePoset(["a", "b", "c"], [[True, True, True], [False, True, True], [False, False, True]])
    e = CompletionMap(P, Q, {0: "a", 1: "c"})  # b is not a meet of images
    assert not is_meet_completion(e)
    with pytest.raises(InputError):
        gamma_from_completion(e)
    with pytest.raises(InputError):
        h_iso(e)


def test_completion_from_non_standard_rejected(diamond):
    whole = UpSet(diamond, ["bot"])
    with pytest.raises(InputError, match="not standard"):
        completion_from_gamma(ClosureOperator(diamond, lambda S: whole))


def test_h_on_singleton_iota():
    P = FinitePoset(["p"], [[True]])
    e = iota(P)
    h, h_inv = h_iso(e)
    assert len(e.target) == 2
    assert all(h[q] == q for q in e.target.elements)
    assert is_order_isomorphism(h, e.target, closed := completion_from_gamma(identity_closure(P)).target)
    assert set(h.values()) == set(closed.elements)


def test_completion_from_identity_is_iota(diamond):
    e = completion_from_gamma(identity_closure(diamond))
    i = iota(diamond)
    assert set(e.target.elements) == set(i.target.elements)
    assert all(e(p) == i(p) for p in diamond.elements)


@given(posets(max_size=5), seeds)
def test_random_family_closure_is_standard(P, seed):
    gamma = random_standard_closure(random.Random(seed), P)
    assert is_standard_closure(gamma)


@given(posets(max_size=5), seeds)
def test_round_trip_gamma(P, seed):
    gamma = random_standard_closure(random.Random(seed), P, k=3)
    e = completion_from_gamma(gamma)
    assert is_meet_completion(e)
    assert same_operator(gamma_from_completion(e), gamma) is None
    assert set(e.target.elements) == set(gamma.closed_sets())


@given(posets(max_size=5), seeds)
def test_h_is_iso_and_triangle_commutes(P, seed):
    e = completion_from_gamma(random_standard_closure(random.Random(seed), P, k=2))
    h, h_inv = h_iso(e)
    g = gamma_from_completion(e)
    closed = completion_from_gamma(g).target
    assert is_order_isomorphism(h, e.target, closed)
    assert all(h_inv[h[q]] == q for q in e.target.elements)
    assert all(h[e(p)] == P.principal(p) for p in P.elements)


def test_isomorphism_search_counts():
    C = FinitePoset.antichain(3)
    assert len(find_isomorphisms(C, C)) == 6
    assert len(find_isomorphisms(C, C, {0: 1})) == 2
    assert find_isomorphisms(C, FinitePoset.chain(3)) == []


def test_correspondence_runner_small():
    out = correspondence_trials(seed=3, trials=20, max_poset=4)
    assert out.ok, out.failures
    assert out.stats["iso-searches"] > 0


def test_ups_of_random_poset_cover_both_empty_conventions():
    # on a chain no intersection of principal up-sets is empty
    rng = random.Random(1)
    P = FinitePoset.chain(3)
    with_empty = random_standard_closure(rng, P, k=0, include_empty=True)
    without = random_standard_closure(rng, P, k=0, include_empty=False)
    empty = UpSet(P, [])
    assert with_empty(empty) == empty
    assert without(empty) != empty
    assert all(is_standard_closure(g, all_up_sets(P)) for g in (with_empty, without))
