import json
import random

import pytest
from hypothesis import given, strategies as st

from odakit.axioms import check_axioms
from odakit.errors import InputError, ResourceError
from odakit.relations import (
    AbstractODA,
    BinRel,
    FullRelationAlgebra,
    full_algebra,
    generate_subalgebra,
    one_element_algebra,
    rel_comp,
    rel_conv,
    rel_dom,
    rel_id,
    rel_ran,
    rel_zero,
    relation_from_json,
    relation_to_json,
)


def set_comp(x, y):
    return {(u, v) for u, w in x for w2, v in y if w == w2}


@st.composite
def rels(draw, base=None):
    n = base or draw(st.integers(1, 4))
    return BinRel(n, draw(st.integers(0, 2 ** (n * n) - 1)))


@st.composite
def rel_pairs(draw):
    n = draw(st.integers(1, 4))
    return draw(rels(n)), draw(rels(n)), draw(rels(n))


def test_comp_examples():
    assert rel_comp(BinRel.from_pairs(3, [(0, 1)]), BinRel.from_pairs(3, [(1, 2)])) == BinRel.from_pairs(3, [(0, 2)])
    x, y = BinRel.parse(4, "ab cd"), BinRel.parse(4, "ad cb")
    assert rel_comp(x, rel_conv(y)) == BinRel.parse(4, "ac ca")
    assert rel_comp(BinRel.parse(2, "ab"), BinRel.parse(2, "aa")) == rel_zero(2)
    with pytest.raises(InputError):
        rel_comp(BinRel(2, 1), BinRel(3, 1))


def test_unary_examples():
    assert rel_dom(BinRel.parse(4, "ab cd")) == BinRel.parse(4, "aa cc")
    z = rel_zero(3)
    assert rel_dom(z) == rel_ran(z) == rel_conv(z) == z
    assert rel_conv(BinRel.parse(4, "ad cb")) == BinRel.parse(4, "da bc")
    assert rel_id(2).pairs() == [(0, 0), (1, 1)]


def test_pair_validation_and_repr():
    with pytest.raises(InputError):
        BinRel.from_pairs(2, [(0, 2)])
    with pytest.raises(InputError):
        BinRel(33, 0)
    assert repr(BinRel.parse(3, "ab ca")) == "{(a,b),(c,a)}"


@given(rel_pairs())
def test_comp_matches_set_oracle(t):
    x, y, _ = t
    assert set(rel_comp(x, y).pairs()) == set_comp(x.pairs(), y.pairs())


@given(rel_pairs())
def test_raw_laws(t):
    x, y, z = t
    assert rel_conv(rel_conv(x)) == x
    assert rel_comp(rel_comp(x, y), z) == rel_comp(x, rel_comp(y, z))
    assert rel_comp(rel_dom(x), x) == x
    assert rel_comp(x, rel_ran(x)) == x
    assert rel_conv(rel_comp(x, y)) == rel_comp(rel_conv(y), rel_conv(x))


def test_virtual_full_algebra():
    F = FullRelationAlgebra(2)
    assert len(F.elements) == 16
    assert F.leq(F.zero, F.one) and not F.leq(F.one, F.zero)
    with pytest.raises(ResourceError):
        FullRelationAlgebra(5).elements


def test_subalgebra_examples():
    assert len(generate_subalgebra(2)) == 2
    assert len(generate_subalgebra(1)) == 2
    A = generate_subalgebra(1, [BinRel.parse(1, "aa")])
    assert sorted(A.relations) == [rel_zero(1), rel_id(1)]
    x = BinRel.parse(2, "ab ba")
    B = generate_subalgebra(2, [x])
    assert {rel_zero(2), rel_id(2), x} <= set(B.relations)
    assert rel_comp(x, x) == rel_id(2)
    # closing again adds nothing
    assert set(generate_subalgebra(2, B.relations).relations) == set(B.relations)
    with pytest.raises(ResourceError):
        generate_subalgebra(3, [BinRel.parse(3, "ab bc")], guard=4)


def test_full_algebra_passes_axioms():
    for base in (1, 2):
        assert check_axioms(full_algebra(base)).ok


@given(st.integers(0, 2**32 - 1), st.integers(1, 3))
def test_random_proper_algebras_pass_axioms(seed, base):
    rng = random.Random(seed)
    gens = [BinRel(base, rng.getrandbits(base * base)) for _ in range(rng.randint(0, 2))]
    report = check_axioms(generate_subalgebra(base, gens))
    assert report.ok, report.failed()


def test_one_element_algebra_passes():
    assert check_axioms(one_element_algebra()).ok


def test_mutated_comp_table_fails_with_witness():
    A = full_algebra(2)
    good = check_axioms(A)
    rng = random.Random(7)
    for _ in range(10):
        table = [list(r) for r in A.comp_table]
        a, b = rng.randrange(len(A)), rng.randrange(len(A))
        table[a][b] = next(c for c in range(len(A)) if c != table[a][b])
        report = check_axioms(A.copy_with(comp_table=table))
        assert good.ok and not report.ok
        bad = report[report.failed()[0]]
        assert bad.witness is not None


def test_algebra_json_round_trip():
    A = generate_subalgebra(2, [BinRel.parse(2, "ab")])
    B = AbstractODA.from_json(json.loads(json.dumps(A.to_json())))
    assert B.comp_table == A.comp_table and B.leq_matrix == A.leq_matrix
    assert (B.zero, B.one) == (A.zero, A.one)


@pytest.mark.parametrize(
    "patch",
    [{"comp": [[0]]}, {"dom": [0]}, {"zero": 9}, {"leq": [[0, 1], [1, 0]]}],
)
def test_algebra_json_rejects(patch):
    data = full_algebra(1).to_json()
    data.update(patch)
    with pytest.raises(InputError):
        AbstractODA.from_json(data).poset


def test_relation_json():
    x = BinRel.parse(3, "ab ca")
    assert relation_from_json(relation_to_json(x)) == x
    with pytest.raises(InputError):
        relation_from_json({"base": 2})
