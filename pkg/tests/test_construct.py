"""Builders: transformation monoids, Rees matrix instances, products, catalog."""

from __future__ import annotations

import itertools

import pytest

from invmatch.construct import (OPnTriple, ReesMatrixSpec, Transformation, adjoin_identity,
                                adjoin_zero, catalog, catalog_names, cyclic_group,
                                direct_product, full_transformation_monoid,
                                is_cyclic_sequence, is_transversal, left_zero,
                                op_triple_compose, op_triple_decompose,
                                orientation_preserving_monoid,
                                partial_transformation_monoid, prop15_retract,
                                rees_matrix, right_zero, set_partitions_by_sizes,
                                subsemigroup_table, symmetric_group_s3)
from invmatch.core import SemigroupError, verify_associativity

from _oracles import count_orientation_preserving, inverse_set

CATALOG_ORDERS = {
    "example-1.3": 7,
    "prop-1.5-T": 10,
    "remarks-2.5": 10,
    "brandt-B2": 5,
    "rect-band-2x3": 6,
    "rect-band-3x2": 6,
    "cyclic-C4": 4,
    "left-zero-3": 3,
    "right-zero-3": 3,
}


def test_full_transformation_sizes_and_index():
    for n in (1, 2, 3, 4):
        s = full_transformation_monoid(n)
        assert s.order == n ** n
        for a in s.elements():
            assert s.index[s.images[a]] == a
        assert verify_associativity(s, sample=200) is None


def test_full_transformation_rejects_large_n():
    with pytest.raises(SemigroupError):
        full_transformation_monoid(9)


def test_partial_transformation_sizes():
    # maps with an absorbing "undefined" point: (n+1)^n elements
    for n in (1, 2, 3):
        s = partial_transformation_monoid(n)
        assert s.order == (n + 1) ** n
        assert s.is_regular()


def test_orientation_monoid_order_matches_bruteforce():
    for n in (3, 4):
        s = orientation_preserving_monoid(n)
        assert s.order == count_orientation_preserving(n)


def test_orientation_monoid_known_orders():
    assert orientation_preserving_monoid(5).order == 610
    assert orientation_preserving_monoid(6).order == 2742


def test_orientation_monoid_closed_under_composition():
    s = orientation_preserving_monoid(4)
    members = set(s.images)
    for a in (0, 7, 20, 100):
        for b in (1, 13, 77, 127):
            assert s.images[s.mul(a, b)] in members


def test_is_cyclic_sequence():
    assert is_cyclic_sequence((0, 1, 1, 2))
    assert is_cyclic_sequence((2, 0, 1, 1))   # rotation of a non-decreasing word
    assert is_cyclic_sequence((3, 3, 3))
    assert not is_cyclic_sequence((0, 2, 1, 3))


def test_op_triple_round_trip():
    for n in (4, 5):
        s = orientation_preserving_monoid(n)
        for a in s.elements():
            if s.rank(a) < 2:
                continue
            t = Transformation(n, s.images[a])
            triple = op_triple_decompose(t)
            assert isinstance(triple, OPnTriple)
            k = len(triple.image_set)
            assert len(triple.cut_points) == k and 0 <= triple.rotation < k
            assert op_triple_compose(triple).image == t.image


def test_rees_matrix_products_by_hand():
    # 2x3 structure matrix; (i,j)(k,l) = (i,l) when the j-row marks k, else 0
    spec = ReesMatrixSpec(rows=2, cols=3, structure=((0, 1), (1, 0), (1, 0)))
    s = rees_matrix(spec)
    assert s.order == 7 and s.zero == 6
    ids = {s.label(a): a for a in s.elements()}
    assert s.mul(ids["(1,1)"], ids["(2,1)"]) == ids["(1,1)"]   # p_12 = 1
    assert s.mul(ids["(1,1)"], ids["(1,1)"]) == s.zero         # p_11 = 0
    assert s.mul(s.zero, ids["(2,2)"]) == s.zero
    assert verify_associativity(s) is None


def test_rees_matrix_spec_json_round_trip(tmp_path):
    spec = ReesMatrixSpec(rows=2, cols=3, structure=((0, 1), (1, 0), (1, 0)))
    text = spec.to_json()
    again = ReesMatrixSpec.from_json(text)
    assert again == spec
    path = tmp_path / "spec.json"
    path.write_text(text)
    assert ReesMatrixSpec.from_json(path.read_text()) == spec


def test_rees_matrix_requires_regular_structure():
    # a row or column of the structure matrix with no mark leaves elements
    # with no inverse at all
    with pytest.raises(SemigroupError):
        rees_matrix(ReesMatrixSpec(rows=2, cols=2, structure=((0, 0), (1, 0))))


def test_catalog_names_and_orders():
    assert set(catalog_names()) == set(CATALOG_ORDERS)
    for name in catalog_names():
        s = catalog(name)
        assert s.order == CATALOG_ORDERS[name]
        assert s.name == name
        assert verify_associativity(s) is None
    with pytest.raises(SemigroupError):
        catalog("no-such-instance")


def test_counterexample_inverse_sets_by_hand():
    """The 7-element instance: corner elements (2,2), (2,3) both have V = {(1,1)}."""
    s = catalog("example-1.3")
    ids = {s.label(a): a for a in s.elements()}
    assert inverse_set(s, ids["(2,2)"]) == (ids["(1,1)"],)
    assert inverse_set(s, ids["(2,3)"]) == (ids["(1,1)"],)
    assert inverse_set(s, ids["(1,1)"]) == (ids["(2,2)"], ids["(2,3)"])


def test_prop15_retract_is_isomorphic_to_counterexample():
    """The 7-element retract inside prop-1.5-T is the counterexample instance,
    up to relabelling (checked by brute-force isomorphism search)."""
    r = prop15_retract()
    c = catalog("example-1.3")
    assert r.order == c.order == 7

    def is_isomorphism(perm):
        return all(perm[r.mul(a, b)] == c.mul(perm[a], perm[b])
                   for a in range(7) for b in range(7))

    found = any(is_isomorphism(perm) for perm in itertools.permutations(range(7)))
    assert found


def test_direct_product_order_and_componentwise_mul():
    s = catalog("brandt-B2")
    t = right_zero(2)
    p = direct_product(s, t)
    assert p.order == s.order * t.order
    # element ids enumerate pairs row-major; multiply a couple by hand
    def pid(a, b):
        return a * t.order + b
    assert p.mul(pid(1, 0), pid(2, 1)) == pid(s.mul(1, 2), t.mul(0, 1))


def test_adjoin_zero_and_identity():
    s = left_zero(2)
    z = adjoin_zero(s)
    assert z.order == 3 and z.zero == 2
    assert z.mul(0, 2) == 2 and z.mul(2, 1) == 2
    e = adjoin_identity(s)
    assert e.order == 3
    one = e.order - 1
    assert all(e.mul(one, a) == a and e.mul(a, one) == a for a in e.elements())


def test_small_groups():
    c4 = cyclic_group(4)
    assert c4.order == 4
    assert verify_associativity(c4) is None
    assert c4.idempotents() == (0,)
    s3 = symmetric_group_s3()
    assert s3.order == 6 and len(s3.idempotents()) == 1


def test_left_right_zero_products():
    lz = left_zero(3)
    rz = right_zero(3)
    for a in range(3):
        for b in range(3):
            assert lz.mul(a, b) == a
            assert rz.mul(a, b) == b


def test_subsemigroup_table_closure_check():
    s = catalog("prop-1.5-T")
    # the bottom two Rees rows plus zero form a subsemigroup
    keep = [a for a in s.elements()
            if s.label(a).startswith(("(2,", "(3,")) or a == s.zero]
    t = subsemigroup_table(s, keep)
    assert t.order == 7
    with pytest.raises(SemigroupError):
        subsemigroup_table(s, [0, 1])   # not closed


def test_set_partitions_by_sizes_counts_and_canonical_form():
    # multiset {2,2} on 4 points: 3 partitions; {1,3}: 4; {1,1,2}: 6
    assert len(list(set_partitions_by_sizes(4, (2, 2)))) == 3
    assert len(list(set_partitions_by_sizes(4, (1, 3)))) == 4
    assert len(list(set_partitions_by_sizes(4, (1, 1, 2)))) == 6
    for blocks in set_partitions_by_sizes(4, (1, 3)):
        flat = sorted(x for b in blocks for x in b)
        assert flat == [0, 1, 2, 3]
        assert all(b == tuple(sorted(b)) for b in blocks)
        assert [b[0] for b in blocks] == sorted(b[0] for b in blocks)


def test_transformation_helpers():
    t = Transformation(3, (0, 0, 1))
    assert t.rank() == 2
    assert t.image_set() == (0, 1)
    assert t.kernel_blocks() == ((0, 1), (2,))
    assert t.signature() == (1, 2)
    u = t.then(Transformation(3, (2, 1, 0)))
    assert u.image == (2, 2, 1)
    assert is_transversal((0, 2), ((0, 1), (2,)))
    assert not is_transversal((0, 1), ((0, 1), (2,)))
