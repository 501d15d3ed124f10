"""Matching finders, validators, audits, and the explicit constructions."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invmatch.construct import (KernelRangePair, Transformation, catalog, catalog_names,
                                cyclic_group, full_transformation_monoid,
                                orientation_preserving_monoid, prop15_retract, right_zero)
from invmatch.core import SemigroupError
from invmatch.greens import greens_relations
from invmatch.matchers import (dclass_matching_audit, find_involution_matching,
                               find_permutation_matching, h_preserving_involution_matching,
                               h_preserving_permutation_matching, hclasses_mutually_inverse,
                               identity_is_matching, involution_from_cover,
                               matching_from_json, matching_to_json,
                               opn_involution_matching, tn_signature_preserving_matching,
                               unique_inverse_in_hclass, validate_matching)

from _oracles import (inverse_set, involution_matching_exists,
                      permutation_matching_exists)


def small_instances():
    """Bundled instances plus a non-trivial transformation monoid."""
    for name in catalog_names():
        yield catalog(name)
    yield full_transformation_monoid(2)
    yield full_transformation_monoid(3)
    yield prop15_retract()


# ---------------------------------------------------------------- validation

def test_validate_identity_on_right_zero():
    s = right_zero(3)
    report = validate_matching(s, [0, 1, 2])
    assert report.valid and report.involution and report.h_preserving
    assert identity_is_matching(s)


def test_validate_rejects_wrong_shape():
    s = right_zero(3)
    with pytest.raises(SemigroupError):
        validate_matching(s, [0, 1])
    with pytest.raises(SemigroupError):
        validate_matching(s, [0, 1, 7])


def test_validate_flags_non_bijection_and_non_inverse():
    s = right_zero(3)
    rep = validate_matching(s, [0, 0, 2])
    assert not rep.bijection and not rep.valid
    c4 = cyclic_group(4)
    # the identity map is a bijection but g != g^3 for the generator
    rep = validate_matching(c4, [0, 1, 2, 3])
    assert rep.bijection and not rep.maps_to_inverses
    assert not identity_is_matching(c4)


def test_group_inverse_map_is_the_only_matching_shape():
    c4 = cyclic_group(4)
    inverse_map = [inverse_set(c4, a)[0] for a in c4.elements()]
    rep = validate_matching(c4, inverse_map)
    assert rep.valid and rep.involution and rep.h_preserving


# ------------------------------------------------------------------- finders

@pytest.mark.parametrize("s", list(small_instances()), ids=lambda s: s.name or "anon")
def test_permutation_finder_agrees_with_bruteforce(s):
    out = find_permutation_matching(s)
    assert out.found == permutation_matching_exists(s)
    if out.found:
        rep = validate_matching(s, out.matching.mapping)
        assert rep.valid
        # independent re-check straight from the defining identities
        for a in s.elements():
            assert out.matching.apply(a) in inverse_set(s, a)
    else:
        violator = out.obstruction
        hood = out.obstruction_inverses
        assert violator and len(set(hood)) < len(set(violator))
        assert set(hood) == set(s.inverse_set_union(violator))


@pytest.mark.parametrize("s", list(small_instances()), ids=lambda s: s.name or "anon")
def test_involution_finder_agrees_with_bruteforce(s):
    out = find_involution_matching(s)
    assert out.found == involution_matching_exists(s)
    if out.found:
        rep = validate_matching(s, out.matching.mapping)
        assert rep.valid and rep.involution


@pytest.mark.parametrize("s", list(small_instances()), ids=lambda s: s.name or "anon")
def test_h_preserving_finders(s):
    perm = h_preserving_permutation_matching(s)
    if perm.found:
        rep = validate_matching(s, perm.matching.mapping)
        assert rep.valid and rep.h_preserving
    inv = h_preserving_involution_matching(s)
    if inv.found:
        rep = validate_matching(s, inv.matching.mapping)
        assert rep.valid and rep.involution and rep.h_preserving
    # an H-preserving matching is in particular a matching
    if inv.found:
        assert perm.found
    if perm.found:
        assert find_permutation_matching(s).found


def test_counterexample_obstruction_is_exact():
    s = catalog("example-1.3")
    out = find_permutation_matching(s)
    assert not out.found
    assert sorted(s.label(a) for a in out.obstruction) == ["(2,2)", "(2,3)"]
    assert [s.label(a) for a in out.obstruction_inverses] == ["(1,1)"]


def test_square_but_unmatched_instance():
    from invmatch.greens import is_square
    s = catalog("remarks-2.5")
    assert is_square(s)
    assert not find_permutation_matching(s).found
    corners = [a for a in s.elements()
               if s.label(a) in ("(2,2)", "(2,3)", "(3,2)", "(3,3)")]
    assert [s.label(b) for b in s.inverse_set_union(corners)] == ["(1,1)"]


def test_brandt_matching_unique_and_not_r_preserving():
    """Every element of the five-element Brandt instance has exactly one
    inverse, so the only permutation matching is forced -- and it moves the
    two non-idempotent nilpotents across R-classes."""
    s = catalog("brandt-B2")
    assert all(len(inverse_set(s, a)) == 1 for a in s.elements())
    out = find_permutation_matching(s)
    assert out.found
    gs = greens_relations(s)
    moved = [a for a in s.elements()
             if gs.r_of[out.matching.apply(a)] != gs.r_of[a]]
    assert moved, "the forced matching cannot preserve every R-class"


# ----------------------------------------------------------- cover to involution

def test_involution_from_cover_pairs_even_cycles():
    s = catalog("brandt-B2")
    out = find_permutation_matching(s)
    assert out.factor is not None
    inv = involution_from_cover(s, out.factor)
    assert inv is not None and inv.involution


def test_involution_from_cover_needs_pivot_on_odd_cycles():
    s = full_transformation_monoid(3)
    out = find_permutation_matching(s)
    assert out.found and out.factor is not None
    inv = involution_from_cover(s, out.factor)
    if inv is not None:
        rep = validate_matching(s, inv.mapping)
        assert rep.valid and rep.involution


# -------------------------------------------------------------------- audits

@pytest.mark.parametrize("s", list(small_instances()), ids=lambda s: s.name or "anon")
def test_dclass_audits_are_consistent(s):
    gs = greens_relations(s)
    for d in gs.d_classes:
        audit = dclass_matching_audit(s, d.index)
        assert audit.consistent
        assert audit.method in ("incidence-lift", "square-deficiency",
                                "band-factor", "undecided")
        if audit.square and audit.incidence_matching is not None:
            assert audit.h_involution


def test_audit_square_deficiency_route():
    s = catalog("example-1.3")   # 2x3 grid: not square
    audit = dclass_matching_audit(s, greens_relations(s).d_of[0])
    assert not audit.square
    assert audit.method == "band-factor"


# --------------------------------------------- transformation H-class algebra

def hclass_pair(s, a) -> KernelRangePair:
    return KernelRangePair(blocks=s.kernel_blocks(a), range_set=s.image_set(a))


def test_hclasses_mutually_inverse_matches_bruteforce():
    s = full_transformation_monoid(3)
    gs = greens_relations(s)
    for d in gs.d_classes:
        hids = [hid for row in d.h_grid for hid in row]
        for h1 in hids:
            for h2 in hids:
                a1 = gs.h_classes[h1][0]
                a2 = gs.h_classes[h2][0]
                predicted = hclasses_mutually_inverse(hclass_pair(s, a1),
                                                      hclass_pair(s, a2))
                members2 = set(gs.h_classes[h2])
                for a in gs.h_classes[h1]:
                    count = len([b for b in inverse_set(s, a) if b in members2])
                    assert count == (1 if predicted else 0)


def test_unique_inverse_in_hclass_satisfies_both_identities():
    s = full_transformation_monoid(3)
    gs = greens_relations(s)
    for d in gs.d_classes:
        hids = [hid for row in d.h_grid for hid in row]
        for h1 in hids:
            for h2 in hids:
                p2 = hclass_pair(s, gs.h_classes[h2][0])
                if not hclasses_mutually_inverse(hclass_pair(s, gs.h_classes[h1][0]), p2):
                    continue
                for a in gs.h_classes[h1]:
                    t = Transformation(3, s.images[a])
                    b = unique_inverse_in_hclass(t, p2)
                    assert t.then(b).then(t).image == t.image
                    assert b.then(t).then(b).image == b.image
                    assert b.kernel_blocks() == p2.blocks
                    assert b.image_set() == p2.range_set


def test_hclass_helpers_reject_mismatched_input():
    p1 = KernelRangePair(blocks=((0, 1), (2,)), range_set=(0, 1))
    p3 = KernelRangePair(blocks=((0,), (1,), (2,)), range_set=(0, 1, 2))
    with pytest.raises(SemigroupError):
        hclasses_mutually_inverse(p1, p3)
    t = Transformation(3, (0, 0, 1))
    with pytest.raises(SemigroupError):
        unique_inverse_in_hclass(t, p3)


# -------------------------------------------------- explicit constructions

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_tn_signature_matching_certified_against_bruteforce(n):
    s = full_transformation_monoid(n)
    pm = tn_signature_preserving_matching(n)
    assert pm.signature_preserving and pm.h_preserving
    for a in s.elements():
        fa = pm.apply(a)
        assert fa in inverse_set(s, a)
        assert s.signature(fa) == s.signature(a)
    assert sorted(pm.mapping) == list(s.elements())


def test_tn_element_route_skips_h_refinement():
    pm = tn_signature_preserving_matching(3, refine_h=False)
    assert pm.signature_preserving
    s = full_transformation_monoid(3)
    for a in s.elements():
        assert pm.apply(a) in inverse_set(s, a)


@pytest.mark.parametrize("n", [3, 4])
def test_opn_involution_certified_against_bruteforce(n):
    s = orientation_preserving_monoid(n)
    pm = opn_involution_matching(n)
    assert pm.involution and pm.h_preserving
    for a in s.elements():
        fa = pm.apply(a)
        assert fa in inverse_set(s, a)
        assert pm.apply(fa) == a


def test_opn_rank_one_elements_are_fixed():
    n = 4
    s = orientation_preserving_monoid(n)
    pm = opn_involution_matching(n)
    for a in s.elements():
        if s.rank(a) == 1:
            assert pm.apply(a) == a


# ---------------------------------------------------------------- round trip

def test_matching_json_round_trip():
    s = full_transformation_monoid(3)
    pm = tn_signature_preserving_matching(3)
    doc = matching_to_json(s, pm)
    again = matching_from_json(s, doc)
    assert again.mapping == pm.mapping
    assert again.h_preserving == pm.h_preserving


def test_matching_json_rejects_tampering():
    s = full_transformation_monoid(3)
    pm = tn_signature_preserving_matching(3)
    doc = matching_to_json(s, pm)

    flagged = {**doc, "flags": {**doc["flags"], "involution": not doc["flags"]["involution"]}}
    with pytest.raises(SemigroupError):
        matching_from_json(s, flagged)

    broken = {**doc, "pairs": [[a, a] for a, _ in doc["pairs"]]}
    with pytest.raises((SemigroupError, RuntimeError)):
        matching_from_json(s, broken)

    with pytest.raises(SemigroupError):
        matching_from_json(right_zero(3), doc)


@given(name=st.sampled_from(catalog_names()))
@settings(max_examples=20, deadline=None)
def test_found_matchings_round_trip_through_json(name):
    s = catalog(name)
    out = find_permutation_matching(s)
    if not out.found:
        return
    doc = matching_to_json(s, out.matching)
    assert matching_from_json(s, doc).mapping == out.matching.mapping
