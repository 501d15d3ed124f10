"""Green's relations, egg-box structure, principal factors, H-class quotients."""

from __future__ import annotations

import pytest

from invmatch.construct import catalog, catalog_names, full_transformation_monoid, right_zero
from invmatch.core import SemigroupError
from invmatch.greens import (eggbox_text, greens_relations, is_square, is_square_class,
                             principal_factor, zero_rect_band)


def brute_green_classes(s):
    """R, L, D classes from principal ideals computed by raw closure.

    S^1 a = {a} u Sa, aS^1 = {a} u aS; two elements are L/R-related when the
    ideals coincide, D-related when some element is L-below one and R-equal
    to the other (computed here as equality of the two-sided closure of the
    R-class under L, which is valid in finite semigroups).
    """
    n = s.order
    left = []
    right = []
    for a in range(n):
        la = frozenset([a] + [s.mul(x, a) for x in range(n)])
        ra = frozenset([a] + [s.mul(a, x) for x in range(n)])
        left.append(la)
        right.append(ra)
    l_of = {}
    r_of = {}
    for a in range(n):
        l_of[a] = frozenset(b for b in range(n) if left[b] == left[a])
        r_of[a] = frozenset(b for b in range(n) if right[b] == right[a])
    d_of = {}
    for a in range(n):
        # D = join of L and R in a finite semigroup: grow until stable
        block = set(l_of[a]) | set(r_of[a])
        while True:
            grown = set(block)
            for b in block:
                grown |= l_of[b] | r_of[b]
            if grown == block:
                break
            block = grown
        d_of[a] = frozenset(block)
    return l_of, r_of, d_of


@pytest.mark.parametrize("name", [*catalog_names(), "tn:3"])
def test_green_classes_match_ideal_bruteforce(name):
    s = full_transformation_monoid(3) if name == "tn:3" else catalog(name)
    gs = greens_relations(s)
    l_of, r_of, d_of = brute_green_classes(s)
    for a in s.elements():
        assert frozenset(gs.l_classes[gs.l_of[a]]) == l_of[a]
        assert frozenset(gs.r_classes[gs.r_of[a]]) == r_of[a]
        assert frozenset(gs.d_classes[gs.d_of[a]].elements) == d_of[a]
        h = frozenset(gs.h_classes[gs.h_of[a]])
        assert h == l_of[a] & r_of[a]


def test_tn3_eggbox_shape():
    s = full_transformation_monoid(3)
    gs = greens_relations(s)
    by_rank = {d.rank: d for d in gs.d_classes}
    assert set(by_rank) == {1, 2, 3}
    units = by_rank[3]
    assert units.num_r == units.num_l == 1 and len(units.elements) == 6
    middle = by_rank[2]
    assert middle.num_r == middle.num_l == 3 and len(middle.elements) == 18
    constants = by_rank[1]
    assert constants.num_r == 1 and constants.num_l == 3
    # each kernel of signature (1,2) admits exactly 2 transversal images
    assert all(sum(row) == 2 for row in middle.group_grid)
    assert is_square_class(s, units.index) and is_square_class(s, middle.index)
    assert not is_square_class(s, constants.index)
    assert units.is_square and not constants.is_square
    assert not is_square(s)


def test_h_grid_indexes_h_classes():
    s = full_transformation_monoid(3)
    gs = greens_relations(s)
    for d in gs.d_classes:
        seen = []
        for i, row in enumerate(d.h_grid):
            for j, hid in enumerate(row):
                members = gs.h_classes[hid]
                seen.extend(members)
                # every member sits in the right R- and L-class
                assert all(gs.r_of[a] == d.r_indices[i] for a in members)
                assert all(gs.l_of[a] == d.l_indices[j] for a in members)
        assert sorted(seen) == sorted(d.elements)


def test_h_classes_in_one_d_class_share_cardinality():
    for name in ("tn:3", "brandt-B2", "example-1.3"):
        s = full_transformation_monoid(3) if name == "tn:3" else catalog(name)
        gs = greens_relations(s)
        for d in gs.d_classes:
            sizes = {len(gs.h_classes[hid]) for row in d.h_grid for hid in row}
            assert len(sizes) == 1


def test_group_grid_matches_idempotents():
    s = full_transformation_monoid(3)
    gs = greens_relations(s)
    for d in gs.d_classes:
        for i, row in enumerate(d.h_grid):
            for j, hid in enumerate(row):
                has_idem = any(s.is_idempotent(a) for a in gs.h_classes[hid])
                assert d.group_grid[i][j] == has_idem


def test_square_flags_on_catalog():
    assert is_square(catalog("remarks-2.5"))
    assert is_square(catalog("brandt-B2"))
    assert not is_square(catalog("rect-band-2x3"))


def test_principal_factor_rees_law():
    s = full_transformation_monoid(3)
    gs = greens_relations(s)
    middle = next(d for d in gs.d_classes if d.rank == 2)
    pf = principal_factor(s, middle.index)
    f = pf.semigroup
    z = pf.zero_local
    assert f.order == len(middle.elements) + 1
    back = pf.element_ids
    inside = set(middle.elements)
    for x in range(f.order - 1):
        for y in range(f.order - 1):
            real = s.mul(back[x], back[y])
            if real in inside:
                assert back[f.mul(x, y)] == real
            else:
                assert f.mul(x, y) == z
    assert all(f.mul(z, x) == z and f.mul(x, z) == z for x in range(f.order))


def test_principal_factor_order_limit():
    s = full_transformation_monoid(3)
    gs = greens_relations(s)
    middle = next(d for d in gs.d_classes if d.rank == 2)
    with pytest.raises(SemigroupError):
        principal_factor(s, middle.index, order_limit=5)


def test_zero_rect_band_mirrors_group_grid():
    s = full_transformation_monoid(3)
    gs = greens_relations(s)
    middle = next(d for d in gs.d_classes if d.rank == 2)
    band = zero_rect_band(s, middle.index)
    assert band.spec.rows == middle.num_r
    assert band.spec.cols == middle.num_l
    for i in range(middle.num_r):
        for j in range(middle.num_l):
            assert band.spec.structure[j][i] == (1 if middle.group_grid[i][j] else 0)
    b = band.as_semigroup()
    assert b.order == middle.num_r * middle.num_l + 1
    assert b.is_regular()


def test_eggbox_text_mentions_every_d_class():
    s = catalog("brandt-B2")
    text = eggbox_text(s)
    gs = greens_relations(s)
    for d in gs.d_classes:
        assert f"D{d.index}" in text
    assert "*" in text   # group cells are starred


def test_right_zero_greens():
    s = right_zero(4)
    gs = greens_relations(s)
    assert len(gs.d_classes) == 1
    d = gs.d_classes[0]
    assert d.num_r == 1 and d.num_l == 4
    assert all(all(cell for cell in row) for row in d.group_grid)
