"""Deciding and constructing matchings by inverses.

A *matching by inverses* of a finite semigroup S is a bijection f of S
with f(a) in V(a) for every a; it is an *involution matching* when f is
its own inverse, and *H-preserving* when it maps each H-class onto an
H-class.  The finders in this module are exact: a returned matching is
re-validated from scratch, and a None result means nonexistence (with a
Hall-type witness attached whenever one is available).

The decision procedures work on graphs built in :mod:`invmatch.graphs`
and solved in :mod:`invmatch.engine`; this module owns the translation
in both directions, plus the constructions special to transformation
monoids (signature classes) and to orientation-preserving maps.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import FiniteSemigroup, SemigroupError, TransformationSemigroup
from .construct import (KernelRangePair, OPnTriple, Transformation,
                        full_transformation_monoid, is_transversal,
                        op_triple_compose, op_triple_decompose,
                        orientation_preserving_monoid, set_partitions_by_sizes)
from .engine import (TwoFactorCover, hall_certificate, one_two_factor,
                     perfect_bipartite_matching, perfect_matching_with_loops,
                     union_of_regular_matchings)
from .graphs import (BipartiteGraph, InverseGraph, double_cover,
                     inverse_graph, signature_classes)
from .greens import DClass, greens_relations

BAND_FACTOR_CELL_LIMIT = 400


# -- validation --------------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    """Recomputed properties of a candidate matching; nothing is trusted
    from the object under test."""

    bijection: bool
    maps_to_inverses: bool
    involution: bool
    h_preserving: bool
    signature_preserving: bool | None

    @property
    def valid(self) -> bool:
        return self.bijection and self.maps_to_inverses


def validate_matching(s: FiniteSemigroup, mapping) -> ValidationReport:
    """Check a candidate map element-by-element against the definitions.

    Inverse membership is checked by multiplying out a f(a) a = a and
    f(a) a f(a) = f(a); nothing is read from cached inverse sets.
    """
    seq = tuple(mapping)
    if len(seq) != s.order:
        raise SemigroupError(f"mapping has {len(seq)} entries for order {s.order}")
    for v in seq:
        s.check_element(v)
    bijection = len(set(seq)) == s.order
    maps_to_inverses = all(s.are_mutual_inverses(a, seq[a]) for a in s.elements())
    involution = bijection and all(seq[seq[a]] == a for a in s.elements())
    h_preserving = bijection and _h_preserving(s, seq)
    if isinstance(s, TransformationSemigroup):
        signature_preserving = all(s.signature(seq[a]) == s.signature(a)
                                   for a in s.elements())
    else:
        signature_preserving = None
    return ValidationReport(bijection=bijection,
                            maps_to_inverses=maps_to_inverses,
                            involution=involution,
                            h_preserving=h_preserving,
                            signature_preserving=signature_preserving)


def _h_preserving(s: FiniteSemigroup, seq) -> bool:
    gs = greens_relations(s)
    image_class: dict[int, int] = {}
    for a in s.elements():
        h = gs.h_of[a]
        fh = gs.h_of[seq[a]]
        if image_class.setdefault(h, fh) != fh:
            return False
    return True


@dataclass(frozen=True)
class PermutationMatching:
    """A validated matching by inverses; flags are set from revalidation."""

    mapping: tuple[int, ...]
    involution: bool
    h_preserving: bool
    signature_preserving: bool | None

    def apply(self, a: int) -> int:
        return self.mapping[a]

    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((a, fa) for a, fa in enumerate(self.mapping))

    def orbit_lengths(self) -> tuple[int, ...]:
        seen = set()
        out = []
        for a in range(len(self.mapping)):
            if a in seen:
                continue
            length = 0
            while a not in seen:
                seen.add(a)
                a = self.mapping[a]
                length += 1
            out.append(length)
        return tuple(sorted(out))


def _certified(s: FiniteSemigroup, mapping) -> PermutationMatching:
    report = validate_matching(s, mapping)
    if not report.valid:
        raise RuntimeError("constructed map failed validation; this is a bug")
    return PermutationMatching(mapping=tuple(mapping),
                               involution=report.involution,
                               h_preserving=report.h_preserving,
                               signature_preserving=report.signature_preserving)


@dataclass(frozen=True)
class MatchOutcome:
    """Result of a finder.

    Exactly one of ``matching`` / nonexistence holds; when the failure
    comes from a Hall violation, ``obstruction`` is a set A of element
    ids with ``obstruction_inverses`` = V(A) strictly smaller than A.
    """

    matching: PermutationMatching | None
    factor: TwoFactorCover | None
    obstruction: tuple[int, ...] | None
    obstruction_inverses: tuple[int, ...] | None

    @property
    def found(self) -> bool:
        return self.matching is not None


def identity_is_matching(s: FiniteSemigroup) -> bool:
    """True iff a = a^3 for every a, i.e. the identity map is an
    involution matching."""
    return all(s.cube(a) == a for a in s.elements())


# -- general finders ----------------------------------------------------------


def find_permutation_matching(s: FiniteSemigroup) -> MatchOutcome:
    """Decide whether S has any matching by inverses.

    Searches for a spanning union of loops, edges and cycles in the graph
    of inverses.  On failure the Hall certificate of the double cover is
    pulled back to a set of elements A with \\|V(A)\\| < \\|A\\|.
    """
    g = inverse_graph(s)
    factor = one_two_factor(g)
    if factor is not None:
        perm = factor.as_permutation()
        mapping = tuple(perm[a] for a in s.elements())
        return MatchOutcome(matching=_certified(s, mapping), factor=factor,
                            obstruction=None, obstruction_inverses=None)
    cert = hall_certificate(double_cover(g))
    if cert.exists:
        raise RuntimeError("factor absent but the double cover has a perfect matching")
    hood = s.inverse_set_union(cert.violator)
    if set(hood) != set(cert.neighborhood):
        raise RuntimeError("graph neighborhood disagrees with the inverse sets")
    return MatchOutcome(matching=None, factor=None,
                        obstruction=cert.violator, obstruction_inverses=hood)


def find_involution_matching(s: FiniteSemigroup) -> MatchOutcome:
    """Decide whether S has an involution matching.

    Equivalent to a perfect matching (loops allowed) of the graph of
    inverses; decided exactly by the blossom solver, so a None result is
    a proof of nonexistence, though no compact witness is produced.
    """
    m = perfect_matching_with_loops(inverse_graph(s))
    if m is None:
        return MatchOutcome(matching=None, factor=None,
                            obstruction=None, obstruction_inverses=None)
    mapping = [0] * s.order
    for v, w in m.cover().items():
        mapping[v] = w
    return MatchOutcome(matching=_certified(s, mapping), factor=None,
                        obstruction=None, obstruction_inverses=None)


def involution_from_cover(s: FiniteSemigroup,
                          factor: TwoFactorCover) -> PermutationMatching | None:
    """Rearrange a spanning loop/edge/cycle union into an involution.

    Even cycles split into consecutive mutually-inverse pairs.  An odd
    cycle needs one vertex paired with itself, which is sound exactly at
    a vertex v with v = v^3; without such a vertex on some odd cycle the
    rearrangement fails (returns None, deciding nothing).
    """
    mapping = list(range(s.order))
    for u, v in factor.edges:
        mapping[u] = v
        mapping[v] = u
    for cyc in factor.cycles:
        if len(cyc) % 2 == 0:
            chosen = cyc
        else:
            pivots = [i for i, v in enumerate(cyc) if s.cube(v) == v]
            if not pivots:
                return None
            i = pivots[0]
            chosen = cyc[i:] + cyc[:i]
            mapping[chosen[0]] = chosen[0]
            chosen = chosen[1:]
        for j in range(0, len(chosen), 2):
            mapping[chosen[j]] = chosen[j + 1]
            mapping[chosen[j + 1]] = chosen[j]
    return _certified(s, mapping)


# -- H-preserving matchings through egg-box cells -----------------------------


def _cell_graph(d: DClass) -> BipartiteGraph:
    """Bipartite graph on the H-class cells of one D-class: (i,j) is
    adjacent to (k,l)' iff the members of H_(k,l) are inverses of the
    members of H_(i,j), i.e. iff both corner cells are groups."""
    nr, nl = d.num_r, d.num_l
    cells = [(i, j) for i in range(nr) for j in range(nl)]
    grid = d.group_grid
    adj = {}
    for i, j in cells:
        row_ok = [l for l in range(nl) if grid[i][l]]
        col_ok = [k for k in range(nr) if grid[k][j]]
        adj[i * nl + j] = [k * nl + l for k in col_ok for l in row_ok]
    ids = [i * nl + j for i, j in cells]
    return BipartiteGraph.from_dict(ids, ids, adj)


def _unique_inverse_in(s: FiniteSemigroup, a: int, members) -> int:
    found = [b for b in members if s.are_mutual_inverses(a, b)]
    if len(found) != 1:
        raise RuntimeError(f"expected a unique inverse in the H-class, got {len(found)}")
    return found[0]


def _cell_members(gs, d: DClass, c: int) -> tuple[int, ...]:
    """Members of the H-class sitting in positional cell c of the D-class."""
    return gs.h_classes[d.h_grid[c // d.num_l][c % d.num_l]]


def h_preserving_permutation_matching(s: FiniteSemigroup) -> MatchOutcome:
    """Matching by inverses that maps every H-class onto an H-class.

    Works one D-class at a time: a perfect matching of the cell graph
    pairs H-classes with H-classes of inverses, and each element is sent
    to its unique inverse in the partner class.  A Hall failure at the
    cell level scales up to a Hall failure on elements (all H-classes of
    a D-class share one size), so it certifies that no matching by
    inverses exists at all.
    """
    gs = greens_relations(s)
    mapping = [-1] * s.order
    for d in gs.d_classes:
        cert = hall_certificate(_cell_graph(d))
        if not cert.exists:
            elems = tuple(sorted(
                e for c in cert.violator for e in _cell_members(gs, d, c)))
            hood = s.inverse_set_union(elems)
            lifted = tuple(sorted(
                e for c in cert.neighborhood for e in _cell_members(gs, d, c)))
            if hood != lifted:
                raise RuntimeError("cell neighborhood disagrees with the inverse sets")
            return MatchOutcome(matching=None, factor=None,
                                obstruction=elems, obstruction_inverses=hood)
        sigma = cert.matching_dict()
        for c, c2 in sigma.items():
            target = _cell_members(gs, d, c2)
            for a in _cell_members(gs, d, c):
                mapping[a] = _unique_inverse_in(s, a, target)
    return MatchOutcome(matching=_certified(s, mapping), factor=None,
                        obstruction=None, obstruction_inverses=None)


def h_preserving_involution_matching(s: FiniteSemigroup) -> MatchOutcome:
    """Involution matching that maps every H-class onto an H-class.

    Per D-class this needs an involutive pairing of the cells; one comes
    from a perfect matching of the incidence graph when the class is
    square, and otherwise from an exact edge-and-loop factor search over
    the cells (feasible up to BAND_FACTOR_CELL_LIMIT of them).  The lift
    sends a to its unique inverse in the partner class, which is an
    involution because unique inverses pair off.
    """
    gs = greens_relations(s)
    mapping = [-1] * s.order
    for d in gs.d_classes:
        sigma = _involutive_cell_pairing(d)
        if sigma is None:
            return MatchOutcome(matching=None, factor=None,
                                obstruction=None, obstruction_inverses=None)
        for c, c2 in sigma.items():
            target = _cell_members(gs, d, c2)
            for a in _cell_members(gs, d, c):
                mapping[a] = _unique_inverse_in(s, a, target)
    return MatchOutcome(matching=_certified(s, mapping), factor=None,
                        obstruction=None, obstruction_inverses=None)


def _incidence_component(d: DClass) -> BipartiteGraph:
    adj = {}
    for l_pos, li in enumerate(d.l_indices):
        adj[li] = [d.r_indices[r_pos] for r_pos in range(d.num_r)
                   if d.group_grid[r_pos][l_pos]]
    return BipartiteGraph.from_dict(d.l_indices, d.r_indices, adj)


def _sigma_from_incidence(d: DClass, pm: dict[int, int]) -> dict[int, int]:
    """Cell involution (i,j) -> (f(j), f^{-1}(i)) induced by an incidence
    matching f, as a map on positional cell ids."""
    nl = d.num_l
    f = {d.l_indices.index(li): d.r_indices.index(ri) for li, ri in pm.items()}
    finv = {r: l for l, r in f.items()}
    return {i * nl + j: f[j] * nl + finv[i]
            for i in range(d.num_r) for j in range(nl)}


def _band_inverse_graph(d: DClass) -> InverseGraph:
    """Graph of inverses of the nonzero part of D/H: vertices are cells,
    mutual inversion reads off the group grid, loops at group cells."""
    nr, nl = d.num_r, d.num_l
    grid = d.group_grid
    neighbors = []
    loops = set()
    for i in range(nr):
        for j in range(nl):
            me = i * nl + j
            row = [k * nl + l
                   for k in range(nr) for l in range(nl)
                   if grid[i][l] and grid[k][j] and k * nl + l != me]
            neighbors.append(tuple(row))
            if grid[i][j]:
                loops.add(me)
    return InverseGraph(n=nr * nl, neighbors=tuple(neighbors), loops=frozenset(loops))


def _involutive_cell_pairing(d: DClass) -> dict[int, int] | None:
    """Involutive map on cells pairing each with a cell of inverses, or
    None if there is none.  Raises when the question is out of reach."""
    if d.num_r == d.num_l:
        pm = perfect_bipartite_matching(_incidence_component(d))
        if pm is not None:
            return _sigma_from_incidence(d, pm)
        # Square with no incidence matching: impossible, at any size.
        return None
    if d.num_r * d.num_l > BAND_FACTOR_CELL_LIMIT:
        raise SemigroupError(
            f"D-class with {d.num_r * d.num_l} cells is beyond the exact search limit")
    m = perfect_matching_with_loops(_band_inverse_graph(d))
    if m is None:
        return None
    return m.cover()


# -- per-D-class audit of the incidence criterion ----------------------------


@dataclass(frozen=True)
class DClassMatchingAudit:
    """How one D-class answers the incidence-matching criterion.

    ``h_involution`` states whether the principal factor of the class has
    an H-preserving involution matching; ``method`` records how that was
    settled ("incidence-lift", "square-deficiency", "band-factor", or
    "undecided").  ``consistent`` confirms the routes that ran agree with
    the equivalence (incidence matching <=> square and h-involution).
    """

    d_index: int
    square: bool
    l_into_r: bool
    r_into_l: bool
    incidence_matching: tuple[tuple[int, int], ...] | None
    h_involution: bool | None
    method: str
    consistent: bool


def dclass_matching_audit(s: FiniteSemigroup, d_index: int,
                          cell_limit: int = BAND_FACTOR_CELL_LIMIT) -> DClassMatchingAudit:
    gs = greens_relations(s)
    d = gs.d_classes[d_index]
    square = d.num_r == d.num_l
    bg = _incidence_component(d)
    l_cert = hall_certificate(bg)
    r_cert = hall_certificate(bg.flip())
    l_into_r = l_cert.exists
    r_into_l = r_cert.exists

    incidence = None
    if square and l_into_r:
        incidence = l_cert.matching
    gh = incidence is not None

    checks = []
    if gh:
        sigma = _sigma_from_incidence(d, dict(incidence))
        checks.append(_cell_pairing_ok(d, sigma))

    band_result = None
    if d.num_r * d.num_l <= cell_limit:
        m = perfect_matching_with_loops(_band_inverse_graph(d))
        band_result = m is not None
        checks.append(gh == (square and band_result))

    if gh:
        h_involution, method = True, "incidence-lift"
    elif square:
        h_involution, method = False, "square-deficiency"
    elif band_result is not None:
        h_involution, method = band_result, "band-factor"
    else:
        h_involution, method = None, "undecided"

    return DClassMatchingAudit(d_index=d_index, square=square,
                               l_into_r=l_into_r, r_into_l=r_into_l,
                               incidence_matching=incidence,
                               h_involution=h_involution, method=method,
                               consistent=all(checks))


def _cell_pairing_ok(d: DClass, sigma: dict[int, int]) -> bool:
    nl = d.num_l
    grid = d.group_grid
    if sorted(sigma) != sorted(sigma.values()):
        return False
    for c, c2 in sigma.items():
        if sigma[c2] != c:
            return False
        i, j = divmod(c, nl)
        k, l = divmod(c2, nl)
        if not (grid[i][l] and grid[k][j]):
            return False
    return True


# -- transformation monoids: H-classes and signature classes -----------------


def hclasses_mutually_inverse(p1: KernelRangePair, p2: KernelRangePair) -> bool:
    """Whether every member of the first H-class has a (unique) inverse
    in the second and vice versa: both ranges must cross the opposite
    kernel once per block."""
    if p1.n != p2.n:
        raise SemigroupError("H-classes live on different base sets")
    if p1.rank != p2.rank:
        raise SemigroupError("H-classes of different rank cannot be inverse")
    return (is_transversal(p1.range_set, p2.blocks)
            and is_transversal(p2.range_set, p1.blocks))


def unique_inverse_in_hclass(t: Transformation,
                             target: KernelRangePair) -> Transformation:
    """The unique inverse of t in the H-class ``target``.

    Each target kernel block is sent to the point of the target range
    lying in the kernel class of t whose value marks that block.
    """
    own = KernelRangePair(blocks=t.kernel_blocks(), range_set=t.image_set())
    if not hclasses_mutually_inverse(own, target):
        raise SemigroupError("target H-class contains no inverse of t")
    pick = {}
    for block in t.kernel_blocks():
        value = t.image[block[0]]
        (point,) = set(target.range_set) & set(block)
        pick[value] = point
    image = [0] * t.n
    for block in target.blocks:
        (mark,) = set(own.range_set) & set(block)
        for x in block:
            image[x] = pick[mark]
    return Transformation(t.n, tuple(image))


def tn_signature_preserving_matching(n: int, refine_h: bool = True) -> PermutationMatching:
    """Matching by inverses of T_n constant on signature classes.

    With ``refine_h`` the pairing is arranged H-class by H-class inside
    each signature class (possible because the bipartite graph of cells
    is regular), so the result also preserves the H-relation.  Without
    it, one perfect matching per signature class is taken directly in
    the element-level bipartite graph, which is regular of degree
    (admissible kernels) x (kernel transversals).
    """
    s = full_transformation_monoid(n)
    classes = signature_classes(n)
    if refine_h:
        mapping = [-1] * s.order
        for sig, members in classes.items():
            for a, fa in _signature_class_h_matching(s, sig, members).items():
                mapping[a] = fa
    else:
        from .graphs import signature_bigraph
        parts = [signature_bigraph(n, sig) for sig in classes]
        merged = union_of_regular_matchings(parts)
        mapping = [merged[a] for a in s.elements()]
    return _certified(s, mapping)


def _signature_class_h_matching(s: TransformationSemigroup, sig, members) -> dict[int, int]:
    """Pair the H-classes of one signature class through a perfect
    matching of the cell graph, then send each element to its unique
    inverse in the partner class."""
    buckets: dict[tuple, list[int]] = {}
    for a in members:
        buckets.setdefault((s.kernel_blocks(a), s.image_set(a)), []).append(a)
    cells = sorted(buckets)
    pairs = [KernelRangePair(blocks=c[0], range_set=c[1]) for c in cells]
    adj = {u: [v for v in range(len(cells))
               if hclasses_mutually_inverse(pairs[u], pairs[v])]
           for u in range(len(cells))}
    bg = BipartiteGraph.from_dict(range(len(cells)), range(len(cells)), adj)
    sigma = union_of_regular_matchings([bg])
    out = {}
    for u, v in sigma.items():
        target = pairs[v]
        for a in buckets[cells[u]]:
            beta = unique_inverse_in_hclass(Transformation(s.base_size, s.images[a]),
                                            target)
            out[a] = s.index[beta.image]
    return out


# -- orientation-preserving maps ----------------------------------------------


def opn_involution_matching(n: int) -> PermutationMatching:
    """Involution matching of the orientation-preserving monoid.

    A map of rank >= 2 is a triple (range, cut points, rotation); its
    partner swaps range with cut points and reverses the rotation.
    Constants are their own inverses and stay fixed.
    """
    s = orientation_preserving_monoid(n)
    mapping = []
    for a in s.elements():
        t = Transformation(n, s.images[a])
        if t.rank() == 1:
            mapping.append(a)
            continue
        triple = op_triple_decompose(t)
        k = triple.k
        partner = OPnTriple(n=n,
                            image_set=triple.cut_points,
                            cut_points=triple.image_set,
                            rotation=(k - triple.rotation) % k)
        mapping.append(s.index[op_triple_compose(partner).image])
    return _certified(s, mapping)


# -- serialisation -------------------------------------------------------------


def matching_to_json(s: FiniteSemigroup, pm: PermutationMatching) -> dict:
    return {
        "order": s.order,
        "semigroup": s.name,
        "pairs": [[a, fa] for a, fa in pm.pairs()],
        "flags": {
            "involution": pm.involution,
            "h_preserving": pm.h_preserving,
            "signature_preserving": pm.signature_preserving,
        },
    }


def matching_from_json(s: FiniteSemigroup, data: dict) -> PermutationMatching:
    """Rebuild and revalidate; stored flags must agree with what the map
    actually does."""
    if data.get("order") != s.order:
        raise SemigroupError("matching was saved for a different order")
    mapping = [-1] * s.order
    for a, fa in data["pairs"]:
        if not 0 <= a < s.order or mapping[a] != -1:
            raise SemigroupError("pairs do not list every element exactly once")
        mapping[a] = fa
    if -1 in mapping:
        raise SemigroupError("pairs do not list every element exactly once")
    pm = _certified(s, mapping)
    stored = data.get("flags", {})
    recomputed = {"involution": pm.involution, "h_preserving": pm.h_preserving,
                  "signature_preserving": pm.signature_preserving}
    for key, value in stored.items():
        if key in recomputed and value != recomputed[key]:
            raise SemigroupError(f"stored flag {key}={value} contradicts the map")
    return pm
