"""Constructions of the semigroup families the package works with.

Transformation monoids T_n and PT_n (the partial maps realised as the fix-0
submonoid of T_{n+1}), the orientation-preserving monoid OP_n on the n-cycle
with its (image set, cut points, rotation) coordinates, Rees matrix
semigroups over the trivial group, direct products, and a catalog of small
named instances used throughout the test suite and CLI.
"""

from __future__ import annotations

import functools
import itertools
import json
import re
from dataclasses import dataclass

from .core import (FiniteSemigroup, SemigroupError, TableSemigroup,
                   TransformationSemigroup)

TN_MAX = 6
PTN_MAX = 5
OPN_MIN, OPN_MAX = 3, 8
TABLE_BUILD_LIMIT = 300     # materialise a Cayley table below this order
PRODUCT_ORDER_LIMIT = 20000


@dataclass(frozen=True)
class Transformation:
    """A full map on {0..n-1}; image[x] is the value at x."""

    n: int
    image: tuple[int, ...]

    def __post_init__(self):
        if len(self.image) != self.n or any(not 0 <= v < self.n for v in self.image):
            raise SemigroupError(f"bad transformation image {self.image}")

    def rank(self) -> int:
        return len(set(self.image))

    def image_set(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.image)))

    def kernel_blocks(self) -> tuple[tuple[int, ...], ...]:
        by_value: dict[int, list[int]] = {}
        for x, v in enumerate(self.image):
            by_value.setdefault(v, []).append(x)
        return tuple(sorted((tuple(b) for b in by_value.values()),
                            key=lambda b: b[0]))

    def signature(self) -> tuple[int, ...]:
        return tuple(sorted(len(b) for b in self.kernel_blocks()))

    def then(self, other: Transformation) -> Transformation:
        """self followed by other (left-to-right composition)."""
        if other.n != self.n:
            raise SemigroupError("composition across different base sets")
        return Transformation(self.n, tuple(other.image[v] for v in self.image))


@dataclass(frozen=True)
class KernelRangePair:
    """An H-class of a transformation monoid: kernel partition plus range."""

    blocks: tuple[tuple[int, ...], ...]
    range_set: tuple[int, ...]

    def __post_init__(self):
        seen: set[int] = set()
        for b in self.blocks:
            if not b:
                raise SemigroupError("empty kernel block")
            if seen & set(b):
                raise SemigroupError("kernel blocks overlap")
            seen.update(b)
        if seen != set(range(len(seen))):
            raise SemigroupError("kernel blocks must cover 0..n-1")
        if len(set(self.range_set)) != len(self.range_set):
            raise SemigroupError("range has repeats")
        if any(not 0 <= y < len(seen) for y in self.range_set):
            raise SemigroupError("range point out of base set")
        if len(self.range_set) != len(self.blocks):
            raise SemigroupError("rank mismatch between kernel and range")

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def rank(self) -> int:
        return len(self.blocks)


def is_transversal(points, blocks) -> bool:
    """True iff the point set meets every block exactly once."""
    pts = set(points)
    return all(len(pts & set(b)) == 1 for b in blocks)


def set_partitions_by_sizes(n: int, sizes: tuple[int, ...]):
    """All partitions of {0..n-1} whose sorted block sizes equal ``sizes``.

    Yields partitions as tuples of blocks, each block an ascending tuple,
    blocks ordered by least member.  Enumerates restricted growth strings,
    so every partition appears exactly once.
    """
    if sum(sizes) != n or any(p < 1 for p in sizes):
        raise SemigroupError(f"{sizes} does not partition {n} points")
    want = tuple(sorted(sizes))
    k = len(sizes)

    def grow(x: int, rgs: list[int], used: int):
        if x == n:
            if used == k:
                blocks: list[list[int]] = [[] for _ in range(used)]
                for pt, b in enumerate(rgs):
                    blocks[b].append(pt)
                if tuple(sorted(len(b) for b in blocks)) == want:
                    yield tuple(tuple(b) for b in blocks)
            return
        for b in range(min(used + 1, k)):
            rgs.append(b)
            yield from grow(x + 1, rgs, max(used, b + 1))
            rgs.pop()

    yield from grow(0, [], 0)


# -- transformation monoids ----------------------------------------------


@functools.lru_cache(maxsize=None)
def full_transformation_monoid(n: int) -> TransformationSemigroup:
    """T_n, all n^n maps on {0..n-1}."""
    if not 1 <= n <= TN_MAX:
        raise SemigroupError(f"full transformation monoid supported for 1 <= n <= {TN_MAX}")
    images = itertools.product(range(n), repeat=n)
    return TransformationSemigroup(n, images, name=f"tn:{n}",
                                   build_table=(n ** n <= TABLE_BUILD_LIMIT))


@functools.lru_cache(maxsize=None)
def partial_transformation_monoid(n: int) -> TransformationSemigroup:
    """PT_n realised as the submonoid of T_{n+1} on {0..n} fixing 0.

    Point 0 doubles as the undefined marker: a partial map sends x to 0
    exactly when x is outside its domain.  Order (n+1)^n.
    """
    if not 1 <= n <= PTN_MAX:
        raise SemigroupError(f"partial transformation monoid supported for 1 <= n <= {PTN_MAX}")
    m = n + 1
    images = ((0,) + rest for rest in itertools.product(range(m), repeat=n))
    return TransformationSemigroup(m, images, name=f"ptn:{n}",
                                   build_table=(m ** n <= TABLE_BUILD_LIMIT))


def is_cyclic_sequence(seq) -> bool:
    """At most one strict descent reading the sequence around the circle."""
    n = len(seq)
    descents = sum(1 for i in range(n) if seq[i] > seq[(i + 1) % n])
    return descents <= 1


@dataclass(frozen=True)
class OPnTriple:
    """Coordinates of a rank>=2 orientation-preserving map.

    image_set: the image, ascending.  cut_points: ascending initial members
    of the convex kernel classes (the point x of a class with x-1 mod n
    outside it).  rotation r in 0..k-1: the class starting at the i-th cut
    point maps to image point (i + r) mod k.
    """

    n: int
    image_set: tuple[int, ...]
    cut_points: tuple[int, ...]
    rotation: int

    def __post_init__(self):
        k = self.k
        if k < 2:
            raise SemigroupError("triples describe maps of rank at least 2")
        if len(self.cut_points) != k:
            raise SemigroupError("image set and cut points disagree on rank")
        for s in (self.image_set, self.cut_points):
            if list(s) != sorted(set(s)) or any(not 0 <= x < self.n for x in s):
                raise SemigroupError(f"bad point set {s}")
        if not 0 <= self.rotation < k:
            raise SemigroupError("rotation out of range")

    @property
    def k(self) -> int:
        return len(self.image_set)


def op_triple_compose(t: OPnTriple) -> Transformation:
    """The map described by a triple."""
    n, k = t.n, t.k
    image = [0] * n
    cuts = t.cut_points
    for i in range(k):
        start = cuts[i]
        end = cuts[(i + 1) % k]
        value = t.image_set[(i + t.rotation) % k]
        x = start
        while True:
            image[x] = value
            x = (x + 1) % n
            if x == end:
                break
    return Transformation(n, tuple(image))


def op_triple_decompose(t: Transformation) -> OPnTriple:
    """Triple coordinates of a rank>=2 orientation-preserving map."""
    if t.rank() < 2:
        raise SemigroupError("rank-1 maps have no triple coordinates")
    if not is_cyclic_sequence(t.image):
        raise SemigroupError("map is not orientation-preserving")
    blocks = t.kernel_blocks()
    n = t.n
    cuts = []
    for b in blocks:
        bset = set(b)
        initial = [x for x in b if (x - 1) % n not in bset]
        if len(initial) != 1:
            raise SemigroupError("kernel class is not a convex arc")
        cuts.append(initial[0])
    cuts.sort()
    image_set = t.image_set()
    k = len(cuts)
    pos = {v: i for i, v in enumerate(image_set)}
    first_value = t.image[cuts[0]]
    r = pos[first_value] % k
    triple = OPnTriple(n, image_set, tuple(cuts), r)
    if op_triple_compose(triple) != t:
        raise SemigroupError("map is not orientation-preserving")
    return triple


@functools.lru_cache(maxsize=None)
def orientation_preserving_monoid(n: int) -> TransformationSemigroup:
    """OP_n: maps on the n-cycle whose image sequence is cyclic."""
    if not OPN_MIN <= n <= OPN_MAX:
        raise SemigroupError(
            f"orientation-preserving monoid supported for {OPN_MIN} <= n <= {OPN_MAX}")
    images = [(v,) * n for v in range(n)]
    for k in range(2, n + 1):
        for image_set in itertools.combinations(range(n), k):
            for cuts in itertools.combinations(range(n), k):
                for r in range(k):
                    t = op_triple_compose(OPnTriple(n, image_set, cuts, r))
                    images.append(t.image)
    return TransformationSemigroup(n, images, name=f"opn:{n}",
                                   build_table=(len(images) <= TABLE_BUILD_LIMIT))


# -- Rees matrix semigroups ----------------------------------------------


@dataclass(frozen=True)
class ReesMatrixSpec:
    """Rees matrix semigroup over the trivial group.

    Elements are the pairs (i, j) with 0 <= i < rows and 0 <= j < cols plus,
    when with_zero, an absorbing zero.  structure[j][i] is the sandwich entry
    p_ji, so (i, j)(k, l) = (i, l) when p_jk = 1 and otherwise 0, and (i, j)
    is idempotent exactly when p_ji = 1.
    """

    rows: int
    cols: int
    structure: tuple[tuple[int, ...], ...]
    with_zero: bool = True

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise SemigroupError("need at least one row and one column")
        if len(self.structure) != self.cols:
            raise SemigroupError("structure matrix must have one row per column index")
        for row in self.structure:
            if len(row) != self.rows:
                raise SemigroupError("structure matrix width must equal the row count")
            for x in row:
                if x not in (0, 1):
                    raise SemigroupError("structure entries must be 0 or 1")
        if not self.with_zero:
            if any(x == 0 for row in self.structure for x in row):
                raise SemigroupError("zero-free form needs an all-ones structure matrix")
        else:
            # regularity: without a 1 somewhere in each structure row and
            # column, some element has an empty inverse set
            if any(all(x == 0 for x in row) for row in self.structure) or any(
                    all(self.structure[j][i] == 0 for j in range(self.cols))
                    for i in range(self.rows)):
                raise SemigroupError(
                    "structure matrix needs a 1 in every row and column")

    @property
    def order(self) -> int:
        return self.rows * self.cols + (1 if self.with_zero else 0)

    def element_id(self, i: int, j: int) -> int:
        return i * self.cols + j

    @classmethod
    def from_json(cls, text: str) -> ReesMatrixSpec:
        doc = json.loads(text)
        try:
            structure = tuple(tuple(row) for row in doc["structure"])
            return cls(rows=doc["rows"], cols=doc["cols"], structure=structure,
                       with_zero=doc.get("with_zero", True))
        except (KeyError, TypeError) as exc:
            raise SemigroupError(f"bad Rees spec document: {exc}") from None

    def to_json(self) -> str:
        return json.dumps({"rows": self.rows, "cols": self.cols,
                           "structure": [list(r) for r in self.structure],
                           "with_zero": self.with_zero}, sort_keys=True)


def rees_matrix(spec: ReesMatrixSpec, name: str | None = None) -> TableSemigroup:
    rows, cols, p = spec.rows, spec.cols, spec.structure
    n = spec.order
    zero = rows * cols if spec.with_zero else None
    table = [[0] * n for _ in range(n)]
    for i in range(rows):
        for j in range(cols):
            a = spec.element_id(i, j)
            for k in range(rows):
                for l in range(cols):
                    b = spec.element_id(k, l)
                    if p[j][k] == 1:
                        table[a][b] = spec.element_id(i, l)
                    else:
                        table[a][b] = zero if zero is not None else 0
            if zero is not None:
                table[a][zero] = zero
    if zero is not None:
        for b in range(n):
            table[zero][b] = zero
    labels = [f"({i + 1},{j + 1})" for i in range(rows) for j in range(cols)]
    if zero is not None:
        labels.append("0")
    return TableSemigroup(table, labels=labels, zero=zero, name=name)


# -- combinators ----------------------------------------------------------


def direct_product(s: FiniteSemigroup, t: FiniteSemigroup) -> TableSemigroup:
    """Componentwise product on pairs, id (a, b) -> a * t.order + b."""
    order = s.order * t.order
    if order > PRODUCT_ORDER_LIMIT:
        raise SemigroupError(f"product order {order} exceeds limit {PRODUCT_ORDER_LIMIT}")
    nt = t.order
    table = [[0] * order for _ in range(order)]
    for a1 in s.elements():
        for b1 in t.elements():
            x = a1 * nt + b1
            row = table[x]
            for a2 in s.elements():
                sa = s.mul(a1, a2)
                for b2 in t.elements():
                    row[a2 * nt + b2] = sa * nt + t.mul(b1, b2)
    labels = [f"({s.label(a)},{t.label(b)})" for a in s.elements() for b in t.elements()]
    zero = None
    if s.zero is not None and t.zero is not None:
        zero = s.zero * nt + t.zero
    return TableSemigroup(table, labels=labels, zero=zero)


def subsemigroup_table(s: FiniteSemigroup, ids) -> TableSemigroup:
    """The subsemigroup on the given ids (must be closed), reindexed in order."""
    ids = sorted(set(ids))
    pos = {a: i for i, a in enumerate(ids)}
    table = []
    for a in ids:
        row = []
        for b in ids:
            c = s.mul(a, b)
            if c not in pos:
                raise SemigroupError(f"subset not closed: {a}*{b} = {c} escapes")
            row.append(pos[c])
        table.append(row)
    labels = [s.label(a) for a in ids]
    zero = pos.get(s.zero) if s.zero is not None and s.zero in pos else None
    return TableSemigroup(table, labels=labels, zero=zero)


def adjoin_zero(s: FiniteSemigroup) -> TableSemigroup:
    n = s.order
    table = [[s.mul(a, b) for b in range(n)] + [n] for a in range(n)]
    table.append([n] * (n + 1))
    labels = [s.label(a) for a in range(n)] + ["z"]
    return TableSemigroup(table, labels=labels, zero=n)


def adjoin_identity(s: FiniteSemigroup) -> TableSemigroup:
    n = s.order
    table = [[s.mul(a, b) for b in range(n)] + [a] for a in range(n)]
    table.append(list(range(n + 1)))
    labels = [s.label(a) for a in range(n)] + ["1"]
    return TableSemigroup(table, labels=labels, zero=s.zero)


def cyclic_group(k: int) -> TableSemigroup:
    if k < 1:
        raise SemigroupError("cyclic group needs order >= 1")
    table = [[(a + b) % k for b in range(k)] for a in range(k)]
    return TableSemigroup(table, labels=[f"g{a}" for a in range(k)], name=f"cyclic-C{k}")


def symmetric_group_s3() -> TableSemigroup:
    perms = sorted(itertools.permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    table = [[idx[tuple(q[x] for x in p)] for q in perms] for p in perms]
    labels = ["".join(str(x) for x in p) for p in perms]
    return TableSemigroup(table, labels=labels, name="s3")


def left_zero(n: int) -> TableSemigroup:
    table = [[a] * n for a in range(n)]
    return TableSemigroup(table, labels=[f"l{a + 1}" for a in range(n)],
                          name=f"left-zero-{n}")


def right_zero(n: int) -> TableSemigroup:
    table = [list(range(n)) for _ in range(n)]
    return TableSemigroup(table, labels=[f"r{a + 1}" for a in range(n)],
                          name=f"right-zero-{n}")


# -- named catalog ---------------------------------------------------------
#
# Fixed small instances.  The three Rees instances are pinned down by their
# idempotent patterns; the builders reconstruct the structure matrix from
# those patterns (p_ji = 1 exactly when (i, j) is idempotent).


def _example_13_spec() -> ReesMatrixSpec:
    # 2x3 over the trivial group; idempotents at (1,2), (1,3), (2,1) 1-based
    return ReesMatrixSpec(rows=2, cols=3,
                          structure=((0, 1), (1, 0), (1, 0)), with_zero=True)


def _prop_15_spec() -> ReesMatrixSpec:
    # 3x3; idempotents at (1,2), (1,3), (2,2), (2,3), (3,1)
    return ReesMatrixSpec(rows=3, cols=3,
                          structure=((0, 0, 1), (1, 1, 0), (1, 1, 0)),
                          with_zero=True)


def _remarks_25_spec() -> ReesMatrixSpec:
    # 3x3; idempotents exactly in the first row and first column
    return ReesMatrixSpec(rows=3, cols=3,
                          structure=((1, 1, 1), (1, 0, 0), (1, 0, 0)),
                          with_zero=True)


def brandt_b2_spec() -> ReesMatrixSpec:
    return ReesMatrixSpec(rows=2, cols=2, structure=((1, 0), (0, 1)),
                          with_zero=True)


def prop15_retract() -> TableSemigroup:
    """The image of the retraction of prop-1.5-T collapsing row 1 onto row 2.

    A 7-element subsemigroup on rows 2 and 3 plus zero; it is a relabelled
    copy of example-1.3.
    """
    t = catalog("prop-1.5-T")
    spec = _prop_15_spec()
    keep = [spec.element_id(i, j) for i in (1, 2) for j in range(3)]
    keep.append(t.zero)
    return subsemigroup_table(t, keep)


_CATALOG_FIXED = {
    "example-1.3": lambda: rees_matrix(_example_13_spec(), name="example-1.3"),
    "prop-1.5-T": lambda: rees_matrix(_prop_15_spec(), name="prop-1.5-T"),
    "remarks-2.5": lambda: rees_matrix(_remarks_25_spec(), name="remarks-2.5"),
    "brandt-B2": lambda: rees_matrix(brandt_b2_spec(), name="brandt-B2"),
}

_RECT_RE = re.compile(r"^rect-band-(\d+)x(\d+)$")
_CYCLIC_RE = re.compile(r"^cyclic-C(\d+)$")
_LEFT_RE = re.compile(r"^left-zero-(\d+)$")
_RIGHT_RE = re.compile(r"^right-zero-(\d+)$")


def catalog(name: str) -> TableSemigroup:
    """Named small instances accepted by the CLI --semigroup flag."""
    if name in _CATALOG_FIXED:
        return _CATALOG_FIXED[name]()
    m = _RECT_RE.match(name)
    if m:
        rows, cols = int(m.group(1)), int(m.group(2))
        spec = ReesMatrixSpec(rows=rows, cols=cols,
                              structure=tuple((1,) * rows for _ in range(cols)),
                              with_zero=False)
        return rees_matrix(spec, name=name)
    m = _CYCLIC_RE.match(name)
    if m:
        return cyclic_group(int(m.group(1)))
    m = _LEFT_RE.match(name)
    if m:
        return left_zero(int(m.group(1)))
    m = _RIGHT_RE.match(name)
    if m:
        return right_zero(int(m.group(1)))
    raise SemigroupError(f"unknown catalog name {name!r}")


def catalog_names() -> tuple[str, ...]:
    """Representative catalog names (parametrised families at small sizes)."""
    return ("example-1.3", "prop-1.5-T", "remarks-2.5", "brandt-B2",
            "rect-band-2x3", "rect-band-3x2", "cyclic-C4",
            "left-zero-3", "right-zero-3")
