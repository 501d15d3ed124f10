"""Finite semigroups with element ids 0..order-1.

Two backings are provided.  TableSemigroup stores an explicit Cayley table
and suits orders up to a few thousand.  TransformationSemigroup stores one
image tuple per element and multiplies by composing maps, which is what makes
the big transformation monoids workable; it can additionally carry a
materialised table at small orders so both multiplication paths exist for
agreement checks.

The inverse machinery (``inverses_of``, ``inverse_set_union``, ``is_regular``)
lives here because everything downstream is phrased in terms of the sets
V(a) = {b : aba = a and bab = b}.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Iterable, Sequence


class SemigroupError(ValueError):
    """Raised for malformed semigroup data or out-of-contract arguments."""


class FiniteSemigroup:
    """Base class: a finite semigroup on ids 0..order-1."""

    def __init__(self, order: int, labels: Sequence[str] | None = None,
                 zero: int | None = None, name: str | None = None):
        if order < 1:
            raise SemigroupError("order must be at least 1")
        self.order = order
        self.labels = list(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != order:
            raise SemigroupError("label count does not match order")
        if zero is not None and not 0 <= zero < order:
            raise SemigroupError("zero id out of range")
        self.zero = zero
        self.name = name
        # caches, filled lazily; treat as immutable once populated
        self._inverses: dict[int, tuple[int, ...]] = {}
        self._idempotents: tuple[int, ...] | None = None

    # -- basics ---------------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        raise NotImplementedError

    def elements(self) -> range:
        return range(self.order)

    def check_element(self, a: int) -> None:
        if not 0 <= a < self.order:
            raise SemigroupError(f"element id {a} out of range 0..{self.order - 1}")

    def label(self, a: int) -> str:
        self.check_element(a)
        if self.labels is not None:
            return self.labels[a]
        return str(a)

    def is_idempotent(self, a: int) -> bool:
        return self.mul(a, a) == a

    def idempotents(self) -> tuple[int, ...]:
        if self._idempotents is None:
            self._idempotents = tuple(a for a in self.elements() if self.is_idempotent(a))
        return self._idempotents

    def cube(self, a: int) -> int:
        return self.mul(self.mul(a, a), a)

    # -- inverses -------------------------------------------------------

    def are_mutual_inverses(self, a: int, b: int) -> bool:
        return (self.mul(self.mul(a, b), a) == a
                and self.mul(self.mul(b, a), b) == b)

    def _compute_inverses(self, a: int) -> tuple[int, ...]:
        return tuple(b for b in self.elements() if self.are_mutual_inverses(a, b))

    def inverses_of(self, a: int) -> tuple[int, ...]:
        """All inverses of a, sorted.  Cached after first computation."""
        self.check_element(a)
        got = self._inverses.get(a)
        if got is None:
            got = self._compute_inverses(a)
            self._inverses[a] = got
        return got

    def has_inverse(self, a: int) -> bool:
        if a in self._inverses:
            return bool(self._inverses[a])
        return self._first_inverse(a) is not None

    def _first_inverse(self, a: int) -> int | None:
        for b in self.elements():
            if self.are_mutual_inverses(a, b):
                return b
        return None

    def inverse_set_union(self, elements: Iterable[int]) -> tuple[int, ...]:
        """V(A) = union of V(a) over a in A, sorted, duplicates removed."""
        out: set[int] = set()
        for a in elements:
            out.update(self.inverses_of(a))
        return tuple(sorted(out))

    def is_regular(self) -> bool:
        return all(self.has_inverse(a) for a in self.elements())


class TableSemigroup(FiniteSemigroup):
    """Semigroup backed by an explicit Cayley table (row a, column b)."""

    def __init__(self, table: Sequence[Sequence[int]],
                 labels: Sequence[str] | None = None,
                 zero: int | None = None, name: str | None = None):
        order = len(table)
        super().__init__(order, labels=labels, zero=zero, name=name)
        rows = []
        for row in table:
            if len(row) != order:
                raise SemigroupError("table is not square")
            for x in row:
                if not 0 <= x < order:
                    raise SemigroupError(f"table entry {x} out of range")
            rows.append(tuple(row))
        self.table = tuple(rows)
        if zero is not None:
            for a in range(order):
                if self.table[zero][a] != zero or self.table[a][zero] != zero:
                    raise SemigroupError("declared zero is not absorbing")

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]


class TransformationSemigroup(FiniteSemigroup):
    """Semigroup of full maps on {0..base_size-1}, composed left to right.

    Element a applied to point x gives images[a][x]; the product ab is
    "a then b".  Elements are kept sorted lexicographically by image tuple,
    which fixes the id assignment.
    """

    def __init__(self, base_size: int, images: Iterable[tuple[int, ...]],
                 name: str | None = None, build_table: bool = False):
        imgs = sorted(set(tuple(t) for t in images))
        for t in imgs:
            if len(t) != base_size or any(not 0 <= x < base_size for x in t):
                raise SemigroupError(f"bad image tuple {t}")
        labels = ["".join(str(x) for x in t) if base_size <= 10 else str(t)
                  for t in imgs]
        super().__init__(len(imgs), labels=labels, name=name)
        self.base_size = base_size
        self.images = tuple(imgs)
        self.index = {t: i for i, t in enumerate(self.images)}
        self.is_full_monoid = (len(imgs) == base_size ** base_size)
        self._table: tuple[tuple[int, ...], ...] | None = None
        self._kernels: list[tuple[tuple[int, ...], ...] | None] = [None] * self.order
        if build_table:
            self.build_table()

    def build_table(self) -> None:
        if self._table is None:
            self._table = tuple(
                tuple(self.index[self._compose(a, b)] for b in range(self.order))
                for a in range(self.order))

    def _compose(self, a: int, b: int) -> tuple[int, ...]:
        ta = self.images[a]
        tb = self.images[b]
        return tuple(tb[x] for x in ta)

    def mul(self, a: int, b: int) -> int:
        if self._table is not None:
            return self._table[a][b]
        composed = self._compose(a, b)
        try:
            return self.index[composed]
        except KeyError:
            raise SemigroupError(
                f"element set is not closed: product {composed} missing") from None

    def materialize(self) -> TableSemigroup:
        """Same semigroup, same ids, as an explicit table."""
        self.build_table()
        assert self._table is not None
        return TableSemigroup(self._table, labels=self.labels, name=self.name)

    # -- structure of a single map --------------------------------------

    def image_tuple(self, a: int) -> tuple[int, ...]:
        return self.images[a]

    def image_set(self, a: int) -> tuple[int, ...]:
        return tuple(sorted(set(self.images[a])))

    def rank(self, a: int) -> int:
        return len(set(self.images[a]))

    def kernel_blocks(self, a: int) -> tuple[tuple[int, ...], ...]:
        """Kernel classes of map a: blocks sorted by least point."""
        cached = self._kernels[a]
        if cached is not None:
            return cached
        by_value: dict[int, list[int]] = {}
        for x, v in enumerate(self.images[a]):
            by_value.setdefault(v, []).append(x)
        blocks = tuple(sorted((tuple(b) for b in by_value.values()),
                              key=lambda b: b[0]))
        self._kernels[a] = blocks
        return blocks

    def signature(self, a: int) -> tuple[int, ...]:
        """Ascending kernel-class sizes of map a."""
        return tuple(sorted(len(b) for b in self.kernel_blocks(a)))

    # -- inverses -------------------------------------------------------

    def _inverse_candidates(self, a: int):
        """Yield image tuples of every inverse of a inside the full monoid.

        An inverse of a is determined by a kernel partition that the image
        of a crosses once per block, together with one chosen point in each
        kernel block of a.  Yields each candidate exactly once.
        """
        timg = self.images[a]
        marks = self.image_set(a)
        blocks = self.kernel_blocks(a)
        values = tuple(timg[b[0]] for b in blocks)
        m = self.base_size
        for part in partitions_with_marks(m, marks):
            for picks in itertools.product(*blocks):
                to_pick = dict(zip(values, picks))
                beta = [0] * m
                for mark, block in zip(marks, part):
                    z = to_pick[mark]
                    for t in block:
                        beta[t] = z
                yield tuple(beta)

    def _compute_inverses(self, a: int) -> tuple[int, ...]:
        if self._table is not None:
            # table in hand: the quadratic scan is cheap and is the
            # definitional reference the combinatorial path is tested against
            return super()._compute_inverses(a)
        out = []
        for beta in self._inverse_candidates(a):
            idx = self.index.get(beta)
            if idx is not None:
                out.append(idx)
        return tuple(sorted(out))

    def _first_inverse(self, a: int) -> int | None:
        if self._table is not None:
            return super()._first_inverse(a)
        for beta in self._inverse_candidates(a):
            idx = self.index.get(beta)
            if idx is not None:
                return idx
        return None


def partitions_with_marks(m: int, marks: Sequence[int]):
    """Partitions of {0..m-1} into len(marks) blocks, one mark per block.

    Yields tuples of blocks aligned with ``marks`` (block i contains
    marks[i]); every partition that the mark set crosses exactly once per
    block appears exactly once.
    """
    markset = set(marks)
    rest = [x for x in range(m) if x not in markset]
    k = len(marks)
    for assign in itertools.product(range(k), repeat=len(rest)):
        blocks: list[list[int]] = [[y] for y in marks]
        for x, bi in zip(rest, assign):
            blocks[bi].append(x)
        yield tuple(tuple(sorted(b)) for b in blocks)


def multiply(s: FiniteSemigroup, a: int, b: int) -> int:
    s.check_element(a)
    s.check_element(b)
    return s.mul(a, b)


def verify_associativity(s: FiniteSemigroup, sample: int | None = None,
                         seed: int = 0) -> tuple[int, int, int] | None:
    """Return None if associative, else a witness triple (a, b, c).

    Exhaustive for table-backed semigroups.  For rule-backed instances,
    which are associative by construction, a seeded sample of triples is
    checked instead (``sample`` triples, default 2000).
    """
    n = s.order
    if isinstance(s, TableSemigroup):
        table = s.table
        for a in range(n):
            row_a = table[a]
            for b in range(n):
                ab = row_a[b]
                row_ab = table[ab]
                row_b = table[b]
                for c in range(n):
                    if row_ab[c] != row_a[row_b[c]]:
                        return (a, b, c)
        return None
    rng = random.Random(seed)
    count = sample if sample is not None else 2000
    for _ in range(count):
        a = rng.randrange(n)
        b = rng.randrange(n)
        c = rng.randrange(n)
        if s.mul(s.mul(a, b), c) != s.mul(a, s.mul(b, c)):
            return (a, b, c)
    return None


# -- Cayley-table text format -------------------------------------------
#
#   line 1:           order n
#   lines 2..n+1:     n space-separated ids (row of the table)
#   optional:         "zero <id>"
#   optional:         "label <id> <text>"   (one line per label)


def dump_table(s: FiniteSemigroup) -> str:
    if isinstance(s, TransformationSemigroup):
        s = s.materialize()
    if not isinstance(s, TableSemigroup):
        raise SemigroupError("only table-backed semigroups can be dumped")
    lines = [str(s.order)]
    for row in s.table:
        lines.append(" ".join(str(x) for x in row))
    if s.zero is not None:
        lines.append(f"zero {s.zero}")
    if s.labels is not None:
        for i, lbl in enumerate(s.labels):
            lines.append(f"label {i} {lbl}")
    return "\n".join(lines) + "\n"


def load_table(text: str) -> TableSemigroup:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise SemigroupError("empty table document")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise SemigroupError("first line must be the order") from None
    if len(lines) < n + 1:
        raise SemigroupError("fewer table rows than declared order")
    table = []
    for ln in lines[1:n + 1]:
        try:
            row = [int(tok) for tok in ln.split()]
        except ValueError:
            raise SemigroupError(f"bad table row: {ln!r}") from None
        table.append(row)
    zero = None
    labels: dict[int, str] = {}
    for ln in lines[n + 1:]:
        parts = ln.split(maxsplit=2)
        if parts[0] == "zero" and len(parts) == 2:
            zero = int(parts[1])
        elif parts[0] == "label" and len(parts) == 3:
            labels[int(parts[1])] = parts[2]
        else:
            raise SemigroupError(f"unrecognised trailer line: {ln!r}")
    label_list = None
    if labels:
        label_list = [labels.get(i, str(i)) for i in range(n)]
    return TableSemigroup(table, labels=label_list, zero=zero)
