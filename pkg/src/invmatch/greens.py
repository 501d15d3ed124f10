"""Green's relations and the egg-box view of a finite semigroup.

Generic semigroups get the graph-theoretic computation: R-classes are the
strongly connected components of the right Cayley graph (a -> a*s), L-classes
of the left one, H = R meet L, and D joins R and L by union-find (for finite
semigroups the join is D = J).  Transformation semigroups take the shortcut:
same kernel / same image / same rank.  The two paths are checked against each
other in the tests.

Also here: principal factors D u {0}, the 0-rectangular band D/H u {0} as a
Rees matrix spec, and squareness of egg-box grids.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (FiniteSemigroup, SemigroupError, TableSemigroup,
                   TransformationSemigroup)
from .construct import ReesMatrixSpec, rees_matrix


@dataclass(frozen=True)
class DClass:
    index: int
    elements: tuple[int, ...]
    r_indices: tuple[int, ...]          # global R-class ids, one per grid row
    l_indices: tuple[int, ...]          # global L-class ids, one per grid column
    h_grid: tuple[tuple[int, ...], ...]  # global H-class id at (row, col)
    group_grid: tuple[tuple[bool, ...], ...]
    rank: int | None = None             # map rank, transformation backings only

    @property
    def num_r(self) -> int:
        return len(self.r_indices)

    @property
    def num_l(self) -> int:
        return len(self.l_indices)

    @property
    def is_square(self) -> bool:
        return self.num_r == self.num_l


@dataclass(frozen=True)
class GreensStructure:
    r_of: tuple[int, ...]
    l_of: tuple[int, ...]
    h_of: tuple[int, ...]
    d_of: tuple[int, ...]
    r_classes: tuple[tuple[int, ...], ...]
    l_classes: tuple[tuple[int, ...], ...]
    h_classes: tuple[tuple[int, ...], ...]
    d_classes: tuple[DClass, ...]


def _scc(n: int, successors) -> list[int]:
    """Strongly connected components, iterative Tarjan; returns comp id per node."""
    index_of = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index_of[root] != -1:
            continue
        work = [(root, iter(successors(root)))]
        index_of[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index_of[w] == -1:
                    index_of[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(successors(w))))
                    advanced = True
                    break
                elif on_stack[w]:
                    if index_of[w] < low[v]:
                        low[v] = index_of[w]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index_of[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def _classes_from_keys(keys: list) -> tuple[list[int], list[tuple[int, ...]]]:
    """Group ids by key; classes sorted by least member, ids assigned in that order."""
    buckets: dict = {}
    for a, key in enumerate(keys):
        buckets.setdefault(key, []).append(a)
    classes = sorted(buckets.values(), key=lambda c: c[0])
    of = [0] * len(keys)
    out = []
    for ci, members in enumerate(classes):
        for a in members:
            of[a] = ci
        out.append(tuple(members))
    return of, out


def _transformation_keys(s: TransformationSemigroup):
    r_keys = [s.kernel_blocks(a) for a in s.elements()]
    l_keys = [s.image_set(a) for a in s.elements()]
    d_keys = [s.rank(a) for a in s.elements()]
    return r_keys, l_keys, d_keys


def _generic_keys(s: FiniteSemigroup):
    n = s.order
    right = [sorted(set(s.mul(a, b) for b in range(n))) for a in range(n)]
    r_comp = _scc(n, lambda v: right[v])
    left = [sorted(set(s.mul(b, a) for b in range(n))) for a in range(n)]
    l_comp = _scc(n, lambda v: left[v])
    # D = join of R and L via union-find over elements
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    first_r: dict[int, int] = {}
    first_l: dict[int, int] = {}
    for a in range(n):
        if r_comp[a] in first_r:
            union(a, first_r[r_comp[a]])
        else:
            first_r[r_comp[a]] = a
        if l_comp[a] in first_l:
            union(a, first_l[l_comp[a]])
        else:
            first_l[l_comp[a]] = a
    d_keys = [find(a) for a in range(n)]
    return r_comp, l_comp, d_keys


def greens_relations(s: FiniteSemigroup) -> GreensStructure:
    """Compute (and cache on s) the full Green's structure."""
    cached = getattr(s, "_greens", None)
    if cached is not None:
        return cached
    if isinstance(s, TransformationSemigroup):
        r_keys, l_keys, d_keys = _transformation_keys(s)
    else:
        r_keys, l_keys, d_keys = _generic_keys(s)
    r_of, r_classes = _classes_from_keys(r_keys)
    l_of, l_classes = _classes_from_keys(l_keys)
    h_of, h_classes = _classes_from_keys(list(zip(r_of, l_of)))
    d_of, d_members = _classes_from_keys(d_keys)

    d_classes = []
    for di, members in enumerate(d_members):
        r_ids = sorted({r_of[a] for a in members}, key=lambda ri: r_classes[ri][0])
        l_ids = sorted({l_of[a] for a in members}, key=lambda li: l_classes[li][0])
        cell: dict[tuple[int, int], int] = {}
        for a in members:
            cell[(r_of[a], l_of[a])] = h_of[a]
        grid = []
        groups = []
        for ri in r_ids:
            row = []
            grow = []
            for li in l_ids:
                hid = cell.get((ri, li))
                if hid is None:
                    raise SemigroupError(
                        "egg-box cell unexpectedly empty; D-class structure broken")
                row.append(hid)
                grow.append(any(s.is_idempotent(x) for x in h_classes[hid]))
            grid.append(tuple(row))
            groups.append(tuple(grow))
        rank = s.rank(members[0]) if isinstance(s, TransformationSemigroup) else None
        d_classes.append(DClass(index=di, elements=members,
                                r_indices=tuple(r_ids), l_indices=tuple(l_ids),
                                h_grid=tuple(grid), group_grid=tuple(groups),
                                rank=rank))
    gs = GreensStructure(
        r_of=tuple(r_of), l_of=tuple(l_of), h_of=tuple(h_of), d_of=tuple(d_of),
        r_classes=tuple(r_classes), l_classes=tuple(l_classes),
        h_classes=tuple(h_classes), d_classes=tuple(d_classes))
    s._greens = gs
    return gs


def is_square_class(s: FiniteSemigroup, d_index: int) -> bool:
    gs = greens_relations(s)
    return gs.d_classes[d_index].is_square


def is_square(s: FiniteSemigroup) -> bool:
    """True when every D-class has as many R-classes as L-classes."""
    gs = greens_relations(s)
    return all(d.is_square for d in gs.d_classes)


@dataclass(frozen=True)
class PrincipalFactor:
    """The semigroup D u {0}: products leaving D are sent to the new zero."""

    semigroup: TableSemigroup
    element_ids: tuple[int, ...]        # original ids, position = local id
    zero_local: int


def principal_factor(s: FiniteSemigroup, d_index: int,
                     order_limit: int = 4000) -> PrincipalFactor:
    gs = greens_relations(s)
    members = gs.d_classes[d_index].elements
    if len(members) + 1 > order_limit:
        raise SemigroupError(
            f"principal factor order {len(members) + 1} exceeds limit {order_limit}")
    pos = {a: i for i, a in enumerate(members)}
    zero = len(members)
    n = zero + 1
    table = [[zero] * n for _ in range(n)]
    for a in members:
        row = table[pos[a]]
        for b in members:
            c = s.mul(a, b)
            row[pos[b]] = pos.get(c, zero)
    labels = [s.label(a) for a in members] + ["0"]
    factor = TableSemigroup(table, labels=labels, zero=zero)
    return PrincipalFactor(semigroup=factor, element_ids=members, zero_local=zero)


@dataclass(frozen=True)
class ZeroRectangularBand:
    """D/H with a zero: one element per H-class of the D-class, plus 0.

    spec.structure[j][i] = 1 exactly when the grid cell at row i, column j
    is a group H-class, so the Rees product mirrors where products of the
    original D-class stay inside it.
    """

    spec: ReesMatrixSpec
    d_index: int
    r_indices: tuple[int, ...]
    l_indices: tuple[int, ...]
    h_grid: tuple[tuple[int, ...], ...]

    def as_semigroup(self):
        return rees_matrix(self.spec, name=f"band-of-D{self.d_index}")

    def cell_id(self, row: int, col: int) -> int:
        return self.spec.element_id(row, col)


def zero_rect_band(s: FiniteSemigroup, d_index: int) -> ZeroRectangularBand:
    gs = greens_relations(s)
    d = gs.d_classes[d_index]
    groups = d.group_grid
    if not all(any(row) for row in groups):
        raise SemigroupError("D-class is not regular (a row of the grid has no group)")
    cols = len(d.l_indices)
    if not all(any(groups[r][c] for r in range(len(d.r_indices))) for c in range(cols)):
        raise SemigroupError("D-class is not regular (a column of the grid has no group)")
    structure = tuple(tuple(1 if groups[i][j] else 0 for i in range(d.num_r))
                      for j in range(cols))
    spec = ReesMatrixSpec(rows=d.num_r, cols=cols, structure=structure, with_zero=True)
    return ZeroRectangularBand(spec=spec, d_index=d_index,
                               r_indices=d.r_indices, l_indices=d.l_indices,
                               h_grid=d.h_grid)


def eggbox_text(s: FiniteSemigroup) -> str:
    """Plain-text egg-box dump, one block per D-class.

    Cells read H<id>(<size>) with a trailing * on group H-classes.
    """
    gs = greens_relations(s)
    lines = []
    for d in gs.d_classes:
        head = f"D{d.index}"
        if d.rank is not None:
            head += f" rank={d.rank}"
        head += f" {d.num_r}x{d.num_l}"
        lines.append(head)
        for ri in range(d.num_r):
            cells = []
            for ci in range(d.num_l):
                hid = d.h_grid[ri][ci]
                size = len(gs.h_classes[hid])
                star = "*" if d.group_grid[ri][ci] else ""
                cells.append(f"H{hid}({size}){star}")
            lines.append("  " + " ".join(cells))
    return "\n".join(lines) + "\n"
