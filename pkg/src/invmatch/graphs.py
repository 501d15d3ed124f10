"""Graphs derived from a finite semigroup.

Three constructions drive the matching machinery:

* the graph of inverses G(S): vertices are elements, uv is an edge when u
  and v are mutual inverses, and u carries a loop exactly when u = u^3;
* its bipartite double cover G'(S), whose perfect matchings correspond to
  spanning unions of edges, loops and cycles in G(S);
* the incidence graph: L-classes vs R-classes, with an edge where the
  H-class they meet in is a group.

For the full transformation monoid the elements also split into signature
classes (same ascending kernel-class sizes); each class induces a regular
bipartite inverse graph whose degree factors as
(admissible kernels) x (image transversals).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (FiniteSemigroup, SemigroupError, TransformationSemigroup,
                   partitions_with_marks)
from .construct import full_transformation_monoid, is_transversal
from .greens import greens_relations

SIGNATURE_N_MAX = 6


@dataclass(frozen=True)
class InverseGraph:
    """Undirected graph on 0..n-1 with a loop set; neighbor lists exclude self."""

    n: int
    neighbors: tuple[tuple[int, ...], ...]
    loops: frozenset[int]

    def degree(self, v: int) -> int:
        return len(self.neighbors[v]) + (1 if v in self.loops else 0)

    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in range(self.n) for v in self.neighbors[u] if u < v)


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph with payload ids on both sides.

    x and y are the sorted vertex ids of the two sides; adjacency maps an
    x-id to a sorted tuple of y-ids.  The same integer may appear on both
    sides (double covers use element ids twice); the sides are disjoint by
    construction.
    """

    x: tuple[int, ...]
    y: tuple[int, ...]
    adj: tuple[tuple[int, ...], ...]     # aligned with x

    @classmethod
    def from_dict(cls, x_ids, y_ids, adj: dict) -> BipartiteGraph:
        xs = tuple(sorted(x_ids))
        ys = tuple(sorted(y_ids))
        yset = set(ys)
        rows = []
        for u in xs:
            row = tuple(sorted(set(adj.get(u, ()))))
            if not set(row) <= yset:
                raise SemigroupError("adjacency leaves the declared y side")
            rows.append(row)
        return cls(x=xs, y=ys, adj=tuple(rows))

    def neighbors_of(self, x_id: int) -> tuple[int, ...]:
        return self.adj[self.x.index(x_id)]

    def flip(self) -> BipartiteGraph:
        """Swap the two sides."""
        back: dict[int, list[int]] = {v: [] for v in self.y}
        for u, row in zip(self.x, self.adj):
            for v in row:
                back[v].append(u)
        return BipartiteGraph.from_dict(self.y, self.x, back)

    def degrees(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        xdeg = tuple(len(row) for row in self.adj)
        count: dict[int, int] = {v: 0 for v in self.y}
        for row in self.adj:
            for v in row:
                count[v] += 1
        return xdeg, tuple(count[v] for v in self.y)

    def edge_count(self) -> int:
        return sum(len(row) for row in self.adj)


def inverse_graph(s: FiniteSemigroup) -> InverseGraph:
    n = s.order
    neighbors = []
    loops = set()
    for a in range(n):
        inv = s.inverses_of(a)
        neighbors.append(tuple(b for b in inv if b != a))
        if a in inv:
            loops.add(a)
    return InverseGraph(n=n, neighbors=tuple(neighbors), loops=frozenset(loops))


def double_cover(g: InverseGraph) -> BipartiteGraph:
    """Bipartite double cover: x-side u adjacent to y-side v iff uv is an
    edge of g, with a loop at u contributing the single edge u-u'."""
    adj = {}
    for u in range(g.n):
        row = list(g.neighbors[u])
        if u in g.loops:
            row.append(u)
        adj[u] = row
    return BipartiteGraph.from_dict(range(g.n), range(g.n), adj)


def incidence_graph(s: FiniteSemigroup) -> BipartiteGraph:
    """L-classes (x side) vs R-classes (y side), edge where the meet is a group."""
    if not s.is_regular():
        raise SemigroupError("incidence graph is defined for regular semigroups")
    gs = greens_relations(s)
    adj: dict[int, list[int]] = {li: [] for li in range(len(gs.l_classes))}
    for d in gs.d_classes:
        for r_pos, ri in enumerate(d.r_indices):
            for l_pos, li in enumerate(d.l_indices):
                if d.group_grid[r_pos][l_pos]:
                    adj[li].append(ri)
    return BipartiteGraph.from_dict(range(len(gs.l_classes)),
                                    range(len(gs.r_classes)), adj)


def d_components(s: FiniteSemigroup) -> tuple[BipartiteGraph, ...]:
    """The incidence graph split into its D-class components."""
    if not s.is_regular():
        raise SemigroupError("incidence graph is defined for regular semigroups")
    gs = greens_relations(s)
    out = []
    for d in gs.d_classes:
        adj = {}
        for r_pos, ri in enumerate(d.r_indices):
            for l_pos, li in enumerate(d.l_indices):
                if d.group_grid[r_pos][l_pos]:
                    adj.setdefault(li, []).append(ri)
        out.append(BipartiteGraph.from_dict(d.l_indices, d.r_indices, adj))
    return tuple(out)


# -- signature classes of T_n ---------------------------------------------


def signature_classes(n: int) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Elements of T_n grouped by ascending kernel-class sizes.

    Keys are the signatures sorted by (rank, signature); each value is the
    sorted tuple of element ids.
    """
    if not 1 <= n <= SIGNATURE_N_MAX:
        raise SemigroupError(f"signature classes supported for 1 <= n <= {SIGNATURE_N_MAX}")
    s = full_transformation_monoid(n)
    buckets: dict[tuple[int, ...], list[int]] = {}
    for a in s.elements():
        buckets.setdefault(s.signature(a), []).append(a)
    out = {}
    for sig in sorted(buckets, key=lambda t: (len(t), t)):
        out[sig] = tuple(buckets[sig])
    return out


def _admissible_kernels(n: int, marks: tuple[int, ...], sig: tuple[int, ...]):
    """Kernel partitions of {0..n-1} with the given size signature that the
    mark set crosses exactly once per block.  Blocks aligned with marks."""
    want = tuple(sorted(sig))
    for part in partitions_with_marks(n, marks):
        if tuple(sorted(len(b) for b in part)) == want:
            yield part


def _signature_inverses(s: TransformationSemigroup, a: int, sig: tuple[int, ...]):
    """Inverses of a within its signature class, via direct enumeration."""
    marks = s.image_set(a)
    blocks = s.kernel_blocks(a)
    values = tuple(s.images[a][b[0]] for b in blocks)
    out = []
    for part in _admissible_kernels(s.base_size, marks, sig):
        for picks in itertools.product(*blocks):
            to_pick = dict(zip(values, picks))
            beta = [0] * s.base_size
            for mark, block in zip(marks, part):
                z = to_pick[mark]
                for t in block:
                    beta[t] = z
            out.append(s.index[tuple(beta)])
    return sorted(out)


def signature_bigraph(n: int, sig: tuple[int, ...]) -> BipartiteGraph:
    """Bipartite inverse graph of one signature class of T_n.

    Both sides carry the class's element ids; u is adjacent to v when v is
    an inverse of u with the same kernel signature.
    """
    classes = signature_classes(n)
    if sig not in classes:
        raise SemigroupError(f"no signature {sig} in T_{n}")
    s = full_transformation_monoid(n)
    members = classes[sig]
    adj = {u: _signature_inverses(s, u, sig) for u in members}
    return BipartiteGraph.from_dict(members, members, adj)


@dataclass(frozen=True)
class SignatureDegree:
    """Degree data of a signature class bigraph.

    kernels: admissible kernel partitions for one fixed image set;
    transversals: ways to pick an image crossing one fixed kernel;
    degree is their product and every vertex attains it.
    """

    kernels: int
    transversals: int

    @property
    def degree(self) -> int:
        return self.kernels * self.transversals


def signature_degree(n: int, sig: tuple[int, ...]) -> SignatureDegree:
    if sum(sig) != n or any(p < 1 for p in sig):
        raise SemigroupError(f"{sig} is not a kernel signature for n={n}")
    k = len(sig)
    fixed_image = tuple(range(k))
    kernels = sum(1 for _ in _admissible_kernels(n, fixed_image, sig))
    transversals = 1
    for p in sig:
        transversals *= p
    return SignatureDegree(kernels=kernels, transversals=transversals)


# -- DOT export -------------------------------------------------------------


def _quote(text: str) -> str:
    return '"' + text.replace('"', r'\"') + '"'


def dot_inverse_graph(s: FiniteSemigroup) -> str:
    g = inverse_graph(s)
    lines = ["graph inverses {"]
    for v in range(g.n):
        lines.append(f"  n{v} [label={_quote(s.label(v))}];")
    for v in sorted(g.loops):
        lines.append(f"  n{v} -- n{v};")
    for u, v in g.edges():
        lines.append(f"  n{u} -- n{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_double_cover(s: FiniteSemigroup) -> str:
    g = double_cover(inverse_graph(s))
    lines = ["graph cover {"]
    for u in g.x:
        lines.append(f"  a{u} [label={_quote(s.label(u))}];")
    for v in g.y:
        lines.append(f"  b{v} [label={_quote(s.label(v) + chr(39))}];")
    for u, row in zip(g.x, g.adj):
        for v in row:
            lines.append(f"  a{u} -- b{v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_incidence_graph(s: FiniteSemigroup) -> str:
    g = incidence_graph(s)
    lines = ["graph incidence {"]
    for li in g.x:
        lines.append(f"  l{li} [label={_quote('L' + str(li))}];")
    for ri in g.y:
        lines.append(f"  r{ri} [label={_quote('R' + str(ri))}];")
    for li, row in zip(g.x, g.adj):
        for ri in row:
            lines.append(f"  l{li} -- r{ri};")
    lines.append("}")
    return "\n".join(lines) + "\n"
