"""Matching algorithms.

Everything here is deterministic: adjacency lists are consumed in sorted
order and ties are broken by smallest vertex id, so repeated runs on the
same graph return identical structures.

Three solvers cover the needs of the package:

* Hopcroft--Karp maximum matching on bipartite graphs, with a Hall-type
  certificate (either a perfect matching of the x side or a witness set
  whose neighborhood is strictly smaller);
* a blossom-based maximum matching on general graphs;
* a reduction handling loops, so that spanning unions of edges and loops
  can be found by the blossom solver on a loop-free auxiliary graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graphs import BipartiteGraph, InverseGraph, double_cover

_INF = float("inf")


# -- result containers -------------------------------------------------------


@dataclass(frozen=True)
class Matching:
    """A partial matching with loops allowed: disjoint edges plus fixed
    vertices matched to themselves."""

    edges: tuple[tuple[int, int], ...]
    loops: tuple[int, ...]

    def cover(self) -> dict[int, int]:
        out = {v: v for v in self.loops}
        for u, v in self.edges:
            out[u] = v
            out[v] = u
        return out

    def covers_all(self, n: int) -> bool:
        return len(self.loops) + 2 * len(self.edges) == n


@dataclass(frozen=True)
class TwoFactorCover:
    """Spanning union of loops, edges and cycles (every cycle >= 3 vertices).

    This is exactly the data of a permutation moving each vertex to itself
    (loop), to its partner (edge) or one step along a cycle, with every
    move staying inside the underlying graph.
    """

    loops: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    cycles: tuple[tuple[int, ...], ...]

    def components(self) -> tuple[tuple[str, tuple[int, ...]], ...]:
        items = [("loop", (v,)) for v in self.loops]
        items += [("edge", e) for e in self.edges]
        items += [("cycle", c) for c in self.cycles]
        return tuple(sorted(items, key=lambda kc: min(kc[1])))

    def as_permutation(self) -> dict[int, int]:
        perm = {v: v for v in self.loops}
        for u, v in self.edges:
            perm[u] = v
            perm[v] = u
        for cyc in self.cycles:
            for i, v in enumerate(cyc):
                perm[v] = cyc[(i + 1) % len(cyc)]
        return perm

    def vertex_count(self) -> int:
        return len(self.loops) + 2 * len(self.edges) + sum(len(c) for c in self.cycles)


@dataclass(frozen=True)
class HallCertificate:
    """Outcome of a one-sided perfect matching question.

    Either ``matching`` saturates every x vertex, or ``violator`` is a set
    of x vertices with ``neighborhood`` strictly smaller than it.
    """

    matching: tuple[tuple[int, int], ...] | None
    violator: tuple[int, ...] | None
    neighborhood: tuple[int, ...] | None

    @property
    def exists(self) -> bool:
        return self.matching is not None

    def matching_dict(self) -> dict[int, int]:
        if self.matching is None:
            raise ValueError("no matching in a failed certificate")
        return dict(self.matching)


# -- Hopcroft--Karp ----------------------------------------------------------


def _hk_bfs(nx, adj, pair_x, pair_y, dist) -> bool:
    q = deque()
    for u in range(nx):
        if pair_x[u] == -1:
            dist[u] = 0
            q.append(u)
        else:
            dist[u] = _INF
    found = False
    while q:
        u = q.popleft()
        for v in adj[u]:
            w = pair_y[v]
            if w == -1:
                found = True
            elif dist[w] is _INF:
                dist[w] = dist[u] + 1
                q.append(w)
    return found


def _hk_augment(root, adj, pair_x, pair_y, dist, ptr) -> bool:
    # Depth-first search along the level graph, kept iterative so that
    # large instances do not hit the interpreter recursion limit.
    stack = [root]
    chosen: list[int] = []
    while stack:
        u = stack[-1]
        advanced = False
        while ptr[u] < len(adj[u]):
            v = adj[u][ptr[u]]
            ptr[u] += 1
            w = pair_y[v]
            if w == -1:
                chosen.append(v)
                for uu, vv in zip(stack, chosen):
                    pair_x[uu] = vv
                    pair_y[vv] = uu
                return True
            if dist[w] == dist[u] + 1:
                chosen.append(v)
                stack.append(w)
                advanced = True
                break
        if not advanced:
            dist[u] = _INF
            stack.pop()
            if chosen:
                chosen.pop()
    return False


def _hopcroft_karp(nx: int, ny: int, adj) -> tuple[list[int], list[int]]:
    """Maximum matching on positional indices; returns (pair_x, pair_y)."""
    pair_x = [-1] * nx
    pair_y = [-1] * ny
    dist = [_INF] * nx
    while _hk_bfs(nx, adj, pair_x, pair_y, dist):
        ptr = [0] * nx
        for u in range(nx):
            if pair_x[u] == -1:
                _hk_augment(u, adj, pair_x, pair_y, dist, ptr)
    return pair_x, pair_y


def _positional(g: BipartiteGraph):
    ypos = {v: j for j, v in enumerate(g.y)}
    adj = [tuple(ypos[v] for v in row) for row in g.adj]
    return adj, ypos


def max_bipartite_matching(g: BipartiteGraph) -> dict[int, int]:
    """Maximum matching as a partial map from x payload ids to y payload ids."""
    adj, _ = _positional(g)
    pair_x, _ = _hopcroft_karp(len(g.x), len(g.y), adj)
    return {g.x[i]: g.y[j] for i, j in enumerate(pair_x) if j != -1}


def hall_certificate(g: BipartiteGraph) -> HallCertificate:
    """Perfect matching of the x side, or a violating set.

    When some x vertex stays exposed, the union of the alternating-path
    trees rooted at all exposed x vertices is returned: its neighborhood
    consists of matched y vertices whose partners lie back in the set, so
    it falls short of the set by the number of exposed roots.
    """
    adj, _ = _positional(g)
    nx, ny = len(g.x), len(g.y)
    pair_x, pair_y = _hopcroft_karp(nx, ny, adj)
    if all(j != -1 for j in pair_x):
        matching = tuple(sorted((g.x[i], g.y[j]) for i, j in enumerate(pair_x)))
        return HallCertificate(matching=matching, violator=None, neighborhood=None)
    reach = [False] * nx
    q = deque()
    for u in range(nx):
        if pair_x[u] == -1:
            reach[u] = True
            q.append(u)
    seen_y = [False] * ny
    while q:
        u = q.popleft()
        for v in adj[u]:
            if seen_y[v]:
                continue
            seen_y[v] = True
            w = pair_y[v]
            if w != -1 and not reach[w]:
                reach[w] = True
                q.append(w)
    violator = tuple(sorted(g.x[u] for u in range(nx) if reach[u]))
    hood = tuple(sorted(g.y[v] for v in range(ny) if seen_y[v]))
    if len(hood) >= len(violator):
        raise RuntimeError("certificate construction produced a non-violating set")
    return HallCertificate(matching=None, violator=violator, neighborhood=hood)


def perfect_bipartite_matching(g: BipartiteGraph) -> dict[int, int] | None:
    """Perfect matching of both sides, or None."""
    if len(g.x) != len(g.y):
        return None
    cert = hall_certificate(g)
    return cert.matching_dict() if cert.exists else None


# -- blossom maximum matching ------------------------------------------------


def blossom_max_matching(n: int, adj) -> list[int]:
    """Maximum matching in a general simple graph on vertices 0..n-1.

    ``adj`` is a sequence of neighbor sequences (no loops, symmetric).
    Returns the mate array, -1 for exposed vertices.  Contracts blossoms
    in the classical way: ``base`` tracks the flower each vertex has been
    shrunk into, ``parent`` the discovery tree of the current phase.
    """
    match = [-1] * n

    # Seed greedily; every pair found here saves one augmentation phase.
    for v in range(n):
        if match[v] == -1:
            for u in adj[v]:
                if match[u] == -1:
                    match[v] = u
                    match[u] = v
                    break

    def lca(base, parent, a, b):
        on_path = set()
        v = a
        while True:
            v = base[v]
            on_path.add(v)
            if match[v] == -1:
                break
            v = parent[match[v]]
        v = b
        while True:
            v = base[v]
            if v in on_path:
                return v
            v = parent[match[v]]

    def mark_path(base, parent, blossom, v, b, child):
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def find_path(root) -> bool:
        parent = [-1] * n
        base = list(range(n))
        in_tree = [False] * n
        in_tree[root] = True
        q = deque([root])
        while q:
            v = q.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    # Odd cycle through the root or the tree: shrink it.
                    curbase = lca(base, parent, v, to)
                    blossom = [False] * n
                    mark_path(base, parent, blossom, v, curbase, to)
                    mark_path(base, parent, blossom, to, curbase, v)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = curbase
                            if not in_tree[i]:
                                in_tree[i] = True
                                q.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        # Augment along the tree path ending here.
                        u = to
                        while u != -1:
                            pv = parent[u]
                            nxt = match[pv]
                            match[u] = pv
                            match[pv] = u
                            u = nxt
                        return True
                    in_tree[match[to]] = True
                    q.append(match[to])
        return False

    for v in range(n):
        if match[v] == -1:
            find_path(v)
    return match


# -- loops via companion vertices -------------------------------------------


def perfect_matching_with_loops(g: InverseGraph) -> Matching | None:
    """Spanning union of disjoint edges and loops of g, or None.

    Loops are folded away before calling the blossom solver: each looped
    vertex v gains a companion v* joined to v, the companions form a
    clique (so unused companions can pair off), and when the total vertex
    count would be odd one extra vertex joined to all companions fixes the
    parity.  Perfect matchings of the auxiliary graph then correspond
    exactly to the spanning unions sought.
    """
    looped = sorted(g.loops)
    companion = {v: g.n + i for i, v in enumerate(looped)}
    total = g.n + len(looped)
    dummy = total if total % 2 == 1 else None
    size = total + (1 if dummy is not None else 0)

    adj: list[list[int]] = [[] for _ in range(size)]
    for u in range(g.n):
        adj[u] = list(g.neighbors[u])
    for v in looped:
        adj[v].append(companion[v])
        adj[companion[v]].append(v)
    for a, b in ((a, b) for a in looped for b in looped if a < b):
        adj[companion[a]].append(companion[b])
        adj[companion[b]].append(companion[a])
    if dummy is not None:
        for v in looped:
            adj[companion[v]].append(dummy)
            adj[dummy].append(companion[v])
    adj = [sorted(row) for row in adj]

    mate = blossom_max_matching(size, adj)
    if any(m == -1 for m in mate):
        return None
    edges = []
    loops = []
    for v in range(g.n):
        m = mate[v]
        if m < g.n:
            if v < m:
                edges.append((v, m))
        else:
            loops.append(v)
    out = Matching(edges=tuple(sorted(edges)), loops=tuple(sorted(loops)))
    if not out.covers_all(g.n):
        raise RuntimeError("auxiliary matching failed to cover the original graph")
    return out


# -- spanning loop/edge/cycle unions via the double cover --------------------


def one_two_factor(g: InverseGraph) -> TwoFactorCover | None:
    """Spanning union of loops, edges and cycles of g, or None.

    Works through the bipartite double cover: a perfect matching there is
    a bijection moving every vertex to a neighbor (itself when looped),
    and its cycle decomposition is the factor.
    """
    perm = perfect_bipartite_matching(double_cover(g))
    if perm is None:
        return None
    loops = []
    edges = []
    cycles = []
    seen = set()
    for v in range(g.n):
        if v in seen:
            continue
        orbit = [v]
        seen.add(v)
        w = perm[v]
        while w != v:
            orbit.append(w)
            seen.add(w)
            w = perm[w]
        if len(orbit) == 1:
            loops.append(v)
        elif len(orbit) == 2:
            edges.append((orbit[0], orbit[1]))
        else:
            cycles.append(tuple(orbit))
    factor = TwoFactorCover(loops=tuple(sorted(loops)),
                            edges=tuple(sorted(edges)),
                            cycles=tuple(sorted(cycles, key=min)))
    if factor.vertex_count() != g.n:
        raise RuntimeError("cycle decomposition lost vertices")
    return factor


def union_of_regular_matchings(parts) -> dict[int, int]:
    """Perfect matchings of regular bipartite parts, merged into one map.

    Every part must be d-regular for some d >= 1 (both sides, same d);
    such graphs always satisfy Hall's condition, so a missing matching is
    an internal error rather than a negative answer.
    """
    out: dict[int, int] = {}
    for part in parts:
        xdeg, ydeg = part.degrees()
        degs = set(xdeg) | set(ydeg)
        if len(degs) != 1 or 0 in degs:
            raise ValueError(f"part is not regular: degrees {sorted(degs)}")
        matching = perfect_bipartite_matching(part)
        if matching is None:
            raise RuntimeError("regular bipartite part has no perfect matching")
        for u, v in matching.items():
            if u in out:
                raise ValueError("parts overlap on the x side")
            out[u] = v
    return out
