"""Brute-force reference implementations used to cross-check the package.

Everything here is deliberately naive — exponential subset scans, recursive
search over pairings, Kuhn-style augmenting paths — so that correctness is
obvious by inspection.  The production algorithms are compared against these
on seeded random corpora and on the bundled instances.  None of this code
imports from the algorithmic modules it is checking; only the plain graph
containers are shared.
"""

from __future__ import annotations

import random

from invmatch.graphs import BipartiteGraph, InverseGraph

SUBSET_SCAN_MAX = 14
COVER_SEARCH_MAX = 12


def inverse_set(s, a: int) -> tuple[int, ...]:
    """V(a) by scanning every element with both defining identities."""
    out = []
    for b in s.elements():
        if s.mul(s.mul(a, b), a) == a and s.mul(s.mul(b, a), b) == b:
            out.append(b)
    return tuple(out)


def hall_condition_holds(g: BipartiteGraph) -> bool:
    """Check |N(A)| >= |A| for every subset A of the x side (exponential)."""
    rows = g.adj
    m = len(rows)
    if m > SUBSET_SCAN_MAX:
        raise ValueError("subset scan is only meant for small graphs")
    for mask in range(1, 1 << m):
        picked = [i for i in range(m) if mask >> i & 1]
        hood = set()
        for i in picked:
            hood.update(rows[i])
        if len(hood) < len(picked):
            return False
    return True


def violator_is_valid(g: BipartiteGraph, violator, hood) -> bool:
    """Recompute the neighborhood of a claimed Hall violator from scratch."""
    vset = set(violator)
    if not vset <= set(g.x) or not vset:
        return False
    true_hood = set()
    for u in vset:
        true_hood.update(g.adj[g.x.index(u)])
    return true_hood == set(hood) and len(true_hood) < len(vset)


def kuhn_max_matching(g: BipartiteGraph) -> int:
    """Maximum-matching size via recursive augmenting paths (Kuhn)."""
    index_y = {v: j for j, v in enumerate(g.y)}
    rows = [[index_y[v] for v in row] for row in g.adj]
    match_y = [-1] * len(g.y)

    def try_augment(i: int, seen: list[bool]) -> bool:
        for j in rows[i]:
            if not seen[j]:
                seen[j] = True
                if match_y[j] < 0 or try_augment(match_y[j], seen):
                    match_y[j] = i
                    return True
        return False

    size = 0
    for i in range(len(g.x)):
        if try_augment(i, [False] * len(g.y)):
            size += 1
    return size


def has_perfect_matching(g: BipartiteGraph) -> bool:
    return len(g.x) == len(g.y) and kuhn_max_matching(g) == len(g.x)


def loop_edge_cover_exists(g: InverseGraph) -> bool:
    """Exhaustive search for a spanning set of disjoint loops and edges."""
    n = g.n
    if n > COVER_SEARCH_MAX:
        raise ValueError("exhaustive cover search is only meant for small graphs")
    covered = [False] * n

    def rec(v: int) -> bool:
        while v < n and covered[v]:
            v += 1
        if v == n:
            return True
        covered[v] = True
        if v in g.loops and rec(v + 1):
            return True
        for u in g.neighbors[v]:
            if not covered[u]:
                covered[u] = True
                if rec(v + 1):
                    return True
                covered[u] = False
        covered[v] = False
        return False

    return rec(0)


def permutation_matching_exists(s) -> bool:
    """Does some bijection f with f(a) in V(a) exist?  (Kuhn on the V-sets.)"""
    n = s.order
    g = BipartiteGraph.from_dict(range(n), range(n),
                                 {a: inverse_set(s, a) for a in range(n)})
    return kuhn_max_matching(g) == n


def involution_matching_exists(s) -> bool:
    """Search for a pairing of S into fixed points (a = a^3) and mutual-inverse
    pairs, which is exactly an involution matching."""
    n = s.order
    inv = [set(inverse_set(s, a)) for a in range(n)]
    covered = [False] * n

    def rec(v: int) -> bool:
        while v < n and covered[v]:
            v += 1
        if v == n:
            return True
        covered[v] = True
        if v in inv[v] and rec(v + 1):
            return True
        for u in sorted(inv[v]):
            if u != v and not covered[u]:
                covered[u] = True
                if rec(v + 1):
                    return True
                covered[u] = False
        covered[v] = False
        return False

    return rec(0)


def general_max_matching_size(n: int, edges) -> int:
    """Maximum matching in an arbitrary graph by branch-and-bound recursion."""
    if n > COVER_SEARCH_MAX:
        raise ValueError("exhaustive matching search is only meant for small graphs")
    nbr: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        nbr[u].append(v)
        nbr[v].append(u)
    used = [False] * n

    def rec(v: int) -> int:
        while v < n and used[v]:
            v += 1
        if v == n:
            return 0
        used[v] = True
        best = rec(v + 1)          # leave v exposed
        for u in nbr[v]:
            if not used[u]:
                used[u] = True
                best = max(best, 1 + rec(v + 1))
                used[u] = False
        used[v] = False
        return best

    return rec(0)


def circular_descents(seq: tuple[int, ...]) -> int:
    n = len(seq)
    return sum(1 for i in range(n) if seq[i] > seq[(i + 1) % n])


def count_orientation_preserving(n: int) -> int:
    """Count maps on {0..n-1} whose image sequence, read around the cycle,
    descends at most once (i.e. is a rotation of a non-decreasing word)."""
    import itertools
    total = 0
    for image in itertools.product(range(n), repeat=n):
        if circular_descents(image) <= 1:
            total += 1
    return total


def random_bipartite(rng: random.Random, nx: int, ny: int, p: float) -> BipartiteGraph:
    adj = {u: [v for v in range(ny) if rng.random() < p] for u in range(nx)}
    return BipartiteGraph.from_dict(range(nx), range(ny), adj)


def random_loopy_graph(rng: random.Random, n: int, p: float,
                       loop_p: float) -> InverseGraph:
    nbr: list[set[int]] = [set() for _ in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                nbr[u].add(v)
                nbr[v].add(u)
    loops = frozenset(v for v in range(n) if rng.random() < loop_p)
    return InverseGraph(n=n, neighbors=tuple(tuple(sorted(row)) for row in nbr),
                        loops=loops)
