"""Induced-subgraph search, small-graph isomorphism and related tests.

The core search is a backtracking matcher with per-vertex candidate bitmasks:
assigning a pattern vertex intersects every later candidate set with either
the host neighbourhood or its complement, so both edges and non-edges prune.
Pattern vertices are processed in id order and host candidates in ascending
order, which makes every returned embedding the lexicographically least one.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graphs import Graph, iter_bits


@dataclass(frozen=True)
class Embedding:
    """Injective map pattern vertex i -> host vertex mapping[i]."""

    mapping: tuple

    def is_valid(self, host, pattern):
        m = self.mapping
        if len(m) != pattern.n or len(set(m)) != len(m):
            return False
        for u in range(pattern.n):
            for v in range(u + 1, pattern.n):
                if pattern.has_edge(u, v) != host.has_edge(m[u], m[v]):
                    return False
        return True


@dataclass(frozen=True)
class FreenessWitness:
    free: bool
    pattern_index: object = None
    embedding: object = None


def _search(host, pattern, cands):
    """Backtracking matcher; ``cands`` is the initial candidate mask list."""
    h = pattern.n
    if h == 0:
        return ()
    if any(c == 0 for c in cands):
        return None
    hadj = host.adj
    padj = pattern.adj
    full = (1 << host.n) - 1
    mapping = [0] * h

    def rec(i, tail):
        # tail[j - i] is the candidate mask for pattern vertex j >= i
        c = tail[0]
        while c:
            w = (c & -c).bit_length() - 1
            c &= c - 1
            mapping[i] = w
            if i == h - 1:
                return True
            wbit = 1 << w
            nxt = []
            ok = True
            for j in range(i + 1, h):
                m = tail[j - i] & ~wbit
                if (padj[i] >> j) & 1:
                    m &= hadj[w]
                else:
                    m &= full & ~hadj[w]
                if not m:
                    ok = False
                    break
                nxt.append(m)
            if ok and rec(i + 1, nxt):
                return True
        return False

    if rec(0, list(cands)):
        return tuple(mapping)
    return None


def find_induced(host, pattern):
    """Lexicographically least induced embedding of ``pattern``, or None."""
    if pattern.n > host.n:
        return None
    full = (1 << host.n) - 1
    result = _search(host, pattern, [full] * pattern.n)
    if result is None:
        return None
    return Embedding(result)


def is_free(g, patterns):
    """First violated pattern (in input order) wins; free otherwise."""
    for idx, pattern in enumerate(patterns):
        emb = find_induced(g, pattern)
        if emb is not None:
            return FreenessWitness(free=False, pattern_index=idx, embedding=emb)
    return FreenessWitness(free=True)


def _refinement_labels(g):
    degs = [g.degree(v) for v in range(g.n)]
    return [
        (degs[v], tuple(sorted(degs[u] for u in iter_bits(g.adj[v]))))
        for v in range(g.n)
    ]


def is_isomorphic(g1, g2):
    """Exact isomorphism by pruned backtracking; intended for n <= 16."""
    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return False
    lab1 = _refinement_labels(g1)
    lab2 = _refinement_labels(g2)
    if sorted(lab1) != sorted(lab2):
        return False
    # candidates restricted to vertices with the same refined label
    cands = []
    for v in range(g1.n):
        mask = 0
        for w in range(g2.n):
            if lab1[v] == lab2[w]:
                mask |= 1 << w
        cands.append(mask)
    return _search(g2, g1, cands) is not None


def is_self_complementary(g):
    return is_isomorphic(g, g.complement())


def enumerate_self_complementary(n):
    """One representative per isomorphism class, in edge-mask order.

    Empty unless n(n-1)/4 is an integer; every candidate must have exactly
    that many edges, so enumeration runs over fixed-size edge subsets with a
    degree-sequence rejection before the isomorphism filter.
    """
    if n == 0:
        return [Graph.empty(0)]
    pairs = list(combinations(range(n), 2))
    m = len(pairs)
    if m % 2:
        return []
    reps = []
    for chosen in combinations(range(m), m // 2):
        g = Graph.from_edges(n, [pairs[i] for i in chosen])
        degs = sorted(g.degree(v) for v in range(n))
        if degs != sorted(n - 1 - d for d in degs):
            continue
        if not is_self_complementary(g):
            continue
        if any(is_isomorphic(g, r) for r in reps):
            continue
        reps.append(g)
    return reps


def find_induced_c5(g):
    """Lexicographically least ordered induced 5-cycle, or None.

    The tuple starts at its smallest vertex and the second entry is smaller
    than the last, so each induced C5 has a unique canonical tuple.
    """
    n, adj = g.n, g.adj
    for v1 in range(n):
        above = ((1 << n) - 1) & ~((1 << (v1 + 1)) - 1)
        for v2 in iter_bits(adj[v1] & above):
            for v3 in iter_bits(adj[v2] & above & ~adj[v1]):
                if v3 == v2:
                    continue
                rest = above & ~(1 << v2) & ~(1 << v3)
                for v4 in iter_bits(adj[v3] & rest & ~adj[v1] & ~adj[v2]):
                    for v5 in iter_bits(
                        adj[v4] & adj[v1] & rest & ~adj[v2] & ~adj[v3]
                    ):
                        if v5 != v4 and v5 > v2:
                            return (v1, v2, v3, v4, v5)
    return None


def _has_odd_hole(g):
    """True iff g has an induced odd cycle of length >= 5.

    Grows induced paths whose vertices all exceed the start vertex; a chord
    to the start forces closure, so every enumerated cycle is induced.
    """
    n, adj = g.n, g.adj

    def rec(start, path, path_mask, inner_mask):
        last = path[-1]
        # candidates: above start, adjacent to last, no chord to inner path
        cand = adj[last] & ~path_mask & ~((1 << (start + 1)) - 1)
        for w in iter_bits(cand):
            if adj[w] & inner_mask:
                continue
            if (adj[w] >> start) & 1:
                length = len(path) + 1
                if length >= 5 and length % 2 == 1:
                    return True
                continue  # would be a chord in any longer cycle
            if len(path) + 1 < n and rec(
                start, path + [w], path_mask | (1 << w), inner_mask | (1 << last)
            ):
                return True
        return False

    for start in range(n):
        for nb in iter_bits(adj[start]):
            if nb > start and rec(start, [start, nb], (1 << start) | (1 << nb), 0):
                return True
    return False


def is_perfect_small(g):
    """Odd-hole test on g and its complement; intended for n <= 14."""
    return not (_has_odd_hole(g) or _has_odd_hole(g.complement()))
