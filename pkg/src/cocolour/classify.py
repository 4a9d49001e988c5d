"""Complexity verdicts for Colouring on hereditary graph classes.

Each classifier returns a Classification carrying the verdict, the rule that
fired, and when available a witness (an embedding or a containment fact), so
callers can check *why* a verdict was reached and not just what it was.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import patterns
from .graphs import disjoint_union, graph_facts, iter_bits, path, star

POLY = "Poly"
NP_COMPLETE = "NPComplete"
OPEN = "Open"


@dataclass(frozen=True)
class Classification:
    verdict: str
    rule: str
    witness: object = None


def _embeds(pattern, host):
    """Embedding of ``pattern`` as an induced subgraph of ``host``, or None."""
    return patterns.find_induced(host, pattern)


def classify_h_free(h):
    """Colouring restricted to H-free graphs: Poly iff H fits inside
    P1+P3 or P4, NP-complete otherwise.  Never Open."""
    for name, host in (("P1+P3", disjoint_union(path(1), path(3))),
                       ("P4", path(4))):
        emb = _embeds(h, host)
        if emb is not None:
            return Classification(POLY, f"poly:subgraph-of-{name}", emb)
    return Classification(NP_COMPLETE, "npc:h-free-otherwise")


def classify_self_comp_family(hs):
    """Colouring on (H1,...,Hk)-free graphs, every Hi self-complementary:
    Poly iff some Hi fits inside P4."""
    for i, h in enumerate(hs):
        if not patterns.is_self_complementary(h):
            raise ValueError(f"graph at index {i} is not self-complementary")
    p4 = path(4)
    for i, h in enumerate(hs):
        emb = _embeds(h, p4)
        if emb is not None:
            return Classification(
                POLY, "poly:some-member-in-P4", (i, emb)
            )
    return Classification(NP_COMPLETE, "npc:no-member-in-P4")


def _component_sizes(g):
    sizes = []
    seen = 0
    for s in range(g.n):
        if (seen >> s) & 1:
            continue
        frontier = 1 << s
        comp = 0
        while frontier:
            comp |= frontier
            seen |= frontier
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~seen
        sizes.append(comp.bit_count())
    return sizes


def _linear_forest_exception(h):
    """Detect sP1+P3 (s >= 3) and sP1+P4 (s >= 2), the open cases."""
    facts = graph_facts(h)
    if not facts.is_linear_forest:
        return None
    sizes = _component_sizes(h)
    trivial = sum(1 for s in sizes if s == 1)
    nontrivial = sorted(s for s in sizes if s > 1)
    if nontrivial == [3] and trivial >= 3:
        return f"{trivial}P1+P3"
    if nontrivial == [4] and trivial >= 2:
        return f"{trivial}P1+P4"
    return None


def _h_coh_poly_hosts():
    return (
        ("K1,3", star(3)),
        ("P1+P4", disjoint_union(path(1), path(4))),
        ("2P1+P3", disjoint_union(path(1), path(1), path(3))),
        ("P2+P3", disjoint_union(path(2), path(3))),
        ("P5", path(5)),
    )


def classify_h_coh(h):
    """Colouring on (H, co-H)-free graphs.

    The open exceptions (a P3 with three or more isolated vertices, a P4
    with two or more) are checked structurally first, on both H and its
    complement.  Then Poly fires when H or co-H fits inside one of the five
    fixed hosts or has at most one edge (the sP1+P2 family for any s).
    """
    hbar = h.complement()
    for side, g in (("H", h), ("co-H", hbar)):
        name = _linear_forest_exception(g)
        if name is not None:
            return Classification(OPEN, f"open:{side}={name}")
    for side, g in (("H", h), ("co-H", hbar)):
        if g.edge_count <= 1:
            return Classification(POLY, f"poly:{side}-in-sP1+P2")
        for name, host in _h_coh_poly_hosts():
            emb = _embeds(g, host)
            if emb is not None:
                return Classification(
                    POLY, f"poly:{side}-in-{name}", emb
                )
    return Classification(NP_COMPLETE, "npc:h-coh-otherwise")


def classify_k_col_pt(k, t):
    """k-Colouring on (Pt, co-Pt)-free graphs."""
    if k < 1 or t < 1:
        raise ValueError("k and t must be positive")
    if k <= 2:
        return Classification(POLY, "poly:k<=2")
    if t <= 5:
        return Classification(POLY, "poly:t<=5")
    if k == 3:
        if t <= 7:
            return Classification(POLY, "poly:k=3,t<=7")
        return Classification(OPEN, "open:k=3,t>=8")
    if t >= 8:
        return Classification(NP_COMPLETE, "npc:k>=4,t>=8")
    return Classification(OPEN, "open:k>=4,t-in-6..7")
