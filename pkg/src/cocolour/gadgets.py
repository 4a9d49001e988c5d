"""Hardness gadget constructions and their structural verification.

Two constructions live here: the exact-3-cover gadget (a clique over the
ground set, an independent set per triple, and padding vertices matched to
unused triples) and the SAT gadget built from a "nice" critical graph, one
copy per clause.  Verification re-checks every structural property the
constructions rely on, plus induced-subgraph freeness for the pattern lists
that make the corresponding hardness statements go through.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement

from . import patterns, solvers
from .graphs import Graph, cycle, disjoint_union, path


@dataclass(frozen=True)
class X3CInstance:
    """Exact 3-cover instance: ground set 0..3q-1, k triples."""

    q: int
    k: int
    triples: tuple  # of sorted 3-tuples

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("q must be positive")
        if self.k < self.q:
            raise ValueError("k must be at least q")
        if len(self.triples) != self.k:
            raise ValueError(f"expected {self.k} triples, got {len(self.triples)}")
        for t in self.triples:
            if len(t) != 3 or len(set(t)) != 3:
                raise ValueError(f"triple {t} must have 3 distinct elements")
            if not all(0 <= x < 3 * self.q for x in t):
                raise ValueError(f"triple {t} out of ground-set range")

    @staticmethod
    def from_json(text):
        data = json.loads(text)
        return X3CInstance(
            q=data["q"],
            k=data["k"],
            triples=tuple(tuple(sorted(t)) for t in data["triples"]),
        )

    def to_json(self):
        return json.dumps(
            {"q": self.q, "k": self.k, "triples": [list(t) for t in self.triples]}
        )


@dataclass(frozen=True)
class SatInstance:
    """3-SAT with exactly three pairwise-distinct literals per clause.

    Repeated variables within a clause (with opposite signs) are accepted so
    that two-variable instances exist; the reduction-equivalence tests stick
    to distinct-variable clauses, which is the interesting regime anyway.
    """

    n: int
    clauses: tuple  # of 3-tuples of DIMACS-style signed literals

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one variable")
        for clause in self.clauses:
            if len(clause) != 3 or len(set(clause)) != 3:
                raise ValueError(
                    f"clause {clause} must have exactly 3 distinct literals"
                )
            vs = [abs(lit) for lit in clause]
            if 0 in vs or max(vs) > self.n:
                raise ValueError(f"clause {clause} has an out-of-range literal")

    @property
    def m(self):
        return len(self.clauses)

    @staticmethod
    def from_dimacs(text):
        n = None
        clauses = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("c"):
                continue
            if line.startswith("p"):
                parts = line.split()
                if len(parts) != 4 or parts[1] != "cnf":
                    raise ValueError(f"bad DIMACS cnf problem line: {line!r}")
                n = int(parts[2])
                continue
            lits = [int(tok) for tok in line.split()]
            if lits and lits[-1] == 0:
                lits = lits[:-1]
            if lits:
                clauses.append(tuple(lits))
        if n is None:
            raise ValueError("missing DIMACS cnf problem line")
        return SatInstance(n=n, clauses=tuple(clauses))

    def to_dimacs(self):
        lines = [f"p cnf {self.n} {self.m}"]
        lines.extend(" ".join(map(str, clause)) + " 0" for clause in self.clauses)
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class LabelledGadget:
    graph: Graph
    labels: tuple  # per-vertex role tuples, e.g. ("W", 3) or ("C", j, slot)

    def vertices(self, role):
        return tuple(v for v, lab in enumerate(self.labels) if lab[0] == role)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: object = None


@dataclass(frozen=True)
class GadgetReport:
    checks: tuple

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.ok]


@dataclass(frozen=True)
class NiceCritical:
    """k-critical graph with an independent triple whose removal keeps omega."""

    graph: Graph
    triple: tuple
    k: int


# ---------------------------------------------------------------------------
# Exact-3-cover gadget


def build_x3c_gadget(inst):
    """Vertex order: ground-set clique, then triple vertices, then padding."""
    nw = 3 * inst.q
    nu = inst.k
    na = inst.k - inst.q
    n = nw + nu + na
    edges = list(combinations(range(nw), 2))
    for ui, triple in enumerate(inst.triples):
        u = nw + ui
        edges.extend((w, u) for w in triple)
    for ai in range(na):
        a = nw + nu + ai
        edges.extend((nw + ui, a) for ui in range(nu))
    labels = (
        tuple(("W", w) for w in range(nw))
        + tuple(("U", ui) for ui in range(nu))
        + tuple(("A", ai) for ai in range(na))
    )
    return LabelledGadget(Graph.from_edges(n, edges), labels)


X3C_FREENESS_PATTERNS = (
    "P1+2P2",
    "co(P1+2P2)",
    "2P3",
    "co(2P3)",
    "P6",
    "co(P6)",
)


def _x3c_pattern_graphs():
    p1_2p2 = disjoint_union(path(1), path(2), path(2))
    two_p3 = disjoint_union(path(3), path(3))
    p6 = path(6)
    return [
        p1_2p2,
        p1_2p2.complement(),
        two_p3,
        two_p3.complement(),
        p6,
        p6.complement(),
    ]


def verify_x3c_gadget(gadget):
    g = gadget.graph
    w = gadget.vertices("W")
    u = gadget.vertices("U")
    a = gadget.vertices("A")
    checks = []

    def check(name, ok, detail=None):
        checks.append(CheckResult(name, bool(ok), detail))

    check("ground-clique", all(g.has_edge(x, y) for x, y in combinations(w, 2)))
    check(
        "triple-set-independent",
        not any(g.has_edge(x, y) for x, y in combinations(u, 2)),
    )
    check(
        "padding-independent",
        not any(g.has_edge(x, y) for x, y in combinations(a, 2)),
    )
    check(
        "padding-complete-to-triples",
        all(g.has_edge(x, y) for x in a for y in u),
    )
    check(
        "padding-anticomplete-to-ground",
        not any(g.has_edge(x, y) for x in a for y in w),
    )
    wset = set(w)
    check(
        "triple-vertices-have-3-ground-neighbours",
        all(len(wset.intersection(g.neighbours(x))) == 3 for x in u),
    )
    check("padding-size", len(a) == len(u) - len(w) // 3)
    for spec, pat in zip(X3C_FREENESS_PATTERNS, _x3c_pattern_graphs()):
        witness = patterns.is_free(g, [pat])
        check(f"free-of-{spec}", witness.free, witness.embedding)
    return GadgetReport(tuple(checks))


def random_x3c_instance(rng, q, k):
    """Uniform random triples (repeats allowed so q=1, k>1 stays legal)."""
    ground = range(3 * q)
    triples = tuple(tuple(sorted(rng.sample(ground, 3))) for _ in range(k))
    return X3CInstance(q=q, k=k, triples=triples)


# ---------------------------------------------------------------------------
# Nice critical graphs and the SAT gadget


HUANG_FREENESS_PATTERNS = {
    "c7": ("P7", "co(P8)"),
    "fig5": ("P6", "co(P1+P6)"),
}


def catalog_nice():
    """The two nice critical graphs used by the k-colouring reductions."""
    c7 = NiceCritical(graph=cycle(7), triple=(0, 2, 4), k=3)
    # vertices: c1,c2,c3 = 0,1,2; b,e,f,g = 3,4,5,6
    fig5_edges = [
        (0, 3), (1, 3), (2, 3),
        (0, 4), (0, 5),
        (1, 4), (1, 6),
        (2, 5), (2, 6),
        (4, 6), (5, 6), (4, 5),
    ]
    fig5 = NiceCritical(
        graph=Graph.from_edges(7, fig5_edges), triple=(0, 1, 2), k=4
    )
    return {"c7": c7, "fig5": fig5}


def verify_nice_critical(nc, budget=None):
    g, k = nc.graph, nc.k
    c1, c2, c3 = nc.triple
    if g.has_edge(c1, c2) or g.has_edge(c1, c3) or g.has_edge(c2, c3):
        return False
    chi, _ = solvers.chromatic_number(g, budget)
    if chi != k:
        return False
    for v in range(g.n):
        chi_v, _ = solvers.chromatic_number(
            g.induced(set(range(g.n)) - {v}), budget
        )
        if chi_v != k - 1:
            return False
    omega, _ = solvers.max_clique(g, budget)
    omega_rest, _ = solvers.max_clique(
        g.induced(set(range(g.n)) - set(nc.triple)), budget
    )
    return omega == k - 1 and omega_rest == k - 1


def build_huang_gadget(nc, sat):
    """SAT gadget: literal pairs, variable vertices, one block per clause.

    Vertex order: (x_i, not-x_i) pairs, then variable vertices, then clause
    blocks in input order.  Slot s of a block represents the s-th literal of
    the clause in input order.
    """
    h = nc.graph.n
    n_vars, m = sat.n, sat.m
    base_d = 2 * n_vars
    base_blocks = 2 * n_vars + n_vars
    total = base_blocks + h * m

    def lit_vertex(lit):
        return 2 * (abs(lit) - 1) + (0 if lit > 0 else 1)

    edges = [(2 * i, 2 * i + 1) for i in range(n_vars)]
    labels = []
    for i in range(n_vars):
        labels.append(("X", i + 1, "+"))
        labels.append(("X", i + 1, "-"))
    labels.extend(("D", i + 1) for i in range(n_vars))

    triple_pos = set(nc.triple)
    slot_of = {v: s for s, v in enumerate(nc.triple)}
    for j, clause in enumerate(sat.clauses):
        offset = base_blocks + h * j
        for v in range(h):
            if v in triple_pos:
                labels.append(("C", j, slot_of[v]))
            else:
                labels.append(("U", j, v))
        edges.extend((offset + u, offset + v) for u, v in nc.graph.edges())
        for v in range(h):
            if v in triple_pos:
                lit = clause[slot_of[v]]
                edges.append((offset + v, lit_vertex(lit)))
                edges.append((offset + v, base_d + abs(lit) - 1))
            else:
                edges.extend((offset + v, x) for x in range(base_blocks))
    return LabelledGadget(Graph.from_edges(total, tuple(edges)), tuple(labels))


def verify_huang_gadget(gadget, nc, pattern_graphs, pattern_names=None):
    g = gadget.graph
    h = nc.graph.n
    x_vertices = gadget.vertices("X")
    d_vertices = gadget.vertices("D")
    xd = set(x_vertices) | set(d_vertices)
    m = sum(1 for lab in gadget.labels if lab == ("C", lab[1], 0))
    checks = []

    def check(name, ok, detail=None):
        checks.append(CheckResult(name, bool(ok), detail))

    # literal pairs: x_i adjacent only to its negation among X/D
    pair_ok = True
    for i in range(len(x_vertices) // 2):
        pos, neg = x_vertices[2 * i], x_vertices[2 * i + 1]
        if not g.has_edge(pos, neg):
            pair_ok = False
    check("literal-pairs", pair_ok)
    check(
        "xd-sparse",
        all(
            not g.has_edge(u, v)
            for u, v in combinations(sorted(xd), 2)
            if not (
                gadget.labels[u][0] == gadget.labels[v][0] == "X"
                and gadget.labels[u][1] == gadget.labels[v][1]
            )
        ),
    )

    blocks_ok = True
    u_ok = True
    c_ok = True
    for j in range(m):
        block = sorted(
            v
            for v, lab in enumerate(gadget.labels)
            if lab[0] in ("C", "U") and lab[1] == j
        )
        sub = g.induced(block)
        if sub.adj != nc.graph.adj:
            blocks_ok = False
        for v in block:
            outside = set(g.neighbours(v)) - set(block)
            if gadget.labels[v][0] == "U":
                if outside != xd:
                    u_ok = False
            else:
                # exactly one literal vertex and one variable vertex
                if len(outside) != 2 or not outside < xd:
                    c_ok = False
    check("blocks-induce-nice-graph", blocks_ok)
    check("u-type-complete-to-xd", u_ok)
    check("c-type-pendant-adjacency", c_ok)

    if pattern_names is None:
        pattern_names = [f"pattern-{i}" for i in range(len(pattern_graphs))]
    for name, pat in zip(pattern_names, pattern_graphs):
        witness = patterns.is_free(g, [pat])
        check(f"free-of-{name}", witness.free, witness.embedding)
    return GadgetReport(tuple(checks))


def all_three_var_clauses(n):
    """Every clause over n variables, variables sorted within the clause."""
    out = []
    for vs in combinations(range(1, n + 1), 3):
        for signs in range(8):
            out.append(
                tuple(v if not (signs >> i) & 1 else -v for i, v in enumerate(vs))
            )
    return out


def sat_instances_up_to(n, max_m):
    """All instances with at most max_m clauses, up to clause order."""
    clauses = all_three_var_clauses(n)
    out = []
    for m in range(1, max_m + 1):
        for chosen in combinations_with_replacement(clauses, m):
            out.append(SatInstance(n=n, clauses=chosen))
    return out
