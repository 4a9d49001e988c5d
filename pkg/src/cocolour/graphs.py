"""Immutable bitset graphs, named-graph constructors and text codecs.

Vertices are always 0..n-1 and adjacency is stored as one int bitmask per
vertex.  Graph values are frozen after construction, so everything in this
module is safe to share between threads.  Vertex identity is positional:
operations that say "vertex-identical" mean equality of these bitmasks, not
isomorphism.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations


class CodecError(ValueError):
    """Malformed graph text; carries the byte offset of the failure."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)
        self.offset = offset


def iter_bits(mask):
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices):
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with bitmask adjacency rows."""

    n: int
    adj: tuple

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        for v, row in enumerate(self.adj):
            if row >> self.n:
                raise ValueError(f"vertex {v} has a neighbour out of range")
            if (row >> v) & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in iter_bits(row):
                if not (self.adj[u] >> v) & 1:
                    raise ValueError(f"adjacency not symmetric at ({v},{u})")

    @staticmethod
    def from_edges(n, edges):
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(n, tuple(adj))

    @staticmethod
    def empty(n):
        return Graph(n, (0,) * n)

    def has_edge(self, u, v):
        return bool((self.adj[u] >> v) & 1)

    def degree(self, v):
        return self.adj[v].bit_count()

    def neighbours(self, v):
        return tuple(iter_bits(self.adj[v]))

    def edges(self):
        out = []
        for u in range(self.n):
            for v in iter_bits(self.adj[u] >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    @property
    def edge_count(self):
        return sum(row.bit_count() for row in self.adj) // 2

    def complement(self):
        full = (1 << self.n) - 1
        return Graph(
            self.n,
            tuple((full & ~row & ~(1 << v)) for v, row in enumerate(self.adj)),
        )

    def induced(self, vertices):
        """Subgraph on ``vertices``, relabelled 0..|S|-1 in ascending order."""
        vs = sorted(set(vertices))
        if vs and not (0 <= vs[0] and vs[-1] < self.n):
            raise ValueError("induced subgraph vertex out of range")
        index = {v: i for i, v in enumerate(vs)}
        adj = [0] * len(vs)
        for i, v in enumerate(vs):
            for u in iter_bits(self.adj[v]):
                j = index.get(u)
                if j is not None:
                    adj[i] |= 1 << j
        return Graph(len(vs), tuple(adj))

    def union(self, other):
        """Disjoint union; ``other`` is shifted past this graph's vertices."""
        adj = list(self.adj) + [row << self.n for row in other.adj]
        return Graph(self.n + other.n, tuple(adj))


# ---------------------------------------------------------------------------
# Named graphs


def path(t):
    if t < 1:
        raise ValueError(f"path needs at least 1 vertex, got {t}")
    return Graph.from_edges(t, [(i, i + 1) for i in range(t - 1)])


def cycle(t):
    if t < 3:
        raise ValueError(f"cycle needs at least 3 vertices, got {t}")
    return Graph.from_edges(t, [(i, (i + 1) % t) for i in range(t)])


def complete(t):
    if t < 1:
        raise ValueError(f"complete graph needs at least 1 vertex, got {t}")
    return Graph.from_edges(t, combinations(range(t), 2))


def star(leaves):
    """K_{1,leaves}: centre is vertex 0."""
    if leaves < 1:
        raise ValueError(f"star needs at least 1 leaf, got {leaves}")
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def subdivided_claw(h, i, j):
    """S_{h,i,j}: centre is vertex 0, arms laid out consecutively."""
    if not (1 <= h <= i <= j):
        raise ValueError(f"subdivided claw needs 1 <= h <= i <= j, got {(h, i, j)}")
    edges = []
    v = 1
    for arm in (h, i, j):
        prev = 0
        for _ in range(arm):
            edges.append((prev, v))
            prev = v
            v += 1
    return Graph.from_edges(h + i + j + 1, edges)


def disjoint_union(*graphs):
    out = Graph.empty(0)
    for g in graphs:
        out = out.union(g)
    return out


_TERM_KINDS = {
    "path": (1, path),
    "cycle": (1, cycle),
    "complete": (1, complete),
    "star": (1, star),
    "claw": (3, subdivided_claw),
}


@dataclass(frozen=True)
class Term:
    """One summand of a GraphSpec: a path, cycle, clique, star or S_{h,i,j}."""

    kind: str
    params: tuple

    def __post_init__(self):
        if self.kind not in _TERM_KINDS:
            raise ValueError(f"unknown term kind {self.kind!r}")
        arity = _TERM_KINDS[self.kind][0]
        if len(self.params) != arity:
            raise ValueError(f"{self.kind} takes {arity} parameter(s)")
        self.realize()  # reject invalid parameters eagerly

    def realize(self):
        return _TERM_KINDS[self.kind][1](*self.params)

    @property
    def size(self):
        return self.realize().n


@dataclass(frozen=True)
class GraphSpec:
    """A disjoint-union sum of counted terms, e.g. 2*P1 + P3."""

    terms: tuple  # of (count, Term)

    def __post_init__(self):
        for count, term in self.terms:
            if count < 1:
                raise ValueError(f"term count must be positive, got {count}")
            if not isinstance(term, Term):
                raise ValueError("spec terms must be Term values")

    @property
    def size(self):
        return sum(count * term.size for count, term in self.terms)


def make_named(spec):
    """Realize a GraphSpec, components laid out in spec order."""
    out = Graph.empty(0)
    for count, term in spec.terms:
        g = term.realize()
        for _ in range(count):
            out = out.union(g)
    return out


# ---------------------------------------------------------------------------
# Structural facts


@dataclass(frozen=True)
class GraphFacts:
    components: int
    is_forest: bool
    is_linear_forest: bool
    girth: object  # shortest cycle length, or None if acyclic
    max_degree: int
    edge_count: int


def _component_count(g):
    seen = 0
    count = 0
    for s in range(g.n):
        if (seen >> s) & 1:
            continue
        count += 1
        frontier = 1 << s
        while frontier:
            seen |= frontier
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~seen
    return count


def _girth(g):
    """Length of a shortest cycle via BFS from every vertex, None if acyclic."""
    best = None
    for root in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] >= best:
                break
            for v in iter_bits(g.adj[u]):
                if dist[v] == -1:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif v != parent[u]:
                    cand = dist[u] + dist[v] + 1
                    if best is None or cand < best:
                        best = cand
    return best


def graph_facts(g):
    comps = _component_count(g)
    m = g.edge_count
    is_forest = m == g.n - comps
    max_deg = max((g.degree(v) for v in range(g.n)), default=0)
    girth = None if is_forest else _girth(g)
    return GraphFacts(
        components=comps,
        is_forest=is_forest,
        is_linear_forest=is_forest and max_deg <= 2,
        girth=girth,
        max_degree=max_deg,
        edge_count=m,
    )


# ---------------------------------------------------------------------------
# Codecs: graph6, edge list, DIMACS .col


def graph6_encode(g):
    if g.n > 258047:
        raise CodecError(f"graph6 supports at most 258047 vertices, got {g.n}")
    out = []
    if g.n <= 62:
        out.append(chr(g.n + 63))
    else:
        out.append("~")
        out.append(chr(((g.n >> 12) & 63) + 63))
        out.append(chr(((g.n >> 6) & 63) + 63))
        out.append(chr((g.n & 63) + 63))
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    while len(bits) % 6:
        bits.append(0)
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def graph6_decode(text):
    text = text.strip()
    if not text:
        raise CodecError("empty graph6 string", 0)
    pos = 0
    if text[0] == "~":
        if len(text) < 4:
            raise CodecError("truncated graph6 vertex count", len(text))
        vals = []
        for pos in range(1, 4):
            c = ord(text[pos]) - 63
            if not 0 <= c <= 63:
                raise CodecError("invalid graph6 byte", pos)
            vals.append(c)
        n = (vals[0] << 12) | (vals[1] << 6) | vals[2]
        pos = 4
    else:
        n = ord(text[0]) - 63
        if not 0 <= n <= 62:
            raise CodecError("invalid graph6 vertex count byte", 0)
        pos = 1
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(text) - pos != nbytes:
        raise CodecError(
            f"expected {nbytes} adjacency bytes, got {len(text) - pos}", pos
        )
    bits = []
    for k in range(nbytes):
        c = ord(text[pos + k]) - 63
        if not 0 <= c <= 63:
            raise CodecError("invalid graph6 byte", pos + k)
        for shift in range(5, -1, -1):
            bits.append((c >> shift) & 1)
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return Graph.from_edges(n, edges)


def edgelist_encode(g):
    lines = [f"{g.n} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def edgelist_decode(text):
    offset = 0
    lines = []
    for raw in text.splitlines(keepends=True):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            lines.append((offset, stripped))
        offset += len(raw.encode())
    if not lines:
        raise CodecError("empty edge list", 0)
    off, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise CodecError("edge list header must be 'n m'", off)
    n, m = int(parts[0]), int(parts[1])
    if len(lines) - 1 != m:
        raise CodecError(f"expected {m} edge lines, got {len(lines) - 1}", off)
    edges = []
    for off, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise CodecError("edge line must be 'u v'", off)
        edges.append((int(parts[0]), int(parts[1])))
    try:
        return Graph.from_edges(n, edges)
    except ValueError as exc:
        raise CodecError(str(exc), lines[0][0]) from exc


def dimacs_encode(g):
    lines = [f"p edge {g.n} {g.edge_count}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def dimacs_decode(text):
    n = None
    edges = []
    offset = 0
    for raw in text.splitlines(keepends=True):
        line = raw.strip()
        if line.startswith("c") or not line:
            pass
        elif line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "edge":
                raise CodecError("bad DIMACS problem line", offset)
            n = int(parts[2])
        elif line.startswith("e"):
            parts = line.split()
            if len(parts) != 3:
                raise CodecError("bad DIMACS edge line", offset)
            edges.append((int(parts[1]) - 1, int(parts[2]) - 1))
        else:
            raise CodecError(f"unknown DIMACS line {line[:20]!r}", offset)
        offset += len(raw.encode())
    if n is None:
        raise CodecError("missing DIMACS problem line", 0)
    edges = sorted({(min(u, v), max(u, v)) for u, v in edges})
    return Graph.from_edges(n, edges)
