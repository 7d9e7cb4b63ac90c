"""Bitmask-backed simple undirected graphs and the core operations on them.

Vertices are the integers 0..n-1.  Each vertex stores its neighborhood as an
integer bitmask, which keeps the search kernels elsewhere in the package fast
at desk scale (everything of interest here fits in one machine word).  Graphs
are immutable after construction and safe to share between workers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

from .errors import Graph6Error, PreconditionError

GRAPH6_MAX_N = 258047


def mask_of(vertices: Iterable[int]) -> int:
    """Pack an iterable of vertex indices into a bitmask."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """A finite simple graph: ``n`` vertices, per-vertex neighbor bitmasks."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbor out of range")
            if (row >> v) & 1:
                raise ValueError(f"vertex {v} has a self-loop")
        for v in range(self.n):
            for u in bits(self.adj[v]):
                if not (self.adj[u] >> v) & 1:
                    raise ValueError(f"adjacency not symmetric on pair ({u}, {v})")

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(n, tuple(rows))

    def __repr__(self) -> str:  # compact and reconstructible
        return f"Graph.from_graph6({emit_graph6(self)!r})"

    # -- basic queries -------------------------------------------------

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def is_complete(self) -> bool:
        full = self.vertex_mask()
        return all(self.adj[v] == full ^ (1 << v) for v in range(self.n))


# -- set-valued neighborhoods ------------------------------------------


def neighborhood_mask(g: Graph, mask: int) -> int:
    """Bitmask of vertices outside ``mask`` with a neighbor inside it."""
    out = 0
    for v in bits(mask):
        out |= g.adj[v]
    return out & ~mask


def closed_neighborhood_mask(g: Graph, mask: int) -> int:
    out = mask
    for v in bits(mask):
        out |= g.adj[v]
    return out


def closed_neighborhood(g: Graph, vertices: Iterable[int]) -> frozenset[int]:
    """The vertices of ``vertices`` together with all their neighbors."""
    mask = mask_of(vertices)
    if mask & ~g.vertex_mask():
        raise PreconditionError("vertex out of range")
    return frozenset(bits(closed_neighborhood_mask(g, mask)))


# -- connectivity helpers ----------------------------------------------


def connected_component_mask(g: Graph, start: int, within: int) -> int:
    """Bitmask of the component of ``start`` inside the induced set ``within``."""
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        nxt &= within & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def is_connected_mask(g: Graph, mask: int) -> bool:
    """True when the subgraph induced on ``mask`` is connected (or empty)."""
    if mask == 0:
        return True
    start = (mask & -mask).bit_length() - 1
    return connected_component_mask(g, start, mask) == mask


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return is_connected_mask(g, g.vertex_mask())


# -- the core operations -----------------------------------------------


def complement(g: Graph) -> Graph:
    full = g.vertex_mask()
    return Graph(g.n, tuple((full ^ row ^ (1 << v)) for v, row in enumerate(g.adj)))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph induced on ``vertices``, re-indexed 0..k-1 in increasing label
    order.  Returns the new graph and the old-to-new index map."""
    old = sorted(set(vertices))
    if old and not (0 <= old[0] and old[-1] < g.n):
        raise PreconditionError("vertex out of range")
    old_to_new = {o: i for i, o in enumerate(old)}
    rows = []
    for o in old:
        row = 0
        for nbr in bits(g.adj[o]):
            j = old_to_new.get(nbr)
            if j is not None:
                row |= 1 << j
        rows.append(row)
    return Graph(len(old), tuple(rows)), old_to_new


def delete_vertices(g: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on the complement of ``vertices`` (old-to-new map)."""
    drop = set(vertices)
    return induced_subgraph(g, (v for v in range(g.n) if v not in drop))


def contract_set(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[frozenset[int], ...]]:
    """Contract a connected vertex set to a single vertex.

    The contracted vertex takes the smallest label in the set and the other
    labels are compacted in increasing order.  The returned provenance tuple
    records, for every new vertex, the original vertices it represents; the
    provenance sets partition the original vertex set.
    """
    smask = mask_of(vertices)
    if smask == 0:
        raise PreconditionError("cannot contract the empty set")
    if smask & ~g.vertex_mask():
        raise PreconditionError("vertex out of range")
    if not is_connected_mask(g, smask):
        raise PreconditionError("contracted set must induce a connected subgraph")
    rep = (smask & -smask).bit_length() - 1
    kept_old = sorted(set(bits(g.vertex_mask() & ~smask)) | {rep})
    old_to_new = {o: i for i, o in enumerate(kept_old)}
    nbr_of_set = neighborhood_mask(g, smask)
    rows = [0] * len(kept_old)
    for o in kept_old:
        i = old_to_new[o]
        if o == rep:
            for u in bits(nbr_of_set):
                j = old_to_new[u]
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        else:
            for u in bits(g.adj[o] & ~smask):
                rows[i] |= 1 << old_to_new[u]
    provenance = tuple(
        frozenset(bits(smask)) if o == rep else frozenset((o,)) for o in kept_old
    )
    return Graph(len(kept_old), tuple(rows)), provenance


# -- vertex connectivity -----------------------------------------------


def _unit_maxflow(n2: int, cap: list[list[int]], source: int, sink: int, limit: int) -> int:
    """Max flow on a small unit-capacity digraph, stopping early at ``limit``."""
    flow = 0
    while flow < limit:
        parent = [-1] * n2
        parent[source] = source
        queue = deque([source])
        while queue and parent[sink] == -1:
            x = queue.popleft()
            row = cap[x]
            for y in range(n2):
                if row[y] > 0 and parent[y] == -1:
                    parent[y] = x
                    queue.append(y)
        if parent[sink] == -1:
            break
        y = sink
        while y != source:
            x = parent[y]
            cap[x][y] -= 1
            cap[y][x] += 1
            y = x
        flow += 1
    return flow


def vertex_connectivity(g: Graph) -> int:
    """Exact vertex connectivity via unit-capacity max-flow on the vertex-split
    digraph, minimized over non-adjacent pairs.  Complete graphs give n-1 and
    disconnected graphs give 0."""
    n = g.n
    if n <= 1:
        return 0
    if g.is_complete():
        return n - 1
    if not is_connected(g):
        return 0
    best = n - 1
    n2 = 2 * n  # vertex v splits into in-node 2v and out-node 2v+1

    def build() -> list[list[int]]:
        cap = [[0] * n2 for _ in range(n2)]
        for v in range(n):
            cap[2 * v][2 * v + 1] = 1
            for u in bits(g.adj[v]):
                cap[2 * v + 1][2 * u] = n
        return cap

    for s, t in combinations(range(n), 2):
        if g.has_edge(s, t):
            continue
        cap = build()
        cap[2 * s][2 * s + 1] = n
        cap[2 * t][2 * t + 1] = n
        best = min(best, _unit_maxflow(n2, cap, 2 * s + 1, 2 * t, best))
        if best == 0:
            break
    return best


def is_k_connected(g: Graph, k: int) -> bool:
    """Decide kappa(G) >= k by scanning candidate separators of size < k.

    Equivalent to ``vertex_connectivity(g) >= k`` but much cheaper when only
    the comparison is needed, which is the hot case in the constructions.
    """
    if k <= 0:
        return True
    n = g.n
    if not is_connected(g):
        return False
    if g.is_complete():
        return n - 1 >= k
    if n <= k:
        return False
    if min(g.degrees()) < k:
        return False
    full = g.vertex_mask()
    for size in range(1, k):
        for sep in combinations(range(n), size):
            rest = full & ~mask_of(sep)
            if rest and not is_connected_mask(g, rest):
                return False
    return True


# -- graph6 serialization ----------------------------------------------


def emit_graph6(g: Graph) -> str:
    """Encode a labeled graph in graph6: column-major upper-triangle bits,
    packed into 6-bit chunks offset by 63."""
    n = g.n
    if n > GRAPH6_MAX_N:
        raise Graph6Error(f"graph6 supports at most {GRAPH6_MAX_N} vertices")
    if n <= 62:
        out = [chr(63 + n)]
    else:
        out = ["~"] + [chr(63 + ((n >> s) & 63)) for s in (12, 6, 0)]
    acc = 0
    nbits = 0
    for j in range(1, n):
        col = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | ((col >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(63 + acc))
                acc = 0
                nbits = 0
    if nbits:
        out.append(chr(63 + (acc << (6 - nbits))))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line (optional ``>>graph6<<`` header allowed)."""
    s = text.strip()
    if s.startswith(">>"):
        if not s.startswith(">>graph6<<"):
            raise Graph6Error(f"malformed header in {text!r}")
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6Error("empty graph6 string")
    for ch in s:
        if not (63 <= ord(ch) <= 126):
            raise Graph6Error(f"byte {ch!r} out of graph6 range")
    if s[0] == "~":
        if len(s) >= 2 and s[1] == "~":
            raise Graph6Error("graph6 vertex counts above 258047 are not supported")
        if len(s) < 4:
            raise Graph6Error("truncated vertex count")
        n = 0
        for ch in s[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        body = s[4:]
    else:
        n = ord(s[0]) - 63
        body = s[1:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) < need:
        raise Graph6Error(f"truncated bit field: need {need} bytes, got {len(body)}")
    if len(body) > need:
        raise Graph6Error(f"trailing bytes after bit field in {text!r}")
    bitstream = []
    for ch in body:
        val = ord(ch) - 63
        bitstream.extend((val >> shift) & 1 for shift in range(5, -1, -1))
    if any(bitstream[nbits:]):
        raise Graph6Error("nonzero padding bits")
    rows = [0] * n
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bitstream[idx]:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            idx += 1
    return Graph(n, tuple(rows))
