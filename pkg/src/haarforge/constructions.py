"""Graph type and the graph families this package studies.

Graphs are immutable, simple and undirected, stored as sorted neighbor
tuples.  Vertex blocks of the double generalized Petersen graphs follow a
fixed layout (outer / left-inner / right-inner / outer mirror) so that the
named automorphisms have stable index formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .groups import FiniteGroup, _subset


class Graph:
    """Immutable undirected simple graph on vertices 0..n-1."""

    __slots__ = ("n", "_adj", "labels", "_m", "_masks", "_hash", "__weakref__")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n = {n}")
            if u == v:
                raise ValueError(f"loop at vertex {u} not allowed")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self._adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in adj)
        self._m = sum(len(s) for s in adj) // 2
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError("labels length must equal vertex count")
        self.labels = labels
        self._masks: tuple[int, ...] | None = None
        self._hash: int | None = None

    @property
    def edge_count(self) -> int:
        return self._m

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(nb) for nb in self._adj)

    def regular_valency(self) -> int | None:
        """The common degree, or None if the graph is not regular."""
        degs = set(self.degrees())
        if len(degs) == 1:
            return next(iter(degs))
        return None

    def has_edge(self, u: int, v: int) -> bool:
        nb = self._adj[u]
        if len(nb) > 8:
            lo, hi = 0, len(nb)
            while lo < hi:
                mid = (lo + hi) // 2
                if nb[mid] < v:
                    lo = mid + 1
                else:
                    hi = mid
            return lo < len(nb) and nb[lo] == v
        return v in nb

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self._adj[u] if u < v]

    @property
    def adjacency_masks(self) -> tuple[int, ...]:
        """Per-vertex neighbor bitmasks (lazy)."""
        if self._masks is None:
            masks = []
            for nb in self._adj:
                m = 0
                for w in nb:
                    m |= 1 << w
                masks.append(m)
            self._masks = tuple(masks)
        return self._masks

    def relabel(self, images: Sequence[int]) -> "Graph":
        """The graph with vertex v renamed to images[v]."""
        if sorted(images) != list(range(self.n)):
            raise ValueError("relabeling is not a permutation of the vertices")
        edges = [(images[u], images[v]) for u, v in self.edges()]
        labels = None
        if self.labels is not None:
            labels = [""] * self.n
            for v, lab in enumerate(self.labels):
                labels[images[v]] = lab
        return Graph(self.n, edges, labels=labels)

    def connected_components(self) -> list[tuple[int, ...]]:
        seen = [False] * self.n
        comps = []
        for root in range(self.n):
            if seen[root]:
                continue
            stack = [root]
            seen[root] = True
            comp = [root]
            while stack:
                u = stack.pop()
                for w in self._adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        stack.append(w)
            comps.append(tuple(sorted(comp)))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.connected_components()) == 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self._adj))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self._m})"


# --- basic structural utilities -------------------------------------------


@dataclass(frozen=True)
class Bipartition:
    part0: tuple[int, ...]
    part1: tuple[int, ...]

    def side_of(self, v: int) -> int:
        return 0 if v in frozenset(self.part0) else 1


def bipartition(graph: Graph) -> Bipartition | None:
    """A proper 2-coloring, or None.  Component roots go to part0."""
    color = [-1] * graph.n
    for root in range(graph.n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = [root]
        while queue:
            u = queue.pop()
            cu = color[u]
            for w in graph.neighbors(u):
                if color[w] == -1:
                    color[w] = 1 - cu
                    queue.append(w)
                elif color[w] == cu:
                    return None
    part0 = tuple(v for v in range(graph.n) if color[v] == 0)
    part1 = tuple(v for v in range(graph.n) if color[v] == 1)
    return Bipartition(part0, part1)


def is_bipartite(graph: Graph) -> bool:
    return bipartition(graph) is not None


def girth(graph: Graph) -> int | float:
    """Length of a shortest cycle; math.inf for forests.

    One BFS per vertex; the candidate at each root is the shortest closed
    walk through it, and the minimum over roots is exact.
    """
    best = math.inf
    n = graph.n
    for root in range(n):
        dist = [-1] * n
        parent = [-1] * n
        dist[root] = 0
        queue = [root]
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            du = dist[u]
            if 2 * du >= best:
                break
            for w in graph.neighbors(u):
                if dist[w] == -1:
                    dist[w] = du + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    cand = du + dist[w] + 1
                    if cand < best:
                        best = cand
    return best


def to_adjacency_text(graph: Graph) -> str:
    """Human-readable form: one line per vertex, "index: sorted neighbors"."""
    lines = [f"{v}: {' '.join(str(w) for w in graph.neighbors(v))}".rstrip() for v in range(graph.n)]
    return "\n".join(lines) + "\n"


def from_adjacency_text(text: str) -> Graph:
    rows: dict[int, list[int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        head, _, rest = line.partition(":")
        try:
            v = int(head)
            nbrs = [int(t) for t in rest.split()]
        except ValueError as exc:
            raise ValueError(f"line {lineno}: cannot parse {line!r}") from exc
        if v in rows:
            raise ValueError(f"line {lineno}: duplicate vertex {v}")
        rows[v] = nbrs
    if not rows:
        return Graph(0, [])
    n = max(rows) + 1
    if sorted(rows) != list(range(n)):
        raise ValueError("vertex lines must cover 0..n-1")
    edges = [(v, w) for v, nbrs in rows.items() for w in nbrs]
    g = Graph(n, edges)
    for v, nbrs in rows.items():
        if tuple(sorted(nbrs)) != g.neighbors(v):
            raise ValueError(f"adjacency rows are not symmetric at vertex {v}")
    return g


# --- small stock graphs -----------------------------------------------------


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


# --- group-based families ---------------------------------------------------


def cayley_graph(group: FiniteGroup, connection) -> Graph:
    """Graph on the group with g joined to s*g for every s in the connection set.

    The connection set must exclude the identity and be inverse-closed, so
    the result is simple and |S|-regular.
    """
    s = _subset(group, connection)
    if s.contains_identity():
        raise ValueError("connection set must not contain the identity")
    if not s.is_inverse_closed():
        missing = [m for m in s if group.inv[m] not in s]
        raise ValueError(f"connection set is not inverse-closed; missing inverses of {missing}")
    edges = [(g, group.table[x][g]) for g in group.elements() for x in s]
    return Graph(group.order, edges)


def haar_graph(group: FiniteGroup, connection) -> Graph:
    """Bipartite double of a group: (g, 0) joined to (s*g, 1) for s in S.

    S may contain the identity and need not be inverse-closed; it must be
    nonempty.  Vertices (g, 0) come first, (g, 1) are offset by |G|.
    """
    s = _subset(group, connection)
    if len(s) == 0:
        raise ValueError("connection set must be nonempty")
    n = group.order
    edges = [(g, n + group.table[x][g]) for g in group.elements() for x in s]
    return Graph(2 * n, edges)


def bicayley_graph(group: FiniteGroup, left, right, cross) -> Graph:
    """Two group copies: within-copy edges from L and R, cross edges from S."""
    ls = _subset(group, left)
    rs = _subset(group, right)
    ss = _subset(group, cross)
    for nm, sub in (("left", ls), ("right", rs)):
        if sub.contains_identity():
            raise ValueError(f"{nm} set must not contain the identity")
        if not sub.is_inverse_closed():
            raise ValueError(f"{nm} set must be inverse-closed")
    n = group.order
    edges: list[tuple[int, int]] = []
    for g in group.elements():
        for x in ls:
            edges.append((g, group.table[x][g]))
        for x in rs:
            edges.append((n + g, n + group.table[x][g]))
        for x in ss:
            edges.append((g, n + group.table[x][g]))
    return Graph(2 * n, edges)


# --- Petersen-style families ------------------------------------------------


def generalized_petersen(n: int, r: int) -> Graph:
    """Outer n-cycle 0..n-1, spokes, and inner vertices n..2n-1 with span r."""
    if n < 3:
        raise ValueError("need n >= 3")
    if not 0 < r < n:
        raise ValueError(f"need 0 < r < n, got r = {r}")
    if 2 * r == n:
        raise ValueError(f"r = n/2 = {r} would double the inner edges")
    edges = []
    for i in range(n):
        edges.append((i, (i + 1) % n))
        edges.append((i, n + i))
        edges.append((n + i, n + (i + r) % n))
    labels = [f"o{i}" for i in range(n)] + [f"i{i}" for i in range(n)]
    return Graph(2 * n, edges, labels=labels)


def generalized_petersen_inner_edges(n: int, r: int) -> frozenset[tuple[int, int]]:
    """The inner-rim edge set of generalized_petersen(n, r), as sorted pairs."""
    out = set()
    for i in range(n):
        a, b = n + i, n + (i + r) % n
        out.add((min(a, b), max(a, b)))
    return frozenset(out)


@dataclass(frozen=True)
class DoublePetersenLayout:
    """Vertex addressing for the 4n-vertex double Petersen layout.

    Blocks in index order: outer cycle u, its spoke layer v, the mirror
    spoke layer w, and the mirror outer cycle z, each of size n.
    """

    n: int
    r: int

    def u(self, i: int) -> int:
        return i % self.n

    def v(self, i: int) -> int:
        return self.n + i % self.n

    def w(self, i: int) -> int:
        return 2 * self.n + i % self.n

    def z(self, i: int) -> int:
        return 3 * self.n + i % self.n

    def block_of(self, vertex: int) -> tuple[str, int]:
        block, i = divmod(vertex, self.n)
        return ("u", "v", "w", "z")[block], i

    def label(self, vertex: int) -> str:
        name, i = self.block_of(vertex)
        return f"{name}{i}"

    def outer_edges(self) -> frozenset[tuple[int, int]]:
        out = set()
        for i in range(self.n):
            for a, b in ((self.u(i), self.u(i + 1)), (self.z(i), self.z(i + 1))):
                out.add((min(a, b), max(a, b)))
        return frozenset(out)

    def spoke_edges(self) -> frozenset[tuple[int, int]]:
        out = set()
        for i in range(self.n):
            for a, b in ((self.u(i), self.v(i)), (self.w(i), self.z(i))):
                out.add((min(a, b), max(a, b)))
        return frozenset(out)

    def inner_edges(self) -> frozenset[tuple[int, int]]:
        out = set()
        for i in range(self.n):
            for a, b in ((self.v(i), self.w(i + self.r)), (self.v(i), self.w(i - self.r))):
                out.add((min(a, b), max(a, b)))
        return frozenset(out)


def double_generalized_petersen(n: int, r: int) -> tuple[Graph, DoublePetersenLayout]:
    """The 4n-vertex double cover of the generalized Petersen graph.

    Two outer n-cycles (u and z blocks), spokes into the v and w layers, and
    crossed inner edges v_i ~ w_{i+r}, v_i ~ w_{i-r}.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    if r % n == 0:
        raise ValueError("inner span must be nonzero mod n")
    if not 0 < r < n:
        raise ValueError(f"need 0 < r < n, got r = {r}")
    lay = DoublePetersenLayout(n, r)
    edges = sorted(lay.outer_edges() | lay.spoke_edges() | lay.inner_edges())
    labels = [lay.label(v) for v in range(4 * n)]
    return Graph(4 * n, edges, labels=labels), lay


def cyclic_cover_sigma0(n: int, a: int, k: int, b: int) -> Graph:
    """Cyclic cover of the four-vertex tetracirculant voltage pattern.

    Four fibers of size n in block order (outer, left inner, right inner,
    outer mirror): the first fiber carries a step-a cycle, the last a step-b
    cycle, spokes join adjacent fibers with voltage 0, and the middle fibers
    are joined by a voltage-0 and a voltage-k matching.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    a %= n
    b %= n
    k %= n
    if a == 0 or (2 * a) % n == 0:
        raise ValueError(f"outer step a = {a} lifts to loops or doubled edges mod {n}")
    if b == 0 or (2 * b) % n == 0:
        raise ValueError(f"outer step b = {b} lifts to loops or doubled edges mod {n}")
    if k == 0:
        raise ValueError("inner voltage k must be nonzero mod n")
    edges = []
    for i in range(n):
        edges.append((i, (i + a) % n))
        edges.append((i, n + i))
        edges.append((n + i, 2 * n + i))
        edges.append((n + i, 2 * n + (i + k) % n))
        edges.append((2 * n + i, 3 * n + i))
        edges.append((3 * n + i, 3 * n + (i + b) % n))
    return Graph(4 * n, edges)


# --- covers ------------------------------------------------------------------


def kronecker_cover(graph: Graph) -> Graph:
    """Tensor product with a single edge: the canonical bipartite double."""
    n = graph.n
    edges = []
    for u, v in graph.edges():
        edges.append((u, n + v))
        edges.append((v, n + u))
    return Graph(2 * n, edges)


def voltage_double_cover(graph: Graph, twisted: Iterable[tuple[int, int]]) -> Graph:
    """Double cover twisting exactly the given edges.

    Untwisted edges lift to two parallel copies, twisted edges cross between
    the two sheets.  Twisting every edge gives the Kronecker cover.
    """
    n = graph.n
    tw = set()
    for u, v in twisted:
        if not graph.has_edge(u, v):
            raise ValueError(f"({u}, {v}) is not an edge of the base graph")
        tw.add((min(u, v), max(u, v)))
    edges = []
    for u, v in graph.edges():
        if (u, v) in tw:
            edges.append((u, n + v))
            edges.append((v, n + u))
        else:
            edges.append((u, v))
            edges.append((n + u, n + v))
    return Graph(2 * n, edges)
