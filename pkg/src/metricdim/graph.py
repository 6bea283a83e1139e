"""Immutable simple graphs with bitset adjacency and exact hop distances."""

from __future__ import annotations

from typing import Iterable, Iterator

Edge = tuple[int, int]
DistanceMatrix = tuple[tuple[int, ...], ...]


class GraphError(Exception):
    """Base class for graph construction and query errors."""


class DisconnectedGraph(GraphError):
    """An operation that needs a connected graph got a disconnected one."""


class SelfLoop(GraphError):
    """Attempt to create an edge from a vertex to itself."""


class DuplicateEdge(GraphError):
    """Attempt to add an edge that is already present."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Adjacency is stored as one bit row per vertex so that neighbourhood
    unions and intersections are single big-int operations.  Instances are
    immutable: edit-style operations return new graphs, which keeps the
    cached all-pairs distance matrix coherent and makes sharing across
    threads or worker processes safe.
    """

    __slots__ = ("n", "adj", "edges", "_dist")

    def __init__(self, n: int, adj: Iterable[int], _validate: bool = True):
        if n < 1:
            raise GraphError(f"graph order must be positive, got {n}")
        adj = tuple(adj)
        if len(adj) != n:
            raise GraphError(f"expected {n} adjacency rows, got {len(adj)}")
        self.n = n
        self.adj = adj
        self._dist: DistanceMatrix | None = None
        if _validate:
            self._check_rows()
        self.edges = self._derive_edges()

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        """Build a graph from an edge list, rejecting loops and duplicates."""
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for order {n}")
            if u == v:
                raise SelfLoop(f"self-loop at vertex {u}")
            if (adj[u] >> v) & 1:
                raise DuplicateEdge(f"edge ({u},{v}) listed twice")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj, _validate=False)

    def _check_rows(self) -> None:
        mask_all = (1 << self.n) - 1
        for u, row in enumerate(self.adj):
            if row & ~mask_all:
                raise GraphError(f"adjacency row {u} has bits beyond vertex {self.n - 1}")
            if (row >> u) & 1:
                raise SelfLoop(f"self-loop at vertex {u}")
            for v in iter_bits(row):
                if not (self.adj[v] >> u) & 1:
                    raise GraphError(f"adjacency not symmetric at ({u},{v})")

    def _derive_edges(self) -> tuple[Edge, ...]:
        out: list[Edge] = []
        for u, row in enumerate(self.adj):
            for v in iter_bits(row >> (u + 1)):
                out.append((u, u + 1 + v))
        return tuple(out)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def neighbors(self, v: int) -> Iterator[int]:
        return iter_bits(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def is_connected(self) -> bool:
        return self._reach(0) == (1 << self.n) - 1

    def _reach(self, src: int) -> int:
        seen = frontier = 1 << src
        adj = self.adj
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen

    def _bfs_row(self, src: int) -> list[int]:
        dist = [-1] * self.n
        dist[src] = 0
        seen = frontier = 1 << src
        adj = self.adj
        d = 0
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= adj[v]
            frontier = nxt & ~seen
            seen |= frontier
            d += 1
            for v in iter_bits(frontier):
                dist[v] = d
        return dist

    def distance_matrix(self) -> DistanceMatrix:
        """All-pairs hop distances, computed once and cached.

        Raises DisconnectedGraph if any pair is unreachable.
        """
        if self._dist is None:
            row0 = self._bfs_row(0)
            if -1 in row0:
                raise DisconnectedGraph(
                    f"graph on {self.n} vertices is not connected"
                )
            rows = [tuple(row0)]
            rows.extend(tuple(self._bfs_row(s)) for s in range(1, self.n))
            self._dist = tuple(rows)
        return self._dist

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def bfs_all_pairs(g: Graph) -> DistanceMatrix:
    """Exact hop distances for every vertex pair of a connected graph."""
    return g.distance_matrix()


def vertex_distance(dm: DistanceMatrix, v: int, z: int) -> int:
    """Hop distance between two vertices, looked up in a distance matrix."""
    return dm[v][z]


def edge_distance(dm: DistanceMatrix, e: Edge, z: int) -> int:
    """Distance from edge ``e = (u, v)`` to vertex ``z``: the nearer endpoint."""
    u, v = e
    du, dv = dm[u][z], dm[v][z]
    return du if du < dv else dv


def add_edge(g: Graph, u: int, v: int) -> Graph:
    """New graph with the extra edge ``uv``; caches are not shared."""
    if u == v:
        raise SelfLoop(f"self-loop at vertex {u}")
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise GraphError(f"edge ({u},{v}) out of range for order {g.n}")
    if g.has_edge(u, v):
        raise DuplicateEdge(f"edge ({u},{v}) already present")
    adj = list(g.adj)
    adj[u] |= 1 << v
    adj[v] |= 1 << u
    return Graph(g.n, adj, _validate=False)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union; vertex ``k`` of ``g2`` becomes ``g1.n + k``."""
    off = g1.n
    adj = list(g1.adj) + [row << off for row in g2.adj]
    return Graph(g1.n + g2.n, adj, _validate=False)


def cartesian_product(g1: Graph, g2: Graph) -> Graph:
    """Cartesian product: ``(a,x) ~ (b,y)`` iff they agree in one coordinate
    and are adjacent in the other.  Vertex ``(a, x)`` gets id ``a*g2.n + x``.
    """
    n2 = g2.n
    n = g1.n * n2
    adj = [0] * n
    for a in range(g1.n):
        base = a * n2
        for x in range(n2):
            row = g2.adj[x] << base
            for b in iter_bits(g1.adj[a]):
                row |= 1 << (b * n2 + x)
            adj[base + x] = row
    return Graph(n, adj, _validate=False)
