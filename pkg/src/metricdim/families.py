"""Constructors for the graph families with role-labelled vertices.

The central family is a unicyclic gadget: a cycle ``a_1..a_n1`` carrying a
tail path ``b_1..b_n2`` (joined at ``a_2``), a pendant ``c`` at ``a_n1``, and
a hub ``i`` at ``a_1`` holding ``n3`` pendants ``j_1..j_n3``.  Whether the
cycle length is odd or even decides which of the two dimensions (vertex or
edge) stays at ``n3`` and which grows, and chaining copies of the gadget
through single bridge edges widens that gap one unit per copy.  The
``realize`` constructor picks cycle length 5 or 6 and a chain length to hit
any prescribed pair of dimensions at any sufficiently large order.

Vertex ids inside a copy are assigned in the fixed order
``a_1..a_n1, b_1..b_n2, c, i, j_1..j_n3`` and copies are concatenated, so
solver witnesses are reproducible.  Role labels live in a side table and
never enter solver loops.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, add_edge, cartesian_product, disjoint_union


class InvalidParams(ValueError):
    """Family parameters outside the valid range."""


class RealizeError(ValueError):
    """A dimension-realization request that cannot be honoured."""


class InvalidTarget(RealizeError):
    """Target dimensions below 2 are not constructible by these families."""


class EqualDimensionsUnsupported(RealizeError):
    """Equal vertex and edge dimension targets are out of scope."""


class OrderTooSmall(RealizeError):
    """Requested order below the family's minimum for these targets."""

    def __init__(self, message: str, minimum_order: int):
        super().__init__(message)
        self.minimum_order = minimum_order


@dataclass(frozen=True)
class FamilyParams:
    """Gadget parameters: cycle length, tail length, pendant count, copies."""

    n1: int
    n2: int
    n3: int
    ell: int = 1

    def validate(self) -> "FamilyParams":
        if self.n1 < 5:
            raise InvalidParams(f"cycle length n1 must be >= 5, got {self.n1}")
        if self.n2 < 1:
            raise InvalidParams(f"tail length n2 must be >= 1, got {self.n2}")
        if self.n3 < 2:
            raise InvalidParams(f"pendant count n3 must be >= 2, got {self.n3}")
        if self.ell < 1:
            raise InvalidParams(f"copy count ell must be >= 1, got {self.ell}")
        return self


@dataclass(frozen=True)
class RoleLabel:
    """Structural role of one vertex: copy number, role letter, role index."""

    copy: int
    role: str  # "a", "b", "c", "i" or "j"
    index: int = 0  # 1-based position for a/b/j, 0 for c and i

    @property
    def name(self) -> str:
        return self.role if self.index == 0 else f"{self.role}{self.index}"


@dataclass(frozen=True)
class BasisBlueprint:
    """Cycle anchor positions used by the canonical bases.

    ``alpha`` and ``beta`` are the two cycle vertices sitting at equal
    distance from ``a_1``, adjacent for odd cycles and two apart for even
    ones; ``gamma`` and ``delta`` are that shared distance and the cycle
    radius.
    """

    alpha: int
    beta: int
    gamma: int
    delta: int

    @classmethod
    def for_cycle(cls, n1: int) -> "BasisBlueprint":
        if n1 < 5:
            raise InvalidParams(f"cycle length must be >= 5, got {n1}")
        return cls(
            alpha=(n1 + 1) // 2,
            beta=-(-(n1 + 3) // 2),
            gamma=(n1 - 1) // 2,
            delta=n1 // 2,
        )


@dataclass(frozen=True)
class FamilyGraph:
    """A family-built graph together with its vertex role table."""

    graph: Graph
    labels: tuple[RoleLabel, ...]
    copies: int = 1

    def vertex(self, role: str, index: int = 0, copy: int = 1) -> int:
        target = RoleLabel(copy, role, index)
        for v, lab in enumerate(self.labels):
            if lab == target:
                return v
        raise KeyError(f"no vertex labelled {target}")

    def label_name(self, v: int) -> str:
        lab = self.labels[v]
        if self.copies > 1:
            return f"{lab.name}^{lab.copy}"
        return lab.name


def gadget_order(n1: int, n2: int, n3: int) -> int:
    return n1 + n2 + n3 + 2


def make_gadget(n1: int, n2: int, n3: int) -> FamilyGraph:
    """Cycle-with-tail gadget plus a pendant hub; one copy, labels attached."""
    FamilyParams(n1, n2, n3).validate()
    n = gadget_order(n1, n2, n3)
    edges: list[tuple[int, int]] = []
    # cycle a_1..a_n1 on ids 0..n1-1
    for k in range(n1 - 1):
        edges.append((k, k + 1))
    edges.append((0, n1 - 1))
    # tail b_1..b_n2 on ids n1..n1+n2-1, joined at a_2
    for k in range(n2 - 1):
        edges.append((n1 + k, n1 + k + 1))
    edges.append((1, n1))
    c, hub = n1 + n2, n1 + n2 + 1
    edges.append((n1 - 1, c))
    edges.append((0, hub))
    for k in range(n3):
        edges.append((hub, hub + 1 + k))
    labels = (
        [RoleLabel(1, "a", k + 1) for k in range(n1)]
        + [RoleLabel(1, "b", k + 1) for k in range(n2)]
        + [RoleLabel(1, "c"), RoleLabel(1, "i")]
        + [RoleLabel(1, "j", k + 1) for k in range(n3)]
    )
    return FamilyGraph(Graph.from_edges(n, edges), tuple(labels))


def make_gadget_core(n1: int, n2: int) -> FamilyGraph:
    """The gadget without hub and pendants: cycle, tail and the ``c`` pendant."""
    if n1 < 5:
        raise InvalidParams(f"cycle length n1 must be >= 5, got {n1}")
    if n2 < 1:
        raise InvalidParams(f"tail length n2 must be >= 1, got {n2}")
    edges = [(k, k + 1) for k in range(n1 - 1)]
    edges.append((0, n1 - 1))
    for k in range(n2 - 1):
        edges.append((n1 + k, n1 + k + 1))
    edges.append((1, n1))
    edges.append((n1 - 1, n1 + n2))
    labels = (
        [RoleLabel(1, "a", k + 1) for k in range(n1)]
        + [RoleLabel(1, "b", k + 1) for k in range(n2)]
        + [RoleLabel(1, "c")]
    )
    return FamilyGraph(Graph.from_edges(n1 + n2 + 1, edges), tuple(labels))


def glue(g1, v1: int, g2, v2: int):
    """Join two graphs by one bridge edge ``v1``--``v2``.

    Accepts plain graphs or labelled family graphs; labelled inputs produce
    a labelled result whose second block of copies is renumbered to follow
    the first.
    """
    labelled = isinstance(g1, FamilyGraph) and isinstance(g2, FamilyGraph)
    raw1 = g1.graph if isinstance(g1, FamilyGraph) else g1
    raw2 = g2.graph if isinstance(g2, FamilyGraph) else g2
    joined = add_edge(disjoint_union(raw1, raw2), v1, raw1.n + v2)
    if not labelled:
        return joined
    shift = g1.copies
    moved = tuple(
        RoleLabel(lab.copy + shift, lab.role, lab.index) for lab in g2.labels
    )
    return FamilyGraph(joined, g1.labels + moved, copies=g1.copies + g2.copies)


def make_chain(n1: int, n2: int, n3: int, ell: int = 1) -> FamilyGraph:
    """Chain of gadget copies bridged by single edges.

    Copy 1 keeps the full ``(n1, n2, n3)`` parameters; every further copy is
    the minimal ``(n1, 1, 2)`` gadget.  Copy ``k`` is bridged to copy ``k+1``
    by the edge from ``a_alpha`` of copy ``k`` to ``j_1`` of copy ``k+1``.
    With one copy this is exactly ``make_gadget``.
    """
    FamilyParams(n1, n2, n3, ell).validate()
    alpha = BasisBlueprint.for_cycle(n1).alpha
    chain = make_gadget(n1, n2, n3)
    for k in range(2, ell + 1):
        nxt = make_gadget(n1, 1, 2)
        chain = glue(chain, chain.vertex("a", alpha, copy=k - 1), nxt, nxt.vertex("j", 1))
    return chain


def chain_order(n1: int, n2: int, n3: int, ell: int) -> int:
    return gadget_order(n1, n2, n3) + (ell - 1) * (n1 + 5)


def canonical_basis(
    n1: int, n2: int, n3: int, ell: int = 1, kind: str = "vertex"
) -> tuple[int, ...]:
    """The family's prescribed generator for ``make_chain(n1, n2, n3, ell)``.

    Two shapes exist.  The compact set takes the first ``n3 - 1`` hub
    pendants of copy 1 plus the ``a_alpha`` anchor of the last copy and has
    size ``n3``.  The extended set swaps that lone anchor for both anchors
    of the last copy plus the ``a_beta`` anchor of every earlier copy, for
    size ``n3 + ell``.  Odd cycles use the compact set for vertices and the
    extended one for edges; even cycles swap the two roles.
    """
    params = FamilyParams(n1, n2, n3, ell).validate()
    if kind not in ("vertex", "edge"):
        raise ValueError(f"kind must be 'vertex' or 'edge', got {kind!r}")
    bp = BasisBlueprint.for_cycle(n1)
    compact = (n1 % 2 == 1) == (kind == "vertex")
    basis = _chain_basis(params, bp, compact)
    return tuple(sorted(basis))


def _chain_basis(p: FamilyParams, bp: BasisBlueprint, compact: bool) -> list[int]:
    chain = make_chain(p.n1, p.n2, p.n3, p.ell)
    out = [chain.vertex("j", k, copy=1) for k in range(1, p.n3)]
    if compact:
        out.append(chain.vertex("a", bp.alpha, copy=p.ell))
    else:
        for k in range(1, p.ell):
            out.append(chain.vertex("a", bp.beta, copy=k))
        out.append(chain.vertex("a", bp.alpha, copy=p.ell))
        out.append(chain.vertex("a", bp.beta, copy=p.ell))
    return out


def make_path(n: int) -> Graph:
    if n < 1:
        raise InvalidParams(f"path needs n >= 1, got {n}")
    return Graph.from_edges(n, [(k, k + 1) for k in range(n - 1)])


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidParams(f"cycle needs n >= 3, got {n}")
    edges = [(k, k + 1) for k in range(n - 1)]
    edges.append((0, n - 1))
    return Graph.from_edges(n, edges)


def make_complete(n: int) -> Graph:
    if n < 1:
        raise InvalidParams(f"complete graph needs n >= 1, got {n}")
    return Graph.from_edges(
        n, [(u, v) for u in range(n) for v in range(u + 1, n)]
    )


def minimum_realizable_order(dim_target: int, edim_target: int) -> int:
    """Smallest order the realization construction can hit for the targets."""
    if dim_target < 2 or edim_target < 2:
        raise InvalidTarget("both dimension targets must be at least 2")
    if dim_target == edim_target:
        raise EqualDimensionsUnsupported(
            "equal vertex and edge dimension targets are not constructible here"
        )
    if dim_target < edim_target:
        return chain_order(5, 1, dim_target, edim_target - dim_target)
    return chain_order(6, 1, edim_target, dim_target - edim_target)


def realize(dim_target: int, edim_target: int, order: int) -> FamilyGraph:
    """Graph of exactly ``order`` vertices with the prescribed dimensions.

    Odd (length 5) cycles pin the vertex dimension and let the edge
    dimension grow with the chain; even (length 6) cycles do the opposite.
    All slack between the minimum order and the requested one is absorbed
    by the tail of copy 1.
    """
    n0 = minimum_realizable_order(dim_target, edim_target)
    if order < n0:
        raise OrderTooSmall(
            f"targets ({dim_target}, {edim_target}) need order >= {n0}, got {order}",
            minimum_order=n0,
        )
    tail = 1 + order - n0
    if dim_target < edim_target:
        return make_chain(5, tail, dim_target, edim_target - dim_target)
    return make_chain(6, tail, edim_target, dim_target - edim_target)


def parse_family_spec(spec: str):
    """Parse a family specification string into a graph.

    Formats: ``G:n1,n2,n3``, ``L:ell,n1,n2,n3``, ``cycle:n``, ``path:n``,
    ``complete:n`` and ``cp:<spec>x<spec>`` for Cartesian products (folded
    left to right; factors may not themselves be products).
    """
    head, sep, rest = spec.partition(":")
    if not sep:
        raise InvalidParams(f"malformed family spec {spec!r}")
    if head == "cp":
        parts = rest.split("x")
        if len(parts) < 2:
            raise InvalidParams(f"product spec needs at least two factors: {spec!r}")
        graphs = [_as_plain_graph(parse_family_spec(p)) for p in parts]
        out = graphs[0]
        for g in graphs[1:]:
            out = cartesian_product(out, g)
        return out
    if head == "G":
        n1, n2, n3 = _int_args(rest, 3, spec)
        return make_gadget(n1, n2, n3)
    if head == "L":
        ell, n1, n2, n3 = _int_args(rest, 4, spec)
        return make_chain(n1, n2, n3, ell)
    if head in ("cycle", "path", "complete"):
        (n,) = _int_args(rest, 1, spec)
        return {"cycle": make_cycle, "path": make_path, "complete": make_complete}[head](n)
    raise InvalidParams(f"unknown family {head!r} in spec {spec!r}")


def _as_plain_graph(g) -> Graph:
    return g.graph if isinstance(g, FamilyGraph) else g


def _int_args(rest: str, count: int, spec: str) -> list[int]:
    parts = rest.split(",")
    if len(parts) != count:
        raise InvalidParams(f"spec {spec!r} needs {count} integer arguments")
    try:
        return [int(p) for p in parts]
    except ValueError as exc:
        raise InvalidParams(f"non-integer argument in spec {spec!r}") from exc
