"""Loop-aware multigraph with stable edge identities.

Edges are stored as a flat sequence indexed by a dense EdgeId, so that a
coloring assigned on a fused graph survives vertex splitting unchanged.
Loops are encoded as edges whose endpoints coincide and contribute two to
the degree of their vertex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence


class GraphUsageError(ValueError):
    """Raised for out-of-range vertex/edge ids or malformed arguments."""


def approx(x: int, y: float) -> bool:
    """floor(y) <= x <= ceil(y)."""
    return math.floor(y) <= x <= math.ceil(y)


@dataclass(frozen=True)
class Multigraph:
    """Immutable multigraph; parallel edges and loops allowed.

    ``edges[i]`` is the endpoint pair of EdgeId ``i``.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for a, b in self.edges:
            if not (0 <= a < self.vertex_count and 0 <= b < self.vertex_count):
                raise GraphUsageError(f"edge ({a},{b}) out of range")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def check_vertex(self, v: int) -> None:
        if not (0 <= v < self.vertex_count):
            raise GraphUsageError(f"vertex {v} out of range")

    def degree(self, v: int) -> int:
        self.check_vertex(v)
        d = 0
        for a, b in self.edges:
            if a == v:
                d += 1
            if b == v:
                d += 1
        return d

    def loop_count(self, v: int) -> int:
        self.check_vertex(v)
        return sum(1 for a, b in self.edges if a == v and b == v)

    def multiplicity(self, u: int, v: int) -> int:
        self.check_vertex(u)
        self.check_vertex(v)
        pair = (u, v) if u <= v else (v, u)
        return sum(1 for a, b in self.edges if (min(a, b), max(a, b)) == pair)

    def components(self) -> int:
        """Number of connected components, isolated vertices included."""
        uf = UnionFind(self.vertex_count)
        for a, b in self.edges:
            uf.union(a, b)
        return uf.component_count()

    def is_connected(self) -> bool:
        return self.vertex_count <= 1 or self.components() == 1

    def degrees(self) -> list[int]:
        d = [0] * self.vertex_count
        for a, b in self.edges:
            d[a] += 1
            d[b] += 1
        return d

    def subgraph_of_edges(self, edge_ids: Iterable[int]) -> "Multigraph":
        """Spanning subgraph keeping only the given edges (all vertices kept)."""
        return Multigraph(self.vertex_count, tuple(self.edges[e] for e in edge_ids))


@dataclass(frozen=True)
class EdgeColoring:
    """Total assignment of colors 1..k to the EdgeIds of a host graph."""

    k: int
    colors: tuple[int, ...]

    def __post_init__(self):
        if self.k < 1:
            raise GraphUsageError("k must be >= 1")
        for c in self.colors:
            if not (1 <= c <= self.k):
                raise GraphUsageError(f"color {c} outside 1..{self.k}")

    def class_edge_ids(self, j: int) -> list[int]:
        if not (1 <= j <= self.k):
            raise GraphUsageError(f"color {j} outside 1..{self.k}")
        return [e for e, c in enumerate(self.colors) if c == j]


def color_class(g: Multigraph, coloring: EdgeColoring, j: int) -> Multigraph:
    """Spanning subgraph induced by the edges colored j (may be empty)."""
    if len(coloring.colors) != g.edge_count:
        raise GraphUsageError("coloring does not match graph edge count")
    return g.subgraph_of_edges(coloring.class_edge_ids(j))


def color_class_degree(g: Multigraph, coloring: EdgeColoring, j: int, v: int) -> int:
    g.check_vertex(v)
    d = 0
    for e, (a, b) in enumerate(g.edges):
        if coloring.colors[e] != j:
            continue
        if a == v:
            d += 1
        if b == v:
            d += 1
    return d


@dataclass(frozen=True)
class AmalgamationSpec:
    """Number function eta on the fused graph and the vertex map phi."""

    eta: tuple[int, ...]  # indexed by fused-graph vertex
    phi: tuple[int, ...]  # indexed by detached-graph vertex

    def __post_init__(self):
        counts = [0] * len(self.eta)
        for image in self.phi:
            if not (0 <= image < len(self.eta)):
                raise GraphUsageError("phi image out of range")
            counts[image] += 1
        if tuple(counts) != self.eta:
            raise GraphUsageError("eta inconsistent with phi preimage sizes")


def amalgamate(g: Multigraph, phi: Sequence[int]) -> tuple[Multigraph, AmalgamationSpec]:
    """Fuse vertices of g according to phi; edges keep their EdgeId.

    Edges between identified vertices become loops. phi must be total on
    V(g) and its image is renumbered densely in order of first appearance.
    """
    if len(phi) != g.vertex_count:
        raise GraphUsageError("phi must be total on V(g)")
    remap: dict[int, int] = {}
    for image in phi:
        if image not in remap:
            remap[image] = len(remap)
    dense = tuple(remap[image] for image in phi)
    edges = tuple((dense[a], dense[b]) for a, b in g.edges)
    h = Multigraph(len(remap), edges)
    eta = [0] * len(remap)
    for image in dense:
        eta[image] += 1
    return h, AmalgamationSpec(tuple(eta), dense)


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra

    def component_count(self) -> int:
        return sum(1 for i, p in enumerate(self.parent) if self.find(i) == i)


# ---------------------------------------------------------------------------
# JSON forms shared by the CLI and file formats


def graph_to_json(g: Multigraph) -> dict:
    return {"vertices": g.vertex_count, "edges": [[a, b] for a, b in g.edges]}


def graph_from_json(obj: Mapping) -> Multigraph:
    try:
        vertices = int(obj["vertices"])
        edges = tuple((int(a), int(b)) for a, b in obj["edges"])
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphUsageError(f"malformed graph JSON: {exc}") from exc
    return Multigraph(vertices, edges)


def coloring_to_json(c: EdgeColoring) -> dict:
    return {"k": c.k, "colors": list(c.colors)}


def coloring_from_json(obj: Mapping) -> EdgeColoring:
    try:
        return EdgeColoring(int(obj["k"]), tuple(int(c) for c in obj["colors"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphUsageError(f"malformed coloring JSON: {exc}") from exc


# ---------------------------------------------------------------------------
# Host-graph constructors used across builders and tests


def complete_graph(n: int, lam: int = 1) -> Multigraph:
    """lambda K_n with edges in lexicographic order, repeated lambda times."""
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            edges.extend([(u, v)] * lam)
    return Multigraph(n, tuple(edges))


def two_class_graph(n: int, m: int, lam: int, mu: int) -> Multigraph:
    """K(n^(m); lambda, mu): m parts of size n; part p holds vertices p*n..p*n+n-1."""
    s = n * m
    edges = []
    for u in range(s):
        for v in range(u + 1, s):
            mult = lam if u // n == v // n else mu
            edges.extend([(u, v)] * mult)
    return Multigraph(s, tuple(edges))


def two_class_parts(n: int, m: int) -> list[list[int]]:
    return [list(range(p * n, (p + 1) * n)) for p in range(m)]
