"""The two coloring engines behind every construction.

* ``bee_coloring``: balanced, equitable and equalized k-coloring of a
  bipartite multigraph, by recursive quota selection over two laminar
  families (per-pair edge sets, per-side vertex stars, all edges).
* ``evenly_equitable_coloring``: per-vertex-even k-coloring of an even
  multigraph (loops allowed) with per-vertex color degrees pairwise
  differing by 0 or 2. Classes are extracted one at a time as bounded
  circulations on an Eulerian orientation, with a pairwise rebalancing
  repair pass as a safety net.
"""

from __future__ import annotations

from collections import Counter, defaultdict

from .euler import euler_circuits
from .flows import feasible_circulation
from .laminar import LaminarFamily, select_subset
from .multigraph import EdgeColoring, GraphUsageError, Multigraph


class ColoringContractError(ValueError):
    """Input graph violates an engine's precondition."""


def _within_one(counts: list[int]) -> bool:
    return not counts or max(counts) - min(counts) <= 1


# ---------------------------------------------------------------------------
# Balanced / equitable / equalized coloring of bipartite multigraphs


def _check_bipartite(g: Multigraph, left: set[int]) -> None:
    for a, b in g.edges:
        if a == b:
            raise ColoringContractError("loops are not allowed in bipartite input")
        if (a in left) == (b in left):
            raise ColoringContractError(f"edge ({a},{b}) does not cross the bipartition")


def bee_coloring(g: Multigraph, left: set[int], k: int) -> EdgeColoring:
    """Balanced, equitable, equalized k-edge-coloring of a bipartite multigraph."""
    if k < 1:
        raise GraphUsageError("k must be >= 1")
    _check_bipartite(g, left)
    colors = [0] * g.edge_count
    remaining = list(range(g.edge_count))  # ascending EdgeId order breaks ties
    for c in range(1, k + 1):
        classes_left = k - c + 1
        if classes_left == 1:
            for e in remaining:
                colors[e] = c
            remaining = []
            break
        size = len(remaining)
        by_pair: dict[tuple[int, int], list[int]] = defaultdict(list)
        by_vertex: dict[int, list[int]] = defaultdict(list)
        for i, e in enumerate(remaining):
            a, b = g.edges[e]
            by_pair[(min(a, b), max(a, b))].append(i)
            by_vertex[a].append(i)
            by_vertex[b].append(i)
        everything = [frozenset(range(size))]
        fam_a = LaminarFamily.of(
            size,
            list(by_pair.values())
            + [by_vertex[v] for v in sorted(by_vertex) if v in left]
            + everything,
        )
        fam_b = LaminarFamily.of(
            size,
            [by_vertex[v] for v in sorted(by_vertex) if v not in left] + everything,
        )
        chosen = select_subset(size, fam_a, fam_b, classes_left)
        for i in sorted(chosen, reverse=True):
            colors[remaining[i]] = c
            del remaining[i]
    return EdgeColoring(k, tuple(colors))


def verify_bee(g: Multigraph, left: set[int], coloring: EdgeColoring) -> bool:
    """Exact check of the equalized, balanced and equitable properties."""
    if len(coloring.colors) != g.edge_count:
        return False
    k = coloring.k
    sizes = [0] * (k + 1)
    per_pair: dict[tuple[int, int], list[int]] = defaultdict(lambda: [0] * (k + 1))
    per_vertex: dict[int, list[int]] = defaultdict(lambda: [0] * (k + 1))
    for e, (a, b) in enumerate(g.edges):
        c = coloring.colors[e]
        sizes[c] += 1
        per_pair[(min(a, b), max(a, b))][c] += 1
        per_vertex[a][c] += 1
        per_vertex[b][c] += 1
    if not _within_one(sizes[1:]):
        return False
    for counts in per_pair.values():
        if not _within_one(counts[1:]):
            return False
    for counts in per_vertex.values():
        if not _within_one(counts[1:]):
            return False
    return True


# ---------------------------------------------------------------------------
# Evenly-equitable coloring of even multigraphs


def _even_class_split(
    vertex_count: int, edges: dict[int, tuple[int, int]], divisor: int, rotation: int
) -> set[int] | None:
    """Edge set whose per-vertex degree is even and ~= degree/divisor.

    Orients an Eulerian circuit and takes a bounded circulation: the
    selected arcs give every vertex an even degree equal to twice its
    throughput, which is quota-bounded.
    """
    if not edges:
        return set()
    circuits = euler_circuits(vertex_count, edges, rotation=rotation)
    arcs: list[tuple[int, int, int, int]] = []
    arc_edge: list[int] = []
    indeg: Counter[int] = Counter()
    for trail in circuits:
        for eid, u, v in trail:
            indeg[v] += 1
    # node split: v_in = 2v, v_out = 2v+1
    for trail in circuits:
        for eid, u, v in trail:
            arc_edge.append(len(arcs))
            arcs.append((2 * u + 1, 2 * v, 0, 1))
    eids = [eid for trail in circuits for eid, _, _ in trail]
    for v, d in sorted(indeg.items()):
        half = d  # in-degree equals degree/2
        arcs.append((2 * v, 2 * v + 1, half // divisor, -(-half // divisor)))
    flow = feasible_circulation(2 * vertex_count, arcs)
    if flow is None:
        return None
    return {eids[i] for i in range(len(eids)) if flow[arc_edge[i]] == 1}


def evenly_equitable_coloring(
    g: Multigraph, k: int, max_attempts: int = 8
) -> EdgeColoring:
    """Evenly-equitable k-edge-coloring of an even multigraph (loops allowed)."""
    if k < 1:
        raise GraphUsageError("k must be >= 1")
    for v, d in enumerate(g.degrees()):
        if d % 2:
            raise ColoringContractError(f"vertex {v} has odd degree {d}")
    for attempt in range(max_attempts):
        coloring = _evenly_equitable_attempt(g, k, rotation=attempt)
        if coloring is not None and verify_evenly_equitable(g, coloring):
            return coloring
    raise RuntimeError("evenly-equitable coloring failed; this indicates a bug")


def _evenly_equitable_attempt(g: Multigraph, k: int, rotation: int) -> EdgeColoring | None:
    colors = [0] * g.edge_count
    remaining = {e: g.edges[e] for e in range(g.edge_count)}
    for c in range(k, 1, -1):
        chosen = _even_class_split(g.vertex_count, remaining, c, rotation)
        if chosen is None:
            break
        for e in chosen:
            colors[e] = c
            del remaining[e]
    for e in remaining:
        colors[e] = 1
    coloring = EdgeColoring(k, tuple(colors))
    return _rebalance_pairs(g, coloring, rotation)


def _class_degrees(g: Multigraph, colors: list[int], k: int) -> list[list[int]]:
    deg = [[0] * (k + 1) for _ in range(g.vertex_count)]
    for e, (a, b) in enumerate(g.edges):
        deg[a][colors[e]] += 1
        deg[b][colors[e]] += 1
    return deg


def _rebalance_pairs(g: Multigraph, coloring: EdgeColoring, rotation: int) -> EdgeColoring | None:
    """Repair per-vertex spreads > 2 by re-splitting one color pair at a time.

    Each repair re-splits the union of two classes by an even circulation,
    which minimizes that pair's contribution to the per-vertex degree
    spread; a sum-of-squares potential guarantees termination.
    """
    k = coloring.k
    colors = list(coloring.colors)
    deg = _class_degrees(g, colors, k)
    guard = 0
    while True:
        bad = None
        for v in range(g.vertex_count):
            for i in range(1, k + 1):
                for j in range(i + 1, k + 1):
                    if abs(deg[v][i] - deg[v][j]) > 2:
                        bad = (i, j)
                        break
                if bad:
                    break
            if bad:
                break
        if bad is None:
            return EdgeColoring(k, tuple(colors))
        guard += 1
        if guard > 4 * g.edge_count * k + 100:
            return None
        i, j = bad
        pair_edges = {e: g.edges[e] for e in range(g.edge_count) if colors[e] in (i, j)}
        chosen = _even_class_split(g.vertex_count, pair_edges, 2, rotation)
        if chosen is None:
            return None
        for e in pair_edges:
            colors[e] = i if e in chosen else j
        deg = _class_degrees(g, colors, k)


def verify_evenly_equitable(g: Multigraph, coloring: EdgeColoring) -> bool:
    """Per vertex: every color degree even, pairwise differences in {0, 2}."""
    if len(coloring.colors) != g.edge_count:
        return False
    deg = _class_degrees(g, list(coloring.colors), coloring.k)
    for v in range(g.vertex_count):
        row = deg[v][1:]
        if any(d % 2 for d in row):
            return False
        if max(row) - min(row) > 2:
            return False
    return True
