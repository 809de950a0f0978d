"""Loopless eta-detachment of an edge-colored multigraph.

Splits each fused vertex step by step. A split groups the endpoint slots
at the vertex into cells (one per color and neighbor, loops forming
their own cell per color) and chooses how many slots each cell moves to
the fresh vertex. Every count is held inside its floor/ceil quota window
-- per cell, per color, per neighbor, and in total -- by a feasible
integral circulation, which yields the degree and multiplicity quotas.

A color class's component structure after the split depends only on
those counts, because parallel edges to the same neighbor are
interchangeable. So for color classes whose per-vertex degree shares are
even, the split searches the count vectors inside their windows for one
that keeps the class's component count unchanged, re-checking the
cross-color circulation before committing.

The output is gated by ``verify_detachment``; construction retries with
shuffled search orders before giving up.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from .flows import feasible_circulation
from .multigraph import AmalgamationSpec, EdgeColoring, Multigraph, approx

_LOOP = -1  # neighbor key for loop endpoints


class DetachmentContractError(ValueError):
    """Precondition violation (eta(v)=1 with loops present, bad shapes)."""


class DetachmentError(RuntimeError):
    """Construction failed to satisfy the detachment properties."""

    def __init__(self, violated: list[str]):
        super().__init__(f"detachment failed properties: {', '.join(violated)}")
        self.violated = violated


@dataclass(frozen=True)
class DetachmentResult:
    g: Multigraph
    coloring: EdgeColoring
    spec: AmalgamationSpec
    labels: dict[int, list[int]]  # fused vertex -> its detached vertices


@dataclass
class DetachmentReport:
    structural_ok: bool
    structural_errors: list[str]
    properties: dict[str, bool]
    details: dict[str, str] = field(default_factory=dict)

    @property
    def all_passed(self) -> bool:
        return self.structural_ok and all(self.properties.values())


def edge_component_count(edges) -> int:
    """Components of the subgraph induced by an edge list.

    Only vertices incident to at least one edge participate; a loop
    counts its vertex as incident. An empty list has zero components.
    """
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for a, b in edges:
        if a not in parent:
            parent[a] = a
        if b not in parent:
            parent[b] = b
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return sum(1 for x in parent if parent[x] == x)


def qualifying_colors(h: Multigraph, coloring: EdgeColoring, eta: Sequence[int]) -> list[int]:
    """Colors j with d_{H(j)}(v)/eta(v) an even integer at every vertex."""
    out = []
    deg = _color_degrees(h, coloring)
    for j in range(1, coloring.k + 1):
        if all(deg[v][j] % (2 * eta[v]) == 0 for v in range(h.vertex_count)):
            out.append(j)
    return out


def _color_degrees(g: Multigraph, coloring: EdgeColoring) -> list[list[int]]:
    deg = [[0] * (coloring.k + 1) for _ in range(g.vertex_count)]
    for e, (a, b) in enumerate(g.edges):
        deg[a][coloring.colors[e]] += 1
        deg[b][coloring.colors[e]] += 1
    return deg


def detach(
    h: Multigraph,
    coloring: EdgeColoring,
    eta: Sequence[int],
    seed: int = 0,
    max_attempts: int = 40,
) -> DetachmentResult:
    """Loopless eta-detachment satisfying the degree/multiplicity/component quotas."""
    if len(eta) != h.vertex_count:
        raise DetachmentContractError("eta must be total on V(H)")
    if len(coloring.colors) != h.edge_count:
        raise DetachmentContractError("coloring does not match H")
    for v, n in enumerate(eta):
        if n < 1:
            raise DetachmentContractError(f"eta({v}) must be positive")
        if n == 1 and h.loop_count(v) > 0:
            raise DetachmentContractError(f"eta({v})=1 but vertex {v} has loops")

    quals = qualifying_colors(h, coloring, eta)
    last_report = None
    for attempt in range(max_attempts):
        rng = random.Random(seed * 1000003 + attempt)
        result = _detach_once(h, coloring, tuple(eta), quals, attempt, rng)
        if result is None:
            continue
        report = verify_detachment(h, coloring, result)
        if report.all_passed:
            return result
        last_report = report
    violated = ["construction"] if last_report is None else [
        name for name, ok in last_report.properties.items() if not ok
    ]
    raise DetachmentError(violated)


def _detach_once(
    h: Multigraph,
    coloring: EdgeColoring,
    eta: tuple[int, ...],
    quals: list[int],
    attempt: int,
    rng: random.Random,
) -> DetachmentResult | None:
    endpoints = [list(pair) for pair in h.edges]
    colors = coloring.colors
    phi = list(range(h.vertex_count))
    labels: dict[int, list[int]] = {v: [] for v in range(h.vertex_count)}
    remaining = list(eta)
    vertex_count = h.vertex_count

    for u in range(h.vertex_count):
        while remaining[u] > 1:
            delta = remaining[u]
            ok = _split_vertex(
                endpoints, colors, vertex_count, u, delta, quals, attempt, rng
            )
            if not ok:
                return None
            new_vertex = vertex_count
            vertex_count += 1
            phi.append(phi[u])
            labels[u].append(new_vertex)
            remaining[u] -= 1
        labels[u].append(u)

    g = Multigraph(vertex_count, tuple((a, b) for a, b in endpoints))
    spec = AmalgamationSpec(eta, tuple(phi))
    return DetachmentResult(g, EdgeColoring(coloring.k, colors), spec, labels)


def _split_vertex(
    endpoints: list[list[int]],
    colors: tuple[int, ...],
    vertex_count: int,
    u: int,
    delta: int,
    quals: list[int],
    attempt: int,
    rng: random.Random,
) -> bool:
    """Move a quota share of u's endpoint slots onto a fresh vertex.

    Mutates ``endpoints`` in place on success (new vertex id is
    ``vertex_count``). Returns False if no component-preserving count
    assignment was found within this attempt's search budget.
    """
    # cell = (color, neighbor); loops at u form the cell (color, _LOOP)
    cell_slots: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for eid, (a, b) in enumerate(endpoints):
        other = _LOOP if a == b == u else (b if a == u else a if b == u else None)
        if a == u:
            cell_slots.setdefault((colors[eid], other), []).append((eid, 0))
        if b == u:
            cell_slots.setdefault((colors[eid], other), []).append((eid, 1))
    if not cell_slots:
        return True  # isolated vertex splits into isolated vertices

    counts = _SplitCounts(endpoints, colors, vertex_count, u, delta, cell_slots)
    assignment = counts.solve(quals, attempt, rng)
    if assignment is None:
        return False

    new_vertex = vertex_count
    for cell, take in assignment.items():
        slots = cell_slots[cell]
        if cell[1] == _LOOP:
            # one endpoint per loop, never both, so no loop survives at the end
            loops = sorted({eid for eid, _ in slots})
            if attempt > 0:
                rng.shuffle(loops)
            moved = [(eid, 0) for eid in loops[:take]]
        else:
            if attempt > 0:
                rng.shuffle(slots)
            moved = slots[:take]
        for eid, end in moved:
            endpoints[eid][end] = new_vertex
    return True


class _SplitCounts:
    """Search for per-cell move counts that respect every quota window.

    Windows: each cell, each color (row sum), each neighbor (column sum)
    and the grand total must land in [floor(size/delta), ceil(size/delta)].
    Joint feasibility across colors is a circulation on the color/neighbor
    bipartite graph; component preservation for a color with even degree
    shares is checked on its own row via union-find.
    """

    def __init__(self, endpoints, colors, vertex_count, u, delta, cell_slots):
        self.endpoints = endpoints
        self.colors = colors
        self.vertex_count = vertex_count
        self.u = u
        self.delta = delta
        self.cell_sizes = {cell: len(slots) for cell, slots in cell_slots.items()}
        self.color_ids = sorted({c for c, _ in self.cell_sizes})
        self.neighbor_ids = sorted({z for _, z in self.cell_sizes})
        self.color_sizes = {c: 0 for c in self.color_ids}
        self.neighbor_sizes = {z: 0 for z in self.neighbor_ids}
        for (c, z), size in self.cell_sizes.items():
            self.color_sizes[c] += size
            self.neighbor_sizes[z] += size
        self.total = sum(self.cell_sizes.values())
        self.budget = 20_000

    def _window(self, size: int) -> tuple[int, int]:
        return size // self.delta, -(-size // self.delta)

    def _circulation(self, fixed: dict[tuple[int, int], int]):
        """Counts for every cell, honoring ``fixed`` rows, or None."""
        src, snk = 0, 1
        color_node = {c: 2 + i for i, c in enumerate(self.color_ids)}
        nbr_node = {
            z: 2 + len(self.color_ids) + i for i, z in enumerate(self.neighbor_ids)
        }
        arcs: list[tuple[int, int, int, int]] = []
        cell_arc: dict[tuple[int, int], int] = {}
        for c in self.color_ids:
            lo, hi = self._window(self.color_sizes[c])
            arcs.append((src, color_node[c], lo, hi))
        for cell in sorted(self.cell_sizes):
            c, z = cell
            if cell in fixed:
                lo = hi = fixed[cell]
            else:
                lo, hi = self._window(self.cell_sizes[cell])
            cell_arc[cell] = len(arcs)
            arcs.append((color_node[c], nbr_node[z], lo, hi))
        for z in self.neighbor_ids:
            lo, hi = self._window(self.neighbor_sizes[z])
            arcs.append((nbr_node[z], snk, lo, hi))
        arcs.append((snk, src, *self._window(self.total)))
        flow = feasible_circulation(2 + len(self.color_ids) + len(self.neighbor_ids), arcs)
        if flow is None:
            return None
        return {cell: flow[idx] for cell, idx in cell_arc.items()}

    def _row_preserves_components(self, j: int, row: dict[int, int]) -> bool:
        """Would moving ``row`` of color j's slots keep its component count?"""
        before: list[tuple[int, int]] = []
        after: list[tuple[int, int]] = []
        w = self.vertex_count
        for eid, (a, b) in enumerate(self.endpoints):
            if self.colors[eid] != j:
                continue
            before.append((a, b))
            if self.u not in (a, b):
                after.append((a, b))
        for z, take in row.items():
            keep = self.cell_sizes[(j, z)] - take
            if z == _LOOP:
                # each moved loop endpoint turns one loop into a u--w edge
                untouched_loops = self.cell_sizes[(j, z)] // 2 - take
                after.extend([(self.u, w)] * (take > 0))
                after.extend([(self.u, self.u)] * (untouched_loops > 0))
                continue
            if take:
                after.append((w, z))
            if keep:
                after.append((self.u, z))
        return edge_component_count(after) == edge_component_count(before)

    def solve(self, quals, attempt: int, rng: random.Random):
        """Full count assignment, or None if the search budget runs out."""
        qual_present = [j for j in quals if j in self.color_sizes and self.color_sizes[j]]
        fixed: dict[tuple[int, int], int] = {}
        self._nodes = 0

        def place_color(qi: int):
            if self._nodes > self.budget:
                return None
            if qi == len(qual_present):
                return self._circulation(fixed)
            j = qual_present[qi]
            cells = [z for (c, z) in self.cell_sizes if c == j]
            cells.sort()
            if attempt > 0:
                rng.shuffle(cells)
            target = self.color_sizes[j] // self.delta  # exact: delta divides
            windows = [self._window(self.cell_sizes[(j, z)]) for z in cells]
            suffix_hi = [0] * (len(cells) + 1)
            suffix_lo = [0] * (len(cells) + 1)
            for i in range(len(cells) - 1, -1, -1):
                suffix_lo[i] = suffix_lo[i + 1] + windows[i][0]
                suffix_hi[i] = suffix_hi[i + 1] + windows[i][1]
            row: dict[int, int] = {}

            def place_cell(ci: int, remaining: int):
                self._nodes += 1
                if self._nodes > self.budget:
                    return None
                if ci == len(cells):
                    if remaining == 0 and self._row_preserves_components(j, row):
                        for z in cells:
                            fixed[(j, z)] = row[z]
                        # prune early: the other colors must still fit
                        if self._circulation(fixed) is not None:
                            found = place_color(qi + 1)
                            if found is not None:
                                return found
                        for z in cells:
                            del fixed[(j, z)]
                    return None
                lo, hi = windows[ci]
                lo = max(lo, remaining - suffix_hi[ci + 1])
                hi = min(hi, remaining - suffix_lo[ci + 1])
                values = list(range(lo, hi + 1))
                if attempt > 0:
                    rng.shuffle(values)
                for x in values:
                    row[cells[ci]] = x
                    found = place_cell(ci + 1, remaining - x)
                    if found is not None:
                        return found
                row.pop(cells[ci], None)
                return None

            return place_cell(0, target)

        return place_color(0)


# ---------------------------------------------------------------------------
# Property verifier


def verify_detachment(
    h: Multigraph, coloring: EdgeColoring, result: DetachmentResult
) -> DetachmentReport:
    """Exact evaluation of the seven detachment properties plus structure."""
    errors = []
    g, spec = result.g, result.spec
    eta, phi = spec.eta, spec.phi
    if len(eta) != h.vertex_count:
        errors.append("eta not total on V(H)")
    if len(phi) != g.vertex_count:
        errors.append("phi not total on V(G)")
    if g.edge_count != h.edge_count:
        errors.append("edge count changed")
    if result.coloring.k != coloring.k or result.coloring.colors != coloring.colors:
        errors.append("coloring was not carried over by edge identity")
    if not errors:
        for e, (a, b) in enumerate(g.edges):
            ha, hb = h.edges[e]
            if {phi[a], phi[b]} != {ha, hb}:
                errors.append(f"edge {e} endpoints disagree with phi")
                break
    if any(a == b for a, b in g.edges):
        errors.append("detached graph has loops")
    if errors:
        return DetachmentReport(False, errors, {})

    k = coloring.k
    siblings = [[w for w in range(g.vertex_count) if phi[w] == u] for u in range(h.vertex_count)]
    deg_h = _color_degrees(h, coloring)
    deg_g = _color_degrees(g, result.coloring)
    dh = h.degrees()
    dg = g.degrees()

    props: dict[str, bool] = {}
    details: dict[str, str] = {}

    props["A1"] = all(
        approx(dg[w], dh[u] / eta[u]) for u in range(h.vertex_count) for w in siblings[u]
    )
    props["A2"] = all(
        approx(deg_g[w][j], deg_h[u][j] / eta[u])
        for u in range(h.vertex_count)
        for w in siblings[u]
        for j in range(1, k + 1)
    )

    mult_g: dict[tuple[int, int], int] = {}
    mult_gj: dict[tuple[int, int, int], int] = {}
    for e, (a, b) in enumerate(g.edges):
        key = (min(a, b), max(a, b))
        mult_g[key] = mult_g.get(key, 0) + 1
        ckey = (min(a, b), max(a, b), result.coloring.colors[e])
        mult_gj[ckey] = mult_gj.get(ckey, 0) + 1
    loops_h = [h.loop_count(v) for v in range(h.vertex_count)]
    loops_hj = [[0] * (k + 1) for _ in range(h.vertex_count)]
    mult_h: dict[tuple[int, int], int] = {}
    mult_hj: dict[tuple[int, int, int], int] = {}
    for e, (a, b) in enumerate(h.edges):
        c = coloring.colors[e]
        if a == b:
            loops_hj[a][c] += 1
        else:
            key = (min(a, b), max(a, b))
            mult_h[key] = mult_h.get(key, 0) + 1
            mult_hj[(key[0], key[1], c)] = mult_hj.get((key[0], key[1], c), 0) + 1

    ok3 = ok4 = True
    for u in range(h.vertex_count):
        if eta[u] < 2:
            continue
        pairs = math.comb(eta[u], 2)
        for x in range(len(siblings[u])):
            for y in range(x + 1, len(siblings[u])):
                key = (min(siblings[u][x], siblings[u][y]), max(siblings[u][x], siblings[u][y]))
                if not approx(mult_g.get(key, 0), loops_h[u] / pairs):
                    ok3 = False
                for j in range(1, k + 1):
                    if not approx(mult_gj.get((key[0], key[1], j), 0), loops_hj[u][j] / pairs):
                        ok4 = False
    props["A3"], props["A4"] = ok3, ok4

    ok5 = ok6 = True
    for u in range(h.vertex_count):
        for v in range(u + 1, h.vertex_count):
            denom = eta[u] * eta[v]
            base = mult_h.get((u, v), 0)
            for wu in siblings[u]:
                for wv in siblings[v]:
                    key = (min(wu, wv), max(wu, wv))
                    if not approx(mult_g.get(key, 0), base / denom):
                        ok5 = False
                    for j in range(1, k + 1):
                        if not approx(
                            mult_gj.get((key[0], key[1], j), 0),
                            mult_hj.get((u, v, j), 0) / denom,
                        ):
                            ok6 = False
    props["A5"], props["A6"] = ok5, ok6

    ok7 = True
    for j in qualifying_colors(h, coloring, tuple(eta)):
        ch = edge_component_count(h.edges[e] for e in coloring.class_edge_ids(j))
        cg = edge_component_count(g.edges[e] for e in result.coloring.class_edge_ids(j))
        if cg != ch:
            ok7 = False
            details["A7"] = f"color {j}: {cg} != {ch}"
    props["A7"] = ok7

    return DetachmentReport(True, [], props, details)
