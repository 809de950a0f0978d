"""Quota-respecting subset selection for a pair of laminar families.

Given laminar families over a finite ground set and an integer n, selects
a subset A with floor(|P|/n) <= |A & P| <= ceil(|P|/n) for every member
set P. Implemented as a feasible integral flow: each family forms a
forest by inclusion, member sets become bounded arcs, ground elements
become unit arcs between the two forests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .flows import feasible_circulation


class LaminarContractError(ValueError):
    """Input family is not laminar (or sets fall outside the ground set)."""


@dataclass(frozen=True)
class LaminarFamily:
    ground_size: int
    sets: tuple[frozenset[int], ...]

    @staticmethod
    def of(ground_size: int, sets) -> "LaminarFamily":
        return LaminarFamily(ground_size, tuple(frozenset(s) for s in sets))


def verify_laminar(fam: LaminarFamily) -> bool:
    """True iff every pair of member sets is nested or disjoint."""
    for s in fam.sets:
        for x in s:
            if not (0 <= x < fam.ground_size):
                return False
    sets = fam.sets
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            a, b = sets[i], sets[j]
            if not (a <= b or b <= a or not (a & b)):
                return False
    return True


def _forest(fam: LaminarFamily) -> tuple[list[frozenset[int]], list[int]]:
    """Deduped sets sorted largest-first, with parent indices (-1 for roots)."""
    sets = sorted(set(fam.sets), key=lambda s: (-len(s), sorted(s)))
    parents = [-1] * len(sets)
    for i, s in enumerate(sets):
        # smallest strict superset appears earlier in the size-sorted order
        for j in range(i - 1, -1, -1):
            if s < sets[j]:
                parents[i] = j
                break
    return sets, parents


def select_subset(
    s_size: int, fam_a: LaminarFamily, fam_b: LaminarFamily, n: int
) -> set[int]:
    """Subset meeting the |P|/n quota for every P in either family.

    Elements in no member set are left out (except for n=1, where the
    quota forces the full ground set).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if fam_a.ground_size != s_size or fam_b.ground_size != s_size:
        raise LaminarContractError("families must share the ground set")
    for fam in (fam_a, fam_b):
        if not verify_laminar(fam):
            raise LaminarContractError("family is not laminar")
    if n == 1:
        return set(range(s_size))

    sets_a, par_a = _forest(fam_a)
    sets_b, par_b = _forest(fam_b)

    # Node layout: 0=source, 1=sink, then one node per member set.
    src, snk = 0, 1
    node_a = [2 + i for i in range(len(sets_a))]
    node_b = [2 + len(sets_a) + i for i in range(len(sets_b))]
    num_nodes = 2 + len(sets_a) + len(sets_b)

    arcs: list[tuple[int, int, int, int]] = []
    for i, s in enumerate(sets_a):
        tail = src if par_a[i] < 0 else node_a[par_a[i]]
        arcs.append((tail, node_a[i], len(s) // n, -(-len(s) // n)))
    for i, s in enumerate(sets_b):
        head = snk if par_b[i] < 0 else node_b[par_b[i]]
        arcs.append((node_b[i], head, len(s) // n, -(-len(s) // n)))

    def minimal_index(sets: list[frozenset[int]], x: int) -> int:
        best = -1
        for i, s in enumerate(sets):  # later entries are smaller
            if x in s:
                best = i
        return best

    element_arcs = []
    for x in range(s_size):
        ia = minimal_index(sets_a, x)
        ib = minimal_index(sets_b, x)
        if ia < 0 and ib < 0:
            element_arcs.append(None)  # unconstrained; excluded by default
            continue
        tail = src if ia < 0 else node_a[ia]
        head = snk if ib < 0 else node_b[ib]
        element_arcs.append(len(arcs))
        arcs.append((tail, head, 0, 1))
    arcs.append((snk, src, 0, s_size))

    flow = feasible_circulation(num_nodes, arcs)
    if flow is None:
        raise RuntimeError(
            "no quota-respecting subset found; one always exists for laminar "
            "inputs, so this indicates a bug"
        )
    return {x for x in range(s_size) if element_arcs[x] is not None and flow[element_arcs[x]] == 1}


def quota_ok(selected: set[int], fam: LaminarFamily, n: int) -> bool:
    """Check the floor/ceil quota of every member set against a selection."""
    for s in fam.sets:
        hit = len(selected & s)
        if not (len(s) // n <= hit <= -(-len(s) // n)):
            return False
    return True
