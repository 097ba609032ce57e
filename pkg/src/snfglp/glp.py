"""Deciding the good labeling property (GLP).

A configuration has GLP when every cell can be assigned a rotation
offset r in Z_k such that the induced vertex labels (vertex j of a cell
with offset r gets label (j + r) mod k) agree at every shared vertex.
Sharing vertex indices (j_a, j_b) forces r_b - r_a = j_a - j_b mod k,
so the offsets form a difference-constraint system over Z_k whose only
obstructions are cycles with nonzero weight sum.

Deciders provided:
  * decide_glp       -- spanning-forest propagation, any k.
  * decide_glp_even  -- bipartiteness of the adjacency graph (even k).
  * decide_glp_odd   -- rotation-count criterion k | (c - d) (odd k).
  * glp_via_slices   -- reduction to one or two angular slices.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .cyclotomic import (
    CycInt,
    cyc_is_zero,
    cyc_reflect,
    to_cartesian,
)
from .model import (
    Adjacency,
    Cell,
    FractalSpec,
    SpecError,
    _scaled_positions,
    find_adjacencies,
    vertices,
)


class DisconnectedSpec(ValueError):
    """Raised when a decider needs a connected non-partial configuration."""


class LabelingError(ValueError):
    """Raised when a labeling does not cover every vertex of the spec."""


@dataclass(frozen=True)
class ConstraintGraph:
    k: int
    n: int
    edges: tuple[Adjacency, ...]
    tree: tuple[Adjacency, ...]
    nontree: tuple[Adjacency, ...]
    component: tuple[int, ...]
    parent: tuple[int, ...]        # -1 at component roots
    parent_edge: tuple[int, ...]   # index into edges, -1 at roots
    depth: tuple[int, ...]

    @property
    def component_count(self) -> int:
        return max(self.component) + 1

    def weight(self, u: int, v: int) -> int:
        """Constraint weight for traversing u -> v: r_v = r_u + weight mod k."""
        for e in self.edges:
            if (e.a, e.b) == (u, v):
                return (e.ja - e.jb) % self.k
            if (e.a, e.b) == (v, u):
                return (e.jb - e.ja) % self.k
        raise KeyError(f"no edge between {u} and {v}")


@dataclass(frozen=True)
class Labeling:
    k: int
    offsets: dict[int, int]
    labels: dict[CycInt, int]


@dataclass(frozen=True)
class Verdict:
    glp: bool
    labeling: Labeling | None = None
    witness: tuple[int, ...] | None = None
    classes: dict[int, int] | None = None

    def serialize(self) -> str:
        if self.glp:
            lines = ["GLP"]
            assert self.labeling is not None
            for i in sorted(self.labeling.offsets):
                lines.append(f"offset {i} {self.labeling.offsets[i]}")
        else:
            assert self.witness is not None
            lines = ["NOGLP", "cycle " + " ".join(str(i) for i in self.witness)]
        return "\n".join(lines) + "\n"


def edge_weight(e: Adjacency, k: int) -> int:
    """Weight for the stored direction a -> b."""
    return (e.ja - e.jb) % k


def build_constraint_graph(spec: FractalSpec) -> ConstraintGraph:
    """Adjacency graph with Z_k weights, spanning forest, and fundamental edges.

    Deterministic: edges sorted by (a, b), forest grown breadth-first
    from the lowest-index cell of each component.  Pairs sharing two or
    more vertices are rejected here; hull overlaps without shared
    vertices are validate's concern.
    """
    edges, violation = find_adjacencies(spec)
    if violation is not None:
        raise SpecError(f"cells {violation} violate nesting (share >= 2 vertices)")
    n = spec.n
    adj: dict[int, list[tuple[int, int]]] = {i: [] for i in range(n)}
    for idx, e in enumerate(edges):
        adj[e.a].append((e.b, idx))
        adj[e.b].append((e.a, idx))
    for lst in adj.values():
        lst.sort()

    parent = [-1] * n
    parent_edge = [-1] * n
    depth = [0] * n
    component = [-1] * n
    tree_idx: set[int] = set()
    comp = 0
    for root in range(n):
        if component[root] != -1:
            continue
        component[root] = comp
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v, idx in adj[u]:
                if component[v] == -1:
                    component[v] = comp
                    parent[v] = u
                    parent_edge[v] = idx
                    depth[v] = depth[u] + 1
                    tree_idx.add(idx)
                    queue.append(v)
        comp += 1

    tree = tuple(e for i, e in enumerate(edges) if i in tree_idx)
    nontree = tuple(e for i, e in enumerate(edges) if i not in tree_idx)
    return ConstraintGraph(
        k=spec.k,
        n=n,
        edges=tuple(edges),
        tree=tree,
        nontree=nontree,
        component=tuple(component),
        parent=tuple(parent),
        parent_edge=tuple(parent_edge),
        depth=tuple(depth),
    )


def _propagate_offsets(graph: ConstraintGraph) -> list[int]:
    """Offsets from forest propagation; each component root gets 0."""
    r = [0] * graph.n
    order = sorted(range(graph.n), key=lambda v: graph.depth[v])
    for v in order:
        u = graph.parent[v]
        if u == -1:
            r[v] = 0
            continue
        e = graph.edges[graph.parent_edge[v]]
        w = edge_weight(e, graph.k)
        r[v] = (r[u] + w) % graph.k if (e.a, e.b) == (u, v) else (r[u] - w) % graph.k
    return r


def _tree_cycle(graph: ConstraintGraph, u: int, v: int) -> tuple[int, ...]:
    """Cells along the fundamental cycle of non-tree edge (u, v): u .. lca .. v."""
    path_u = [u]
    path_v = [v]
    a, b = u, v
    while graph.depth[a] > graph.depth[b]:
        a = graph.parent[a]
        path_u.append(a)
    while graph.depth[b] > graph.depth[a]:
        b = graph.parent[b]
        path_v.append(b)
    while a != b:
        a = graph.parent[a]
        b = graph.parent[b]
        path_u.append(a)
        path_v.append(b)
    return tuple(path_u + path_v[:-1][::-1])


def fundamental_cycles(graph: ConstraintGraph) -> list[tuple[int, ...]]:
    """One cycle per non-tree edge, in deterministic edge order."""
    return [_tree_cycle(graph, e.a, e.b) for e in graph.nontree]


def cycle_weight(spec: FractalSpec, cycle: tuple[int, ...]) -> int:
    """Directed weight sum around a cell cycle, mod k."""
    graph = build_constraint_graph(spec)
    total = 0
    for i, u in enumerate(cycle):
        v = cycle[(i + 1) % len(cycle)]
        total += graph.weight(u, v)
    return total % spec.k


def make_labeling(spec: FractalSpec, offsets: dict[int, int]) -> Labeling:
    """Vertex labels induced by per-cell offsets: vertex j gets (j + r) mod k."""
    labels: dict[CycInt, int] = {}
    for cell in spec.cells:
        r = offsets[cell.index]
        for j, v in enumerate(vertices(cell)):
            lab = (j + r) % spec.k
            prev = labels.get(v)
            if prev is not None and prev != lab:
                raise SpecError(f"offsets disagree at a shared vertex of cell {cell.index}")
            labels[v] = lab
    return Labeling(spec.k, dict(offsets), labels)


def _require_connected(spec: FractalSpec, graph: ConstraintGraph) -> None:
    if not spec.partial and graph.component_count > 1:
        raise DisconnectedSpec(
            f"non-partial spec has {graph.component_count} components"
        )


def decide_glp(spec: FractalSpec) -> Verdict:
    """General decider: propagate offsets over the forest, check non-tree edges.

    Partial specs may be disconnected; each component is labeled
    independently with its root offset normalized to 0.
    """
    graph = build_constraint_graph(spec)
    _require_connected(spec, graph)
    r = _propagate_offsets(graph)
    k = spec.k
    for e in graph.nontree:
        if r[e.b] != (r[e.a] + edge_weight(e, k)) % k:
            return Verdict(glp=False, witness=_tree_cycle(graph, e.a, e.b))
    offsets = {i: r[i] for i in range(graph.n)}
    return Verdict(glp=True, labeling=make_labeling(spec, offsets))


def decide_glp_even(spec: FractalSpec) -> Verdict:
    """Even-k decider: GLP iff the adjacency graph is bipartite.

    Every edge weight is k/2, so a cycle violates exactly when its
    length is odd.  On success the verdict carries the two classes
    (1 and 2) and the offsets 0 / k/2 they induce.
    """
    if spec.k % 2 != 0:
        raise ValueError("decide_glp_even requires even k")
    graph = build_constraint_graph(spec)
    _require_connected(spec, graph)
    k = spec.k
    for e in graph.edges:
        if edge_weight(e, k) != k // 2:
            raise SpecError(
                f"edge ({e.a}, {e.b}) has weight {edge_weight(e, k)}; "
                "even-k adjacency must have weight k/2"
            )
    color = [c % 2 for c in _colors_from_depth(graph)]
    for e in graph.nontree:
        if color[e.a] == color[e.b]:
            return Verdict(glp=False, witness=_tree_cycle(graph, e.a, e.b))
    offsets = {i: color[i] * (k // 2) for i in range(graph.n)}
    classes = {i: color[i] + 1 for i in range(graph.n)}
    return Verdict(glp=True, labeling=make_labeling(spec, offsets), classes=classes)


def _colors_from_depth(graph: ConstraintGraph) -> list[int]:
    return [graph.depth[v] for v in range(graph.n)]


def decide_glp_odd(spec: FractalSpec) -> Verdict:
    """Odd-k decider: every cycle's rotation counts must satisfy k | (c - d).

    Traversing an edge a -> b rotates the cell by angle pi*(k+1)/k
    (class +1, shared indices j_b - j_a = (k+1)/2) or pi*(k-1)/k
    (class -1, j_b - j_a = (k-1)/2); c and d count the two classes
    around a cycle.
    """
    k = spec.k
    if k % 2 != 1:
        raise ValueError("decide_glp_odd requires odd k")
    graph = build_constraint_graph(spec)
    _require_connected(spec, graph)
    plus = (k + 1) // 2

    def edge_class(e: Adjacency) -> int:
        d = (e.jb - e.ja) % k
        if d == plus:
            return 1
        if d == plus - 1:
            return -1
        raise SpecError(
            f"edge ({e.a}, {e.b}) has shared-index difference {d}; "
            "odd-k adjacency must rotate by (k+-1)/k * pi"
        )

    rho = [0] * graph.n
    for v in sorted(range(graph.n), key=lambda v: graph.depth[v]):
        u = graph.parent[v]
        if u == -1:
            continue
        e = graph.edges[graph.parent_edge[v]]
        cls = edge_class(e)
        rho[v] = rho[u] + (cls if (e.a, e.b) == (u, v) else -cls)
    for e in graph.nontree:
        c_minus_d = rho[e.b] - rho[e.a] - edge_class(e)
        if c_minus_d % k != 0:
            return Verdict(glp=False, witness=_tree_cycle(graph, e.a, e.b))
    r = _propagate_offsets(graph)
    return Verdict(glp=True, labeling=make_labeling(spec, {i: r[i] for i in range(graph.n)}))


@dataclass(frozen=True)
class KClassification:
    always_glp: bool
    reason: str | None  # 'prime' | 'power_of_two'

    def __str__(self) -> str:
        return f"AlwaysGLP({self.reason})" if self.always_glp else "Conditional"


def classify_k(k: int) -> KClassification:
    """Fast classification: prime or power-of-two k always has GLP."""
    if k < 3:
        raise ValueError("k must be >= 3")
    if k >= 2 and all(k % p for p in range(2, int(math.isqrt(k)) + 1)):
        return KClassification(True, "prime")
    if k & (k - 1) == 0:
        return KClassification(True, "power_of_two")
    return KClassification(False, None)


def odd_cycle_scan(spec: FractalSpec) -> list[tuple[int, ...]]:
    """Fundamental cycles of odd length below k; each one certifies no GLP.

    An empty result is inconclusive.
    """
    if spec.k % 2 != 1:
        raise ValueError("odd_cycle_scan requires odd k")
    graph = build_constraint_graph(spec)
    return [
        cyc for cyc in fundamental_cycles(graph)
        if len(cyc) % 2 == 1 and len(cyc) < spec.k
    ]


@dataclass(frozen=True)
class SliceAssignment:
    k: int
    sector: tuple[int | None, ...]  # 1..k, or None for the central cell

    def cells_in(self, i: int) -> list[int]:
        return [idx for idx, s in enumerate(self.sector) if s == i]

    @property
    def central_cells(self) -> list[int]:
        return [idx for idx, s in enumerate(self.sector) if s is None]


def _on_axis_ray(p: CycInt, k: int) -> int | None:
    """Vertex-ray index j if p lies on the open ray through zeta^j, else None.

    Membership on the full line is exact (fixed by the reflection across
    the axis); the ray side is a clean float sign test.
    """
    if cyc_is_zero(p):
        return None
    x, y = to_cartesian(p)
    for j in range(k):
        if cyc_reflect(p, (2 * j) % k) == p:
            ang = 2.0 * math.pi * j / k
            if x * math.cos(ang) + y * math.sin(ang) > 0:
                return j
    return None


def slices(spec: FractalSpec) -> SliceAssignment:
    """Assign each cell to the angular sector holding its barycenter.

    Sector i covers angles in ((i-1) * 2pi/k, i * 2pi/k]; a cell exactly
    on a vertex ray belongs to the sector whose counter-clockwise edge
    that ray is.  The central cell (barycenter at the global barycenter)
    belongs to no sector.
    """
    k = spec.k
    positions = _scaled_positions(spec)
    sector: list[int | None] = []
    for p in positions:
        if cyc_is_zero(p):
            sector.append(None)
            continue
        ray = _on_axis_ray(p, k)
        if ray is not None:
            sector.append((ray - 1) % k + 1)
            continue
        x, y = to_cartesian(p)
        theta = math.atan2(y, x) % (2.0 * math.pi)
        sector.append(int(theta * k / (2.0 * math.pi)) + 1)
    return SliceAssignment(k, tuple(sector))


def closed_slices(spec: FractalSpec) -> list[frozenset[int]]:
    """Cell sets of the closed slices; on-axis cells belong to both neighbors.

    Entry i-1 holds closed slice i.  The central cell is in no closed
    slice.
    """
    k = spec.k
    positions = _scaled_positions(spec)
    open_assignment = slices(spec)
    members: list[set[int]] = [set() for _ in range(k)]
    for idx, p in enumerate(positions):
        s = open_assignment.sector[idx]
        if s is None:
            continue
        members[s - 1].add(idx)
        ray = _on_axis_ray(p, k)
        if ray is not None:
            members[ray % k].add(idx)  # right edge of the next sector's closure
    return [frozenset(m) for m in members]


def slice_cells(spec: FractalSpec, ids, closed: bool = False) -> tuple[int, ...]:
    """Cell indices in the union of the chosen (closed) slices, ascending."""
    ids = sorted(set(ids))
    if not ids:
        raise ValueError("empty slice selection")
    k = spec.k
    for i in ids:
        if not 1 <= i <= k:
            raise ValueError(f"slice id {i} out of range 1..{k}")
    if closed:
        sets = closed_slices(spec)
        chosen = set().union(*(sets[i - 1] for i in ids))
    else:
        assignment = slices(spec)
        chosen = {idx for idx, s in enumerate(assignment.sector) if s in ids}
    if not chosen:
        raise ValueError("selected slices contain no cells")
    return tuple(sorted(chosen))


def slice_subspec(spec: FractalSpec, ids, closed: bool = False) -> FractalSpec:
    """Partial spec of the chosen (closed) slices, cells in original order."""
    chosen = slice_cells(spec, ids, closed)
    cells = tuple(
        Cell(spec.cells[orig].barycenter, new) for new, orig in enumerate(chosen)
    )
    return FractalSpec(spec.k, cells, partial=True)


def _remap_verdict(sub: Verdict, mapping: tuple[int, ...]) -> Verdict:
    if sub.glp:
        assert sub.labeling is not None
        offsets = {mapping[i]: r for i, r in sub.labeling.offsets.items()}
        labeling = Labeling(sub.labeling.k, offsets, dict(sub.labeling.labels))
        classes = (
            {mapping[i]: c for i, c in sub.classes.items()} if sub.classes else None
        )
        return Verdict(glp=True, labeling=labeling, classes=classes)
    assert sub.witness is not None
    return Verdict(glp=False, witness=tuple(mapping[i] for i in sub.witness))


def _central_cycle(spec: FractalSpec, central: int) -> tuple[int, ...] | None:
    """A 3-cycle through the central cell and two mutually adjacent neighbors."""
    edges, _ = find_adjacencies(spec)
    neighbor_sets: dict[int, set[int]] = {i: set() for i in range(spec.n)}
    for e in edges:
        neighbor_sets[e.a].add(e.b)
        neighbor_sets[e.b].add(e.a)
    around = sorted(neighbor_sets[central])
    for u in around:
        for v in around:
            if u < v and v in neighbor_sets[u]:
                return (central, u, v)
    return None


def glp_via_slices(spec: FractalSpec) -> Verdict:
    """Decide GLP on a reduced region instead of the full configuration.

    Routing: a hexagonal configuration with a central cell can never be
    labeled (the six forced neighbors create odd cycles); k in {3, 4, 5}
    always can; otherwise the verdict of one closed slice (even k, and
    k = 6 without central cell) or of two neighboring open slices
    (odd k) transfers to the whole configuration.
    """
    if spec.partial:
        raise ValueError("glp_via_slices requires a non-partial spec")
    k = spec.k
    assignment = slices(spec)
    central = assignment.central_cells
    if k == 6 and central:
        cyc = _central_cycle(spec, central[0])
        if cyc is not None:
            return Verdict(glp=False, witness=cyc)
        fallback = decide_glp(spec)  # defensive; a valid spec always has the 3-cycle
        return fallback
    if k in (3, 4, 5):
        return decide_glp(spec)
    if k % 2 == 0:
        chosen = slice_cells(spec, [1], closed=True)
    else:
        chosen = slice_cells(spec, [1, 2], closed=False)
    cells = tuple(
        Cell(spec.cells[orig].barycenter, new) for new, orig in enumerate(chosen)
    )
    sub = FractalSpec(spec.k, cells, partial=True)
    return _remap_verdict(decide_glp(sub), chosen)


def check_labeling(spec: FractalSpec, labeling: Labeling) -> bool:
    """Independent verification: each cell's labels are one rotation of 0..k-1.

    Scans cells directly; shared vertices agree automatically because a
    labeling maps each point to a single label.
    """
    k = spec.k
    for cell in spec.cells:
        labs = []
        for v in vertices(cell):
            lab = labeling.labels.get(v)
            if lab is None:
                raise LabelingError(f"vertex of cell {cell.index} has no label")
            labs.append(lab)
        r = (labs[0] - 0) % k
        if any((labs[j] - j) % k != r for j in range(k)):
            return False
    return True
