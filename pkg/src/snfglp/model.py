"""Level-1 configurations of planar nested fractals.

A configuration is a number k >= 3 plus a list of cell barycenters in
Z[zeta_k]; every cell is a unit-circumradius regular k-gon whose vertex
j points in direction 2*pi*j/k.  This module validates the defining
axioms (connectivity, nesting, dihedral symmetry, corner coverage,
legal adjacency for odd k, central-cell restrictions), derives the
scaling factor, and round-trips a plain text file format.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .cyclotomic import (
    CycInt,
    cyc_add,
    cyc_conj,
    cyc_div_int,
    cyc_eq,
    cyc_is_zero,
    cyc_reflect,
    cyc_rotate,
    cyc_scale,
    cyc_sub,
    from_coeffs,
    to_cartesian,
    zero,
    zeta,
)

HULL_EPS = 1e-6

CATALOG_NAMES = (
    "sierpinski-gasket",
    "vicsek-cross",
    "sierpinski-hexagon",
    "lindstrom-snowflake",
    "pentagon-ring",
)


class SpecError(ValueError):
    """Malformed configuration (mixed orders, duplicates, bad sizes)."""


class ParseError(SpecError):
    """Unreadable spec text."""


class ScalingError(ValueError):
    """The scaling factor cannot be derived from the configuration."""


@dataclass(frozen=True)
class Cell:
    barycenter: CycInt
    index: int


@dataclass(frozen=True, eq=False)
class FractalSpec:
    k: int
    cells: tuple[Cell, ...]
    partial: bool = False

    def __post_init__(self) -> None:
        if self.k < 3:
            raise SpecError(f"k must be >= 3, got {self.k}")
        if not self.cells:
            raise SpecError("a spec needs at least one cell")
        # A non-partial spec needs N >= k cells, but that is implied by the
        # dihedral-symmetry and corner axioms, so validate() reports it
        # rather than the constructor rejecting the value.
        seen: set[tuple[int, ...]] = set()
        for pos, cell in enumerate(self.cells):
            if cell.barycenter.order != self.k:
                raise SpecError("cell order differs from spec order")
            if cell.index != pos:
                raise SpecError("cell indices must match list positions")
            key = cell.barycenter.canonical_key()
            if key in seen:
                raise SpecError(f"duplicate barycenter at cell {pos}")
            seen.add(key)

    @property
    def n(self) -> int:
        return len(self.cells)

    def barycenters(self) -> list[CycInt]:
        return [c.barycenter for c in self.cells]


def make_spec(k: int, barycenters, partial: bool = False) -> FractalSpec:
    """Build a spec from CycInt barycenters or raw coefficient vectors."""
    cells = []
    for i, b in enumerate(barycenters):
        if not isinstance(b, CycInt):
            b = from_coeffs(k, b)
        cells.append(Cell(b, i))
    return FractalSpec(k, tuple(cells), partial)


def vertices(cell: Cell) -> list[CycInt]:
    """The k vertices barycenter + zeta^j, j = 0..k-1 in order."""
    k = cell.barycenter.order
    return [cyc_add(cell.barycenter, zeta(k, j)) for j in range(k)]


@lru_cache(maxsize=None)
def _steps(k: int) -> tuple[tuple[CycInt, tuple[tuple[int, int], ...]], ...]:
    """All distinct vertex-difference vectors zeta^ja - zeta^jb with their index pairs."""
    order: list[CycInt] = []
    table: dict[tuple[int, ...], list[tuple[int, int]]] = {}
    for ja in range(k):
        for jb in range(k):
            if ja == jb:
                continue
            delta = cyc_sub(zeta(k, ja), zeta(k, jb))
            key = delta.canonical_key()
            if key not in table:
                table[key] = []
                order.append(delta)
            table[key].append((ja, jb))
    return tuple((delta, tuple(table[delta.canonical_key()])) for delta in order)


@lru_cache(maxsize=None)
def _step_table(k: int) -> dict[tuple[int, ...], tuple[tuple[int, int], ...]]:
    """Map canonical(zeta^ja - zeta^jb) -> all index pairs producing it."""
    return {delta.canonical_key(): pairs for delta, pairs in _steps(k)}


def shared_vertices(a: Cell, b: Cell) -> list[tuple[int, int]]:
    """Index pairs (j_a, j_b) with a.barycenter + zeta^j_a == b.barycenter + zeta^j_b."""
    if a.barycenter.order != b.barycenter.order:
        raise SpecError("cells of different order")
    k = a.barycenter.order
    delta = cyc_sub(b.barycenter, a.barycenter)
    return list(_step_table(k).get(delta.canonical_key(), ()))


def _polygon(cell: Cell) -> list[tuple[float, float]]:
    return [to_cartesian(v) for v in vertices(cell)]


def _hulls_overlap(a: Cell, b: Cell) -> bool:
    """Separating-axis test: do the open hull interiors intersect?

    Both polygons are translates of one regular k-gon, so its k edge
    normals are the only axes needed.  Overlap below HULL_EPS on some
    axis means separated or merely touching.
    """
    k = a.barycenter.order
    pa = _polygon(a)
    pb = _polygon(b)
    for i in range(k):
        x0, y0 = pa[i]
        x1, y1 = pa[(i + 1) % k]
        nx, ny = y1 - y0, x0 - x1
        proj_a = [nx * x + ny * y for x, y in pa]
        proj_b = [nx * x + ny * y for x, y in pb]
        gap = min(max(proj_a), max(proj_b)) - max(min(proj_a), min(proj_b))
        if gap <= HULL_EPS:
            return False
    return True


def cells_conflict(a: Cell, b: Cell) -> bool:
    """True iff the cells share >= 2 vertices or their hull interiors overlap."""
    shared = shared_vertices(a, b)
    if len(shared) >= 2:
        return True
    ax, ay = to_cartesian(a.barycenter)
    bx, by = to_cartesian(b.barycenter)
    d2 = (ax - bx) ** 2 + (ay - by) ** 2
    if d2 >= 4.0:
        return False
    return _hulls_overlap(a, b)


def global_barycenter(spec: FractalSpec) -> tuple[CycInt, int]:
    """Exact mean of the cell barycenters as (sum, count)."""
    total = zero(spec.k)
    for cell in spec.cells:
        total = cyc_add(total, cell.barycenter)
    return total, spec.n


def _scaled_positions(spec: FractalSpec) -> list[CycInt]:
    """n * (barycenter - global barycenter) for every cell; exact and integral."""
    total, n = global_barycenter(spec)
    return [cyc_sub(cyc_scale(c.barycenter, n), total) for c in spec.cells]


@dataclass(frozen=True)
class Adjacency:
    """Cell pair sharing exactly one vertex, with the shared vertex indices."""

    a: int
    b: int
    ja: int
    jb: int


def _close_pairs(spec: FractalSpec) -> list[tuple[int, int]]:
    """Cell index pairs with barycenter distance <= 2 (+ float slack).

    Bucket size 2.5 guarantees such pairs sit in the same or adjacent
    buckets even when a distance-2 pair straddles bucket boundaries.
    """
    coords = [to_cartesian(c.barycenter) for c in spec.cells]
    grid: dict[tuple[int, int], list[int]] = {}
    for i, (x, y) in enumerate(coords):
        grid.setdefault((math.floor(x / 2.5), math.floor(y / 2.5)), []).append(i)
    pairs = []
    for (gx, gy), members in grid.items():
        for dx in (0, 1):
            for dy in (-1, 0, 1):
                if dx == 0 and dy < 0:
                    continue
                other = grid.get((gx + dx, gy + dy))
                if other is None:
                    continue
                for i in members:
                    for j in other:
                        if (dx, dy) == (0, 0) and j <= i:
                            continue
                        xi, yi = coords[i]
                        xj, yj = coords[j]
                        if (xi - xj) ** 2 + (yi - yj) ** 2 < 4.0 + 1e-9:
                            pairs.append((min(i, j), max(i, j)))
    return sorted(set(pairs))


def find_adjacencies(spec: FractalSpec) -> tuple[list[Adjacency], tuple[int, int] | None]:
    """All single-shared-vertex pairs, plus the first nesting violation if any.

    A pair sharing two or more vertices violates nesting and is reported
    as a witness rather than as an edge.
    """
    k = spec.k
    table = _step_table(k)
    edges: list[Adjacency] = []
    violation: tuple[int, int] | None = None
    # shared vertices force barycenter distance <= 2, so only close pairs qualify
    for i, j in _close_pairs(spec):
        delta = cyc_sub(spec.cells[j].barycenter, spec.cells[i].barycenter)
        pairs = table.get(delta.canonical_key())
        if pairs is None:
            continue
        if len(pairs) > 1:
            if violation is None or (i, j) < violation:
                violation = (i, j)
            continue
        ja, jb = pairs[0]
        # delta = b_j - b_i = zeta^ja - zeta^jb with ja indexing cell i.
        edges.append(Adjacency(i, j, ja, jb))
    edges.sort(key=lambda e: (e.a, e.b))
    return edges, violation


def _components(n: int, edges: list[Adjacency]) -> list[int]:
    adj: dict[int, list[int]] = {i: [] for i in range(n)}
    for e in edges:
        adj[e.a].append(e.b)
        adj[e.b].append(e.a)
    comp = [-1] * n
    current = 0
    for start in range(n):
        if comp[start] != -1:
            continue
        stack = [start]
        comp[start] = current
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if comp[v] == -1:
                    comp[v] = current
                    stack.append(v)
        current += 1
    return comp


def _find_corner(spec: FractalSpec, positions: list[CycInt]) -> int | None:
    """Index of the corner cell on the positive real axis, if any.

    A corner cell sits at (L-1) * zeta^0 relative to the global
    barycenter and its outward vertex is a vertex of no other cell (it
    is an essential fixed point image).  Corner cells need not be the
    outermost cells of the configuration.
    """
    k = spec.k
    n = spec.n
    index_of = {p.canonical_key(): i for i, p in enumerate(positions)}
    best: tuple[float, int] | None = None
    for i, p in enumerate(positions):
        if not cyc_eq(p, cyc_conj(p)):
            continue
        x, _ = to_cartesian(p)
        if x <= 1e-9:
            continue
        tip = cyc_add(p, zeta(k, 0, n))
        shared = False
        for jb in range(1, k):
            other = index_of.get(cyc_sub(tip, zeta(k, jb, n)).canonical_key())
            if other is not None and other != i:
                shared = True
                break
        if shared:
            continue
        if best is None or x > best[0]:
            best = (x, i)
    return best[1] if best else None


@dataclass(frozen=True)
class ValidationReport:
    connectivity_ok: bool
    component_count: int
    nesting_ok: bool
    nesting_witness: tuple[int, int] | None
    symmetry_ok: bool
    symmetry_witness: tuple[str, int] | None
    corner_ok: bool
    corner_witness: int | None
    odd_adjacency_ok: bool
    odd_adjacency_witness: tuple[int, int] | None
    central_cell: int | None
    central_ok: bool
    vertex_at_center: int | None

    @property
    def valid(self) -> bool:
        return (
            self.connectivity_ok
            and self.nesting_ok
            and self.symmetry_ok
            and self.corner_ok
            and self.odd_adjacency_ok
            and self.central_ok
        )

    def lines(self) -> list[str]:
        out = []
        out.append(
            f"connectivity: {'ok' if self.connectivity_ok else 'FAIL'}"
            f" ({self.component_count} component{'s' if self.component_count != 1 else ''})"
        )
        w = f" cells {self.nesting_witness}" if self.nesting_witness else ""
        out.append(f"nesting: {'ok' if self.nesting_ok else 'FAIL' + w}")
        w = f" {self.symmetry_witness}" if self.symmetry_witness else ""
        out.append(f"symmetry: {'ok' if self.symmetry_ok else 'FAIL' + w}")
        w = f" direction {self.corner_witness}" if self.corner_witness is not None else ""
        out.append(f"corner-coverage: {'ok' if self.corner_ok else 'FAIL' + w}")
        w = f" edge {self.odd_adjacency_witness}" if self.odd_adjacency_witness else ""
        out.append(f"odd-adjacency: {'ok' if self.odd_adjacency_ok else 'FAIL' + w}")
        if self.central_cell is not None:
            out.append(
                f"central-cell: index {self.central_cell}"
                f" ({'ok' if self.central_ok else 'FAIL'})"
            )
        elif self.vertex_at_center is not None:
            out.append(f"central-cell: FAIL vertex of cell {self.vertex_at_center} at barycenter")
        else:
            out.append("central-cell: none")
        out.append(f"valid: {'yes' if self.valid else 'no'}")
        return out


def validate(spec: FractalSpec) -> ValidationReport:
    """Check the configuration axioms and report per-axiom witnesses.

    Partial specs are exempt from the symmetry-class axioms (dihedral
    invariance, corner coverage, central-cell restrictions).
    """
    k = spec.k
    n = spec.n
    edges, nesting_witness = find_adjacencies(spec)

    # Hull overlaps without shared vertices (or despite one shared vertex).
    if nesting_witness is None:
        for i, j in _close_pairs(spec):
            if cells_conflict(spec.cells[i], spec.cells[j]):
                nesting_witness = (i, j)
                break
    nesting_ok = nesting_witness is None

    comp = _components(n, edges)
    component_count = max(comp) + 1
    connectivity_ok = component_count == 1

    positions = _scaled_positions(spec)
    keys = sorted(p.canonical_key() for p in positions)

    symmetry_ok = True
    symmetry_witness: tuple[str, int] | None = None
    corner_ok = True
    corner_witness: int | None = None
    vertex_at_center: int | None = None
    if not spec.partial:
        rotated = sorted(cyc_rotate(p, 1).canonical_key() for p in positions)
        if rotated != keys:
            symmetry_ok = False
            symmetry_witness = ("rotation", 1)
        else:
            for m in range(k):
                reflected = sorted(cyc_reflect(p, m).canonical_key() for p in positions)
                if reflected != keys:
                    symmetry_ok = False
                    symmetry_witness = ("reflection", m)
                    break

        key_set = set(keys)
        corner = _find_corner(spec, positions)
        if corner is None:
            corner_ok = False
            corner_witness = 0
        else:
            for j in range(1, k):
                if cyc_rotate(positions[corner], j).canonical_key() not in key_set:
                    corner_ok = False
                    corner_witness = j
                    break

        if k > 3:
            for cell, p in zip(spec.cells, positions):
                if any(
                    cyc_is_zero(cyc_add(p, zeta(k, j, n))) for j in range(k)
                ):
                    vertex_at_center = cell.index
                    break

    odd_adjacency_ok = True
    odd_adjacency_witness: tuple[int, int] | None = None
    if k % 2 == 1:
        legal = {(k + 1) // 2, (k - 1) // 2}
        for e in edges:
            if (e.jb - e.ja) % k not in legal:
                odd_adjacency_ok = False
                odd_adjacency_witness = (e.a, e.b)
                break

    central_cell: int | None = None
    for i, p in enumerate(positions):
        if cyc_is_zero(p):
            central_cell = i
            break
    central_ok = spec.partial or (
        (central_cell is None or k in (3, 4, 6)) and vertex_at_center is None
    )

    return ValidationReport(
        connectivity_ok=connectivity_ok,
        component_count=component_count,
        nesting_ok=nesting_ok,
        nesting_witness=nesting_witness,
        symmetry_ok=symmetry_ok,
        symmetry_witness=symmetry_witness,
        corner_ok=corner_ok,
        corner_witness=corner_witness,
        odd_adjacency_ok=odd_adjacency_ok,
        odd_adjacency_witness=odd_adjacency_witness,
        central_cell=central_cell,
        central_ok=central_ok,
        vertex_at_center=vertex_at_center,
    )


def derive_scaling(spec: FractalSpec) -> CycInt:
    """The scaling factor L = 1 + b where b is the positive-real corner barycenter.

    The spec is recentred internally; the corner barycenter must be an
    exact cyclotomic integer after recentring and L must be real with
    real part above 1.
    """
    if spec.partial:
        raise ScalingError("scaling factor is defined for non-partial specs only")
    positions = _scaled_positions(spec)
    corner = _find_corner(spec, positions)
    if corner is None:
        raise ScalingError("no corner cell on the positive real axis")
    b = cyc_div_int(positions[corner], spec.n)
    if b is None:
        raise ScalingError("corner barycenter is not integral after recentring")
    scaling = cyc_add(b, zeta(spec.k, 0))
    if not cyc_eq(scaling, cyc_conj(scaling)):
        raise ScalingError("scaling factor is not real")
    if to_cartesian(scaling)[0] <= 1.0:
        raise ScalingError("scaling factor must exceed 1")
    return scaling


def parse(text: str) -> FractalSpec:
    """Read the plain text format: `snf k=<int>[ partial]` then `cell c0 .. c{k-1}` lines."""
    header: str | None = None
    cell_rows: list[list[int]] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if header is None:
            header = line
            continue
        parts = line.split()
        if parts[0] != "cell":
            raise ParseError(f"line {lineno}: expected a cell line, got {line!r}")
        try:
            cell_rows.append([int(p) for p in parts[1:]])
        except ValueError as exc:
            raise ParseError(f"line {lineno}: bad integer in {line!r}") from exc
    if header is None:
        raise ParseError("missing header line")
    parts = header.split()
    if not parts or parts[0] != "snf" or len(parts) < 2 or not parts[1].startswith("k="):
        raise ParseError(f"bad header {header!r}")
    try:
        k = int(parts[1][2:])
    except ValueError as exc:
        raise ParseError(f"bad k in header {header!r}") from exc
    partial = False
    if len(parts) == 3 and parts[2] == "partial":
        partial = True
    elif len(parts) > 2:
        raise ParseError(f"unexpected tokens in header {header!r}")
    if not 3 <= k <= 36:
        raise ParseError(f"k must be in 3..36, got {k}")
    if not cell_rows:
        raise ParseError("no cell lines")
    for row in cell_rows:
        if len(row) != k:
            raise ParseError(f"expected {k} coefficients per cell, got {len(row)}")
    try:
        return make_spec(k, cell_rows, partial)
    except SpecError as exc:
        raise ParseError(str(exc)) from exc


def serialize(spec: FractalSpec) -> str:
    """Canonical text form; bit-exact round-trip with parse."""
    head = f"snf k={spec.k}"
    if spec.partial:
        head += " partial"
    lines = [head]
    for cell in spec.cells:
        lines.append("cell " + " ".join(str(c) for c in cell.barycenter.coeffs))
    return "\n".join(lines) + "\n"


def _pentagon_ring() -> FractalSpec:
    """Five cells chained around a ring by partial sums of rotated legal steps."""
    k = 5
    s = cyc_sub(zeta(k, 2), zeta(k, 4))
    cells = []
    pos = zero(k)
    for q in range(k):
        cells.append(pos)
        pos = cyc_add(pos, cyc_rotate(s, q))
    assert cyc_is_zero(pos)
    return make_spec(k, cells)


def catalog(name: str) -> FractalSpec:
    """Named reference configurations."""
    if name == "sierpinski-gasket":
        return make_spec(3, [zeta(3, j) for j in range(3)])
    if name == "vicsek-cross":
        return make_spec(4, [zero(4)] + [zeta(4, j, 2) for j in range(4)])
    if name == "sierpinski-hexagon":
        return make_spec(6, [zeta(6, j, 2) for j in range(6)])
    if name == "lindstrom-snowflake":
        return make_spec(6, [zeta(6, j, 2) for j in range(6)] + [zero(6)])
    if name == "pentagon-ring":
        return _pentagon_ring()
    raise ValueError(f"unknown catalog name {name!r}; choose from {', '.join(CATALOG_NAMES)}")
