"""Constructive generators and substitution expansion.

Counterexamples arrange cells in a single odd ring whose steps are one
legal adjacency translation rotated through the r-th roots of unity
embedded in Z[zeta_k]; such a ring can never be labeled, and any
configuration containing it inherits the obstruction.  Example rings
place corner cells around the origin (with interleaved cells when 4
divides k, where corner cells alone would share whole edges).
"""
from __future__ import annotations

import math
import random
from itertools import product

from .cyclotomic import (
    CycInt,
    cyc_add,
    cyc_conj,
    cyc_div_int,
    cyc_eq,
    cyc_is_zero,
    cyc_mul,
    cyc_reflect,
    cyc_rotate,
    cyc_scale,
    cyc_sub,
    to_cartesian,
    zero,
    zeta,
)
from .glp import classify_k
from .model import (
    Cell,
    FractalSpec,
    ScalingError,
    SpecError,
    cells_conflict,
    derive_scaling,
    global_barycenter,
    make_spec,
)


class GenerationError(ValueError):
    """Raised when a generator's preconditions fail or growth stalls."""


def _largest_odd_divisor_below(k: int) -> int | None:
    """Largest odd divisor of k usable as an odd ring length (must stay < k)."""
    best = None
    for d in range(3, k, 2):
        if k % d == 0:
            best = d
    return best


def base_step(k: int) -> CycInt:
    """One legal adjacency translation, fixed deterministically.

    Even k: a long diagonal 2 * zeta^0.  Odd k: zeta^a - zeta^b with
    a = ceil((k+1)/4) and b = k+1-a, whose shared-index difference is
    +-(k+1)/2 as legal odd-k adjacency requires.
    """
    if k % 2 == 0:
        return zeta(k, 0, 2)
    a = (k + 4) // 4 if k % 4 == 1 else (k + 1) // 4
    b = (k + 1 - a) % k
    return cyc_sub(zeta(k, a), zeta(k, b))


def generate_counterexample(k: int) -> FractalSpec:
    """A partial spec of r cells in one ring that cannot be labeled.

    r is the largest odd divisor of k below k.  The q-th barycenter is
    the partial sum of the base step rotated by h * (k/r) root-of-unity
    steps for h < q, so the steps are exactly the r-th roots of unity
    (scaled); the ring closes because those roots sum to zero.
    """
    kind = classify_k(k)
    if kind.always_glp:
        raise GenerationError(
            f"k={k} is {kind.reason}; every such configuration can be labeled"
        )
    r = _largest_odd_divisor_below(k)
    assert r is not None  # composite non-power-of-two k always has one
    step = base_step(k)
    cells = []
    pos = zero(k)
    for q in range(r):
        cells.append(pos)
        pos = cyc_add(pos, cyc_rotate(step, q * (k // r)))
    if not cyc_is_zero(pos):
        raise AssertionError("counterexample ring failed to close")
    return make_spec(k, cells, partial=True)


def _ring_radius_vector(k: int, step: CycInt) -> CycInt:
    """Exact b with b * (zeta - 1) = step, i.e. the ring radius on the real axis.

    Uses (1 - zeta) * sum(j * zeta^j) = -k, so b = step * sum(j * zeta^j) / k.
    """
    weights = CycInt(k, tuple(range(k)))
    b = cyc_div_int(cyc_mul(step, weights), k)
    if b is None:
        raise AssertionError("ring radius is not a cyclotomic integer")
    if not cyc_eq(b, cyc_conj(b)) or to_cartesian(b)[0] <= 0:
        raise AssertionError("ring radius is not real positive")
    if not cyc_eq(cyc_sub(cyc_rotate(b, 1), b), step):
        raise AssertionError("ring radius does not reproduce the step")
    return b


def generate_glp_example(k: int) -> FractalSpec:
    """A labelable ring configuration: N = k cells, or N = 2k when 4 | k.

    For 4 | k the k corner cells are interleaved with one extra cell per
    corner pair, sharing a single vertex with each neighbor.
    """
    if k < 3:
        raise GenerationError("k must be >= 3")
    if k % 4 != 0:
        if k % 2 == 1:
            step = base_step(k)
        else:
            step = zeta(k, (k + 2) // 4, 2)
        b = _ring_radius_vector(k, step)
        return make_spec(k, [cyc_rotate(b, q) for q in range(k)])
    # 4 | k: corner cells at b4 * zeta^q, one mid cell between each pair.
    head = cyc_scale(cyc_add(zeta(k, k // 4), zeta(k, k // 4 + 1)), 2)
    b4 = _ring_radius_vector(k, head)
    cells = []
    for q in range(k):
        corner = cyc_rotate(b4, q)
        cells.append(corner)
        cells.append(cyc_add(corner, zeta(k, q + k // 4, 2)))
    return make_spec(k, cells)


def expand(spec: FractalSpec, level: int) -> FractalSpec:
    """All depth-`level` cells of the substitution: sums of L^j-scaled offsets.

    The spec is recentred exactly; positions are sums over every choice
    of one level-1 offset per depth.  Duplicates are an error.
    """
    if level not in (1, 2, 3):
        raise ValueError("level must be 1, 2 or 3")
    n = spec.n
    if n**level > 100_000:
        raise ValueError(f"{n}^{level} cells exceed the size cap")
    scaling = derive_scaling(spec)
    total, count = global_barycenter(spec)
    offsets = []
    for cell in spec.cells:
        t = cyc_div_int(cyc_sub(cyc_scale(cell.barycenter, count), total), count)
        if t is None:
            raise ScalingError("spec cannot be recentred exactly")
        offsets.append(t)
    scaled: list[list[CycInt]] = [offsets]
    for _ in range(1, level):
        scaled.append([cyc_mul(scaling, t) for t in scaled[-1]])
    positions: list[CycInt] = []
    seen: set[tuple[int, ...]] = set()
    for choice in product(range(n), repeat=level):
        pos = zero(spec.k)
        for depth, i in enumerate(choice):
            pos = cyc_add(pos, scaled[depth][i])
        key = pos.canonical_key()
        if key in seen:
            raise SpecError(f"duplicate cell produced by offset choice {choice}")
        seen.add(key)
        positions.append(pos)
    return make_spec(spec.k, positions, partial=True)


def _legal_steps(k: int) -> list[CycInt]:
    """All translations moving a cell to a legally adjacent position."""
    if k % 2 == 0:
        return [zeta(k, j, 2) for j in range(k)]
    s = base_step(k)
    out = [cyc_rotate(s, j) for j in range(k)]
    out += [cyc_rotate(cyc_scale(s, -1), j) for j in range(k)]
    return out


def _conflict_free(cand: CycInt, accepted: dict[tuple[int, ...], CycInt]) -> bool:
    """Candidate cell conflicts with nobody already accepted."""
    cx, cy = to_cartesian(cand)
    cand_cell = Cell(cand, 0)
    for other in accepted.values():
        ox, oy = to_cartesian(other)
        if (cx - ox) ** 2 + (cy - oy) ** 2 >= 4.0:
            continue
        if cells_conflict(cand_cell, Cell(other, 1)):
            return False
    return True


def random_valid_spec(
    k: int, target_cells: int, seed: int, symmetrize: bool = False
) -> FractalSpec:
    """Deterministic random growth of a conflict-free connected configuration.

    Plain growth returns a partial spec grown cell by cell across random
    legal steps.  With `symmetrize` the growth starts from a labelable
    base (the example ring, or its level-2 expansion when small enough)
    and adds whole dihedral orbits of interior cells, producing a
    non-partial spec that passes every axiom; the target size is then a
    goal, not a guarantee, since the interior may fill up.
    """
    hi = 12 if symmetrize else 16
    if not 3 <= k <= hi:
        raise GenerationError(f"k must be in 3..{hi}")
    if not 1 <= target_cells <= 100:
        raise GenerationError("target_cells must be in 1..100")
    rng = random.Random(seed)
    steps = _legal_steps(k)

    if not symmetrize:
        accepted: dict[tuple[int, ...], CycInt] = {}
        order: list[CycInt] = []
        start = zero(k)
        accepted[start.canonical_key()] = start
        order.append(start)
        budget = 400 * target_cells
        while len(order) < target_cells and budget > 0:
            budget -= 1
            base = order[rng.randrange(len(order))]
            cand = cyc_add(base, steps[rng.randrange(len(steps))])
            key = cand.canonical_key()
            if key in accepted:
                continue
            if not _conflict_free(cand, accepted):
                continue
            accepted[key] = cand
            order.append(cand)
        if len(order) < target_cells:
            raise GenerationError("growth stalled before reaching the target size")
        return make_spec(k, order, partial=True)

    ring = generate_glp_example(k)
    base_spec = ring
    if ring.n**2 <= 100 and rng.random() < 0.5:
        expanded = expand(ring, 2)
        base_spec = make_spec(k, [c.barycenter for c in expanded.cells])
    corner_radius = to_cartesian(derive_scaling(base_spec))[0] - 1.0
    accepted = {c.barycenter.canonical_key(): c.barycenter for c in base_spec.cells}
    order = [c.barycenter for c in base_spec.cells]
    budget = 40 * target_cells
    stale = 0
    while len(order) < target_cells and budget > 0 and stale < 300:
        budget -= 1
        stale += 1
        base = order[rng.randrange(len(order))]
        cand = cyc_add(base, steps[rng.randrange(len(steps))])
        if cand.canonical_key() in accepted:
            continue
        if cyc_is_zero(cand):
            if k not in (3, 4, 6):
                continue  # central cell only legal for triangles, squares, hexagons
        elif math.hypot(*to_cartesian(cand)) > corner_radius - 0.05:
            continue
        orbit: dict[tuple[int, ...], CycInt] = {}
        for j in range(k):
            rot = cyc_rotate(cand, j)
            orbit[rot.canonical_key()] = rot
            ref = cyc_reflect(rot, 0)
            orbit[ref.canonical_key()] = ref
        if any(key in accepted for key in orbit):
            continue
        trial = dict(accepted)
        ok = True
        for key, pos in sorted(orbit.items()):
            if not _conflict_free(pos, trial):
                ok = False
                break
            trial[key] = pos
        if not ok:
            continue
        # every orbit cell must touch the previously accepted configuration
        if not all(
            any(cyc_add(pos, s).canonical_key() in accepted for s in steps)
            for pos in orbit.values()
        ):
            continue
        for key, pos in sorted(orbit.items()):
            accepted[key] = pos
            order.append(pos)
        stale = 0
    return make_spec(k, order, partial=False)
