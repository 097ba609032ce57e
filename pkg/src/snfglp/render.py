"""SVG drawings of configurations.

Pure text generation: identical inputs yield identical bytes.  Numbers
are printed with six fixed decimals and the y axis is flipped so that
counter-clockwise in the plane is counter-clockwise on screen.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .cyclotomic import to_cartesian
from .glp import Verdict
from .model import FractalSpec, global_barycenter, vertices

_FILL = "#d3d3d3"
_FILL_ALT = "#a9a9a9"


@dataclass(frozen=True)
class RenderOptions:
    show_labels: bool = False
    show_classes: bool = False
    show_slices: bool = False
    highlight_cycle: tuple[int, ...] | None = None
    scale: float = 60.0
    margin: float = 0.5

    def __post_init__(self) -> None:
        if self.scale <= 0:
            raise ValueError("scale must be positive")


def _fmt(v: float) -> str:
    out = f"{v:.6f}"
    return "0.000000" if out == "-0.000000" else out


def _label_text(lab: int, k: int) -> str:
    return chr(ord("A") + lab) if k <= 26 else str(lab)


def render_svg(
    spec: FractalSpec,
    verdict: Verdict | None = None,
    options: RenderOptions | None = None,
) -> str:
    """One polygon per cell, vertex dots, optional labels/classes/slices/witness."""
    opt = options or RenderOptions()
    k = spec.k
    polys = [[to_cartesian(v) for v in vertices(c)] for c in spec.cells]
    xs = [x for poly in polys for x, _ in poly]
    ys = [y for poly in polys for _, y in poly]
    xmin, xmax = min(xs) - opt.margin, max(xs) + opt.margin
    ymin, ymax = min(ys) - opt.margin, max(ys) + opt.margin
    width = (xmax - xmin) * opt.scale
    height = (ymax - ymin) * opt.scale

    def px(p: tuple[float, float]) -> tuple[float, float]:
        return ((p[0] - xmin) * opt.scale, (ymax - p[1]) * opt.scale)

    out: list[str] = []
    out.append('<?xml version="1.0" encoding="UTF-8" standalone="no"?>')
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">'
    )

    highlight = set(opt.highlight_cycle or ())
    if not highlight and verdict is not None and not verdict.glp and verdict.witness:
        highlight = set(verdict.witness)

    classes = verdict.classes if (opt.show_classes and verdict is not None) else None

    for cell, poly in zip(spec.cells, polys):
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in (px(p) for p in poly))
        fill = _FILL
        if classes is not None and classes.get(cell.index) == 2:
            fill = _FILL_ALT
        stroke = "red" if cell.index in highlight else "black"
        stroke_w = "2.5" if cell.index in highlight else "1"
        out.append(
            f'<polygon points="{pts}" fill="{fill}" stroke="{stroke}" '
            f'stroke-width="{stroke_w}"/>'
        )

    if opt.show_slices:
        total, n = global_barycenter(spec)
        bx, by = to_cartesian(total)
        bx, by = bx / n, by / n
        reach = max(math.hypot(x - bx, y - by) for poly in polys for x, y in poly) + opt.margin
        for j in range(k):
            ang = 2.0 * math.pi * j / k
            end = (bx + reach * math.cos(ang), by + reach * math.sin(ang))
            x1, y1 = px((bx, by))
            x2, y2 = px(end)
            out.append(
                f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
                f'stroke="black" stroke-width="0.7" stroke-dasharray="6,4"/>'
            )

    cycle = opt.highlight_cycle or (
        verdict.witness if verdict is not None and not verdict.glp else None
    )
    if cycle:
        centers = [px(to_cartesian(spec.cells[i].barycenter)) for i in cycle]
        centers.append(centers[0])
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in centers)
        out.append(
            f'<polyline points="{pts}" fill="none" stroke="red" stroke-width="2"/>'
        )

    # one dot per cell vertex (shared points coincide); labels once per point
    seen: set[tuple[int, ...]] = set()
    dots: list[tuple[float, float]] = []
    label_at: list[tuple[float, float, str]] = []
    labeling = verdict.labeling if (verdict is not None and verdict.glp) else None
    for cell, poly in zip(spec.cells, polys):
        cx, cy = to_cartesian(cell.barycenter)
        for j, point in enumerate(vertices(cell)):
            x, y = poly[j]
            dots.append(px((x, y)))
            key = point.canonical_key()
            if key in seen:
                continue
            seen.add(key)
            if opt.show_labels and labeling is not None:
                lab = labeling.labels.get(point)
                if lab is not None:
                    # nudge the glyph outward from the owning cell's center
                    dx, dy = x - cx, y - cy
                    norm = math.hypot(dx, dy) or 1.0
                    lx, ly = px((x + 0.22 * dx / norm, y + 0.22 * dy / norm))
                    label_at.append((lx, ly, _label_text(lab, k)))
    for x, y in dots:
        out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="2.5" fill="black"/>')
    for x, y, text in label_at:
        out.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-family="sans-serif" '
            f'font-size="12" text-anchor="middle" dominant-baseline="middle">{text}</text>'
        )

    if classes is not None:
        for cell in spec.cells:
            cx, cy = px(to_cartesian(cell.barycenter))
            out.append(
                f'<text x="{_fmt(cx)}" y="{_fmt(cy)}" font-family="sans-serif" '
                f'font-size="14" text-anchor="middle" dominant-baseline="middle">'
                f"{classes.get(cell.index, '?')}</text>"
            )

    out.append("</svg>")
    return "\n".join(out) + "\n"
