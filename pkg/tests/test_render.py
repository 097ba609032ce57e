"""SVG output: structure, counts, determinism."""
from __future__ import annotations

import xml.etree.ElementTree as ET

import pytest

from snfglp.glp import decide_glp, decide_glp_even
from snfglp.model import catalog
from snfglp.render import RenderOptions, render_svg

NS = "{http://www.w3.org/2000/svg}"


def parsed(svg: str):
    return ET.fromstring(svg)


class TestStructure:
    def test_gasket_labeled_figure(self):
        spec = catalog("sierpinski-gasket")
        verdict = decide_glp(spec)
        svg = render_svg(spec, verdict, RenderOptions(show_labels=True))
        root = parsed(svg)
        polys = root.findall(f"{NS}polygon")
        dots = root.findall(f"{NS}circle")
        texts = [t.text for t in root.findall(f"{NS}text")]
        assert len(polys) == 3
        assert len(dots) == 9  # one dot per cell vertex; shared points coincide
        assert len(texts) == 6  # one letter per distinct vertex
        assert sorted(set(texts)) == ["A", "B", "C"]
        # each cell's vertex letters are a rotation of A,B,C
        for i in range(3):
            r = verdict.labeling.offsets[i]
            assert sorted((j + r) % 3 for j in range(3)) == [0, 1, 2]

    def test_polygon_count_matches_cells(self):
        for name in ("vicsek-cross", "pentagon-ring"):
            spec = catalog(name)
            svg = render_svg(spec)
            assert len(parsed(svg).findall(f"{NS}polygon")) == spec.n

    def test_witness_cycle_highlighted(self):
        spec = catalog("lindstrom-snowflake")
        verdict = decide_glp(spec)
        svg = render_svg(spec, verdict)
        root = parsed(svg)
        polys = root.findall(f"{NS}polygon")
        assert len(polys) == spec.n  # cell polygons only; the loop is a polyline
        reds = [p for p in polys if p.get("stroke") == "red"]
        assert len(reds) == 3
        loop = root.findall(f"{NS}polyline")
        assert len(loop) == 1 and loop[0].get("stroke") == "red"

    def test_classes_two_tone(self):
        spec = catalog("sierpinski-hexagon")
        verdict = decide_glp_even(spec)
        svg = render_svg(spec, verdict, RenderOptions(show_classes=True))
        root = parsed(svg)
        fills = {p.get("fill") for p in root.findall(f"{NS}polygon")}
        assert "#d3d3d3" in fills and "#a9a9a9" in fills
        texts = [t.text for t in root.findall(f"{NS}text")]
        assert texts == ["1", "2", "1", "2", "1", "2"]

    def test_slice_rays(self):
        spec = catalog("sierpinski-hexagon")
        svg = render_svg(spec, None, RenderOptions(show_slices=True))
        root = parsed(svg)
        lines = root.findall(f"{NS}line")
        assert len(lines) == 6
        assert all(l.get("stroke-dasharray") for l in lines)


class TestDiscipline:
    def test_byte_identical_reruns(self):
        spec = catalog("lindstrom-snowflake")
        verdict = decide_glp(spec)
        opts = RenderOptions(show_labels=True, show_slices=True)
        assert render_svg(spec, verdict, opts) == render_svg(spec, verdict, opts)

    def test_fixed_decimals(self):
        svg = render_svg(catalog("sierpinski-gasket"))
        for token in svg.split('"'):
            pass
        # every coordinate has exactly six decimals
        import re

        for m in re.finditer(r'points="([^"]+)"', svg):
            for pair in m.group(1).split():
                for num in pair.split(","):
                    assert re.fullmatch(r"-?\d+\.\d{6}", num), num

    def test_well_formed_for_all_catalog(self):
        for name in ("sierpinski-gasket", "vicsek-cross", "sierpinski-hexagon",
                     "lindstrom-snowflake", "pentagon-ring"):
            spec = catalog(name)
            parsed(render_svg(spec, decide_glp(spec), RenderOptions(
                show_labels=True, show_classes=True, show_slices=True)))

    def test_scale_validation(self):
        with pytest.raises(ValueError):
            RenderOptions(scale=0)
