import json
import xml.etree.ElementTree as ET

import pytest

from primdecomp import instances
from primdecomp.downset import DownsetExpr, canonical_decomposition, prune_redundant
from primdecomp.errors import RankMismatch
from primdecomp.render import COMPONENT_COLOR, LOCAL_COLOR, render_ascii, render_svg, render_window, save_png
from primdecomp.serialization import load_file, parse_downset


SVG = '{http://www.w3.org/2000/svg}'


def svg_text(svg):
    return ''.join(ET.fromstring(svg).itertext())


def svg_panels(svg):
    """Title and filled box counts of every axes group"""
    panels = []
    for group in ET.fromstring(svg).iter(f'{SVG}g'):
        if not group.get('id', '').startswith('axes_'):
            continue
        titles = [t for t in (''.join(e.itertext()) for e in group.iter(f'{SVG}text')) if t.startswith('face ')]
        fills = [p.get('style', '') for p in group.iter(f'{SVG}path')]
        panels.append({"title": titles[0],
                       "local": sum(f'fill: {LOCAL_COLOR}' in s for s in fills),
                       "component": sum(f'fill: {COMPONENT_COLOR}' in s for s in fills)})
    return panels


class TestAscii:
    def test_e1_panels(self, e1, golden_dir):
        art = render_ascii(e1, canonical_decomposition(e1))
        assert art == (golden_dir / 'render_e1.txt').read_text(encoding='utf-8')

    def test_e2_panels(self, e2, golden_dir):
        art = render_ascii(e2, canonical_decomposition(e2))
        assert art == (golden_dir / 'render_e2.txt').read_text(encoding='utf-8')

    def test_hyperbola_panels(self, golden_dir):
        D = instances.hyperbola_staircase(steps=2, scale=1)
        art = render_ascii(D, canonical_decomposition(D))
        assert art == (golden_dir / 'render_hyperbola.txt').read_text(encoding='utf-8')

    def test_one_panel_per_component(self, e2):
        art = render_ascii(e2, canonical_decomposition(e2))
        assert [line for line in art.splitlines() if line.startswith('face')] == ['face x', 'face y', 'face 0']

    def test_explicit_box(self, e1):
        art = render_ascii(e1, canonical_decomposition(e1), box=((-2, -2), (3, 2)))
        panel = art.split('\n\n')[0].splitlines()
        assert len(panel) == 1 + 5
        assert all(len(row) == 6 for row in panel[1:])

    def test_rank_three_is_refused(self):
        D = DownsetExpr.make(instances.orthant(3), [((0, 0, 0), ())])
        with pytest.raises(RankMismatch):
            render_ascii(D, canonical_decomposition(D))


class TestFigures:
    def test_window_follows_the_oracle_grid(self, e1):
        assert render_window(e1) == ((-1, 0, 1, 2), (-1, 0, 1))

    def test_svg_names_every_face(self, e2):
        svg = render_svg(e2, canonical_decomposition(e2))
        text = svg_text(svg)
        for label in ('face x', 'face y', 'face 0'):
            assert label in text

    def test_e2_svg_structure(self, e2, golden_dir):
        svg = render_svg(e2, canonical_decomposition(e2))
        assert svg_panels(svg) == json.loads((golden_dir / 'render_e2_svg.json').read_text(encoding='utf-8'))

    def test_svg_is_reproducible(self, e1):
        components = canonical_decomposition(e1)
        assert render_svg(e1, components) == render_svg(e1, components)

    def test_rational_staircase(self):
        D = instances.hyperbola_staircase(steps=8)
        components = prune_redundant(canonical_decomposition(D), D)
        assert 'face 0' in svg_text(render_svg(D, components))

    def test_png(self, e2, tmp_path):
        path = save_png(e2, canonical_decomposition(e2), tmp_path / 'e2.png')
        assert path.read_bytes()[:4] == b'\x89PNG'

    def test_hyperbola_has_three_panels(self, examples_dir):
        D = parse_downset(load_file(examples_dir / 'hyperbola.json'))
        text = svg_text(render_svg(D, canonical_decomposition(D)))
        for label in ('face x', 'face y', 'face 0'):
            assert label in text
