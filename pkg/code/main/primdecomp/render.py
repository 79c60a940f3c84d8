"""
Figures of two-dimensional downsets and their primary decompositions.

One panel per component: the local support drawn dark over the primary
component drawn light, with the coordinate axes and the face label as title.
"""
import io
import logging
from fractions import Fraction

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
from matplotlib.patches import Rectangle

from .downset import local_support
from .errors import RankMismatch
from .oracle import grid_axes

logger = logging.getLogger(__name__)

plt.rcParams['svg.hashsalt'] = 'primdecomp'
plt.rcParams['svg.fonttype'] = 'none'

LOCAL_COLOR = '#2c3e50'
COMPONENT_COLOR = '#a9cce3'


def render_window(D, box=None):
    """Sample axes of the drawing window; defaults to the oracle grid with margin 1"""
    if box is None:
        return grid_axes(D, margin=1)
    return grid_axes(D, box[0], box[1], margin=1)


def _require_plane(D):
    if D.n != 2:
        raise RankMismatch(f"only rank-2 downsets can be drawn, got rank {D.n}")


def _panels(D, components):
    return [(face, local_support(D, face), component.region()) for face, component in components]


def _cell(point, local, component):
    if local.contains(point):
        return '#'
    if component.contains(point):
        return 'o'
    x, y = point
    if x == 0 and y == 0:
        return '+'
    if x == 0:
        return '|'
    if y == 0:
        return '-'
    return '.'


def render_ascii(D, components, box=None):
    """
    Text panels, top row first: '#' local support, 'o' the rest of the primary
    component, axes through the origin elsewhere.
    """
    _require_plane(D)
    xs, ys = render_window(D, box)
    panels = []
    for face, local, component in _panels(D, components):
        rows = [f"face {face.label()}"]
        for y in reversed(ys):
            rows.append(''.join(_cell((x, y), local, component) for x in xs))
        panels.append('\n'.join(rows))
    return '\n\n'.join(panels) + '\n'


def _clip(interval, lo, hi):
    a = lo if interval.lo is None else max(Fraction(interval.lo), lo)
    b = hi if interval.hi is None else min(Fraction(interval.hi), hi)
    return a, b


def _draw_region(ax, region, lo, hi, pad, color, alpha):
    for box in region.boxes:
        (x0, x1), (y0, y1) = _clip(box[0], lo[0], hi[0]), _clip(box[1], lo[1], hi[1])
        if x0 > x1 or y0 > y1:
            continue
        ax.add_patch(Rectangle((float(x0 - pad), float(y0 - pad)), float(x1 - x0 + 2 * pad),
                               float(y1 - y0 + 2 * pad), facecolor=color, edgecolor='none', alpha=alpha))


def decomposition_figure(D, components, box=None):
    _require_plane(D)
    window = render_window(D, box)
    lo = tuple(Fraction(axis[0]) for axis in window)
    hi = tuple(Fraction(axis[-1]) for axis in window)
    pad = Fraction(1, 2) if D.mode == 'int' else 0
    panels = _panels(D, components)
    fig, axes = plt.subplots(1, max(len(panels), 1), figsize=(4 * max(len(panels), 1), 4), squeeze=False)
    for ax, (face, local, component) in zip(axes[0], panels):
        _draw_region(ax, component, lo, hi, pad, COMPONENT_COLOR, 0.9)
        _draw_region(ax, local, lo, hi, pad, LOCAL_COLOR, 0.9)
        ax.axhline(0, color='black', linewidth=0.8)
        ax.axvline(0, color='black', linewidth=0.8)
        ax.set_xlim(float(lo[0] - pad), float(hi[0] + pad))
        ax.set_ylim(float(lo[1] - pad), float(hi[1] + pad))
        ax.set_aspect('equal')
        ax.set_title(f"face {face.label()}", fontsize=12, fontweight='bold')
    plt.tight_layout()
    return fig


def render_svg(D, components, box=None):
    fig = decomposition_figure(D, components, box)
    buffer = io.StringIO()
    fig.savefig(buffer, format='svg', bbox_inches='tight', metadata={'Date': None})
    plt.close(fig)
    return buffer.getvalue()


def save_png(D, components, path, box=None):
    fig = decomposition_figure(D, components, box)
    fig.savefig(path, dpi=300, bbox_inches='tight')
    plt.close(fig)
    logger.info(f"Decomposition figure saved to {path}")
    return path
