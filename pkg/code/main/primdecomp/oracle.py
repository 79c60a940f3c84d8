"""
Brute-force evaluation of localization, supports and primary components on a
finite grid, straight from the set definitions.

Membership of a finite-piece downset only depends on where a point sits
relative to the finite apex coordinates, so a grid reaching `margin` steps past
every endpoint (and, over Q, sampling the midpoint between consecutive marks)
carries the whole answer. Beyond the grid the membership pattern is constant.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .config import settings
from .downset import decomposition_order
from .errors import BoxTooSmall

logger = logging.getLogger(__name__)


@dataclass
class GridSet:
    """Membership bits over a product of sorted coordinate axes"""
    axes: tuple
    bits: np.ndarray

    @property
    def n(self):
        return self.bits.ndim

    @property
    def lo(self):
        return tuple(axis[0] for axis in self.axes)

    @property
    def hi(self):
        return tuple(axis[-1] for axis in self.axes)

    def coordinate(self, index):
        return tuple(axis[int(k)] for axis, k in zip(self.axes, index))

    def points(self):
        """Member points in lexicographic order"""
        return [self.coordinate(index) for index in zip(*np.nonzero(self.bits))]

    @property
    def is_empty(self):
        return not self.bits.any()

    def count(self):
        return int(self.bits.sum())

    def like(self, bits):
        return GridSet(self.axes, bits)


def _endpoints(D):
    values = [set() for _ in range(D.n)]
    for piece in D.pieces:
        for i, a in enumerate(piece.apex):
            if i not in piece.face:
                values[i].add(Fraction(a))
    return values


def grid_box(D, margin=None):
    """Per-coordinate bounds reaching margin past every finite endpoint"""
    margin = settings.grid_margin if margin is None else margin
    lo, hi = [], []
    for values in _endpoints(D):
        lo.append(min(values, default=Fraction(0)) - margin)
        hi.append(max(values, default=Fraction(0)) + margin)
    return tuple(lo), tuple(hi)


def _axis(values, lo, hi, margin, mode):
    if mode == 'int':
        return tuple(range(int(lo), int(hi) + 1))
    marks = {lo, hi} | {v for v in values if lo <= v <= hi}
    if values:
        marks |= {x for k in range(1, margin + 1) for x in (min(values) - k, max(values) + k) if lo <= x <= hi}
    marks = sorted(marks)
    axis = [marks[0]]
    for a, b in zip(marks, marks[1:]):
        axis += [(a + b) / 2, b]
    return tuple(axis)


def grid_axes(D, lo=None, hi=None, margin=None):
    """
    Coordinate axes of the oracle grid.

    Over Z every integer of the box; over Q the endpoints, margin points and box
    ends with the midpoint between consecutive marks.
    """
    margin = settings.grid_margin if margin is None else margin
    if lo is None or hi is None:
        lo, hi = grid_box(D, margin)
    lo = tuple(Fraction(x) for x in lo)
    hi = tuple(Fraction(x) for x in hi)
    if any(a > b for a, b in zip(lo, hi)):
        raise BoxTooSmall(f"empty grid box {lo}..{hi}")
    return tuple(_axis(values, a, b, margin, D.mode) for values, a, b in zip(_endpoints(D), lo, hi))


def _check_margin(D, lo, hi, margin):
    for i, values in enumerate(_endpoints(D)):
        for value in values:
            if value - margin < lo[i] or value + margin > hi[i]:
                raise BoxTooSmall(f"grid [{lo}, {hi}] needs margin {margin} around endpoint {value} (coordinate {i})")


def grid_set(D, lo=None, hi=None, margin=None):
    """Membership bits of a downset on its grid (or on an explicit box)"""
    margin = settings.grid_margin if margin is None else margin
    if lo is not None and hi is not None:
        _check_margin(D, tuple(Fraction(x) for x in lo), tuple(Fraction(x) for x in hi), margin)
    axes = grid_axes(D, lo, hi, margin)
    shape = tuple(len(axis) for axis in axes)
    bits = np.zeros(shape, dtype=bool)
    grid = GridSet(axes, bits)
    for index in np.ndindex(*shape):
        point = grid.coordinate(index)
        bits[index] = any(piece.contains(point) for piece in D.pieces)
    logger.debug(f"Grid of shape {shape}: {grid.count()} member points")
    return grid


def _reverse_accumulate(bits, axis, op):
    flipped = np.flip(bits, axis=axis)
    return np.flip(op.accumulate(flipped, axis=axis), axis=axis)


def grid_localize(G, face):
    """q with q + face inside the set, read up to the top of the grid"""
    bits = G.bits.copy()
    for i in face.char_set:
        bits = _reverse_accumulate(bits, i, np.logical_and)
    return G.like(bits)


def grid_global_support(G, face, lattice):
    """q in the set but outside every localization along a face not contained in the given one"""
    bits = G.bits.copy()
    for other in lattice.faces:
        if not lattice.leq(other, face):
            bits &= ~grid_localize(G, other).bits
    return G.like(bits)


def grid_local_support(G, face, lattice):
    return grid_global_support(grid_localize(G, face), face, lattice)


def grid_down_closure(G):
    bits = G.bits.copy()
    for axis in range(G.n):
        bits = _reverse_accumulate(bits, axis, np.logical_or)
    return G.like(bits)


def grid_primary_component(G, face, lattice):
    return grid_down_closure(grid_local_support(G, face, lattice))


def grid_canonical_decomposition(G, lattice):
    """(face, primary component) for every face with nonempty local support, larger faces first"""
    components = []
    for face in sorted(lattice.faces, key=decomposition_order):
        if grid_local_support(G, face, lattice).is_empty:
            continue
        components.append((face, grid_primary_component(G, face, lattice)))
    return components


@dataclass(frozen=True)
class Comparison:
    equal: bool
    mismatch: tuple = None
    symbolic_member: bool = None


def compare(symbolic, G):
    """Pointwise agreement of a Region or DownsetExpr with a grid set"""
    contains = symbolic.contains if hasattr(symbolic, 'contains') else symbolic.region().contains
    for index in np.ndindex(*G.bits.shape):
        point = G.coordinate(index)
        expected = bool(G.bits[index])
        if contains(point) != expected:
            return Comparison(False, point, not expected)
    return Comparison(True)
