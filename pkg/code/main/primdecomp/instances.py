"""
Worked examples and random instance generators.

Random generators take a numpy Generator so that a run is reproducible from
its seed (see RANDOM_SEED).
"""
import math
from fractions import Fraction

from .downset import DownsetExpr
from .grid_module import HullPresentation
from .pogroup import ConePresentation
from .region import Region, make_interval


def orthant(n=2, rational=False):
    return ConePresentation.orthant(n, rational=rational)


def e1():
    """{x <= 0} along y, together with {x <= 1, y <= 0}"""
    return DownsetExpr.make(orthant(2), [((0, 0), (1,)), ((1, 0), ())])


def e2():
    """Two axis strips and the square below (2, 2)"""
    return DownsetExpr.make(orthant(2), [((0, 0), (0,)), ((0, 0), (1,)), ((2, 2), ())])


def hyperbola_staircase(steps=20, scale=4):
    """
    Staircase under the hyperbola xy = 1 over Q^2, with both negative half-planes.

    Corners sit at (k/scale, scale/k) for k = 1..steps.
    """
    pieces = [((Fraction(k, scale), Fraction(scale, k)), ()) for k in range(1, steps + 1)]
    pieces += [((0, 0), (1,)), ((0, 0), (0,))]
    return DownsetExpr.make(orthant(2, rational=True), pieces)


def hyperbola_staircase_int(size=12):
    """Integer staircase under xy = size, with both negative half-planes"""
    pieces = [((k, size // k), ()) for k in range(1, size + 1)]
    pieces += [((0, 0), (1,)), ((0, 0), (0,))]
    return DownsetExpr.make(orthant(2), pieces)


def two_ray_cone():
    """Z^2 ordered by the cone over (1, 0) and (1, 4)"""
    return ConePresentation.from_generators([(1, 0), (1, 4)])


def obtuse_cone():
    """Z^2 ordered by the cone over (1, 0) and (-1, 1), wider than a right angle"""
    return ConePresentation.from_generators([(1, 0), (-1, 1)])


def square_cone():
    """Cone over the square with rays (+-1, +-1, 1)"""
    return ConePresentation.from_generators([(1, 1, 1), (1, -1, 1), (-1, 1, 1), (-1, -1, 1)])


def polygon_cone(m, radius=100):
    """Cone over a rounded regular m-gon at height radius"""
    generators = []
    for k in range(m):
        angle = 2 * math.pi * k / m
        generators.append((round(radius * math.cos(angle)), round(radius * math.sin(angle)), radius))
    return ConePresentation.from_generators(generators)


def antidiagonal_hull(radius=2):
    """
    Two copies of the square below (radius, radius), generated along the
    antidiagonal by elements with pairwise independent coefficients.
    """
    square = DownsetExpr.make(orthant(2), [((radius, radius), ())])
    generators = [((a, -a), (1, a)) for a in range(-radius, radius + 1)]
    return HullPresentation.make([square, square], generators, (-radius, -radius), (radius + 1, radius + 1))


def random_downset(rng, n=2, max_pieces=5, spread=3, rational=False):
    """Random union of up to max_pieces coprincipal pieces with apexes in [-spread, spread]"""
    count = int(rng.integers(1, max_pieces + 1))
    pieces = []
    for _ in range(count):
        apex = tuple(int(x) for x in rng.integers(-spread, spread + 1, size=n))
        face = tuple(i for i in range(n) if rng.random() < 0.3)
        if rational:
            apex = tuple(Fraction(int(x), 2) for x in rng.integers(-2 * spread, 2 * spread + 1, size=n))
        pieces.append((apex, face))
    return DownsetExpr.make(orthant(n, rational=rational), pieces)


def random_region(rng, n=2, max_boxes=4, spread=3, mode='int'):
    boxes = []
    for _ in range(int(rng.integers(0, max_boxes + 1))):
        box = []
        for _ in range(n):
            lo, hi = sorted(int(x) for x in rng.integers(-spread, spread + 1, size=2))
            box.append(make_interval(None if rng.random() < 0.2 else lo,
                                     None if rng.random() < 0.2 else hi,
                                     mode,
                                     lo_closed=rng.random() < 0.7,
                                     hi_closed=rng.random() < 0.7))
        boxes.append(tuple(box))
    return Region.from_boxes(n, mode, boxes)


def random_hull(rng, lo=-2, hi=2, max_generators=3):
    """
    Random hull presentation on the box [lo, hi]^2.

    Hull apexes and generator degrees stay in [lo, hi - 1], one step below the
    box top; generators carry small integer coefficients on the summands
    containing their degree.
    """
    hull = []
    for _ in range(int(rng.integers(1, 3))):
        pieces = [(tuple(int(x) for x in rng.integers(lo, hi, size=2)),
                   tuple(i for i in range(2) if rng.random() < 0.3))
                  for _ in range(int(rng.integers(1, 4)))]
        hull.append(DownsetExpr.make(orthant(2), pieces))

    generators = []
    for _ in range(int(rng.integers(1, max_generators + 1))):
        degree = tuple(int(x) for x in rng.integers(lo, hi, size=2))
        coeffs = []
        for D in hull:
            inside = any(piece.contains(degree) for piece in D.pieces)
            coeffs.append(int(rng.integers(-2, 3)) if inside else 0)
        if any(coeffs):
            generators.append((degree, coeffs))
    return HullPresentation.make(hull, generators, (lo, lo), (hi, hi), margin=1)
