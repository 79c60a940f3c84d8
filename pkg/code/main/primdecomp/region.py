"""
Finite unions of axis-aligned generalized boxes in Z^n or Q^n.

A box is a product of intervals whose ends may be infinite (None). In integer
mode every finite end is inclusive, strict bounds are rounded inward when the
interval is built. In rational mode each finite end carries an open/closed flag.
Regions are kept in normal form: pairwise-disjoint nonempty boxes, adjacent
boxes merged, sorted.

Interval algebra runs on ``portion``. An integer interval [a, b] is carried as
the half-open real interval [a, b + 1), so emptiness, differences and adjacency
all come out exact without special cases.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

import portion as P

from .errors import ModeMismatch, RankMismatch

MODES = ('int', 'rat')


@dataclass(frozen=True)
class Interval:
    lo: object = None
    hi: object = None
    lo_closed: bool = False
    hi_closed: bool = False

    def contains(self, value):
        if self.lo is not None and (value < self.lo or (value == self.lo and not self.lo_closed)):
            return False
        if self.hi is not None and (value > self.hi or (value == self.hi and not self.hi_closed)):
            return False
        return True

    def to_portion(self, mode):
        lower = -P.inf if self.lo is None else self.lo
        if mode == 'int':
            upper = P.inf if self.hi is None else self.hi + 1
            return P.closedopen(lower, upper)
        upper = P.inf if self.hi is None else self.hi
        return P.Interval.from_atomic(P.CLOSED if self.lo_closed else P.OPEN, lower,
                                      upper, P.CLOSED if self.hi_closed else P.OPEN)

    @classmethod
    def from_portion(cls, atom, mode):
        """Read one nonempty atomic portion interval back"""
        lo = None if atom.lower == -P.inf else atom.lower
        hi = None if atom.upper == P.inf else atom.upper
        if mode == 'int':
            return cls(lo, None if hi is None else hi - 1, lo is not None, hi is not None)
        return cls(lo, hi, lo is not None and atom.left == P.CLOSED, hi is not None and atom.right == P.CLOSED)


def make_interval(lo=None, hi=None, mode='int', lo_closed=True, hi_closed=True):
    """Build a canonical interval; None ends are infinite"""
    if mode not in MODES:
        raise ModeMismatch(f"unknown endpoint mode {mode!r}")
    if mode == 'int':
        if lo is not None:
            lo = Fraction(lo)
            lo = math.ceil(lo) if lo_closed else math.floor(lo) + 1
        if hi is not None:
            hi = Fraction(hi)
            hi = math.floor(hi) if hi_closed else math.ceil(hi) - 1
        return Interval(lo, hi, lo is not None, hi is not None)
    lo = None if lo is None else Fraction(lo)
    hi = None if hi is None else Fraction(hi)
    return Interval(lo, hi, lo is not None and lo_closed, hi is not None and hi_closed)


def interval_is_empty(interval, mode):
    return interval.to_portion(mode).empty


def _as_portion(box, mode):
    return tuple(iv.to_portion(mode) for iv in box)


def _as_box(parts, mode):
    return tuple(Interval.from_portion(part, mode) for part in parts)


def box_is_empty(box, mode):
    return any(interval_is_empty(iv, mode) for iv in box)


def _subtract_parts(a, b):
    """a minus b as at most 2n disjoint portion boxes, splitting one coordinate at a time"""
    if any((x & y).empty for x, y in zip(a, b)):
        return [a]
    result = []
    current = list(a)
    for i in range(len(a)):
        for atom in current[i] - b[i]:
            result.append(tuple(current[:i]) + (atom,) + tuple(current[i + 1:]))
        current[i] = current[i] & b[i]
    return result


def _merge_parts(a, b):
    differing = [i for i in range(len(a)) if a[i] != b[i]]
    if len(differing) != 1:
        return None
    i = differing[0]
    joined = a[i] | b[i]
    if not joined.atomic:
        return None
    return a[:i] + (joined,) + a[i + 1:]


def _lower_key(interval):
    if interval.lo is None:
        return (0,)
    return (1, interval.lo, 0 if interval.lo_closed else 1)


def _upper_key(interval):
    if interval.hi is None:
        return (1,)
    return (0, interval.hi, 1 if interval.hi_closed else 0)


def box_key(box):
    return tuple((_lower_key(iv), _upper_key(iv)) for iv in box)


def _normalize_parts(parts, mode):
    disjoint = []
    for box in parts:
        if any(x.empty for x in box):
            continue
        pieces = [box]
        for existing in disjoint:
            pieces = [p for piece in pieces for p in _subtract_parts(piece, existing)]
            if not pieces:
                break
        disjoint.extend(pieces)

    merged = True
    while merged:
        merged = False
        for i in range(len(disjoint)):
            for j in range(i + 1, len(disjoint)):
                joined = _merge_parts(disjoint[i], disjoint[j])
                if joined is not None:
                    disjoint[i] = joined
                    del disjoint[j]
                    merged = True
                    break
            if merged:
                break
    return tuple(sorted((_as_box(box, mode) for box in disjoint), key=box_key))


def normalize_boxes(boxes, mode):
    """Disjoint, merged and sorted list of nonempty boxes"""
    return _normalize_parts([_as_portion(box, mode) for box in boxes], mode)


@dataclass(frozen=True)
class Region:
    n: int
    mode: str
    boxes: tuple = ()

    @classmethod
    def from_boxes(cls, n, mode, boxes):
        if mode not in MODES:
            raise ModeMismatch(f"unknown endpoint mode {mode!r}")
        boxes = [tuple(box) for box in boxes]
        for box in boxes:
            if len(box) != n:
                raise RankMismatch(f"box of rank {len(box)} in a rank-{n} region")
        return cls(n, mode, normalize_boxes(boxes, mode))

    @classmethod
    def empty(cls, n, mode='int'):
        return cls(n, mode, ())

    @classmethod
    def box(cls, lo, hi, mode='int', lo_closed=None, hi_closed=None):
        """Single-box region from per-coordinate bounds (None for infinite)"""
        n = len(lo)
        if len(hi) != n:
            raise RankMismatch(f"bounds of different ranks: {lo} / {hi}")
        lo_closed = lo_closed or [True] * n
        hi_closed = hi_closed or [True] * n
        box = tuple(make_interval(lo[i], hi[i], mode, lo_closed[i], hi_closed[i]) for i in range(n))
        return cls.from_boxes(n, mode, [box])

    def _check(self, other):
        if self.n != other.n:
            raise RankMismatch(f"regions of rank {self.n} and {other.n}")
        if self.mode != other.mode:
            raise ModeMismatch(f"regions in {self.mode} and {other.mode} mode")

    def _parts(self):
        return [_as_portion(box, self.mode) for box in self.boxes]

    def _from_parts(self, parts):
        return Region(self.n, self.mode, _normalize_parts(parts, self.mode))

    def union(self, other):
        self._check(other)
        return self._from_parts(self._parts() + other._parts())

    def intersect(self, other):
        self._check(other)
        parts = [tuple(x & y for x, y in zip(a, b)) for a in self._parts() for b in other._parts()]
        return self._from_parts(parts)

    def difference(self, other):
        self._check(other)
        pieces = self._parts()
        for subtrahend in other._parts():
            pieces = [p for box in pieces for p in _subtract_parts(box, subtrahend)]
        return self._from_parts(pieces)

    @property
    def is_empty(self):
        return not self.boxes

    def equals(self, other):
        return self.difference(other).is_empty and other.difference(self).is_empty

    def issubset(self, other):
        return self.difference(other).is_empty

    def contains(self, point):
        if len(point) != self.n:
            raise RankMismatch(f"point {tuple(point)} has rank {len(point)}, region has rank {self.n}")
        return any(all(iv.contains(x) for iv, x in zip(box, point)) for box in self.boxes)

    def down_closure(self):
        """Every lower bound dropped box by box, then re-normalized"""
        lowered = [tuple(Interval(None, iv.hi, False, iv.hi_closed) for iv in box) for box in self.boxes]
        return Region.from_boxes(self.n, self.mode, lowered)

    def finite_endpoints(self):
        """Sorted finite endpoint values per coordinate"""
        values = [set() for _ in range(self.n)]
        for box in self.boxes:
            for i, iv in enumerate(box):
                values[i].update(v for v in (iv.lo, iv.hi) if v is not None)
        return [sorted(v) for v in values]


def region_boolean(op, a, b):
    """Union, intersection or difference of two regions"""
    if op == 'union':
        return a.union(b)
    if op in ('intersect', 'intersection'):
        return a.intersect(b)
    if op == 'difference':
        return a.difference(b)
    raise ValueError(f"unknown region operation {op!r}")


def region_equals(a, b):
    a._check(b)
    return a.equals(b)


def region_is_empty(a):
    return a.is_empty


def down_closure(a):
    return a.down_closure()


def member(point, a):
    return a.contains(point)


def normalize(a):
    return Region.from_boxes(a.n, a.mode, a.boxes)
