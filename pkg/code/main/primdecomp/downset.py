"""
Downsets of Z^n / Q^n (componentwise order) given as finite unions of
coprincipal pieces, and their canonical primary decomposition.

A piece with apex a along the coordinate set chi is
    {q : q_i <= a_i for every i not in chi}
(strict inequality on coordinates flagged strict, rational mode only).
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (DecompositionUnionMismatch, FaceNotInLattice, RankMismatch,
                     UnsupportedGroup)
from .pogroup import lattice_of
from .region import Interval, Region, make_interval

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoprincipalPiece:
    apex: tuple
    face: tuple
    strict: tuple = None

    @classmethod
    def make(cls, apex, face, mode='int', strict=None):
        """Canonical piece: coordinates along the face erased, integer strict bounds tightened"""
        n = len(apex)
        face = tuple(sorted(set(face)))
        if any(not 0 <= i < n for i in face):
            raise FaceNotInLattice(f"face {list(face)} is not a coordinate subset of rank {n}")
        strict = tuple(strict) if strict is not None else (False,) * n
        if len(strict) != n:
            raise RankMismatch(f"strict flags {strict} do not match apex rank {n}")

        coordinates, flags = [], []
        for i in range(n):
            if i in face:
                coordinates.append(0)
                flags.append(False)
            elif mode == 'int':
                value = Fraction(apex[i])
                coordinates.append(math.ceil(value) - 1 if strict[i] else math.floor(value))
                flags.append(False)
            else:
                coordinates.append(Fraction(apex[i]))
                flags.append(bool(strict[i]))
        return cls(tuple(coordinates), face, tuple(flags))

    @property
    def n(self):
        return len(self.apex)

    def contains(self, point):
        for i, (q, a) in enumerate(zip(point, self.apex)):
            if i in self.face:
                continue
            if q > a or (q == a and self.strict[i]):
                return False
        return True

    def within(self, other):
        """Containment of the denoted sets"""
        if not set(self.face) <= set(other.face):
            return False
        for i in range(self.n):
            if i in other.face:
                continue
            a, b = self.apex[i], other.apex[i]
            if a > b or (a == b and other.strict[i] and not self.strict[i]):
                return False
        return True

    def box(self, mode):
        return tuple(
            Interval() if i in self.face else make_interval(None, self.apex[i], mode, hi_closed=not self.strict[i])
            for i in range(self.n)
        )

    def sort_key(self):
        return (len(self.face), self.face, self.apex, self.strict)


@dataclass(frozen=True)
class DownsetExpr:
    group: object
    pieces: tuple = ()

    @classmethod
    def make(cls, group, pieces):
        """Downset over an orthant group from pieces or (apex, face[, strict]) tuples"""
        if not group.is_orthant:
            raise UnsupportedGroup(f"coprincipal-union downsets need an orthant group, got {group.kind}")
        built = []
        for piece in pieces:
            if not isinstance(piece, CoprincipalPiece):
                piece = CoprincipalPiece.make(*piece[:2], mode=group.mode,
                                              strict=piece[2] if len(piece) > 2 else None)
            if piece.n != group.n:
                raise RankMismatch(f"piece apex {piece.apex} has rank {piece.n}, group has rank {group.n}")
            built.append(piece)
        return normalize(cls(group, tuple(built)))

    @property
    def n(self):
        return self.group.n

    @property
    def mode(self):
        return self.group.mode

    @property
    def lattice(self):
        return lattice_of(self.group)

    def region(self):
        return Region.from_boxes(self.n, self.mode, [p.box(self.mode) for p in self.pieces])

    def with_pieces(self, pieces):
        return DownsetExpr(self.group, tuple(pieces))


def _pieces_region(D, pieces):
    return Region.from_boxes(D.n, D.mode, [p.box(D.mode) for p in pieces])


def _require_face(D, face):
    return frozenset(D.lattice.require(face).char_set)


def normalize(D):
    """Canonical apexes, dominated and duplicate pieces removed, sorted"""
    canonical = sorted({CoprincipalPiece.make(p.apex, p.face, D.mode, p.strict) for p in D.pieces},
                       key=CoprincipalPiece.sort_key)
    kept = []
    for i, piece in enumerate(canonical):
        dominated = any(piece.within(other) for j, other in enumerate(canonical) if j != i)
        if not dominated:
            kept.append(piece)
    return D.with_pieces(kept)


def member(point, D):
    if len(point) != D.n:
        raise RankMismatch(f"point {tuple(point)} has rank {len(point)}, downset has rank {D.n}")
    return any(piece.contains(point) for piece in D.pieces)


def localize(D, face):
    """Points q with q + face inside D: the pieces whose face contains the given one"""
    chi = _require_face(D, face)
    return D.with_pieces(p for p in D.pieces if chi <= set(p.face))


def global_support(D, face):
    """
    Points of D that leave D when pushed far enough along any ray outside the face.

    For the orthant it suffices to test the unit rays e_j, j off the face, and
    D localized at e_j is the union of the pieces containing j.
    """
    chi = _require_face(D, face)
    inside = [p for p in D.pieces if set(p.face) <= chi]
    outside = [p for p in D.pieces if not set(p.face) <= chi]
    return _pieces_region(D, inside).difference(_pieces_region(D, outside))


def local_support(D, face):
    chi = _require_face(D, face)
    along = [p for p in D.pieces if set(p.face) == chi]
    above = [p for p in D.pieces if chi < set(p.face)]
    return _pieces_region(D, along).difference(_pieces_region(D, above))


def region_to_downset(D, region):
    """Read the boxes of a down-closed region back as pieces"""
    pieces = []
    for box in region.boxes:
        face = tuple(i for i, iv in enumerate(box) if iv.hi is None)
        apex = tuple(0 if iv.hi is None else iv.hi for iv in box)
        strict = tuple(iv.hi is not None and not iv.hi_closed for iv in box)
        pieces.append(CoprincipalPiece.make(apex, face, D.mode, strict))
    return normalize(D.with_pieces(pieces))


def primary_component(D, face):
    return region_to_downset(D, local_support(D, face).down_closure())


def decomposition_order(face):
    """Output order: larger faces first, then lexicographic"""
    return (-len(face.char_set), face.char_set)


def pruning_order(face):
    return (len(face.char_set), face.char_set)


def _union_region(D, components):
    union = Region.empty(D.n, D.mode)
    for _, component in components:
        union = union.union(component.region())
    return union


def canonical_decomposition(D):
    """
    One primary component per face with nonempty local support.

    Returns:
        List of (Face, DownsetExpr), larger faces first
    """
    components = []
    for face in sorted(D.lattice.faces, key=decomposition_order):
        if local_support(D, face).is_empty:
            continue
        components.append((face, primary_component(D, face)))

    if not _union_region(D, components).equals(D.region()):
        raise DecompositionUnionMismatch(
            f"union of {len(components)} primary components differs from the downset {D.pieces}")
    logger.debug(f"Canonical decomposition: {len(components)} components over faces "
                 f"{[f.label() for f, _ in components]}")
    return components


def prune_redundant(components, D):
    """Greedily drop components the union does not need, smallest faces first"""
    target = D.region()
    order = sorted(range(len(components)), key=lambda k: pruning_order(components[k][0]))
    removed = set()
    for k in order:
        others = [c for j, c in enumerate(components) if j != k and j not in removed]
        if _union_region(D, others).equals(target):
            removed.add(k)
            logger.info(f"Pruned redundant component on face {components[k][0].label()}")
    return [c for j, c in enumerate(components) if j not in removed]


def is_coprimary_downset(D):
    """The face D is coprimary for, or None (also for the empty downset)"""
    if not D.pieces:
        return None
    region = D.region()
    for face in D.lattice.faces:
        if primary_component(D, face).region().equals(region):
            return face
    return None


def disjoint_support_parts(D):
    """Per face, the globally supported part of the localization; nonempty parts only"""
    parts = []
    for face in D.lattice.faces:
        part = global_support(D, face).intersect(localize(D, face).region())
        if not part.is_empty:
            parts.append((face, part))
    return parts
