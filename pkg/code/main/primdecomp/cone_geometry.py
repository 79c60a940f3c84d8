"""
Coprincipal downsets a + face - Q+ over a general pointed rational cone in Z^n.

Only membership and localization are symbolic here. Supports are computed
point by point on a finite box.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement, product

from .config import settings
from .errors import BoxTooSmall, NotProvenClosed, RankMismatch
from .pogroup import ClosedFlag, dot, facet_normals, in_positive_cone

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GeneralPiece:
    apex: tuple
    face: object

    @property
    def n(self):
        return len(self.apex)


@lru_cache(maxsize=256)
def _difference_cone_normals(cone, face):
    """Inner normals of face - Q+ (a cone that contains lines unless face is trivial)"""
    vectors = [cone.generators[g] for g in sorted(face.generator_ids)]
    vectors += [tuple(-x for x in g) for g in cone.generators]
    return facet_normals(vectors, cone.n)


def piece_member(point, piece, lattice):
    """
    Decide q in a + face - Q+.

    Over Q this is membership of q - a in the cone face - Q+. A rational solution
    q - a = t - p rounds to an integral one: with t = sum c_i g_i, replace each
    c_i by its ceiling and p by the matching integral point, which stays in Q+.
    """
    cone = lattice.cone
    if len(point) != piece.n:
        raise RankMismatch(f"point {tuple(point)} has rank {len(point)}, piece has rank {piece.n}")
    difference = [q - a for q, a in zip(point, piece.apex)]
    return all(dot(h, difference) >= 0 for h in _difference_cone_normals(cone, piece.face))


def general_member(point, pieces, lattice):
    return any(piece_member(point, piece, lattice) for piece in pieces)


def _require_pieces(pieces, lattice):
    for piece in pieces:
        lattice.require(piece.face)
        if piece.n != lattice.cone.n:
            raise RankMismatch(f"piece apex {piece.apex} has rank {piece.n}, cone has rank {lattice.cone.n}")


def localize_general(pieces, face, lattice):
    """Pieces whose face contains the given face; needs a proven closed cone"""
    lattice.require(face)
    _require_pieces(pieces, lattice)
    if lattice.closed_flag != ClosedFlag.PROVEN:
        raise NotProvenClosed(
            f"closedness of {lattice.cone.kind} is {lattice.closed_flag.value}; refusing the localization formula")
    return [piece for piece in pieces if lattice.leq(face, piece.face)]


def stays_along(point, ray, pieces, lattice):
    """
    Whether point + k * ray stays in the downset for every k >= 0.

    A piece containing a point keeps it along a ray exactly when the ray lies in
    the piece's face (the recession cone of a + face - Q+ meets Q+ in the face),
    and since the union is a downset, a pushed point inside a piece puts the
    original point in that piece as well.
    """
    return any(lattice.leq(ray, piece.face) and piece_member(point, piece, lattice) for piece in pieces)


@dataclass(frozen=True)
class GeneralSupports:
    points: frozenset
    global_support: frozenset
    local_support: frozenset


def _check_box(pieces, lo, hi, margin):
    for piece in pieces:
        for i, a in enumerate(piece.apex):
            if a - margin < lo[i] or a + margin > hi[i]:
                raise BoxTooSmall(
                    f"box [{lo}, {hi}] needs margin {margin} around apex {piece.apex} (coordinate {i})")


def _globally_supported(point, pieces, face, lattice):
    return not any(stays_along(point, ray, pieces, lattice)
                   for ray in lattice.rays if not lattice.leq(ray, face))


def grid_supports_general(pieces, face, lo, hi, lattice, margin=None):
    """
    Points of the downset in the box, with its global and local support along the face.

    Global support keeps the points that eventually leave the downset when pushed
    along every ray generator off the face. Local support is the global support of
    the localization along the face.
    """
    margin = settings.grid_margin if margin is None else margin
    lattice.require(face)
    _require_pieces(pieces, lattice)
    _check_box(pieces, lo, hi, margin)

    localized = localize_general(pieces, face, lattice)
    points, global_points, local_points = set(), set(), set()
    for point in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if not general_member(point, pieces, lattice):
            continue
        points.add(point)
        if _globally_supported(point, pieces, face, lattice):
            global_points.add(point)
        if general_member(point, localized, lattice) and _globally_supported(point, localized, face, lattice):
            local_points.add(point)

    logger.debug(f"General supports on face {face.id}: {len(points)} points, "
                 f"{len(global_points)} global, {len(local_points)} local")
    return GeneralSupports(frozenset(points), frozenset(global_points), frozenset(local_points))


def minimal_face_of(point, lattice):
    """Smallest face containing a point of Q+ (the one whose relative interior holds it)"""
    cone = lattice.cone
    tight = frozenset(i for i, h in enumerate(cone.halfspaces) if dot(h, point) == 0)
    candidates = [f for f in lattice.faces if f.tight <= tight]
    return max(candidates, key=lambda f: len(f.tight))


def _on_boundary(cone, point):
    return in_positive_cone(cone, point) and any(dot(h, point) == 0 for h in cone.halfspaces)


def boundary_death_types(lattice):
    """
    Death types of k[boundary of Q+] = k[Q+] / k[interior of Q+], read off the grid.

    The test points are the origin, the ray generators and their pairwise sums.
    An element of degree p on the boundary survives a push by q exactly when
    p + q stays on the boundary; two boundary degrees have the same death type
    when they survive the same test pushes. Each type needs its own primary
    component, so the count grows with the number of faces.

    Returns:
        Dict id of the face through the witness -> witness point
    """
    cone = lattice.cone
    generators = [tuple(g) for g in cone.generators]
    pushes = set(generators)
    pushes.update(tuple(a + b for a, b in zip(g, h)) for g, h in combinations_with_replacement(generators, 2))
    pushes = sorted(pushes)
    witnesses = [tuple([0] * cone.n)] + pushes

    survivors = {}
    for p in witnesses:
        if not _on_boundary(cone, p):
            continue
        pattern = frozenset(q for q in pushes if _on_boundary(cone, tuple(a + b for a, b in zip(p, q))))
        survivors.setdefault(pattern, p)

    types = {minimal_face_of(p, lattice).id: p for p in survivors.values()}
    logger.info(f"{lattice.cone.kind}({lattice.cone.n}) with {len(lattice.rays)} rays: "
                f"{len(types)} boundary death types")
    return types
