"""
Partially ordered groups with polyhedral positive cones.

Supported presentations:
    orthant-int(n)  - Z^n with the componentwise order
    orthant-rat(n)  - Q^n with the componentwise order
    cone-int(n)     - Z^n ordered by a pointed, full-dimensional rational cone,
                      given by generators or by inner normals (h . x >= 0)
"""
import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import combinations, product
from math import gcd

import sympy

from .config import settings
from .errors import (ConversionOverflow, FaceNotInLattice, NonPointedCone,
                     RankMismatch, UnsupportedGroup)

logger = logging.getLogger(__name__)

ORTHANT_KINDS = ('orthant-int', 'orthant-rat')
CONE_KINDS = ORTHANT_KINDS + ('cone-int',)
COORDINATE_NAMES = 'xyzw'


# ---------------------------------------------------------------------------
# integer vector helpers
# ---------------------------------------------------------------------------

def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def primitive(vector):
    """Scale a rational vector to the primitive integer vector on the same ray"""
    fractions = [Fraction(x) for x in vector]
    denominator = reduce(lambda a, b: a * b // gcd(a, b), (f.denominator for f in fractions), 1)
    ints = [int(f * denominator) for f in fractions]
    divisor = reduce(gcd, (abs(x) for x in ints), 0)
    if divisor == 0:
        return tuple(ints)
    return tuple(x // divisor for x in ints)


def rank_of(vectors):
    vectors = list(vectors)
    if not vectors:
        return 0
    return sympy.Matrix(vectors).rank()


def canonical_vectors(vectors):
    """Primitive, nonzero, deduplicated and lexicographically sorted"""
    return tuple(sorted(v for v in {primitive(v) for v in vectors} if any(v)))


# ---------------------------------------------------------------------------
# Fourier-Motzkin
# ---------------------------------------------------------------------------

def _combine(row_pos, row_neg, column):
    a = row_pos[column]
    b = -row_neg[column]
    return primitive(tuple(b * p + a * q for p, q in zip(row_pos, row_neg)))


def eliminate(rows, columns, budget=None):
    """
    Fourier-Motzkin elimination on homogeneous rows (row . v >= 0).

    Args:
        rows: Iterable of integer tuples
        columns: Column indices to eliminate, in order
        budget: Maximum number of rows kept after any step

    Returns:
        Rows with zeros in every eliminated column (the columns stay in place)

    Redundant rows are dropped with Chernikov's rule: after s eliminations a
    row combined from more than s + 1 original rows is implied by the others.
    """
    budget = settings.fm_row_budget if budget is None else budget
    current = {}
    for index, row in enumerate(rows):
        row = primitive(row)
        if any(row):
            current.setdefault(row, frozenset([index]))

    for step, column in enumerate(columns, start=1):
        positive = [(r, h) for r, h in current.items() if r[column] > 0]
        negative = [(r, h) for r, h in current.items() if r[column] < 0]
        combined = {r: h for r, h in current.items() if r[column] == 0}
        for (row_p, hist_p), (row_n, hist_n) in product(positive, negative):
            history = hist_p | hist_n
            if len(history) > step + 1:
                continue
            row = _combine(row_p, row_n, column)
            if not any(row):
                continue
            if row not in combined or len(history) < len(combined[row]):
                combined[row] = history
            if len(combined) > budget:
                raise ConversionOverflow(
                    f"Fourier-Motzkin exceeded the row budget of {budget} while eliminating column {column}")
        current = combined
        logger.debug(f"Eliminated column {column}: {len(current)} rows")

    return list(current)


def facet_normals(vectors, n, budget=None):
    """Facet normals of cone(vectors), None unless the vectors span Q^n; the cone may contain lines"""
    vectors = list(canonical_vectors(vectors))
    if rank_of(vectors) < n:
        return None

    # pick n independent vectors as a basis, express their multipliers through x
    basis = []
    for index, vector in enumerate(vectors):
        if rank_of([vectors[i] for i in basis] + [vector]) > len(basis):
            basis.append(index)
        if len(basis) == n:
            break
    others = [i for i in range(len(vectors)) if i not in basis]

    basis_matrix = sympy.Matrix([list(vectors[i]) for i in basis]).T
    inverse = basis_matrix.inv()

    # variables: x_0..x_{n-1}, then one multiplier per non-basis vector
    rows = []
    for r in range(n):
        coefficients = [inverse[r, c] for c in range(n)]
        for i in others:
            image = inverse * sympy.Matrix(vectors[i])
            coefficients.append(-image[r])
        rows.append(primitive([Fraction(int(c.p), int(c.q)) for c in coefficients]))
    for k in range(len(others)):
        row = [0] * (n + len(others))
        row[n + k] = 1
        rows.append(tuple(row))

    projected = eliminate(rows, range(n, n + len(others)), budget)

    facets = set()
    for row in projected:
        normal = primitive(row[:n])
        if not any(normal):
            continue
        tight = [v for v in vectors if dot(normal, v) == 0]
        if all(dot(normal, v) >= 0 for v in vectors) and rank_of(tight) == n - 1:
            facets.add(normal)
    return tuple(sorted(facets))


def fourier_motzkin(generators=None, halfspaces=None, budget=None, max_rank=None):
    """
    Convert between the V- and H-description of a pointed rational cone.

    Exactly one of generators / halfspaces is given. Generators map to the
    facet normals of their cone; normals map to the extreme rays of the cone
    they cut out (the facet normals of the cone spanned by the normals).
    Output is canonical: primitive vectors, sorted, without duplicates.
    """
    if (generators is None) == (halfspaces is None):
        raise ValueError("fourier_motzkin needs exactly one of generators or halfspaces")
    max_rank = settings.max_cone_rank if max_rank is None else max_rank
    vectors = [tuple(v) for v in (generators if generators is not None else halfspaces)]
    if not vectors:
        raise UnsupportedGroup("a cone needs at least one generator or halfspace")
    n = len(vectors[0])
    if any(len(v) != n for v in vectors):
        raise RankMismatch(f"vectors of different lengths in cone description: {vectors}")
    if n > max_rank:
        raise ConversionOverflow(f"cone rank {n} exceeds the configured limit {max_rank}")

    result = facet_normals(vectors, n, budget)
    if result is None:
        if generators is not None:
            raise UnsupportedGroup(f"generators {vectors} do not span a full-dimensional cone")
        raise NonPointedCone(f"halfspaces {vectors} leave a nontrivial lineality space")
    if generators is not None and rank_of(result) < n:
        raise NonPointedCone(f"cone generated by {vectors} contains a line")
    logger.debug(f"Converted {len(vectors)} vectors to {len(result)} dual vectors")
    return result


# ---------------------------------------------------------------------------
# cone presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConePresentation:
    kind: str
    n: int
    generators: tuple
    halfspaces: tuple

    @property
    def is_orthant(self):
        return self.kind in ORTHANT_KINDS

    @property
    def mode(self):
        return 'rat' if self.kind == 'orthant-rat' else 'int'

    @classmethod
    def orthant(cls, n, rational=False):
        if n < 1:
            raise UnsupportedGroup(f"rank must be positive, got {n}")
        units = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        return cls('orthant-rat' if rational else 'orthant-int', n, units, units)

    @classmethod
    def from_generators(cls, generators, budget=None):
        halfspaces = fourier_motzkin(generators=generators, budget=budget)
        rays = fourier_motzkin(halfspaces=halfspaces, budget=budget)
        return cls('cone-int', len(rays[0]), rays, halfspaces)

    @classmethod
    def from_halfspaces(cls, halfspaces, budget=None):
        rays = fourier_motzkin(halfspaces=halfspaces, budget=budget)
        facets = fourier_motzkin(generators=rays, budget=budget)
        return cls('cone-int', len(rays[0]), rays, facets)


def make_cone(kind, n=None, generators=None, halfspaces=None):
    """Build a ConePresentation, rejecting unsupported group classes"""
    if kind in ORTHANT_KINDS:
        if n is None:
            raise UnsupportedGroup(f"{kind} needs a rank n")
        return ConePresentation.orthant(n, rational=(kind == 'orthant-rat'))
    if kind == 'cone-int':
        if generators is not None:
            cone = ConePresentation.from_generators(generators)
        elif halfspaces is not None:
            cone = ConePresentation.from_halfspaces(halfspaces)
        else:
            raise UnsupportedGroup("cone-int needs generators or halfspaces")
        if n is not None and cone.n != n:
            raise RankMismatch(f"declared rank {n} but vectors have length {cone.n}")
        return cone
    if 'torsion' in kind:
        raise UnsupportedGroup(f"torsion groups are not supported (kind {kind!r})")
    if 'circular' in kind or 'irrational' in kind:
        raise UnsupportedGroup(f"only polyhedral rational cones are supported (kind {kind!r})")
    raise UnsupportedGroup(f"unknown group kind {kind!r}; expected one of {CONE_KINDS}")


def descriptions_agree(cone):
    """V/H round trip: generators satisfy every halfspace and convert back to them"""
    if cone.is_orthant:
        return True
    if any(dot(h, g) < 0 for h in cone.halfspaces for g in cone.generators):
        return False
    return fourier_motzkin(generators=cone.generators) == cone.halfspaces


def _check_rank(cone, *points):
    for point in points:
        if len(point) != cone.n:
            raise RankMismatch(f"point {tuple(point)} has rank {len(point)}, group has rank {cone.n}")


def in_positive_cone(cone, point):
    _check_rank(cone, point)
    return all(dot(h, point) >= 0 for h in cone.halfspaces)


def leq(q, q2, cone):
    """q precedes q2 iff q2 - q lies in the positive cone"""
    _check_rank(cone, q, q2)
    difference = [Fraction(b) - Fraction(a) for a, b in zip(q, q2)]
    if cone.is_orthant:
        return all(d >= 0 for d in difference)
    return all(dot(h, difference) >= 0 for h in cone.halfspaces)


# ---------------------------------------------------------------------------
# faces
# ---------------------------------------------------------------------------

class ClosedFlag(str, Enum):
    PROVEN = 'proven'
    REFUTED = 'refuted'
    SAMPLED_OK = 'sampled-ok'


@dataclass(frozen=True)
class ClosednessReport:
    flag: ClosedFlag
    witness: tuple = None
    face_id: int = None


@dataclass(frozen=True)
class Face:
    id: int
    generator_ids: frozenset
    tight: frozenset
    dim: int

    @property
    def char_set(self):
        """Coordinates spanned by the face (orthant presentations)"""
        return tuple(sorted(self.generator_ids))

    def label(self, orthant=True):
        if not orthant:
            return f"F{self.id}"
        if not self.generator_ids:
            return '0'
        if max(self.generator_ids) < len(COORDINATE_NAMES):
            return ''.join(COORDINATE_NAMES[i] for i in self.char_set)
        return ','.join(str(i) for i in self.char_set)


@dataclass(frozen=True)
class FaceLattice:
    cone: ConePresentation
    faces: tuple
    closed_flag: ClosedFlag = ClosedFlag.SAMPLED_OK
    closed_witness: tuple = field(default=None, compare=False)

    @property
    def trivial(self):
        return self.faces[0]

    @property
    def full(self):
        return self.faces[-1]

    @property
    def rays(self):
        return tuple(f for f in self.faces if f.dim == 1)

    def leq(self, face, other):
        """Face inclusion"""
        return face.generator_ids <= other.generator_ids

    def require(self, face):
        if face not in self.faces:
            raise FaceNotInLattice(f"face {face} is not a face of {self.cone.kind}({self.cone.n})")
        return face

    def by_id(self, face_id):
        if not 0 <= face_id < len(self.faces):
            raise FaceNotInLattice(f"no face with id {face_id}; lattice has {len(self.faces)} faces")
        return self.faces[face_id]

    def by_char_set(self, char_set):
        wanted = frozenset(char_set)
        for face in self.faces:
            if face.generator_ids == wanted:
                return face
        raise FaceNotInLattice(f"no face with characteristic set {sorted(wanted)}")

    def join(self, face, other):
        """Smallest face containing both"""
        union = face.generator_ids | other.generator_ids
        return min((f for f in self.faces if union <= f.generator_ids),
                   key=lambda f: (f.dim, len(f.generator_ids)))

    def meet(self, face, other):
        common = face.generator_ids & other.generator_ids
        return max((f for f in self.faces if f.generator_ids <= common),
                   key=lambda f: (f.dim, len(f.generator_ids)))

    def ray_vector(self, ray):
        (index,) = ray.generator_ids
        return self.cone.generators[index]

    def relative_interior_point(self, face):
        """Sum of the face generators; zero for the trivial face"""
        point = [0] * self.cone.n
        for index in face.generator_ids:
            point = [a + b for a, b in zip(point, self.cone.generators[index])]
        return tuple(point)


def face_contains(cone, face, point):
    """Membership of a point in a face: in the cone and on every tight hyperplane"""
    if not in_positive_cone(cone, point):
        return False
    return all(dot(cone.halfspaces[i], point) == 0 for i in face.tight)


def _orthant_faces(n):
    subsets = [frozenset(c) for size in range(n + 1) for c in combinations(range(n), size)]
    subsets.sort(key=lambda s: (len(s), tuple(sorted(s))))
    return tuple(
        Face(id=k, generator_ids=s, tight=frozenset(range(n)) - s, dim=len(s))
        for k, s in enumerate(subsets)
    )


def _polyhedral_faces(cone):
    generators, halfspaces = cone.generators, cone.halfspaces
    by_generators = {}
    for size in range(len(halfspaces) + 1):
        for subset in combinations(range(len(halfspaces)), size):
            gens = frozenset(g for g, vector in enumerate(generators)
                             if all(dot(halfspaces[h], vector) == 0 for h in subset))
            if gens in by_generators:
                continue
            tight = frozenset(h for h, normal in enumerate(halfspaces)
                              if all(dot(normal, generators[g]) == 0 for g in gens))
            by_generators[gens] = tight

    ordered = sorted(by_generators.items(),
                     key=lambda item: (rank_of(generators[g] for g in item[0]), tuple(sorted(item[0]))))
    return tuple(
        Face(id=k, generator_ids=gens, tight=tight, dim=rank_of(generators[g] for g in gens))
        for k, (gens, tight) in enumerate(ordered)
    )


def enumerate_faces(cone, sample_budget=None):
    """
    All faces of the positive cone, ordered by dimension then generator ids.

    Orthants have one face per subset of coordinates. For cone-int the faces are
    the intersections of tight halfspace sets, identified by the generators they
    contain.
    """
    if cone.is_orthant:
        faces = _orthant_faces(cone.n)
    else:
        if rank_of(cone.halfspaces) < cone.n:
            raise NonPointedCone(f"cone with halfspaces {cone.halfspaces} is not pointed")
        faces = _polyhedral_faces(cone)

    lattice = FaceLattice(cone=cone, faces=faces)
    report = is_closed(cone, lattice, sample_budget)
    logger.debug(f"{cone.kind}({cone.n}): {len(faces)} faces, closed={report.flag.value}")
    return replace(lattice, closed_flag=report.flag, closed_witness=report.witness)


# ---------------------------------------------------------------------------
# closedness
# ---------------------------------------------------------------------------

def closedness_witness(cone, lattice, face, point, max_multiple=None):
    """
    Find (multiple, ray id) with multiple * point dominating the ray generator,
    for a ray not contained in the face; None when no multiple up to the bound works.
    """
    max_multiple = settings.closedness_max_multiple if max_multiple is None else max_multiple
    outside = [ray for ray in lattice.rays if not lattice.leq(ray, face)]
    for multiple in range(1, max_multiple + 1):
        for ray in outside:
            vector = lattice.ray_vector(ray)
            if in_positive_cone(cone, [multiple * s - r for s, r in zip(point, vector)]):
                return multiple, ray.id
    return None


def _sample_points(cone, radius=4):
    for point in product(range(-radius, radius + 1), repeat=cone.n):
        if any(point) and in_positive_cone(cone, point):
            yield point


def sample_closedness(cone, lattice, sample_budget=None, max_multiple=None):
    """Check the closedness criterion on sampled points of Q+ minus each face"""
    sample_budget = settings.closedness_sample_budget if sample_budget is None else sample_budget
    for face in lattice.faces:
        checked = 0
        for point in _sample_points(cone):
            if checked >= sample_budget:
                break
            if face_contains(cone, face, point):
                continue
            checked += 1
            if closedness_witness(cone, lattice, face, point, max_multiple) is None:
                logger.warning(f"Closedness refuted at face {face.id} by point {point}")
                return ClosednessReport(ClosedFlag.REFUTED, witness=point, face_id=face.id)
    return ClosednessReport(ClosedFlag.SAMPLED_OK)


def is_closed(cone, lattice, sample_budget=None):
    """
    Closedness of the partially ordered group.

    Orthants are proven closed: the complement of a face is generated by the unit
    vectors off the face. A cone-int whose V- and H-descriptions agree is a rational
    polyhedral cone; any s in Q+ outside a face uses some extreme ray off that face
    in a conic combination, so a positive multiple of s dominates that ray's
    generator. Anything else falls back to sampling.
    """
    if cone.is_orthant:
        return ClosednessReport(ClosedFlag.PROVEN)
    if descriptions_agree(cone):
        return ClosednessReport(ClosedFlag.PROVEN)
    logger.warning(f"V/H descriptions of {cone.kind} disagree; sampling closedness")
    return sample_closedness(cone, lattice, sample_budget)


@lru_cache(maxsize=64)
def lattice_of(cone):
    """Face lattice of a cone, computed once per presentation"""
    return enumerate_faces(cone)


def join_faces(lattice, face, other):
    return lattice.join(lattice.require(face), lattice.require(other))


def meet_faces(lattice, face, other):
    return lattice.meet(lattice.require(face), lattice.require(other))
