"""
Modules over Z^n with the componentwise order, realized on a finite box.

A GridModule stores a rational vector space per degree of the box and the
transition maps q -> q + e_i. Beyond the top of the box the module is taken to
be constant: a push past hi_i acts as the identity. Localization along a face,
the support functors and the primary decomposition of hull presentations all
work degree by degree with exact sympy linear algebra.
"""
import logging
from dataclasses import dataclass
from itertools import product

from . import linalg
from .config import settings
from .downset import canonical_decomposition, decomposition_order
from .downset import member as downset_member
from .errors import (BoxTooLarge, BoxTooSmall, CommutativityFailure, DegreeOutsideBox,
                     DimensionMismatch, GeneratorOutsideHull, InjectivityFailure,
                     RankMismatch, UnsupportedGroup)

logger = logging.getLogger(__name__)


def box_degrees(lo, hi):
    return list(product(*(range(a, b + 1) for a, b in zip(lo, hi))))


def _step(q, i):
    return q[:i] + (q[i] + 1,) + q[i + 1:]


def _below(q, q2):
    return all(a <= b for a, b in zip(q, q2))


class GridModule:
    """A module restricted to the box [lo, hi], constant beyond hi"""

    def __init__(self, lo, hi, dims, transitions, embedding=None):
        self.lo = tuple(lo)
        self.hi = tuple(hi)
        self.dims = dict(dims)
        self.transitions = dict(transitions)
        self.embedding = embedding
        self._push_cache = {}

    @classmethod
    def zero(cls, lo, hi):
        degrees = box_degrees(lo, hi)
        transitions = {(q, i): linalg.matrix(0, 0)
                       for q in degrees for i in range(len(lo)) if q[i] < hi[i]}
        return cls(lo, hi, {q: 0 for q in degrees}, transitions)

    @property
    def n(self):
        return len(self.lo)

    @property
    def degrees(self):
        return box_degrees(self.lo, self.hi)

    @property
    def is_zero(self):
        return not any(self.dims.values())

    def total_dim(self):
        return sum(self.dims.values())

    def in_box(self, q):
        return len(q) == self.n and all(a <= x <= b for a, x, b in zip(self.lo, q, self.hi))

    def require_degree(self, q):
        if len(q) != self.n:
            raise RankMismatch(f"degree {tuple(q)} has rank {len(q)}, module has rank {self.n}")
        if not self.in_box(q):
            raise DegreeOutsideBox(f"degree {tuple(q)} lies outside the box {self.lo}..{self.hi}")
        return tuple(q)

    def require_vector(self, q, v):
        if len(v) != self.dims[q]:
            raise DimensionMismatch(f"vector of length {len(v)} at degree {q}, where the dimension is {self.dims[q]}")
        return linalg.column(v)

    def clamp(self, q, coordinates):
        """Move the given coordinates to the top of the box"""
        return tuple(self.hi[i] if i in coordinates else x for i, x in enumerate(q))

    def transition(self, q, i):
        if q[i] >= self.hi[i]:
            return linalg.identity(self.dims[q])
        return self.transitions[(q, i)]

    def push_matrix(self, q, target):
        """Composite map M_q -> M_target (target clamped into the box)"""
        q = self.require_degree(q)
        target = tuple(min(t, h) for t, h in zip(target, self.hi))
        if not _below(q, target):
            raise DegreeOutsideBox(f"degree {target} is not above {q}")
        key = (q, target)
        if key not in self._push_cache:
            result = linalg.identity(self.dims[q])
            current = q
            for i in range(self.n):
                while current[i] < target[i]:
                    result = self.transitions[(current, i)] * result
                    current = _step(current, i)
            self._push_cache[key] = result
        return self._push_cache[key]

    def push(self, q, target, vector):
        return self.push_matrix(q, target) * vector

    def check_commutativity(self):
        for q in self.degrees:
            for i in range(self.n):
                for j in range(i + 1, self.n):
                    if q[i] >= self.hi[i] or q[j] >= self.hi[j]:
                        continue
                    via_i = self.transitions[(_step(q, i), j)] * self.transitions[(q, i)]
                    via_j = self.transitions[(_step(q, j), i)] * self.transitions[(q, j)]
                    if via_i != via_j:
                        raise CommutativityFailure(f"square at degree {q} in directions {i},{j} does not commute")
        return True


# ---------------------------------------------------------------------------
# submodules and quotients
# ---------------------------------------------------------------------------

class Submodule:
    """Per-degree subspaces (column bases) of a GridModule, closed under transitions"""

    def __init__(self, module, bases):
        self.module = module
        self.bases = dict(bases)

    @classmethod
    def generated(cls, module, elements):
        """Submodule generated by (degree, vector) pairs"""
        elements = [(module.require_degree(q), module.require_vector(tuple(q), v)) for q, v in elements]
        bases = {}
        for target in module.degrees:
            images = [module.push(q, target, v) for q, v in elements if _below(q, target)]
            bases[target] = linalg.basis_of(linalg.hstack(module.dims[target], *images))
        return cls(module, bases)

    def dims(self):
        return {q: basis.cols for q, basis in self.bases.items()}

    @property
    def is_zero(self):
        return not any(self.dims().values())

    def intersect(self, other):
        return Submodule(self.module, {q: linalg.intersect(self.bases[q], other.bases[q]) for q in self.bases})

    def issubset(self, other):
        return all(linalg.span_contains(other.bases[q], self.bases[q]) for q in self.bases)

    def equals(self, other):
        return all(linalg.same_space(self.bases[q], other.bases[q]) for q in self.bases)

    def as_module(self):
        M = self.module
        transitions = {}
        for q in M.degrees:
            for i in range(M.n):
                if q[i] >= M.hi[i]:
                    continue
                image = M.transitions[(q, i)] * self.bases[q]
                transitions[(q, i)] = linalg.coordinates(self.bases[_step(q, i)], image)
        embedding = None
        if M.embedding is not None:
            embedding = {q: M.embedding[q] * self.bases[q] for q in M.degrees}
        return GridModule(M.lo, M.hi, self.dims(), transitions, embedding)

    def quotient(self):
        """M/N, each degree written in a complement of the submodule"""
        M = self.module
        projections, complements, dims = {}, {}, {}
        for q in M.degrees:
            d = M.dims[q]
            complements[q] = linalg.complement(self.bases[q], d)
            dims[q] = complements[q].cols
            if d == 0:
                projections[q] = linalg.matrix(0, 0)
                continue
            inverse = linalg.hstack(d, self.bases[q], complements[q]).inv()
            projections[q] = inverse[self.bases[q].cols:, :]
        transitions = {}
        for q in M.degrees:
            for i in range(M.n):
                if q[i] < M.hi[i]:
                    transitions[(q, i)] = projections[_step(q, i)] * M.transitions[(q, i)] * complements[q]
        return GridModule(M.lo, M.hi, dims, transitions)

    def localize(self, localization, face):
        """The localized submodule inside the localization of the ambient module"""
        chi = set(face.char_set)
        return Submodule(localization.module,
                         {q: self.bases[self.module.clamp(q, chi)] for q in self.module.degrees})


def map_kernel(module, matrices):
    """Kernel of a module map given by its per-degree matrices"""
    return Submodule(module, {q: linalg.nullspace(matrices[q]) if module.dims[q] else linalg.matrix(0, 0)
                              for q in module.degrees})


def random_element(module, q, rng, spread=3):
    """Random integer vector in M_q drawn from a numpy Generator"""
    return [int(x) for x in rng.integers(-spread, spread + 1, size=module.dims[q])]


# ---------------------------------------------------------------------------
# localization and supports
# ---------------------------------------------------------------------------

@dataclass
class Localization:
    module: GridModule
    comparison: dict


def localize_module(M, face):
    """
    Localization along a face: (M_tau)_q = M at q clamped to the top along the face.

    Returns the localized module with the comparison maps M_q -> (M_tau)_q.
    """
    chi = set(face.char_set)
    dims = {q: M.dims[M.clamp(q, chi)] for q in M.degrees}
    transitions = {}
    for q in M.degrees:
        for i in range(M.n):
            if q[i] >= M.hi[i]:
                continue
            if i in chi:
                transitions[(q, i)] = linalg.identity(dims[q])
            else:
                transitions[(q, i)] = M.transition(M.clamp(q, chi), i)
    embedding = None
    if M.embedding is not None:
        embedding = {q: M.embedding[M.clamp(q, chi)] for q in M.degrees}
    localized = GridModule(M.lo, M.hi, dims, transitions, embedding)
    comparison = {q: M.push_matrix(q, M.clamp(q, chi)) for q in M.degrees}
    return Localization(localized, comparison)


def _transient_maps(M, q, chi):
    return [M.push_matrix(q, M.clamp(q, {j})) for j in range(M.n) if j not in chi]


def global_support_module(M, face):
    """Elements killed by pushing along every unit ray off the face"""
    chi = set(face.char_set)
    return Submodule(M, {q: linalg.kernel_of_stack(M.dims[q], _transient_maps(M, q, chi)) for q in M.degrees})


def local_support_module(M, face):
    """Global support along the face inside the localization along it"""
    return global_support_module(localize_module(M, face).module, face)


def support_image_dims(M, face):
    """Degrees where the globally supported part survives in the localization, with the image rank"""
    support = global_support_module(M, face)
    comparison = localize_module(M, face).comparison
    result = {}
    for q in M.degrees:
        if support.bases[q].cols:
            rank = (comparison[q] * support.bases[q]).rank()
            if rank:
                result[q] = rank
    return result


@dataclass(frozen=True)
class ElementClass:
    persistent: bool
    transient: bool

    @property
    def coprimary(self):
        return self.persistent and self.transient


def classify_element(M, q, v, face):
    q = M.require_degree(tuple(q))
    vector = M.require_vector(q, v)
    chi = set(face.char_set)
    persistent = not linalg.is_zero(M.push(q, M.clamp(q, chi), vector))
    transient = all(linalg.is_zero(M.push(q, M.clamp(q, {j}), vector)) for j in range(M.n) if j not in chi)
    return ElementClass(persistent, transient)


def divides_coprimary(M, q, v, face):
    """First degree above q where the pushed element is coprimary for the face, or None"""
    q = M.require_degree(tuple(q))
    vector = M.require_vector(q, v)
    for target in M.degrees:
        if not _below(q, target):
            continue
        image = M.push(q, target, vector)
        if classify_element(M, target, list(image), face).coprimary:
            return target
    return None


@dataclass
class FaceSupportReport:
    face: object
    global_support: Submodule
    local_support: Submodule
    element_classes: dict


def face_support_report(M, face):
    classes = {}
    for q in M.degrees:
        d = M.dims[q]
        classes[q] = [classify_element(M, q, [1 if k == c else 0 for k in range(d)], face) for c in range(d)]
    return FaceSupportReport(face, global_support_module(M, face), local_support_module(M, face), classes)


# ---------------------------------------------------------------------------
# coprimary test
# ---------------------------------------------------------------------------

def _bad_vector_exists(space, constraints, index, avoid):
    """
    Whether some nonzero v in space meets every remaining constraint (Z, A)
    as "v in Z or v not in A", while staying outside every avoided subspace.

    Over an infinite field a space is never a finite union of proper subspaces,
    so the avoid list only needs each member to be proper.
    """
    if space.cols == 0:
        return False
    avoid = [linalg.intersect(space, a) for a in avoid]
    if any(a.cols == space.cols for a in avoid):
        return False
    if index == len(constraints):
        return True

    killed, arrives = constraints[index]
    in_killed = linalg.intersect(space, killed)
    if in_killed.cols == space.cols:
        return _bad_vector_exists(space, constraints, index + 1, avoid)
    in_arrives = linalg.intersect(space, arrives)
    if in_arrives.cols < space.cols and _bad_vector_exists(space, constraints, index + 1, avoid + [in_arrives]):
        return True
    return in_killed.cols > 0 and _bad_vector_exists(in_killed, constraints, index + 1, avoid)


def is_coprimary_module(M, face, budget=None):
    """
    Coprimary test: M -> M_tau injective, and every nonzero homogeneous element
    divides a coprimary element.

    The second condition is decided exactly per degree q by searching for a bad
    vector, one whose push to every q' above q is zero or not transient.
    """
    budget = settings.oracle_degree_budget if budget is None else budget
    if len(M.degrees) > budget:
        raise BoxTooLarge(f"coprimary test over {len(M.degrees)} degrees exceeds the budget of {budget}")
    chi = set(face.char_set)

    for q in M.degrees:
        if M.dims[q] and M.push_matrix(q, M.clamp(q, chi)).rank() < M.dims[q]:
            logger.debug(f"Not coprimary on face {face.label()}: localization not injective at {q}")
            return False

    for q in M.degrees:
        d = M.dims[q]
        if not d:
            continue
        constraints = []
        for target in M.degrees:
            if not _below(q, target):
                continue
            push = M.push_matrix(q, target)
            killed = linalg.nullspace(push)
            arrives = linalg.kernel_of_stack(d, [m * push for m in _transient_maps(M, target, chi)])
            if not any(linalg.same_space(killed, k) and linalg.same_space(arrives, a) for k, a in constraints):
                constraints.append((killed, arrives))
        if _bad_vector_exists(linalg.identity(d), constraints, 0, []):
            logger.debug(f"Not coprimary on face {face.label()}: essentiality fails at degree {q}")
            return False
    return True


# ---------------------------------------------------------------------------
# hull presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HullGenerator:
    degree: tuple
    coeffs: tuple


@dataclass(frozen=True)
class HullPresentation:
    """Submodule of the direct sum of k[D_j] generated by homogeneous elements"""
    hull: tuple
    generators: tuple
    lo: tuple
    hi: tuple

    @property
    def n(self):
        return len(self.lo)

    @classmethod
    def make(cls, hull, generators, lo, hi, margin=None):
        margin = settings.grid_margin if margin is None else margin
        lo, hi = tuple(lo), tuple(hi)
        if len(lo) != len(hi):
            raise RankMismatch(f"box bounds of different ranks: {lo} / {hi}")
        if any(a > b for a, b in zip(lo, hi)):
            raise BoxTooSmall(f"empty box {lo}..{hi}")
        hull = tuple(hull)
        for D in hull:
            if D.group.kind != 'orthant-int':
                raise UnsupportedGroup(f"modules are realized over orthant-int only, got {D.group.kind}")
            if D.n != len(lo):
                raise RankMismatch(f"hull downset of rank {D.n} in a rank-{len(lo)} box")
            for piece in D.pieces:
                for i, a in enumerate(piece.apex):
                    if i not in piece.face and hi[i] < a + margin:
                        raise BoxTooSmall(f"box top {hi} must exceed apex {piece.apex} by {margin} in coordinate {i}")

        built = []
        for generator in generators:
            if not isinstance(generator, HullGenerator):
                degree, coeffs = generator
                generator = HullGenerator(tuple(degree), tuple(linalg.as_fraction(c) for c in coeffs))
            q = generator.degree
            if len(q) != len(lo):
                raise RankMismatch(f"generator degree {q} has rank {len(q)}, box has rank {len(lo)}")
            if not all(a <= x <= b for a, x, b in zip(lo, q, hi)):
                raise DegreeOutsideBox(f"generator degree {q} lies outside the box {lo}..{hi}")
            if len(generator.coeffs) != len(hull):
                raise DimensionMismatch(f"generator at {q} has {len(generator.coeffs)} coefficients for {len(hull)} hull summands")
            if not any(downset_member(q, D) for D in hull):
                raise GeneratorOutsideHull(f"generator degree {q} lies in no hull downset")
            for j, c in enumerate(generator.coeffs):
                if c != 0 and not downset_member(q, hull[j]):
                    raise GeneratorOutsideHull(f"generator at {q} has coefficient {c} on summand {j}, which misses {q}")
            for i, x in enumerate(q):
                if hi[i] < x + margin:
                    raise BoxTooSmall(f"box top {hi} must exceed generator degree {q} by {margin} in coordinate {i}")
            built.append(generator)
        return cls(hull, tuple(built), lo, hi)


def indicator_hull(D, lo, hi):
    """k[D] on the box, generated by the bottom corner"""
    lo = tuple(lo)
    generators = [(lo, [1])] if downset_member(lo, D) else []
    return HullPresentation.make([D], generators, lo, hi)


def _mask(q, hull):
    return linalg.matrix(len(hull), len(hull),
                         [1 if r == c and downset_member(q, hull[r]) else 0
                          for r in range(len(hull)) for c in range(len(hull))])


def realize(h):
    """GridModule of the presented module, embedded degreewise in the hull coordinates"""
    k = len(h.hull)
    degrees = box_degrees(h.lo, h.hi)
    masks = {q: _mask(q, h.hull) for q in degrees}
    bases = {}
    for q in degrees:
        images = [masks[q] * linalg.column(g.coeffs) for g in h.generators if _below(g.degree, q)]
        bases[q] = linalg.basis_of(linalg.hstack(k, *images))

    transitions = {}
    for q in degrees:
        for i in range(len(h.lo)):
            if q[i] < h.hi[i]:
                nxt = _step(q, i)
                transitions[(q, i)] = linalg.coordinates(bases[nxt], masks[nxt] * bases[q])

    M = GridModule(h.lo, h.hi, {q: bases[q].cols for q in degrees}, transitions, embedding=bases)
    M.check_commutativity()
    logger.debug(f"Realized module on {h.lo}..{h.hi}: total dimension {M.total_dim()}")
    return M


@dataclass
class ModuleComponent:
    face: object
    kernel: Submodule
    quotient: GridModule


@dataclass
class ModuleDecomposition:
    module: GridModule
    components: list
    injective: bool


def _summand_projection(q, h, summands):
    rows = [[1 if c == j and downset_member(q, component) else 0 for c in range(len(h.hull))]
            for j, component in summands]
    return linalg.matrix(len(rows), len(h.hull), [x for row in rows for x in row])


def primary_decomposition_module(h, strict=True):
    """
    Primary decomposition of a hull-presented module.

    Each hull downset is decomposed canonically; for every face the coprimary
    summands k[P_tau(D_j)] form E^tau, M^tau is the kernel of M -> E^tau and
    the components are the nonzero quotients M/M^tau. The kernels must meet in
    zero at every degree; with strict=False a nonzero meet is reported through
    ``injective`` instead of raising InjectivityFailure.
    """
    M = realize(h)
    summands = {}
    for j, D in enumerate(h.hull):
        for face, component in canonical_decomposition(D):
            summands.setdefault(face, []).append((j, component))

    components = []
    for face in sorted(summands, key=decomposition_order):
        matrices = {q: _summand_projection(q, h, summands[face]) * M.embedding[q] for q in M.degrees}
        kernel = map_kernel(M, matrices)
        quotient = kernel.quotient()
        if quotient.is_zero:
            logger.debug(f"Face {face.label()}: quotient vanishes on the box, dropped")
            continue
        components.append(ModuleComponent(face, kernel, quotient))

    injective = True
    for q in M.degrees:
        common = linalg.identity(M.dims[q])
        for component in components:
            common = linalg.intersect(common, component.kernel.bases[q])
        if common.cols:
            if strict:
                raise InjectivityFailure(f"primary kernels meet in dimension {common.cols} at degree {q}")
            logger.warning(f"Primary kernels meet in dimension {common.cols} at degree {q}")
            injective = False

    logger.info(f"Module decomposition: {len(components)} components over faces "
                f"{[c.face.label() for c in components]}")
    return ModuleDecomposition(M, components, injective)
