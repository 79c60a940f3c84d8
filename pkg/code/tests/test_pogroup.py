from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given

from primdecomp import instances
from primdecomp.errors import ConversionOverflow, FaceNotInLattice, NonPointedCone, RankMismatch, UnsupportedGroup
from primdecomp.pogroup import (ClosedFlag, ConePresentation, closedness_witness, descriptions_agree,
                                enumerate_faces, face_contains, fourier_motzkin, in_positive_cone, is_closed,
                                join_faces, lattice_of, leq, make_cone, meet_faces, sample_closedness)
from strategies import in_conic_hull, points, sample_pairs


class TestFaceLattice:
    def test_orthant_plane_has_four_faces(self, plane):
        assert len(plane.faces) == 4
        assert [f.label() for f in plane.faces] == ['0', 'x', 'y', 'xy']
        assert [f.char_set for f in plane.faces] == [(), (0,), (1,), (0, 1)]

    def test_orthant_line_has_two_faces(self):
        assert len(enumerate_faces(instances.orthant(1)).faces) == 2

    @pytest.mark.parametrize('n', [1, 2, 3, 4])
    def test_orthant_face_count(self, n):
        assert len(lattice_of(instances.orthant(n)).faces) == 2 ** n

    def test_square_cone(self):
        lattice = lattice_of(instances.square_cone())
        assert len(lattice.faces) == 10
        assert [f.dim for f in lattice.faces] == [0, 1, 1, 1, 1, 2, 2, 2, 2, 3]
        assert len(lattice.rays) == 4

    @pytest.mark.parametrize('m', [3, 4, 6])
    def test_polygon_cone(self, m):
        assert len(lattice_of(instances.polygon_cone(m)).faces) == 2 * m + 2

    def test_trivial_and_full(self, plane):
        assert plane.trivial.dim == 0
        assert plane.full.char_set == (0, 1)

    def test_join_and_meet(self, faces, plane):
        assert join_faces(plane, faces['x'], faces['y']) == faces['xy']
        assert meet_faces(plane, faces['x'], faces['y']) == faces['0']
        assert join_faces(plane, faces['0'], faces['x']) == faces['x']

    def test_join_on_square_cone(self):
        lattice = lattice_of(instances.square_cone())
        first, second = lattice.rays[0], lattice.rays[1]
        joined = lattice.join(first, second)
        assert lattice.leq(first, joined) and lattice.leq(second, joined)
        assert joined.dim in (2, 3)

    def test_by_char_set_unknown(self, plane):
        with pytest.raises(FaceNotInLattice):
            plane.by_char_set([2])

    def test_require_foreign_face(self, plane, two_ray):
        foreign = replace(plane.faces[1], id=17)
        with pytest.raises(FaceNotInLattice):
            two_ray.require(foreign)

    def test_face_is_a_downset_of_the_cone(self, two_ray):
        cone = two_ray.cone
        for face in two_ray.faces:
            for q in [(a, b) for a in range(0, 5) for b in range(0, 9)]:
                if not face_contains(cone, face, q):
                    continue
                for s in [(a, b) for a in range(0, 5) for b in range(0, 9)]:
                    if in_positive_cone(cone, s) and in_positive_cone(cone, (q[0] - s[0], q[1] - s[1])):
                        assert face_contains(cone, face, s)


class TestOrder:
    def test_componentwise(self):
        plane = instances.orthant(2)
        assert leq((0, 0), (1, 2), plane)
        assert not leq((1, 0), (0, 5), plane)

    def test_two_ray_cone(self):
        assert leq((0, 0), (2, 1), instances.two_ray_cone())
        assert not leq((0, 0), (0, 1), instances.two_ray_cone())

    def test_rank_mismatch(self):
        with pytest.raises(RankMismatch):
            leq((0, 0), (1, 1, 1), instances.orthant(2))

    @given(points(2, spread=6), points(2, spread=6))
    def test_two_ray_agrees_with_direct_solve(self, q, q2):
        # q2 - q = alpha (1, 0) + beta (1, 4)
        alpha, beta = sympy.symbols('alpha beta')
        solution = sympy.solve([alpha + beta - (q2[0] - q[0]), 4 * beta - (q2[1] - q[1])], [alpha, beta])
        expected = solution[alpha] >= 0 and solution[beta] >= 0
        assert leq(q, q2, instances.two_ray_cone()) == bool(expected)

    @pytest.mark.parametrize('make', [instances.square_cone, lambda: instances.polygon_cone(6),
                                      instances.obtuse_cone], ids=['square', 'hexagon', 'obtuse'])
    def test_fixed_cones_agree_with_direct_solve(self, make):
        cone = make()
        for q, q2 in sample_pairs(cone, np.random.default_rng(11)):
            difference = tuple(b - a for a, b in zip(q, q2))
            assert leq(q, q2, cone) == in_conic_hull(difference, cone.generators)

    def test_rational_points(self):
        assert leq((Fraction(1, 2), 0), (1, 0), instances.orthant(2, rational=True))


class TestConversion:
    def test_orthant_self_dual(self):
        assert fourier_motzkin(generators=[(1, 0), (0, 1)]) == ((0, 1), (1, 0))

    def test_two_ray_normals(self):
        assert fourier_motzkin(generators=[(1, 0), (1, 4)]) == ((0, 1), (4, -1))

    def test_square_round_trip(self):
        cone = instances.square_cone()
        assert fourier_motzkin(halfspaces=cone.halfspaces) == cone.generators
        assert cone.generators == ((-1, -1, 1), (-1, 1, 1), (1, -1, 1), (1, 1, 1))
        assert descriptions_agree(cone)

    def test_redundant_generator_dropped(self):
        cone = ConePresentation.from_generators([(1, 0), (1, 1), (1, 4), (2, 2)])
        assert cone.generators == ((1, 0), (1, 4))

    def test_from_halfspaces(self):
        cone = ConePresentation.from_halfspaces([(0, 1), (4, -1)])
        assert cone.generators == ((1, 0), (1, 4))

    def test_rank_limit(self):
        with pytest.raises(ConversionOverflow):
            fourier_motzkin(generators=[(1, 0, 0), (0, 1, 0), (0, 0, 1)], max_rank=2)

    def test_row_budget(self):
        with pytest.raises(ConversionOverflow):
            fourier_motzkin(generators=instances.polygon_cone(8).generators, budget=2)

    def test_cone_with_a_line(self):
        with pytest.raises(NonPointedCone):
            ConePresentation.from_generators([(1, 0), (-1, 0), (0, 1)])

    def test_halfspaces_with_lineality(self):
        with pytest.raises(NonPointedCone):
            fourier_motzkin(halfspaces=[(1, 0)])

    def test_lower_dimensional(self):
        with pytest.raises(UnsupportedGroup):
            ConePresentation.from_generators([(1, 1), (2, 2)])


class TestMakeCone:
    def test_orthant_kinds(self):
        assert make_cone('orthant-int', n=3).n == 3
        assert make_cone('orthant-rat', n=2).mode == 'rat'

    @pytest.mark.parametrize('kind', ['torsion-z2', 'circular', 'irrational-cone', 'lattice'])
    def test_unsupported(self, kind):
        with pytest.raises(UnsupportedGroup):
            make_cone(kind, n=2)

    def test_declared_rank_mismatch(self):
        with pytest.raises(RankMismatch):
            make_cone('cone-int', n=3, generators=[(1, 0), (1, 4)])

    def test_orthant_needs_rank(self):
        with pytest.raises(UnsupportedGroup):
            make_cone('orthant-int')


class TestClosedness:
    def test_orthant_proven(self):
        for n in (1, 2, 3):
            cone = instances.orthant(n)
            assert is_closed(cone, lattice_of(cone)).flag == ClosedFlag.PROVEN

    def test_two_ray_proven(self, two_ray):
        assert two_ray.closed_flag == ClosedFlag.PROVEN

    def test_two_ray_sampled_criterion_agrees(self, two_ray):
        assert sample_closedness(two_ray.cone, two_ray, sample_budget=40).flag == ClosedFlag.SAMPLED_OK

    def test_witness_on_orthant(self, plane, faces):
        multiple, ray_id = closedness_witness(plane.cone, plane, faces['0'], (3, 2))
        assert multiple == 1
        assert ray_id == faces['x'].id

    def test_witness_avoids_the_face(self, plane, faces):
        _, ray_id = closedness_witness(plane.cone, plane, faces['x'], (3, 2))
        assert ray_id == faces['y'].id

    def test_no_witness_inside_the_face(self, plane, faces):
        assert closedness_witness(plane.cone, plane, faces['x'], (3, 0)) is None
