from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given

from primdecomp import instances
from primdecomp.downset import (CoprincipalPiece, DownsetExpr, canonical_decomposition, disjoint_support_parts,
                                global_support, is_coprimary_downset, local_support, localize, member, normalize,
                                primary_component, prune_redundant)
from primdecomp.errors import DecompositionUnionMismatch, FaceNotInLattice, RankMismatch, UnsupportedGroup
from primdecomp.region import Region
from strategies import downsets


def piece(apex, face=(), mode='int', strict=None):
    return CoprincipalPiece.make(apex, face, mode, strict)


def union_of_local_supports(D):
    union = Region.empty(D.n, D.mode)
    for face in D.lattice.faces:
        union = union.union(local_support(D, face))
    return union


class TestPieces:
    def test_face_coordinates_erased(self):
        assert piece((5, 7), (1,)).apex == (5, 0)

    def test_integer_strict_bound_tightened(self):
        assert piece((2, Fraction(5, 2)), (), 'int', (True, True)).apex == (1, 2)

    def test_rational_strict_bound_kept(self):
        p = piece((Fraction(1, 2), 0), (), 'rat', (True, False))
        assert p.contains((Fraction(1, 3), -4))
        assert not p.contains((Fraction(1, 2), 0))

    def test_coprincipal_is_its_own_localization(self, faces):
        D = DownsetExpr.make(instances.orthant(2), [((1, 3), (1,))])
        assert localize(D, faces['y']) == D

    def test_bad_face(self):
        with pytest.raises(FaceNotInLattice):
            piece((0, 0), (2,))

    def test_group_must_be_an_orthant(self):
        with pytest.raises(UnsupportedGroup):
            DownsetExpr.make(instances.two_ray_cone(), [((0, 0), ())])

    def test_rank_mismatch(self):
        with pytest.raises(RankMismatch):
            DownsetExpr.make(instances.orthant(2), [((0, 0, 0), ())])


class TestNormalize:
    def test_dominated_piece_removed(self):
        D = DownsetExpr.make(instances.orthant(2), [((0, 0), (1,)), ((-1, 0), ())])
        assert D.pieces == (piece((0, 0), (1,)),)

    def test_duplicates_removed(self):
        D = DownsetExpr.make(instances.orthant(2), [((1, 1), ()), ((1, 1), ()), ((1, 9), (1,))])
        assert D.pieces == (piece((1, 0), (1,)),)

    def test_deterministic_order(self, e2):
        assert [p.face for p in e2.pieces] == [(), (0,), (1,)]

    @given(downsets())
    def test_normalize_keeps_the_set(self, D):
        assert normalize(D).region().equals(D.region())

    @given(downsets(n=2))
    def test_member_agrees_with_region(self, D):
        region = D.region()
        for q in [(x, y) for x in range(-5, 6) for y in range(-5, 6)]:
            assert member(q, D) == region.contains(q)

    def test_member_example(self):
        assert member((0, 5), DownsetExpr.make(instances.orthant(2), [((0, 0), (1,))]))


class TestLocalize:
    def test_e1_along_y(self, e1, faces):
        assert localize(e1, faces['y']).pieces == (piece((0, 0), (1,)),)

    def test_e1_along_x(self, e1, faces):
        assert localize(e1, faces['x']).pieces == ()

    def test_trivial_face_is_identity(self, e2, faces):
        assert localize(e2, faces['0']) == e2

    def test_foreign_face(self, e1, two_ray):
        with pytest.raises(FaceNotInLattice):
            localize(e1, two_ray.rays[0])

    @given(downsets())
    def test_idempotent_and_composes(self, D):
        lattice = D.lattice
        for face in lattice.faces:
            once = localize(D, face)
            assert localize(once, face) == once
            for other in lattice.faces:
                assert localize(once, other).region().equals(localize(D, lattice.join(face, other)).region())


class TestSupports:
    def test_e1_global_support_at_origin(self, e1, faces):
        assert global_support(e1, faces['0']).equals(Region.box((1, None), (1, 0)))

    def test_full_face_global_support_is_everything(self, e1, faces):
        assert global_support(e1, faces['xy']).equals(e1.region())

    def test_coprincipal_is_globally_supported_along_its_face(self, faces):
        D = DownsetExpr.make(instances.orthant(2), [((2, 0), (0,))])
        assert global_support(D, faces['x']).equals(D.region())

    def test_e2_local_support_at_origin(self, e2, faces):
        assert local_support(e2, faces['0']).equals(Region.box((1, 1), (2, 2)))

    def test_e2_local_support_along_x(self, e2, faces):
        assert local_support(e2, faces['x']).equals(Region.box((None, None), (None, 0)))

    def test_empty_localization_has_empty_support(self, e1, faces):
        assert local_support(e1, faces['x']).is_empty

    @given(downsets())
    def test_union_of_local_supports_is_the_downset(self, D):
        assert union_of_local_supports(D).equals(D.region())

    @given(downsets(rational=True, n=2))
    def test_union_of_local_supports_over_q(self, D):
        assert union_of_local_supports(D).equals(D.region())

    @given(downsets())
    def test_support_parts_disjoint(self, D):
        parts = disjoint_support_parts(D)
        region = D.region()
        for (_, a), (_, b) in combinations(parts, 2):
            assert a.intersect(b).is_empty
        for _, part in parts:
            assert part.issubset(region)


class TestPrimaryComponents:
    def test_e2_at_origin(self, e2, faces):
        assert primary_component(e2, faces['0']).pieces == (piece((2, 2)),)

    def test_e2_along_x(self, e2, faces):
        assert primary_component(e2, faces['x']).pieces == (piece((0, 0), (0,)),)

    def test_coprincipal_is_its_own_component(self, faces):
        D = DownsetExpr.make(instances.orthant(2), [((-1, 4), (1,))])
        assert primary_component(D, faces['y']) == D

    def test_e1_decomposition(self, e1, faces):
        components = canonical_decomposition(e1)
        assert [face for face, _ in components] == [faces['y'], faces['0']]
        assert components[0][1].pieces == (piece((0, 0), (1,)),)
        assert components[1][1].pieces == (piece((1, 0)),)

    def test_e2_decomposition(self, e2, faces):
        components = canonical_decomposition(e2)
        assert [face for face, _ in components] == [faces['x'], faces['y'], faces['0']]
        assert [c.pieces for _, c in components] == [(piece((0, 0), (0,)),), (piece((0, 0), (1,)),), (piece((2, 2)),)]

    def test_single_coprincipal_has_one_component(self, faces):
        D = DownsetExpr.make(instances.orthant(2), [((3, 3), (0,))])
        assert canonical_decomposition(D) == [(faces['x'], D)]

    def test_empty_downset_has_no_components(self):
        assert canonical_decomposition(DownsetExpr.make(instances.orthant(2), [])) == []

    def test_hyperbola_staircase(self, faces):
        D = instances.hyperbola_staircase()
        components = canonical_decomposition(D)
        assert [face for face, _ in components] == [faces['x'], faces['y'], faces['0']]
        assert len(components[2][1].pieces) == 20

    def test_integer_hyperbola_staircase(self, faces):
        D = instances.hyperbola_staircase_int(12)
        components = canonical_decomposition(D)
        assert [face for face, _ in components] == [faces['x'], faces['y'], faces['0']]

    def test_union_mismatch_is_reported(self, e1, monkeypatch):
        from primdecomp import downset
        monkeypatch.setattr(downset, 'primary_component', lambda D, face: D.with_pieces(()))
        with pytest.raises(DecompositionUnionMismatch):
            downset.canonical_decomposition(e1)

    @given(downsets())
    def test_components_are_coprimary_for_their_face(self, D):
        for face, component in canonical_decomposition(D):
            assert is_coprimary_downset(component) == face


class TestPruning:
    def test_e2_unchanged(self, e2):
        components = canonical_decomposition(e2)
        assert prune_redundant(components, e2) == components

    def test_duplicate_removed(self, e2):
        components = canonical_decomposition(e2)
        pruned = prune_redundant(components + [components[0]], e2)
        assert len(pruned) == 3
        assert {face for face, _ in pruned} == {face for face, _ in components}

    def test_single_component_unchanged(self, faces):
        D = DownsetExpr.make(instances.orthant(2), [((1, 1), ())])
        assert prune_redundant([(faces['0'], D)], D) == [(faces['0'], D)]

    def test_redundant_component_removed(self, e2, faces):
        covered = DownsetExpr.make(instances.orthant(2), [((-1, -1), ())])
        components = canonical_decomposition(e2) + [(faces['0'], covered)]
        assert len(prune_redundant(components, e2)) == 3


class TestCoprimary:
    def test_box(self, faces):
        assert is_coprimary_downset(DownsetExpr.make(instances.orthant(2), [((2, 2), ())])) == faces['0']

    def test_strip(self, faces):
        assert is_coprimary_downset(DownsetExpr.make(instances.orthant(2), [((0, 0), (0,))])) == faces['x']

    def test_e2_is_not_coprimary(self, e2):
        assert is_coprimary_downset(e2) is None

    def test_empty_downset(self):
        assert is_coprimary_downset(DownsetExpr.make(instances.orthant(2), [])) is None


@pytest.mark.slow
def test_random_suite_union_and_disjointness():
    rng = np.random.default_rng(0)
    for _ in range(200):
        D = instances.random_downset(rng, n=int(rng.integers(1, 4)), max_pieces=5, spread=3)
        assert union_of_local_supports(D).equals(D.region())
        parts = disjoint_support_parts(D)
        for (_, a), (_, b) in combinations(parts, 2):
            assert a.intersect(b).is_empty
