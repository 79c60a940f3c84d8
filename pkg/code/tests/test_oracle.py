from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from primdecomp import instances
from primdecomp.downset import (DownsetExpr, canonical_decomposition, global_support, local_support, localize,
                                primary_component)
from primdecomp.errors import BoxTooSmall
from primdecomp.oracle import (compare, grid_axes, grid_box, grid_canonical_decomposition, grid_down_closure,
                               grid_global_support, grid_local_support, grid_localize, grid_primary_component,
                               grid_set)
from strategies import downsets


class TestGrid:
    def test_box_reaches_past_endpoints(self, e1):
        assert grid_box(e1, margin=1) == ((-1, -1), (2, 1))

    def test_integer_axes(self, e1):
        assert grid_axes(e1, margin=1) == ((-1, 0, 1, 2), (-1, 0, 1))

    def test_rational_axes_sample_midpoints(self):
        D = DownsetExpr.make(instances.orthant(1, rational=True), [((Fraction(1, 2),), ())])
        assert grid_axes(D, margin=1) == ((Fraction(-1, 2), 0, Fraction(1, 2), 1, Fraction(3, 2)),)

    def test_points_in_lexicographic_order(self, e1):
        G = grid_set(e1, margin=1)
        assert G.points() == [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 0), (0, 1), (1, -1), (1, 0)]

    def test_explicit_box_too_small(self, e2):
        with pytest.raises(BoxTooSmall):
            grid_set(e2, lo=(0, 0), hi=(2, 2), margin=1)

    def test_empty_box(self, e1):
        with pytest.raises(BoxTooSmall):
            grid_axes(e1, lo=(3, 0), hi=(0, 0))


class TestGridOperations:
    def test_e1_local_support_at_origin(self, e1, plane, faces):
        G = grid_set(e1, margin=1)
        assert grid_local_support(G, faces['0'], plane).points() == [(1, -1), (1, 0)]

    def test_e1_local_support_along_y(self, e1, plane, faces):
        G = grid_set(e1, margin=1)
        expected = [(x, y) for x in (-1, 0) for y in (-1, 0, 1)]
        assert grid_local_support(G, faces['y'], plane).points() == expected

    def test_e1_local_support_along_x_is_empty(self, e1, plane, faces):
        G = grid_set(e1, margin=1)
        assert grid_local_support(G, faces['x'], plane).is_empty
        assert grid_local_support(G, faces['xy'], plane).is_empty


class TestAgreement:
    def test_e2_local_supports(self, e2, plane, faces):
        G = grid_set(e2, lo=(-1, -1), hi=(3, 3))
        assert grid_local_support(G, faces['0'], plane).points() == [(1, 1), (1, 2), (2, 1), (2, 2)]
        assert compare(local_support(e2, faces['x']), grid_local_support(G, faces['x'], plane)).equal
        assert compare(local_support(e2, faces['y']), grid_local_support(G, faces['y'], plane)).equal

    def test_mismatch_reports_first_point(self, e1):
        shifted = DownsetExpr.make(instances.orthant(2), [((0, 0), (1,)), ((2, 0), ())])
        G = grid_set(shifted, lo=(-1, -1), hi=(3, 1))
        result = compare(e1, G)
        assert not result.equal
        assert result.mismatch == (2, -1)
        assert result.symbolic_member is False

    def test_down_closure_of_a_point(self, e1, plane, faces):
        G = grid_set(e1, margin=1)
        closure = grid_down_closure(grid_local_support(G, faces['0'], plane))
        assert compare(primary_component(e1, faces['0']), closure).equal

    def test_decomposition_faces(self, e2, plane, faces):
        G = grid_set(e2, margin=1)
        assert [face for face, _ in grid_canonical_decomposition(G, plane)] == [faces['x'], faces['y'], faces['0']]

    def test_hyperbola(self):
        D = instances.hyperbola_staircase(steps=6)
        lattice = D.lattice
        G = grid_set(D, margin=1)
        for face in lattice.faces:
            assert compare(local_support(D, face), grid_local_support(G, face, lattice)).equal

    @given(downsets())
    def test_every_operation_agrees(self, D):
        lattice = D.lattice
        for margin in (1, 3):
            G = grid_set(D, margin=margin)
            for face in lattice.faces:
                assert compare(localize(D, face), grid_localize(G, face)).equal
                assert compare(global_support(D, face), grid_global_support(G, face, lattice)).equal
                assert compare(local_support(D, face), grid_local_support(G, face, lattice)).equal
                assert compare(primary_component(D, face), grid_primary_component(G, face, lattice)).equal
            symbolic = [face for face, _ in canonical_decomposition(D)]
            assert symbolic == [face for face, _ in grid_canonical_decomposition(G, lattice)]

    @given(downsets(n=2, rational=True))
    def test_rational_operations_agree(self, D):
        lattice = D.lattice
        G = grid_set(D, margin=1)
        for face in lattice.faces:
            assert compare(local_support(D, face), grid_local_support(G, face, lattice)).equal
            assert compare(primary_component(D, face), grid_primary_component(G, face, lattice)).equal


@pytest.mark.slow
def test_random_suite_agrees_with_the_grid():
    rng = np.random.default_rng(0)
    for _ in range(200):
        D = instances.random_downset(rng, n=int(rng.integers(1, 4)), max_pieces=5, spread=3)
        lattice = D.lattice
        G = grid_set(D, margin=1)
        for face in lattice.faces:
            assert compare(localize(D, face), grid_localize(G, face)).equal
            assert compare(global_support(D, face), grid_global_support(G, face, lattice)).equal
            assert compare(local_support(D, face), grid_local_support(G, face, lattice)).equal
            assert compare(primary_component(D, face), grid_primary_component(G, face, lattice)).equal
        symbolic = [face for face, _ in canonical_decomposition(D)]
        assert symbolic == [face for face, _ in grid_canonical_decomposition(G, lattice)]
