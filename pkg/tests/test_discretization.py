import numpy as np
import pytest

from lorenz_hulls import (
    DeltaOutOfRange,
    DimensionGuard,
    DiscretizationParams,
    PiecewiseDensityMeasure,
    VectorMeasure,
    discretize,
    hausdorff_convex,
    hull_of,
    partition_sphere,
    product_error_bound,
    product_params,
    skeleton_bound,
    slice_density,
    total_variation_mass,
)
from lorenz_hulls.sampling import case_rng


class TestPartition:
    def test_one_dimensional_sphere_has_two_cells(self):
        part = partition_sphere(1, 0.3)
        assert part.cell_count == 2
        keys = part.cell_of(np.array([[1.0], [-1.0]]))
        assert keys[0] != keys[1]
        for key in keys:
            assert abs(abs(part.representative(key)[0]) - 1.0) <= 1e-12

    def test_plane_at_half(self):
        part = partition_sphere(2, 0.5)
        assert part.resolution == 8
        assert part.cell_count == 32
        # arcs have 1-norm length 2/resolution = 0.25
        assert part.diameter_bound == pytest.approx(0.25)

    def test_representative_near_basis_vector(self):
        part = partition_sphere(3, 0.4)
        e1 = np.array([[1.0, 0.0, 0.0]])
        key = part.cell_of(e1)[0]
        rep = part.representative(key)
        assert np.abs(rep - e1[0]).sum() < 0.4

    def test_same_cell_points_are_close(self):
        rng = case_rng(0, "test.partition")
        part = partition_sphere(3, 0.6)
        raw = rng.standard_normal((4000, 3))
        pts = raw / np.abs(raw).sum(axis=1, keepdims=True)
        cells = {}
        for p, key in zip(pts, part.cell_of(pts)):
            cells.setdefault(key, []).append(p)
        for members in cells.values():
            members = np.array(members)
            spread = np.abs(members[None] - members[:, None]).sum(axis=2).max()
            assert spread < 0.6

    def test_guards(self):
        with pytest.raises(DimensionGuard):
            partition_sphere(7, 0.5)
        with pytest.raises(DeltaOutOfRange):
            partition_sphere(2, 0.0)
        with pytest.raises(DeltaOutOfRange):
            partition_sphere(2, 2.5)

    def test_cells_enumeration_matches_count(self):
        part = partition_sphere(2, 0.9)
        listed = list(part.cells())
        assert len(listed) == part.cell_count
        assert len({key for key, _ in listed}) == len(listed)


class TestDiscretize:
    def test_codirectional_atoms_collapse(self):
        m = VectorMeasure(2, [[2.0, 0.0], [1.0, 0.0]])
        part = partition_sphere(2, 0.5)
        out = discretize(m, part, 4)
        assert out.atom_count == 4
        rep = part.representative(part.cell_of(np.array([[1.0, 0.0]]))[0])
        assert np.abs(out.atoms - 0.75 * rep).max() <= 1e-12
        hull_gap = hausdorff_convex(hull_of(m), hull_of(out)).distance
        assert hull_gap <= 0.5 * total_variation_mass(m)

    def test_zero_measure(self):
        out = discretize(VectorMeasure(2, []), partition_sphere(2, 0.5), 3)
        assert out.atom_count == 0

    def test_mass_preserved(self):
        rng = case_rng(1, "test.discretize")
        m = VectorMeasure(3, rng.uniform(-1, 1, (200, 3)))
        out = discretize(m, partition_sphere(3, 0.4), 2)
        assert total_variation_mass(out) == pytest.approx(
            total_variation_mass(m), rel=1e-9
        )

    def test_hull_error_within_delta_mass(self):
        rng = case_rng(2, "test.discretize")
        m = VectorMeasure(2, rng.uniform(-1, 1, (500, 2)))
        delta = 0.25
        out = discretize(m, partition_sphere(2, delta), 1)
        gap = hausdorff_convex(hull_of(m), hull_of(out)).distance
        assert gap <= delta * total_variation_mass(m)


class TestBounds:
    def test_product_error_bound_arithmetic(self):
        p = DiscretizationParams(delta=0.01, reps=10, bound_constant=1.0, epsilon=0.1)
        assert product_error_bound(p, 1.0, 1.0, 2) == pytest.approx(0.04)

    def test_product_error_bound_vanishes(self):
        p = DiscretizationParams(delta=1e-9, reps=10_000, bound_constant=1.0, epsilon=1.0)
        assert product_error_bound(p, 1.0, 1.0, 2) < 1e-7
        assert product_error_bound(p, 0.0, 1.0, 2) == 0.0

    def test_skeleton_bound_arithmetic(self):
        assert skeleton_bound(2, 1.0, 0.1) == pytest.approx(0.8)
        assert skeleton_bound(2, 1.0, 0.0) == 0.0

    def test_skeleton_bound_monotone(self):
        base = skeleton_bound(2, 1.0, 0.1)
        assert skeleton_bound(3, 1.0, 0.1) > base
        assert skeleton_bound(2, 2.0, 0.1) > base
        assert skeleton_bound(2, 1.0, 0.2) > base

    def test_product_params_meet_constraints(self):
        params = product_params(2, 1.5, 1.2, epsilon=0.25)
        assert params.satisfies_reps_constraint(2, 1.5, 1.2)
        assert params.delta < 0.25 / (4.0 * 1.5 * 1.2)

    def test_skeleton_constraint(self):
        p = DiscretizationParams(delta=0.01, reps=3, bound_constant=1.0, epsilon=0.5)
        assert p.satisfies_skeleton_constraint(2)
        assert not DiscretizationParams(0.1, 3, 1.0, 0.5).satisfies_skeleton_constraint(2)


class TestSliceDensity:
    def test_uniform_slicing(self):
        pd = PiecewiseDensityMeasure(2, [2.0], [[1.0, 0.0]])
        m = slice_density(pd, slices_per_unit=4)
        assert m.atom_count == 8
        assert np.abs(m.atoms - np.array([0.25, 0.0])).max() == 0.0
        assert total_variation_mass(m) == pytest.approx(2.0)

    def test_fractional_piece(self):
        pd = PiecewiseDensityMeasure(1, [0.3], [[2.0]])
        m = slice_density(pd, slices_per_unit=10)
        assert m.atom_count == 3
        assert m.total()[0] == pytest.approx(0.6)
