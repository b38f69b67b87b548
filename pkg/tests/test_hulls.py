import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lorenz_hulls import (
    DimensionMismatch,
    Exact2dOnPlaneOnly,
    SkeletonPointSet,
    TooManyAtoms,
    VectorMeasure,
    Zonotope,
    area_2d,
    contains_point,
    hausdorff_convex,
    hausdorff_points,
    hull_of,
    includes,
    reach,
    reach_many,
    shoelace_area,
    skeleton_points,
    within_tolerance,
    zonogon_vertices,
)
from lorenz_hulls.hulls import ZonogonSupport
from lorenz_hulls.sampling import case_rng, unit_directions

SQUARE = Zonotope(2, [[1, 0], [0, 1]])


def brute_reach(z, d):
    """Subset-sum oracle for the support value."""
    best = 0.0
    sums = [np.zeros(z.dimension)]
    for g in z.generators:
        sums += [s + g for s in sums]
    for s in sums:
        best = max(best, float(np.dot(d, s)))
    return best


class TestHull:
    def test_zero_atoms_dropped(self):
        z = hull_of(VectorMeasure(2, [[1, 0], [0, 1], [0, 0]]))
        assert z.generators.tolist() == [[1, 0], [0, 1]]

    def test_zero_measure(self):
        z = hull_of(VectorMeasure(2, []))
        assert z.generator_count == 0

    def test_single_generator_kept(self):
        z = hull_of(VectorMeasure(2, [[-1, 2]]))
        assert z.generators.tolist() == [[-1, 2]]


class TestReach:
    def test_square_diagonal(self):
        assert reach(SQUARE, [1, 1]) == brute_reach(SQUARE, [1, 1]) == 2.0

    def test_negative_direction_clips_to_zero(self):
        assert reach(SQUARE, [-1, -1]) == 0.0

    def test_single_negative_dot(self):
        assert reach(Zonotope(2, [[2, 3]]), [1, -1]) == 0.0

    def test_oracle_agreement_random(self):
        rng = case_rng(0, "test.reach")
        for _ in range(20):
            n = int(rng.integers(2, 4))
            z = hull_of(VectorMeasure(n, rng.uniform(-2, 2, (int(rng.integers(1, 7)), n))))
            d = rng.normal(size=n)
            assert within_tolerance(reach(z, d), brute_reach(z, d))

    @settings(deadline=None, max_examples=40)
    @given(st.floats(min_value=0.01, max_value=100.0))
    def test_positive_homogeneity(self, scale):
        d = np.array([0.3, -1.7])
        assert within_tolerance(reach(SQUARE, scale * d), scale * reach(SQUARE, d))

    def test_contains_zero_and_total(self):
        rng = case_rng(1, "test.reach.total")
        z = hull_of(VectorMeasure(3, rng.uniform(-1, 1, (5, 3))))
        for _ in range(50):
            d = rng.normal(size=3)
            assert reach(z, d) >= -1e-12
            assert reach(z, d) >= float(d @ z.total()) - 1e-9


class TestSkeleton:
    def test_unit_square_points(self):
        s = skeleton_points(VectorMeasure(2, [[1, 0], [0, 1]]))
        assert s.points.tolist() == [[0, 0], [0, 1], [1, 0], [1, 1]]

    def test_zero_measure(self):
        s = skeleton_points(VectorMeasure(3, []))
        assert s.points.tolist() == [[0, 0, 0]]

    def test_duplicate_sums_collapse(self):
        s = skeleton_points(VectorMeasure(2, [[1, 0], [1, 0]]))
        assert s.points.tolist() == [[0, 0], [1, 0], [2, 0]]

    def test_guard(self):
        with pytest.raises(TooManyAtoms):
            skeleton_points(VectorMeasure(1, np.ones((21, 1))))

    def test_central_symmetry_exact_on_dyadic(self):
        rng = case_rng(2, "test.skeleton")
        atoms = rng.integers(-8, 9, (6, 2)) / 4.0
        s = skeleton_points(VectorMeasure(2, atoms))
        mirrored = np.unique(s.total - s.points, axis=0)
        assert np.array_equal(mirrored, s.points)


class TestZonogon:
    def test_unit_square_ccw(self):
        v = zonogon_vertices(SQUARE)
        assert v.tolist() == [[0, 0], [1, 0], [1, 1], [0, 1]]

    def test_colinear_generators_merge_to_segment(self):
        v = zonogon_vertices(Zonotope(2, [[1, 0], [1, 0]]))
        assert v.tolist() == [[0, 0], [2, 0]]

    def test_empty_is_origin(self):
        assert zonogon_vertices(Zonotope(2, [])).tolist() == [[0, 0]]

    def test_flipped_generators_offset(self):
        v = zonogon_vertices(Zonotope(2, [[1, -1]]))
        assert sorted(v.tolist()) == [[0, 0], [1, -1]]

    def test_plane_only(self):
        with pytest.raises(Exact2dOnPlaneOnly):
            zonogon_vertices(Zonotope(3, [[1, 0, 0]]))

    def test_support_equivalence(self):
        rng = case_rng(3, "test.zonogon")
        for _ in range(10):
            z = hull_of(VectorMeasure(2, rng.uniform(-2, 2, (int(rng.integers(1, 9)), 2))))
            v = zonogon_vertices(z)
            dirs = unit_directions(rng, 500, 2)
            assert within_tolerance((dirs @ v.T).max(axis=1), reach_many(z, dirs))


class TestArea:
    def test_unit_square(self):
        assert area_2d(SQUARE) == 1.0

    def test_income_pair(self):
        z = Zonotope(2, [[0.5, 0.25], [0.5, 0.75]])
        assert area_2d(z) == pytest.approx(0.25, rel=1e-12)
        assert area_2d(z) == pytest.approx(shoelace_area(zonogon_vertices(z)), rel=1e-9)

    def test_segment_has_no_area(self):
        assert area_2d(Zonotope(2, [[2, 3]])) == 0.0

    def test_matches_shoelace_random(self):
        rng = case_rng(4, "test.area")
        for _ in range(20):
            z = hull_of(VectorMeasure(2, rng.uniform(-2, 2, (int(rng.integers(1, 10)), 2))))
            assert within_tolerance(area_2d(z), shoelace_area(zonogon_vertices(z)))


class TestContainsPoint:
    def test_origin_inside_with_zero_coefficients(self):
        r = contains_point(SQUARE, [0, 0])
        assert r.inside and r.coefficients.tolist() == [0, 0]

    def test_total_inside_with_unit_coefficients(self):
        r = contains_point(SQUARE, [1, 1])
        assert r.inside and r.coefficients.tolist() == [1, 1]

    def test_outside_with_witness(self):
        r = contains_point(SQUARE, [1.5, 0])
        assert not r.inside
        assert float(r.witness @ [1.5, 0]) > reach(SQUARE, r.witness) + 1e-9
        assert r.distance == pytest.approx(0.5, abs=1e-9)

    def test_inside_certificate_reconstructs(self):
        rng = case_rng(5, "test.contains")
        for _ in range(10):
            z = hull_of(VectorMeasure(3, rng.uniform(-2, 2, (5, 3))))
            lam = rng.uniform(0, 1, 5)
            p = lam @ z.generators
            r = contains_point(z, p, tol=1e-9)
            assert r.inside
            assert np.abs(r.coefficients @ z.generators - p).sum() <= 2e-9
            assert (r.coefficients >= 0).all() and (r.coefficients <= 1).all()

    def test_empty_zonotope(self):
        z = Zonotope(2, [])
        assert contains_point(z, [0, 0]).inside
        assert not contains_point(z, [0.5, 0]).inside


class TestIncludes:
    def test_reflexive(self):
        assert includes(SQUARE, SQUARE).verdict == "included"
        assert includes(SQUARE, SQUARE, "sampled", dirs=64).verdict == "no_violation_found"

    def test_scaled_inside(self):
        inner = Zonotope(2, [[0.3, 0], [0, 0.9]])
        assert includes(inner, SQUARE).verdict == "included"

    def test_square_not_in_diagonal_segment(self):
        segment = Zonotope(2, [[1, 1]])
        r = includes(SQUARE, segment)
        assert r.verdict == "excluded"
        assert reach(SQUARE, r.witness) > reach(segment, r.witness) + 1e-9

    def test_sampled_any_dimension(self):
        inner = Zonotope(3, [[0.5, 0, 0]])
        outer = Zonotope(3, np.eye(3))
        assert includes(inner, outer, "sampled", dirs=200).verdict == "no_violation_found"
        r = includes(outer, inner, "sampled", dirs=200)
        assert r.verdict == "excluded"

    def test_exact2d_guard(self):
        with pytest.raises(Exact2dOnPlaneOnly):
            includes(Zonotope(3, []), Zonotope(3, []), "exact2d")

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            includes(SQUARE, Zonotope(3, []))


def brute_hausdorff_segments(a, b, samples=4001):
    grid = np.linspace(0.0, 1.0, samples)
    pa = grid[:, None] * np.asarray(a, float)[None, :]
    pb = grid[:, None] * np.asarray(b, float)[None, :]

    def directed(p, q):
        worst = 0.0
        for i in range(0, len(p), 1024):
            block = np.abs(p[i : i + 1024, None, :] - q[None, :, :]).sum(axis=2)
            worst = max(worst, float(block.min(axis=1).max()))
        return worst

    return max(directed(pa, pb), directed(pb, pa))


class TestHausdorffConvex:
    def test_identical_is_zero(self):
        r = hausdorff_convex(SQUARE, SQUARE)
        assert r.distance == 0.0 and r.mode == "exact"

    def test_nested_segments(self):
        r = hausdorff_convex(Zonotope(2, [[1, 0]]), Zonotope(2, [[2, 0]]))
        assert r.distance == pytest.approx(1.0, abs=1e-12)

    def test_square_vs_origin(self):
        r = hausdorff_convex(SQUARE, Zonotope(2, []))
        assert r.distance == pytest.approx(2.0, abs=1e-12)

    def test_maximizer_need_not_be_sign_vector(self):
        # the (2,1)/(1,2) segment pair: sign vectors only see distance 1
        r = hausdorff_convex(Zonotope(2, [[2, 1]]), Zonotope(2, [[1, 2]]))
        assert r.distance == pytest.approx(1.5, abs=1e-12)
        assert r.distance == pytest.approx(
            brute_hausdorff_segments([2, 1], [1, 2]), abs=1e-3
        )

    def test_segment_pairs_match_brute_force(self):
        rng = case_rng(6, "test.hausdorff")
        for _ in range(5):
            a, b = rng.uniform(-2, 2, 2), rng.uniform(-2, 2, 2)
            exact = hausdorff_convex(Zonotope(2, a[None]), Zonotope(2, b[None]))
            pitch = max(np.abs(a).sum(), np.abs(b).sum()) / 4000
            assert abs(exact.distance - brute_hausdorff_segments(a, b)) <= 2 * pitch

    def test_lp_route_matches_planar_exact(self):
        # embed a planar pair into 3-space; both routes must agree
        rng = case_rng(7, "test.hausdorff.lp")
        g1 = rng.uniform(-1, 1, (4, 2))
        g2 = rng.uniform(-1, 1, (3, 2))
        planar = hausdorff_convex(Zonotope(2, g1), Zonotope(2, g2))
        lifted = hausdorff_convex(
            Zonotope(3, np.column_stack([g1, np.zeros(4)])),
            Zonotope(3, np.column_stack([g2, np.zeros(3)])),
        )
        assert lifted.mode == "exact"
        assert lifted.distance == pytest.approx(planar.distance, abs=1e-8)

    def test_sampled_mode_reported(self):
        rng = case_rng(8, "test.hausdorff.sampled")
        z1 = Zonotope(3, rng.uniform(-1, 1, (12, 3)))
        z2 = Zonotope(3, rng.uniform(-1, 1, (12, 3)))
        r = hausdorff_convex(z1, z2)
        assert r.mode == "sampled"
        assert r.distance >= 0.0


class TestHausdorffPoints:
    def test_identical(self):
        s = skeleton_points(VectorMeasure(2, [[1, 0], [0, 1]]))
        assert hausdorff_points(s, s).distance == 0.0

    def test_hand_example(self):
        a = SkeletonPointSet(2, np.array([[0.0, 0.0]]), np.zeros(2))
        b = SkeletonPointSet(2, np.array([[0.0, 0.0], [1.0, 1.0]]), np.ones(2))
        assert hausdorff_points(a, b).distance == 2.0

    def test_symmetry(self):
        rng = case_rng(9, "test.points")
        a = SkeletonPointSet(3, rng.uniform(-1, 1, (40, 3)), np.zeros(3))
        b = SkeletonPointSet(3, rng.uniform(-1, 1, (25, 3)), np.zeros(3))
        assert hausdorff_points(a, b).distance == hausdorff_points(b, a).distance

    def test_size_guard(self):
        from lorenz_hulls import SizeGuard

        huge = SkeletonPointSet(1, np.zeros(((1 << 20) + 1, 1)), np.zeros(1))
        small = SkeletonPointSet(1, np.zeros((1, 1)), np.zeros(1))
        with pytest.raises(SizeGuard):
            hausdorff_points(huge, small)

    def test_tree_path_matches_direct(self):
        rng = case_rng(11, "test.points.tree")
        a = SkeletonPointSet(2, rng.uniform(-1, 1, (3000, 2)), np.zeros(2))
        b = SkeletonPointSet(2, rng.uniform(-1, 1, (2500, 2)), np.zeros(2))

        def directed(p, q):
            worst = 0.0
            for i in range(0, len(p), 500):
                block = np.abs(p[i : i + 500, None, :] - q[None, :, :]).sum(axis=2)
                worst = max(worst, float(block.min(axis=1).max()))
            return worst

        # 3000 * 2500 > 2^22 sends the library down the KD-tree path
        full = hausdorff_points(a, b).distance
        expected = max(directed(a.points, b.points), directed(b.points, a.points))
        assert full == pytest.approx(expected, abs=1e-12)


class TestZonogonSupport:
    def test_matches_reach(self):
        rng = case_rng(10, "test.support")
        for _ in range(10):
            gens = rng.uniform(-2, 2, (int(rng.integers(1, 60)), 2))
            z = Zonotope(2, gens)
            table = ZonogonSupport(gens)
            queries = rng.normal(size=(200, 2))
            assert within_tolerance(table.eval(queries), reach_many(z, queries))

    def test_zero_query(self):
        table = ZonogonSupport(np.array([[1.0, 2.0]]))
        assert table.eval(np.zeros((1, 2)))[0] == 0.0
