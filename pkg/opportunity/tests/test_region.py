from django.test import SimpleTestCase

from ..construct import worked_examples
from ..distribution import make_source
from ..exceptions import TooLarge, UndefinedEO
from ..fairopt import min_error_eo
from ..metrics import MetricPoint, bayes, metric_point
from ..region import (brute_force_region, contains, convex_hull, eo_slice,
                      generators, verify_region, zonotope_region)
from ..reports import same_vertices
from .factories import discrete_sources, half_source, random_sources


class CloudRegionTestCase(SimpleTestCase):
    def setUp(self):
        self.cloud = worked_examples()["cloud"]
        self.region = zonotope_region(self.cloud)

    def test_matches_brute_force(self):
        self.assertTrue(same_vertices(self.region, brute_force_region(self.cloud)))

    def test_error_extent(self):
        low, high = self.region.error_extent
        self.assertAlmostEqual(low, 0.3125, places=12)
        self.assertAlmostEqual(high, 0.6875, places=12)

    def test_eo_slice_spans_the_constants(self):
        low, high = eo_slice(self.region)
        self.assertAlmostEqual(low, 0.35, places=12)
        self.assertAlmostEqual(high, 0.65, places=12)

    def test_contains(self):
        self.assertTrue(contains(self.region, MetricPoint(0.5, 0.0)))
        self.assertFalse(contains(self.region, MetricPoint(0.0, 1.0)))
        bayes_point = metric_point(self.cloud.to_float(), bayes(self.cloud.to_float()))
        self.assertTrue(contains(self.region, bayes_point))

    def test_canonical_start(self):
        first = self.region.vertices[0]
        for vertex in self.region.vertices[1:]:
            self.assertLessEqual((first.error, first.opp_diff), (vertex.error, vertex.opp_diff))

    def test_claims(self):
        self.assertEqual(
            verify_region(self.cloud, self.region),
            {"convex": True, "deterministic_witnesses": True, "point_symmetric": True},
        )


class FixtureRegionTestCase(SimpleTestCase):
    def test_non_example(self):
        source = worked_examples()["non-example"]
        region = zonotope_region(source)
        self.assertGreaterEqual(len(region), 4)
        positive = source.dot(source.P, source.Q)
        self.assertTrue(contains(region, MetricPoint(positive, 0.0)))
        self.assertTrue(contains(region, MetricPoint(1 - positive, 0.0)))
        self.assertTrue(contains(region, metric_point(source, bayes(source))))

    def test_ex_plane_slice(self):
        low, _ = eo_slice(zonotope_region(worked_examples()["ex-plane"]))
        self.assertAlmostEqual(low, 0.193886, delta=1e-3)


class DegenerateRegionTestCase(SimpleTestCase):
    def test_half_source_is_a_vertical_segment(self):
        region = zonotope_region(half_source())
        self.assertTrue(region.degenerate)
        self.assertEqual(len(region), 2)
        for vertex in region.vertices:
            self.assertAlmostEqual(vertex.error, 0.5, places=12)
        self.assertEqual(sorted(round(v.opp_diff, 12) for v in region.vertices), [-1.0, 1.0])
        self.assertEqual(eo_slice(region), (0.5, 0.5))

    def test_single_row_per_group(self):
        source = make_source([("x", 0, 0.5, 0.5), ("x", 1, 0.5, 0.5)])
        region = zonotope_region(source)
        self.assertTrue(region.degenerate)
        self.assertTrue(verify_region(source, region)["point_symmetric"])

    def test_undefined_opportunity(self):
        with self.assertRaises(UndefinedEO):
            generators(make_source([("x1", 0, 0.5, 0.5), ("x2", 1, 0.5, 0.0)]))


class RegionPropertyTestCase(SimpleTestCase):
    def test_zonotope_equals_brute_force_hull(self):
        for source in random_sources(2024, 200):
            region = zonotope_region(source)
            self.assertTrue(same_vertices(region, brute_force_region(source)), source)
            self.assertEqual(
                verify_region(source, region),
                {"convex": True, "deterministic_witnesses": True, "point_symmetric": True},
            )

    def test_eo_slice_contains_constants(self):
        for source in random_sources(99, 50):
            low, high = eo_slice(zonotope_region(source))
            positive = source.dot(source.P, source.Q)
            self.assertLessEqual(low, min(positive, 1 - positive) + 1e-9)
            self.assertGreaterEqual(high, max(positive, 1 - positive) - 1e-9)

    def test_grid_rates_match_brute_force(self):
        degenerate = 0
        for source in discrete_sources(2025, 300, exact=False):
            region = zonotope_region(source)
            self.assertTrue(same_vertices(region, brute_force_region(source)), source)
            self.assertEqual(
                verify_region(source, region),
                {"convex": True, "deterministic_witnesses": True, "point_symmetric": True},
            )
            degenerate += region.degenerate
        self.assertLess(degenerate, 300)

    def test_eo_slice_starts_at_the_fair_optimum(self):
        sources = random_sources(100, 100) + discrete_sources(101, 100, exact=False)
        for source in sources:
            low, _ = eo_slice(zonotope_region(source))
            self.assertAlmostEqual(low, min_error_eo(source, 0).error, delta=1e-9)

    def test_threads_do_not_change_the_hull(self):
        source = random_sources(8, 1, low=14, high=14)[0]
        self.assertTrue(
            same_vertices(brute_force_region(source, threads=1), brute_force_region(source, threads=4))
        )


class BruteForceLimitTestCase(SimpleTestCase):
    def test_too_large(self):
        source = make_source((f"x{i}", i % 2, 1 / 21, 0.5) for i in range(21))
        with self.assertRaises(TooLarge):
            brute_force_region(source)


class ConvexHullTestCase(SimpleTestCase):
    def test_drops_interior_and_collinear_points(self):
        points = [(0, 0, 0), (1, 0, 1), (2, 0, 2), (2, 2, 3), (0, 2, 4), (1, 1, 5)]
        self.assertEqual(
            [tag for _, _, tag in convex_hull(points)], [0, 2, 3, 4]
        )
