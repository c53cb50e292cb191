from django.test import SimpleTestCase

from ..construct import (EX_PLANE_P, EX_PLANE_Q, PlaneInstance, random_plane_instance,
                         check_sufficiency, ex_plane_instance,
                         impossibility_source, worked_examples,
                         plane_certificate, sufficiency_predictor)
from ..distribution import make_source
from ..exceptions import ConstraintViolation, SufficiencyNotMet
from ..fairopt import compatibility_verdict, min_error_eo, oracle_min_error_eo
from ..metrics import accuracy, opp_diff, trivial_accuracy
from .factories import random_sources


class RandomPlaneInstanceTestCase(SimpleTestCase):
    def test_seeded_instances_are_impossibility_examples(self):
        for seed in range(100):
            instance = random_plane_instance(seed)
            self.assertTrue(instance.satisfied, instance)
            self.assertLess(instance.a, instance.c)
            self.assertLess(instance.c, instance.b)
            self.assertTrue(plane_certificate(instance))

            source = impossibility_source(instance)
            verdict = compatibility_verdict(source)
            self.assertFalse(verdict.compatible, seed)
            best = min_error_eo(source, 0)
            self.assertAlmostEqual(best.error, 1 - source.dot(source.P, source.Q), places=9)

    def test_ten_thousand_seeds_satisfy_the_constraints(self):
        for seed in range(10**4):
            instance = random_plane_instance(seed)
            self.assertTrue(all(instance.constraints().values()), seed)
            self.assertLess(instance.a, instance.c, seed)
            self.assertLess(instance.c, instance.b, seed)

    def test_oracle_confirms_the_constant_one_is_fair_optimal(self):
        for seed in range(10**3):
            source = impossibility_source(random_plane_instance(seed))
            self.assertAlmostEqual(
                oracle_min_error_eo(source), 1 - source.dot(source.P, source.Q), places=9, msg=seed
            )

    def test_deterministic(self):
        self.assertEqual(random_plane_instance(42), random_plane_instance(42))
        self.assertNotEqual(random_plane_instance(42).P, random_plane_instance(43).P)

    def test_printed_instance(self):
        printed = PlaneInstance(EX_PLANE_P, EX_PLANE_Q)
        self.assertEqual(
            printed.constraints(),
            {"C1": True, "C2": True, "C3": True, "C4": True, "C5": True},
        )
        instance = ex_plane_instance()
        self.assertTrue(instance.satisfied)
        self.assertTrue(plane_certificate(instance))
        self.assertFalse(compatibility_verdict(impossibility_source(instance)).compatible)

    def test_violated_constraints(self):
        instance = PlaneInstance((0.3, 0.3, 0.4), (0.6, 0.6, 0.6))
        self.assertFalse(instance.c3)
        with self.assertRaises(ConstraintViolation):
            impossibility_source(instance)


class SufficiencyTestCase(SimpleTestCase):
    def setUp(self):
        self.fixtures = worked_examples()

    def test_cloud_fails(self):
        report = check_sufficiency(self.fixtures["cloud"])
        self.assertFalse(report.holds)
        self.assertEqual(report.below_1, 0)
        with self.assertRaises(SufficiencyNotMet):
            sufficiency_predictor(self.fixtures["cloud"])

    def test_non_example_holds(self):
        source = self.fixtures["non-example"]
        self.assertTrue(check_sufficiency(source).holds)
        predictor = sufficiency_predictor(source)
        self.assertLessEqual(abs(opp_diff(source, predictor)), 1e-12)
        self.assertGreater(accuracy(source, predictor), trivial_accuracy(source))

    def test_zero_rate_branch(self):
        source = make_source(
            [("a", 0, 0.3, 0.9), ("b", 0, 0.2, 0.0), ("c", 1, 0.3, 0.9), ("d", 1, 0.2, 0.3)]
        )
        predictor = sufficiency_predictor(source)
        self.assertEqual(list(predictor.pointwise(source)), [1.0, 0.5, 1.0, 1.0])
        self.assertAlmostEqual(accuracy(source, predictor), 0.7, places=12)

    def test_random_sources(self):
        checked = 0
        for source in random_sources(77, 80) + random_sources(78, 20, exact=True):
            if not check_sufficiency(source).holds:
                continue
            predictor = sufficiency_predictor(source)
            self.assertGreater(accuracy(source, predictor), trivial_accuracy(source))
            self.assertTrue(compatibility_verdict(source).compatible)
            checked += 1
        self.assertGreater(checked, 0)


class WorkedExamplesTestCase(SimpleTestCase):
    def test_keys_and_shapes(self):
        fixtures = worked_examples()
        self.assertEqual(sorted(fixtures), ["cloud", "ex-plane", "non-example"])
        self.assertTrue(fixtures["cloud"].exact)
        self.assertEqual(list(fixtures["non-example"].A), [0, 1, 0, 1])
        self.assertEqual(list(fixtures["ex-plane"].A), [0, 0, 1])
        self.assertAlmostEqual(fixtures["ex-plane"].total(fixtures["ex-plane"].P), 1.0, places=12)
