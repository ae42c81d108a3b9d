#!/usr/bin/env python3
"""
Tests for the cutting-plane solver, the verifier and the maximality check
"""

import logging
import sys
import unittest
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

# Add the repository root to path (adjust for tests/ subdirectory)
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config import VERDICT_NAMES
from src.core.feasible_set import ExplicitPoints, IntegerPolytope
from src.core.geometry import Halfspace, Polyhedron
from src.core.helly import check_v_condition, lemma_witness, verify_witness
from src.core.numerics import Vector
from src.core.objective import max_affine, quadratic
from src.services.certificate_service import (
    CertificateOutcome,
    CertificateService,
    ContinuousOptimumOutcome,
    InfeasibleOutcome,
    StrongCertificate,
)

logging.basicConfig(level=logging.WARNING, format='%(levelname)s: %(message)s')


def vec(*values):
    return Vector(tuple(Fraction(v) for v in values))


CORNERS = ExplicitPoints((vec(0, 0), vec(1, 0), vec(0, 1), vec(1, 1)))
GRID = IntegerPolytope(Polyhedron.whole_space(2), (0, 0), (2, 2))
CENTERED = quadratic([[2, 0], [0, 2]], [-1, -1], Fraction(1, 2))
SLAB = max_affine([((-1, -1), 1), ((1, 1), -2)])
LINEAR = max_affine([((1, 1), 0)])


class SolveTests(unittest.TestCase):

    def setUp(self):
        self.service = CertificateService()

    def test_unit_square_quadratic(self):
        outcome = self.service.solve(CENTERED, CORNERS)
        self.assertIsInstance(outcome, CertificateOutcome)
        cert = outcome.certificate
        self.assertEqual(cert.k, 4)
        self.assertEqual(outcome.optimum, Fraction(1, 2))
        self.assertEqual(list(cert.points), [vec(0, 0), vec(0, 1), vec(1, 0), vec(1, 1)])
        self.assertEqual(list(cert.subgradients), [vec(-1, -1), vec(-1, 1), vec(1, -1), vec(1, 1)])
        self.assertEqual([h.offset for h in cert.polyhedron.halfspaces], [0, 1, 1, 2])
        self.assertEqual([r.tie_set_size for r in outcome.iterations], [4, 3, 2, 1])

    def test_slab_max_affine(self):
        outcome = self.service.solve(SLAB, GRID)
        cert = outcome.certificate
        self.assertEqual(cert.k, 2)
        self.assertEqual(outcome.optimum, 0)
        self.assertEqual(list(cert.points), [vec(0, 1), vec(0, 2)])
        self.assertEqual(list(cert.subgradients), [vec(-1, -1), vec(1, 1)])
        self.assertEqual([r.face_dim for r in outcome.iterations], [1, 1])

    def test_linear_single_cut(self):
        outcome = self.service.solve(LINEAR, CORNERS)
        self.assertEqual(outcome.certificate.k, 1)
        self.assertEqual(outcome.argmin, vec(0, 0))
        self.assertEqual(outcome.optimum, 0)

    def test_continuous_optimum(self):
        outcome = self.service.solve(CENTERED, ExplicitPoints((vec("1/2", "1/2"),)))
        self.assertIsInstance(outcome, ContinuousOptimumOutcome)
        self.assertEqual(outcome.point, vec("1/2", "1/2"))
        self.assertEqual(outcome.value, 0)

    def test_infeasible(self):
        empty = IntegerPolytope(Polyhedron(2, (Halfspace(vec(1, 0), Fraction(-1)),)), (0, 0), (2, 2))
        self.assertIsInstance(self.service.solve(CENTERED, empty), InfeasibleOutcome)

    def test_certificate_points_satisfy_vertex_condition(self):
        cert = self.service.solve(SLAB, GRID).certificate
        self.assertTrue(check_v_condition(cert.points, GRID))
        self.assertTrue(verify_witness(lemma_witness(cert.points, GRID)))


class VerifyTests(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.service = CertificateService()
        cls.square = cls.service.solve(CENTERED, CORNERS).certificate
        cls.slab = cls.service.solve(SLAB, GRID).certificate

    def test_solver_output_passes(self):
        for cert, f, S in ((self.square, CENTERED, CORNERS), (self.slab, SLAB, GRID)):
            report = self.service.verify(cert, f, S)
            self.assertTrue(report.passed, report.failed_names())
            self.assertTrue(all(report.families.values()))

    def test_tampered_subgradient_breaks_separation(self):
        subgradients = (vec(-1, 0),) + self.square.subgradients[1:]
        tampered = replace(self.square, subgradients=subgradients)
        report = self.service.verify(tampered, CENTERED, CORNERS)
        separation = report.verdict(VERDICT_NAMES['separation'])
        self.assertFalse(separation.passed)
        # z_2 = (0,1): <(-1,0), (0,1) - (0,0)> = 0 is not strictly negative
        self.assertIn([0, 1], [f['pair'] for f in separation.failures])
        self.assertFalse(report.verdict(VERDICT_NAMES['subgradient']).passed)

    def test_flipped_sign(self):
        subgradients = (vec(1, 1),) + self.square.subgradients[1:]
        report = self.service.verify(replace(self.square, subgradients=subgradients), CENTERED, CORNERS)
        self.assertIn(VERDICT_NAMES['subgradient'], report.failed_names())
        self.assertIn(VERDICT_NAMES['separation'], report.failed_names())

    def test_dropped_constraint_is_not_s_free(self):
        square = self.square
        tampered = StrongCertificate(square.points[:3], square.subgradients[:3], square.values[:3],
                                     Polyhedron(2, square.polyhedron.halfspaces[:3]))
        report = self.service.verify(tampered, CENTERED, CORNERS)
        s_free = report.verdict(VERDICT_NAMES['s_free'])
        self.assertFalse(s_free.passed)
        self.assertEqual(s_free.failures[0]['witness'], vec(1, 1))
        self.assertTrue(report.verdict(VERDICT_NAMES['gradient_polyhedron']).passed)

    def test_stated_polyhedron_must_match_pairs(self):
        tampered = replace(self.square, polyhedron=Polyhedron(2, self.square.polyhedron.halfspaces[:3]))
        report = self.service.verify(tampered, CENTERED, CORNERS)
        self.assertEqual(report.failed_names(), [VERDICT_NAMES['gradient_polyhedron']])
        self.assertEqual(report.verdict(VERDICT_NAMES['gradient_polyhedron']).failures[0]['pairs'], 4)
        self.assertFalse(report.families['gradient_polyhedron'])

    def test_scaled_halfspaces_are_accepted(self):
        scaled = tuple(Halfspace(h.normal.scale(3), h.offset * 3) for h in self.slab.polyhedron.halfspaces)
        report = self.service.verify(replace(self.slab, polyhedron=Polyhedron(2, scaled)), SLAB, GRID)
        self.assertTrue(report.passed, report.failed_names())

    def test_unrelated_polyhedron_is_rejected(self):
        # one pair whose own halfspace x1 + x2 >= 1 holds (0,2), sent with the slab 1 <= x1 + x2 <= 2
        forged = StrongCertificate((vec(0, 1),), (vec(-1, -1),), (Fraction(0),), self.slab.polyhedron)
        self.assertTrue(forged.gradient_polyhedron().strict_contains(vec(2, 2)))
        report = self.service.verify(forged, SLAB, GRID)
        self.assertFalse(report.passed)
        self.assertIn(VERDICT_NAMES['gradient_polyhedron'], report.failed_names())
        s_free = report.verdict(VERDICT_NAMES['s_free'])
        self.assertFalse(s_free.passed)
        self.assertEqual(s_free.failures[0]['witness'], vec(0, 2))
        issues = self.service.oracle.cross_check(CertificateOutcome(forged, Fraction(0), vec(0, 1)), SLAB, GRID)
        self.assertEqual([issue['check'] for issue in issues], ['gradient_polyhedron', 'brute_sfree'])

    def test_swapped_points(self):
        points = (self.square.points[1], self.square.points[0]) + self.square.points[2:]
        report = self.service.verify(replace(self.square, points=points), CENTERED, CORNERS)
        self.assertIn(VERDICT_NAMES['subgradient'], report.failed_names())

    def test_wrong_value_fails_optimality(self):
        values = (Fraction(1, 4),) + self.square.values[1:]
        report = self.service.verify(replace(self.square, values=values), CENTERED, CORNERS)
        self.assertIn(VERDICT_NAMES['optimality'], report.failed_names())

    def test_degenerate_polyhedron_flagged(self):
        cert = StrongCertificate.from_cuts([vec(0, 0), vec(1, 1)], [vec(1, 1), vec(-1, -1)], [0, 0])
        report = self.service.verify(cert, LINEAR, CORNERS)
        self.assertIn(VERDICT_NAMES['full_dimensional'], report.failed_names())

    def test_point_outside_s(self):
        cert = StrongCertificate.from_cuts([vec(-1, -1)], [vec(1, 1)], [-2])
        report = self.service.verify(cert, LINEAR, CORNERS)
        self.assertIn(VERDICT_NAMES['membership'], report.failed_names())
        self.assertIn(VERDICT_NAMES['optimality'], report.failed_names())

    def test_verify_outcomes(self):
        continuous = ContinuousOptimumOutcome(vec("1/2", "1/2"), Fraction(0))
        report = self.service.verify_outcome(continuous, CENTERED, ExplicitPoints((vec("1/2", "1/2"),)))
        self.assertTrue(report.passed)
        report = self.service.verify_outcome(InfeasibleOutcome(), CENTERED, CORNERS)
        self.assertFalse(report.passed)
        self.assertEqual(report.failed_names(), [VERDICT_NAMES['empty_set']])


class MaximalityTests(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.service = CertificateService()
        cls.square = cls.service.solve(CENTERED, CORNERS).certificate
        cls.slab = cls.service.solve(SLAB, GRID).certificate

    def test_half_relaxation_frees_each_point(self):
        self.assertEqual(self.service.check_maximality(self.square, CORNERS, Fraction(1, 2)), [True] * 4)
        self.assertEqual(self.service.check_maximality(self.slab, GRID, Fraction(1, 2)), [True, True])

    def test_zero_relaxation_changes_nothing(self):
        self.assertEqual(self.service.check_maximality(self.square, CORNERS, Fraction(0)), [False] * 4)


if __name__ == "__main__":
    unittest.main()
