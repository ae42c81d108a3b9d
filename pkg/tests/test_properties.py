#!/usr/bin/env python3
"""
Randomized checks: solver against verifier, brute force and duality

Set STRONGCERT_PROPERTY_INSTANCES to change the number of random instances (default 500).
"""

import logging
import os
import sys
import unittest
from fractions import Fraction
from pathlib import Path

# Add the repository root to path (adjust for tests/ subdirectory)
sys.path.insert(0, str(Path(__file__).parent.parent))

import numpy as np

from src.core.feasible_set import IntegerPolytope
from src.core.geometry import Box, Halfspace, Polyhedron, system_dimension
from src.core.helly import check_v_condition, lemma_witness, verify_witness
from src.core.numerics import Matrix, Vector, nullspace
from src.core.objective import AffinePiece, MaxAffine, Quadratic, Sum
from src.services.certificate_service import CertificateOutcome, CertificateService, ContinuousOptimumOutcome
from src.services.duality_service import DualityService
from src.services.oracle_service import OracleService

logging.basicConfig(level=logging.WARNING, format='%(levelname)s: %(message)s')

INSTANCE_COUNT = int(os.environ.get('STRONGCERT_PROPERTY_INSTANCES', '500'))


def random_vector(rng, n, low, high):
    return Vector(tuple(Fraction(int(v)) for v in rng.integers(low, high + 1, size=n)))


def random_quadratic(rng, n):
    """1/2 (x - c)^T B^T B (x - c) with c on the half-integer grid of [-2, 4]^n"""
    B = rng.integers(-1, 2, size=(int(rng.integers(1, n + 1)), n))
    G = B.T @ B
    A = Matrix(tuple(tuple(Fraction(int(v)) for v in row) for row in G))
    center = Vector(tuple(Fraction(int(v), 2) for v in rng.integers(-4, 9, size=n)))
    Ac = A @ center
    return Quadratic(A, -Ac, Ac.dot(center) / 2)


def random_max_affine(rng, n):
    count = int(rng.integers(1, 6))
    return MaxAffine(tuple(AffinePiece(random_vector(rng, n, -2, 2), Fraction(int(rng.integers(-3, 4))))
                           for _ in range(count)))


def random_objective(rng, n):
    kind = int(rng.integers(0, 3))
    if kind == 0:
        return random_quadratic(rng, n)
    if kind == 1:
        return random_max_affine(rng, n)
    return Sum((random_quadratic(rng, n), random_max_affine(rng, n)))


def random_set(rng, n):
    """Integer points of [0,3]^n cut by up to two halfspaces that all keep one chosen box point"""
    anchor = random_vector(rng, n, 0, 3)
    halfspaces = []
    for _ in range(int(rng.integers(0, 3))):
        normal = random_vector(rng, n, -2, 2)
        if normal.is_zero():
            continue
        halfspaces.append(Halfspace(normal, normal.dot(anchor) + int(rng.integers(0, 3))))
    return IntegerPolytope(Polyhedron(n, tuple(halfspaces)), (0,) * n, (3,) * n)


class SolverPropertyTests(unittest.TestCase):

    def test_random_instances(self):
        rng = np.random.default_rng(20240601)
        solver = CertificateService()
        duality = DualityService()
        oracle = OracleService()
        for trial in range(INSTANCE_COUNT):
            n = int(rng.integers(1, 4))
            f = random_objective(rng, n)
            S = random_set(rng, n)
            with self.subTest(trial=trial, n=n):
                outcome = solver.solve(f, S)
                report = solver.verify_outcome(outcome, f, S)
                self.assertTrue(report.passed, report.failed_names())
                self.assertEqual(oracle.cross_check(outcome, f, S), [])
                best, _ = oracle.brute_min(f, S)
                if isinstance(outcome, ContinuousOptimumOutcome):
                    self.assertEqual(outcome.value, best)
                    continue
                self.assertIsInstance(outcome, CertificateOutcome)
                cert = outcome.certificate
                self.assertEqual(cert.optimum, best)
                self.assertLessEqual(cert.k, 2 ** n)
                for i, (zi, ai) in enumerate(zip(cert.points, cert.subgradients)):
                    for j, zj in enumerate(cert.points):
                        if i != j:
                            self.assertLess(ai.dot(zj - zi), 0)
                self.assertTrue(check_v_condition(cert.points, S))
                self.assertTrue(verify_witness(lemma_witness(cert.points, S)))
                self.assertTrue(duality.duality_report(cert, f, S).strong)


class OracleConsistencyTests(unittest.TestCase):

    def test_grid_bounds_above_exact_minimum(self):
        rng = np.random.default_rng(7)
        duality = DualityService()
        oracle = OracleService()
        box = Box(Vector.zeros(2), Vector((Fraction(3), Fraction(3))))
        for trial in range(100):
            f = random_quadratic(rng, 2)
            normal = random_vector(rng, 2, -2, 2)
            P = Polyhedron.from_box(box)
            if not normal.is_zero():
                P = P.intersect(Halfspace(normal, normal.dot(random_vector(rng, 2, 0, 3))))
            with self.subTest(trial=trial):
                exact, minimizer = duality.minimize_on_polyhedron(f, P)
                grid = [oracle.grid_lower_bound(f, P, step)[0] for step in (Fraction(1), Fraction(1, 2), Fraction(1, 4))]
                self.assertLessEqual(exact, grid[2])
                self.assertLessEqual(grid[2], grid[1])
                self.assertLessEqual(grid[1], grid[0])
                anchor = P.generators.vertices[0]
                if all(((x - a) * 4).denominator == 1 for x, a in zip(minimizer, anchor)):
                    self.assertEqual(grid[2], exact)


class ObjectivePropertyTests(unittest.TestCase):

    def test_subgradient_and_convexity(self):
        rng = np.random.default_rng(11)
        for trial in range(100):
            n = int(rng.integers(1, 4))
            f = random_objective(rng, n)
            z = random_vector(rng, n, 0, 3)
            a = f.relint_subgradient(z).subgradient
            with self.subTest(trial=trial):
                self.assertTrue(f.subdifferential_contains(z, a))
                for _ in range(10):
                    x = random_vector(rng, n, -3, 6)
                    y = random_vector(rng, n, -3, 6)
                    self.assertGreaterEqual(f.evaluate(x), f.evaluate(z) + a.dot(x - z))
                    midpoint = (x + y).scale(Fraction(1, 2))
                    self.assertLessEqual(f.evaluate(midpoint), (f.evaluate(x) + f.evaluate(y)) / 2)

    def test_adding_terms_shrinks_the_affine_set(self):
        # {x : f(x) = f(z) + <a, x - z>} of a sum lies inside the same set of each term
        rng = np.random.default_rng(13)
        for trial in range(100):
            n = int(rng.integers(1, 4))
            f = random_max_affine(rng, n)
            g = Sum((f, random_objective(rng, n)))
            z = random_vector(rng, n, 0, 3)
            with self.subTest(trial=trial):
                alone = system_dimension(n, *f.tight_rows(z, f.relint_subgradient(z)))
                summed = system_dimension(n, *g.tight_rows(z, g.relint_subgradient(z)))
                self.assertLessEqual(summed, alone)

    def test_quadratic_face_directions(self):
        rng = np.random.default_rng(17)
        for trial in range(100):
            n = int(rng.integers(1, 4))
            f = random_quadratic(rng, n)
            z = random_vector(rng, n, 0, 3)
            a = f.relint_subgradient(z).subgradient
            t = f.evaluate(z)
            directions = nullspace(Matrix(f.A.rows + (a.entries,), n))
            with self.subTest(trial=trial):
                self.assertEqual(f.face_dimension(z, a, t), len(directions))
                for d in directions:
                    self.assertEqual(f.evaluate(z + d), t)
                    self.assertEqual(f.evaluate(z + d.scale(Fraction(-3, 2))), t)


if __name__ == "__main__":
    unittest.main()
