#!/usr/bin/env python3
"""This module tests the discrete minimizer and the coercivity scan"""
import unittest
import numpy as np
from liblingrow.bv1d import necessity_series
from liblingrow.errors import ParameterError, SolverConfigError
from liblingrow.integrand import anisotropy_library, integrand_library
from liblingrow.measure import SignedMeasure, jordan_decompose
from liblingrow.solver import DiscreteProblem, SolveConfig, coercivity_certificate, \
        coercivity_probe, convexity_audit, coordinate_descent, discrete_objective, minimize

UNIT = (0.0, 1.0)
EPS_LADDER = (1e-2, 1e-4, 1e-6, 1e-8)

def atom_problem(rng, n_nodes):
    """Atoms on the interior nodes, total absolute mass below 0.8, random boundary values"""
    nodes = np.linspace(0.0, 1.0, n_nodes)
    masses = rng.uniform(-1.0, 1.0, n_nodes - 2)
    masses *= rng.uniform(0.2, 0.8) / np.sum(np.abs(masses))
    atoms = [(float(x), float(m)) for x, m in zip(nodes[1:-1], masses)]
    u0 = tuple(float(v) for v in rng.uniform(-1.0, 1.0, 2))
    return u0, jordan_decompose(SignedMeasure(UNIT, atoms=atoms))

class SolveConfigTests(unittest.TestCase):
    """Validation of the solver settings"""
    def test_defaults(self):
        """the default schedule ends at the floor"""
        cfg = SolveConfig()
        self.assertEqual(cfg.smoothing_eps[-1], 1e-8)
        self.assertEqual(cfg.to_dict()['step_rule'], 'backtracking')

    def test_from_dict(self):
        """JSON settings override the defaults"""
        cfg = SolveConfig.from_dict({'n_nodes': 9, 'smoothing_eps': [1e-2, 1e-3], 'step_rule': 'polyak'})
        self.assertEqual(cfg.n_nodes, 9)
        self.assertEqual(cfg.smoothing_eps, (1e-2, 1e-3))
        self.assertEqual(SolveConfig.from_dict(None).n_nodes, 33)

    def test_rejections(self):
        """every malformed setting is a SolverConfigError"""
        for document in ({'n_nodes': 2}, {'smoothing_eps': []}, {'smoothing_eps': [1e-3, 1e-2]},
                         {'smoothing_eps': [1e-9]}, {'step_rule': 'newton'}, {'max_iters': 0},
                         {'tolerance': 1.0}):
            with self.assertRaises(SolverConfigError):
                SolveConfig.from_dict(document)

class DiscreteProblemTests(unittest.TestCase):
    """Nodal discretization of the functional"""
    def test_zero_profile(self):
        """f(x, 0) integrates to the length"""
        empty = jordan_decompose(SignedMeasure(UNIT))
        self.assertAlmostEqual(discrete_objective(integrand_library('area'), 0.0, empty, np.zeros(5)),
                               1.0, places=12)
        self.assertEqual(discrete_objective(integrand_library('tv'), 0.0, empty, np.zeros(5)), 0.0)

    def test_tent_with_atom(self):
        """an atom on a node contributes its mass times the nodal value"""
        pair = jordan_decompose(SignedMeasure(UNIT, atoms=[(0.5, 1.0)]))
        value = discrete_objective(integrand_library('area'), 0.0, pair, [0.0, 0.0, 1.0, 0.0, 0.0])
        self.assertAlmostEqual(value, 0.5 + 0.5 * np.sqrt(17.0) + 1.0, places=12)

    def test_boundary_mismatch(self):
        """nodal traces are charged against u0"""
        empty = jordan_decompose(SignedMeasure(UNIT))
        value = discrete_objective(integrand_library('tv'), 0.0, empty, np.ones(5))
        self.assertAlmostEqual(value, 2.0, places=12)

    def test_snapping(self):
        """atoms off the grid are moved to the nearest interior node and reported"""
        pair = jordan_decompose(SignedMeasure(UNIT, atoms=[(0.3, 1.0)]))
        problem = DiscreteProblem(integrand_library('area'), 0.0, pair, 5, verbosity=-1)
        self.assertEqual(problem.linear.tolist(), [0.0, 1.0, 0.0, 0.0, 0.0])
        self.assertEqual(len(problem.displacements), 1)
        self.assertAlmostEqual(problem.displacements[0]['displacement'], 0.05, places=12)

class MinimizeTests(unittest.TestCase):
    """Smoothed descent against coordinate descent and the unbounded case"""
    def test_coercive_problem(self):
        """a small positive atom pulls the area minimizer down a little"""
        f = integrand_library('area')
        pair = jordan_decompose(SignedMeasure(UNIT, atoms=[(0.5, 0.5)]))
        cfg = SolveConfig(n_nodes=17)
        result = minimize(f, 0.0, pair, cfg, verbosity=-1)
        self.assertEqual(result.status, 'converged')
        self.assertIsNone(result.certificate)
        self.assertLess(result.value, 1.0)
        _, reference = coordinate_descent(f, 0.0, pair, 17)
        self.assertAlmostEqual(result.value, reference, delta=1e-5)
        self.assertLess(result.w(0.5), 0.0)
        self.assertEqual(result.to_dict()['status'], 'converged')

    def test_unbounded_problem(self):
        """a heavy negative atom drives the profile off to infinity"""
        f = integrand_library('tv')
        pair = jordan_decompose(SignedMeasure(UNIT, atoms=[(0.5, -3.0)]))
        result = minimize(f, 0.0, pair, SolveConfig(n_nodes=9), verbosity=-1)
        self.assertEqual(result.status, 'unbounded_suspected')
        self.assertIsNotNone(result.certificate)
        self.assertEqual(result.certificate.orientation, 'minus')
        self.assertAlmostEqual(result.certificate.worst_ratio, 1.5, places=12)
        self.assertGreater(len(result.trace), 0)

    def test_coordinate_descent_of_zero_data(self):
        """nothing to gain from moving"""
        w, value = coordinate_descent(integrand_library('tv'), 0.0,
                                      jordan_decompose(SignedMeasure(UNIT)), 5, sweeps=3)
        self.assertTrue(np.allclose(w, 0.0))
        self.assertEqual(value, 0.0)

class OracleTests(unittest.TestCase):
    """minimize against the coordinate descent oracle on problems with at most six nodes"""
    def test_small_problems(self):
        """seeded atoms and boundary values for every kind of integrand"""
        rng = np.random.default_rng(2024)
        for key in ('tv', 'area', 'huber', 'finsler-area'):
            f = integrand_library(key)
            for n_nodes in (3, 4, 5, 6):
                u0, pair = atom_problem(rng, n_nodes)
                with self.subTest(integrand=key, n_nodes=n_nodes):
                    cfg = SolveConfig(n_nodes=n_nodes, max_iters=20000)
                    result = minimize(f, u0, pair, cfg, verbosity=-1)
                    _, reference = coordinate_descent(f, u0, pair, n_nodes)
                    self.assertAlmostEqual(result.value, reference, delta=1e-5)

    def test_tv_plateau(self):
        """a run of equal nodes that only descends when it moves as a block"""
        f = integrand_library('tv')
        pair = jordan_decompose(SignedMeasure(UNIT, atoms=[(1.0 / 3.0, 0.5), (2.0 / 3.0, -1.5)]))
        w, value = coordinate_descent(f, (1.0, -1.0), pair, 4, start=[1.0, 0.0, 0.0, -1.0])
        self.assertAlmostEqual(value, 1.0, delta=1e-9)
        self.assertAlmostEqual(w[1], w[2], delta=1e-6)
        self.assertAlmostEqual(w[1], 1.0, delta=1e-6)
        result = minimize(f, (1.0, -1.0), pair, SolveConfig(n_nodes=4), verbosity=-1)
        self.assertAlmostEqual(result.value, 1.0, delta=1e-5)

    def test_bad_start(self):
        """one start value per node"""
        with self.assertRaises(ParameterError):
            coordinate_descent(integrand_library('tv'), 0.0, jordan_decompose(SignedMeasure(UNIT)), 4,
                               start=[0.0, 0.0])

class AuditTests(unittest.TestCase):
    """Convexity of the assembled objective and consistency of its smoothing"""
    def setUp(self):
        self.rng = np.random.default_rng(5)

    def test_convex_between_iterates(self):
        """midpoints of segments between iterates never lie above the chord"""
        for key in ('area', 'tv', 'huber', 'weighted-area'):
            f = integrand_library(key)
            u0, pair = atom_problem(self.rng, 9)
            problem = DiscreteProblem(f, u0, pair, 9, verbosity=-1)
            profiles = [problem.start]
            for max_iters in (1, 3, 10, 30, 4000):
                result = minimize(f, u0, pair, SolveConfig(n_nodes=9, max_iters=max_iters), verbosity=-1)
                profiles.append(result.w(problem.x))
            profiles.extend(self.rng.normal(size=(3, 9)))
            with self.subTest(integrand=key):
                self.assertLessEqual(convexity_audit(problem, profiles, seed=1), 1e-10)

    def test_audit_needs_two_profiles(self):
        """a segment needs two ends"""
        problem = DiscreteProblem(integrand_library('tv'), 0.0, jordan_decompose(SignedMeasure(UNIT)), 5,
                                  verbosity=-1)
        with self.assertRaises(ParameterError):
            convexity_audit(problem, [np.zeros(5)])

    def test_smoothing_consistency(self):
        """the smoothed value rises to the exact one as eps decreases"""
        for key in ('area', 'tv', 'huber'):
            f = integrand_library(key)
            u0, pair = atom_problem(self.rng, 9)
            problem = DiscreteProblem(f, u0, pair, 9, verbosity=-1)
            w = minimize(f, u0, pair, SolveConfig(n_nodes=9), verbosity=-1).w(problem.x)
            exact = problem.objective(w)
            gaps = [exact - problem.smoothed(w, eps)[0] for eps in EPS_LADDER]
            scale = 9 * f.beta ** 2
            with self.subTest(integrand=key):
                for eps, gap in zip(EPS_LADDER, gaps):
                    self.assertGreaterEqual(gap, -1e-10)
                    self.assertLessEqual(gap, 5.0 * eps * scale)
                for larger, smaller in zip(gaps, gaps[1:]):
                    self.assertLessEqual(smaller, larger + 1e-12)

class CoercivitySuiteTests(unittest.TestCase):
    """Runs predicted by the coercivity ratio"""
    def test_coercive_suite(self):
        """a coercivity ratio below one always ends in a converged run"""
        rng = np.random.default_rng(17)
        phi = anisotropy_library('euclidean', dim=1)
        for key in ('area', 'tv', 'huber'):
            for _ in range(2):
                u0, pair = atom_problem(rng, 9)
                with self.subTest(integrand=key):
                    self.assertLess(coercivity_probe(phi, pair), 1.0)
                    result = minimize(integrand_library(key), u0, pair,
                                      SolveConfig(n_nodes=9, max_iters=20000), verbosity=-1)
                    self.assertEqual(result.status, 'converged')
                    self.assertIsNone(result.certificate)

    def test_supercritical_suite(self):
        """a coercivity ratio above one is always reported with a witness along which M_f decreases"""
        cases = (('tv', [(0.5, -3.0)], 'minus'),
                 ('tv', [(0.25, 3.0)], 'plus'),
                 ('area', [(0.75, -2.5)], 'minus'),
                 ('huber', [(0.375, -1.5), (0.625, -1.5)], 'minus'))
        phi = anisotropy_library('euclidean', dim=1)
        for key, atoms, orientation in cases:
            pair = jordan_decompose(SignedMeasure(UNIT, atoms=atoms))
            with self.subTest(integrand=key, atoms=atoms):
                self.assertGreater(coercivity_probe(phi, pair), 1.0)
                f = integrand_library(key)
                result = minimize(f, 0.0, pair, SolveConfig(n_nodes=9), verbosity=-1)
                self.assertEqual(result.status, 'unbounded_suspected')
                self.assertIsNotNone(result.certificate)
                self.assertGreater(result.certificate.worst_ratio, 1.0)
                self.assertEqual(result.certificate.orientation, orientation)
                intervals = [tuple(part) for part in result.certificate.witness['intervals']]
                sign = 1.0 if orientation == 'minus' else -1.0
                totals = [total for _, total in necessity_series(f, 0.0, pair, intervals, sign=sign)]
                for earlier, later in zip(totals, totals[1:]):
                    self.assertLess(later, earlier)

class CoercivityTests(unittest.TestCase):
    """Oriented isoperimetric scans"""
    def setUp(self):
        self.phi = anisotropy_library('euclidean', dim=1)
        self.domain = (-1.0, 1.0)

    def test_positive_atom(self):
        """mu_plus is checked with the mirrored density"""
        pair = jordan_decompose(SignedMeasure(self.domain, atoms=[(0.0, 2.0)]))
        certificate = coercivity_certificate(self.phi, pair)
        self.assertEqual(certificate.orientation, 'plus')
        self.assertAlmostEqual(certificate.worst_ratio, 1.0, places=12)

    def test_light_atoms(self):
        """atoms lighter than two end points keep the functional coercive"""
        pair = jordan_decompose(SignedMeasure(self.domain, atoms=[(-0.5, 1.0), (0.5, -0.5)]))
        self.assertLess(coercivity_probe(self.phi, pair), 1.0)

    def test_heavy_negative_atom(self):
        """mu_minus beyond the perimeter predicts an unbounded functional"""
        pair = jordan_decompose(SignedMeasure(self.domain, atoms=[(0.0, -3.0)]))
        self.assertAlmostEqual(coercivity_probe(self.phi, pair), 1.5, places=12)

if __name__ == '__main__':
    unittest.main()
