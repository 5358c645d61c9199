#!/usr/bin/env python3
"""This module tests signed measures, the pairing and the isoperimetric scans"""
import unittest
import numpy as np
from liblingrow.bv1d import BVFunction1D
from liblingrow.errors import AtomOnBoundaryError, DivergenceMismatchError, ParameterError
from liblingrow.experiments import borderline_measure
from liblingrow.integrand import anisotropy_library, mirrored, polar
from liblingrow.measure import CalibrationField1D, CalibrationField2D, CurveMeasure, FieldDensity, \
        SignedMeasure, TableDensity, ic_check, jordan_decompose, lift_measure, pairing, \
        verify_calibration
from liblingrow.testsets import polar_ball_family

UNIT = (0.0, 1.0)

class JordanTests(unittest.TestCase):
    """Jordan decomposition of atoms, densities and line densities"""
    def test_atoms_are_merged(self):
        """coincident atoms never end up in both parts"""
        mu = SignedMeasure(UNIT, atoms=[(0.3, 1.0), (0.3, -3.0), (0.6, 2.0)])
        pair = jordan_decompose(mu)
        self.assertTrue(pair.mutually_singular)
        self.assertEqual([(loc[0], m) for loc, m in pair.plus.atoms], [(0.6, 2.0)])
        self.assertEqual([(loc[0], m) for loc, m in pair.minus.atoms], [(0.3, 2.0)])
        self.assertEqual(pair.total_mass(), 0.0)

    def test_density_split_at_crossing(self):
        """a sign change of the table is inserted as a node"""
        mu = SignedMeasure(UNIT, density=TableDensity([0.0, 1.0], [1.0, -1.0]))
        pair = jordan_decompose(mu)
        self.assertAlmostEqual(pair.plus.total_mass(), 0.25, places=12)
        self.assertAlmostEqual(pair.minus.total_mass(), 0.25, places=12)
        self.assertIn(0.5, pair.plus.density.nodes.tolist())
        self.assertTrue(pair.plus.is_nonnegative() and pair.minus.is_nonnegative())

    def test_curve_split(self):
        """line densities are split along the curve"""
        curve = CurveMeasure([(0.0, 0.0), (1.0, 0.0)], [1.0, -1.0])
        self.assertAlmostEqual(curve.total_mass(), 0.0, places=12)
        self.assertAlmostEqual(curve.split(1.0).total_mass(), 0.25, places=12)
        self.assertAlmostEqual(curve.split(-1.0).total_mass(), 0.25, places=12)

    def test_atom_on_boundary(self):
        """atoms must sit strictly inside the domain"""
        with self.assertRaises(AtomOnBoundaryError):
            SignedMeasure(UNIT, atoms=[(1.0, 1.0)])

    def test_bad_domain(self):
        """domains are intervals or boxes with increasing bounds"""
        with self.assertRaises(ParameterError):
            SignedMeasure((1.0, 0.0))
        with self.assertRaises(ParameterError):
            SignedMeasure((0.0, 1.0, 2.0))

    def test_lift_measure(self):
        """lifting keeps the total mass"""
        mu = SignedMeasure(UNIT, atoms=[(0.5, 2.0)], density=TableDensity([0.0, 1.0], [1.0, 1.0]))
        lifted = lift_measure(mu)
        self.assertEqual(lifted.dim, 2)
        self.assertAlmostEqual(lifted.total_mass(), 3.0, places=12)

class PairingTests(unittest.TestCase):
    """<<mu_plus, mu_minus; w>> picks the one sided limits"""
    def setUp(self):
        self.w = BVFunction1D.indicator(UNIT, [(0.2, 0.5)], 1.0)

    def test_plus_atom_sees_lower_limit(self):
        """mu_plus integrates w^-"""
        pair = jordan_decompose(SignedMeasure(UNIT, atoms=[(0.5, 1.0)]))
        self.assertEqual(pairing(pair, self.w), 0.0)

    def test_minus_atom_sees_upper_limit(self):
        """mu_minus integrates w^+ with a minus sign"""
        pair = jordan_decompose(SignedMeasure(UNIT, atoms=[(0.5, -1.0)]))
        self.assertEqual(pairing(pair, self.w), -1.0)

    def test_density_pairing(self):
        """absolutely continuous parts integrate the function"""
        pair = jordan_decompose(SignedMeasure(UNIT, density=TableDensity([0.0, 1.0], [1.0, 1.0])))
        self.assertAlmostEqual(pairing(pair, BVFunction1D.affine(UNIT, 0.0, 1.0)), 0.5, places=12)

    def test_linear_against_continuous_functions(self):
        """subtracting a continuous function and doubling pass through the pairing"""
        mu = SignedMeasure(UNIT, atoms=[(0.2, 1.5), (0.5, -1.0), (0.8, 0.75)],
                           density=TableDensity([0.0, 0.5, 1.0], [1.0, -2.0, 0.5]))
        pair = jordan_decompose(mu)
        w_one = BVFunction1D(UNIT, [0.0, 0.2, 0.5, 0.8, 1.0], [0.0, 1.0, -0.5, 2.0], [1.0, -1.0, 0.5, 0.0])
        w_two = BVFunction1D.affine(UNIT, 0.3, -1.2)
        self.assertAlmostEqual(pairing(pair, w_one - w_two), pairing(pair, w_one) - pairing(pair, w_two),
                               places=12)
        doubled = w_one - (BVFunction1D.constant(UNIT) - w_one)
        self.assertAlmostEqual(pairing(pair, doubled), 2.0 * pairing(pair, w_one), places=12)

    def test_monotone_for_one_signed_measures(self):
        """raising w raises int w^- dmu_plus and lowers -int w^+ dmu_minus"""
        density = TableDensity([0.0, 1.0], [0.5, 1.5])
        positive = jordan_decompose(SignedMeasure(UNIT, atoms=[(0.3, 1.0), (0.6, 2.0)], density=density))
        negative = jordan_decompose(SignedMeasure(UNIT, atoms=[(0.3, -1.0), (0.6, -2.0)]))
        self.assertTrue(positive.minus.total_mass() == 0.0 and negative.plus.total_mass() == 0.0)
        lower = BVFunction1D(UNIT, [0.0, 0.3, 0.6, 1.0], [0.0, -1.0, 1.0], [2.0, 0.0, -1.0])
        upper = lower - BVFunction1D.indicator(UNIT, [(0.2, 0.3), (0.6, 0.9)], -0.5)
        self.assertGreaterEqual(pairing(positive, upper), pairing(positive, lower))
        self.assertLessEqual(pairing(negative, upper), pairing(negative, lower))
        self.assertAlmostEqual(pairing(negative, upper) - pairing(negative, lower), -1.5, places=12)

    def test_domain_mismatch(self):
        """function and measure must share a domain"""
        pair = jordan_decompose(SignedMeasure((0.0, 2.0), atoms=[(0.5, 1.0)]))
        with self.assertRaises(ParameterError):
            pairing(pair, self.w)

class ICCheckTests(unittest.TestCase):
    """Scans of P_phi(A) C >= mu1(A+) - mu2(A1)"""
    def setUp(self):
        self.domain = (-1.0, 1.0)
        self.phi = anisotropy_library('euclidean', dim=1)
        self.atom = SignedMeasure(self.domain, atoms=[(0.0, 2.0)])
        self.zero = SignedMeasure(self.domain)

    def test_atom_ratio(self):
        """an atom of mass 2 needs C = 1 against two end points"""
        report = ic_check(self.atom, self.zero, self.phi, 1.0)
        self.assertAlmostEqual(report.worst_ratio, 1.0, places=12)
        self.assertTrue(report.passed)
        self.assertEqual(report.witness['kind'], 'intervals')
        low, high = report.witness['intervals'][0]
        self.assertTrue(low <= 0.0 <= high)

    def test_atom_violation(self):
        """a smaller constant fails with the same witness ratio"""
        report = ic_check(self.atom, self.zero, self.phi, 0.99)
        self.assertFalse(report.passed)
        self.assertEqual(report.to_dict()['constant'], 0.99)

    def test_empty_measure(self):
        """nothing to balance"""
        report = ic_check(self.zero, self.zero, self.phi, 1.0)
        self.assertEqual(report.worst_ratio, 0.0)

    def test_threads_agree(self):
        """threaded scans give the serial answer"""
        serial = ic_check(self.atom, self.zero, self.phi, 1.0)
        threaded = ic_check(self.atom, self.zero, self.phi, 1.0, threads=3)
        self.assertEqual(serial.worst_ratio, threaded.worst_ratio)
        self.assertEqual(serial.witness, threaded.witness)

    def test_signed_input_rejected(self):
        """both measures must be non-negative"""
        negative = SignedMeasure(self.domain, atoms=[(0.0, -1.0)])
        with self.assertRaises(ParameterError):
            ic_check(negative, self.zero, self.phi, 1.0)

    def test_planar_family(self):
        """a uniform density on discs gives area over perimeter"""
        box = ((-1.0, 1.0), (-1.0, 1.0))
        density = SignedMeasure(box, density=FieldDensity(lambda p: np.ones(p.shape[:-1])))
        gauge = lambda p: np.sqrt(np.sum(p * p, axis=-1))
        family = polar_ball_family(gauge, [(0.0, 0.0)], [0.25, 0.5], n_vertices=256)
        report = ic_check(density, SignedMeasure(box), anisotropy_library('euclidean'), 1.0, family)
        self.assertAlmostEqual(report.worst_ratio, 0.25, delta=1e-4)
        self.assertEqual(report.n_sets, 2)

    def test_borderline_density_on_polar_balls(self):
        """int_A 1/phi_polar <= P_phi(A), with equality on balls about the origin"""
        densities = [anisotropy_library('euclidean'), anisotropy_library('ellipse', {'Q': [[2.0, 0.5], [0.5, 1.0]]})]
        for phi in densities:
            with self.subTest(phi=phi.name):
                mirror = mirrored(phi)
                gauge = lambda p, mirror=mirror: np.asarray(polar(mirror, np.zeros_like(p), p))
                mu = borderline_measure(phi)
                zero = SignedMeasure(mu.domain)
                centred = ic_check(mu, zero, phi, 1.0, polar_ball_family(gauge, [(0.0, 0.0)], [0.25, 0.5, 1.0]))
                self.assertTrue(centred.passed)
                self.assertGreaterEqual(centred.worst_ratio, 0.98)
                moved = ic_check(mu, zero, phi, 1.0, polar_ball_family(
                    gauge, [(0.3, 0.1), (-0.4, 0.2), (0.9, 0.0)], [0.25, 0.5], n_vertices=128))
                self.assertTrue(moved.passed)
                self.assertLess(moved.worst_ratio, centred.worst_ratio)

    def test_planar_needs_family(self):
        """there is no default family in two dimensions"""
        box = ((-1.0, 1.0), (-1.0, 1.0))
        with self.assertRaises(ParameterError):
            ic_check(SignedMeasure(box), SignedMeasure(box), anisotropy_library('euclidean'), 1.0)

class CalibrationTests(unittest.TestCase):
    """Certificates from fields with div sigma = mu"""
    def test_sign_field(self):
        """sigma = -sign(x) calibrates a negative atom at the origin"""
        mu = SignedMeasure((-1.0, 1.0), atoms=[(0.0, -2.0)])
        sigma = CalibrationField1D.from_function(lambda x: -np.sign(x), (-1.0, 1.0), 63)
        certified = verify_calibration(sigma, mu, anisotropy_library('euclidean', dim=1))
        self.assertAlmostEqual(certified, 1.0, places=12)

    def test_calibration_bounds_scanned_ratio(self):
        """a calibrated constant is never below the worst ratio of the minus orientation"""
        domain = (-1.0, 1.0)
        phi = anisotropy_library('euclidean', dim=1)
        cases = [
            (SignedMeasure(domain, atoms=[(0.0, -2.0)]), lambda x: -np.sign(x)),
            (SignedMeasure(domain, density=TableDensity([-1.0, 1.0], [-1.0, -1.0])), lambda x: -x),
            (SignedMeasure(domain, atoms=[(0.0, -2.0)], density=TableDensity([-1.0, 1.0], [0.5, 0.5])),
             lambda x: -np.sign(x) + 0.5 * x),
        ]
        for index, (mu, field) in enumerate(cases):
            with self.subTest(case=index):
                certified = verify_calibration(CalibrationField1D.from_function(field, domain, 63), mu, phi)
                pair = jordan_decompose(mu)
                report = ic_check(pair.minus, pair.plus, phi, certified)
                self.assertTrue(report.passed)
                self.assertGreaterEqual(certified, report.worst_ratio - 1e-12)
                self.assertAlmostEqual(certified, 1.0, places=10)

    def test_divergence_mismatch(self):
        """the wrong orientation is caught cell by cell"""
        mu = SignedMeasure((-1.0, 1.0), atoms=[(0.0, -2.0)])
        sigma = CalibrationField1D.from_function(np.sign, (-1.0, 1.0), 63)
        with self.assertRaises(DivergenceMismatchError) as context:
            verify_calibration(sigma, mu, anisotropy_library('euclidean', dim=1))
        self.assertEqual(context.exception.cell, 31)

    def test_node_on_atom(self):
        """grid nodes must avoid the atoms"""
        mu = SignedMeasure((-1.0, 1.0), atoms=[(0.0, -2.0)])
        sigma = CalibrationField1D.from_function(lambda x: -np.sign(x), (-1.0, 1.0), 64)
        with self.assertRaises(ParameterError):
            verify_calibration(sigma, mu, anisotropy_library('euclidean', dim=1))

    def test_planar_field(self):
        """sigma = x / 2 has divergence one"""
        box = ((-1.0, 1.0), (-1.0, 1.0))
        mu = SignedMeasure(box, density=FieldDensity(lambda p: np.ones(p.shape[:-1])))
        sigma = CalibrationField2D.from_function(lambda p: 0.5 * p, box, 8)
        certified = verify_calibration(sigma, mu, anisotropy_library('euclidean'))
        self.assertAlmostEqual(certified, np.hypot(0.875, 0.875) / 2.0, places=10)

if __name__ == '__main__':
    unittest.main()
