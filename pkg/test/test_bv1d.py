#!/usr/bin/env python3
"""This module tests one dimensional BV functions and the relaxed functional"""
import unittest
import numpy as np
from liblingrow.bv1d import BVFunction1D, boundary_term, evaluate_MF, functional_of_measures, \
        necessity_series, ramp_approximation, recovery_sequence, representatives, zero_order_term
from liblingrow.errors import NonSingularPairError, ParameterError
from liblingrow.integrand import integrand_library
from liblingrow.measure import JordanPair, SignedMeasure, TableDensity, jordan_decompose
from liblingrow.solver import SolveConfig, minimize

UNIT = (0.0, 1.0)

def step_function():
    """Two jumps on top of atoms of opposite sign"""
    return BVFunction1D(UNIT, [0.0, 0.3, 0.7, 1.0], [0.0, 1.0, 0.5], [0.0, 0.0, 0.0])

def step_pair():
    return jordan_decompose(SignedMeasure(UNIT, atoms=[(0.3, -1.0), (0.7, 1.0)]))

class BVFunctionTests(unittest.TestCase):
    """Pieces, jumps and representatives"""
    def test_indicator(self):
        """an indicator jumps up and down"""
        u = BVFunction1D.indicator((-1.0, 1.0), [(-0.5, 0.5)], 1.0)
        self.assertEqual(u.jump_data(), [(-0.5, 0.0, 1.0), (0.5, 1.0, 0.0)])
        self.assertEqual(u.total_variation(), 2.0)
        self.assertEqual(representatives(u, 0.5), (0.0, 1.0, 0.5))
        self.assertEqual(u(0.5), 0.5)
        self.assertEqual(u(0.0), 1.0)

    def test_indicator_outside_domain(self):
        """intervals must stay compactly inside"""
        with self.assertRaises(ParameterError):
            BVFunction1D.indicator(UNIT, [(0.0, 0.5)])

    def test_traces(self):
        """one sided limits at the end points"""
        u = BVFunction1D.affine((0.0, 2.0), 1.0, -1.0)
        self.assertEqual(u.trace_left(), 1.0)
        self.assertEqual(u.trace_right(), -1.0)
        self.assertEqual(u.jump_data(), [])

    def test_declared_jumps_checked(self):
        """a declared jump must match the pieces"""
        document = {'domain': [0, 1], 'nodes': [0, 0.5, 1],
                    'pieces': [{'value': 0.0}, {'value': 2.0}],
                    'jumps': [{'x': 0.5, 'left': 0.0, 'right': 1.0}]}
        with self.assertRaises(ParameterError):
            BVFunction1D.from_json(document)
        document['jumps'][0]['right'] = 2.0
        self.assertEqual(BVFunction1D.from_json(document).jump_data(), [(0.5, 0.0, 2.0)])

    def test_malformed_document(self):
        """missing keys are reported"""
        with self.assertRaises(ParameterError):
            BVFunction1D.from_json({'domain': [0, 1], 'nodes': [0, 1]})

    def test_bad_nodes(self):
        """nodes must span the domain"""
        with self.assertRaises(ParameterError):
            BVFunction1D(UNIT, [0.0, 0.5], [1.0], [0.0])

    def test_norms(self):
        """L1 norm and variation of a sign changing line"""
        u = BVFunction1D.affine(UNIT, -1.0, 1.0)
        self.assertAlmostEqual(u.l1_norm(), 0.5, places=12)
        self.assertAlmostEqual(u.total_variation(), 2.0, places=12)

class FunctionalTests(unittest.TestCase):
    """M_f[u] = bulk + boundary + pairing"""
    def test_area_of_zero(self):
        """f(x, 0) integrates to the length"""
        f = integrand_library('area')
        domain = (0.0, 2.0)
        empty = jordan_decompose(SignedMeasure(domain))
        breakdown = evaluate_MF(f, 0.0, empty, BVFunction1D.constant(domain))
        self.assertAlmostEqual(breakdown.total, 2.0, places=12)
        self.assertEqual(breakdown.bulk_jump, 0.0)

    def test_jumps_cost_recession(self):
        """a tv indicator pays one per jump"""
        f = integrand_library('tv')
        domain = (-1.0, 1.0)
        empty = jordan_decompose(SignedMeasure(domain))
        breakdown = evaluate_MF(f, 0.0, empty, BVFunction1D.indicator(domain, [(-0.5, 0.5)]))
        self.assertAlmostEqual(breakdown.bulk_jump, 2.0, places=12)
        self.assertAlmostEqual(breakdown.total, 2.0, places=12)

    def test_boundary_mismatch(self):
        """trace mismatches are charged at the boundary"""
        f = integrand_library('tv')
        self.assertAlmostEqual(boundary_term(f, BVFunction1D.constant(UNIT, 1.0), 0.0), 2.0, places=12)
        self.assertAlmostEqual(boundary_term(f, BVFunction1D.constant(UNIT, 1.0), (1.0, 0.0)), 1.0, places=12)

    def test_step_breakdown(self):
        """jumps sitting on atoms see the matching one sided limits"""
        breakdown = evaluate_MF(integrand_library('area'), 0.0, step_pair(), step_function())
        self.assertAlmostEqual(breakdown.bulk_ac, 1.0, places=12)
        self.assertAlmostEqual(breakdown.bulk_jump, 1.5, places=12)
        self.assertAlmostEqual(breakdown.boundary, 0.5, places=12)
        self.assertAlmostEqual(breakdown.measure_pairing, -0.5, places=12)
        self.assertAlmostEqual(breakdown.to_dict()['total'], 2.5, places=12)

    def test_indicator_on_upper_half(self):
        """the area integrand pays the length plus the unit jump"""
        u = BVFunction1D(UNIT, [0.0, 0.5, 1.0], [0.0, 1.0], [0.0, 0.0])
        self.assertAlmostEqual(functional_of_measures(integrand_library('area'), u), 2.0, places=12)

    def test_asymmetric_boundary_normals(self):
        """inward normals pick f_inf(+1) on the left and f_inf(-1) on the right"""
        f = integrand_library('tv', {'aniso': {'key': 'asym1d', 'params': {'plus': 2.0, 'minus': 1.0}}}, dim=1)
        self.assertAlmostEqual(boundary_term(f, BVFunction1D.constant(UNIT, 1.0), 0.0), 3.0, places=12)

    def test_zero_order_term(self):
        """int f(x, 0) |u - v| splits at the crossing"""
        f = integrand_library('area')
        u = BVFunction1D.affine(UNIT, -1.0, 1.0)
        self.assertAlmostEqual(zero_order_term(f, u, BVFunction1D.constant(UNIT)), 0.5, places=12)

    def test_necessity_series(self):
        """a heavy negative atom makes M_f[k 1_A] decrease linearly"""
        pair = jordan_decompose(SignedMeasure((-1.0, 1.0), atoms=[(0.0, -4.0)]))
        series = necessity_series(integrand_library('tv'), 0.0, pair, [(-0.5, 0.5)], range(1, 6))
        for k, total in series:
            self.assertAlmostEqual(total, -2.0 * k, places=10)

class RecoveryTests(unittest.TestCase):
    """Continuous recovery sequences"""
    def setUp(self):
        self.f = integrand_library('area')
        self.u = step_function()
        self.pair = step_pair()

    def test_recovery_converges(self):
        """M_f[u_k] approaches M_f[u] and the atoms keep their one sided values"""
        target = evaluate_MF(self.f, 0.0, self.pair, self.u).total
        gaps = []
        for k in (1, 16, 1024):
            u_k = recovery_sequence(self.u, 0.0, self.pair, k)
            self.assertEqual(u_k.jump_data(), [])
            self.assertAlmostEqual(u_k.trace_right(), 0.0, places=10)
            breakdown = evaluate_MF(self.f, 0.0, self.pair, u_k)
            self.assertAlmostEqual(breakdown.measure_pairing, -0.5, places=12)
            gaps.append(abs(breakdown.total - target))
        self.assertLess(gaps[-1], 1e-3)
        self.assertTrue(gaps[0] > gaps[1] > gaps[2])

    def test_minus_atom_keeps_upper_limit(self):
        """the ramp stays left of an atom of mu_minus, so u_k takes the upper value there"""
        u = BVFunction1D(UNIT, [0.0, 0.5, 1.0], [0.0, 1.0], [0.0, 0.0])
        pair = jordan_decompose(SignedMeasure(UNIT, atoms=[(0.5, -1.0)]))
        for k in (1, 8, 64):
            u_k = recovery_sequence(u, (0.0, 1.0), pair, k)
            self.assertAlmostEqual(u_k(0.5), 1.0, places=12)
            self.assertAlmostEqual(evaluate_MF(self.f, (0.0, 1.0), pair, u_k).measure_pairing, -1.0, places=12)

    def test_recovered_minimizer(self):
        """continuous functions with the boundary values reach the relaxed minimum"""
        pair = jordan_decompose(SignedMeasure(UNIT, atoms=[(0.25, -0.6), (0.625, 0.4)]))
        u0 = (1.0, -0.5)
        result = minimize(self.f, u0, pair, SolveConfig(n_nodes=9, max_iters=20000), verbosity=-1)
        self.assertEqual(result.status, 'converged')
        self.assertAlmostEqual(evaluate_MF(self.f, u0, pair, result.w).total, result.value, places=10)
        totals = []
        for k in (1, 32, 1024):
            u_k = recovery_sequence(result.w, u0, pair, k)
            self.assertEqual(u_k.jump_data(), [])
            self.assertAlmostEqual(u_k.trace_left(), 1.0, places=12)
            self.assertAlmostEqual(u_k.trace_right(), -0.5, places=12)
            breakdown = evaluate_MF(self.f, u0, pair, u_k)
            self.assertAlmostEqual(breakdown.boundary, 0.0, places=12)
            totals.append(breakdown.total)
        self.assertLessEqual(abs(totals[-1] - result.value), 1e-2)

    def test_non_singular_pair(self):
        """parts sharing an atom cannot be recovered"""
        atom = SignedMeasure(UNIT, atoms=[(0.5, 1.0)])
        with self.assertRaises(NonSingularPairError):
            recovery_sequence(self.u, 0.0, JordanPair(atom, atom), 1)

    def test_bad_index(self):
        """k starts at one"""
        with self.assertRaises(ParameterError):
            recovery_sequence(self.u, 0.0, self.pair, 0)

    def test_ramp_approximation(self):
        """centred ramps remove every jump"""
        smooth = ramp_approximation(self.u, 0.01)
        self.assertEqual(smooth.jump_data(), [])
        self.assertAlmostEqual(smooth(0.3), 0.5, places=12)
        with self.assertRaises(ParameterError):
            ramp_approximation(self.u, 0.3)

class SemicontinuityTests(unittest.TestCase):
    """M_f along sequences converging in L1 never drops below its value at the limit"""
    def assert_lower_semicontinuous(self, values, limit):
        for value in values[-3:]:
            self.assertGreaterEqual(value, limit - 1e-6)

    def test_ramps_collapse_onto_jumps(self):
        """centred ramps lose the one sided limits the atoms see"""
        f = integrand_library('area')
        limit = evaluate_MF(f, 0.0, step_pair(), step_function()).total
        values = [evaluate_MF(f, 0.0, step_pair(), ramp_approximation(step_function(), 2.0 ** -j)).total
                  for j in range(3, 13)]
        self.assert_lower_semicontinuous(values, limit)
        self.assertAlmostEqual(values[-1], limit + 0.75, delta=1e-3)

    def test_vanishing_zigzag(self):
        """slope one teeth of height 1/(2n) keep their gradient cost"""
        pair = jordan_decompose(SignedMeasure(UNIT, density=TableDensity([0.0, 0.5, 1.0], [1.0, -1.0, 0.5])))
        for key, expected in (('area', 1.0), ('tv', 0.0)):
            with self.subTest(key=key):
                f = integrand_library(key)
                limit = evaluate_MF(f, 0.0, pair, BVFunction1D.constant(UNIT)).total
                self.assertAlmostEqual(limit, expected, places=12)
                values = []
                for n in (4, 16, 64, 256):
                    xs = np.linspace(0.0, 1.0, 2 * n + 1)
                    ys = np.where(np.arange(2 * n + 1) % 2, 0.5 / n, 0.0)
                    breakdown = evaluate_MF(f, 0.0, pair, BVFunction1D.piecewise_linear(UNIT, xs, ys))
                    self.assertLessEqual(abs(breakdown.measure_pairing), 1.0 / n)
                    values.append(breakdown.total)
                self.assert_lower_semicontinuous(values, limit)

    def test_borderline_atom(self):
        """2 delta_0 on (-1, 1) meets the isoperimetric bound with equality"""
        domain = (-1.0, 1.0)
        for key in ('tv', 'area'):
            for sign in (-1.0, 1.0):
                with self.subTest(key=key, sign=sign):
                    f = integrand_library(key)
                    pair = jordan_decompose(SignedMeasure(domain, atoms=[(0.0, 2.0 * sign)]))
                    limit = evaluate_MF(f, 0.0, pair, BVFunction1D.constant(domain)).total
                    values = [evaluate_MF(f, 0.0, pair, BVFunction1D.indicator(
                        domain, [(-1.0 / k, 1.0 / k)], -sign)).total for k in (2, 8, 32, 128, 1024)]
                    self.assert_lower_semicontinuous(values, limit)
                    for value in values:
                        self.assertAlmostEqual(value, limit, places=10)

class StrictContinuityTests(unittest.TestCase):
    """int f(x, Du) along ramps that converge to u strictly in area"""
    def test_ramp_ladder(self):
        """ramps of width 2^-j approach the jump cost"""
        u = step_function()
        for key in ('area', 'weighted-area'):
            with self.subTest(key=key):
                f = integrand_library(key)
                target = functional_of_measures(f, u)
                gaps = [abs(functional_of_measures(f, ramp_approximation(u, 2.0 ** -j)) - target)
                        for j in range(3, 13)]
                self.assertLess(gaps[-1], 1e-3)
                self.assertTrue(all(later < earlier for earlier, later in zip(gaps, gaps[1:])))

if __name__ == '__main__':
    unittest.main()
