#!/usr/bin/env python3
"""This module tests the test set families"""
import unittest
from math import pi
import numpy as np
from liblingrow.errors import ParameterError
from liblingrow.integrand import anisotropy_library
from liblingrow.measure import FieldDensity
from liblingrow.quadrature import polygon_integral
from liblingrow.testsets import IntervalFamily, IntervalSet, PixelSet, PolygonSet, SetFamily, \
        interval_family, level_set_polygon, pixel_blob_family, rectangle_family

class IntervalSetTests(unittest.TestCase):
    """One dimensional unions of intervals"""
    def test_classify(self):
        """end points belong to the closure only"""
        closure, interior = IntervalSet([(0.0, 1.0)]).classify([0.0, 0.5, 1.0, 2.0])
        self.assertEqual(closure.tolist(), [True, True, True, False])
        self.assertEqual(interior.tolist(), [False, True, False, False])

    def test_perimeter(self):
        """phi at the inward normals of every end point"""
        union = IntervalSet([(0.5, 0.8), (-0.5, 0.0)])
        self.assertEqual(union.intervals[0], (-0.5, 0.0))
        self.assertEqual(union.perimeter(anisotropy_library('euclidean', dim=1)), 4.0)
        asym = anisotropy_library('asym1d', {'plus': 2.0, 'minus': 1.0}, dim=1)
        self.assertEqual(IntervalSet([(0.0, 1.0)]).perimeter(asym), 3.0)

    def test_touching_components(self):
        """components must have disjoint closures"""
        with self.assertRaises(ParameterError):
            IntervalSet([(0.0, 0.5), (0.5, 1.0)])

    def test_family_includes_atoms(self):
        """atom locations refine the grid"""
        family = IntervalFamily((0.0, 1.0), [0.25, 0.5, 0.75, 0.5, 1.0], max_components=2)
        self.assertEqual(family.points.tolist(), [0.25, 0.5, 0.75])
        self.assertEqual(len(family.combinations(1)), 3)
        self.assertEqual(len(family.combinations(2)), 0)
        self.assertEqual(len(family), 3)
        self.assertEqual(family.set_of([0, 2]).intervals, [(0.25, 0.75)])

    def test_interval_family_grid(self):
        """n_grid interior points"""
        family = interval_family((0.0, 1.0), n_grid=4)
        np.testing.assert_allclose(family.points, [0.2, 0.4, 0.6, 0.8])

class PolygonTests(unittest.TestCase):
    """Planar polygons, pixel sets and families"""
    def setUp(self):
        self.euclidean = anisotropy_library('euclidean')

    def test_orientation_and_area(self):
        """clockwise input is reversed"""
        square = PolygonSet([(0, 0), (0, 1), (1, 1), (1, 0)])
        self.assertEqual(square.area, 1.0)
        self.assertAlmostEqual(square.perimeter(self.euclidean), 4.0, places=12)

    def test_anisotropic_perimeter(self):
        """l1 perimeter of a diamond"""
        diamond = PolygonSet([(1, 0), (0, 1), (-1, 0), (0, -1)])
        self.assertAlmostEqual(diamond.perimeter(self.euclidean), 4.0 * 2.0 ** 0.5, places=12)
        self.assertAlmostEqual(diamond.perimeter(anisotropy_library('l1')), 8.0, places=12)

    def test_classify_edges(self):
        """points on an edge are in the closure, not the interior"""
        square = PolygonSet([(0, 0), (1, 0), (1, 1), (0, 1)])
        closure, interior = square.classify([(0.5, 0.5), (1.0, 0.5), (2.0, 0.5)])
        self.assertEqual(closure.tolist(), [True, True, False])
        self.assertEqual(interior.tolist(), [True, False, False])

    def test_degenerate(self):
        """collinear vertices are rejected"""
        with self.assertRaises(ParameterError):
            PolygonSet([(0, 0), (1, 0), (2, 0)])

    def test_polygon_integral(self):
        """the triangle fan integrates polynomials and 1/|x| singularities"""
        square = [(0, 0), (1, 0), (1, 1), (0, 1)]
        self.assertAlmostEqual(polygon_integral(lambda p: p[..., 0] * p[..., 1], square), 0.25, places=12)
        disc = level_set_polygon(lambda p: np.sqrt(np.sum(p * p, axis=-1)), (0.0, 0.0), 1.0, 256)
        singular = polygon_integral(lambda p: 1.0 / np.sqrt(np.sum(p * p, axis=-1)), disc, np.zeros(2))
        self.assertAlmostEqual(singular, 2.0 * pi, delta=1e-3)

    def test_level_set_polygon(self):
        """vertices lie on the level set of the gauge"""
        vertices = level_set_polygon(lambda p: np.sqrt(np.sum(p * p, axis=-1)), (1.0, 2.0), 0.5, 64)
        np.testing.assert_allclose(np.sqrt(np.sum((vertices - (1.0, 2.0)) ** 2, axis=-1)), 0.5)

    def test_pixel_set(self):
        """one cell: staircase perimeter and cell mass"""
        mask = np.zeros((4, 4), dtype=bool)
        mask[1, 2] = True
        pixels = PixelSet(mask, np.linspace(0, 1, 5), np.linspace(0, 1, 5))
        self.assertAlmostEqual(pixels.perimeter(self.euclidean), 1.0, places=12)
        density = FieldDensity(lambda p: np.ones(p.shape[:-1]))
        self.assertAlmostEqual(pixels.density_mass(density), 1.0 / 16.0, places=12)
        closure, interior = pixels.classify([(0.3, 0.6), (0.25, 0.5), (0.9, 0.9)])
        self.assertEqual(closure.tolist(), [True, True, False])
        self.assertEqual(interior.tolist(), [True, False, False])

    def test_rectangle_family(self):
        """pairs of grid coordinates in each direction"""
        family = rectangle_family(((0.0, 1.0), (0.0, 1.0)), n_grid=2)
        self.assertEqual(len(family), 9)
        self.assertFalse(family.rasterized)

    def test_pixel_blobs(self):
        """blobs are flagged rasterized and stay off the box boundary"""
        family = pixel_blob_family(((0.0, 1.0), (0.0, 1.0)), n_pixels=16, n_blobs=4, seed=5)
        self.assertEqual(len(family), 4)
        self.assertTrue(family.rasterized)
        for blob in family:
            self.assertFalse(blob.mask[0, :].any() or blob.mask[-1, :].any())
            self.assertFalse(blob.mask[:, 0].any() or blob.mask[:, -1].any())
        combined = family + rectangle_family(((0.0, 1.0), (0.0, 1.0)), n_grid=1)
        self.assertTrue(combined.rasterized)
        self.assertEqual(len(combined), 5)

    def test_empty_family(self):
        """a scan needs at least one set"""
        with self.assertRaises(ParameterError):
            SetFamily([], 'nothing')

if __name__ == '__main__':
    unittest.main()
