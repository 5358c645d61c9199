#!/usr/bin/env python3
"""Finite perimeter test sets and the families the isoperimetric check scans.

One dimensional sets are finite unions of intervals and are scanned in bulk
from a point grid. Two dimensional sets are polygons, pixel unions or unions
of either; every set answers the same three questions: which points lie in its
closure or interior, its anisotropic perimeter, and the mass a density gives it."""
from itertools import combinations
from math import pi
import numpy as np
from scipy import ndimage
from liblingrow.errors import ParameterError
from liblingrow.quadrature import gauss_unit, polygon_integral

BOUNDARY_TOL = 1e-12
EDGE_ORDER = 4

def _signed_area(vertices):
    shifted = np.roll(vertices, -1, axis=0)
    return 0.5 * float(np.sum(vertices[:, 0] * shifted[:, 1] - shifted[:, 0] * vertices[:, 1]))

    ##############################################################################
class IntervalSet():
    """ Finite union of open intervals with disjoint closures """
    ##############################################################################

    def __init__(self, intervals):
        intervals = sorted((float(low), float(high)) for low, high in intervals)
        for low, high in intervals:
            if not low < high:
                raise ParameterError("Empty interval (%g, %g) in a test set" % (low, high))
        for (_, high), (low, _) in zip(intervals, intervals[1:]):
            if not high < low:
                raise ParameterError("Interval components must have disjoint closures")
        self.intervals = intervals

    def classify(self, points):
        """Masks of points in the closure and in the set itself"""
        points = np.asarray(points, dtype=float).reshape(-1)
        closure = np.zeros(points.shape, dtype=bool)
        interior = np.zeros(points.shape, dtype=bool)
        for low, high in self.intervals:
            closure |= (points >= low - BOUNDARY_TOL) & (points <= high + BOUNDARY_TOL)
            interior |= (points > low + BOUNDARY_TOL) & (points < high - BOUNDARY_TOL)
        return closure, interior

    def perimeter(self, phi):
        """Sum of phi over the endpoints with inward normals"""
        lows = np.array([low for low, _ in self.intervals])
        highs = np.array([high for _, high in self.intervals])
        return float(np.sum(phi(lows[:, None], np.ones((len(lows), 1))))
                     + np.sum(phi(highs[:, None], -np.ones((len(highs), 1)))))

    def density_mass(self, density):
        return sum(density.integral(low, high) for low, high in self.intervals)

    def describe(self):
        return {'kind': 'intervals', 'intervals': [[low, high] for low, high in self.intervals]}

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

    ##############################################################################
class PolygonSet():
    """ Simple polygon, stored counter-clockwise """
    ##############################################################################

    def __init__(self, vertices, label='polygon'):
        vertices = np.asarray(vertices, dtype=float)
        if vertices.ndim != 2 or vertices.shape[1] != 2 or len(vertices) < 3:
            raise ParameterError("A polygon needs at least three planar vertices")
        area = _signed_area(vertices)
        if area == 0:
            raise ParameterError("Degenerate polygon")
        if area < 0:
            vertices = vertices[::-1]
        self.vertices = vertices
        self.area = abs(area)
        self.label = label

    def classify(self, points):
        points = np.asarray(points, dtype=float).reshape(-1, 2)
        start = self.vertices
        end = np.roll(self.vertices, -1, axis=0)
        edge = end - start
        rel = points[:, None, :] - start[None, :, :]
        length2 = np.sum(edge * edge, axis=-1)
        along = np.clip(np.einsum('pei,ei->pe', rel, edge) / length2, 0.0, 1.0)
        nearest = rel - along[..., None] * edge
        on_edge = np.any(np.sum(nearest * nearest, axis=-1) <= BOUNDARY_TOL ** 2, axis=1)
        # ray casting towards +x
        crosses = ((start[None, :, 1] > points[:, None, 1]) != (end[None, :, 1] > points[:, None, 1]))
        with np.errstate(divide='ignore', invalid='ignore'):
            hit = start[None, :, 0] + (points[:, None, 1] - start[None, :, 1]) * edge[None, :, 0] / edge[None, :, 1]
        inside = np.sum(crosses & (points[:, None, 0] < hit), axis=1) % 2 == 1
        return inside | on_edge, inside & ~on_edge

    def perimeter(self, phi):
        """Edge integrals of phi at the inward normal (-d_y, d_x)/|d|"""
        start = self.vertices
        edge = np.roll(self.vertices, -1, axis=0) - start
        length = np.sqrt(np.sum(edge * edge, axis=-1))
        normal = np.stack([-edge[:, 1], edge[:, 0]], axis=-1) / length[:, None]
        nodes, weights = gauss_unit(EDGE_ORDER)
        points = start[:, None, :] + nodes[None, :, None] * edge[:, None, :]
        values = np.asarray(phi(points, np.broadcast_to(normal[:, None, :], points.shape)))
        return float(np.sum(values * weights[None, :] * length[:, None]))

    def density_mass(self, density):
        return density.integrate_polygon(self.vertices)

    def describe(self):
        return {'kind': self.label, 'vertices': self.vertices.tolist()}

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

    ##############################################################################
class PixelSet():
    """ Union of cells of a rectangular grid """
    ##############################################################################

    def __init__(self, mask, x_edges, y_edges):
        self.mask = np.asarray(mask, dtype=bool)
        self.x_edges = np.asarray(x_edges, dtype=float)
        self.y_edges = np.asarray(y_edges, dtype=float)
        if self.mask.shape != (len(self.x_edges) - 1, len(self.y_edges) - 1):
            raise ParameterError("Pixel mask does not match its grid")
        if not self.mask.any():
            raise ParameterError("Empty pixel set")

    def _cell_of(self, coords, edges):
        index = np.searchsorted(edges, coords, side='right') - 1
        lower = np.clip(np.searchsorted(edges, coords - BOUNDARY_TOL, side='right') - 1, -1, len(edges) - 1)
        upper = np.clip(np.searchsorted(edges, coords + BOUNDARY_TOL, side='right') - 1, -1, len(edges) - 1)
        return index, lower, upper

    def classify(self, points):
        points = np.asarray(points, dtype=float).reshape(-1, 2)
        padded = np.pad(self.mask, 1)
        _, x_low, x_high = self._cell_of(points[:, 0], self.x_edges)
        _, y_low, y_high = self._cell_of(points[:, 1], self.y_edges)
        closure = np.zeros(len(points), dtype=bool)
        interior = np.ones(len(points), dtype=bool)
        # a point touches every cell whose closure contains it
        for ix in (x_low, x_high):
            for iy in (y_low, y_high):
                inside_grid = (ix >= 0) & (ix < self.mask.shape[0]) & (iy >= 0) & (iy < self.mask.shape[1])
                member = padded[np.clip(ix + 1, 0, padded.shape[0] - 1), np.clip(iy + 1, 0, padded.shape[1] - 1)]
                member = member & inside_grid
                closure |= member
                interior &= member
        return closure, interior

    def _facets(self):
        """Midpoints, inward normals and lengths of the boundary facets"""
        padded = np.pad(self.mask, 1).astype(int)
        hx = np.diff(self.x_edges)
        hy = np.diff(self.y_edges)
        y_mid = 0.5 * (self.y_edges[1:] + self.y_edges[:-1])
        x_mid = 0.5 * (self.x_edges[1:] + self.x_edges[:-1])
        points, normals, lengths = [], [], []
        # vertical facets sit at x_edges[i] between columns i-1 and i
        change = np.diff(padded[:, 1:-1], axis=0)
        for i, j in np.argwhere(change != 0):
            points.append((self.x_edges[i], y_mid[j]))
            normals.append((float(change[i, j]), 0.0))
            lengths.append(hy[j])
        change = np.diff(padded[1:-1, :], axis=1)
        for i, j in np.argwhere(change != 0):
            points.append((x_mid[i], self.y_edges[j]))
            normals.append((0.0, float(change[i, j])))
            lengths.append(hx[i])
        return np.array(points), np.array(normals), np.array(lengths)

    def perimeter(self, phi):
        points, normals, lengths = self._facets()
        return float(np.sum(np.asarray(phi(points, normals)) * lengths))

    def density_mass(self, density):
        cells = density.cell_integrals(self.x_edges, self.y_edges)
        return float(np.sum(cells[self.mask]))

    def describe(self):
        return {'kind': 'pixels', 'cells': np.argwhere(self.mask).tolist(),
                'x_edges': self.x_edges.tolist(), 'y_edges': self.y_edges.tolist()}

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

    ##############################################################################
class UnionSet():
    """ Union of planar sets with pairwise disjoint closures """
    ##############################################################################

    def __init__(self, parts):
        if not parts:
            raise ParameterError("Empty union of test sets")
        self.parts = list(parts)

    def classify(self, points):
        closure, interior = self.parts[0].classify(points)
        for part in self.parts[1:]:
            more_closure, more_interior = part.classify(points)
            closure = closure | more_closure
            interior = interior | more_interior
        return closure, interior

    def perimeter(self, phi):
        return sum(part.perimeter(phi) for part in self.parts)

    def density_mass(self, density):
        return sum(part.density_mass(density) for part in self.parts)

    def describe(self):
        return {'kind': 'union', 'parts': [part.describe() for part in self.parts]}

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

    ##############################################################################
class SetFamily():
    """ Explicit list of test sets """
    ##############################################################################

    def __init__(self, sets, name='sets', rasterized=False):
        if not sets:
            raise ParameterError("Test set family '%s' is empty" % name)
        self.sets = list(sets)
        self.name = name
        self.rasterized = rasterized

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __add__(self, other):
        return SetFamily(self.sets + other.sets, "%s+%s" % (self.name, other.name),
                         self.rasterized or other.rasterized)

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

    ##############################################################################
class IntervalFamily():
    """ Unions of up to max_components intervals with endpoints on a point grid """
    ##############################################################################

        ####################################################################
    def __init__(self, domain, points, max_components=3):
        ####################################################################
        low, high = domain
        points = np.unique(np.asarray(points, dtype=float))
        points = points[(points > low) & (points < high)]
        if len(points) < 2:
            raise ParameterError("An interval family needs at least two interior grid points")
        if max_components < 1:
            raise ParameterError("max_components must be at least 1")
        self.domain = (float(low), float(high))
        self.points = points
        self.max_components = max_components
        self.name = 'intervals'
        self.rasterized = False

    def combinations(self, components):
        """Endpoint index arrays, one row per union, shape (n, 2 * components)"""
        combos = list(combinations(range(len(self.points)), 2 * components))
        return np.array(combos, dtype=int).reshape(-1, 2 * components)

    def __len__(self):
        total = 0
        for components in range(1, self.max_components + 1):
            total += len(self.combinations(components))
        return total

    def set_of(self, row):
        ends = self.points[np.asarray(row)]
        return IntervalSet(zip(ends[0::2], ends[1::2]))

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

    ####################################################################
def interval_family(domain, measures=(), n_grid=16, max_components=3):
    """Interval family on a uniform grid refined by the atoms of the measures"""
    ####################################################################
    low, high = domain
    points = list(low + (high - low) * (np.arange(1, n_grid + 1) / (n_grid + 1.0)))
    for measure in measures:
        points.extend(float(np.ravel(location)[0]) for location, _ in measure.atoms)
    return IntervalFamily(domain, points, max_components)

    ####################################################################
def rectangle_family(box, n_grid=8):
    """Axis aligned rectangles with corners on an interior grid of the box"""
    ####################################################################
    (x0, x1), (y0, y1) = box
    xs = x0 + (x1 - x0) * np.arange(1, n_grid + 2) / (n_grid + 2.0)
    ys = y0 + (y1 - y0) * np.arange(1, n_grid + 2) / (n_grid + 2.0)
    sets = []
    for left, right in combinations(xs, 2):
        for bottom, top in combinations(ys, 2):
            sets.append(PolygonSet([(left, bottom), (right, bottom), (right, top), (left, top)],
                                   label='rectangle'))
    return SetFamily(sets, 'rectangles')

    ####################################################################
def level_set_polygon(gauge, center, radius, n_vertices=256):
    """Inscribed polygon of {x: gauge(x - center) < radius} for a 1-homogeneous gauge"""
    ####################################################################
    angles = 2.0 * pi * np.arange(n_vertices) / n_vertices
    dirs = np.stack([np.cos(angles), np.sin(angles)], axis=-1)
    scale = np.asarray(gauge(dirs), dtype=float)
    if np.any(scale <= 0):
        raise ParameterError("Gauge must be positive off the origin")
    return np.asarray(center, dtype=float) + radius * dirs / scale[:, None]

    ####################################################################
def polar_ball_family(gauge, centers, radii, n_vertices=256, label='polar-ball'):
    """Level set polygons of a gauge for every center and radius"""
    ####################################################################
    sets = [PolygonSet(level_set_polygon(gauge, center, radius, n_vertices), label=label)
            for center in centers for radius in radii]
    return SetFamily(sets, label)

    ####################################################################
def pixel_blob_family(box, n_pixels=24, n_blobs=16, seed=0, smoothing=2.0):
    """Random connected pixel blobs away from the box boundary"""
    ####################################################################
    (x0, x1), (y0, y1) = box
    x_edges = np.linspace(x0, x1, n_pixels + 1)
    y_edges = np.linspace(y0, y1, n_pixels + 1)
    rng = np.random.default_rng(seed)
    sets = []
    attempts = 0
    while len(sets) < n_blobs and attempts < 20 * n_blobs:
        attempts += 1
        noise = ndimage.gaussian_filter(rng.standard_normal((n_pixels, n_pixels)), smoothing)
        mask = noise > np.quantile(noise, rng.uniform(0.6, 0.9))
        mask[0, :] = mask[-1, :] = mask[:, 0] = mask[:, -1] = False
        labels, count = ndimage.label(mask)
        if count == 0:
            continue
        sizes = ndimage.sum(mask, labels, range(1, count + 1))
        blob = ndimage.binary_fill_holes(labels == 1 + int(np.argmax(sizes)))
        sets.append(PixelSet(blob, x_edges, y_edges))
    return SetFamily(sets, 'pixel-blobs', rasterized=True)
