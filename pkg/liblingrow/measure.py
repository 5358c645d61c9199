#!/usr/bin/env python3
"""Signed Radon measures with atoms, densities and line densities; the Jordan
split, the pairing against BV functions, the isoperimetric condition and
calibration certificates."""
import numpy as np
from liblingrow.errors import AtomOnBoundaryError, DivergenceMismatchError, ParameterError
from liblingrow.quadrature import gauss_intervals, gauss_unit, polygon_integral
from liblingrow.testsets import IntervalFamily, interval_family
from liblingrow.util import threaded_map

ATOM_MERGE_TOL = 1e-12
GAUSS_ORDER = 4

    ##############################################################################
class TableDensity():
    """ Piecewise linear density on [nodes[0], nodes[-1]], zero outside """
    ##############################################################################

    def __init__(self, nodes, values):
        nodes = np.asarray(nodes, dtype=float)
        values = np.asarray(values, dtype=float)
        if nodes.ndim != 1 or nodes.shape != values.shape or len(nodes) < 2:
            raise ParameterError("A density table needs matching node and value lists")
        if np.any(np.diff(nodes) <= 0):
            raise ParameterError("Density table nodes must increase strictly")
        if not np.all(np.isfinite(values)):
            raise ParameterError("Density table values must be finite")
        nodes.setflags(write=False)
        values.setflags(write=False)
        self.nodes = nodes
        self.values = values

    def __call__(self, x):
        return np.interp(x, self.nodes, self.values, left=0.0, right=0.0)

    def breakpoints(self, low, high):
        inner = self.nodes[(self.nodes > low) & (self.nodes < high)]
        return np.concatenate([[low], inner, [high]])

    def integral(self, low, high):
        """Exact integral over (low, high)"""
        low = max(low, self.nodes[0])
        high = min(high, self.nodes[-1])
        if high <= low:
            return 0.0
        points = self.breakpoints(low, high)
        values = self(points)
        return float(np.sum(0.5 * (values[1:] + values[:-1]) * np.diff(points)))

    def weighted_integral(self, func, low, high, extra=()):
        """Integral of func * density, exact when func is affine between extra points"""
        low = max(low, self.nodes[0])
        high = min(high, self.nodes[-1])
        if high <= low:
            return 0.0
        points = np.unique(np.concatenate([self.breakpoints(low, high),
                                           [p for p in extra if low < p < high]]))
        xs, ws = gauss_intervals(points[:-1], points[1:], GAUSS_ORDER)
        return float(np.sum(np.asarray(func(xs)) * self(xs) * ws))

    def _split(self, sign):
        """sign * max(sign * density, 0) as a table, crossings inserted"""
        nodes = list(self.nodes)
        values = list(self.values)
        crossings = []
        for i in range(len(nodes) - 1):
            left, right = values[i], values[i + 1]
            if left * right < 0:
                crossings.append(nodes[i] + (nodes[i + 1] - nodes[i]) * left / (left - right))
        grid = np.unique(np.concatenate([self.nodes, crossings]))
        part = np.maximum(sign * self(grid), 0.0)
        return TableDensity(grid, part)

    def positive_part(self):
        return self._split(1.0)

    def negative_part(self):
        return self._split(-1.0)

    def is_zero(self):
        return not np.any(self.values)

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

    ##############################################################################
class FieldDensity():
    """ Density of a planar measure given by a vectorized function """
    ##############################################################################

    def __init__(self, func, anchor=None, label='field'):
        self.func = func
        self.anchor = None if anchor is None else np.asarray(anchor, dtype=float)
        self.label = label
        self._cells = {}

    def __call__(self, points):
        return np.asarray(self.func(np.asarray(points, dtype=float)))

    def integrate_polygon(self, vertices, order=8):
        return polygon_integral(self.func, vertices, self.anchor, order)

    def cell_integrals(self, x_edges, y_edges):
        """Integrals over every cell of a grid, cached per grid"""
        key = (tuple(x_edges), tuple(y_edges))
        if key not in self._cells:
            cells = np.zeros((len(x_edges) - 1, len(y_edges) - 1))
            for i in range(cells.shape[0]):
                for j in range(cells.shape[1]):
                    cells[i, j] = self.integrate_polygon(
                        [(x_edges[i], y_edges[j]), (x_edges[i + 1], y_edges[j]),
                         (x_edges[i + 1], y_edges[j + 1]), (x_edges[i], y_edges[j + 1])])
            self._cells[key] = cells
        return self._cells[key]

    def positive_part(self):
        return FieldDensity(lambda p: np.maximum(self.func(p), 0.0), self.anchor, "%s+" % self.label)

    def negative_part(self):
        return FieldDensity(lambda p: np.maximum(-self.func(p), 0.0), self.anchor, "%s-" % self.label)

    def is_zero(self):
        return False

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

    ##############################################################################
class CylinderDensity(FieldDensity):
    """ Density h(x) of a one dimensional measure spread over (0, 1) x Omega """
    ##############################################################################

    def __init__(self, table):
        FieldDensity.__init__(self, lambda p: table(p[..., 1]), label='cylinder')
        self.table = table

    def integrate_polygon(self, vertices, order=8):
        vertices = np.asarray(vertices, dtype=float)
        low, high = vertices.min(axis=0), vertices.max(axis=0)
        is_box = len(vertices) == 4 and all(
            np.any(np.isclose(vertex[0], (low[0], high[0]))) and np.any(np.isclose(vertex[1], (low[1], high[1])))
            for vertex in vertices)
        if is_box:
            return (high[0] - low[0]) * self.table.integral(low[1], high[1])
        return FieldDensity.integrate_polygon(self, vertices, order)

    def positive_part(self):
        return CylinderDensity(self.table.positive_part())

    def negative_part(self):
        return CylinderDensity(self.table.negative_part())

    def is_zero(self):
        return self.table.is_zero()

    ##############################################################################
class CurveMeasure():
    """ Line density along a polyline, linear between vertices """
    ##############################################################################

    def __init__(self, points, densities):
        points = np.asarray(points, dtype=float)
        densities = np.asarray(densities, dtype=float)
        if points.ndim != 2 or points.shape[1] != 2 or len(points) < 2:
            raise ParameterError("A curve needs at least two planar points")
        if densities.shape != (len(points),):
            raise ParameterError("A curve needs one density value per point")
        self.points = points
        self.densities = densities

    def total_mass(self):
        lengths = np.sqrt(np.sum(np.diff(self.points, axis=0) ** 2, axis=-1))
        return float(np.sum(0.5 * (self.densities[1:] + self.densities[:-1]) * lengths))

    def pseudo_atoms(self, resolution):
        """Midpoints and exact masses of subsegments no longer than resolution"""
        locations, masses = [], []
        for i in range(len(self.points) - 1):
            start, end = self.points[i], self.points[i + 1]
            length = float(np.linalg.norm(end - start))
            pieces = max(1, int(np.ceil(length / resolution - 1e-9)))
            mids = (np.arange(pieces) + 0.5) / pieces
            locations.append(start + mids[:, None] * (end - start))
            density = self.densities[i] + mids * (self.densities[i + 1] - self.densities[i])
            masses.append(density * length / pieces)
        return np.concatenate(locations), np.concatenate(masses)

    def split(self, sign):
        points = [self.points[0]]
        values = [self.densities[0]]
        for i in range(len(self.points) - 1):
            left, right = self.densities[i], self.densities[i + 1]
            if left * right < 0:
                share = left / (left - right)
                points.append(self.points[i] + share * (self.points[i + 1] - self.points[i]))
                values.append(0.0)
            points.append(self.points[i + 1])
            values.append(right)
        part = np.maximum(sign * np.asarray(values), 0.0)
        return CurveMeasure(points, part)

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

    ##############################################################################
class SignedMeasure():
    """ Finite signed Radon measure on an interval or a box """
    ##############################################################################

        ####################################################################
    def __init__(self, domain, atoms=(), density=None, curves=()):
        ####################################################################
        domain = np.asarray(domain, dtype=float)
        if domain.shape == (2,):
            self.dim = 1
        elif domain.shape == (2, 2):
            self.dim = 2
        else:
            raise ParameterError("Domain must be an interval (a, b) or a box ((x0, x1), (y0, y1))")
        if np.any(domain.reshape(-1, 2)[:, 0] >= domain.reshape(-1, 2)[:, 1]):
            raise ParameterError("Domain bounds must increase")
        self.domain = domain
        self.atoms = []
        for location, mass in atoms:
            location = np.atleast_1d(np.asarray(location, dtype=float))
            if location.shape != (self.dim,):
                raise ParameterError("Atom location %s does not match the domain" % location.tolist())
            if not np.isfinite(mass):
                raise ParameterError("Atom mass must be finite")
            if not self.strictly_inside(location):
                raise AtomOnBoundaryError(location.tolist(), domain.tolist())
            if mass != 0:
                self.atoms.append((location, float(mass)))
        if density is not None and self.dim == 1 and not isinstance(density, TableDensity):
            raise ParameterError("One dimensional densities are tables")
        self.density = density
        self.curves = list(curves)
        if self.curves and self.dim != 2:
            raise ParameterError("Line densities need a two dimensional domain")

    def strictly_inside(self, location):
        bounds = self.domain.reshape(-1, 2)
        return bool(np.all(location > bounds[:, 0]) and np.all(location < bounds[:, 1]))

    def atom_arrays(self):
        if not self.atoms:
            return np.zeros((0, self.dim)), np.zeros(0)
        return np.array([loc for loc, _ in self.atoms]), np.array([mass for _, mass in self.atoms])

    def total_mass(self):
        """mu(Omega)"""
        total = sum(mass for _, mass in self.atoms)
        if self.density is not None:
            if self.dim == 1:
                total += self.density.integral(*self.domain)
            else:
                (x0, x1), (y0, y1) = self.domain
                total += self.density.integrate_polygon([(x0, y0), (x1, y0), (x1, y1), (x0, y1)])
        total += sum(curve.total_mass() for curve in self.curves)
        return float(total)

    def set_mass(self, test_set, closure, resolution=0.05):
        """mu(A) or mu of the closure of A"""
        locations, masses = self.atom_arrays()
        for curve in self.curves:
            more_locations, more_masses = curve.pseudo_atoms(resolution)
            locations = np.concatenate([locations, more_locations])
            masses = np.concatenate([masses, more_masses])
        total = 0.0
        if len(masses):
            in_closure, in_interior = test_set.classify(locations if self.dim == 2 else locations[:, 0])
            total += float(np.sum(masses[in_closure if closure else in_interior]))
        if self.density is not None:
            total += test_set.density_mass(self.density)
        return total

    def is_nonnegative(self):
        if any(mass < 0 for _, mass in self.atoms):
            return False
        if any(np.any(curve.densities < 0) for curve in self.curves):
            return False
        if isinstance(self.density, TableDensity):
            return bool(np.all(self.density.values >= 0))
        return True

    def scaled(self, factor):
        density = self.density
        if isinstance(density, TableDensity):
            density = TableDensity(density.nodes, factor * density.values)
        elif density is not None:
            density = FieldDensity(lambda p, d=density: factor * d(p), density.anchor)
        curves = [CurveMeasure(c.points, factor * c.densities) for c in self.curves]
        return SignedMeasure(self.domain, [(loc, factor * m) for loc, m in self.atoms], density, curves)

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

    ##############################################################################
class JordanPair():
    """ Non-negative measures mu_plus and mu_minus with mu = mu_plus - mu_minus """
    ##############################################################################

    def __init__(self, plus, minus, mutually_singular=None):
        if plus.dim != minus.dim or not np.allclose(plus.domain, minus.domain):
            raise ParameterError("Both parts of a Jordan pair must live on the same domain")
        self.plus = plus
        self.minus = minus
        self.domain = plus.domain
        self.dim = plus.dim
        if mutually_singular is None:
            mutually_singular = _singular(plus, minus)
        self.mutually_singular = mutually_singular

    def total_mass(self):
        return self.plus.total_mass() - self.minus.total_mass()

    def atom_locations(self):
        return sorted({float(loc[0]) for loc, _ in self.plus.atoms + self.minus.atoms})

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

def _singular(plus, minus):
    plus_locs, _ = plus.atom_arrays()
    minus_locs, _ = minus.atom_arrays()
    if len(plus_locs) and len(minus_locs):
        gaps = np.abs(plus_locs[:, None, :] - minus_locs[None, :, :]).max(axis=-1)
        if np.any(gaps <= ATOM_MERGE_TOL):
            return False
    if isinstance(plus.density, TableDensity) and isinstance(minus.density, TableDensity):
        grid = np.union1d(plus.density.nodes, minus.density.nodes)
        samples = np.concatenate([grid, 0.5 * (grid[1:] + grid[:-1])])
        if np.any(plus.density(samples) * minus.density(samples) > 0):
            return False
    elif plus.density is not None and minus.density is not None:
        return False
    return not (plus.curves and minus.curves)

    ####################################################################
def jordan_decompose(mu):
    """Split mu into its positive and negative parts.

    Coincident atoms are merged first, so the parts never share an atom."""
    ####################################################################
    merged = []
    for location, mass in sorted(mu.atoms, key=lambda item: tuple(item[0])):
        if merged and np.max(np.abs(merged[-1][0] - location)) <= ATOM_MERGE_TOL:
            merged[-1] = (merged[-1][0], merged[-1][1] + mass)
        else:
            merged.append((location, mass))
    plus_atoms = [(loc, m) for loc, m in merged if m > 0]
    minus_atoms = [(loc, -m) for loc, m in merged if m < 0]
    plus_density = minus_density = None
    if mu.density is not None:
        plus_density = mu.density.positive_part()
        minus_density = mu.density.negative_part()
    plus = SignedMeasure(mu.domain, plus_atoms, plus_density, [c.split(1.0) for c in mu.curves])
    minus = SignedMeasure(mu.domain, minus_atoms, minus_density, [c.split(-1.0) for c in mu.curves])
    return JordanPair(plus, minus, mutually_singular=True)

    ####################################################################
def pairing(pair, w):
    """<<mu_plus, mu_minus; w>> = int w^- dmu_plus - int w^+ dmu_minus"""
    ####################################################################
    if pair.dim != 1:
        raise ParameterError("The pairing is evaluated for one dimensional BV functions")
    if not np.allclose(np.asarray(w.domain, dtype=float), pair.domain):
        raise ParameterError("Function domain %s differs from the measure domain %s"
                             % (list(w.domain), pair.domain.tolist()))
    total = 0.0
    for sign, part, side in ((1.0, pair.plus, 0), (-1.0, pair.minus, 1)):
        for location, mass in part.atoms:
            if not part.strictly_inside(location):
                raise AtomOnBoundaryError(location.tolist(), pair.domain.tolist())
            total += sign * mass * w.representatives(location[0])[side]
        if part.density is not None:
            total += sign * part.density.weighted_integral(w, *pair.domain, extra=w.nodes)
    return float(total)

    ##############################################################################
class ICReport():
    """ Outcome of a scan of P_phi(A) C >= mu1(A+) - mu2(A1) over a set family """
    ##############################################################################

    def __init__(self, constant, worst_ratio, witness, n_sets, rasterized=False, tol=1e-9):
        self.constant_requested = constant
        self.worst_ratio = worst_ratio
        self.witness = witness
        self.n_sets = n_sets
        self.rasterized = rasterized
        self.passed = worst_ratio <= constant + tol
        self.note = ("a passing scan of a finite family does not prove the condition, "
                     "a failing set is a proof of violation")
        self.orientation = None

    def to_dict(self):
        return {
            'constant': self.constant_requested,
            'passed': self.passed,
            'worst_ratio': self.worst_ratio,
            'witness': self.witness,
            'n_sets': self.n_sets,
            'rasterized': self.rasterized,
            'orientation': self.orientation,
            'note': self.note,
        }

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

def _cumulative(measure, points):
    """Density mass of (a, p), atom mass of (a, p) and of (a, p]"""
    low = measure.domain[0]
    density = np.zeros(len(points))
    if measure.density is not None:
        density = np.array([measure.density.integral(low, p) for p in points])
    locations, masses = measure.atom_arrays()
    locations = locations[:, 0] if len(masses) else locations.reshape(-1)
    below = np.array([np.sum(masses[locations < p - 1e-12]) for p in points])
    upto = np.array([np.sum(masses[locations <= p + 1e-12]) for p in points])
    return density, below, upto

def _interval_ratios(family, mu1, mu2, phi, rows):
    """Vectorized ratios for unions of intervals, one row of endpoint indices each"""
    points = family.points
    d1, below1, upto1 = _cumulative(mu1, points)
    d2, below2, upto2 = _cumulative(mu2, points)
    ones = np.ones((len(points), 1))
    left_per = np.asarray(phi(points[:, None], ones))
    right_per = np.asarray(phi(points[:, None], -ones))
    lows, highs = rows[:, 0::2], rows[:, 1::2]
    closed1 = (d1[highs] - d1[lows]) + (upto1[highs] - below1[lows])
    open2 = (d2[highs] - d2[lows]) + (below2[highs] - upto2[lows])
    numerator = np.sum(closed1 - open2, axis=1)
    perimeter = np.sum(left_per[lows] + right_per[highs], axis=1)
    return numerator / perimeter

def _chunks(rows, threads):
    size = max(1, -(-len(rows) // max(1, threads)))
    return [rows[i:i + size] for i in range(0, len(rows), size)]

    ####################################################################
def ic_check(mu1, mu2, phi, constant, family=None, threads=1, tol=1e-9, resolution=0.05):
    """Scan P_phi(A) C >= mu1(A+) - mu2(A1) over a family of test sets.

    mu1 and mu2 are non-negative; A+ is the closure of A and A1 its measure
    theoretic interior. Returns the worst ratio and a witness set."""
    ####################################################################
    if not (mu1.is_nonnegative() and mu2.is_nonnegative()):
        raise ParameterError("The isoperimetric check needs non-negative measures")
    if family is None:
        if mu1.dim != 1:
            raise ParameterError("Two dimensional checks need an explicit test set family")
        family = interval_family(tuple(mu1.domain), (mu1, mu2))
    if isinstance(family, IntervalFamily):
        best, best_row = -np.inf, None
        for components in range(1, family.max_components + 1):
            rows = family.combinations(components)
            if not len(rows):
                continue
            ratios = threaded_map(lambda chunk: _interval_ratios(family, mu1, mu2, phi, chunk),
                                  _chunks(rows, threads), threads)
            ratios = np.concatenate(ratios)
            index = int(np.argmax(ratios))
            if ratios[index] > best:
                best, best_row = float(ratios[index]), rows[index]
        witness = family.set_of(best_row).describe()
        return ICReport(constant, best, witness, len(family), tol=tol)

    def ratio(test_set):
        numerator = mu1.set_mass(test_set, True, resolution) - mu2.set_mass(test_set, False, resolution)
        return numerator / test_set.perimeter(phi)

    ratios = np.array(threaded_map(ratio, family.sets, threads))
    index = int(np.argmax(ratios))
    return ICReport(constant, float(ratios[index]), family.sets[index].describe(), len(family),
                    rasterized=family.rasterized, tol=tol)

    ##############################################################################
class CalibrationField1D():
    """ sigma sampled at grid nodes avoiding the atoms """
    ##############################################################################

    def __init__(self, nodes, values):
        self.nodes = np.asarray(nodes, dtype=float)
        self.values = np.asarray(values, dtype=float)
        if self.nodes.shape != self.values.shape or np.any(np.diff(self.nodes) <= 0):
            raise ParameterError("A calibration field needs increasing nodes and one value per node")

    @classmethod
    def from_function(cls, func, domain, n_cells):
        nodes = np.linspace(domain[0], domain[1], n_cells + 1)
        return cls(nodes, func(nodes))

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

    ##############################################################################
class CalibrationField2D():
    """ Face fluxes of sigma on a staggered grid """
    ##############################################################################

        ####################################################################
    def __init__(self, x_edges, y_edges, flux_x, flux_y):
        ####################################################################
        self.x_edges = np.asarray(x_edges, dtype=float)
        self.y_edges = np.asarray(y_edges, dtype=float)
        self.flux_x = np.asarray(flux_x, dtype=float)
        self.flux_y = np.asarray(flux_y, dtype=float)
        nx, ny = len(self.x_edges) - 1, len(self.y_edges) - 1
        if self.flux_x.shape != (nx + 1, ny) or self.flux_y.shape != (nx, ny + 1):
            raise ParameterError("Face fluxes do not match the grid")

    @classmethod
    def from_function(cls, func, box, n_cells, order=4):
        """Fluxes of a vector field through every face by Gauss quadrature"""
        (x0, x1), (y0, y1) = box
        x_edges = np.linspace(x0, x1, n_cells + 1)
        y_edges = np.linspace(y0, y1, n_cells + 1)
        nodes, weights = gauss_unit(order)
        ys = y_edges[:-1, None] + np.diff(y_edges)[:, None] * nodes
        points = np.stack(np.broadcast_arrays(x_edges[:, None, None], ys[None, :, :]), axis=-1)
        flux_x = np.einsum('ijq,q,j->ij', np.asarray(func(points))[..., 0], weights, np.diff(y_edges))
        xs = x_edges[:-1, None] + np.diff(x_edges)[:, None] * nodes
        points = np.stack(np.broadcast_arrays(xs[:, None, :], y_edges[None, :, None]), axis=-1)
        flux_y = np.einsum('ijq,q,i->ij', np.asarray(func(points))[..., 1], weights, np.diff(x_edges))
        return cls(x_edges, y_edges, flux_x, flux_y)

    def divergence(self):
        return np.diff(self.flux_x, axis=0) + np.diff(self.flux_y, axis=1)

    def cell_averages(self):
        hx = np.diff(self.x_edges)[:, None]
        hy = np.diff(self.y_edges)[None, :]
        sigma_x = 0.5 * (self.flux_x[1:, :] + self.flux_x[:-1, :]) / hy
        sigma_y = 0.5 * (self.flux_y[:, 1:] + self.flux_y[:, :-1]) / hx
        return np.stack([sigma_x, sigma_y], axis=-1)

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

def _cell_masses_1d(mu, nodes):
    locations, masses = mu.atom_arrays()
    locations = locations.reshape(-1)
    for location in locations:
        if np.min(np.abs(nodes - location)) <= ATOM_MERGE_TOL:
            raise ParameterError("Calibration grid node at %g coincides with an atom" % location)
    cells = np.zeros(len(nodes) - 1)
    for location, mass in zip(locations, masses):
        cells[np.searchsorted(nodes, location) - 1] += mass
    if mu.density is not None:
        cells += np.array([mu.density.integral(lo, hi) for lo, hi in zip(nodes[:-1], nodes[1:])])
    return cells

    ####################################################################
def verify_calibration(sigma, mu, phi, tol=1e-8, samples=8):
    """Certify the isoperimetric constant C = sup phi_polar(x, sigma(x)) for div sigma = mu.

    The divergence is checked cell by cell against mu; a mismatch raises
    DivergenceMismatchError naming the cell."""
    ####################################################################
    if mu.dim == 1:
        return _verify_calibration_1d(sigma, mu, phi, tol, samples)
    divergence = sigma.divergence()
    cells = np.zeros(divergence.shape)
    locations, masses = mu.atom_arrays()
    for location, mass in zip(locations, masses):
        i = np.searchsorted(sigma.x_edges, location[0]) - 1
        j = np.searchsorted(sigma.y_edges, location[1]) - 1
        cells[i, j] += mass
    if mu.density is not None:
        cells += mu.density.cell_integrals(sigma.x_edges, sigma.y_edges)
    residual = np.abs(divergence - cells)
    scale = 1.0 + np.abs(cells)
    worst = np.unravel_index(int(np.argmax(residual / scale)), residual.shape)
    if residual[worst] > tol * scale[worst]:
        raise DivergenceMismatchError([int(k) for k in worst], float(residual[worst]), tol)
    centres = np.stack(np.meshgrid(0.5 * (sigma.x_edges[1:] + sigma.x_edges[:-1]),
                                   0.5 * (sigma.y_edges[1:] + sigma.y_edges[:-1]), indexing='ij'), axis=-1)
    return float(np.max(phi.polar(centres, sigma.cell_averages())))

def _verify_calibration_1d(sigma, mu, phi, tol, samples):
    nodes = sigma.nodes
    if not (np.isclose(nodes[0], mu.domain[0]) and np.isclose(nodes[-1], mu.domain[1])):
        raise ParameterError("Calibration grid must span the domain")
    cells = _cell_masses_1d(mu, nodes)
    residual = np.abs(np.diff(sigma.values) - cells)
    scale = 1.0 + np.abs(cells)
    worst = int(np.argmax(residual / scale))
    if residual[worst] > tol * scale[worst]:
        raise DivergenceMismatchError(worst, float(residual[worst]), tol)
    # sigma(x) = sigma(node) + mu((node, x)) inside each cell
    locations, masses = mu.atom_arrays()
    locations = locations.reshape(-1)
    sites, values = [], []
    for i in range(len(nodes) - 1):
        lo, hi = nodes[i], nodes[i + 1]
        inside = np.sort(locations[(locations > lo) & (locations < hi)])
        points = np.unique(np.concatenate([np.linspace(lo, hi, samples + 1), inside]))
        for point in points:
            below = float(np.sum(masses[(locations > lo) & (locations < point)]))
            spread = mu.density.integral(lo, point) if mu.density is not None else 0.0
            left_value = sigma.values[i] + below + spread
            sites.append(point)
            values.append(left_value)
            at = float(np.sum(masses[np.abs(locations - point) <= ATOM_MERGE_TOL]))
            if at:
                sites.append(point)
                values.append(left_value + at)
    return float(np.max(phi.polar(np.array(sites)[:, None], np.array(values)[:, None])))

    ####################################################################
def lift_measure(mu):
    """mu_lift = L1 on (0, 1) times mu, a measure on the box (0, 1) x Omega"""
    ####################################################################
    if mu.dim != 1:
        raise ParameterError("Only one dimensional measures are lifted")
    low, high = mu.domain
    curves = [CurveMeasure([(0.0, loc[0]), (1.0, loc[0])], [mass, mass]) for loc, mass in mu.atoms]
    density = CylinderDensity(mu.density) if mu.density is not None else None
    return SignedMeasure(((0.0, 1.0), (low, high)), density=density, curves=curves)

    ####################################################################
def lift_pair(pair):
    """Lift both parts of a Jordan pair"""
    ####################################################################
    return JordanPair(lift_measure(pair.plus), lift_measure(pair.minus), pair.mutually_singular)
