#!/usr/bin/env python3
"""Scripted quantitative examples: the borderline anisotropic area functional,
the H4 failure family on a disc and the vectorial one dimensional counterexample"""
from os import path
from math import pi
import numpy as np
from liblingrow.errors import ConfigSchemaError, ParameterError, SingularityError, \
        UnknownExperimentError
from liblingrow.integrand import anisotropy_library, integrand_library, mirrored, polar, \
        unit_directions
from liblingrow.measure import FieldDensity, SignedMeasure, ic_check
from liblingrow.quadrature import gauss_unit
from liblingrow.testsets import PolygonSet, SetFamily, level_set_polygon
from liblingrow.util import build_describe, threaded_map, write_csv, write_json

FD_STEP = 1e-5

    ##############################################################################
class QuadratureDomain2D():
    """ Star shaped domain {gauge < 1} or a disc, with polar and Cartesian rules.

    The polar rule is Gauss-Legendre in the radius (optionally split at
    radial_breaks) and a periodic trapezoid in the angle; its r Jacobian absorbs
    integrable 1/|x| singularities at the origin. """
    ##############################################################################

        ####################################################################
    def __init__(self, radius=None, gauge=None, n_r=400, n_theta=400, radial_breaks=None):
        ####################################################################
        if (radius is None) == (gauge is None):
            raise ParameterError("Give either a radius or a gauge")
        if radial_breaks and radius is None:
            raise ParameterError("Radial breaks need a disc")
        self.n_r = n_r
        self.n_theta = n_theta
        self.angles = 2.0 * pi * (np.arange(n_theta) + 0.5) / n_theta
        self.directions = np.stack([np.cos(self.angles), np.sin(self.angles)], axis=-1)
        if radius is not None:
            self.rays = np.full(n_theta, float(radius))
        else:
            scale = np.asarray(gauge(self.directions), dtype=float)
            if np.any(scale <= 0):
                raise ParameterError("Gauge must be positive off the origin")
            self.rays = 1.0 / scale
        self.radius = radius
        self.gauge = gauge
        self.breaks = sorted(radial_breaks or [])
        self.excluded_bound = 0.0

    def indicator(self, points):
        points = np.asarray(points, dtype=float)
        if self.gauge is not None:
            return np.asarray(self.gauge(points)) < 1.0
        return np.sqrt(np.sum(points * points, axis=-1)) < self.radius

    def polar_nodes(self):
        """Points (n_theta, m, 2) and weights (n_theta, m) including the r Jacobian"""
        nodes, weights = gauss_unit(self.n_r)
        if self.breaks:
            edges = np.concatenate([[0.0], self.breaks, [self.radius]])
            radii = np.concatenate([lo + (hi - lo) * nodes for lo, hi in zip(edges[:-1], edges[1:])])
            radial = np.concatenate([(hi - lo) * weights for lo, hi in zip(edges[:-1], edges[1:])])
            radii = np.broadcast_to(radii, (self.n_theta, len(radii)))
            radial = np.broadcast_to(radial, radii.shape)
        else:
            radii = self.rays[:, None] * nodes[None, :]
            radial = self.rays[:, None] * weights[None, :]
        points = radii[..., None] * self.directions[:, None, :]
        return points, radial * radii * (2.0 * pi / self.n_theta)

    def integrate(self, func):
        """Polar rule; func receives points (n_theta, m, 2) and the angle index column"""
        points, weights = self.polar_nodes()
        values = np.asarray(func(points, np.arange(self.n_theta)[:, None]), dtype=float)
        if not np.all(np.isfinite(values)):
            raise SingularityError("Integrand is not finite at a polar quadrature node")
        return float(np.sum(values * weights))

    def integrate_cartesian(self, func, n_cells=400, singular=False):
        """Midpoint rule on the bounding box; a singular integrand loses the cells at the origin
        and excluded_bound records C 2 pi r for |func| <= C / |x| there"""
        extent = float(np.max(self.rays))
        edges = np.linspace(-extent, extent, n_cells + 1)
        mids = 0.5 * (edges[1:] + edges[:-1])
        points = np.stack(np.meshgrid(mids, mids, indexing='ij'), axis=-1)
        cell = (edges[1] - edges[0]) ** 2
        inside = self.indicator(points)
        self.excluded_bound = 0.0
        if singular:
            near = np.max(np.abs(points), axis=-1) < (edges[1] - edges[0])
            corners = points[near][:, None, :] + 0.5 * (edges[1] - edges[0]) * np.array(
                [[1, 1], [1, -1], [-1, 1], [-1, -1]])[None, :, :]
            size = np.sqrt(np.sum(corners * corners, axis=-1))
            strength = float(np.max(np.abs(np.asarray(func(corners, None))) * size))
            self.excluded_bound = 2.0 * pi * strength * float(np.max(size))
            inside = inside & ~near
        values = np.asarray(func(points, None), dtype=float)
        values = np.where(inside, values, 0.0)
        if not np.all(np.isfinite(values)):
            raise SingularityError("Integrand diverges on the Cartesian grid; use the polar rule")
        return float(np.sum(values) * cell)

    def area(self):
        return self.integrate(lambda points, index: np.ones(points.shape[:-1]))

    def boundary_polygon(self):
        return PolygonSet(self.rays[:, None] * self.directions, label='domain')

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

    ##############################################################################
class ExperimentTable():
    """ One row per parameter value plus a summary """
    ##############################################################################

    def __init__(self, name, params, header, rows, summary):
        self.name = name
        self.params = params
        self.header = header
        self.rows = rows
        self.summary = summary

    def column(self, key):
        index = self.header.index(key)
        return [row[index] for row in self.rows]

    def to_dict(self):
        return {'experiment': self.name, 'params': self.params, 'header': self.header,
                'rows': self.rows, 'summary': self.summary}

    def write(self, out_dir, seed=0):
        """CSV with provenance footer and a JSON summary"""
        provenance = {'experiment': self.name, 'params': self.params, 'build': build_describe(),
                      'seed': seed}
        csv_name = write_csv(path.join(out_dir, "%s.csv" % self.name), self.header, self.rows, provenance)
        json_name = write_json(path.join(out_dir, "%s.json" % self.name), self.to_dict())
        return csv_name, json_name

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

def _closed_area(phi):
    """|{mirrored polar < 1}| when known in closed form"""
    if phi.name == 'euclidean':
        return pi
    if phi.name == 'scaled':
        return pi * phi.params['lambda'] ** 2
    if phi.name == 'ellipse':
        return pi * float(np.linalg.det(np.asarray(phi.params['Q']))) ** 0.5
    return None

def _polar_gauge(phi):
    mirror = mirrored(phi)
    return lambda points: np.asarray(polar(mirror, np.zeros_like(points), points))

    ####################################################################
def borderline_measure(phi, box=((-2.0, 2.0), (-2.0, 2.0))):
    """The density 1 / mirrored_polar(x), anchored at the origin"""
    ####################################################################
    gauge = _polar_gauge(phi)
    density = FieldDensity(lambda p: 1.0 / np.asarray(gauge(p)), anchor=(0.0, 0.0), label='borderline')
    return SignedMeasure(box, density=density)

    ####################################################################
def run_borderline_area(phi, k_list=(1, 2, 4, 8, 1024), n_r=400, n_theta=400, ic_radii=None,
                        n_vertices=256, threads=1):
    """a_k = int sqrt(1 + k^2 phi(grad u_1)^2) - k int u_1 / mirrored_polar on its unit ball"""
    ####################################################################
    if phi.dim != 2:
        raise ParameterError("The borderline example needs a planar anisotropy")
    gauge = _polar_gauge(phi)
    domain = QuadratureDomain2D(gauge=gauge, n_r=n_r, n_theta=n_theta)
    dirs = domain.directions
    level = np.asarray(gauge(dirs))
    # grad of the gauge is 0-homogeneous, so one central difference per ray suffices
    grad = np.stack([(np.asarray(gauge(dirs + FD_STEP * e)) - np.asarray(gauge(dirs - FD_STEP * e)))
                     / (2.0 * FD_STEP) for e in np.eye(2)], axis=-1)
    slope = np.asarray(phi(np.zeros_like(grad), -grad))

    def radial(points):
        return np.sqrt(np.sum(points * points, axis=-1))

    inverse_mass = domain.integrate(
        lambda p, j: (1.0 - radial(p) * level[j]) / (radial(p) * level[j]))
    extremal = domain.integrate(lambda p, j: np.broadcast_to(slope[j], p.shape[:-1]))
    area = domain.area()
    perimeter = domain.boundary_polygon().perimeter(phi)
    oracle_area = _closed_area(phi)

    def row(k):
        value = domain.integrate(lambda p, j: np.broadcast_to(
            np.sqrt(1.0 + (k * slope[j]) ** 2), p.shape[:-1])) - k * inverse_mass
        oracle = None if oracle_area is None else oracle_area * ((1.0 + k * k) ** 0.5 - k)
        gap = None if oracle is None else abs(value - oracle)
        return [int(k), value, oracle, gap]

    rows = threaded_map(row, list(k_list), threads)
    values = [r[1] for r in rows]
    summary = {
        'extremality_residual': abs(inverse_mass - extremal),
        'perimeter': perimeter,
        'two_area': 2.0 * area,
        'perimeter_gap': abs(perimeter - 2.0 * area),
        'strictly_decreasing': all(b < a for a, b in zip(values, values[1:])),
        'all_positive': all(v > 0 for v in values),
    }
    if ic_radii:
        family = SetFamily([PolygonSet(level_set_polygon(gauge, (0.0, 0.0), r, n_vertices), label='polar-ball')
                            for r in ic_radii], 'polar-balls')
        mu = borderline_measure(phi)
        zero = SignedMeasure(mu.domain)
        report = ic_check(mu, zero, phi, 1.0, family, threads=threads)
        summary['ic_worst_ratio'] = report.worst_ratio
        summary['ic_passed'] = report.passed
    params = {'aniso': phi.name, 'aniso_params': phi.params, 'k': list(k_list), 'n_r': n_r,
              'n_theta': n_theta}
    return ExperimentTable('borderline-area', params, ['k', 'a_k', 'oracle', 'gap'], rows, summary)

    ####################################################################
def run_remark_H4(k_list=(1, 2, 3, 4, 5, 6), n_r=16, n_theta=64, threads=1):
    """v_k = k^2 clamp(1 - k(|x| - 1), 0, 1) on the disc of radius 2 against mu_minus = L2 / |x|"""
    ####################################################################
    f = integrand_library('h4fail', {'theta': 0.5}, dim=2)

    def row(k):
        if k < 1 or int(k) != k:
            raise ParameterError("H4 failure runs need integer k >= 1, got %s" % k)
        domain = QuadratureDomain2D(radius=2.0, n_r=n_r, n_theta=n_theta, radial_breaks=[1.0, 1.0 + 1.0 / k])
        radius = lambda p: np.sqrt(np.sum(p * p, axis=-1))
        profile = lambda r: k * k * np.clip(1.0 - k * (r - 1.0), 0.0, 1.0)
        ramp = lambda r: (r > 1.0) & (r < 1.0 + 1.0 / k)

        def gradient(p):
            r = radius(p)
            return np.where(ramp(r), -k ** 3, 0.0)[..., None] * p / r[..., None]

        variation = domain.integrate(lambda p, j: np.sqrt(np.sum(gradient(p) ** 2, axis=-1)))
        pairing = domain.integrate(lambda p, j: profile(radius(p)) / radius(p))
        bulk = domain.integrate(lambda p, j: np.asarray(f(p, gradient(p))))
        functional = bulk - pairing
        closed_variation = pi * (2.0 * k * k + k)
        closed_functional = pi * (1.0 - (k ** 3 + 1.0) ** 0.5) * (2.0 / k + 1.0 / k ** 2)
        return [int(k), variation, pairing, functional, closed_variation, closed_functional,
                abs(variation - closed_variation) / closed_variation,
                abs(pairing - closed_variation) / closed_variation,
                abs(functional - closed_functional) / abs(closed_functional)]

    rows = threaded_map(row, list(k_list), threads)
    functionals = [r[3] for r in rows]
    summary = {
        'max_relative_gap': max(max(r[6:]) for r in rows),
        'strictly_decreasing': all(b < a for a, b in zip(functionals, functionals[1:])),
    }
    header = ['k', 'variation', 'pairing', 'functional', 'closed_variation', 'closed_functional',
              'variation_gap', 'pairing_gap', 'functional_gap']
    return ExperimentTable('remark-h4', {'k': list(k_list), 'n_r': n_r, 'n_theta': n_theta},
                           header, rows, summary)

def _step_value(breaks, values, x):
    """Value of a piecewise constant map at x, None at a break"""
    for point in breaks:
        if abs(point - x) < 1e-15:
            return None
    return values[int(np.searchsorted(breaks, x))]

def _vectorial_functional(breaks, values, theta, nonparametric):
    """Length (or nonparametric area) of an R^2 valued step function on (-1, 1) with
    boundary values (-1, 0), (1, 0) and mu = 2 theta delta_0 acting on the second component"""
    values = np.asarray(values, dtype=float)
    jumps = float(np.sum(np.sqrt(np.sum(np.diff(values, axis=0) ** 2, axis=-1))))
    boundary = float(np.linalg.norm(values[0] - (-1.0, 0.0)) + np.linalg.norm(values[-1] - (1.0, 0.0)))
    second = [v[1] for v in values]
    at_zero = _step_value(breaks, second, 0.0)
    if at_zero is None:
        index = breaks.index(0.0)
        left, right = second[index], second[index + 1]
        if left != right:
            raise ParameterError("The second component must be constant near the atom")
        at_zero = left
    bulk = 2.0 if nonparametric else 0.0
    return bulk + jumps + boundary - 2.0 * theta * at_zero

    ####################################################################
def run_vectorial_counterexample(eps=1.0, theta=0.9, mode='length', k_list=(1, 2, 4, 8), strict=True):
    """Semicontinuity failure for R^2 valued maps: u_k beats its L1 limit u by a fixed margin"""
    ####################################################################
    if not 0 < theta < 1 or eps <= 0:
        raise ParameterError("Need eps > 0 and theta in (0, 1)")
    if mode not in ('length', 'nonparametric'):
        raise ParameterError("mode must be 'length' or 'nonparametric'")
    limit = 2.0 * theta / (1.0 - theta * theta)
    if strict and eps >= limit:
        raise ParameterError("eps = %g is not below 2 theta / (1 - theta^2) = %g; the inequality is no longer strict"
                             % (eps, limit))
    nonparametric = mode == 'nonparametric'
    limit_value = _vectorial_functional([0.0], [(-1.0, 0.0), (1.0, 0.0)], theta, nonparametric)
    rows = []
    for k in k_list:
        breaks = [-1.0 / k, 1.0 / k]
        value = _vectorial_functional(breaks, [(-1.0, 0.0), (0.0, eps), (1.0, 0.0)], theta, nonparametric)
        closed = 2.0 * ((1.0 + eps * eps) ** 0.5 - theta * eps) + (2.0 if nonparametric else 0.0)
        rows.append([int(k), value, limit_value, limit_value - value, closed, abs(value - closed)])
    summary = {'margin': limit_value - rows[-1][1], 'strict_limit': limit, 'violates_lsc': rows[-1][1] < limit_value}
    params = {'eps': eps, 'theta': theta, 'mode': mode, 'k': list(k_list)}
    return ExperimentTable('vectorial', params, ['k', 'F_uk', 'F_u', 'margin', 'closed_form', 'gap'],
                           rows, summary)

def _borderline_from_params(params, threads):
    aniso = params.get('aniso', {'key': 'euclidean'})
    phi = anisotropy_library(aniso.get('key', 'euclidean'), aniso.get('params'), dim=2)
    options = {key: params[key] for key in ('n_r', 'n_theta', 'ic_radii', 'n_vertices') if key in params}
    return run_borderline_area(phi, params.get('k', (1, 2, 4, 8, 1024)), threads=threads, **options)

def _remark_from_params(params, threads):
    options = {key: params[key] for key in ('n_r', 'n_theta') if key in params}
    return run_remark_H4(params.get('k', (1, 2, 3, 4, 5, 6)), threads=threads, **options)

def _vectorial_from_params(params, threads):
    options = {key: params[key] for key in ('eps', 'theta', 'mode', 'strict') if key in params}
    return run_vectorial_counterexample(k_list=params.get('k', (1, 2, 4, 8)), **options)

EXPERIMENTS = {
    'borderline-area': (_borderline_from_params, ('aniso', 'k', 'n_r', 'n_theta', 'ic_radii', 'n_vertices')),
    'remark-h4': (_remark_from_params, ('k', 'n_r', 'n_theta')),
    'vectorial': (_vectorial_from_params, ('eps', 'theta', 'mode', 'k', 'strict')),
}

    ####################################################################
def run_experiment(name, params=None, threads=1):
    """Dispatch a named experiment with JSON parameters"""
    ####################################################################
    if name not in EXPERIMENTS:
        raise UnknownExperimentError(name, EXPERIMENTS.keys())
    runner, allowed = EXPERIMENTS[name]
    params = params or {}
    if not isinstance(params, dict):
        raise ConfigSchemaError('params', "expected a JSON object")
    for key in params:
        if key not in allowed:
            raise ConfigSchemaError("params.%s" % key, "unknown parameter for experiment '%s'" % name)
    return runner(params, threads)
