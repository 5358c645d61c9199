#!/usr/bin/env python3
"""Minimization of the discretized one dimensional functional over continuous
piecewise affine profiles, with coercivity probing.

Kinks of f(x, .) and of the boundary recession terms are smoothed by an
infimal convolution with |.|^2 / (2 eps); the smoothing parameter follows a
decreasing schedule and every stage warm starts from the previous one."""
import numpy as np
from scipy.optimize import minimize_scalar
from liblingrow.bv1d import BVFunction1D, boundary_function
from liblingrow.errors import ParameterError, SolverConfigError
from liblingrow.integrand import mirrored, recession, recession_anisotropy
from liblingrow.measure import ic_check
from liblingrow.testsets import interval_family
from liblingrow.util import info, warn

EPS_FLOOR = 1e-8
STEP_RULES = ('backtracking', 'fixed', 'polyak')
BISECTION_STEPS = 64
ARMIJO = 1e-4
STALL_LIMIT = 5
MAX_STEP = 1e8

    ##############################################################################
class SolveConfig():
    """ Discretization and descent settings """
    ##############################################################################

    FIELDS = ('n_nodes', 'smoothing_eps', 'max_iters', 'step_rule', 'value_tol', 'grad_tol',
              'divergence_threshold', 'seed')

        ####################################################################
    def __init__(self, n_nodes=33, smoothing_eps=(1e-2, 1e-4, 1e-6, 1e-8), max_iters=4000,
                 step_rule='backtracking', value_tol=1e-13, grad_tol=1e-8,
                 divergence_threshold=1e3, seed=0):
        ####################################################################
        schedule = [float(eps) for eps in smoothing_eps]
        if int(n_nodes) < 3:
            raise SolverConfigError("n_nodes must be at least 3, got %s" % n_nodes)
        if not schedule:
            raise SolverConfigError("smoothing_eps must hold at least one value")
        if any(later >= earlier for earlier, later in zip(schedule, schedule[1:])):
            raise SolverConfigError("smoothing_eps must decrease strictly")
        if schedule[-1] < EPS_FLOOR:
            raise SolverConfigError("smoothing_eps must stay at or above %g" % EPS_FLOOR)
        if step_rule not in STEP_RULES:
            raise SolverConfigError("step_rule must be one of %s" % ", ".join(STEP_RULES))
        if int(max_iters) < 1 or divergence_threshold <= 0:
            raise SolverConfigError("max_iters and divergence_threshold must be positive")
        self.n_nodes = int(n_nodes)
        self.smoothing_eps = tuple(schedule)
        self.max_iters = int(max_iters)
        self.step_rule = step_rule
        self.value_tol = float(value_tol)
        self.grad_tol = float(grad_tol)
        self.divergence_threshold = float(divergence_threshold)
        self.seed = int(seed)

    @classmethod
    def from_dict(cls, document):
        unknown = set(document or {}) - set(cls.FIELDS)
        if unknown:
            raise SolverConfigError("Unknown solver settings: %s" % ", ".join(sorted(unknown)))
        return cls(**(document or {}))

    def to_dict(self):
        return {field: getattr(self, field) for field in self.FIELDS}

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

    ##############################################################################
class MinimizeResult():
    """ Profile, value and history of a solve """
    ##############################################################################

    def __init__(self, w, value, status, trace, certificate=None, displacements=None):
        self.w = w
        self.value = value
        self.status = status
        self.trace = trace
        self.certificate = certificate
        self.displacements = displacements or []
        self.iterations = len(trace)

    def to_dict(self):
        return {
            'w': self.w.to_json(),
            'value': self.value,
            'status': self.status,
            'iterations': self.iterations,
            'certificate': None if self.certificate is None else self.certificate.to_dict(),
            'displacements': self.displacements,
            'trace': self.trace,
        }

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

def _boundary_prox(z, eps, plus, minus):
    """Moreau envelope of plus z_+ + minus z_-: value and derivative"""
    y = np.where(z > eps * plus, z - eps * plus, np.where(z < -eps * minus, z + eps * minus, 0.0))
    value = plus * np.maximum(y, 0.0) + minus * np.maximum(-y, 0.0) + (z - y) ** 2 / (2.0 * eps)
    return value, (z - y) / eps

    ##############################################################################
class DiscreteProblem():
    """ Nodal discretization of M_f on a uniform grid with atoms snapped to nodes """
    ##############################################################################

        ####################################################################
    def __init__(self, f, u0, pair, n_nodes, verbosity=0):
        ####################################################################
        low, high = (float(v) for v in pair.domain)
        self.f = f
        self.x = np.linspace(low, high, n_nodes)
        self.h = (high - low) / (n_nodes - 1)
        self.mids = 0.5 * (self.x[1:] + self.x[:-1])[:, None]
        boundary = boundary_function(u0, (low, high))
        self.left0, self.right0 = boundary.trace_left(), boundary.trace_right()
        self.start = np.asarray(boundary(self.x), dtype=float)
        self.left_slopes = (float(recession(f, [low], [1.0])), float(recession(f, [low], [-1.0])))
        self.right_slopes = (float(recession(f, [high], [1.0])), float(recession(f, [high], [-1.0])))
        if f.homogeneous:
            self.rec_plus = np.asarray(recession(f, self.mids, np.ones_like(self.mids)))
            self.rec_minus = np.asarray(recession(f, self.mids, -np.ones_like(self.mids)))
        self.linear = np.zeros(n_nodes)
        self.displacements = []
        self._assemble_measure(pair, verbosity)

    def _assemble_measure(self, pair, verbosity):
        for sign, part in ((1.0, pair.plus), (-1.0, pair.minus)):
            for location, mass in part.atoms:
                index = int(np.clip(np.rint((location[0] - self.x[0]) / self.h), 1, len(self.x) - 2))
                shift = abs(self.x[index] - location[0])
                if shift > 1e-12:
                    warn("atom at %g snapped to node %g" % (location[0], self.x[index]), verbosity)
                    self.displacements.append({'atom': float(location[0]), 'node': float(self.x[index]),
                                               'displacement': float(shift)})
                self.linear[index] += sign * mass
            if part.density is None:
                continue
            for i in range(len(self.x) - 1):
                lo, hi = self.x[i], self.x[i + 1]
                self.linear[i] += sign * part.density.weighted_integral(lambda t: (hi - t) / self.h, lo, hi)
                self.linear[i + 1] += sign * part.density.weighted_integral(lambda t: (t - lo) / self.h, lo, hi)

    def _cells(self, slopes):
        return np.asarray(self.f(self.mids, slopes[:, None]))

    def objective(self, w):
        """Unsmoothed discrete value of M_f at the nodal profile w"""
        w = np.asarray(w, dtype=float)
        bulk = self.h * float(np.sum(self._cells(np.diff(w) / self.h)))
        left = w[0] - self.left0
        right = -(w[-1] - self.right0)
        edges = (self.left_slopes[0] * max(left, 0.0) + self.left_slopes[1] * max(-left, 0.0)
                 + self.right_slopes[0] * max(right, 0.0) + self.right_slopes[1] * max(-right, 0.0))
        return bulk + edges + float(self.linear @ w)

    def _derivative(self, slopes):
        """A subgradient of f(x_mid, .) at every cell slope"""
        f = self.f
        if f.analytic_gradient is not None:
            return np.asarray(f.analytic_gradient(self.mids, slopes[:, None]))[..., 0]
        if f.homogeneous:
            return np.where(slopes > 0, self.rec_plus, np.where(slopes < 0, -self.rec_minus, 0.0))
        step = 1e-7 * (1.0 + np.abs(slopes))
        return (self._cells(slopes + step) - self._cells(slopes - step)) / (2.0 * step)

    def _prox_cells(self, d, eps):
        """argmin_y h f(x, y/h) + (y - d)^2 / (2 eps) by bisection on the monotone derivative"""
        bound = eps * (1.01 * self.f.beta + 1e-12)
        lo, hi = d - bound, d + bound
        slope = lambda y: self._derivative(y / self.h) + (y - d) / eps
        for _ in range(60):
            low_bad = slope(lo) > 0
            high_bad = slope(hi) < 0
            if not (np.any(low_bad) or np.any(high_bad)):
                break
            lo = np.where(low_bad, d - 2.0 * (d - lo), lo)
            hi = np.where(high_bad, d + 2.0 * (hi - d), hi)
        for _ in range(BISECTION_STEPS):
            mid = 0.5 * (lo + hi)
            positive = slope(mid) > 0
            hi = np.where(positive, mid, hi)
            lo = np.where(positive, lo, mid)
        y = 0.5 * (lo + hi)
        if self.f.analytic_gradient is None and not self.f.homogeneous:
            # finite differences blur a kink at zero slope
            near = np.abs(y) < 1e-6 * (1.0 + np.abs(d))
            if np.any(near):
                at_zero = self.h * self._cells(np.zeros_like(y)) + d * d / (2.0 * eps)
                at_y = self.h * self._cells(y / self.h) + (y - d) ** 2 / (2.0 * eps)
                y = np.where(near & (at_zero <= at_y), 0.0, y)
        return y

    def smoothed(self, w, eps):
        """Smoothed value and gradient"""
        d = np.diff(w)
        y = self._prox_cells(d, eps)
        cells = self.h * self._cells(y / self.h) + (d - y) ** 2 / (2.0 * eps)
        cell_grad = (d - y) / eps
        left_value, left_grad = _boundary_prox(w[0] - self.left0, eps, *self.left_slopes)
        right_value, right_grad = _boundary_prox(-(w[-1] - self.right0), eps, *self.right_slopes)
        value = float(np.sum(cells)) + float(left_value) + float(right_value) + float(self.linear @ w)
        grad = self.linear.copy()
        grad[:-1] -= cell_grad
        grad[1:] += cell_grad
        grad[0] += left_grad
        grad[-1] -= right_grad
        return value, grad

    def bv_norm(self, w):
        weights = np.full(len(w), self.h)
        weights[0] = weights[-1] = 0.5 * self.h
        return float(weights @ np.abs(w) + np.sum(np.abs(np.diff(w))))

    def profile(self, w):
        return BVFunction1D.piecewise_linear((self.x[0], self.x[-1]), self.x, w)

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

    ####################################################################
def discrete_objective(f, u0, pair, w):
    """Discrete value of M_f at nodal values w on a uniform grid"""
    ####################################################################
    return DiscreteProblem(f, u0, pair, len(w), verbosity=-1).objective(w)

def _first_step(rule, eps, value, best, grad_sq, iteration):
    if rule == 'fixed':
        return eps / 5.0
    if rule == 'polyak':
        offset = 1e-3 * (1.0 + abs(best)) / (1.0 + iteration)
        return max((value - best + offset) / max(grad_sq, 1e-300), 1e-16)
    return eps

    ####################################################################
def minimize(f, u0, pair, cfg=None, verbosity=0):
    """Descent on the smoothed surrogates over the eps schedule.

    Backtracking starts from Barzilai-Borwein trial steps, polyak from the
    running best value minus a vanishing offset, fixed uses eps / 5, the
    inverse Lipschitz constant of the smoothed objective. Every accepted step
    decreases the smoothed value; a step that fails to decrease ends the stage."""
    ####################################################################
    cfg = cfg or SolveConfig()
    problem = DiscreteProblem(f, u0, pair, cfg.n_nodes, verbosity)
    w = problem.start.copy()
    trace = []
    status = 'max_iters'
    used = 0
    for stage, eps in enumerate(cfg.smoothing_eps):
        last = stage == len(cfg.smoothing_eps) - 1
        tolerance = cfg.grad_tol if last else max(cfg.grad_tol, eps)
        value, grad = problem.smoothed(w, eps)
        best = value
        step = _first_step(cfg.step_rule, eps, value, best, float(grad @ grad), 0)
        stalls = 0
        stage_done = False
        info("stage %d eps=%g start value %.12g" % (stage, eps, value), verbosity)
        while used < cfg.max_iters:
            grad_sq = float(grad @ grad)
            if np.max(np.abs(grad)) <= tolerance:
                stage_done = True
                break
            if cfg.step_rule == 'polyak':
                step = _first_step('polyak', eps, value, best, grad_sq, used)
            accepted = False
            for _ in range(60):
                candidate = w - step * grad
                new_value, new_grad = problem.smoothed(candidate, eps)
                if new_value <= value - ARMIJO * step * grad_sq:
                    accepted = True
                    break
                step *= 0.5
            used += 1
            if not accepted:
                stage_done = True
                break
            decrease = value - new_value
            s_vec, y_vec = candidate - w, new_grad - grad
            w, value, grad = candidate, new_value, new_grad
            best = min(best, value)
            trace.append({'stage': stage, 'eps': eps, 'iteration': used, 'value': value})
            if problem.bv_norm(w) > cfg.divergence_threshold and decrease > 0:
                status = 'unbounded_suspected'
                break
            if cfg.step_rule == 'backtracking':
                curvature = float(s_vec @ y_vec)
                step = float(s_vec @ s_vec) / curvature if curvature > 1e-300 else 2.0 * step
                step = min(step, MAX_STEP)
            elif cfg.step_rule == 'fixed':
                step = eps / 5.0
            stalls = stalls + 1 if decrease <= cfg.value_tol * (1.0 + abs(value)) else 0
            if stalls >= STALL_LIMIT:
                stage_done = True
                break
        if status == 'unbounded_suspected' or not stage_done:
            break
        if last:
            status = 'converged'
    certificate = None
    if status == 'unbounded_suspected':
        certificate = coercivity_certificate(recession_anisotropy(f), pair)
        if certificate.worst_ratio <= 1.0:
            certificate = None
    result = MinimizeResult(problem.profile(w), problem.objective(w), status, trace, certificate,
                            problem.displacements)
    info("finished with status %s after %d iterations" % (status, used), verbosity)
    return result

    ####################################################################
def convexity_audit(problem, profiles, n_segments=200, seed=0):
    """Worst relative midpoint excess of the unsmoothed objective.

    Each trial picks two of the given nodal profiles and a random sub-segment
    of the line between them, then compares the value at its midpoint with the
    mean of the values at its ends."""
    ####################################################################
    profiles = [np.asarray(p, dtype=float) for p in profiles]
    if len(profiles) < 2:
        raise ParameterError("The convexity audit needs at least two profiles")
    rng = np.random.default_rng(seed)
    worst = -np.inf
    for _ in range(n_segments):
        first, second = rng.choice(len(profiles), 2, replace=False)
        s, t = rng.random(2)
        start = profiles[first] + s * (profiles[second] - profiles[first])
        end = profiles[first] + t * (profiles[second] - profiles[first])
        ends = problem.objective(start), problem.objective(end)
        excess = problem.objective(0.5 * (start + end)) - 0.5 * (ends[0] + ends[1])
        worst = max(worst, excess / (1.0 + abs(ends[0]) + abs(ends[1])))
    return float(worst)

    ####################################################################
def coercivity_certificate(phi, pair, family=None, threads=1):
    """The worse of the two oriented isoperimetric scans, labelled by orientation"""
    ####################################################################
    if family is None:
        family = interval_family(tuple(pair.domain), (pair.plus, pair.minus))
    minus_first = ic_check(pair.minus, pair.plus, phi, 1.0, family, threads=threads)
    minus_first.orientation = 'minus'
    plus_first = ic_check(pair.plus, pair.minus, mirrored(phi), 1.0, family, threads=threads)
    plus_first.orientation = 'plus'
    return minus_first if minus_first.worst_ratio >= plus_first.worst_ratio else plus_first

    ####################################################################
def coercivity_probe(phi, pair, family=None, threads=1):
    """Estimated least isoperimetric constant over both orientations.

    Below 1 predicts a coercive functional, above 1 one that is unbounded below."""
    ####################################################################
    return coercivity_certificate(phi, pair, family, threads).worst_ratio

def _line_move(problem, w, value, direction):
    """Exact line search along direction, kept only when it lowers the value"""
    along = lambda t: problem.objective(w + t * direction)
    try:
        found = minimize_scalar(along, bracket=(-0.1, 0.1), method='brent', tol=1e-12)
    except (ValueError, RuntimeError):
        # flat on both sides of the bracket, so the line minimum is already here
        return w, value
    if found.fun < value:
        return w + found.x * direction, float(found.fun)
    return w, value

def _sweep(problem, w, value, directions):
    for direction in directions:
        w, value = _line_move(problem, w, value, direction)
    return w, value

    ####################################################################
def coordinate_descent(f, u0, pair, n_nodes, sweeps=500, tol=1e-13, start=None):
    """Independent minimizer of the unsmoothed discrete objective.

    Sweeps move one node at a time. When they stall, every contiguous block of
    nodes is shifted as a whole, which leaves the plateaus where a piecewise
    linear objective only decreases if a run of equal values moves together.
    Stops once neither kind of sweep lowers the value. The descent starts from
    the interpolant of u0 unless nodal values are given."""
    ####################################################################
    problem = DiscreteProblem(f, u0, pair, n_nodes, verbosity=-1)
    w = problem.start.copy() if start is None else np.array(start, dtype=float)
    if w.shape != (n_nodes,):
        raise ParameterError("Start profile needs %d nodal values" % n_nodes)
    value = problem.objective(w)
    nodes = np.eye(n_nodes)
    blocks = []
    for first in range(n_nodes):
        for last in range(first + 1, n_nodes):
            block = np.zeros(n_nodes)
            block[first:last + 1] = 1.0
            blocks.append(block)
    for _ in range(sweeps):
        previous = value
        w, value = _sweep(problem, w, value, nodes)
        if previous - value > tol * (1.0 + abs(value)):
            continue
        w, value = _sweep(problem, w, value, blocks)
        if previous - value <= tol * (1.0 + abs(value)):
            break
    return w, value
