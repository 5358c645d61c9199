#!/usr/bin/env python3
"""Integrand calculus: recession, perspective, polar and mirrored densities, the
lifted integrand and sampled checks of the linear growth assumptions.

Arrays follow one convention throughout: points and vectors carry their
components on the last axis, every leading axis is broadcast."""
from math import pi
import numpy as np
from scipy.optimize import minimize_scalar
from liblingrow.errors import DegenerateAnisotropyError, H4ViolationError, \
        NonConvergentError, ParameterError, UnknownLibraryKeyError

RECESSION_RUNGS = 41
RECESSION_TOL = 1e-8
FD_STEP = 1e-5
KINK_TOL = 1e-3
DEFAULT_DIRS = {1: 2, 2: 512, 3: 4096}

    ####################################################################
def as_vectors(value, dim):
    """Coerce value into an array of dim-vectors"""
    ####################################################################
    arr = np.asarray(value, dtype=float)
    if dim == 1 and (arr.ndim == 0 or arr.shape[-1] != 1):
        arr = arr[..., None]
    if arr.shape[-1] != dim:
        raise ParameterError("Expected vectors with %d components, got shape %s" % (dim, arr.shape))
    return arr

def broadcast_pair(x, xi, dim):
    """Broadcast points and vectors against each other"""
    x = as_vectors(x, dim)
    xi = as_vectors(xi, dim)
    shape = np.broadcast_shapes(x.shape[:-1], xi.shape[:-1])
    return np.broadcast_to(x, shape + (dim,)), np.broadcast_to(xi, shape + (dim,))

def _out(value):
    value = np.asarray(value, dtype=float)
    return float(value) if value.ndim == 0 else value

def _norm(xi):
    return np.sqrt(np.sum(xi * xi, axis=-1))

    ##############################################################################
class Anisotropy():
    """ Positively 1-homogeneous, convex density phi(x, xi) with a|xi| <= phi <= b|xi| """
    ##############################################################################

        ####################################################################
    def __init__(self, func, dim, lower, upper, name='anisotropy', x_dependent=False,
                 polar_exact=None, params=None):
        ####################################################################
        if lower <= 0:
            raise ParameterError("Anisotropy '%s' needs a positive lower bound" % name)
        self.func = func
        self.dim = dim
        self.lower = float(lower)
        self.upper = float(upper)
        self.name = name
        self.x_dependent = x_dependent
        self.polar_exact = polar_exact
        self.params = params or {}

    def __call__(self, x, xi):
        x, xi = broadcast_pair(x, xi, self.dim)
        return _out(self.func(x, xi))

    def polar(self, x, xi_star, n_dirs=None):
        return polar(self, x, xi_star, n_dirs)

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

    def __str__(self):
        return "%s%s" % (self.name, self.params.get('label', ''))

    ##############################################################################
class Integrand():
    """ Convex linear growth density f(x, xi) with growth constants alpha, beta and M """
    ##############################################################################

        ####################################################################
    def __init__(self, func, dim, alpha, beta, M=None, analytic_recession=None,
                 analytic_gradient=None, homogeneous=False, x_dependent=False,
                 name='integrand', params=None, domain=None):
        ####################################################################
        self.func = func
        self.dim = dim
        self.alpha = float(alpha)
        self.beta = float(beta)
        self.M = M
        self.analytic_recession = analytic_recession
        self.analytic_gradient = analytic_gradient
        self.homogeneous = homogeneous
        self.x_dependent = x_dependent
        self.name = name
        self.params = params or {}
        self.domain = domain if domain is not None else [(-1.0, 1.0)] * dim

    def __call__(self, x, xi):
        x, xi = broadcast_pair(x, xi, self.dim)
        return _out(self.func(x, xi))

    def at_zero(self, x):
        """f(x, 0)"""
        x = as_vectors(x, self.dim)
        return self(x, np.zeros_like(x))

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

    def __str__(self):
        return self.name

    ####################################################################
def recession(f, x, xi, tol=RECESSION_TOL):
    """f_infinity(x, xi) as the limit of the monotone quotient (f(x,s xi)-f(x,0))/s"""
    ####################################################################
    x, xi = broadcast_pair(x, xi, f.dim)
    if f.analytic_recession is not None:
        return _out(f.analytic_recession(x, xi))
    base = np.asarray(f(x, np.zeros_like(xi)))
    scales = 2.0 ** np.arange(RECESSION_RUNGS)
    quotients = np.stack([(np.asarray(f(x, scale * xi)) - base) / scale for scale in scales])
    value = quotients[-1]
    spread = np.abs(quotients[-1] - quotients[-2])
    worst = np.max(spread / (1.0 + np.abs(value)))
    if not np.all(np.isfinite(value)) or worst >= tol:
        raise NonConvergentError("Recession of '%s'" % f.name, float(worst), tol)
    return _out(value)

    ####################################################################
def perspective(f, x, t, xi):
    """t f(x, xi/t) for t > 0 and f_infinity(x, xi) at t = 0"""
    ####################################################################
    x, xi = broadcast_pair(x, xi, f.dim)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ParameterError("Perspective needs t >= 0")
    shape = np.broadcast_shapes(t.shape, xi.shape[:-1])
    t = np.broadcast_to(t, shape)
    xi = np.broadcast_to(xi, shape + (f.dim,))
    x = np.broadcast_to(x, shape + (f.dim,))
    positive = t > 0
    safe = np.where(positive, t, 1.0)
    value = safe * np.asarray(f(x, xi / safe[..., None]))
    if not np.all(positive):
        value = np.where(positive, value, np.asarray(recession(f, x, xi)))
    return _out(value)

    ####################################################################
def recession_anisotropy(f):
    """f_infinity viewed as an Anisotropy"""
    ####################################################################
    lower = f.alpha
    upper = f.beta
    return Anisotropy(lambda x, xi: np.asarray(recession(f, x, xi)), f.dim, lower, upper,
                      name="%s_inf" % f.name, x_dependent=f.x_dependent)

    ####################################################################
def integrand_of_anisotropy(phi, domain=None):
    """The 1-homogeneous integrand f = phi"""
    ####################################################################
    return Integrand(phi.func, phi.dim, phi.lower, phi.upper, M=0.0,
                     analytic_recession=phi.func, homogeneous=True,
                     x_dependent=phi.x_dependent, name=phi.name, params={'aniso': phi},
                     domain=domain)

    ####################################################################
def mirrored(phi):
    """The mirrored density phi(x, -xi)"""
    ####################################################################
    polar_exact = None
    if phi.polar_exact is not None:
        polar_exact = lambda x, xs: phi.polar_exact(x, -xs)
    params = dict(phi.params)
    params['mirror_of'] = phi
    return Anisotropy(lambda x, xi: phi.func(x, -xi), phi.dim, phi.lower, phi.upper,
                      name="%s~" % phi.name, x_dependent=phi.x_dependent,
                      polar_exact=polar_exact, params=params)

    ####################################################################
def unit_directions(dim, n_dirs):
    """Uniform direction sample: +-1, an angle grid or a Fibonacci sphere"""
    ####################################################################
    if dim == 1:
        return np.array([[1.0], [-1.0]])
    if dim == 2:
        angles = 2.0 * pi * np.arange(n_dirs) / n_dirs
        return np.stack([np.cos(angles), np.sin(angles)], axis=-1)
    if dim == 3:
        index = np.arange(n_dirs) + 0.5
        height = 1.0 - 2.0 * index / n_dirs
        radius = np.sqrt(1.0 - height ** 2)
        azimuth = pi * (1.0 + 5.0 ** 0.5) * index
        return np.stack([radius * np.cos(azimuth), radius * np.sin(azimuth), height], axis=-1)
    raise ParameterError("Polar sampling is implemented for dimensions 1 to 3, got %d" % dim)

def _polar_ratio(phi, x, xi_star, direction):
    value = np.asarray(phi.func(x[None, :], direction[None, :]))[0]
    if value <= 0:
        raise DegenerateAnisotropyError(direction.tolist())
    return float(np.dot(xi_star, direction)) / value

def _refine_circle(phi, x, xi_star, angle, width):
    objective = lambda t: -_polar_ratio(phi, x, xi_star, np.array([np.cos(t), np.sin(t)]))
    try:
        found = minimize_scalar(objective, bracket=(angle - width, angle, angle + width),
                                method='golden', tol=1e-10)
    except ValueError:
        return -objective(angle)
    return max(-found.fun, -objective(angle))

def _sphere(theta, psi):
    return np.array([np.sin(theta) * np.cos(psi), np.sin(theta) * np.sin(psi), np.cos(theta)])

def _refine_sphere(phi, x, xi_star, direction, width):
    theta = np.arccos(np.clip(direction[2], -1.0, 1.0))
    psi = np.arctan2(direction[1], direction[0])
    best = _polar_ratio(phi, x, xi_star, direction)
    for _ in range(3):
        for axis in (0, 1):
            if axis == 0:
                objective = lambda t, psi=psi: -_polar_ratio(phi, x, xi_star, _sphere(t, psi))
                centre = theta
            else:
                objective = lambda t, theta=theta: -_polar_ratio(phi, x, xi_star, _sphere(theta, t))
                centre = psi
            try:
                found = minimize_scalar(objective, bracket=(centre - width, centre, centre + width),
                                        method='golden', tol=1e-10)
            except ValueError:
                continue
            if -found.fun > best:
                best = -found.fun
                if axis == 0:
                    theta = found.x
                else:
                    psi = found.x
        width /= 2.0
    return best

    ####################################################################
def polar(phi, x, xi_star, n_dirs=None):
    """phi_polar(x, xi*) = sup of xi*.xi / phi(x, xi) over unit xi.

    Sampled over a uniform direction set and refined by golden-section search
    around the best sample, so the value approaches the supremum from below."""
    ####################################################################
    x, xi_star = broadcast_pair(x, xi_star, phi.dim)
    if phi.polar_exact is not None:
        return _out(phi.polar_exact(x, xi_star))
    n_dirs = n_dirs or DEFAULT_DIRS.get(phi.dim, 512)
    if phi.dim == 2 and n_dirs < 64:
        raise ParameterError("Polar sampling in 2D needs at least 64 directions")
    dirs = unit_directions(phi.dim, n_dirs)
    flat_star = xi_star.reshape(-1, phi.dim)
    flat_x = x.reshape(-1, phi.dim)
    grid_shape = (flat_x.shape[0],) + dirs.shape
    values = np.asarray(phi.func(np.broadcast_to(flat_x[:, None, :], grid_shape),
                                 np.broadcast_to(dirs[None, :, :], grid_shape)))
    if np.any(values <= 0):
        raise DegenerateAnisotropyError(dirs[np.argwhere(values <= 0)[0][1]].tolist())
    ratios = np.einsum('md,nd->mn', flat_star, dirs) / values
    best = np.argmax(ratios, axis=1)
    result = ratios[np.arange(len(best)), best]
    if phi.dim == 2:
        width = 2.0 * pi / n_dirs
        for index, item in enumerate(best):
            if np.any(flat_star[index]):
                angle = 2.0 * pi * item / n_dirs
                result[index] = _refine_circle(phi, flat_x[index], flat_star[index], angle, width)
    elif phi.dim == 3:
        width = (4.0 * pi / n_dirs) ** 0.5
        for index, item in enumerate(best):
            if np.any(flat_star[index]):
                result[index] = _refine_sphere(phi, flat_x[index], flat_star[index], dirs[item], width)
    result = np.maximum(result, 0.0)
    return _out(result.reshape(xi_star.shape[:-1]))

    ####################################################################
def gradient(f, x, xi, step=None):
    """Central difference gradient in xi and a mask of differentiability points.

    A point counts as non-differentiable when forward and backward slopes of
    any component differ by more than the kink tolerance."""
    ####################################################################
    x, xi = broadcast_pair(x, xi, f.dim)
    if step is None:
        step = FD_STEP * (1.0 + _norm(xi))
    step = np.broadcast_to(np.asarray(step, dtype=float), xi.shape[:-1])
    centre = np.asarray(f(x, xi))
    grad = np.zeros(xi.shape)
    smooth = np.ones(xi.shape[:-1], dtype=bool)
    for axis in range(f.dim):
        shift = np.zeros(xi.shape)
        shift[..., axis] = step
        forward = (np.asarray(f(x, xi + shift)) - centre) / step
        backward = (centre - np.asarray(f(x, xi - shift))) / step
        grad[..., axis] = 0.5 * (forward + backward)
        smooth &= np.abs(forward - backward) <= KINK_TOL
    return grad, smooth

    ##############################################################################
class AssumptionReport():
    """ Outcome of the sampled growth, convexity, continuity and H4 checks """
    ##############################################################################

    def __init__(self, name, n_samples):
        self.name = name
        self.n_samples = n_samples
        self.h1_pass = True
        self.h1_raw_pass = True
        self.h2_pass = True
        self.h3_pass = True
        self.h4_pass = True
        self.witnesses = {}
        self.h4_supremum = -np.inf
        self.suggested_M = 0.0
        self.lifted_lower = None
        self.rebase = None
        self.lifted_upper = None

    def fail(self, check, x, xi, detail):
        setattr(self, "%s_pass" % check, False)
        if check not in self.witnesses:
            self.witnesses[check] = {'x': np.atleast_1d(x).tolist(),
                                     'xi': np.atleast_1d(xi).tolist(), 'detail': detail}

    def to_dict(self):
        return {
            'integrand': self.name,
            'samples': self.n_samples,
            'h1_pass': self.h1_pass,
            'h1_raw_pass': self.h1_raw_pass,
            'h2_pass': self.h2_pass,
            'h3_pass': self.h3_pass,
            'h4_pass': self.h4_pass,
            'h4_supremum': float(self.h4_supremum),
            'suggested_M': float(self.suggested_M),
            'rebase': self.rebase,
            'witnesses': self.witnesses,
        }

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

def _growth_check(report, check, x, xi, values, size, alpha, beta, slack):
    """alpha |xi| <= values <= beta (|xi| + 1) on every sample"""
    tol = slack * (1.0 + np.abs(values))
    for margin in (values - alpha * size, beta * (size + 1.0) - values):
        bad = np.argwhere(margin < -tol)
        if len(bad):
            index = tuple(bad[0])
            report.fail(check, x[index], xi[index], "growth margin %.3e" % margin[index])

def _sample_points(f, sample_budget, rng):
    """x samples in the domain box and a log-radial xi grid along random rays"""
    radii = np.concatenate([[0.0], 2.0 ** np.arange(-20, 21)])
    if f.dim == 1:
        dirs = np.array([[1.0], [-1.0]])
    else:
        dirs = rng.normal(size=(6, f.dim))
        dirs = np.concatenate([np.eye(f.dim), dirs / _norm(dirs)[:, None]])
    per_x = len(radii) * len(dirs)
    n_x = max(4, -(-sample_budget // per_x))
    box = np.asarray(f.domain, dtype=float)
    xs = box[:, 0] + (box[:, 1] - box[:, 0]) * rng.random((n_x, f.dim))
    # x, direction, radius
    x = np.broadcast_to(xs[:, None, None, :], (n_x, len(dirs), len(radii), f.dim))
    xi = dirs[None, :, None, :] * radii[None, None, :, None]
    xi = np.broadcast_to(xi, x.shape)
    return np.ascontiguousarray(x), np.ascontiguousarray(xi), radii

    ####################################################################
def check_assumptions(f, sample_budget=2000, seed=0, slack=1e-9):
    """Sampled checks of linear growth, convexity, continuity and the H4 bound.

    h1_raw_pass holds the growth bounds of f itself; h1_pass those of f + rebase,
    which differ for integrands such as huber and arctan that vanish to second
    order at xi = 0. Without a finite H4 bound there is no rebase and both agree."""
    ####################################################################
    if sample_budget < 1000:
        raise ParameterError("check_assumptions needs a sample budget of at least 1000")
    rng = np.random.default_rng(seed)
    x, xi, radii = _sample_points(f, sample_budget, rng)
    report = AssumptionReport(f.name, int(np.prod(x.shape[:-1])))
    values = np.asarray(f(x, xi))
    size = _norm(xi)

    _growth_check(report, 'h1_raw', x, xi, values, size, f.alpha, f.beta, slack)
    report.h1_pass = report.h1_raw_pass

    # midpoint convexity on random pairs at a common x
    flat_x = x.reshape(-1, f.dim)
    flat_xi = xi.reshape(-1, f.dim)
    first = rng.integers(0, len(flat_xi), sample_budget)
    second = rng.integers(0, len(flat_xi), sample_budget)
    base = flat_x[first]
    f_one = np.asarray(f(base, flat_xi[first]))
    f_two = np.asarray(f(base, flat_xi[second]))
    f_mid = np.asarray(f(base, 0.5 * (flat_xi[first] + flat_xi[second])))
    excess = f_mid - 0.5 * (f_one + f_two)
    bad = np.argwhere(excess > slack * (1.0 + np.abs(f_one) + np.abs(f_two)))
    if len(bad):
        index = bad[0][0]
        report.fail('h2', base[index], flat_xi[first[index]], "midpoint excess %.3e" % excess[index])

    # continuity under small joint perturbations
    delta = 1e-7
    moved = np.asarray(f(flat_x + delta * rng.standard_normal(flat_x.shape),
                         flat_xi * (1.0 + delta) + delta))
    flat_values = values.reshape(-1)
    jump = np.abs(moved - flat_values)
    bad = np.argwhere(jump > 1e-4 * (1.0 + np.abs(flat_values)))
    if len(bad):
        index = bad[0][0]
        report.fail('h3', flat_x[index], flat_xi[index], "jump %.3e" % jump[index])

    try:
        rec = np.asarray(recession(f, x, xi))
    except NonConvergentError:
        report.h4_pass = False
        report.h4_supremum = np.inf
        report.suggested_M = np.inf
        report.witnesses['h4'] = {'detail': 'recession ladder did not converge'}
        return report
    gap = rec - values
    report.h4_supremum = float(np.max(gap))
    growth = gap[..., -1] - gap[..., -2]
    unbounded = growth > 1e-3 * (1.0 + np.abs(gap[..., -1]))
    if np.any(unbounded):
        index = tuple(np.argwhere(unbounded)[0])
        report.h4_pass = False
        report.h4_supremum = np.inf
        report.suggested_M = np.inf
        report.fail('h4', x[index + (-1,)], xi[index + (-1,)],
                    "f_inf - f still growing at |xi| = %g" % radii[-1])
        return report
    report.suggested_M = max(0.0, report.h4_supremum)

    # sampled H1' constants of the rebased integrand f + c
    rebase = _rebase_constant(f, report, x)
    report.rebase = rebase
    # H1 is judged on f + c, the integrand the lifted density is built from
    report.h1_pass = True
    _growth_check(report, 'h1', x, xi, values + rebase, size, f.alpha, f.beta + rebase, slack)
    normal = np.sqrt(1.0 + size ** 2)
    ratio = (values + rebase) / normal
    rec_units = rec[..., -1] / radii[-1]
    report.lifted_lower = 0.99 * float(min(np.min(ratio), np.min(rec_units)))
    report.lifted_upper = 1.01 * float(max(np.max(ratio), np.max(rec_units)))
    return report

def _rebase_constant(f, report, x):
    # a declared M is the exact supremum of f_inf - f, the sample only approaches it
    shift = max(0.0, report.suggested_M, f.M or 0.0)
    floor = float(np.min(np.asarray(f.at_zero(x.reshape(-1, f.dim))))) + shift
    if floor < f.alpha:
        shift += f.alpha - floor
    return shift

    ##############################################################################
class LiftedIntegrand(Anisotropy):
    """ p(x0, x, xi0, xi) = perspective of the rebased integrand at (x, |xi0|, xi) """
    ##############################################################################

    def __init__(self, f, rebase, lower, upper):
        self.base = rebase_integrand(f, rebase)
        self.original = f
        self.rebase = rebase
        Anisotropy.__init__(self, self._evaluate, f.dim + 1, lower, upper,
                            name="p[%s]" % f.name, x_dependent=f.x_dependent)

    def _evaluate(self, x, xi):
        shape = np.broadcast_shapes(x.shape, xi.shape)
        x = np.broadcast_to(x, shape)
        xi = np.broadcast_to(xi, shape)
        return np.asarray(perspective(self.base, x[..., 1:], np.abs(xi[..., 0]), xi[..., 1:]))

    ####################################################################
def rebase_integrand(f, constant):
    """f + constant, keeping the recession of f"""
    ####################################################################
    if constant == 0:
        return f
    recession_func = f.analytic_recession
    if recession_func is None:
        recession_func = lambda x, xi: np.asarray(recession(f, x, xi))
    gradient_func = f.analytic_gradient
    return Integrand(lambda x, xi: np.asarray(f.func(x, xi)) + constant, f.dim, f.alpha,
                     f.beta + constant, M=0.0, analytic_recession=recession_func,
                     analytic_gradient=gradient_func, x_dependent=f.x_dependent,
                     name="%s+%g" % (f.name, constant), params=f.params, domain=f.domain)

    ####################################################################
def lifted_integrand(f, sample_budget=2000, seed=0):
    """The anisotropy p on R^(N+1) built from f after rebasing by a constant"""
    ####################################################################
    report = check_assumptions(f, sample_budget, seed)
    if not report.h4_pass:
        raise H4ViolationError(f.name)
    return LiftedIntegrand(f, report.rebase, report.lifted_lower, report.lifted_upper)

# Anisotropy library

def _euclidean(dim):
    return Anisotropy(lambda x, xi: _norm(xi), dim, 1.0, 1.0, name='euclidean',
                      polar_exact=lambda x, xs: _norm(xs))

def _l1(dim):
    return Anisotropy(lambda x, xi: np.sum(np.abs(xi), axis=-1), dim, 1.0, dim ** 0.5,
                      name='l1', polar_exact=lambda x, xs: np.max(np.abs(xs), axis=-1))

def _linf(dim):
    return Anisotropy(lambda x, xi: np.max(np.abs(xi), axis=-1), dim, dim ** -0.5, 1.0,
                      name='linf', polar_exact=lambda x, xs: np.sum(np.abs(xs), axis=-1))

def _scaled(dim, scale=2.0):
    if scale <= 0:
        raise ParameterError("scaled anisotropy needs lambda > 0")
    return Anisotropy(lambda x, xi: scale * _norm(xi), dim, scale, scale, name='scaled',
                      polar_exact=lambda x, xs: _norm(xs) / scale, params={'lambda': scale})

def _ellipse(dim, Q=None):
    matrix = np.eye(dim) if Q is None else np.asarray(Q, dtype=float)
    if matrix.shape != (dim, dim) or not np.allclose(matrix, matrix.T):
        raise ParameterError("ellipse anisotropy needs a symmetric %dx%d matrix Q" % (dim, dim))
    eigen = np.linalg.eigvalsh(matrix)
    if eigen[0] <= 0:
        raise ParameterError("ellipse anisotropy needs a positive definite Q")
    inverse = np.linalg.inv(matrix)
    quad = lambda mat, v: np.sqrt(np.maximum(np.einsum('...i,ij,...j->...', v, mat, v), 0.0))
    return Anisotropy(lambda x, xi: quad(matrix, xi), dim, eigen[0] ** 0.5, eigen[-1] ** 0.5,
                      name='ellipse', polar_exact=lambda x, xs: quad(inverse, xs),
                      params={'Q': matrix.tolist()})

def _shifted(dim, b=None):
    shift = np.full(dim, 0.5 / dim ** 0.5) if b is None else np.asarray(b, dtype=float)
    size = float(np.linalg.norm(shift))
    if shift.shape != (dim,) or size >= 1:
        raise ParameterError("shifted anisotropy needs a vector b with |b| < 1")
    return Anisotropy(lambda x, xi: _norm(xi) + xi @ shift, dim, 1.0 - size, 1.0 + size,
                      name='shifted', params={'b': shift.tolist()})

def _asym1d(dim, plus=2.0, minus=1.0):
    if dim != 1 or plus <= 0 or minus <= 0:
        raise ParameterError("asym1d is a one dimensional anisotropy with positive slopes")
    return Anisotropy(lambda x, xi: plus * np.maximum(xi[..., 0], 0) + minus * np.maximum(-xi[..., 0], 0),
                      1, min(plus, minus), max(plus, minus), name='asym1d',
                      params={'plus': plus, 'minus': minus})

ANISOTROPIES = {
    'euclidean': _euclidean,
    'l1': _l1,
    'linf': _linf,
    'scaled': lambda dim, **kw: _scaled(dim, kw.get('lambda', 2.0)),
    'ellipse': _ellipse,
    'shifted': _shifted,
    'asym1d': _asym1d,
}

    ####################################################################
def anisotropy_library(key, params=None, dim=2):
    """Anisotropy addressed by library key and JSON parameters"""
    ####################################################################
    if key not in ANISOTROPIES:
        raise UnknownLibraryKeyError('anisotropy', key, ANISOTROPIES.keys())
    try:
        return ANISOTROPIES[key](dim, **(params or {}))
    except TypeError as err:
        raise ParameterError("Bad parameters for anisotropy '%s': %s" % (key, err))

# Integrand library

def _radial(func, rec_slope, dim, alpha, beta, M, name, params, derivative=None):
    """Integrand g(|xi|) with recession rec_slope |xi|"""
    gradient_func = None
    if derivative is not None:
        def gradient_func(x, xi):
            size = _norm(xi)
            safe = np.where(size > 0, size, 1.0)
            return (derivative(size) / safe)[..., None] * xi
    return Integrand(lambda x, xi: func(_norm(xi)), dim, alpha, beta, M=M,
                     analytic_recession=lambda x, xi: rec_slope * _norm(xi),
                     analytic_gradient=gradient_func, name=name, params=params)

def _area(dim):
    return _radial(lambda s: np.sqrt(1.0 + s * s), 1.0, dim, 1.0, 1.0, 0.0, 'area', {},
                   derivative=lambda s: s / np.sqrt(1.0 + s * s))

def _tv(dim, aniso=None):
    phi = _euclidean(dim) if aniso is None else anisotropy_library(
        aniso.get('key', 'euclidean'), aniso.get('params'), dim)
    f = integrand_of_anisotropy(phi)
    f.name = 'tv' if aniso is None else 'tv[%s]' % phi.name
    return f

def _finsler_quadratic(dim, G=None, nu0=1.0):
    phi = _ellipse(dim, G)
    return Integrand(lambda x, xi: np.sqrt(nu0 ** 2 + np.asarray(phi.func(x, xi)) ** 2), dim,
                     phi.lower, max(nu0, phi.upper), M=0.0, analytic_recession=phi.func,
                     name='finsler-quadratic', params={'G': phi.params['Q'], 'nu0': nu0})

def _finsler_area(dim, aniso=None, nu0=1.0):
    aniso = aniso or {'key': 'l1'}
    phi = anisotropy_library(aniso.get('key'), aniso.get('params'), dim)
    return Integrand(lambda x, xi: np.sqrt(nu0 ** 2 + np.asarray(phi.func(x, xi)) ** 2), dim,
                     phi.lower, max(nu0, phi.upper), M=0.0, analytic_recession=phi.func,
                     name='finsler-area', params={'aniso': aniso, 'nu0': nu0})

def _p_mean(dim, p=2.0):
    if p < 1:
        raise ParameterError("p-mean needs p >= 1")
    return _radial(lambda s: (1.0 + s ** p) ** (1.0 / p), 1.0, dim, 1.0, 1.0, 0.0, 'p-mean',
                   {'p': p}, derivative=lambda s: s ** (p - 1) * (1.0 + s ** p) ** (1.0 / p - 1.0))

def _huber(dim, p=2.0):
    # alpha bounds f + rebase from below, f itself only for |xi| >= 1
    if p <= 1:
        raise ParameterError("huber needs p > 1")
    offset = (p - 1.0) / p
    func = lambda s: np.where(s <= 1.0, np.minimum(s, 1.0) ** p / p, s - offset)
    derivative = lambda s: np.where(s <= 1.0, np.minimum(s, 1.0) ** (p - 1), 1.0)
    return _radial(func, 1.0, dim, 1.0 / p, 1.0, offset, 'huber', {'p': p}, derivative=derivative)

def _arctan(dim):
    # alpha bounds f + rebase from below, f itself only for |xi| >= 1
    return _radial(lambda s: s * np.arctan(s), pi / 2.0, dim, pi / 4.0, pi / 2.0, 1.0, 'arctan', {},
                   derivative=lambda s: np.arctan(s) + s / (1.0 + s * s))

def _h4fail(dim, theta=0.5):
    if not 0 < theta < 1:
        raise ParameterError("h4fail needs theta in (0, 1)")
    return _radial(lambda s: 1.0 + s - (1.0 + s) ** theta, 1.0, dim, 1.0 - theta, 1.0, None,
                   'h4fail', {'theta': theta},
                   derivative=lambda s: 1.0 - theta * (1.0 + s) ** (theta - 1.0))

def _h4fail_plus(dim, theta=0.5):
    if not 0 < theta < 1:
        raise ParameterError("h4fail-plus needs theta in (0, 1)")
    alpha = 2.0 ** (-1.0 / (1.0 - theta))
    return _radial(lambda s: np.maximum(s - s ** theta, 0.0) + 1.0, 1.0, dim, alpha, 1.0, None,
                   'h4fail-plus', {'theta': theta},
                   derivative=lambda s: np.where(s > 1.0, 1.0 - theta * np.maximum(s, 1.0) ** (theta - 1.0), 0.0))

def _weighted_area(dim, amp=1.0):
    if amp < 0:
        raise ParameterError("weighted-area needs amp >= 0")
    weight = lambda x: 1.0 + amp * np.sin(x[..., 0]) ** 2
    return Integrand(lambda x, xi: np.sqrt(1.0 + weight(x) * np.sum(xi * xi, axis=-1)), dim,
                     1.0, (1.0 + amp) ** 0.5, M=0.0,
                     analytic_recession=lambda x, xi: np.sqrt(weight(x)) * _norm(xi),
                     analytic_gradient=lambda x, xi: (weight(x) / np.sqrt(
                         1.0 + weight(x) * np.sum(xi * xi, axis=-1)))[..., None] * xi,
                     x_dependent=True, name='weighted-area', params={'amp': amp})

INTEGRANDS = {
    'area': _area,
    'tv': _tv,
    'finsler-quadratic': _finsler_quadratic,
    'finsler-area': _finsler_area,
    'p-mean': _p_mean,
    'huber': _huber,
    'arctan': _arctan,
    'h4fail': _h4fail,
    'h4fail-plus': _h4fail_plus,
    'weighted-area': _weighted_area,
}

    ####################################################################
def integrand_library(key, params=None, dim=1, domain=None):
    """Integrand addressed by library key and JSON parameters"""
    ####################################################################
    if key not in INTEGRANDS:
        raise UnknownLibraryKeyError('integrand', key, INTEGRANDS.keys())
    try:
        f = INTEGRANDS[key](dim, **(params or {}))
    except TypeError as err:
        raise ParameterError("Bad parameters for integrand '%s': %s" % (key, err))
    if domain is not None:
        f.domain = domain
    return f
