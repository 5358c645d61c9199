#!/usr/bin/env python3
"""Extra variable construction w_lift(x0, x) = x0 + w(x) on (0, 1) x Omega and a
rectangular grid evaluator of the lifted anisotropic functional.

The evaluator never calls into the one dimensional functional code; the
identity checks compare two independent computations."""
import numpy as np
from liblingrow.bv1d import boundary_function, boundary_term, evaluate_MF, \
        functional_of_measures, zero_order_term
from liblingrow.errors import IdentityViolationError, ParameterError
from liblingrow.integrand import lifted_integrand
from liblingrow.measure import JordanPair, ic_check, lift_pair, pairing
from liblingrow.quadrature import gauss_intervals
from liblingrow.testsets import IntervalFamily, PolygonSet, SetFamily, UnionSet, interval_family

GAUSS_ORDER = 5

    ##############################################################################
class GridFunction2D():
    """ Function on (0, 1) x (a, b) sampled as cell gradients plus vertical jump edges """
    ##############################################################################

        ####################################################################
    def __init__(self, x0_edges, x_edges, gradients, jumps=None):
        ####################################################################
        self.x0_edges = np.asarray(x0_edges, dtype=float)
        self.x_edges = np.asarray(x_edges, dtype=float)
        self.gradients = np.asarray(gradients, dtype=float)
        shape = (len(self.x0_edges) - 1, len(self.x_edges) - 1)
        if self.gradients.shape != shape + (2,):
            raise ParameterError("Cell gradients must have shape %s" % (shape + (2,),))
        self.jumps = np.zeros((shape[0], shape[1] - 1)) if jumps is None else np.asarray(jumps, dtype=float)

    @classmethod
    def from_samples(cls, x0_edges, x_edges, samples):
        """Continuous function from vertex samples, gradients from edge averaged differences"""
        samples = np.asarray(samples, dtype=float)
        h0 = np.diff(x0_edges)[:, None]
        hx = np.diff(x_edges)[None, :]
        d0 = np.diff(samples, axis=0)
        dx = np.diff(samples, axis=1)
        grad0 = 0.5 * (d0[:, 1:] + d0[:, :-1]) / h0
        gradx = 0.5 * (dx[1:, :] + dx[:-1, :]) / hx
        return cls(x0_edges, x_edges, np.stack([grad0, gradx], axis=-1))

    def x0_mids(self):
        return 0.5 * (self.x0_edges[1:] + self.x0_edges[:-1])

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

    ##############################################################################
class CylinderFunction(GridFunction2D):
    """ w_lift(x0, x) = x0 + w(x) sampled on a (n0 x nx) grid """
    ##############################################################################

    def __init__(self, base, x0_edges, x_edges):
        self.base = base
        starts, ends = [], []
        for lo, hi in zip(x_edges[:-1], x_edges[1:]):
            index = int(base.piece_index(0.5 * (lo + hi)))
            starts.append(float(base.on_piece(index, lo)))
            ends.append(float(base.on_piece(index, hi)))
        self.starts = np.array(starts)
        self.ends = np.array(ends)
        slopes = (self.ends - self.starts) / np.diff(x_edges)
        n0 = len(x0_edges) - 1
        gradients = np.stack(np.broadcast_arrays(np.ones((n0, len(slopes))), slopes[None, :]), axis=-1)
        heights = self.starts[1:] - self.ends[:-1]
        heights = np.where([base.is_jump(l, r) for l, r in zip(self.ends[:-1], self.starts[1:])],
                           heights, 0.0)
        GridFunction2D.__init__(self, x0_edges, x_edges, gradients,
                                np.broadcast_to(heights, (n0, len(heights))))

    def value(self, x0, x):
        return np.asarray(x0, dtype=float) + self.base(x)

    ####################################################################
def lift(w, n0=16, n_x=64, extra_points=()):
    """Sample w_lift on n0 vertical cells and an x grid refining the nodes of w"""
    ####################################################################
    if n0 < 1 or n_x < 1:
        raise ParameterError("Lift grids need at least one cell per direction")
    low, high = w.domain
    x_edges = np.unique(np.concatenate([w.nodes, np.linspace(low, high, n_x + 1),
                                        [p for p in extra_points if low < p < high]]))
    return CylinderFunction(w, np.linspace(0.0, 1.0, n0 + 1), x_edges)

def _crossings(diff):
    points = []
    for lo, hi, start, end in diff.segments():
        if start * end < 0:
            points.append(lo + (hi - lo) * start / (start - end))
    return points

def _cell_points(W):
    xs, ws = gauss_intervals(W.x_edges[:-1], W.x_edges[1:], GAUSS_ORDER)
    return xs, ws

def _jump_edges(W, p):
    """Vertical edges carry p(x0, x, 0, jump) times their length"""
    if not W.jumps.size or not np.any(W.jumps):
        return 0.0
    inner = W.x_edges[1:-1]
    points = np.stack(np.broadcast_arrays(W.x0_mids()[:, None], inner[None, :]), axis=-1)
    vectors = np.stack(np.broadcast_arrays(np.zeros_like(W.jumps), W.jumps), axis=-1)
    return float(np.sum(np.asarray(p(points, vectors)) * np.diff(W.x0_edges)[:, None]))

    ####################################################################
def grid_variation(W, p):
    """|DW|_p: cell gradients plus vertical jump edges"""
    ####################################################################
    xs, ws = _cell_points(W)
    h0 = np.diff(W.x0_edges)
    mids = W.x0_mids()
    points = np.stack(np.broadcast_arrays(mids[:, None, None], xs[None, :, :]), axis=-1)
    grads = np.broadcast_to(W.gradients[:, :, None, :], points.shape)
    bulk = float(np.sum(np.asarray(p(points, grads)) * ws[None, :, :] * h0[:, None, None]))
    return bulk + _jump_edges(W, p)

    ####################################################################
def slice_aggregate(W, p):
    """int_0^1 |D_x W(x0, .)|_{f_inf} dx0 with f_inf = p(., 0, .)"""
    ####################################################################
    xs, ws = _cell_points(W)
    h0 = np.diff(W.x0_edges)
    mids = W.x0_mids()
    points = np.stack(np.broadcast_arrays(mids[:, None, None], xs[None, :, :]), axis=-1)
    zeros = np.zeros(W.gradients.shape[:2])
    horizontal = np.stack([zeros, W.gradients[..., 1]], axis=-1)
    grads = np.broadcast_to(horizontal[:, :, None, :], points.shape)
    total = float(np.sum(np.asarray(p(points, grads)) * ws[None, :, :] * h0[:, None, None]))
    return total + _jump_edges(W, p)

    ##############################################################################
class LiftedBreakdown():
    """ Parts of the lifted functional on the cylinder """
    ##############################################################################

    def __init__(self, bulk, sides, caps, measure_pairing):
        self.bulk = bulk
        self.sides = sides
        self.caps = caps
        self.boundary = sides + caps
        self.measure_pairing = measure_pairing
        self.total = bulk + self.boundary + measure_pairing

    def to_dict(self):
        return {'bulk': self.bulk, 'sides': self.sides, 'caps': self.caps,
                'boundary': self.boundary, 'measure_pairing': self.measure_pairing, 'total': self.total}

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

def _lifted_part_pairing(W, part, side):
    """int W^- or W^+ against one lifted part, exact in x0 by midpoint cells"""
    h0 = np.diff(W.x0_edges)
    mids = W.x0_mids()
    total = 0.0
    for curve in part.curves:
        locations, masses = curve.pseudo_atoms(float(np.min(h0)))
        for (x0, x), mass in zip(locations, masses):
            total += mass * (x0 + W.base.representatives(x)[side])
    if part.density is not None:
        xs, ws = _cell_points(W)
        points = np.stack(np.broadcast_arrays(mids[:, None, None], xs[None, :, :]), axis=-1)
        values = (mids[:, None, None] + W.base(xs)[None, :, :]) * part.density(points)
        total += float(np.sum(values * ws[None, :, :] * h0[:, None, None]))
    return total

    ####################################################################
def phi_hat_parts(p, W, u0, lifted_pair):
    """Bulk, boundary and pairing parts of the lifted functional"""
    ####################################################################
    if not isinstance(W, CylinderFunction):
        raise ParameterError("The lifted functional is evaluated on lifted cylinder functions")
    w = W.base
    low, high = w.domain
    u0 = boundary_function(u0, w.domain)
    bulk = grid_variation(W, p)

    h0 = np.diff(W.x0_edges)
    mids = W.x0_mids()
    sides = 0.0
    for x, mismatch, normal in ((low, w.trace_left() - u0.trace_left(), 1.0),
                                (high, w.trace_right() - u0.trace_right(), -1.0)):
        points = np.stack(np.broadcast_arrays(mids, np.full(len(mids), x)), axis=-1)
        vectors = np.stack([np.zeros(len(mids)), np.full(len(mids), normal * mismatch)], axis=-1)
        sides += float(np.sum(np.asarray(p(points, vectors)) * h0))

    # bottom x0 = 0 with inward normal (1, 0), top x0 = 1 with (-1, 0)
    xs, ws = _cell_points(W)
    gap = w(xs) - u0(xs)
    caps = 0.0
    for height, normal in ((0.0, 1.0), (1.0, -1.0)):
        points = np.stack(np.broadcast_arrays(np.full(xs.shape, height), xs), axis=-1)
        vectors = np.stack([normal * gap, np.zeros(xs.shape)], axis=-1)
        caps += float(np.sum(np.asarray(p(points, vectors)) * ws))

    measure = (_lifted_part_pairing(W, lifted_pair.plus, 0)
               - _lifted_part_pairing(W, lifted_pair.minus, 1))
    return LiftedBreakdown(bulk, sides, caps, measure)

    ####################################################################
def evaluate_Phi_hat(p, W, u0, lifted_pair):
    """|DW|_p + int over the cylinder boundary of p((W - u0_lift) nu) + <<mu_lift; W>>"""
    ####################################################################
    return phi_hat_parts(p, W, u0, lifted_pair).total

def _table_nodes(pair):
    points = []
    for part in (pair.plus, pair.minus):
        if part.density is not None:
            points.extend(part.density.nodes)
    return points

    ##############################################################################
class MasterIdentityReport():
    """ Both sides of the lifted rewriting and its three partial identities """
    ##############################################################################

    def __init__(self, identities, rebase):
        self.identities = identities
        self.rebase = rebase
        master = identities['master']
        self.lhs = master['lhs']
        self.rhs = master['rhs']
        self.gap = master['gap']
        self.relative_gap = master['gap'] / (1.0 + abs(master['lhs']))

    def to_dict(self):
        return {'identities': self.identities, 'rebase': self.rebase, 'lhs': self.lhs,
                'rhs': self.rhs, 'gap': self.gap, 'relative_gap': self.relative_gap}

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

    ####################################################################
def check_master_identity(f, u0, pair, w, tol=1e-6, n0=16, n_x=64, seed=0):
    """Compare M_f[w] with Phi_hat[w_lift] - 2 int f(., 0)|w - u0| - mu(Omega)/2.

    f is rebased by the constant reported with the lifted integrand, so both
    sides use the same integrand. Every partial identity is checked at the
    same tolerance; a failure raises IdentityViolationError."""
    ####################################################################
    p = lifted_integrand(f, seed=seed)
    f_c = p.base
    u0 = boundary_function(u0, w.domain)
    extra = list(u0.nodes) + _crossings(w - u0) + _table_nodes(pair)
    W = lift(w, n0, n_x, extra)
    parts = phi_hat_parts(p, W, u0, lift_pair(pair))
    mass = pair.total_mass()
    zero_order = zero_order_term(f_c, w, u0)
    lhs = evaluate_MF(f_c, u0, pair, w).total
    comparisons = {
        'master': (lhs, parts.total - 2.0 * zero_order - 0.5 * mass),
        'bulk': (functional_of_measures(f_c, w), parts.bulk),
        'boundary': (boundary_term(f_c, w, u0) + 2.0 * zero_order, parts.boundary),
        'pairing': (pairing(pair, w) + 0.5 * mass, parts.measure_pairing),
    }
    identities = {}
    for name, (left, right) in comparisons.items():
        identities[name] = {'lhs': left, 'rhs': right, 'gap': abs(left - right)}
    for name in ('bulk', 'boundary', 'pairing', 'master'):
        item = identities[name]
        if item['gap'] > tol * (1.0 + abs(item['lhs'])):
            raise IdentityViolationError(name, item['gap'], tol)
    return MasterIdentityReport(identities, p.rebase)

    ####################################################################
def prism_family(base_family, n_levels=4):
    """Prisms (t1, t2) x A over the sets A of a one dimensional family"""
    ####################################################################
    levels = np.arange(n_levels + 1) / float(n_levels)
    if isinstance(base_family, IntervalFamily):
        bases = [base_family.set_of(row) for components in range(1, base_family.max_components + 1)
                 for row in base_family.combinations(components)]
    else:
        bases = list(base_family)
    sets = []
    for base in bases:
        for i, bottom in enumerate(levels[:-1]):
            for top in levels[i + 1:]:
                parts = [PolygonSet([(bottom, lo), (top, lo), (top, hi), (bottom, hi)], label='prism')
                         for lo, hi in base.intervals]
                sets.append(parts[0] if len(parts) == 1 else UnionSet(parts))
    return SetFamily(sets, 'prisms')

    ####################################################################
def lifted_ic_check(mu1, mu2, f, constant, base_family=None, n_levels=4, threads=1, seed=0):
    """Isoperimetric check of the lifted measures with the lifted integrand over prisms"""
    ####################################################################
    p = lifted_integrand(f, seed=seed)
    lifted = lift_pair(JordanPair(mu1, mu2, mutually_singular=True))
    if base_family is None:
        base_family = interval_family(tuple(mu1.domain), (mu1, mu2), n_grid=8, max_components=2)
    family = prism_family(base_family, n_levels)
    return ic_check(lifted.plus, lifted.minus, p, constant, family, threads=threads,
                    resolution=1.0 / n_levels)