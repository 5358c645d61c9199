#!/usr/bin/env python3
"""Piecewise affine BV functions on an interval, the relaxed functional and
its recovery sequences"""
import numpy as np
from liblingrow.errors import NonSingularPairError, ParameterError
from liblingrow.integrand import recession
from liblingrow.measure import pairing
from liblingrow.quadrature import gauss_intervals

JUMP_TOL = 1e-12
GAUSS_ORDER = 5

    ##############################################################################
class BVFunction1D():
    """ Piecewise affine function with jumps at interior nodes.

    Piece i lives on (nodes[i], nodes[i+1]) where the function equals
    values[i] + slopes[i] (x - nodes[i]). Jumps and representatives are
    derived from the pieces. """
    ##############################################################################

        ####################################################################
    def __init__(self, domain, nodes, values, slopes, jumps=None):
        ####################################################################
        nodes = np.array(nodes, dtype=float)
        values = np.array(values, dtype=float)
        slopes = np.array(slopes, dtype=float)
        low, high = float(domain[0]), float(domain[1])
        if not low < high:
            raise ParameterError("Domain bounds must increase")
        if len(nodes) < 2 or not (np.isclose(nodes[0], low) and np.isclose(nodes[-1], high)):
            raise ParameterError("Nodes must start at %g and end at %g" % (low, high))
        if np.any(np.diff(nodes) <= 0):
            raise ParameterError("Nodes must increase strictly")
        if values.shape != (len(nodes) - 1,) or slopes.shape != values.shape:
            raise ParameterError("Need one value and one slope per piece")
        if not (np.all(np.isfinite(values)) and np.all(np.isfinite(slopes))):
            raise ParameterError("Piece data must be finite")
        nodes[0], nodes[-1] = low, high
        for arr in (nodes, values, slopes):
            arr.setflags(write=False)
        self.domain = (low, high)
        self.nodes = nodes
        self.values = values
        self.slopes = slopes
        if jumps is not None:
            self._check_jumps(jumps)

    def _check_jumps(self, jumps):
        derived = {round(x, 12): (left, right) for x, left, right in self.jump_data()}
        for x, left, right in jumps:
            if round(float(x), 12) not in derived:
                raise ParameterError("Declared jump at %g has no matching node" % x)
            have_left, have_right = derived[round(float(x), 12)]
            if abs(have_left - left) > 1e-9 * (1 + abs(left)) or abs(have_right - right) > 1e-9 * (1 + abs(right)):
                raise ParameterError("Declared jump at %g does not match the pieces" % x)

    @classmethod
    def from_json(cls, document):
        """{"domain": [a, b], "nodes": [...], "pieces": [{"value", "slope"}], "jumps": [...]}"""
        try:
            pieces = document['pieces']
            jumps = document.get('jumps')
            if jumps is not None:
                jumps = [(j['x'], j['left'], j['right']) for j in jumps]
            return cls(document['domain'], document['nodes'], [p['value'] for p in pieces],
                       [p.get('slope', 0.0) for p in pieces], jumps)
        except (KeyError, TypeError) as err:
            raise ParameterError("Malformed BV function document: missing %s" % err)

    def to_json(self):
        return {
            'domain': list(self.domain),
            'nodes': self.nodes.tolist(),
            'pieces': [{'value': float(v), 'slope': float(s)} for v, s in zip(self.values, self.slopes)],
            'jumps': [{'x': x, 'left': left, 'right': right} for x, left, right in self.jump_data()],
        }

    @classmethod
    def affine(cls, domain, left, right):
        """The affine function through (a, left) and (b, right)"""
        return cls(domain, domain, [left], [(right - left) / (domain[1] - domain[0])])

    @classmethod
    def constant(cls, domain, value=0.0):
        return cls(domain, domain, [value], [0.0])

    @classmethod
    def piecewise_linear(cls, domain, xs, ys):
        """Continuous interpolant of the points (xs, ys)"""
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        return cls(domain, xs, ys[:-1], np.diff(ys) / np.diff(xs))

    @classmethod
    def indicator(cls, domain, intervals, height=1.0):
        """height times the indicator of a union of intervals compactly inside the domain"""
        low, high = domain
        nodes, values = [low], []
        for left, right in sorted(intervals):
            if not low < left < right < high or (len(nodes) > 1 and left <= nodes[-1]):
                raise ParameterError("Indicator intervals must be disjoint and inside the domain")
            nodes.extend([left, right])
            values.extend([0.0, height])
        nodes.append(high)
        values.append(0.0)
        return cls(domain, nodes, values, np.zeros(len(values)))

    def piece_index(self, x):
        return np.clip(np.searchsorted(self.nodes, x, side='right') - 1, 0, len(self.values) - 1)

    def left_limit(self, i):
        """u(nodes[i]-) for i >= 1"""
        return float(self.values[i - 1] + self.slopes[i - 1] * (self.nodes[i] - self.nodes[i - 1]))

    def right_limit(self, i):
        """u(nodes[i]+) for i < len(nodes) - 1"""
        return float(self.values[i])

    def trace_left(self):
        return self.right_limit(0)

    def trace_right(self):
        return self.left_limit(len(self.nodes) - 1)

    def on_piece(self, i, x):
        return self.values[i] + self.slopes[i] * (x - self.nodes[i])

    def is_jump(self, left, right):
        return abs(right - left) > JUMP_TOL * (1.0 + abs(left) + abs(right))

    def jump_data(self):
        """(x, u(x-), u(x+)) at every interior node with a jump"""
        data = []
        for i in range(1, len(self.nodes) - 1):
            left, right = self.left_limit(i), self.right_limit(i)
            if self.is_jump(left, right):
                data.append((float(self.nodes[i]), left, right))
        return data

    def representatives(self, x):
        """(u^-, u^+, u*) at x; the smaller and larger one sided limits and their mean"""
        x = float(x)
        low, high = self.domain
        if not low <= x <= high:
            raise ParameterError("Point %g lies outside the domain" % x)
        if x == low:
            value = self.trace_left()
            return value, value, value
        if x == high:
            value = self.trace_right()
            return value, value, value
        index = np.searchsorted(self.nodes, x)
        if abs(self.nodes[index] - x) <= JUMP_TOL * (1.0 + abs(x)) and 0 < index < len(self.nodes) - 1:
            left, right = self.left_limit(index), self.right_limit(index)
        else:
            left = right = float(self.on_piece(self.piece_index(x), x))
        return min(left, right), max(left, right), 0.5 * (left + right)

    def __call__(self, x):
        """The precise representative u*, vectorized"""
        x = np.asarray(x, dtype=float)
        value = self.on_piece(self.piece_index(x), x)
        interior = self.nodes[1:-1]
        if len(interior):
            hits = np.isin(x, interior)
            if np.any(hits):
                value = np.where(hits, np.vectorize(lambda p: self.representatives(p)[2])(x), value)
        return float(value) if value.ndim == 0 else value

    def total_variation(self):
        pieces = float(np.sum(np.abs(self.slopes) * np.diff(self.nodes)))
        return pieces + sum(abs(right - left) for _, left, right in self.jump_data())

    def l1_norm(self):
        total = 0.0
        for lo, hi, start, end in self.segments():
            if start * end >= 0:
                total += 0.5 * (abs(start) + abs(end)) * (hi - lo)
            else:
                total += 0.5 * (start * start + end * end) / abs(end - start) * (hi - lo)
        return total

    def segments(self):
        """(lo, hi, value at lo+, value at hi-) for every piece"""
        for i in range(len(self.values)):
            lo, hi = self.nodes[i], self.nodes[i + 1]
            yield float(lo), float(hi), float(self.values[i]), float(self.on_piece(i, hi))

    def __sub__(self, other):
        nodes = np.union1d(self.nodes, other.nodes)
        mids = 0.5 * (nodes[1:] + nodes[:-1])
        mine, theirs = self.piece_index(mids), other.piece_index(mids)
        values = self.on_piece(mine, nodes[:-1]) - other.on_piece(theirs, nodes[:-1])
        return BVFunction1D(self.domain, nodes, values, self.slopes[mine] - other.slopes[theirs])

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

    ####################################################################
def representatives(u, x):
    """(u^-(x), u^+(x), u*(x))"""
    ####################################################################
    return u.representatives(x)

    ####################################################################
def boundary_function(u0, domain):
    """Boundary datum as a BV function; a pair (u0(a), u0(b)) becomes affine"""
    ####################################################################
    if isinstance(u0, BVFunction1D):
        return u0
    if isinstance(u0, (int, float)):
        return BVFunction1D.constant(domain, float(u0))
    left, right = u0
    return BVFunction1D.affine(domain, float(left), float(right))

def _boundary_values(u0, domain):
    if isinstance(u0, BVFunction1D):
        return u0.trace_left(), u0.trace_right()
    if isinstance(u0, (int, float)):
        return float(u0), float(u0)
    return float(u0[0]), float(u0[1])

def _bulk_parts(f, u):
    """Absolutely continuous and jump parts of int f(x, Du)"""
    lows, highs = u.nodes[:-1], u.nodes[1:]
    if f.x_dependent:
        xs, ws = gauss_intervals(lows, highs, GAUSS_ORDER)
        slopes = np.broadcast_to(u.slopes[:, None], xs.shape)
        absolute = float(np.sum(np.asarray(f(xs[..., None], slopes[..., None])) * ws))
    else:
        mids = 0.5 * (lows + highs)
        absolute = float(np.sum(np.asarray(f(mids[:, None], u.slopes[:, None])) * (highs - lows)))
    jump = 0.0
    for x, left, right in u.jump_data():
        jump += float(recession(f, [x], [right - left]))
    return absolute, jump

    ####################################################################
def functional_of_measures(f, u):
    """int_Omega f(x, Du) = int f(x, u') dx + sum over jumps of f_inf(x, u+ - u-)"""
    ####################################################################
    absolute, jump = _bulk_parts(f, u)
    return absolute + jump

    ####################################################################
def boundary_term(f, u, u0):
    """f_inf at the endpoints of the trace mismatch times the inward normal"""
    ####################################################################
    left, right = _boundary_values(u0, u.domain)
    low, high = u.domain
    return float(recession(f, [low], [u.trace_left() - left])
                 + recession(f, [high], [-(u.trace_right() - right)]))

    ####################################################################
def zero_order_term(f, u, v):
    """int f(x, 0) |u - v| dx, exact up to quadrature of f(., 0)"""
    ####################################################################
    diff = u - v
    lows, highs = [], []
    for lo, hi, start, end in diff.segments():
        if start * end < 0:
            cut = lo + (hi - lo) * start / (start - end)
            lows.extend([lo, cut])
            highs.extend([cut, hi])
        else:
            lows.append(lo)
            highs.append(hi)
    xs, ws = gauss_intervals(lows, highs, GAUSS_ORDER)
    return float(np.sum(np.asarray(f.at_zero(xs[..., None])) * np.abs(diff(xs)) * ws))

    ##############################################################################
class FunctionalBreakdown():
    """ Parts of M_f[u] and their total """
    ##############################################################################

    def __init__(self, bulk_ac, bulk_jump, boundary, measure_pairing):
        self.bulk_ac = bulk_ac
        self.bulk_jump = bulk_jump
        self.boundary = boundary
        self.measure_pairing = measure_pairing
        self.total = bulk_ac + bulk_jump + boundary + measure_pairing

    def to_dict(self):
        return {'bulk_ac': self.bulk_ac, 'bulk_jump': self.bulk_jump, 'boundary': self.boundary,
                'measure_pairing': self.measure_pairing, 'total': self.total}

    def __repr__(self):
        return "%s(%r)" % (self.__class__, self.__dict__)

    ####################################################################
def evaluate_MF(f, u0, pair, u):
    """Relaxed functional: bulk + boundary + <<mu_plus, mu_minus; u>>"""
    ####################################################################
    absolute, jump = _bulk_parts(f, u)
    return FunctionalBreakdown(absolute, jump, boundary_term(f, u, u0), pairing(pair, u))

def _min_gap(points):
    points = np.unique(np.asarray(points, dtype=float))
    return float(np.min(np.diff(points)))

def _apply_ramps(u, ramps):
    """Replace u on each ramp (p, q, vp, vq) by the line through (p, vp) and (q, vq)"""
    if not ramps:
        return u
    ends = [p for p, _, _, _ in ramps] + [q for _, q, _, _ in ramps]
    nodes = np.union1d(u.nodes, ends)
    values, slopes = [], []
    for lo, hi in zip(nodes[:-1], nodes[1:]):
        mid = 0.5 * (lo + hi)
        ramp = next((r for r in ramps if r[0] <= mid <= r[1]), None)
        if ramp is None:
            index = int(u.piece_index(mid))
            values.append(float(u.on_piece(index, lo)))
            slopes.append(float(u.slopes[index]))
        else:
            p, q, vp, vq = ramp
            slope = (vq - vp) / (q - p)
            values.append(vp + slope * (lo - p))
            slopes.append(slope)
    return BVFunction1D(u.domain, nodes, values, slopes)

def _value_near(u, x):
    return float(u.on_piece(int(u.piece_index(x)), x))

    ####################################################################
def ramp_approximation(u, width):
    """Continuous approximation replacing every jump by a centred ramp of the given width"""
    ####################################################################
    if width <= 0:
        raise ParameterError("Ramp width must be positive")
    if width >= 0.5 * _min_gap(u.nodes):
        raise ParameterError("Ramp width must stay below half the smallest node gap")
    half = 0.5 * width
    ramps = [(x - half, x + half, _value_near(u, x - half), _value_near(u, x + half))
             for x, _, _ in u.jump_data()]
    return _apply_ramps(u, ramps)

def _atom_at(part, x):
    return any(abs(loc[0] - x) <= 1e-12 for loc, _ in part.atoms)

    ####################################################################
def recovery_sequence(u, u0, pair, k):
    """Continuous u_k with boundary values u0, converging to u strictly with M_f[u_k] -> M_f[u].

    Jumps become ramps of half width 1/(k k0), with k0 = 4 / (smallest gap among
    endpoints, nodes and atoms). At an atom of mu_minus the ramp leaves u_k equal
    to the larger one sided limit at the atom, at an atom of mu_plus the smaller
    one; elsewhere the ramp is centred. Non-matching traces are ramped to u0."""
    ####################################################################
    if not pair.mutually_singular:
        raise NonSingularPairError()
    if k < 1:
        raise ParameterError("Recovery index k must be at least 1")
    low, high = u.domain
    left0, right0 = _boundary_values(u0, u.domain)
    points = list(u.nodes) + pair.atom_locations()
    delta = _min_gap(points) / (4.0 * k)
    ramps = []
    for x, left, right in u.jump_data():
        if _atom_at(pair.minus, x):
            keep_right = right > left
        elif _atom_at(pair.plus, x):
            keep_right = right < left
        else:
            ramps.append((x - delta, x + delta, _value_near(u, x - delta), _value_near(u, x + delta)))
            continue
        if keep_right:
            ramps.append((x - 2.0 * delta, x, _value_near(u, x - 2.0 * delta), right))
        else:
            ramps.append((x, x + 2.0 * delta, left, _value_near(u, x + 2.0 * delta)))
    if u.is_jump(left0, u.trace_left()):
        ramps.append((low, low + 2.0 * delta, left0, _value_near(u, low + 2.0 * delta)))
    if u.is_jump(u.trace_right(), right0):
        ramps.append((high - 2.0 * delta, high, _value_near(u, high - 2.0 * delta), right0))
    return _apply_ramps(u, ramps)

    ####################################################################
def necessity_series(f, u0, pair, intervals, k_values=range(1, 11), sign=1.0):
    """M_f[sign k 1_A] for growing k; linear decrease in k exposes a violated isoperimetric condition"""
    ####################################################################
    domain = tuple(float(v) for v in pair.domain)
    return [(k, evaluate_MF(f, u0, pair, BVFunction1D.indicator(domain, intervals, sign * k)).total)
            for k in k_values]
