#!/usr/bin/env python3
"""Gauss-Legendre rules on intervals, segments and polygons"""
from functools import lru_cache
import numpy as np
from scipy.special import roots_legendre

    ####################################################################
@lru_cache(maxsize=64)
def gauss_unit(order):
    """Nodes and weights of the order-point Gauss-Legendre rule on [0, 1]"""
    ####################################################################
    nodes, weights = roots_legendre(order)
    nodes = 0.5 * (nodes + 1.0)
    weights = 0.5 * weights
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights

    ####################################################################
def gauss_intervals(lows, highs, order):
    """Quadrature points and weights for a batch of intervals, shape (n, order)"""
    ####################################################################
    nodes, weights = gauss_unit(order)
    lows = np.asarray(lows, dtype=float)[..., None]
    highs = np.asarray(highs, dtype=float)[..., None]
    return lows + (highs - lows) * nodes, (highs - lows) * weights

    ####################################################################
def polygon_integral(func, vertices, anchor=None, order=8):
    """Integral of func over a simple polygon by a signed triangle fan.

    The fan apex is the anchor when it lies in the bounding box of the polygon,
    otherwise the vertex centroid. Each triangle is mapped from the unit square
    by a Duffy transform collapsing one side onto the apex, so an integrable
    1/|x - apex| singularity is absorbed by the Jacobian."""
    ####################################################################
    vertices = np.asarray(vertices, dtype=float)
    low, high = vertices.min(axis=0), vertices.max(axis=0)
    if anchor is not None and np.all(anchor >= low) and np.all(anchor <= high):
        apex = np.asarray(anchor, dtype=float)
    else:
        apex = vertices.mean(axis=0)
    start = vertices - apex
    end = np.roll(vertices, -1, axis=0) - apex
    cross = start[:, 0] * end[:, 1] - start[:, 1] * end[:, 0]
    nodes, weights = gauss_unit(order)
    # s runs from the apex to the far edge, t along the edge
    edge = start[:, None, :] * (1.0 - nodes)[None, :, None] + end[:, None, :] * nodes[None, :, None]
    points = apex + nodes[None, None, :, None] * edge[:, :, None, :]
    values = np.asarray(func(points))
    jacobian = cross[:, None, None] * nodes[None, None, :]
    return float(np.einsum('etr,t,r->', values * jacobian, weights, weights))
