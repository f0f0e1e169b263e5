"""Exact integration of squared distance-to-subspace over simplices.

The integrand is the quadratic q(x) = |x|^2 - |B^T x|^2, the squared
distance from x to the span of the orthonormal columns B. A polynomial of
degree 2 integrates exactly over a simplex from its values on vertex pairs:

    integral over S of q = vol(S) / C(m+2, 2) * sum_{l1 <= l2} qb(v_l1, v_l2)

where qb(x, y) = x.y - (B^T x).(B^T y) is the symmetric bilinear form of q.
Both reference values used in the tests (1/6 for the unit corner triangle
against the origin, 1/24 for the triangle {(0,0),(1,1),(0,1)} against the
diagonal line) were derived symbolically and pin this formula down.
"""
from __future__ import annotations

from math import comb

import numpy as np

from .linalg import gram_schmidt, simplex_volume
from .region import RegionPolytope


def squared_distance(point, basis: np.ndarray) -> float:
    """Squared Euclidean distance from a point to span(basis columns).

    An empty basis (m, 0) means the span is the origin, giving |point|^2.
    """
    d = np.asarray(point, dtype=float)
    val = float(d @ d)
    if basis.size:
        c = basis.T @ d
        val -= float(c @ c)
    return max(val, 0.0)


def simplex_integral(vertices, basis: np.ndarray) -> float:
    """Integral of squared_distance(., basis) over the simplex, exactly.

    Zero-volume simplices give 0. The value is clamped at 0; roundoff can
    otherwise produce a tiny negative for simplices lying in the span.
    """
    V = np.asarray(vertices, dtype=float)
    m = V.shape[1]
    vol = simplex_volume(V)
    if vol == 0.0:
        return 0.0
    G = V @ V.T
    if basis.size:
        P = V @ basis
        G = G - P @ P.T
    pair_sum = float(G.sum() + np.trace(G)) / 2.0  # over l1 <= l2: the diagonal counts once
    return max(vol / comb(m + 2, 2) * pair_sum, 0.0)


def region_integral(region: RegionPolytope, element_rays) -> float:
    """Sum of simplex integrals of the squared distance to the element span.

    `element_rays` spans the cone element the region projects onto; an empty
    sequence means the apex and the distance is measured to the origin.
    Summation follows the triangulation order for reproducibility.
    """
    rays = np.asarray(element_rays, dtype=float)
    if rays.size:
        basis = gram_schmidt(rays)
    else:
        basis = np.zeros((region.vertices.shape[1], 0))
    total = 0.0
    for s in region.simplices:
        total += simplex_integral(region.vertices[list(s)], basis)
    return total
