"""Tests for the exact simplex integration of squared subspace distance."""

import math

import numpy as np
import pytest
import sympy as sp

from conirep.integrate import region_integral, simplex_integral, squared_distance
from conirep.linalg import gram_schmidt
from conirep.region import RegionPolytope, polytope_facets, triangulate_polytope

SQ2 = 1 / math.sqrt(2)
EMPTY2 = np.zeros((2, 0))
EMPTY3 = np.zeros((3, 0))


def symbolic_integral(verts, basis):
    """Slow exact oracle: expand the quadratic and integrate with sympy."""
    verts = np.asarray(verts, dtype=float)
    m = verts.shape[1]
    us = sp.symbols(f"u1:{m + 1}")
    J = (verts[1:] - verts[0]).T
    x = [sp.Float(verts[0][i], 20)
         + sum(sp.Float(J[i, k], 20) * us[k] for k in range(m))
         for i in range(m)]
    M = np.eye(m) - basis @ basis.T
    expr = sp.expand(sum(sp.Float(M[i, j], 20) * x[i] * x[j]
                         for i in range(m) for j in range(m)))
    for k in range(m - 1, -1, -1):
        expr = sp.integrate(expr, (us[k], 0, sp.Integer(1) - sum(us[:k])))
    return float(expr) * abs(float(np.linalg.det(verts[1:] - verts[0])))


def test_squared_distance_examples():
    assert squared_distance([1.0, 1.0, 0.0], EMPTY3) == pytest.approx(2.0)
    basis = np.array([[SQ2], [SQ2]])
    assert squared_distance([1.0, 0.0], basis) == pytest.approx(0.5, abs=1e-15)
    assert squared_distance([2.0, 2.0], basis) == pytest.approx(0.0, abs=1e-14)


def test_corner_triangle_against_origin():
    tri = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    assert simplex_integral(tri, EMPTY2) == pytest.approx(1.0 / 6.0, abs=1e-15)


def test_wedge_triangle_against_diagonal():
    tri = np.array([[0.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    basis = np.array([[SQ2], [SQ2]])
    assert simplex_integral(tri, basis) == pytest.approx(1.0 / 24.0, abs=1e-15)


def test_degenerate_simplex_is_zero():
    flat = np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]])
    assert simplex_integral(flat, EMPTY2) == 0.0


def test_full_span_basis_clamps_to_zero():
    tet = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0],
                    [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    val = simplex_integral(tet, np.eye(3))
    assert val == pytest.approx(0.0, abs=1e-14)
    assert val >= 0.0


def test_matches_symbolic_integration():
    rng = np.random.default_rng(79)
    cases = [(2, 0), (2, 1), (2, 1), (2, 0), (3, 0), (3, 1), (3, 2)]
    for m, k in cases:
        verts = rng.uniform(-1.0, 1.0, size=(m + 1, m))
        basis = (gram_schmidt(rng.standard_normal((k, m)))
                 if k else np.zeros((m, 0)))
        got = simplex_integral(verts, basis)
        assert got == pytest.approx(symbolic_integral(verts, basis), abs=1e-12)


def test_matches_monte_carlo():
    rng = np.random.default_rng(83)
    for _ in range(30):
        m = rng.integers(2, 5)
        k = rng.integers(0, m)
        verts = rng.uniform(0.0, 1.0, size=(m + 1, m))
        basis = (gram_schmidt(rng.standard_normal((k, m)))
                 if k else np.zeros((m, 0)))
        val = simplex_integral(verts, basis)
        weights = rng.dirichlet(np.ones(m + 1), size=100_000)
        x = weights @ verts
        q = (x * x).sum(axis=1) - ((x @ basis) ** 2).sum(axis=1)
        vol = abs(np.linalg.det(verts[1:] - verts[0])) / math.factorial(m)
        mc = vol * q.mean()
        assert val == pytest.approx(mc, abs=6 * vol * m / math.sqrt(100_000) + 1e-12)


def test_additive_under_centroid_split():
    rng = np.random.default_rng(89)
    for _ in range(20):
        m = rng.integers(2, 5)
        verts = rng.uniform(-1.0, 1.0, size=(m + 1, m))
        k = rng.integers(0, m)
        basis = (gram_schmidt(rng.standard_normal((k, m)))
                 if k else np.zeros((m, 0)))
        whole = simplex_integral(verts, basis)
        centroid = verts.mean(axis=0)
        parts = 0.0
        for i in range(m + 1):
            sub = verts.copy()
            sub[i] = centroid
            parts += simplex_integral(sub, basis)
        assert parts == pytest.approx(whole, rel=1e-10, abs=1e-13)


def test_region_integral_unit_cube_against_origin():
    cube = np.array([[x, y, z] for x in (0.0, 1.0)
                     for y in (0.0, 1.0) for z in (0.0, 1.0)])
    simplices = triangulate_polytope(polytope_facets(cube), cube)
    region = RegionPolytope(element=frozenset(), vertices=cube,
                            simplices=simplices, volume=1.0)
    # integral of |x|^2 over the unit cube is m/3
    assert region_integral(region, EMPTY3) == pytest.approx(1.0, abs=1e-12)


def test_region_integral_empty_region():
    region = RegionPolytope(element=frozenset({0}),
                            vertices=np.zeros((0, 2)), simplices=(), volume=0.0)
    assert region_integral(region, np.array([[1.0, 0.0]])) == 0.0
