"""Conical hull geometry: extreme rays, facet lattice, adjacent cones.

The cone of a nonnegative matrix is pointed (it lives in the positive
orthant), so its boundary structure can be read off the convex hull of the
origin together with the unit ray directions: the cone's facets are exactly
the hull facets incident to the origin. Extremality of the rays themselves
is decided by NNLS fits, not by hull vertex status; a non-extreme direction
can still be a vertex of that point set.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .errors import AllZeroMatrixError, DegenerateConeError
from .linalg import TOL_GEOM, gram_schmidt, normal_vector
from .nnls import nnls

# NNLS residual below which a point counts as inside a cone.
TOL_MEMBER = 1e-8
# Unit rays with a mutual dot product above this merge into one ray.
DEDUP_DOT = 1.0 - 1e-12


@dataclass(frozen=True)
class StateMatrix:
    """Validated m x n activity matrix: rows are states, columns neurons."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=float)
        if arr.ndim != 2:
            raise ValueError(f"matrix must be 2-dimensional, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("matrix needs at least one row and one column")
        if not np.all(np.isfinite(arr)):
            raise ValueError("matrix entries must be finite")
        if np.any(arr < 0):
            raise ValueError("matrix entries must be nonnegative")
        object.__setattr__(self, "entries", arr)

    @property
    def m(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.entries.shape[1]


def as_state_matrix(obj) -> StateMatrix:
    return obj if isinstance(obj, StateMatrix) else StateMatrix(np.asarray(obj))


@dataclass(frozen=True)
class Cone:
    """Extreme-ray description of a conical hull plus its boundary lattice.

    rays: (k, m) unit rows, lexicographically sorted.
    ray_origins: per ray, the 0-based input columns pointing along it.
    facets: ray-index sets of the (m-1)-dimensional boundary elements.
    elements: dim -> ray-index sets, for dims 1..m-1 (filled by
        cone_sub_elements; facets appear again under dim m-1).
    cone_rank: rank of the ray span; the analytical pipeline needs rank m.
    """

    rays: np.ndarray
    ray_origins: tuple[tuple[int, ...], ...]
    facets: tuple[frozenset[int], ...]
    elements: dict[int, tuple[frozenset[int], ...]] = field(default_factory=dict)
    cone_rank: int = 0

    @property
    def dim(self) -> int:
        return self.rays.shape[1]


@dataclass(frozen=True)
class AdjacentCone:
    """Cone of points whose nearest point on the parent cone lies in `element`.

    Generated by the element's own rays plus the outward normals of every
    facet containing the element.
    """

    element: frozenset[int]
    element_rays: np.ndarray
    normals: np.ndarray

    @property
    def generators(self) -> np.ndarray:
        if self.element_rays.size == 0:
            return self.normals
        if self.normals.size == 0:
            return self.element_rays
        return np.vstack([self.element_rays, self.normals])


def _unit_dedup(columns: np.ndarray):
    """Unit directions of the nonzero columns, merged when collinear.

    Returns (units, origins): units is a list of unit vectors, origins the
    0-based column indices behind each one.
    """
    units: list[np.ndarray] = []
    origins: list[list[int]] = []
    for j in range(columns.shape[1]):
        col = columns[:, j]
        if not col.any():
            continue
        u = col / np.linalg.norm(col)
        for k, v in enumerate(units):
            if u @ v > DEDUP_DOT:
                origins[k].append(j)
                break
        else:
            units.append(u)
            origins.append([j])
    return units, origins


def _extreme_filter(units, tol_geom: float):
    """Indices of the rays not expressible as conical combinations of the rest."""
    k = len(units)
    if k == 1:
        return [0]
    keep = []
    U = np.stack(units, axis=1)
    for i in range(k):
        others = np.delete(U, i, axis=1)
        _, rnorm = nnls(others, U[:, i])
        if rnorm >= tol_geom:
            keep.append(i)
    return keep


def _merge_coplanar(hull: ConvexHull, tol: float):
    """Group hull simplices into maximal coplanar facets via the neighbor graph."""
    eqs = hull.equations
    nsimp = len(hull.simplices)
    parent = list(range(nsimp))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(nsimp):
        for j in hull.neighbors[i]:
            j = int(j)
            if j > i and np.all(np.abs(eqs[i] - eqs[j]) < tol):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    groups: dict[int, list[int]] = {}
    for i in range(nsimp):
        groups.setdefault(find(i), []).append(i)
    merged = []
    for g in groups.values():
        verts = set()
        for s in g:
            verts.update(int(v) for v in hull.simplices[s])
        merged.append((verts, eqs[g[0]]))
    return merged


def ray_lattice_facets(rays: np.ndarray, tol_geom: float = TOL_GEOM):
    """Facet ray-index sets of the full-dimensional pointed cone over `rays`.

    Works on any extreme ray set (entries of any sign); used both for the
    input cone and for adjacent cones. The hull of {0} union rays is built
    and only facets through the origin are kept, merged where coplanar.
    """
    m = rays.shape[1]
    pts = np.vstack([np.zeros(m), rays])
    try:
        hull = ConvexHull(pts)
    except QhullError as exc:
        raise DegenerateConeError(f"facet enumeration failed: {exc}") from exc
    facets = []
    for verts, eq in _merge_coplanar(hull, tol_geom):
        if 0 in verts and abs(eq[-1]) < tol_geom:
            facets.append(frozenset(v - 1 for v in verts if v != 0))
    if not facets:
        raise DegenerateConeError("no origin-incident facets; ray set is not pointed")
    return tuple(sorted(facets, key=sorted))


def sub_elements_of(facets, rays: np.ndarray, tol_geom: float = TOL_GEOM):
    """Boundary elements of dims 1..m-1: closure of facets under intersection.

    Every proper face of a pointed cone is an intersection of facets, and the
    ray set of an intersection of faces is the intersection of their ray
    sets, so closing the facet list under pairwise intersection enumerates
    the whole lattice. Dimension = rank of the element's rays.
    """
    m = rays.shape[1]
    all_faces = set(facets)
    frontier = set(facets)
    while frontier:
        new = set()
        for f in facets:
            for e in frontier:
                inter = e & f
                if inter and inter not in all_faces and inter not in new:
                    new.add(inter)
        all_faces |= new
        frontier = new
    by_dim: dict[int, list[frozenset[int]]] = {}
    for face in all_faces:
        r = np.linalg.matrix_rank(rays[sorted(face)], tol=tol_geom)
        if 1 <= r <= m - 1:
            by_dim.setdefault(int(r), []).append(face)
    return {d: tuple(sorted(faces, key=sorted)) for d, faces in sorted(by_dim.items())}


def coni_facets(C, tol_geom: float = TOL_GEOM) -> Cone:
    """Extreme rays and facets of the conical hull of C's columns.

    Zero columns are dropped, collinear columns merged, and non-extreme
    directions discarded (an NNLS fit by the remaining rays reconstructs
    them, so they add nothing to the hull). Rays come back unit-normalized
    and lexicographically sorted for deterministic downstream iteration.
    """
    sm = as_state_matrix(C)
    units, origins = _unit_dedup(sm.entries)
    if not units:
        raise AllZeroMatrixError("matrix has no nonzero column")
    keep = _extreme_filter(units, tol_geom)
    rays = np.array([units[i] for i in keep])
    ray_origins = [tuple(origins[i]) for i in keep]
    order = np.lexsort(rays.T[::-1])
    rays = rays[order]
    ray_origins = tuple(ray_origins[i] for i in order)
    rank = int(np.linalg.matrix_rank(rays, tol=tol_geom))
    facets: tuple[frozenset[int], ...] = ()
    if rank == sm.m and sm.m >= 2:
        facets = ray_lattice_facets(rays, tol_geom)
    return Cone(rays=rays, ray_origins=ray_origins, facets=facets, cone_rank=rank)


def cone_sub_elements(cone: Cone, tol_geom: float = TOL_GEOM) -> Cone:
    """Return the cone with its element lattice (dims 1..m-1) populated."""
    if not cone.facets:
        raise DegenerateConeError("cone has no facets; build with coni_facets first")
    elements = sub_elements_of(cone.facets, cone.rays, tol_geom)
    return replace(cone, elements=elements)


def adjacent_facets(element: frozenset, cone: Cone):
    """All facets whose ray set contains the element; a facet yields itself."""
    element = frozenset(element)
    if element in cone.facets:
        return (element,)
    dims = cone.elements or {}
    if not any(element in elems for elems in dims.values()):
        raise ValueError(f"element {sorted(element)} is not in the cone lattice")
    return tuple(f for f in cone.facets if element <= f)


def facet_normal_outward(facet: frozenset, cone: Cone, tol_geom: float = TOL_GEOM) -> np.ndarray:
    """Unit normal of a facet, oriented away from the cone.

    Orthogonal to every facet ray; nonpositive dot product with every other
    ray. If no ray leaves the facet's span the orientation is undecidable,
    which means the cone is rank-deficient.
    """
    idx = sorted(facet)
    basis = gram_schmidt(cone.rays[idx])
    m = cone.dim
    if basis.shape[1] != m - 1:
        raise DegenerateConeError(f"facet {idx} does not span dimension {m - 1}")
    n = normal_vector(basis.T)
    dots = cone.rays @ n
    pivot = int(np.argmax(np.abs(dots)))
    if abs(dots[pivot]) <= tol_geom:
        raise DegenerateConeError("all rays lie in the facet span; cone is rank-deficient")
    if dots[pivot] > 0:
        n = -n
        dots = -dots
    if np.any(dots > tol_geom):
        raise DegenerateConeError("facet normal cannot be oriented away from all rays")
    return n


def adjacent_cone(element: frozenset, cone: Cone, tol_geom: float = TOL_GEOM) -> AdjacentCone:
    """Element rays plus outward normals of the element's incident facets."""
    element = frozenset(element)
    facets = adjacent_facets(element, cone)
    normals = np.array([facet_normal_outward(f, cone, tol_geom) for f in facets])
    return AdjacentCone(
        element=element,
        element_rays=cone.rays[sorted(element)],
        normals=normals,
    )


def cone_contains(point, generators, tol_member: float = TOL_MEMBER) -> bool:
    """True when the point is a conical combination of the generator rows."""
    G = np.asarray(generators, dtype=float)
    _, rnorm = nnls(G.T, np.asarray(point, dtype=float))
    return rnorm < tol_member
