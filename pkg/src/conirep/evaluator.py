"""End-to-end evaluation of a state matrix.

evaluate() dispatches between closed forms (all-zero matrix, m = 1, fully
covered hypercube), the analytical region pipeline, and a quadrature
fallback for rank-deficient cones. The analytical route sums, over every
boundary element of the cone, the exact integral of the squared distance to
that element's span across the element's region of the hypercube.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .cone import (Cone, adjacent_cone, as_state_matrix, cone_contains, cone_sub_elements,
                   coni_facets)
from .errors import BudgetExceededError
from .integrate import region_integral
from .linalg import TOL_GEOM
from .oracle import SAMPLE_BUDGET, ir_num
from .region import build_region

# Hard caps for the combinatorial stages.
MAX_DIM = 10
MAX_ELEMENTS = 100_000
MAX_SIMPLICES = 1_000_000

METHOD_ANALYTICAL = "analytical"
METHOD_CLOSED_FORM = "closed-form"
METHOD_FALLBACK = "numerical-fallback"


@dataclass(frozen=True)
class RegionRecord:
    """One region row: which element, how much volume, what error mass."""

    element: tuple[int, ...]  # 1-based ray indices; () is the apex
    dim: int
    volume: float
    integral: float


@dataclass(frozen=True)
class EvaluationResult:
    ir: float
    irn: float
    output_volume: float
    regions: tuple[RegionRecord, ...]
    extreme_ray_columns: tuple[int, ...]
    redundant_columns: tuple[int, ...]
    zero_columns: tuple[int, ...]
    method: str
    diagnostics: tuple[str, ...]


def evaluate(C, tol_geom: float = TOL_GEOM, budget_samples: int = SAMPLE_BUDGET,
             threads: int = 1, max_elements: int = MAX_ELEMENTS,
             max_simplices: int = MAX_SIMPLICES) -> EvaluationResult:
    """Mean squared readout error of C over all targets in the unit hypercube."""
    return _evaluate(C, tol_geom, budget_samples, threads, max_elements, max_simplices,
                     force_regions=False)


def output_volume(C, **kwargs) -> float:
    """Fraction of the hypercube reachable with zero error: vol(cone in cube)."""
    return evaluate(C, **kwargs).output_volume


def region_report(C, tol_geom: float = TOL_GEOM, budget_samples: int = SAMPLE_BUDGET,
                  threads: int = 1, max_elements: int = MAX_ELEMENTS,
                  max_simplices: int = MAX_SIMPLICES) -> tuple[RegionRecord, ...]:
    """Per-element region rows, forcing the full pipeline where it applies.

    Unlike evaluate(), a fully covered hypercube does not short-circuit, so
    degenerate (zero-volume) regions are listed rather than skipped.
    """
    return _evaluate(C, tol_geom, budget_samples, threads, max_elements, max_simplices,
                     force_regions=True).regions


def _evaluate(C, tol_geom, budget_samples, threads, max_elements, max_simplices,
              force_regions) -> EvaluationResult:
    sm = as_state_matrix(C)
    m, n = sm.m, sm.n
    if m > MAX_DIM:
        raise BudgetExceededError(f"m = {m} exceeds the supported maximum of {MAX_DIM}")

    zero_cols = tuple(j + 1 for j in range(n) if not sm.entries[:, j].any())
    if len(zero_cols) == n:
        ir = m / 3.0
        apex = RegionRecord(element=(), dim=0, volume=1.0, integral=ir)
        return EvaluationResult(
            ir=ir, irn=1.0, output_volume=0.0, regions=(apex,),
            extreme_ray_columns=(), redundant_columns=(), zero_columns=zero_cols,
            method=METHOD_CLOSED_FORM,
            diagnostics=("all columns zero: distance to the apex over the whole cube",),
        )

    if m == 1:
        positive = tuple(j + 1 for j in range(n) if sm.entries[0, j] > 0)
        return EvaluationResult(
            ir=0.0, irn=0.0, output_volume=1.0, regions=(),
            extreme_ray_columns=positive, redundant_columns=(), zero_columns=zero_cols,
            method=METHOD_CLOSED_FORM,
            diagnostics=("m = 1: any positive column spans the whole interval",),
        )

    cone = coni_facets(sm, tol_geom)
    extreme_cols = tuple(sorted(j + 1 for cols in cone.ray_origins for j in cols))
    redundant_cols = tuple(sorted(set(range(1, n + 1)) - set(extreme_cols) - set(zero_cols)))

    if cone.cone_rank < m:
        return _fallback(sm, cone, extreme_cols, redundant_cols, zero_cols,
                         budget_samples, threads)

    if not force_regions and _covers_hypercube(sm, cone):
        return EvaluationResult(
            ir=0.0, irn=0.0, output_volume=1.0, regions=(),
            extreme_ray_columns=extreme_cols, redundant_columns=redundant_cols,
            zero_columns=zero_cols, method=METHOD_CLOSED_FORM,
            diagnostics=("cone contains every hypercube vertex: full coverage",),
        )

    cone = cone_sub_elements(cone, tol_geom)
    n_elements = sum(len(v) for v in cone.elements.values())
    if n_elements > max_elements:
        raise BudgetExceededError(f"{n_elements} cone elements exceed the limit of {max_elements}")

    diagnostics: list[str] = []
    records: list[RegionRecord] = []
    ir = 0.0
    covered = 0.0
    n_simplices = 0
    for dim in sorted(cone.elements):
        for elem in cone.elements[dim]:
            adj = adjacent_cone(elem, cone, tol_geom)
            region = build_region(adj, tol_geom, diagnostics)
            n_simplices += len(region.simplices)
            if n_simplices > max_simplices:
                raise BudgetExceededError(
                    f"{n_simplices} simplices exceed the limit of {max_simplices}")
            integral = region_integral(region, adj.element_rays)
            records.append(RegionRecord(
                element=tuple(i + 1 for i in sorted(elem)),
                dim=dim,
                volume=region.volume,
                integral=integral,
            ))
            ir += integral
            covered += region.volume

    return EvaluationResult(
        ir=ir,
        irn=ir / (m / 3.0),
        output_volume=min(max(1.0 - covered, 0.0), 1.0),
        regions=tuple(records),
        extreme_ray_columns=extreme_cols,
        redundant_columns=redundant_cols,
        zero_columns=zero_cols,
        method=METHOD_ANALYTICAL,
        diagnostics=tuple(diagnostics),
    )


def _covers_hypercube(sm, cone: Cone) -> bool:
    """Convexity shortcut: all 2^m cube vertices inside means the cube is."""
    for corner in itertools.product((0.0, 1.0), repeat=sm.m):
        v = np.array(corner)
        if v.any() and not cone_contains(v, cone.rays):
            return False
    return True


def _fallback(sm, cone: Cone, extreme_cols, redundant_cols, zero_cols,
              budget_samples, threads) -> EvaluationResult:
    """Quadrature route for cones that do not span the full space.

    Such a cone has measure zero in R^m, so the output volume is exactly 0.
    The grid resolution honors a floor of 16 points per axis even if that
    overruns the sample budget; the overrun is reported, not fatal.
    """
    m = sm.m
    n_axis = max(16, int(budget_samples ** (1.0 / m)))
    diagnostics = [f"cone rank {cone.cone_rank} < {m}: numerical fallback at N = {n_axis}"]
    total = n_axis ** m
    if total > budget_samples:
        diagnostics.append(f"minimum resolution overruns the sample budget: {total} samples")
    q = ir_num(sm.entries, n_axis, budget=max(budget_samples, total), threads=threads)
    return EvaluationResult(
        ir=q.ir_num, irn=q.irn_num, output_volume=0.0, regions=(),
        extreme_ray_columns=extreme_cols, redundant_columns=redundant_cols,
        zero_columns=zero_cols, method=METHOD_FALLBACK, diagnostics=tuple(diagnostics),
    )
