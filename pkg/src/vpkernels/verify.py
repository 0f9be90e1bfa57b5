"""Cross-method verification sweeps over whole kernel families.

For every coprime pair (r, s) up to max_s and every family index N up to
max_N, the three norm routes (closed form, piecewise exact, quadrature) are
compared cell by cell.  Per pair, the sweep also checks the Dirichlet
identity against the Lebesgue constant when s = r + 1, the norm enclosure
[1, (s+r)/(s-r)], an independent positive-area cross-check, and the interior
decay bound.  Cells are assembled in (s, r, N) order so reports are
deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exactnorm import (
    decay_bound_check,
    norm_closed_form,
    norm_piecewise_exact,
)
from .kernels import make_params
from .quadrature import (
    QuadratureSpec,
    integrate_kernel_positive_part,
    lebesgue_constant,
    norm_quadrature,
)

MAX_SWEEP_S = 12
MAX_SWEEP_N = 16

BOUND_SLACK = 1e-9
AREA_CROSS_TOL = 1e-7


class BudgetGuardError(RuntimeError):
    """Sweep size beyond the desk-scale guard rails."""


def coprime_pairs(max_s: int) -> list[tuple[int, int]]:
    """All admissible (r, s) with s <= max_s, ordered by (s, r)."""
    pairs = []
    for s in range(1, max_s + 1):
        for r in range(0, s):
            if math.gcd(r, s) == 1 and (r > 0 or s == 1):
                pairs.append((r, s))
    return pairs


@dataclass(frozen=True)
class CellCheck:
    """One (r, s, N) cell: the three norm values and their spread."""

    r: int
    s: int
    N: int
    closed: float
    piecewise: float
    quadrature: float
    max_deviation: float
    bounds_ok: bool
    ok: bool


@dataclass(frozen=True)
class PairCheck:
    """Per-(r, s) checks that do not depend on N."""

    r: int
    s: int
    closed: float
    norm_upper: float
    lebesgue: float | None
    lebesgue_deviation: float | None
    area_plus_quadrature: float
    area_deviation: float
    decay_N: int
    decay_ratio: float
    decay_ok: bool
    ok: bool


@dataclass(frozen=True)
class VerifyReport:
    max_s: int
    max_N: int
    tol: float
    cells: tuple[CellCheck, ...]
    pairs: tuple[PairCheck, ...]
    all_ok: bool


def verify_sweep(
    max_s: int,
    max_N: int,
    tol: float = 1e-7,
    quad_spec: QuadratureSpec | None = None,
    decay_N: int = 64,
    decay_grid: int = 20_001,
) -> VerifyReport:
    """Run the family sweep; guard rails keep it at desk scale."""
    if not 1 <= max_s <= MAX_SWEEP_S:
        raise BudgetGuardError(f"max_s must be in [1, {MAX_SWEEP_S}], got {max_s}")
    if not 1 <= max_N <= MAX_SWEEP_N:
        raise BudgetGuardError(f"max_N must be in [1, {MAX_SWEEP_N}], got {max_N}")
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    spec = quad_spec or QuadratureSpec(abs_tol=1e-9)
    cells = []
    pairs = []
    for r, s in coprime_pairs(max_s):
        closed = norm_closed_form(r, s)
        upper = (s + r) / (s - r)
        for N in range(1, max_N + 1):
            params = make_params(r, s, N)
            piecewise = norm_piecewise_exact(params)
            quad = norm_quadrature(params, spec)
            values = (closed.value, piecewise.value, quad.value)
            max_dev = max(abs(a - b) for a in values for b in values)
            bounds_ok = all(1.0 - BOUND_SLACK <= v <= upper + BOUND_SLACK for v in values)
            cells.append(
                CellCheck(
                    r=r,
                    s=s,
                    N=N,
                    closed=closed.value,
                    piecewise=piecewise.value,
                    quadrature=quad.value,
                    max_deviation=max_dev,
                    bounds_ok=bounds_ok,
                    ok=bool(max_dev <= tol and bounds_ok),
                )
            )
        leb = leb_dev = None
        leb_ok = True
        if s == r + 1:
            leb = lebesgue_constant(r, spec)
            leb_dev = abs(leb - closed.value)
            leb_ok = leb_dev <= tol
        area_quad = integrate_kernel_positive_part(make_params(r, s, 1), spec)
        area_dev = abs(area_quad - 0.5 * (1.0 + closed.value))
        decay = decay_bound_check(make_params(r, s, decay_N), decay_grid)
        pairs.append(
            PairCheck(
                r=r,
                s=s,
                closed=closed.value,
                norm_upper=upper,
                lebesgue=leb,
                lebesgue_deviation=leb_dev,
                area_plus_quadrature=area_quad,
                area_deviation=area_dev,
                decay_N=decay_N,
                decay_ratio=decay.ratio,
                decay_ok=decay.satisfied,
                ok=bool(leb_ok and area_dev <= AREA_CROSS_TOL and decay.satisfied),
            )
        )
    all_ok = all(c.ok for c in cells) and all(p.ok for p in pairs)
    return VerifyReport(
        max_s=max_s,
        max_N=max_N,
        tol=tol,
        cells=tuple(cells),
        pairs=tuple(pairs),
        all_ok=all_ok,
    )
