"""Adaptive panel quadrature used as an independent check on the exact engines.

Panels are anchored at the kernel's exact rational zeros so |V| is smooth on
every panel (it has corners at simple zeros).  Each panel is estimated with a
fixed Gauss-Legendre rule; a panel is accepted when the whole-panel and
two-half estimates agree within its share of the tolerance, otherwise it is
bisected.  Panel results are summed in left-to-right order, so the value is
deterministic regardless of evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .exactnorm import METHOD_QUADRATURE, NormReport, enumerate_zeros
from .kernels import KernelParams, eval_dirichlet, eval_vp

MIN_ABS_TOL = 1e-13
DEFAULT_PANEL_RULE = "gauss-legendre-15"

_RULE_CACHE: dict[str, tuple[np.ndarray, np.ndarray]] = {}


class QuadratureBudgetError(RuntimeError):
    """Subdivision budget exhausted before reaching the requested tolerance."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerance, subdivision budget, and panel rule for the oracle."""

    abs_tol: float = 1e-10
    max_subdivisions: int = 4000
    panel_rule: str = DEFAULT_PANEL_RULE

    def __post_init__(self):
        if not self.abs_tol >= MIN_ABS_TOL:
            raise ValueError(f"abs_tol must be >= {MIN_ABS_TOL:g}, got {self.abs_tol!r}")
        if self.max_subdivisions < 0:
            raise ValueError("max_subdivisions must be >= 0")
        _panel_rule_nodes(self.panel_rule)


def _panel_rule_nodes(rule: str) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the named rule, mapped to [0, 1]."""
    cached = _RULE_CACHE.get(rule)
    if cached is not None:
        return cached
    prefix = "gauss-legendre-"
    if not rule.startswith(prefix):
        raise ValueError(f"unknown panel rule {rule!r}; expected '{prefix}<nodes>'")
    try:
        order = int(rule[len(prefix):])
    except ValueError:
        raise ValueError(f"unknown panel rule {rule!r}; expected '{prefix}<nodes>'") from None
    if order < 3:
        raise ValueError(f"panel rule needs >= 3 nodes, got {order}")
    x, w = np.polynomial.legendre.leggauss(order)
    _RULE_CACHE[rule] = ((x + 1.0) / 2.0, w / 2.0)
    return _RULE_CACHE[rule]


def _integrate(
    f: Callable[[np.ndarray], np.ndarray],
    breakpoints: Sequence[float],
    spec: QuadratureSpec,
) -> tuple[float, float]:
    """Integrate f over [breakpoints[0], breakpoints[-1]] splitting as given.

    Returns (value, error_estimate).  f must accept a 1-d array.
    """
    x01, w01 = _panel_rule_nodes(spec.panel_rule)
    k = len(x01)
    pts = sorted(set(float(b) for b in breakpoints))
    if len(pts) < 2:
        return 0.0, 0.0
    span = pts[-1] - pts[0]
    panels = [(a, b, spec.abs_tol * (b - a) / span) for a, b in zip(pts[:-1], pts[1:]) if b > a]
    accepted: list[tuple[float, float]] = []
    err_total = 0.0
    splits = 0
    while panels:
        los = np.array([p[0] for p in panels])
        his = np.array([p[1] for p in panels])
        tols = np.array([p[2] for p in panels])
        mids = 0.5 * (los + his)
        X = np.empty((len(panels), 3 * k))
        X[:, :k] = los[:, None] + (his - los)[:, None] * x01
        X[:, k : 2 * k] = los[:, None] + (mids - los)[:, None] * x01
        X[:, 2 * k :] = mids[:, None] + (his - mids)[:, None] * x01
        Y = np.asarray(f(X.reshape(-1)), dtype=float).reshape(len(panels), 3 * k)
        whole = (his - los) * (Y[:, :k] @ w01)
        halves = (mids - los) * (Y[:, k : 2 * k] @ w01) + (his - mids) * (Y[:, 2 * k :] @ w01)
        err = np.abs(whole - halves)
        next_panels = []
        for i in range(len(panels)):
            if err[i] <= tols[i]:
                accepted.append((los[i], float(halves[i])))
                err_total += float(err[i])
            else:
                splits += 1
                if splits > spec.max_subdivisions:
                    raise QuadratureBudgetError(
                        f"exceeded {spec.max_subdivisions} subdivisions at abs_tol={spec.abs_tol:g}"
                    )
                half_tol = tols[i] / 2.0
                next_panels.append((float(los[i]), float(mids[i]), half_tol))
                next_panels.append((float(mids[i]), float(his[i]), half_tol))
        panels = next_panels
    accepted.sort(key=lambda item: item[0])
    return math.fsum(v for _, v in accepted), err_total


def _kernel_breakpoints(
    params: KernelParams, lo: float, hi: float, split: str
) -> list[float]:
    if split == "zeros":
        interior = [float(e.location) for e in enumerate_zeros(params).entries]
    elif split == "uniform":
        n_panels = 4 * params.s * params.N
        interior = list(np.linspace(0.0, 1.0, n_panels + 1)[1:-1])
    else:
        raise ValueError(f"split must be 'zeros' or 'uniform', got {split!r}")
    return [lo] + [z for z in interior if lo < z < hi] + [hi]


def integrate_abs_kernel(
    params: KernelParams,
    spec: QuadratureSpec | None = None,
    window: tuple[float, float] = (0.0, 1.0),
    split: str = "zeros",
) -> float:
    """Numerical integral of |V(rN, sN)| over ``window`` (within [0, 1]).

    ``split`` chooses the initial panelization: at the exact zeros (default)
    or a uniform 4sN-panel grid; both must agree within the tolerance.
    """
    spec = spec or QuadratureSpec()
    lo, hi = window
    if not 0.0 <= lo < hi <= 1.0:
        raise ValueError(f"window must satisfy 0 <= lo < hi <= 1, got {window!r}")
    value, _ = _integrate(
        lambda xs: np.abs(eval_vp(params, xs)),
        _kernel_breakpoints(params, lo, hi, split),
        spec,
    )
    return value


def integrate_kernel(params: KernelParams, spec: QuadratureSpec | None = None) -> float:
    """Signed integral of the kernel over one period (equals 1 exactly)."""
    spec = spec or QuadratureSpec()
    value, _ = _integrate(
        lambda xs: eval_vp(params, xs), _kernel_breakpoints(params, 0.0, 1.0, "zeros"), spec
    )
    return value


def integrate_kernel_positive_part(
    params: KernelParams, spec: QuadratureSpec | None = None
) -> float:
    """Integral of max(V, 0); an independent route to the area above the axis."""
    spec = spec or QuadratureSpec()
    value, _ = _integrate(
        lambda xs: np.maximum(eval_vp(params, xs), 0.0),
        _kernel_breakpoints(params, 0.0, 1.0, "zeros"),
        spec,
    )
    return value


def norm_quadrature(params: KernelParams, spec: QuadratureSpec | None = None) -> NormReport:
    """Norm of the kernel by adaptive quadrature, with its error estimate."""
    spec = spec or QuadratureSpec()
    value, err = _integrate(
        lambda xs: np.abs(eval_vp(params, xs)),
        _kernel_breakpoints(params, 0.0, 1.0, "zeros"),
        spec,
    )
    return NormReport(
        r=params.r,
        s=params.s,
        N=params.N,
        value=value,
        method=METHOD_QUADRATURE,
        error_estimate=err,
    )


def lebesgue_constant(n: int, spec: QuadratureSpec | None = None) -> float:
    """L_n = integral of |Dirichlet_n| over one period, split at its zeros."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    spec = spec or QuadratureSpec()
    denom = 2 * n + 1
    breakpoints = [0.0] + [k / denom for k in range(1, denom)] + [1.0]
    value, _ = _integrate(lambda xs: np.abs(eval_dirichlet(n, xs)), breakpoints, spec)
    return value
