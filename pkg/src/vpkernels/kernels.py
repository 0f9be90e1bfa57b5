"""Summability kernels of period 1: Dirichlet, Fejer, and de la Vallee Poussin.

The de la Vallee Poussin kernel with parameters (r, s, N), written V(rN, sN),
is the combination (s*Fejer(sN) - r*Fejer(rN)) / (s - r).  Its Fourier
coefficients form a trapezoid: flat equal to 1 up to frequency rN, linear down
to 0 at frequency sN.  All evaluators accept a scalar or a numpy array and
reduce the argument mod 1.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

import numpy as np

# Below this |sin(pi x)| the closed-form quotients lose precision; switch to
# direct summation of the coefficient series, which is exact at x = 0.
SIN_GUARD = 1e-6


class KernelParamError(ValueError):
    """Invalid (r, s, N) kernel parameters."""


@dataclass(frozen=True)
class KernelParams:
    """Validated parameter triple (r, s, N) identifying the kernel V(rN, sN).

    Constraints: 0 <= r < s, gcd(r, s) = 1, N >= 1.  The classical parameters
    are n = rN (flat radius) and p = (s - r)N (ramp width), with n + p = sN.
    """

    r: int
    s: int
    N: int

    def __post_init__(self):
        for name in ("r", "s", "N"):
            try:
                object.__setattr__(self, name, operator.index(getattr(self, name)))
            except TypeError:
                raise KernelParamError(f"{name} must be an integer, got {getattr(self, name)!r}") from None
        if self.r < 0:
            raise KernelParamError(f"r must be >= 0, got r={self.r}")
        if self.s <= self.r:
            raise KernelParamError(f"s must exceed r, got r={self.r}, s={self.s}")
        g = math.gcd(self.r, self.s)
        if g != 1:
            raise KernelParamError(f"r and s must be coprime, gcd({self.r}, {self.s}) = {g}")
        if self.N <= 0:
            raise KernelParamError(f"N must be >= 1, got N={self.N}")

    @property
    def n(self) -> int:
        return self.r * self.N

    @property
    def p(self) -> int:
        return (self.s - self.r) * self.N

    @property
    def degree(self) -> int:
        """Degree of the kernel as a trigonometric polynomial."""
        return self.s * self.N - 1

    @property
    def peak(self) -> int:
        """Kernel value at x = 0, equal to (s + r) N."""
        return (self.s + self.r) * self.N

    @property
    def label(self) -> str:
        return f"V({self.n},{self.n + self.p})"


def make_params(r: int, s: int, N: int = 1) -> KernelParams:
    """Validate and build a KernelParams triple.

    Rejects r < 0, s <= r, gcd(r, s) != 1, and N <= 0, each with its own
    diagnostic.  r = 0 is admitted and forces s = 1 (the pure Fejer family).
    """
    return KernelParams(r, s, N)


def _as_grid(x) -> tuple[np.ndarray, bool]:
    scalar = np.ndim(x) == 0
    return np.atleast_1d(np.asarray(x, dtype=float)), scalar


def _reduce_mod1(xs: np.ndarray) -> np.ndarray:
    xr = np.mod(xs, 1.0)
    # np.mod of a tiny negative can round up to exactly 1.0
    xr[xr == 1.0] = 0.0
    return xr


def coefficient(params: KernelParams, j: int) -> float:
    """Fourier coefficient of V(rN, sN) at frequency j.

    Equals 1 for |j| <= rN, 0 for |j| >= sN, and (sN - |j|) / ((s - r) N) on
    the ramp.  The flat branch is tested first so the knot |j| = rN returns
    exactly 1.0 with no float division.
    """
    aj = abs(operator.index(j))
    if aj <= params.r * params.N:
        return 1.0
    if aj >= params.s * params.N:
        return 0.0
    return (params.s * params.N - aj) / ((params.s - params.r) * params.N)


def trapezoid_weight(n: int, p: int, u: float) -> float:
    """Continuous trapezoid multiplier: 1 on |u| <= n, 0 at |u| >= n + p."""
    au = abs(u)
    if au <= n:
        return 1.0
    if au >= n + p:
        return 0.0
    return (n + p - au) / p


def _coefficient_weights(params: KernelParams) -> np.ndarray:
    """Coefficients at frequencies 1 .. sN-1 as an array."""
    sN = params.s * params.N
    rN = params.r * params.N
    n = np.arange(1, sN)
    ramp = (sN - n) / ((params.s - params.r) * params.N)
    return np.where(n <= rN, 1.0, ramp)


def _coefficient_series(params: KernelParams, xs: np.ndarray) -> np.ndarray:
    """Direct summation of the coefficient series; stable near integer x."""
    w = _coefficient_weights(params)
    if w.size == 0:
        return np.ones_like(xs)
    n = np.arange(1, params.s * params.N)
    return 1.0 + 2.0 * (np.cos(2.0 * np.pi * np.outer(xs, n)) @ w)


def eval_vp(params: KernelParams, x):
    """Evaluate V(rN, sN) at x (period 1).

    Uses the product form sin(pi (s+r)N x) sin(pi (s-r)N x) / ((s-r)N sin^2(pi x))
    away from integers and the coefficient series where |sin(pi x)| < SIN_GUARD.
    At x = 0 (mod 1) returns the exact peak (s + r) N.
    """
    xs, scalar = _as_grid(x)
    xr = _reduce_mod1(xs)
    r, s, N = params.r, params.s, params.N
    sp = np.sin(np.pi * xr)
    near = np.abs(sp) < SIN_GUARD
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = (
            np.sin(np.pi * (s + r) * N * xr)
            * np.sin(np.pi * (s - r) * N * xr)
            / ((s - r) * N * sp * sp)
        )
    if near.any():
        vals[near] = _coefficient_series(params, xr[near])
        vals[xr == 0.0] = float(params.peak)
    return float(vals[0]) if scalar else vals


def eval_vp_fejer_combination(params: KernelParams, x):
    """Evaluate V(rN, sN) as (s*Fejer(sN) - r*Fejer(rN)) / (s - r).

    Algebraically identical to eval_vp; kept as an independent route for
    cross-validation of the two closed forms.
    """
    r, s, N = params.r, params.s, params.N
    high = eval_fejer(s * N - 1, x)
    if r == 0:
        return high
    low = eval_fejer(r * N - 1, x)
    return (s * high - r * low) / (s - r)


def eval_fejer(n: int, x):
    """Fejer kernel of parameter n: (1/(n+1)) (sin(pi (n+1) x) / sin(pi x))^2.

    Nonnegative everywhere; equals n + 1 at x = 0 (mod 1).
    """
    if n < 0:
        raise ValueError(f"Fejer parameter must be >= 0, got {n}")
    m = n + 1
    xs, scalar = _as_grid(x)
    xr = _reduce_mod1(xs)
    sp = np.sin(np.pi * xr)
    near = np.abs(sp) < SIN_GUARD
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.sin(np.pi * m * xr) / sp
        vals = ratio * ratio / m
    if near.any():
        k = np.arange(1, m)
        w = 1.0 - k / m
        xn = xr[near]
        vals[near] = 1.0 + 2.0 * (np.cos(2.0 * np.pi * np.outer(xn, k)) @ w)
        vals[xr == 0.0] = float(m)
    return float(vals[0]) if scalar else vals


def eval_dirichlet(n: int, x):
    """Dirichlet kernel: sin(pi (2n+1) x) / sin(pi x); equals 2n + 1 at x = 0."""
    if n < 0:
        raise ValueError(f"Dirichlet parameter must be >= 0, got {n}")
    xs, scalar = _as_grid(x)
    xr = _reduce_mod1(xs)
    sp = np.sin(np.pi * xr)
    near = np.abs(sp) < SIN_GUARD
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.sin(np.pi * (2 * n + 1) * xr) / sp
    if near.any():
        k = np.arange(1, n + 1)
        xn = xr[near]
        vals[near] = 1.0 + 2.0 * np.cos(2.0 * np.pi * np.outer(xn, k)).sum(axis=1)
        vals[xr == 0.0] = float(2 * n + 1)
    return float(vals[0]) if scalar else vals


@dataclass(frozen=True)
class CoefficientProfile:
    """The trapezoidal Fourier multiplier of a kernel, sampled at integers."""

    params: KernelParams

    def sample(self, j: int) -> float:
        return coefficient(self.params, j)

    @property
    def support(self) -> int:
        """Largest frequency with a nonzero coefficient."""
        return self.params.degree

    def samples(self, j_max: int | None = None) -> list[tuple[int, float]]:
        """(j, coefficient) pairs for j = -j_max .. j_max (default sN)."""
        if j_max is None:
            j_max = self.params.s * self.params.N
        elif j_max < 0:
            raise ValueError(f"j_max must be >= 0, got {j_max}")
        return [(j, coefficient(self.params, j)) for j in range(-j_max, j_max + 1)]

    def trapezoid_nodes(self) -> list[tuple[int, float]]:
        """Breakpoints of the piecewise-linear multiplier, for plotting."""
        n, top = self.params.n, self.params.n + self.params.p
        if n == 0:
            return [(-top, 0.0), (0, 1.0), (top, 0.0)]
        return [(-top, 0.0), (-n, 1.0), (n, 1.0), (top, 0.0)]
