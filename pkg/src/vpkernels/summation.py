"""Fourier summation from coefficients: partial sums, Fejer means, delayed means.

Functions are supplied as coefficient rules (not samples).  Every mean is
implemented twice: as a multiplier applied to the coefficients and as the
defining average of partial sums; the two routes must agree to rounding and
are cross-checked in the test suite.  A small catalog of named test functions
with closed-form coefficients and pointwise evaluators is included.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .kernels import make_params, trapezoid_weight
from .quadrature import QuadratureSpec, integrate_abs_kernel

# A declared-real function whose summation exceeds this imaginary residual
# indicates a broken coefficient rule.
REAL_RESIDUAL_LIMIT = 1e-9


class RealityError(ArithmeticError):
    """A function declared real-valued produced a non-real summation value."""


@dataclass(frozen=True)
class FourierFunction:
    """A function given by its Fourier coefficients.

    ``coeff(k)`` returns the coefficient of e(kx).  ``support`` bounds the
    nonzero frequencies when known (None means unbounded).  ``real_valued``
    asserts Hermitian symmetry coeff(-k) == conj(coeff(k)).  ``evaluator`` is
    an optional pointwise ground truth for convergence tests; it may disagree
    with the series limit at jump discontinuities.
    """

    name: str
    coeff: Callable[[int], complex]
    support: int | None = None
    real_valued: bool = False
    evaluator: Callable[[float], float] | None = None


def _e(k: int, x: float) -> complex:
    return cmath.exp(2j * math.pi * k * x)


def _check_real(f: FourierFunction, value: complex) -> complex:
    if f.real_valued and abs(value.imag) > REAL_RESIDUAL_LIMIT:
        raise RealityError(
            f"{f.name}: imaginary residual {abs(value.imag):.3e} for a real-valued function"
        )
    return value


def partial_sum(f: FourierFunction, n: int, x: float) -> complex:
    """S_n(f, x) = sum of coeff(k) e(kx) over |k| <= n."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    total = complex(f.coeff(0))
    for k in range(1, n + 1):
        total += f.coeff(k) * _e(k, x) + f.coeff(-k) * _e(-k, x)
    return _check_real(f, total)


def fejer_mean(f: FourierFunction, n: int, x: float) -> complex:
    """Fejer mean via the multiplier (1 - |k|/(n+1)) on |k| <= n."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    total = complex(f.coeff(0))
    for k in range(1, n + 1):
        w = 1.0 - k / (n + 1)
        total += w * (f.coeff(k) * _e(k, x) + f.coeff(-k) * _e(-k, x))
    return _check_real(f, total)


def fejer_mean_from_partial_sums(f: FourierFunction, n: int, x: float) -> complex:
    """Fejer mean as the average of the partial sums S_0 .. S_n."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    total = sum(partial_sum(f, k, x) for k in range(n + 1))
    return total / (n + 1)


def delayed_mean(f: FourierFunction, n: int, p: int, x: float) -> complex:
    """Delayed mean via the trapezoid multiplier: flat to n, zero from n + p.

    Reproduces trigonometric polynomials of degree <= n exactly and
    annihilates frequencies >= n + p.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    total = complex(f.coeff(0))
    for k in range(1, n + p):
        w = trapezoid_weight(n, p, k)
        total += w * (f.coeff(k) * _e(k, x) + f.coeff(-k) * _e(-k, x))
    return _check_real(f, total)


def delayed_mean_from_fejer(f: FourierFunction, n: int, p: int, x: float) -> complex:
    """Delayed mean as ((n+p) Fejer_{n+p-1} - n Fejer_{n-1}) / p."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    high = fejer_mean(f, n + p - 1, x)
    if n == 0:
        return high
    low = fejer_mean(f, n - 1, x)
    return ((n + p) * high - n * low) / p


@dataclass(frozen=True)
class TailMassReport:
    """Kernel mass away from the integers, per family index N.

    ``entries`` holds (N, integral of |V(rN, sN)| over delta <= dist(x, Z)).
    For an approximate identity these masses tend to zero as N grows.
    """

    r: int
    s: int
    delta: float
    entries: tuple[tuple[int, float], ...]

    @property
    def strictly_decreasing(self) -> bool:
        masses = [m for _, m in self.entries]
        return all(b < a for a, b in zip(masses, masses[1:]))


def approximate_identity_report(
    r: int,
    s: int,
    delta: float,
    N_list: Sequence[int],
    spec: QuadratureSpec | None = None,
) -> TailMassReport:
    """Tail masses of the kernel family over {x : delta <= dist(x, Z)}.

    On the period-1 circle the window is the interval [delta, 1 - delta].
    """
    if not 0.0 < delta < 0.5:
        raise ValueError(f"delta must lie in (0, 1/2), got {delta!r}")
    entries = []
    for N in N_list:
        params = make_params(r, s, N)
        mass = integrate_abs_kernel(params, spec, window=(delta, 1.0 - delta))
        entries.append((int(N), mass))
    return TailMassReport(r=r, s=s, delta=delta, entries=tuple(entries))


def _trig_poly(name: str, cos_amps: dict[int, float], sin_amps: dict[int, float]) -> FourierFunction:
    """Real trig polynomial sum a_k cos(2 pi k x) + b_k sin(2 pi k x)."""
    support = max([0, *cos_amps, *sin_amps])

    def coeff(k: int) -> complex:
        ak = cos_amps.get(abs(k), 0.0)
        bk = sin_amps.get(abs(k), 0.0)
        if k == 0:
            return complex(ak)
        half_b = -0.5j * bk if k > 0 else 0.5j * bk
        return 0.5 * ak + half_b

    def evaluate(x: float) -> float:
        out = cos_amps.get(0, 0.0)
        for k, a in cos_amps.items():
            if k:
                out += a * math.cos(2.0 * math.pi * k * x)
        for k, b in sin_amps.items():
            if k:
                out += b * math.sin(2.0 * math.pi * k * x)
        return out

    return FourierFunction(
        name=name, coeff=coeff, support=support, real_valued=True, evaluator=evaluate
    )


def _square_wave() -> FourierFunction:
    # sign(sin(2 pi x)): coefficients -2i/(pi k) at odd k, zero at even k.
    def coeff(k: int) -> complex:
        if k == 0 or k % 2 == 0:
            return 0j
        return -2j / (math.pi * k)

    def evaluate(x: float) -> float:
        v = math.sin(2.0 * math.pi * x)
        return float((v > 0.0) - (v < 0.0))

    return FourierFunction(
        name="square", coeff=coeff, support=None, real_valued=True, evaluator=evaluate
    )


def _sawtooth() -> FourierFunction:
    # frac(x) - 1/2: coefficients i/(2 pi k), k != 0.  The series converges
    # to 0 at the jump points (integers), where the evaluator returns -1/2.
    def coeff(k: int) -> complex:
        if k == 0:
            return 0j
        return 0.5j / (math.pi * k)

    def evaluate(x: float) -> float:
        return x - math.floor(x) - 0.5

    return FourierFunction(
        name="sawtooth", coeff=coeff, support=None, real_valued=True, evaluator=evaluate
    )


CATALOG: dict[str, FourierFunction] = {
    fn.name: fn
    for fn in (
        _trig_poly("constant", {0: 1.0}, {}),
        _trig_poly("cosine", {1: 1.0}, {}),
        _trig_poly("sine", {}, {1: 1.0}),
        _trig_poly("trigpoly3", {0: 1.0, 1: 2.0, 3: 0.5}, {2: -1.0}),
        _square_wave(),
        _sawtooth(),
    )
}


def catalog_function(name: str) -> FourierFunction:
    """Look up a named test function; raises KeyError with the valid names."""
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown function {name!r}; available: {sorted(CATALOG)}") from None
