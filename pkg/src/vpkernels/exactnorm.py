"""Exact L1-norm machinery for de la Vallee Poussin kernels.

Two independent exact routes to the norm live here:

* ``norm_piecewise_exact`` enumerates the kernel's zeros, attaches a sign to
  each from the exact derivative-sign sequences, and telescopes the termwise
  antiderivative between consecutive zeros.
* ``norm_closed_form`` evaluates the N-free closed formula built from the
  sign sequences and their small DFTs; the family index N never enters.

Zero locations and all signs are computed in exact integer/rational
arithmetic; floating point appears only in the final summations.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .kernels import (
    KernelParams,
    _as_grid,
    _coefficient_weights,
    eval_vp,
    make_params,
    trapezoid_weight,
)

METHOD_CLOSED = "closed-form"
METHOD_PIECEWISE = "piecewise-exact"
METHOD_QUADRATURE = "quadrature"

KIND_FIRST = "first-family"
KIND_SECOND = "second-family"
KIND_COINCIDENT = "coincident"

# Imaginary residual above this in the closed form signals an implementation
# bug (the formula is real-valued term-pair by term-pair).
IMAG_RESIDUAL_LIMIT = 1e-8


class ImaginaryResidualError(ArithmeticError):
    """Closed-form evaluation produced a non-negligible imaginary part."""


def sign_of_sin_two_pi(num: int, den: int) -> int:
    """Exact sign of sin(2 pi num / den) for integers, den > 0.

    Works on the residue of num mod den: zero on the half-period boundary,
    +1 in the first half-period, -1 in the second.  Avoids floating sin,
    which can report the wrong sign near multiples of pi.
    """
    m = num % den
    if m == 0 or 2 * m == den:
        return 0
    return 1 if 2 * m < den else -1


@dataclass(frozen=True)
class ZeroEntry:
    """One zero of the kernel in (0, 1).

    ``a`` is set when the location is a/((s+r)N), ``b`` when it is
    b/((s-r)N); coincident zeros carry both and have multiplicity 2.
    """

    location: Fraction
    kind: str
    multiplicity: int
    a: int | None = None
    b: int | None = None


@dataclass(frozen=True)
class ZeroSet:
    params: KernelParams
    entries: tuple[ZeroEntry, ...]

    @property
    def total_multiplicity(self) -> int:
        return sum(e.multiplicity for e in self.entries)

    def double_zeros(self) -> tuple[ZeroEntry, ...]:
        return tuple(e for e in self.entries if e.multiplicity == 2)

    def locations(self) -> list[Fraction]:
        return [e.location for e in self.entries]


def enumerate_zeros(params: KernelParams) -> ZeroSet:
    """All zeros of V(rN, sN) in (0, 1), classified and exactly located.

    First-family zeros sit at a/((s+r)N), second-family at b/((s-r)N);
    locations shared by both families appear once as coincident entries of
    multiplicity 2.  Total multiplicity is always 2sN - 2.  The constant
    kernel (r, s, N) = (0, 1, 1) has no zeros and yields an empty set.
    """
    r, s, N = params.r, params.s, params.N
    q1 = (s + r) * N
    q2 = (s - r) * N
    found: dict[Fraction, ZeroEntry] = {}
    for a in range(1, q1):
        loc = Fraction(a, q1)
        found[loc] = ZeroEntry(location=loc, kind=KIND_FIRST, multiplicity=1, a=a)
    for b in range(1, q2):
        loc = Fraction(b, q2)
        prior = found.get(loc)
        if prior is None:
            found[loc] = ZeroEntry(location=loc, kind=KIND_SECOND, multiplicity=1, b=b)
        else:
            found[loc] = ZeroEntry(
                location=loc, kind=KIND_COINCIDENT, multiplicity=2, a=prior.a, b=b
            )
    entries = tuple(found[loc] for loc in sorted(found))
    return ZeroSet(params=params, entries=entries)


@dataclass(frozen=True)
class SignSequences:
    """Derivative-sign sequences at the two zero families, with their DFTs.

    eps[a-1] is the sign attached to the first-family index a (period s + r),
    delta[b-1] to the second-family index b (period s - r).  The DFT
    convention is eps(a) = sum_k eps_hat[k-1] e(a k / (s+r)), k = 1 .. s+r.
    """

    r: int
    s: int
    eps: tuple[int, ...]
    delta: tuple[int, ...]
    eps_hat: tuple[complex, ...]
    delta_hat: tuple[complex, ...]

    def eps_at(self, a: int) -> int:
        return self.eps[(a - 1) % len(self.eps)]

    def delta_at(self, b: int) -> int:
        return self.delta[(b - 1) % len(self.delta)]

    @property
    def balance(self) -> int:
        """Sum of both sequences over one period; always zero."""
        return sum(self.eps) + sum(self.delta)


def _inverse_dft(seq: tuple[int, ...]) -> tuple[complex, ...]:
    # Direct O(P^2) summation; periods here are tiny (s +- r).
    P = len(seq)
    out = []
    for k in range(1, P + 1):
        acc = 0j
        for a in range(1, P + 1):
            acc += seq[a - 1] * cmath.exp(-2j * math.pi * a * k / P)
        out.append(acc / P)
    return tuple(out)


def sign_sequences(r: int, s: int) -> SignSequences:
    """Build the sign sequences for the coprime pair (r, s); N-free."""
    make_params(r, s, 1)
    eps = tuple(sign_of_sin_two_pi(2 * a * r, 2 * (s + r)) for a in range(1, s + r + 1))
    delta = tuple(-sign_of_sin_two_pi(2 * b * r, 2 * (s - r)) for b in range(1, s - r + 1))
    return SignSequences(
        r=r,
        s=s,
        eps=eps,
        delta=delta,
        eps_hat=_inverse_dft(eps),
        delta_hat=_inverse_dft(delta),
    )


def derivative_sign_at_zero(params: KernelParams, zero: ZeroEntry | Fraction) -> int:
    """Sign of V' at a zero: -eps(a), -delta(b), or 0 for a double zero.

    Accepts a ZeroEntry or a bare rational location; rejects locations that
    are not zeros of this kernel.
    """
    loc = zero.location if isinstance(zero, ZeroEntry) else Fraction(zero)
    if not 0 < loc < 1:
        raise ValueError(f"{loc} is not interior to (0, 1)")
    r, s, N = params.r, params.s, params.N
    first = loc * (s + r) * N
    second = loc * (s - r) * N
    is_first = first.denominator == 1
    is_second = second.denominator == 1
    if not is_first and not is_second:
        raise ValueError(f"{loc} is not a zero of {params.label}")
    if is_first and is_second:
        return 0
    ss = sign_sequences(r, s)
    if is_first:
        return -ss.eps_at(int(first))
    return -ss.delta_at(int(second))


class Antiderivative:
    """Primitive of the kernel: W(x) = x + sum_n v_n sin(2 pi n x) / (pi n).

    Termwise integration of the coefficient series; W(1) - W(0) = 1 and
    W' = V.  Used to integrate the kernel exactly between consecutive zeros.
    """

    def __init__(self, params: KernelParams):
        self.params = params
        self._freq = np.arange(1, params.s * params.N)
        self._weights = _coefficient_weights(params) / (np.pi * np.maximum(self._freq, 1))

    def eval(self, x):
        xs, scalar = _as_grid(x)
        if self._freq.size:
            vals = xs + np.sin(2.0 * np.pi * np.outer(xs, self._freq)) @ self._weights
        else:
            vals = xs.copy()
        return float(vals[0]) if scalar else vals


@dataclass(frozen=True)
class NormReport:
    """An L1-norm value, how it was obtained, and its positive/negative split."""

    r: int
    s: int
    N: int | None
    value: float
    method: str
    imag_residual: float | None = None
    error_estimate: float | None = None

    @property
    def area_plus(self) -> float:
        return 0.5 * (1.0 + self.value)

    @property
    def area_minus(self) -> float:
        return 0.5 * (self.value - 1.0)

    @property
    def bounds(self) -> tuple[float, float]:
        """Guaranteed enclosure [1, (s+r)/(s-r)] for the norm."""
        return 1.0, (self.s + self.r) / (self.s - self.r)


def norm_piecewise_exact(params: KernelParams) -> NormReport:
    """Norm via signed telescoping of the antiderivative over all zeros.

    Evaluates 1 + 2 sum_a eps(a) W(a/((s+r)N)) + 2 sum_b delta(b) W(b/((s-r)N))
    with both sums running to their full upper limits; the final terms carry
    sign 0, so including them is harmless and keeps the transcription literal.
    """
    r, s, N = params.r, params.s, params.N
    if r == 0:
        # Fejer family: the kernel is nonnegative with unit integral.
        return NormReport(r=r, s=s, N=N, value=1.0, method=METHOD_PIECEWISE)
    ss = sign_sequences(r, s)
    W = Antiderivative(params)
    total = 1.0
    for q, sign_at in (((s + r) * N, ss.eps_at), ((s - r) * N, ss.delta_at)):
        idx = np.arange(1, q + 1)
        signs = np.array([sign_at(int(i)) for i in idx], dtype=float)
        nz = signs != 0.0
        if nz.any():
            total += 2.0 * float(signs[nz] @ W.eval(idx[nz] / q))
    return NormReport(r=r, s=s, N=N, value=total, method=METHOD_PIECEWISE)


def _dft_double_sum(q: int, hats: tuple[complex, ...], r: int, s: int) -> complex:
    """sum_k hat(k) sum_m v(-k + m q) / (i pi (-k + m q)), skipping m q = k.

    The inner sum runs over every integer m for which the trapezoid
    coefficient is nonzero, i.e. |-k + m q| < s.  For q = s + r only
    m in {0, 1} survive; for q = s - r the support can reach further out,
    and truncating it to {0, 1} gives wrong norms (e.g. for (r, s) = (2, 5)).
    """
    total = 0j
    for k in range(1, q + 1):
        h = hats[k - 1]
        if h == 0:
            continue
        m_lo = -((s - k) // q)
        m_hi = (k + s) // q
        inner = 0j
        for m in range(m_lo, m_hi + 1):
            if m * q == k:
                continue
            u = -k + m * q
            v = trapezoid_weight(r, s - r, u)
            if v:
                inner += v / (1j * math.pi * u)
        total += h * inner
    return total


def norm_closed_form(r: int, s: int) -> NormReport:
    """N-free closed form of the norm for the coprime pair (r, s).

    Adds the linear terms 2/(s+-r) * sum sign * index and the two DFT double
    sums, accumulating in complex arithmetic.  The imaginary part must cancel;
    its magnitude is recorded as ``imag_residual`` and a residual above
    IMAG_RESIDUAL_LIMIT raises ImaginaryResidualError.
    """
    make_params(r, s, 1)
    ss = sign_sequences(r, s)
    total = 1.0 + 0j
    total += 2.0 / (s + r) * sum(ss.eps[a - 1] * a for a in range(1, s + r + 1))
    total += 2.0 / (s - r) * sum(ss.delta[b - 1] * b for b in range(1, s - r + 1))
    total += (s + r) * _dft_double_sum(s + r, ss.eps_hat, r, s)
    total += (s - r) * _dft_double_sum(s - r, ss.delta_hat, r, s)
    residual = abs(total.imag)
    if residual > IMAG_RESIDUAL_LIMIT:
        raise ImaginaryResidualError(
            f"imaginary residual {residual:.3e} exceeds {IMAG_RESIDUAL_LIMIT:.1e} for (r, s) = ({r}, {s})"
        )
    return NormReport(
        r=r, s=s, N=None, value=total.real, method=METHOD_CLOSED, imag_residual=residual
    )


def area_split(params: KernelParams) -> tuple[float, float]:
    """(A+, A-): areas above and below the axis; A+ - A- = 1, A+ + A- = norm."""
    report = norm_piecewise_exact(params)
    return report.area_plus, report.area_minus


@dataclass(frozen=True)
class DecayReport:
    """Worst case of |V| * N^(1/3) / 4 over the interior window."""

    params: KernelParams
    grid_points: int
    window: tuple[float, float]
    max_abs: float
    ratio: float
    satisfied: bool


def decay_bound_check(params: KernelParams, grid_points: int = 100_000) -> DecayReport:
    """Sample |V| on [N^(-1/3), 1 - N^(-1/3)] and compare against 4 / N^(1/3).

    Needs N >= 8 so the window is nonempty; at N = 8 exactly it degenerates
    to the single midpoint.
    """
    if params.N < 8:
        raise ValueError(f"decay window needs N >= 8, got N={params.N}")
    if grid_points < 2:
        raise ValueError("grid_points must be >= 2")
    w = min(params.N ** (-1.0 / 3.0), 0.5)
    xs = np.linspace(w, 1.0 - w, grid_points)
    max_abs = float(np.abs(eval_vp(params, xs)).max())
    ratio = max_abs * params.N ** (1.0 / 3.0) / 4.0
    return DecayReport(
        params=params,
        grid_points=grid_points,
        window=(w, 1.0 - w),
        max_abs=max_abs,
        ratio=ratio,
        satisfied=bool(ratio <= 1.0),
    )
