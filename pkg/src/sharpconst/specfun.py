"""Scalar special-function kernel and bracketed root finding.

Everything in this module is pure, deterministic and dependency-free:

* ``gamma``/``beta`` via a fixed-coefficient Lanczos approximation,
* ``frak_F(s) = Gamma(s+1) / s**s`` with its continuity limit at ``s = 0``,
* ``bessel_j`` for orders 0 and 1 (power series for small argument,
  normalised backward recurrence for large argument),
* ``bessel_zero`` for the positive zeros of J0 and J1,
* ``find_root``, a bisection/secant hybrid on a sign-changing bracket.

Accuracy targets: gamma relative error <= 1e-12 on [0.1, 50], Bessel
absolute error <= 1e-12 for x <= 30, Bessel zeros to 1e-10.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import ConvergenceError

__all__ = [
    "Bracket",
    "gamma",
    "beta",
    "frak_F",
    "bessel_j",
    "bessel_zero",
    "find_root",
]

# Lanczos coefficients for g = 7, 9 terms (Godfrey's tabulation).  Good for
# a relative error around 1e-14 on the positive real axis.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)

# Switch point between the power series and the backward-recurrence branch.
_BESSEL_SERIES_CUTOFF = 12.0


def _lgamma(x: float) -> float:
    """log Gamma(x) for x > 0 via Lanczos; recurrence below x = 0.5."""
    if x < 0.5:
        # Gamma(x) = Gamma(x + 1) / x keeps the Lanczos sum well conditioned.
        return _lgamma(x + 1.0) - math.log(x)
    acc = _LANCZOS[0]
    for k in range(1, len(_LANCZOS)):
        acc += _LANCZOS[k] / (x - 1.0 + k)
    t = x + _LANCZOS_G - 0.5
    return _LOG_SQRT_2PI + (x - 0.5) * math.log(t) - t + math.log(acc)


def gamma(x: float) -> float:
    """Euler Gamma function for real x > 0."""
    if not x > 0.0 or math.isnan(x) or math.isinf(x):
        raise ValueError(f"gamma requires a finite x > 0, got {x!r}")
    return math.exp(_lgamma(x))


def beta(a: float, b: float) -> float:
    """Euler Beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b)."""
    if not (a > 0.0 and b > 0.0):
        raise ValueError(f"beta requires a, b > 0, got ({a!r}, {b!r})")
    return math.exp(_lgamma(a) + _lgamma(b) - _lgamma(a + b))


def frak_F(s: float) -> float:
    """Gamma(s + 1) / s**s for s >= 0; the s -> 0 limit is 1."""
    if s < 0.0 or math.isnan(s):
        raise ValueError(f"frak_F requires s >= 0, got {s!r}")
    if s == 0.0:
        return 1.0
    return math.exp(_lgamma(s + 1.0) - s * math.log(s))


def _bessel_series(order: int, x: float) -> float:
    # J_v(x) = (x/2)^v sum_m (-x^2/4)^m / (m! (m+v)!), fine up to x ~ 12
    # where cancellation still leaves ~1e-13 absolute accuracy.
    half = 0.5 * x
    term = half if order == 1 else 1.0
    total = term
    m = 1
    z = -half * half
    while m < 80:
        term *= z / (m * (m + order))
        total += term
        if abs(term) < 1e-18 * (1.0 + abs(total)):
            break
        m += 1
    return total


def _bessel_backward(order: int, x: float) -> float:
    # Miller's backward recurrence normalised with J0 + 2 J2 + 2 J4 + ... = 1.
    # Accurate to near machine precision for moderate and large x.
    m_start = int(x + 16.0 + 3.0 * math.sqrt(x))
    if m_start % 2:
        m_start += 1
    jp = 0.0  # J_{m+1}
    jc = 1e-30  # J_m (arbitrary seed; normalisation removes it)
    norm = 0.0
    j1 = 0.0
    for m in range(m_start, 0, -1):
        jm = (2.0 * m / x) * jc - jp  # J_{m-1}
        jp, jc = jc, jm
        if m - 1 == 1:
            j1 = jc
        if (m - 1) % 2 == 0 and m - 1 > 0:
            norm += 2.0 * jc
        if abs(jc) > 1e250:
            jp *= 1e-250
            jc *= 1e-250
            norm *= 1e-250
            j1 *= 1e-250
    j0 = jc
    norm += j0
    return (j0 if order == 0 else j1) / norm


def bessel_j(order: int, x: float) -> float:
    """Bessel function of the first kind, order 0 or 1, for x >= 0."""
    if order not in (0, 1):
        raise ValueError(f"unsupported Bessel order {order!r} (only 0 and 1)")
    if x < 0.0 or math.isnan(x):
        raise ValueError(f"bessel_j requires x >= 0, got {x!r}")
    if x == 0.0:
        return 1.0 if order == 0 else 0.0
    if x <= _BESSEL_SERIES_CUTOFF:
        return _bessel_series(order, x)
    return _bessel_backward(order, x)


@dataclass(frozen=True)
class Bracket:
    """Sign-changing interval [lo, hi] with an absolute x-tolerance."""

    lo: float
    hi: float
    tol: float = 1e-12

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")
        if not self.tol > 0.0:
            raise ValueError(f"bracket tolerance must be positive, got {self.tol}")


def find_root(f: Callable[[float], float], bracket: Bracket, max_iter: int = 200) -> float:
    """Root of ``f`` inside ``bracket`` by bisection with secant acceleration.

    Deterministic: a secant candidate is used when it falls safely inside the
    current interval and made at least every other step a plain bisection, so
    the interval provably shrinks.  Raises ``ValueError`` when the bracket
    does not change sign and ``ConvergenceError`` when the iteration budget
    is exhausted.
    """
    a, b, tol = bracket.lo, bracket.hi, bracket.tol
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa > 0.0) == (fb > 0.0):
        raise ValueError(f"no sign change on bracket [{a}, {b}]")

    best_x, best_f = (a, fa) if abs(fa) < abs(fb) else (b, fb)
    bisect_next = False
    for _ in range(max_iter):
        width = b - a
        if width <= tol:
            return best_x
        x = None
        if not bisect_next and fb != fa:
            x = b - fb * (b - a) / (fb - fa)
            margin = 0.01 * width
            if not (a + margin < x < b - margin):
                x = None
        if x is None:
            x = a + 0.5 * width
            bisect_next = False
        else:
            bisect_next = True  # alternate to guarantee interval shrinkage
        fx = f(x)
        if abs(fx) < abs(best_f):
            best_x, best_f = x, fx
        if fx == 0.0:
            return x
        if (fx > 0.0) == (fa > 0.0):
            a, fa = x, fx
        else:
            b, fb = x, fx
    raise ConvergenceError(
        f"find_root: no convergence to tol={tol} within {max_iter} iterations"
    )


def bessel_zero(order: int, k: int) -> float:
    """k-th positive zero of J0 or J1, absolute error below 1e-10."""
    if order not in (0, 1):
        raise ValueError(f"unsupported Bessel order {order!r} (only 0 and 1)")
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"zero index must be a positive integer, got {k!r}")
    # McMahon's expansion gives a guess well within +-0.5 (zeros are >= pi
    # apart) and the sign of J alternates between consecutive zeros.
    b0 = (k - 0.25 + 0.5 * order) * math.pi
    mu = 4.0 * order * order
    guess = b0 - (mu - 1.0) / (8.0 * b0)
    half_width = 0.5
    for _ in range(4):
        lo = max(guess - half_width, 1e-6)
        hi = guess + half_width
        if bessel_j(order, lo) * bessel_j(order, hi) < 0.0:
            return find_root(
                lambda t: bessel_j(order, t), Bracket(lo, hi, tol=1e-12)
            )
        half_width *= 1.5
    raise ConvergenceError(f"could not bracket zero {k} of J{order}")
