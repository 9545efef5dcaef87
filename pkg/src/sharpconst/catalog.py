"""Closed-form sharp constants, explicit eigenvalues and classical bounds.

This module is the authoritative "expected values" side of the package:
admissibility of exponent pairs, the fundamental Dirichlet/Neumann/Steklov
eigenvalues of the shapes with known spectra, the Schmidt interval constant,
the Talenti Sobolev constant, the half-space trace constant, and the
Faber-Krahn / Szego-Weinberger / Payne-Weinberger bounds.

Two Neumann entries of the commonly reprinted eigenvalue table are wrong as
printed and are corrected here (both confirmed by symmetry arguments and by
the finite-element oracle of :mod:`sharpconst.fem2d`):

* disk of radius ``a``: the smallest positive Neumann eigenvalue is
  ``(j'_{1,1}/a)**2`` where ``j'_{1,1} ~ 1.8412`` is the first positive zero
  of J1' (not of J1);
* 30-60-90 triangle with hypotenuse ``a``: halving an equilateral triangle
  along an altitude keeps the symmetric fundamental mode, so the value is
  ``(16/9)(pi/a)**2``, the same as for the equilateral triangle (the often
  printed ``(16/3)(pi/a)**2`` is the *second* positive eigenvalue).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import cache
from typing import NamedTuple, Union

from . import specfun
from .errors import InadmissibleExponents

__all__ = [
    "Context",
    "ExponentSpec",
    "CriticalExponents",
    "critical_exponents",
    "is_admissible",
    "Rectangle",
    "RightIsoTriangle",
    "Right30Triangle",
    "EquilateralTriangle",
    "Disk",
    "Interval",
    "Product",
    "CatalogDomain",
    "PLANAR_VARIANTS",
    "EigenKind",
    "Steklov",
    "SteklovSelector",
    "lambda1",
    "steklov_lambda1_triangle",
    "sharp_constant_quadratic",
    "schmidt_constant",
    "one_d_poincare_constant",
    "OneDPoincare",
    "sobolev_constant",
    "trace_sobolev_constant",
    "geometric_bounds",
    "GeometricBounds",
    "product_poincare_upper",
    "sphere_area",
    "holder_conjugate",
]


# ---------------------------------------------------------------------------
# exponents and admissibility

class Context(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    ONE_DIM = "one-dim"


def holder_conjugate(p: float) -> float:
    """p' = p/(p-1), with 1' = infinity."""
    if p == 1.0:
        return math.inf
    return p / (p - 1.0)


@dataclass(frozen=True)
class ExponentSpec:
    """Dimension and exponent pair for one inequality instance.

    ``q = math.inf`` is the explicit marker for the sup-norm case.
    """

    n: int
    p: float
    q: float
    context: Context = Context.INTERIOR

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 1):
            raise InadmissibleExponents(f"dimension must be an integer >= 1, got {self.n!r}")
        if not self.p >= 1.0:
            raise InadmissibleExponents(f"p must satisfy p >= 1, got {self.p!r}")
        if not (self.q >= 1.0):
            raise InadmissibleExponents(f"q must satisfy 1 <= q <= infinity, got {self.q!r}")
        if math.isinf(self.p):
            raise InadmissibleExponents("p must be finite")
        if self.context is Context.BOUNDARY and self.n < 2:
            raise InadmissibleExponents("boundary context needs dimension n >= 2")
        if self.context is Context.ONE_DIM and self.n != 1:
            raise InadmissibleExponents("one-dimensional context needs n = 1")

    @property
    def p_conjugate(self) -> float:
        return holder_conjugate(self.p)


class CriticalExponents(NamedTuple):
    p_star: float  # np/(n-p) for p < n, else inf
    p_dstar: float  # (n-1)p/(n-p) for p < n, else inf
    allows_q_inf: bool  # False exactly when p = n > 1 ("q < inf" regime)


def critical_exponents(spec: ExponentSpec) -> CriticalExponents:
    """Critical interior/trace exponents with infinity markers."""
    n, p = spec.n, spec.p
    if p < n:
        return CriticalExponents(n * p / (n - p), (n - 1) * p / (n - p), True)
    return CriticalExponents(math.inf, math.inf, not (p == n and n > 1))


def is_admissible(spec: ExponentSpec) -> bool:
    """Whether (n, p, q, context) satisfies its admissibility restriction."""
    ce = critical_exponents(spec)
    limit = ce.p_dstar if spec.context is Context.BOUNDARY else ce.p_star
    if math.isinf(limit):
        return ce.allows_q_inf or not math.isinf(spec.q)
    return spec.q <= limit


def require_admissible(spec: ExponentSpec) -> None:
    if is_admissible(spec):
        return
    ce = critical_exponents(spec)
    if spec.context is Context.BOUNDARY:
        if spec.p < spec.n:
            rule = f"q <= (n-1)p/(n-p) = {ce.p_dstar:g} (boundary, 1 <= p < n)"
        else:
            rule = "q < infinity (boundary, p = n)"
    else:
        if spec.p < spec.n:
            rule = f"q <= np/(n-p) = {ce.p_star:g} (interior, 1 <= p < n)"
        else:
            rule = "q < infinity (interior, p = n > 1)"
    raise InadmissibleExponents(
        f"(n={spec.n}, p={spec.p:g}, q={spec.q:g}) violates the restriction {rule}"
    )


# ---------------------------------------------------------------------------
# catalog domains

@dataclass(frozen=True)
class Rectangle:
    a: float
    b: float

    def __post_init__(self):
        _positive(self.a, "a")
        _positive(self.b, "b")

    def dimension(self) -> int:
        return 2

    def measure(self) -> float:
        return self.a * self.b

    def diameter(self) -> float:
        return math.hypot(self.a, self.b)


@dataclass(frozen=True)
class RightIsoTriangle:
    """45-45-90 triangle with leg length ``a`` (legs on the axes)."""

    a: float

    def __post_init__(self):
        _positive(self.a, "a")

    def dimension(self) -> int:
        return 2

    def measure(self) -> float:
        return 0.5 * self.a * self.a

    def diameter(self) -> float:
        return self.a * math.sqrt(2.0)


@dataclass(frozen=True)
class Right30Triangle:
    """30-60-90 triangle with hypotenuse length ``a``."""

    a: float

    def __post_init__(self):
        _positive(self.a, "a")

    def dimension(self) -> int:
        return 2

    def measure(self) -> float:
        return math.sqrt(3.0) * self.a * self.a / 8.0

    def diameter(self) -> float:
        return self.a


@dataclass(frozen=True)
class EquilateralTriangle:
    a: float

    def __post_init__(self):
        _positive(self.a, "a")

    def dimension(self) -> int:
        return 2

    def measure(self) -> float:
        return math.sqrt(3.0) * self.a * self.a / 4.0

    def diameter(self) -> float:
        return self.a


@dataclass(frozen=True)
class Disk:
    a: float  # radius

    def __post_init__(self):
        _positive(self.a, "a")

    def dimension(self) -> int:
        return 2

    def measure(self) -> float:
        return math.pi * self.a * self.a

    def diameter(self) -> float:
        return 2.0 * self.a


@dataclass(frozen=True)
class Interval:
    l: float

    def __post_init__(self):
        _positive(self.l, "l")

    def dimension(self) -> int:
        return 1

    def measure(self) -> float:
        return self.l

    def diameter(self) -> float:
        return self.l


@dataclass(frozen=True)
class Product:
    left: "CatalogDomain"
    right: "CatalogDomain"

    def dimension(self) -> int:
        return self.left.dimension() + self.right.dimension()

    def measure(self) -> float:
        return self.left.measure() * self.right.measure()

    def diameter(self) -> float:
        return math.hypot(self.left.diameter(), self.right.diameter())


CatalogDomain = Union[
    Rectangle, RightIsoTriangle, Right30Triangle, EquilateralTriangle, Disk, Interval, Product
]

PLANAR_VARIANTS = (Rectangle, RightIsoTriangle, Right30Triangle, EquilateralTriangle, Disk)


def _positive(value: float, name: str) -> None:
    if not value > 0.0:
        raise ValueError(f"size parameter {name} must be positive, got {value!r}")


# ---------------------------------------------------------------------------
# eigenvalue kinds

class EigenKind(Enum):
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"
    ROBIN = "robin"


class SteklovSelector(Enum):
    HYPOTENUSE = "hypotenuse"
    ONE_LEG = "one-leg"
    TWO_LEGS = "two-legs"


@dataclass(frozen=True)
class Steklov:
    """Steklov eigenvalue kind; the selector names the spectral boundary
    portion of the right isosceles triangle."""

    selector: SteklovSelector


@cache
def _j01() -> float:
    return specfun.bessel_zero(0, 1)


@cache
def _j11() -> float:
    return specfun.bessel_zero(1, 1)


@cache
def _j1p1() -> float:
    """First positive zero of J1' (via x J1'(x) = x J0(x) - J1(x))."""
    return specfun.find_root(
        lambda x: x * specfun.bessel_j(0, x) - specfun.bessel_j(1, x),
        specfun.Bracket(1.0, 2.5, tol=1e-13),
    )


def lambda1(domain: CatalogDomain, kind: EigenKind) -> float:
    """Smallest (positive, for Neumann) Laplacian eigenvalue of a catalog
    domain, from the closed-form table and the product rules."""
    if kind is EigenKind.DIRICHLET:
        if isinstance(domain, Rectangle):
            return (math.pi / domain.a) ** 2 + (math.pi / domain.b) ** 2
        if isinstance(domain, RightIsoTriangle):
            return 5.0 * (math.pi / domain.a) ** 2
        if isinstance(domain, Right30Triangle):
            return (112.0 / 9.0) * (math.pi / domain.a) ** 2
        if isinstance(domain, EquilateralTriangle):
            return (16.0 / 3.0) * (math.pi / domain.a) ** 2
        if isinstance(domain, Disk):
            return (_j01() / domain.a) ** 2
        if isinstance(domain, Interval):
            return (math.pi / domain.l) ** 2
        if isinstance(domain, Product):
            return lambda1(domain.left, kind) + lambda1(domain.right, kind)
    elif kind is EigenKind.NEUMANN:
        if isinstance(domain, Rectangle):
            return (math.pi / max(domain.a, domain.b)) ** 2
        if isinstance(domain, RightIsoTriangle):
            return (math.pi / domain.a) ** 2
        if isinstance(domain, Right30Triangle):
            # symmetric fundamental mode of the halved equilateral triangle
            return (16.0 / 9.0) * (math.pi / domain.a) ** 2
        if isinstance(domain, EquilateralTriangle):
            return (16.0 / 9.0) * (math.pi / domain.a) ** 2
        if isinstance(domain, Disk):
            return (_j1p1() / domain.a) ** 2
        if isinstance(domain, Interval):
            return (math.pi / domain.l) ** 2
        if isinstance(domain, Product):
            return min(lambda1(domain.left, kind), lambda1(domain.right, kind))
    raise ValueError(f"no closed-form eigenvalue for {domain!r} with kind {kind!r}")


@cache
def _one_leg_root() -> float:
    # smallest positive root of tan z + tanh z = 0, inside (pi/2, pi)
    return specfun.find_root(
        lambda z: math.tan(z) + math.tanh(z),
        specfun.Bracket(0.5 * math.pi + 1e-9, math.pi, tol=1e-13),
    )


@cache
def _two_legs_root() -> float:
    # smallest positive root of tan z * tanh z = 1, inside (0, pi/2)
    return specfun.find_root(
        lambda z: math.tan(z) * math.tanh(z) - 1.0,
        specfun.Bracket(1e-9, 0.5 * math.pi - 1e-9, tol=1e-13),
    )


def steklov_lambda1_triangle(a: float, selector: SteklovSelector) -> float:
    """Smallest positive sloshing (Steklov) eigenvalue of the right
    isosceles triangle with leg ``a``, for the three spectral-boundary
    choices with known closed forms."""
    _positive(a, "a")
    if selector is SteklovSelector.HYPOTENUSE:
        return math.sqrt(2.0) / a
    if selector is SteklovSelector.ONE_LEG:
        z = _one_leg_root()
        return z * math.tanh(z) / a
    if selector is SteklovSelector.TWO_LEGS:
        z = _two_legs_root()
        return 2.0 * z * math.tanh(z) / a
    raise ValueError(f"unknown Steklov selector {selector!r}")


def sharp_constant_quadratic(
    domain: CatalogDomain, kind: Union[EigenKind, Steklov]
) -> float:
    """Sharp constant lambda1**(-1/2) of the p = q = 2 inequality."""
    if isinstance(kind, Steklov):
        if not isinstance(domain, RightIsoTriangle):
            raise ValueError(
                "closed-form Steklov eigenvalues are only catalogued for the "
                "right isosceles triangle"
            )
        lam = steklov_lambda1_triangle(domain.a, kind.selector)
    elif kind in (EigenKind.DIRICHLET, EigenKind.NEUMANN):
        lam = lambda1(domain, kind)
    else:
        raise ValueError(f"no closed-form sharp constant for kind {kind!r}")
    return lam ** -0.5


# ---------------------------------------------------------------------------
# one-dimensional constants

def schmidt_constant(p: float, q: float, l: float = 1.0) -> float:
    """Sharp constant of ||u||_q <= C ||u'||_p on (0, l) with u(0) = u(l) = 0.

    C1(p, q) = F(1/q + 1/p') / (2 F(1/q) F(1/p')) with F(s) = Gamma(s+1)/s^s,
    scaled by l**(1 + 1/q - 1/p).  The p = 1 and q = infinity limits are
    exact through F(0) = 1.
    """
    spec = ExponentSpec(1, p, q, Context.ONE_DIM)
    require_admissible(spec)
    _positive(l, "l")
    inv_q = 0.0 if math.isinf(q) else 1.0 / q
    pc = spec.p_conjugate
    inv_pc = 0.0 if math.isinf(pc) else 1.0 / pc
    c1 = specfun.frak_F(inv_q + inv_pc) / (
        2.0 * specfun.frak_F(inv_q) * specfun.frak_F(inv_pc)
    )
    return c1 * l ** (1.0 + inv_q - 1.0 / p)


class OneDPoincare(NamedTuple):
    value: float
    exact: bool


def one_d_poincare_constant(p: float, q: float) -> OneDPoincare:
    """Sharp constant of the zero-mean inequality on (0, 1).

    For q <= 3p the sharp constant equals the Schmidt constant C1(p, q)
    (exact=True).  For q > 3p no closed form is known; C1(p, q) is then a
    strict lower bound and exact=False.
    """
    value = schmidt_constant(p, q, 1.0)
    return OneDPoincare(value, q <= 3.0 * p)


# ---------------------------------------------------------------------------
# critical-case constants

def sphere_area(k: int) -> float:
    """k-dimensional measure of the unit sphere S^k in R^(k+1)."""
    if k < 0:
        raise ValueError(f"sphere dimension must be >= 0, got {k!r}")
    return 2.0 * math.pi ** ((k + 1) / 2.0) / specfun.gamma((k + 1) / 2.0)


def sobolev_constant(n: int, p: float) -> float:
    """Sharp constant of ||u||_{p*} <= C ||grad u||_p on R^n, 1 <= p < n."""
    if not (isinstance(n, int) and n >= 2):
        raise InadmissibleExponents(f"dimension must be an integer >= 2, got {n!r}")
    if not (1.0 <= p < n):
        raise InadmissibleExponents(f"need 1 <= p < n = {n}, got p = {p!r}")
    omega = sphere_area(n - 1)
    if p == 1.0:
        return omega ** (-1.0 / n) * n ** ((1.0 - n) / n)
    pc = holder_conjugate(p)
    return (
        omega ** (-1.0 / n)
        * n ** (-1.0 / p)
        * ((p - 1.0) / (n - p)) ** (1.0 / pc)
        * specfun.beta(n / p, n / pc + 1.0) ** (-1.0 / n)
    )


def trace_sobolev_constant(n: int, p: float) -> float:
    """Sharp constant of the half-space trace inequality
    ||u(.,0)||_{p**} <= C ||grad u||_p, 1 <= p < n."""
    if not (isinstance(n, int) and n >= 2):
        raise InadmissibleExponents(f"dimension must be an integer >= 2, got {n!r}")
    if not (1.0 <= p < n):
        raise InadmissibleExponents(f"need 1 <= p < n = {n}, got p = {p!r}")
    if p == 1.0:
        return 1.0
    pc = holder_conjugate(p)
    inner = 0.5 * sphere_area(n - 2) * specfun.beta(
        (n - 1) / 2.0, (n - 1) / (2.0 * (p - 1.0))
    )
    return ((p - 1.0) / (n - p)) ** (1.0 / pc) * inner ** (-1.0 / ((n - 1) * pc))


# ---------------------------------------------------------------------------
# planar bounds

class GeometricBounds(NamedTuple):
    fk_lower: float  # Faber-Krahn: lambda1_D of the equal-area disk
    sw_upper: float  # Szego-Weinberger: lambda1_N of the equal-area disk
    pw_lower: float  # Payne-Weinberger: (pi/diam)^2, convex domains


def geometric_bounds(domain: CatalogDomain) -> GeometricBounds:
    """Classical planar eigenvalue bounds for a catalog variant."""
    if not isinstance(domain, PLANAR_VARIANTS):
        raise ValueError(f"geometric bounds need a planar catalog variant, got {domain!r}")
    area = domain.measure()
    return GeometricBounds(
        fk_lower=math.pi * _j01() ** 2 / area,
        sw_upper=math.pi * _j1p1() ** 2 / area,
        pw_lower=(math.pi / domain.diameter()) ** 2,
    )


def product_poincare_upper(c1: float, c2: float) -> float:
    """Upper bound sqrt(2) (C1 + C2) for the sharp Poincare constant of a
    product domain, given the factors' sharp constants (p = q)."""
    if not (c1 > 0.0 and c2 > 0.0):
        raise ValueError(f"factor constants must be positive, got ({c1!r}, {c2!r})")
    return math.sqrt(2.0) * (c1 + c2)
