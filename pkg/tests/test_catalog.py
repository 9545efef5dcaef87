"""Closed-form catalog: admissibility, eigenvalue table, constants, bounds.

Reference digits were frozen from a 40-digit mpmath evaluation of the same
closed forms (independent gamma/Bessel implementations).
"""

import math

import numpy as np
import pytest

from sharpconst import catalog
from sharpconst.catalog import (
    Context,
    Disk,
    EigenKind,
    EquilateralTriangle,
    ExponentSpec,
    Interval,
    Product,
    Rectangle,
    Right30Triangle,
    RightIsoTriangle,
    Steklov,
    SteklovSelector,
    critical_exponents,
    geometric_bounds,
    is_admissible,
    lambda1,
    one_d_poincare_constant,
    product_poincare_upper,
    schmidt_constant,
    sharp_constant_quadratic,
    sobolev_constant,
    sphere_area,
    steklov_lambda1_triangle,
    trace_sobolev_constant,
)
from sharpconst.errors import InadmissibleExponents

# frozen mpmath references
J0_ZERO_1 = 2.4048255576957727686
J1P_ZERO_1 = 1.8411837813406593026  # first positive zero of J1'
C1_REFERENCE = {
    (1.5, 1.0): 0.31498026247371829,
    (1.5, 4.5): 0.37542388394721666,
    (2.0, 4.0): 0.35491397112117784,
    (2.0, 10.0): 0.40437161177449853,
    (3.0, 2.0): 0.30493654096359172,
    (3.0, 9.0): 0.39354769525347705,
}
C2_REFERENCE = {(3, 2.0): 0.42726054286252666, (4, 2.0): 0.31218920569777795, (3, 1.5): 0.26053088059892401}
C3_REFERENCE = {(3, 2.0): 0.75112554446494248, (2, 1.5): 0.79370052598409974}

ALL_PLANAR = [
    Rectangle(1.0, 1.0),
    Rectangle(1.0, 2.0),
    RightIsoTriangle(1.0),
    Right30Triangle(1.0),
    EquilateralTriangle(1.0),
    Disk(1.0),
]


class TestExponents:
    def test_critical_exponents(self):
        ce = critical_exponents(ExponentSpec(3, 2.0, 2.0))
        assert ce.p_star == pytest.approx(6.0)
        assert ce.p_dstar == pytest.approx(4.0)
        ce = critical_exponents(ExponentSpec(2, 1.0, 1.0))
        assert (ce.p_star, ce.p_dstar) == (2.0, 1.0)

    def test_p_equals_n_markers(self):
        ce = critical_exponents(ExponentSpec(2, 2.0, 2.0))
        assert math.isinf(ce.p_star) and math.isinf(ce.p_dstar)
        assert not ce.allows_q_inf  # the q < infinity regime

    def test_one_dim_allows_everything(self):
        ce = critical_exponents(ExponentSpec(1, 1.0, 1.0, Context.ONE_DIM))
        assert ce.allows_q_inf

    @pytest.mark.parametrize(
        "spec,expected",
        [
            (ExponentSpec(3, 2.0, 6.0), True),
            (ExponentSpec(3, 2.0, 6.5), False),
            (ExponentSpec(3, 2.0, 4.0, Context.BOUNDARY), True),
            (ExponentSpec(3, 2.0, 4.5, Context.BOUNDARY), False),
            (ExponentSpec(2, 2.0, 1e6), True),
            (ExponentSpec(2, 2.0, math.inf), False),
            (ExponentSpec(2, 3.0, math.inf), True),
            (ExponentSpec(1, 1.0, math.inf, Context.ONE_DIM), True),
        ],
    )
    def test_is_admissible(self, spec, expected):
        assert is_admissible(spec) is expected

    def test_conjugate(self):
        assert ExponentSpec(2, 2.0, 2.0).p_conjugate == 2.0
        assert math.isinf(ExponentSpec(2, 1.0, 2.0).p_conjugate)

    def test_invalid_specs(self):
        with pytest.raises(InadmissibleExponents):
            ExponentSpec(3, 0.5, 2.0)
        with pytest.raises(InadmissibleExponents):
            ExponentSpec(3, 2.0, -1.0)
        with pytest.raises(InadmissibleExponents):
            ExponentSpec(1, 2.0, 2.0, Context.BOUNDARY)
        with pytest.raises(InadmissibleExponents):
            ExponentSpec(2, 2.0, 2.0, Context.ONE_DIM)


class TestEigenvalueTable:
    def test_square_dirichlet(self):
        assert lambda1(Rectangle(1.0, 1.0), EigenKind.DIRICHLET) == pytest.approx(2.0 * math.pi**2, rel=1e-14)

    def test_rectangle_neumann_uses_long_side(self):
        assert lambda1(Rectangle(1.0, 2.0), EigenKind.NEUMANN) == pytest.approx((math.pi / 2.0) ** 2, rel=1e-14)

    def test_triangles(self):
        pi2 = math.pi**2
        assert lambda1(RightIsoTriangle(1.0), EigenKind.DIRICHLET) == pytest.approx(5 * pi2, rel=1e-14)
        assert lambda1(RightIsoTriangle(1.0), EigenKind.NEUMANN) == pytest.approx(pi2, rel=1e-14)
        assert lambda1(Right30Triangle(1.0), EigenKind.DIRICHLET) == pytest.approx(112 / 9 * pi2, rel=1e-14)
        assert lambda1(EquilateralTriangle(1.0), EigenKind.DIRICHLET) == pytest.approx(16 / 3 * pi2, rel=1e-14)
        assert lambda1(EquilateralTriangle(1.0), EigenKind.NEUMANN) == pytest.approx(16 / 9 * pi2, rel=1e-14)

    def test_halved_equilateral_neumann_keeps_symmetric_mode(self):
        # cutting the equilateral triangle along an altitude preserves the
        # symmetric fundamental mode, so both shapes share lambda1_N
        assert lambda1(Right30Triangle(1.0), EigenKind.NEUMANN) == lambda1(
            EquilateralTriangle(1.0), EigenKind.NEUMANN
        )

    def test_disk(self):
        assert lambda1(Disk(1.0), EigenKind.DIRICHLET) == pytest.approx(J0_ZERO_1**2, rel=1e-12)
        # smallest positive Neumann eigenvalue comes from the first zero of J1'
        assert lambda1(Disk(1.0), EigenKind.NEUMANN) == pytest.approx(J1P_ZERO_1**2, rel=1e-12)

    def test_interval(self):
        assert lambda1(Interval(2.0), EigenKind.DIRICHLET) == pytest.approx((math.pi / 2) ** 2, rel=1e-14)
        assert lambda1(Interval(2.0), EigenKind.NEUMANN) == pytest.approx((math.pi / 2) ** 2, rel=1e-14)

    def test_product_rules_match_rectangle_exactly(self):
        prod = Product(Interval(1.0), Interval(2.0))
        rect = Rectangle(1.0, 2.0)
        assert lambda1(prod, EigenKind.DIRICHLET) == lambda1(rect, EigenKind.DIRICHLET)
        assert lambda1(prod, EigenKind.NEUMANN) == lambda1(rect, EigenKind.NEUMANN)

    def test_dirichlet_monotone_in_size(self):
        sizes = np.linspace(0.5, 3.0, 8)
        for b in (0.7, 1.0, 2.5):
            vals = [lambda1(Rectangle(float(a), b), EigenKind.DIRICHLET) for a in sizes]
            assert all(v2 < v1 for v1, v2 in zip(vals, vals[1:]))

    def test_unsupported(self):
        with pytest.raises(ValueError):
            lambda1(Rectangle(1.0, 1.0), EigenKind.ROBIN)

    def test_positive_sizes_required(self):
        with pytest.raises(ValueError):
            Rectangle(0.0, 1.0)
        with pytest.raises(ValueError):
            Disk(-2.0)


class TestSteklovTriangle:
    @pytest.mark.parametrize(
        "selector,printed",
        [
            (SteklovSelector.HYPOTENUSE, 1.4142),
            (SteklovSelector.ONE_LEG, 2.3236),
            (SteklovSelector.TWO_LEGS, 1.3765),
        ],
    )
    def test_printed_digits(self, selector, printed):
        assert abs(steklov_lambda1_triangle(1.0, selector) - printed) <= 5e-5

    def test_hypotenuse_exact(self):
        assert steklov_lambda1_triangle(2.0, SteklovSelector.HYPOTENUSE) == pytest.approx(
            math.sqrt(2.0) / 2.0, rel=1e-14
        )

    def test_scaling(self):
        for sel in SteklovSelector:
            assert steklov_lambda1_triangle(2.0, sel) == pytest.approx(
                steklov_lambda1_triangle(1.0, sel) / 2.0, rel=1e-13
            )


class TestQuadraticConstant:
    def test_square(self):
        assert sharp_constant_quadratic(Rectangle(1.0, 1.0), EigenKind.DIRICHLET) == pytest.approx(
            (2 * math.pi**2) ** -0.5, rel=1e-14
        )

    def test_interval_is_l_over_pi(self):
        assert sharp_constant_quadratic(Interval(3.0), EigenKind.DIRICHLET) == pytest.approx(
            3.0 / math.pi, rel=1e-14
        )

    def test_steklov_hypotenuse(self):
        c = sharp_constant_quadratic(RightIsoTriangle(1.0), Steklov(SteklovSelector.HYPOTENUSE))
        assert c == pytest.approx(2.0 ** -0.25, rel=1e-13)

    def test_inverts_eigenvalue(self):
        for domain in ALL_PLANAR:
            for kind in (EigenKind.DIRICHLET, EigenKind.NEUMANN):
                c = sharp_constant_quadratic(domain, kind)
                assert c * c * lambda1(domain, kind) == pytest.approx(1.0, rel=1e-14)

    def test_steklov_needs_right_iso_triangle(self):
        with pytest.raises(ValueError):
            sharp_constant_quadratic(Rectangle(1.0, 1.0), Steklov(SteklovSelector.HYPOTENUSE))


class TestSchmidtConstant:
    def test_quadratic_case(self):
        assert schmidt_constant(2.0, 2.0) == pytest.approx(1.0 / math.pi, rel=1e-13)
        assert schmidt_constant(2.0, 2.0, 2.5) == pytest.approx(2.5 / math.pi, rel=1e-13)

    def test_limits(self):
        assert schmidt_constant(1.0, 1.0) == pytest.approx(0.5, rel=1e-13)
        assert schmidt_constant(2.0, math.inf) == pytest.approx(0.5, rel=1e-13)

    @pytest.mark.parametrize("pq,expected", sorted(C1_REFERENCE.items()))
    def test_reference_grid(self, pq, expected):
        assert schmidt_constant(*pq) == pytest.approx(expected, rel=1e-12)

    def test_duality(self):
        # C1(p, q) = C1(q', p') with Hoelder conjugation
        rng = np.random.default_rng(11)
        for _ in range(40):
            p = float(rng.uniform(1.05, 6.0))
            q = float(rng.uniform(1.05, 6.0))
            dual = schmidt_constant(catalog.holder_conjugate(q), catalog.holder_conjugate(p))
            assert schmidt_constant(p, q) == pytest.approx(dual, rel=1e-12)

    def test_scaling_law_exact(self):
        for p, q, l in ((2.0, 2.0, 3.0), (1.5, 3.0, 0.25), (3.0, 1.0, 7.0)):
            expected = schmidt_constant(p, q) * l ** (1.0 + 1.0 / q - 1.0 / p)
            assert schmidt_constant(p, q, l) == pytest.approx(expected, rel=1e-14)

    def test_inadmissible(self):
        with pytest.raises(InadmissibleExponents):
            schmidt_constant(0.5, 2.0)
        with pytest.raises(InadmissibleExponents):
            schmidt_constant(2.0, -1.0)


class TestOneDPoincare:
    def test_quadratic(self):
        value, exact = one_d_poincare_constant(2.0, 2.0)
        assert value == pytest.approx(1.0 / math.pi, rel=1e-13)
        assert exact

    def test_boundary_of_sharp_regime(self):
        value, exact = one_d_poincare_constant(2.0, 6.0)
        assert exact
        assert value == pytest.approx(schmidt_constant(2.0, 6.0), rel=1e-14)

    def test_beyond_sharp_regime_is_lower_bound_only(self):
        value, exact = one_d_poincare_constant(2.0, 10.0)
        assert not exact
        assert value == pytest.approx(schmidt_constant(2.0, 10.0), rel=1e-14)


class TestSobolevConstant:
    def test_p1_plane(self):
        assert sobolev_constant(2, 1.0) == pytest.approx(1.0 / (2.0 * math.sqrt(math.pi)), rel=1e-14)

    @pytest.mark.parametrize("np_,expected", sorted(C2_REFERENCE.items()))
    def test_reference(self, np_, expected):
        assert sobolev_constant(*np_) == pytest.approx(expected, rel=1e-12)

    def test_closed_form_simplification(self):
        assert sobolev_constant(3, 2.0) == pytest.approx((4.0 / math.pi**2) ** (1 / 3) / math.sqrt(3.0), rel=1e-13)

    def test_domain(self):
        with pytest.raises(InadmissibleExponents):
            sobolev_constant(3, 3.0)
        with pytest.raises(InadmissibleExponents):
            sobolev_constant(1, 1.0)


class TestTraceConstant:
    def test_p1_is_one(self):
        assert trace_sobolev_constant(3, 1.0) == 1.0
        assert trace_sobolev_constant(5, 1.0) == 1.0

    @pytest.mark.parametrize("np_,expected", sorted(C3_REFERENCE.items()))
    def test_reference(self, np_, expected):
        assert trace_sobolev_constant(*np_) == pytest.approx(expected, rel=1e-12)

    def test_closed_form_values(self):
        assert trace_sobolev_constant(3, 2.0) == pytest.approx(math.pi**-0.25, rel=1e-13)
        assert trace_sobolev_constant(2, 1.5) == pytest.approx(2.0 ** (-1.0 / 3.0), rel=1e-13)

    def test_domain(self):
        with pytest.raises(InadmissibleExponents):
            trace_sobolev_constant(3, 3.5)


class TestGeometricBounds:
    def test_square_values(self):
        gb = geometric_bounds(Rectangle(1.0, 1.0))
        assert gb.fk_lower == pytest.approx(math.pi * J0_ZERO_1**2, rel=1e-12)
        assert gb.pw_lower == pytest.approx(math.pi**2 / 2.0, rel=1e-14)

    @pytest.mark.parametrize("size", [0.5, 1.0, 2.0])
    def test_bounds_hold_for_all_variants(self, size):
        domains = [
            Rectangle(size, size),
            Rectangle(size, 1.5 * size),
            RightIsoTriangle(size),
            Right30Triangle(size),
            EquilateralTriangle(size),
            Disk(size),
        ]
        for domain in domains:
            gb = geometric_bounds(domain)
            lam_d = lambda1(domain, EigenKind.DIRICHLET)
            lam_n = lambda1(domain, EigenKind.NEUMANN)
            assert lam_d >= gb.fk_lower * (1 - 1e-12)
            assert lam_n <= gb.sw_upper * (1 + 1e-12)
            assert lam_n > gb.pw_lower

    def test_disk_attains_both(self):
        gb = geometric_bounds(Disk(1.5))
        assert gb.fk_lower == pytest.approx(lambda1(Disk(1.5), EigenKind.DIRICHLET), rel=1e-12)
        assert gb.sw_upper == pytest.approx(lambda1(Disk(1.5), EigenKind.NEUMANN), rel=1e-12)

    def test_planar_only(self):
        with pytest.raises(ValueError):
            geometric_bounds(Interval(1.0))


class TestProductUpperBound:
    def test_value(self):
        assert product_poincare_upper(1 / math.pi, 1 / math.pi) == pytest.approx(
            2.0 * math.sqrt(2.0) / math.pi, rel=1e-14
        )

    def test_dominates_square_constant(self):
        c = sharp_constant_quadratic(Interval(1.0), EigenKind.NEUMANN)
        true_c = sharp_constant_quadratic(Rectangle(1.0, 1.0), EigenKind.NEUMANN)
        assert true_c <= product_poincare_upper(c, c)

    def test_rejects_degenerate(self):
        with pytest.raises(ValueError):
            product_poincare_upper(0.0, 1.0)


class TestGeometry:
    def test_sphere_area(self):
        assert sphere_area(0) == pytest.approx(2.0, rel=1e-14)
        assert sphere_area(1) == pytest.approx(2.0 * math.pi, rel=1e-14)
        assert sphere_area(2) == pytest.approx(4.0 * math.pi, rel=1e-13)

    def test_product_geometry(self):
        prod = Product(Interval(3.0), Rectangle(1.0, 2.0))
        assert prod.dimension() == 3
        assert prod.measure() == pytest.approx(6.0)
        assert prod.diameter() == pytest.approx(math.sqrt(9.0 + 5.0), rel=1e-14)
