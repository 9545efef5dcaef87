"""Finite-element oracle: meshes, forms, eigen solves, extrapolation."""

import math

import numpy as np
import pytest

from sharpconst import catalog, fem2d, specfun
from sharpconst.catalog import (
    Disk,
    EigenKind,
    EquilateralTriangle,
    Rectangle,
    Right30Triangle,
    RightIsoTriangle,
    Steklov,
    SteklovSelector,
)
from sharpconst.errors import ConvergenceError
from sharpconst.fem2d import (
    DirichletBC,
    NeumannBC,
    RobinBC,
    SparseSymmetric,
    assemble,
    build_mesh,
    eigen_estimate,
    eigen_smallest,
    eigen_steklov,
    extrapolate,
    refine,
    write_off,
)

POLYGONS = [
    ("square", Rectangle(1.0, 1.0)),
    ("right-iso", RightIsoTriangle(1.0)),
    ("right-30", Right30Triangle(1.0)),
    ("equilateral", EquilateralTriangle(1.0)),
]


class TestBuildMesh:
    def test_square_structured_counts(self):
        mesh = build_mesh(Rectangle(1.0, 1.0), 0.5)
        assert mesh.num_vertices == 9
        assert len(mesh.triangles) == 8
        assert len(mesh.boundary_edges) == 8
        assert mesh.tag_set() == {"bottom", "right", "top", "left"}

    def test_right_iso_four_similar_triangles(self):
        mesh = build_mesh(RightIsoTriangle(1.0), 0.5)
        assert len(mesh.triangles) == 4
        areas = mesh.signed_areas()
        assert np.allclose(areas, areas[0])

    def test_disk_rim_count(self):
        mesh = build_mesh(Disk(1.0), 0.1)
        rim = sum(1 for t in mesh.boundary_tags if t == "rim")
        assert rim == len(mesh.boundary_edges)
        # about 2 pi / h edges on the inscribed polygon
        assert abs(rim - 2 * math.pi / 0.1) <= 0.15 * rim
        assert np.all(mesh.signed_areas() > 0)

    @pytest.mark.parametrize(
        "domain", [d for _, d in POLYGONS] + [Disk(1.0), Rectangle(0.5, 2.0)]
    )
    def test_invariants_and_size(self, domain):
        mesh = build_mesh(domain, 0.2)
        mesh.validate()
        assert mesh.max_edge_length() <= math.sqrt(2.0) * 0.2 * (1 + 1e-12)

    def test_h_too_large(self):
        with pytest.raises(ValueError):
            build_mesh(Rectangle(1.0, 0.2), 0.5)
        with pytest.raises(ValueError):
            build_mesh(Disk(1.0), 1.5)

    def test_non_planar_rejected(self):
        with pytest.raises(ValueError):
            build_mesh(catalog.Interval(1.0), 0.1)


class TestRefine:
    def test_quadruples_triangles(self):
        mesh = build_mesh(Rectangle(1.0, 1.0), 0.5)
        fine = refine(mesh)
        assert len(fine.triangles) == 32
        fine.validate()

    def test_area_preserved_exactly(self):
        mesh = build_mesh(EquilateralTriangle(1.0), 0.25)
        fine = refine(mesh)
        assert fine.signed_areas().sum() == pytest.approx(mesh.signed_areas().sum(), abs=0.0)

    def test_tags_inherited(self):
        mesh = build_mesh(RightIsoTriangle(1.0), 0.5)
        fine = refine(mesh)
        for tag in ("leg1", "leg2", "hypotenuse"):
            assert fine.boundary_tags.count(tag) == 2 * mesh.boundary_tags.count(tag)


class TestAssembly:
    def test_unit_right_triangle_stiffness(self):
        mesh = fem2d.Mesh(
            np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]),
            np.array([[0, 1, 2]]),
            np.array([[0, 1], [1, 2], [2, 0]]),
            ["leg", "hyp", "leg2"],
        )
        forms = assemble(mesh)
        expected = np.array([[1.0, -0.5, -0.5], [-0.5, 0.5, 0.0], [-0.5, 0.0, 0.5]])
        assert np.allclose(forms.K.dense(), expected, atol=1e-14)

    def test_mass_pattern_random_triangle(self):
        rng = np.random.default_rng(12)
        pts = rng.uniform(-2, 2, (3, 2))
        d1, d2 = pts[1] - pts[0], pts[2] - pts[0]
        area = 0.5 * (d1[0] * d2[1] - d1[1] * d2[0])
        if area < 0:
            pts[[1, 2]] = pts[[2, 1]]
            area = -area
        mesh = fem2d.Mesh(
            pts, np.array([[0, 1, 2]]), np.array([[0, 1], [1, 2], [2, 0]]), ["a", "b", "c"]
        )
        forms = assemble(mesh)
        pattern = np.array([[2.0, 1.0, 1.0], [1.0, 2.0, 1.0], [1.0, 1.0, 2.0]])
        assert np.allclose(forms.M.dense(), area / 12.0 * pattern, rtol=1e-13)

    def test_boundary_edge_mass(self):
        mesh = build_mesh(Rectangle(2.0, 1.0), 1.0)  # bottom edges have length 1
        forms = assemble(mesh, ("bottom",))
        b = forms.B.dense()
        # each bottom edge contributes (L/6) [[2,1],[1,2]] with L = 1
        corner = 0  # vertex (0, 0) sits on exactly one bottom edge
        assert b[corner, corner] == pytest.approx(1.0 / 3.0, rel=1e-13)
        assert b.sum() == pytest.approx(2.0, rel=1e-13)  # total length of the tagged part

    def test_stiffness_kernel_and_mass_positivity(self):
        mesh = build_mesh(EquilateralTriangle(1.0), 0.2)
        forms = assemble(mesh)
        ones = np.ones(mesh.num_vertices)
        assert np.linalg.norm(forms.K.to_csr() @ ones) <= 1e-12
        rng = np.random.default_rng(23)
        for _ in range(10):
            v = rng.standard_normal(mesh.num_vertices)
            assert v @ (forms.M.to_csr() @ v) > 0.0

    def test_unknown_tag(self):
        mesh = build_mesh(Rectangle(1.0, 1.0), 0.5)
        with pytest.raises(ValueError, match="unknown boundary tag"):
            assemble(mesh, ("nonsense",))


class TestEigenSmallest:
    def test_dense_two_by_two(self):
        K = SparseSymmetric.from_triplets(
            2, np.array([0, 0, 1, 1]), np.array([0, 1, 0, 1]), np.array([2.0, -1.0, -1.0, 2.0])
        )
        M = SparseSymmetric.from_triplets(2, np.array([0, 1]), np.array([0, 1]), np.ones(2))
        sample = eigen_smallest(K, M, DirichletBC(np.array([], dtype=int)))
        assert sample.value == pytest.approx(1.0, abs=1e-12)
        assert sample.residual <= 1e-10

    def test_square_dirichlet_sequence(self):
        est = eigen_estimate(Rectangle(1.0, 1.0), EigenKind.DIRICHLET, (0.2, 0.1, 0.05))
        exact = 2.0 * math.pi**2
        assert est.extrapolated == pytest.approx(exact, rel=5e-3)
        assert 1.5 < est.observed_order < 2.5
        assert est.residual <= 1e-9

    def test_disk_robin_matches_separation_of_variables(self):
        # f(k) = J0(k) - k J1(k) = 0 gives the exact Robin eigenvalue k^2
        k = specfun.find_root(
            lambda t: specfun.bessel_j(0, t) - t * specfun.bessel_j(1, t),
            specfun.Bracket(1.0, 1.6, tol=1e-13),
        )
        est = eigen_estimate(Disk(1.0), EigenKind.ROBIN, (0.2, 0.1, 0.05))
        assert est.extrapolated == pytest.approx(k * k, rel=1e-2)

    def test_residual_contract(self):
        mesh = build_mesh(Rectangle(1.0, 1.0), 0.2)
        forms = assemble(mesh)
        sample = eigen_smallest(forms.K, forms.M, NeumannBC(), tol=1e-10)
        K = forms.K.to_csr()
        M = forms.M.to_csr()
        res = np.linalg.norm(K @ sample.vector - sample.value * (M @ sample.vector))
        assert res <= 1e-10

    def test_robin_exceeds_neumann(self):
        mesh = build_mesh(Rectangle(1.0, 1.0), 0.2)
        forms = assemble(mesh, tuple(sorted(mesh.tag_set())))
        robin = eigen_smallest(forms.K, forms.M, RobinBC(forms.B))
        assert robin.value > 0.0


class TestEigenSteklov:
    @pytest.mark.parametrize(
        "selector",
        [SteklovSelector.HYPOTENUSE, SteklovSelector.ONE_LEG, SteklovSelector.TWO_LEGS],
    )
    def test_triangle_rows(self, selector):
        est = eigen_estimate(
            RightIsoTriangle(1.0), Steklov(selector), (0.1, 0.05), tol=1e-9
        )
        exact = catalog.steklov_lambda1_triangle(1.0, selector)
        assert est.samples[-1][1] == pytest.approx(exact, rel=1e-2)
        # conforming discretisation overestimates
        assert all(lam >= exact - 1e-9 for _, lam in est.samples)

    def test_empty_boundary_rejected(self):
        mesh = build_mesh(RightIsoTriangle(1.0), 0.25)
        forms = assemble(mesh, ("hypotenuse",))
        zero_b = SparseSymmetric.from_triplets(
            mesh.num_vertices, np.array([0]), np.array([0]), np.array([0.0])
        )
        with pytest.raises(ValueError):
            eigen_steklov(forms.K, zero_b)


class TestExtrapolate:
    def test_synthetic_exact(self):
        samples = [(h, 5.0 + 3.0 * h**2) for h in (0.4, 0.2, 0.1)]
        fit = extrapolate(samples)
        assert fit.extrapolated == pytest.approx(5.0, abs=1e-12)
        assert fit.observed_order == pytest.approx(2.0, abs=1e-10)

    def test_non_uniform_ratio(self):
        samples = [(h, 7.0 + 2.0 * h**2) for h in (0.4, 0.22, 0.1)]
        fit = extrapolate(samples)
        assert fit.extrapolated == pytest.approx(7.0, abs=1e-10)
        assert fit.observed_order == pytest.approx(2.0, abs=1e-8)

    def test_too_few_samples(self):
        with pytest.raises(ValueError):
            extrapolate([(0.2, 1.0), (0.1, 0.9)])

    def test_degenerate_rejected(self):
        with pytest.raises(ValueError):
            extrapolate([(0.4, 5.0), (0.2, 5.0), (0.1, 5.0)])

    def test_non_monotone_rejected(self):
        with pytest.raises(ValueError):
            extrapolate([(0.4, 5.0), (0.2, 5.5), (0.1, 5.2)])


class TestConformityBounds:
    @pytest.mark.parametrize("name,domain", POLYGONS)
    @pytest.mark.parametrize("kind", [EigenKind.DIRICHLET, EigenKind.NEUMANN])
    def test_one_sided_bound(self, name, domain, kind):
        exact = catalog.lambda1(domain, kind)
        est = eigen_estimate(domain, kind, (0.25, 0.125))
        for _, lam in est.samples:
            assert lam >= exact - 1e-9 * max(1.0, exact)

    def test_non_increasing_under_refine(self):
        mesh = build_mesh(RightIsoTriangle(1.0), 0.25)
        values = []
        for _ in range(3):
            forms = assemble(mesh)
            sample = eigen_smallest(forms.K, forms.M, DirichletBC.from_tags(mesh))
            values.append(sample.value)
            mesh = refine(mesh)
        assert all(b <= a + 1e-9 for a, b in zip(values, values[1:]))


def test_write_off(tmp_path):
    mesh = build_mesh(Rectangle(1.0, 1.0), 0.5)
    path = tmp_path / "mesh.off"
    write_off(mesh, str(path))
    lines = path.read_text().splitlines()
    assert lines[0] == "OFF"
    nv, nf, _ = map(int, lines[1].split())
    assert nv == mesh.num_vertices
    assert nf == len(mesh.triangles)
    assert len(lines) == 2 + nv + nf
