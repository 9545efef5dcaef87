"""P1 finite-element oracle for the quadratic (p = q = 2) case.

Conforming triangulations of the planar catalog shapes, assembly of the
stiffness / consistent-mass / boundary-mass forms, deterministic inverse
iteration for the smallest eigenvalue under Dirichlet, Neumann, Robin and
mixed Steklov conditions, and Richardson extrapolation over a mesh
sequence.

Because the P1 space is conforming and the mass matrices are consistent,
every discrete eigenvalue of a polygonal domain is an upper bound for the
continuous one; that one-sided bound is part of the test contract.  The
disk is meshed as an inscribed polygon, so its values carry an additional
geometric error term and only a two-sided tolerance applies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from . import _kernels, catalog
from .errors import ConvergenceError
from .specfun import Bracket, find_root

__all__ = [
    "Mesh",
    "SparseSymmetric",
    "Forms",
    "DirichletBC",
    "NeumannBC",
    "RobinBC",
    "EigenSample",
    "EigenEstimate",
    "Extrapolation",
    "build_mesh",
    "refine",
    "assemble",
    "dirichlet_indices",
    "eigen_smallest",
    "eigen_steklov",
    "extrapolate",
    "eigen_estimate",
    "steklov_tags",
    "write_off",
    "DEFAULT_SEED",
]

DEFAULT_SEED = 20140109

# block width of the subspace inverse iteration (resolves eigenvalue clusters)
_BLOCK = 4

# geometric tag assignment tolerance (catalog shapes have exact coordinates)
_GEO_TOL = 1e-12

# direct sparse factorisation below this many unknowns, conjugate gradient above
_DIRECT_SOLVER_MAX = 200_000


# ---------------------------------------------------------------------------
# mesh

@dataclass
class Mesh:
    """Conforming triangulation with tagged boundary edges.

    vertices: (nv, 2) float64; triangles: (nt, 3) int64 (counterclockwise);
    boundary_edges: (ne, 2) int64 vertex pairs; boundary_tags: length-ne list
    of tag strings; h: characteristic size (max edge length).
    """

    vertices: np.ndarray
    triangles: np.ndarray
    boundary_edges: np.ndarray
    boundary_tags: list[str]
    h: float = 0.0

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def tag_set(self) -> set[str]:
        return set(self.boundary_tags)

    def signed_areas(self) -> np.ndarray:
        p0 = self.vertices[self.triangles[:, 0]]
        p1 = self.vertices[self.triangles[:, 1]]
        p2 = self.vertices[self.triangles[:, 2]]
        d1 = p1 - p0
        d2 = p2 - p0
        return 0.5 * (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])

    def max_edge_length(self) -> float:
        p = self.vertices
        t = self.triangles
        lengths = [
            np.hypot(*(p[t[:, i]] - p[t[:, j]]).T) for i, j in ((0, 1), (1, 2), (2, 0))
        ]
        return float(np.max(lengths))

    def validate(self) -> None:
        """Check the mesh invariants; raises ValueError on violation."""
        if np.any(self.signed_areas() <= 0.0):
            raise ValueError("mesh has a non-positively-oriented or degenerate triangle")
        # conformity: interior edges in exactly 2 triangles, boundary in 1
        t = self.triangles
        all_edges = np.concatenate([t[:, [0, 1]], t[:, [1, 2]], t[:, [2, 0]]])
        keys = np.sort(all_edges, axis=1)
        uniq, counts = np.unique(keys, axis=0, return_counts=True)
        if np.any(counts > 2):
            raise ValueError("mesh edge shared by more than two triangles")
        once = uniq[counts == 1]
        declared = np.sort(self.boundary_edges, axis=1)
        if len(once) != len(declared) or not np.array_equal(
            once[np.lexsort(once.T[::-1])], declared[np.lexsort(declared.T[::-1])]
        ):
            raise ValueError("declared boundary edges do not match mesh conformity")
        if len(self.boundary_tags) != len(self.boundary_edges):
            raise ValueError("every boundary edge needs exactly one tag")
        # closed loops: every boundary vertex has exactly two incident edges
        verts, deg = np.unique(self.boundary_edges, return_counts=True)
        if np.any(deg != 2):
            raise ValueError("boundary edges do not form closed loops")


def _tri_lattice(v0, v1, v2, k: int, side_tags: tuple[str, str, str]):
    """Uniform k^2 subdivision of triangle (v0, v1, v2).

    side_tags are the tags for sides v0-v1, v1-v2 (the diagonal), v2-v0.
    """
    v0 = np.asarray(v0, float)
    v1 = np.asarray(v1, float)
    v2 = np.asarray(v2, float)
    index = {}
    pts = []
    for j in range(k + 1):
        for i in range(k + 1 - j):
            index[(i, j)] = len(pts)
            pts.append(v0 + (i / k) * (v1 - v0) + (j / k) * (v2 - v0))
    tris = []
    for j in range(k):
        for i in range(k - j):
            tris.append((index[(i, j)], index[(i + 1, j)], index[(i, j + 1)]))
            if i + j <= k - 2:
                tris.append((index[(i + 1, j)], index[(i + 1, j + 1)], index[(i, j + 1)]))
    edges = []
    tags = []
    for i in range(k):
        edges.append((index[(i, 0)], index[(i + 1, 0)]))
        tags.append(side_tags[0])
    for j in range(k):
        edges.append((index[(k - j, j)], index[(k - j - 1, j + 1)]))
        tags.append(side_tags[1])
    for j in range(k):
        edges.append((index[(0, j + 1)], index[(0, j)]))
        tags.append(side_tags[2])
    return (
        np.array(pts, float),
        np.array(tris, np.int64),
        np.array(edges, np.int64),
        tags,
    )


def _rect_mesh(a: float, b: float, h: float):
    nx = max(1, math.ceil(a / h))
    ny = max(1, math.ceil(b / h))
    xs = np.linspace(0.0, a, nx + 1)
    ys = np.linspace(0.0, b, ny + 1)
    pts = np.array([(x, y) for y in ys for x in xs])
    vid = lambda i, j: j * (nx + 1) + i
    tris = []
    for j in range(ny):
        for i in range(nx):
            tris.append((vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)))
            tris.append((vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)))
    edges = []
    tags = []
    for i in range(nx):
        edges.append((vid(i, 0), vid(i + 1, 0)))
        tags.append("bottom")
    for j in range(ny):
        edges.append((vid(nx, j), vid(nx, j + 1)))
        tags.append("right")
    for i in range(nx):
        edges.append((vid(nx - i, ny), vid(nx - i - 1, ny)))
        tags.append("top")
    for j in range(ny):
        edges.append((vid(0, ny - j), vid(0, ny - j - 1)))
        tags.append("left")
    return pts, np.array(tris, np.int64), np.array(edges, np.int64), tags


def _disk_mesh(a: float, h: float):
    """Inscribed regular polygon with ~2 pi a / h rim edges, meshed by
    concentric hexagonal rings (ring j carries 6j vertices)."""
    nr = max(1, math.ceil(math.pi * a / (3.0 * h)))
    pts = [(0.0, 0.0)]
    rings: list[list[int]] = []
    for j in range(1, nr + 1):
        r = a * j / nr
        ring = []
        count = 6 * j
        for m in range(count):
            th = 2.0 * math.pi * m / count
            ring.append(len(pts))
            pts.append((r * math.cos(th), r * math.sin(th)))
        rings.append(ring)
    tris = []
    for j in range(1, nr + 1):
        outer = rings[j - 1]
        if j == 1:
            for s in range(6):
                tris.append((0, outer[s], outer[(s + 1) % 6]))
            continue
        inner = rings[j - 2]
        n1, n2 = 6 * (j - 1), 6 * j
        for s in range(6):
            inn = [inner[(s * (j - 1) + t) % n1] for t in range(j)]
            out = [outer[(s * j + t) % n2] for t in range(j + 1)]
            for t in range(j):
                tris.append((out[t], out[t + 1], inn[t]))
            for t in range(j - 1):
                tris.append((out[t + 1], inn[t + 1], inn[t]))
    rim = rings[-1]
    edges = [(rim[m], rim[(m + 1) % len(rim)]) for m in range(len(rim))]
    tags = ["rim"] * len(edges)
    return np.array(pts, float), np.array(tris, np.int64), np.array(edges, np.int64), tags


def build_mesh(domain: catalog.CatalogDomain, h: float) -> Mesh:
    """Conforming mesh of a planar catalog domain with max edge <= sqrt(2) h.

    Boundary edges are tagged geometrically: rectangle sides bottom / right /
    top / left, triangle sides leg1 / leg2 / hypotenuse (side1..3 for the
    equilateral triangle), disk rim.
    """
    if not h > 0.0:
        raise ValueError(f"mesh size must be positive, got {h!r}")
    if isinstance(domain, catalog.Rectangle):
        if h > min(domain.a, domain.b):
            raise ValueError("h larger than the shortest side")
        parts = _rect_mesh(domain.a, domain.b, h)
    elif isinstance(domain, catalog.RightIsoTriangle):
        a = domain.a
        if h > a:
            raise ValueError("h larger than the shortest side")
        k = max(1, math.ceil(a / h))
        parts = _tri_lattice(
            (0.0, 0.0), (a, 0.0), (0.0, a), k, ("leg1", "hypotenuse", "leg2")
        )
    elif isinstance(domain, catalog.Right30Triangle):
        a = domain.a
        if h > a / 2.0:
            raise ValueError("h larger than the shortest side")
        k = max(1, math.ceil(a / h))
        parts = _tri_lattice(
            (0.0, 0.0),
            (a * math.sqrt(3.0) / 2.0, 0.0),
            (0.0, a / 2.0),
            k,
            ("leg1", "hypotenuse", "leg2"),
        )
    elif isinstance(domain, catalog.EquilateralTriangle):
        a = domain.a
        if h > a:
            raise ValueError("h larger than the shortest side")
        k = max(1, math.ceil(a / h))
        parts = _tri_lattice(
            (0.0, 0.0),
            (a, 0.0),
            (a / 2.0, a * math.sqrt(3.0) / 2.0),
            k,
            ("side1", "side2", "side3"),
        )
    elif isinstance(domain, catalog.Disk):
        if h > domain.a:
            raise ValueError("h larger than the radius")
        parts = _disk_mesh(domain.a, h)
    else:
        raise ValueError(f"cannot mesh domain {domain!r} (planar variants only)")
    pts, tris, edges, tags = parts
    mesh = Mesh(pts, tris, edges, tags)
    mesh.h = mesh.max_edge_length()
    mesh.validate()
    return mesh


def refine(mesh: Mesh) -> Mesh:
    """Uniform midpoint refinement: 4x triangles, h halved, tags inherited."""
    pts = [tuple(p) for p in mesh.vertices]
    midpoint: dict[tuple[int, int], int] = {}

    def mid(i: int, j: int) -> int:
        key = (i, j) if i < j else (j, i)
        idx = midpoint.get(key)
        if idx is None:
            idx = len(pts)
            pts.append(
                (
                    0.5 * (mesh.vertices[i, 0] + mesh.vertices[j, 0]),
                    0.5 * (mesh.vertices[i, 1] + mesh.vertices[j, 1]),
                )
            )
            midpoint[key] = idx
        return idx

    tris = []
    for i0, i1, i2 in mesh.triangles:
        m01, m12, m20 = mid(i0, i1), mid(i1, i2), mid(i2, i0)
        tris.extend(
            [(i0, m01, m20), (i1, m12, m01), (i2, m20, m12), (m01, m12, m20)]
        )
    edges = []
    tags = []
    for (i, j), tag in zip(mesh.boundary_edges, mesh.boundary_tags):
        m = mid(int(i), int(j))
        edges.append((i, m))
        edges.append((m, j))
        tags.extend([tag, tag])
    out = Mesh(
        np.array(pts, float),
        np.array(tris, np.int64),
        np.array(edges, np.int64),
        tags,
        h=mesh.h / 2.0,
    )
    out.validate()
    return out


# ---------------------------------------------------------------------------
# forms

@dataclass
class SparseSymmetric:
    """Symmetric sparse matrix stored as upper-triangle COO (row <= col)."""

    n: int
    rows: np.ndarray
    cols: np.ndarray
    vals: np.ndarray

    @classmethod
    def from_triplets(cls, n, rows, cols, vals) -> "SparseSymmetric":
        """Build from COO triplets of the full symmetric matrix (both halves
        present, duplicates summed); only the upper triangle is stored."""
        full = sp.coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()
        upper = sp.triu(full, format="coo")
        return cls(n, upper.row.copy(), upper.col.copy(), upper.data.copy())

    def to_csr(self) -> sp.csr_matrix:
        upper = sp.coo_matrix((self.vals, (self.rows, self.cols)), shape=(self.n, self.n))
        full = upper + upper.T - sp.diags(upper.diagonal())
        return full.tocsr()

    def dense(self) -> np.ndarray:
        return self.to_csr().toarray()


@dataclass
class Forms:
    K: SparseSymmetric
    M: SparseSymmetric
    B: Optional[SparseSymmetric] = None


def assemble(mesh: Mesh, g: Sequence[str] = ()) -> Forms:
    """Stiffness K, consistent mass M and, when ``g`` names boundary tags,
    the boundary mass B over the edges carrying those tags."""
    xy = np.ascontiguousarray(mesh.vertices, dtype=np.float64)
    tris = np.ascontiguousarray(mesh.triangles, dtype=np.int64)
    n = mesh.num_vertices
    rows, cols, kv, mv = _kernels.tri_assembly_arrays(xy, tris)
    forms = Forms(
        K=SparseSymmetric.from_triplets(n, rows, cols, kv),
        M=SparseSymmetric.from_triplets(n, rows, cols, mv),
    )
    g = tuple(g)
    if g:
        unknown = set(g) - mesh.tag_set()
        if unknown:
            raise ValueError(f"unknown boundary tags {sorted(unknown)}; mesh has {sorted(mesh.tag_set())}")
        mask = np.array([t in g for t in mesh.boundary_tags])
        edges = np.ascontiguousarray(mesh.boundary_edges[mask], dtype=np.int64)
        br, bc, bv = _kernels.edge_mass_arrays(xy, edges)
        forms.B = SparseSymmetric.from_triplets(n, br, bc, bv)
    return forms


def dirichlet_indices(mesh: Mesh, tags: Optional[Sequence[str]] = None) -> np.ndarray:
    """Vertices incident to boundary edges carrying the given tags (all tags
    when ``tags`` is None)."""
    if tags is None:
        sel = np.ones(len(mesh.boundary_edges), bool)
    else:
        tags = set(tags)
        unknown = tags - mesh.tag_set()
        if unknown:
            raise ValueError(f"unknown boundary tags {sorted(unknown)}")
        sel = np.array([t in tags for t in mesh.boundary_tags])
    return np.unique(mesh.boundary_edges[sel])


# ---------------------------------------------------------------------------
# eigen solvers

@dataclass(frozen=True)
class DirichletBC:
    """Remove the rows/columns of the fixed vertices."""

    fixed: np.ndarray

    @classmethod
    def from_tags(cls, mesh: Mesh, tags: Optional[Sequence[str]] = None) -> "DirichletBC":
        return cls(dirichlet_indices(mesh, tags))


@dataclass(frozen=True)
class NeumannBC:
    """Natural condition; the constant mode is deflated."""


@dataclass(frozen=True)
class RobinBC:
    """Solve (K + B) u = lambda M u with the given boundary form."""

    boundary_form: SparseSymmetric


@dataclass
class EigenSample:
    """One mesh-level eigenvalue: lambda_h with its solve diagnostics."""

    value: float
    vector: np.ndarray
    residual: float
    iterations: int
    h: float = 0.0
    seed: int = DEFAULT_SEED


@dataclass
class Extrapolation:
    extrapolated: float
    observed_order: float


@dataclass
class EigenEstimate:
    """Eigenvalue over a mesh sequence with Richardson extrapolation.

    samples are (h, lambda_h) sorted by decreasing h; residual is the worst
    solver residual over the sequence; seed is the start-vector seed.
    """

    samples: list[tuple[float, float]]
    extrapolated: Optional[float]
    observed_order: Optional[float]
    residual: float
    seed: int = DEFAULT_SEED


def _solver_for(mat: sp.csr_matrix):
    """Direct factorisation for moderate sizes, Jacobi-preconditioned CG above."""
    n = mat.shape[0]
    if n <= _DIRECT_SOLVER_MAX:
        lu = spla.splu(mat.tocsc())
        return lu.solve
    diag = mat.diagonal()
    precond = spla.LinearOperator(mat.shape, lambda v: v / diag)

    def solve_one(b):
        x, info = spla.cg(mat, b, rtol=1e-13, atol=0.0, M=precond, maxiter=20 * n)
        if info != 0:
            raise ConvergenceError(f"conjugate gradient failed with info={info}")
        return x

    def solve(b):
        if b.ndim == 1:
            return solve_one(b)
        return np.column_stack([solve_one(b[:, j]) for j in range(b.shape[1])])

    return solve


def _t_orthonormalize(X, T):
    """Whiten the block in the T-inner product, dropping rank-deficient
    directions (T may be a seminorm, e.g. the boundary mass)."""
    G = X.T @ (T @ X)
    G = 0.5 * (G + G.T)
    w, V = np.linalg.eigh(G)
    keep = w > max(w[-1], 0.0) * 1e-14
    if not np.any(keep):
        raise ConvergenceError("iteration block vanished (singular pencil?)")
    return X @ (V[:, keep] / np.sqrt(w[keep]))


def _inverse_iteration(S, T, solve, deflate, X0, tol, max_iter):
    """Block shift-invert inverse iteration on the pencil S u = lambda T u.

    ``solve`` applies the factorised (possibly shifted) operator to a block
    of right-hand sides; ``deflate`` projects known kernel directions out of
    a vector.  A small Rayleigh-Ritz problem extracts the smallest pair, so
    clustered or multiple eigenvalues converge cleanly.  Returns (value,
    vector, residual, iterations); the vector is T-normalised.
    """
    X = np.column_stack([deflate(X0[:, j]) for j in range(X0.shape[1])])
    X = _t_orthonormalize(X, T)
    for it in range(1, max_iter + 1):
        Y = solve(T @ X)
        if Y.ndim == 1:
            Y = Y[:, None]
        Y = np.column_stack([deflate(Y[:, j]) for j in range(Y.shape[1])])
        X = _t_orthonormalize(Y, T)
        H = X.T @ (S @ X)
        H = 0.5 * (H + H.T)
        theta, W = np.linalg.eigh(H)
        x = X @ W[:, 0]
        lam = float(theta[0])
        res = float(np.linalg.norm(S @ x - lam * (T @ x)))
        if res <= tol:
            return lam, x, res, it
    raise ConvergenceError(
        f"inverse iteration: residual {res:.3e} > {tol:.1e} after {max_iter} iterations"
    )


def eigen_smallest(
    K: SparseSymmetric,
    M: SparseSymmetric,
    bc: Union[DirichletBC, NeumannBC, RobinBC],
    tol: float = 1e-10,
    max_iter: int = 2000,
    seed: int = DEFAULT_SEED,
) -> EigenSample:
    """Smallest eigenvalue of the quadratic form against the mass form.

    Dirichlet: smallest eigenvalue of the reduced pencil; Neumann: smallest
    positive, with the constant vector deflated; Robin: smallest eigenvalue
    of (K + B) u = lambda M u.  Deterministic seeded start vector.
    """
    kc = K.to_csr()
    mc = M.to_csr()
    n = K.n
    rng = np.random.default_rng(seed)

    if isinstance(bc, DirichletBC):
        keep = np.setdiff1d(np.arange(n), bc.fixed)
        if len(keep) == 0:
            raise ValueError("Dirichlet reduction removed every vertex")
        S = kc[keep][:, keep].tocsr()
        T = mc[keep][:, keep].tocsr()
        solve = _solver_for(S)
        deflate = lambda v: v
        x0 = rng.standard_normal((len(keep), min(_BLOCK, len(keep))))
        lam, x, res, it = _inverse_iteration(S, T, solve, deflate, x0, tol, max_iter)
        full = np.zeros(n)
        full[keep] = x
        return EigenSample(lam, full, res, it, seed=seed)

    if isinstance(bc, NeumannBC):
        S, T = kc, mc
        ones = np.ones(n)
        m_ones = T @ ones
        m_tot = float(ones @ m_ones)
        solve = _solver_for((S + T).tocsc())  # unit spectral shift: K singular

        def deflate(v):
            return v - (float(m_ones @ v) / m_tot) * ones

    elif isinstance(bc, RobinBC):
        S = (kc + bc.boundary_form.to_csr()).tocsr()
        T = mc
        solve = _solver_for(S)
        deflate = lambda v: v
    else:
        raise ValueError(f"unknown boundary condition {bc!r}")

    x0 = rng.standard_normal((n, min(_BLOCK, n)))
    lam, x, res, it = _inverse_iteration(S, T, solve, deflate, x0, tol, max_iter)
    return EigenSample(lam, x, res, it, seed=seed)


def eigen_steklov(
    K: SparseSymmetric,
    B: SparseSymmetric,
    tol: float = 1e-9,
    max_iter: int = 5000,
    seed: int = DEFAULT_SEED,
) -> EigenSample:
    """Smallest positive eigenvalue of K u = lambda B u (spectral parameter
    on the boundary; zero Neumann data elsewhere is natural).

    B is singular off the spectral boundary, so the iteration runs on the
    shifted factorisation (K + B) with the constant vector deflated in the
    B-inner product.
    """
    kc = K.to_csr()
    bcsr = B.to_csr()
    n = K.n
    ones = np.ones(n)
    b_ones = bcsr @ ones
    b_tot = float(ones @ b_ones)
    if not b_tot > 0.0:
        raise ValueError("empty spectral boundary: B has zero total mass")
    solve = _solver_for((kc + bcsr).tocsc())

    def deflate(v):
        return v - (float(b_ones @ v) / b_tot) * ones

    rng = np.random.default_rng(seed)
    x0 = rng.standard_normal((n, min(_BLOCK, n)))
    lam, x, res, it = _inverse_iteration(kc, bcsr, solve, deflate, x0, tol, max_iter)
    return EigenSample(lam, x, res, it, seed=seed)


# ---------------------------------------------------------------------------
# extrapolation and the mesh-sequence driver

def extrapolate(samples: Sequence[tuple[float, float]]) -> Extrapolation:
    """Richardson extrapolation assuming lambda_h = lambda + c h^r.

    Uses the three finest samples; the mesh sizes must decrease by a fixed
    ratio (h halving in the standard driver).  Raises ValueError for fewer
    than three samples or a non-monotone/degenerate sequence.
    """
    if len(samples) < 3:
        raise ValueError("extrapolation needs at least three (h, lambda) samples")
    hs = [s[0] for s in samples]
    if any(h2 >= h1 for h1, h2 in zip(hs, hs[1:])):
        raise ValueError("samples must be sorted by strictly decreasing h")
    (h1, l1), (h2, l2), (h3, l3) = samples[-3:]
    rho1, rho2 = h1 / h2, h2 / h3
    if not (1.05 < rho1 < 8.0 and 1.05 < rho2 < 8.0):
        raise ValueError("mesh sizes must decrease by a ratio in (1.05, 8)")
    d1, d2 = l1 - l2, l2 - l3
    if d2 == 0.0 or d1 * d2 <= 0.0 or abs(d1) <= abs(d2):
        raise ValueError("non-monotone or degenerate eigenvalue samples")

    if abs(rho1 - rho2) < 1e-9:  # uniform ratio: closed form
        r = math.log(d1 / d2) / math.log(rho1)
        lam = l3 - d2 / (rho2**r - 1.0)
        return Extrapolation(lam, r)

    # general decreasing ratios: solve for the order r by bisection
    def mismatch(r: float) -> float:
        e1 = h1**r - h2**r
        e2 = h2**r - h3**r
        return d1 / d2 - e1 / e2

    lo, hi = 0.05, 10.0
    flo, fhi = mismatch(lo), mismatch(hi)
    if flo * fhi > 0.0:
        raise ValueError("samples incompatible with a power-law error model")
    r = find_root(mismatch, Bracket(lo, hi, tol=1e-12))
    c = d2 / (h2**r - h3**r)
    lam = l3 - c * h3**r
    return Extrapolation(lam, r)


def steklov_tags(selector: catalog.SteklovSelector) -> tuple[str, ...]:
    """Boundary tags of the right isosceles triangle mesh for a selector."""
    return {
        catalog.SteklovSelector.HYPOTENUSE: ("hypotenuse",),
        catalog.SteklovSelector.ONE_LEG: ("leg1",),
        catalog.SteklovSelector.TWO_LEGS: ("leg1", "leg2"),
    }[selector]


def eigen_estimate(
    domain: catalog.CatalogDomain,
    kind: Union[catalog.EigenKind, catalog.Steklov],
    hs: Sequence[float],
    tol: float = 1e-10,
    seed: int = DEFAULT_SEED,
) -> EigenEstimate:
    """Solve the eigenproblem on a mesh per requested h and extrapolate.

    The recorded mesh sizes are the actual maximum edge lengths (they track
    the requested values exactly for the polygonal shapes and approximately
    for the disk polygonalisation).
    """
    if len(hs) == 0:
        raise ValueError("need at least one mesh size")
    samples = []
    worst = 0.0
    for h in hs:
        mesh = build_mesh(domain, h)
        if isinstance(kind, catalog.Steklov):
            forms = assemble(mesh, steklov_tags(kind.selector))
            sample = eigen_steklov(forms.K, forms.B, tol=max(tol, 1e-9), seed=seed)
        elif kind is catalog.EigenKind.DIRICHLET:
            forms = assemble(mesh)
            sample = eigen_smallest(
                forms.K, forms.M, DirichletBC.from_tags(mesh), tol=tol, seed=seed
            )
        elif kind is catalog.EigenKind.NEUMANN:
            forms = assemble(mesh)
            sample = eigen_smallest(forms.K, forms.M, NeumannBC(), tol=tol, seed=seed)
        elif kind is catalog.EigenKind.ROBIN:
            forms = assemble(mesh, tuple(sorted(mesh.tag_set())))
            sample = eigen_smallest(forms.K, forms.M, RobinBC(forms.B), tol=tol, seed=seed)
        else:
            raise ValueError(f"unsupported eigenvalue kind {kind!r}")
        samples.append((mesh.h, sample.value))
        worst = max(worst, sample.residual)
    ext = order = None
    if len(samples) >= 3:
        fit = extrapolate(samples)
        ext, order = fit.extrapolated, fit.observed_order
    return EigenEstimate(samples, ext, order, worst, seed=seed)


def write_off(mesh: Mesh, path: str) -> None:
    """Dump the mesh as an OFF-format text file (vertices and faces)."""
    with open(path, "w", encoding="ascii") as fh:
        fh.write("OFF\n")
        fh.write(f"{mesh.num_vertices} {len(mesh.triangles)} 0\n")
        for x, y in mesh.vertices:
            fh.write(f"{x:.17g} {y:.17g} 0\n")
        for i0, i1, i2 in mesh.triangles:
            fh.write(f"3 {i0} {i1} {i2}\n")
