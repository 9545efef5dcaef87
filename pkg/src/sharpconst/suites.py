"""Verification suites: closed forms versus independent numerics.

Each suite builds an ordered list of independent tasks, runs them (optionally
in a thread pool; record order stays the construction order) and returns
:class:`~sharpconst.report.ReportRecord` rows.  The acceptance tests call
these functions directly with the pinned tolerances; the command line
front-end exposes them as ``verify --suite ...``.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional

import numpy as np

from . import catalog, fem2d, oracle1d
from .report import ReportRecord, comparison_record

__all__ = [
    "SUITES",
    "run_suite",
    "suite_tables",
    "suite_oned",
    "suite_sobolev",
    "suite_trace",
    "suite_bounds",
]

# mesh sequences for the finite-element comparisons
_TABLE1_HS = (0.2, 0.1, 0.05)
_STEKLOV_HS = (0.1, 0.05, 0.025)

_TABLE1_DOMAINS = (
    ("square", catalog.Rectangle(1.0, 1.0)),
    ("right-iso-triangle", catalog.RightIsoTriangle(1.0)),
    ("right-30-triangle", catalog.Right30Triangle(1.0)),
    ("equilateral-triangle", catalog.EquilateralTriangle(1.0)),
    ("disk", catalog.Disk(1.0)),
)

_ONED_PS = (1.5, 2.0, 3.0)
_SYMMETRY_QS = (4.0, 6.0, 10.0)
_SOBOLEV_CASES = ((3, 2.0), (4, 2.0), (3, 1.5))
_TRACE_OFFSETS = (0.1, 1.0, 10.0)


def _run_tasks(tasks: list[Callable[[], list[ReportRecord]]], jobs: int) -> list[ReportRecord]:
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            groups = list(pool.map(lambda t: t(), tasks))
    else:
        groups = [t() for t in tasks]
    return [rec for group in groups for rec in group]


# ---------------------------------------------------------------------------
# Table-1 / Table-2 style eigenvalue reproduction

def _fem_cell(name, domain, kind, hs, closed, tol, quantity) -> list[ReportRecord]:
    est = fem2d.eigen_estimate(domain, kind, hs)
    bc = kind.selector.value if isinstance(kind, catalog.Steklov) else kind.value
    params = {
        "domain": name,
        "size": 1.0,
        "bc": bc,
        "h": ",".join(f"{h:.4g}" for h, _ in est.samples),
        "seed": est.seed,
    }
    method = f"fem-p1 Richardson extrapolation (order {est.observed_order:.2f})"
    return [comparison_record(quantity, params, closed, est.extrapolated, method, tol)]


def suite_tables(
    tol_polygon: float = 0.005,
    tol_disk: float = 0.01,
    tol_steklov: float = 0.01,
    jobs: int = 1,
) -> list[ReportRecord]:
    """Reproduce the closed-form eigenvalue table (5 domains x Dirichlet /
    Neumann) and the three triangle sloshing rows with the FEM oracle."""
    tasks = []
    for name, domain in _TABLE1_DOMAINS:
        for kind in (catalog.EigenKind.DIRICHLET, catalog.EigenKind.NEUMANN):
            tol = tol_disk if isinstance(domain, catalog.Disk) else tol_polygon
            closed = catalog.lambda1(domain, kind)
            tasks.append(
                lambda n=name, d=domain, k=kind, c=closed, t=tol: _fem_cell(
                    n, d, k, _TABLE1_HS, c, t, "lambda1"
                )
            )
    for selector in catalog.SteklovSelector:
        closed = catalog.steklov_lambda1_triangle(1.0, selector)
        kind = catalog.Steklov(selector)
        tasks.append(
            lambda k=kind, c=closed: _fem_cell(
                "right-iso-triangle",
                catalog.RightIsoTriangle(1.0),
                k,
                _STEKLOV_HS,
                c,
                tol_steklov,
                "steklov-lambda1",
            )
        )
    recs = _run_tasks(tasks, jobs)
    for r in recs:
        r.suite = "tables"
    return recs


# ---------------------------------------------------------------------------
# one-dimensional constants

def _oned_grid():
    for p in _ONED_PS:
        for q in sorted({1.0, 2.0, p, 2.0 * p, 3.0 * p}):
            yield p, q


def _dump_extremal(dump_dir: Optional[str], name: str, grid, values) -> None:
    if not dump_dir:
        return
    os.makedirs(dump_dir, exist_ok=True)
    path = os.path.join(dump_dir, name + ".csv")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("x,u\n")
        for x, u in zip(grid, values):
            fh.write(f"{x:.17g},{u:.17g}\n")


def _oned_cell(p, q, constraint, grid_n, tol, dump_dir) -> list[ReportRecord]:
    closed = catalog.schmidt_constant(p, q)
    prob = oracle1d.RatioProblem(p, q, constraint, grid_n)
    est = oracle1d.minimize_interval_ratio(prob)
    label = constraint.value
    _dump_extremal(dump_dir, f"interval_p{p:g}_q{q:g}_{label}", est.grid, est.extremal)
    quantity = "schmidt-constant" if constraint is oracle1d.Constraint.ZERO_BOUNDARY else "poincare-1d-constant"
    params = {"p": p, "q": q, "constraint": label, "N": grid_n}
    method = f"projected-gradient quotient minimisation ({est.iterations} iterations)"
    return [comparison_record(quantity, params, closed, est.value, method, tol)]


def _symmetry_cell(p, q, grid_n, tol, dump_dir) -> list[ReportRecord]:
    rep = oracle1d.classify_extremal_symmetry(p, q, grid_n)
    closed = catalog.schmidt_constant(p, q)
    grid = np.linspace(0.0, 1.0, grid_n + 1)
    _dump_extremal(dump_dir, f"zero_mean_extremal_p{p:g}_q{q:g}", grid, rep.extremal)
    params = {
        "p": p,
        "q": q,
        "N": grid_n,
        "seed": oracle1d.ASYMMETRIC_START_SEED,
        "antisymmetric": rep.antisymmetric,
    }
    if q <= 3.0 * p:
        # sharp regime: value must match C1 and the extremal must be
        # antisymmetric about the midpoint
        rec = comparison_record(
            "zero-mean-extremal", params, closed, rep.constant, "two-start minimisation", tol
        )
        if not rep.antisymmetric:
            rec.status = "FAIL"
            rec.method += "; expected antisymmetric extremal"
        return [rec]
    # beyond the sharp regime the constant must strictly exceed C1 and the
    # extremal loses the symmetry: the comparison is inverted on purpose
    disc = (rep.constant - closed) / closed
    rec = ReportRecord(
        quantity="zero-mean-gap",
        parameters=params,
        closed_form=closed,
        numerical=rep.constant,
        discrepancy=disc,
        method=f"strict-gap check: discrepancy must exceed {tol:g} and symmetry must break",
        status="OK" if (disc > tol and not rep.antisymmetric) else "FAIL",
    )
    return [rec]


def suite_oned(
    tol: float = 1e-3,
    grid_n: int = 2048,
    jobs: int = 1,
    dump_dir: Optional[str] = None,
) -> list[ReportRecord]:
    """Interval quotient oracle against the closed-form constant on the
    (p, q) grid, plus the zero-mean symmetry classification rows."""
    tasks = []
    for p, q in _oned_grid():
        tasks.append(
            lambda p=p, q=q: _oned_cell(
                p, q, oracle1d.Constraint.ZERO_BOUNDARY, grid_n, tol, dump_dir
            )
        )
        if q <= 3.0 * p:
            tasks.append(
                lambda p=p, q=q: _oned_cell(
                    p, q, oracle1d.Constraint.ZERO_MEAN, grid_n, tol, dump_dir
                )
            )
    for q in _SYMMETRY_QS:
        tasks.append(lambda q=q: _symmetry_cell(2.0, q, grid_n, tol, dump_dir))
    recs = _run_tasks(tasks, jobs)
    for r in recs:
        r.suite = "oned"
    return recs


# ---------------------------------------------------------------------------
# critical-case constants

def _sobolev_cell(n, p, tol, dump_dir) -> list[ReportRecord]:
    closed = catalog.sobolev_constant(n, p)
    est = oracle1d.minimize_radial_sobolev(n, p)
    _dump_extremal(dump_dir, f"radial_n{n}_p{p:g}", est.grid, est.extremal)
    params = {"n": n, "p": p, "R": 50.0, "N": 4096}
    method = f"radial quotient minimisation ({est.iterations} iterations)"
    return [comparison_record("sobolev-constant", params, closed, est.value, method, tol)]


def suite_sobolev(
    tol: float = 0.01, jobs: int = 1, dump_dir: Optional[str] = None
) -> list[ReportRecord]:
    """Radial minimiser against the closed-form Sobolev constant, plus the
    exact p = 1 catalog value."""
    tasks = [
        lambda n=n, p=p: _sobolev_cell(n, p, tol, dump_dir) for n, p in _SOBOLEV_CASES
    ]

    def p1_exact():
        closed = 1.0 / (2.0 * math.sqrt(math.pi))
        return [
            comparison_record(
                "sobolev-constant",
                {"n": 2, "p": 1.0},
                closed,
                catalog.sobolev_constant(2, 1.0),
                "analytic identity (isoperimetric value)",
                1e-13,
            )
        ]

    tasks.append(p1_exact)
    recs = _run_tasks(tasks, jobs)
    for r in recs:
        r.suite = "sobolev"
    return recs


def suite_trace(tol: float = 1e-3, jobs: int = 1) -> list[ReportRecord]:
    """Half-space trace extremal quadrature against the closed form, its
    offset invariance, and the exact p = 1 value."""

    def offsets():
        closed = catalog.trace_sobolev_constant(3, 2.0)
        recs = []
        values = []
        for a in _TRACE_OFFSETS:
            val = oracle1d.escobar_trace_ratio(3, 2.0, offset=a)
            values.append(val)
            recs.append(
                comparison_record(
                    "trace-constant",
                    {"n": 3, "p": 2.0, "offset": a},
                    closed,
                    val,
                    "extremal quadrature (polar angle, exact radial tail)",
                    tol,
                )
            )
        spread = (max(values) - min(values)) / closed
        recs.append(
            comparison_record(
                "trace-offset-invariance",
                {"n": 3, "p": 2.0, "offsets": ",".join(str(a) for a in _TRACE_OFFSETS)},
                0.0,
                spread,
                "relative spread of the quadrature over offsets",
                tol,
            )
        )
        return recs

    def p1_exact():
        return [
            comparison_record(
                "trace-constant",
                {"n": n, "p": 1.0},
                1.0,
                catalog.trace_sobolev_constant(n, 1.0),
                "analytic identity",
                0.0,
            )
            for n in (3, 4)
        ]

    recs = _run_tasks([offsets, p1_exact], jobs)
    for r in recs:
        r.suite = "trace"
    return recs


# ---------------------------------------------------------------------------
# bounds and algebraic invariants

def _violation(lower: Optional[float], value: float, upper: Optional[float]) -> float:
    """Relative amount by which value leaves [lower, upper]; 0 when inside."""
    v = 0.0
    if lower is not None and value < lower:
        v = max(v, (lower - value) / abs(lower))
    if upper is not None and value > upper:
        v = max(v, (value - upper) / abs(upper))
    return v


def _bounds_for(name, domain) -> list[ReportRecord]:
    gb = catalog.geometric_bounds(domain)
    lam_d = catalog.lambda1(domain, catalog.EigenKind.DIRICHLET)
    lam_n = catalog.lambda1(domain, catalog.EigenKind.NEUMANN)
    size = getattr(domain, "a", None) or getattr(domain, "l", None)
    base = {"domain": name, "size": size}
    recs = [
        ReportRecord(
            "faber-krahn-lower",
            {**base, "lambda1_D": lam_d},
            gb.fk_lower,
            lam_d,
            _violation(gb.fk_lower, lam_d, None),
            "equal-area disk minimises lambda1_D",
            "OK" if lam_d >= gb.fk_lower * (1.0 - 1e-12) else "FAIL",
        ),
        ReportRecord(
            "szego-weinberger-upper",
            {**base, "lambda1_N": lam_n},
            gb.sw_upper,
            lam_n,
            _violation(None, lam_n, gb.sw_upper),
            "equal-area disk maximises lambda1_N",
            "OK" if lam_n <= gb.sw_upper * (1.0 + 1e-12) else "FAIL",
        ),
        ReportRecord(
            "payne-weinberger-lower",
            {**base, "lambda1_N": lam_n},
            gb.pw_lower,
            lam_n,
            _violation(gb.pw_lower, lam_n, None),
            "(pi/diam)^2 lower bound on convex domains",
            "OK" if lam_n > gb.pw_lower else "FAIL",
        ),
    ]
    if isinstance(domain, catalog.Disk):
        for quantity, bound, lam in (
            ("faber-krahn-disk-equality", gb.fk_lower, lam_d),
            ("szego-weinberger-disk-equality", gb.sw_upper, lam_n),
        ):
            recs.append(
                comparison_record(quantity, base, lam, bound, "disk attains the bound", 1e-12)
            )
    return recs


def _algebraic_invariants() -> list[ReportRecord]:
    recs = []
    # product rule: interval x interval equals the rectangle, exactly
    prod = catalog.Product(catalog.Interval(1.0), catalog.Interval(2.0))
    rect = catalog.Rectangle(1.0, 2.0)
    for kind in (catalog.EigenKind.DIRICHLET, catalog.EigenKind.NEUMANN):
        recs.append(
            comparison_record(
                "product-rule",
                {"factors": "interval(1) x interval(2)", "bc": kind.value},
                catalog.lambda1(rect, kind),
                catalog.lambda1(prod, kind),
                "sum (Dirichlet) / min (Neumann) of the factor eigenvalues",
                0.0,
            )
        )
    # duality C1(p,q) = C1(q', p') and the length scaling law
    for p, q in ((1.5, 2.0), (2.0, 4.0), (3.0, 2.5), (2.0, 2.0)):
        qc = catalog.holder_conjugate(q)
        pc = catalog.holder_conjugate(p)
        recs.append(
            comparison_record(
                "schmidt-duality",
                {"p": p, "q": q},
                catalog.schmidt_constant(p, q),
                catalog.schmidt_constant(qc, pc),
                "C1 invariance under (p, q) -> (q', p')",
                1e-12,
            )
        )
    for p, q, l in ((2.0, 2.0, 3.0), (1.5, 3.0, 0.25), (3.0, 1.0, 7.0)):
        scaled = catalog.schmidt_constant(p, q, l)
        base = catalog.schmidt_constant(p, q) * l ** (1.0 + 1.0 / q - 1.0 / p)
        recs.append(
            comparison_record(
                "schmidt-scaling",
                {"p": p, "q": q, "l": l},
                base,
                scaled,
                "C(p,q,l) = C1(p,q) l^(1 + 1/q - 1/p)",
                1e-13,
            )
        )
    # quadratic sharp constant inverts the eigenvalue exactly
    for name, domain in _TABLE1_DOMAINS:
        for kind in (catalog.EigenKind.DIRICHLET, catalog.EigenKind.NEUMANN):
            c = catalog.sharp_constant_quadratic(domain, kind)
            lam = catalog.lambda1(domain, kind)
            recs.append(
                comparison_record(
                    "quadratic-constant-identity",
                    {"domain": name, "bc": kind.value},
                    1.0,
                    c * c * lam,
                    "C^2 lambda1 = 1",
                    1e-14,
                )
            )
    # product upper bound versus the true square constant
    c_int = catalog.sharp_constant_quadratic(catalog.Interval(1.0), catalog.EigenKind.NEUMANN)
    bound = catalog.product_poincare_upper(c_int, c_int)
    true_c = catalog.sharp_constant_quadratic(
        catalog.Rectangle(1.0, 1.0), catalog.EigenKind.NEUMANN
    )
    recs.append(
        ReportRecord(
            "product-poincare-upper",
            {"domain": "square", "bound": bound},
            bound,
            true_c,
            _violation(None, true_c, bound),
            "sqrt(2)(C1 + C2) dominates the product-domain constant",
            "OK" if true_c <= bound else "FAIL",
        )
    )
    return recs


def suite_bounds(sizes=(0.5, 1.0, 2.0), jobs: int = 1) -> list[ReportRecord]:
    """Faber-Krahn / Szego-Weinberger / Payne-Weinberger checks over the
    planar catalog at several sizes, plus the algebraic invariants."""
    tasks = []
    for s in sizes:
        shaped = (
            ("square", catalog.Rectangle(s, s)),
            ("rectangle", catalog.Rectangle(s, 1.5 * s)),
            ("right-iso-triangle", catalog.RightIsoTriangle(s)),
            ("right-30-triangle", catalog.Right30Triangle(s)),
            ("equilateral-triangle", catalog.EquilateralTriangle(s)),
            ("disk", catalog.Disk(s)),
        )
        for name, domain in shaped:
            tasks.append(lambda n=name, d=domain: _bounds_for(n, d))
    tasks.append(_algebraic_invariants)
    recs = _run_tasks(tasks, jobs)
    for r in recs:
        r.suite = "bounds"
    return recs


SUITES = {
    "tables": lambda tol, jobs, dump: suite_tables(
        tol_polygon=tol if tol is not None else 0.01,
        tol_disk=max(tol, 0.01) if tol is not None else 0.01,
        tol_steklov=tol if tol is not None else 0.01,
        jobs=jobs,
    ),
    "oned": lambda tol, jobs, dump: suite_oned(
        tol=tol if tol is not None else 1e-3, jobs=jobs, dump_dir=dump
    ),
    "sobolev": lambda tol, jobs, dump: suite_sobolev(
        tol=tol if tol is not None else 0.01, jobs=jobs, dump_dir=dump
    ),
    "trace": lambda tol, jobs, dump: suite_trace(
        tol=tol if tol is not None else 1e-3, jobs=jobs
    ),
    "bounds": lambda tol, jobs, dump: suite_bounds(jobs=jobs),
}


def run_suite(name: str, tol: Optional[float], jobs: int, dump_dir: Optional[str] = None):
    """Run one suite (or 'all'); returns the ordered records."""
    if name == "all":
        recs = []
        for key in ("tables", "oned", "sobolev", "trace", "bounds"):
            recs.extend(SUITES[key](tol, jobs, dump_dir))
        return recs
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    return SUITES[name](tol, jobs, dump_dir)
