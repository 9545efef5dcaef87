"""Command-line front end.

Three subcommands:

* ``constant`` — evaluate a closed-form sharp constant,
* ``eigen``    — run the finite-element eigenvalue oracle on a domain,
* ``verify``   — run a verification suite and exit nonzero on failure.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 inadmissible
exponents, 4 numerical non-convergence.  ``--format json`` emits one record
per line and, like csv, is bit-identical across identical invocations.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from . import catalog, fem2d, suites
from .errors import ConvergenceError, InadmissibleExponents
from .report import FORMATS, ReportRecord, comparison_record, format_records

__all__ = ["main"]

_USAGE_ERROR = 2
_INADMISSIBLE = 3
_NO_CONVERGENCE = 4

_DOMAIN_CHOICES = (
    "square",
    "rectangle",
    "right-iso-triangle",
    "right-30-triangle",
    "equilateral-triangle",
    "disk",
    "interval",
)

_SELECTORS = {
    "hypotenuse": catalog.SteklovSelector.HYPOTENUSE,
    "one-leg": catalog.SteklovSelector.ONE_LEG,
    "two-legs": catalog.SteklovSelector.TWO_LEGS,
}


def _build_domain(args) -> catalog.CatalogDomain:
    name = args.domain
    if name == "square":
        return catalog.Rectangle(args.a, args.a)
    if name == "rectangle":
        b = args.b if args.b is not None else args.a
        return catalog.Rectangle(args.a, b)
    if name == "right-iso-triangle":
        return catalog.RightIsoTriangle(args.a)
    if name == "right-30-triangle":
        return catalog.Right30Triangle(args.a)
    if name == "equilateral-triangle":
        return catalog.EquilateralTriangle(args.a)
    if name == "disk":
        return catalog.Disk(args.a)
    if name == "interval":
        return catalog.Interval(args.a)
    raise ValueError(f"unknown domain {name!r}")


def cmd_constant(args) -> int:
    kind = args.kind
    if kind == "schmidt":
        _need(args, "p", "q")
        value = catalog.schmidt_constant(args.p, args.q, args.l)
        params = {"p": args.p, "q": args.q, "l": args.l}
    elif kind == "sobolev":
        _need(args, "n", "p")
        value = catalog.sobolev_constant(args.n, args.p)
        params = {"n": args.n, "p": args.p}
    elif kind == "trace":
        _need(args, "n", "p")
        value = catalog.trace_sobolev_constant(args.n, args.p)
        params = {"n": args.n, "p": args.p}
    elif kind == "quadratic":
        if args.domain is None:
            raise ValueError("--domain is required for --kind quadratic")
        domain = _build_domain(args)
        if args.bc == "steklov":
            eig = catalog.Steklov(_SELECTORS[args.g or "hypotenuse"])
        else:
            eig = catalog.EigenKind(args.bc)
        value = catalog.sharp_constant_quadratic(domain, eig)
        params = {"domain": args.domain, "a": args.a, "bc": args.bc}
    elif kind == "steklov-triangle":
        selector = _SELECTORS[args.g or "hypotenuse"]
        value = catalog.steklov_lambda1_triangle(args.a, selector)
        params = {"a": args.a, "selector": selector.value}
    else:
        raise ValueError(f"unknown constant kind {kind!r}")
    rec = ReportRecord(
        quantity=f"constant-{kind}",
        parameters=params,
        closed_form=value,
        method="closed form",
        status="INFO",
        suite="constant",
    )
    if args.format == "text":
        plist = " ".join(f"{k}={v}" for k, v in params.items())
        print(f"{kind} ({plist}) = {value:.10g}")
    else:
        print(format_records([rec], args.format))
    return 0


def _closed_form_for(domain, args) -> Optional[float]:
    try:
        if args.bc in ("dirichlet", "neumann"):
            return catalog.lambda1(domain, catalog.EigenKind(args.bc))
        if args.bc == "steklov" and isinstance(domain, catalog.RightIsoTriangle):
            tags = tuple(sorted(args.g.split(",")))
            for sel in catalog.SteklovSelector:
                if tuple(sorted(fem2d.steklov_tags(sel))) == tags:
                    return catalog.steklov_lambda1_triangle(domain.a, sel)
    except ValueError:
        return None
    return None


def cmd_eigen(args) -> int:
    domain = _build_domain(args)
    hs = [float(tok) for tok in args.h.split(",") if tok]
    if not hs:
        raise ValueError("--h needs a comma-separated list of mesh sizes")
    if args.bc == "steklov":
        if not args.g:
            raise ValueError("--bc steklov requires --g with boundary tags")
        kind = None  # handled below through explicit tags
    else:
        kind = catalog.EigenKind(args.bc)
    closed = _closed_form_for(domain, args)

    records: list[ReportRecord] = []
    samples = []
    worst = 0.0
    last_mesh = None
    for h in hs:
        mesh = fem2d.build_mesh(domain, h)
        last_mesh = mesh
        if args.bc == "steklov":
            forms = fem2d.assemble(mesh, tuple(args.g.split(",")))
            sample = fem2d.eigen_steklov(forms.K, forms.B, seed=args.seed)
        elif kind is catalog.EigenKind.DIRICHLET:
            forms = fem2d.assemble(mesh)
            sample = fem2d.eigen_smallest(
                forms.K, forms.M, fem2d.DirichletBC.from_tags(mesh), seed=args.seed
            )
        elif kind is catalog.EigenKind.NEUMANN:
            forms = fem2d.assemble(mesh)
            sample = fem2d.eigen_smallest(forms.K, forms.M, fem2d.NeumannBC(), seed=args.seed)
        elif kind is catalog.EigenKind.ROBIN:
            forms = fem2d.assemble(mesh, tuple(sorted(mesh.tag_set())))
            sample = fem2d.eigen_smallest(
                forms.K, forms.M, fem2d.RobinBC(forms.B), seed=args.seed
            )
        else:
            raise ValueError(f"unsupported boundary condition {args.bc!r}")
        samples.append((mesh.h, sample.value))
        worst = max(worst, sample.residual)
        params = {
            "domain": args.domain,
            "bc": args.bc,
            "h": mesh.h,
            "vertices": mesh.num_vertices,
            "residual": sample.residual,
            "seed": args.seed,
        }
        records.append(
            comparison_record("lambda1-sample", params, closed, sample.value, "fem-p1", args.tol)
        )
    if args.extrapolate:
        fit = fem2d.extrapolate(samples)
        params = {
            "domain": args.domain,
            "bc": args.bc,
            "h": ",".join(f"{h:.6g}" for h, _ in samples),
            "observed_order": fit.observed_order,
            "seed": args.seed,
        }
        records.append(
            comparison_record(
                "lambda1-extrapolated",
                params,
                closed,
                fit.extrapolated,
                "fem-p1 Richardson extrapolation",
                args.tol,
            )
        )
    if args.dump_mesh and last_mesh is not None:
        fem2d.write_off(last_mesh, args.dump_mesh)
    for r in records:
        r.suite = "eigen"
    print(format_records(records, args.format))
    return 0


def cmd_verify(args) -> int:
    records = suites.run_suite(args.suite, args.tol, args.jobs, args.dump_extremal)
    print(format_records(records, args.format))
    failed = sum(1 for r in records if r.status == "FAIL")
    if args.format == "text":
        total = len(records)
        print(f"# {total - failed}/{total} records OK")
    return 1 if failed else 0


def _need(args, *names) -> None:
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise ValueError(f"missing required option(s): {', '.join('--' + n for n in missing)}")


def _parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="sharpconst",
        description="Sharp constants of classical inequalities with independent numerical verification.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=FORMATS, default="text", help="output format")

    pc = sub.add_parser("constant", help="evaluate a closed-form sharp constant")
    common(pc)
    pc.add_argument(
        "--kind",
        required=True,
        choices=("schmidt", "sobolev", "trace", "quadratic", "steklov-triangle"),
    )
    pc.add_argument("--p", type=float, default=None)
    pc.add_argument("--q", type=_q_value, default=None, help="exponent q (number or 'inf')")
    pc.add_argument("--l", type=float, default=1.0, help="interval length (schmidt)")
    pc.add_argument("--n", type=int, default=None, help="dimension")
    pc.add_argument("--domain", choices=_DOMAIN_CHOICES, default=None)
    pc.add_argument("--a", type=float, default=1.0, help="size parameter")
    pc.add_argument("--b", type=float, default=None, help="second rectangle side")
    pc.add_argument("--bc", choices=("dirichlet", "neumann", "steklov"), default="dirichlet")
    pc.add_argument("--g", default=None, help="Steklov selector (hypotenuse, one-leg, two-legs)")
    pc.set_defaults(func=cmd_constant)

    pe = sub.add_parser("eigen", help="finite-element eigenvalue oracle")
    common(pe)
    pe.add_argument("--domain", required=True, choices=_DOMAIN_CHOICES)
    pe.add_argument("--a", type=float, default=1.0)
    pe.add_argument("--b", type=float, default=None)
    pe.add_argument("--bc", required=True, choices=("dirichlet", "neumann", "robin", "steklov"))
    pe.add_argument("--g", default=None, help="comma-separated boundary tags for steklov")
    pe.add_argument("--h", required=True, help="comma-separated mesh sizes, decreasing")
    pe.add_argument("--extrapolate", action="store_true")
    pe.add_argument("--tol", type=float, default=0.01)
    pe.add_argument("--seed", type=int, default=fem2d.DEFAULT_SEED)
    pe.add_argument("--dump-mesh", default=None, metavar="PATH", help="write finest mesh as OFF")
    pe.set_defaults(func=cmd_eigen)

    pv = sub.add_parser("verify", help="run a verification suite")
    common(pv)
    pv.add_argument(
        "--suite",
        required=True,
        choices=("tables", "oned", "sobolev", "trace", "bounds", "all"),
    )
    pv.add_argument(
        "--tol",
        type=float,
        default=None,
        help="comparison tolerance (default 0.01 for FEM suites, 1e-3 for 1-D suites)",
    )
    pv.add_argument("--jobs", type=int, default=1, help="parallel independent records")
    pv.add_argument("--dump-extremal", default=None, metavar="DIR", help="write extremal CSVs")
    pv.set_defaults(func=cmd_verify)
    return top


def _q_value(text: str) -> float:
    if text.strip().lower() in ("inf", "infinity", "oo"):
        return float("inf")
    return float(text)


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except InadmissibleExponents as exc:
        print(f"inadmissible exponents: {exc}", file=sys.stderr)
        return _INADMISSIBLE
    except ConvergenceError as exc:
        print(f"numerical non-convergence: {exc}", file=sys.stderr)
        return _NO_CONVERGENCE
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return _USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
