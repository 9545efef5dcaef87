"""Command-line interface: formats, exit codes, dumps, reproducibility."""

import json

import pytest

from sharpconst import suites
from sharpconst.cli import main
from sharpconst.errors import ConvergenceError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestConstantCommand:
    def test_schmidt_value(self, capsys):
        code, out, _ = run(capsys, "constant", "--kind", "schmidt", "--p", "2", "--q", "2")
        assert code == 0
        assert "0.3183098862" in out

    def test_trace_p1(self, capsys):
        code, out, _ = run(capsys, "constant", "--kind", "trace", "--n", "3", "--p", "1")
        assert code == 0
        assert "= 1" in out

    def test_inadmissible_exits_3(self, capsys):
        code, _, err = run(capsys, "constant", "--kind", "schmidt", "--p", "2", "--q", "-1")
        assert code == 3
        assert "q must satisfy" in err

    def test_sobolev_p_out_of_range_exits_3(self, capsys):
        code, _, err = run(capsys, "constant", "--kind", "sobolev", "--n", "3", "--p", "3")
        assert code == 3
        assert "restriction" in err or "need 1 <= p" in err

    def test_q_infinity_token(self, capsys):
        code, out, _ = run(capsys, "constant", "--kind", "schmidt", "--p", "2", "--q", "inf")
        assert code == 0
        assert "0.5" in out

    def test_missing_parameter_exits_2(self, capsys):
        code, _, err = run(capsys, "constant", "--kind", "schmidt", "--p", "2")
        assert code == 2
        assert "--q" in err

    def test_unknown_kind_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(capsys, "constant", "--kind", "nonsense")
        assert exc.value.code == 2

    def test_json_format(self, capsys):
        code, out, _ = run(
            capsys, "constant", "--kind", "schmidt", "--p", "2", "--q", "2", "--format", "json"
        )
        rec = json.loads(out)
        assert rec["closed_form"] == pytest.approx(0.3183098862)
        assert rec["status"] == "INFO"


class TestEigenCommand:
    def test_square_dirichlet_extrapolated(self, capsys):
        code, out, _ = run(
            capsys,
            "eigen", "--domain", "square", "--a", "1", "--bc", "dirichlet",
            "--h", "0.2,0.1,0.05", "--extrapolate", "--format", "json",
        )
        assert code == 0
        records = [json.loads(line) for line in out.strip().splitlines()]
        final = records[-1]
        assert final["quantity"] == "lambda1-extrapolated"
        assert final["numerical"] == pytest.approx(19.739, rel=1e-3)
        assert final["status"] == "OK"

    def test_steklov_needs_tags(self, capsys):
        code, _, err = run(
            capsys,
            "eigen", "--domain", "right-iso-triangle", "--bc", "steklov", "--h", "0.2",
        )
        assert code == 2
        assert "--g" in err

    def test_robin_disk_is_info(self, capsys):
        code, out, _ = run(
            capsys,
            "eigen", "--domain", "disk", "--bc", "robin", "--h", "0.25", "--format", "json",
        )
        assert code == 0
        rec = json.loads(out.strip().splitlines()[0])
        assert rec["status"] == "INFO"
        assert rec["closed_form"] is None

    def test_unknown_domain_exits_2(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(capsys, "eigen", "--domain", "pentagon", "--bc", "dirichlet", "--h", "0.2")
        assert exc.value.code == 2

    def test_dump_mesh(self, capsys, tmp_path):
        path = tmp_path / "m.off"
        code, _, _ = run(
            capsys,
            "eigen", "--domain", "square", "--bc", "neumann", "--h", "0.5",
            "--dump-mesh", str(path),
        )
        assert code == 0
        assert path.read_text().startswith("OFF\n9 8 0\n")


class TestVerifyCommand:
    def test_bounds_suite_ok(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "bounds")
        assert code == 0
        assert "FAIL" not in out

    def test_tables_record_count(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "tables", "--format", "json")
        assert code == 0
        records = [json.loads(line) for line in out.strip().splitlines()]
        assert len(records) == 13  # 10 table cells + 3 sloshing rows
        assert all(r["status"] == "OK" for r in records)

    def test_jobs_preserve_order_and_results(self, capsys):
        _, seq, _ = run(capsys, "verify", "--suite", "bounds", "--format", "json")
        _, par, _ = run(capsys, "verify", "--suite", "bounds", "--format", "json", "--jobs", "4")
        assert seq == par

    def test_json_bit_identical(self, capsys):
        _, first, _ = run(capsys, "verify", "--suite", "tables", "--format", "json")
        _, second, _ = run(capsys, "verify", "--suite", "tables", "--format", "json")
        assert first == second

    def test_csv_header(self, capsys):
        _, out, _ = run(capsys, "verify", "--suite", "bounds", "--format", "csv")
        header = out.splitlines()[0]
        assert header == "suite,quantity,parameters,closed_form,numerical,discrepancy,method,status"

    def test_convergence_error_exits_4(self, capsys, monkeypatch):
        def boom(*args, **kwargs):
            raise ConvergenceError("stub failure")

        monkeypatch.setattr(suites, "run_suite", boom)
        code, _, err = run(capsys, "verify", "--suite", "bounds")
        assert code == 4
        assert "non-convergence" in err

    def test_failure_exits_1(self, capsys, monkeypatch):
        from sharpconst.report import ReportRecord

        monkeypatch.setattr(
            suites,
            "run_suite",
            lambda *a, **k: [ReportRecord("stub", {}, 1.0, 2.0, 1.0, "stub", "FAIL")],
        )
        code, _, _ = run(capsys, "verify", "--suite", "bounds")
        assert code == 1


def test_extremal_dump(tmp_path):
    records = suites.suite_oned(tol=1e-2, grid_n=128, dump_dir=str(tmp_path))
    assert any(r.status == "OK" for r in records)
    files = sorted(tmp_path.glob("*.csv"))
    assert files, "extremal CSVs were not written"
    header, first = files[0].read_text().splitlines()[:2]
    assert header == "x,u"
    assert len(first.split(",")) == 2
