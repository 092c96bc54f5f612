import csv
import io

from baryblend.cli import main


def run_cli(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    def test_node_value_at_origin(self, capsys):
        code, out, err = run_cli(
            ["eval", "--interval", "-5", "5", "--n", "10", "--d", "0",
             "--e", "0", "--fn", "runge", "--at", "0"], capsys)
        assert code == 0
        assert err == ""
        lines = out.strip().split("\n")
        assert lines[0] == "x,r"
        x, r = lines[1].split(",")
        assert float(x) == 0.0
        assert abs(float(r) - 1.0) < 1e-12

    def test_d_above_n_exits_2(self, capsys):
        code, out, err = run_cli(["eval", "--n", "4", "--d", "9"], capsys)
        assert code == 2
        assert out == ""
        assert err.count("\n") == 1
        assert "d must satisfy 0 <= d <= n" in err

    def test_e_above_d_exits_2(self, capsys):
        code, _, err = run_cli(
            ["eval", "--n", "8", "--d", "4", "--e", "5"], capsys)
        assert code == 2
        assert "e must satisfy 0 <= e <= d" in err

    def test_grid_output_row_count(self, capsys):
        code, out, _ = run_cli(
            ["eval", "--n", "8", "--d", "3", "--grid", "11"], capsys)
        assert code == 0
        assert len(out.strip().split("\n")) == 12

    def test_unknown_function_exits_2(self, capsys):
        code, _, err = run_cli(
            ["eval", "--n", "8", "--d", "3", "--fn", "wat"], capsys)
        assert code == 2
        assert "unknown function" in err


class TestScan:
    def test_rectangular_with_na_above_diagonal(self, capsys):
        code, out, err = run_cli(
            ["scan", "--n", "8", "--fn", "runge", "--interval", "-5", "5",
             "--dmax", "3", "--emax", "3", "--grid", "501"], capsys)
        assert code == 0 and err == ""
        lines = out.strip().split("\n")
        assert lines[0] == "n,d,e,linf,l1,lebesgue,seed,sigma"
        assert len(lines) == 1 + 16
        # cell d=0,e=1 lies above the diagonal
        row = [ln for ln in lines if ln.startswith("8,0,1,")][0]
        assert row == "8,0,1,NA,NA,NA,NA,NA"

    def test_seeded_scan_records_noise_columns(self, capsys):
        code, out, _ = run_cli(
            ["scan", "--n", "8", "--dmax", "2", "--emax", "0",
             "--grid", "501", "--sigma", "1e-8", "--seed", "7"], capsys)
        assert code == 0
        assert out.strip().split("\n")[1].endswith(",7,1e-08")


class TestConverge:
    def test_one_curve_per_config(self, capsys):
        code, out, _ = run_cli(
            ["converge", "--configs", "fh:3", "ext:14,4", "cheb", "spline",
             "--nmax", "40", "--grid", "501"], capsys)
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        methods = {r["method"] for r in rows}
        assert methods == {"fh:3", "ext:14,4", "cheb", "spline"}

    def test_explicit_n_list(self, capsys):
        code, out, _ = run_cli(
            ["converge", "--configs", "cheb", "--n-list", "8,16",
             "--grid", "501"], capsys)
        assert code == 0
        ns = [ln.split(",")[1] for ln in out.strip().split("\n")[1:]]
        assert ns == ["8", "16"]

    def test_bad_config_exits_2(self, capsys):
        code, _, err = run_cli(
            ["converge", "--configs", "spl1ne", "--grid", "501"], capsys)
        assert code == 2
        assert "bad config" in err


class TestLebesgueCmd:
    def test_single_cell(self, capsys):
        code, out, _ = run_cli(
            ["lebesgue", "--n", "16", "--d", "4", "--e", "0",
             "--interval", "-1", "1"], capsys)
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "n,d,e,lebesgue,argmax_x"
        lam = float(lines[1].split(",")[3])
        assert lam > 1.0


class TestRungeTable:
    def test_five_rows(self, capsys):
        code, out, _ = run_cli(["runge-table", "--grid", "2001"], capsys)
        assert code == 0
        lines = out.strip().split("\n")
        assert len(lines) == 6
        first = lines[1].split(",")
        assert first[0] == "10" and first[1] == "0"
        assert abs(float(first[2]) - 3.606e-2) < 5e-4


class TestOutputHandling:
    def test_out_file_and_determinism(self, tmp_path, capsys):
        argv = ["scan", "--n", "8", "--dmax", "2", "--emax", "2",
                "--grid", "501", "--sigma", "1e-8", "--seed", "3"]
        f1 = tmp_path / "a.csv"
        f2 = tmp_path / "b.csv"
        assert main(argv + ["--out", str(f1)]) == 0
        assert main(argv + ["--out", str(f2)]) == 0
        capsys.readouterr()
        assert f1.read_bytes() == f2.read_bytes()

    def test_unwritable_out_exits_1(self, tmp_path, capsys):
        argv = ["eval", "--n", "4", "--d", "1", "--grid", "5",
                "--out", str(tmp_path / "missing_dir" / "x.csv")]
        code = main(argv)
        _, err = capsys.readouterr()
        assert code == 1
        assert "error:" in err
