import io
import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from dtop.cli import UsageError, build_parser, parse_family, parse_grid, parse_radii, run
from dtop.operator import TruncatedOperator
from dtop.quadrature_io import (
    load_symbol,
    load_vector,
    read_matrix_csv,
    read_series_csv,
    write_matrix_csv,
)
from dtop.symbols import HarmonicSymbol

FIX = Path(__file__).resolve().parent.parent / "fixtures"
COMMANDS = [
    "matrix",
    "apply",
    "check-bh",
    "recover",
    "berezin",
    "commute",
    "product",
    "compact-witness",
    "carleson",
    "decay",
]


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(autouse=True)
def _clean_tol(monkeypatch):
    monkeypatch.delenv("DTOP_TOL", raising=False)


class TestSpecParsers:
    def test_grid(self):
        pts = parse_grid("0.1:0.9:5@8")
        assert len(pts) == 40
        assert abs(pts[0] - 0.1) < 1e-15
        assert max(abs(p) for p in pts) == pytest.approx(0.9)

    @pytest.mark.parametrize("spec", ["0.1:0.9", "a:b:c@d", "0.1:0.9:0@8", "0.5:1.0:3@4"])
    def test_bad_grid(self, spec):
        with pytest.raises(UsageError):
            parse_grid(spec)

    def test_radii(self):
        assert parse_radii("0.5,0.9,0.99") == [0.5, 0.9, 0.99]
        assert parse_radii("0:0.5:3") == [0.0, 0.25, 0.5]
        with pytest.raises(UsageError):
            parse_radii("0.5,1.0")

    def test_family(self):
        fam, desc = parse_family("monomials:4")
        assert len(fam) == 4 and "4" in desc
        fam, _ = parse_family("kernels:0.3:0.6:2@4")
        assert len(fam) == 8
        with pytest.raises(UsageError):
            parse_family("bananas:3")


class TestExamples:
    def test_check_bh_symbol(self):
        code, out, _ = cli("check-bh", "--symbol", FIX / "z_plus_2zbar.json", "--n", 8)
        assert code == 0
        assert "residual = 0\n" in out
        assert "tolerance = 1.0e-12" in out

    def test_recover_fixture(self, tmp_path):
        dest = tmp_path / "phi.json"
        code, out, _ = cli(
            "recover", "--matrix", FIX / "t_z_plus_2zbar_n64.csv", "--k", 8, "--norm-bound", 4, "--out", dest
        )
        assert code == 0, out
        assert load_symbol(dest) == load_symbol(FIX / "z_plus_2zbar.json")
        assert "tolerance" in out

    def test_commute_witness(self):
        code, out, _ = cli("commute", "--symbol-a", FIX / "z.json", "--symbol-b", FIX / "zbar.json")
        assert code == 0
        assert "commute = false" in out
        assert "witness m=1 n=1" in out
        assert "tolerance" in out

    def test_commute_self(self):
        f = FIX / "z_plus_zbar2.json"
        code, out, _ = cli("commute", "--symbol-a", f, "--symbol-b", f)
        assert code == 0 and "commute = true" in out


class TestSubcommands:
    def test_matrix_csv_and_json(self, tmp_path):
        code, _, _ = cli("matrix", "--symbol", FIX / "z_plus_2zbar.json", "--n", 3, "--out", tmp_path / "m.csv")
        assert code == 0
        want = np.array([[0, 2, 0], [1, 0, 2], [0, 1, 0]])
        assert np.array_equal(read_matrix_csv(tmp_path / "m.csv").entries, want)
        code, _, _ = cli("matrix", "--symbol", FIX / "z.json", "--n", 4, "--out", tmp_path / "m.json")
        assert code == 0
        assert json.loads((tmp_path / "m.json").read_text())["N"] == 4

    def test_apply(self, tmp_path):
        code, _, _ = cli(
            "apply", "--symbol", FIX / "z_plus_2zbar.json", "--vector", FIX / "z2_vector.json", "--out", tmp_path / "v.json"
        )
        assert code == 0
        assert load_vector(tmp_path / "v.json").to_dict() == {1: 2, 3: 1}

    def test_check_bh_not_toeplitz(self, tmp_path):
        p = tmp_path / "d.csv"
        write_matrix_csv(TruncatedOperator(np.diag([1.0, 2.0, 3.0])), p)
        code, out, _ = cli("check-bh", "--matrix", p)
        assert code == 0
        assert "residual = 1.000000e+00" in out
        assert "not Toeplitz" in out and "i=1, j=1" in out

    def test_recover_not_toeplitz(self, tmp_path):
        p = tmp_path / "d.csv"
        write_matrix_csv(TruncatedOperator(np.diag([1.0, 2.0, 3.0, 4.0])), p)
        code, _, err = cli("recover", "--matrix", p, "--k", 2, "--norm-bound", 10, "--out", tmp_path / "o.json")
        assert code == 1
        assert "A[1,1]" in err
        assert not (tmp_path / "o.json").exists()

    def test_recover_k_too_large(self, tmp_path):
        code, _, err = cli(
            "recover", "--matrix", FIX / "t_z_plus_2zbar_n64.csv", "--k", 64, "--norm-bound", 4, "--out", tmp_path / "o.json"
        )
        assert code == 2 and "size" in err

    def test_berezin(self, tmp_path):
        code, out, _ = cli("berezin", "--symbol", FIX / "z_plus_2zbar.json", "--grid", "0.1:0.9:3@4", "--out", tmp_path / "b.csv")
        assert code == 0
        rows = read_series_csv(tmp_path / "b.csv")
        assert len(rows) == 12
        assert max(r[-1] for r in rows) <= 1e-8
        assert "tail = 1.0e-10" in out

    def test_product(self, tmp_path):
        code, out, _ = cli(
            "product", "--symbol-a", FIX / "zbar.json", "--symbol-b", FIX / "z_plus_2zbar.json", "--out", tmp_path / "t.json"
        )
        assert code == 0 and "product_is_toeplitz = true" in out
        assert load_symbol(tmp_path / "t.json") == HarmonicSymbol({0: 1}, {2: 2})
        code, out, _ = cli("product", "--symbol-a", FIX / "z.json", "--symbol-b", FIX / "zbar.json", "--out", tmp_path / "u.json")
        assert code == 0 and "product_is_toeplitz = false" in out
        assert not (tmp_path / "u.json").exists()

    def test_compact_witness(self, tmp_path):
        code, out, _ = cli("compact-witness", "--symbol", FIX / "zbar.json", "--m-max", 4, "--out", tmp_path / "w.csv")
        assert code == 0
        assert "m=1 norm=0.707106781186548" in out
        assert len(read_series_csv(tmp_path / "w.csv")) == 4

    def test_carleson(self, tmp_path):
        code, out, _ = cli("carleson", "--symbol", FIX / "z.json", "--family", "monomials:6", "--out", tmp_path / "c.csv")
        assert code == 0
        assert "lower_bound = 0.5" in out
        assert len(read_series_csv(tmp_path / "c.csv")) == 6

    def test_decay_bloch(self, tmp_path):
        code, out, _ = cli("decay", "--mode", "bloch", "--symbol", FIX / "z.json", "--radii", "0,0.5,0.9,0.99", "--out", tmp_path / "d.csv")
        assert code == 0
        vals = [v for _, v in read_series_csv(tmp_path / "d.csv")]
        assert vals == pytest.approx([1, 0.75, 0.19, 0.0199], abs=1e-15)

    def test_decay_compact_product(self, tmp_path):
        code, _, _ = cli(
            "decay", "--mode", "compact-product", "--symbol-a", FIX / "zbar.json", "--symbol-b", FIX / "z.json",
            "--tau", FIX / "one.json", "--radii", "0.5,0.9,0.99", "--out", tmp_path / "d.csv",
        )
        assert code == 0
        vals = [v for _, v in read_series_csv(tmp_path / "d.csv")]
        assert vals[0] > vals[1] > vals[2] and vals[2] <= 0.05


class TestErrors:
    def test_unknown_flag(self):
        code, _, err = cli("check-bh", "--bogus")
        assert code == 2 and "usage" in err

    def test_no_command(self):
        assert cli()[0] == 2

    def test_missing_file(self, tmp_path):
        code, _, err = cli("check-bh", "--matrix", tmp_path / "none.csv")
        assert code == 2 and "none.csv" in err

    def test_bad_symbol_file(self, tmp_path):
        p = tmp_path / "s.json"
        p.write_text('{"pos": [[1, 1, 0], [1, 2, 0]]}')
        code, _, err = cli("commute", "--symbol-a", p, "--symbol-b", p)
        assert code == 2 and "duplicate" in err

    def test_bad_tol_env(self, monkeypatch):
        monkeypatch.setenv("DTOP_TOL", "abc")
        code, _, err = cli("check-bh", "--symbol", FIX / "z.json", "--n", 4)
        assert code == 2 and "DTOP_TOL" in err

    def test_tol_env_used(self, monkeypatch):
        monkeypatch.setenv("DTOP_TOL", "1e-6")
        code, out, _ = cli("check-bh", "--symbol", FIX / "z.json", "--n", 4)
        assert code == 0 and "tolerance = 1.0e-06" in out

    @pytest.mark.parametrize(
        "argv",
        [
            ["check-bh", "--symbol", "S"],
            ["matrix", "--symbol", "S", "--n", "0", "--out", "OUT"],
            ["recover", "--matrix", "M", "--k", "-1", "--norm-bound", "1", "--out", "OUT"],
            ["recover", "--matrix", "M", "--k", "1", "--norm-bound", "nan", "--out", "OUT"],
            ["compact-witness", "--symbol", "S", "--m-max", "0"],
            ["berezin", "--symbol", "S", "--grid", "0.1:0.99:2@4", "--out", "OUT"],
            ["berezin", "--symbol", "S", "--grid", "0.1:0.5:2@4", "--tail", "0", "--out", "OUT"],
            ["decay", "--mode", "bloch", "--radii", "0.5", "--out", "OUT"],
            ["decay", "--mode", "compact-product", "--symbol-a", "S", "--radii", "0.5", "--out", "OUT"],
            ["decay", "--mode", "bloch", "--symbol", "S", "--radii", "2", "--out", "OUT"],
            ["carleson", "--symbol", "S", "--family", "monomials:0", "--out", "OUT"],
        ],
    )
    def test_validation_before_work(self, tmp_path, argv):
        # flags are rejected before any input is read or output written
        argv = [str(FIX / "z.json") if a == "S" else a for a in argv]
        argv = [str(FIX / "t_z_plus_2zbar_n64.csv") if a == "M" else a for a in argv]
        argv = [str(tmp_path / "out") if a == "OUT" else a for a in argv]
        code, _, err = cli(*argv)
        assert code == 2, err
        assert not (tmp_path / "out").exists()


class TestHelp:
    def test_every_command_listed(self):
        text = build_parser().format_help()
        for name in COMMANDS:
            assert name in text

    @pytest.mark.parametrize("name", COMMANDS)
    def test_subcommand_help(self, name):
        code, out, _ = cli(name, "--help")
        assert code == 0
        assert out.startswith("usage: dtop " + name)


class TestToleranceReported:
    @pytest.mark.parametrize(
        "argv",
        [
            ["berezin", "--symbol", "S", "--grid", "0.2:0.4:2@3", "--out", "OUT"],
            ["product", "--symbol-a", "S", "--symbol-b", "S", "--out", "OUT"],
            ["compact-witness", "--symbol", "S", "--m-max", "3"],
            ["carleson", "--symbol", "S", "--family", "monomials:2", "--out", "OUT"],
            ["decay", "--mode", "bloch", "--symbol", "S", "--radii", "0.5", "--out", "OUT"],
        ],
    )
    def test_tolerance_line(self, tmp_path, argv):
        argv = [str(FIX / "z.json") if a == "S" else a for a in argv]
        argv = [str(tmp_path / "out") if a == "OUT" else a for a in argv]
        code, out, _ = cli(*argv)
        assert code == 0
        assert "tolerance = 1.0e-12" in out


class TestDeterminism:
    def test_byte_identical(self, tmp_path):
        outs = []
        for i in range(2):
            dest = tmp_path / f"b{i}.csv"
            code, out, _ = cli("berezin", "--symbol", FIX / "z_plus_zbar2.json", "--grid", "0.2:0.8:3@5", "--out", dest)
            assert code == 0
            outs.append((out, dest.read_bytes()))
        assert outs[0] == outs[1]

    def test_console_script(self):
        proc = subprocess.run(
            [sys.executable, "-m", "dtop.cli", "check-bh", "--symbol", str(FIX / "z.json"), "--n", "5"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "residual = 0" in proc.stdout
