import json
import os

import pytest

from hypsurf.cli import main


def read(out_dir, name):
    with open(os.path.join(out_dir, name + ".json")) as f:
        return json.load(f)


def read_bytes(out_dir, name):
    with open(os.path.join(out_dir, name + ".json"), "rb") as f:
        return f.read()


class TestBasicRuns:
    def test_toy1d(self, tmp_path):
        out = str(tmp_path)
        assert main(["toy1d", "--out", out, "--L", "100", "--window", "1:2"]) == 0
        d = read(out, "toy1d")
        assert d["passed"] and d["variance"] <= d["parseval_bound"]
        assert os.path.exists(os.path.join(out, "toy1d.csv"))

    def test_geometry_check(self, tmp_path):
        out = str(tmp_path)
        assert main(["geometry-check", "--out", out, "--samples", "300"]) == 0
        d = read(out, "geometry_check")
        assert max(d["worst_deviations"].values()) < 1e-8

    def test_prop33(self, tmp_path):
        out = str(tmp_path)
        assert main(["prop33", "--out", out, "--T", "5,10",
                     "--lam-spacing", "0.1"]) == 0
        d = read(out, "prop33")
        assert d["pass"] and all(c > 0 for c in d["c_min"])
        assert "lemmaA1_constant" in d

    def test_orbit_and_bs(self, tmp_path):
        out = str(tmp_path)
        assert main(["orbit", "--out", out, "--R", "3.1"]) == 0
        assert read(out, "orbit")["count"] == 9
        assert main(["bs-stat", "--out", out, "--R", "1.0",
                     "--samples", "40"]) == 0
        assert read(out, "bs_stat")["value"] == 0.0

    def test_symbol(self, tmp_path):
        out = str(tmp_path)
        assert main(["symbol", "--out", out]) == 0
        assert read(out, "symbol")["max_laplacian_symbol_gap"] < 1e-5

    def test_beta_norm(self, tmp_path):
        out = str(tmp_path)
        assert main(["beta-norm", "--out", out]) == 0
        assert read(out, "beta_norm")["bounded_band"]

    def test_fem_torus(self, tmp_path):
        out = str(tmp_path)
        assert main(["fem", "--out", out, "--surface", "torus", "--h", "0.05",
                     "--modes", "6", "--export", "torusdata"]) == 0
        d = read(out, "fem")
        assert abs(d["eigenvalues"][0]) < 1e-10
        assert os.path.exists(os.path.join(out, "torusdata.json"))


class TestContracts:
    def test_unknown_flag_exits_2(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["toy1d", "--no-such-flag"])
        assert exc.value.code == 2

    def test_unknown_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_deterministic_summaries(self, tmp_path):
        out = str(tmp_path)
        args = ["geometry-check", "--out", out, "--samples", "200", "--seed", "7"]
        assert main(args) == 0
        first = read_bytes(out, "geometry_check")
        assert main(args) == 0
        assert read_bytes(out, "geometry_check") == first

    def test_config_file_override(self, tmp_path):
        out = str(tmp_path)
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"L": 200.0}))
        assert main(["--config", str(cfg), "toy1d", "--out", out]) == 0
        assert read(out, "toy1d")["config"]["L"] == 200.0

    def test_provenance_fields_present(self, tmp_path):
        out = str(tmp_path)
        assert main(["toy1d", "--out", out]) == 0
        cfg = read(out, "toy1d")["config"]
        for key in ("seed", "weight_convention", "subcommand"):
            assert key in cfg

    def test_machine_readable_failure(self, tmp_path, capsys):
        # empty spectral window is a domain error -> exit 1 with a JSON record
        out = str(tmp_path)
        code = main(["toy1d", "--out", out, "--L", "1", "--window", "1:1.1"])
        assert code == 1
        err = capsys.readouterr().err
        rec = json.loads(err.strip())
        assert rec["error"] == "EmptyWindow"
