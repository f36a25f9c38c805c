import json
import math

import numpy as np
import pytest

from hypsurf.eigensolve import (disc_surface_mesh, export_eigendata,
                                fem_eigensolve, ingest_eigendata, torus_mesh)
from hypsurf.errors import (FormatError, OrthonormalityViolation,
                            ResidualViolation)
from hypsurf.fuchsian import bolza_group, random_cover


@pytest.fixture(scope="module")
def bolza():
    return bolza_group()


@pytest.fixture(scope="module")
def bolza_data(bolza):
    return fem_eigensolve(disc_surface_mesh(bolza, 0.05), 16)


class TestTorusSelfTest:
    def test_first_ten_modes(self):
        data = fem_eigensolve(torus_mesh(0.02), 10)
        exact = sorted(4 * math.pi ** 2 * (m * m + n * n)
                       for m in range(-3, 4) for n in range(-3, 4))[:10]
        for got, want in zip(data.eigenvalues, exact):
            assert got == pytest.approx(want, rel=0.02, abs=1e-8)

    def test_ground_state_constant(self):
        data = fem_eigensolve(torus_mesh(0.05), 4)
        assert abs(data.eigenvalues[0]) < 1e-10
        psi0 = data.eigenvectors[:, 0]
        assert np.std(psi0) < 1e-8 * np.abs(psi0).max()


class TestBolzaSolve:
    def test_ground_state(self, bolza_data):
        assert abs(bolza_data.eigenvalues[0]) < 1e-3
        psi0 = bolza_data.eigenvectors[:, 0]
        assert np.std(psi0) < 1e-6 * np.abs(psi0).max()

    def test_orthonormal(self, bolza_data):
        assert bolza_data.gram_deviation() < bolza_data.ortho_tol

    def test_volume_close(self, bolza_data):
        assert np.sum(bolza_data.weights) == pytest.approx(4 * math.pi, rel=0.05)

    def test_weyl_tendency(self, bolza_data):
        # N(nu) ~ Vol * nu / (4 pi) at coarse tolerance
        nu = 8.0
        count = int(np.sum((bolza_data.eigenvalues > 1e-6)
                           & (bolza_data.eigenvalues <= nu)))
        predicted = 4 * math.pi * nu / (4 * math.pi)
        assert count == pytest.approx(predicted, rel=0.5)

    def test_cover_volume_and_ground_state(self, bolza):
        cov = random_cover(bolza, 2, seed=23)
        data = fem_eigensolve(disc_surface_mesh(cov, 0.05), 8)
        assert np.sum(data.weights) == pytest.approx(8 * math.pi, rel=0.05)
        assert abs(data.eigenvalues[0]) < 1e-3

    def test_h_guard(self, bolza):
        with pytest.raises(ValueError):
            disc_surface_mesh(bolza, 0.5)


class TestEigenDataIO:
    def test_round_trip_bitwise(self, bolza_data, tmp_path):
        base = str(tmp_path / "bolza")
        export_eigendata(bolza_data, base)
        back = ingest_eigendata(base)
        assert np.array_equal(back.eigenvalues, bolza_data.eigenvalues)
        assert np.array_equal(back.eigenvectors, bolza_data.eigenvectors)
        assert np.array_equal(back.weights, bolza_data.weights)
        assert np.array_equal(back.points, bolza_data.points)

    def test_torus_file_accepted(self, tmp_path):
        data = fem_eigensolve(torus_mesh(0.05), 10)
        base = str(tmp_path / "torus")
        export_eigendata(data, base)
        back = ingest_eigendata(base)
        assert back.n_modes == 10

    def test_corrupted_gram_rejected(self, bolza_data, tmp_path):
        base = str(tmp_path / "bad")
        export_eigendata(bolza_data, base)
        modes = np.loadtxt(base + "_modes.csv", delimiter=",", ndmin=2)
        modes[1] = modes[0]   # duplicate row breaks orthonormality
        with open(base + "_modes.csv", "w") as f:
            for row in modes:
                f.write(",".join("%.17g" % v for v in row) + "\n")
        with pytest.raises(OrthonormalityViolation):
            ingest_eigendata(base)

    def test_missing_header_field(self, bolza_data, tmp_path):
        base = str(tmp_path / "hdr")
        export_eigendata(bolza_data, base)
        with open(base + ".json") as f:
            header = json.load(f)
        del header["residuals"]
        with open(base + ".json", "w") as f:
            json.dump(header, f)
        with pytest.raises(FormatError):
            ingest_eigendata(base)

    def test_shape_mismatch(self, bolza_data, tmp_path):
        base = str(tmp_path / "shape")
        export_eigendata(bolza_data, base)
        with open(base + "_eigs.csv", "a") as f:
            f.write("99.0\n")
        with pytest.raises(FormatError):
            ingest_eigendata(base)

    def test_residual_violation(self, bolza_data, tmp_path):
        base = str(tmp_path / "res")
        export_eigendata(bolza_data, base)
        with open(base + ".json") as f:
            header = json.load(f)
        header["residuals"][0] = 10.0 * header["residual_tol"]
        with open(base + ".json", "w") as f:
            json.dump(header, f)
        with pytest.raises(ResidualViolation):
            ingest_eigendata(base)
