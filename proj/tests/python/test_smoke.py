"""Smoke tests for the python bindings."""

import math

import pytest

pcwave = pytest.importorskip("pcwave")


def test_sqrtm2_antisymmetric():
    r = pcwave.sqrtm2([[0.0, 2.0], [-2.0, 0.0]])
    expect = [[1.0, 1.0], [-1.0, 1.0]]
    for i in range(2):
        for j in range(2):
            assert abs(r[i][j] - expect[i][j]) < 1e-12


def test_expm2_rotation_generator():
    e = pcwave.expm2([[0.0, 1.0j], [-1.0j, 0.0]], 1.0)
    assert abs(e[0][0] - math.cosh(1.0)) < 1e-12
    assert abs(e[0][1] - 1.0j * math.sinh(1.0)) < 1e-12


def test_eig2_diag():
    l1, l2, vec, degenerate = pcwave.eig2([[2.0, 0.0], [0.0, -1.0]])
    assert abs(l1 - 2.0) < 1e-14
    assert abs(l2 + 1.0) < 1e-14
    assert not degenerate


def test_propagate_lossless_pair_production():
    m = pcwave.propagate_constant_coupling(
        alpha1=0.0, alpha2=0.0, delta_k=0.0, kappa=1.0, theta=0.0,
        geometry="forward", length=1.0)
    assert abs(m["m_ada"][0][0].real - math.sinh(1.0) ** 2) < 1e-12
    assert abs(m["comm1"] - 1.0) < 1e-12
    assert abs(m["comm2"] - 1.0) < 1e-12


def test_defective_square_root_raises():
    with pytest.raises(pcwave.NumericError):
        pcwave.sqrtm2([[0.0, 1.0], [0.0, 0.0]])


def test_run_spectra_writes_files(tmp_path):
    files = pcwave.run_spectra("group_delay", model="macro", grid_points=32,
                               out_dir=str(tmp_path))
    assert len(files) == 18
    assert (tmp_path / "manifest.json").exists()
    assert (tmp_path / "macro_corr_a2_a1.csv").exists()
