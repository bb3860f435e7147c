"""Scan kernel selection and parity between the compiled and pure paths."""

import numpy as np
import pytest

from diophlab import _scan_py
from diophlab import kernels


def test_a_kernel_is_selected():
    assert kernels.KERNEL_NAME in ("cython", "python")


def test_shell_points_small_cases():
    pts = _scan_py.shell_points(1, 5)
    assert pts.tolist() == [[5]]
    pts2 = _scan_py.shell_points(2, 1)
    got = {tuple(p) for p in pts2.tolist()}
    # |x|_sup = 1, first nonzero positive
    assert got == {(1, -1), (1, 0), (1, 1), (0, 1)}


def test_shell_points_counts():
    # oriented shell size is ((2M+1)^k - (2M-1)^k) / 2
    for k in (1, 2, 3):
        for M in (1, 2, 4):
            n = _scan_py.shell_points(k, M).shape[0]
            assert n == ((2 * M + 1) ** k - (2 * M - 1) ** k) // 2


def test_shell_points_orientation_and_norm():
    for k in (2, 3):
        pts = _scan_py.shell_points(k, 3)
        arr = np.asarray(pts)
        assert (np.max(np.abs(arr), axis=1) == 3).all()
        for row in arr:
            nz = row[row != 0]
            assert nz.size and nz[0] > 0


def test_kernel_parity_on_stream():
    try:
        from diophlab import _scanext
    except ImportError:
        pytest.skip("compiled kernel not built")
    theta = np.array([[0.6180339887498949]], dtype=np.float64)
    out_a = _scan_py.scan_stream(theta, 200, 1e-9, 1e-9, 1, 1)
    out_b = _scanext.scan_stream(theta, 200, 1e-9, 1e-9, 1, 1)
    rec_a, prod_a, runmin_a, prodmin_a, scanned_a = out_a
    rec_b, prod_b, runmin_b, prodmin_b, scanned_b = out_b
    assert scanned_a == scanned_b
    assert set(rec_a) == set(rec_b)
    assert set(prod_a) == set(prod_b)


def test_kernel_parity_two_dims():
    try:
        from diophlab import _scanext
    except ImportError:
        pytest.skip("compiled kernel not built")
    theta = np.array([[0.414213, 0.732050], [0.267949, 0.577350]], dtype=np.float64)
    out_a = _scan_py.scan_stream(theta, 15, 1e-8, 1e-8, 2, 2)
    out_b = _scanext.scan_stream(theta, 15, 1e-8, 1e-8, 2, 2)
    assert out_a[4] == out_b[4]
    assert set(out_a[0]) == set(out_b[0])
    assert set(out_a[1]) == set(out_b[1])


def test_forced_python_kernel(monkeypatch):
    import importlib

    monkeypatch.setenv("DIOPHLAB_FORCE_KERNEL", "python")
    mod = importlib.reload(kernels)
    try:
        assert mod.KERNEL_NAME == "python"
    finally:
        monkeypatch.delenv("DIOPHLAB_FORCE_KERNEL")
        importlib.reload(kernels)
