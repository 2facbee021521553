import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from vecwave.scalar import (
    ScalarFilter,
    daubechies_filter,
    filter_by_name,
    filter_deviations,
    haar_filter,
)

ALL_NAMES = ["haar"] + [f"db{N}" for N in range(1, 11)]


def test_haar_values():
    f = haar_filter()
    r = 1.0 / math.sqrt(2.0)
    assert_allclose(f.h, [r, r], rtol=0, atol=0)
    assert_allclose(f.g, [r, -r], rtol=0, atol=0)
    assert f.h_start == 0
    assert f.g_start == 0
    assert f.vanishing_moments == 1


def test_db1_equals_haar():
    a = daubechies_filter(1)
    b = haar_filter()
    assert np.array_equal(a.h, b.h)
    assert np.array_equal(a.g, b.g)
    assert a.name == "db1"


def test_db2_closed_form():
    """The four db2 coefficients have the closed form (1 +- sqrt3)/(4 sqrt2)."""
    s3 = math.sqrt(3.0)
    s2 = math.sqrt(2.0)
    expected = np.array([1 + s3, 3 + s3, 3 - s3, 1 - s3]) / (4 * s2)
    assert_allclose(daubechies_filter(2).h, expected, rtol=0, atol=5e-16)


def test_db4_reference_values():
    # Minimal-phase 8-tap coefficients, normalized to sum sqrt(2).
    expected = [
        0.230377813309,
        0.714846570553,
        0.630880767930,
        -0.027983769417,
        -0.187034811719,
        0.030841381836,
        0.032883011667,
        -0.010597401785,
    ]
    assert_allclose(daubechies_filter(4).h, expected, rtol=0, atol=1e-11)


@pytest.mark.parametrize("name", ALL_NAMES)
def test_filter_axioms(name):
    dev = filter_deviations(filter_by_name(name))
    assert dev["sum"] <= 1e-12
    assert dev["orthonormality"] <= 1e-12
    assert dev["wavelet_sum"] <= 1e-12
    assert dev["moments"] <= 1e-10


@pytest.mark.parametrize("N", range(2, 11))
def test_qmf_mirror_relation(N):
    f = daubechies_filter(N)
    L = f.length
    assert f.g_start == 2 - L
    for i in range(L):
        assert f.g[i] == (-1.0) ** i * f.h[L - 1 - i]


@pytest.mark.parametrize("N", range(1, 11))
def test_cross_orthogonality(N):
    """h and g generate orthogonal subspaces: sum_k h[k] g[k + 2n] = 0."""
    f = daubechies_filter(N)
    L = f.length
    # Align on absolute indices; g starts at 2 - L.
    full = np.zeros(6 * L)
    full[2 * L + f.g_start : 2 * L + f.g_start + L] = f.g
    for n in range(-L, L + 1):
        acc = math.fsum(
            f.h[k] * full[2 * L + k + 2 * n] for k in range(L)
        )
        assert abs(acc) <= 1e-12


def test_filter_lengths():
    for N in range(1, 11):
        assert daubechies_filter(N).length == 2 * N


def test_filter_by_name_rejects_unknown():
    for bad in ("sym4", "dbx", "db", "coif1", ""):
        with pytest.raises(ValueError):
            filter_by_name(bad)


def test_order_guard():
    with pytest.raises(ValueError):
        daubechies_filter(0)
    with pytest.raises(ValueError):
        daubechies_filter(11)


def test_filter_arrays_frozen():
    f = daubechies_filter(3)
    with pytest.raises(ValueError):
        f.h[0] = 0.0


def test_mismatched_pair_rejected():
    with pytest.raises(ValueError):
        ScalarFilter("bad", np.ones(4), 0, np.ones(2), 0, 1)
