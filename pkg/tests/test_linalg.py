import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qrelations import linalg
from qrelations.errors import PSDError, ShapeError, SizeError, SymmetryError
from qrelations.states import PHI_PLUS, horodecki_matrix, projector

from oracles import hermitian_eigs_oracle


def random_hermitian(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (a + a.conj().T)


def test_kron_identity():
    assert np.array_equal(linalg.kron(linalg.I2, linalg.I2), np.eye(4))


def test_kron_sy_sy_antidiagonal():
    yy = linalg.kron(linalg.SY, linalg.SY)
    expected = np.zeros((4, 4))
    expected[0, 3], expected[1, 2], expected[2, 1], expected[3, 0] = -1, 1, 1, -1
    assert np.array_equal(yy, expected)


def test_kron_projectors():
    out = linalg.kron(np.diag([1, 0]), np.diag([0, 1]))
    assert np.array_equal(out, np.diag([0, 1, 0, 0]))


def test_kron_size_limit():
    linalg.kron(*[linalg.I2] * 6)
    with pytest.raises(SizeError):
        linalg.kron(*[linalg.I2] * 7)


def test_eig_identity_and_pauli():
    assert np.array_equal(linalg.eig_hermitian(np.eye(3)), [1.0, 1.0, 1.0])
    assert np.allclose(linalg.eig_hermitian(linalg.SZ), [-1.0, 1.0], atol=0)


def test_eig_rejects_bad_input():
    with pytest.raises(SymmetryError):
        linalg.eig_hermitian(np.array([[0, 1], [0, 0]]))
    with pytest.raises(ShapeError):
        linalg.eig_hermitian(np.zeros((2, 3)))


@pytest.mark.parametrize("seed", range(20))
def test_eig_matches_charpoly_bisection(seed):
    rng = np.random.default_rng(seed)
    h = random_hermitian(rng, 4)
    ref = sorted(hermitian_eigs_oracle(h))
    assert len(ref) == 4
    assert np.max(np.abs(linalg.eig_hermitian(h) - ref)) <= 1e-9


def test_eig_vectors_reconstruct():
    rng = np.random.default_rng(7)
    h = random_hermitian(rng, 8)
    w, v = linalg.eig_hermitian(h, vectors=True)
    assert np.max(np.abs(v.conj().T @ v - np.eye(8))) < 1e-12
    assert np.max(np.abs(v @ np.diag(w) @ v.conj().T - h)) < 1e-12
    assert np.all(np.diff(w) >= 0)


def test_eig_batched_equals_single():
    rng = np.random.default_rng(3)
    hs = np.array([random_hermitian(rng, 4) for _ in range(5)])
    batched = linalg.eig_hermitian(hs)
    for h, w in zip(hs, batched):
        assert np.array_equal(w, linalg.eig_hermitian(h))


def test_eig_keeps_exact_zeros():
    w = linalg.eig_hermitian(np.diag([0.0, 0.5, 0.0, 0.5]))
    assert list(w) == [0.0, 0.0, 0.5, 0.5]


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-10, 10), min_size=16, max_size=16),
       st.lists(st.floats(-10, 10), min_size=16, max_size=16))
def test_eig_trace_and_sum(re, im):
    a = np.array(re).reshape(4, 4) + 1j * np.array(im).reshape(4, 4)
    h = 0.5 * (a + a.conj().T)
    w = linalg.eig_hermitian(h)
    scale = 1.0 + np.abs(h).max()
    assert abs(w.sum() - np.trace(h).real) <= 1e-12 * scale * 4
    assert abs(np.sum(w ** 2) - np.sum(np.abs(h) ** 2)) <= 1e-11 * scale ** 2


def test_partial_trace_product():
    rho = linalg.kron(np.diag([1, 0]), np.diag([0, 1]))
    assert np.array_equal(linalg.partial_trace(rho, 2, {0}), np.diag([1, 0]))
    assert np.array_equal(linalg.partial_trace(rho, 2, {1}), np.diag([0, 1]))


def test_partial_trace_bell_marginal():
    red = linalg.partial_trace(projector(PHI_PLUS), 2, {0})
    assert np.allclose(red, np.eye(2) / 2, atol=1e-15)


def test_partial_trace_keeps_order_and_batches():
    rng = np.random.default_rng(0)
    a, b, c = (random_hermitian(rng, 2) for _ in range(3))
    rho = linalg.kron(a, b, c)
    red = linalg.partial_trace(rho, 3, {0, 2})
    assert np.allclose(red, np.trace(b) * linalg.kron(a, c), atol=1e-12)
    stack = np.array([rho, 2 * rho])
    assert np.allclose(linalg.partial_trace(stack, 3, {0, 2})[1], 2 * red, atol=1e-12)


def test_partial_trace_bad_index():
    with pytest.raises(IndexError):
        linalg.partial_trace(np.eye(4) / 4, 2, {2})


def test_psd_sqrt_examples():
    assert np.allclose(linalg.psd_sqrt(np.eye(4)), np.eye(4), atol=1e-15)
    assert np.allclose(linalg.psd_sqrt(np.diag([4.0, 1, 0, 0])), np.diag([2.0, 1, 0, 0]), atol=1e-15)
    rho = horodecki_matrix(0.5)
    s = linalg.psd_sqrt(rho)
    assert np.max(np.abs(s @ s - rho)) <= 1e-10


def test_psd_sqrt_rejects_negative():
    with pytest.raises(PSDError):
        linalg.psd_sqrt(np.diag([1.0, -1e-6]))
    # tiny negative noise is clamped
    s = linalg.psd_sqrt(np.diag([1.0, -1e-12]))
    assert s[1, 1] == 0.0


@pytest.mark.parametrize("seed", range(10))
def test_singular_values_match_oracle(seed):
    rng = np.random.default_rng(50 + seed)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    ref = sorted((math.sqrt(max(x, 0.0)) for x in hermitian_eigs_oracle(a.conj().T @ a)), reverse=True)
    assert np.max(np.abs(linalg.singular_values(a) - ref)) <= 1e-9


def test_singular_values_small_and_exact():
    # a tiny singular value survives to round-off, not to sqrt(round-off)
    a = np.diag([1.0, 0.5, 1e-13, 0.0]).astype(complex)
    u = linalg.kron(linalg.SX + linalg.SZ, linalg.I2) / math.sqrt(2)
    sv = linalg.singular_values(u @ a @ u.conj().T)
    assert np.max(np.abs(sv - [1.0, 0.5, 1e-13, 0.0])) <= 1e-15
    assert list(linalg.singular_values(np.zeros((3, 3)))) == [0.0, 0.0, 0.0]
