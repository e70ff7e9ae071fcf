import numpy as np
import pytest

from irsec.errors import IllConditioned
from irsec.numerics import conj_transpose, frobenius_norm, gram_solve, kron


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_conj_transpose_scalar():
    assert conj_transpose(np.array([[1j]])) == np.array([[-1j]])


def test_conj_transpose_identity_fixed_point():
    assert np.array_equal(conj_transpose(np.eye(2, dtype=complex)), np.eye(2))


def test_conj_transpose_involution():
    a = crandn(np.random.default_rng(3), 3, 2)
    assert np.array_equal(conj_transpose(conj_transpose(a)), a)


def test_kron_identity_block_diagonal():
    m = crandn(np.random.default_rng(0), 2, 2)
    out = kron(np.eye(2), m)
    assert np.array_equal(out[:2, :2], m)
    assert np.array_equal(out[2:, 2:], m)
    assert np.all(out[:2, 2:] == 0) and np.all(out[2:, :2] == 0)


def test_kron_ones_replicates():
    v = crandn(np.random.default_rng(1), 3)
    out = kron(np.ones(4), v)
    assert np.array_equal(out, np.concatenate([v] * 4))


def test_kron_index_formula_oracle():
    # entry (i*Rb + k, j*Cb + l) = a[i,j] * b[k,l] (vectorized complex
    # multiply may use FMA, so compare at machine precision)
    rng = np.random.default_rng(2)
    a, b = crandn(rng, 2, 2), crandn(rng, 2, 2)
    out = kron(a, b)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    assert np.isclose(out[i * 2 + k, j * 2 + l], a[i, j] * b[k, l],
                                      rtol=1e-13, atol=0)


def test_kron_mixed_product_property():
    rng = np.random.default_rng(4)
    for _ in range(5):
        a, c = crandn(rng, 2, 3), crandn(rng, 3, 2)
        b, d = crandn(rng, 3, 2), crandn(rng, 2, 3)
        lhs = kron(a, b) @ kron(c, d)
        rhs = kron(a @ c, b @ d)
        assert np.allclose(lhs, rhs, rtol=1e-12)


def test_frobenius_identity():
    assert frobenius_norm(np.eye(3)) == pytest.approx(np.sqrt(3), rel=1e-15)


def test_frobenius_zero():
    assert frobenius_norm(np.zeros((2, 5))) == 0.0


def test_frobenius_matches_elementwise_sum_oracle():
    m = crandn(np.random.default_rng(5), 4, 2)
    oracle = np.sqrt(sum(abs(x) ** 2 for x in m.ravel()))
    assert frobenius_norm(m) == pytest.approx(oracle, rel=1e-14)
    assert frobenius_norm(conj_transpose(m)) == pytest.approx(oracle, rel=1e-14)


def test_gram_solve_orthonormal_columns():
    rng = np.random.default_rng(6)
    h, _ = np.linalg.qr(crandn(rng, 6, 3))
    x = gram_solve(h, np.eye(3, dtype=complex))
    assert np.allclose(x, h, rtol=0, atol=1e-12)


def test_gram_solve_single_column():
    rng = np.random.default_rng(7)
    h = crandn(rng, 5, 1)
    x = gram_solve(h, np.array([[1.0 + 0j]]))
    assert np.allclose(x, h / np.linalg.norm(h) ** 2, rtol=1e-13)


def test_gram_solve_residual_oracle():
    rng = np.random.default_rng(8)
    h = crandn(rng, 6, 3)
    x = gram_solve(h, np.eye(3, dtype=complex))
    assert np.linalg.norm(conj_transpose(h) @ x - np.eye(3)) < 1e-10


def test_gram_solve_ill_conditioned_raises():
    h = np.ones((4, 2), dtype=complex)  # identical columns
    with pytest.raises(IllConditioned):
        gram_solve(h, np.eye(2, dtype=complex))


def test_gram_solve_rejects_wide():
    with pytest.raises(ValueError):
        gram_solve(np.ones((2, 4), dtype=complex), np.eye(4, dtype=complex))


def test_gram_solve_residual_bound_or_raise():
    # invariant: residual <= 1e-9 ||rhs||_F unless IllConditioned was raised,
    # including near-degenerate inputs
    rng = np.random.default_rng(9)
    for trial in range(50):
        h = crandn(rng, 6, 3)
        if trial % 3 == 0:
            h[:, 2] = h[:, 1] + 10.0 ** -rng.uniform(2, 12) * crandn(rng, 6)
        rhs = np.eye(3, dtype=complex)
        try:
            x = gram_solve(h, rhs)
        except IllConditioned:
            continue
        res = np.linalg.norm(conj_transpose(h) @ x - rhs)
        assert res <= 1e-9 * np.linalg.norm(rhs)
