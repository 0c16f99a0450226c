import numpy as np
import pytest

from choilab.errors import DimensionError, NotHermitianError
from choilab.linalg import (
    BipartiteIndex,
    commutation_matrix,
    haar_unitary,
    hermitian_eigenvalues,
    kron,
    make_rng,
    matrix_unit,
    max_entangled,
    partial_trace,
    partial_transpose,
    random_hermitian,
    swap,
    unvec,
    vec,
)


def _rand(shape, seed):
    rng = np.random.default_rng(seed)
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def _ptrace_oracle(rho, d_a, d_b, factor):
    # explicit double sum, written independently of the einsum implementation
    if factor == "B":
        out = np.zeros((d_a, d_a), dtype=complex)
        for i in range(d_a):
            for j in range(d_a):
                for k in range(d_b):
                    out[i, j] += rho[i * d_b + k, j * d_b + k]
    else:
        out = np.zeros((d_b, d_b), dtype=complex)
        for k in range(d_b):
            for l in range(d_b):
                for i in range(d_a):
                    out[k, l] += rho[i * d_b + k, i * d_b + l]
    return out


def _ptranspose_oracle(rho, d_a, d_b, factor):
    out = np.zeros_like(rho)
    for i in range(d_a):
        for j in range(d_a):
            for k in range(d_b):
                for l in range(d_b):
                    if factor == "A":
                        out[i * d_b + k, j * d_b + l] = rho[j * d_b + k, i * d_b + l]
                    else:
                        out[i * d_b + k, j * d_b + l] = rho[i * d_b + l, j * d_b + k]
    return out


def test_bipartite_index():
    idx = BipartiteIndex(2, 3)
    assert idx.dim == 6
    assert idx.flat(1, 2) == 5
    assert idx.split(4) == (1, 1)
    with pytest.raises(DimensionError):
        BipartiteIndex(0, 2)


def test_kron_examples():
    assert np.abs(kron(np.eye(2), np.eye(2)) - np.eye(4)).max() == 0
    assert np.abs(kron(np.diag([1, 2]), np.diag([3, 4])) - np.diag([3, 4, 6, 8])).max() == 0
    m = kron(matrix_unit(2, 0, 1), matrix_unit(2, 1, 0))
    expected = np.zeros((4, 4))
    expected[1, 2] = 1
    assert np.abs(m - expected).max() == 0


def test_kron_entry_layout():
    x, y = _rand((2, 2), 1), _rand((3, 3), 2)
    m = kron(x, y)
    idx = BipartiteIndex(2, 3)
    for i in range(2):
        for j in range(2):
            for k in range(3):
                for l in range(3):
                    assert abs(m[idx.flat(i, k), idx.flat(j, l)] - x[i, j] * y[k, l]) < 1e-14


def test_kron_associative_and_trace():
    x, y, z = _rand((2, 2), 3), _rand((3, 3), 4), _rand((2, 2), 5)
    assert np.abs(kron(kron(x, y), z) - kron(x, kron(y, z))).max() < 1e-10
    assert abs(np.trace(kron(x, y)) - np.trace(x) * np.trace(y)) < 1e-10


def test_partial_trace_examples():
    idx = BipartiteIndex(2, 2)
    assert np.abs(partial_trace(np.eye(4), idx, "B") - 2 * np.eye(2)).max() < 1e-14
    assert np.abs(partial_trace(swap(2), idx, "A") - np.eye(2)).max() < 1e-14


@pytest.mark.parametrize("d_a,d_b", [(2, 2), (2, 3), (3, 2), (3, 4)])
def test_partial_trace_product_and_oracle(d_a, d_b):
    idx = BipartiteIndex(d_a, d_b)
    x, y = _rand((d_a, d_a), d_a), _rand((d_b, d_b), d_b + 10)
    assert np.abs(partial_trace(kron(x, y), idx, "B") - x * np.trace(y)).max() < 1e-10
    assert np.abs(partial_trace(kron(x, y), idx, "A") - np.trace(x) * y).max() < 1e-10
    rho = _rand((d_a * d_b, d_a * d_b), 99)
    for f in "AB":
        assert np.abs(partial_trace(rho, idx, f) - _ptrace_oracle(rho, d_a, d_b, f)).max() < 1e-12
        assert abs(np.trace(partial_trace(rho, idx, f)) - np.trace(rho)) < 1e-10


def test_partial_trace_dimension_mismatch():
    with pytest.raises(DimensionError):
        partial_trace(np.eye(5), BipartiteIndex(2, 2), "B")
    with pytest.raises(ValueError):
        partial_trace(np.eye(4), BipartiteIndex(2, 2), "C")


def test_partial_transpose_examples():
    idx = BipartiteIndex(2, 2)
    assert np.abs(partial_transpose(np.eye(4), idx, "A") - np.eye(4)).max() == 0
    v = max_entangled(2)
    phi = np.outer(v, v.conj())
    assert np.abs(partial_transpose(phi, idx, "A") - swap(2)).max() == 0
    rho = _rand((4, 4), 7)
    both = partial_transpose(partial_transpose(rho, idx, "A"), idx, "B")
    assert np.abs(both - rho.T).max() == 0


@pytest.mark.parametrize("d_a,d_b", [(2, 3), (3, 2)])
def test_partial_transpose_oracle_and_involution(d_a, d_b):
    idx = BipartiteIndex(d_a, d_b)
    rho = _rand((d_a * d_b, d_a * d_b), 11)
    for f in "AB":
        pt = partial_transpose(rho, idx, f)
        assert np.abs(pt - _ptranspose_oracle(rho, d_a, d_b, f)).max() == 0
        assert np.abs(partial_transpose(pt, idx, f) - rho).max() == 0
        assert abs(np.trace(pt) - np.trace(rho)) < 1e-12


def test_ptrace_ptranspose_interaction():
    idx = BipartiteIndex(3, 2)
    rho = _rand((6, 6), 12)
    lhs = partial_trace(partial_transpose(rho, idx, "A"), idx, "B")
    rhs = partial_trace(rho, idx, "B").T
    assert np.abs(lhs - rhs).max() < 1e-12


def test_partial_transpose_preserves_hermiticity():
    idx = BipartiteIndex(2, 3)
    h = random_hermitian(6, 3)
    pt = partial_transpose(h, idx, "A")
    assert np.abs(pt - pt.conj().T).max() == 0
    nh = _rand((6, 6), 4)
    pt = partial_transpose(nh, idx, "A")
    assert np.abs(pt - pt.conj().T).max() > 1e-3


def test_hermitian_eigenvalues_examples():
    assert np.abs(hermitian_eigenvalues(np.eye(2)) - [1, 1]).max() < 1e-14
    assert np.abs(hermitian_eigenvalues(swap(2)) - [-1, 1, 1, 1]).max() < 1e-14
    assert np.abs(hermitian_eigenvalues(np.diag([3.0, -2.0])) - [-2, 3]).max() < 1e-14


def test_hermitian_eigenvalues_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        hermitian_eigenvalues(matrix_unit(2, 0, 1))


def test_eigenvalue_trace_and_unitary_invariance():
    m = random_hermitian(4, 5)
    w = hermitian_eigenvalues(m)
    assert abs(w.sum() - np.trace(m).real) < 1e-9 * 4 * np.linalg.norm(m, 2)
    u = haar_unitary(4, 6)
    assert np.abs(hermitian_eigenvalues(u @ m @ u.conj().T) - w).max() < 1e-8


def test_haar_unitary():
    u = haar_unitary(1, 0)
    assert u.shape == (1, 1) and abs(abs(u[0, 0]) - 1) < 1e-12
    for s in range(100):
        u = haar_unitary(3, s)
        assert np.abs(u.conj().T @ u - np.eye(3)).max() < 1e-10
    assert np.array_equal(haar_unitary(3, 17), haar_unitary(3, 17))
    assert not np.array_equal(haar_unitary(3, 17), haar_unitary(3, 18))


def test_make_rng_streams():
    a = make_rng(5, 1, 2).standard_normal(3)
    b = make_rng(5, 1, 2).standard_normal(3)
    c = make_rng(5, 2, 1).standard_normal(3)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_vec_conventions():
    a, x, b = _rand((2, 3), 1), _rand((3, 4), 2), _rand((4, 2), 3)
    assert np.abs(vec(a @ x @ b) - np.kron(b.T, a) @ vec(x)).max() < 1e-12
    assert np.array_equal(unvec(vec(x), 3, 4), x)
    p = commutation_matrix(3)
    y = _rand((3, 3), 4)
    assert np.array_equal(p @ vec(y), vec(y.T))


def test_swap_and_max_entangled():
    s = swap(3)
    x, y = _rand((3, 3), 1), _rand((3, 3), 2)
    assert np.abs(s @ kron(x, y) @ s - kron(y, x)).max() < 1e-12
    v = max_entangled(2)
    assert np.abs(v - [1, 0, 0, 1]).max() == 0
    phi = np.outer(v, v.conj())
    assert np.abs(np.linalg.eigvalsh(phi) - [0, 0, 0, 2]).max() < 1e-12
