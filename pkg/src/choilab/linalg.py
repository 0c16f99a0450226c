"""Dense complex matrix helpers and bipartite index bookkeeping.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Composite
indices on ``H_A (x) H_B`` are A-major: ``(i, k) -> i * d_b + k``, which is
the ordering produced by ``numpy.kron(x_A, y_B)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

from .errors import DimensionError, NotHermitianError

#: default PSD eigenvalue floor
PSD_TOL = 1e-9
#: default max-abs tolerance for matrix equality
EQ_TOL = 1e-10

Factor = Literal["A", "B"]
SeedLike = Union[int, np.random.Generator, np.random.SeedSequence, None]


@dataclass(frozen=True)
class BipartiteIndex:
    """Dimensions of the two tensor factors, A first."""

    d_a: int
    d_b: int

    def __post_init__(self):
        if int(self.d_a) < 1 or int(self.d_b) < 1:
            raise DimensionError(f"factor dimensions must be >= 1, got ({self.d_a}, {self.d_b})")

    @property
    def dim(self) -> int:
        return self.d_a * self.d_b

    def flat(self, i: int, k: int) -> int:
        return i * self.d_b + k

    def split(self, n: int) -> tuple[int, int]:
        return divmod(n, self.d_b)


def as_cmat(x, name: str = "matrix") -> np.ndarray:
    """Validate ``x`` as a finite 2-d complex matrix and return a complex128 copy."""
    m = np.array(x, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionError(f"{name} must be 2-dimensional, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    return m


def frozen(m: np.ndarray) -> np.ndarray:
    m = np.array(m, dtype=np.complex128)
    m.setflags(write=False)
    return m


def max_abs(m) -> float:
    m = np.asarray(m)
    return float(np.abs(m).max()) if m.size else 0.0


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def kron(x, y) -> np.ndarray:
    """Kronecker product ``x (x) y`` with A-major composite indexing."""
    return np.kron(as_cmat(x, "x"), as_cmat(y, "y"))


def _check_square(rho: np.ndarray, idx: BipartiteIndex) -> np.ndarray:
    rho = as_cmat(rho, "rho")
    if rho.shape != (idx.dim, idx.dim):
        raise DimensionError(
            f"expected a {idx.dim}x{idx.dim} matrix for dims ({idx.d_a}, {idx.d_b}), got {rho.shape}"
        )
    return rho


def partial_trace(rho, idx: BipartiteIndex, factor: Factor) -> np.ndarray:
    """Trace out ``factor`` ("A" or "B") of a bipartite matrix."""
    r = _check_square(rho, idx).reshape(idx.d_a, idx.d_b, idx.d_a, idx.d_b)
    if factor == "B":
        return np.einsum("ikjk->ij", r)
    if factor == "A":
        return np.einsum("ikil->kl", r)
    raise ValueError(f"factor must be 'A' or 'B', got {factor!r}")


def partial_transpose(rho, idx: BipartiteIndex, factor: Factor) -> np.ndarray:
    """Transpose one tensor factor in the standard product basis.

    For factor A: ``out[(i,k),(j,l)] = rho[(j,k),(i,l)]``.
    """
    r = _check_square(rho, idx).reshape(idx.d_a, idx.d_b, idx.d_a, idx.d_b)
    if factor == "A":
        out = r.transpose(2, 1, 0, 3)
    elif factor == "B":
        out = r.transpose(0, 3, 2, 1)
    else:
        raise ValueError(f"factor must be 'A' or 'B', got {factor!r}")
    return np.ascontiguousarray(out).reshape(idx.dim, idx.dim)


def hermiticity_defect(m) -> float:
    m = np.asarray(m)
    return max_abs(m - dagger(m))


def hermitian_eigh(m, tol: float = EQ_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix, ascending eigenvalues.

    The Hermiticity check is absolute on the max-abs entry deviation; the
    decomposition runs on the symmetrized matrix ``(m + m*) / 2``.
    """
    m = as_cmat(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"matrix must be square, got {m.shape}")
    defect = hermiticity_defect(m)
    if defect > tol:
        raise NotHermitianError(f"matrix is not Hermitian: max |m - m*| = {defect:.3e} > {tol:.1e}")
    return np.linalg.eigh(0.5 * (m + dagger(m)))


def hermitian_eigenvalues(m, tol: float = EQ_TOL) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian matrix."""
    return hermitian_eigh(m, tol)[0]


def make_rng(seed: SeedLike, *stream: int) -> np.random.Generator:
    """Return a Generator for ``seed``, optionally on a derived sub-stream.

    Derived streams use ``numpy.random.SeedSequence(seed, spawn_key=stream)``,
    so the stream for ``(seed, *stream)`` does not depend on how many other
    streams were drawn before it. A Generator passed in is returned as-is
    when no stream is requested.
    """
    if isinstance(seed, np.random.Generator):
        if not stream:
            return seed
        seed = int(seed.integers(0, 2**63))
    if isinstance(seed, np.random.SeedSequence):
        if not stream:
            return np.random.default_rng(seed)
        return np.random.default_rng(
            np.random.SeedSequence(seed.entropy, spawn_key=tuple(seed.spawn_key) + tuple(stream))
        )
    if seed is None:
        seed = 0
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=tuple(int(s) for s in stream)))


def ginibre(rows: int, cols: int, seed: SeedLike = None) -> np.ndarray:
    """Complex Ginibre matrix, entries ``(N(0,1) + i N(0,1)) / sqrt(2)``."""
    rng = make_rng(seed)
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2)


def haar_unitary(d: int, seed: SeedLike = None) -> np.ndarray:
    """Haar-distributed ``d x d`` unitary.

    QR of a Ginibre matrix with the phases of ``diag(R)`` moved into ``Q``.
    """
    if d < 1:
        raise DimensionError(f"d must be >= 1, got {d}")
    q, r = np.linalg.qr(ginibre(d, d, seed))
    ph = np.diag(r).copy()
    ph = ph / np.abs(ph)
    return q * ph[np.newaxis, :]


def random_hermitian(d: int, seed: SeedLike = None, unit_norm: bool = False) -> np.ndarray:
    g = ginibre(d, d, seed)
    h = 0.5 * (g + dagger(g))
    if unit_norm:
        h = h / np.linalg.norm(h, 2)
    return h


def random_psd(d: int, seed: SeedLike = None, rank: int | None = None) -> np.ndarray:
    g = ginibre(d, rank or d, seed)
    return g @ dagger(g)


def random_unit_vector(d: int, seed: SeedLike = None) -> np.ndarray:
    v = ginibre(d, 1, seed)[:, 0]
    return v / np.linalg.norm(v)


def matrix_unit(d: int, i: int, j: int) -> np.ndarray:
    e = np.zeros((d, d), dtype=np.complex128)
    e[i, j] = 1.0
    return e


def swap(d: int) -> np.ndarray:
    """The swap operator on ``C^d (x) C^d``."""
    s = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for k in range(d):
            s[k * d + i, i * d + k] = 1.0
    return s


def max_entangled(d: int) -> np.ndarray:
    """Unnormalised ``sum_i |ii>`` as a column vector of length ``d**2``."""
    v = np.zeros(d * d, dtype=np.complex128)
    v[np.arange(d) * (d + 1)] = 1.0
    return v


def vec(x: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization: ``vec(A X B) = (B^T (x) A) vec(X)``."""
    return np.asarray(x).reshape(-1, order="F")


def unvec(v: np.ndarray, rows: int, cols: int | None = None) -> np.ndarray:
    return np.asarray(v).reshape(rows, cols if cols is not None else rows, order="F")


def commutation_matrix(d: int) -> np.ndarray:
    """Permutation ``P`` with ``P vec(X) = vec(X^T)`` for ``d x d`` matrices."""
    p = np.zeros((d * d, d * d), dtype=np.complex128)
    for i in range(d):
        for j in range(d):
            # vec(X)[i + j*d] = X[i, j]; vec(X^T)[j + i*d] = X[i, j]
            p[j + i * d, i + j * d] = 1.0
    return p
