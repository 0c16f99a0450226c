"""Hilbert-Schmidt orthonormal operator bases of ``L(H)``."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NotUnitaryError
from .linalg import EQ_TOL, as_cmat, dagger, frozen, haar_unitary, matrix_unit, max_abs, vec


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product ``(a, b) = tr[b* a]``.

    Linear in ``a``, conjugate-linear in ``b``.
    """
    a = as_cmat(a, "a")
    b = as_cmat(b, "b")
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise DimensionError(f"hs_inner needs equal square shapes, got {a.shape} and {b.shape}")
    return complex(np.vdot(b, a))


def hs_inner_dual(a, b) -> complex:
    """Inner product on the dual algebra, ``tr[b . a*]`` with reversed order.

    Equals ``conj(hs_inner(a, b))``.
    """
    a = as_cmat(a, "a")
    b = as_cmat(b, "b")
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    return complex(np.trace(b @ dagger(a)))


@dataclass(frozen=True)
class OperatorBasis:
    """``d**2`` HS-orthonormal ``d x d`` matrices.

    ``kind`` is one of ``"MatrixUnits"``, ``"GellMann"`` or ``"Rotated"``;
    ``seed`` records the rotation seed when known.
    """

    dim: int
    elements: tuple
    kind: str
    seed: int | None = None

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, k):
        return self.elements[k]

    def stacked(self) -> np.ndarray:
        """Columns are ``vec(e_k)``; unitary for an orthonormal basis."""
        return np.stack([vec(e) for e in self.elements], axis=1)

    def gram(self) -> np.ndarray:
        """``G[k, l] = (e_k, e_l) = tr[e_l* e_k]``."""
        s = self.stacked()
        return (dagger(s) @ s).T

    def coefficients(self, a) -> np.ndarray:
        """``c_k = (a, e_k)``."""
        return dagger(self.stacked()) @ vec(as_cmat(a))

    def reconstruct(self, coeffs) -> np.ndarray:
        return sum(c * e for c, e in zip(coeffs, self.elements))

    def orthonormality_defect(self) -> float:
        return max_abs(self.gram() - np.eye(len(self.elements)))


def _basis(d: int, elements, kind: str, seed=None) -> OperatorBasis:
    return OperatorBasis(d, tuple(frozen(e) for e in elements), kind, seed)


def matrix_units(d: int) -> OperatorBasis:
    """``E_ij = |i><j|`` in row-major order ``(0,0), (0,1), ...``."""
    if d < 1:
        raise DimensionError(f"d must be >= 1, got {d}")
    return _basis(d, [matrix_unit(d, i, j) for i in range(d) for j in range(d)], "MatrixUnits")


def gell_mann(d: int) -> OperatorBasis:
    """Hermitian orthonormal basis.

    Order: ``I/sqrt(d)``; symmetric ``(E_jk + E_kj)/sqrt(2)`` for ``j < k``;
    antisymmetric ``(-i E_jk + i E_kj)/sqrt(2)`` for ``j < k``; diagonal
    ``(sum_{m<l} E_mm - l E_ll)/sqrt(l(l+1))`` for ``l = 1..d-1``. For
    ``d = 2`` this is ``{I, X, Y, Z} / sqrt(2)``.
    """
    if d < 1:
        raise DimensionError(f"d must be >= 1, got {d}")
    s2 = np.sqrt(2.0)
    els = [np.eye(d, dtype=np.complex128) / np.sqrt(d)]
    pairs = [(j, k) for j in range(d) for k in range(j + 1, d)]
    for j, k in pairs:
        els.append((matrix_unit(d, j, k) + matrix_unit(d, k, j)) / s2)
    for j, k in pairs:
        els.append((-1j * matrix_unit(d, j, k) + 1j * matrix_unit(d, k, j)) / s2)
    for l in range(1, d):
        m = np.zeros((d, d), dtype=np.complex128)
        m[np.arange(l), np.arange(l)] = 1.0
        m[l, l] = -l
        els.append(m / np.sqrt(l * (l + 1)))
    return _basis(d, els, "GellMann")


def rotated_basis(base: OperatorBasis, u, seed: int | None = None, tol: float = 1e-8) -> OperatorBasis:
    """New basis ``f_l = sum_k u[k, l] e_k`` for a unitary ``u`` on coefficient space."""
    u = as_cmat(u, "u")
    n = len(base)
    if u.shape != (n, n):
        raise DimensionError(f"rotation must be {n}x{n}, got {u.shape}")
    defect = max_abs(dagger(u) @ u - np.eye(n))
    if defect > tol:
        raise NotUnitaryError(f"rotation is not unitary: max |u*u - I| = {defect:.3e}")
    stacked = np.stack(base.elements)  # (n, d, d)
    new = np.tensordot(u.T, stacked, axes=(1, 0))
    return _basis(base.dim, list(new), "Rotated", seed)


def haar_rotated_basis(base: OperatorBasis, seed: int) -> OperatorBasis:
    return rotated_basis(base, haar_unitary(len(base), seed), seed=seed)


def is_orthonormal(basis: OperatorBasis, tol: float = EQ_TOL) -> bool:
    return basis.orthonormality_defect() <= tol
