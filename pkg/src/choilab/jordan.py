"""Jordan and Lie parts of the operator product, time orientation, order derivations.

Conventions: ``[a, b] = ab - ba``, ``{a, b} = ab + ba``,
``a o b = {a, b} / 2`` and ``a * b = (i/2) [a, b]`` (the star product).
The two associative products extending ``o`` are

    a ._+ b = {a, b}/2 + [a, b]/2 = ab      (Forward)
    a ._- b = {a, b}/2 - [a, b]/2 = ba      (Reverse)
"""
from __future__ import annotations

from enum import Enum

import numpy as np
from scipy.linalg import expm

from .errors import DimensionError
from .linalg import EQ_TOL, as_cmat, dagger, hermitian_eigh


class Orientation(Enum):
    FORWARD = "forward"
    REVERSE = "reverse"

    def flip(self) -> "Orientation":
        return Orientation.REVERSE if self is Orientation.FORWARD else Orientation.FORWARD


def _pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    a = as_cmat(a, "a")
    b = as_cmat(b, "b")
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise DimensionError(f"operands must be square with equal shape, got {a.shape} and {b.shape}")
    return a, b


def commutator(a, b) -> np.ndarray:
    a, b = _pair(a, b)
    return a @ b - b @ a


def anticommutator(a, b) -> np.ndarray:
    a, b = _pair(a, b)
    return a @ b + b @ a


def jordan_product(a, b) -> np.ndarray:
    """``a o b = (ab + ba) / 2``."""
    return 0.5 * anticommutator(a, b)


def star_product(a, b) -> np.ndarray:
    """``a * b = (i/2)(ab - ba)``; closes on Hermitian matrices."""
    return 0.5j * commutator(a, b)


def associative_product(a, b, o: Orientation = Orientation.FORWARD) -> np.ndarray:
    """Recombine Jordan and commutator parts with the sign fixed by ``o``.

    ``[a, b] / 2 = -i (a * b)``, so Forward gives ``a o b - i a*b = ab`` and
    Reverse gives ``a o b + i a*b = ba``.
    """
    jp = jordan_product(a, b)
    sp = star_product(a, b)
    if o is Orientation.FORWARD:
        return jp - 1j * sp
    if o is Orientation.REVERSE:
        return jp + 1j * sp
    raise ValueError(f"unknown orientation {o!r}")


def complex_structure(a, b) -> np.ndarray:
    """``a o b - i (a * b)``: the self-adjoint plus skew order-derivation split of ``ab``."""
    return jordan_product(a, b) - 1j * star_product(a, b)


def _unitary_exp(a, t: float, tol: float) -> np.ndarray:
    w, v = hermitian_eigh(a, tol)
    return (v * np.exp(1j * t * w)[np.newaxis, :]) @ dagger(v)


def evolve(t: float, a, b, tol: float = EQ_TOL) -> np.ndarray:
    """``e^{ita} b e^{-ita}`` for Hermitian ``a`` (spectral calculus)."""
    a, b = _pair(a, b)
    u = _unitary_exp(a, t, tol)
    return u @ b @ dagger(u)


def order_derivation(a, x) -> np.ndarray:
    """``delta_a(x) = (a x + x a*) / 2``.

    For Hermitian ``a`` this is ``a o x``; for ``i a`` it is ``a * x``.
    """
    a, x = _pair(a, x)
    return 0.5 * (a @ x + x @ dagger(a))


def order_derivation_flow(t: float, a, x) -> np.ndarray:
    """``exp(t delta_a)(x) = e^{ta/2} x e^{ta*/2}``; maps PSD to PSD."""
    a, x = _pair(a, x)
    g = expm(0.5 * t * a)
    return g @ x @ dagger(g)


def superoperator(f, d: int) -> np.ndarray:
    """Column-stacking transfer matrix of a linear map on ``d x d`` matrices."""
    cols = []
    for j in range(d):
        for i in range(d):
            e = np.zeros((d, d), dtype=np.complex128)
            e[i, j] = 1.0
            cols.append(np.asarray(f(e)).reshape(-1, order="F"))
    return np.stack(cols, axis=1)


def order_derivation_super(a) -> np.ndarray:
    """Transfer matrix of ``delta_a``: ``(I (x) a + conj(a) (x) I) / 2``."""
    a = as_cmat(a, "a")
    d = a.shape[0]
    eye = np.eye(d)
    return 0.5 * (np.kron(eye, a) + np.kron(np.conj(a), eye))


def exp_superoperator(s, t: float = 1.0) -> np.ndarray:
    """``exp(t S)`` for a transfer matrix ``S`` (Pade scaling-and-squaring)."""
    return expm(t * as_cmat(s, "superoperator"))
