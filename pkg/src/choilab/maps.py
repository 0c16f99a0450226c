"""Linear maps ``L(H_A) -> L(H_B)`` stored as column-stacking transfer matrices.

``vec(phi(x)) = transfer @ vec(x)`` with ``vec`` stacking columns, so a Kraus
family ``{K}`` has ``transfer = sum_K conj(K) (x) K``.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Sequence, Union

import numpy as np

from .bases import OperatorBasis
from .errors import DimensionError
from .jordan import Orientation
from .linalg import (
    EQ_TOL,
    SeedLike,
    as_cmat,
    commutation_matrix,
    dagger,
    frozen,
    ginibre,
    hermitian_eigh,
    make_rng,
    max_abs,
    unvec,
    vec,
)


@dataclass(frozen=True)
class QuantumMap:
    d_a: int
    d_b: int
    transfer: np.ndarray
    kraus: tuple | None = None
    orientation_a: Orientation = Orientation.FORWARD
    orientation_b: Orientation = Orientation.FORWARD

    def __post_init__(self):
        t = frozen(as_cmat(self.transfer, "transfer"))
        if t.shape != (self.d_b**2, self.d_a**2):
            raise DimensionError(
                f"transfer for ({self.d_a} -> {self.d_b}) must be {self.d_b**2}x{self.d_a**2}, got {t.shape}"
            )
        object.__setattr__(self, "transfer", t)
        if self.kraus is not None:
            object.__setattr__(self, "kraus", tuple(frozen(k) for k in self.kraus))

    def __call__(self, x) -> np.ndarray:
        return apply(self, x)

    def allclose(self, other: "QuantumMap", tol: float = EQ_TOL) -> bool:
        return (self.d_a, self.d_b) == (other.d_a, other.d_b) and max_abs(self.transfer - other.transfer) <= tol

    def __add__(self, other: "QuantumMap") -> "QuantumMap":
        _same_dims(self, other)
        return QuantumMap(self.d_a, self.d_b, self.transfer + other.transfer)

    def __rmul__(self, c) -> "QuantumMap":
        return QuantumMap(self.d_a, self.d_b, c * self.transfer)


def _same_dims(f: QuantumMap, g: QuantumMap):
    if (f.d_a, f.d_b) != (g.d_a, g.d_b):
        raise DimensionError(f"map dims differ: {(f.d_a, f.d_b)} vs {(g.d_a, g.d_b)}")


@dataclass(frozen=True)
class DecomposableMap:
    """``x -> cp_part(x) + co_cp_part(x^T)`` with both parts CP."""

    cp_part: QuantumMap
    co_cp_part: QuantumMap

    def __post_init__(self):
        _same_dims(self.cp_part, self.co_cp_part)

    @property
    def d_a(self) -> int:
        return self.cp_part.d_a

    @property
    def d_b(self) -> int:
        return self.cp_part.d_b

    def __call__(self, x) -> np.ndarray:
        x = as_cmat(x)
        return apply(self.cp_part, x) + apply(self.co_cp_part, x.T)

    def to_map(self) -> QuantumMap:
        return self.cp_part + precompose_transpose(self.co_cp_part)


AnyMap = Union[QuantumMap, DecomposableMap]


def as_map(phi: AnyMap) -> QuantumMap:
    return phi.to_map() if isinstance(phi, DecomposableMap) else phi


def apply(phi: AnyMap, x) -> np.ndarray:
    if isinstance(phi, DecomposableMap):
        return phi(x)
    x = as_cmat(x, "x")
    if x.shape != (phi.d_a, phi.d_a):
        raise DimensionError(f"input must be {phi.d_a}x{phi.d_a}, got {x.shape}")
    return unvec(phi.transfer @ vec(x), phi.d_b)


def apply_kraus(phi: QuantumMap, x) -> np.ndarray:
    """Evaluate via the stored Kraus operators (independent of the transfer matrix)."""
    if phi.kraus is None:
        raise ValueError("map carries no Kraus data")
    x = as_cmat(x, "x")
    return sum(k @ x @ dagger(k) for k in phi.kraus)


def map_from_function(f: Callable[[np.ndarray], np.ndarray], d_a: int, d_b: int, **kw) -> QuantumMap:
    """Tabulate a linear function on matrix units."""
    cols = []
    for j in range(d_a):
        for i in range(d_a):
            e = np.zeros((d_a, d_a), dtype=np.complex128)
            e[i, j] = 1.0
            y = as_cmat(f(e))
            if y.shape != (d_b, d_b):
                raise DimensionError(f"function returned shape {y.shape}, expected ({d_b}, {d_b})")
            cols.append(vec(y))
    return QuantumMap(d_a, d_b, np.stack(cols, axis=1), **kw)


def map_from_basis_action(images: Sequence, basis: OperatorBasis) -> QuantumMap:
    """The linear map with ``phi(e_k) = images[k]``."""
    d_a = basis.dim
    if len(images) != d_a**2:
        raise DimensionError(f"need {d_a**2} images, got {len(images)}")
    imgs = [as_cmat(y, f"images[{k}]") for k, y in enumerate(images)]
    d_b = imgs[0].shape[0]
    for y in imgs:
        if y.shape != (d_b, d_b):
            raise DimensionError(f"images must all be {d_b}x{d_b}, got {y.shape}")
    f = np.stack([vec(y) for y in imgs], axis=1)
    # stacked basis is unitary: T E = F  =>  T = F E*
    return QuantumMap(d_a, d_b, f @ dagger(basis.stacked()))


def kraus_transfer(kraus: Sequence[np.ndarray]) -> np.ndarray:
    return sum(np.kron(np.conj(k), k) for k in kraus)


def map_from_kraus(kraus: Sequence) -> QuantumMap:
    """``phi(x) = sum_k K_k x K_k*``; every ``K_k`` is ``d_b x d_a``."""
    ks = [as_cmat(k, "kraus operator") for k in kraus]
    if not ks:
        raise ValueError("need at least one Kraus operator")
    shape = ks[0].shape
    for k in ks:
        if k.shape != shape:
            raise DimensionError(f"Kraus operators must share one shape, got {shape} and {k.shape}")
    d_b, d_a = shape
    return QuantumMap(d_a, d_b, kraus_transfer(ks), kraus=tuple(ks))


def map_from_stinespring(v, d_a: int, r: int) -> QuantumMap:
    """``phi(a) = v* (a (x) 1_r) v`` for ``v: H_B -> H_A (x) C^r``."""
    v = as_cmat(v, "v")
    if v.shape[0] != d_a * r:
        raise DimensionError(f"v must have {d_a * r} rows, got {v.shape[0]}")
    d_b = v.shape[1]
    blocks = v.reshape(d_a, r, d_b)
    return map_from_kraus([dagger(blocks[:, i, :]) for i in range(r)])


def identity_map(d: int) -> QuantumMap:
    return map_from_kraus([np.eye(d)])


def transpose_map(d: int) -> QuantumMap:
    return QuantumMap(d, d, commutation_matrix(d))


def conjugate_map(phi: QuantumMap) -> QuantumMap:
    """``phi#(a) = phi(a*)*``; ``phi# == phi`` iff phi preserves Hermiticity."""
    pa = commutation_matrix(phi.d_a)
    pb = commutation_matrix(phi.d_b)
    kraus = phi.kraus  # Kraus maps satisfy phi# = phi
    return QuantumMap(
        phi.d_a, phi.d_b, pb @ np.conj(phi.transfer) @ pa, kraus, phi.orientation_a, phi.orientation_b
    )


def compose(psi: QuantumMap, phi: QuantumMap) -> QuantumMap:
    """``psi o phi``."""
    if psi.d_a != phi.d_b:
        raise DimensionError(f"cannot compose: {phi.d_b} != {psi.d_a}")
    return QuantumMap(phi.d_a, psi.d_b, psi.transfer @ phi.transfer, None, phi.orientation_a, psi.orientation_b)


def precompose_transpose(phi: QuantumMap) -> QuantumMap:
    """``phi o T`` with ``T`` the transpose in the standard basis.

    The input algebra's composition order is reversed, which is recorded
    by flipping ``orientation_a``.
    """
    return QuantumMap(
        phi.d_a,
        phi.d_b,
        phi.transfer @ commutation_matrix(phi.d_a),
        None,
        phi.orientation_a.flip(),
        phi.orientation_b,
    )


def kraus_from_choi(choi, d_a: int, d_b: int, tol: float = 1e-9) -> list[np.ndarray]:
    """Kraus operators from a PSD Choi matrix ``sum_ij E_ij (x) phi(E_ij)``.

    Each eigenpair ``(w, v)`` with ``w > tol * max(1, |C|)`` gives
    ``K[k, i] = sqrt(w) v[i*d_b + k]``.
    """
    w, v = hermitian_eigh(choi)
    scale = max(1.0, float(np.abs(w).max()) if w.size else 1.0)
    if w[0] < -tol * scale:
        raise ValueError(f"Choi matrix is not PSD (min eigenvalue {w[0]:.3e})")
    ks = [np.sqrt(wi) * v[:, n].reshape(d_a, d_b).T for n, wi in enumerate(w) if wi > tol * scale]
    return ks or [np.zeros((d_b, d_a), dtype=np.complex128)]


class MapClass(str, Enum):
    ARBITRARY = "arbitrary"
    HERM_PRESERVING = "herm-preserving"
    CP = "cp"
    CO_CP = "co-cp"
    DECOMPOSABLE = "decomposable"
    TRACE_PRESERVING_CP = "tp-cp"

    @classmethod
    def parse(cls, name: str) -> "MapClass":
        key = name.strip().lower().replace("_", "-")
        aliases = {
            "hermpreserving": cls.HERM_PRESERVING,
            "hp": cls.HERM_PRESERVING,
            "cocp": cls.CO_CP,
            "tracepreservingcp": cls.TRACE_PRESERVING_CP,
            "trace-preserving-cp": cls.TRACE_PRESERVING_CP,
            "channel": cls.TRACE_PRESERVING_CP,
        }
        if key in aliases:
            return aliases[key]
        return cls(key)


_CLASS_STREAM = {c: n for n, c in enumerate(MapClass)}


def random_kraus(d_a: int, d_b: int, rank: int, seed: SeedLike) -> list[np.ndarray]:
    rng = make_rng(seed)
    return [ginibre(d_b, d_a, rng) / np.sqrt(rank * d_a) for _ in range(rank)]


def random_map(cls, d_a: int, d_b: int, seed: SeedLike, rank: int | None = None) -> AnyMap:
    """Random map of the requested class, deterministic per ``(cls, dims, seed)``.

    * ``arbitrary``: Ginibre transfer matrix.
    * ``herm-preserving``: ``sum_j c_j A_j x A_j*`` with Ginibre ``A_j`` and real
      ``c_j`` of alternating sign.
    * ``cp``: ``rank`` Ginibre Kraus operators (default ``d_a * d_b``).
    * ``co-cp``: a ``cp`` map precomposed with the transpose.
    * ``decomposable``: a :class:`DecomposableMap` of two independent ``cp`` maps.
    * ``tp-cp``: ``cp`` Kraus family rescaled so ``sum K* K = I``.
    """
    cls = MapClass.parse(cls) if isinstance(cls, str) else cls
    if d_a < 1 or d_b < 1:
        raise DimensionError(f"dims must be >= 1, got ({d_a}, {d_b})")
    if isinstance(seed, np.random.Generator):
        rng = seed
    else:
        rng = make_rng(seed, _CLASS_STREAM[cls], d_a, d_b)
    r = rank or d_a * d_b
    if cls is MapClass.ARBITRARY:
        return QuantumMap(d_a, d_b, ginibre(d_b**2, d_a**2, rng) / d_a)
    if cls is MapClass.HERM_PRESERVING:
        ops = [ginibre(d_b, d_a, rng) / np.sqrt(r * d_a) for _ in range(r)]
        coeffs = np.abs(rng.standard_normal(r)) * np.where(np.arange(r) % 2 == 0, 1.0, -1.0)
        return QuantumMap(d_a, d_b, sum(c * np.kron(np.conj(a), a) for c, a in zip(coeffs, ops)))
    if cls is MapClass.CP:
        return map_from_kraus(random_kraus(d_a, d_b, r, rng))
    if cls is MapClass.CO_CP:
        return precompose_transpose(map_from_kraus(random_kraus(d_a, d_b, r, rng)))
    if cls is MapClass.DECOMPOSABLE:
        cp = map_from_kraus(random_kraus(d_a, d_b, r, rng))
        co = map_from_kraus(random_kraus(d_a, d_b, r, rng))
        return DecomposableMap(cp, co)
    if cls is MapClass.TRACE_PRESERVING_CP:
        ks = random_kraus(d_a, d_b, r, rng)
        s = sum(dagger(k) @ k for k in ks)
        w, v = hermitian_eigh(s)
        s_inv_half = (v / np.sqrt(w)[np.newaxis, :]) @ dagger(v)
        return map_from_kraus([k @ s_inv_half for k in ks])
    raise ValueError(f"unknown map class {cls!r}")


def with_orientation(phi: QuantumMap, a: Orientation | None = None, b: Orientation | None = None) -> QuantumMap:
    return replace(
        phi,
        orientation_a=a if a is not None else phi.orientation_a,
        orientation_b=b if b is not None else phi.orientation_b,
    )
