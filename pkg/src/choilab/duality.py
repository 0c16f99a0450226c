"""The four channel-state duality variants and conversions between them.

Matrices always live in the standard product basis of ``H_A (x) H_B``
(or ``H_A* (x) H_B`` when ``dual_a`` is set):

======== ================================ ==========
variant  matrix                           dual flags
======== ================================ ==========
J        sum_k e_k* (x) phi(e_k)          none
C        sum_ij E_ij (x) phi(E_ij)        none
CJstar   same matrix as J                 none
JstarC   same matrix as C                 dual_a
======== ================================ ==========

and ``mat(C) = T_A(mat(J))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .bases import OperatorBasis, hs_inner, matrix_units
from .errors import DimensionError, VariantError
from .linalg import BipartiteIndex, as_cmat, dagger, frozen, kron, partial_trace, partial_transpose
from .maps import AnyMap, QuantumMap, apply, as_map, map_from_function


class Variant(str, Enum):
    J = "J"
    C = "C"
    CJSTAR = "CJstar"
    JSTARC = "JstarC"

    @classmethod
    def parse(cls, name) -> "Variant":
        if isinstance(name, Variant):
            return name
        for v in cls:
            if v.value.lower() == str(name).lower():
                return v
        raise VariantError(f"unknown variant {name!r}; expected one of J, C, CJstar, JstarC")


# variants sharing the J matrix vs the C matrix
_J_FAMILY = {Variant.J, Variant.CJSTAR}
_FLAGS = {
    Variant.J: (False, False),
    Variant.C: (False, False),
    Variant.CJSTAR: (False, False),
    Variant.JSTARC: (True, False),
}


@dataclass(frozen=True)
class DualityState:
    matrix: np.ndarray
    idx: BipartiteIndex
    variant: Variant
    dual_a: bool = False
    dual_b: bool = False

    def __post_init__(self):
        m = frozen(as_cmat(self.matrix, "state matrix"))
        if m.shape != (self.idx.dim, self.idx.dim):
            raise DimensionError(f"state matrix must be {self.idx.dim}x{self.idx.dim}, got {m.shape}")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "variant", Variant.parse(self.variant))
        if (self.dual_a, self.dual_b) != _FLAGS[self.variant]:
            raise VariantError(
                f"dual flags {(self.dual_a, self.dual_b)} inconsistent with variant {self.variant.value}"
            )

    @classmethod
    def of(cls, matrix, d_a: int, d_b: int, variant) -> "DualityState":
        v = Variant.parse(variant)
        da, db = _FLAGS[v]
        return cls(matrix, BipartiteIndex(d_a, d_b), v, da, db)

    @property
    def d_a(self) -> int:
        return self.idx.d_a

    @property
    def d_b(self) -> int:
        return self.idx.d_b


def j_forward(phi: AnyMap, basis: OperatorBasis | None = None) -> DualityState:
    """``sum_k e_k* (x) phi(e_k)``; the result does not depend on the ONB."""
    phi = as_map(phi)
    basis = basis if basis is not None else matrix_units(phi.d_a)
    if basis.dim != phi.d_a:
        raise DimensionError(f"basis dim {basis.dim} != d_a {phi.d_a}")
    m = sum(np.kron(dagger(e), apply(phi, e)) for e in basis)
    return DualityState.of(m, phi.d_a, phi.d_b, Variant.J)


def _expect(rho: DualityState, variant: Variant):
    if not isinstance(rho, DualityState):
        raise TypeError(f"expected DualityState, got {type(rho).__name__}")
    if rho.variant is not variant:
        raise VariantError(f"expected a {variant.value} state, got {rho.variant.value}")


def _inverse(matrix: np.ndarray, idx: BipartiteIndex, transpose_input: bool) -> QuantumMap:
    def f(a):
        a = a.T if transpose_input else a
        return partial_trace(matrix @ np.kron(a, np.eye(idx.d_b)), idx, "A")

    return map_from_function(f, idx.d_a, idx.d_b)


def j_inverse(rho: DualityState) -> QuantumMap:
    """``a -> tr_A[rho (a (x) 1_B)]``."""
    _expect(rho, Variant.J)
    return _inverse(rho.matrix, rho.idx, transpose_input=False)


def choi_forward(phi: AnyMap) -> DualityState:
    """``sum_ij E_ij (x) phi(E_ij)`` in the standard basis."""
    phi = as_map(phi)
    m = sum(np.kron(e, apply(phi, e)) for e in matrix_units(phi.d_a))
    return DualityState.of(m, phi.d_a, phi.d_b, Variant.C)


def choi_inverse(rho: DualityState) -> QuantumMap:
    """``a -> tr_A[rho (a^T (x) 1_B)]``."""
    _expect(rho, Variant.C)
    return _inverse(rho.matrix, rho.idx, transpose_input=True)


def to_variant(rho: DualityState, target) -> DualityState:
    """Re-tag a state, partially transposing A when crossing between the J and C families."""
    target = Variant.parse(target)
    m = rho.matrix
    if (rho.variant in _J_FAMILY) != (target in _J_FAMILY):
        m = partial_transpose(m, rho.idx, "A")
    return DualityState.of(m, rho.d_a, rho.d_b, target)


def inverse(rho: DualityState) -> QuantumMap:
    """Recover the map from a state of any variant."""
    if rho.variant in _J_FAMILY:
        return j_inverse(to_variant(rho, Variant.J))
    return choi_inverse(to_variant(rho, Variant.C))


def forward(phi: AnyMap, variant) -> DualityState:
    variant = Variant.parse(variant)
    if variant in _J_FAMILY:
        return to_variant(j_forward(phi), variant)
    return to_variant(choi_forward(phi), variant)


def choi_style_assembly(phi: AnyMap, basis: OperatorBasis) -> np.ndarray:
    """``sum_k f_k (x) phi(f_k)``: the Choi recipe transplanted to another ONB.

    Agrees with :func:`choi_forward` for matrix units, but not for a generic
    rotated basis.
    """
    phi = as_map(phi)
    return sum(np.kron(f, apply(phi, f)) for f in basis)


def j_of_adjoint_composite(phi: AnyMap) -> np.ndarray:
    """``sum_k e_k* (x) phi(e_k*)`` over matrix units.

    This is the J matrix of the antilinear composite ``phi o *``, pinned to the
    matrix-unit basis; it coincides with the Choi matrix of ``phi``.
    """
    phi = as_map(phi)
    return sum(np.kron(dagger(e), apply(phi, dagger(e))) for e in matrix_units(phi.d_a))


# For each variant: the pairing defining it, written as
#   (rho, g(a) (x) b) = (phi(h(a)), b)_B     for all a in L(H_A), b in L(H_B).
# To expand rho on a product ONB {e_k (x) f_l} we need a with g(a) = e_k, which
# is given by g_inv; the coefficient is then (phi(h(g_inv(e_k))), f_l).
#   J:       g(a) = a*                 h(a) = a
#   CJstar:  g(a) = a                  h(a) = a*      (phi^* = phi o *)
#   JstarC:  g(a) = rep_{A*}(a*) = conj(a)  h(a) = a  (rep_{A*}(x) = x^T)
#   C:       read on the standard basis exactly as JstarC
_PAIRINGS = {
    Variant.J: (dagger, lambda a: a),
    Variant.CJSTAR: (lambda e: e, dagger),
    Variant.JSTARC: (np.conj, lambda a: a),
    Variant.C: (np.conj, lambda a: a),
}


def state_from_inner_products(
    phi: AnyMap,
    variant,
    basis_a: OperatorBasis | None = None,
    basis_b: OperatorBasis | None = None,
) -> DualityState:
    """Build a variant's matrix from its defining inner-product pairing alone.

    Every coefficient ``(rho, e_k (x) f_l)`` is computed from the map side of the
    pairing and the matrix is reassembled as ``sum c_kl e_k (x) f_l``. The
    result must agree with :func:`forward` for any choice of product ONB.
    """
    phi = as_map(phi)
    variant = Variant.parse(variant)
    basis_a = basis_a if basis_a is not None else matrix_units(phi.d_a)
    basis_b = basis_b if basis_b is not None else matrix_units(phi.d_b)
    g_inv, h = _PAIRINGS[variant]
    m = np.zeros((phi.d_a * phi.d_b,) * 2, dtype=np.complex128)
    for e in basis_a:
        img = apply(phi, h(g_inv(np.asarray(e))))
        for f in basis_b:
            m += hs_inner(img, f) * np.kron(e, f)
    return DualityState.of(m, phi.d_a, phi.d_b, variant)


def pairing(rho: DualityState, a, b) -> complex:
    """``tr[rho (a (x) b*)]``, which equals ``(phi(a), b)`` for a J state."""
    return complex(np.trace(rho.matrix @ kron(a, dagger(as_cmat(b)))))
