"""Small constructions used by the harness and tests."""
from __future__ import annotations

import numpy as np

from .linalg import SeedLike, dagger, ginibre, make_rng, random_unit_vector
from .maps import QuantumMap, apply, map_from_kraus, precompose_transpose


def extend_identity(phi: QuantumMap, x: np.ndarray, n: int) -> np.ndarray:
    """``(id_n (x) phi)(x)`` for ``x`` on ``C^n (x) C^{d_a}``."""
    blocks = np.asarray(x).reshape(n, phi.d_a, n, phi.d_a)
    out = np.zeros((n, phi.d_b, n, phi.d_b), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            out[i, :, j, :] = apply(phi, blocks[i, :, j, :])
    return out.reshape(n * phi.d_b, n * phi.d_b)


def rank_one_co_cp(d_a: int, d_b: int, seed: SeedLike) -> QuantumMap:
    """``x -> K x^T K*`` for one Ginibre ``K``; generically not CP when both dims exceed 1."""
    return precompose_transpose(map_from_kraus([ginibre(d_b, d_a, seed)]))


def measure_prepare(u: np.ndarray, v: np.ndarray) -> QuantumMap:
    """``x -> <u|x|u> |v><v|``."""
    return map_from_kraus([np.outer(v, np.conj(u))])


def non_positive(cp: QuantumMap, seed: SeedLike) -> tuple[QuantumMap, np.ndarray, np.ndarray]:
    """``cp - (m + 1) * measure_prepare(u, v)`` with ``m = <v|cp(|u><u|)|v>``.

    The result sends ``|u><u|`` to an operator with ``<v|.|v> = -1``, so it is
    certainly not positive. Returns the map with ``u`` and ``v``.
    """
    rng = make_rng(seed)
    u = random_unit_vector(cp.d_a, rng)
    v = random_unit_vector(cp.d_b, rng)
    m = float(np.real(np.vdot(v, apply(cp, np.outer(u, np.conj(u))) @ v)))
    bad = cp.transfer - (m + 1.0) * measure_prepare(u, v).transfer
    return QuantumMap(cp.d_a, cp.d_b, bad), u, v


def random_density(d: int, seed: SeedLike) -> np.ndarray:
    g = ginibre(d, d, seed)
    p = g @ dagger(g)
    return p / np.trace(p).real
