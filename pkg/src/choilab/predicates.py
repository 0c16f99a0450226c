"""Numerical predicates with explicit tolerances and witnesses."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np

from . import kernels
from .duality import DualityState, choi_forward, j_forward
from .errors import ChoilabError, DimensionError, NotHermitianError
from .linalg import (
    EQ_TOL,
    PSD_TOL,
    BipartiteIndex,
    SeedLike,
    as_cmat,
    dagger,
    hermitian_eigh,
    hermiticity_defect,
    make_rng,
    max_abs,
    partial_trace,
    partial_transpose,
    random_hermitian,
)
from .maps import AnyMap, apply, as_map


class NotPSDError(ChoilabError, ValueError):
    exit_code = 2


class Verdict(str, Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class PredicateReport:
    predicate: str
    verdict: Verdict
    witness_value: float
    tol: float
    witness_data: dict[str, Any] | None = None
    restarts_used: int = 0

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS

    @property
    def fails(self) -> bool:
        return self.verdict is Verdict.FAILS

    def to_dict(self) -> dict:
        return {
            "predicate": self.predicate,
            "verdict": self.verdict.value,
            "witness_value": float(self.witness_value),
            "tol": float(self.tol),
            "restarts_used": int(self.restarts_used),
            "witness_data": _jsonable(self.witness_data),
        }


def _jsonable(obj):
    if obj is None:
        return None
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return _jsonable(np.stack([obj.real, obj.imag], axis=-1).tolist())
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


@dataclass(frozen=True)
class PoptConfig:
    restarts: int = 24
    max_iters: int = 200
    eps: float = 1e-11
    tol_popt: float = 1e-8
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1 or self.max_iters < 1 or self.eps <= 0 or self.tol_popt <= 0:
            raise ValueError(f"PoptConfig fields must be positive: {self}")


def _matrix(rho) -> np.ndarray:
    return rho.matrix if isinstance(rho, DualityState) else as_cmat(rho)


def is_hermitian(m, tol: float = EQ_TOL) -> PredicateReport:
    m = _matrix(m)
    dev = m - dagger(m)
    defect = max_abs(dev)
    data = None
    if dev.size:
        i, j = np.unravel_index(np.argmax(np.abs(dev)), dev.shape)
        data = {"entry": [int(i), int(j)]}
    verdict = Verdict.HOLDS if defect <= tol else Verdict.FAILS
    return PredicateReport("hermitian", verdict, defect, tol, data)


def _psd_threshold(m: np.ndarray, tol: float) -> float:
    return tol * max(1.0, float(np.linalg.norm(m, 2)))


def is_psd(m, tol: float = PSD_TOL, herm_tol: float | None = None) -> PredicateReport:
    """Minimum-eigenvalue test; the floor ``-tol`` is scaled by ``max(1, |m|_2)``."""
    m = _matrix(m)
    if herm_tol is None:
        herm_tol = EQ_TOL * max(1.0, max_abs(m))
    w, v = hermitian_eigh(m, herm_tol)
    thr = _psd_threshold(m, tol)
    verdict = Verdict.HOLDS if w[0] >= -thr else Verdict.FAILS
    return PredicateReport("psd", verdict, float(w[0]), thr, {"eigenvector": v[:, 0]})


def _index_of(rho, idx: BipartiteIndex | None) -> BipartiteIndex:
    if isinstance(rho, DualityState):
        return rho.idx
    if idx is None:
        raise DimensionError("a BipartiteIndex is required for a bare matrix")
    return idx


def _starts(d_b: int, cfg: PoptConfig) -> np.ndarray:
    rows = []
    for r in range(cfg.restarts):
        rng = make_rng(cfg.seed, r)
        rows.append(rng.standard_normal(d_b) + 1j * rng.standard_normal(d_b))
    return np.array(rows)


def seesaw_minimum(rho, idx: BipartiteIndex | None = None, cfg: PoptConfig = PoptConfig(), backend=None):
    """Best see-saw value of ``<x (x) y| rho |x (x) y>`` over ``cfg.restarts`` starts.

    Returns ``(value, x, y, per_restart_values)``; ties go to the lowest restart index.
    """
    m = _matrix(rho)
    idx = _index_of(rho, idx)
    kern = kernels if backend is None else kernels.get_backend(backend)
    m = 0.5 * (m + dagger(m))
    vals, xs, ys, _ = kern.seesaw(m, idx.d_a, idx.d_b, _starts(idx.d_b, cfg), cfg.max_iters, cfg.eps)
    best = int(np.argmin(vals))
    return float(vals[best]), xs[best], ys[best], vals


def product_value(rho, idx: BipartiteIndex, x, y) -> float:
    v = np.kron(np.asarray(x), np.asarray(y))
    return float(np.real(np.vdot(v, _matrix(rho) @ v)))


def is_popt(
    rho, cfg: PoptConfig = PoptConfig(), idx: BipartiteIndex | None = None, herm_tol: float | None = None
) -> PredicateReport:
    """Positivity on pure tensors, searched by see-saw with restarts.

    ``Fails`` comes with product vectors reproducing the negative value.
    ``Holds`` means no violation below ``-cfg.tol_popt`` was found.
    """
    m = _matrix(rho)
    idx = _index_of(rho, idx)
    if m.shape != (idx.dim, idx.dim):
        raise DimensionError(f"matrix shape {m.shape} does not match dims ({idx.d_a}, {idx.d_b})")
    if herm_tol is None:
        herm_tol = EQ_TOL * max(1.0, max_abs(m))
    defect = hermiticity_defect(m)
    if defect > herm_tol:
        raise NotHermitianError(f"POPT test needs a Hermitian matrix (defect {defect:.3e})")
    value, x, y, _ = seesaw_minimum(m, idx, cfg)
    verdict = Verdict.HOLDS if value >= -cfg.tol_popt else Verdict.FAILS
    return PredicateReport("popt", verdict, value, cfg.tol_popt, {"x": x, "y": y}, cfg.restarts)


def qubit_grid(n_theta: int = 10, n_phi: int = 10) -> np.ndarray:
    """Pure qubit states ``(cos(t/2), e^{ip} sin(t/2))`` on a Bloch-angle grid."""
    th = np.linspace(0.0, np.pi, n_theta)
    ph = np.linspace(0.0, 2 * np.pi, n_phi, endpoint=False)
    t, p = np.meshgrid(th, ph, indexing="ij")
    return np.stack([np.cos(t / 2), np.exp(1j * p) * np.sin(t / 2)], axis=-1).reshape(-1, 2)


def grid_minimum(rho, idx: BipartiteIndex | None = None, n_theta: int = 10, n_phi: int = 10) -> float:
    """Brute-force minimum over a product grid of qubit states (two-qubit input only)."""
    m = _matrix(rho)
    idx = _index_of(rho, idx)
    if (idx.d_a, idx.d_b) != (2, 2):
        raise DimensionError("grid search is implemented for two qubits only")
    g = qubit_grid(n_theta, n_phi)
    return float(kernels.product_expectations(m, 2, 2, g, g).min())


def psd_pair_spot_check(rho, idx: BipartiteIndex | None = None, n: int = 50, seed: SeedLike = 0) -> float:
    """Minimum of ``tr[rho (a (x) b)]`` over random PSD ``a, b`` of unit trace."""
    m = _matrix(rho)
    idx = _index_of(rho, idx)
    rng = make_rng(seed)
    worst = np.inf
    for _ in range(n):
        a = _rand_state(idx.d_a, rng)
        b = _rand_state(idx.d_b, rng)
        worst = min(worst, float(np.real(np.trace(m @ np.kron(a, b)))))
    return worst


def _rand_state(d, rng):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    p = g @ dagger(g)
    return p / np.trace(p).real


def _non_hermitian_fail(name: str, m: np.ndarray, tol: float) -> PredicateReport:
    defect = hermiticity_defect(m)
    return PredicateReport(name, Verdict.FAILS, -defect, tol, {"reason": "matrix is not Hermitian", "defect": defect})


def _psd_of(name: str, m: np.ndarray, tol: float) -> PredicateReport:
    if hermiticity_defect(m) > EQ_TOL * max(1.0, max_abs(m)):
        return _non_hermitian_fail(name, m, tol)
    rep = is_psd(m, tol)
    rep.predicate = name
    return rep


def is_cp(phi: AnyMap, tol: float = PSD_TOL) -> PredicateReport:
    """Complete positivity via PSD-ness of the Choi matrix."""
    return _psd_of("cp", choi_forward(phi).matrix, tol)


def is_co_cp(phi: AnyMap, tol: float = PSD_TOL) -> PredicateReport:
    """CP of ``phi o T``, i.e. PSD-ness of ``T_A`` of the Choi matrix."""
    c = choi_forward(phi)
    return _psd_of("co-cp", partial_transpose(c.matrix, c.idx, "A"), tol)


def is_trace_preserving(phi: AnyMap, tol: float = EQ_TOL, samples: int = 3, seed: SeedLike = 0) -> PredicateReport:
    """``tr_B J(phi) = 1_A``, cross-checked by ``tr phi(x) = tr x`` on random ``x``."""
    phi = as_map(phi)
    j = j_forward(phi)
    dev = max_abs(partial_trace(j.matrix, j.idx, "B") - np.eye(phi.d_a))
    rng = make_rng(seed)
    direct = 0.0
    for _ in range(samples):
        x = random_hermitian(phi.d_a, rng) + 1j * random_hermitian(phi.d_a, rng)
        direct = max(direct, abs(np.trace(apply(phi, x)) - np.trace(x)) / max(1.0, max_abs(x)))
    verdict = Verdict.HOLDS if dev <= tol else Verdict.FAILS
    return PredicateReport("trace-preserving", verdict, dev, tol, {"direct_trace_deviation": direct})


def is_ppt_state(rho, idx: BipartiteIndex | None = None, tol: float = PSD_TOL) -> PredicateReport:
    """Peres test: a PSD state is PPT iff ``T_A(rho)`` is PSD."""
    m = _matrix(rho)
    idx = _index_of(rho, idx)
    pre = is_psd(m, tol)
    if not pre.holds:
        raise NotPSDError(f"PPT test needs a PSD state (min eigenvalue {pre.witness_value:.3e})")
    rep = is_psd(partial_transpose(m, idx, "A"), tol)
    rep.predicate = "ppt"
    return rep


def is_herm_preserving(phi: AnyMap, tol: float = EQ_TOL) -> PredicateReport:
    """Hermiticity preservation via Hermiticity of the J matrix."""
    m = j_forward(phi).matrix
    rep = is_hermitian(m, tol * max(1.0, max_abs(m)))
    rep.predicate = "herm-preserving"
    return rep
