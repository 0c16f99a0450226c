"""Pure-numpy kernels; same contract as the compiled ``_core`` module."""
import numpy as np


def _phase_fixed(v):
    # make the first non-negligible component real positive
    thresh = 1e-12 * max(1.0, float(np.abs(v).max()))
    for c in v:
        if abs(c) > thresh:
            return v * (abs(c) / c)
    return v


def _min_eig(m):
    w, v = np.linalg.eigh(m)
    return w[0], _phase_fixed(v[:, 0])


def seesaw(rho, d_a, d_b, y0, max_iters, eps):
    """Alternating minimisation of ``<x (x) y| rho |x (x) y>`` over unit vectors.

    One run per row of ``y0`` (starting B-vectors). Returns
    ``(values, xs, ys, iters)``.
    """
    r = np.asarray(rho, dtype=np.complex128).reshape(d_a, d_b, d_a, d_b)
    y0 = np.asarray(y0, dtype=np.complex128)
    n = y0.shape[0]
    values = np.empty(n)
    xs = np.empty((n, d_a), dtype=np.complex128)
    ys = np.empty((n, d_b), dtype=np.complex128)
    iters = np.empty(n, dtype=np.int64)
    for s in range(n):
        y = y0[s] / np.linalg.norm(y0[s])
        f_prev = np.inf
        it = 0
        f = np.inf
        x = np.zeros(d_a, dtype=np.complex128)
        while it < max_iters:
            it += 1
            m = np.einsum("k,ikjl,l->ij", np.conj(y), r, y)
            _, x = _min_eig(0.5 * (m + m.conj().T))
            nx = np.einsum("i,ikjl,j->kl", np.conj(x), r, x)
            f, y = _min_eig(0.5 * (nx + nx.conj().T))
            if abs(f_prev - f) < eps:
                break
            f_prev = f
        values[s] = f
        xs[s] = x
        ys[s] = y
        iters[s] = it
    return values, xs, ys, iters


def product_expectations(rho, d_a, d_b, xs, ys):
    """``out[p, q] = Re <x_p (x) y_q| rho |x_p (x) y_q>``."""
    r = np.asarray(rho, dtype=np.complex128).reshape(d_a, d_b, d_a, d_b)
    xs = np.asarray(xs, dtype=np.complex128)
    ys = np.asarray(ys, dtype=np.complex128)
    out = np.einsum("pi,qk,ikjl,pj,ql->pq", np.conj(xs), np.conj(ys), r, xs, ys, optimize=True)
    return np.ascontiguousarray(out.real)
