"""Seeded verification suites, one per theorem-level statement.

Every trial draws its maps from ``make_rng(seed, suite, d_a, d_b, trial)``,
so results do not depend on execution order. A trial passes when every
check in it passes; negative controls are checks that a generator built to
violate a predicate really does violate it.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from .bases import gell_mann, haar_rotated_basis, matrix_units, rotated_basis
from .duality import (
    DualityState,
    Variant,
    choi_forward,
    choi_inverse,
    choi_style_assembly,
    forward,
    j_forward,
    j_inverse,
    j_of_adjoint_composite,
    state_from_inner_products,
    to_variant,
)
from .jordan import (
    Orientation,
    associative_product,
    commutator,
    complex_structure,
    evolve,
    exp_superoperator,
    jordan_product,
    order_derivation,
    order_derivation_flow,
    order_derivation_super,
    star_product,
)
from .linalg import (
    EQ_TOL,
    BipartiteIndex,
    dagger,
    ginibre,
    haar_unitary,
    hermiticity_defect,
    make_rng,
    max_abs,
    partial_trace,
    random_hermitian,
    random_psd,
    vec,
)
from .maps import (
    MapClass,
    QuantumMap,
    apply,
    as_map,
    conjugate_map,
    kraus_from_choi,
    map_from_kraus,
    precompose_transpose,
    random_map,
    transpose_map,
)
from .maps_ext import extend_identity, non_positive, rank_one_co_cp
from .predicates import (
    PoptConfig,
    is_co_cp,
    is_cp,
    is_hermitian,
    is_popt,
    is_psd,
    is_trace_preserving,
)


class SuiteId(str, Enum):
    DE_PILLIS = "DePillis"
    JAMIOLKOWSKI_A = "Jamiolkowski_a"
    JAMIOLKOWSKI_B = "Jamiolkowski_b"
    CHOI = "Choi"
    CHOI_REFORMULATED = "ChoiReformulated"
    LEMMA1_T = "Lemma1_T"
    BASIS_INDEPENDENCE_J = "BasisIndependenceJ"
    BASIS_DEPENDENCE_C = "BasisDependenceC"
    VARIANT_LADDER = "VariantLadder"
    JORDAN_STRUCTURE = "JordanStructure"
    TIME_ORIENTATION = "TimeOrientation"

    @classmethod
    def parse(cls, name) -> "SuiteId":
        if isinstance(name, SuiteId):
            return name
        key = str(name).replace("-", "_").lower()
        for s in cls:
            if s.value.lower() == key or s.name.lower() == key:
                return s
        raise ValueError(f"unknown suite {name!r}")


@dataclass
class TheoremSuite:
    id: SuiteId
    dims: list = field(default_factory=lambda: [(2, 2)])
    trials: int = 100
    seed: int = 0
    tol: float = EQ_TOL
    popt: PoptConfig = field(default_factory=PoptConfig)
    #: test hook: the CP generator silently returns a non-CP map
    inject_fault: bool = False

    def __post_init__(self):
        self.id = SuiteId.parse(self.id)
        self.dims = [tuple(int(x) for x in d) for d in self.dims]


@dataclass
class SuiteResult:
    id: SuiteId
    passed: int = 0
    failed: int = 0
    counterexamples: list = field(default_factory=list)
    controls_checked: int = 0
    controls_rejected: int = 0
    wallclock: float = 0.0

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.controls_rejected == self.controls_checked

    def to_dict(self, wallclock: bool = True) -> dict:
        d = {
            "id": self.id.value,
            "passed": self.passed,
            "failed": self.failed,
            "counterexamples": self.counterexamples,
            "controls_checked": self.controls_checked,
            "controls_rejected": self.controls_rejected,
        }
        if wallclock:
            d["wallclock"] = self.wallclock
        return d


@dataclass
class _Check:
    name: str
    ok: bool
    value: float = 0.0
    control: bool = False


class _Trial:
    """Per-trial context: random source, dims, tolerances and the check log."""

    def __init__(self, suite: TheoremSuite, d_a: int, d_b: int, rng: np.random.Generator):
        self.suite = suite
        self.d_a = d_a
        self.d_b = d_b
        self.rng = rng
        self.tol = suite.tol
        self.checks: list[_Check] = []

    def gen(self, cls: MapClass):
        if self.suite.inject_fault and cls is MapClass.CP:
            return rank_one_co_cp(self.d_a, self.d_b, self.rng)
        return random_map(cls, self.d_a, self.d_b, self.rng)

    def check(self, name: str, ok: bool, value: float = 0.0):
        self.checks.append(_Check(name, bool(ok), float(value)))

    def control(self, name: str, rejected: bool, value: float = 0.0):
        self.checks.append(_Check(name, bool(rejected), float(value), control=True))

    def close(self, name: str, a, b, tol: float | None = None):
        tol = self.tol if tol is None else tol
        dev = max_abs(np.asarray(a) - np.asarray(b))
        scale = max(1.0, max_abs(a))
        self.check(name, dev <= tol * scale, dev)


def _popt(t: _Trial, state) -> "object":
    return is_popt(state, t.suite.popt)


# --- suites --------------------------------------------------------------


def _de_pillis(t: _Trial):
    hp = t.gen(MapClass.HERM_PRESERVING)
    t.close("hp: phi# == phi", conjugate_map(hp).transfer, hp.transfer)
    t.check("hp: J Hermitian", is_hermitian(j_forward(hp).matrix, 1e-9).holds)
    cp = as_map(t.gen(MapClass.CP))
    t.check("cp: J Hermitian", is_hermitian(j_forward(cp).matrix, 1e-9).holds)
    # converse: a Hermitian J gives a Hermiticity-preserving map
    h = random_hermitian(t.d_a * t.d_b, t.rng)
    phi = j_inverse(DualityState.of(h, t.d_a, t.d_b, Variant.J))
    t.close("Hermitian J -> phi# == phi", conjugate_map(phi).transfer, phi.transfer)
    x = random_hermitian(t.d_a, t.rng)
    t.check("Hermitian J -> phi(herm) herm", hermiticity_defect(apply(phi, x)) <= 1e-9)
    # negative control: generic map is not Hermiticity-preserving
    arb = t.gen(MapClass.ARBITRARY)
    gap = max_abs(conjugate_map(arb).transfer - arb.transfer)
    t.check("arbitrary: phi# != phi", gap > 1e-6, gap)
    t.control("arbitrary: J not Hermitian", is_hermitian(j_forward(arb).matrix, 1e-9).fails)


def _positive_instances(t: _Trial):
    yield "cp", as_map(t.gen(MapClass.CP))
    yield "co-cp", as_map(t.gen(MapClass.CO_CP))
    yield "decomposable", as_map(t.gen(MapClass.DECOMPOSABLE))
    w = t.rng.uniform(0.1, 0.9)
    mix = w * as_map(t.gen(MapClass.CP)).transfer + (1 - w) * as_map(t.gen(MapClass.CO_CP)).transfer
    yield "convex", QuantumMap(t.d_a, t.d_b, mix)
    if t.d_a == t.d_b:
        yield "transpose", transpose_map(t.d_a)


def _jamiolkowski_a(t: _Trial):
    for name, phi in _positive_instances(t):
        rep = _popt(t, j_forward(phi))
        t.check(f"{name}: J is POPT", rep.holds, rep.witness_value)
        # direct positivity on a random pure input
        u = ginibre(t.d_a, 1, t.rng)[:, 0]
        out = apply(phi, np.outer(u, np.conj(u)))
        t.check(f"{name}: phi(|u><u|) >= 0", np.linalg.eigvalsh(0.5 * (out + dagger(out)))[0] >= -1e-9)
    bad, u, v = non_positive(as_map(t.gen(MapClass.CP)), t.rng)
    rep = _popt(t, j_forward(bad))
    t.control("non-positive: J fails POPT", rep.fails, rep.witness_value)
    if rep.fails:
        x, y = rep.witness_data["x"], rep.witness_data["y"]
        direct = float(np.real(np.vdot(y, apply(bad, np.outer(x, np.conj(x))) @ y)))
        t.check("witness: <y|phi(|x><x|)|y> < 0", direct < 0, direct)
        t.check("witness reproduces value", abs(direct - rep.witness_value) <= 1e-8, direct - rep.witness_value)
    known = float(np.real(np.vdot(v, apply(bad, np.outer(u, np.conj(u))) @ v)))
    t.check("constructed violation is -1", abs(known + 1.0) <= 1e-9, known)


def _jamiolkowski_b(t: _Trial):
    ch = as_map(t.gen(MapClass.TRACE_PRESERVING_CP))
    rep = is_trace_preserving(ch, 1e-9, seed=t.rng)
    t.check("tp-cp: tr_B J = 1_A", rep.holds, rep.witness_value)
    t.check("tp-cp: tr phi(x) = tr x", rep.witness_data["direct_trace_deviation"] <= 1e-9)
    scale = t.rng.uniform(1.5, 3.0)
    scaled = scale * ch
    rep = is_trace_preserving(scaled, 1e-9, seed=t.rng)
    t.control("scaled: tr_B J != 1_A", rep.fails, rep.witness_value)
    t.check("scaled: tr phi(x) != tr x detected", rep.witness_data["direct_trace_deviation"] > 1e-6)
    # converse: any Hermitian J with tr_B J = 1_A gives a trace-preserving map
    h = random_hermitian(t.d_a * t.d_b, t.rng)
    idx = BipartiteIndex(t.d_a, t.d_b)
    corr = partial_trace(h, idx, "B") - np.eye(t.d_a)
    h = h - np.kron(corr, np.eye(t.d_b)) / t.d_b
    phi = j_inverse(DualityState.of(h, t.d_a, t.d_b, Variant.J))
    x = ginibre(t.d_a, t.d_a, t.rng)
    t.check("tr_B J = 1 -> trace preserving", abs(np.trace(apply(phi, x)) - np.trace(x)) <= 1e-9)


def _choi(t: _Trial):
    cp = as_map(t.gen(MapClass.CP))
    rep = is_cp(cp)
    t.check("cp: Choi PSD", rep.holds, rep.witness_value)
    # converse: a PSD matrix read as a Choi matrix gives a CP map
    rho = random_psd(t.d_a * t.d_b, t.rng)
    phi = choi_inverse(DualityState.of(rho, t.d_a, t.d_b, Variant.C))
    t.check("PSD C -> is_cp", is_cp(phi).holds)
    kr = map_from_kraus(kraus_from_choi(rho, t.d_a, t.d_b))
    t.close("PSD C -> Kraus form reproduces map", kr.transfer, phi.transfer, 1e-9)
    z = random_psd(t.d_a * t.d_a, t.rng)
    ext = extend_identity(phi, z, t.d_a)
    t.check("PSD C -> (id (x) phi)(z) >= 0", np.linalg.eigvalsh(0.5 * (ext + dagger(ext)))[0] >= -1e-9 * max_abs(ext))
    # negative controls
    bad = rank_one_co_cp(t.d_a, t.d_b, t.rng)
    rep = is_cp(bad)
    t.control("rank-one co-cp: Choi not PSD", rep.fails, rep.witness_value)
    if t.d_a == t.d_b:
        rep = is_cp(transpose_map(t.d_a))
        t.control("transpose: Choi not PSD", rep.fails, rep.witness_value)
    h = random_hermitian(t.d_a * t.d_b, t.rng)
    w, v = np.linalg.eigh(h)
    w[0] = -abs(w[0]) - 0.5
    h = (v * w) @ dagger(v)
    phi = choi_inverse(DualityState.of(h, t.d_a, t.d_b, Variant.C))
    t.control("non-PSD C -> not CP", is_cp(phi).fails)
    omega = np.zeros((t.d_a * t.d_a,), dtype=np.complex128)
    omega[np.arange(t.d_a) * (t.d_a + 1)] = 1.0
    ext = extend_identity(phi, np.outer(omega, omega), t.d_a)
    lam = np.linalg.eigvalsh(0.5 * (ext + dagger(ext)))[0]
    t.check("non-PSD C -> (id (x) phi)(|Phi><Phi|) has negative eigenvalue", lam < -1e-6, lam)


def _choi_reformulated(t: _Trial):
    for cls in (MapClass.CP, MapClass.ARBITRARY, MapClass.HERM_PRESERVING):
        phi = as_map(t.gen(cls))
        t.close(f"{cls.value}: J(phi o *) == C(phi)", j_of_adjoint_composite(phi), choi_forward(phi).matrix)
    cp = as_map(t.gen(MapClass.CP))
    t.check("cp: J(phi o *) PSD", is_psd(j_of_adjoint_composite(cp)).holds)
    bad = rank_one_co_cp(t.d_a, t.d_b, t.rng)
    t.control("rank-one co-cp: J(phi o *) not PSD", is_psd(j_of_adjoint_composite(bad)).fails)
    # the plain J matrix of a CP map is generally not PSD
    if t.d_a == t.d_b:
        ident = map_from_kraus([np.eye(t.d_a)])
        t.control("identity: J not PSD", is_psd(j_forward(ident).matrix).fails)


def _lemma1_t(t: _Trial):
    maps = [
        ("cp", as_map(t.gen(MapClass.CP))),
        ("co-cp", rank_one_co_cp(t.d_a, t.d_b, t.rng)),
        ("herm-preserving", as_map(t.gen(MapClass.HERM_PRESERVING))),
        ("decomposable", as_map(t.gen(MapClass.DECOMPOSABLE))),
    ]
    for name, phi in maps:
        a = is_cp(phi)
        b = is_co_cp(precompose_transpose(phi))
        t.check(f"{name}: cp(phi) <-> co-cp(phi o T)", a.verdict == b.verdict)
        t.check(f"{name}: witnesses agree", abs(a.witness_value - b.witness_value) <= 1e-9 * max(1, abs(a.witness_value)))
    # non-vacuity: a rank-one CP map with entangled Kraus vector is not co-CP
    k = ginibre(t.d_b, t.d_a, t.rng)
    cp1 = map_from_kraus([k])
    t.control("rank-one cp: not co-CP", is_co_cp(cp1).fails)
    t.check("rank-one cp o T: co-CP", is_co_cp(precompose_transpose(cp1)).holds)


def _basis_independence_j(t: _Trial):
    phi = as_map(t.gen(MapClass.ARBITRARY))
    ref = j_forward(phi, matrix_units(t.d_a)).matrix
    bases = [gell_mann(t.d_a)] + [
        haar_rotated_basis(matrix_units(t.d_a), int(t.rng.integers(2**31))) for _ in range(5)
    ]
    for b in bases:
        t.close(f"J in {b.kind} basis", j_forward(phi, b).matrix, ref)


def _basis_dependence_c(t: _Trial):
    cp = as_map(t.gen(MapClass.CP))
    c = choi_forward(cp).matrix
    t.close("matrix-unit assembly == C", choi_style_assembly(cp, matrix_units(t.d_a)), c)
    rot = haar_rotated_basis(matrix_units(t.d_a), int(t.rng.integers(2**31)))
    dev = max_abs(choi_style_assembly(cp, rot) - c)
    t.control("Haar coefficient rotation changes the Choi assembly", dev > 1e-3, dev)
    # conjugation basis U E_ij U*: assembly stays PSD for CP maps
    u = haar_unitary(t.d_a, t.rng)
    conj_basis = rotated_basis(
        matrix_units(t.d_a),
        np.stack([vec(u @ e @ dagger(u)) for e in matrix_units(t.d_a)], axis=1),
    )
    t.check("conjugation basis keeps PSD", is_psd(choi_style_assembly(cp, conj_basis)).holds)


def _variant_ladder(t: _Trial):
    phi = as_map(t.gen(MapClass.ARBITRARY))
    j = j_forward(phi)
    cycle = [Variant.C, Variant.JSTARC, Variant.CJSTAR, Variant.J]
    s = j
    tr0 = np.trace(j.matrix)
    for v in cycle:
        s = to_variant(s, v)
        t.check(f"trace kept at {v.value}", abs(np.trace(s.matrix) - tr0) <= 1e-12 * max(1, abs(tr0)))
    t.check("cycle restores J exactly", np.array_equal(s.matrix, j.matrix))
    gm = gell_mann(t.d_a)
    rb = haar_rotated_basis(matrix_units(t.d_b), int(t.rng.integers(2**31)))
    for v in Variant:
        direct = forward(phi, v).matrix
        t.close(f"{v.value}: pairing reconstruction", state_from_inner_products(phi, v).matrix, direct)
        t.close(f"{v.value}: pairing in other ONBs", state_from_inner_products(phi, v, gm, rb).matrix, direct)
    t.close("J -> map round trip", j_inverse(j).transfer, phi.transfer)
    t.close("C -> map round trip", choi_inverse(choi_forward(phi)).transfer, phi.transfer)
    hp = as_map(t.gen(MapClass.HERM_PRESERVING))
    for v in Variant:
        t.check(f"{v.value}: Hermitian for herm-preserving", hermiticity_defect(forward(hp, v).matrix) <= 1e-9)
    # J(phi#) = J(phi)*
    t.close("J(phi#) == J(phi)*", j_forward(conjugate_map(phi)).matrix, dagger(j.matrix))
    if t.d_a > 1:
        # negative controls: skipping the T_A step, or dropping the conjugation, must be detected
        mislabelled = choi_inverse(DualityState.of(j.matrix, t.d_a, t.d_b, Variant.C))
        dev = max_abs(mislabelled.transfer - phi.transfer)
        t.control("J matrix read as C inverts to a different map", dev > 1e-6, dev)
        dev = max_abs(j_forward(conjugate_map(phi)).matrix - j.matrix.T)
        t.control("J(phi#) differs from the plain transpose of J(phi)", dev > 1e-6, dev)


def _rand_pair(t: _Trial, hermitian: bool):
    d = t.d_a
    if hermitian:
        return random_hermitian(d, t.rng, unit_norm=True), random_hermitian(d, t.rng, unit_norm=True)
    a, b = ginibre(d, d, t.rng), ginibre(d, d, t.rng)
    return a / np.linalg.norm(a, 2), b / np.linalg.norm(b, 2)


def _jordan_structure(t: _Trial):
    a, b = _rand_pair(t, hermitian=False)
    half_anti = 0.5 * (a @ b + b @ a)
    half_comm = 0.5 * commutator(a, b)
    t.close("ab = {a,b}/2 + [a,b]/2", a @ b, half_anti + half_comm, 1e-12)
    t.close("ba = {a,b}/2 - [a,b]/2", b @ a, half_anti - half_comm, 1e-12)
    t.close("forward product = ab", associative_product(a, b, Orientation.FORWARD), a @ b, 1e-12)
    t.close("reverse product = ba", associative_product(a, b, Orientation.REVERSE), b @ a, 1e-12)
    t.close("a ._- b = b ._+ a", associative_product(a, b, Orientation.REVERSE), associative_product(b, a), 1e-12)
    h, k = _rand_pair(t, hermitian=True)
    aa = jordan_product(h, h)
    t.close("Jordan identity", jordan_product(jordan_product(h, k), aa), jordan_product(h, jordan_product(k, aa)), 1e-9)
    t.close("o commutative", jordan_product(h, k), jordan_product(k, h), 1e-12)
    t.close("* anticommutative", star_product(h, k), -star_product(k, h), 1e-12)
    t.check("o closes on Hermitian", hermiticity_defect(jordan_product(h, k)) <= 1e-12)
    t.check("* closes on Hermitian", hermiticity_defect(star_product(h, k)) <= 1e-12)
    t.control("plain product leaves Hermitian set", hermiticity_defect(h @ k) > 1e-6)
    t.close("delta_h = h o .", order_derivation(h, k), jordan_product(h, k), 1e-12)
    t.close("delta_{ih} = h * .", order_derivation(1j * h, k), star_product(h, k), 1e-12)
    t.close("h o k - i h*k = hk", complex_structure(h, k), h @ k, 1e-12)


def _time_orientation(t: _Trial):
    a, b = _rand_pair(t, hermitian=True)
    slope = 1j * commutator(a, b)
    for h in (1e-3, 1e-4, 1e-5):
        err = max_abs((evolve(h, a, b) - b) / h - slope)
        t.check(f"finite difference h={h:g}", err <= 10 * h, err)
    tt = float(t.rng.uniform(-1.0, 1.0))
    d = t.d_a
    psi = np.stack([vec(evolve(tt, a, e)) for e in matrix_units_cols(d)], axis=1)
    t.close("Psi(t,a) = exp(2t delta_ia)", psi, exp_superoperator(order_derivation_super(1j * a), 2 * tt), 1e-8)
    c = random_hermitian(d, t.rng, unit_norm=True)
    t.close(
        "Psi is a Jordan homomorphism",
        evolve(tt, a, jordan_product(b, c)),
        jordan_product(evolve(tt, a, b), evolve(tt, a, c)),
        1e-9,
    )
    g = ginibre(d, d, t.rng)
    x = random_psd(d, t.rng)
    s = float(t.rng.uniform(-2.0, 2.0))
    y = order_derivation_flow(s, g, x)
    lam = np.linalg.eigvalsh(0.5 * (y + dagger(y)))[0]
    t.check("exp(t delta_a) keeps PSD", lam >= -1e-10 * max(1.0, max_abs(y)), lam)
    # reversing the orientation reverses the flow direction
    t.close("Psi(-t) inverts Psi(t)", evolve(-tt, a, evolve(tt, a, b)), b, 1e-10)


def matrix_units_cols(d: int):
    """Matrix units in column-stacking order, matching transfer-matrix columns."""
    out = []
    for j in range(d):
        for i in range(d):
            e = np.zeros((d, d), dtype=np.complex128)
            e[i, j] = 1.0
            out.append(e)
    return out


_SUITES: dict[SuiteId, Callable[[_Trial], None]] = {
    SuiteId.DE_PILLIS: _de_pillis,
    SuiteId.JAMIOLKOWSKI_A: _jamiolkowski_a,
    SuiteId.JAMIOLKOWSKI_B: _jamiolkowski_b,
    SuiteId.CHOI: _choi,
    SuiteId.CHOI_REFORMULATED: _choi_reformulated,
    SuiteId.LEMMA1_T: _lemma1_t,
    SuiteId.BASIS_INDEPENDENCE_J: _basis_independence_j,
    SuiteId.BASIS_DEPENDENCE_C: _basis_dependence_c,
    SuiteId.VARIANT_LADDER: _variant_ladder,
    SuiteId.JORDAN_STRUCTURE: _jordan_structure,
    SuiteId.TIME_ORIENTATION: _time_orientation,
}

_SUITE_STREAM = {s: n for n, s in enumerate(SuiteId)}


def run_suite(suite: TheoremSuite) -> SuiteResult:
    """Run every trial of ``suite`` at each requested dimension pair."""
    fn = _SUITES[suite.id]
    res = SuiteResult(suite.id)
    start = time.perf_counter()
    for d_a, d_b in suite.dims:
        for trial in range(suite.trials):
            rng = make_rng(suite.seed, _SUITE_STREAM[suite.id], d_a, d_b, trial)
            t = _Trial(suite, d_a, d_b, rng)
            try:
                fn(t)
            except Exception as exc:  # failures are data
                t.check(f"exception: {type(exc).__name__}: {exc}", False)
            bad = [c for c in t.checks if not c.ok]
            for c in t.checks:
                if c.control:
                    res.controls_checked += 1
                    res.controls_rejected += int(c.ok)
            if bad:
                res.failed += 1
                res.counterexamples.append(
                    {
                        "seed": suite.seed,
                        "dims": [d_a, d_b],
                        "trial": trial,
                        "check": bad[0].name,
                        "witness": bad[0].value,
                    }
                )
            else:
                res.passed += 1
    res.wallclock = time.perf_counter() - start
    return res


def run_all(ids=None, dims=((2, 2),), trials: int = 100, seed: int = 0, **kw) -> list[SuiteResult]:
    ids = list(SuiteId) if ids is None else [SuiteId.parse(i) for i in ids]
    return [run_suite(TheoremSuite(i, list(dims), trials, seed, **kw)) for i in ids]
