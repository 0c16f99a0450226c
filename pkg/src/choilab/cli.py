"""Command-line interface.

Exit codes: 0 holds/pass, 1 predicate or suite fails, 2 usage or parse
error, 3 dimension error, 4 variant mismatch. Reports go to stdout as one
JSON document; diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import io
from .duality import DualityState, Variant, choi_forward, forward, inverse, j_forward, to_variant
from .errors import ChoilabError, SchemaError, VariantError
from .harness import SuiteId, TheoremSuite, run_suite
from .maps import QuantumMap, as_map, kraus_from_choi, map_from_kraus, random_map
from .predicates import (
    PoptConfig,
    is_co_cp,
    is_cp,
    is_hermitian,
    is_herm_preserving,
    is_popt,
    is_ppt_state,
    is_psd,
    is_trace_preserving,
)

log = logging.getLogger("choilab")

MAP_REPRS = ("kraus", "transfer")
PREDICATES = ("hermitian", "herm-preserving", "psd", "popt", "cp", "co-cp", "trace-preserving", "ppt")


class _Fails(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get("CHOILAB_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise SchemaError(f"CHOILAB_SEED must be an integer, got {raw!r}") from None


def _emit(doc: dict):
    sys.stdout.write(json.dumps(doc) + "\n")


def _write(obj, out: str | None):
    text = io.dumps(io.to_dict(obj))
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _kraus_form(phi: QuantumMap) -> QuantumMap:
    if phi.kraus is not None:
        return phi
    rep = is_cp(phi)
    if not rep.holds:
        raise _Fails(f"map is not CP (Choi min eigenvalue {rep.witness_value:.3e}); no Kraus form")
    k = map_from_kraus(kraus_from_choi(choi_forward(phi).matrix, phi.d_a, phi.d_b))
    return QuantumMap(phi.d_a, phi.d_b, phi.transfer, k.kraus, phi.orientation_a, phi.orientation_b)


def cmd_convert(args) -> int:
    obj = io.load(args.input)
    source = obj.variant.value if isinstance(obj, DualityState) else None
    if args.source is not None:
        if isinstance(obj, DualityState):
            if Variant.parse(args.source) is not obj.variant:
                raise VariantError(f"--from {args.source} but file holds a {obj.variant.value} state")
        elif args.source not in MAP_REPRS:
            raise VariantError(f"--from {args.source} but file holds a map")
    target = args.to
    if target in MAP_REPRS:
        phi = inverse(obj) if isinstance(obj, DualityState) else as_map(obj)
        if target == "kraus":
            phi = _kraus_form(phi)
        _write_map(phi, target, args.out)
        return 0
    v = Variant.parse(target)
    out = to_variant(obj, v) if isinstance(obj, DualityState) else forward(obj, v)
    log.info("converted %s -> %s", source or "map", v.value)
    _write(out, args.out)
    return 0


def _write_map(phi: QuantumMap, repr: str, out):
    text = io.dumps(io.map_to_dict(phi, repr))
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _check_map(phi: QuantumMap, pred: str, tol, cfg: PoptConfig):
    kw = {} if tol is None else {"tol": tol}
    if pred in ("hermitian", "herm-preserving"):
        return is_herm_preserving(phi, **kw)
    if pred == "psd":
        return is_psd(choi_forward(phi), **kw)
    if pred == "popt":
        return is_popt(j_forward(phi), cfg)
    if pred == "cp":
        return is_cp(phi, **kw)
    if pred == "co-cp":
        return is_co_cp(phi, **kw)
    if pred == "trace-preserving":
        return is_trace_preserving(phi, **kw)
    if pred == "ppt":
        return is_ppt_state(choi_forward(phi), **kw)
    raise SchemaError(f"unknown predicate {pred!r}")


def _check_state(rho: DualityState, pred: str, tol, cfg: PoptConfig):
    kw = {} if tol is None else {"tol": tol}
    if pred == "hermitian":
        return is_hermitian(rho, **kw)
    if pred == "psd":
        return is_psd(rho, **kw)
    if pred == "popt":
        return is_popt(rho, cfg)
    if pred == "ppt":
        return is_ppt_state(rho, **kw)
    return _check_map(inverse(rho), pred, tol, cfg)


def cmd_check(args) -> int:
    obj = io.load(args.input)
    seed = args.seed if args.seed is not None else _default_seed()
    cfg = PoptConfig(args.restarts, args.max_iters, args.eps, args.tol_popt, seed)
    if isinstance(obj, DualityState):
        rep = _check_state(obj, args.predicate, args.tol, cfg)
    else:
        rep = _check_map(as_map(obj), args.predicate, args.tol, cfg)
    _emit({"schema": io.REPORT_SCHEMA, "kind": "check", "input": str(args.input), "report": rep.to_dict()})
    return 0 if rep.holds else 1


def cmd_generate(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    phi = random_map(args.cls, args.d_a, args.d_b, seed, rank=args.rank)
    _write(as_map(phi), args.out)
    return 0


def _parse_dims(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"dims must look like 2,3 (got {text!r})") from None
    if a < 1 or b < 1:
        raise argparse.ArgumentTypeError(f"dims must be positive (got {text!r})")
    return a, b


def cmd_verify(args) -> int:
    names = args.suites or ["all"]
    if any(n.lower() == "all" for n in names):
        ids = list(SuiteId)
    else:
        try:
            ids = [SuiteId.parse(n) for n in names]
        except ValueError as exc:
            raise SchemaError(str(exc)) from None
    seed = args.seed if args.seed is not None else _default_seed()
    dims = args.dims or [(2, 2)]
    cfg = PoptConfig(restarts=args.restarts, seed=seed)
    results = []
    for sid in ids:
        res = run_suite(TheoremSuite(sid, dims, args.trials, seed, popt=cfg, inject_fault=args.inject_fault))
        log.info("%s: passed=%d failed=%d (%.2fs)", sid.value, res.passed, res.failed, res.wallclock)
        results.append(res)
    ok = all(r.ok for r in results)
    doc = {
        "schema": io.REPORT_SCHEMA,
        "kind": "verify",
        "seed": seed,
        "trials": args.trials,
        "dims": [list(d) for d in dims],
        "ok": ok,
        "suites": [r.to_dict() for r in results],
    }
    if args.report:
        Path(args.report).write_text(json.dumps(doc, indent=2) + "\n")
    _emit(doc)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="choilab", description=__doc__.split("\n")[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("convert", help="convert between map representations and duality variants")
    c.add_argument("input")
    c.add_argument("--from", dest="source", help="expected source repr/variant of the input")
    c.add_argument("--to", required=True, choices=list(MAP_REPRS) + [v.value for v in Variant])
    c.add_argument("-o", "--out", help="output path (default stdout)")
    c.set_defaults(func=cmd_convert)

    k = sub.add_parser("check", help="evaluate a predicate on a map or state file")
    k.add_argument("input")
    k.add_argument("predicate", choices=PREDICATES)
    k.add_argument("--tol", type=float)
    k.add_argument("--restarts", type=int, default=24)
    k.add_argument("--max-iters", type=int, default=200)
    k.add_argument("--eps", type=float, default=1e-11)
    k.add_argument("--tol-popt", type=float, default=1e-8)
    k.add_argument("--seed", type=int)
    k.set_defaults(func=cmd_check)

    g = sub.add_parser("generate", help="write a random map of a given class")
    g.add_argument("cls", metavar="class", choices=["arbitrary", "herm-preserving", "cp", "co-cp", "decomposable", "tp-cp"])
    g.add_argument("d_a", type=int)
    g.add_argument("d_b", type=int)
    g.add_argument("seed", type=int, nargs="?")
    g.add_argument("--rank", type=int)
    g.add_argument("-o", "--out")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="run theorem suites")
    v.add_argument("suites", nargs="*", help="suite ids or 'all'")
    v.add_argument("--dims", type=_parse_dims, action="append")
    v.add_argument("--trials", type=int, default=50)
    v.add_argument("--seed", type=int)
    v.add_argument("--restarts", type=int, default=24)
    v.add_argument("--report")
    v.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except _Fails as exc:
        print(f"choilab: {exc}", file=sys.stderr)
        return 1
    except ChoilabError as exc:
        print(f"choilab: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, TypeError) as exc:
        print(f"choilab: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
