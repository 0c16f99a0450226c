"""JSON file formats for maps, states and reports.

Complex matrices are nested row-major lists of ``[re, im]`` pairs so that
finite doubles round-trip exactly through ``json``.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .duality import DualityState, Variant
from .errors import DimensionError, SchemaError, VariantError
from .jordan import Orientation
from .linalg import BipartiteIndex
from .maps import AnyMap, QuantumMap, as_map, map_from_kraus

MAP_SCHEMA = "choilab/map/v1"
STATE_SCHEMA = "choilab/state/v1"
REPORT_SCHEMA = "choilab/report/v1"


def encode_matrix(m) -> list:
    m = np.asarray(m, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def decode_matrix(data, name: str = "matrix") -> np.ndarray:
    try:
        arr = np.array(data, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{name}: not a rectangular array of [re, im] pairs ({exc})") from None
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise SchemaError(f"{name}: expected rows of [re, im] pairs, got array of shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise SchemaError(f"{name}: non-finite entries")
    # assign parts separately: re + 1j*im would not preserve signed zeros
    out = np.empty(arr.shape[:2], dtype=np.complex128)
    out.real = arr[..., 0]
    out.imag = arr[..., 1]
    return out


def map_to_dict(phi: AnyMap, repr: str | None = None) -> dict:
    phi_m = as_map(phi)
    if repr is None:
        repr = "kraus" if phi_m.kraus is not None else "transfer"
    if repr == "kraus":
        if phi_m.kraus is None:
            raise SchemaError("map carries no Kraus data")
        data = [encode_matrix(k) for k in phi_m.kraus]
    elif repr == "transfer":
        data = encode_matrix(phi_m.transfer)
    else:
        raise SchemaError(f"unknown map repr {repr!r}")
    return {
        "schema": MAP_SCHEMA,
        "d_a": phi_m.d_a,
        "d_b": phi_m.d_b,
        "repr": repr,
        "data": data,
        "orientation_a": phi_m.orientation_a.value,
        "orientation_b": phi_m.orientation_b.value,
    }


def _int_field(doc: dict, key: str) -> int:
    v = doc.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise SchemaError(f"field {key!r} must be an integer")
    if v < 1:
        raise DimensionError(f"field {key!r} must be >= 1, got {v}")
    return v


def _orientation(doc: dict, key: str) -> Orientation:
    try:
        return Orientation(doc.get(key, "forward"))
    except ValueError:
        raise SchemaError(f"field {key!r} must be 'forward' or 'reverse'") from None


def map_from_dict(doc: dict) -> QuantumMap:
    if doc.get("schema") != MAP_SCHEMA:
        raise SchemaError(f"expected schema {MAP_SCHEMA!r}, got {doc.get('schema')!r}")
    d_a, d_b = _int_field(doc, "d_a"), _int_field(doc, "d_b")
    oa, ob = _orientation(doc, "orientation_a"), _orientation(doc, "orientation_b")
    repr = doc.get("repr")
    if repr == "kraus":
        if not isinstance(doc.get("data"), list) or not doc["data"]:
            raise SchemaError("kraus data must be a non-empty list of matrices")
        ks = [decode_matrix(k, f"data[{n}]") for n, k in enumerate(doc["data"])]
        for k in ks:
            if k.shape != (d_b, d_a):
                raise DimensionError(f"Kraus operator shape {k.shape} != ({d_b}, {d_a})")
        phi = map_from_kraus(ks)
        return QuantumMap(d_a, d_b, phi.transfer, phi.kraus, oa, ob)
    if repr == "transfer":
        t = decode_matrix(doc.get("data"), "data")
        if t.shape != (d_b**2, d_a**2):
            raise DimensionError(f"transfer shape {t.shape} != ({d_b**2}, {d_a**2})")
        return QuantumMap(d_a, d_b, t, None, oa, ob)
    raise SchemaError(f"field 'repr' must be 'kraus' or 'transfer', got {repr!r}")


def state_to_dict(rho: DualityState) -> dict:
    return {
        "schema": STATE_SCHEMA,
        "d_a": rho.d_a,
        "d_b": rho.d_b,
        "variant": rho.variant.value,
        "dual_a": rho.dual_a,
        "dual_b": rho.dual_b,
        "matrix": encode_matrix(rho.matrix),
    }


def state_from_dict(doc: dict) -> DualityState:
    if doc.get("schema") != STATE_SCHEMA:
        raise SchemaError(f"expected schema {STATE_SCHEMA!r}, got {doc.get('schema')!r}")
    d_a, d_b = _int_field(doc, "d_a"), _int_field(doc, "d_b")
    variant = Variant.parse(doc.get("variant"))
    da, db = doc.get("dual_a", False), doc.get("dual_b", False)
    if not isinstance(da, bool) or not isinstance(db, bool):
        raise SchemaError("dual_a and dual_b must be booleans")
    m = decode_matrix(doc.get("matrix"), "matrix")
    if m.shape != (d_a * d_b, d_a * d_b):
        raise DimensionError(f"matrix shape {m.shape} != ({d_a * d_b}, {d_a * d_b})")
    try:
        return DualityState(m, BipartiteIndex(d_a, d_b), variant, da, db)
    except VariantError:
        raise


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=None, separators=(",", ":"), allow_nan=False) + "\n"


def load(path) -> AnyMap | DualityState:
    """Read a map or state file, dispatching on its schema string."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from None
    return loads(text)


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaError("top-level JSON value must be an object")
    schema = doc.get("schema")
    if schema == MAP_SCHEMA:
        return map_from_dict(doc)
    if schema == STATE_SCHEMA:
        return state_from_dict(doc)
    raise SchemaError(f"unknown schema {schema!r}")


def to_dict(obj) -> dict:
    if isinstance(obj, DualityState):
        return state_to_dict(obj)
    return map_to_dict(obj)


def save(obj, path) -> None:
    Path(path).write_text(dumps(to_dict(obj)))
