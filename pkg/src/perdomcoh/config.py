"""JSON scenario configuration: parsing into a PeriodDatum and canonical emission.

Rationals are written as integers or ``"p/q"`` strings.  A minimal config::

    {"schema": "perdomcoh.config/1",
     "group": {"type": "GL", "n": 3},
     "mu": [2, -1, -1],
     "inner_form": "split"}
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Any

from . import linalg as la
from .datum import (
    CocharacterClass,
    DatumError,
    GaloisAction,
    InnerFormDatum,
    PeriodDatum,
    SlopeDatum,
    builtin_J_gl_basic,
    builtin_J_quasi_split,
    builtin_J_split,
    permutation_matrix,
)
from .roots import (
    DEFAULT_CAP,
    AmbientSpace,
    RootDatum,
    RootDatumError,
    build_root_datum,
    dual_basis_coweights,
    product_datum,
)

SCHEMA = "perdomcoh.config/1"
FORMATS = ("text", "json", "csv")
DEFAULT_OPTIONS = {"checks": False, "pages": False, "euler": False, "format": "text", "cap": DEFAULT_CAP}


class ConfigError(ValueError):
    """Unreadable or inconsistent scenario configuration."""


def _fail(path: str, msg: str):
    raise ConfigError(f"{path}: {msg}")


def _get(obj: dict, key: str, path: str, required: bool = True, default: Any = None):
    if not isinstance(obj, dict):
        _fail(path, "expected an object")
    if key not in obj:
        if required:
            _fail(f"{path}.{key}", "missing")
        return default
    return obj[key]


def _int(x, path: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        _fail(path, f"expected an integer, got {x!r}")
    return x


def _vector(x, path: str, n: int | None = None) -> la.Vector:
    if not isinstance(x, list):
        _fail(path, "expected a list")
    try:
        v = la.vec(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        _fail(path, str(exc))
    if n is not None and len(v) != n:
        _fail(path, f"expected {n} entries, got {len(v)}")
    return v


def _matrix(x, path: str, n: int | None = None) -> la.Matrix:
    if not isinstance(x, list):
        _fail(path, "expected a list of rows")
    return tuple(_vector(r, f"{path}[{i}]", n) for i, r in enumerate(x))


def _root_datum(node, path: str) -> RootDatum:
    kind = str(_get(node, "type", path))
    try:
        if kind.lower() == "product":
            factors = _get(node, "factors", path)
            if not isinstance(factors, list) or not factors:
                _fail(f"{path}.factors", "expected a non-empty list")
            return product_datum(*(_root_datum(f, f"{path}.factors[{i}]") for i, f in enumerate(factors)))
        if kind.lower() == "explicit":
            gram = _matrix(_get(node, "inner_product", path), f"{path}.inner_product")
            n = len(gram)
            labels = tuple(_get(node, "labels", path, False, ()) or ())
            ambient = AmbientSpace(n, gram, labels)
            roots = _matrix(_get(node, "simple_roots", path), f"{path}.simple_roots", n)
            coroots = _matrix(_get(node, "simple_coroots", path), f"{path}.simple_coroots", n)
            return RootDatum(ambient, roots, coroots, str(node.get("tag", "explicit")))
        size = node.get("n", node.get("rank"))
        return build_root_datum(kind, None if size is None else _int(size, f"{path}.n"))
    except RootDatumError as exc:
        _fail(path, str(exc))


def _galois_matrix(node, path: str, n: int) -> la.Matrix:
    if "permutation" in node:
        perm = node["permutation"]
        if not isinstance(perm, list) or len(perm) != n:
            _fail(f"{path}.permutation", f"expected a permutation of {n} coordinates")
        try:
            return permutation_matrix([_int(p, f"{path}.permutation") for p in perm])
        except DatumError as exc:
            _fail(f"{path}.permutation", str(exc))
    if "matrix" in node:
        return _matrix(node["matrix"], f"{path}.matrix", n)
    _fail(path, "expected 'permutation' or 'matrix'")


def _galois(node, path: str, n: int) -> GaloisAction:
    if node is None:
        return GaloisAction.trivial(n)
    gen = _galois_matrix(node, path, n)
    order = _int(_get(node, "order", path), f"{path}.order")
    averaging = tuple(
        _galois_matrix(a, f"{path}.averaging[{i}]", n)
        for i, a in enumerate(node.get("averaging", []) or [])
    )
    try:
        return GaloisAction(gen, order, averaging)
    except DatumError as exc:
        _fail(path, str(exc))


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    raw: dict
    datum: PeriodDatum
    options: dict

    def canonical_json(self) -> str:
        return dump_json(self.raw)

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.canonical_json().encode("utf-8")).hexdigest()

    def with_options(self, **overrides) -> "ScenarioConfig":
        opts = dict(self.options)
        opts.update({k: v for k, v in overrides.items() if v is not None})
        return ScenarioConfig(self.name, self.raw, self.datum, opts)


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def parse_config(source: str | dict, name: str | None = None) -> ScenarioConfig:
    """Parse JSON text (or an already-decoded dict) into a ScenarioConfig."""
    if isinstance(source, str):
        try:
            raw = json.loads(source)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    else:
        raw = source
    if not isinstance(raw, dict):
        _fail("$", "expected a JSON object")
    schema = raw.get("schema", SCHEMA)
    if schema != SCHEMA:
        _fail("$.schema", f"unsupported schema {schema!r}")

    group = _get(raw, "group", "$")
    rd = _root_datum(group, "$.group")
    n = rd.ambient.dimension
    galois = _galois(group.get("galois"), "$.group.galois", n)
    mu = _vector(_get(raw, "mu", "$"), "$.mu", n)

    slope_node = raw.get("slope")
    inner_node = raw.get("inner_form", "split")
    gl_basic = None

    def gl_basic_for(k, path):
        if not rd.type_tag.startswith("GL") or "x" in rd.type_tag:
            _fail(path, "gl_basic needs a GL_n group")
        return builtin_J_gl_basic(n, _int(k, f"{path}.k"))

    if slope_node is None:
        slope = SlopeDatum(la.zero(n), 1)
    elif isinstance(slope_node, dict) and slope_node.get("builtin") == "gl_basic":
        gl_basic = gl_basic_for(_get(slope_node, "k", "$.slope"), "$.slope")
        slope = gl_basic[0]
    else:
        nu = _vector(_get(slope_node, "nu", "$.slope"), "$.slope.nu", n)
        slope = SlopeDatum(nu, _int(_get(slope_node, "s", "$.slope", False, 1), "$.slope.s"))

    try:
        if inner_node == "split":
            if not galois.is_trivial:
                _fail("$.inner_form", "split inner form needs a trivial Galois action; use quasi_split")
            inner = builtin_J_split(rd)
        elif inner_node == "quasi_split":
            inner = builtin_J_quasi_split(rd, galois)
        elif inner_node == "gl_basic" or (isinstance(inner_node, dict) and inner_node.get("builtin") == "gl_basic"):
            if isinstance(inner_node, dict):
                inner = gl_basic_for(_get(inner_node, "k", "$.inner_form"), "$.inner_form")[1]
            elif gl_basic is not None:
                inner = gl_basic[1]
            else:
                _fail("$.inner_form", "gl_basic without k needs slope.builtin = gl_basic")
        elif isinstance(inner_node, dict):
            inner = _explicit_inner(inner_node, rd, n)
        else:
            _fail("$.inner_form", f"unknown inner form {inner_node!r}")
        datum = PeriodDatum(rd, galois, CocharacterClass(mu), slope, inner)
    except (DatumError, RootDatumError) as exc:
        _fail("$", str(exc))

    options = dict(DEFAULT_OPTIONS)
    user = raw.get("options", {}) or {}
    if not isinstance(user, dict):
        _fail("$.options", "expected an object")
    unknown = set(user) - set(DEFAULT_OPTIONS)
    if unknown:
        _fail("$.options", f"unknown keys {sorted(unknown)}")
    options.update(user)
    if options["format"] not in FORMATS:
        _fail("$.options.format", f"expected one of {FORMATS}")
    _int(options["cap"], "$.options.cap")
    return ScenarioConfig(name or str(raw.get("name", "custom")), raw, datum, options)


def _explicit_inner(node: dict, rd: RootDatum, n: int) -> InnerFormDatum:
    path = "$.inner_form"
    labels = _get(node, "delta", path)
    if not isinstance(labels, list):
        _fail(f"{path}.delta", "expected a list of labels")
    roots = _matrix(_get(node, "relative_roots", path), f"{path}.relative_roots", n)
    if len(roots) != len(labels):
        _fail(f"{path}.relative_roots", "need one relative root per label")
    if "omegas" in node:
        omega = _matrix(node["omegas"], f"{path}.omegas", n)
    else:
        try:
            omega = dual_basis_coweights(roots, rd.ambient)
        except RootDatumError as exc:
            _fail(f"{path}.relative_roots", str(exc))
    rank = _int(_get(node, "center_rank", path), f"{path}.center_rank")
    return InnerFormDatum(tuple(str(x) for x in labels), roots, omega, rank)


def load_config(path: str) -> ScenarioConfig:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_config(text)
