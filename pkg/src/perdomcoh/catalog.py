"""Named regression scenarios and their expected-output fixtures.

Parametrised families are addressed as ``drinfeld(3)`` (or ``drinfeld:3``);
fixed scenarios and the custom examples shipped under ``data/scenarios`` by
their bare name.
"""

from __future__ import annotations

import json
import re
from importlib import resources

from .config import SCHEMA, ScenarioConfig, parse_config

FAMILIES = ("drinfeld(n)", "lubin_tate(n)", "gl_n_basic(n,k)")
FIXED = ("weil_restriction_gl2", "gsp4_siegel")

# instances that ship a fixture and are covered by selftest
REGRESSION_SET = (
    "drinfeld(2)", "drinfeld(3)", "drinfeld(4)", "drinfeld(5)",
    "lubin_tate(2)", "lubin_tate(3)", "lubin_tate(4)", "lubin_tate(5)",
    "gl_n_basic(4,2)", "gl_n_basic(3,2)",
    "weil_restriction_gl2", "gsp4_siegel",
    "a1_cubed_cyclic", "g2_split", "gl4_split_mixed", "gsp4_split",
)


class CatalogError(KeyError):
    """Unknown or malformed scenario name."""

    def __str__(self) -> str:
        return str(self.args[0])


def _gl(n: int) -> dict:
    return {"type": "GL", "n": n}


def drinfeld(n: int) -> dict:
    # b = 1 forces mu to be central-free; (n-1, -1, ..., -1) is the projective-space cocharacter
    return {
        "schema": SCHEMA,
        "name": f"drinfeld({n})",
        "group": _gl(n),
        "mu": [n - 1] + [-1] * (n - 1),
        "slope": {"nu": [0] * n, "s": 1},
        "inner_form": "split",
    }


def lubin_tate(n: int) -> dict:
    return {
        "schema": SCHEMA,
        "name": f"lubin_tate({n})",
        "group": _gl(n),
        "mu": [1] + [0] * (n - 1),
        "slope": {"builtin": "gl_basic", "k": 1},
        "inner_form": "gl_basic",
    }


def gl_n_basic(n: int, k: int) -> dict:
    if not 0 <= k <= n:
        raise CatalogError(f"gl_n_basic needs 0 <= k <= n, got n={n}, k={k}")
    return {
        "schema": SCHEMA,
        "name": f"gl_n_basic({n},{k})",
        "group": _gl(n),
        "mu": [1] * k + [0] * (n - k),
        "slope": {"builtin": "gl_basic", "k": k},
        "inner_form": "gl_basic",
    }


def weil_restriction_gl2() -> dict:
    # Res GL2 over the unramified quadratic extension; b basic of slope 1/2 in each factor
    return {
        "schema": SCHEMA,
        "name": "weil_restriction_gl2",
        "group": {
            "type": "product",
            "factors": [_gl(2), _gl(2)],
            "galois": {"permutation": [2, 3, 0, 1], "order": 2},
        },
        "mu": [1, 0, 1, 0],
        "slope": {"nu": ["1/2", "1/2", "1/2", "1/2"], "s": 2},
        "inner_form": "quasi_split",
    }


def gsp4_siegel() -> dict:
    # Siegel cocharacter; b basic with nu = half the similitude, J of relative rank one
    return {
        "schema": SCHEMA,
        "name": "gsp4_siegel",
        "group": {"type": "GSp4"},
        "mu": [1, 1, 1],
        "slope": {"nu": ["1/2", "1/2", 1], "s": 2},
        "inner_form": {
            "delta": ["a2"],
            "relative_roots": [[1, 1, -1]],
            "omegas": [["1/2", "1/2", 0]],
            "center_rank": 1,
        },
    }


_BUILDERS = {
    "drinfeld": (drinfeld, 1),
    "lubin_tate": (lubin_tate, 1),
    "gl_n_basic": (gl_n_basic, 2),
    "weil_restriction_gl2": (weil_restriction_gl2, 0),
    "gsp4_siegel": (gsp4_siegel, 0),
}

_NAME = re.compile(r"^\s*([A-Za-z_][\w]*)\s*(?:\((.*)\)|:(.*))?\s*$")


def _data_dir(kind: str):
    return resources.files("perdomcoh").joinpath("data", kind)


def custom_names() -> list[str]:
    return sorted(p.name[:-5] for p in _data_dir("scenarios").iterdir() if p.name.endswith(".json"))


def list_names() -> list[str]:
    return [*FAMILIES, *FIXED, *custom_names()]


def parse_name(name: str) -> tuple[str, tuple[int, ...]]:
    m = _NAME.match(name)
    if not m:
        raise CatalogError(f"malformed scenario name {name!r}")
    base, args = m.group(1), m.group(2) if m.group(2) is not None else m.group(3)
    if not args:
        return base, ()
    try:
        return base, tuple(int(a) for a in args.split(","))
    except ValueError:
        raise CatalogError(f"scenario arguments must be integers: {name!r}") from None


def canonical_name(name: str) -> str:
    base, args = parse_name(name)
    return f"{base}({','.join(map(str, args))})" if args else base


def catalog_raw(name: str) -> dict:
    base, args = parse_name(name)
    if base in _BUILDERS:
        builder, arity = _BUILDERS[base]
        if len(args) != arity:
            raise CatalogError(f"{base} takes {arity} integer argument(s), got {len(args)}")
        if arity and args[0] < 1:
            raise CatalogError(f"{base} needs n >= 1")
        return builder(*args)
    if base in custom_names() and not args:
        return json.loads(_data_dir("scenarios").joinpath(base + ".json").read_text("utf-8"))
    raise CatalogError(f"unknown scenario {name!r}; known: {', '.join(list_names())}")


def catalog(name: str) -> ScenarioConfig:
    raw = catalog_raw(name)
    return parse_config(raw, canonical_name(name))


def fixture_slug(name: str) -> str:
    base, args = parse_name(name)
    return "_".join([base, *map(str, args)])


def fixture_text(name: str) -> str | None:
    path = _data_dir("fixtures").joinpath(fixture_slug(name) + ".json")
    return path.read_text("utf-8") if path.is_file() else None
