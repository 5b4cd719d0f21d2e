"""JSON group specs and catalog shorthand.

A spec is ``{"A": [...], "C": [...], "psi": {...}, "strict_center": false}`` with
``psi`` one of

    {"kind": "bilinear", "matrix": [[...]]}          M[i][j] (or M[i][j][k] when rank A > 1)
    {"kind": "table", "entries": [[...], ...]}       |C|^2 A-tuples, entry i1*|C| + i2 = psi(c_i1, c_i2)
    {"kind": "catalog", "name": "...", "params": {...} or [...]}

For catalog specs A and C may be omitted; if present they must agree with the
built group.  Shorthand strings name catalog groups directly:
``heisenberg:3``, ``extraspecial_exp_p:3,2``, ``abelian:[3,9]``, and products
joined with ``*``.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .abelian import FinAbGroup
from .cocycle import Cocycle, bilinear_table
from .errors import EvenPrime, IncompatibleModuli, InvalidCocycle, InvalidSpec
from .nilgroup import CATALOG_BUILDERS, Class2Group, abelian, direct_product, extraspecial_exp_p, heisenberg

FAST_VALIDATION_ABOVE = 300  # |C| beyond which the cocycle identity is sampled


def _int(x, path) -> int:
    if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
        raise InvalidSpec(path, f"expected an integer, got {x!r}")
    return int(x)


def _moduli(x, path) -> tuple[int, ...]:
    if not isinstance(x, list):
        raise InvalidSpec(path, f"expected a list of moduli, got {x!r}")
    out = []
    for i, m in enumerate(x):
        m = _int(m, f"{path}[{i}]")
        if m < 2:
            raise InvalidSpec(f"{path}[{i}]", f"modulus must be >= 2, got {m}")
        out.append(m)
    return tuple(out)


def _int_array(x, shape, path) -> np.ndarray:
    """Nested integer list of the given shape, with positioned errors."""
    if not shape:
        return np.array(_int(x, path), dtype=np.int64)
    if not isinstance(x, list) or len(x) != shape[0]:
        got = len(x) if isinstance(x, list) else type(x).__name__
        raise InvalidSpec(path, f"expected a list of length {shape[0]}, got {got}")
    return np.stack([_int_array(v, shape[1:], f"{path}[{i}]") for i, v in enumerate(x)]) if shape[0] else \
        np.zeros(shape, dtype=np.int64)


# ---------------------------------------------------------------------------
# shorthand
# ---------------------------------------------------------------------------


def _shorthand_factor(s: str) -> Class2Group:
    name, sep, args = s.strip().partition(":")
    if not sep:
        raise InvalidSpec(s, "expected name:params")
    try:
        if name == "abelian":
            moduli = json.loads(args)
            if not isinstance(moduli, list):
                raise InvalidSpec(s, "abelian params must be a list such as [3,9]")
            return abelian(_moduli(moduli, s))
        nums = [int(v) for v in args.split(",")]
        if name == "heisenberg" and len(nums) == 1:
            return heisenberg(*nums)
        if name == "extraspecial_exp_p" and len(nums) == 2:
            return extraspecial_exp_p(*nums)
    except EvenPrime:
        raise
    except (ValueError, json.JSONDecodeError) as err:
        if isinstance(err, InvalidSpec):
            raise
        raise InvalidSpec(s, str(err)) from None
    raise InvalidSpec(s, f"unknown catalog shorthand; known: {sorted(CATALOG_BUILDERS)}")


def parse_shorthand(s: str) -> Class2Group:
    """``heisenberg:3``, ``abelian:[3,9]``, ``heisenberg:3*abelian:[3]`` ..."""
    factors = [_shorthand_factor(f) for f in s.split("*")]
    B = factors[0]
    for F in factors[1:]:
        B = direct_product(B, F)
    return B


# ---------------------------------------------------------------------------
# JSON specs
# ---------------------------------------------------------------------------


def _catalog_group(psi: dict) -> Class2Group:
    name = psi.get("name")
    params = psi.get("params", {})
    if name not in CATALOG_BUILDERS:
        raise InvalidSpec("psi.name", f"unknown catalog group {name!r}; known: {sorted(CATALOG_BUILDERS)}")
    if name == "direct_product":
        factors = params.get("factors") if isinstance(params, dict) else params
        if not isinstance(factors, list) or not factors:
            raise InvalidSpec("psi.params.factors", "expected a non-empty list of factors")
        groups = []
        for i, f in enumerate(factors):
            try:
                groups.append(parse_shorthand(f) if isinstance(f, str) else spec_to_group(f))
            except InvalidSpec as err:
                raise InvalidSpec(f"psi.params.factors[{i}]", str(err)) from None
        B = groups[0]
        for F in groups[1:]:
            B = direct_product(B, F)
        return B
    keys = {"heisenberg": ["p"], "extraspecial_exp_p": ["p", "n"], "abelian": ["moduli"]}[name]
    if isinstance(params, dict):
        missing = [k for k in keys if k not in params]
        if missing:
            raise InvalidSpec(f"psi.params.{missing[0]}", "missing")
        args = [params[k] for k in keys]
    elif isinstance(params, list) and len(params) == len(keys):
        args = params
    else:
        raise InvalidSpec("psi.params", f"expected {keys}")
    if name == "abelian":
        args = [_moduli(args[0], "psi.params.moduli")]
    else:
        args = [_int(a, f"psi.params.{k}") for a, k in zip(args, keys)]
    try:
        return CATALOG_BUILDERS[name](*args)
    except EvenPrime:
        raise
    except ValueError as err:
        raise InvalidSpec("psi.params", str(err)) from None


def spec_to_group(spec: dict) -> Class2Group:
    """Build and validate the group described by a spec dict."""
    if not isinstance(spec, dict):
        raise InvalidSpec("", f"spec must be a JSON object, got {type(spec).__name__}")
    psi = spec.get("psi")
    if not isinstance(psi, dict):
        raise InvalidSpec("psi", "missing or not an object")
    kind = psi.get("kind")
    strict = spec.get("strict_center", False)
    if not isinstance(strict, bool):
        raise InvalidSpec("strict_center", "expected a boolean")

    if kind == "catalog":
        B = _catalog_group(psi)
        for key, G in (("A", B.A), ("C", B.C)):
            if key in spec and _moduli(spec[key], key) != G.moduli:
                raise InvalidSpec(key, f"{spec[key]} disagrees with catalog group's {list(G.moduli)}")
        if strict:
            B = Class2Group(B.A, B.C, B.raw_psi, strict_center=True, name=B.name)
        return B

    for key in ("A", "C"):
        if key not in spec:
            raise InvalidSpec(key, "missing")
    A, C = FinAbGroup(_moduli(spec["A"], "A")), FinAbGroup(_moduli(spec["C"], "C"))
    if kind == "bilinear":
        shape = (C.rank, C.rank) if A.rank == 1 else (C.rank, C.rank, A.rank)
        M = _int_array(psi.get("matrix"), shape, "psi.matrix")
        try:
            table = bilinear_table(C, A, M)
        except IncompatibleModuli as err:
            raise InvalidSpec("psi.matrix", str(err)) from None
        cocycle = Cocycle(C, A, table, check=False)
    elif kind == "table":
        entries = _int_array(psi.get("entries"), (C.order * C.order, A.rank), "psi.entries")
        try:
            cocycle = Cocycle(C, A, entries.reshape(C.order, C.order, A.rank),
                              fast=C.order > FAST_VALIDATION_ABOVE)
        except InvalidCocycle as err:
            raise InvalidSpec("psi.entries", str(err)) from None
    else:
        raise InvalidSpec("psi.kind", f"expected 'bilinear', 'table' or 'catalog', got {kind!r}")
    return Class2Group(A, C, cocycle, strict_center=strict, name=spec.get("name"))


def load_spec(source) -> Class2Group:
    """Group from a JSON file path, a JSON string, or a catalog shorthand."""
    text = str(source)
    if not text.lstrip().startswith("{"):
        path = Path(text)
        if path.suffix != ".json" and not path.is_file():
            return parse_shorthand(text)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as err:
            raise InvalidSpec("", f"cannot read {path}: {err.strerror}") from None
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as err:
        raise InvalidSpec("", f"invalid JSON: {err}") from None
    return spec_to_group(spec)


def to_spec(B: Class2Group) -> dict:
    """Table-kind spec of B's raw cocycle; re-ingesting gives the same multiplication."""
    spec = {
        "A": list(B.A.moduli),
        "C": list(B.C.moduli),
        "psi": {"kind": "table", "entries": B.raw_psi.table.reshape(-1, B.A.rank).tolist()},
        "strict_center": bool(B.strict_center),
    }
    if B.name:
        spec["name"] = B.name
    return spec
