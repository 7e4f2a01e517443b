"""JSON universe files.

::

    {
      "dimension": 2,
      "projections": {"P": {"span": [["1", "0"]]}, "Q": {"span": [["1", "1"]]}},
      "qsets": {"u": [["check:0", "P"]], "v": [["check:0", "Q"]]},
      "formulas": {"ex": "E x in u . !!(x in v)"}
    }

A projection is ``{"span": [...]}`` with rationals written as ``"p/q"``
strings, ``"full"`` for 1, or an empty span for 0. A quantum-set entry is
``[key, value]``: the key is an earlier quantum set name or ``check:n``, the
value a projection name, ``"full"`` or ``"zero"``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from . import linalg, logic
from .evaluate import Environment
from .logic import MAX_DIM, Projection
from .universe import QSet, check_ordinal, make_qset


class UniverseError(ValueError):
    pass


def projection_to_json(p: Projection) -> Any:
    if p.is_one:
        return "full"
    return {"span": [[linalg.format_rational(x) for x in row] for row in p.basis]}


def projection_from_json(spec: Any, dim: int) -> Projection:
    if spec == "full":
        return logic.one(dim)
    if spec == "zero":
        return logic.zero(dim)
    if not isinstance(spec, dict) or set(spec) != {"span"} or not isinstance(spec["span"], list):
        raise UniverseError(f"bad projection spec {spec!r}")
    rows = []
    for row in spec["span"]:
        if not isinstance(row, list) or len(row) != dim:
            raise UniverseError(f"span vector {row!r} does not have length {dim}")
        try:
            rows.append([linalg.parse_rational(x) for x in row])
        except ValueError as exc:
            raise UniverseError(str(exc)) from exc
    return logic.span(rows, dim)


def load_universe(data: dict) -> Environment:
    """Build an :class:`Environment` from a parsed universe document."""
    if not isinstance(data, dict):
        raise UniverseError("universe must be an object")
    unknown = set(data) - {"dimension", "projections", "qsets", "formulas"}
    if unknown:
        raise UniverseError(f"unknown keys {sorted(unknown)}")
    dim = data.get("dimension")
    if not isinstance(dim, int) or isinstance(dim, bool) or not 1 <= dim <= MAX_DIM:
        raise UniverseError(f"dimension must be an integer in 1..{MAX_DIM}")
    projections: dict[str, Projection] = {}
    for name, spec in (data.get("projections") or {}).items():
        if name in ("full", "zero"):
            raise UniverseError(f"projection name {name!r} is reserved")
        projections[name] = projection_from_json(spec, dim)

    def value(ref: Any) -> Projection:
        if ref == "full":
            return logic.one(dim)
        if ref == "zero":
            return logic.zero(dim)
        if isinstance(ref, str) and ref in projections:
            return projections[ref]
        raise UniverseError(f"unknown projection {ref!r}")

    qsets: dict[str, QSet] = {}
    env = Environment(dim, projections, qsets)
    for name, entries in (data.get("qsets") or {}).items():
        if name in projections:
            raise UniverseError(f"name {name!r} used for both a projection and a quantum set")
        if name.startswith("check:"):
            raise UniverseError(f"quantum set name {name!r} is reserved")
        if not isinstance(entries, list):
            raise UniverseError(f"entries of {name!r} must be a list")
        pairs = []
        for entry in entries:
            if not isinstance(entry, list) or len(entry) != 2:
                raise UniverseError(f"bad entry {entry!r} in {name!r}")
            key, ref = entry
            if not isinstance(key, str) or not env.has(key):
                raise UniverseError(f"unknown quantum set {key!r} in {name!r}")
            pairs.append((env.lookup(key), value(ref)))
        try:
            qsets[name] = make_qset(pairs, dim)
        except ValueError as exc:
            raise UniverseError(f"{name}: {exc}") from exc
    formulas = data.get("formulas") or {}
    if not all(isinstance(k, str) and isinstance(v, str) for k, v in formulas.items()):
        raise UniverseError("formulas must map names to strings")
    env.formulas = dict(formulas)
    return env


def read_universe(path: str | Path) -> Environment:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UniverseError(f"cannot read universe {path}: {exc}") from exc
    return load_universe(data)


def dump_universe(env: Environment) -> dict:
    """Serialize an environment; unnamed intermediate nodes get ``_n`` names."""
    proj_names: dict[Projection, str] = {}
    projections: dict[str, Any] = {}
    for name, p in env.projections.items():
        projections[name] = projection_to_json(p)
        proj_names.setdefault(p, name)

    def value_ref(p: Projection) -> str:
        if p.is_one:
            return "full"
        if p.is_zero:
            return "zero"
        if p not in proj_names:
            name = f"_p{len(proj_names)}"
            while name in projections:
                name += "_"
            proj_names[p] = name
            projections[name] = projection_to_json(p)
        return proj_names[p]

    checks = {check_ordinal(n, env.dim): f"check:{n}" for n in range(5)}
    set_names: dict[QSet, str] = dict(checks)
    qsets: dict[str, Any] = {}
    taken = set(env.qsets)

    def emit(u: QSet, name: str | None = None) -> str:
        if u in set_names and name is None:
            return set_names[u]
        entries = [[emit(k), value_ref(v)] for k, v in u.entries]
        if name is None:
            name = f"_q{u.id}"
            while name in taken:
                name += "_"
            taken.add(name)
        qsets[name] = entries
        set_names.setdefault(u, name)
        return name

    for name, u in env.qsets.items():
        emit(u, name)
    out: dict[str, Any] = {"dimension": env.dim, "projections": projections, "qsets": qsets}
    if env.formulas:
        out["formulas"] = dict(env.formulas)
    return out


def write_universe(env: Environment, path: str | Path) -> None:
    Path(path).write_text(json.dumps(dump_universe(env), indent=2) + "\n")


def qset_to_json(u: QSet, env: Environment | None = None, name: str = "it") -> dict:
    """A standalone document describing ``u`` under ``name``."""
    base = env if env is not None else Environment(u.dim)
    return dump_universe(Environment(base.dim, dict(base.projections), {name: u}))
