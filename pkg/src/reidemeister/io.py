"""JSON formats for groups, automorphisms, matrices and character tables."""
from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

from .corpus import CORPUS, corpus_group
from .errors import InputError
from .group import Automorphism, FiniteGroup, automorphism_from_generator_images, build_from_permutations, build_from_table
from .lattice import IntMatrix

INT64_MAX = 2**63 - 1


def _load_json(source) -> Any:
    if isinstance(source, (dict, list)):
        return source
    text = str(source)
    if text.lstrip().startswith(("{", "[")):
        raw = text
    else:
        try:
            raw = Path(text).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {text}: {exc.strerror}") from None
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {text[:60]}: {exc}") from None


def group_from_dict(data: dict) -> FiniteGroup:
    fmt = data.get("format", "table" if "table" in data else "permutations")
    name = data.get("name", "")
    if fmt == "table":
        if "table" not in data:
            raise InputError("table-format group needs a 'table' field")
        return build_from_table(data["table"], name=name)
    if fmt == "permutations":
        gens = data.get("generators")
        if gens is None:
            raise InputError("permutation-format group needs 'generators'")
        degree = data.get("degree")
        if degree is not None and any(len(g) != degree for g in gens):
            raise InputError(f"generator length differs from degree {degree}")
        if not gens:
            return build_from_permutations([list(range(degree or 1))], name=name)
        return build_from_permutations(gens, name=name)
    raise InputError(f"unknown group format {fmt!r}")


def group_to_dict(G: FiniteGroup) -> dict:
    return {"name": G.name, "format": "table", "table": G.table.tolist()}


def load_group(source) -> FiniteGroup:
    """A corpus name, a JSON file path, inline JSON text or a dict."""
    if isinstance(source, str) and source in CORPUS:
        return corpus_group(source)
    data = _load_json(source)
    if not isinstance(data, dict):
        raise InputError("group JSON must be an object")
    return group_from_dict(data)


def automorphism_from_dict(G: FiniteGroup, data: dict) -> Automorphism:
    if "images" in data:
        return Automorphism(G, data["images"])
    if "generator_images" in data:
        return automorphism_from_generator_images(G, data["generator_images"])
    raise InputError("automorphism JSON needs 'images' or 'generator_images'")


def load_automorphism(G: FiniteGroup, source) -> Automorphism:
    data = _load_json(source)
    if not isinstance(data, dict):
        raise InputError("automorphism JSON must be an object")
    return automorphism_from_dict(G, data)


def automorphism_to_dict(phi: Automorphism) -> dict:
    return {"images": phi.images.tolist()}


def _int(x) -> int:
    if isinstance(x, bool):
        raise InputError("matrix entries must be integers")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x)
        except ValueError:
            raise InputError(f"matrix entry {x!r} is not an integer") from None
    if isinstance(x, float) and x.is_integer():
        return int(x)
    raise InputError(f"matrix entry {x!r} is not an integer")


def matrix_from_dict(data) -> IntMatrix:
    if isinstance(data, list):
        data = {"entries": data}
    entries = data.get("entries")
    if entries is None:
        raise InputError("matrix JSON needs 'entries'")
    A = IntMatrix.of([[_int(x) for x in row] for row in entries])
    if "n" in data and data["n"] != A.n:
        raise InputError(f"declared n = {data['n']} but entries are {A.n}x{A.n}")
    return A


def load_matrix(source) -> IntMatrix:
    return matrix_from_dict(_load_json(source))


def encode_int(x):
    """Integers beyond 64 bits become decimal strings; infinity becomes ``"infinity"``."""
    if isinstance(x, float) and math.isinf(x):
        return "infinity"
    if isinstance(x, int) and not isinstance(x, bool) and abs(x) > INT64_MAX:
        return str(x)
    return x


def jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, IntMatrix):
        return {"n": obj.n, "entries": jsonable(obj.tolist())}
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        return jsonable(obj.item())
    return encode_int(obj)


def matrix_to_dict(A: IntMatrix) -> dict:
    return jsonable(A)
