"""JSON forms of algebras, metrised algebras and surfaces.

Algebra file::

    {"dim": n, "k": [[alpha, beta, delta, "p/q"], ...], "gamma": [[...], ...]}

Indices are 1-based with alpha <= beta; omitted triples are zero and
``gamma`` is optional. Surface file::

    {"mode": "hatC" | "nablaK" | "nablaC" | null, "algebra": <algebra file> | null,
     "F": {"nvars": n, "terms": [[[e1, ..., en], "p/q"], ...]}, "text": "..."}

Only ``F`` (or ``text``) is needed to read a surface back.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .algebra import Algebra
from .exactnum import Matrix, format_rational, parse_rational
from .metrised import MetrisedAlgebra
from .poly import parse_poly, poly_from_json, poly_to_json
from .surface import MODES, Surface


class InputError(ValueError):
    """Malformed input, with the offending field in the message."""


def _rational(value, where: str):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InputError(f"{where}: expected an integer or a \"p/q\" string, got {value!r}")
    try:
        return parse_rational(value) if isinstance(value, str) else value
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from None


def algebra_to_json(A: Algebra) -> dict:
    return {
        "dim": A.dim,
        "k": [[a, b, d, format_rational(c)] for (a, b, d), c in sorted(A.structure.items())],
    }


def metrised_to_json(M: MetrisedAlgebra) -> dict:
    out = algebra_to_json(M.algebra)
    out["gamma"] = [[format_rational(v) for v in row] for row in M.gamma]
    return out


def algebra_from_json(obj: Any) -> tuple[Algebra, Matrix | None]:
    if not isinstance(obj, dict):
        raise InputError("algebra: expected a JSON object")
    n = obj.get("dim")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError(f"dim: expected a positive integer, got {n!r}")
    raw = obj.get("k", [])
    if not isinstance(raw, list):
        raise InputError("k: expected a list of [alpha, beta, delta, value] entries")
    structure = {}
    for i, item in enumerate(raw):
        where = f"k[{i}]"
        if not isinstance(item, list) or len(item) != 4:
            raise InputError(f"{where}: expected [alpha, beta, delta, value]")
        a, b, d, c = item
        for name, idx in (("alpha", a), ("beta", b), ("delta", d)):
            if isinstance(idx, bool) or not isinstance(idx, int) or not 1 <= idx <= n:
                raise InputError(f"{where}.{name}: index {idx!r} outside 1..{n}")
        if a > b:
            raise InputError(f"{where}: alpha={a} > beta={b}; store each constant once with alpha <= beta")
        if (a, b, d) in structure:
            raise InputError(f"{where}: duplicate triple ({a}, {b}, {d})")
        structure[(a, b, d)] = _rational(c, f"{where}.value")
    gamma = None
    if obj.get("gamma") is not None:
        g = obj["gamma"]
        if not isinstance(g, list) or len(g) != n or any(not isinstance(r, list) or len(r) != n for r in g):
            raise InputError(f"gamma: expected a {n}x{n} array")
        gamma = Matrix([[_rational(v, f"gamma[{i}][{j}]") for j, v in enumerate(r)] for i, r in enumerate(g)])
    return Algebra(n, structure), gamma


def metrised_from_json(obj: Any) -> MetrisedAlgebra:
    A, gamma = algebra_from_json(obj)
    if gamma is None:
        raise InputError("gamma: required for a metrised algebra")
    try:
        return MetrisedAlgebra(A, gamma)
    except ValueError as exc:
        raise InputError(f"gamma: {exc}") from None


def surface_to_json(S: Surface) -> dict:
    return {
        "mode": S.mode,
        "algebra": metrised_to_json(S.source) if S.source is not None else None,
        "nvars": S.nvars,
        "F": poly_to_json(S.F),
        "text": str(S.F),
    }


def surface_from_json(obj: Any) -> Surface:
    if not isinstance(obj, dict):
        raise InputError("surface: expected a JSON object")
    mode = obj.get("mode")
    if mode is not None and mode not in MODES:
        raise InputError(f"mode: expected one of {', '.join(MODES)}, got {mode!r}")
    source = metrised_from_json(obj["algebra"]) if obj.get("algebra") is not None else None
    try:
        if obj.get("F") is not None:
            F = poly_from_json(obj["F"])
        elif obj.get("text") is not None:
            F = parse_poly(obj["text"], obj.get("nvars"))
        else:
            raise InputError("F: surface needs an 'F' term list or a 'text' polynomial")
    except InputError:
        raise
    except (ValueError, TypeError) as exc:
        raise InputError(f"F: {exc}") from None
    try:
        return Surface(F, source, mode)
    except ValueError as exc:
        raise InputError(f"F: {exc}") from None


def is_surface_json(obj: Any) -> bool:
    return isinstance(obj, dict) and ("F" in obj or "text" in obj)


def read_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)
