"""JSON input/output with exact rationals.

Rationals are written as canonical strings: ``"3/2"``, ``"-1"``.  On input,
strings, integers and ``{"maslov": ..., "h1": [...]}`` objects or
``"(m;a,b,c)"`` strings for grading elements are accepted.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import ParseError
from .grgroup import GradingElement, RelativeGrading, fmt
from .linalg import as_fraction
from .pmc import PointedMatchedCircle

_ELEMENT = re.compile(r"^\s*\(\s*([^;()]+)\s*;\s*([^()]*)\)\s*$")


def parse_rational(value: Any, where: str = "value") -> Fraction:
    if isinstance(value, float):
        raise ParseError(f"{where}: floats are not accepted, write {value!r} as a string like \"p/q\"")
    try:
        return as_fraction(value.strip() if isinstance(value, str) else value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where}: {value!r} is not a rational number") from exc


def parse_element(value: Any, pmc: PointedMatchedCircle, where: str = "grading") -> GradingElement:
    if isinstance(value, str):
        match = _ELEMENT.match(value)
        if not match:
            raise ParseError(f"{where}: {value!r} is not of the form (m;a1,...,an)")
        maslov = match.group(1)
        h1 = [c for c in match.group(2).split(",") if c.strip()]
    elif isinstance(value, dict):
        try:
            maslov, h1 = value["maslov"], value["h1"]
        except KeyError as exc:
            raise ParseError(f"{where}: missing field {exc.args[0]!r}") from exc
        if not isinstance(h1, list):
            raise ParseError(f"{where}.h1: expected a list")
    else:
        raise ParseError(f"{where}: expected an object or a string, got {type(value).__name__}")
    coeffs = tuple(parse_rational(c, f"{where}.h1[{i}]") for i, c in enumerate(h1))
    return GradingElement(parse_rational(maslov, f"{where}.maslov"), coeffs, pmc)


def element_to_json(g: GradingElement) -> dict:
    return {"maslov": fmt(g.maslov), "h1": [fmt(c) for c in g.h1]}


def relative_to_json(r: RelativeGrading) -> dict:
    return {"kind": r.kind, "q": None if r.q is None else fmt(r.q)}


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc


def _default(obj):
    if isinstance(obj, Fraction):
        return fmt(obj)
    if isinstance(obj, GradingElement):
        return str(obj)
    if isinstance(obj, RelativeGrading):
        return relative_to_json(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2, default=_default)
