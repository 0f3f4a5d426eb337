"""Reading and writing elements as JSON.

See ``docs/element-file.md`` for the format.
"""

from __future__ import annotations

import json

import numpy as np

from .errors import UsageError
from .jordan import AlgebraDescriptor, Element, Matrix, RealLine, Spin

SCHEMA = "ejalab-element/1"


def _numbers(value, length, where):
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        value = [value]
    if not isinstance(value, list) or not all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in value):
        raise UsageError(f"{where}: expected a number or a list of numbers")
    if len(value) > length:
        raise UsageError(f"{where}: expected at most {length} coordinates, got {len(value)}")
    out = np.zeros(length)
    out[:len(value)] = value
    return out


def _component(factor, value, where):
    if isinstance(factor, RealLine):
        return _numbers(value, 1, where)
    if isinstance(factor, Spin):
        if not isinstance(value, list) or len(value) != factor.n + 1:
            raise UsageError(f"{where}: {factor.text()} needs a list of {factor.n + 1} numbers")
        return _numbers(value, factor.n + 1, where)
    k, arity = factor.k, factor.arity
    if not isinstance(value, list) or len(value) != k or not all(
            isinstance(row, list) and len(row) == k for row in value):
        raise UsageError(f"{where}: {factor.text()} needs a {k} x {k} nested list")
    out = np.zeros((k, k, arity))
    for i in range(k):
        for j in range(k):
            out[i, j] = _numbers(value[i][j], arity, f"{where}[{i}][{j}]")
    return out


def element_from_json(algebra: AlgebraDescriptor, doc) -> Element:
    """Build an element of ``algebra`` from a decoded element document."""
    if isinstance(doc, list):
        doc = {"factors": doc}
    if not isinstance(doc, dict) or "factors" not in doc:
        raise UsageError("element file must be an object with a 'factors' list")
    schema = doc.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise UsageError(f"unsupported element schema {schema!r}")
    if "algebra" in doc:
        from .spec_text import parse_spec
        declared = parse_spec(doc["algebra"])
        if declared != algebra:
            raise UsageError(
                f"element file is for {declared.text()}, not {algebra.text()}")
    factors = doc["factors"]
    if not isinstance(factors, list) or len(factors) != len(algebra.factors):
        raise UsageError(f"expected {len(algebra.factors)} factor entries")
    parts = [_component(f, v, f"factors[{i}]")
             for i, (f, v) in enumerate(zip(algebra.factors, factors))]
    return Element(algebra, parts)


def load_element(algebra: AlgebraDescriptor, path: str) -> Element:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read element file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"element file is not valid JSON: {exc}") from exc
    return element_from_json(algebra, doc)


def _clean(x: float) -> float:
    return 0.0 if x == 0 else float(x)


def element_to_json(element: Element) -> dict:
    factors = []
    for f, p in zip(element.algebra.factors, element.parts):
        if isinstance(f, RealLine):
            factors.append(_clean(p[0]))
        elif isinstance(f, Spin):
            factors.append([_clean(x) for x in p])
        elif isinstance(f, Matrix) and f.arity == 1:
            factors.append([[_clean(x) for x in row[:, 0]] for row in p])
        else:
            factors.append([[[_clean(x) for x in entry] for entry in row] for row in p])
    return {"schema": SCHEMA, "algebra": element.algebra.text(), "factors": factors}
