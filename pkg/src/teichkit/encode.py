"""Scalar <-> JSON codec shared by the serializable object kinds.

Exact rationals travel as "p/q" strings (canonical: always a slash, lowest
terms, sign on the numerator).  Floats travel as JSON numbers.  The schema
tag "teichkit/1" marks every top-level document.
"""

from fractions import Fraction

from .errors import SchemaError

SCHEMA = "teichkit/1"


def scalar_to_json(x):
    if isinstance(x, bool):
        raise SchemaError("bool is not a scalar")
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return x
    raise SchemaError(f"cannot encode scalar of type {type(x).__name__}")


def scalar_from_json(v, mode="rational"):
    if mode not in ("rational", "float"):
        raise SchemaError(f"unknown scalar mode {mode!r}")
    if isinstance(v, bool):
        raise SchemaError("bool is not a scalar")
    if isinstance(v, str):
        try:
            q = Fraction(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"bad rational literal {v!r}") from exc
        return float(q) if mode == "float" else q
    if isinstance(v, int):
        return float(v) if mode == "float" else Fraction(v)
    if isinstance(v, float):
        if mode == "rational":
            raise SchemaError(f"float {v} not allowed in rational mode")
        return v
    raise SchemaError(f"cannot decode scalar from {type(v).__name__}")


def check_schema(doc, kind):
    if not isinstance(doc, dict):
        raise SchemaError("document must be a JSON object")
    if doc.get("schema") != SCHEMA:
        raise SchemaError(f"missing or wrong schema tag, expected {SCHEMA!r}")
    if doc.get("kind") != kind:
        raise SchemaError(f"expected kind {kind!r}, got {doc.get('kind')!r}")
    return doc
