"""JSON literal formats shared by the CLI and the fixture files.

* rational: ``"num"`` or ``"num/den"`` in lowest terms
* field element: list of rationals, constant term first
* field: ``{"poly": [...]}`` with the monic leading coefficient included
* elliptic curve point: ``{"inf": true}`` or ``{"x": [...], "y": [...]}``
* surface: ``{"g": [...], "p": [...], "q": [...]}``
* surface point: ``{"model": "A", "x": .., "y": .., "z": .., "t": .., "field": {...}}``
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .curves import ECPoint
from .numberfield import FieldElement, NumberField, UniPoly, nf_create
from .surface import BiellipticSurface, SurfacePoint


class LiteralError(ValueError):
    """Malformed JSON literal."""


def rational_to_json(r: Fraction) -> str:
    r = Fraction(r)
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def rational_from_json(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise LiteralError(f"expected a rational string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise LiteralError(f"bad rational {s!r}") from exc


def poly_to_json(f: UniPoly) -> list[str]:
    return [rational_to_json(c) for c in f.coeffs]


def poly_from_json(data) -> UniPoly:
    if not isinstance(data, list):
        raise LiteralError(f"expected a coefficient list, got {data!r}")
    return UniPoly(rational_from_json(c) for c in data)


def field_to_json(K: NumberField) -> dict:
    return {"poly": poly_to_json(K.poly)}


def field_from_json(data) -> NumberField:
    if not isinstance(data, dict) or "poly" not in data:
        raise LiteralError('field literal must look like {"poly": [...]}')
    return nf_create(poly_from_json(data["poly"]), assume_irreducible=bool(data.get("assume_irreducible")))


def element_to_json(a: FieldElement) -> list[str]:
    return [rational_to_json(c) for c in a.coeffs]


def element_from_json(data, K: NumberField) -> FieldElement:
    if isinstance(data, (str, int)) and not isinstance(data, bool):
        data = [data]
    if not isinstance(data, list):
        raise LiteralError(f"expected a field element literal, got {data!r}")
    if len(data) not in (1, K.degree):
        raise LiteralError(f"element literal needs {K.degree} coefficients, got {len(data)}")
    try:
        return K.element([rational_from_json(c) for c in data])
    except LiteralError:
        raise
    except ValueError as exc:
        raise LiteralError(str(exc)) from exc


def ecpoint_to_json(P: ECPoint) -> dict:
    if P.is_infinity:
        return {"inf": True}
    return {"x": element_to_json(P.x), "y": element_to_json(P.y)}


def ecpoint_from_json(data, K: NumberField) -> ECPoint:
    if not isinstance(data, dict):
        raise LiteralError(f"expected a point literal, got {data!r}")
    if data.get("inf"):
        return ECPoint()
    if "x" not in data or "y" not in data:
        raise LiteralError("point literal needs x and y, or inf")
    return ECPoint(element_from_json(data["x"], K), element_from_json(data["y"], K))


def surface_to_json(S: BiellipticSurface) -> dict:
    return {"g": poly_to_json(S.g), "p": poly_to_json(S.p), "q": poly_to_json(S.q)}


def surface_from_json(data, field: NumberField | None = None) -> BiellipticSurface:
    if not isinstance(data, dict) or not {"g", "p", "q"} <= data.keys():
        raise LiteralError('surface literal must look like {"g": [...], "p": [...], "q": [...]}')
    g, p, q = (poly_from_json(data[k]) for k in ("g", "p", "q"))
    try:
        S = BiellipticSurface(g=g, p=p, q=q)
    except ValueError as exc:
        raise LiteralError(str(exc)) from exc
    return S.base_change(field) if field is not None else S


def surface_point_to_json(P: SurfacePoint, with_field: bool = True) -> dict:
    out = {"model": P.model}
    if with_field:
        out["field"] = field_to_json(P.field)
    out.update({k: element_to_json(getattr(P, k)) for k in ("x", "y", "z", "t")})
    return out


def surface_point_from_json(data, field: NumberField | None = None) -> SurfacePoint:
    """The literal's own "field" entry is used when no field is given."""
    if not isinstance(data, dict):
        raise LiteralError(f"expected a surface point literal, got {data!r}")
    if field is None:
        if "field" not in data:
            raise LiteralError("surface point literal has no field and none was given")
        field = field_from_json(data["field"])
    missing = {"x", "y", "z", "t"} - data.keys()
    if missing:
        raise LiteralError(f"surface point literal is missing {sorted(missing)}")
    model = data.get("model", "A")
    if model not in ("A", "B"):
        raise LiteralError(f"unknown model {model!r}")
    coords = [element_from_json(data[k], field) for k in ("x", "y", "z", "t")]
    return SurfacePoint(*coords, model)


def load_json(path_or_text):
    """Parse a file path, or inline JSON text starting with '[' or '{'."""
    text = str(path_or_text)
    try:
        if text.lstrip()[:1] in ("[", "{"):
            return json.loads(text)
        return json.loads(Path(text).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise LiteralError(f"cannot read JSON from {text!r}: {exc}") from exc
