import json
from fractions import Fraction

import pytest

from bielliptic.curves import ECPoint
from bielliptic.io import (
    LiteralError,
    ecpoint_from_json,
    ecpoint_to_json,
    element_from_json,
    element_to_json,
    field_from_json,
    field_to_json,
    load_json,
    rational_from_json,
    rational_to_json,
    surface_from_json,
    surface_point_from_json,
    surface_point_to_json,
    surface_to_json,
)

from conftest import random_element


def test_rationals():
    assert rational_to_json(Fraction(-6, 4)) == "-3/2"
    assert rational_to_json(Fraction(5)) == "5"
    assert rational_from_json("-3/2") == Fraction(-3, 2)
    for bad in ("1/0", "x", 1.5, None, True):
        with pytest.raises(LiteralError):
            rational_from_json(bad)


def test_round_trips(rng, L, ex):
    assert field_from_json(field_to_json(L)) == L
    for _ in range(50):
        e = random_element(rng, L)
        assert element_from_json(json.loads(json.dumps(element_to_json(e))), L) == e
    assert ecpoint_from_json(ecpoint_to_json(ex.generator), L) == ex.generator
    assert ecpoint_from_json({"inf": True}, L) == ECPoint()
    assert surface_point_from_json(surface_point_to_json(ex.point)) == ex.point
    assert surface_from_json(surface_to_json(ex.surface)) == ex.surface


def test_fixture_point_matches_published_coordinates(ex, L):
    P = ex.point
    assert P.x == L([1, 0, 1])
    assert P.y == L([4851, -2133, 3357])
    assert P.z == L([4158, -2025, 2826])
    assert P.t == L([-54, 24, -42])
    assert ex.a == L([9, -4, 6])


def test_malformed_literals(L):
    with pytest.raises(LiteralError):
        field_from_json({"coeffs": []})
    with pytest.raises(LiteralError):
        ecpoint_from_json({"x": ["1", "0", "0"]}, L)
    with pytest.raises(LiteralError):
        surface_point_from_json({"x": ["1", "0", "0"]}, L)
    with pytest.raises(LiteralError):
        surface_point_from_json({"model": "C", "x": "0", "y": "0", "z": "0", "t": "0"}, L)
    with pytest.raises(LiteralError):
        load_json("{not json")


def test_inline_json():
    assert load_json('["1", "2"]') == ["1", "2"]
