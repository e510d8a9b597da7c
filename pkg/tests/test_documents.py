"""The JSON curve document format and its validation paths."""

import json
import math
from fractions import Fraction

import pytest

from legcurve.curves import PlaneCurveGerm
from legcurve.documents import curve_from_document, curve_to_document, dump_curve, load_curve
from legcurve.errors import ValidationError


def test_round_trip():
    curve = PlaneCurveGerm(3, {10: 1, 13: Fraction(-7, 2)}, 20)
    doc = curve_to_document(curve)
    assert doc == {
        "n": 3,
        "terms": [{"e": 10, "c": "1"}, {"e": 13, "c": "-7/2"}],
        "precision": 20,
    }
    assert curve_from_document(doc) == curve


def test_dump_and_load():
    curve = PlaneCurveGerm(2, {5: Fraction(1, 3)}, 9)
    text = dump_curve(curve)
    assert text.endswith("\n")
    assert json.loads(text)["terms"] == [{"e": 5, "c": "1/3"}]
    assert load_curve(text) == curve


def test_infinite_precision_is_not_serializable():
    curve = PlaneCurveGerm(3, {10: 1}, 20).as_polynomial(math.inf)
    with pytest.raises(ValidationError, match="finite precision"):
        curve_to_document(curve)


def base_doc():
    return {
        "n": 3,
        "terms": [{"e": 10, "c": "1"}, {"e": 11, "c": "2"}],
        "precision": 18,
    }


def test_document_validation_messages():
    cases = [
        ([], "expected a JSON object"),
        ({**base_doc(), "note": 1}, r"unknown keys \['note'\]"),
        ({"n": 3, "terms": base_doc()["terms"]}, "missing key 'precision'"),
        ({**base_doc(), "n": True}, "n: expected an integer"),
        ({**base_doc(), "precision": "18"}, "precision: expected an integer"),
        ({**base_doc(), "terms": []}, "terms: expected a non-empty list"),
        ({**base_doc(), "terms": [{"e": 10}]}, r"terms\[0\]: expected an object"),
        (
            {**base_doc(), "terms": [{"e": 10, "c": "1", "x": 2}]},
            r"terms\[0\]: expected an object",
        ),
        (
            {**base_doc(), "terms": [{"e": 10.0, "c": "1"}]},
            r"terms\[0\].e: expected an integer",
        ),
        (
            {**base_doc(), "terms": [{"e": 10, "c": "1.5"}]},
            r"terms\[0\].c: not an integer-over-integer",
        ),
        (
            {**base_doc(), "terms": [{"e": 10, "c": 1}]},
            r"terms\[0\].c: not an integer-over-integer",
        ),
        (
            {**base_doc(), "terms": [{"e": 10, "c": "0"}]},
            r"terms\[0\].c: zero coefficients",
        ),
        (
            {
                **base_doc(),
                "terms": [{"e": 11, "c": "1"}, {"e": 10, "c": "1"}],
            },
            r"terms\[1\].e: exponents must strictly increase",
        ),
        (
            {**base_doc(), "terms": [{"e": 9, "c": "1"}]},
            "document: ",
        ),
    ]
    for data, pattern in cases:
        with pytest.raises(ValidationError, match=pattern):
            curve_from_document(data)


def test_load_rejects_malformed_json():
    with pytest.raises(ValidationError, match="not valid JSON"):
        load_curve("{")
