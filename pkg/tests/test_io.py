import json
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from dualdepth.generators import gen_random_pik
from dualdepth.io import (
    FamilyFormatError, atomic_write, family_digest, load_family, parse_family, parse_points,
    points_to_dict, serialize_family,
)

FIXTURES = Path(__file__).parent / "fixtures"


def test_fixture_loads():
    fam = load_family(FIXTURES / "tri.json")
    assert fam.dimension == 2 and len(fam) == 3 and fam.names == ["E0", "E1", "E2"]


def _doc(halfspaces, d=1, name="X"):
    return json.dumps({"dimension": d, "bodies": [{"name": name, "halfspaces": halfspaces}]})


def test_empty_body_is_rejected():
    text = _doc([{"a": ["1"], "b": "0"}, {"a": ["-1"], "b": "-1"}], name="bad")
    with pytest.raises(FamilyFormatError, match="'bad'.*empty body"):
        parse_family(text)


@pytest.mark.parametrize("hs, message", [
    ([{"a": ["1/0"], "b": "0"}], "constraint 0"),
    ([{"a": ["1", "2"], "b": "0"}], "dimension mismatch"),
    ([{"a": ["0"], "b": "1"}], "zero normal"),
    ([{"a": ["1"], "b": 0.5}], "rational"),
    ([{"a": ["abc"], "b": "1"}], "constraint 0"),
    ([{"a": ["1"]}], "'a' and 'b'"),
])
def test_malformed_constraints_name_the_culprit(hs, message):
    with pytest.raises(FamilyFormatError, match=message):
        parse_family(_doc(hs))


def test_structural_errors():
    with pytest.raises(FamilyFormatError):
        parse_family("{not json")
    with pytest.raises(FamilyFormatError):
        parse_family(json.dumps({"dimension": 0, "bodies": []}))
    dup = {"dimension": 1, "bodies": [{"name": "A", "halfspaces": []}, {"name": "A", "halfspaces": []}]}
    with pytest.raises(FamilyFormatError, match="duplicate"):
        parse_family(json.dumps(dup))


def test_decimal_strings_are_exact():
    fam = parse_family(_doc([{"a": ["0.1"], "b": "0.3"}]))
    h = fam[0].halfspaces[0]
    assert h.offset / h.normal[0] == 3


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_round_trip_is_byte_identical(seed):
    fam = gen_random_pik(4, 2, 2, seed)
    text = serialize_family(fam)
    again = parse_family(text)
    assert again == fam
    assert serialize_family(again) == text
    assert family_digest(again) == family_digest(fam)


def test_points_round_trip():
    pts = [(1, 2), ("1/2", "-3")]
    assert parse_points(json.dumps(points_to_dict(pts)))[1] == (0.5, -3)


def test_atomic_write_replaces(tmp_path):
    target = tmp_path / "out.json"
    atomic_write(target, "one")
    atomic_write(target, "two")
    assert target.read_text() == "two"
    assert [p.name for p in tmp_path.iterdir()] == ["out.json"]
