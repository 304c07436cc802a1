import os

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from lipgroove.errors import (
    BadTemplateHeader,
    BadTemplateMagic,
    CorruptTemplateFile,
    DuplicateId,
    InvalidId,
    InvalidMapCharacter,
    MalformedMap,
    UnsupportedVersion,
    WrongDims,
)
from lipgroove.features import MAP_HEIGHT, MAP_WIDTH, LipRatios, Template
from lipgroove.store import enroll, load_all, parse_template, serialize_template

maps = arrays(np.bool_, (MAP_HEIGHT, MAP_WIDTH))
ids = st.from_regex(r"[A-Za-z0-9_-]{1,20}", fullmatch=True)
ratios = st.floats(1e-4, 10.0)


def make(tid="t1", r=(0.6666666666666666, 0.2), h=None, v=None):
    z = np.zeros((MAP_HEIGHT, MAP_WIDTH), bool)
    return Template(tid, LipRatios(*r), z if h is None else h, z.copy() if v is None else v)


def test_layout_of_empty_template():
    text = serialize_template(make()).decode()
    lines = text.split("\n")
    assert lines[:4] == ["LIPT 1", "id t1", "ratios 0.666666667 0.2", "dims 128 64"]
    assert lines[-1] == ""
    body = lines[4:-1]
    assert len(body) == 128
    assert all(line == "0" * 128 for line in body)
    assert "\r" not in text


def test_first_bit_position():
    h = np.zeros((MAP_HEIGHT, MAP_WIDTH), bool)
    h[0, 0] = True
    lines = serialize_template(make(h=h)).decode().split("\n")
    assert lines[4].startswith("1")
    assert lines[4 + MAP_HEIGHT] == "0" * 128


def test_ratios_never_use_exponent_notation():
    text = serialize_template(make(r=(1.5e-5, 1234.56789012))).decode()
    assert text.split("\n")[2] == "ratios 0.000015 1234.56789"


@settings(max_examples=100, deadline=None)
@given(ids, ratios, ratios, maps, maps)
def test_round_trip(tid, r1, r2, h, v):
    t = Template(tid, LipRatios(r1, r2), h, v)
    data = serialize_template(t)
    back = parse_template(data)
    assert back.id == tid
    np.testing.assert_array_equal(back.h_map, h)
    np.testing.assert_array_equal(back.v_map, v)
    assert back.ratios.upper_lower_height_ratio == pytest.approx(r1, abs=1e-8, rel=0)
    assert back.ratios.upper_height_width_ratio == pytest.approx(r2, abs=1e-8, rel=0)
    assert serialize_template(back) == data


def corrupt(replace_line=None, text=None):
    lines = serialize_template(make()).decode().split("\n")
    if replace_line is not None:
        idx, new = replace_line
        lines[idx] = new
    return (text if text is not None else "\n".join(lines)).encode()


@pytest.mark.parametrize(
    "data, error",
    [
        (corrupt((0, "LIPT 2")), UnsupportedVersion),
        (corrupt((0, "LIPX 1")), BadTemplateMagic),
        (corrupt(text=""), BadTemplateMagic),
        (corrupt((3, "dims 64 128")), WrongDims),
        (corrupt((1, "name t1")), BadTemplateHeader),
        (corrupt((2, "ratios 1.0 abc")), BadTemplateHeader),
        (corrupt((10, "0" * 127)), MalformedMap),
        (corrupt((10, "0" * 129)), MalformedMap),
        (corrupt((10, "0" * 127 + "2")), InvalidMapCharacter),
    ],
)
def test_parse_errors(data, error):
    with pytest.raises(error):
        parse_template(data)


def test_short_line_reports_line_number():
    with pytest.raises(MalformedMap) as info:
        parse_template(corrupt((10, "0" * 127)))
    assert info.value.line == 11
    assert "line 11" in str(info.value)


def test_missing_map_lines():
    text = serialize_template(make()).decode()
    truncated = "\n".join(text.split("\n")[:-3]) + "\n"
    with pytest.raises(WrongDims):
        parse_template(truncated.encode())


def test_enroll_and_load(tmp_path):
    enroll(tmp_path, make("alice"))
    loaded = load_all(tmp_path)
    assert [t.id for t in loaded] == ["alice"]
    assert loaded[0] == parse_template(serialize_template(make("alice")))
    assert os.listdir(tmp_path) == ["alice.lipt"]


def test_enroll_duplicate(tmp_path):
    enroll(tmp_path, make("bob"))
    with pytest.raises(DuplicateId):
        enroll(tmp_path, make("bob"))
    enroll(tmp_path, make("bob", r=(2.0, 1.0)), overwrite=True)
    assert load_all(tmp_path)[0].ratios == LipRatios(2.0, 1.0)
    assert sorted(os.listdir(tmp_path)) == ["bob.lipt"]


@pytest.mark.parametrize("bad", ["a/b", "..", "a b", "é", "x.y"])
def test_enroll_invalid_id(tmp_path, bad):
    with pytest.raises(InvalidId):
        enroll(tmp_path, make(bad))
    assert os.listdir(tmp_path) == []


def test_load_sorted(tmp_path):
    for tid in ("c", "a", "b"):
        enroll(tmp_path, make(tid))
    assert [t.id for t in load_all(tmp_path)] == ["a", "b", "c"]


def test_load_empty(tmp_path):
    assert load_all(tmp_path) == []


def test_load_ignores_other_files(tmp_path):
    (tmp_path / "notes.txt").write_text("hello")
    enroll(tmp_path, make("a"))
    assert [t.id for t in load_all(tmp_path)] == ["a"]


def test_corrupt_file_is_named(tmp_path):
    for tid in ("a", "b", "c"):
        enroll(tmp_path, make(tid))
    (tmp_path / "b.lipt").write_bytes(b"LIPT 1\nid b\n")
    with pytest.raises(CorruptTemplateFile) as info:
        load_all(tmp_path)
    assert info.value.filename == "b.lipt"
    assert "b.lipt" in str(info.value)
