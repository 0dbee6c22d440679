"""Formato de archivo: parseo, errores con número de línea y serialización."""

import pytest

from dirdesign.infra.catalog import catalog_get, catalog_list
from dirdesign.infra.design_io import parse_action, parse_design, read_design_file, serialize_design
from dirdesign.models.errors import DesignFormatError
from dirdesign.models.schemas import (
    BaseBlockSet,
    DevelopmentAction,
    DirectedDesign,
    GroupedDesign,
)
from dirdesign.tools.verifier import verify_grouped


def test_parse_explicit_dd():
    design = parse_design("# dos bloques\nkind: DD\nv: 4\nk: 4\nlambda: 1\nblocks:\n0 1 2 3\n3 2 1 0  # reverso\n")
    assert isinstance(design, DirectedDesign)
    assert design.blocks == ((0, 1, 2, 3), (3, 2, 1, 0))


def test_parse_base_file_with_orbit_suffix():
    text = "kind: DD\nv: 18\naction: +2 mod 18\nblocks:\n0 1 3 2\n5 10 2 0 | orbit: 3\n"
    base = parse_design(text)
    assert isinstance(base, BaseBlockSet)
    assert base.base_blocks[1].orbit_length == 3
    assert base.base_blocks[0].rule.step == 2


def test_parse_per_block_actions():
    text = "kind: DD\nv: 22\nblocks:\n(0,0) (0,3) (0,9) (0,10) | action: -,+1 mod 11\n"
    base = parse_design(text)
    rule = base.base_blocks[0].rule
    assert rule.action == DevelopmentAction.FIX_FIRST
    assert base.base_blocks[0].points[1] == (0, 3)


def test_parse_action_rejects_garbage():
    assert parse_action("+1 mod 13").modulus == 13
    with pytest.raises(DesignFormatError):
        parse_action("*2 mod 7", 3)


@pytest.mark.parametrize(
    "text,line",
    [
        ("kind: DD\nv: 4\nblocks:\n0 1 2 9\n", 4),
        ("kind: DD\nv: 4\nblocks:\n0 1 2\n", 4),
        ("kind: DD\nv: 4\nblocks:\n0 1 1 2\n", 4),
        ("kind: DD\nv: four\nblocks:\n", 2),
        ("kind: XX\nv: 4\nblocks:\n", 1),
        ("kind: DD\ncolor: blue\nblocks:\n", 2),
        ("kind: DD\nv: 4\nv: 5\nblocks:\n", 3),
        ("kind: DGDD\nv: 4\nblocks:\n0 1 2 3\n", 1),
        ("kind: DD\nv: 7\nblocks:\n0 1 2 3 | orbit: 7\n", 4),
        ("kind: DD\nv: 3\nk: 4\nblocks:\n", 3),
        ("kind: DD\nv: 4\nlambda: 0\nblocks:\n", 3),
        ("kind: DD\nv: 18\naction: +0 mod 18\nblocks:\n0 1 3 2\n", 3),
        ("kind: DD\nv: 7\naction: +1 mod 7\nblocks:\n0 1 3 2 | orbit: 0\n", 4),
        ("kind: PBD\nv: 7\nlambda: 0\nblocks:\n0 1 3\n", 3),
    ],
)
def test_format_errors_carry_line_numbers(text, line):
    with pytest.raises(DesignFormatError) as info:
        parse_design(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_missing_blocks_line():
    with pytest.raises(DesignFormatError):
        parse_design("kind: DD\nv: 4\n")


def test_corrupted_dgdd_parses_and_fails_verification():
    text = (
        "kind: DGDD\nv: 8\nk: 4\nlambda: 1\n"
        "groups: 1 2; 3 4; 5 6; 7 0\n"
        "blocks:\n4 1 6 7\n0 6 1 3\n6 0 2 4\n7 5 4 2\n5 7 3 1\n2 3 7 6\n1 4 5 0\n3 2 5 0\n"
    )
    design = parse_design(text)
    assert isinstance(design, GroupedDesign)
    report = verify_grouped(design)
    assert not report.passed
    assert report.violations[0].witness == (0, 5)


@pytest.mark.parametrize("entry", catalog_list())
def test_round_trip_every_catalog_entry(entry):
    payload = catalog_get(entry).payload
    assert parse_design(serialize_design(payload)) == payload


def test_display_names_round_trip():
    text = "kind: DD\nv: 4\nnames: 0=∞; 1=(0,1)\nblocks:\n0 1 2 3\n3 2 1 0\n"
    design = parse_design(text)
    assert design.display_names == {0: "∞", 1: "(0,1)"}
    assert parse_design(serialize_design(design)) == design


def test_read_design_file(tmp_path):
    path = tmp_path / "dd4.txt"
    path.write_text(serialize_design(catalog_get("dd-4").payload), encoding="utf-8")
    assert read_design_file(str(path)).block_count == 2
