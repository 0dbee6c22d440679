"""CLI: códigos de salida, reportes y determinismo."""

import json

import pytest

from dirdesign.config import get_settings
from dirdesign.main import run
from dirdesign.tools.commands import CommandReport

CORRUPTED_DD = "kind: DD\nv: 4\nk: 4\nlambda: 1\nblocks:\n0 1 2 3\n3 2 0 1\n"


def test_verify_super_simple(capsys):
    assert run(["verify", "dd-10", "--super-simple"]) == 0
    assert capsys.readouterr().out.strip() == "valid super-simple 2-(10,4,1)DD, 15 blocks"


def test_verify_not_super_simple_fails(capsys):
    assert run(["verify", "dd-4", "--super-simple"]) == 1
    assert "super-simple" in capsys.readouterr().out


def test_verify_corrupted_file_reports_witness(tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text(CORRUPTED_DD, encoding="utf-8")
    assert run(["verify", str(path)]) == 1
    out = capsys.readouterr().out
    assert out.startswith("invalid 2-(4,4,1)DD")
    assert "(0, 1)" in out


def test_unknown_source_is_an_input_error(capsys):
    assert run(["verify", "dd-99"]) == 2


def test_bad_usage_exits_with_two():
    assert run([]) == 2
    assert run(["frobnicate"]) == 2


def test_defset_smallest(capsys):
    assert run(["defset", "dd-10", "--smallest"]) == 0
    assert capsys.readouterr().out.startswith("size 8 (optimal), f 8/15 ≈ 0.5333")


def test_defset_check(tmp_path, capsys):
    subset = tmp_path / "subset.txt"
    subset.write_text("kind: DD\nv: 10\nblocks:\n0 1 3 2\n2 3 5 4\n9 6 5 3\n8 7 5 2\n2 7 9 1\n2 6 8 0\n1 4 9 8\n1 5 7 6\n", encoding="utf-8")
    assert run(["defset", "dd-10", "--check", str(subset)]) == 0
    assert "are a defining set" in capsys.readouterr().out


def test_bound_json(capsys):
    assert run(["--json", "bound", "dd-10", "--exact"]) == 0
    report = CommandReport.model_validate_json(capsys.readouterr().out)
    assert report.status == "pass"
    assert report.data["certificate"]["bound"] == 8
    assert report.data["f"] == "≥ 8/15 ≈ 0.5333"


def test_trades_with_cycles(capsys):
    assert run(["trades", "dd-10", "--cycles"]) == 0
    out = capsys.readouterr().out
    assert "cycle[3]: 0 1 3 2 , 4 5 1 0 , 2 3 5 4" in out


def test_gen_unverified_needs_resolution(capsys):
    assert run(["gen", "dd-34"]) == 1
    assert "--resolve-orbits" in capsys.readouterr().out


def test_gen_develops_base_blocks(capsys):
    assert run(["gen", "dd-13"]) == 0
    out = capsys.readouterr().out
    assert "kind: DD" in out
    assert out.count("\n") > 26


def test_build_catalog_value(capsys):
    assert run(["build", "v=10"]) == 0
    assert capsys.readouterr().out.startswith("valid 2-(10,4,1)DD, 15 blocks")


def test_build_bad_recipe(capsys):
    assert run(["build", "v=7"]) == 2
    assert run(["build", "nonsense"]) == 2


def test_search_small_gdd(capsys):
    assert run(["search", "gdd", "--type", "1^4"]) == 0
    assert "blocks:\n0 1 2 3" in capsys.readouterr().out


def test_catalog_list_and_show(capsys):
    assert run(["catalog", "list"]) == 0
    assert "dd-10\t15 blocks" in capsys.readouterr().out
    assert run(["catalog", "show", "dd-31"]) == 0
    assert "action: +1 mod 31" in capsys.readouterr().out
    assert run(["catalog", "show"]) == 2


def test_schema_is_json(capsys):
    assert run(["schema"]) == 0
    lines = capsys.readouterr().out.split("\n", 1)
    schema = json.loads(lines[1])
    assert schema["title"] == "CommandReport"


@pytest.mark.parametrize("argv", [["verify", "dd-19"], ["--json", "bound", "dd-10"], ["--threads", "4", "trades", "dd-7"]])
def test_identical_invocations_give_identical_output(argv, capsys):
    first_code = run(argv)
    first = capsys.readouterr().out
    second_code = run(argv)
    assert (first_code, first) == (second_code, capsys.readouterr().out)


@pytest.mark.parametrize(
    "text",
    [
        "kind: DD\nv: 3\nk: 4\nblocks:\n",
        "kind: DD\nv: 4\nlambda: 0\nblocks:\n0 1 2 3\n",
        "kind: DD\nv: 18\naction: +0 mod 18\nblocks:\n0 1 3 2\n",
    ],
)
def test_invalid_header_values_are_input_errors(text, tmp_path, capsys):
    path = tmp_path / "bad.txt"
    path.write_text(text, encoding="utf-8")
    assert run(["verify", str(path)]) == 2
    assert capsys.readouterr().out.startswith("line 3:")


def test_defset_needs_a_mode():
    assert run(["defset", "dd-10"]) == 2
    assert run(["defset", "dd-10", "--smallest", "--check", "x.txt"]) == 2


def test_threads_flag_does_not_leak_into_settings():
    assert run(["--threads", "3", "gen", "dd-34", "--resolve-orbits"]) in (0, 1)
    assert get_settings().orbit_search_workers == 1
