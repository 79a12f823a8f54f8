"""
Tests for the pfg command line: output formats and exit statuses.
"""

import json
import os
import subprocess
import sys
from pathlib import Path

from src.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from src.storage import load_group_file, load_pfs_file

REPO_ROOT = Path(__file__).resolve().parent.parent
DATA_DIR = REPO_ROOT / "data"
Z4 = str(DATA_DIR / "pfs" / "z4_two_level.json")
Z2_BAD = str(DATA_DIR / "pfs" / "z2_not_pfsg.json")
S3_NON_NORMAL = str(DATA_DIR / "pfs" / "s3_non_normal.json")
Z6_CONSTANT = str(DATA_DIR / "pfs" / "z6_constant.json")
Z4_MOD2 = str(DATA_DIR / "maps" / "z4_mod2.json")


def test_check_exit_codes(capsys):
    assert main(["check", "--pfs", Z4]) == EXIT_OK
    assert "holds" in capsys.readouterr().out
    assert main(["check", "--pfs", Z2_BAD]) == EXIT_FAIL
    assert "tau-closure at (1, 1)" in capsys.readouterr().out


def test_check_json(capsys):
    assert main(["check", "--pfs", Z2_BAD, "--json"]) == EXIT_FAIL
    result = json.loads(capsys.readouterr().out)
    assert result["pfsg"] == {"holds": False, "witness": [1, 1], "violated_clause": "tau-closure"}


def test_check_pfnsg_mode(capsys):
    assert main(["check", "--pfs", S3_NON_NORMAL]) == EXIT_OK
    capsys.readouterr()
    assert main(["check", "--pfs", S3_NON_NORMAL, "--mode", "pfnsg", "--json"]) == EXIT_FAIL
    result = json.loads(capsys.readouterr().out)
    assert {v["holds"] for v in result["pfnsg"].values()} == {False}


def test_check_carrier_mismatch(capsys):
    assert main(["check", "--pfs", Z4, "--group", "Z6"]) == EXIT_USAGE
    assert "error:" in capsys.readouterr().err


def test_cut(capsys):
    assert main(["cut", "--pfs", Z4, "--r", "1/2", "--s", "1/4", "--t", "1/8"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "0 2"
    assert main(["cut", "--pfs", Z4, "--r", "3/4", "--t", "1/4", "--json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out) == {"threshold": ["3/4", "0", "1/4"], "members": []}


def test_cut_rejects_bad_threshold(capsys):
    assert main(["cut", "--pfs", Z4, "--r", "1/2", "--s", "1/2", "--t", "1/2"]) == EXIT_USAGE
    assert main(["cut", "--pfs", Z4, "--r", "0.5"]) == EXIT_USAGE


def test_coset(tmp_path, capsys):
    out = str(tmp_path / "coset.json")
    assert main(["coset", "--pfs", Z4, "--element", "1", "--out", out]) == EXIT_OK
    aQ = load_pfs_file(out)
    assert aQ[1].to_strings() == ["1/2", "1/4", "1/8"]
    assert main(["coset", "--pfs", Z4, "--element", "9"]) == EXIT_USAGE


def test_product(capsys):
    assert main(["product", "--pfs", Z4, "--pfs", Z6_CONSTANT]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["carrier"] == "Z4xZ6"
    assert len(payload["triples"]) == 24
    assert payload["triples"][0] == ["1/3", "1/6", "1/4"]
    assert main(["product", "--pfs", Z4]) == EXIT_USAGE


def test_image_with_map_file(capsys):
    assert main(["image", "--pfs", Z4, "--map", Z4_MOD2]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["carrier"] == "Z2"
    assert payload["triples"] == [["1/2", "1/4", "1/8"], ["1/4", "1/4", "1/4"]]


def test_image_with_named_maps(capsys):
    assert main(["image", "--pfs", Z4, "--map", "trivial", "--target", "Z3"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["triples"][1] == ["0", "0", "1"]
    assert main(["image", "--pfs", Z4, "--map", "mod", "--target", "Z2", "--preimage"]) == EXIT_USAGE
    assert main(["image", "--pfs", Z4, "--map", "mod", "--source", "Z8", "--preimage"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["carrier"] == "Z8"
    assert payload["triples"][4] == ["1/2", "1/4", "1/8"]
    assert main(["image", "--pfs", Z4, "--map", "bogus"]) == EXIT_USAGE


def test_sample_then_check(tmp_path, capsys):
    out = str(tmp_path / "sample.json")
    assert main(["sample", "--group", "S3", "--kind", "pfnsg", "--chain-length", "3", "--seed", "4", "--out", out]) == EXIT_OK
    assert main(["check", "--pfs", out, "--mode", "pfnsg"]) == EXIT_OK
    assert main(["sample", "--group", "Z2", "--chain-length", "3"]) == EXIT_USAGE
    mixed = str(tmp_path / "mixed.json")
    assert main(["sample", "--group", "D4", "--mixed", "--seed", "2", "--out", mixed]) == EXIT_OK
    assert main(["check", "--pfs", mixed]) == EXIT_OK


def test_group_info(tmp_path, capsys):
    assert main(["group", "--group", "S3", "--json"]) == EXIT_OK
    info = json.loads(capsys.readouterr().out)
    assert info["order"] == 6 and not info["abelian"]
    assert len(info["subgroups"]) == 6
    assert [0, 2] in info["subgroups"] and [0, 2] not in info["normal_subgroups"]
    assert [0, 3, 4] in info["normal_subgroups"]

    out = str(tmp_path / "d4.json")
    assert main(["group", "--group", "D4", "--out", out]) == EXIT_OK
    assert load_group_file(out).order == 8
    assert main(["group"]) == EXIT_OK
    assert "Z2xZ4" in capsys.readouterr().out
    assert main(["group", "--group", "Q8"]) == EXIT_USAGE


def test_verify(tmp_path, capsys):
    out = str(tmp_path / "reports.jsonl")
    argv = ["verify", "--theorem", "product_cut", "--theorem", "pfsg_forms", "--groups", "Z2", "Z4", "S3"]
    assert main(argv + ["--trials", "6", "--json", "--out", out]) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert [json.loads(line)["theorem_id"] for line in lines] == ["product_cut", "pfsg_forms"]
    assert "elapsed" not in lines[0]
    assert Path(out).read_text().splitlines() == lines

    assert main(argv + ["--trials", "3"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("PASS product_cut")


def test_verify_strict_fails(capsys):
    argv = ["verify", "--theorem", "cut_subgroup_iff", "--groups", "Z4", "--trials", "3", "--strict"]
    assert main(argv) == EXIT_FAIL
    assert "FAIL cut_subgroup_iff" in capsys.readouterr().out


def test_usage_errors(capsys):
    assert main(["verify"]) == EXIT_USAGE
    assert main(["verify", "--theorem", "thm_99"]) == EXIT_USAGE
    assert main(["frobnicate"]) == EXIT_USAGE
    assert main(["check"]) == EXIT_USAGE
    assert main(["check", "--pfs", "missing.json"]) == EXIT_USAGE
    assert main(["verify", "--all", "--trials", "0"]) == EXIT_USAGE
    assert main(["check", "--pfs", Z4, "--log-level", "loud"]) == EXIT_USAGE
    assert main(["--help"]) == EXIT_OK


def test_unwritable_out_is_a_usage_error(tmp_path, capsys):
    assert main(["product", "--pfs", Z4, "--pfs", Z6_CONSTANT, "--out", str(tmp_path)]) == EXIT_USAGE
    assert "is a directory" in capsys.readouterr().err
    argv = ["verify", "--theorem", "product_cut", "--groups", "Z2", "--trials", "2"]
    assert main(argv + ["--out", str(tmp_path)]) == EXIT_USAGE
    captured = capsys.readouterr()
    assert captured.out == "" and "is a directory" in captured.err

    blocker = tmp_path / "plain.txt"
    blocker.write_text("x", encoding="utf-8")
    assert main(["coset", "--pfs", Z4, "--element", "1", "--out", str(blocker / "coset.json")]) == EXIT_USAGE
    assert "Cannot write" in capsys.readouterr().err


def test_bad_environment_is_a_usage_error(monkeypatch, capsys):
    monkeypatch.setenv("PFG_MAX_ORDER", "abc")
    assert main(["group", "--group", "Z4"]) == EXIT_USAGE
    assert "PFG_MAX_ORDER" in capsys.readouterr().err
    monkeypatch.setenv("PFG_MAX_ORDER", "0")
    assert main(["group", "--group", "Z4"]) == EXIT_USAGE
    monkeypatch.delenv("PFG_MAX_ORDER")
    monkeypatch.setenv("PFG_LOG_LEVEL", "chatty")
    assert main(["group", "--group", "Z4"]) == EXIT_USAGE
    assert "PFG_LOG_LEVEL" in capsys.readouterr().err


def test_oversized_product_is_a_usage_error(capsys):
    assert main(["group", "--group", "S4xS4"]) == EXIT_USAGE
    assert "exceeds the cap" in capsys.readouterr().err


def run_main(*argv, **env):
    return subprocess.run(
        [sys.executable, "main.py", *argv],
        cwd=REPO_ROOT,
        env={**{k: v for k, v in os.environ.items() if not k.startswith("PFG_")}, **env},
        capture_output=True,
        text=True,
        timeout=120,
    )


def test_max_order_override_from_environment():
    assert run_main("group", "--group", "S4").returncode == EXIT_OK
    capped = run_main("group", "--group", "S4", PFG_MAX_ORDER="12")
    assert capped.returncode == EXIT_USAGE
    assert "exceeds the cap 12" in capped.stderr
    assert run_main("group", "--group", "S3", PFG_MAX_ORDER="12").returncode == EXIT_OK
    malformed = run_main("group", "--group", "S3", PFG_MAX_ORDER="abc")
    assert malformed.returncode == EXIT_USAGE
    assert "Traceback" not in malformed.stderr
