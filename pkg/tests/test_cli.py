from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from hamlab.cli import main
from hamlab.codec import emit_digraph6
from hamlab.families import d3


def run(argv, stdin_text=None, tmp_path=None):
    if stdin_text is not None:
        path = tmp_path / "in.txt"
        path.write_text(stdin_text)
        argv = argv + [str(path)]
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


def test_check_vacuous_and_witnesses(tmp_path):
    code, text = run(["check"], "&AW\n", tmp_path)
    assert code == 0
    rec = json.loads(text)
    assert rec["slack"] == "vacuous" and rec["satisfies"] is True

    code, text = run(["check", "--min-slack", "-1"], emit_digraph6(d3(1, False, False)) + "\n", tmp_path)
    rec = json.loads(text)
    assert rec["slack"] == -1 and rec["satisfies"] is True and rec["witnesses"]


def test_check_ore_on_graph6(tmp_path):
    code, text = run(["check", "--condition", "ore"], "Bw\n", tmp_path)
    assert code == 0 and json.loads(text)["slack"] == "vacuous"


def test_check_rejects_wrong_input_kind(tmp_path):
    code, _ = run(["check", "--condition", "ore"], "&AW\n", tmp_path)
    assert code == 1


def test_build_solve_pipeline(tmp_path):
    code, built = run(["build", "--family", "d1", "--n", "1", "--m", "1"])
    assert code == 0
    code, solved = run(["solve"], built, tmp_path)
    assert json.loads(solved) == {"hamiltonian": False, "result": "no hamilton cycle"}


def test_solve_reports_cycle(tmp_path):
    code, text = run(["solve"], "&AW\n", tmp_path)
    assert json.loads(text)["cycle"] == [0, 1]


def test_constructive_trace(tmp_path):
    code, text = run(["solve", "--bipartite", "--constructive"], "&AW\n", tmp_path)
    rec = json.loads(text)
    assert rec["hamiltonian"] and rec["trace"][0]["move"] == "seed"


def test_build_and_classify_every_family_kind(tmp_path):
    cases = [
        (["--family", "d3", "--n", "2", "--opts", "1,1"], [], "D3(2,1,1)"),
        (["--family", "d4"], [], "D4"),
        (["--family", "g3", "--n", "1", "--opts", "0,1"], ["--bipartite"], "G3"),
        (["--family", "g5", "--n", "1", "--m", "2"], [], "G5(1,2)"),
        (["--family", "d1'", "--n", "2"], ["--theorem", "14"], "D1'(2)"),
        (["--family", "d2", "--inner", "&AW"], [], "D2"),
        (["--family", "g6", "--inner", "A_"], [], "G6"),
    ]
    for build_args, classify_args, expected in cases:
        code, built = run(["build"] + build_args)
        assert code == 0, build_args
        code, label = run(["classify"] + classify_args, built, tmp_path)
        assert label.strip().startswith(expected), (build_args, label)


def test_build_usage_errors():
    assert run(["build", "--family", "d1", "--n", "1"])[0] == 2
    assert run(["build", "--family", "d2"])[0] == 2
    assert run(["build", "--family", "d1", "--n", "0", "--m", "1"])[0] == 1


def test_classify_none(tmp_path):
    code, text = run(["classify"], "&AW\n", tmp_path)
    assert text.strip() == "none"


def test_analyze(tmp_path):
    code, built = run(["build", "--family", "g3", "--n", "1", "--opts", "0,0"])
    code, text = run(["analyze"], built, tmp_path)
    rep = json.loads(text)
    assert rep["status"] == "analyzed" and rep["case"] == "2.2.2"


def test_convert_round_trips(tmp_path):
    code, doubled = run(["convert", "--double"], "Bw\n", tmp_path)
    assert doubled.strip() == "&B\\o"
    code, expanded = run(["convert", "--expand"], "&AW\n", tmp_path)
    code, back = run(["convert", "--contract"], expanded, tmp_path)
    assert back.strip() == "&AW"


def test_verify_and_merge(tmp_path):
    paths = []
    for i in range(2):
        p = tmp_path / f"s{i}.jsonl"
        code, _ = run(["verify", "--theorem", "11", "--order", "3", "--shards", "2", "--shard-index", str(i), "--out", str(p)])
        assert code == 0
        paths.append(str(p))
    code, merged = run(["verify", "--merge"] + paths)
    assert code == 0
    summary = json.loads(merged.splitlines()[-1])["summary"]
    assert summary["conditionSatisfying"] == 18 and summary["certified"]
    code, direct = run(["verify", "--theorem", "11", "--order", "3"])
    assert direct == merged


def test_verify_usage():
    assert run(["verify", "--order", "3"])[0] == 2
    assert run(["verify", "--theorem", "11", "--order", "3", "--shards", "2", "--shard-index", "2"])[0] == 2


def test_malformed_input_exits_two(tmp_path):
    assert run(["solve"], "&\n", tmp_path)[0] == 2
    assert run(["solve", str(tmp_path / "missing.txt")])[0] == 2
    bad = tmp_path / "bad.jsonl"
    bad.write_text("{not json\n")
    assert run(["verify", "--merge", str(bad)])[0] == 2


def test_unknown_subcommand_exits_two():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"], io.StringIO())
    assert info.value.code == 2


def test_console_entry_point_reads_stdin():
    proc = subprocess.run(
        [sys.executable, "-m", "hamlab.cli", "solve"],
        input="&AW\n",
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["hamiltonian"] is True
