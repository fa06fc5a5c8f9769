import json
import subprocess
import sys

import pytest

from hedcap.cli import cli_main


def run(args, stdin=""):
    proc = subprocess.run(
        [sys.executable, "-m", "hedcap", *args], input=stdin, capture_output=True, text=True, timeout=600
    )
    return proc.returncode, proc.stdout, proc.stderr


def test_gen_pipe_compute_clique():
    _, g6, _ = run(["gen", "paley", "--q", "17"])
    code, out, _ = run(["compute", "clique"], g6)
    assert code == 0 and out.splitlines()[0] == "3"


def test_gen_variants(tmp_path, capsys):
    assert cli_main(["gen", "paley-del2", "--q", "17", "--kind", "nonadjacent", "--format", "dimacs"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("c label Z15n") and "p edge 15" in out
    assert cli_main(["gen", "complete", "--n", "3"]) == 0
    assert capsys.readouterr().out.strip() == "Bw"


def test_usage_errors(capsys):
    assert cli_main(["bogus"]) == 1
    assert cli_main(["gen", "paley"]) == 1
    assert cli_main(["gen", "paley", "--q", "15"]) == 1
    assert cli_main(["testcase", "--p", "19"]) == 1
    assert cli_main(["compute", "clique", "/nonexistent/graph.g6"]) == 1


def test_op_and_stdin_multiple_graphs():
    _, sq, _ = run(["op", "or"], "Dhc\nDhc\n")
    code, out, _ = run(["compute", "clique"], sq)
    assert code == 0 and out.splitlines()[0] == "5"
    _, pw, _ = run(["op", "power", "-t", "2"], "Dhc\n")
    assert pw == sq


def test_theta_bar_json(tmp_path):
    g = tmp_path / "q40.g6"
    g.write_text(run(["gen", "paley-del", "--q", "41"])[1])
    out_json = tmp_path / "r.json"
    code, out, _ = run(["compute", "theta-bar", str(g), "--json", str(out_json)])
    assert code == 0
    assert abs(float(out.splitlines()[0]) - 6.3493) < 5e-3
    doc = json.loads(out_json.read_text())
    assert doc["results"]["theta-bar"]["lower"] <= 6.3493 + 5e-3
    assert run(["verify", str(out_json)])[0] == 0


def test_hom_and_pair(tmp_path):
    c9, c5 = tmp_path / "c9.g6", tmp_path / "c5.dimacs"
    c9.write_text(run(["gen", "cycle", "--n", "9"])[1])
    c5.write_text(run(["gen", "cycle", "--n", "5", "--format", "dimacs"])[1])
    code, out, _ = run(["hom", str(c9), str(c5)])
    assert code == 0 and out.startswith("yes")
    code, out, _ = run(["hom", str(c5), str(c9)])
    assert code == 0 and out.startswith("no")
    code, out, _ = run(["pair", str(c9), str(c5)])
    assert code == 0 and "equality-proved" in out


def test_budget_exhaustion_exits_2(tmp_path):
    p = tmp_path / "p101.g6"
    p.write_text(run(["gen", "paley", "--q", "101"])[1])
    assert run(["compute", "chrom", str(p), "--budget-nodes", "5"])[0] == 2
    assert run(["compute", "clique", str(p), "--budget-nodes", "5"])[0] == 2


def test_deterministic_json(tmp_path):
    outs = []
    dest = tmp_path / "r.json"
    for _ in range(2):
        assert run(["bounds", "--max-power", "2", "--json", str(dest)], "Dhc\n")[0] == 0
        doc = json.loads(dest.read_text())
        doc.pop("timing")
        outs.append(json.dumps(doc, sort_keys=True))
    assert outs[0] == outs[1]


def test_testcase_p17(tmp_path):
    dest = tmp_path / "t.json"
    code, out, _ = run(["testcase", "--p", "17", "--variant", "deleted", "--json", str(dest)])
    assert code == 0
    pair = json.loads(dest.read_text())["results"]["pair"]
    assert pair["verdict"] == "gap-open" and pair["upper"] == pytest.approx(4) and pair["cap"] < 4
    assert "Cap" in out


def test_tampered_report_exits_3(tmp_path):
    dest = tmp_path / "c.json"
    assert run(["compute", "clique", "--json", str(dest)], "Dhc\n")[0] == 0
    doc = json.loads(dest.read_text())
    doc["certificates"][0]["vertices"] = [0, 2]
    dest.write_text(json.dumps(doc))
    assert run(["verify", str(dest)])[0] == 3


def test_properties_quick(capsys):
    assert cli_main(["properties", "--seed", "7"]) == 0
    assert capsys.readouterr().out.count("PASS") == 6
