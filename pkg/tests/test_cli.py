import json

import pytest

from diffinv.cli import main
from diffinv.pipeline import reproduce


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv,expected", [
    (["invariants", "--group", "G", "--bidegree", "2,0"], ["x1^2+x2^2+x3^2"]),
    (["invariants", "--group", "H", "--character", "chi", "--bidegree", "2,0"], ["x2*x3"]),
    (["invariants", "--group", "G", "--bidegree", "1,0"], []),
    (["molien", "--group", "Hbar", "--character", "chi"], ["(t+t^2)/(1-t^2)^3"]),
    (["hilbert", "--group", "G"], ["(1+t^6)/((1-t^2)(1-t^3)(1-t^4))"]),
])
def test_subcommand_output(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.splitlines() == expected


def test_relations_subcommand(capsys):
    code, out, _ = run(capsys, "relations")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 3
    assert lines[0].startswith("c1*c2 = -a1*d1+d3-d4")
    assert all("residual 0" in line and "erratum" not in line for line in lines)


@pytest.mark.parametrize("argv", [
    ["invariants", "--group", "K", "--bidegree", "1,0"],
    ["invariants", "--group", "G", "--character", "chi", "--bidegree", "1,0"],
    ["invariants", "--bidegree", "1"],
    ["molien", "--group", "G"],
    ["reproduce", "--max-degree", "-1"],
    ["hilbert", "--ydeg", "4"],
    [],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_config_override(tmp_path, capsys):
    cfg = tmp_path / "setup.cfg"
    cfg.write_text("# same fixtures, written out\np = 3\nt = 1 1; 0 1\ni = 0 1; -1 0\nchi_j = -1\n")
    code, out, _ = run(capsys, "--config", str(cfg), "invariants", "--group", "G", "--bidegree", "3,0")
    assert code == 0 and out.strip() == "x1*x2*x3"
    cfg.write_text("bogus = 1\n")
    assert run(capsys, "--config", str(cfg), "invariants", "--bidegree", "1,0")[0] == 2


def test_reproduce_truncated(capsys, tmp_path):
    out_file = tmp_path / "r.json"
    code, _, _ = run(capsys, "reproduce", "--max-degree", "3", "--out", str(out_file))
    report = json.loads(out_file.read_text(encoding="utf-8"))
    assert code == 0 and report["pass"]
    assert report["schema"] == 1
    assert report["certificates"]["minimal_generators"]["total"] == 10


def test_reproduce_text(capsys):
    code, out, _ = run(capsys, "reproduce", "--max-degree", "4", "--format", "text")
    assert code == 0
    assert out.splitlines()[-2] == "OVERALL PASS"


def test_failing_certificate_exit_code(monkeypatch, capsys):
    import diffinv.cli as cli

    def broken(D, setup):
        r = reproduce(2, setup)
        r["pass"], r["first_failure"] = False, "theta"
        return r
    monkeypatch.setattr(cli, "reproduce", broken)
    code, _, err = run(capsys, "reproduce", "--max-degree", "2")
    assert code == 1 and "theta" in err


@pytest.mark.determinism
def test_reproduce_byte_stable(capsys):
    _, first, _ = run(capsys, "reproduce", "--max-degree", "8", "--no-timing")
    _, second, _ = run(capsys, "reproduce", "--max-degree", "8", "--no-timing")
    assert first == second
    assert list(json.loads(first)) == ["schema", "engine", "parameters", "certificates", "pass", "first_failure",
                                       "stable_hash"]


@pytest.mark.determinism
def test_stable_hash_ignores_timing():
    a, b = reproduce(6), reproduce(6)
    assert a["timing"].keys() == b["timing"].keys()
    assert a["stable_hash"] == b["stable_hash"]


@pytest.mark.slow
def test_reproduce_default(capsys):
    code, out, _ = run(capsys, "reproduce")
    report = json.loads(out)
    assert code == 0
    assert report["certificates"]["minimal_generators"]["total"] == 14
    assert all(c["pass"] for c in report["certificates"].values())
