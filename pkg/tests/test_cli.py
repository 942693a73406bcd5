import json

import pytest

from nearvec import cli


@pytest.fixture
def space_file(tmp_path):
    path = tmp_path / "space.json"
    path.write_text(json.dumps({"field": {"p": 5, "n": 1}, "twists": [1, 3], "block_card": "infinite"}))
    return str(path)


def run(*argv):
    code, report = cli.run_command(list(argv))
    return code, report


def test_blocks(space_file):
    code, report = run("blocks", space_file)
    assert code == 0
    res = report["results"]
    assert res["blocks"] == [[1], [2]] and res["count"] == 2 and res["morley"] == [2, 1]
    assert not res["regular"]


def test_space_flag_equals_positional(space_file):
    assert run("qkernel", space_file)[1]["results"] == run("qkernel", "--space", space_file)[1]["results"]
    assert run("qkernel", space_file)[1]["results"]["size"] == 9


def test_qe_and_eval(space_file):
    code, report = run("qe", space_file, "--formula", "E w. 2*w = v")
    assert code == 0 and report["results"]["output"] == "v = v"
    code, report = run("qe", space_file, "--formula", "E w. w+w+w+w+w = v")
    assert report["results"]["output"] == "v = 0"
    code, report = run("eval", space_file, "--formula", "3*v = u", "--assign", "v=2,2", "--assign", "u=1,4")
    assert code == 0 and report["results"]["value"] is True


def test_equiv(space_file):
    code, report = run("equiv", space_file, "--f", "v = 0", "--g", "v != 0")
    assert code == 0
    assert report["results"]["ok"] is False and report["results"]["counterexample"] == {"v": "(0,0)"}
    code, report = run("equiv", space_file, "--f", "E w. w = v", "--g", "v = v", "--on-space")
    assert report["results"]["ok"] is True


def test_ring_idem_preimage_aut(space_file):
    res = run("ring", space_file)[1]["results"]
    assert len(res["elements"]) == 25
    res = run("idem", space_file, "--block", "1")[1]["results"]
    assert res["phi"] == "(1,0)"
    res = run("preimage", space_file, "--target", "3,3")[1]["results"]
    assert res["witness"] == "3"
    res = run("aut", space_file, "--sum", "1+.1+.1+.3")[1]["results"]
    assert res["automorphism"] is False


def test_addtable_and_validate(space_file):
    res = run("addtable", space_file, "--u", "0,1")[1]["results"]
    assert res["table"][1][1] == "3"
    assert run("validate", space_file)[1]["results"]["ok"] is True


def test_charmix_modes():
    assert run("charmix", "sigma", "--value=-1/2")[1]["results"]["sigma"] == "2/t"
    res = run("charmix", "demo", "--sum", "1+.1+.1", "--v1", "1", "--v2", "t")[1]["results"]
    assert res["image"] == "(3, 0)" and res["automorphism"] is False
    assert run("charmix", "refute", "--v1", "1", "--v2", "1")[1]["results"]["refutation"] == ["1", "1"]
    assert run("charmix", "act", "--value", "2", "--v1", "1", "--v2", "t")[1]["results"]["image"] == "(2, t^2)"


def test_domain_errors_exit_1(space_file, tmp_path):
    code, report = run("idem", space_file, "--block", "3")
    assert code == 1 and report["error"].startswith("BlockIndexOutOfRange")
    code, report = run("blocks", str(tmp_path / "missing.json"))
    assert code == 1 and "FileNotFoundError" in report["error"]
    code, report = run("qe", space_file, "--formula", "E w. w +")
    assert code == 1 and "FormulaSyntaxError" in report["error"]


@pytest.mark.parametrize("payload", [
    {"field": {"p": "five", "n": 1}, "twists": [1, 3]},
    {"field": {"p": 5, "n": 1}, "twists": []},
    {"field": {"p": 5, "n": 1}, "twists": [1, 2]},
    {"field": {"p": 4, "n": 1}, "twists": [1]},
    {"field": {"p": 5, "n": 1}, "twists": [1], "block_card": "huge"},
])
def test_bad_descriptors(tmp_path, payload):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(payload))
    code, report = run("blocks", str(path))
    assert code == 1 and "error" in report


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as err:
        cli.main(["bogus"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        cli.main(["qe"])
    assert err.value.code == 2


def test_main_json_output(space_file, capsys):
    assert cli.main(["blocks", space_file, "--json"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["command"] == "blocks" and "time" not in json.dumps(out)
    assert cli.main(["blocks", space_file]) == 0
    captured = capsys.readouterr()
    assert "block 2: coordinates [2]" in captured.out and captured.err.endswith("s)\n")
