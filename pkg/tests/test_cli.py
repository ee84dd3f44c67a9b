import json

import pytest

from biclosed.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate_jsonl_counts(capsys):
    for n, count in [(0, 1), (1, 4), (2, 20), (3, 138)]:
        code, out, _ = run(capsys, "enumerate", "--n", str(n))
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == count
        assert json.loads(lines[0])["n"] == n


def test_enumerate_methods_agree_and_are_deterministic(capsys):
    outputs = {run(capsys, "enumerate", "--n", "3", "--method", method)[1]
               for method in ("bruteforce", "classified", "semigroup")}
    outputs.add(run(capsys, "enumerate", "--n", "3", "--jobs", "2")[1])
    assert len(outputs) == 1


def test_enumerate_semigroups(capsys):
    code, out, _ = run(capsys, "enumerate", "--m", "4", "--object", "semigroup")
    assert code == 0 and len(out.splitlines()) == 138
    code, out, _ = run(capsys, "enumerate", "--m", "3", "--object", "semigroup", "--format", "json")
    assert len(json.loads(out)) == 20


def test_enumerate_csv(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "2", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 21
    assert lines[0] == "Biclosed set,Quasitrivial semigroup structure"


def test_enumerate_report(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "2", "--report")
    rep = json.loads(out)
    assert code == 0 and rep["counts"]["bruteforce"] == 20 and rep["formula_count"] == 20


def test_enumerate_output_file(capsys, tmp_path):
    target = tmp_path / "sets.jsonl"
    code, out, _ = run(capsys, "enumerate", "--n", "1", "--output", str(target))
    assert code == 0 and out == ""
    assert len(target.read_text().splitlines()) == 4


@pytest.mark.parametrize("argv", [["enumerate", "--n", "7"], ["enumerate", "--n", "5"],
                                  ["verify", "--n", "9"], ["poset", "--n", "6"]])
def test_rank_too_large(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 3 and json.loads(err)["error"] == "RankTooLarge"


@pytest.mark.parametrize("argv", [["enumerate", "--bogus"], ["enumerate"], ["enumerate", "--n", "-1"],
                                  ["classify"], ["classify", "--json", "{not json"],
                                  ["classify", "--json", '{"foo": 1}'], []])
def test_config_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in json.loads(err)


def test_convert_both_directions(capsys):
    code, out, _ = run(capsys, "convert", "--json", '{"n": 2, "roots": [[1, 2], [3, 2]]}')
    result = json.loads(out)
    assert code == 0 and result["structure"] == "{1,3}^1≺2"
    table = json.dumps(result["semigroup"])
    code, out, _ = run(capsys, "convert", "--json", table)
    back = json.loads(out)
    assert back["biclosed"] == {"n": 2, "roots": [[1, 2], [3, 2]]}
    assert back["canonical_string"] == "(2,3)Φ⁺_{{α_1},∅}"


def test_convert_from_blocks_and_file(capsys, tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps({"m": 3, "blocks": [{"elements": [1, 2, 3], "projection": 2}]}))
    code, out, _ = run(capsys, "convert", "--input", str(path))
    assert code == 0 and len(json.loads(out)["biclosed"]["roots"]) == 6


def test_convert_not_biclosed(capsys):
    code, _, err = run(capsys, "convert", "--json", '{"n": 2, "roots": [[1, 3]]}')
    payload = json.loads(err)
    assert code == 4 and payload["witness"] == ["complement", [1, 2], [2, 3]]


def test_convert_not_associative(capsys):
    code, _, err = run(capsys, "convert", "--json", '{"m": 3, "table": [[1,2,1],[1,2,3],[1,3,3]]}')
    assert code == 5 and json.loads(err)["error"] == "NotAssociative"


def test_convert_not_quasitrivial(capsys):
    code, _, _ = run(capsys, "convert", "--json", '{"m": 2, "table": [[2,1],[1,2]]}')
    assert code == 2


def test_check(capsys):
    code, out, _ = run(capsys, "check", "--json", '{"m": 3, "table": [[1,2,1],[1,2,3],[1,3,3]]}')
    result = json.loads(out)
    assert code == 0 and result["associative"] is False and result["agree"] is True
    assert result["witness"] == [1, 2, 3]
    code, out, _ = run(capsys, "check", "--via", "biclosed", "--json",
                       '{"m": 2, "table": [[1,2],[2,2]]}')
    assert json.loads(out) == {"m": 2, "via_biclosed": True, "associative": True}


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--stabilizer", "--json",
                       '{"n": 2, "roots": [[1, 2], [3, 2]]}')
    result = json.loads(out)
    assert code == 0
    assert result["canonical"]["w"]["cycles"] == "(2,3)"
    assert (result["parabolic"], result["horocyclic"]) == (False, True)
    assert result["stabilizer"] == ["()", "(1,3)"]


def test_act(capsys):
    code, out, _ = run(capsys, "act", "--perm", "(1,2)", "--verify-equivariance", "--json",
                       '{"n": 2, "roots": [[1, 2], [2, 3], [1, 3]]}')
    result = json.loads(out)
    assert code == 0 and result["equivariant"] is True
    assert sorted(map(tuple, result["result"]["roots"])) == [(1, 3), (2, 1), (2, 3)]
    code, out, _ = run(capsys, "act", "--perm", "[2,1,3]", "--json",
                       '{"m": 3, "table": [[1,2,3],[2,2,3],[3,3,3]]}')
    assert json.loads(out)["result"]["table"][1] == [1, 2, 3]


def test_act_random(capsys):
    code, out, _ = run(capsys, "act", "--random", "25", "--n", "3", "--seed", "7")
    result = json.loads(out)
    assert code == 0 and result["pass"] and len(result["checks"]) == 25
    assert run(capsys, "act", "--random", "25", "--n", "3", "--seed", "7")[1] == out


def test_act_bad_permutation(capsys):
    code, _, err = run(capsys, "act", "--perm", "(1,4)", "--json", '{"n": 2, "roots": []}')
    assert code == 2 and json.loads(err)["error"] == "MalformedPermutation"


def test_poset_dot_and_checks(capsys):
    code, out, _ = run(capsys, "poset", "--n", "1")
    assert code == 0 and out.startswith("digraph A1") and out.count("->") == 4
    code, out, _ = run(capsys, "poset", "--n", "1", "--object", "semigroup")
    assert out.count("->") == 4
    code, out, _ = run(capsys, "poset", "--n", "2", "--check-isomorphism", "--check-lattice")
    result = json.loads(out)
    assert code == 0 and all(c["pass"] for c in result["checks"])


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2")
    result = json.loads(out)
    assert code == 0 and result["pass"] and len(result["criteria"]) == 10
