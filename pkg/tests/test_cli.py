import io
import json

import pytest

from permres.checks import SUITES
from permres.errors import IdentityViolation
from permres.main import main
from permres.models import CheckResult


def run_json(capsys, *argv):
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


def run_csv(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out.splitlines()


def test_analyze(capsys):
    code, doc = run_json(capsys, "analyze", "--group", "gf:7", "--poly", "x^2")
    assert code == 0
    assert (doc["v"], doc["u"], doc["delta"]) == (4, 2, 1)
    assert doc["bounds"] == {"lower": 2, "upper": 4, "lb_eq_ub": False, "char_holds": False}


def test_analyze_csv(capsys):
    code, lines = run_csv(capsys, "analyze", "--group", "gf:7", "--table", "[0,0,0,3,4,5,6]",
                          "--format", "csv")
    assert code == 0
    assert lines[0].startswith("q,V,u,M_0,M_1,M_2,M_3,N_2,N_3")
    assert lines[1].startswith("7,5,3,2,4,0,1,6,6")


def test_pres(capsys):
    code, doc = run_json(capsys, "pres", "--group", "gf:5", "--poly", "x^2 - x^3")
    assert code == 0
    assert doc["pres"] == 3
    assert doc["verified"] is True


def test_pres_with_oracle(capsys):
    code, doc = run_json(capsys, "pres", "--group", "gf:7", "--poly", "x^2", "--oracle")
    assert code == 0
    assert doc["pres"] == 3
    assert "oracle agrees" in doc["note"]


def test_pres_oracle_disagreement(capsys, monkeypatch):
    monkeypatch.setattr("permres.commands.pres.pres_oracle_bruteforce", lambda f: 99)
    assert main(["pres", "--group", "gf:7", "--poly", "x^2", "--oracle"]) == 1


def test_pres_all_optimal_csv(capsys):
    code, lines = run_csv(capsys, "pres", "--group", "gf:7", "--table", "[0,0,2,2,4,4,6]",
                          "--all-optimal", "--out", "csv")
    assert code == 0
    assert lines[1].startswith("2,optimal,matching-search,2,4,0 1,")


def test_pres_bound_limited_still_succeeds(capsys):
    code, doc = run_json(capsys, "pres", "--group", "gf:7", "--poly", "x^2", "--max-k", "2")
    assert code == 0
    assert doc["status"] == "bound-limited"
    assert doc["pres"] is None


def test_construct(capsys):
    code, doc = run_json(capsys, "construct", "--group", "gf:5", "--poly", "x^2 - x^3")
    assert code == 0
    assert doc["table"] == [0, 3, 0, 0, 2]
    assert doc["image_size"] <= doc["upper_bound"] == 3


def test_construct_translated(capsys):
    code, doc = run_json(capsys, "construct", "--group", "gf:5", "--poly", "x^2 - x^3",
                         "--translate", "3")
    assert code == 0
    assert doc["table"] == [2, 0, 2, 2, 4]
    assert main(["construct", "--group", "gf:5", "--poly", "x^2 - x^3", "--translate", "1"]) == 2


def test_family(capsys):
    code, doc = run_json(capsys, "family", "quadchar:7")
    assert code == 0
    assert doc["predicted_pres"] == 3
    assert doc["witness_g"] == [0, 0, 3, 0, 4, 3, 4]


def test_pipeline_csv(capsys):
    code, lines = run_csv(capsys, "pipeline", "--group", "gf:7", "--poly", "x^2",
                          "--cap", "20", "--format", "csv")
    assert code == 0
    assert lines[0] == "index,shifts,g,delta,bound,within_bound"
    assert len(lines) > 1
    assert all(line.endswith(",7,true") for line in lines[1:])


def test_transform_left(capsys):
    code, doc = run_json(capsys, "transform", "--group", "gf:7", "--poly", "x^2", "--left", "(2345)")
    assert code == 0
    assert doc["table"] == [0, 1, 5, 3, 3, 5, 1]


def test_transform_ea(capsys):
    code, doc = run_json(capsys, "transform", "--group", "gf:8", "--poly", "x", "--add", "0,1,1")
    assert code == 0
    assert sorted(set(doc["table"])) == [0, 1]


def test_transform_affine(capsys):
    code, doc = run_json(capsys, "transform", "--group", "gf:7", "--table", "[0,1,2,3,4,5,6]",
                         "--outer", "3+1", "--inner", "2+5")
    assert code == 0
    # 3(2x + 5) + 1 = 6x + 2
    assert doc["table"] == [2, 1, 0, 6, 5, 4, 3]


def test_transform_rejects_non_permutation(capsys):
    assert main(["transform", "--group", "gf:7", "--poly", "x^2", "--left", "[0,0,1,2,3,4,5]"]) == 2


def test_verify(capsys):
    code, lines = run_csv(capsys, "verify", "left-counterexample", "--samples", "5")
    assert code == 0
    assert lines[0] == "suite,check,passed,detail"
    assert all(",true," in line for line in lines[1:])


@pytest.mark.parametrize("argv,suite", [
    (["verify", "thm5.1", "--q-max", "9", "--samples", "200"], "m0-identity"),
    (["verify", "eq5", "--p-list", "7,11,13"], "quadratic-character"),
    (["verify", "thm4.1", "--field", "gf:7"], "du-bound"),
])
def test_verify_short_names(capsys, argv, suite):
    code, lines = run_csv(capsys, *argv)
    assert code == 0
    assert len(lines) > 1
    assert all(line.startswith(suite + ",") and ",true," in line for line in lines[1:])


def test_verify_failure_exit_code(capsys, monkeypatch):
    failing = CheckResult(suite="bounds", check="rigged", passed=False, detail="x")
    monkeypatch.setitem(SUITES, "bounds", lambda opts: [failing])
    assert main(["verify", "bounds"]) == 1


def test_identity_violation_exit_code(capsys, monkeypatch):
    def boom(f, acknowledge_convention=False):
        raise IdentityViolation("A(f) != NB_f / 2")

    monkeypatch.setattr("permres.commands.analyze.function_stats", boom)
    assert main(["analyze", "--group", "gf:7", "--poly", "x"]) == 3


@pytest.mark.parametrize("argv", [
    ["analyze", "--group", "gf:6", "--poly", "x"],
    ["analyze", "--group", "gf:7", "--poly", "x^"],
    ["analyze", "--group", "gf:7"],
    ["pres", "--group", "gf:7", "--poly", "x", "--format", "csv", "--max-k", "0"],
    ["verify", "nope"],
    ["family", "quadchar:9"],
    ["construct", "--group", "gf:7", "--poly", "x", "--acknowledge-convention", "--table", "[0]"],
])
def test_input_errors_exit_2(capsys, argv):
    assert main(argv) == 2


def test_missing_command_is_a_usage_error():
    with pytest.raises(SystemExit):
        main([])


def test_analyze_constant_on_z5(capsys):
    code, doc = run_json(capsys, "analyze", "--group", "zn:5", "--table", "[1,1,1,1,1]")
    assert code == 0
    assert (doc["u"], doc["v"]) == (5, 1)


def test_pres_quadratic_character_with_oracle(capsys):
    code, doc = run_json(capsys, "pres", "--group", "gf:7", "--poly", "x^3", "--oracle")
    assert code == 0
    assert doc["pres"] == 3


def test_table_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO("[0,0,0,3,4,5,6]"))
    code, doc = run_json(capsys, "pres", "--group", "gf:7", "--table", "-")
    assert code == 0
    assert doc["pres"] == 3
