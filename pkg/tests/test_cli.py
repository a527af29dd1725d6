import json
import math

from contfrac.cli import (
    EX_BUDGET,
    EX_DIVERGENT,
    EX_FAIL,
    EX_NOINPUT,
    EX_OK,
    EX_USAGE,
    main,
)

REPORT_KEYS = {"family", "params", "value", "lower", "upper", "reference",
               "abs_error", "terms", "status"}


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ------------------------------------------------------------ eval

def test_eval_brouncker_prints_bracket(capsys):
    code, out, _ = run(capsys, "eval", "--family", "brouncker", "--tol", "1e-6")
    assert code == EX_OK
    assert "0.785398" in out
    assert "bracket" in out


def test_eval_e_euler_digits(capsys):
    code, out, _ = run(capsys, "eval", "--family", "e-euler", "--terms", "25", "--json")
    assert code == EX_OK
    payload = json.loads(out)
    assert abs(payload["value"] - math.e) < 1e-9
    assert payload["status"] == "converged"


def test_eval_divergent_family_exits_3(capsys):
    code, out, _ = run(capsys, "eval", "--family", "F2", "--param", "mu=3",
                       "--param", "nu=1", "--param", "m=1", "--param", "n=1")
    assert code == EX_DIVERGENT


def test_eval_budget_exhausted_exits_2(capsys):
    code, _, _ = run(capsys, "eval", "--family", "log2", "--tol", "1e-14",
                     "--terms", "200")
    assert code == EX_BUDGET


def test_eval_family_list(capsys):
    code, out, _ = run(capsys, "eval", "--family", "list")
    assert code == EX_OK
    assert "F8" in out and "brouncker" in out and "mu, nu, m, n" in out


def test_eval_bad_family_exits_64(capsys):
    code, _, err = run(capsys, "eval", "--family", "F99")
    assert code == EX_USAGE and "unknown identity family" in err


def test_eval_constraint_violation_names_predicate(capsys):
    code, _, err = run(capsys, "eval", "--family", "F8", "--param", "a=1",
                       "--param", "b=1", "--param", "c=3", "--param", "r=1",
                       "--param", "p=1", "--param", "q=0.5")
    assert code == EX_USAGE and "a + b - c - r > 0" in err


def test_eval_exact_lists_rational_convergents(capsys):
    code, out, _ = run(capsys, "eval", "--family", "brouncker", "--exact",
                       "--terms", "3", "--json")
    assert code == EX_BUDGET  # three terms cannot reach the default tolerance
    payload = json.loads(out)
    assert payload["exact"] == ["1/1", "2/3", "13/15"]


# ------------------------------------------------------------ convert

def test_convert_series_to_cf_log2(capsys):
    code, out, _ = run(capsys, "convert", "series-to-cf",
                       "--numerators", "1,1,1,1", "--denominators", "1,2,3,4")
    assert code == EX_OK
    rows = [line.split("\t") for line in out.strip().splitlines()]
    assert rows == [["1", "1"], ["1", "1"], ["4", "1"], ["9", "1"]]


def test_convert_cf_to_series_brouncker(capsys):
    code, out, _ = run(capsys, "convert", "cf-to-series", "--family", "brouncker",
                       "--depth", "3")
    assert code == EX_OK
    assert out.strip().splitlines() == ["1", "-1/3", "1/5"]


def test_convert_empty_series_is_usage_error(capsys):
    code, _, err = run(capsys, "convert", "series-to-cf",
                       "--numerators", "", "--denominators", "")
    assert code == EX_USAGE


def test_convert_zero_pivot_gives_partial_and_exit_2(capsys):
    code, out, err = run(capsys, "convert", "series-to-cf",
                         "--numerators", "1,1,1", "--denominators", "2,2,3")
    assert code == EX_BUDGET
    assert out.strip().splitlines() == ["1\t2"]
    assert "zero pivot" in err


# ------------------------------------------------------------ verify

def test_verify_family_filter_emits_json_lines(capsys):
    code, out, _ = run(capsys, "verify", "--family", "F3")
    assert code == EX_OK
    lines = out.strip().splitlines()
    assert len(lines) == 4
    for line in lines:
        record = json.loads(line)
        assert set(record) == REPORT_KEYS
        assert record["family"] == "F3"
        assert record["status"] == "pass"


def test_verify_unknown_family_filter_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--family", "F99")
    assert code == EX_USAGE and "F99" in err


def test_verify_jobs_output_is_deterministic(capsys):
    code1, out1, _ = run(capsys, "verify", "--family", "F10")
    code2, out2, _ = run(capsys, "verify", "--family", "F10", "--jobs", "2")
    assert code1 == code2 == EX_OK
    assert out1 == out2


def test_verify_manifest_constraint_violation_exit_1(tmp_path, capsys):
    manifest = tmp_path / "cases.json"
    manifest.write_text(json.dumps([
        {"family": "F3", "params": {"s": 2}, "tolerance": 1e-4, "max_terms": 100000},
        {"family": "F8", "params": {"a": 1, "b": 1, "c": 3, "r": 1, "p": 1, "q": "1/2"},
         "tolerance": 1e-6, "max_terms": 1000},
    ]))
    code, out, _ = run(capsys, "verify", "--manifest", str(manifest))
    assert code == EX_FAIL
    lines = [json.loads(line) for line in out.strip().splitlines()]
    assert lines[0]["status"] == "pass"
    assert lines[1]["status"] == "constraint-violation"


def test_verify_manifest_rational_strings_are_exact(tmp_path, capsys):
    manifest = tmp_path / "cases.json"
    manifest.write_text(json.dumps([
        {"family": "F3", "params": {"s": "11/2"}, "tolerance": 1e-6, "max_terms": 100000},
    ]))
    code, out, _ = run(capsys, "verify", "--manifest", str(manifest))
    assert code == EX_OK
    assert json.loads(out)["params"]["s"] == "11/2"


def test_verify_unreadable_manifest_exit_66(tmp_path, capsys):
    code, _, err = run(capsys, "verify", "--manifest", str(tmp_path / "missing.json"))
    assert code == EX_NOINPUT and "cannot read" in err


def test_verify_malformed_manifest_exit_66(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "verify", "--manifest", str(bad))
    assert code == EX_NOINPUT


def test_verify_manifest_unknown_family_rejected_with_position(tmp_path, capsys):
    manifest = tmp_path / "cases.json"
    manifest.write_text(json.dumps([
        {"family": "F3", "params": {"s": 1}},
        {"family": "F99", "params": {}},
    ]))
    code, _, err = run(capsys, "verify", "--manifest", str(manifest))
    assert code == EX_NOINPUT
    assert "entry 1" in err and "F99" in err


def test_verify_manifest_unknown_param_rejected_with_position(tmp_path, capsys):
    manifest = tmp_path / "cases.json"
    manifest.write_text(json.dumps([
        {"family": "F3", "params": {"sigma": 1}},
    ]))
    code, _, err = run(capsys, "verify", "--manifest", str(manifest))
    assert code == EX_NOINPUT
    assert "entry 0" in err and "sigma" in err


# ------------------------------------------------------------ riccati

def test_riccati_cot_case(capsys):
    code, out, _ = run(capsys, "riccati", "--a", "1", "--b", "0", "--c", "1",
                       "--m", "0", "--json")
    assert code == EX_OK
    payload = json.loads(out)
    assert abs(payload["cf_value"] - 0.6420926) < 1e-6
    assert payload["verdict"] == "pass"


def test_riccati_coth_case(capsys):
    code, out, _ = run(capsys, "riccati", "--a", "-1", "--b", "0", "--c", "1",
                       "--m", "0", "--json")
    assert code == EX_OK
    assert abs(json.loads(out)["cf_value"] - 1.3130353) < 1e-6


def test_riccati_out_of_scope_exponent_exit_64(capsys):
    code, _, err = run(capsys, "riccati", "--a", "1", "--b", "0", "--c", "1",
                       "--m", "-3")
    assert code == EX_USAGE and "boundary" in err


def test_riccati_terminating_preset_reports_depth(capsys):
    code, out, _ = run(capsys, "riccati", "--a", "1", "--b=-1/3", "--c", "1",
                       "--m", "0", "--json")
    assert code == EX_OK
    assert json.loads(out)["terminated_depth"] == 2


# ------------------------------------------------------------ usage

def test_usage_error_on_bad_rational(capsys):
    code, _, err = run(capsys, "eval", "--family", "F3", "--param", "s=one")
    assert code == EX_USAGE


def test_usage_error_on_missing_subcommand(capsys):
    code, _, err = run(capsys)
    assert code == EX_USAGE
