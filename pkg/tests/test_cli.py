import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from norlund import InclusionMatrixRow, cli

F = Fraction


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    assert code == 0, text
    return json.loads(text)


def test_means_grandi_cesaro():
    d = run_json("means", "--family", "cesaro:1", "--series", "grandi", "--horizon", "200")
    assert d["diagnostic"]["verdict"] == "converging-evidence"
    assert abs(F(d["diagnostic"]["estimated_limit"]) - F(1, 2)) <= F(1, 201)
    assert d["means"][:5] == ["1", "1/2", "2/3", "1/2", "3/5"]
    assert not d["truncated"]


def test_means_delta_constant():
    d = run_json("means", "--family", "delta", "--seq", "const:3", "--horizon", "10")
    assert d["means"] == ["3"] * 11


def test_means_bad_weights_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('["0", "1", "1"]')
    code, _ = run("means", "--weights", str(bad), "--seq", "const:3")
    assert code == 2
    assert "p_0 must be positive" in capsys.readouterr().err


def test_means_io_and_parse_errors(tmp_path):
    assert run("means", "--weights", str(tmp_path / "missing.json"), "--seq", "const:1")[0] == 1
    garbled = tmp_path / "g.json"
    garbled.write_text("[1, 2")
    assert run("means", "--weights", str(garbled), "--seq", "const:1")[0] == 1
    assert run("means", "--family", "nope", "--seq", "const:1")[0] == 1
    assert run("means", "--family", "cesaro:1")[0] == 1
    with pytest.raises(SystemExit) as exc:
        run("means", "--seq", "const:1")
    assert exc.value.code == 1


def test_means_truncation_flag(tmp_path):
    w = tmp_path / "w.json"
    w.write_text('[1, "1/2", "1/3"]')
    d = run_json("means", "--weights", str(w), "--seq", "const:2", "--horizon", "5")
    assert d["truncated"] and d["horizon"] == 2
    assert d["method"] == "w"


def test_sum_command():
    d = run_json("sum", "--family", "cesaro:2", "--series", "natural-alternating", "--horizon", "400")
    # 1 - 2 + 3 - ... is (C,2)-summable to 1/4
    assert d["diagnostic"]["verdict"] == "converging-evidence"
    assert abs(F(d["sum_estimate"]) - F(1, 4)) < F(1, 100)
    d = run_json("sum", "--family", "delta", "--series", "grandi", "--horizon", "50")
    assert d["diagnostic"]["verdict"] == "diverging-evidence"


@pytest.mark.parametrize(
    "p, q, verdict",
    [("cesaro:1", "cesaro:2", "holds-evidence"), ("cesaro:2", "cesaro:1", "fails-evidence"), ("cesaro:1", "cesaro:1", "holds-evidence")],
)
def test_compare_verdicts(p, q, verdict):
    d = run_json("compare", "--p", p, "--q", q, "--horizon", "256")
    assert d["verdict"] == verdict
    assert d["sst"]["row_abs_sums"] == d["r1_profile"]


def test_compare_emit_k():
    assert run_json("compare", "--p", "cesaro:2", "--q", "cesaro:1", "--horizon", "4", "--emit-k") == ["1", "-1", "0", "0", "0"]


def test_compare_internal_mismatch_exit_3(monkeypatch):
    real = cli.sst_diagnostics

    def skewed(rows, **kw):
        rep = real(rows, **kw)
        sums = list(rep.row_abs_sums)
        sums[-1] += 1
        return type(rep)(**{**rep.__dict__, "row_abs_sums": type(rep.row_abs_sums)(tuple(sums))})

    monkeypatch.setattr(cli, "sst_diagnostics", skewed)
    assert run("compare", "--p", "cesaro:1", "--q", "cesaro:2", "--horizon", "16")[0] == 3


@pytest.mark.parametrize(
    "q, verdict", [("cesaro:1", "holds-evidence"), ("geometric:2", "fails-evidence"), ("delta", "holds-evidence")]
)
def test_regularity(q, verdict):
    assert run_json("regularity", "--q", q, "--horizon", "256")["verdict"] == verdict


def test_regularity_csv():
    code, text = run("regularity", "--q", "cesaro:1", "--horizon", "4", "--csv")
    assert code == 0
    assert text.splitlines() == ["m,A_m,B_m", "0,1,1", "1,1,0.5", "2,1,0.333333333333", "3,1,0.25", "4,1,0.2"]


def test_riesz_positional_files(tmp_path):
    p, q = tmp_path / "p.json", tmp_path / "q.json"
    p.write_text(json.dumps(["1"] * 65))
    q.write_text(json.dumps([str(n + 1) for n in range(65)]))
    d = run_json("riesz", str(p), str(q), "--horizon", "64")
    assert d["p"] == "p" and d["horizon"] == 64
    assert set(d["r1_profile"]) == {"1"}
    assert d["r2_profile"][3] == "1/10"
    code, text = run("riesz", str(p), str(q), "--horizon", "64", "--csv")
    assert text.splitlines()[4] == "3,1,0.1"


def test_matrix_rows():
    assert run_json("matrix", "--p", "cesaro:1", "--q", "cesaro:2", "--rows", "2") == [["1"], ["1/3", "2/3"], ["1/6", "1/3", "1/2"]]


def test_identity_check_passes():
    code, text = run("identity-check", "--p", "harmonic", "--q", "cesaro:1/2", "--trials", "50", "--horizon", "64")
    assert code == 0
    assert json.loads(text)["identity"] == "holds"
    assert run("identity-check", "--p", "cesaro:3", "--q", "cesaro:3", "--trials", "3", "--horizon", "20")[0] == 0


def test_identity_check_corrupted_row_exit_4(monkeypatch):
    real = cli.inclusion_rows

    def corrupted(p, q, k=None):
        rows = real(p, q, k)
        e = list(rows[5].entries)
        e[2] += F(1, 7)
        rows[5] = InclusionMatrixRow(5, tuple(e))
        return rows

    monkeypatch.setattr(cli, "inclusion_rows", corrupted)
    code, text = run("identity-check", "--p", "cesaro:1", "--q", "cesaro:2", "--trials", "3", "--horizon", "10")
    assert code == 4
    assert json.loads(text) == {"identity": "violated", "m": 5, "trial": 0}


def test_identity_check_rejects_zero_trials():
    assert run("identity-check", "--p", "delta", "--q", "delta", "--trials", "0")[0] == 1


def test_family_commands():
    assert run_json("family", "cesaro", "--alpha", "2", "--horizon", "3") == ["1", "2", "3", "4"]
    assert run_json("family", "geometric", "--ratio", "1/2", "--horizon", "2") == ["1", "1/2", "1/4"]
    kinds = run_json("family", "list")
    assert {"delta", "cesaro", "harmonic", "geometric"} <= set(kinds)
    assert run("family", "cesaro", "--alpha", "-1", "--horizon", "3")[0] == 2


def test_env_horizon(monkeypatch):
    monkeypatch.setenv("NORLUND_HORIZON", "7")
    assert len(run_json("family", "cesaro", "--alpha", "1")) == 8
    assert len(run_json("family", "cesaro", "--alpha", "1", "--horizon", "3")) == 4
    monkeypatch.setenv("NORLUND_HORIZON", "seven")
    assert run("family", "delta")[0] == 1


def test_default_horizon(monkeypatch):
    monkeypatch.delenv("NORLUND_HORIZON", raising=False)
    assert len(run_json("family", "delta")) == 257


def test_relaxed_flag_marks_output(tmp_path):
    w = tmp_path / "w.json"
    w.write_text('[1, 2, -1, 1]')
    assert run("means", "--weights", str(w), "--seq", "const:1")[0] == 2
    d = run_json("means", "--weights", str(w), "--seq", "const:1", "--relaxed")
    assert d["nonconforming"]


def test_decimal_output():
    d = run_json("regularity", "--q", "cesaro:1", "--horizon", "9", "--decimal", "--digits", "4")
    assert d["r2_profile"][2] == "0.3333"


def test_output_is_deterministic():
    args = ("compare", "--p", "harmonic", "--q", "cesaro:2", "--horizon", "40")
    assert run(*args) == run(*args)


def test_invalid_config_values():
    assert run("regularity", "--q", "delta", "--horizon", "0")[0] == 1
    assert run("regularity", "--q", "delta", "--threshold", "0")[0] == 1
    assert run("regularity", "--q", "delta", "--threshold", "abc")[0] == 1


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "norlund", "family", "cesaro", "--alpha", "2", "--horizon", "2"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout) == ["1", "2", "3"]
