import io
import json
import subprocess
import sys

import pytest

from thetasp.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


def test_collapse():
    code, js = run_json("collapse", "7,1")
    assert code == 0 and js == {"input": [7, 1], "collapse": [6, 2]}


def test_dominance_and_orbit():
    assert run_json("dominance", "4,1,1", "3,3")[1]["order"] == "Incomparable"
    code, js = run_json("orbit", "--n", "4", "--r", "7")
    assert js["orbit"] == [6, 2] and js["pre_collapse"] == [7, 1]


def test_gk_dim():
    assert run_json("gk-dim", "3,3")[1]["gk_dim"] == "7"


def test_dim_check_exit_codes():
    code, js = run_json("dim-check", "--n", "5", "--r", "5")
    assert code == 0 and js["gk_dim"] == "22"
    code, js = run_json("dim-check", "--n", "4", "--r", "3")
    assert code == 1 and js["satisfied"] is False


def test_build():
    code, js = run_json("build", "w3")
    assert code == 0 and js["signed_permutation"] and js["size"] == 6
    code, js = run_json("build", "y_of_h", "--n", "4", "--param", "h=\"3/5\"")
    assert code == 0 and js["matrix"][2][2] == "5/3"


def test_identity():
    code, js = run_json("identity", "descent-wa", "--n", "3", "--r", "3", "--a", "1")
    assert code == 0 and js["passed"] and js["sign_torus"] is None


def test_gauss_and_unit_integral():
    code, js = run_json("gauss", "--p", "7", "--n", "3", "--t", "1")
    assert code == 0 and js["norm_is_p"] and js["normalised"]["q_exp"] == "-1/2"
    code, js = run_json("unit-integral", "--p", "7", "--n", "3", "--m", "2", "--t", "1")
    assert code == 0 and js["is_zero"] and js["value"]["coefficients"] == []
    code, js = run_json("unit-integral", "--p", "7", "--m", "1")
    assert js["equals_gauss_over_p"]


def test_hilbert_and_beta_and_pipeline():
    assert run_json("hilbert", "--p", "13", "--v1", "1", "--v2", "1")[1]["exponent"] == 0
    code, js = run_json("beta", "--n", "3", "--r", "3", "--a", "1")
    assert js["beta"] == "3/2" and js["crosscheck"]
    code, js = run_json("pipeline", "--n", "3")
    assert js["total"] == "-5/6" and js["ok"]


def test_theorem2():
    code, js = run_json("theorem2", "--n", "3")
    assert js["formula"] == "gamma^0 * (T(0,0,0) + q^(-5/6)*T(0,0,1))"
    code, js = run_json("theorem2", "--n", "3", "--with-gauss-factor", "--p", "7")
    assert js["gauss_factor_p"] == 7 and "q^(-4/3)" in js["formula"]


def test_verify_identities_n3():
    code, js = run_json("verify", "--suite", "identities", "--n", "3")
    assert code == 0 and js["passed"] and js["failed"] == 0
    assert all(c["anchor"] for c in js["checks"])


@pytest.mark.parametrize("argv", [
    ["collapse", "3"],
    ["collapse", "1,3,x"],
    ["gauss", "--p", "11", "--n", "3"],
    ["theorem2", "--n", "4"],
    ["identity", "descent-wa", "--n", "9"],
    ["build", "w_a", "--n", "3"],
    ["build", "y_of_h", "--n", "4", "--param", "h=0.5"],
    ["nosuch"],
    [],
])
def test_malformed_input_exit_2(argv, capsys):
    code, _ = run(*argv)
    assert code == 2


def test_error_json_on_stderr(capsys):
    run("gauss", "--p", "11")
    err = capsys.readouterr().err
    assert json.loads(err) == {"error": "need p = 1 mod n, got p=11, n=3"}


def test_format_flag_positions():
    a = run("--pretty", "pipeline", "--n", "3")[1]
    b = run("pipeline", "--n", "3", "--pretty")[1]
    assert a == b and not a.startswith("{")
    assert run("--json", "pipeline", "--n", "3")[1] == run("pipeline", "--n", "3")[1]


def test_pretty_suite_output():
    text = run("--pretty", "verify", "--suite", "exponents")[1]
    assert text.startswith("suite exponents: PASS")


def test_byte_identical_reruns():
    for argv in (["verify", "--suite", "charsums"], ["theorem2", "--n", "5", "--with-gauss-factor"], ["build", "w0_star", "--n", "5"]):
        assert run(*argv)[1] == run(*argv)[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "thetasp", "collapse", "5,3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["collapse"] == [4, 4]
