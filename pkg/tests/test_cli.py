from importlib import resources

import pytest

from polynet.cli import main


def data(name):
    return str(resources.files("polynet").joinpath("data/" + name))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_exponent_table(capsys):
    code, out, _ = run(capsys, "exponent", "--class", "saw", "--L-max", "2")
    lines = out.splitlines()
    assert code == 0 and lines[0].startswith("# x_L|x_L^S")
    assert lines[1:] == ["5/48|5/8", "2/3|2"]


def test_exponent_special_no_meta(capsys):
    code, out, _ = run(capsys, "exponent", "--bc", "special", "--L-max", "1", "--no-meta")
    assert out.strip() == "5/48|-1/24"


def test_exponent_epsilon(capsys):
    code, out, _ = run(capsys, "exponent", "--setting", "eps1", "--L-max", "2", "--no-meta")
    assert code == 0 and len(out.splitlines()) == 2


def test_exponent_unsupported(capsys):
    code, _, err = run(capsys, "exponent", "--setting", "eps2")
    assert code == 2 and "undefined" in err


@pytest.mark.parametrize("name,gamma", [
    ("bridge.net", "9/16"), ("arch.net", "-3/16"), ("star3.net", "17/16"),
    ("eight_chain_gs.net", "-33/4"), ("eight_chain_gb.net", "-15/2"),
])
def test_gamma_files(capsys, name, gamma):
    code, out, _ = run(capsys, "gamma", data(name))
    assert code == 0 and out.splitlines()[-1] == f"gamma = {gamma}"


def test_gamma_special_default(capsys):
    code, out, _ = run(capsys, "gamma", data("bridge.net"), "--bc-default", "special", "--no-meta")
    assert out.splitlines()[-1] == "gamma = 17/16"


def test_gamma_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "gamma", str(tmp_path / "nope.net"))
    assert code == 3 and "cannot read" in err


def test_gamma_bad_file(capsys, tmp_path):
    p = tmp_path / "bad.net"
    p.write_text("vertex a bulk\nchain a b\n")
    assert run(capsys, "gamma", str(p))[0] == 3


@pytest.mark.parametrize("argv,expected", [
    (["u", "--kappa", "8/3", "--delta", "3/4"], "5/8"),
    (["u-inverse", "--kappa", "6", "--x", "0"], "1/3"),
    (["v", "--kappa", "6", "--delta", "1"], "1/3"),
    (["surface", "--kappa", "6", "--L", "2", "--j", "2"], "2"),
    (["bulk", "--kappa", "6", "--L", "1", "--j", "1"], "1/4"),
    (["special", "--kappa", "8/3", "--L", "2"], "1/3"),
    (["rho", "--kappa", "8/3", "--L", "1"], "5/8"),
    (["mixed", "--kappa", "3", "--L", "1"], "0"),
])
def test_kpz(capsys, argv, expected):
    code, out, _ = run(capsys, "kpz", *argv)
    assert code == 0 and out.strip() == expected


def test_kpz_welding(capsys):
    code, out, _ = run(capsys, "kpz", "welding", "--kappa", "6", "--L", "1", "--j", "2")
    assert code == 0 and "W=14/3" in out and "consistent=True" in out


def test_kpz_usage_errors(capsys):
    assert run(capsys, "kpz", "u", "--kappa", "6")[0] == 2
    assert run(capsys, "kpz", "surface", "--kappa", "6", "--L", "1", "--j", "5")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["kpz", "u", "--kappa", "abc", "--delta", "1"])
    assert info.value.code == 2


def test_enumerate_csv(capsys):
    code, out, _ = run(capsys, "enumerate", "--n-max", "5", "--no-meta")
    assert out.splitlines() == ["N,count,r2_sum", "1,4,4", "2,12,32", "3,36,164",
                                "4,100,704", "5,284,2716"]


def test_enumerate_guardrail(capsys):
    code, _, err = run(capsys, "enumerate", "--n-max", "29")
    assert code == 2 and "guardrail" in err


def test_enumerate_contact_needs_polygon(capsys):
    assert run(capsys, "enumerate", "--ensemble", "taw", "--weighting", "contact")[0] == 2


def test_enumerate_then_fit(capsys, tmp_path):
    out = tmp_path / "free.csv"
    assert run(capsys, "enumerate", "--n-max", "16", "-o", str(out))[0] == 0
    code, text, _ = run(capsys, "fit", str(out), "--format", "csv")
    lines = text.splitlines()
    assert code == 0 and lines[0] == "quantity,estimate,spread,method,window"
    assert [l.split(",")[0] for l in lines[1:]] == ["gamma", "gamma", "nu"]
    code, text, _ = run(capsys, "fit", str(out), "--quantity", "gamma", "--method", "ratio")
    assert code == 0 and "ratio" in text


def test_fit_long_polygon(capsys, tmp_path):
    out = tmp_path / "poly.csv"
    run(capsys, "enumerate", "--ensemble", "polygon", "--n-max", "18", "--fugacity", "3/2",
        "--long", "-o", str(out))
    code, text, _ = run(capsys, "fit", str(out), "--quantity", "gamma")
    assert code == 0 and text.count("gamma") == 2


def test_fit_errors(capsys, tmp_path):
    assert run(capsys, "fit")[0] == 2
    assert run(capsys, "fit", str(tmp_path / "missing.csv"))[0] == 3
    short = tmp_path / "short.csv"
    short.write_text("N,count\n1,4\n2,12\n")
    assert run(capsys, "fit", str(short))[0] == 1


def test_verify_list_and_suite(capsys):
    code, out, _ = run(capsys, "verify", "--list")
    assert code == 0 and "golden" in out.split()
    code, out, _ = run(capsys, "verify", "--suite", "golden", "--suite", "duality")
    assert code == 0 and out.splitlines()[-1] == "2/2 suites passed"
    assert run(capsys, "verify", "--suite", "nonsense")[0] == 2


def test_verify_reports_lbridge_failure(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lbridge_families", "--show", "1")
    assert code == 1 and out.startswith("FAIL lbridge_families")


def test_fit_acceptance_subset(capsys):
    code, out, _ = run(capsys, "fit", "--acceptance", "--criteria", "2", "3")
    assert code == 0
    assert [l.split(" [")[0] for l in out.splitlines()] == ["criterion 2", "criterion 3"]
