import numpy as np
import pytest

from kernelwedge.cli import main
from kernelwedge.config import ENV_PREFIX, Settings
from kernelwedge.fileio import DATA_DIR, parse_completion, parse_matrix, parse_vector


def data(name):
    return str(DATA_DIR / f"{name}.txt")


RUNNING = ["--matrix", data("running_example")]


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in Settings.model_fields:
        monkeypatch.delenv(f"{ENV_PREFIX}{name.upper()}", raising=False)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify(capsys):
    assert run(capsys, "classify", *RUNNING) == (0, "StrictlySubstochastic\n", "")
    code, out, _ = run(capsys, "classify", "--matrix", data("stochastic"))
    assert (code, out) == (0, "Stochastic\n")


def test_check_cone_accepts(capsys):
    code, out, _ = run(capsys, "check-cone", *RUNNING, "--vector", data("ones"))
    assert code == 0
    assert out.startswith("ACCEPT\nslack 2\n")


def test_check_cone_rejects(capsys):
    code, out, _ = run(capsys, "check-cone", *RUNNING, "--vector", data("not_positive"))
    assert code == 1
    assert out == "REJECT f is not strictly positive at index 2\n"


def test_complete(capsys):
    code, out, _ = run(capsys, "complete", *RUNNING, "--vector", data("ones"))
    assert code == 0
    assert out.splitlines()[-1] == "completion lambda=1"
    A, lam = parse_completion(out)
    assert lam == 1.0
    np.testing.assert_allclose(A, [[0.55, 0.45], [0.45, 0.55]], rtol=1e-14)


def test_complete_with_stochastic_operator_is_an_error(capsys):
    code, out, err = run(capsys, "complete", "--matrix", data("stochastic"), "--vector", data("ones"))
    assert code == 2
    assert out == ""
    assert err.startswith("error:")


def test_combine(capsys):
    argv = ["combine", *RUNNING, "--vector", data("ones"), "--vector", data("image_of_ones"), "--alpha", "0.5", "0.5"]
    code, out, _ = run(capsys, *argv)
    assert code == 0
    np.testing.assert_allclose(parse_vector(out), np.sqrt([0.3, 0.7]), rtol=1e-14)


def test_combine_rejects_foreign_vector(capsys):
    argv = ["combine", *RUNNING, "--vector", data("ones"), "--vector", data("not_positive"), "--alpha", "0.5", "0.5"]
    code, out, _ = run(capsys, *argv)
    assert code == 1
    assert out.startswith("REJECT vector 2")


def test_spectral(capsys):
    code, out, _ = run(capsys, "spectral", *RUNNING)
    assert code == 0
    fields = dict(item.split("=") for item in out.split())
    assert float(fields["rho"]) == pytest.approx(0.5, abs=1e-9)
    assert fields["converged"] == "true"
    assert fields["method"] == "power"


def test_resolvent(capsys):
    code, out, _ = run(capsys, "resolvent", *RUNNING, "--vector", data("ones"), "--lambda", "1", "--cross-check")
    assert code == 0
    np.testing.assert_allclose(parse_vector(out), [14 / 9, 22 / 9], rtol=1e-12)


def test_resolvent_below_spectral_radius(capsys):
    code, out, err = run(capsys, "resolvent", *RUNNING, "--vector", data("ones"), "--lambda", "0.4")
    assert code == 2
    assert "spectral radius" in err


def test_exp(capsys):
    code, out, _ = run(capsys, "exp", *RUNNING, "--vector", data("ones"))
    assert code == 0
    assert np.all(parse_vector(out) > 1.0)


def test_leontief_and_impact(capsys):
    economy = ["--matrix", data("leontief")]
    code, out, _ = run(capsys, "leontief", *economy, "--vector", data("ones"))
    assert code == 0
    np.testing.assert_allclose(parse_vector(out), [2.0, 2.0], rtol=1e-12)
    code, out, _ = run(capsys, "impact", *economy)
    assert code == 0
    np.testing.assert_allclose(parse_matrix(out), [[1.5, 0.5], [2 / 3, 4 / 3]], rtol=1e-12)


def test_pagerank(capsys):
    code, out, _ = run(capsys, "pagerank", "--matrix", data("pagerank"), "--vector", data("ones"))
    assert code == 0
    np.testing.assert_allclose(parse_vector(out), [20 / 11, 20 / 11], rtol=1e-12)


def test_kernel_demo(capsys):
    code, out, _ = run(capsys, "kernel-demo", "--grid-n", "8")
    assert code == 0
    A, lam = parse_completion(out)
    assert A.shape == (8, 8)
    np.testing.assert_allclose(A, 1.0, rtol=1e-14)
    assert lam == pytest.approx(0.5, rel=1e-14)


def test_refine(capsys):
    code, out, _ = run(capsys, "refine", "--kernel", "square", "--n", "4", "8", "16")
    assert code == 0
    lines = out.splitlines()
    assert [line.split()[0] for line in lines[:3]] == ["n=4", "n=8", "n=16"]
    ratios = [float(r) for r in lines[-1].split()[1:]]
    assert lines[-1].startswith("ratios ")
    assert ratios == pytest.approx([4.0, 4.0], rel=1e-6)


def test_norm(capsys, tmp_path):
    vector = tmp_path / "x.txt"
    vector.write_text("vector 2\n3 4\n")
    code, out, _ = run(capsys, "norm", "--vector", str(vector), "--p", "2")
    assert code == 0
    assert out.splitlines() == ["L1w=7", "LInfW=4", "LpW(2)=5"]


def test_verify(capsys):
    argv = ["verify", "--seed", "5", "--trials", "2", "--n-max", "5", "--property", "sum_split", "--property", "wedge_closure"]
    code, out, _ = run(capsys, *argv)
    assert code == 0
    lines = out.splitlines()
    assert [line.split()[:3] for line in lines] == [
        ["PASS", "sum_split", "trials=2"],
        ["PASS", "wedge_closure", "trials=2"],
    ]
    assert run(capsys, *argv)[1] == out


def test_parse_error_reports_line(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("matrix 2 2\n0.1 0.2\n0.3 x\n")
    code, out, err = run(capsys, "classify", "--matrix", str(bad))
    assert code == 2
    assert f"{bad}:3:" in err


def test_shape_mismatch(capsys, tmp_path):
    vector = tmp_path / "v3.txt"
    vector.write_text("vector 3\n1 1 1\n")
    code, _, err = run(capsys, "check-cone", *RUNNING, "--vector", str(vector))
    assert code == 2
    assert "3 entries" in err


@pytest.mark.parametrize("argv", [[], ["classify"], ["no-such-command"], ["verify", "--trials", "many"]])
def test_usage_errors(capsys, argv):
    assert main(argv) == 2


def test_help(capsys):
    assert main(["--help"]) == 0
    assert "check-cone" in capsys.readouterr().out


def test_invalid_setting(capsys, monkeypatch):
    monkeypatch.setenv("KERNELWEDGE_TRIALS", "0")
    code, _, err = run(capsys, "classify", *RUNNING)
    assert code == 2
    assert "KERNELWEDGE_" in err
