import csv
import io
import json
import math
import subprocess
import sys

import pytest

from gammasep.cli import main
from gammasep.distribution import GammaPair
from gammasep.metrics import ks_statistic

GENERAL = ["--kp", "2", "--tp", "1", "--kq", "1", "--tq", "2"]


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--json")
    assert code == 0
    return json.loads(text)


class TestMetrics:
    def test_identical_text(self):
        code, text = run("metrics", "--kp", "2", "--tp", "3", "--kq", "2", "--tq", "3")
        assert code == 0
        fields = dict(line.split(None, 1) for line in text.splitlines())
        assert fields["case"] == "Identical"
        for key in ("d_kl_pq", "d_kl_qp", "d_skl", "d_ks", "d_eks", "d_js"):
            assert float(fields[key]) == 0.0

    def test_general_json(self):
        doc = run_json("metrics", *GENERAL)
        assert set(doc) == {"d_kl_pq", "d_kl_qp", "d_skl", "d_ks", "d_ks_argmax", "d_eks",
                            "d_js", "intersections", "case", "tangent"}
        assert doc["d_eks"] > doc["d_ks"]
        assert len(doc["intersections"]) == 2
        assert doc["case"] == "General" and doc["tangent"] is False

    def test_invalid_shape(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["metrics", "--kp", "-1", "--tp", "1", "--kq", "1", "--tq", "1"])
        assert exc.value.code == 2
        assert "shape must be positive" in capsys.readouterr().err

    def test_missing_flag(self):
        with pytest.raises(SystemExit) as exc:
            main(["metrics", "--kp", "1"])
        assert exc.value.code == 2


class TestIntersections:
    def test_equal_shape(self):
        doc = run_json("intersections", "--kp", "1", "--tp", "1", "--kq", "1", "--tq", "2")
        assert doc["case"] == "EqualShapeDistinctScale"
        assert doc["points"] == pytest.approx([1.3862944], abs=1e-7)
        assert doc["max_residual"] <= 1e-12

    def test_equal_scale(self):
        doc = run_json("intersections", "--kp", "1", "--tp", "1", "--kq", "2", "--tq", "1")
        assert doc["points"] == pytest.approx([1.0], abs=1e-12)

    def test_general(self):
        doc = run_json("intersections", *GENERAL)
        assert doc["points"] == pytest.approx([0.7148059, 4.3065847], abs=1e-7)
        assert doc["alpha_beta"] == pytest.approx(-0.25, rel=1e-14)
        assert len(doc["residuals"]) == 2

    def test_text(self):
        code, text = run("intersections", *GENERAL)
        assert code == 0
        assert text.count("x*") == 2 and "residual" in text

    def test_identical_text(self):
        code, text = run("intersections", "--kp", "2", "--tp", "3", "--kq", "2", "--tq", "3")
        assert "none" in text


def read_curve(*argv):
    code, text = run("curve", *argv)
    assert code == 0
    rows = list(csv.reader(io.StringIO(text)))
    return rows[0], [[float(v) for v in row] for row in rows[1:]]


class TestCurve:
    def test_two_points(self):
        header, rows = read_curve(*GENERAL, "--points", "2", "--xmax", "5")
        assert header == ["x", "pdf_p", "pdf_q", "cdf_p", "cdf_q", "abs_cdf_diff"]
        assert [r[0] for r in rows] == [0.0, 5.0]

    def test_identical_pair(self):
        _, rows = read_curve("--kp", "2", "--tp", "3", "--kq", "2", "--tq", "3")
        assert len(rows) == 1000
        assert max(r[5] for r in rows) <= 1e-15

    def test_auto_range_tracks_ks(self):
        _, rows = read_curve(*GENERAL)
        d_ks, _ = ks_statistic(GammaPair.from_values(2, 1, 1, 2))
        assert abs(max(r[5] for r in rows) - d_ks) <= 1e-3
        # abs_cdf_diff is exactly |cdf_p - cdf_q| as written
        assert all(r[5] == abs(r[3] - r[4]) for r in rows)

    def test_full_precision(self):
        code, text = run("curve", *GENERAL, "--points", "3", "--xmax", "1")
        row = text.splitlines()[2].split(",")
        assert float(row[0]) == 0.5
        assert float(row[1]) == 0.5 * math.exp(-0.5)

    def test_singular_pdf_at_origin(self):
        _, rows = read_curve("--kp", "0.5", "--tp", "1", "--kq", "2", "--tq", "1", "--points", "3")
        assert rows[0][1] == math.inf

    @pytest.mark.parametrize("extra", [["--points", "1"], ["--xmax", "-3"], ["--xmax", "abc"]])
    def test_invalid(self, extra):
        with pytest.raises(SystemExit) as exc:
            main(["curve", *GENERAL, *extra])
        assert exc.value.code == 2


class TestThreshold:
    def test_text(self):
        assert run("threshold", "--n", "100", "--m", "100", "--alpha", "0.05") == (0, "0.1920646\n")

    def test_json(self):
        doc = run_json("threshold", "--n", "100", "--m", "100", "--alpha", "0.05")
        assert doc["threshold"] == pytest.approx(0.1920645582639841, rel=1e-14)
        assert (doc["n"], doc["m"], doc["alpha"]) == (100, 100, 0.05)

    def test_bad_alpha(self):
        with pytest.raises(SystemExit) as exc:
            main(["threshold", "--n", "100", "--m", "100", "--alpha", "1.5"])
        assert exc.value.code == 2


class TestVerify:
    EDGE = ["verify", "--trials", "1", "--kmin", "2", "--kmax", "2", "--tmin", "3", "--tmax", "3"]

    def test_forced_identical_config(self):
        code, text = run(*self.EDGE, "--json")
        assert code == 0
        doc = json.loads(text)
        assert doc["passed"]
        assert all(c["max_deviation"] == 0.0 for c in doc["checks"])

    def test_deterministic(self):
        args = ["verify", "--trials", "3", "--seed", "7"]
        assert run(*args) == run(*args)

    def test_bad_range(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--kmin", "5", "--kmax", "1"])
        assert exc.value.code == 2

    def test_bad_trials(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--trials", "0"])
        assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gammasep", "threshold", "--n", "10", "--m", "10",
                           "--alpha", "0.1", "--json"], capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["threshold"] > 0.0
    assert proc.stderr == ""
