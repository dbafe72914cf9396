import json
import math

import pytest

from cwwr.cli import main


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out


class TestStatic:
    def test_zero_coupling_uniform(self, capsys):
        code, out = run_cli(["static", "--beta", "0", "--q", "1"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert payload["pressure"] == pytest.approx(0.0, abs=1e-9)
        assert len(payload["maximizers"]) == 1
        top = payload["maximizers"][0]
        assert top["nu_plus"] == pytest.approx(1.0 / 3.0, abs=1e-9)

    def test_supercritical_pair(self, capsys):
        code, out = run_cli(["static", "--beta", "6", "--q", "1", "--grid", "150"], capsys)
        payload = json.loads(out)
        assert len(payload["maximizers"]) == 2

    def test_requires_measure(self, capsys):
        code, _ = run_cli(["static", "--beta", "1"], capsys)
        assert code == 2

    def test_invalid_measure_rejected(self, capsys):
        code, _ = run_cli(["static", "--beta", "1", "--alpha", "0.9,0.9,0.9"], capsys)
        assert code == 2


class TestTransitionTimes:
    def test_low_beta_value(self, capsys):
        code, out = run_cli(["transition-times", "--beta", "2.8"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert float(payload["t1"]) == pytest.approx(0.313191, abs=1e-6)
        assert float(payload["t3"]) == pytest.approx(math.log(3.0) / 4.0, abs=1e-15)

    def test_gibbs_regime_is_parameter_error(self, capsys):
        code, _ = run_cli(["transition-times", "--beta", "1.5"], capsys)
        assert code == 2


class TestCsvOutputs:
    def test_bad_set_line_topology(self, tmp_path, capsys):
        out_file = tmp_path / "line.csv"
        code, _ = run_cli(
            ["--out", str(out_file), "bad-set", "--beta", "5", "--t", "0.30",
             "--res", "60"],
            capsys,
        )
        assert code == 0
        lines = out_file.read_text().splitlines()
        manifest = json.loads(lines[0].removeprefix("# manifest: "))
        assert manifest["topology"] == "line"
        assert lines[1] == "component_id,nu_minus,nu_zero,nu_plus"
        assert len(lines) > 3

    def test_determinism_byte_for_byte(self, tmp_path, capsys):
        files = []
        for name in ("a.csv", "b.csv"):
            path = tmp_path / name
            code, _ = run_cli(
                ["--out", str(path), "bad-set", "--beta", "4", "--t", "0.2",
                 "--res", "40"],
                capsys,
            )
            assert code == 0
            files.append(path.read_bytes())
        assert files[0] == files[1]

    def test_critical_curve_schema(self, tmp_path, capsys):
        path = tmp_path / "curve.csv"
        code, _ = run_cli(
            ["--out", str(path), "critical-curve", "--h", "0", "--l",
             str(math.log(2.0)), "--m-grid", "50"],
            capsys,
        )
        assert code == 0
        lines = path.read_text().splitlines()
        assert lines[1] == "m,beta,x,nu_minus,nu_zero,nu_plus"
        row = lines[2].split(",")
        assert len(row) == 6
        total = sum(float(v) for v in row[3:])
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_antiferro_sections(self, tmp_path, capsys):
        path = tmp_path / "af.csv"
        code, _ = run_cli(["--out", str(path), "antiferro", "--n", "50"], capsys)
        assert code == 0
        body = path.read_text().splitlines()[2:]
        sets = {line.split(",")[0] for line in body}
        assert sets == {"bifurcation", "maxwell"}

    def test_typical_curve_kinds_and_margin(self, tmp_path, capsys):
        path = tmp_path / "typ.csv"
        code, _ = run_cli(
            ["--out", str(path), "typical-curve", "--beta", "4", "--t", "0.2",
             "--margin-res", "60"],
            capsys,
        )
        assert code == 0
        lines = path.read_text().splitlines()
        manifest = json.loads(lines[0].removeprefix("# manifest: "))
        assert float(manifest["margin"]) > 0.0
        kinds = {line.split(",")[0] for line in lines[2:]}
        assert kinds == {"evolved", "static", "symmetric"}


class TestOracle:
    def test_conditional_table(self, capsys):
        code, out = run_cli(
            ["oracle", "--N", "400", "--beta", "2.5", "--t", "0.3",
             "--alpha-f", "0.2,0.3,0.5"],
            capsys,
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[1] == "eta1,oracle_probability,kernel_probability"
        rows = [line.split(",") for line in lines[2:]]
        total = sum(float(r[1]) for r in rows)
        assert total == pytest.approx(1.0, abs=1e-12)
        for r in rows:
            assert abs(float(r[1]) - float(r[2])) < 0.02

    def test_probe_csv(self, capsys):
        code, out = run_cli(
            ["oracle", "--beta", "2.8", "--t", "0.35", "--alpha-f", "0.5,0,0.5",
             "--probe", "--n-list", "400,800"],
            capsys,
        )
        assert code == 0
        lines = out.splitlines()
        manifest = json.loads(lines[0].removeprefix("# manifest: "))
        assert manifest["verdict"] == "distinct"
        assert len(lines) == 4


class TestExponentsAndMaxwell:
    def test_exponents_json(self, capsys):
        code, out = run_cli(["exponents", "--q", "1"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert float(payload["magnetization_exponent"]) == pytest.approx(0.5, abs=0.02)
        assert float(payload["field_exponent"]) == pytest.approx(1.0 / 3.0, abs=0.02)

    def test_maxwell_json(self, capsys):
        code, out = run_cli(["maxwell", "--beta", "-16"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert float(payload["alpha0"]) == pytest.approx(0.982014, abs=1e-6)
        assert len(payload["maxima"]) == 2

    def test_maxwell_rejects_single_hump(self, capsys):
        code, _ = run_cli(["maxwell", "--beta", "-4"], capsys)
        assert code == 2
