import csv
import json
import subprocess
import sys

import pytest

from elastocap import cli
from elastocap import config as cfgmod


def write_config(tmp_path, text):
    path = tmp_path / "run.toml"
    path.write_text(text)
    return path


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


SMALL_GRID = """
[grid]
x = [0.9, 1.1]
y = [-0.1, 0.1]
nx = 3
ny = 3
quantities = ["u", "sig_xy"]
"""


class TestField:
    def test_three_by_three_grid(self, tmp_path):
        cfg = write_config(tmp_path, SMALL_GRID)
        assert cli.main(["field", "--config", str(cfg), "--out", str(tmp_path / "o")]) == 0
        u = read_csv(tmp_path / "o" / "u.csv")
        s = read_csv(tmp_path / "o" / "sig_xy.csv")
        assert u[0] == ["x", "y", "re", "im"]
        assert s[0] == ["x", "y", "value"]
        assert len(u) == len(s) == 10
        # y-major, then x
        coords = [(float(r[0]), float(r[1])) for r in u[1:]]
        assert coords == sorted(coords, key=lambda p: (p[1], p[0]))
        manifest = json.loads((tmp_path / "o" / "manifest.json").read_text())
        assert manifest["rows_per_file"] == 9
        assert manifest["excluded_points"] == []
        assert {"inputs", "versions", "derived", "files"} <= set(manifest)

    def test_boundary_column(self, tmp_path):
        cfg = write_config(tmp_path, """
[problem]
sigma_l = 1.2
mu = 2.0
b = 0.5
[grid]
x = [0.0, 0.2]
y = [-3.0, 3.0]
nx = 2
ny = 31
quantities = ["u"]
""")
        out = tmp_path / "o"
        assert cli.main(["field", "--config", str(cfg), "--out", str(out)]) == 0
        a = json.loads((out / "manifest.json").read_text())["derived"]["a"]
        rows = [list(map(float, r)) for r in read_csv(out / "u.csv")[1:]]
        edge = [r for r in rows if r[0] == 0.0]
        assert len(edge) == 30  # y = 0 is excluded
        for x, y, re, im in edge:
            assert re == pytest.approx(-a / (abs(y) + 0.5), rel=1e-12)
            assert abs(im) <= 1e-12 * a

    def test_rerun_is_byte_identical(self, tmp_path):
        cfg = write_config(tmp_path, SMALL_GRID.replace("nx = 3", "nx = 7"))
        for name in ("a", "b"):
            assert cli.main(["field", "--config", str(cfg), "--out", str(tmp_path / name)]) == 0
        for q in ("u.csv", "sig_xy.csv"):
            assert (tmp_path / "a" / q).read_bytes() == (tmp_path / "b" / q).read_bytes()

    def test_excluded_origin_recorded(self, tmp_path):
        cfg = write_config(tmp_path, """
[grid]
x = [0.0, 1.0]
y = [-1.0, 1.0]
nx = 3
ny = 3
quantities = ["eps_xx"]
""")
        out = tmp_path / "o"
        assert cli.main(["field", "--config", str(cfg), "--out", str(out)]) == 0
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["excluded_points"] == [["0", "0"]]
        assert len(read_csv(out / "eps_xx.csv")) == 9

    def test_no_negative_zero(self, tmp_path):
        cfg = write_config(tmp_path, SMALL_GRID)
        cli.main(["field", "--config", str(cfg), "--out", str(tmp_path)])
        text = (tmp_path / "u.csv").read_text()
        assert ",-0," not in text and not text.rstrip().endswith(",-0")


class TestErrors:
    def test_infeasible_load(self, tmp_path, capsys):
        cfg = write_config(tmp_path, "[problem]\nsigma_l = 2.0\nsigma_s = 1.0\n")
        assert cli.main(["verify", "--config", str(cfg), "--out", str(tmp_path)]) == 2
        assert "sigma_l" in capsys.readouterr().err

    @pytest.mark.parametrize("text", [
        "[grid]\nexclusion_radius = 0.0\n",
        "[grid]\nexclusion_radius = -1.0\n",
        "[grid]\nbogus = 1\n",
        "[nonsense]\n",
        "[grid]\nquantities = [\"sig_rr\"]\n",
        "[quadrature]\neps = [1e-3, 1e-2]\n",
        "[problem]\na_prime = 5.0\n",
        "[grid\n",
    ])
    def test_bad_config_exit_2(self, tmp_path, text):
        cfg = write_config(tmp_path, text)
        assert cli.main(["field", "--config", str(cfg), "--out", str(tmp_path)]) == 2

    def test_missing_config_file(self, tmp_path):
        assert cli.main(["field", "--config", str(tmp_path / "nope.toml")]) == 2

    def test_unknown_suite(self, tmp_path):
        assert cli.main(["verify", "--only", "nope", "--out", str(tmp_path)]) == 2

    @pytest.mark.parametrize("block", [
        'patch = "sphere"\nparams = { R = 1.0 }\npoints = [[0.0, 0.5]]',
        'patch = "graph"\nparams = { coeffs = [[0.0, 1.0], [1.0, 0.0]] }\npoints = [[5.0, 0.5]]',
    ])
    def test_surface_domain_error_exit_3(self, tmp_path, block):
        cfg = write_config(tmp_path, "[surface]\n" + block + "\n")
        code = cli.main(["verify", "--config", str(cfg), "--only", "line", "--out", str(tmp_path)])
        assert code == 3

    def test_surface_missing_parameter_exit_2(self, tmp_path):
        cfg = write_config(tmp_path, '[surface]\npatch = "sphere"\n')
        assert cli.main(["verify", "--config", str(cfg), "--only", "line", "--out", str(tmp_path)]) == 2


class TestVerify:
    def test_single_suite(self, tmp_path, capsys):
        assert cli.main(["verify", "--only", "potentials", "--out", str(tmp_path)]) == 0
        rows = read_csv(tmp_path / "summary.csv")
        assert rows[0] == ["criterion", "name", "status", "value", "tolerance", "detail"]
        assert [r[0] for r in rows[1:]] == ["1", "2"]
        assert all(r[2] == "PASS" for r in rows[1:])
        assert capsys.readouterr().out.count("[PASS]") == 2

    def test_failure_names_criterion(self, tmp_path, capsys):
        code = cli.main(["verify", "--only", "potentials", "--tolerance-scale", "1e-30",
                         "--out", str(tmp_path)])
        assert code == 1
        err = capsys.readouterr().err
        assert "failing criterion 1" in err and "failing criterion 2" in err

    def test_one_entry_schedule_skips(self, tmp_path):
        cfg = write_config(tmp_path, "[quadrature]\neps = [1e-3]\n")
        code = cli.main(["verify", "--config", str(cfg), "--only", "6,8,9", "--out", str(tmp_path)])
        assert code == 0
        status = {r[0]: r[2] for r in read_csv(tmp_path / "summary.csv")[1:]}
        assert status == {"6": "SKIP", "8": "SKIP", "9": "SKIP"}

    def test_surface_and_line_blocks(self, tmp_path):
        cfg = write_config(tmp_path, """
[surface]
patch = "sphere"
params = { R = 2.0 }
stress = { isotropic = 3.0 }
points = [[0.7, 1.1]]
pressure = -3.0

[[line]]
phi_f = 1.0471975511965976
phi_fp = 2.0943941023931953
gamma_bf = 1.0
gamma_bfp = 1.5
gamma_ffp = 1.0
""")
        assert cli.main(["verify", "--config", str(cfg), "--only", "line", "--out", str(tmp_path)]) == 0
        surf = read_csv(tmp_path / "surface_checks.csv")
        assert len(surf) == 2
        line = read_csv(tmp_path / "line_checks.csv")
        assert line[0][:2] == ["index", "line_force"]
        assert abs(float(line[1][line[0].index("classical_young")])) <= 1e-12

    def test_default_config_round_trip(self, capsys):
        assert cli.main(["default-config"]) == 0
        cfg = cfgmod.loads(capsys.readouterr().out)
        assert cfg == cfgmod.RunConfig()

    def test_console_entry_point(self, tmp_path):
        proc = subprocess.run([sys.executable, "-m", "elastocap.cli", "verify", "--only", "line",
                               "--out", str(tmp_path)], capture_output=True, text=True)
        assert proc.returncode == 0, proc.stderr
        assert "[PASS] criterion 12" in proc.stdout
