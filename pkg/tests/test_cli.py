import csv
import math
import time
import xml.etree.ElementTree as ET

import pytest

from signlab.cli import main, parse_degrees

SVG = "{http://www.w3.org/2000/svg}"


def read_csv(path):
    with open(path) as fh:
        return list(csv.DictReader(line for line in fh if not line.startswith("#")))


def test_parse_degrees():
    assert parse_degrees("5,1,5,3") == [1, 3, 5]
    assert parse_degrees("1..4") == [1, 2, 3, 4]
    assert parse_degrees("10..30:10") == [10, 20, 30]
    assert parse_degrees("50..3200*2") == [50, 100, 200, 400, 800, 1600, 3200]


def test_roots_command(tmp_path):
    assert main(["roots", "--degrees", "1,2", "--out", str(tmp_path)]) == 0
    rows = read_csv(tmp_path / "roots_n1.csv")
    assert len(rows) == 1 and rows[0]["j"] == "1"
    assert float(rows[0]["theta_j"]) == pytest.approx(math.pi / 2, abs=1e-15)
    bounds = read_csv(tmp_path / "bounds_n2.csv")
    assert len(bounds) == 2 and all(b["szego"] == "pass" for b in bounds)


def test_roots_json(tmp_path):
    assert main(["roots", "--degrees", "3", "--format", "json", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "roots_n3.json").exists()


def test_roots_2000_runtime(tmp_path):
    t0 = time.perf_counter()
    assert main(["roots", "--degrees", "2000", "--out", str(tmp_path)]) == 0
    assert time.perf_counter() - t0 < 5
    assert len(read_csv(tmp_path / "roots_n2000.csv")) == 2000


def test_determinism(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert main(["sign-sum", "--degrees", "50..800*2", "--interval", "0.3,1.2",
                     "--function", "cos", "--jobs", "3", "--out", str(d)]) == 0
    for name in ("sign_sum.csv", "sign_sum.svg"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_sign_sum_n2(tmp_path):
    assert main(["sign-sum", "--degrees", "2", "--interval", "0.5,2.5", "--out", str(tmp_path)]) == 0
    [row] = read_csv(tmp_path / "sign_sum.csv")
    assert float(row["theorem1_deviation"]) == pytest.approx(0.2309594, abs=1e-7)


def test_sign_sum_empty_interval(tmp_path, caplog):
    assert main(["sign-sum", "--degrees", "1", "--interval", "0.1,0.2", "--out", str(tmp_path)]) == 0
    [row] = read_csv(tmp_path / "sign_sum.csv")
    assert row["root_count"] == "0" and float(row["sum"]) == 0.0


def test_sign_sum_chart_points_in_csv(tmp_path):
    assert main(["sign-sum", "--degrees", "50..3200*2", "--interval", "0.3,1.2", "--out", str(tmp_path)]) == 0
    rows = read_csv(tmp_path / "sign_sum.csv")
    plotted = [r for r in rows if r["parity"] == "even" and r["theorem1_deviation"]]
    svg = ET.parse(tmp_path / "sign_sum.svg").getroot()
    assert len(svg.findall(f"{SVG}circle")) == len(plotted)


def test_sign_sum_slope_check(tmp_path):
    args = ["sign-sum", "--degrees", "50..3200*2", "--interval", "0.3,1.2", "--out", str(tmp_path)]
    assert main(args + ["--expect-slope=-1.4,-0.6"]) == 0
    assert main(args + ["--expect-slope=0.5,1.0"]) == 1


def test_sign_sum_odd_only_omits_chart(tmp_path):
    # [0.3, 1.2] holds an odd number of roots for n = 100
    assert main(["sign-sum", "--degrees", "100", "--interval", "0.3,1.2", "--out", str(tmp_path)]) == 0
    assert not (tmp_path / "sign_sum.svg").exists()


def test_contour_command(tmp_path):
    assert main(["contour", "--degrees", "1,2", "--out", str(tmp_path)]) == 0
    rows = read_csv(tmp_path / "contour_summary.csv")
    assert float(rows[1]["integral_re"]) == pytest.approx(1.2309594, abs=1e-7)
    assert float(rows[0]["mismatch"]) <= 1e-10
    assert main(["contour", "--degrees", "200", "--interval", "0.3,1.2", "--mode", "guess",
                 "--out", str(tmp_path)]) == 0


def test_laplace_command(tmp_path):
    assert main(["laplace", "--degrees", "100", "--out", str(tmp_path)]) == 0
    assert len(read_csv(tmp_path / "laplace_n100.csv")) == 33


def test_laplace_sweep_charts(tmp_path):
    assert main(["laplace", "--degrees", "50..1600*2", "--out", str(tmp_path)]) == 0
    for name in ("laplace_E.svg", "laplace_E_prime.svg"):
        ET.parse(tmp_path / name)
    with open(tmp_path / "laplace_rates.csv") as fh:
        assert fh.readline().startswith("# max_E: slope=")


def test_laplace_stieltjes_row(tmp_path):
    main(["laplace", "--degrees", "20", "--stieltjes", "--theta", str(math.pi / 3), "--out", str(tmp_path)])
    [row] = read_csv(tmp_path / "stieltjes.csv")
    assert float(row["ratio"]) == pytest.approx(float(row["stieltjes_E"]) / float(row["direct_E"]))


def test_sphere_command(tmp_path):
    assert main(["sphere", "--degrees", "2,7", "--out", str(tmp_path)]) == 0
    rows = read_csv(tmp_path / "sphere.csv")
    assert float(rows[0]["ratio"]) == pytest.approx(math.sqrt(3) - 1, abs=1e-10)
    assert float(rows[1]["ratio"]) == pytest.approx(1.0, abs=1e-12)
    assert main(["sphere", "--degrees", "5", "--m", "3", "--azimuthal", "sine", "--out", str(tmp_path)]) == 0
    assert main(["sphere", "--degrees", "50..800*2", "--out", str(tmp_path)]) == 0
    ET.parse(tmp_path / "sphere.svg")


def test_riemann_command(tmp_path):
    assert main(["riemann", "--degrees", "10,11,100,1000,10000", "--out", str(tmp_path)]) == 0
    assert len(read_csv(tmp_path / "riemann.csv")) == 5


def test_env_default_out(tmp_path, monkeypatch):
    monkeypatch.setenv("SIGNLAB_OUT", str(tmp_path / "env"))
    assert main(["riemann", "--degrees", "10"]) == 0
    assert (tmp_path / "env" / "riemann.csv").exists()


def test_bad_input_exit_status(tmp_path):
    assert main(["sphere", "--degrees", "2", "--m", "3", "--out", str(tmp_path)]) == 2
    with pytest.raises(SystemExit):
        main(["sign-sum", "--degrees", "2", "--interval", "2,1", "--out", str(tmp_path)])
