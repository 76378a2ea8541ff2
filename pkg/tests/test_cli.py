import json

import pytest

from onerel.cli import dispatch, render


@pytest.fixture
def trefoil_file(tmp_path):
    path = tmp_path / "trefoil.grp"
    path.write_text("gens: a, b\nrels: a^2*b^-3\n")
    return str(path)


@pytest.fixture
def bs_file(tmp_path):
    path = tmp_path / "bs.grp"
    path.write_text("gens: a, t\nrels: t*a*t^-1*a^-2\n")
    return str(path)


@pytest.fixture
def theta_file(tmp_path):
    path = tmp_path / "theta.graph"
    path.write_text("u v e1\nu v e2\nu v e3\n")
    return str(path)


class TestDispatch:
    def test_fox(self, trefoil_file):
        status, report, text = dispatch(
            ["fox", "--file", trefoil_file, "--word", "a*b*a^-1", "--gen", "a"])
        assert status == 0
        assert text == "1 - a*b*a^-1"
        assert report["results"]["derivative"] == "1 - a*b*a^-1"

    def test_seqcheck(self):
        status, report, text = dispatch(
            ["seqcheck", "--a", "2", "--b", "3", "--seq", "0,3,1,4,0"])
        assert status == 0
        assert "LargeEntry at index 3" in text
        assert report["results"]["verdict"] == "LargeEntry"

    def test_verify_example(self):
        status, report, text = dispatch(["verify-example", "--n", "2"])
        assert status == 0
        assert report["results"]["exponent"] == 16
        assert report["results"]["verdict"] is True

    def test_jacobian_to_abelian(self, trefoil_file):
        status, report, _ = dispatch(
            ["jacobian", "--file", trefoil_file, "--to-abelian", "a=3,b=2"])
        assert status == 0
        assert report["results"]["rows"] == [["1 + t^3", "-1 - t^2 - t^4"]]

    def test_trapezoid(self, trefoil_file):
        status, report, text = dispatch(
            ["trapezoid", "--file", trefoil_file, "--to-abelian", "a=3,b=2",
             "--certify", "orderedOracle"])
        assert status == 0
        assert text.startswith("rows: [0] cols: [0, 1] diag: [1]")
        assert report["results"]["all_non_engulfing"] is True

    def test_hierarchy(self, bs_file):
        status, report, text = dispatch(["hierarchy", "--file", bs_file])
        assert status == 0
        assert report["results"]["leaves"] == ["free"]
        assert "[hnn]" in text

    def test_complex(self, trefoil_file):
        status, report, _ = dispatch(["complex", "--file", trefoil_file])
        assert status == 0
        assert report["results"]["composite_zero"] is True
        assert report["results"]["homology"]["h1_free_rank"] == 1

    def test_upcheck(self):
        status, report, _ = dispatch(
            ["upcheck", "--oracle", "z", "--A", "0,1", "--B", "0,5",
             "--k", "2", "--side", "left"])
        assert status == 0
        assert report["results"]["verdict"] is True

    def test_engulf_cyclic(self):
        status, report, text = dispatch(
            ["engulf", "--cyclic", "2", "--coeffs", "1,1", "--field", "3"])
        assert status == 0
        assert report["results"]["status"] == "witness"
        assert text == "WitnessFound: g"

    def test_weinbaum(self, tmp_path):
        path = tmp_path / "p.grp"
        path.write_text(
            "gens: a, b\nrels: a^2*b^-3\n"
            "quotient: a -> (1 4 7 10)(2 5 8 11)(3 6 9 12), "
            "b -> (1 3 5 7 9 11)(2 4 6 8 10 12)\n")
        status, report, _ = dispatch(["weinbaum", "--file", str(path)])
        assert status == 0
        assert report["results"]["certified"] == report["results"]["total"] == 16

    def test_lift(self, theta_file):
        status, report, text = dispatch(
            ["lift", "--graph", theta_file, "--h-edges", "e1",
             "--cycle", "e1:1,e2:-1"])
        assert status == 0
        assert report["results"]["unit"] == "1"
        assert "embedded cycle: e1 e2^-1" in text

    def test_usage_error_exit_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            dispatch(["frobnicate"])
        assert exc.value.code == 2

    def test_domain_error_exit_one(self):
        status, report, text = dispatch(
            ["seqcheck", "--a", "2", "--b", "2", "--seq", "0,0,0"])
        assert status == 1
        assert "error" in report
        assert text.startswith("error:")


class TestRendering:
    def test_json_deterministic(self, trefoil_file):
        argv = ["complex", "--file", trefoil_file, "--json"]
        outputs = set()
        for _ in range(2):
            status, report, text = dispatch(argv)
            outputs.add(render(report, "json"))
        assert len(outputs) == 1

    def test_json_round_trip(self, bs_file):
        status, report, _ = dispatch(["hierarchy", "--file", bs_file, "--json"])
        blob = render(report, "json")
        assert json.loads(blob) == report

    def test_schema_field(self):
        _, report, _ = dispatch(["verify-example", "--n", "1"])
        assert report["schema"] == 1
