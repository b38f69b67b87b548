import json

import pytest

from lorenz_hulls.cli import main
from lorenz_hulls.measures import measure_from_json_dict

SQUARE = {"dim": 2, "atoms": [[1.0, 0.0], [0.0, 1.0]], "complex": False}
DOUBLE = {"dim": 2, "atoms": [[2.0, 0.0], [0.0, 2.0]], "complex": False}
INCOME = {"dim": 2, "atoms": [[0.5, 0.25], [0.5, 0.75]], "complex": False}


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, payload in ("square", SQUARE), ("double", DOUBLE), ("income", INCOME):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(payload))
        paths[name] = str(p)
    paths["empty"] = str(tmp_path / "empty.json")
    (tmp_path / "empty.json").write_text(json.dumps({"dim": 2, "atoms": []}))
    paths["bad"] = str(tmp_path / "bad.json")
    (tmp_path / "bad.json").write_text("{nope")
    paths["d3"] = str(tmp_path / "d3.json")
    (tmp_path / "d3.json").write_text(json.dumps({"dim": 3, "atoms": [[1, 0, 0]]}))
    paths["tmp"] = tmp_path
    return paths


class TestHullCommand:
    def test_square_vertices(self, files, capsys):
        assert main(["hull", "-i", files["square"]]) == 0
        rows = capsys.readouterr().out.strip().splitlines()
        assert rows == ["0.0,0.0", "1.0,0.0", "1.0,1.0", "0.0,1.0"]

    def test_empty_measure_single_row(self, files, capsys):
        assert main(["hull", "-i", files["empty"]]) == 0
        assert capsys.readouterr().out.strip() == "0.0,0.0"

    def test_reach_table_in_3d(self, files, capsys):
        assert main(["hull", "-i", files["d3"], "--dirs", "5"]) == 0
        rows = capsys.readouterr().out.strip().splitlines()
        assert len(rows) == 5
        assert all(len(r.split(",")) == 4 for r in rows)

    def test_malformed_json_exit_2(self, files, capsys):
        assert main(["hull", "-i", files["bad"]]) == 2


class TestProductAndSum:
    def test_product_identity(self, files, tmp_path, capsys):
        ident = tmp_path / "ident.json"
        ident.write_text(json.dumps({"dim": 2, "atoms": [[1.0, 1.0]]}))
        assert main(["product", files["square"], str(ident)]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["atoms"] == [[1.0, 0.0], [0.0, 1.0]]

    def test_sum_concatenates(self, files, capsys):
        assert main(["sum", files["square"], files["double"]]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["atoms"] == [[1, 0], [0, 1], [2, 0], [0, 2]]

    def test_dimension_mismatch_exit_2(self, files, capsys):
        assert main(["product", files["square"], files["d3"]]) == 2

    def test_round_trip_through_files(self, files, tmp_path, capsys):
        out = tmp_path / "prod.json"
        assert main(["product", files["square"], files["double"], "-o", str(out)]) == 0
        measure = measure_from_json_dict(json.loads(out.read_text()))
        assert measure.atom_count == 4


class TestIncludeCommand:
    def test_included_exit_0(self, files, capsys):
        assert main(["include", files["square"], files["double"]]) == 0
        assert json.loads(capsys.readouterr().out)["verdict"] == "included"

    def test_excluded_exit_1(self, files, capsys):
        assert main(["include", files["double"], files["square"]]) == 1
        payload = json.loads(capsys.readouterr().out)
        assert payload["verdict"] == "excluded"
        assert payload["witness"] is not None


class TestHausdorffCommand:
    def test_identical_files(self, files, capsys):
        assert main(["hausdorff", files["square"], files["square"]]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["distance"] == 0.0
        assert payload["mode"] == "exact"

    def test_known_distance(self, files, capsys):
        assert main(["hausdorff", files["square"], files["double"]]) == 0
        assert json.loads(capsys.readouterr().out)["distance"] == pytest.approx(2.0)


class TestGiniAndCurve:
    def test_gini_fixture_formatting(self, files, capsys):
        assert main(["gini", "-i", files["income"]]) == 0
        assert capsys.readouterr().out == "0.250000000000\n"

    def test_curve_emits_csv_and_svg(self, files, tmp_path):
        out = tmp_path / "curve.csv"
        assert main(["curve", "-i", files["income"], "-o", str(out)]) == 0
        rows = out.read_text().strip().splitlines()
        assert rows == ["0.0,0.0", "0.5,0.25", "1.0,1.0"]
        svg = (tmp_path / "curve.svg").read_text()
        assert svg.startswith("<svg") and "polyline" in svg

    def test_negative_atom_exit_2(self, tmp_path, capsys):
        bad = tmp_path / "neg.json"
        bad.write_text(json.dumps({"dim": 2, "atoms": [[-1.0, 0.5]]}))
        assert main(["gini", "-i", str(bad)]) == 2


class TestDiscretizeCommand:
    def test_report_fields(self, files, tmp_path, capsys):
        out = tmp_path / "disc.json"
        code = main(
            ["discretize", "-i", files["square"], "--delta", "0.5", "--reps", "2",
             "-o", str(out)]
        )
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["K"] == 32 and report["N"] == 2
        assert report["measured_distance"] <= report["bound"]
        approx = measure_from_json_dict(json.loads(out.read_text()))
        assert approx.atom_count == 4


class TestAchieveCommand:
    def test_achievable(self, files, capsys):
        assert main(["achieve", "-i", files["square"], "--target", "0.5,0.5"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["lambda"] == [0.5, 0.5]
        assert payload["residual"] <= 1e-9

    def test_not_in_hull_exit_1(self, files, capsys):
        assert main(["achieve", "-i", files["square"], "--target", "3,3"]) == 1
        payload = json.loads(capsys.readouterr().out)
        assert payload["error"] == "not_in_hull"


class TestSkeletonCommand:
    def test_square_points(self, files, capsys):
        assert main(["skeleton", "-i", files["square"]]) == 0
        rows = capsys.readouterr().out.strip().splitlines()
        assert rows == ["0.0,0.0", "0.0,1.0", "1.0,0.0", "1.0,1.0"]


class TestVerifyCommand:
    def test_single_suite_exit_0(self, capsys):
        assert main(["verify", "--suite", "identity", "--seed", "7"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("suite identity:")
        assert "failures=0" in out

    def test_unknown_suite_exit_2(self, capsys):
        assert main(["verify", "--suite", "nope"]) == 2

    def test_deterministic_across_runs(self, capsys):
        assert main(["verify", "--suite", "algebra", "--seed", "11"]) == 0
        first = capsys.readouterr().out
        assert main(["verify", "--suite", "algebra", "--seed", "11"]) == 0
        second = capsys.readouterr().out
        assert first == second
