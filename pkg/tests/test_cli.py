import json

import pytest

from jensengap.cli import main
from jensengap.scenario import dumps, make_scenario
from jensengap.scengen import straddle_probe_mt4

MIRRORED_MT1 = make_scenario(
    "mt1",
    "proper",
    {"name": "signed_square", "point": 0.0},
    {
        "c": 0.0,
        "interval": [-1.0, 1.0],
        "left": {
            "plus_a": {"points": [-1.0], "weights": [0.5]},
            "plus_b": {"points": [0.0], "weights": [0.5]},
            "minus_c": {"points": [], "weights": []},
        },
        "right": {
            "plus_a": {"points": [0.0], "weights": [0.5]},
            "plus_b": {"points": [1.0], "weights": [0.5]},
            "minus_c": {"points": [], "weights": []},
        },
        "A": 0.0,
    },
)


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(dumps(doc) if not isinstance(doc, str) else doc)
    return str(path)


def run(args):
    return main(args)


class TestCheck:
    def test_mirrored_scenario_holds(self, tmp_path, capsys):
        path = write(tmp_path, "mt1.json", MIRRORED_MT1)
        assert run(["check", path]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["verdict"] == "holds"
        assert report["chain"] == pytest.approx([-0.25, 0.0, 0.0, 0.25], abs=1e-12)

    def test_literal_straddle_fails_with_exit_2(self, tmp_path, capsys):
        doc = make_scenario("mt4", "literal", {"name": "signed_square"}, straddle_probe_mt4())
        path = write(tmp_path, "mt4.json", doc)
        assert run(["check", path]) == 2
        report = json.loads(capsys.readouterr().out)
        assert report["verdict"] == "fails"
        assert report["margin"] == pytest.approx(-0.06029414592216457, abs=1e-4)

    def test_unmet_exit_3(self, tmp_path, capsys):
        doc = json.loads(dumps(MIRRORED_MT1))
        doc["payload"]["right"]["plus_b"]["points"] = [0.4]  # breaks the spread equality
        path = write(tmp_path, "broken.json", doc)
        assert run(["check", path]) == 3
        assert json.loads(capsys.readouterr().out)["verdict"] == "hypotheses-unmet"

    def test_malformed_file_exit_1(self, tmp_path, capsys):
        path = write(tmp_path, "bad.json", "{not json")
        assert run(["check", path]) == 1

    def test_wrong_schema_version_exit_1(self, tmp_path, capsys):
        doc = json.loads(dumps(MIRRORED_MT1))
        doc["schema_version"] = 99
        path = write(tmp_path, "v99.json", doc)
        assert run(["check", path]) == 1

    def test_missing_file_exit_1(self, capsys):
        assert run(["check", "/nonexistent/file.json"]) == 1

    def test_tol_override(self, tmp_path, capsys):
        # an absurdly loose tolerance turns the straddle failure into a pass
        doc = make_scenario("mt4", "literal", {"name": "signed_square"}, straddle_probe_mt4())
        path = write(tmp_path, "mt4.json", doc)
        assert run(["check", path, "--tol", "1.0"]) == 0

    def test_stdin_dash(self, tmp_path, capsys, monkeypatch):
        import io

        monkeypatch.setattr("sys.stdin", io.StringIO(dumps(MIRRORED_MT1)))
        assert run(["check", "-"]) == 0

    def test_array_of_scenarios(self, tmp_path, capsys):
        docs = [MIRRORED_MT1, MIRRORED_MT1]
        path = write(tmp_path, "many.json", docs)
        assert run(["check", path]) == 0
        reports = json.loads(capsys.readouterr().out)
        assert len(reports) == 2


class TestAnalyze:
    def test_signed_square(self, capsys):
        assert run(["analyze", "--fn", "signed_square", "--point", "0", "--interval=-1,1"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["class"] == "K1c"
        assert report["k1_interval"]["lo"] == pytest.approx(-2.0, abs=1e-6)
        assert report["k1_interval"]["hi"] == pytest.approx(2.0, abs=1e-6)

    def test_quadratic_both(self, capsys):
        assert run(["analyze", "--fn", "quadratic:2", "--point", "0.3", "--interval=-1,1"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["class"] == "both"
        assert report["witness_A"] == pytest.approx(2.0, abs=1e-6)

    def test_cubic_offcenter(self, capsys):
        assert run(
            ["analyze", "--fn", "cubic", "--point", "0.5", "--interval=-1,1", "--grid", "1000"]
        ) == 0
        report = json.loads(capsys.readouterr().out)
        h = max(1.5, 0.5) / 999
        assert report["k1_interval"]["lo"] == pytest.approx(3.0, abs=6 * h + 1e-9)
        assert report["k1_interval"]["hi"] == pytest.approx(3.0, abs=6 * h + 1e-9)
        assert report["k1_interval"]["lo"] <= 3.0 <= report["k1_interval"]["hi"]

    def test_unknown_function_exit_1(self, capsys):
        assert run(["analyze", "--fn", "sigmoid", "--point", "0"]) == 1


class TestGen:
    @pytest.mark.parametrize(
        "theorem,mode",
        [
            ("mt1", None),
            ("mt2", None),
            ("mt2", "a"),
            ("mt2", "b"),
            ("mt3", None),
            ("mt3", "a"),
            ("it2", None),
            ("ic1", None),
            ("ic2", None),
            ("ic3", None),
            ("it3", None),
            ("mt4", "region_restricted"),
            ("mt4", "literal"),
            ("mt5", None),
            ("mc1", None),
            ("mc2", None),
            ("mc3", None),
        ],
    )
    def test_roundtrip_exit_0(self, tmp_path, capsys, theorem, mode):
        out = str(tmp_path / "scenario.json")
        args = ["gen", "--theorem", theorem, "--seed", "7", "--out", out]
        if mode:
            args += ["--mode", mode]
        assert run(args) == 0
        assert run(["check", out]) == 0, json.loads((tmp_path / "scenario.json").read_text())

    def test_point_outside_interval_exit_1(self, capsys):
        assert run(["gen", "--theorem", "mt1", "--seed", "1", "--point", "5"]) == 1

    def test_unknown_mode_exit_1(self, capsys):
        assert run(["gen", "--theorem", "mt1", "--mode", "sideways", "--seed", "1"]) == 1

    def test_count_emits_array(self, tmp_path, capsys):
        out = str(tmp_path / "many.json")
        assert run(["gen", "--theorem", "mt1", "--seed", "3", "--count", "3", "--out", out]) == 0
        docs = json.loads((tmp_path / "many.json").read_text())
        assert isinstance(docs, list) and len(docs) == 3
        assert run(["check", out]) == 0

    def test_deterministic_bytes(self, tmp_path):
        a = str(tmp_path / "a.json")
        b = str(tmp_path / "b.json")
        for out in (a, b):
            assert run(["gen", "--theorem", "mt4", "--seed", "9", "--out", out]) == 0
        assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


class TestSearch:
    def test_clean_search_exit_0(self, tmp_path, capsys):
        out = str(tmp_path / "s.json")
        assert (
            run(
                [
                    "search",
                    "--theorem",
                    "mt1",
                    "--fn",
                    "signed_square",
                    "--budget",
                    "50",
                    "--seed",
                    "2",
                    "--out",
                    out,
                ]
            )
            == 0
        )
        report = json.loads((tmp_path / "s.json").read_text())
        assert report["found"] == 0

    def test_literal_straddle_exit_2(self, tmp_path):
        out = str(tmp_path / "s.json")
        code = run(
            [
                "search",
                "--theorem",
                "mt4",
                "--mode",
                "literal",
                "--fn",
                "signed_square",
                "--interval=-3,3",
                "--budget",
                "30",
                "--seed",
                "3",
                "--out",
                out,
            ]
        )
        assert code == 2
        report = json.loads((tmp_path / "s.json").read_text())
        assert report["found"] >= 1
        assert ["probe"] in [r["seed_trace"] for r in report["results"]]

    def test_zero_budget_exit_1(self, capsys):
        assert run(["search", "--theorem", "mt1", "--budget", "0", "--seed", "1"]) == 1

    def test_bad_flag_exit_1(self, capsys):
        assert run(["search", "--theorem", "bogus", "--budget", "5"]) == 1

    def test_help_exit_0(self, capsys):
        assert run(["--help"]) == 0
