"""Deterministic serialization and the report bundle on disk."""
import json
from fractions import Fraction

from sigmalab.report import (
    dumps_report,
    render_trajectory_png,
    scenario_report_dict,
    to_jsonable,
    write_report_outputs,
    write_trajectory_csv,
)
from sigmalab.scenarios import Trajectory, run_join_pathology


class TestToJsonable:
    def test_fractions_become_strings(self):
        assert to_jsonable(Fraction(3, 10)) == "3/10"
        assert to_jsonable({"w": [Fraction(1, 2), 2]}) == {"w": ["1/2", 2]}

    def test_floats_rounded_to_12_places(self):
        assert to_jsonable(0.1234567890123456) == 0.123456789012

    def test_nested_structures(self):
        data = to_jsonable({"a": (1, Fraction(1, 3)), "b": {"c": None}})
        assert data == {"a": [1, "1/3"], "b": {"c": None}}


class TestDumps:
    def test_sorted_keys_and_trailing_newline(self):
        out = dumps_report({"b": 1, "a": 2})
        assert out.index('"a"') < out.index('"b"')
        assert out.endswith("\n")

    def test_byte_identical_repeats(self):
        report = run_join_pathology(4)
        d1 = dumps_report(scenario_report_dict(report))
        d2 = dumps_report(scenario_report_dict(run_join_pathology(4)))
        assert d1 == d2

    def test_round_trip_parses(self):
        report = run_join_pathology(3)
        data = json.loads(dumps_report(scenario_report_dict(report)))
        assert data["scenario"] == "join-pathology"
        assert [a["pass"] for a in data["assertions"]] == [True] * len(
            data["assertions"]
        )


class TestFiles:
    def test_trajectory_csv(self, tmp_path):
        traj = Trajectory(name="t", index=(1, 2), values=(0.5, 0.25))
        path = write_trajectory_csv(traj, tmp_path / "t.csv")
        lines = path.read_text().splitlines()
        assert lines[0] == "index,value"
        assert lines[1].startswith("1,0.5")
        assert len(lines) == 3

    def test_trajectory_png(self, tmp_path):
        traj = Trajectory(name="t", index=(1, 2, 3), values=(1.0, 0.5, 0.0))
        path = render_trajectory_png(traj, tmp_path / "t.png", "test plot")
        header = path.read_bytes()[:8]
        assert header == b"\x89PNG\r\n\x1a\n"

    def test_full_bundle(self, tmp_path):
        report = run_join_pathology(4)
        written = write_report_outputs(
            scenario_report_dict(report),
            tmp_path,
            "join",
            report.trajectories,
        )
        names = sorted(p.name for p in written)
        assert names == [
            "join-op_distance_to_bottom.csv",
            "join-op_distance_to_bottom.png",
            "join.json",
        ]
        stored = json.loads((tmp_path / "join.json").read_text())
        assert stored["scenario"] == "join-pathology"
