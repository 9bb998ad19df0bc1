import csv
import io
import json

import pytest

from app import main as entry
from app.cli.bench import (
    BenchCase,
    PRESETS,
    _case,
    range_cases,
    ratio_summary,
    run_case,
    run_cases,
)
from app.core.exceptions import InvalidInputError
from app.models.pell import Algorithm, Outcome, StepTrace
from app.models.run import BenchRow, RunConfig, SolutionFlag
from app.models.strategy import Schedule


@pytest.fixture(autouse=True)
def quiet_logging(monkeypatch):
    """Keep main() from stacking root handlers on pytest's captured streams."""
    monkeypatch.setattr(entry, "setup_root_logger", lambda *args, **kwargs: None)


def run_main(capsys, *argv):
    code = entry.main(list(argv))
    return code, capsys.readouterr().out


class TestSolveCommand:
    """`pell solve`."""

    def test_second_L9(self, capsys):
        code, out = run_main(capsys, "solve", "--d", "61", "--algo", "second-l", "--L", "9")
        assert code == 0
        assert "x=1766319049" in out
        assert "y=226153980" in out
        assert "steps=8" in out
        assert "flag=fundamental" in out

    def test_writes_to_the_current_stdout(self, monkeypatch):
        replaced = io.StringIO()
        monkeypatch.setattr("sys.stdout", replaced)
        assert entry.main(["solve", "--d", "61", "--algo", "cf"]) == 0
        assert "x=1766319049" in replaced.getvalue()

    def test_json_summary(self, capsys):

        code, out = run_main(capsys, "solve", "--d", "46", "--algo", "cf", "--format", "json")
        payload = json.loads(out)
        assert code == 0
        assert payload["x"] == "24335"
        assert payload["steps"] == 12
        assert payload["flag"] == "fundamental"

    def test_csv_summary(self, capsys):
        code, out = run_main(capsys, "solve", "--d", "61", "--algo", "chakravala", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0
        assert rows[0]["steps"] == "14"
        assert rows[0]["y"] == "226153980"

    def test_perfect_square(self, capsys):
        code, _ = run_main(capsys, "solve", "--d", "4", "--algo", "cf")
        assert code == 3

    def test_missing_L(self, capsys):
        code, _ = run_main(capsys, "solve", "--d", "61", "--algo", "first-l")
        assert code == 3

    def test_bad_schedule(self, capsys):
        code, _ = run_main(capsys, "solve", "--d", "61", "--algo", "lll", "--schedule", "0x5")
        assert code == 3

    def test_unknown_algorithm(self):
        with pytest.raises(SystemExit) as exc_info:
            entry.main(["solve", "--d", "61", "--algo", "newton"])
        assert exc_info.value.code == 3

    def test_regulator_schedule(self, capsys):
        code, out = run_main(
            capsys, "solve", "--d", "61", "--algo", "lll", "--regulator-schedule", "1", "2",
            "--format", "json",
        )
        payload = json.loads(out)
        x, y = int(payload["x"]), int(payload["y"])
        assert code == 0
        assert x * x - 61 * y * y == 1

    def test_regulator_schedule_excludes_schedule(self, capsys):
        code, _ = run_main(
            capsys, "solve", "--d", "61", "--algo", "lll", "--schedule", "*x2",
            "--regulator-schedule", "1", "2",
        )
        assert code == 3

    def test_diverged(self, capsys):
        code, out = run_main(
            capsys, "solve", "--d", "61", "--algo", "second-l", "--L", "9", "--max-steps", "3"
        )
        assert code == 2
        assert "flag=diverged" in out

    def test_cf_step_limit(self, capsys):
        code, _ = run_main(capsys, "solve", "--d", "541", "--algo", "cf", "--max-steps", "5")
        assert code == 2

    def test_verify_flag(self, capsys):
        code, out = run_main(
            capsys, "solve", "--d", "109", "--algo", "second-l", "--L", "9", "--verify"
        )
        assert code == 0
        assert "verification d=109" in out
        assert "power-product" in out

    def test_trace_round_trips_through_verify(self, capsys, tmp_path):
        code, out = run_main(
            capsys,
            "solve",
            "--d",
            "61",
            "--algo",
            "first-l",
            "--L",
            "9",
            "--trace",
            "--format",
            "json",
        )
        assert code == 0
        trace = StepTrace.from_json(out)
        assert trace.step_count == 10
        assert StepTrace.from_json(trace.to_json()) == trace

        path = tmp_path / "trace.json"
        path.write_text(out, encoding="utf-8")
        code, report = run_main(capsys, "verify", str(path), "--format", "json")
        assert code == 0
        assert json.loads(report)["d"] == "61"

    def test_verify_detects_tampering(self, capsys, tmp_path):
        _, out = run_main(
            capsys, "solve", "--d", "61", "--algo", "chakravala", "--trace", "--format", "json"
        )
        payload = json.loads(out)
        payload["steps"][2]["b"] = "6"
        path = tmp_path / "tampered.json"
        path.write_text(json.dumps(payload), encoding="utf-8")

        code, _ = run_main(capsys, "verify", str(path))
        assert code == 4

    def test_verify_missing_file(self, capsys, tmp_path):
        code, _ = run_main(capsys, "verify", str(tmp_path / "absent.json"))
        assert code == 3

    def test_csv_trace(self, capsys):
        code, out = run_main(
            capsys, "solve", "--d", "61", "--algo", "cf", "--trace", "--format", "csv"
        )
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0
        assert len(rows) == 22
        assert (rows[0]["a"], rows[0]["b"], rows[0]["k"]) == ("7", "1", "-12")


class TestBench:
    """Benchmark cases, rows and summaries."""

    def test_presets_are_well_formed(self):
        assert len(PRESETS["table1"]()) == 4
        assert len(PRESETS["table2"]()) == 24
        assert [case.run.L for case in PRESETS["table3"]()][:2] == [9, 100]
        assert len(PRESETS["table4"]()) == 9
        labels = [case.label for case in PRESETS["twospeed"]()]
        assert labels[0] == "cf"
        assert "lll(9x300,1x20)" in labels

    def test_range_cases_skip_squares_and_add_baseline(self):
        cases = range_cases(2, 5, [Algorithm.CHAKRAVALA])
        assert [(c.run.d, c.label) for c in cases] == [
            (2, "cf"),
            (2, "chakravala"),
            (3, "cf"),
            (3, "chakravala"),
            (5, "cf"),
            (5, "chakravala"),
        ]

    def test_range_rejects_empty(self):
        with pytest.raises(InvalidInputError):
            range_cases(10, 2, [Algorithm.CF])

    def test_run_case_step_limit_becomes_a_row(self):
        case = _case(541, Algorithm.CHAKRAVALA, max_steps=5)
        row, trace = run_case(case)
        assert trace is None
        assert row.outcome is Outcome.STEP_LIMIT
        assert row.flag is SolutionFlag.STEP_LIMIT
        assert row.count is None

    def test_lll_rows_count_iterations(self):
        run = RunConfig(d=61, algorithm=Algorithm.LLL, schedule=Schedule.constant(2), max_steps=2)
        row, _ = run_case(BenchCase(label="lll", run=run))
        assert row.count == row.iterations

    def test_run_cases_keeps_order(self):
        cases = range_cases(6, 8, [Algorithm.CHAKRAVALA])
        rows = run_cases(cases)
        assert [(r.d, r.algorithm) for r in rows] == [(c.run.d, c.run.algorithm) for c in cases]

    def test_ratio_summary(self):
        rows = [
            BenchRow(label="cf", d=61, algorithm=Algorithm.CF, outcome=Outcome.SOLVED,
                     flag=SolutionFlag.FUNDAMENTAL, steps=22, iterations=21),
            BenchRow(label="chakravala", d=61, algorithm=Algorithm.CHAKRAVALA,
                     outcome=Outcome.SOLVED, flag=SolutionFlag.FUNDAMENTAL, steps=11, iterations=10),
            BenchRow(label="cf", d=46, algorithm=Algorithm.CF, outcome=Outcome.SOLVED,
                     flag=SolutionFlag.FUNDAMENTAL, steps=12, iterations=11),
            BenchRow(label="chakravala", d=46, algorithm=Algorithm.CHAKRAVALA,
                     outcome=Outcome.SOLVED, flag=SolutionFlag.FUNDAMENTAL, steps=3, iterations=2),
        ]
        assert ratio_summary(rows) == {"chakravala": pytest.approx(0.375)}

    def test_range_command(self, capsys):
        code, out = run_main(
            capsys, "bench", "--range", "2", "50", "--algos", "chakravala", "--format", "text"
        )
        assert code == 0
        ratio_line = [line for line in out.splitlines() if line.startswith("mean steps(chakravala)")]
        ratio = float(ratio_line[0].rsplit("=", 1)[1])
        assert 0.5 < ratio < 0.9

    def test_table1_command(self, capsys):
        code, out = run_main(capsys, "bench", "--preset", "table1")
        lines = out.splitlines()
        assert code == 0
        assert lines[0].split() == ["cf", "chakravala", "first-l(L=9)", "second-l(L=9)"]
        assert len(lines) == 1 + 22
        assert out.count("(1766319049, 226153980, 1)") == 4

    def test_bench_csv(self, capsys):
        code, out = run_main(
            capsys, "bench", "--range", "2", "10", "--algos", "cf,second-l", "--L", "9",
            "--format", "csv",
        )
        rows = list(csv.DictReader(io.StringIO(out)))
        assert code == 0
        outcomes = {(row["d"], row["algorithm"]): row["outcome"] for row in rows}
        assert {row["algorithm"] for row in rows} == {"cf", "second-l"}
        assert all(outcomes[(d, "cf")] == "solved" for d, _ in outcomes)
        assert outcomes[("7", "second-l")] == "diverged"

    def test_bench_needs_a_source(self):
        with pytest.raises(SystemExit) as exc_info:
            entry.main(["bench"])
        assert exc_info.value.code == 3
