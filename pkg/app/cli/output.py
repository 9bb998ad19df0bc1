import csv
from collections.abc import Mapping, Sequence
from typing import TextIO

from pydantic import TypeAdapter

from app.models.pell import Outcome, StepTrace
from app.models.report import VerifyReport
from app.models.run import BenchRow, OutputFormat, SolveSummary

_STEP_COLUMNS = ["i", "k", "m", "l", "M", "r", "a", "b", "segment"]
_ROW_COLUMNS = [
    "label",
    "d",
    "algorithm",
    "params",
    "outcome",
    "flag",
    "steps",
    "iterations",
    "digits10",
]


def _cell(value: object) -> str:
    return "" if value is None else str(value)


def write_summary(summary: SolveSummary, fmt: OutputFormat, stream: TextIO) -> None:
    match fmt:
        case OutputFormat.JSON:
            stream.write(summary.model_dump_json(exclude_none=True) + "\n")
        case OutputFormat.CSV:
            columns = list(SolveSummary.model_fields)
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(columns)
            writer.writerow([_cell(getattr(summary, c)) for c in columns])
        case OutputFormat.TEXT:
            header = f"d={summary.d} algorithm={summary.algorithm}"
            if summary.params:
                header += f" params={summary.params}"
            stream.write(header + "\n")
            if summary.x is not None:
                stream.write(f"x={summary.x}\ny={summary.y}\n")
            line = f"steps={summary.count} outcome={summary.outcome} flag={summary.flag}"
            if summary.digits10 is not None:
                line += f" digits={summary.digits10}"
            if summary.power is not None and summary.power > 1:
                line += f" power={summary.power}"
            stream.write(line + "\n")


def write_trace(trace: StepTrace, fmt: OutputFormat, stream: TextIO) -> None:
    match fmt:
        case OutputFormat.JSON:
            stream.write(trace.to_json() + "\n")
        case OutputFormat.CSV:
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(_STEP_COLUMNS)
            for record in trace.steps:
                writer.writerow([_cell(getattr(record, c)) for c in _STEP_COLUMNS])
        case OutputFormat.TEXT:
            write_summary(SolveSummary.from_trace(trace), fmt, stream)
            for record in trace.steps:
                triple = f"({record.a}, {record.b}, {record.k})" if record.has_triple else f"k={record.k}"
                stream.write(f"{record.i:>5} {triple} m={record.m} l={record.l} M={_cell(record.M)}\n")


def write_report(report: VerifyReport, fmt: OutputFormat, stream: TextIO) -> None:
    match fmt:
        case OutputFormat.JSON:
            stream.write(report.model_dump_json() + "\n")
        case OutputFormat.CSV:
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(["check", "severity", "status", "checked", "skipped", "failed_steps"])
            for check in report.checks:
                writer.writerow(
                    [
                        check.name,
                        check.severity,
                        check.status,
                        check.checked,
                        check.skipped,
                        " ".join(map(str, check.failed_steps)),
                    ]
                )
        case OutputFormat.TEXT:
            stream.write(f"verification d={report.d} algorithm={report.algorithm}\n")
            for check in report.checks:
                line = f"  {check.name:<18} {check.severity:<6} {check.status}"
                if check.failed_steps:
                    line += f" at steps {check.failed_steps}"
                stream.write(line + "\n")
            stream.write(f"  minimality: {report.minimality}\n")


def write_rows(
    rows: Sequence[BenchRow],
    fmt: OutputFormat,
    stream: TextIO,
    ratios: Mapping[str, float] | None = None,
) -> None:
    match fmt:
        case OutputFormat.JSON:
            adapter = TypeAdapter(list[BenchRow])
            payload = adapter.dump_json(list(rows), indent=2).decode()
            stream.write(payload + "\n")
        case OutputFormat.CSV:
            writer = csv.writer(stream, lineterminator="\n")
            writer.writerow(_ROW_COLUMNS)
            for row in rows:
                writer.writerow([_cell(getattr(row, c)) for c in _ROW_COLUMNS])
        case OutputFormat.TEXT:
            width = max((len(row.label) for row in rows), default=5)
            for row in rows:
                count = _cell(row.count) if row.outcome == Outcome.SOLVED else row.flag
                digits = f" digits={row.digits10}" if row.digits10 is not None else ""
                stream.write(f"d={row.d:<12} {row.label:<{width}} {count:>8}{digits}\n")
    if ratios and fmt == OutputFormat.TEXT:
        for label, ratio in ratios.items():
            stream.write(f"mean steps({label}) / steps(cf) = {ratio:.3f}\n")


def write_sequences(
    traces: Mapping[str, StepTrace], fmt: OutputFormat, stream: TextIO
) -> None:
    """Triples of several traces of the same d, side by side in text mode."""
    if fmt == OutputFormat.TEXT:
        labels = list(traces)
        columns = [[f"({r.a}, {r.b}, {r.k})" for r in traces[label].steps] for label in labels]
        widths = [max(len(label), *(len(cell) for cell in cells)) for label, cells in zip(labels, columns)]
        stream.write("  ".join(label.ljust(w) for label, w in zip(labels, widths)).rstrip() + "\n")
        for i in range(max(len(cells) for cells in columns)):
            cells = [c[i] if i < len(c) else "" for c in columns]
            stream.write("  ".join(cell.ljust(w) for cell, w in zip(cells, widths)).rstrip() + "\n")
        return
    if fmt == OutputFormat.CSV:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(["label", "i", "a", "b", "k"])
        for label, trace in traces.items():
            for r in trace.steps:
                writer.writerow([label, r.i, r.a, r.b, r.k])
        return
    adapter = TypeAdapter(dict[str, StepTrace])
    stream.write(adapter.dump_json(dict(traces), exclude_none=True).decode() + "\n")
