"""CSV serialisation of quantifier samples and gnuplot script output."""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Iterable

from ..quantifiers import QuantifierSample

CSV_COLUMNS = (
    "t", "re_z", "im_z", "otoc_direct", "otoc_fidelity_branch", "fidelity", "bures",
    "concurrence_trace", "concurrence_spinflip", "signed_trace_cos", "branch_valid",
)


class ScanIOError(OSError):
    """I/O failure, with the offending path in the message."""


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _row(s: QuantifierSample) -> list[str]:
    return [
        _fmt(s.t), _fmt(s.z.real), _fmt(s.z.imag), _fmt(s.c_direct), _fmt(s.c_fidelity_branch),
        _fmt(s.f), _fmt(s.bures_d), _fmt(s.concurrence_trace), _fmt(s.concurrence_spinflip),
        _fmt(s.signed_trace_cos), "true" if s.branch_valid else "false",
    ]


def format_csv(samples: Iterable[QuantifierSample]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    writer.writerows(_row(s) for s in samples)
    return buf.getvalue()


def write_csv(samples: Iterable[QuantifierSample], path) -> None:
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            fh.write(format_csv(samples))
    except OSError as exc:
        raise ScanIOError(f"cannot write {path}: {exc.strerror or exc}") from exc


def read_csv(path) -> list[QuantifierSample]:
    """Read samples written by :func:`write_csv`.

    The overlap-route fidelity is not stored, so it comes back as NaN.
    """
    path = Path(path)
    try:
        with path.open(newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None or tuple(header) != CSV_COLUMNS:
                raise ScanIOError(f"{path}: unexpected CSV header {header}")
            out = []
            for line_no, row in enumerate(reader, start=2):
                if len(row) != len(CSV_COLUMNS):
                    raise ScanIOError(f"{path}:{line_no}: expected {len(CSV_COLUMNS)} fields, got {len(row)}")
                rec = dict(zip(CSV_COLUMNS, row))
                out.append(QuantifierSample(
                    t=float(rec["t"]),
                    z=complex(float(rec["re_z"]), float(rec["im_z"])),
                    c_direct=float(rec["otoc_direct"]),
                    c_fidelity_branch=float(rec["otoc_fidelity_branch"]),
                    f=float(rec["fidelity"]),
                    bures_d=float(rec["bures"]),
                    concurrence_trace=float(rec["concurrence_trace"]),
                    concurrence_spinflip=float(rec["concurrence_spinflip"]),
                    branch_valid=rec["branch_valid"] == "true",
                ))
            return out
    except OSError as exc:
        if isinstance(exc, ScanIOError):
            raise
        raise ScanIOError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except ValueError as exc:
        raise ScanIOError(f"{path}: malformed value: {exc}") from exc


def write_gnuplot(csv_path, script_path, title: str = "") -> None:
    """Emit a gnuplot script plotting OTOC, fidelity and concurrence from a scan CSV."""
    csv_path, script_path = Path(csv_path), Path(script_path)
    col = {name: i + 1 for i, name in enumerate(CSV_COLUMNS)}
    lines = [
        "set datafile separator ','",
        "set key autotitle columnhead",
        f"set title '{title}'" if title else "unset title",
        "set xlabel 't'",
        f"plot '{csv_path}' using {col['t']}:{col['otoc_direct']} with lines, \\",
        f"     '' using {col['t']}:{col['fidelity']} with lines, \\",
        f"     '' using {col['t']}:{col['concurrence_trace']} with lines",
        "",
    ]
    try:
        script_path.write_text("\n".join(lines))
    except OSError as exc:
        raise ScanIOError(f"cannot write {script_path}: {exc.strerror or exc}") from exc
