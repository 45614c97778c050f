"""The single serializer: every command hands its report here."""

import csv
import json
import sys
from typing import TextIO

from pydantic import BaseModel

from permres.errors import SpecError
from permres.models import PipelineReport, PresCertificate, StatsReport, SuiteSummary

PRES_HEADER = ["pres", "status", "method", "lower", "upper", "shifts", "g", "verified"]
PIPELINE_HEADER = ["index", "shifts", "g", "delta", "bound", "within_bound"]
VERIFY_HEADER = ["suite", "check", "passed", "detail"]


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    return str(value)


def stats_header(report: StatsReport) -> list[str]:
    return (["q", "V", "u"]
            + [f"M_{r}" for r in range(report.u + 1)]
            + [f"N_{s}" for s in range(2, report.u + 1)]
            + ["delta", "Nb", "NB", "A", "lb", "ub"])


def stats_rows(report: StatsReport) -> list[list]:
    row = ([report.q, report.v, report.u] + report.m + report.n_s
           + [report.delta, report.nb, report.nbb, report.ambiguity,
              report.bounds.lower, report.bounds.upper])
    return [row]


def pres_rows(cert: PresCertificate) -> list[list]:
    return [[cert.pres, cert.status, cert.method, cert.lower, cert.upper,
             cert.shifts, cert.g, cert.verified]]


def pipeline_rows(report: PipelineReport) -> list[list]:
    return [[i, c.shifts, c.g, c.delta, report.bound, c.within_bound]
            for i, c in enumerate(report.candidates)]


def verify_rows(summary: SuiteSummary) -> list[list]:
    return [[r.suite, r.check, r.passed, r.detail] for r in summary.results]


def write_csv(report: BaseModel, out: TextIO):
    if isinstance(report, StatsReport):
        header, rows = stats_header(report), stats_rows(report)
    elif isinstance(report, PresCertificate):
        header, rows = PRES_HEADER, pres_rows(report)
    elif isinstance(report, PipelineReport):
        header, rows = PIPELINE_HEADER, pipeline_rows(report)
    elif isinstance(report, SuiteSummary):
        header, rows = VERIFY_HEADER, verify_rows(report)
    else:
        raise SpecError(f"no CSV layout for {type(report).__name__}; use --format json")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])


def write_json(report: BaseModel | dict, out: TextIO):
    if isinstance(report, BaseModel):
        out.write(report.model_dump_json(indent=2))
    else:
        json.dump(report, out, indent=2)
    out.write("\n")


def emit(report: BaseModel | dict, fmt: str = "json", out: TextIO | None = None):
    out = out or sys.stdout
    if fmt == "csv":
        if isinstance(report, dict):
            raise SpecError("no CSV layout for function tables; use --format json")
        write_csv(report, out)
    else:
        write_json(report, out)
