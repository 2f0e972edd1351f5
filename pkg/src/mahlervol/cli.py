"""Command-line front end.

    mahlervol measure  --m 2 --n 3 --t 1
    mahlervol roots    --m 1 --n 4 --t 1.05 --format csv
    mahlervol polygons --m 2 --n 3 --t 0.9
    mahlervol verify   --m 1 --n 4 --t 5
    mahlervol sweep    --m 1 --n 4 --t-lo 0.1 --t-hi 5 --steps 2000
    mahlervol apoly    --m 2 --n 3
    mahlervol svg      --m 2 --n 3 --t 1 --output figures/

Reports are JSON (schema_version 1) on stdout or in --output.  Exit codes:
0 success, 1 bad input, 2 accuracy or verification failure, 3 I/O failure.
Errors are reported as a JSON object on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass

from . import apoly, svg
from .errors import DomainError, MahlerError
from .mahler import closed_form_measure, quadrature_measure
from .polygons import enumerate_polygons, polygon_to_alpha, polygon_volume
from .spectrum import FamilyParams, find_unit_roots, reciprocal_reduction, threshold_scan

SCHEMA_VERSION = 1
COMMANDS = ("measure", "roots", "polygons", "verify", "sweep", "apoly", "svg")
CSV_COMMANDS = ("roots", "polygons", "sweep")

# tangencies make the kink positions ill-conditioned; see MeasureReport.near_threshold
NEAR_THRESHOLD_TOL = 1e-6


@dataclass
class RunConfig:
    command: str
    m: int
    n: int
    t: float | None = None
    t_lo: float | None = None
    t_hi: float | None = None
    steps: int = 200
    tol: float = 1e-10
    output_path: str | None = None
    format: str = "json"

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        if self.format not in ("json", "csv"):
            raise DomainError(f"unknown format {self.format!r}")
        if self.format == "csv" and self.command not in CSV_COMMANDS:
            raise DomainError(f"csv output is not available for {self.command}")
        if not (math.isfinite(self.tol) and self.tol > 0.0):
            raise DomainError(f"tol must be positive, got {self.tol!r}")
        if self.command == "sweep":
            if self.t_lo is None or self.t_hi is None:
                raise DomainError("sweep needs --t-lo and --t-hi")
            if not (0.0 < self.t_lo < self.t_hi) or not math.isfinite(self.t_hi):
                raise DomainError(f"need 0 < t_lo < t_hi, got {self.t_lo!r}, {self.t_hi!r}")
            if self.steps < 2:
                raise DomainError(f"steps must be at least 2, got {self.steps}")
            FamilyParams(self.m, self.n, 1.0)
        elif self.command == "apoly":
            apoly.canonical_alpha_beta(self.m, self.n)
        else:
            if self.t is None:
                raise DomainError(f"{self.command} needs --t")
            if not self.t > 0.0:
                raise DomainError(f"t must be positive, got {self.t!r}")
            FamilyParams(self.m, self.n, self.t)


# ---------------------------------------------------------------- serialisation

def _format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialise non-finite float {x!r}")
    return format(x, ".17g")


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with floats at 17 significant digits and keys in insertion order."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: "
                 f"{dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "item"):  # numpy scalars
        return dumps(obj.item(), indent, _level)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _complex(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _params(cfg: RunConfig) -> dict:
    return {"m": cfg.m, "n": cfg.n, "t": float(cfg.t)}


def _root_record(root) -> dict:
    return {"index": root.index, "sigma": root.sigma, "alpha": _complex(root.alpha)}


def _arc_record(arc) -> dict:
    return {"start": arc.start, "end": arc.end,
            "start_kind": arc.start_kind, "end_kind": arc.end_kind,
            "start_root": arc.start_root, "end_root": arc.end_root}


def _report_record(report) -> dict:
    return {
        "total": report.total,
        "log_term": report.log_term,
        "dilog_term": report.dilog_term,
        "arg_term": report.arg_term,
        "roots": [_root_record(r) for r in report.roots],
        "arcs": [_arc_record(a) for a in report.arcs],
        "tangent": [float(x) for x in report.tangent],
        "near_threshold": report.near_threshold,
    }


def _polygon_record(P, eps: int) -> dict:
    return {
        "source_index": P.source_index,
        "source_sigma": P.source_sigma,
        "k": P.k,
        "l": P.l,
        "eta": P.eta,
        "tau": P.tau,
        "winding_h": P.winding_h,
        "same_direction": P.same_direction,
        "relation": P.relation_text(),
        "radius": P.radius,
        "volume": polygon_volume(P),
        "epsilon": eps,
        "vertices": [_complex(v) for v in P.vertices],
    }


# ---------------------------------------------------------------- commands

def _measure(cfg: RunConfig) -> tuple[dict, int]:
    params = FamilyParams(cfg.m, cfg.n, cfg.t)
    roots = find_unit_roots(params)
    report = closed_form_measure(params, roots)
    quad, err = quadrature_measure(params, max(cfg.tol / 10.0, 1e-12), roots,
                                   full_output=True)
    return {
        "closed_form": _report_record(report),
        "quadrature": {"total": quad, "error_estimate": err},
        "residual": abs(report.total - quad),
    }, 0


def _roots(cfg: RunConfig) -> tuple[dict, int]:
    params = FamilyParams(cfg.m, cfg.n, cfg.t)
    roots = find_unit_roots(params)
    return {
        "roots": [_root_record(r) for r in roots],
        "tangent": [float(x) for x in roots.tangent],
        "near_threshold": roots.near_threshold,
        "reciprocal_reduction": [float(c) for c in reciprocal_reduction(params)],
    }, 0


def _polygons(cfg: RunConfig) -> tuple[dict, int]:
    params = FamilyParams(cfg.m, cfg.n, cfg.t)
    return {"polygons": [_polygon_record(P, eps) for P, eps in enumerate_polygons(params)]}, 0


def _verify(cfg: RunConfig) -> tuple[dict, int]:
    params = FamilyParams(cfg.m, cfg.n, cfg.t)
    roots = find_unit_roots(params)
    report = closed_form_measure(params, roots)
    quad = quadrature_measure(params, max(cfg.tol / 10.0, 1e-12), roots)
    polys = enumerate_polygons(params, roots)
    volume_sum = math.fsum(eps * polygon_volume(P) for P, eps in polys)
    from_volumes = math.fsum([report.log_term, report.arg_term,
                              2.0 * volume_sum / (math.pi * params.m * params.n)])
    theorem_residual = abs(math.pi * report.dilog_term
                           - 2.0 * volume_sum / (params.m * params.n))
    round_trip = max((abs(polygon_to_alpha(P).sigma - P.source_sigma) for P, _ in polys),
                     default=0.0)

    measure_tol = max(cfg.tol, NEAR_THRESHOLD_TOL) if report.near_threshold else cfg.tol
    residuals = {
        "closed_vs_quadrature": abs(report.total - quad),
        "closed_vs_volumes": abs(report.total - from_volumes),
        "quadrature_vs_volumes": abs(quad - from_volumes),
    }
    passed = (theorem_residual <= cfg.tol and round_trip <= cfg.tol
              and all(r <= measure_tol for r in residuals.values()))
    branch = "log t" if not polys and report.dilog_term == 0.0 and report.arg_term == 0.0 \
        else "dilogarithm"
    return {
        "branch": branch,
        "closed_form": report.total,
        "quadrature": quad,
        "from_volumes": from_volumes,
        "polygon_count": len(polys),
        "theorem_residual": theorem_residual,
        "round_trip_residual": round_trip,
        "measure_residuals": residuals,
        "measure_tol": measure_tol,
        "near_threshold": report.near_threshold,
        "passed": passed,
    }, 0 if passed else 2


def _sweep(cfg: RunConfig) -> tuple[dict, int]:
    events = threshold_scan(cfg.m, cfg.n, cfg.t_lo, cfg.t_hi, cfg.steps)
    return {"events": [{
        "t": e.t,
        "kind": e.kind,
        "count_below": e.count_below,
        "count_above": e.count_above,
        "cases_below": [list(c) for c in e.cases_below],
        "cases_above": [list(c) for c in e.cases_above],
    } for e in events]}, 0


def _apoly(cfg: RunConfig) -> tuple[dict, int]:
    system = apoly.build_system(cfg.m, cfg.n)
    solutions = apoly.identity_solutions(cfg.m, cfg.n)
    residual = apoly.tilde_measure_check(cfg.m, cfg.n, max(cfg.tol, 1e-12))
    return {
        "alpha": system.alpha,
        "beta": system.beta,
        "U": [[int(v) for v in row] for row in system.U],
        "neumann_zagier": apoly.check_neumann_zagier(system),
        "identity_solutions": [{
            "u": _complex(s.u),
            "argument": math.atan2(s.u.imag, s.u.real),
            "degenerate": s.degenerate,
        } for s in solutions],
        "tilde_residual": residual,
    }, 0


def _svg(cfg: RunConfig) -> tuple[dict, int]:
    params = FamilyParams(cfg.m, cfg.n, cfg.t)
    directory = cfg.output_path or "."
    os.makedirs(directory, exist_ok=True)
    files = []
    for P, _ in enumerate_polygons(params):
        name = svg.svg_filename(cfg.m, cfg.n, cfg.t, P.source_index)
        path = os.path.join(directory, name)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(svg.polygon_svg(P))
        files.append(path)
    return {"files": files}, 0


HANDLERS = {
    "measure": _measure, "roots": _roots, "polygons": _polygons, "verify": _verify,
    "sweep": _sweep, "apoly": _apoly, "svg": _svg,
}


def _csv_text(command: str, body: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if command == "roots":
        writer.writerow(["index", "sigma", "alpha_re", "alpha_im"])
        for r in body["roots"]:
            writer.writerow([r["index"], _format_float(r["sigma"]),
                             *(_format_float(v) for v in r["alpha"])])
    elif command == "polygons":
        writer.writerow(["source_index", "source_sigma", "k", "l", "eta", "tau",
                         "winding_h", "same_direction", "relation", "volume", "epsilon"])
        for p in body["polygons"]:
            writer.writerow([p["source_index"], _format_float(p["source_sigma"]), p["k"],
                             p["l"], _format_float(p["eta"]), _format_float(p["tau"]),
                             p["winding_h"], p["same_direction"], p["relation"],
                             _format_float(p["volume"]), p["epsilon"]])
    else:
        writer.writerow(["t", "kind", "count_below", "count_above"])
        for e in body["events"]:
            writer.writerow([_format_float(e["t"]), e["kind"], e["count_below"],
                             e["count_above"]])
    return buf.getvalue()


def render(cfg: RunConfig, body: dict) -> str:
    if cfg.format == "csv":
        return _csv_text(cfg.command, body)
    header = {"schema_version": SCHEMA_VERSION, "command": cfg.command}
    if cfg.command == "sweep":
        header["params"] = {"m": cfg.m, "n": cfg.n, "t_lo": float(cfg.t_lo),
                            "t_hi": float(cfg.t_hi), "steps": cfg.steps}
    elif cfg.command == "apoly":
        header["params"] = {"m": cfg.m, "n": cfg.n}
    else:
        header["params"] = _params(cfg)
    header["tol"] = float(cfg.tol)
    return dumps({**header, **body}) + "\n"


def _error(kind: str, exc: BaseException, code: int) -> int:
    record = {"schema_version": SCHEMA_VERSION, "error": kind,
              "type": type(exc).__name__, "message": str(exc)}
    sys.stderr.write(json.dumps(record) + "\n")
    return code


def run(cfg: RunConfig) -> int:
    """Execute one command; returns the process exit status."""
    try:
        cfg.validate()
        body, status = HANDLERS[cfg.command](cfg)
        text = render(cfg, body)
        if cfg.output_path and cfg.command != "svg":
            with open(cfg.output_path, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return status
    except DomainError as exc:
        return _error("domain", exc, 1)
    except MahlerError as exc:
        return _error("accuracy", exc, 2)
    except OSError as exc:
        return _error("io", exc, 3)


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage, which would collide with accuracy failures."""

    def error(self, message):
        raise DomainError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mahlervol", description="Mahler measures of t(x^m - 1)y - (x^n - 1)")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--m", type=int, required=True)
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--t", type=float)
    parser.add_argument("--t-lo", type=float)
    parser.add_argument("--t-hi", type=float)
    parser.add_argument("--steps", type=int, default=200)
    parser.add_argument("--tol", type=float, default=1e-10)
    parser.add_argument("--output", help="report file, or directory for svg")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    return parser


def parse_config(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    return RunConfig(ns.command, ns.m, ns.n, ns.t, ns.t_lo, ns.t_hi, ns.steps, ns.tol,
                     ns.output, ns.format)


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except DomainError as exc:
        return _error("domain", exc, 1)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
