"""Command-line front door: validate inputs, run named suites, diff reports.

Exit codes: 0 pass, 1 check failure, 2 input error, 3 budget exhausted.
The default search budget comes from ``HOCOLIM_BUDGET``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__, serialize, suites
from .errors import HocolimError, SimplicialIdentityError

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def _err(msg):
    print(msg, file=sys.stderr)


def _worse(a, b):
    """Missing inputs (2) outrank invalid ones (1)."""
    return max(a, b)


def validate_paths(paths):
    """Schema and invariant validation; returns ``(status, [(path, message)])``."""
    diagnostics = []
    status = EXIT_OK
    for p in paths:
        path = Path(p)
        if not path.is_file():
            diagnostics.append((p, "file not found"))
            status = _worse(status, EXIT_INPUT)
            continue
        try:
            obj = serialize.Loader().load_path(path)
        except FileNotFoundError as exc:
            diagnostics.append((p, f"referenced file not found: {exc.filename}"))
            status = _worse(status, EXIT_INPUT)
            continue
        except SimplicialIdentityError as exc:
            diagnostics.append((p, f"identity {exc.identity} fails at level {exc.level}, indices "
                                   f"{list(exc.indices)}, simplex {exc.simplex!r}"))
            status = _worse(status, EXIT_FAIL)
            continue
        except (HocolimError, ValueError) as exc:
            diagnostics.append((p, f"{type(exc).__name__}: {exc}"))
            status = _worse(status, EXIT_FAIL)
            continue
        diagnostics.append((p, f"ok ({type(obj).__name__})"))
    return status, diagnostics


def cmd_validate(args):
    status, diags = validate_paths(args.paths)
    for p, msg in diags:
        print(f"{p}: {msg}")
    return status


def _default_budget():
    raw = os.environ.get("HOCOLIM_BUDGET")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        _err(f"HOCOLIM_BUDGET is not an integer: {raw!r}")
        return None


def cmd_run(args):
    if args.suite not in suites.SUITES:
        _err(f"unknown suite {args.suite!r}; known: {', '.join(sorted(suites.SUITES))}")
        return EXIT_INPUT
    spec = suites.SUITES[args.suite]
    loader = serialize.Loader()
    inputs, digests = [], []
    for p in args.inputs:
        path = Path(p)
        if not path.is_file():
            _err(f"{p}: file not found")
            return EXIT_INPUT
        try:
            obj = loader.load_path(path)
        except (HocolimError, ValueError, OSError) as exc:
            _err(f"{p}: {type(exc).__name__}: {exc}")
            return EXIT_INPUT
        inputs.append((path.name, obj))
        digests.append((path.name, serialize.digest(path.read_bytes())))
    if inputs and not spec["inputs"]:
        _err(f"suite {args.suite!r} runs on its built-in fixtures and takes no inputs")
        return EXIT_INPUT
    budget = args.budget if args.budget is not None else _default_budget()
    try:
        report, timings = suites.run_suite(args.suite, inputs, N=args.truncation, budget=budget,
                                           input_digests=digests)
    except TypeError as exc:
        _err(f"input error: {exc}")
        return EXIT_INPUT
    text = suites.canonical_report(report)
    if args.out:
        Path(args.out).write_text(text)
        if args.timings:
            Path(args.timings).write_text(json.dumps(timings, sort_keys=True, indent=1) + "\n")
    else:
        sys.stdout.write(text)
    s = report["summary"]
    _err(f"{args.suite}: {s['pass']} passed, {s['fail']} failed, {s['budget_exceeded']} over budget, "
         f"{s['skipped']} skipped, {s['input_error']} input errors ({timings['total_ms']} ms)")
    return suites.exit_code(report)


METADATA_FIELDS = ("tool_version", "description", "inputs")


def report_diff(a, b):
    """Field-level difference between two reports of the same suite (timings never enter)."""
    if a.get("suite") != b.get("suite"):
        raise ValueError(f"suite mismatch: {a.get('suite')!r} vs {b.get('suite')!r}")
    out = {"suite": a["suite"], "metadata": {}, "parameters": {}, "changed": [], "added": [], "removed": [],
           "resolved": []}
    for k in METADATA_FIELDS:
        if a.get(k) != b.get(k):
            out["metadata"][k] = [a.get(k), b.get(k)]
    for k in ("truncation", "budget"):
        if a.get(k) != b.get(k):
            out["parameters"][k] = [a.get(k), b.get(k)]

    def index(r):
        return {(c["instance"], c["check"]): c for c in r.get("checks", [])}

    ia, ib = index(a), index(b)
    for key in ia:
        if key not in ib:
            out["removed"].append(list(key))
            continue
        ca, cb = ia[key], ib[key]
        if ca != cb:
            fields = sorted(f for f in set(ca) | set(cb) if ca.get(f) != cb.get(f))
            entry = {"instance": key[0], "check": key[1], "fields": fields,
                     "status": [ca["status"], cb["status"]]}
            out["changed"].append(entry)
            if ca["status"] == suites.BUDGET and cb["status"] != suites.BUDGET:
                out["resolved"].append(list(key))
    for key in ib:
        if key not in ia:
            out["added"].append(list(key))
    return out


def diff_is_empty(d, *, ignore_metadata=True):
    keys = ("parameters", "changed", "added", "removed")
    if not ignore_metadata:
        keys += ("metadata",)
    return not any(d[k] for k in keys)


def cmd_diff(args):
    try:
        a = json.loads(Path(args.a).read_text())
        b = json.loads(Path(args.b).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        _err(f"cannot read reports: {exc}")
        return EXIT_INPUT
    try:
        d = report_diff(a, b)
    except ValueError as exc:
        _err(str(exc))
        return EXIT_INPUT
    sys.stdout.write(json.dumps(d, sort_keys=True, indent=1) + "\n")
    return EXIT_OK if diff_is_empty(d) else EXIT_FAIL


def cmd_suites(args):
    for name, spec in suites.SUITES.items():
        takes = ", ".join(spec["inputs"]) or "built-in fixtures only"
        print(f"{name}\n    {spec['description']}\n    inputs: {takes}")
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="hocolim", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"hocolim {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check JSON inputs against the schemas and simplicial identities")
    p.add_argument("paths", nargs="+")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("run", help="run a named suite and write a canonical report")
    p.add_argument("--suite", required=True)
    p.add_argument("--truncation", "-N", type=int, default=3)
    p.add_argument("--budget", type=int, default=None, help="search node budget (default: $HOCOLIM_BUDGET)")
    p.add_argument("--out", default=None, help="report path (default: stdout)")
    p.add_argument("--timings", default=None, help="optional side file for per-check timings")
    p.add_argument("inputs", nargs="*")
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("diff", help="structural diff of two reports of the same suite")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(fn=cmd_diff)

    p = sub.add_parser("suites", help="list the registered suites")
    p.set_defaults(fn=cmd_suites)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    if getattr(args, "truncation", 3) is not None and getattr(args, "truncation", 3) < 1:
        _err("truncation must be at least 1")
        return EXIT_INPUT
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
