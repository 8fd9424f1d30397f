"""Command line front end.

Three subcommands:

* ``verify``: read an instance JSON (file or stdin), validate it against
  the shipped instance schema, run the matching bridge, self-check the
  report against the report schema and print it.  Output is canonical
  (sorted keys, fixed indentation), so identical inputs produce
  byte-identical reports.
* ``generate``: emit a random instance for a given kind, deterministic
  in the seed.
* ``schema``: print one of the shipped schemas.

Exit codes: 0 the verification passed, 1 it ran and found a mismatch,
2 the input was unusable, 3 the computation itself failed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from importlib import resources
from pathlib import Path

import jsonschema

from .bridge import random_instance, verify_instance

__all__ = ["main", "render_text", "canonical_json", "load_schema"]

EXIT_PASS = 0
EXIT_MISMATCH = 1
EXIT_INPUT_ERROR = 2
EXIT_COMPUTATION_ERROR = 3


def load_schema(name: str) -> dict:
    path = resources.files("entbridge.schemas").joinpath(f"{name}.schema.json")
    return json.loads(path.read_text(encoding="utf-8"))


def canonical_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _fmt(x: float) -> str:
    return format(x, ".12g")


def _estimate_lines(label: str, estimate: dict) -> list[str]:
    bound = estimate["bound"]
    lines = [
        f"{label} estimate: {estimate['status']}"
        + (f", entropy = {_fmt(estimate['value'])}" if estimate["value"] is not None else "")
    ]
    lines.append(
        f"{label} certified bound: log({bound['index']})/{bound['steps']}"
        f" = {_fmt(bound['value'])}"
    )
    if estimate["demoted"]:
        lines.append(f"{label} ratio estimate exceeded the bound and was demoted")
    return lines


def render_text(report: dict) -> str:
    """Human-readable rendering; a pure function of the report dict."""
    kind = report["kind"]
    lines = [f"kind: {kind}", f"verdict: {report['verdict']}"]
    if kind in ("finite", "shift"):
        lines.append("step  primal-index  dual-index  equal")
        rows = zip(
            report["indices"]["primal"],
            report["indices"]["dual"],
            report["per_step_equal"],
        )
        for n, (a, b, equal) in enumerate(rows, start=1):
            lines.append(f"{n:>4}  {a:>12}  {b:>10}  {'yes' if equal else 'NO'}")
        lines += _estimate_lines("primal", report["estimates"]["primal"])
        lines += _estimate_lines("dual", report["estimates"]["dual"])
    elif kind == "qp":
        lines.append(f"prime: {report['prime']}")
        lines.append("step  primal-index  dual-index  equal")
        rows = zip(
            report["indices"]["primal"],
            report["indices"]["dual"],
            report["per_step_equal"],
        )
        for n, (a, b, equal) in enumerate(rows, start=1):
            lines.append(f"{n:>4}  {a:>12}  {b:>10}  {'yes' if equal else 'NO'}")
        newton = report["routes"]["newton"]
        lines.append(
            f"closed form: {newton['multiple']} * log({newton['prime']})"
            f" = {_fmt(newton['value'])}"
        )
        lines += _estimate_lines("cotrajectory", report["routes"]["cotrajectory"])
        lines += _estimate_lines("trajectory", report["routes"]["trajectory"])
        for route in ("cotrajectory", "trajectory"):
            a = report["agreement"][route]
            lines.append(
                f"{route} vs closed form ({a['mode']}): "
                + ("consistent" if a["consistent"] else "INCONSISTENT")
            )
    elif kind == "real":
        lines.append(f"topological entropy: {_fmt(report['topological'])}")
        lines.append(f"algebraic entropy (dual side): {_fmt(report['algebraic'])}")
        lines.append(f"difference: {_fmt(report['difference'])}")
        if report["boundary_warning"]:
            lines.append("warning: eigenvalue modulus near 1; classification unreliable")
    return "\n".join(lines) + "\n"


def _read_instance(source: str) -> dict:
    text = sys.stdin.read() if source == "-" else Path(source).read_text(encoding="utf-8")
    return json.loads(text)


def _run_verify(args: argparse.Namespace) -> int:
    try:
        instance = _read_instance(args.instance)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    try:
        jsonschema.validate(instance, load_schema("instance"))
    except jsonschema.ValidationError as exc:
        print(f"error: invalid instance: {exc.message}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    try:
        report = verify_instance(instance)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except Exception as exc:
        print(f"error: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION_ERROR
    try:
        jsonschema.validate(report, load_schema("report"))
    except jsonschema.ValidationError as exc:
        print(f"error: malformed report: {exc.message}", file=sys.stderr)
        return EXIT_COMPUTATION_ERROR
    if args.format == "json":
        sys.stdout.write(canonical_json(report))
    else:
        sys.stdout.write(render_text(report))
    return EXIT_PASS if report["verdict"] == "pass" else EXIT_MISMATCH


def _run_generate(args: argparse.Namespace) -> int:
    rng = random.Random(args.seed)
    instance = random_instance(rng, args.kind)
    sys.stdout.write(canonical_json(instance))
    return EXIT_PASS


def _run_schema(args: argparse.Namespace) -> int:
    sys.stdout.write(canonical_json(load_schema(args.which)))
    return EXIT_PASS


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="entbridge",
        description="verify entropy duality on exact instances",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run both sides of one instance")
    verify.add_argument("instance", help="instance JSON file, or - for stdin")
    verify.add_argument("--format", choices=("json", "text"), default="json")
    verify.set_defaults(run=_run_verify)

    generate = sub.add_parser("generate", help="emit a random instance")
    generate.add_argument("kind", choices=("finite", "shift", "qp", "real"))
    generate.add_argument("--seed", type=int, default=0)
    generate.set_defaults(run=_run_generate)

    schema = sub.add_parser("schema", help="print a shipped JSON schema")
    schema.add_argument("which", choices=("instance", "report"))
    schema.set_defaults(run=_run_schema)

    args = parser.parse_args(argv)
    return args.run(args)


if __name__ == "__main__":
    sys.exit(main())
