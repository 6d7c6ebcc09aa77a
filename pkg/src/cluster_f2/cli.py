"""Command-line interface.

Every subcommand prints one JSON document (default) or CSV table to
stdout; ``--emit PATH`` additionally writes the same bytes to a file.
Outputs are byte-identical across runs with identical parameters.

Exit codes: 0 success, 1 verification failure, 2 usage error (including
resource-guard violations without ``--force`` and malformed input
files).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .coloring import enumerate_points, f2_coloring, invalid_diagonals
from .covering import (
    CoverReport,
    counterexample_cover,
    upsilon_cover,
    verify_covering,
)
from .errors import ResourceLimitError
from .hexmoves import classes_with_points, verify_theorem_main
from .polygon import Triangulation, enumerate_triangulations
from .quiver_count import (
    BRUTEFORCE_MAX_MUTABLE,
    IceQuiver,
    closed_form,
    dynkin_quiver,
    f2_count_bruteforce,
    f2_count_recursive,
    seed_count,
)

SCHEMA = "cluster-f2/1"

ENUMERATE_MAX_M = 12
_UNCOVERED_PREVIEW = 10


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cluster-f2",
        description=(
            "Exact combinatorics of triangulated polygons: point counts, "
            "colorings, hexagonal-move classes, and covering sets."
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("json", "csv"),
        default="json",
        help="output format (default json)",
    )
    common.add_argument(
        "--emit", metavar="PATH", help="also write the output to this file"
    )
    common.add_argument(
        "--verbose",
        action="store_true",
        help="include per-point detail in reports",
    )
    common.add_argument(
        "--force",
        action="store_true",
        help="override resource guards (prints a warning to stderr)",
    )
    common.add_argument(
        "--threads",
        type=_positive_int,
        default=os.cpu_count() or 1,
        metavar="N",
        help=(
            "upper bound on worker threads (default: logical core count); "
            "results never depend on it"
        ),
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser(
        "enumerate",
        parents=[common],
        help="list all triangulations (default) or points at m",
    )
    p.add_argument("--m", type=int, required=True)
    p.add_argument(
        "--points",
        action="store_true",
        help="enumerate points instead of triangulations",
    )
    p.add_argument("--q", type=int, default=2, help="field size (points mode)")
    p.set_defaults(handler=_cmd_enumerate)

    p = sub.add_parser(
        "color",
        parents=[common],
        help="compute the unique q=2 proper coloring of a triangulation",
    )
    p.add_argument("--file", help="triangulation JSON file")
    p.add_argument("--m", type=int, help="polygon parameter (inline mode)")
    p.add_argument(
        "--diagonals",
        help='inline diagonal list as JSON, e.g. "[[0,2],[0,3],[0,4]]"',
    )
    p.set_defaults(handler=_cmd_color)

    p = sub.add_parser(
        "count",
        parents=[common],
        help="count points of a quiver by every applicable method",
    )
    p.add_argument(
        "--quiver",
        required=True,
        help='quiver JSON file path or builder spec like "dynkin:D:5"',
    )
    p.set_defaults(handler=_cmd_count)

    p = sub.add_parser(
        "classes",
        parents=[common],
        help="hexagonal-move classes of all triangulations at m",
    )
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(handler=_cmd_classes)

    p = sub.add_parser(
        "verify-theorem",
        parents=[common],
        help="check that move classes equal coloring fibers at m",
    )
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(handler=_cmd_verify_theorem)

    p = sub.add_parser(
        "cover",
        parents=[common],
        help="build and verify the covering construction at (m, q)",
    )
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(handler=_cmd_cover)

    p = sub.add_parser(
        "counterexample",
        parents=[common],
        help="the m=11 covering of all q=2 points that misses one point",
    )
    p.add_argument("--q", type=int, default=3, help="field size (default 3)")
    p.set_defaults(handler=_cmd_counterexample)

    p = sub.add_parser(
        "table1",
        parents=[common],
        help="reference count table for a Dynkin family, cross-checked",
    )
    p.add_argument("--type", choices=("A", "D", "E"), required=True)
    p.add_argument(
        "--max-rank",
        type=int,
        default=None,
        help="largest rank (defaults: A 10, D 7; ignored for E)",
    )
    p.set_defaults(handler=_cmd_table1)

    p = sub.add_parser(
        "verify-cover",
        parents=[common],
        help="check a file of triangulations as a covering at (m, q)",
    )
    p.add_argument("--file", required=True, help="cover or enumeration JSON")
    p.add_argument(
        "--q", type=int, default=None, help="field size (default: from file, else 2)"
    )
    p.set_defaults(handler=_cmd_verify_cover)

    return parser


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (payload dict, success flag)


def _cmd_enumerate(args) -> tuple[dict, bool]:
    if args.m > ENUMERATE_MAX_M and not args.force:
        raise ResourceLimitError(
            f"enumeration at m={args.m} exceeds the guard of "
            f"{ENUMERATE_MAX_M}; pass --force to override"
        )
    if args.points:
        points = enumerate_points(args.m, args.q)
        payload = {
            "schema": SCHEMA,
            "command": "enumerate",
            "kind": "points",
            "m": args.m,
            "q": args.q,
            "count": len(points),
            "points": [p.to_json_dict() for p in points],
        }
    else:
        ts = enumerate_triangulations(args.m)
        payload = {
            "schema": SCHEMA,
            "command": "enumerate",
            "kind": "triangulations",
            "m": args.m,
            "count": len(ts),
            "triangulations": [t.to_json_dict() for t in ts],
        }
    return payload, True


def _load_triangulation(args) -> Triangulation:
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            return Triangulation.from_json_dict(json.load(fh))
    if args.m is None or args.diagonals is None:
        raise ValueError("provide either --file or both --m and --diagonals")
    return Triangulation.make(args.m, json.loads(args.diagonals))


def _cmd_color(args) -> tuple[dict, bool]:
    t = _load_triangulation(args)
    point = f2_coloring(t)
    payload = {
        "schema": SCHEMA,
        "command": "color",
        "triangulation": t.to_json_dict(),
        "point": point.to_json_dict(),
    }
    return payload, True


def _parse_quiver_spec(spec: str) -> tuple[IceQuiver, str | None, int | None]:
    if spec.startswith("dynkin:"):
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError(
                f"builder spec {spec!r} must look like dynkin:D:5"
            )
        family, rank = parts[1], int(parts[2])
        return dynkin_quiver(family, rank), family, rank
    with open(spec, encoding="utf-8") as fh:
        return IceQuiver.from_json_dict(json.load(fh)), None, None


def _cmd_count(args) -> tuple[dict, bool]:
    quiver, family, rank = _parse_quiver_spec(args.quiver)
    counts: dict[str, int] = {}
    rec = f2_count_recursive(quiver)
    counts[rec.method] = rec.count
    n_mutable = len(quiver.mutable_ids)
    if n_mutable <= BRUTEFORCE_MAX_MUTABLE or args.force:
        brute = f2_count_bruteforce(quiver, force=args.force)
        counts[brute.method] = brute.count
    if family is not None and not (family == "E" and rank in (6, 7)):
        counts["closed-form"] = closed_form(family, rank)
    agree = len(set(counts.values())) == 1
    payload = {
        "schema": SCHEMA,
        "command": "count",
        "quiver": quiver.to_json_dict(),
        "mutable_count": n_mutable,
        "counts": counts,
        "agree": agree,
    }
    return payload, agree


def _cmd_classes(args) -> tuple[dict, bool]:
    classes = classes_with_points(args.m, force=args.force)
    payload = {
        "schema": SCHEMA,
        "command": "classes",
        "m": args.m,
        "class_count": len(classes),
        "classes": [
            {
                "point": point.to_json_dict(),
                "size": len(members),
                "members": [t.to_json_dict() for t in members],
            }
            for point, members in classes
        ],
    }
    return payload, True


def _cmd_verify_theorem(args) -> tuple[dict, bool]:
    report = verify_theorem_main(args.m, force=args.force)
    payload = {
        "schema": SCHEMA,
        "command": "verify-theorem",
        "m": report.m,
        "partitions_equal": report.partitions_equal,
        "class_count": report.class_count,
        "fiber_count": report.fiber_count,
        "histogram": [[size, count] for size, count in report.histogram],
    }
    return payload, report.partitions_equal


def _report_payload(
    command: str, report: CoverReport, verbose: bool
) -> tuple[dict, bool]:
    covering = not report.uncovered
    payload = {
        "schema": SCHEMA,
        "command": command,
        "m": report.m,
        "q": report.q,
        "size": len(report.cover),
        "points_checked": report.points_checked,
        "covered_count": report.covered_count,
        "uncovered_count": len(report.uncovered),
        "covering": covering,
        "minimal": report.minimal,
        "uncovered": [
            p.to_json_dict()
            for p in report.uncovered[
                : None if verbose else _UNCOVERED_PREVIEW
            ]
        ],
        "cover": [t.to_json_dict() for t in report.cover],
    }
    if verbose:
        payload["assignment"] = [
            {
                "point": point.to_json_dict(),
                "members": [t.to_json_dict() for t in members],
            }
            for point, members in sorted(
                report.assignment.items(), key=lambda kv: kv[0].labels
            )
        ]
    return payload, covering


def _cmd_cover(args) -> tuple[dict, bool]:
    report = upsilon_cover(args.m, args.q, force=args.force)
    payload, covering = _report_payload("cover", report, args.verbose)
    return payload, covering and report.minimal


def _cmd_counterexample(args) -> tuple[dict, bool]:
    witness, _, report = counterexample_cover(args.q)
    bad = sorted(invalid_diagonals(witness))
    payload, _ = _report_payload("counterexample", report, args.verbose)
    payload["witness"] = witness.to_json_dict()
    payload["witness_covered"] = witness not in report.uncovered
    payload["invalid_diagonal_count"] = len(bad)
    payload["invalid_diagonals"] = [[d.i, d.j] for d in bad]
    # success means: every q=2 point covered, witness not covered
    f2_covered = report.covered_count == report.points_checked - 1
    ok = f2_covered and not payload["witness_covered"]
    return payload, ok


def _table1_rows(family: str, max_rank: int | None, force: bool) -> list[dict]:
    if family == "A":
        ranks = range(1, (max_rank or 10) + 1)
    elif family == "D":
        ranks = range(4, (max_rank or 7) + 1)
    else:
        ranks = (8,)
    rows = []
    for n in ranks:
        quiver = dynkin_quiver(family, n)
        counts = [closed_form(family, n)]
        row: dict = {"type": family, "n": n, "closed_form": counts[0]}
        rec = f2_count_recursive(quiver)
        row["recursion"] = rec.count
        counts.append(rec.count)
        if len(quiver.mutable_ids) <= BRUTEFORCE_MAX_MUTABLE or force:
            brute = f2_count_bruteforce(quiver, force=force)
            row["brute_force"] = brute.count
            counts.append(brute.count)
        else:
            row["brute_force"] = None
        if family == "A":
            points = len(enumerate_points(n + 2, 2))
            row["points"] = points
            counts.append(points)
        else:
            row["points"] = None
        row["seeds"] = seed_count(family, n)
        row["agree"] = len(set(counts)) == 1
        rows.append(row)
    return rows


def _cmd_table1(args) -> tuple[dict, bool]:
    rows = _table1_rows(args.type, args.max_rank, args.force)
    ok = all(row["agree"] for row in rows)
    payload = {
        "schema": SCHEMA,
        "command": "table1",
        "type": args.type,
        "rows": rows,
        "agree": ok,
    }
    return payload, ok


def _cmd_verify_cover(args) -> tuple[dict, bool]:
    with open(args.file, encoding="utf-8") as fh:
        data = json.load(fh)
    if "cover" in data:
        raw = data["cover"]
    elif "triangulations" in data:
        raw = data["triangulations"]
    else:
        raise ValueError(
            f"{args.file} contains neither 'cover' nor 'triangulations'"
        )
    members = [Triangulation.from_json_dict(item) for item in raw]
    if not members:
        if "m" not in data:
            raise ValueError(f"{args.file} has no members and no 'm' field")
        m = data["m"]
    else:
        m = members[0].m
        if "m" in data and data["m"] != m:
            raise ValueError(
                f"file-level m={data['m']} conflicts with member m={m}"
            )
    q = args.q if args.q is not None else data.get("q", 2)
    report = verify_covering(members, m, q)
    payload, covering = _report_payload("verify-cover", report, args.verbose)
    return payload, covering


# ---------------------------------------------------------------------------
# rendering


def _render_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def _csv_rows(payload: dict) -> tuple[list[str], list[list]]:
    command = payload["command"]
    if command == "enumerate" and payload["kind"] == "triangulations":
        return ["m", "diagonals"], [
            [t["m"], ";".join(f"{i}-{j}" for i, j in t["diagonals"])]
            for t in payload["triangulations"]
        ]
    if command == "enumerate":
        return ["m", "q", "labels"], [
            [p["m"], p["q"], ";".join(map(str, p["labels"]))]
            for p in payload["points"]
        ]
    if command == "color":
        return ["m", "labels"], [
            [
                payload["point"]["m"],
                ";".join(map(str, payload["point"]["labels"])),
            ]
        ]
    if command == "count":
        return ["method", "count"], [
            [method, count] for method, count in payload["counts"].items()
        ]
    if command == "classes":
        return ["index", "size", "labels"], [
            [idx, cls["size"], ";".join(map(str, cls["point"]["labels"]))]
            for idx, cls in enumerate(payload["classes"])
        ]
    if command == "table1":
        header = [
            "type", "n", "closed_form", "recursion",
            "brute_force", "points", "seeds", "agree",
        ]
        return header, [
            [
                row["type"], row["n"], row["closed_form"], row["recursion"],
                "" if row["brute_force"] is None else row["brute_force"],
                "" if row["points"] is None else row["points"],
                row["seeds"], row["agree"],
            ]
            for row in payload["rows"]
        ]
    # report-style commands: flat key/value table
    skip = {"schema", "command", "cover", "uncovered", "assignment",
            "invalid_diagonals", "witness", "histogram", "classes"}
    rows = [
        [key, value]
        for key, value in payload.items()
        if key not in skip
    ]
    if "witness" in payload:
        rows.append(
            ["witness_labels", ";".join(map(str, payload["witness"]["labels"]))]
        )
    if "histogram" in payload:
        rows.extend(
            [f"class_size_{size}", count]
            for size, count in payload["histogram"]
        )
    return ["key", "value"], rows


def _render_csv(payload: dict) -> str:
    header, rows = _csv_rows(payload)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.force:
        print("warning: resource guards overridden", file=sys.stderr)
    try:
        payload, ok = args.handler(args)
    except ResourceLimitError as exc:
        print(f"cluster-f2: resource guard: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"cluster-f2: file not found: {exc.filename}", file=sys.stderr)
        return 2
    except json.JSONDecodeError as exc:
        print(f"cluster-f2: malformed JSON input: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"cluster-f2: invalid input: {exc}", file=sys.stderr)
        return 2
    text = (
        _render_json(payload) if args.format == "json" else _render_csv(payload)
    )
    sys.stdout.write(text)
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
