"""Command line entry point.

Exit codes: 0 success, 1 negative verdict (unsatisfiable, invalid colouring,
theorem violation), 2 input or format error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .coloring import ColoringError, format_coloring, parse_coloring, parse_defects, solve, verify_coloring
from .corpus import MAX_GENERATED_N, CorpusEntry, embedded, generate_family, load_file
from .discharging import apply_builtin_rules, case_analysis_check, discharge_report
from .embedding import NotPlanar, PlanarCodeError, find_embedding, serialize_planar_code
from .family import is_in_family
from .graph import GraphError, format_edge_list
from .lemmas import NotInFamily, scan_all
from .pipeline import builtin_corpus, conjecture_sweep, corpus_run, generated_corpus, load_corpus
from .rules import ParseError, evaluate, lint, parse_rules

log = logging.getLogger("defcolor")

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


def _load(path: str) -> list[CorpusEntry]:
    try:
        return load_file(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    except (GraphError, PlanarCodeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _defects(text: str):
    try:
        return parse_defects(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad defect vector {text!r}; expected e.g. 2,4") from None


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(rows: list[dict], fields: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


# -- subcommands -------------------------------------------------------------------


def cmd_solve(args) -> int:
    entries = _load(args.input)
    chunks, status = [], EXIT_OK
    for entry in entries:
        coloring = solve(entry.abstract, args.defects)
        if coloring is None:
            print(f"{entry.name}: no {args.defects}-colouring exists", file=sys.stderr)
            status = EXIT_NEGATIVE
            continue
        header = f"# {entry.name}\n" if len(entries) > 1 else ""
        chunks.append(header + format_coloring(coloring))
    _emit("".join(chunks), args.output)
    return status


def cmd_verify(args) -> int:
    entries = _load(args.input)
    if len(entries) != 1:
        raise InputError(f"{args.input}: verify expects exactly one graph, found {len(entries)}")
    g = entries[0].abstract
    try:
        colors = parse_coloring(Path(args.coloring).read_text(encoding="utf-8"), g.n)
        violations = verify_coloring(g, colors, args.defects)
    except OSError as exc:
        raise InputError(f"{args.coloring}: {exc.strerror or exc}") from None
    except ColoringError as exc:
        raise InputError(f"{args.coloring}: {exc}") from None
    for v in violations:
        print(f"vertex {v.vertex}: colour {v.color} has {v.same_color_neighbors} same-coloured neighbours > {v.budget}")
    if not violations:
        print("valid")
    return EXIT_NEGATIVE if violations else EXIT_OK


def cmd_family(args) -> int:
    out = []
    for path in args.inputs:
        for entry in _load(path):
            out.append({"graph": entry.name, **is_in_family(entry.abstract).to_json()})
    _emit(_json(out), args.output)
    return EXIT_OK


def cmd_scan_lemmas(args) -> int:
    out = []
    for entry in _load(args.input):
        record: dict = {"graph": entry.name}
        try:
            record["reports"] = [r.to_json() for r in scan_all(embedded(entry))]
        except (NotInFamily, NotPlanar, GraphError) as exc:
            record["error"] = str(exc)
        out.append(record)
    _emit(_json(out), args.output)
    return EXIT_OK


def cmd_discharge(args) -> int:
    ruleset = None
    if args.rules != "builtin":
        try:
            ruleset = parse_rules(Path(args.rules).read_text(encoding="utf-8"))
        except OSError as exc:
            raise InputError(f"{args.rules}: {exc.strerror or exc}") from None
        except ParseError as exc:
            raise InputError(f"{args.rules}:{exc}") from None
        for warning in lint(ruleset):
            log.warning("%s: %s", args.rules, warning)
    reports = []
    for entry in _load(args.input):
        try:
            eg = embedded(entry)
        except (NotPlanar, GraphError) as exc:
            raise InputError(f"{entry.name}: {exc}") from None
        result = apply_builtin_rules(eg) if ruleset is None else evaluate(eg, ruleset)
        reports.append(discharge_report(eg, result, case_analysis_check(eg, result.final)))
    _emit(_json(reports[0] if len(reports) == 1 else reports), args.output)
    return EXIT_OK


_RUN_FIELDS = ["graph", "n", "m", "member", "satisfiable", "valid", "flag", "violated_lemmas", "negative", "unsound"]


def cmd_corpus_run(args) -> int:
    if args.inputs:
        entries, errors = load_corpus(args.inputs)
    else:
        entries, errors = builtin_corpus() + generated_corpus(args.max_n), []
    records = corpus_run(entries, args.defects, args.jobs)
    violations = [r["graph"] for r in records if r.get("flag") == "THEOREM-VIOLATION"]
    summary = {
        "graphs": len(records),
        "members": sum(r["member"] for r in records),
        "satisfiable": sum(r.get("solver", {}).get("satisfiable", False) for r in records),
        "theorem_violations": len(violations),
        "file_errors": len(errors),
    }
    if args.format == "csv":
        rows = []
        for r in records:
            rows.append(
                {
                    **r,
                    "satisfiable": r.get("solver", {}).get("satisfiable", ""),
                    "valid": r.get("solver", {}).get("valid", ""),
                    "flag": r.get("flag", ""),
                    "violated_lemmas": ";".join(r.get("lemmas", {}).get("violated", [])),
                    "negative": r.get("discharge", {}).get("negative", ""),
                    "unsound": r.get("discharge", {}).get("unsound", ""),
                }
            )
        _emit(_csv(rows, _RUN_FIELDS), args.output)
    else:
        report = {
            "schema": "defcolor.corpus-run/1",
            "defects": list(args.defects),
            "summary": summary,
            "errors": errors,
            "graphs": records,
        }
        _emit(_json(report), args.output)
    return EXIT_NEGATIVE if violations else EXIT_OK


def cmd_conjecture_sweep(args) -> int:
    if args.inputs:
        entries, errors = load_corpus(args.inputs)
    else:
        entries, errors = builtin_corpus() + generated_corpus(args.max_n), []
    rows = conjecture_sweep(entries, args.jobs)
    if args.format == "csv":
        fields = ["d1", "d2", "members", "satisfiable", "unsatisfiable", "proven", "status"]
        _emit(_csv(rows, fields), args.output)
    else:
        _emit(_json({"schema": "defcolor.conjecture-sweep/1", "errors": errors, "rows": rows}), args.output)
    return EXIT_NEGATIVE if any(r["status"] == "VIOLATION" for r in rows) else EXIT_OK


def cmd_gen_small(args) -> int:
    if args.max_n > MAX_GENERATED_N:
        raise InputError(f"--max-n is limited to {MAX_GENERATED_N}")
    graphs = generate_family(args.max_n)
    if args.format == "edges":
        _emit("".join(format_edge_list(find_embedding(g)) + "\n" for g in graphs), args.output)
        return EXIT_OK
    data = serialize_planar_code([find_embedding(g) for g in graphs])
    if args.output:
        Path(args.output).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
    return EXIT_OK


# -- argument parsing ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="defcolor",
        description="Defective colourings and discharging checks for planar graphs without 3-, 4- and 6-cycles.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, defects=True, output=True):
        if defects:
            p.add_argument("--defects", type=_defects, default=(2, 4), help="defect budgets, e.g. 2,4")
        if output:
            p.add_argument("-o", "--output", help="write to this file instead of stdout")

    p = sub.add_parser("solve", help="find a defective colouring")
    p.add_argument("input")
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a colouring file against a graph")
    p.add_argument("input")
    p.add_argument("coloring")
    common(p, output=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("family", help="planar and free of 3-, 4-, 6-cycles?")
    p.add_argument("inputs", nargs="+")
    common(p, defects=False)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("scan-lemmas", help="structural checks on a family member")
    p.add_argument("input")
    common(p, defects=False)
    p.set_defaults(func=cmd_scan_lemmas)

    p = sub.add_parser("discharge", help="run discharging rules and the case analysis")
    p.add_argument("input")
    p.add_argument("--rules", default="builtin", help="path to a .drules file, or 'builtin'")
    common(p, defects=False)
    p.set_defaults(func=cmd_discharge)

    for name, func, help_ in (
        ("corpus-run", cmd_corpus_run, "full pipeline over a corpus"),
        ("conjecture-sweep", cmd_conjecture_sweep, "colourability for (0,6), (1,5), (2,4), (3,3)"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("inputs", nargs="*", help="planar_code or edge-list files (default: built-in corpus)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--max-n", type=int, default=MAX_GENERATED_N, help="size bound for the generated corpus")
        common(p, defects=name == "corpus-run")
        p.set_defaults(func=func)

    p = sub.add_parser("gen-small", help="write all connected family members up to --max-n")
    p.add_argument("--max-n", type=int, default=MAX_GENERATED_N)
    p.add_argument("--format", choices=("planar_code", "edges"), default="planar_code")
    common(p, defects=False)
    p.set_defaults(func=cmd_gen_small)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
