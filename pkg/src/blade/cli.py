"""Command-line entry point.

Subcommands: ingest, index, query, serve, study. Exit codes: 0 success,
1 usage error, 2 data error (missing/malformed inputs), 3 runtime error.
Output is deterministic for fixed inputs; the one timestamp (index build
time) is suppressed with --no-timestamps.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from blade.errors import BladeError, DataError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_RUNTIME = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); we map usage errors to 1
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="blade", description="curriculum-grounded study assistant")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p_ingest = sub.add_parser("ingest", help="parse a course manifest into instructional units")
    p_ingest.add_argument("--manifest", required=True)
    p_ingest.add_argument("--dump", help="write units as JSON lines to this path ('-' for stdout)")

    p_index = sub.add_parser("index", help="build and save the retrieval index")
    p_index.add_argument("--manifest", required=True)
    p_index.add_argument("--out", required=True)
    p_index.add_argument("--no-timestamps", action="store_true",
                         help="omit the build timestamp from output")

    p_query = sub.add_parser("query", help="ask a question against a saved index")
    p_query.add_argument("--index", required=True)
    p_query.add_argument("text")
    p_query.add_argument("--module", default=None, help="current module tag for the session")
    p_query.add_argument("--weights", default=None, help="trained ranker weights (JSON)")
    p_query.add_argument("--max-citations", type=int, default=4)
    p_query.add_argument("--format", choices=("text", "records"), default="text")

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--config", required=True)
    p_serve.add_argument("--listen", default=None,
                         help="host:port, overriding the config file")

    p_study = sub.add_parser("study", help="impact-study tools")
    study_sub = p_study.add_subparsers(dest="study_command", metavar="subcommand")

    p_sim = study_sub.add_parser("simulate", help="generate a synthetic cohort")
    p_sim.add_argument("--seed", type=int, required=True)
    p_sim.add_argument("--students", type=int, default=85)
    p_sim.add_argument("--out", default="study_records")

    p_an = study_sub.add_parser("analyze", help="compute study statistics")
    p_an.add_argument("--records", required=True)
    p_an.add_argument("--out", required=True)
    p_an.add_argument("--per-quiz-bands", action="store_true",
                      help="band students per quiz instead of by mean score")
    p_an.add_argument("--usage-out", default=None,
                      help="also write the resource-usage report to this CSV")
    return parser


def _cmd_ingest(args) -> int:
    from blade.corpus import build_corpus_from_path, dump_units

    manifest, units = build_corpus_from_path(args.manifest)
    print(f"course {manifest.course_id}: {len(units)} units from "
          f"{len(manifest.resources)} resources")
    if args.dump == "-":
        dump_units(units, sys.stdout)
    elif args.dump:
        with open(args.dump, "w", encoding="utf-8") as fh:
            dump_units(units, fh)
        print(f"dumped units to {args.dump}")
    return EXIT_OK


def _cmd_index(args) -> int:
    from blade.corpus import build_corpus_from_path
    from blade.index import HashingEmbedder, build_index, save_index

    manifest, units = build_corpus_from_path(args.manifest)
    index = build_index(units, HashingEmbedder(), resources=manifest.resources)
    save_index(index, args.out)
    stamp = "" if args.no_timestamps else f" at {index.built_at}"
    print(f"indexed {len(index)} units ({index.embedder_id}) -> {args.out}{stamp}")
    return EXIT_OK


def _cmd_query(args) -> int:
    from blade.dialogue import ResponsePolicy, Session, answer_query
    from blade.index import HashingEmbedder, RankerWeights, default_weights, load_index

    embedder = HashingEmbedder()
    index = load_index(args.index, expected_embedder_id=embedder.embedder_id)
    if args.weights:
        weights = RankerWeights.from_dict(json.loads(Path(args.weights).read_text()))
    else:
        weights = default_weights()
    session = Session(id="cli", course_id="cli", current_module=args.module)
    turn = answer_query(
        session, args.text, index, weights,
        ResponsePolicy(max_citations=args.max_citations), embedder=embedder,
    )
    if args.format == "records":
        print(json.dumps({"type": "response", "text": turn.text,
                          "no_results": turn.no_results}, ensure_ascii=False))
        for c in turn.citations:
            print(json.dumps({"type": "citation", "unit_id": c.unit_id,
                              "display_label": c.display_label,
                              "excerpt": c.excerpt}, ensure_ascii=False))
    else:
        print(turn.text)
        if turn.citations:
            print()
            for c in turn.citations:
                print(f"  [{c.unit_id}] {c.display_label}")
    return EXIT_OK


def _cmd_serve(args) -> int:
    import os

    from blade.service import load_service_config, serve

    if args.listen:
        os.environ["BLADE_LISTEN"] = args.listen
    serve(load_service_config(args.config))
    return EXIT_OK


def _cmd_study(args) -> int:
    if args.study_command == "simulate":
        from blade.study import save_study_dir, simulate_cohort

        records, items = simulate_cohort(args.seed, n_students=args.students)
        save_study_dir(records, items, args.out)
        print(f"simulated {args.students} students, {len(records)} quiz sittings, "
              f"{len(items)} items -> {args.out}")
        return EXIT_OK
    if args.study_command == "analyze":
        from blade.study import load_study_dir, resource_usage_report, write_analysis_files

        records, items = load_study_dir(args.records)
        written = write_analysis_files(records, items, args.out,
                                       per_quiz_bands=args.per_quiz_bands)
        for path in written:
            print(f"wrote {path}")
        usage = resource_usage_report(records)
        print("resource usage (% of sittings per config):")
        for config in sorted(usage):
            cats = usage[config]
            line = ", ".join(f"{k}={cats[k]:.1f}" for k in sorted(cats))
            print(f"  config {config}: {line}")
        if args.usage_out:
            with open(args.usage_out, "w", encoding="utf-8") as fh:
                fh.write("config,category,percent\n")
                for config in sorted(usage):
                    for category in sorted(usage[config]):
                        fh.write(f"{config},{category},{usage[config][category]:.4f}\n")
            print(f"wrote {args.usage_out}")
        return EXIT_OK
    raise _UsageError("study requires a subcommand: simulate | analyze")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help()
            return EXIT_USAGE
        handler = {
            "ingest": _cmd_ingest,
            "index": _cmd_index,
            "query": _cmd_query,
            "serve": _cmd_serve,
            "study": _cmd_study,
        }[args.command]
        return handler(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except BladeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except KeyboardInterrupt:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
