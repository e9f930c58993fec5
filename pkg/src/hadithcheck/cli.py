"""Operator command line: ingest corpora, serve the API, verify text, print reports."""

from __future__ import annotations

import argparse
import json
import os
import socket
import sys
from datetime import timedelta
from pathlib import Path

from .analytics import LogParseError, read_log, site_ranking, trend_report
from .corpus import BookId, CorpusError, load_corpus
from .match import DEFAULT_K, DEFAULT_THETA, EmptyQueryError, SearchParams, build_index
from .server import ServerConfig, create_app, trend_payload_entry, verdict_payload
from .verdict import verify

ENV_PREFIX = "HADITHCHECK_"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    # The spec'd exit-code convention reserves 2 for data errors, so usage
    # errors must exit 1 instead of argparse's default 2.
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _env(name: str, default: str | None = None) -> str | None:
    return os.environ.get(ENV_PREFIX + name, default)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hadithcheck", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_corpus(p: argparse.ArgumentParser, required: bool = True) -> None:
        p.add_argument(
            "--corpus",
            default=_env("CORPUS"),
            required=required and _env("CORPUS") is None,
            help="corpus JSONL file (env HADITHCHECK_CORPUS)",
        )

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--format",
            choices=("human", "machine"),
            default=_env("FORMAT", "human"),
            help="output format (env HADITHCHECK_FORMAT)",
        )

    def add_log(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--log",
            default=_env("LOG"),
            required=_env("LOG") is None,
            help="query log file (env HADITHCHECK_LOG)",
        )

    def add_search_params(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--theta",
            type=float,
            default=float(_env("THETA", str(DEFAULT_THETA))),
            help="found threshold in [0,1] (env HADITHCHECK_THETA)",
        )
        p.add_argument(
            "--k",
            type=int,
            default=int(_env("K", str(DEFAULT_K))),
            help="maximum results (env HADITHCHECK_K)",
        )

    p_ingest = sub.add_parser("ingest", help="validate a corpus file and print per-book counts")
    add_corpus(p_ingest)
    add_format(p_ingest)
    p_ingest.set_defaults(func=run_ingest)

    p_verify = sub.add_parser("verify", help="verify one text or a batch file")
    add_corpus(p_verify)
    group = p_verify.add_mutually_exclusive_group(required=True)
    group.add_argument("--text", help="one text to verify")
    group.add_argument("--file", help="file with one text per line ('-' for stdin)")
    add_search_params(p_verify)
    add_format(p_verify)
    p_verify.set_defaults(func=run_verify)

    p_serve = sub.add_parser("serve", help="run the HTTP verification service")
    add_corpus(p_serve)
    add_log(p_serve)
    p_serve.add_argument(
        "--addr",
        default=_env("ADDR", "127.0.0.1:8080"),
        help="listen address host:port (env HADITHCHECK_ADDR)",
    )
    add_search_params(p_serve)
    p_serve.add_argument(
        "--cors",
        default=_env("CORS", "*"),
        help="comma-separated CORS origin allow-list (env HADITHCHECK_CORS)",
    )
    p_serve.set_defaults(func=run_serve)

    p_report = sub.add_parser("report", help="print trend or site reports from a log")
    p_report.add_argument("kind", choices=("trends", "sites"))
    add_log(p_report)
    add_corpus(p_report, required=False)
    p_report.add_argument("--window-days", type=int, default=7)
    p_report.add_argument("--limit", type=int, default=10)
    add_format(p_report)
    p_report.set_defaults(func=run_report)

    return parser


def run_ingest(args: argparse.Namespace) -> int:
    corpus = load_corpus(args.corpus)
    counts = {book: 0 for book in BookId}
    for record in corpus:
        counts[record.book] += 1
    if args.format == "machine":
        for book in BookId:
            print(json.dumps({"book": book.value, "count": counts[book]}))
    else:
        for book in BookId:
            print(f"{book.value:<10} {counts[book]:>6}")
        print(f"{'total':<10} {len(corpus):>6}")
    return EXIT_OK


def _iter_texts(args: argparse.Namespace):
    if args.text is not None:
        yield args.text
        return
    if args.file == "-":
        for line in sys.stdin:
            yield line.rstrip("\n")
        return
    with open(args.file, encoding="utf-8") as fh:
        for line in fh:
            yield line.rstrip("\n")


def run_verify(args: argparse.Namespace) -> int:
    corpus = load_corpus(args.corpus)
    index = build_index(corpus)
    params = SearchParams(k=args.k, theta=args.theta)
    for text in _iter_texts(args):
        try:
            verdict = verify(index, corpus, text, params)
        except EmptyQueryError:
            if args.format == "machine":
                print(json.dumps({"error": "empty_query", "query": text}, ensure_ascii=False))
            else:
                print(f"error empty_query: {text!r}")
            continue
        if args.format == "machine":
            print(json.dumps(verdict_payload(verdict, corpus), ensure_ascii=False))
        else:
            if verdict.matches:
                head = verdict.best_grade.value
                rows = ", ".join(
                    f"{m.book.value}#{m.number_in_book} {m.grade.value} {m.score:.6f}"
                    for m in verdict.matches
                )
                print(f"{verdict.status.value} [{head}] {rows}")
            else:
                print("not_found (not in the six books)")
    return EXIT_OK


def run_serve(args: argparse.Namespace) -> int:
    import uvicorn

    host, _, port_str = args.addr.rpartition(":")
    if not host or not port_str.isdigit():
        print(f"error: bad --addr {args.addr!r}, expected host:port", file=sys.stderr)
        return EXIT_USAGE
    cors = tuple(origin.strip() for origin in args.cors.split(",") if origin.strip())
    config = ServerConfig(
        corpus_path=args.corpus,
        log_path=args.log,
        theta=args.theta,
        k=args.k,
        cors_origins=cors or ("*",),
    )
    app = create_app(config)  # refuses to serve on corpus/log errors
    sock = socket.create_server((host, int(port_str)))
    actual_host, actual_port = sock.getsockname()[:2]
    print(f"listening on http://{actual_host}:{actual_port}", flush=True)
    try:
        server = uvicorn.Server(uvicorn.Config(app, log_level="warning"))
        server.run(sockets=[sock])
    except KeyboardInterrupt:
        pass  # uvicorn re-raises the interrupt after its graceful shutdown
    finally:
        app.state.query_log.close()
    return EXIT_OK


def run_report(args: argparse.Namespace) -> int:
    if args.limit < 1 or args.window_days < 1:
        print("error: --limit and --window-days must be positive", file=sys.stderr)
        return EXIT_USAGE
    entries = read_log(args.log)
    corpus = load_corpus(args.corpus) if args.corpus else None

    if args.kind == "trends":
        trends = trend_report(entries, timedelta(days=args.window_days), args.limit)
        if args.format == "machine":
            for trend in trends:
                if corpus is not None:
                    print(json.dumps(trend_payload_entry(trend, corpus), ensure_ascii=False))
                else:
                    print(
                        json.dumps(
                            {
                                "hadith_id": trend.hadith_id,
                                "query_count": trend.query_count,
                                "last_seen": trend.last_seen.strftime("%Y-%m-%dT%H:%M:%SZ"),
                            }
                        )
                    )
        else:
            for trend in trends:
                print(f"{trend.query_count:>6}  {trend.hadith_id}")
            if not trends:
                print("(no entries in window)")
    else:
        sites = site_ranking(entries, args.limit)
        if args.format == "machine":
            for site in sites:
                print(
                    json.dumps(
                        {
                            "domain": site.domain,
                            "sahih_count": site.sahih_count,
                            "dhaeef_count": site.dhaeef_count,
                            "score": site.score,
                        }
                    )
                )
        else:
            for site in sites:
                print(
                    f"{site.score:.6f}  s={site.sahih_count:<4} d={site.dhaeef_count:<4} {site.domain}"
                )
            if not sites:
                print("(no rankable sites)")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors exit 1, --help exits 0
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CorpusError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except LogParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
