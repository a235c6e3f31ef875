"""Command-line interface: ``scake {extract,evaluate,bench,stats}``.

Exit status is 0 on success, 1 on usage errors and 2 on data errors.
"""

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path

from . import __version__
from ._accel import backend
from .errors import ConfigError, ScakeError
from .evaluation import CSV_HEADER
from .pipeline import GRAPHS, METHODS, Corpus, RunConfig, ingest_corpus, load_config, run_bench, run_evaluate, run_extract, run_stats

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _add_run_options(p):
    p.add_argument("--config", help="flat key = value file; command-line flags override it")
    p.add_argument("--method", choices=sorted(METHODS))
    p.add_argument("--dataset", help="dataset label; picks the default k (hulth2003, krapivin2009, nlm500, semeval2010)")
    p.add_argument("--k", type=int)
    p.add_argument("--candidate-mode", choices=["sigma", "pos", "all", "pos-annotation", "all-nonstop"])
    p.add_argument("--sigma-fraction", type=float)
    p.add_argument("--graph", choices=["native", *GRAPHS], help="override the method's graph builder")
    p.add_argument("--window", type=int, help="window size for window-based graphs")
    p.add_argument("--damping", type=float)
    p.add_argument("--tol", type=float)
    p.add_argument("--max-iter", type=int)
    p.add_argument("--stopwords", metavar="PATH")
    p.add_argument("--annotations", metavar="PATH")
    p.add_argument("--no-stemming", dest="stemming", action="store_const", const=False, default=None)
    p.add_argument("--text-suffix")
    p.add_argument("--gold-suffix")
    p.add_argument("--workers", type=int)
    p.add_argument("--out", metavar="PATH", help="write here instead of stdout")
    p.add_argument("--format", choices=["json", "csv"], default="json")


def build_parser():
    parser = _Parser(prog="scake", description="Graph-based keyword extraction and evaluation.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({backend()})")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("extract", help="extract keywords from a text file or a corpus directory")
    p.add_argument("input")
    _add_run_options(p)

    p = sub.add_parser("evaluate", help="macro-averaged P/R/F1 over a corpus with gold keywords")
    p.add_argument("corpus")
    p.add_argument("--summary-only", action="store_true", help="omit per-document rows from JSON")
    _add_run_options(p)

    for name, helptext in (("bench", "per-document graph construction timings"), ("stats", "average graph topology")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("corpus")
        p.add_argument("--graphs", default=",".join(GRAPHS), help="comma-separated subset of " + ",".join(GRAPHS))
        if name == "bench":
            p.add_argument("--repeats", type=int, default=3)
        _add_run_options(p)
    return parser


def config_from_args(args):
    """Command-line flags > config file > method defaults."""
    cli = RunConfig(
        method=args.method,
        dataset=args.dataset,
        k=args.k,
        candidate_mode=args.candidate_mode,
        sigma_fraction=args.sigma_fraction,
        graph=args.graph,
        window=args.window,
        damping=args.damping,
        tol=args.tol,
        max_iter=args.max_iter,
        stemming=args.stemming,
        stopwords=args.stopwords,
        annotations=args.annotations,
        text_suffix=args.text_suffix,
        gold_suffix=args.gold_suffix,
        workers=args.workers,
    )
    if args.config:
        cli = cli.merged(load_config(args.config))
    return cli


def _load_input(path, config):
    p = Path(path)
    if p.is_dir():
        return ingest_corpus(p, config.text_suffix, config.gold_suffix)
    if not p.is_file():
        raise ScakeError(f"{path}: no such file or directory")
    name = p.name[: -len(config.text_suffix)] if p.name.endswith(config.text_suffix) else p.stem
    return Corpus({name: p.read_text(encoding="utf-8", errors="replace")})


def _fmt(x):
    return float(f"{x:.6f}")


def _render_extract(results, fmt):
    out = io.StringIO()
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["id", "rank", "term", "score"])
        for doc_id, ranked in results:
            for i, (term, score) in enumerate(ranked, 1):
                w.writerow([doc_id, i, term, f"{score:.6f}"])
    else:
        for doc_id, ranked in results:
            rec = {"id": doc_id, "keywords": [{"term": t, "score": _fmt(s)} for t, s in ranked]}
            out.write(json.dumps(rec, ensure_ascii=False) + "\n")
    return out.getvalue()


def _render_table(rows, fmt):
    if fmt == "csv":
        out = io.StringIO()
        w = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: f"{v:.6f}" if isinstance(v, float) else v for k, v in r.items()})
        return out.getvalue()
    return json.dumps([{k: _fmt(v) if isinstance(v, float) else v for k, v in r.items()} for r in rows], indent=2) + "\n"


def _graphs(arg):
    names = [g.strip().lower() for g in arg.split(",") if g.strip()]
    bad = [g for g in names if g not in GRAPHS]
    if bad or not names:
        raise UsageError(f"unknown graph type(s): {', '.join(bad) or '(none)'}")
    return names


def run(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    config = config_from_args(args)
    if args.command in ("bench", "stats") and config.candidate_mode is None and not config.annotations:
        config.candidate_mode = "all-nonstop"
    try:
        config = config.resolve()
    except ConfigError as exc:
        raise UsageError(str(exc)) from None

    if args.command == "extract":
        corpus = _load_input(args.input, config)
        text = _render_extract(run_extract(config, corpus), args.format)
    elif args.command == "evaluate":
        corpus = ingest_corpus(args.corpus, config.text_suffix, config.gold_suffix)
        report = run_evaluate(config, corpus)
        if args.format == "csv":
            text = CSV_HEADER + "\n" + report.csv_row() + "\n"
        else:
            text = json.dumps(report.as_record(not args.summary_only), indent=2) + "\n"
    elif args.command == "bench":
        corpus = ingest_corpus(args.corpus, config.text_suffix, config.gold_suffix)
        text = _render_table(run_bench(corpus, _graphs(args.graphs), config, args.repeats), args.format)
    else:
        corpus = ingest_corpus(args.corpus, config.text_suffix, config.gold_suffix)
        text = _render_table(run_stats(corpus, _graphs(args.graphs), config), args.format)

    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None):
    try:
        run(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (ScakeError, OSError) as exc:
        print(f"scake: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
