"""Corpus ingestion, run configuration and the extraction/evaluation drivers."""

import logging
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .candidates import assemble_candidates, load_pos_annotations, normalize_mode
from .decompose import truss_decompose, weighted_core_decompose
from .errors import ConfigError, EmptyCorpus, MissingAnnotations, ScakeError
from .evaluation import gold_unigrams, macro_average, score_document
from .graph import NAMED_SPECS, build_cag, build_window_graph, graph_stats
from .scoring import (
    RankedKeywords,
    biased_pagerank,
    degree_score,
    first_positions,
    kcore_scores,
    pagerank,
    positional_weight,
    rank,
    scscore,
)
from .textproc import StopwordList, build_document

log = logging.getLogger(__name__)

# method -> (candidate mode, graph, scorer)
METHODS = {
    "scake": ("pos-annotation", "cag", "scscore"),
    "lake": ("sigma", "cag", "scscore"),
    "textrank": ("pos-annotation", "tg", "pagerank"),
    "positionrank": ("pos-annotation", "tg", "biased_pagerank"),
    "degext": ("all-nonstop", "dg", "degree"),
    "kcore": ("pos-annotation", "gow", "kcore"),
}
GRAPHS = ("cag", "tg", "dg", "gow")
DATASET_K = {"hulth2003": 25, "krapivin2009": 10, "nlm500": 30, "semeval2010": 30}
DEFAULT_K = 10
# Corpora of short abstracts where the sigma filter is not applied.
SHORT_DOCUMENT_DATASETS = {"hulth2003"}


@dataclass
class RunConfig:
    method: str = None
    dataset: str = None
    k: int = None
    candidate_mode: str = None
    sigma_fraction: float = None
    graph: str = None
    window: int = None
    damping: float = None
    tol: float = None
    max_iter: int = None
    stemming: bool = None
    stopwords: str = None
    annotations: str = None
    text_suffix: str = None
    gold_suffix: str = None
    workers: int = None

    def merged(self, other):
        """Fields set in ``self`` win over those in ``other``."""
        return RunConfig(**{
            f.name: getattr(self, f.name) if getattr(self, f.name) is not None else getattr(other, f.name)
            for f in fields(self)
        })

    def resolve(self):
        """Fill every unset field with the method/dataset default."""
        method = (self.method or "scake").lower()
        if method not in METHODS:
            raise ConfigError(f"unknown method {method!r}; choose from {', '.join(METHODS)}")
        mode, graph, _ = METHODS[method]
        dataset = (self.dataset or "").lower()
        if method == "lake" and dataset in SHORT_DOCUMENT_DATASETS:
            mode = "all-nonstop"
        graph = (self.graph or graph).lower()
        if graph == "native":
            graph = METHODS[method][1]
        if graph not in GRAPHS:
            raise ConfigError(f"unknown graph {graph!r}")
        try:
            mode = normalize_mode(self.candidate_mode or mode)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        k = self.k if self.k is not None else DATASET_K.get(dataset, DEFAULT_K)
        if k < 1:
            raise ConfigError("k must be positive")
        return replace(
            self,
            method=method,
            dataset=dataset,
            k=k,
            candidate_mode=mode,
            sigma_fraction=0.33 if self.sigma_fraction is None else self.sigma_fraction,
            graph=graph,
            damping=0.95 if self.damping is None else self.damping,
            tol=1e-4 if self.tol is None else self.tol,
            max_iter=100 if self.max_iter is None else self.max_iter,
            stemming=True if self.stemming is None else self.stemming,
            text_suffix=self.text_suffix or ".abstr",
            gold_suffix=self.gold_suffix or ".uncontr",
            workers=self.workers or 1,
        )

    @property
    def scorer(self):
        return METHODS[self.method][2]


_BOOL = {"1": True, "true": True, "yes": True, "on": True, "0": False, "false": False, "no": False, "off": False}


def load_config(path):
    """Read a flat ``key = value`` file whose keys are RunConfig field names."""
    types = {f.name: f.type for f in fields(RunConfig)}
    kwargs = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in types:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            kind = types[key]
            try:
                if kind in (int, "int"):
                    value = int(value)
                elif kind in (float, "float"):
                    value = float(value)
                elif kind in (bool, "bool"):
                    value = _BOOL[value.lower()]
            except (ValueError, KeyError):
                raise ConfigError(f"{path}:{lineno}: bad value for {key}: {value!r}") from None
            kwargs[key] = value
    return RunConfig(**kwargs)


def _id_key(doc_id):
    return [int(p) if p.isdigit() else p for p in re.split(r"(\d+)", doc_id)]


@dataclass
class Corpus:
    texts: dict
    gold: dict = field(default_factory=dict)  # id -> raw gold text
    name: str = ""

    @property
    def ids(self):
        return sorted(self.texts, key=_id_key)

    def __len__(self):
        return len(self.texts)


def ingest_corpus(directory, text_suffix=".abstr", gold_suffix=".uncontr", name=""):
    """Pair ``<id><text_suffix>`` with ``<id><gold_suffix>`` files below ``directory``.

    Subdirectories are searched too, so a distribution's train and test
    folders can be pointed at together. Text files without gold are kept
    for extraction but skipped by evaluation.
    """
    root = Path(directory)
    if not root.is_dir():
        raise EmptyCorpus(f"{directory} is not a directory")
    texts, gold = {}, {}
    for path in sorted(root.rglob("*")):
        if not path.is_file():
            continue
        for suffix, bucket in ((text_suffix, texts), (gold_suffix, gold)):
            if path.name.endswith(suffix):
                doc_id = path.name[: -len(suffix)]
                if doc_id in bucket:
                    raise ScakeError(f"duplicate document id {doc_id!r} under {directory}")
                bucket[doc_id] = path.read_text(encoding="utf-8", errors="replace")
    if not texts:
        raise EmptyCorpus(f"no '*{text_suffix}' files under {directory}")
    for doc_id in sorted(set(texts) - set(gold), key=_id_key):
        log.warning("document %s has no gold file", doc_id)
    for doc_id in sorted(set(gold) - set(texts), key=_id_key):
        log.warning("gold file %s has no document; ignored", doc_id)
        del gold[doc_id]
    return Corpus(texts, gold, name or root.name)


class Resources:
    """Stopwords and annotations shared read-only by all documents of a run."""

    def __init__(self, config):
        self.stopwords = StopwordList.load(config.stopwords) if config.stopwords else StopwordList.default()
        self.annotations = None
        if config.annotations:
            self.annotations = load_pos_annotations(config.annotations)
        elif config.candidate_mode == "pos-annotation":
            raise MissingAnnotations(
                f"method {config.method} with candidate mode pos-annotation needs --annotations"
            )


def build_graph(doc, cand, config):
    if config.graph == "cag":
        return build_cag(doc, cand)
    spec = NAMED_SPECS[config.graph]
    if config.window is not None:
        spec = replace(spec, size=config.window)
    return build_window_graph(doc, cand, spec)


def score_graph(g, cand, config):
    """Score vector for graph ``g`` with the configured method's scorer."""
    scorer = config.scorer
    if scorer == "degree":
        return degree_score(g)
    omega = {o.term: positional_weight(o) for o in cand.terms}
    if scorer == "pagerank":
        return pagerank(g.undirected(), config.damping, config.tol, config.max_iter)
    if scorer == "biased_pagerank":
        return biased_pagerank(g.undirected(), omega, config.damping, config.tol, config.max_iter)
    if scorer == "kcore":
        u = g.undirected()
        return kcore_scores(u, weighted_core_decompose(u))
    u = g.undirected()
    return scscore(u, truss_decompose(u), omega)


def extract_document(text, config, resources, doc_id=""):
    """Run one document through candidates, graph, scoring and ranking."""
    doc = build_document(text, resources.stopwords, config.stemming, doc_id)
    annotations = None
    if config.candidate_mode == "pos-annotation":
        annotations = resources.annotations.get(doc_id, set())
    cand = assemble_candidates(doc, config.candidate_mode, resources.stopwords, annotations, config.sigma_fraction)
    g = build_graph(doc, cand, config)
    if g.empty:
        log.warning("document %s produced an empty graph", doc_id)
        return RankedKeywords(())
    sv = score_graph(g, cand, config)
    return rank(sv, first_positions(doc), config.k)


def _extract_task(args):
    doc_id, text, config, resources = args
    try:
        return doc_id, extract_document(text, config, resources, doc_id)
    except ScakeError as exc:
        raise type(exc)(f"document {doc_id}: {exc}") from exc


def _map(fn, tasks, workers):
    if workers <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks, chunksize=8))


def run_extract(config, corpus, resources=None):
    """``[(doc_id, RankedKeywords)]`` ordered by document id."""
    config = config.resolve()
    resources = resources or Resources(config)
    tasks = [(i, corpus.texts[i], config, resources) for i in corpus.ids]
    return _map(_extract_task, tasks, config.workers)


def run_evaluate(config, corpus, resources=None):
    """Macro-averaged report over the documents that have gold keywords."""
    config = config.resolve()
    resources = resources or Resources(config)
    ids = [i for i in corpus.ids if i in corpus.gold]
    if config.candidate_mode == "pos-annotation":
        missing = [i for i in ids if not resources.annotations.get(i)]
        for i in missing:
            log.warning("document %s has no POS annotations; excluded", i)
        ids = [i for i in ids if resources.annotations.get(i)]
    if not ids:
        raise EmptyCorpus("no document with gold keywords to evaluate")
    sub = Corpus({i: corpus.texts[i] for i in ids}, {i: corpus.gold[i] for i in ids}, corpus.name)
    results = run_extract(config, sub, resources)
    reports = []
    for doc_id, ranked in results:
        gold = gold_unigrams(corpus.gold[doc_id], config.stemming, resources.stopwords)
        reports.append(score_document(ranked, gold, doc_id))
    return macro_average(
        reports, config.method, config.dataset or corpus.name, config.k,
        structural=config.scorer == "kcore",
    )


def run_bench(corpus, graphs=GRAPHS, config=None, repeats=3):
    """Mean seconds per document for each graph builder, averaged over ``repeats`` runs.

    ``total`` includes document building and candidate selection; ``graph``
    times the builder alone. Runs single-process for clean timings.
    """
    config = (config or RunConfig(candidate_mode="all-nonstop")).resolve()
    resources = Resources(config)
    rows = []
    for name in graphs:
        cfg = replace(config, graph=name)
        # Untimed pass over one document so JIT compilation is not measured.
        first = corpus.ids[0]
        doc = build_document(corpus.texts[first], resources.stopwords, cfg.stemming, first)
        ann = resources.annotations.get(first, set()) if cfg.candidate_mode == "pos-annotation" else None
        build_graph(doc, assemble_candidates(doc, cfg.candidate_mode, resources.stopwords, ann, cfg.sigma_fraction), cfg)
        total = graph_only = 0.0
        for _ in range(repeats):
            for doc_id in corpus.ids:
                t0 = time.perf_counter()
                doc = build_document(corpus.texts[doc_id], resources.stopwords, cfg.stemming, doc_id)
                ann = resources.annotations.get(doc_id, set()) if cfg.candidate_mode == "pos-annotation" else None
                cand = assemble_candidates(doc, cfg.candidate_mode, resources.stopwords, ann, cfg.sigma_fraction)
                t1 = time.perf_counter()
                build_graph(doc, cand, cfg)
                t2 = time.perf_counter()
                total += t2 - t0
                graph_only += t2 - t1
        n = repeats * len(corpus)
        rows.append({"graph": name, "total": total / n, "graph_only": graph_only / n})
    return rows


def run_stats(corpus, graphs=GRAPHS, config=None):
    """Per-graph-type averages of |V|, |E|, clustering, APL and density."""
    config = (config or RunConfig(candidate_mode="all-nonstop")).resolve()
    resources = Resources(config)
    rows = []
    docs = []
    for doc_id in corpus.ids:
        doc = build_document(corpus.texts[doc_id], resources.stopwords, config.stemming, doc_id)
        ann = resources.annotations.get(doc_id, set()) if config.candidate_mode == "pos-annotation" else None
        docs.append((doc, assemble_candidates(doc, config.candidate_mode, resources.stopwords, ann, config.sigma_fraction)))
    for name in graphs:
        cfg = replace(config, graph=name)
        stats = [graph_stats(build_graph(doc, cand, cfg)) for doc, cand in docs]
        stats = [s for s in stats if s.nodes]
        n = len(stats) or 1
        rows.append({
            "graph": name,
            "V": sum(s.nodes for s in stats) / n,
            "E": sum(s.edges for s in stats) / n,
            "CC": sum(s.clustering for s in stats) / n,
            "APL": sum(s.apl for s in stats) / n,
            "density": sum(s.density for s in stats) / n,
            "documents": len(stats),
        })
    return rows
