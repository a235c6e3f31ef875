"""Graph-based keyword extraction: sCAKE, LAKE and four baseline extractors."""

__version__ = "0.1.0"

from ._accel import USE_NUMBA, backend
from .candidates import (
    CandidateSet,
    TermOccurrences,
    assemble_candidates,
    load_pos_annotations,
    sigma_filter,
    sigma_index,
)
from .decompose import CoreDecomposition, TrussDecomposition, truss_decompose, weighted_core_decompose
from .errors import (
    AnnotationFormatError,
    ConfigError,
    EmptyCorpus,
    EmptyDocument,
    InvalidTeleport,
    MissingAnnotations,
    ScakeError,
    UnsupportedGraph,
)
from .evaluation import EvalReport, coverage_bound, jaccard, load_gold, macro_average, score_document
from .graph import DG, GOW, TG, TextGraph, WindowSpec, build_cag, build_window_graph, graph_stats
from .pipeline import Corpus, RunConfig, extract_document, ingest_corpus, run_bench, run_evaluate, run_extract, run_stats
from .porter import stem
from .scoring import (
    RankedKeywords,
    ScoreVector,
    biased_pagerank,
    degree_score,
    kcore_retain,
    pagerank,
    positional_weight,
    rank,
    scscore,
    semantic_connectivity,
    semantic_strength,
)
from .textproc import Document, StopwordList, Token, build_document, split_sentences, tokenize
