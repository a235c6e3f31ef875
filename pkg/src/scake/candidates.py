"""Candidate keyword selection."""

import logging
import math
from dataclasses import dataclass

import numpy as np

from ._accel import njit
from .errors import AnnotationFormatError, MissingAnnotations
from .porter import stem as porter_stem
from .textproc import tokenize

log = logging.getLogger(__name__)

MODES = ("sigma", "pos-annotation", "all-nonstop")
_MODE_ALIASES = {"pos": "pos-annotation", "all": "all-nonstop"}


@dataclass(frozen=True)
class TermOccurrences:
    term: str
    positions: tuple

    @property
    def count(self):
        return len(self.positions)

    @property
    def first(self):
        return self.positions[0]


@dataclass(frozen=True)
class CandidateSet:
    terms: tuple
    source: str

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __contains__(self, term):
        return any(t.term == term for t in self.terms)

    def names(self):
        return [t.term for t in self.terms]


def normalize_mode(mode):
    mode = _MODE_ALIASES.get(mode, mode)
    if mode not in MODES:
        raise ValueError(f"unknown candidate mode {mode!r}")
    return mode


def term_occurrences(doc):
    """Map every non-stopword term to its occurrences, in order of first appearance."""
    occ = {}
    for tok in doc.tokens:
        if tok.is_stopword:
            continue
        occ.setdefault(doc.term(tok), []).append(tok.position)
    return {t: TermOccurrences(t, tuple(p)) for t, p in occ.items()}


def sigma_index(occ, N):
    """Spatial-clustering index of a term: std of inter-occurrence gaps over their mean.

    Gaps include the two boundary gaps to positions 0 and N+1. A term seen
    once has no measurable spread and gets 0.
    """
    positions = occ.positions if isinstance(occ, TermOccurrences) else tuple(occ)
    n = len(positions)
    if n < 2:
        return 0.0
    if positions[-1] > N:
        raise ValueError("position beyond document length")
    return float(_sigma_kernel(np.asarray(positions, dtype=np.int64), N))


@njit
def _sigma_kernel(positions, N):
    n = positions.shape[0]
    mu = (N + 1.0) / (n + 1.0)
    prev = 0
    acc = 0.0
    for i in range(n + 1):
        p = positions[i] if i < n else N + 1
        d = (p - prev) - mu
        acc += d * d
        prev = p
    return np.sqrt(acc / (n - 1)) / mu


def _ranked_by_sigma(doc):
    occ = term_occurrences(doc)
    N = doc.length
    scored = [(sigma_index(o, N), o) for o in occ.values()]
    scored.sort(key=lambda so: (-so[0], so[1].first, so[1].term))
    return scored


def retained_count(fraction, vocabulary):
    if not 0 < fraction <= 1:
        raise ValueError("fraction must lie in (0, 1]")
    # Guard against 0.33 * 100 landing a hair above 33.
    return min(vocabulary, math.ceil(fraction * vocabulary - 1e-9))


def sigma_filter(doc, fraction=0.33):
    """Keep the top ``fraction`` of non-stopword terms ranked by sigma index.

    Ties go to the earlier first occurrence, then to the lexicographically
    smaller term.
    """
    ranked = _ranked_by_sigma(doc)
    keep = retained_count(fraction, len(ranked))
    kept = sorted((o for _, o in ranked[:keep]), key=lambda o: o.first)
    return CandidateSet(tuple(kept), "sigma")


def load_pos_annotations(path):
    """Read ``<doc-id>\\t<word> <word> ...`` lines into ``{doc_id: set(words)}``.

    Blank lines are ignored. A line without a tab raises
    :class:`AnnotationFormatError`.
    """
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip():
                continue
            if "\t" not in line:
                raise AnnotationFormatError(path, lineno, "expected '<doc-id>\\t<words>'")
            doc_id, words = line.split("\t", 1)
            doc_id = doc_id.strip()
            if not doc_id:
                raise AnnotationFormatError(path, lineno, "empty document id")
            out.setdefault(doc_id, set()).update(words.split())
    return out


def _annotation_terms(words, doc, stopwords):
    terms = set()
    for word in words:
        for tok in tokenize(word):
            if stopwords is not None and tok in stopwords:
                continue
            terms.add(porter_stem(tok) if doc.stemming else tok.lower())
    return terms


def assemble_candidates(doc, mode, stopwords=None, annotations=None, fraction=0.33):
    """Candidate set for ``doc`` under ``mode``.

    ``annotations`` is the set of tagged noun/adjective words for this
    document, required in ``pos-annotation`` mode. Tagged words are
    stopword-filtered and normalized like the document; every occurrence of
    a matching term in the text contributes a position.
    """
    mode = normalize_mode(mode)
    if mode == "sigma":
        return sigma_filter(doc, fraction)
    occ = term_occurrences(doc)
    if mode == "all-nonstop":
        return CandidateSet(tuple(occ.values()), mode)
    if annotations is None:
        raise MissingAnnotations(f"document {doc.doc_id!r}: pos-annotation mode needs an annotation file")
    if not annotations:
        log.warning("document %s has no annotated candidates", doc.doc_id)
    wanted = _annotation_terms(annotations, doc, stopwords)
    return CandidateSet(tuple(o for t, o in occ.items() if t in wanted), mode)
