import numpy as np
import pytest

from scake.candidates import CandidateSet, term_occurrences
from scake.graph import TextGraph
from scake.textproc import Document, Token


def doc_from_sentences(sentences, stopwords=(), breaks=()):
    """Document whose sentences are the given word lists; words are used as-is as terms.

    ``breaks`` holds 1-based positions followed by a punctuation mark.
    """
    tokens = []
    for s, words in enumerate(sentences):
        for w in words:
            pos = len(tokens) + 1
            tokens.append(Token(w, w, pos, s, w in stopwords, pos in breaks))
    return Document(tuple(tokens), len(sentences), stemming=True)


def all_candidates(doc):
    return CandidateSet(tuple(term_occurrences(doc).values()), "all-nonstop")


def graph_from_edges(edges, n=None, weights=None):
    """Undirected TextGraph with integer node names 0..n-1 rendered as strings."""
    canon = sorted({(min(u, v), max(u, v)) for u, v in edges if u != v})
    if n is None:
        n = 1 + max((max(e) for e in canon), default=-1)
    w = [1] * len(canon) if weights is None else [weights[e] for e in canon]
    src = [u for u, _ in canon]
    dst = [v for _, v in canon]
    return TextGraph([str(i) for i in range(n)], src, dst, w)


def random_graph(rng, max_nodes=8):
    n = int(rng.integers(1, max_nodes + 1))
    p = rng.uniform(0.1, 0.95)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return graph_from_edges(edges, n)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
