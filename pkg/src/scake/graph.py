"""Text graph construction: context-aware graphs and sliding-window graphs."""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components, shortest_path

from ._accel import njit


class TextGraph:
    """Simple graph over candidate terms.

    Edges live in three parallel arrays ``src``, ``dst`` and ``weight``.
    Undirected edges are stored once with ``src < dst``; arrays are sorted by
    ``(src, dst)``. Node ids index into ``nodes``, which keeps the candidates'
    first-occurrence order. Isolated candidates are never nodes.
    """

    def __init__(self, nodes, src, dst, weight, directed=False, weighted=True):
        self.nodes = tuple(nodes)
        self.src = np.asarray(src, dtype=np.int64)
        self.dst = np.asarray(dst, dtype=np.int64)
        self.weight = np.asarray(weight, dtype=np.int64)
        self.directed = directed
        self.weighted = weighted
        self.index = {t: i for i, t in enumerate(self.nodes)}
        self._csr = None

    @property
    def n(self):
        return len(self.nodes)

    @property
    def m(self):
        return int(self.src.shape[0])

    @property
    def empty(self):
        return self.m == 0

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"TextGraph({self.n} nodes, {self.m} {kind} edges)"

    def edges(self):
        """Yield ``(u_term, v_term, weight)`` in storage order."""
        for u, v, w in zip(self.src.tolist(), self.dst.tolist(), self.weight.tolist()):
            yield self.nodes[u], self.nodes[v], w

    def edge_weights(self):
        return {(u, v): w for u, v, w in self.edges()}

    def undirected(self):
        """Undirected view: reverse pairs merged, weights summed."""
        if not self.directed:
            return self
        lo = np.minimum(self.src, self.dst)
        hi = np.maximum(self.src, self.dst)
        u, v, w = _aggregate(lo, hi, self.weight, self.n)
        if not self.weighted:
            w = np.ones_like(w)
        return TextGraph(self.nodes, u, v, w, directed=False, weighted=self.weighted)

    def adjacency(self):
        """Symmetric CSR adjacency (weights) of the undirected view, cached."""
        if self._csr is None:
            g = self.undirected()
            rows = np.concatenate([g.src, g.dst])
            cols = np.concatenate([g.dst, g.src])
            vals = np.concatenate([g.weight, g.weight]).astype(np.float64)
            self._csr = sp.csr_matrix((vals, (rows, cols)), shape=(self.n, self.n))
        return self._csr

    def degree(self):
        a = self.adjacency()
        return np.diff(a.indptr)

    def dump(self, fh):
        """Write ``u<TAB>v<TAB>weight`` lines sorted by term pair."""
        for u, v, w in sorted(self.edges()):
            fh.write(f"{u}\t{v}\t{w}\n")


@dataclass(frozen=True)
class WindowSpec:
    size: int = 2
    source: str = "processed"
    overspan: bool = True
    directed: bool = False
    weighted: bool = True

    def __post_init__(self):
        if self.size < 2:
            raise ValueError("window size must be at least 2")
        if self.source not in ("original", "processed"):
            raise ValueError("window source must be 'original' or 'processed'")


# Baseline parameterizations: TextRank/PositionRank, DegExt, Graph-of-Words.
TG = WindowSpec(size=4, source="original", overspan=True, directed=False, weighted=True)
DG = WindowSpec(size=2, source="processed", overspan=False, directed=True, weighted=False)
GOW = WindowSpec(size=4, source="processed", overspan=True, directed=False, weighted=True)
NAMED_SPECS = {"tg": TG, "dg": DG, "gow": GOW}


def _aggregate(u, v, w, n):
    """Sum weights of repeated (u, v) pairs; output sorted by (u, v)."""
    if u.size == 0:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty, empty
    keys = u * n + v
    uniq, inverse = np.unique(keys, return_inverse=True)
    sums = np.bincount(inverse, weights=w).astype(np.int64)
    return uniq // n, uniq % n, sums


def _finalize(terms, u, v, w, directed, weighted):
    """Drop isolated candidates and relabel node ids compactly."""
    used = np.zeros(len(terms), dtype=bool)
    used[u] = True
    used[v] = True
    remap = np.cumsum(used) - 1
    nodes = [t for t, keep in zip(terms, used) if keep]
    if not weighted:
        w = np.ones_like(w)
    return TextGraph(nodes, remap[u], remap[v], w, directed=directed, weighted=weighted)


def _candidate_ids(cand):
    terms = [o.term for o in sorted(cand.terms, key=lambda o: o.first)]
    return terms, {t: i for i, t in enumerate(terms)}


def build_cag(doc, cand):
    """Context-aware graph.

    Each pair of consecutive sentences forms one pseudo-document (a single
    sentence forms the only one). With C the Boolean term/pseudo-document
    matrix, edge weights are the off-diagonal entries of C C^T.
    """
    terms, ids = _candidate_ids(cand)
    n_docs = max(doc.sentence_count - 1, 1)
    sentence_of = np.fromiter((t.sentence_index for t in doc.tokens), dtype=np.int64, count=doc.length)
    t = np.repeat(
        np.array([ids[o.term] for o in cand.terms], dtype=np.int64),
        [len(o.positions) for o in cand.terms],
    )
    pos = np.fromiter((p for o in cand.terms for p in o.positions), dtype=np.int64, count=t.size)
    s = sentence_of[pos - 1]
    # Sentence s belongs to pseudo-documents s-1 and s.
    rows = np.concatenate([t, t])
    cols = np.concatenate([s - 1, s])
    ok = (cols >= 0) & (cols < n_docs)
    C = sp.csr_matrix(
        (np.ones(int(ok.sum()), dtype=np.int64), (rows[ok], cols[ok])), shape=(len(terms), n_docs)
    )
    C.data[:] = 1  # duplicates summed on construction; presence only
    T = sp.triu(C @ C.T, k=1).tocoo()
    order = np.lexsort((T.col, T.row))
    u = T.row[order].astype(np.int64)
    v = T.col[order].astype(np.int64)
    w = T.data[order].astype(np.int64)
    keep = w > 0
    return _finalize(terms, u[keep], v[keep], w[keep], directed=False, weighted=True)


def _token_stream(doc, ids, spec):
    """Term ids (-1 for non-candidates) and segment ids for the window source."""
    term_ids = []
    segments = []
    seg = 0
    prev_sentence = 0
    for tok in doc.tokens:
        if not spec.overspan and tok.sentence_index != prev_sentence:
            seg += 1
        prev_sentence = tok.sentence_index
        tid = -1 if tok.is_stopword else ids.get(doc.term(tok), -1)
        if spec.source == "original" or tid >= 0:
            term_ids.append(tid)
            segments.append(seg)
        if not spec.overspan and tok.boundary_after:
            seg += 1
    return np.asarray(term_ids, dtype=np.int64), np.asarray(segments, dtype=np.int64)


@njit
def _window_pairs(term_ids, segments, size, directed):
    n = term_ids.shape[0]
    cap = n * (size - 1)
    us = np.empty(cap, dtype=np.int64)
    vs = np.empty(cap, dtype=np.int64)
    k = 0
    for i in range(n):
        a = term_ids[i]
        if a < 0:
            continue
        last = min(n, i + size)
        for j in range(i + 1, last):
            if segments[j] != segments[i]:
                break
            b = term_ids[j]
            if b < 0 or b == a:
                continue
            if directed or a < b:
                us[k] = a
                vs[k] = b
            else:
                us[k] = b
                vs[k] = a
            k += 1
    return us[:k], vs[:k]


def build_window_graph(doc, cand, spec):
    """Sliding-window co-occurrence graph.

    Two candidate occurrences are linked when they are fewer than
    ``spec.size`` tokens apart in the chosen stream and, without overspan,
    no sentence end or punctuation mark separates them. Weighted graphs count
    such occurrence pairs; directed graphs point from the earlier occurrence
    to the later one.
    """
    terms, ids = _candidate_ids(cand)
    term_ids, segments = _token_stream(doc, ids, spec)
    u, v = _window_pairs(term_ids, segments, spec.size, spec.directed)
    u, v, w = _aggregate(u, v, np.ones(u.shape[0], dtype=np.int64), len(terms))
    return _finalize(terms, u, v, w, directed=spec.directed, weighted=spec.weighted)


@dataclass(frozen=True)
class GraphStats:
    nodes: int
    edges: int
    clustering: float
    apl: float
    density: float
    apl_defined: bool = True


def graph_stats(g):
    """|V|, |E|, transitivity, average path length of the largest component, density.

    Directed graphs are measured through their undirected view.
    """
    u = g.undirected()
    n, m = u.n, u.m
    if n == 0:
        return GraphStats(0, 0, 0.0, 0.0, 0.0, apl_defined=False)
    a = u.adjacency().copy()
    a.data[:] = 1.0
    deg = np.diff(a.indptr).astype(np.float64)
    triples = float((deg * (deg - 1) / 2).sum())
    closed = float((a @ a).multiply(a).sum())  # 6 x triangles
    clustering = closed / (2 * triples) if triples else 0.0
    density = 2.0 * m / (n * (n - 1)) if n > 1 else 0.0
    _, labels = connected_components(a, directed=False)
    largest = np.argmax(np.bincount(labels))
    members = np.flatnonzero(labels == largest)
    if members.size < 2:
        return GraphStats(n, m, clustering, 0.0, density, apl_defined=False)
    sub = a[members][:, members]
    dist = shortest_path(sub, method="D", unweighted=True, directed=False)
    k = members.size
    apl = float(dist.sum() / (k * (k - 1)))
    return GraphStats(n, m, clustering, apl, density)
