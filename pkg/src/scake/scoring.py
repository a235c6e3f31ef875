"""Word scorers: SCScore and the baseline scorers."""

from dataclasses import dataclass, field

import numpy as np

from ._accel import njit
from .errors import InvalidTeleport


@dataclass(frozen=True)
class ScoreVector:
    scores: dict
    method: str
    params: dict = field(default_factory=dict)
    # Set for extractors whose output size is fixed by graph structure.
    structural: bool = False

    def __len__(self):
        return len(self.scores)

    def dump(self, fh):
        for term, score in sorted(self.scores.items(), key=lambda ts: (-ts[1], ts[0])):
            fh.write(f"{term}\t{score:.6f}\n")


def positional_weight(occ):
    """Sum of reciprocal 1-based positions over all occurrences."""
    positions = occ.positions if hasattr(occ, "positions") else occ
    return float(sum(1.0 / p for p in positions))


def _neighbour_arrays(g):
    """Both directions of every undirected edge: (node, neighbour, weight)."""
    u = g.undirected()
    return (
        np.concatenate([u.src, u.dst]),
        np.concatenate([u.dst, u.src]),
        np.concatenate([u.weight, u.weight]).astype(np.float64),
    )


def semantic_strength_all(g, td):
    """Weighted sum of neighbour truss levels for every node."""
    a, b, w = _neighbour_arrays(g)
    return np.bincount(a, weights=w * td.node_level[b], minlength=g.n)


def semantic_connectivity_all(g, td):
    """Distinct neighbour truss levels per node, over the graph's maximum level."""
    a, b, _ = _neighbour_arrays(g)
    if a.size == 0:
        return np.zeros(g.n)
    pairs = np.unique(np.stack([a, td.node_level[b]], axis=1), axis=0)
    distinct = np.bincount(pairs[:, 0], minlength=g.n)
    return distinct / float(td.maxtruss)


def semantic_strength(g, td, v):
    return float(semantic_strength_all(g, td)[g.index[v]])


def semantic_connectivity(g, td, v):
    return float(semantic_connectivity_all(g, td)[g.index[v]])


def scscore(g, td, weights):
    """Product of node truss level, semantic strength, semantic connectivity and positional weight.

    ``weights`` maps each node term to its positional weight.
    """
    chi = semantic_strength_all(g, td)
    sc = semantic_connectivity_all(g, td)
    omega = np.array([weights[t] for t in g.nodes], dtype=np.float64)
    score = td.node_level * chi * sc * omega
    return ScoreVector(dict(zip(g.nodes, score.tolist())), "scscore")


@njit
def _power_iteration(indptr, indices, data, strength, teleport, d, tol, max_iter):
    n = teleport.shape[0]
    p = np.full(n, 1.0 / n)
    new = np.empty(n)
    for it in range(max_iter):
        for v in range(n):
            acc = 0.0
            for k in range(indptr[v], indptr[v + 1]):
                u = indices[k]
                acc += data[k] / strength[u] * p[u]
            new[v] = (1.0 - d) * teleport[v] + d * acc
        delta = 0.0
        for v in range(n):
            delta += abs(new[v] - p[v])
            p[v] = new[v]
        if delta < tol:
            return p, it + 1
    return p, max_iter


def _walk(g, teleport, d, tol, max_iter):
    if not 0 < d < 1:
        raise ValueError("damping must lie in (0, 1)")
    a = g.adjacency()
    strength = np.asarray(a.sum(axis=1)).ravel()
    # Symmetric matrix: row v lists the in-neighbours u of v with weight w_uv.
    p, _ = _power_iteration(
        a.indptr.astype(np.int64), a.indices.astype(np.int64), a.data,
        strength, teleport, float(d), float(tol), int(max_iter),
    )
    return p


def pagerank(g, d=0.95, tol=1e-4, max_iter=100):
    """Weighted PageRank by power iteration from the uniform vector.

    Transitions are proportional to edge weight; directed graphs are walked
    through their undirected view. Iteration stops once the L1 change drops
    below ``tol``.
    """
    params = {"d": d, "tol": tol, "max_iter": max_iter}
    if g.n == 0:
        return ScoreVector({}, "pagerank", params)
    p = _walk(g, np.full(g.n, 1.0 / g.n), d, tol, max_iter)
    return ScoreVector(dict(zip(g.nodes, p.tolist())), "pagerank", params)


def biased_pagerank(g, teleport, d=0.95, tol=1e-4, max_iter=100):
    """PageRank whose random jumps land according to ``teleport`` (normalized here)."""
    params = {"d": d, "tol": tol, "max_iter": max_iter}
    if g.n == 0:
        return ScoreVector({}, "biased_pagerank", params)
    t = np.array([float(teleport.get(v, 0.0)) for v in g.nodes])
    if np.any(t < 0) or t.sum() <= 0:
        raise InvalidTeleport("teleport weights must be non-negative and not all zero")
    p = _walk(g, t / t.sum(), d, tol, max_iter)
    return ScoreVector(dict(zip(g.nodes, p.tolist())), "biased_pagerank", params)


def degree_score(g):
    """Unweighted degree; in+out degree for directed graphs."""
    deg = np.bincount(np.concatenate([g.src, g.dst]), minlength=g.n).astype(np.float64)
    return ScoreVector(dict(zip(g.nodes, deg.tolist())), "degree")


def kcore_retain(g, cd):
    """Terms of the top weighted core."""
    if g.n == 0:
        return set()
    top = cd.core_number.max()
    return {t for t, c in zip(g.nodes, cd.core_number) if c == top}


def kcore_scores(g, cd):
    """Score vector holding only the top-core terms, scored by core number."""
    keep = kcore_retain(g, cd)
    scores = {t: float(c) for t, c in zip(g.nodes, cd.core_number) if t in keep}
    return ScoreVector(scores, "kcore", structural=True)


@dataclass(frozen=True)
class RankedKeywords:
    items: tuple  # ((term, score), ...)

    def terms(self):
        return [t for t, _ in self.items]

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)


def first_positions(doc):
    first = {}
    for tok in doc.tokens:
        first.setdefault(doc.term(tok), tok.position)
    return first


def rank(sv, doc, k):
    """Top-``k`` terms by descending score.

    Ties go to the earlier first occurrence in ``doc`` (a Document, or a
    precomputed ``{term: first position}`` mapping), then to the
    lexicographically smaller term. Structural score vectors (top-core
    retention) ignore ``k`` and return every term.
    """
    if k < 1:
        raise ValueError("k must be positive")
    first_position = doc if isinstance(doc, dict) else first_positions(doc)
    order = sorted(
        sv.scores.items(),
        key=lambda ts: (-ts[1], first_position.get(ts[0], float("inf")), ts[0]),
    )
    if not sv.structural:
        order = order[:k]
    return RankedKeywords(tuple(order))
