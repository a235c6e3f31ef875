"""Hierarchical graph decompositions: k-truss and weighted k-core."""

import heapq
from dataclasses import dataclass

import numpy as np

from ._accel import njit
from .errors import UnsupportedGraph


@dataclass(frozen=True)
class TrussDecomposition:
    """Edge truss levels (aligned with the graph's edge arrays) and node levels."""

    edge_level: np.ndarray
    node_level: np.ndarray
    maxtruss: int
    nodes: tuple = ()

    def node_levels(self):
        return dict(zip(self.nodes, self.node_level.tolist()))

    def dump_nodes(self, fh):
        for term, lam in sorted(self.node_levels().items()):
            fh.write(f"{term}\t{lam}\n")


@dataclass(frozen=True)
class CoreDecomposition:
    core_number: np.ndarray
    nodes: tuple = ()

    def as_dict(self):
        return dict(zip(self.nodes, self.core_number.tolist()))


@njit
def _build_adjacency(n, src, dst):
    m = src.shape[0]
    deg = np.zeros(n, dtype=np.int64)
    for e in range(m):
        deg[src[e]] += 1
        deg[dst[e]] += 1
    indptr = np.zeros(n + 1, dtype=np.int64)
    for i in range(n):
        indptr[i + 1] = indptr[i] + deg[i]
    fill = indptr[:-1].copy()
    nbr = np.empty(2 * m, dtype=np.int64)
    eid = np.empty(2 * m, dtype=np.int64)
    # Edges arrive sorted by (src, dst), so every list comes out sorted.
    for e in range(m):
        a = src[e]
        b = dst[e]
        nbr[fill[a]] = b
        eid[fill[a]] = e
        fill[a] += 1
        nbr[fill[b]] = a
        eid[fill[b]] = e
        fill[b] += 1
    return indptr, nbr, eid


@njit
def _truss_kernel(n, src, dst):
    m = src.shape[0]
    indptr, nbr, eid = _build_adjacency(n, src, dst)

    sup = np.zeros(m, dtype=np.int64)
    for e in range(m):
        i = indptr[src[e]]
        ie = indptr[src[e] + 1]
        j = indptr[dst[e]]
        je = indptr[dst[e] + 1]
        while i < ie and j < je:
            if nbr[i] == nbr[j]:
                sup[e] += 1
                i += 1
                j += 1
            elif nbr[i] < nbr[j]:
                i += 1
            else:
                j += 1

    # Bucket sort edges by support.
    max_sup = 0
    for e in range(m):
        if sup[e] > max_sup:
            max_sup = sup[e]
    bin_start = np.zeros(max_sup + 2, dtype=np.int64)
    for e in range(m):
        bin_start[sup[e] + 1] += 1
    for s in range(1, max_sup + 2):
        bin_start[s] += bin_start[s - 1]
    order = np.empty(m, dtype=np.int64)
    pos = np.empty(m, dtype=np.int64)
    cursor = bin_start.copy()
    for e in range(m):
        p = cursor[sup[e]]
        order[p] = e
        pos[e] = p
        cursor[sup[e]] += 1

    removed = np.zeros(m, dtype=np.bool_)
    level = np.zeros(m, dtype=np.int64)
    for idx in range(m):
        e = order[idx]
        se = sup[e]
        level[e] = se + 2
        u = src[e]
        v = dst[e]
        i = indptr[u]
        ie = indptr[u + 1]
        j = indptr[v]
        je = indptr[v + 1]
        while i < ie and j < je:
            if nbr[i] == nbr[j]:
                f1 = eid[i]
                f2 = eid[j]
                if not removed[f1] and not removed[f2]:
                    for f in (f1, f2):
                        sf = sup[f]
                        if sf > se:
                            # Swap f to the front of its bucket, then shrink the bucket.
                            pf = pos[f]
                            pw = bin_start[sf]
                            g = order[pw]
                            if g != f:
                                order[pf] = g
                                pos[g] = pf
                                order[pw] = f
                                pos[f] = pw
                            bin_start[sf] += 1
                            sup[f] = sf - 1
                i += 1
                j += 1
            elif nbr[i] < nbr[j]:
                i += 1
            else:
                j += 1
        removed[e] = True
    return level


def _check_undirected(g):
    if g.directed:
        raise UnsupportedGraph("decomposition needs an undirected graph")


def node_truss_levels(edge_level, n, src, dst):
    """Node level = max level over incident edges; 2 for edgeless input."""
    lam = np.full(n, 2, dtype=np.int64)
    if edge_level.size:
        np.maximum.at(lam, src, edge_level)
        np.maximum.at(lam, dst, edge_level)
    return lam


def truss_decompose(g):
    """k-truss decomposition by support peeling, ignoring edge weights."""
    _check_undirected(g)
    order = np.lexsort((g.dst, g.src))
    if not np.array_equal(order, np.arange(g.m)):
        raise ValueError("graph edges must be sorted by (src, dst)")
    level = _truss_kernel(g.n, g.src, g.dst) if g.m else np.zeros(0, dtype=np.int64)
    lam = node_truss_levels(level, g.n, g.src, g.dst)
    maxtruss = int(lam.max()) if g.n else 2
    return TrussDecomposition(level, lam, maxtruss, g.nodes)


@njit
def _core_kernel(n, indptr, nbr, wts):
    wdeg = np.zeros(n, dtype=np.float64)
    for v in range(n):
        for p in range(indptr[v], indptr[v + 1]):
            wdeg[v] += wts[p]
    removed = np.zeros(n, dtype=np.bool_)
    core = np.zeros(n, dtype=np.float64)
    heap = [(wdeg[v], v) for v in range(n)]
    heapq.heapify(heap)
    current = 0.0
    while len(heap) > 0:
        d, v = heapq.heappop(heap)
        if removed[v] or d != wdeg[v]:
            continue
        removed[v] = True
        if d > current:
            current = d
        core[v] = current
        for p in range(indptr[v], indptr[v + 1]):
            u = nbr[p]
            if not removed[u]:
                wdeg[u] -= wts[p]
                heapq.heappush(heap, (wdeg[u], u))
    return core


def weighted_core_decompose(g):
    """Generalized core numbers with weighted degree as the vertex property.

    The node of least remaining weighted degree is peeled repeatedly; its
    core number is the running maximum of the degrees seen at removal.
    """
    _check_undirected(g)
    if g.n == 0:
        return CoreDecomposition(np.zeros(0), g.nodes)
    a = g.adjacency()
    core = _core_kernel(g.n, a.indptr.astype(np.int64), a.indices.astype(np.int64), a.data)
    return CoreDecomposition(core, g.nodes)
