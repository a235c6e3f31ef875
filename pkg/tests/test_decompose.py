import itertools
import io

import numpy as np
import pytest

from scake.decompose import truss_decompose, weighted_core_decompose
from scake.errors import UnsupportedGraph
from scake.graph import TextGraph

from conftest import graph_from_edges, random_graph


def truss_oracle(n, edges):
    """Edge level = largest k whose k-truss (iterated support filter) keeps the edge."""
    level = {e: 2 for e in edges}
    k = 3
    alive = set(edges)
    while alive:
        changed = True
        while changed:
            changed = False
            adj = {v: set() for v in range(n)}
            for u, v in alive:
                adj[u].add(v)
                adj[v].add(u)
            weak = {(u, v) for u, v in alive if len(adj[u] & adj[v]) < k - 2}
            if weak:
                alive -= weak
                changed = True
        for e in alive:
            level[e] = k
        k += 1
    return level


def core_oracle(n, wedges):
    """Core number = largest integer t whose t-core (iterated degree filter) keeps the node."""
    core = [0] * n
    top = sum(wedges.values()) * 2
    for t in range(1, top + 1):
        alive = set(range(n))
        changed = True
        while changed:
            deg = {v: 0 for v in alive}
            for (u, v), w in wedges.items():
                if u in alive and v in alive:
                    deg[u] += w
                    deg[v] += w
            low = {v for v in alive if deg[v] < t}
            alive -= low
            changed = bool(low)
        if not alive:
            break
        for v in alive:
            core[v] = t
    return core


def _levels(g):
    td = truss_decompose(g)
    return {(int(u), int(v)): int(l) for u, v, l in zip(g.src, g.dst, td.edge_level)}, td


def test_triangle():
    lv, td = _levels(graph_from_edges([(0, 1), (1, 2), (0, 2)]))
    assert set(lv.values()) == {3}
    assert td.maxtruss == 3


def test_k4():
    g = graph_from_edges(list(itertools.combinations(range(4), 2)))
    lv, td = _levels(g)
    assert set(lv.values()) == {4}
    assert td.node_level.tolist() == [4, 4, 4, 4]
    assert weighted_core_decompose(g).core_number.tolist() == [3, 3, 3, 3]


def test_path():
    lv, td = _levels(graph_from_edges([(0, 1), (1, 2), (2, 3)]))
    assert set(lv.values()) == {2}
    assert td.maxtruss == 2


def test_node_level_is_max_incident():
    # K4 on 0..3 with a pendant 3-4.
    g = graph_from_edges([*itertools.combinations(range(4), 2), (3, 4)])
    td = truss_decompose(g)
    assert td.node_level.tolist() == [4, 4, 4, 4, 2]


def test_truss_exhaustive_small_graphs():
    for n in range(2, 7):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1, 1 << len(pairs)):
            edges = [p for i, p in enumerate(pairs) if mask >> i & 1]
            if not edges:
                continue
            lv, _ = _levels(graph_from_edges(edges, n))
            assert lv == truss_oracle(n, edges), edges


def test_truss_random_graphs(rng):
    for _ in range(200):
        g = random_graph(rng, 8)
        if g.m == 0:
            continue
        edges = list(zip(g.src.tolist(), g.dst.tolist()))
        lv, td = _levels(g)
        assert lv == truss_oracle(g.n, edges)
        # Nesting: each (k+1)-truss edge set is inside the k-truss edge set.
        for k in range(3, td.maxtruss + 1):
            assert {e for e, l in lv.items() if l >= k} <= {e for e, l in lv.items() if l >= k - 1}
        # Certificate: inside the k-truss every edge of level k has k-2 triangles.
        for k in range(3, td.maxtruss + 1):
            sub = {e for e, l in lv.items() if l >= k}
            adj = {}
            for u, v in sub:
                adj.setdefault(u, set()).add(v)
                adj.setdefault(v, set()).add(u)
            assert all(len(adj[u] & adj[v]) >= k - 2 for u, v in sub)


def test_truss_ignores_weights():
    e = [(0, 1), (1, 2), (0, 2), (2, 3)]
    a = truss_decompose(graph_from_edges(e))
    b = truss_decompose(graph_from_edges(e, weights={(0, 1): 9, (1, 2): 1, (0, 2): 4, (2, 3): 7}))
    assert a.edge_level.tolist() == b.edge_level.tolist()


def test_directed_rejected():
    g = TextGraph(["a", "b"], [0], [1], [1], directed=True)
    with pytest.raises(UnsupportedGraph):
        truss_decompose(g)
    with pytest.raises(UnsupportedGraph):
        weighted_core_decompose(g)


def test_unsorted_edges_rejected():
    g = TextGraph(["a", "b", "c"], [1, 0], [2, 1], [1, 1])
    with pytest.raises(ValueError):
        truss_decompose(g)


def test_empty_graph():
    g = graph_from_edges([], 0)
    assert truss_decompose(g).maxtruss == 2
    assert weighted_core_decompose(g).core_number.size == 0


def test_dump_nodes():
    g = graph_from_edges([(0, 1), (1, 2), (0, 2)])
    buf = io.StringIO()
    truss_decompose(g).dump_nodes(buf)
    assert buf.getvalue() == "0\t3\n1\t3\n2\t3\n"


def test_weighted_core_star():
    g = graph_from_edges([(0, 1), (0, 2), (0, 3)])
    assert weighted_core_decompose(g).core_number.tolist() == [1, 1, 1, 1]


def test_weighted_core_weighted_triangle():
    w = {(0, 1): 1, (1, 2): 1, (0, 2): 5}
    g = graph_from_edges(list(w), weights=w)
    # Node 1 has weighted degree 2 and peels first; 0 and 2 then hold 5 each.
    assert weighted_core_decompose(g).core_number.tolist() == [5, 2, 5]


def test_weighted_core_matches_oracle(rng):
    for _ in range(200):
        g0 = random_graph(rng, 8)
        w = {(int(u), int(v)): int(rng.integers(1, 5)) for u, v in zip(g0.src, g0.dst)}
        g = graph_from_edges(list(w), g0.n, weights=w)
        got = weighted_core_decompose(g).core_number
        assert np.array_equal(got, np.array(core_oracle(g.n, w), dtype=float)), w


def test_unit_weight_core_equals_classic_core(rng):
    nx = pytest.importorskip("networkx")
    for _ in range(100):
        g = random_graph(rng, 10)
        G = nx.Graph()
        G.add_nodes_from(range(g.n))
        G.add_edges_from(zip(g.src.tolist(), g.dst.tolist()))
        want = nx.core_number(G)
        got = weighted_core_decompose(g).core_number
        assert [want[v] for v in range(g.n)] == got.astype(int).tolist()
