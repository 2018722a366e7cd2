import os
import random

import pytest

DATA = os.path.join(os.path.dirname(__file__), "data")

# 25-edge running example. U side v1..v8, V side u1..u7.
FIG2_EDGES = [
    ("v1", "u1"), ("v1", "u2"),
    ("v2", "u1"), ("v2", "u2"), ("v2", "u3"), ("v2", "u4"),
    ("v3", "u2"), ("v3", "u3"), ("v3", "u4"),
    ("v4", "u3"), ("v4", "u4"),
    ("v5", "u3"), ("v5", "u4"), ("v5", "u5"), ("v5", "u6"),
    ("v6", "u4"), ("v6", "u5"), ("v6", "u6"), ("v6", "u7"),
    ("v7", "u5"), ("v7", "u6"), ("v7", "u7"),
    ("v8", "u5"), ("v8", "u6"), ("v8", "u7"),
]

# Frozen wing numbers for the running example.
FIG2_PSI = {}
for _e in [("v1", "u1"), ("v1", "u2"), ("v2", "u1")]:
    FIG2_PSI[_e] = 1
for _e in [("v2", "u2"), ("v3", "u2"), ("v6", "u4")]:
    FIG2_PSI[_e] = 2
for _v in ("v2", "v3", "v4", "v5"):
    for _u in ("u3", "u4"):
        FIG2_PSI[(_v, _u)] = 3
for _e in [("v5", "u5"), ("v5", "u6")]:
    FIG2_PSI[_e] = 3
for _v in ("v6", "v7", "v8"):
    for _u in ("u5", "u6", "u7"):
        FIG2_PSI[(_v, _u)] = 4

# Frozen equivalence classes, keyed by their construction order (level
# ascending, then smallest member edge).
FIG2_CLASSES = {
    1: frozenset({("v1", "u1"), ("v1", "u2"), ("v2", "u1")}),
    2: frozenset({("v2", "u2"), ("v3", "u2")}),
    3: frozenset({("v6", "u4")}),
    4: frozenset({(v, u) for v in ("v2", "v3", "v4", "v5") for u in ("u3", "u4")}),
    5: frozenset({("v5", "u5"), ("v5", "u6")}),
    6: frozenset({(v, u) for v in ("v6", "v7", "v8") for u in ("u5", "u6", "u7")}),
}
FIG2_CLASS_LEVELS = {1: 1, 2: 2, 3: 2, 4: 3, 5: 3, 6: 4}
FIG2_SUPER_EDGES = {(1, 2), (2, 4), (3, 4), (3, 5), (3, 6), (5, 6)}


@pytest.fixture
def fig2_edges():
    return list(FIG2_EDGES)


@pytest.fixture
def fig2_path():
    return os.path.join(DATA, "fig2.tsv")


@pytest.fixture
def fig2_graph():
    from wingsearch.graph import BipartiteGraph

    g = BipartiteGraph()
    for u, v in FIG2_EDGES:
        g.insert_edge(u, v)
    return g


def random_bipartite_edges(rng, nu, nv, p):
    """Plain seeded G(n,n,p) edge list for small property tests."""
    edges = []
    for i in range(nu):
        for j in range(nv):
            if rng.random() < p:
                edges.append((f"a{i}", f"b{j}"))
    return edges


@pytest.fixture
def rng():
    return random.Random(1811)
