"""Seeded synthetic bipartite graphs for property suites and benchmarks."""

import random


def generate_bipartite(n_u, n_v, p, seed, blocks=()):
    """Random bipartite edge list: every (u, v) pair independently with
    probability p, plus planted dense blocks. Each block is (rows, cols, q):
    a random rows x cols sub-rectangle filled with per-cell probability q.
    Deterministic for a given seed; labels a0..., b0...; returns sorted
    edge tuples."""
    rng = random.Random(seed)
    edges = set()
    for i in range(n_u):
        base = f"a{i}"
        for j in range(n_v):
            if rng.random() < p:
                edges.add((base, f"b{j}"))
    for rows, cols, q in blocks:
        us = rng.sample(range(n_u), rows)
        vs = rng.sample(range(n_v), cols)
        for i in us:
            base = f"a{i}"
            for j in vs:
                if rng.random() < q:
                    edges.add((base, f"b{j}"))
    return sorted(edges)
