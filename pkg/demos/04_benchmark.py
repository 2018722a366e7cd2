"""Miniature latency comparison of the three query engines.

Generates a seeded sparse graph with a few planted dense blocks, buckets
query vertices by degree, and times each engine per bucket. At this size
the gap is already two orders of magnitude; it widens with the graph.
"""

import time

from wingsearch import (
    BipartiteGraph,
    baseline_search,
    build_equiwing,
    compress,
    generate_bipartite,
    query_comp,
    query_equiwing,
    run_bench,
    wing_decomposition,
)


def main():
    edges = generate_bipartite(
        400, 400, 0.01, seed=11, blocks=((15, 15, 0.9), (15, 15, 0.9))
    )
    g = BipartiteGraph()
    for u, v in edges:
        g.insert_edge(u, v)
    print(f"graph: {g.num_edges} edges")

    t0 = time.perf_counter()
    d = wing_decomposition(g)
    index = build_equiwing(g, d)
    comp = compress(index)
    print(f"decompose + build: {time.perf_counter() - t0:.2f}s, "
          f"k_max {d.k_max}, {len(index.nodes)} / {len(comp.nodes)} nodes")

    engines = [
        ("baseline", lambda q, k: baseline_search(g, d, q, k)),
        ("equiwing", lambda q, k: query_equiwing(index, q, k)),
        ("comp", lambda q, k: query_comp(comp, q, k)),
    ]
    rows = run_bench(g, engines, k=2, per_bucket=5, seed=0)
    print("\nmean seconds per query, by degree decile:")
    print("bucket  baseline      equiwing      comp")
    for row in rows:
        m = row["means"]
        print(f"  {row['bucket']:2d}    {m['baseline']:.6f}s     "
              f"{m['equiwing']:.6f}s      {m['comp']:.6f}s")


if __name__ == "__main__":
    main()
