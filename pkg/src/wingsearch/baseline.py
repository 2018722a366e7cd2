"""Index-free personalized wing search, used as the reference engine.

Starting from the query vertex's qualifying edges, expand through butterflies
whose four edges all carry wing number >= k. Each connected group is one
k-wing. Results are canonical: edges inside a wing sorted by label pair,
wings sorted by their first edge, so engine outputs compare byte for byte.
"""

from collections import deque

from .errors import UnknownVertexError


def canonical_wings(groups):
    wings = [sorted(g) for g in groups]
    wings.sort(key=lambda w: w[0])
    return wings


def baseline_search(graph, decomp, q, k):
    """All k-wings containing vertex q. Returns a list of sorted edge lists."""
    if not graph.has_vertex(q):
        raise UnknownVertexError(f"vertex {q!r} not in graph")
    wn = decomp.wing_number

    seeds = []
    for v in sorted(graph.adj_u.get(q, ())):
        seeds.append((q, v))
    for u in sorted(graph.adj_v.get(q, ())):
        seeds.append((u, q))
    seeds = [e for e in seeds if wn.get(e, 0) >= k]

    visited = set()
    wings = []
    for seed in seeds:
        if seed in visited:
            continue
        group = set()
        queue = deque([seed])
        visited.add(seed)
        while queue:
            u, v = queue.popleft()
            group.add((u, v))
            for u2 in graph.adj_v[v]:
                if u2 == u:
                    continue
                for v2 in graph.adj_u[u] & graph.adj_u[u2]:
                    if v2 == v:
                        continue
                    others = ((u, v2), (u2, v), (u2, v2))
                    if all(wn.get(e, 0) >= k for e in others):
                        for e in others:
                            if e not in visited:
                                visited.add(e)
                                queue.append(e)
        wings.append(group)
    return canonical_wings(wings)
