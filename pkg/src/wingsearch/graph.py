"""Bipartite graph storage, edge-list IO and butterfly primitives.

Vertices are labels (strings). The two sides are separate namespaces: a label
may appear on both sides and names two different vertices. Edges are
(u_label, v_label) tuples with u on the left/U side.

A butterfly is a 2x2 biclique: vertices {u, u2} x {v, v2}, four edges, all
distinct. Canonical form is (u1, u2, v1, v2) with u1 < u2 and v1 < v2.
"""

import os
import tempfile

from .errors import GraphFormatError, UnknownEdgeError

COMMENT_PREFIXES = ("%", "#")


class BipartiteGraph:
    def __init__(self):
        self.adj_u = {}  # u label -> set of v labels
        self.adj_v = {}  # v label -> set of u labels

    @property
    def num_edges(self):
        return sum(len(s) for s in self.adj_u.values())

    @property
    def num_u(self):
        return len(self.adj_u)

    @property
    def num_v(self):
        return len(self.adj_v)

    def has_edge(self, u, v):
        return u in self.adj_u and v in self.adj_u[u]

    def has_vertex(self, label):
        return label in self.adj_u or label in self.adj_v

    def insert_edge(self, u, v):
        """Add edge (u,v). Returns True if added, False if it already existed."""
        if self.has_edge(u, v):
            return False
        self.adj_u.setdefault(u, set()).add(v)
        self.adj_v.setdefault(v, set()).add(u)
        return True

    def delete_edge(self, u, v):
        if not self.has_edge(u, v):
            raise UnknownEdgeError(f"edge ({u}, {v}) not in graph")
        self.adj_u[u].discard(v)
        self.adj_v[v].discard(u)
        if not self.adj_u[u]:
            del self.adj_u[u]
        if not self.adj_v[v]:
            del self.adj_v[v]

    def edges(self):
        for u, vs in self.adj_u.items():
            for v in vs:
                yield (u, v)

    def sorted_edges(self):
        return sorted(self.edges())

    def copy(self):
        g = BipartiteGraph()
        g.adj_u = {u: set(vs) for u, vs in self.adj_u.items()}
        g.adj_v = {v: set(us) for v, us in self.adj_v.items()}
        return g

    def support(self, u, v):
        """Butterfly support of edge (u,v): how many butterflies contain it."""
        if not self.has_edge(u, v):
            raise UnknownEdgeError(f"edge ({u}, {v}) not in graph")
        count = 0
        # pair (u,v) with (u2,v2): u2 another neighbour of v, v2 another
        # neighbour of u, and (u2,v2) must be an edge
        if len(self.adj_u[u]) <= len(self.adj_v[v]):
            for v2 in self.adj_u[u]:
                if v2 == v:
                    continue
                count += len(self.adj_v[v] & self.adj_v[v2]) - 1  # minus u itself
        else:
            for u2 in self.adj_v[v]:
                if u2 == u:
                    continue
                count += len(self.adj_u[u] & self.adj_u[u2]) - 1
        return count

    def butterflies_of_edge(self, u, v):
        """Yield canonical butterflies containing (u,v)."""
        vs = self.adj_u[u]
        for u2 in self.adj_v[v]:
            if u2 == u:
                continue
            for v2 in vs & self.adj_u[u2]:
                if v2 == v:
                    continue
                yield (min(u, u2), max(u, u2), min(v, v2), max(v, v2))

    def all_butterflies(self):
        """Yield every butterfly exactly once, canonical order."""
        us = sorted(self.adj_u)
        for i, u1 in enumerate(us):
            n1 = self.adj_u[u1]
            seen = set()
            for v in n1:
                for u2 in self.adj_v[v]:
                    if u2 <= u1 or u2 in seen:
                        continue
                    seen.add(u2)
                    common = sorted(n1 & self.adj_u[u2])
                    for a in range(len(common)):
                        for b in range(a + 1, len(common)):
                            yield (u1, u2, common[a], common[b])


def butterfly_edges(b):
    u1, u2, v1, v2 = b
    return ((u1, v1), (u1, v2), (u2, v1), (u2, v2))


def butterfly_support(graph, u, v):
    return graph.support(u, v)


def butterflies_containing(graph, u, v):
    """All butterflies through edge (u,v), as sorted canonical tuples."""
    if not graph.has_edge(u, v):
        raise UnknownEdgeError(f"edge ({u}, {v}) not in graph")
    return sorted(set(graph.butterflies_of_edge(u, v)))


def load_edge_list(path):
    """Parse a two-column whitespace-separated edge list.

    Lines starting with '%' or '#' are comments. First column is the U side.
    Duplicate edges are dropped and counted. Returns (graph, duplicate_count).
    Raises GraphFormatError on unreadable input or a line that does not have
    exactly two columns.
    """
    try:
        fh = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise GraphFormatError(f"cannot read {path}: {exc}") from exc
    graph = BipartiteGraph()
    duplicates = 0
    with fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith(COMMENT_PREFIXES):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise GraphFormatError(
                    f"{path}: line {lineno}: expected 2 columns, got {len(parts)}"
                )
            if not graph.insert_edge(parts[0], parts[1]):
                duplicates += 1
    return graph, duplicates


def atomic_write_text(path, text):
    """Write text to path via a temp file + rename, so readers never see a
    torn file."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def save_edge_list(graph, path):
    lines = [f"{u}\t{v}\n" for u, v in graph.sorted_edges()]
    atomic_write_text(path, "".join(lines))
