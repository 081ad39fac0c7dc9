"""The Reeb graph as a finite topological graph with leveled nodes.

Nodes carry the (perturbed) critical value and the complex vertex they came
from; edges are a multigraph, each spanning two distinct levels.  The graph
metric uses the level difference as edge length, so distances are measured
in function units.  Graph points are encoded as ("node", id) or
("edge", edge_id, level) with level strictly inside the edge's span.
"""

from __future__ import annotations

import json

import numpy as np


class ReebGraph:
    def __init__(self, nodes, edges):
        """nodes: list of (level, complex vertex or None);
        edges: list of (u, v) node-id pairs with distinct levels."""
        self.levels = np.asarray([lv for lv, _ in nodes], dtype=float)
        self.vertices = [v for _, v in nodes]
        norm = []
        for u, v in edges:
            if self.levels[u] == self.levels[v]:
                raise ValueError("horizontal edge: field was not generic")
            norm.append((u, v) if self.levels[u] < self.levels[v] else (v, u))
        self.edges = norm
        self._dist = None
        self._components = None

    @property
    def n_nodes(self):
        return self.levels.shape[0]

    @property
    def n_edges(self):
        return len(self.edges)

    @property
    def n_components(self):
        if self._components is None:
            parent = list(range(self.n_nodes))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for u, v in self.edges:
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
            self._components = len({find(x) for x in range(self.n_nodes)})
        return self._components

    @property
    def cycle_rank(self):
        return self.n_edges - self.n_nodes + self.n_components

    def edge_length(self, e):
        u, v = self.edges[e]
        return float(self.levels[v] - self.levels[u])

    def degree(self, nid):
        return sum((u == nid) + (v == nid) for u, v in self.edges)

    # ---------------------------------------------------------- metric

    def node_distances(self):
        """All-pairs shortest-path matrix over nodes (length = level span)."""
        if self._dist is None:
            from scipy.sparse import csr_matrix
            from scipy.sparse.csgraph import dijkstra
            best = {}
            for e, (u, v) in enumerate(self.edges):
                w = self.edge_length(e)
                key = (u, v)
                if w < best.get(key, np.inf):
                    best[key] = w
            n = self.n_nodes
            if best:
                i = np.array([k[0] for k in best], dtype=np.int64)
                j = np.array([k[1] for k in best], dtype=np.int64)
                w = np.array(list(best.values()))
                m = csr_matrix((np.concatenate([w, w]),
                                (np.concatenate([i, j]),
                                 np.concatenate([j, i]))), shape=(n, n))
            else:
                m = csr_matrix((n, n))
            self._dist = dijkstra(m, directed=False)
        return self._dist

    def _ends(self, point):
        """(node, offset) pairs reaching `point`, plus an optional
        (edge_id, level) tag for the same-edge shortcut."""
        if point[0] == "node":
            return [(point[1], 0.0)], None
        _, e, level = point
        u, v = self.edges[e]
        lo, hi = self.levels[u], self.levels[v]
        if not lo <= level <= hi:
            raise ValueError(f"level {level} outside edge {e} span")
        return [(u, level - lo), (v, hi - level)], (e, level)

    def distance(self, a, b) -> float:
        """Path metric between two graph points; inf across components."""
        ea, ta = self._ends(a)
        eb, tb = self._ends(b)
        dm = self.node_distances()
        best = np.inf
        if ta is not None and tb is not None and ta[0] == tb[0]:
            best = abs(ta[1] - tb[1])
        for na, oa in ea:
            for nb, ob in eb:
                d = dm[na, nb] + oa + ob
                if d < best:
                    best = d
        return float(best)

    # --------------------------------------------------- isomorphism

    def canonical_form(self, with_levels=True):
        """Isomorphism invariant: nodes start in classes of equal level
        (equal level rank when `with_levels` is false) and the classes are
        refined by incident-edge signatures.  Complete for pairwise
        distinct node levels; with ties it can only err by declaring two
        highly symmetric non-isomorphic graphs equal, never the converse,
        so build-versus-oracle comparisons stay sound."""
        n = self.n_nodes
        lv = self.levels
        uniq = np.unique(lv)
        cls = np.searchsorted(uniq, lv)
        inc = [[] for _ in range(n)]
        for u, v in self.edges:
            inc[u].append((v, 1))
            inc[v].append((u, 0))
        m = uniq.shape[0]
        for _ in range(n + 1):
            sig = [(int(cls[i]),
                    tuple(sorted((int(cls[j]), d) for j, d in inc[i])))
                   for i in range(n)]
            ren = {s: k for k, s in enumerate(sorted(set(sig)))}
            cls = np.asarray([ren[s] for s in sig], dtype=np.int64)
            if len(ren) == m:
                break
            m = len(ren)
        edges = tuple(sorted((int(cls[u]), int(cls[v]))
                             for u, v in self.edges))
        if with_levels:
            return tuple(sorted(zip(map(int, cls), map(float, lv)))), edges
        return tuple(sorted(map(int, cls))), edges

    # ------------------------------------------------------- export

    def _export_order(self):
        return np.argsort(self.levels, kind="stable")

    def to_json_doc(self):
        order = self._export_order()
        rank = np.empty(self.n_nodes, dtype=np.int64)
        rank[order] = np.arange(self.n_nodes)
        return {
            "schema": 1,
            "nodes": [{"id": int(rank[i]), "level": float(self.levels[i])}
                      for i in order],
            "edges": sorted([sorted((int(rank[u]), int(rank[v])))
                             for u, v in self.edges]),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_doc(), sort_keys=True)

    def to_dot(self) -> str:
        doc = self.to_json_doc()
        lines = ["graph reeb {"]
        for nd in doc["nodes"]:
            lines.append(f'  n{nd["id"]} [label="{nd["level"]:.6f}"];')
        for u, v in doc["edges"]:
            lines.append(f"  n{u} -- n{v};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return (f"<ReebGraph nodes={self.n_nodes} edges={self.n_edges} "
                f"cycle_rank={self.cycle_rank}>")


def cycle_rank(graph: ReebGraph) -> int:
    return graph.cycle_rank


def reeb_metric(graph: ReebGraph, a, b) -> float:
    return graph.distance(a, b)


def isomorphic(a: ReebGraph, b: ReebGraph, with_levels=True) -> bool:
    return a.canonical_form(with_levels) == b.canonical_form(with_levels)


class QuotientMap:
    """Where each complex vertex lands in the Reeb graph."""

    def __init__(self, points, levels):
        self._points = points
        self._levels = np.asarray(levels, dtype=float)

    def __len__(self):
        return len(self._points)

    @property
    def points(self):
        return self._points

    @property
    def levels(self):
        return self._levels

    def point(self, vertex):
        return self._points[vertex]

    def level(self, vertex) -> float:
        return float(self._levels[vertex])
