"""Independent reference computations backing the frozen test values.

Everything here deliberately avoids the library's production code paths:
shortest paths are a textbook binary-heap Dijkstra (cross-checked by
Bellman-Ford), level-set components come from a flood fill over crossing
edges, and quotient distances are a Dijkstra over the Reeb graph nodes.
Run as a script to print the values the tests freeze.
"""

from __future__ import annotations

import heapq
import math

import numpy as np


# ---------------------------------------------------------------- shortest paths

def adjacency(complex):
    adj = [[] for _ in range(complex.n_vertices)]
    for (i, j), w in zip(complex.edges.tolist(), complex.lengths):
        adj[i].append((j, float(w)))
        adj[j].append((i, float(w)))
    return adj


def dijkstra(adj, source):
    dist = [math.inf] * len(adj)
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w in adj[u]:
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def bellman_ford(adj, source):
    n = len(adj)
    dist = [math.inf] * n
    dist[source] = 0.0
    for _ in range(n - 1):
        changed = False
        for u in range(n):
            du = dist[u]
            if du == math.inf:
                continue
            for v, w in adj[u]:
                if du + w < dist[v]:
                    dist[v] = du + w
                    changed = True
        if not changed:
            break
    return dist


def all_pairs(complex):
    adj = adjacency(complex)
    return np.asarray([dijkstra(adj, s) for s in range(complex.n_vertices)])


# ---------------------------------------------------------------- level sets

def crossing_edges(complex, values, level):
    """Edge ids whose endpoint values strictly straddle the level."""
    g = np.asarray(values, dtype=float)
    e = complex.edges
    lo = np.minimum(g[e[:, 0]], g[e[:, 1]])
    hi = np.maximum(g[e[:, 0]], g[e[:, 1]])
    return np.flatnonzero((lo < level) & (hi > level))


def contour_components(complex, values, level):
    """Flood fill over crossing edges: two crossings are adjacent when a
    triangle contains both.  On a 1-complex every crossing is alone."""
    cross = set(crossing_edges(complex, values, level).tolist())
    neigh = {e: set() for e in cross}
    for t in range(complex.n_triangles):
        members = [int(e) for e in complex.triangle_edges[t] if int(e) in cross]
        for a in members:
            for b in members:
                if a != b:
                    neigh[a].add(b)
    seen = set()
    comps = []
    for start in sorted(cross):
        if start in seen:
            continue
        comp, stack = set(), [start]
        while stack:
            e = stack.pop()
            if e in seen:
                continue
            seen.add(e)
            comp.add(e)
            stack.extend(neigh[e] - seen)
        comps.append(frozenset(comp))
    return comps


def crossing_point(complex, values, level, edge_id):
    i, j = complex.edges[edge_id]
    gi, gj = float(values[i]), float(values[j])
    t = (level - gi) / (gj - gi)
    return complex.coords[i] + t * (complex.coords[j] - complex.coords[i])


def contour_intrinsic_diameter(complex, values, level, edge_ids):
    """Max shortest-path distance between crossing points, routing each
    point over its edge endpoints through the vertex graph."""
    adj = adjacency(complex)
    g = np.asarray(values, dtype=float)
    ends = []
    for e in edge_ids:
        i, j = complex.edges[e]
        t = (level - float(g[i])) / (float(g[j]) - float(g[i]))
        w = float(complex.lengths[e])
        ends.append((int(i), int(j), t * w, (1.0 - t) * w))
    best = 0.0
    for a, (ia, ja, da_i, da_j) in enumerate(ends):
        di = dijkstra(adj, ia)
        dj = dijkstra(adj, ja)
        for ib, jb, db_i, db_j in ends[a + 1:]:
            d = min(da_i + di[ib] + db_i, da_i + di[jb] + db_j,
                    da_j + dj[ib] + db_i, da_j + dj[jb] + db_j)
            best = max(best, d)
    return best


# ---------------------------------------------------------------- Reeb metric

def reeb_node_distances(graph):
    """Dijkstra over the Reeb graph with |level difference| edge weights."""
    n = graph.n_nodes
    lv = graph.levels
    adj = [[] for _ in range(n)]
    for u, v in graph.edges:
        w = abs(float(lv[u]) - float(lv[v]))
        adj[u].append((v, w))
        adj[v].append((u, w))
    return np.asarray([dijkstra(adj, s) for s in range(n)])


def quotient_distance(graph, qmap, nd, i, j):
    """Shortest quotient-graph distance between the images of vertices i, j.

    A point on edge (u, v) at level t is at |t - level(u)| from u along its
    edge; same-edge pairs may also connect directly."""
    lv = graph.levels

    def anchors(k):
        point = qmap.points[k]
        if point[0] == "node":
            return ((int(point[1]), 0.0),), None, float(qmap.levels[k])
        _, a, level = point
        u, v = graph.edges[a]
        return (((int(u), abs(level - float(lv[u]))),
                 (int(v), abs(level - float(lv[v]))))), int(a), level

    anch_i, edge_i, lev_i = anchors(i)
    anch_j, edge_j, lev_j = anchors(j)
    best = math.inf
    for u, du in anch_i:
        for v, dv in anch_j:
            best = min(best, du + nd[u][v] + dv)
    if edge_i is not None and edge_i == edge_j:
        best = min(best, abs(lev_i - lev_j))
    return best


def distortion_oracle(complex, field, graph, qmap):
    """Max |d_X - d_R| over all vertex pairs, both sides by oracle Dijkstra."""
    dx = all_pairs(complex)
    nd = reeb_node_distances(graph)
    worst = 0.0
    n = complex.n_vertices
    for i in range(n):
        for j in range(i + 1, n):
            dr = quotient_distance(graph, qmap, nd, i, j)
            worst = max(worst, abs(float(dx[i, j]) - dr))
    return worst


# ---------------------------------------------------------------- freeze run

def main():
    from reebscope.complexes.generators import (circle_mesh, disk_mesh,
                                                distance_field,
                                                flat_torus_mesh, theta_mesh,
                                                torus_mesh)
    from reebscope.complexes.simplicial import ScalarField, height_field
    from reebscope.reeb.build import build_reeb

    ft = flat_torus_mesh(8)
    adj = adjacency(ft)
    d1 = dijkstra(adj, 0)
    d2 = bellman_ford(adj, 0)
    assert max(abs(a - b) for a, b in zip(d1, d2)) == 0.0
    far = (8 // 2) * 8 + (8 // 2)
    print(f"flat_torus(8) d(corner, center) = {d1[far]!r}")

    disk = disk_mesh(10)
    xy = disk.coords[:, :2]
    taxi = np.abs(xy[:, 0]) + np.abs(xy[:, 1])
    comps = contour_components(disk, taxi, 1.2)
    print(f"disk(10) taxicab level 1.2 components = {len(comps)}")

    # levels chosen off the vertex value grid: strict straddling only
    torus = torus_mesh(24, 12)
    hz = height_field(torus).values
    print(f"torus(24x12) height contour count at 0.137 = "
          f"{len(contour_components(torus, hz, 0.137))}, at 1.03 = "
          f"{len(contour_components(torus, hz, 1.03))}")
    top = contour_components(torus, hz, 1.03)[0]
    diam = contour_intrinsic_diameter(torus, hz, 1.03, sorted(top))
    print(f"torus height level-1.03 contour intrinsic diameter = {diam!r}")

    circ = circle_mesh(64)
    hy = ScalarField(circ.coords[:, 1])
    graph, qmap = build_reeb(circ, hy)
    dis_h = distortion_oracle(circ, hy, graph, qmap)
    print(f"circle(64) height distortion = {dis_h!r}")

    df = distance_field(circ, 0)
    graph, qmap = build_reeb(circ, df)
    dis_d = distortion_oracle(circ, df, graph, qmap)
    print(f"circle(64) distance-field distortion = {dis_d!r}")

    th = theta_mesh(24, 6)
    amb = ScalarField(np.hypot(th.coords[:, 0], th.coords[:, 1]))
    graph, qmap = build_reeb(th, amb)
    dis_t = distortion_oracle(th, amb, graph, qmap)
    print(f"theta(24,6) ambient-field distortion = {dis_t!r} "
          f"(nodes {graph.n_nodes}, rank {graph.cycle_rank})")


if __name__ == "__main__":
    main()
