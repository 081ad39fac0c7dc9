"""Connected components of level sets of a PL field at a generic level.

A contour is described combinatorially by the set of edges it crosses (each
at one interior point) and by the pairs of crossings joined by a segment
inside an active triangle.  Levels equal to a (perturbed) vertex value are
rejected; callers sample between consecutive vertex values.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .simplicial import NonGenericLevelError, ScalarField, SimplicialComplex
from .geodesic import vertex_distances


@dataclass
class Contour:
    """One component of a level set.

    edge_ids / params are aligned: crossing c sits on edge `edge_ids[c]` at
    parameter `params[c]` measured from the lower-id endpoint.  `segments`
    lists index pairs into the crossing arrays, one per active triangle.
    """
    level: float
    edge_ids: np.ndarray
    params: np.ndarray
    segments: list = dataclass_field(default_factory=list)

    def __len__(self):
        return self.edge_ids.shape[0]

    def points(self, complex: SimplicialComplex):
        if complex.coords is None:
            raise ValueError("contour points need embedded coordinates")
        a = complex.coords[complex.edges[self.edge_ids, 0]]
        b = complex.coords[complex.edges[self.edge_ids, 1]]
        return a + self.params[:, None] * (b - a)

    def length(self, complex: SimplicialComplex) -> float:
        if not self.segments:
            return 0.0
        p = self.points(complex)
        seg = np.asarray(self.segments, dtype=np.int64)
        return float(np.linalg.norm(p[seg[:, 0]] - p[seg[:, 1]], axis=1).sum())

    def touches(self, complex: SimplicialComplex, edge_mask) -> bool:
        return bool(np.any(edge_mask[self.edge_ids]))


def contours_at(complex: SimplicialComplex, field: ScalarField, level: float):
    """All contours of the field at one generic level, ordered by least edge id."""
    g = field.resolved_values
    if g.shape[0] != complex.n_vertices:
        raise ValueError("field does not match complex")
    below = g < level
    if np.any(g == level):
        raise NonGenericLevelError(f"level {level!r} hits a vertex value")

    straddle = below[complex.edges[:, 0]] != below[complex.edges[:, 1]]
    ids = np.flatnonzero(straddle)
    if ids.size == 0:
        return []
    local = np.full(complex.n_edges, -1, dtype=np.int64)
    local[ids] = np.arange(ids.size)

    pairs = _active_pairs(complex, straddle)

    parent = np.arange(ids.size)

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for ea, eb in pairs:
        ra, rb = find(local[ea]), find(local[eb])
        if ra != rb:
            parent[ra] = rb

    groups = {}
    for c in range(ids.size):
        groups.setdefault(find(c), []).append(c)
    pair_bucket = {r: [] for r in groups}
    for ea, eb in pairs:
        a = int(local[ea])
        pair_bucket[find(a)].append((a, int(local[eb])))

    ga, gb = g[complex.edges[ids, 0]], g[complex.edges[ids, 1]]
    t_all = (level - ga) / (gb - ga)

    out = []
    for root, members in groups.items():
        members = np.asarray(members, dtype=np.int64)
        remap = {int(c): k for k, c in enumerate(members)}
        segs = [(remap[a], remap[b]) for a, b in pair_bucket[root]]
        out.append(Contour(level=float(level), edge_ids=ids[members],
                           params=t_all[members], segments=segs))
    out.sort(key=lambda c: int(c.edge_ids[0]))
    return out


def _active_pairs(complex: SimplicialComplex, straddle):
    """(edge, edge) pairs cut by one triangle each, as an (A, 2) array."""
    if complex.n_triangles == 0:
        return np.zeros((0, 2), dtype=np.int64)
    tri_mask = straddle[complex.triangle_edges]
    counts = tri_mask.sum(axis=1)
    bad = np.flatnonzero((counts != 0) & (counts != 2))
    if bad.size:
        raise AssertionError(
            f"triangle {bad[0]} crosses the level on {counts[bad[0]]} edges; "
            "field is not generic")
    rows = np.flatnonzero(counts == 2)
    if rows.size == 0:
        return np.zeros((0, 2), dtype=np.int64)
    pos = np.argsort(~tri_mask[rows], axis=1, kind="stable")[:, :2]
    ea = complex.triangle_edges[rows, pos[:, 0]]
    eb = complex.triangle_edges[rows, pos[:, 1]]
    return np.column_stack([ea, eb])


def contour_count_at(complex, field, level) -> int:
    return len(contours_at(complex, field, level))


def contour_diameter(complex: SimplicialComplex, contour: Contour,
                     mode: str = "intrinsic", block: int = 512) -> float:
    """Largest distance between two crossing points of one contour.

    `intrinsic` measures through the edge skeleton (crossings are treated as
    subdivision points, so endpoint detours are exact); `extrinsic` is the
    Euclidean chord length and needs coordinates.
    """
    n = len(contour)
    if n <= 1:
        return 0.0
    if mode == "extrinsic":
        from scipy.spatial.distance import pdist
        return float(pdist(contour.points(complex)).max())
    if mode != "intrinsic":
        raise ValueError(f"unknown mode {mode!r}")

    ends = complex.edges[contour.edge_ids]
    lens = complex.lengths[contour.edge_ids]
    off_lo = contour.params * lens
    off_hi = (1.0 - contour.params) * lens

    verts = np.unique(ends)
    sub = vertex_distances(complex, verts)[:, verts]
    vidx = {int(v): i for i, v in enumerate(verts)}
    lo = np.fromiter((vidx[int(v)] for v in ends[:, 0]), np.int64, n)
    hi = np.fromiter((vidx[int(v)] for v in ends[:, 1]), np.int64, n)

    best = 0.0
    for start in range(0, n, block):
        stop = min(start + block, n)
        s = slice(start, stop)
        cand = sub[np.ix_(lo[s], lo)] + off_lo[s, None] + off_lo[None, :]
        np.minimum(cand, sub[np.ix_(lo[s], hi)] + off_lo[s, None]
                   + off_hi[None, :], out=cand)
        np.minimum(cand, sub[np.ix_(hi[s], lo)] + off_hi[s, None]
                   + off_lo[None, :], out=cand)
        np.minimum(cand, sub[np.ix_(hi[s], hi)] + off_hi[s, None]
                   + off_hi[None, :], out=cand)
        cand[:, start:stop][np.diag_indices(stop - start)] = 0.0
        m = cand[np.isfinite(cand)]
        if m.size:
            best = max(best, float(m.max()))
    return best
