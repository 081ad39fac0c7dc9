"""Closed-form lower bounds for the Reeb width of Riemannian manifolds,
plus empirical verifiers on the disk and hemisphere fixtures.

Unit contract: lengths and radii in length units, angles in radians,
curvature bounds in 1/length^2.  The local bound concerns a convex ball
of radius r on which K bounds the sectional curvature from above; the
global form substitutes a convexity-radius bound for r.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .complexes.levelscan import LevelScan
from .complexes.simplicial import ScalarField, SimplicialComplex
from .metric import _sweep_diameter

_HALF_SQRT3 = math.sqrt(3.0) / 2.0
TRIPOD_WIDTH = 2.0 * math.pi / 3.0
# display constants: b >= (2*sqrt(3)/pi) r and 2*pi/3 * (1/sqrt(K))
LINEAR_DISPLAY_CONSTANT = 2.0 * math.sqrt(3.0) / math.pi
CURVATURE_DISPLAY_CONSTANT = 2.0 * math.pi / 3.0


@dataclass(frozen=True)
class LocalGeometry:
    """Ball data: radius r, curvature upper bound K, dimension n.

    That r stays below the convexity and injectivity radii at the center
    is a caller-asserted precondition.
    """
    r: float
    K: float
    n: int

    def __post_init__(self):
        if self.r <= 0:
            raise ValueError("radius must be positive")
        if self.n < 2:
            raise ValueError("dimension must be at least 2")


@dataclass(frozen=True)
class GlobalGeometry:
    """Whole-manifold data for the global width bound."""
    inj: float
    K: float
    dim: int
    vol: float | None = None
    diam: float | None = None

    def __post_init__(self):
        if self.inj < 0:
            raise ValueError("injectivity radius must be nonnegative")
        if self.dim < 2:
            raise ValueError("dimension must be at least 2")
        if self.vol is not None and self.vol <= 0:
            raise ValueError("volume must be positive when given")
        if self.diam is not None and self.diam <= 0:
            raise ValueError("diameter must be positive when given")


def _as_local(r, K, n) -> LocalGeometry:
    if isinstance(r, LocalGeometry):
        return r
    return LocalGeometry(float(r), float(K), int(n))


def _as_global(inj, K, dim) -> GlobalGeometry:
    if isinstance(inj, GlobalGeometry):
        return inj
    return GlobalGeometry(float(inj), float(K), int(dim))


def _spherical_width(x: float, K: float) -> float:
    return 2.0 / math.sqrt(K) * math.asin(_HALF_SQRT3 * math.sin(x))


def reeb_width_local(r, K=None, n=None) -> float:
    """Width of a convex r-ball's worst fiber: 2r in dimension >= 3,
    sqrt(3) r on flat-or-negative surfaces, and the spherical-cap arc
    (2/sqrt(K)) arcsin((sqrt(3)/2) sin(min(r sqrt(K), pi/2))) when K > 0
    in dimension 2 (saturating at 2 pi/(3 sqrt(K)))."""
    g = _as_local(r, K, n)
    if g.n >= 3:
        return 2.0 * g.r
    if g.K <= 0:
        return math.sqrt(3.0) * g.r
    x = min(g.r * math.sqrt(g.K), math.pi / 2.0)
    return _spherical_width(x, g.K)


def reeb_width_global(inj, K=None, dim=None) -> float:
    """Whole-manifold width bound from injectivity radius and curvature.

    Case display of the underlying theorem; equals the local form at
    r = min(inj/2, pi/(2 sqrt(K))) (or inj/2 when K <= 0).
    """
    g = _as_global(inj, K, dim)
    if g.inj == 0:
        warnings.warn("global bound vacuous, use local form")
        return 0.0
    if g.dim >= 3:
        if g.K <= 0:
            return g.inj
        return min(g.inj, math.pi / math.sqrt(g.K))
    if g.K <= 0:
        return math.sqrt(3.0) / 2.0 * g.inj
    x = min(math.sqrt(g.K) / 2.0 * g.inj, math.pi / 2.0)
    return _spherical_width(x, g.K)


@dataclass(frozen=True)
class SimplifiedBound:
    """Coarse corollary value with the two display constants."""
    value: float
    linear_constant: float = LINEAR_DISPLAY_CONSTANT
    curvature_constant: float = CURVATURE_DISPLAY_CONSTANT

    def __float__(self):
        return self.value


def simplified_bounds(g) -> SimplifiedBound:
    """min(r, 2/sqrt(K)) for balls, min(inj/2, 2/sqrt(K)) globally;
    the curvature term is +inf when K <= 0."""
    if isinstance(g, LocalGeometry):
        base = g.r
    elif isinstance(g, GlobalGeometry):
        base = g.inj / 2.0
    else:
        raise TypeError("expected LocalGeometry or GlobalGeometry")
    if g.K > 0:
        return SimplifiedBound(min(base, 2.0 / math.sqrt(g.K)))
    return SimplifiedBound(base)


def convexity_radius_bound(inj: float, K: float) -> float:
    """min(inj/2, pi/(2 sqrt(K))) for K > 0; exactly inj/2 otherwise."""
    if inj < 0:
        raise ValueError("injectivity radius must be nonnegative")
    if K > 0:
        return min(inj / 2.0, math.pi / (2.0 * math.sqrt(K)))
    return inj / 2.0


def sphere_chord(alpha: float, r: float, K: float) -> float:
    """Geodesic distance between two points at azimuth separation alpha on
    the latitude circle at polar radius r, on the sphere of curvature K."""
    if K <= 0:
        raise ValueError("sphere_chord needs K > 0")
    if not 0 <= alpha <= math.pi:
        raise ValueError("alpha must lie in [0, pi]")
    if r < 0 or r * math.sqrt(K) > math.pi / 2.0 + 1e-15:
        raise ValueError("need 0 <= r sqrt(K) <= pi/2")
    return 2.0 / math.sqrt(K) * math.asin(
        math.sin(alpha / 2.0) * math.sin(r * math.sqrt(K)))


def urysohn_volume_lower(vol: float, diam: float, n: int,
                         c_n: float) -> float:
    """(c_n vol / diam)^(1/(n-1)); c_n is a user-supplied constant."""
    if vol <= 0 or diam <= 0 or c_n <= 0:
        raise ValueError("vol, diam, c_n must be positive")
    if n < 2:
        raise ValueError("dimension must be at least 2")
    return (c_n * vol / diam) ** (1.0 / (n - 1))


# ---------------------------------------------------------------------------
# disk fixture verifier

@dataclass(frozen=True)
class DiskReport:
    """Best boundary-touching contour found on the disk fixture."""
    best_level: float | None
    boundary_diam: float
    interior_diam: float
    threshold: float
    passed: bool

    def to_json_doc(self) -> dict:
        return {
            "best_level": self.best_level,
            "boundary_diam": self.boundary_diam,
            "interior_diam": self.interior_diam,
            "threshold": self.threshold,
            "pass": self.passed,
        }


def _link_component_count(pairs, sel):
    """Components of the induced subgraph on `sel` whose edges are the
    link pairs with both ends selected."""
    parent = {w: w for w in sel}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        if a in parent and b in parent:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    return len({find(w) for w in sel})


def _interior_critical_levels(complex, g):
    """Values of interior vertices where the level set can change shape:
    extrema and saddles of the vertex order, plus vertices tied with a
    link neighbour.  Boundary vertices are skipped since their values are
    candidate levels regardless."""
    opp = [[] for _ in range(complex.n_vertices)]
    for a, b, c in complex.triangles.tolist():
        opp[a].append((b, c))
        opp[b].append((a, c))
        opp[c].append((a, b))
    out = set()
    for v in range(complex.n_vertices):
        if complex.boundary_vertices[v]:
            continue
        pairs = opp[v]
        gv = float(g[v])
        low, up, tied = set(), set(), False
        for p in pairs:
            for w in p:
                if g[w] < gv:
                    low.add(w)
                elif g[w] > gv:
                    up.add(w)
                else:
                    tied = True
        if tied or _link_component_count(pairs, low) != 1 \
                or _link_component_count(pairs, up) != 1:
            out.add(gv)
    return out


def _level_pieces(complex, g, c, elo, ehi):
    """Connected pieces of the level set at value c.

    Unlike the transverse contour walk, vertices sitting exactly at the
    level belong to the pieces: a level through a saddle keeps its arms
    joined, and a flat stretch at the level is carried whole.  Yields per
    piece the crossing and vertex points with a mask marking the ones on
    the boundary."""
    e = complex.edges
    straddle = (elo < c) & (ehi > c)
    at = g == c
    items = [("e", int(i)) for i in np.flatnonzero(straddle)]
    items += [("v", int(v)) for v in np.flatnonzero(at)]
    parent = {it: it for it in items}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    tv = complex.triangles
    te = complex.triangle_edges
    active = at[tv].any(axis=1) | (straddle[te].sum(axis=1) >= 2) \
        if tv.size else np.zeros(0, dtype=bool)
    for t in np.flatnonzero(active):
        mem = [("e", int(i)) for i in te[t] if straddle[i]]
        mem += [("v", int(v)) for v in tv[t] if at[v]]
        for other in mem[1:]:
            union(mem[0], other)
    # flat edges outside every triangle still join their endpoints
    for i in np.flatnonzero(at[e[:, 0]] & at[e[:, 1]]):
        union(("v", int(e[i, 0])), ("v", int(e[i, 1])))

    coords = complex.coords
    bedge = complex.boundary_edges
    bvert = complex.boundary_vertices
    groups = {}
    for it in items:
        groups.setdefault(find(it), []).append(it)
    for mem in groups.values():
        pts = np.empty((len(mem), 3))
        onb = np.empty(len(mem), dtype=bool)
        for i, (kind, idx) in enumerate(mem):
            if kind == "e":
                u, w = e[idx]
                s = (c - g[u]) / (g[w] - g[u])
                pts[i] = coords[u] + s * (coords[w] - coords[u])
                onb[i] = bedge[idx]
            else:
                pts[i] = coords[idx]
                onb[i] = bvert[idx]
        yield pts, onb


def _far_point_diameter(pts):
    """Extrinsic diameter, exact by pdist for small sets and bounded from
    below by repeated farthest-point hops for big ones."""
    from scipy.spatial.distance import pdist

    if pts.shape[0] <= 1500:
        return float(pdist(pts).max())
    p = pts[int(np.argmin(pts[:, 0]))]
    best = 0.0
    for _ in range(4):
        d = np.linalg.norm(pts - p, axis=1)
        i = int(np.argmax(d))
        if d[i] <= best:
            break
        best = float(d[i])
        p = pts[i]
    return best


def disk_contour_verify(complex: SimplicialComplex, field: ScalarField,
                        tol: float = 0.05,
                        early_stop: bool = True) -> DiskReport:
    """Search for a level whose contour meets the boundary at points far
    apart (extrinsic distance), reporting the best level and whether it
    clears sqrt(3) - tol.

    Candidate levels are every boundary vertex value, every value shared
    by two or more vertices, every interior critical value, and the
    midpoints in between.  Level sets at those values are scanned with
    their vertices included, so a contour that only touches the boundary
    at isolated vertices, or joins its arms at a saddle, is measured
    exactly rather than sampled nearby.  Interior diameters over all
    level points are tracked alongside for the closed-disk form.  With
    `early_stop` the scan ends at the first level clearing the
    threshold, keeping the report a valid witness.
    """
    from scipy.spatial.distance import pdist

    if complex.coords is None:
        raise ValueError("disk verification needs embedded coordinates")
    if not np.any(complex.boundary_edges):
        raise ValueError("fixture has no boundary edges")
    threshold = math.sqrt(3.0) - tol

    g = field.resolved_values
    e = complex.edges
    elo = np.minimum(g[e[:, 0]], g[e[:, 1]])
    ehi = np.maximum(g[e[:, 0]], g[e[:, 1]])
    cand = set(np.unique(g[complex.boundary_vertices]).tolist())
    vals, counts = np.unique(g, return_counts=True)
    cand.update(vals[counts >= 2].tolist())
    cand.update(_interior_critical_levels(complex, g))
    base = sorted(cand)
    levels = sorted(base + [0.5 * (a + b) for a, b in zip(base, base[1:])])

    best_level = None
    best_b = 0.0
    best_i = 0.0
    for c in levels:
        for pts, onb in _level_pieces(complex, g, float(c), elo, ehi):
            if pts.shape[0] < 2:
                continue
            best_i = max(best_i, _far_point_diameter(pts))
            if int(onb.sum()) >= 2:
                db = float(pdist(pts[onb]).max())
                if db > best_b:
                    best_b, best_level = db, float(c)
        if early_stop and best_b >= threshold:
            break
    return DiskReport(best_level, best_b, best_i, threshold,
                      best_b >= threshold)


# ---------------------------------------------------------------------------
# hemisphere fixture verifier

def _unit_sphere_arc(extrinsic: float) -> float:
    """Great-circle distance below any path between two unit-sphere points
    at the given straight-line separation."""
    return 2.0 * math.asin(min(1.0, max(0.0, extrinsic / 2.0)))


def _stratified_gaps(n_gaps: int, first: int, uniform: int):
    wanted = set(range(min(first, n_gaps)))
    if uniform > 0 and n_gaps > first:
        wanted.update(int(i) for i in
                      np.linspace(first, n_gaps - 1, uniform).round())
    return wanted


def _max_contour_diam_exactish(complex, field, first, uniform):
    """Max intrinsic contour diameter over stratified levels, by the
    farthest-point sweep on each contour.

    Stratification counts the gaps actually carrying level sets, so tied
    vertex values (whole rings at one height, say) do not dilute it."""
    best = 0.0
    n_gaps = np.unique(field.resolved_values).shape[0] - 1
    wanted = _stratified_gaps(n_gaps, first, uniform)
    scan = LevelScan(complex, field)
    for seq, gap in enumerate(scan.gaps()):
        if seq not in wanted or gap.n_crossings < 2:
            continue
        for c in gap.contours():
            if len(c) >= 2:
                best = max(best, _sweep_diameter(complex, c))
    return best


def _max_contour_diam_certified(complex, field, target, first, uniform):
    """Cheap lower bound on the max intrinsic contour diameter.

    First pass converts extrinsic crossing-point diameters to great-circle
    arcs (valid on the unit sphere) and stops once `target` is cleared; if
    that fails, the most promising levels get the full sweep treatment.
    """
    from scipy.spatial.distance import pdist

    best = 0.0
    candidates = []
    n_gaps = np.unique(field.resolved_values).shape[0] - 1
    wanted = _stratified_gaps(n_gaps, first, uniform)
    scan = LevelScan(complex, field)
    for seq, gap in enumerate(scan.gaps()):
        if seq not in wanted or gap.n_crossings < 2:
            continue
        level_best = 0.0
        for c in gap.contours():
            if len(c) >= 2:
                arc = _unit_sphere_arc(float(pdist(c.points(complex)).max()))
                level_best = max(level_best, arc)
        best = max(best, level_best)
        if best >= target:
            return best
        candidates.append((level_best, seq))

    # extrinsic folding may hide a long contour; re-examine the top levels
    candidates.sort(reverse=True)
    retry = {s for _, s in candidates[:10]}
    scan = LevelScan(complex, field)
    for seq, gap in enumerate(scan.gaps()):
        if seq not in retry or gap.n_crossings < 2:
            continue
        for c in gap.contours():
            if len(c) >= 2:
                best = max(best, _sweep_diameter(complex, c))
        if best >= target:
            break
    return best


@dataclass(frozen=True)
class HemisphereReport:
    """Per-field max contour diameters on the hemisphere fixture."""
    per_field: dict
    suite_min: float
    tripod_diam: float
    target: float
    tol: float
    tripod_rtol: float
    tripod_ok: bool
    all_ok: bool

    def to_json_doc(self) -> dict:
        return {
            "per_field": dict(self.per_field),
            "suite_min": self.suite_min,
            "tripod_diam": self.tripod_diam,
            "target": self.target,
            "tol": self.tol,
            "tripod_rtol": self.tripod_rtol,
            "tripod_ok": self.tripod_ok,
            "pass": self.tripod_ok and self.all_ok,
        }


def hemisphere_width_verify(h: float = 0.02, tol: float = 0.08,
                            n_random: int = 10, seed: int = 0,
                            tripod_rtol: float = 0.03) -> HemisphereReport:
    """Check the hemisphere width value 2pi/3 against a function suite.

    The tripod distance field must realize a max contour diameter of
    2pi/3 within `tripod_rtol`; every field in the suite (tripod, polar
    height, `n_random` random smooth fields) must reach at least
    2pi/3 - tol.  Diameters are intrinsic, measured through the mesh, so
    each value estimates its field's true max from below.
    """
    from .complexes.generators import (hemisphere_mesh, random_smooth_field,
                                       tripod_field)
    from .complexes.simplicial import ScalarField

    mesh = hemisphere_mesh(max(2, round(math.pi / 2.0 / h)))
    target = TRIPOD_WIDTH - tol
    rng = np.random.default_rng(seed)

    per_field = {}
    tripod = tripod_field(mesh)
    per_field["tripod"] = _max_contour_diam_exactish(mesh, tripod,
                                                     first=40, uniform=40)
    height = ScalarField(np.arccos(np.clip(mesh.coords[:, 2], -1.0, 1.0)))
    per_field["height"] = _max_contour_diam_certified(
        mesh, height, target, first=60, uniform=120)
    for i in range(n_random):
        f = random_smooth_field(mesh, rng)
        per_field[f"random_{i}"] = _max_contour_diam_certified(
            mesh, f, target, first=60, uniform=120)

    tripod_diam = per_field["tripod"]
    tripod_ok = abs(tripod_diam - TRIPOD_WIDTH) <= tripod_rtol * TRIPOD_WIDTH
    all_ok = all(v >= target for v in per_field.values())
    return HemisphereReport(per_field, min(per_field.values()), tripod_diam,
                            target, tol, tripod_rtol, tripod_ok, all_ok)
