"""Distortion of the Reeb quotient map and closed-form distortion bounds.

The empirical side compares the geodesic metric of a complex with the
quotient metric of its Reeb graph over vertex pairs.  The closed-form side
evaluates the distortion bounds exactly as displayed, left to right, so
identity tests between different routes through the formulas are stable up
to a few ulps.  Contour diameters and lengths live in the edge skeleton;
crossing points act as exact subdivision points.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .complexes.geodesic import vertex_distances
from .complexes.levelscan import LevelScan, select_gap_indices
from .complexes.simplicial import ScalarField, SimplicialComplex
from .reeb.graph import QuotientMap, ReebGraph


@dataclass(frozen=True)
class BoundReport:
    """One checked inequality: pass means lhs <= rhs*(1+tolerance)+tol_abs.

    `tol_abs` defaults to zero, recovering the plain relative form; it is
    used where the right side vanishes although the left side carries an
    O(h) discretization error.
    """
    name: str
    lhs: float
    rhs: float
    passed: bool
    tolerance: float
    inputs: dict
    tol_abs: float = 0.0

    @staticmethod
    def check(name: str, lhs: float, rhs: float, tolerance: float = 0.0,
              tol_abs: float = 0.0, **inputs) -> "BoundReport":
        ok = lhs <= rhs * (1.0 + tolerance) + tol_abs
        return BoundReport(str(name), float(lhs), float(rhs), bool(ok),
                           float(tolerance), dict(inputs), float(tol_abs))

    def to_json_doc(self) -> dict:
        doc = {
            "name": self.name,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "pass": self.passed,
            "tolerance": self.tolerance,
            "inputs": self.inputs,
        }
        if self.tol_abs:
            doc["tol_abs"] = self.tol_abs
        return doc


@dataclass(frozen=True)
class MorseBoundParams:
    """Inputs of the codimension-one distortion bound for manifolds."""
    b: int
    L: float
    n: int
    volume: float
    thickness: float
    diameter: float
    eps_p: float = 0.0

    def __post_init__(self):
        if self.b < 0:
            raise ValueError("cycle-rank bound b must be nonnegative")
        if self.L < 0:
            raise ValueError("Lipschitz constant must be nonnegative")
        if self.n < 2:
            raise ValueError("dimension must be at least 2")
        if self.volume <= 0:
            raise ValueError("volume must be positive")
        if self.thickness <= 0:
            raise ValueError("thickness must be positive")
        if self.diameter <= 0:
            raise ValueError("diameter must be positive")
        if self.eps_p < 0:
            raise ValueError("eps_p must be nonnegative")


def _graph_point_arrays(reeb: ReebGraph, qmap: QuotientMap):
    """Per vertex: the two exit nodes of its graph point and their costs."""
    n = len(qmap.points)
    nlev = reeb.levels
    end_lo = np.empty(n, dtype=np.int64)
    end_hi = np.empty(n, dtype=np.int64)
    cost_lo = np.zeros(n, dtype=np.float64)
    cost_hi = np.zeros(n, dtype=np.float64)
    eid_of = np.full(n, -1, dtype=np.int64)
    for v, pt in enumerate(qmap.points):
        if pt[0] == "node":
            end_lo[v] = end_hi[v] = pt[1]
        else:
            _, eid, lvl = pt
            a, b = reeb.edges[eid]
            end_lo[v], end_hi[v] = a, b
            cost_lo[v] = lvl - nlev[a]
            cost_hi[v] = nlev[b] - lvl
            eid_of[v] = eid
    return end_lo, end_hi, cost_lo, cost_hi, eid_of


def distortion(complex: SimplicialComplex, field: ScalarField,
               reeb: ReebGraph, qmap: QuotientMap, pairs="all",
               seed: int | None = None, block: int = 64) -> float:
    """max |d_X(x, y) - d_R(phi x, phi y)| over vertex pairs.

    `pairs` is either "all" or an integer count of uniformly sampled pairs
    (deterministic given `seed`).  Restricting to vertices makes this a
    lower bound on the true supremum.
    """
    if complex.n_components != 1:
        raise ValueError("distortion needs a connected complex")
    n = complex.n_vertices
    if n < 2:
        return 0.0
    e_lo, e_hi, c_lo, c_hi, eid_of = _graph_point_arrays(reeb, qmap)
    lev = qmap.levels
    nd = reeb.node_distances()

    def reeb_block(rows, cols):
        cand = nd[np.ix_(e_lo[rows], e_lo[cols])] \
            + c_lo[rows, None] + c_lo[None, cols]
        np.minimum(cand, nd[np.ix_(e_lo[rows], e_hi[cols])]
                   + c_lo[rows, None] + c_hi[None, cols], out=cand)
        np.minimum(cand, nd[np.ix_(e_hi[rows], e_lo[cols])]
                   + c_hi[rows, None] + c_lo[None, cols], out=cand)
        np.minimum(cand, nd[np.ix_(e_hi[rows], e_hi[cols])]
                   + c_hi[rows, None] + c_hi[None, cols], out=cand)
        same = (eid_of[rows, None] == eid_of[None, cols]) \
            & (eid_of[rows, None] >= 0)
        if np.any(same):
            direct = np.abs(lev[rows, None] - lev[None, cols])
            np.minimum(cand, np.where(same, direct, np.inf), out=cand)
        return cand

    best = 0.0
    if pairs == "all":
        all_cols = np.arange(n)
        for start in range(0, n, block):
            rows = np.arange(start, min(start + block, n))
            dx = vertex_distances(complex, rows.tolist())
            dr = reeb_block(rows, all_cols)
            best = max(best, float(np.abs(dx - dr).max()))
        return best

    k = int(pairs)
    if k <= 0:
        raise ValueError("pair sample count must be positive")
    rng = np.random.default_rng(seed)
    left = rng.integers(0, n, size=k)
    right = rng.integers(0, n, size=k)
    srcs = np.unique(left)
    dx_rows = vertex_distances(complex, srcs.tolist())
    row_of = {int(s): i for i, s in enumerate(srcs)}
    dx = dx_rows[[row_of[int(v)] for v in left], right]
    dr = nd[e_lo[left], e_lo[right]] + c_lo[left] + c_lo[right]
    np.minimum(dr, nd[e_lo[left], e_hi[right]] + c_lo[left] + c_hi[right],
               out=dr)
    np.minimum(dr, nd[e_hi[left], e_lo[right]] + c_hi[left] + c_lo[right],
               out=dr)
    np.minimum(dr, nd[e_hi[left], e_hi[right]] + c_hi[left] + c_hi[right],
               out=dr)
    same = (eid_of[left] == eid_of[right]) & (eid_of[left] >= 0)
    if np.any(same):
        np.minimum(dr, np.where(same, np.abs(lev[left] - lev[right]), np.inf),
                   out=dr)
    return float(np.abs(dx - dr).max())


def _crossing_geometry(complex, contour):
    ends = complex.edges[contour.edge_ids]
    lens = complex.lengths[contour.edge_ids]
    off_lo = contour.params * lens
    off_hi = (1.0 - contour.params) * lens
    return ends, off_lo, off_hi


def _sweep_diameter(complex, contour, iters: int = 8) -> float:
    """Iterated farthest-point lower estimate of a contour's diameter."""
    n = len(contour)
    if n <= 1:
        return 0.0
    ends, off_lo, off_hi = _crossing_geometry(complex, contour)
    if complex.coords is not None:
        pts = contour.points(complex)
        far = pts - pts.mean(axis=0)
        cur = int(np.argmax(np.einsum("ij,ij->i", far, far)))
    else:
        cur = 0
    best = 0.0
    for _ in range(iters):
        d2 = vertex_distances(complex, [int(ends[cur, 0]), int(ends[cur, 1])])
        dq = d2[0, ends[:, 0]] + off_lo[cur] + off_lo
        np.minimum(dq, d2[0, ends[:, 1]] + off_lo[cur] + off_hi, out=dq)
        np.minimum(dq, d2[1, ends[:, 0]] + off_hi[cur] + off_lo, out=dq)
        np.minimum(dq, d2[1, ends[:, 1]] + off_hi[cur] + off_hi, out=dq)
        dq[cur] = 0.0
        nxt = int(np.argmax(dq))
        if dq[nxt] <= best * (1.0 + 1e-12):
            break
        best = float(dq[nxt])
        cur = nxt
    return best


def _contour_diam(complex, contour, mode, method):
    if mode == "extrinsic" or method == "exact":
        from .complexes.contours import contour_diameter
        return contour_diameter(complex, contour, mode=mode)
    if method != "sweep":
        raise ValueError(f"unknown method {method!r}")
    return _sweep_diameter(complex, contour)


def _level_samples(complex, field, levels_per_edge, max_levels):
    """Yield (level, contours) over the chosen gaps of the sweep."""
    if levels_per_edge < 1:
        raise ValueError("levels_per_edge must be at least 1")
    scan = LevelScan(complex, field)
    wanted = None
    if max_levels is not None:
        target = max(1, int(max_levels) // levels_per_edge)
        wanted = select_gap_indices(complex.n_vertices - 1, target)
    for gap in scan.gaps():
        if wanted is not None and gap.index not in wanted:
            continue
        for level in gap.levels(levels_per_edge):
            yield level, gap.contours(level)


def max_contour_diameter(complex: SimplicialComplex, field: ScalarField,
                         levels_per_edge: int = 1, mode: str = "intrinsic",
                         method: str = "sweep",
                         max_levels: int | None = None) -> float:
    """Largest contour diameter over sampled levels, estimated from below.

    Levels are the midpoints of consecutive gaps between sorted vertex
    values, refined to `levels_per_edge` samples per gap.  The default
    diameter route is the farthest-point sweep; `method="exact"` computes
    every pairwise crossing distance.
    """
    best = 0.0
    for _, conts in _level_samples(complex, field, levels_per_edge,
                                   max_levels):
        for c in conts:
            if len(c) < 2:
                continue
            best = max(best, _contour_diam(complex, c, mode, method))
    return best


def thickness(complex: SimplicialComplex, field: ScalarField,
              levels_per_edge: int = 1, method: str = "sweep",
              max_levels: int | None = None) -> float:
    """min over sampled contours of length / diameter.

    Point contours carry no length scale and are excluded (with a
    warning), matching the convention that the thickness of a field only
    sees its one-dimensional contours.
    """
    if not complex.is_surface:
        raise ValueError("thickness is defined for surface complexes")
    if complex.coords is None:
        raise ValueError("contour lengths need embedded coordinates")
    best = math.inf
    skipped = 0
    for level, conts in _level_samples(complex, field, levels_per_edge,
                                       max_levels):
        for c in conts:
            diam = _contour_diam(complex, c, "intrinsic", method) \
                if len(c) > 1 else 0.0
            if diam <= 0.0:
                skipped += 1
                continue
            best = min(best, c.length(complex) / diam)
    if skipped:
        warnings.warn(f"excluded {skipped} degenerate point contour(s) "
                      "from the thickness infimum")
    if math.isinf(best):
        warnings.warn("no one-dimensional contours were sampled")
    return best


def distance_function_bound(b1_prime: int, D: float):
    """Distortion bound 2(b1'+1)D for distance fields, with its GH half."""
    if b1_prime < 0:
        raise ValueError("b1_prime must be nonnegative")
    if D < 0:
        raise ValueError("D must be nonnegative")
    dis = 2.0 * (b1_prime + 1) * D
    return dis, (b1_prime + 1) * D


def morse_bound_B(p: MorseBoundParams):
    """Distortion bound B(b) for Morse fields on closed manifolds.

    Evaluated left to right exactly as displayed; returns (B, B/2), the
    second being the Gromov-Hausdorff form.
    """
    term_vol = (2.0 * p.L / (p.b + 1) * p.volume / p.thickness) ** (1.0 / p.n)
    term_eps = 8.0 * (p.diameter ** (1.0 / p.n)
                      * p.eps_p ** ((p.n - 1) / p.n) + p.eps_p)
    B = 4.0 * (p.b + 1) ** 2 * (term_vol + term_eps) \
        + abs(p.L - 1.0) * p.diameter
    return B, 0.5 * B


def intermediate_bounds(b1_Rf: int, D: float, eps_p: float, L: float,
                        diam: float, k: int, n: int, vol: float,
                        T_f: float):
    """The two one-step displays behind the Morse bound, evaluated literally.

    The first bounds dis(phi) by (2 b1(R_f) + 1)(D + 4 eps_p) plus the
    Lipschitz defect; the second bounds D itself through volume, thickness
    and the contour count k.
    """
    if b1_Rf < 0 or k < 1:
        raise ValueError("b1_Rf must be nonnegative and k at least 1")
    MorseBoundParams(b=0, L=L, n=n, volume=vol, thickness=T_f,
                     diameter=diam, eps_p=eps_p)
    if D < 0:
        raise ValueError("D must be nonnegative")
    eq15 = (2 * b1_Rf + 1) * (D + 4.0 * eps_p) + abs(L - 1.0) * diam
    eq16 = (2.0 ** (n + 1) * k ** (n - 1) * L * vol / T_f) ** (1.0 / n) \
        + 8.0 * k * (diam ** (1.0 / n)
                     * eps_p ** ((n - 1) / n) + eps_p)
    return eq15, eq16


def composed_intermediate_bound(p: MorseBoundParams) -> float:
    """Chain the two displays: bound D by the second, feed the first.

    Uses b1(R_f) = b and k = b + 1, the worst cases allowed by the
    cycle-rank bound.
    """
    _, d_bound = intermediate_bounds(p.b, 0.0, p.eps_p, p.L, p.diameter,
                                     p.b + 1, p.n, p.volume, p.thickness)
    eq15, _ = intermediate_bounds(p.b, d_bound, p.eps_p, p.L, p.diameter,
                                  p.b + 1, p.n, p.volume, p.thickness)
    return eq15


def bound_ratio(b1: int, b1_prime: int, n: int) -> float:
    """Improvement factor ((b1+1)/(b1'+1))^(2-1/n) of the corank bound."""
    if not 0 <= b1_prime <= b1:
        raise ValueError("need 0 <= b1_prime <= b1")
    if n < 2:
        raise ValueError("dimension must be at least 2")
    return ((b1 + 1) / (b1_prime + 1)) ** (2.0 - 1.0 / n)


def gh_delta_bounds(i: int, b: int, rho: float, a_next: float | None = None):
    """Two-sided bounds on the best rank-i graph approximation distance.

    Above the cycle rank the answer is pinched between rho/(16i+12) and
    rho; below it the upper side pays 6(b+1) times the caller-supplied
    next approximation scale.
    """
    if i < 0 or b < 0:
        raise ValueError("i and b must be nonnegative")
    if rho < 0:
        raise ValueError("rho must be nonnegative")
    if i >= b:
        return rho / (16 * i + 12), rho
    if a_next is None:
        raise ValueError("a_next is required when i < b")
    return rho / (16 * b + 12), rho + 6.0 * (b + 1) * a_next
