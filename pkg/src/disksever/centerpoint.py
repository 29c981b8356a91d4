"""Halfplane (Tukey) depth and an exactly certified centerpoint."""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import HalfspaceIntersection

TWO_PI = 2.0 * math.pi
# Critical directions closer than this are treated as one event.
ANGLE_TIE = 1e-12


class CenterpointError(RuntimeError):
    """Raised when no point of certified depth could be produced."""


@dataclass(frozen=True)
class DepthReport:
    point: tuple
    depth: int

    def is_centerpoint(self, n):
        return self.depth >= required_depth(n)


def required_depth(n):
    return -(-n // 3)


def _as_points(points):
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if not np.all(np.isfinite(pts)):
        raise ValueError("points must be finite")
    return pts


def halfplane_depth(points, p):
    """Minimum number of points in a closed halfplane whose boundary passes through ``p``.

    Angular sweep: the count only changes at directions perpendicular to
    ``q - p``, and at a change point it is never below the value on either
    side, so it is enough to evaluate one direction inside every gap between
    consecutive critical directions.  O(n log n).
    """
    pts = _as_points(points)
    if pts.shape[0] == 0:
        raise ValueError("need at least one point")
    d = pts - np.asarray(p, dtype=float)
    at_p = np.all(d == 0.0, axis=1)
    coincident = int(at_p.sum())
    d = d[~at_p]
    if d.shape[0] == 0:
        return coincident

    phi = np.sort(np.mod(np.arctan2(d[:, 1], d[:, 0]), TWO_PI))
    crit = np.sort(np.mod(np.concatenate([phi - math.pi / 2, phi + math.pi / 2]), TWO_PI))
    gaps = np.diff(np.append(crit, crit[0] + TWO_PI))
    open_gaps = np.flatnonzero(gaps > ANGLE_TIE)
    probes = crit[open_gaps] + gaps[open_gaps] / 2.0

    # points with angle inside the closed arc [theta - pi/2, theta + pi/2]
    ext = np.concatenate([phi, phi + TWO_PI])
    lo = np.mod(probes - math.pi / 2, TWO_PI)
    first = np.searchsorted(ext, lo, side="left")
    last = np.searchsorted(ext, lo + math.pi, side="right")
    return coincident + int((last - first).min())


def depth_report(points, p):
    return DepthReport((float(p[0]), float(p[1])), halfplane_depth(points, p))


def _pair_normals(pts):
    i, j = np.triu_indices(pts.shape[0], k=1)
    diff = pts[j] - pts[i]
    keep = np.any(diff != 0.0, axis=1)
    diff = diff[keep]
    normals = np.column_stack([-diff[:, 1], diff[:, 0]])
    normals /= np.hypot(normals[:, 0], normals[:, 1])[:, None]
    # one representative per undirected normal, canonical orientation
    flip = (normals[:, 1] < 0) | ((normals[:, 1] == 0) & (normals[:, 0] < 0))
    normals[flip] *= -1.0
    return np.unique(normals, axis=0)


def _collinear(pts):
    centered = pts - pts.mean(axis=0)
    return np.linalg.matrix_rank(centered, tol=1e-12 * max(1.0, np.abs(pts).max())) <= 1


def _depth_halfplanes(pts, normals, chunk=4096):
    """Halfplanes ``a . x <= b`` whose intersection is the depth region.

    For normal u the tightest closed halfplane ``x . u <= s`` holding more than
    ``n - ceil(n/3)`` points has ``s`` equal to the K-th smallest projection,
    K = n - ceil(n/3) + 1; the opposite normal uses the K-th largest.
    """
    n = pts.shape[0]
    k_low = n - required_depth(n)  # 0-based index of the K-th smallest
    k_high = n - 1 - k_low
    rows, rhs = [], []
    for start in range(0, normals.shape[0], chunk):
        u = normals[start:start + chunk]
        proj = u @ pts.T
        part = np.partition(proj, sorted({k_low, k_high}), axis=1)
        rows += [u, -u]
        rhs += [part[:, k_low], -part[:, k_high]]
    return np.concatenate(rows), np.concatenate(rhs)


def _chebyshev_center(a, b):
    norms = np.hypot(a[:, 0], a[:, 1])
    res = linprog(c=[0.0, 0.0, -1.0],
                  A_ub=np.column_stack([a, norms]), b_ub=b,
                  bounds=[(None, None), (None, None), (0.0, None)],
                  method="highs")
    if res.status != 0:
        raise CenterpointError(f"depth-region LP failed: {res.message}")
    return res.x[:2], res.x[2]


def _line_intersections(a, b):
    pts = []
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            det = a[i, 0] * a[j, 1] - a[i, 1] * a[j, 0]
            if abs(det) < 1e-12:
                continue
            x = (b[i] * a[j, 1] - a[i, 1] * b[j]) / det
            y = (a[i, 0] * b[j] - b[i] * a[j, 0]) / det
            pts.append((x, y))
    return pts


def _polygon(a, b, scale, max_rounds=50):
    """Vertices and Chebyshev center of ``{x : a x <= b}`` by constraint generation.

    Starts from an angularly spread subset of the halfplanes and keeps adding
    the constraints violated by the current polygon's vertices.  Returns
    ``(None, center)`` when the region has (numerically) empty interior.
    """
    angle = np.arctan2(a[:, 1], a[:, 0])
    order = np.argsort(angle, kind="stable")
    sel = np.unique(order[np.linspace(0, len(order) - 1, min(len(order), 256)).astype(int)])
    tol = 1e-12 * scale
    for _ in range(max_rounds):
        center, radius = _chebyshev_center(a[sel], b[sel])
        if radius <= 1e-9 * scale:
            return None, center
        try:
            verts = HalfspaceIntersection(np.column_stack([a[sel], -b[sel]]), center).intersections
        except Exception:  # qhull precision trouble
            return None, center
        viol = a @ verts.T - b[:, None]
        worst = viol.max(axis=1)
        bad = np.flatnonzero(worst > tol)
        if bad.size == 0:
            return verts, center
        extra = np.unique(np.concatenate([np.argmax(viol, axis=0),
                                          bad[np.argsort(-worst[bad])[:64]]]))
        sel = np.union1d(sel, extra)
    return None, _chebyshev_center(a, b)[0]


def _region_candidates(pts, a, b):
    """Points of the depth region, most preferred first."""
    scale = max(1.0, float(np.abs(pts).max()))
    verts, center = _polygon(a, b, scale)
    if verts is not None:
        return [verts.mean(axis=0), center]
    # Degenerate (point or segment) region: intersect the tight constraints
    center, _ = _chebyshev_center(a, b)
    slack = b - a @ center
    tight = np.flatnonzero(slack <= 1e-7 * scale)
    tight = tight[np.argsort(slack[tight], kind="stable")[:64]]
    cands = np.array(_line_intersections(a[tight], b[tight])).reshape(-1, 2)
    cands = cands[np.hypot(*(cands - center).T) <= 1e-6 * scale]
    if len(cands) == 0:
        return [center]
    return [cands.mean(axis=0)] + list(cands) + [center]


def _pair_line_candidates(pts, center, limit=40):
    """Data points and crossings of data-point lines near ``center``.

    A single-point depth region sits at such a location; computing it from
    the data directly avoids the rounding of the normalized halfplanes.
    """
    scale = max(1.0, float(np.abs(pts).max()))
    dist = np.hypot(*(pts - center).T)
    yield from pts[np.argsort(dist)[:limit]]
    i, j = np.triu_indices(pts.shape[0], k=1)
    d = pts[j] - pts[i]
    length = np.hypot(d[:, 0], d[:, 1])
    keep = length > 0
    i, j, d, length = i[keep], j[keep], d[keep], length[keep]
    off = np.abs(d[:, 0] * (center[1] - pts[i, 1]) - d[:, 1] * (center[0] - pts[i, 0])) / length
    near = np.argsort(off)[:limit]
    near = near[off[near] <= 1e-6 * scale]
    for s in range(len(near)):
        for t in range(s + 1, len(near)):
            p, r = pts[i[near[s]]], d[near[s]]
            q, u = pts[i[near[t]]], d[near[t]]
            den = r[0] * u[1] - r[1] * u[0]
            if den == 0:
                continue
            lam = ((q[0] - p[0]) * u[1] - (q[1] - p[1]) * u[0]) / den
            yield p + lam * r


def exact_centerpoint(points):
    """A point of halfplane depth at least ``ceil(n/3)``.

    Intersects the O(n^2) halfplanes bounded at the depth order statistic for
    every direction normal to a pair of points and returns the vertex centroid
    of the resulting polygon.  The depth of the returned point is always
    re-checked with :func:`halfplane_depth`.
    """
    pts = _as_points(points)
    n = pts.shape[0]
    if n == 0:
        raise ValueError("need at least one point")
    need = required_depth(n)
    if n == 1 or np.all(pts == pts[0]):
        return float(pts[0, 0]), float(pts[0, 1])

    normals = _pair_normals(pts)
    if _collinear(pts):
        # the median along the line is a data point, so its depth is exact
        along = np.array([normals[0, 1], -normals[0, 0]])
        order = np.argsort(pts @ along, kind="stable")
        mid = pts[order[(n - 1) // 2]]
        if halfplane_depth(pts, mid) >= need:
            return float(mid[0]), float(mid[1])
        normals = np.vstack([normals, along])
    a, b = _depth_halfplanes(pts, normals)
    cands = _region_candidates(pts, a, b)
    for cand in cands:
        if halfplane_depth(pts, cand) >= need:
            return float(cand[0]), float(cand[1])
    for cand in _pair_line_candidates(pts, cands[-1]):
        if halfplane_depth(pts, cand) >= need:
            return float(cand[0]), float(cand[1])
    raise CenterpointError(
        f"could not certify a centerpoint of depth {need} for {n} points")
