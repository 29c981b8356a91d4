"""Line separators for disk intersection graphs.

All algorithms return a :class:`SeparatorResult` whose balance and partition
are re-checked against the instance before it is handed back.
"""

import math
from dataclasses import dataclass

import numpy as np

from .geom import Line, classify_all

TWO_THIRDS = 2.0 / 3.0
FOUR_FIFTHS = 4.0 / 5.0


class InfeasibleError(ValueError):
    """No line of the requested kind satisfies the balance constraint."""


class SeparatorValidationError(AssertionError):
    pass


def balance_cap(alpha, n):
    """Largest number of disks allowed in one open halfplane, ``ceil(alpha * n)``."""
    # 1e-9 absorbs alpha values like 2/3 that are not exact in binary
    return int(math.ceil(alpha * n - 1e-9))


@dataclass(frozen=True, eq=False)
class SeparatorResult:
    line: Line
    crossed: np.ndarray
    left: int
    right: int
    alpha: float
    algorithm: str
    trials_used: int = 1
    angle: float = float("nan")

    @property
    def size(self):
        return int(len(self.crossed))

    @property
    def n(self):
        return self.size + self.left + self.right

    def is_balanced(self):
        cap = balance_cap(self.alpha, self.n)
        return self.left <= cap and self.right <= cap

    def validate(self, instance):
        """Raise :class:`SeparatorValidationError` unless the certificate holds."""
        crossed, left, right = classify_all(self.line, instance)
        if self.size + self.left + self.right != instance.n:
            raise SeparatorValidationError("crossed/left/right do not partition the disks")
        if (left, right) != (self.left, self.right) or not np.array_equal(crossed, self.crossed):
            raise SeparatorValidationError("stored classification disagrees with the line")
        if not self.is_balanced():
            raise SeparatorValidationError(
                f"unbalanced: left={self.left} right={self.right} "
                f"cap={balance_cap(self.alpha, instance.n)}")
        return self

    def as_dict(self):
        return {
            "algorithm": self.algorithm,
            "alpha": self.alpha,
            "nx": self.line.nx,
            "ny": self.line.ny,
            "c": self.line.c,
            "size": self.size,
            "left": self.left,
            "right": self.right,
            "trials_used": self.trials_used,
            "crossed": [int(i) for i in self.crossed],
        }


def _result(instance, line, alpha, algorithm, trials_used=1, angle=float("nan")):
    crossed, left, right = classify_all(line, instance)
    return SeparatorResult(line, crossed, left, right, alpha, algorithm, trials_used, angle)


def _check_alpha(alpha):
    if not (0.5 <= alpha <= 1.0):
        raise ValueError(f"alpha must lie in [1/2, 1], got {alpha}")


# --------------------------------------------------------------------------
# per-slope sweep

def _sweep_rows(centers, radii, angles, cap):
    """Best offset for each angle in ``angles``.

    For every angle the 2n events ``t_j - r_j`` (disk starts being crossed)
    and ``t_j + r_j`` (disk stops being crossed) are sorted along the normal.
    A cut between sorted positions k and k+1 is a real line when the two
    values differ (the line sits in the open gap) or when an entry event is
    followed by an exit event of equal value (the line sits on the shared
    value and crosses both disks).  Returns ``(crossings, offsets)`` with
    crossings = -1 where no balanced offset exists.
    """
    n = radii.shape[0]
    angles = np.asarray(angles, dtype=float)
    nx = -np.sin(angles)[:, None]
    ny = np.cos(angles)[:, None]
    proj = nx * centers[None, :, 0] + ny * centers[None, :, 1]
    ev = np.concatenate([proj - radii, proj + radii], axis=1)
    order = np.argsort(ev, axis=1, kind="stable")  # entries before exits on ties
    vals = np.take_along_axis(ev, order, axis=1)
    is_exit = order >= n
    n_exit = np.cumsum(is_exit, axis=1)             # exits at positions <= k
    n_entry = np.arange(1, 2 * n + 1)[None, :] - n_exit
    left = n_exit
    right = n - n_entry
    crossed = n - left - right

    nxt = np.empty_like(vals)
    nxt[:, :-1] = vals[:, 1:]
    nxt_exit = np.ones_like(is_exit)
    nxt_exit[:, :-1] = is_exit[:, 1:]
    # offset used for each cut; a gap only counts if its midpoint is
    # representable strictly inside it (one-ulp gaps are rounding artifacts)
    mid = np.empty_like(vals)
    mid[:, :-1] = (vals[:, :-1] + vals[:, 1:]) / 2.0
    mid[:, -1] = vals[:, -1] + 1.0
    nxt[:, -1] = np.inf
    gap = (vals < mid) & (mid < nxt)
    touch = (vals == nxt) & ~is_exit & nxt_exit
    ok = (gap | touch) & (left <= cap) & (right <= cap)

    score = np.where(ok, crossed, n + 1)
    k = np.argmin(score, axis=1)
    rows = np.arange(len(angles))
    best = score[rows, k]
    offset = np.where(touch[rows, k], vals[rows, k], mid[rows, k])
    best = np.where(best > n, -1, best)
    if n <= cap:
        # everything on one side is allowed: zero crossings at the smallest offset
        offset = vals[:, 0] - 1.0
        best = np.zeros_like(best)
    return best, offset, nx[:, 0], ny[:, 0]


def _sweep(instance, angles, cap, batch_elems=2_000_000):
    n = instance.n
    angles = np.asarray(angles, dtype=float)
    size = max(1, batch_elems // max(1, 2 * n))
    parts = [_sweep_rows(instance.centers, instance.radii, angles[s:s + size], cap)
             for s in range(0, len(angles), size)]
    if not parts:
        return np.empty(0, dtype=np.int64), np.empty(0), np.empty(0), np.empty(0)
    return tuple(np.concatenate(col) for col in zip(*parts))


def _swept_line(nx, ny, offs, k):
    # normal components come from the sweep so classification matches it bit for bit
    return Line(float(nx[k]), float(ny[k]), float(offs[k]))


def best_line_for_slope(instance, angle, alpha=TWO_THIRDS):
    """Balanced line of direction ``angle`` crossing the fewest disks.

    Returns ``None`` when no offset satisfies the balance constraint.
    """
    if not math.isfinite(angle):
        raise ValueError(f"angle must be finite, got {angle!r}")
    _check_alpha(alpha)
    if instance.n < 1:
        raise ValueError("instance is empty")
    cap = balance_cap(alpha, instance.n)
    best, offs, nx, ny = _sweep(instance, [angle], cap)
    if best[0] < 0:
        return None
    res = _result(instance, _swept_line(nx, ny, offs, 0), alpha, "sweep", 1, angle)
    return res.validate(instance)


@dataclass(frozen=True)
class SlopeSample:
    angle: float
    seed: int
    trial: int


def sample_slopes(seed, trials, start=0):
    """Angles uniform on [0, pi); trial t depends only on ``(seed, t)``.

    A run with more trials therefore sees a superset of the angles of a run
    with fewer trials and the same seed.
    """
    out = []
    for t in range(start, start + trials):
        rng = np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(t,)))
        out.append(SlopeSample(float(rng.uniform(0.0, math.pi)), int(seed), t))
    return out


def random_line_separator(instance, trials, seed=0, alpha=TWO_THIRDS, reduce="min"):
    """Sweep-based randomized separator: best line over ``trials`` random slopes.

    ``reduce="min"`` returns the feasible result with the fewest crossings
    (ties go to the lowest trial index).  ``reduce="all"`` returns the list of
    per-trial results instead.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    _check_alpha(alpha)
    samples = sample_slopes(seed, trials)
    angles = np.array([s.angle for s in samples])
    cap = balance_cap(alpha, instance.n)
    best, offs, nx, ny = _sweep(instance, angles, cap)
    feasible = np.flatnonzero(best >= 0)
    if feasible.size == 0:
        if alpha >= TWO_THIRDS - 1e-12:
            raise SeparatorValidationError(
                "no balanced line found at alpha >= 2/3; a centerpoint line always is")
        raise InfeasibleError(f"no balanced line among {trials} random slopes")
    if reduce == "all":
        return [_result(instance, _swept_line(nx, ny, offs, t), alpha,
                        "random", 1, angles[t]).validate(instance) if best[t] >= 0 else None
                for t in range(trials)]
    t = int(feasible[np.argmin(best[feasible])])
    res = _result(instance, _swept_line(nx, ny, offs, t), alpha, "random", trials, angles[t])
    return res.validate(instance)


def line_through_point_separator(instance, point, trials, seed=0, threshold=None,
                                 alpha=TWO_THIRDS):
    """Random lines through ``point`` (normally a centerpoint of the centers).

    Stops at the first line crossing at most ``threshold`` disks, otherwise
    returns the line with the fewest crossings.  Balance is inherited from the
    depth of ``point`` and checked on the returned result.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    samples = sample_slopes(seed, trials)
    angles = np.array([s.angle for s in samples])
    nx = -np.sin(angles)[:, None]
    ny = np.cos(angles)[:, None]
    c = nx[:, 0] * point[0] + ny[:, 0] * point[1]
    proj = nx * instance.x[None, :] + ny * instance.y[None, :]
    left = proj + instance.radii < c[:, None]
    right = proj - instance.radii > c[:, None]
    counts = instance.n - left.sum(axis=1) - right.sum(axis=1)
    if threshold is not None:
        hits = np.flatnonzero(counts <= threshold)
        t = int(hits[0]) if hits.size else int(np.argmin(counts))
    else:
        t = int(np.argmin(counts))
    line = Line(float(nx[t, 0]), float(ny[t, 0]), float(c[t]))
    res = _result(instance, line, alpha, "centerpoint", t + 1 if threshold is not None else trials,
                  angles[t])
    return res.validate(instance)


def crossings_through_point(instance, point, angles):
    """Crossing counts of the lines through ``point`` with the given directions."""
    angles = np.asarray(angles, dtype=float)
    nx = -np.sin(angles)[:, None]
    ny = np.cos(angles)[:, None]
    c = nx * point[0] + ny * point[1]
    proj = nx * instance.x[None, :] + ny * instance.y[None, :]
    left = proj + instance.radii < c
    right = proj - instance.radii > c
    return instance.n - left.sum(axis=1) - right.sum(axis=1)


# --------------------------------------------------------------------------
# axis-parallel separator

def _quantile_line(coord, q):
    """Line position with exactly ``q`` coordinates strictly below/above it."""
    n = coord.shape[0]
    part = np.partition(coord, [q - 1, q, n - q - 1, n - q])
    lo = (part[q - 1] + part[q]) / 2.0 if part[q - 1] < part[q] else part[q]
    hi = (part[n - q - 1] + part[n - q]) / 2.0 if part[n - q - 1] < part[n - q] else part[n - q - 1]
    return float(lo), float(hi)


def _best_grid_index(coord, radii, base, count):
    """Index i in 1..count minimizing disks crossed by the line ``base + i``.

    A disk with center coordinate y crosses candidates i with
    ``y - r <= base + i <= y + r``; for unit disks that is at most three
    consecutive indices, found by rounding.  O(n + count), or O(n log n) when
    the candidate range dwarfs n (then some candidate is empty).
    """
    first = np.ceil(coord - radii - base).astype(np.int64).clip(1, count + 1)
    last = np.floor(coord + radii - base).astype(np.int64).clip(0, count)
    live = first <= last
    first, last = first[live], last[live]
    if count <= 4 * coord.shape[0] + 16:
        diff = np.zeros(count + 2, dtype=np.int64)
        np.add.at(diff, first, 1)
        np.add.at(diff, last + 1, -1)
        cover = np.cumsum(diff)[1:count + 1]
        i = int(np.argmin(cover))
        return i + 1, int(cover[i])
    # long range: find the first index not covered by any interval
    order = np.argsort(first, kind="stable")
    reach = 0
    for a, b in zip(first[order].tolist(), last[order].tolist()):
        if a > reach + 1:
            break
        reach = max(reach, b)
    return reach + 1, 0


def axis_parallel_separator(instance):
    """Axis-parallel 4/5-separator from the quantile-rectangle construction.

    Horizontal quantile lines leave floor(n/5) centers strictly below and
    above; candidates are the lines at integer distances 1..ceil(H-1) above
    the lower one (or the midline when H < 2), and likewise for vertical
    lines.  The candidate crossing the fewest disks wins; horizontal before
    vertical, then the smaller offset.
    """
    n = instance.n
    if n < 1:
        raise ValueError("instance is empty")
    if n < 5:
        options = [best_line_for_slope(instance, a, FOUR_FIFTHS) for a in (0.0, math.pi / 2)]
        options = [o for o in options if o is not None]
        best = min(options, key=lambda r: r.size)
        return SeparatorResult(best.line, best.crossed, best.left, best.right,
                               FOUR_FIFTHS, "axis", 1, best.angle).validate(instance)

    q = n // 5
    candidates = []
    for axis, make in ((1, Line.horizontal), (0, Line.vertical)):
        coord = instance.centers[:, axis]
        lo, hi = _quantile_line(coord, q)
        span = hi - lo
        if span < 2:
            pos = (lo + hi) / 2.0
            cross = int(np.count_nonzero(np.abs(coord - pos) <= instance.radii))
        else:
            count = int(math.ceil(span - 1))
            i, cross = _best_grid_index(coord, instance.radii, lo, count)
            pos = lo + i
        candidates.append((cross, make(pos)))
    _, line = min(candidates, key=lambda c: c[0])
    return _result(instance, line, FOUR_FIFTHS, "axis").validate(instance)


# --------------------------------------------------------------------------
# optimal line separator

def critical_angles(instance):
    """Directions in [0, pi) at which the sorted event order can change.

    For each pair of disks: the four bitangent directions (outer and inner
    common tangents, where two events ``t_i +- r_i`` and ``t_j +- r_j``
    coincide) and the direction of the center difference.  Pairs with the
    same (dx, dy, r_i, r_j) give the same angles and are deduplicated first.
    """
    c, r = instance.centers, instance.radii
    n = instance.n
    if n < 2:
        return np.empty(0)
    i, j = np.triu_indices(n, k=1)
    dx = c[j, 0] - c[i, 0]
    dy = c[j, 1] - c[i, 1]
    ri, rj = r[i], r[j]
    flip = (dx < 0) | ((dx == 0) & (dy < 0))
    dx, dy = np.where(flip, -dx, dx), np.where(flip, -dy, dy)
    ri, rj = np.where(flip, rj, ri), np.where(flip, ri, rj)
    keys = np.unique(np.column_stack([dx, dy, ri, rj]), axis=0)
    dx, dy, ri, rj = keys.T
    dist = np.hypot(dx, dy)
    base = np.arctan2(dy, dx)
    out = [base]
    pos = dist > 0
    for s in (ri - rj, ri + rj):
        ok = pos & (np.abs(s) <= dist)
        delta = np.arcsin(s[ok] / dist[ok])
        out += [base[ok] + delta, base[ok] - delta]
    ang = np.mod(np.concatenate(out), math.pi)
    ang = np.where(ang >= math.pi, 0.0, ang)
    return np.unique(ang)


def optimal_line_separator(instance, alpha=TWO_THIRDS):
    """Globally fewest-crossing balanced line (intended for n up to a few thousand).

    The per-direction optimum is constant between consecutive critical
    angles, so evaluating the critical angles themselves plus one direction
    inside every gap between them covers all lines.
    """
    _check_alpha(alpha)
    if instance.n < 1:
        raise ValueError("instance is empty")
    crit = critical_angles(instance)
    if crit.size == 0:
        angles = np.array([0.0, math.pi / 2])
    else:
        gaps = np.diff(np.append(crit, crit[0] + math.pi))
        angles = np.concatenate([crit, np.mod(crit + gaps / 2.0, math.pi)])
    cap = balance_cap(alpha, instance.n)
    best, offs, nx, ny = _sweep(instance, angles, cap)
    if np.all(best < 0):
        raise InfeasibleError("no balanced line exists")
    score = np.where(best < 0, instance.n + 1, best)
    k = int(np.argmin(score))
    res = _result(instance, _swept_line(nx, ny, offs, k), alpha, "optimal",
                  len(angles), angles[k])
    return res.validate(instance)
