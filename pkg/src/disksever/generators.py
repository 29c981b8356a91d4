"""Instance families: random, snake, concentric lower bound, nested hexagons."""

import math
from dataclasses import dataclass, field

import numpy as np

from .diskgraph import build_graph, is_connected
from .geom import Instance

SNAKE_RADIUS = 2.0 / 3.0
DEFAULT_LB_EPS = 1.0 / (4.0 * math.pi)


class GenerationError(RuntimeError):
    pass


class ConstructionError(AssertionError):
    """A construction missed a guarantee it is supposed to meet by design."""


def gen_random(n, L, seed=0, require_connected=True, max_rejects=1000):
    """``n`` unit disks with centers i.i.d. uniform in ``[0, L]^2``.

    With ``require_connected`` the whole instance is redrawn from the same
    stream until its intersection graph is connected.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not L > 0:
        raise ValueError("L must be positive")
    rng = np.random.default_rng(seed)
    rejects = 0
    while True:
        centers = rng.uniform(0.0, L, size=(n, 2))
        inst = Instance(centers, np.ones(n))
        if not require_connected or is_connected(build_graph(inst)):
            break
        rejects += 1
        if rejects > max_rejects:
            raise GenerationError(
                f"no connected instance with n={n}, L={L} after {rejects - 1} rejects")
    prov = {"family": "random", "n": n, "L": L, "seed": seed,
            "require_connected": require_connected, "max_rejects": max_rejects,
            "rejects": rejects}
    return Instance(inst.centers, inst.radii, prov)


def gen_random_disjoint(n, L, seed=0, max_rejects=1000):
    """Like :func:`gen_random` but redraws until no two disks intersect."""
    rng = np.random.default_rng(seed)
    for rejects in range(max_rejects + 1):
        inst = Instance(rng.uniform(0.0, L, size=(n, 2)), np.ones(n))
        if build_graph(inst).m == 0:
            prov = {"family": "disjoint", "n": n, "L": L, "seed": seed,
                    "max_rejects": max_rejects, "rejects": rejects}
            return Instance(inst.centers, inst.radii, prov)
    raise GenerationError(f"no disjoint instance with n={n}, L={L} after {max_rejects} rejects")


def snake_centers(q):
    """Centers of the snake instance, listed in path order."""
    cols = (q + 1) // 2
    pts = []
    for i in range(1, cols + 1):
        x = 2 * i - 1
        ys = range(1, q + 1) if i % 2 == 1 else range(q, 0, -1)
        pts += [(x, y) for y in ys]
        if i < cols:
            # connector (2i, q^(i mod 2)): top after odd columns, bottom after even
            pts.append((2 * i, q ** (i % 2)))
    return np.array(pts, dtype=float)


def gen_snake(q):
    """Snake instance: ``(q^2 - 1)/2 + q`` disks of radius 2/3 forming a path.

    Columns of disks at odd x joined alternately at the top and bottom by one
    connector disk at even x; a vertical line through a connector crosses a
    single disk and splits the rest evenly.
    """
    if int(q) != q or q < 3 or q % 2 == 0:
        raise ValueError(f"q must be an odd integer >= 3, got {q!r}")
    q = int(q)
    centers = snake_centers(q)
    expected = (q * q - 1) // 2 + q
    assert centers.shape[0] == expected
    return Instance(centers, np.full(expected, SNAKE_RADIUS), {"family": "snake", "q": q})


# --------------------------------------------------------------------------
# concentric lower-bound construction

@dataclass
class LowerBoundParams:
    n: int
    m: int
    k: int
    layers: int
    eps: float
    n_prime: int = 0
    m_prime: int = 0
    gammas: list = field(default_factory=list)
    layer_edges: list = field(default_factory=list)

    def crossing_floor(self):
        """Lower bound on disks crossed by any line through the origin."""
        const = math.sqrt(6) / (4 * math.pi + 1) - 2 / (9 * math.sqrt(6))
        return const * math.sqrt(self.m * (1 + math.log(self.layers)))


def _check_lb_range(n, m):
    if n < 1 or not (9 * n <= m <= (n * n) // 6):
        raise ValueError(f"need 9n <= m <= floor(n^2/6) for the lower-bound construction, "
                         f"got n={n}, m={m}")


def choose_k(n, m):
    """Smallest integer k with ``k >= sqrt(6m / (1 + ln(n/k)))``."""
    _check_lb_range(n, m)
    k = 1
    while k < math.sqrt(6 * m / (1 + math.log(n / k))):
        k += 1
    if k > n:
        raise ConstructionError(f"choose_k exceeded n for n={n}, m={m}")
    return k


def arc_gamma(i, eps):
    """Arc length on circle i between centers of two touching unit disks."""
    rho = 2 * i * (1 + eps)
    return 2 * rho * math.asin(1 / rho)


def gen_lower_bound(n, m, eps=DEFAULT_LB_EPS):
    """Concentric circles of radius ``2i(1+eps)``, each holding k unit disks.

    Returns ``(instance, params)``.  The achieved disk and edge counts are
    checked against ``n <= n' <= 2n`` and ``ceil(m/9) <= m' <= 6m``.
    """
    _check_lb_range(n, m)
    if not 0 < eps <= 1 / (4 * math.pi) + 1e-15:
        raise ValueError("eps must lie in (0, 1/(4 pi)]")
    k = choose_k(n, m)
    layers = -(-n // k)
    phase = 2 * math.pi * np.arange(k) / k
    centers, gammas = [], []
    for i in range(1, layers + 1):
        rho = 2 * i * (1 + eps)
        centers.append(np.column_stack([rho * np.cos(phase), rho * np.sin(phase)]))
        gammas.append(arc_gamma(i, eps))
    centers = np.concatenate(centers)
    params = LowerBoundParams(n, m, k, layers, eps, n_prime=k * layers, gammas=gammas)
    inst = Instance(centers, np.ones(len(centers)),
                    {"family": "lower_bound", "n": n, "m": m, "eps": eps, "k": k,
                     "layers": layers})

    graph = build_graph(inst)
    layer_of = np.arange(inst.n) // k
    same = layer_of[graph.edges[:, 0]] == layer_of[graph.edges[:, 1]]
    params.m_prime = graph.m
    params.layer_edges = np.bincount(layer_of[graph.edges[same, 0]], minlength=layers).tolist()
    if not same.all():
        raise ConstructionError("disks on different layers intersect")
    if not all(2 < g < 2 * math.pi / 3 for g in gammas):
        raise ConstructionError("arc length outside (2, 2 pi / 3)")
    if not (n <= params.n_prime <= 2 * n):
        raise ConstructionError(f"n'={params.n_prime} outside [{n}, {2 * n}]")
    if not (-(-m // 9) <= params.m_prime <= 6 * m):
        raise ConstructionError(f"m'={params.m_prime} outside [{-(-m // 9)}, {6 * m}]")
    return inst, params


def layer_edge_formula(i, k, eps):
    """Closed-form number of intersecting pairs on layer i."""
    return math.floor(arc_gamma(i, eps) * k / (4 * math.pi * i * (1 + eps))) * k


# --------------------------------------------------------------------------
# arbitrary radii

def gen_arbitrary_radii(levels, eps=0.01):
    """Nested hexagonal rings of disks whose radii triple from ring to ring.

    Level 1 is one disk at the origin.  Ring i >= 2 has six disks of radius
    ``3^(i-2)`` at distance ``2 * 3^(i-2)`` from the origin, rotated by 30
    degrees on odd i; every radius is finally scaled by ``1 - eps`` so that all
    tangencies disappear.
    """
    if levels < 1:
        raise ValueError("levels must be >= 1")
    if not 0 < eps < 0.5:
        raise ValueError("eps must lie in (0, 1/2)")
    centers = [(0.0, 0.0)]
    radii = [1.0]
    enclosing = 1.0  # radius of the smallest disk holding all previous levels
    for i in range(2, levels + 1):
        rho = enclosing
        rot = math.radians(30.0 * (i % 2))
        for j in range(6):
            a = rot + j * math.pi / 3
            centers.append((2 * rho * math.cos(a), 2 * rho * math.sin(a)))
            radii.append(rho)
        enclosing = 3 * rho
    radii = (1 - eps) * np.array(radii)
    return Instance(np.array(centers), radii,
                    {"family": "arbitrary_radii", "levels": levels, "eps": eps})


def regenerate(provenance):
    """Rebuild an instance from its provenance record."""
    fam = provenance.get("family")
    if fam == "random":
        return gen_random(provenance["n"], provenance["L"], provenance["seed"],
                          provenance["require_connected"], provenance["max_rejects"])
    if fam == "disjoint":
        return gen_random_disjoint(provenance["n"], provenance["L"], provenance["seed"],
                                   provenance["max_rejects"])
    if fam == "snake":
        return gen_snake(provenance["q"])
    if fam == "lower_bound":
        return gen_lower_bound(provenance["n"], provenance["m"], provenance["eps"])[0]
    if fam == "arbitrary_radii":
        return gen_arbitrary_radii(provenance["levels"], provenance["eps"])
    raise ValueError(f"unknown instance family {fam!r}")
