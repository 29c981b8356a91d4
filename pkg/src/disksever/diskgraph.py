"""Intersection graphs of closed disks built with uniform-grid hashing."""

import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class IntersectionGraph:
    n: int
    edges: np.ndarray  # (m, 2) int array, rows (i, j) with i < j, sorted

    @property
    def m(self):
        return int(self.edges.shape[0])

    def degrees(self):
        return np.bincount(self.edges.ravel(), minlength=self.n)

    def edge_set(self):
        return {(int(i), int(j)) for i, j in self.edges}


class UnionFind:
    """Disjoint sets with path compression and union by size."""

    def __init__(self, size):
        self.parent = list(range(size))
        self.size = [1] * size
        self.components = size

    def find(self, a):
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.components -= 1
        return True


class _Grid:
    """Indices of disks bucketed by the cell of their center."""

    def __init__(self, centers, idx, cell):
        self.cell = cell
        self.centers = centers
        keys = np.floor(centers[idx] / cell).astype(np.int64)
        self.buckets = defaultdict(list)
        for i, (a, b) in zip(idx.tolist(), keys.tolist()):
            self.buckets[(a, b)].append(i)
        self.buckets = {k: np.array(v, dtype=np.int64) for k, v in self.buckets.items()}

    def neighborhood(self, key):
        a, b = key
        parts = [self.buckets.get((a + da, b + db)) for da in (-1, 0, 1) for db in (-1, 0, 1)]
        parts = [p for p in parts if p is not None]
        if not parts:
            return np.empty(0, dtype=np.int64)
        return np.concatenate(parts)


def _touching(centers, radii, qi, cand):
    d = centers[qi][:, None, :] - centers[cand][None, :, :]
    dist2 = d[..., 0] ** 2 + d[..., 1] ** 2
    reach = radii[qi][:, None] + radii[cand][None, :]
    return dist2 <= reach * reach


def _pairs_within_grid(grid, radii):
    out = []
    centers = grid.centers
    for key, members in grid.buckets.items():
        cand = grid.neighborhood(key)
        hit = _touching(centers, radii, members, cand)
        a, b = np.nonzero(hit)
        i, j = members[a], cand[b]
        keep = i < j
        out.append(np.column_stack([i[keep], j[keep]]))
    return out


def _pairs_against_grid(grid, radii, query):
    """Pairs between ``query`` disks and the (larger) disks stored in ``grid``."""
    out = []
    centers = grid.centers
    keys = np.floor(centers[query] / grid.cell).astype(np.int64)
    groups = defaultdict(list)
    for i, (a, b) in zip(query.tolist(), keys.tolist()):
        groups[(a, b)].append(i)
    for key, members in groups.items():
        cand = grid.neighborhood(key)
        if cand.size == 0:
            continue
        members = np.array(members, dtype=np.int64)
        hit = _touching(centers, radii, members, cand)
        a, b = np.nonzero(hit)
        i, j = members[a], cand[b]
        out.append(np.column_stack([np.minimum(i, j), np.maximum(i, j)]))
    return out


def _radius_classes(radii):
    # class b holds radii in (2^(b-1), 2^b], relative to the smallest radius
    rel = radii / radii.min()
    return np.ceil(np.log2(rel) - 1e-12).astype(np.int64).clip(min=0)


def build_graph(instance):
    """Exact intersection graph of ``instance`` (closed disks).

    A single grid with cells of side ``2 * r_max`` is used when radii are
    within a factor 2 of each other.  Otherwise disks are split into
    power-of-two radius classes, each with its own grid, and every disk is
    checked against the grids of its own and all larger classes.
    """
    n = instance.n
    centers, radii = instance.centers, instance.radii
    if n < 2:
        return IntersectionGraph(n, np.empty((0, 2), dtype=np.int64))

    if radii.max() <= 2 * radii.min():
        grid = _Grid(centers, np.arange(n), 2 * float(radii.max()))
        chunks = _pairs_within_grid(grid, radii)
    else:
        cls = _radius_classes(radii)
        levels = np.unique(cls)
        grids = {}
        for b in levels:
            idx = np.flatnonzero(cls == b)
            grids[b] = _Grid(centers, idx, 2 * float(radii[idx].max()))
        chunks = []
        for pos, b in enumerate(levels):
            chunks += _pairs_within_grid(grids[b], radii)
            query = np.flatnonzero(cls == b)
            for big in levels[pos + 1:]:
                # cell side 2 * r_max(big) >= r_query + r_big, so a 3x3 look-up suffices
                chunks += _pairs_against_grid(grids[big], radii, query)

    chunks = [c for c in chunks if c.size]
    if not chunks:
        edges = np.empty((0, 2), dtype=np.int64)
    else:
        edges = np.unique(np.concatenate(chunks).astype(np.int64), axis=0)
    return IntersectionGraph(n, edges)


def is_connected(graph):
    if graph.n <= 1:
        return True
    uf = UnionFind(graph.n)
    for i, j in graph.edges.tolist():
        if uf.union(i, j) and uf.components == 1:
            return True
    return uf.components == 1


def count_components(graph):
    uf = UnionFind(graph.n)
    for i, j in graph.edges.tolist():
        uf.union(i, j)
    return uf.components
