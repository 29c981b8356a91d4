"""Disks, oriented lines and the crossed/left/right classification.

A line is kept in normal form ``{p : nx*px + ny*py = c}`` so vertical lines
need no special casing.  Disks are closed: a line tangent to a disk crosses it.
"""

import enum
import math
from dataclasses import dataclass, field

import numpy as np


class SideClass(enum.Enum):
    CROSSED = "crossed"
    LEFT = "left"
    RIGHT = "right"


def _check_finite(*values):
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"non-finite input: {v!r}")


@dataclass(frozen=True)
class Disk:
    id: int
    cx: float
    cy: float
    r: float = 1.0

    def __post_init__(self):
        _check_finite(self.cx, self.cy, self.r)
        if self.r <= 0:
            raise ValueError(f"disk radius must be positive, got {self.r}")


@dataclass(frozen=True)
class Line:
    """Oriented line with unit normal ``(nx, ny)`` and offset ``c``.

    The left side is where ``nx*x + ny*y < c``.
    """

    nx: float
    ny: float
    c: float

    def __post_init__(self):
        _check_finite(self.nx, self.ny, self.c)
        if abs(self.nx * self.nx + self.ny * self.ny - 1.0) > 1e-12:
            raise ValueError("line normal must have unit length")

    @classmethod
    def from_angle(cls, angle, offset=0.0):
        """Line whose direction makes ``angle`` with the x-axis.

        The normal is the direction rotated by +90 degrees, so ``offset`` is
        measured along ``(-sin(angle), cos(angle))``.
        """
        _check_finite(angle, offset)
        return cls(-math.sin(angle), math.cos(angle), float(offset))

    @classmethod
    def through_point(cls, angle, point):
        nx, ny = -math.sin(angle), math.cos(angle)
        return cls(nx, ny, nx * point[0] + ny * point[1])

    @classmethod
    def horizontal(cls, y):
        return cls(0.0, 1.0, float(y))

    @classmethod
    def vertical(cls, x):
        return cls(1.0, 0.0, float(x))

    def flipped(self):
        return Line(-self.nx, -self.ny, -self.c)

    def project(self, x, y):
        """Position of points along the normal; works on scalars and arrays."""
        return self.nx * x + self.ny * y


@dataclass(frozen=True, eq=False)
class Instance:
    """Immutable, ordered set of disks plus the provenance that produced it."""

    centers: np.ndarray
    radii: np.ndarray
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        centers = np.ascontiguousarray(self.centers, dtype=float).reshape(-1, 2)
        radii = np.ascontiguousarray(self.radii, dtype=float).reshape(-1)
        if radii.shape[0] != centers.shape[0]:
            raise ValueError("centers and radii disagree on n")
        if not (np.all(np.isfinite(centers)) and np.all(np.isfinite(radii))):
            raise ValueError("instance has non-finite coordinates or radii")
        if np.any(radii <= 0):
            raise ValueError("all radii must be positive")
        centers.setflags(write=False)
        radii.setflags(write=False)
        object.__setattr__(self, "centers", centers)
        object.__setattr__(self, "radii", radii)

    @classmethod
    def from_disks(cls, disks, provenance=None):
        disks = list(disks)
        for i, d in enumerate(disks):
            if d.id != i:
                raise ValueError("disk ids must be 0..n-1 in order")
        centers = np.array([(d.cx, d.cy) for d in disks], dtype=float).reshape(-1, 2)
        radii = np.array([d.r for d in disks], dtype=float)
        return cls(centers, radii, dict(provenance or {}))

    @property
    def n(self):
        return self.radii.shape[0]

    def __len__(self):
        return self.n

    @property
    def disks(self):
        return [Disk(i, float(x), float(y), float(r))
                for i, ((x, y), r) in enumerate(zip(self.centers, self.radii))]

    @property
    def x(self):
        return self.centers[:, 0]

    @property
    def y(self):
        return self.centers[:, 1]

    def radius_ratio(self):
        """Largest over smallest radius (1 for an empty instance)."""
        if self.n == 0:
            return 1.0
        return float(self.radii.max() / self.radii.min())

    def transformed(self, rotation=0.0, shift=(0.0, 0.0)):
        """Rotate about the origin, then translate.  Radii are unchanged."""
        c, s = math.cos(rotation), math.sin(rotation)
        x = c * self.x - s * self.y + shift[0]
        y = s * self.x + c * self.y + shift[1]
        return Instance(np.column_stack([x, y]), self.radii.copy(),
                        dict(self.provenance, transformed=[rotation, list(shift)]))


def signed_distance(line, disk):
    """Signed distance from ``line`` to the center of ``disk``."""
    _check_finite(disk.cx, disk.cy, disk.r)
    return line.project(disk.cx, disk.cy) - line.c


def side_of(line, disk):
    # Comparisons are written as projection +- r against c so that the
    # per-slope sweep (which sorts the same sums) agrees with this bit for bit.
    p = line.project(disk.cx, disk.cy)
    if p + disk.r < line.c:
        return SideClass.LEFT
    if p - disk.r > line.c:
        return SideClass.RIGHT
    return SideClass.CROSSED


def side_masks(line, instance):
    """Boolean masks ``(left, right)`` over the disks of ``instance``."""
    p = line.project(instance.x, instance.y)
    left = p + instance.radii < line.c
    right = p - instance.radii > line.c
    return left, right


def classify_all(line, instance):
    """Return ``(crossed_indices, n_left, n_right)`` for every disk."""
    left, right = side_masks(line, instance)
    crossed = np.flatnonzero(~(left | right))
    return crossed, int(left.sum()), int(right.sum())
