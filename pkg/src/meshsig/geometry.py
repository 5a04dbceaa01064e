"""Planar primitives: meshes, group motions, orientation and angle predicates.

All indices are 0-based. Closed meshes wrap neighbor indices mod n; open
meshes restrict every operation to indices where the needed neighborhood
exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import (
    CollinearPoints,
    DegenerateArm,
    IndexOutOfRange,
    InvalidGroupElement,
    InvalidMesh,
    OutOfDomain,
)

# Degeneracy scale: a triple counts as collinear when the 2d cross product of
# its arms is at most COLLINEARITY_REL_TOL * diameter**2.
COLLINEARITY_REL_TOL = 1e-9
# Half-width of the "right angle" classification band, radians.
RIGHT_ANGLE_TOL = 1e-7
# Relative spread tolerated by the equal-spacing predicate.
SPACING_REL_TOL = 1e-6
# Group-membership tolerance for motion matrices.
GROUP_TOL = 1e-12


class Point2(NamedTuple):
    x: float
    y: float


class Group(Enum):
    """Transformation groups acting on the plane."""

    SE = "se"      # rotations + translations
    E = "e"        # SE plus reflections
    SA = "sa"      # unimodular (det = +1) linear maps + translations
    ABAR = "abar"  # SA plus orientation-reversing (det = -1) maps

    @classmethod
    def from_string(cls, name: str) -> "Group":
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"unknown group {name!r}; expected se, e, sa or abar") from None


class AngleType(Enum):
    ACUTE = "acute"
    RIGHT = "right"
    OBTUSE = "obtuse"


class SigDirection(Enum):
    SD = "sd"
    NOT_SD = "not-sd"
    UNDEFINED = "undefined"


class SignedAngleType(NamedTuple):
    sign: int
    kind: AngleType


@dataclass(frozen=True)
class NeighborhoodSpec:
    """Stencil (m1, m2): the triple p[i-m1], p[i], p[i+m2]."""

    m1: int = 1
    m2: int = 1

    def __post_init__(self) -> None:
        if self.m1 < 1 or self.m2 < 1:
            raise ValueError("neighborhood offsets must be >= 1")


SPEC11 = NeighborhoodSpec(1, 1)


def cross2(u: np.ndarray, v: np.ndarray) -> float:
    """z-component of the 2d cross product u x v."""
    return float(u[0] * v[1] - u[1] * v[0])


def orient(p: np.ndarray, q: np.ndarray, r: np.ndarray) -> float:
    """Twice the signed area of triangle (p, q, r); positive for ccw."""
    return cross2(np.asarray(q, float) - p, np.asarray(r, float) - p)


def _as_points(points) -> np.ndarray:
    arr = np.asarray(points, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InvalidMesh(f"expected an (n, 2) point array, got shape {arr.shape}")
    return arr


def _pointset_diameter(pts: np.ndarray) -> float:
    n = len(pts)
    if n <= 2048:
        diff = pts[:, None, :] - pts[None, :, :]
        return float(np.sqrt((diff ** 2).sum(axis=2)).max())
    # large meshes: the diameter is attained on the convex hull
    hull = _convex_hull(pts)
    diff = hull[:, None, :] - hull[None, :, :]
    return float(np.sqrt((diff ** 2).sum(axis=2)).max())


def _convex_hull(pts: np.ndarray) -> np.ndarray:
    # Andrew's monotone chain
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    sorted_pts = pts[order]

    def half(points):
        chain: list[np.ndarray] = []
        for p in points:
            while len(chain) >= 2 and orient(chain[-2], chain[-1], p) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = half(sorted_pts)
    upper = half(sorted_pts[::-1])
    return np.array(lower[:-1] + upper[:-1])


class Mesh:
    """Ordered planar point sequence with an open/closed flag.

    Construction rejects non-finite coordinates, fewer than three points and
    successive duplicates (closer than ``COLLINEARITY_REL_TOL * diameter``,
    including the wrap edge of closed meshes). Cusps are permitted at
    construction and reported by :func:`is_ordinary`.
    """

    __slots__ = ("_points", "closed", "label", "_diameter", "_conic_cache")

    def __init__(self, points, closed: bool = False, label: str = ""):
        pts = _as_points(points)
        if len(pts) < 3:
            raise InvalidMesh(f"mesh needs at least 3 points, got {len(pts)}")
        if not np.isfinite(pts).all():
            bad = int(np.argwhere(~np.isfinite(pts).all(axis=1))[0][0])
            raise InvalidMesh(f"non-finite coordinates at point {bad}")
        diameter = _pointset_diameter(pts)
        if diameter == 0.0:
            raise InvalidMesh("all points coincide")
        edges = np.linalg.norm(np.diff(pts, axis=0), axis=1)
        if closed:
            edges = np.append(edges, np.linalg.norm(pts[0] - pts[-1]))
        too_close = np.nonzero(edges <= COLLINEARITY_REL_TOL * diameter)[0]
        if len(too_close):
            i = int(too_close[0])
            raise InvalidMesh(f"successive points {i} and {(i + 1) % len(pts)} coincide")
        pts.setflags(write=False)
        self._points = pts
        self.closed = bool(closed)
        self.label = label
        self._diameter = diameter
        self._conic_cache: dict[int, object] = {}

    @property
    def points(self) -> np.ndarray:
        return self._points

    @property
    def n(self) -> int:
        return len(self._points)

    @property
    def diameter(self) -> float:
        return self._diameter

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        kind = "closed" if self.closed else "open"
        tag = f" {self.label!r}" if self.label else ""
        return f"<Mesh{tag} {kind} n={self.n}>"

    def resolve(self, i: int, offset: int = 0) -> int:
        """Index of the point `offset` steps away from i, wrapping when closed."""
        j = i + offset
        if self.closed:
            return j % self.n
        if 0 <= j < self.n:
            return j
        raise IndexOutOfRange(f"index {j} outside open mesh of {self.n} points")

    def p(self, i: int, offset: int = 0) -> np.ndarray:
        return self._points[self.resolve(i, offset)]

    def point(self, i: int) -> Point2:
        x, y = self._points[self.resolve(i)]
        return Point2(float(x), float(y))

    def interior(self, m1: int = 1, m2: int = 1) -> range:
        """Center indices whose (m1, m2)-neighborhood exists."""
        if self.closed:
            return range(self.n)
        return range(m1, self.n - m2)

    def with_points(self, points, label: str | None = None) -> "Mesh":
        return Mesh(points, closed=self.closed, label=self.label if label is None else label)


def edge_lengths(mesh: Mesh) -> np.ndarray:
    """Consecutive edge lengths, including the wrap edge of a closed mesh."""
    pts = mesh.points
    edges = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    if mesh.closed:
        edges = np.append(edges, np.linalg.norm(pts[0] - pts[-1]))
    return edges


class GroupElement:
    """A planar motion: x -> linear @ x + translation, tagged with its group.

    The linear part is validated against the group invariant on construction
    (orthogonality for SE/E, unit |determinant| for SA/ABAR, within
    ``GROUP_TOL``).
    """

    __slots__ = ("linear", "translation", "group")

    def __init__(self, linear, translation, group: Group):
        lin = np.asarray(linear, dtype=float).reshape(2, 2).copy()
        tr = np.asarray(translation, dtype=float).reshape(2).copy()
        self.linear = lin
        self.translation = tr
        self.group = group
        self.check()
        lin.setflags(write=False)
        tr.setflags(write=False)

    def check(self) -> None:
        lin = self.linear
        if not (np.isfinite(lin).all() and np.isfinite(self.translation).all()):
            raise InvalidGroupElement("non-finite motion entries")
        det = float(np.linalg.det(lin))
        if self.group in (Group.SE, Group.E):
            ortho = np.abs(lin.T @ lin - np.eye(2)).max()
            if ortho > GROUP_TOL:
                raise InvalidGroupElement(f"linear part not orthogonal (defect {ortho:.3e})")
            if self.group is Group.SE and abs(det - 1.0) > GROUP_TOL:
                raise InvalidGroupElement(f"SE element must have det +1, got {det!r}")
            if self.group is Group.E and abs(abs(det) - 1.0) > GROUP_TOL:
                raise InvalidGroupElement(f"E element must have det +-1, got {det!r}")
        elif self.group is Group.SA:
            if abs(det - 1.0) > GROUP_TOL:
                raise InvalidGroupElement(f"SA element must have det +1, got {det!r}")
        else:
            if abs(abs(det) - 1.0) > GROUP_TOL:
                raise InvalidGroupElement(f"Abar element must have det +-1, got {det!r}")

    @classmethod
    def identity(cls, group: Group = Group.SE) -> "GroupElement":
        return cls(np.eye(2), np.zeros(2), group)

    @classmethod
    def rotation(cls, theta: float, translation=(0.0, 0.0), group: Group = Group.SE) -> "GroupElement":
        c, s = np.cos(theta), np.sin(theta)
        return cls([[c, -s], [s, c]], translation, group)

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.linear))

    def apply(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        return pts @ self.linear.T + self.translation

    def inverse(self) -> "GroupElement":
        if self.group in (Group.SE, Group.E):
            inv = self.linear.T
        else:
            a, b = self.linear[0]
            c, d = self.linear[1]
            inv = np.array([[d, -b], [-c, a]]) / self.det
        return GroupElement(inv, -inv @ self.translation, self.group)

    def __repr__(self) -> str:
        return f"GroupElement({self.linear.tolist()}, {self.translation.tolist()}, {self.group})"


def apply_motion(g: GroupElement, mesh: Mesh) -> Mesh:
    """Pointwise image of the mesh under g, preserving order and closedness."""
    g.check()
    return Mesh(g.apply(mesh.points), closed=mesh.closed, label=mesh.label)


def random_motion(group: Group, seed) -> GroupElement:
    """Deterministic random element of the group.

    Rotation angles are uniform on [0, 2pi), translations uniform in
    [-10, 10]^2; unimodular parts use a bounded shear/scale decomposition
    (condition number <= ~10).
    """
    rng = np.random.default_rng(seed)
    theta = rng.uniform(0.0, 2.0 * np.pi)
    c, s = np.cos(theta), np.sin(theta)
    rot = np.array([[c, -s], [s, c]])
    translation = rng.uniform(-10.0, 10.0, size=2)
    if group is Group.SE:
        linear = rot
    elif group is Group.E:
        linear = rot.copy()
        if rng.integers(0, 2):
            linear = linear @ np.diag([1.0, -1.0])
    elif group in (Group.SA, Group.ABAR):
        phi = rng.uniform(0.0, 2.0 * np.pi)
        c2, s2 = np.cos(phi), np.sin(phi)
        rot2 = np.array([[c2, -s2], [s2, c2]])
        scale = np.exp(rng.uniform(-1.15, 1.15))
        linear = rot @ np.diag([scale, 1.0 / scale]) @ rot2
        # renormalize rounding drift so det is unimodular to machine precision
        linear /= np.sqrt(abs(np.linalg.det(linear)))
        if group is Group.ABAR and rng.integers(0, 2):
            linear = linear @ np.diag([1.0, -1.0])
    else:
        raise ValueError(f"unknown group {group!r}")
    return GroupElement(linear, translation, group)


def _triple(mesh: Mesh, i: int, spec: NeighborhoodSpec):
    return mesh.p(i, -spec.m1), mesh.p(i), mesh.p(i, spec.m2)


def signature_sign(mesh: Mesh, i: int, spec: NeighborhoodSpec = SPEC11) -> int:
    """Sign of (p[i+m2]-p[i]) x (p[i-m1]-p[i]); 0 when collinear.

    +1 means the triple (p[i-m1], p[i], p[i+m2]) is in counterclockwise
    order. The collinearity band scales with the squared mesh diameter.
    """
    prev_pt, mid, nxt = _triple(mesh, i, spec)
    c = cross2(nxt - mid, prev_pt - mid)
    if abs(c) <= COLLINEARITY_REL_TOL * mesh.diameter ** 2:
        return 0
    return 1 if c > 0 else -1


def signature_direction(mesh: Mesh, i: int, spec: NeighborhoodSpec = SPEC11) -> SigDirection:
    """Counterclockwise (SD) / clockwise (NotSD) orientation of the triple."""
    ss = signature_sign(mesh, i, spec)
    if ss > 0:
        return SigDirection.SD
    if ss < 0:
        return SigDirection.NOT_SD
    return SigDirection.UNDEFINED


def angle(mesh: Mesh, i: int, spec: NeighborhoodSpec = SPEC11) -> float:
    """Unsigned vertex angle at p[i] between the arms of its (m1, m2)-triple."""
    prev_pt, mid, nxt = _triple(mesh, i, spec)
    u = prev_pt - mid
    v = nxt - mid
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise DegenerateArm(f"zero-length angle arm at index {i}")
    return float(np.arctan2(abs(cross2(u, v)), float(u @ v)))


def signed_angle(mesh: Mesh, i: int, spec: NeighborhoodSpec = SPEC11) -> float:
    """Signature-sign times the unsigned angle, on the same (m1, m2)-triple."""
    return signature_sign(mesh, i, spec) * angle(mesh, i, spec)


def angle_type(theta: float, tol: float = RIGHT_ANGLE_TOL) -> AngleType:
    """Classify an angle in (0, pi) as acute, right or obtuse.

    Right means within ``tol`` radians of pi/2.
    """
    if not 0.0 < theta < np.pi:
        raise OutOfDomain(f"angle {theta!r} outside (0, pi)")
    half = np.pi / 2.0
    if abs(theta - half) <= tol:
        return AngleType.RIGHT
    return AngleType.ACUTE if theta < half else AngleType.OBTUSE


def signed_angle_type(
    mesh: Mesh, i: int, spec: NeighborhoodSpec = SPEC11, tol: float = RIGHT_ANGLE_TOL
) -> SignedAngleType:
    """Classification of |signed angle| with the signature sign kept as a flag."""
    ss = signature_sign(mesh, i, spec)
    theta = angle(mesh, i, spec)
    if ss == 0:
        raise OutOfDomain(f"signed angle undefined on collinear triple at index {i}")
    return SignedAngleType(ss, angle_type(theta, tol))


def is_equally_spaced(mesh: Mesh, rel_tol: float = SPACING_REL_TOL) -> bool:
    """True when all edges (wrap edge included for closed meshes) agree."""
    edges = edge_lengths(mesh)
    return float(edges.max() - edges.min()) <= rel_tol * float(edges.max())


def is_ordinary(mesh: Mesh) -> bool:
    """True when the mesh has no cusp (p[i+1] never returns onto p[i-1])."""
    tol = COLLINEARITY_REL_TOL * mesh.diameter
    for i in mesh.interior():
        if np.linalg.norm(mesh.p(i, 1) - mesh.p(i, -1)) <= tol:
            return False
    return True


def is_convex(mesh: Mesh) -> bool:
    """Consistent nonzero turning at every interior point.

    Closed meshes must additionally wind exactly once (total turning
    +-2pi), which rules out multiply-wound star traversals.
    """
    signs = [signature_sign(mesh, i) for i in mesh.interior()]
    if any(s == 0 for s in signs):
        return False
    if len(set(signs)) > 1:
        return False
    if mesh.closed:
        turning = sum(s * (np.pi - angle(mesh, i)) for i, s in zip(mesh.interior(), signs))
        if abs(abs(turning) - 2.0 * np.pi) > 1e-6:
            return False
    return True


def is_fine(mesh: Mesh, tol: float = RIGHT_ANGLE_TOL) -> bool:
    """True when every interior vertex angle is obtuse."""
    for i in mesh.interior():
        try:
            if angle_type(angle(mesh, i), tol) is not AngleType.OBTUSE:
                return False
        except OutOfDomain:  # straight angle: not obtuse
            return False
    return True


def circumcircle(p, q, r) -> tuple[Point2, float]:
    """Center and radius of the unique circle through three points.

    Perpendicular-bisector intersection, solved in coordinates relative to p
    for stability. Raises CollinearPoints when the triple is degenerate.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    r = np.asarray(r, dtype=float)
    u = q - p
    v = r - p
    scale = max(np.linalg.norm(u), np.linalg.norm(v), np.linalg.norm(r - q))
    d = 2.0 * cross2(u, v)
    if abs(d) <= COLLINEARITY_REL_TOL * scale ** 2 * 2.0:
        raise CollinearPoints("circumcircle of a collinear triple")
    uu = float(u @ u)
    vv = float(v @ v)
    cx = (v[1] * uu - u[1] * vv) / d
    cy = (u[0] * vv - v[0] * uu) / d
    center = p + np.array([cx, cy])
    radius = float(
        np.mean([np.linalg.norm(center - p), np.linalg.norm(center - q), np.linalg.norm(center - r)])
    )
    return Point2(float(center[0]), float(center[1])), radius
