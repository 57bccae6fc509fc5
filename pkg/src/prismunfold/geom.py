"""Tolerance-aware planar and spatial primitives.

All predicates take plain sequences (tuples, lists or numpy rows) and run on
doubles. Tolerances are relative: they are multiplied by the largest
coordinate magnitude of the inputs, so callers are expected to normalise
instances to roughly unit size (the generators scale the base into
``[-1, 1]^2``).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .exceptions import DegenerateEdge, LengthMismatch, NotConvex, ZeroLengthEdge

Point2 = Sequence[float]
Point3 = Sequence[float]


@dataclass(frozen=True)
class Tolerances:
    """Central tolerance policy.

    eps_geom is the relative band used by predicates, eps_verify the slack
    granted to overlap/containment verification and eps_angle the radian
    threshold for parallelism and coplanarity.
    """

    eps_geom: float = 1e-9
    eps_verify: float = 1e-7
    eps_angle: float = 1e-9

    def __post_init__(self):
        for name in ("eps_geom", "eps_verify", "eps_angle"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"{name} must be strictly positive, got {value!r}")
        if self.eps_geom > self.eps_verify:
            raise ValueError("eps_geom must not exceed eps_verify")


DEFAULT_TOL = Tolerances()


class Orientation(enum.Enum):
    LEFT = 1
    RIGHT = -1
    COLLINEAR = 0


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"

    def flipped(self) -> "Side":
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


class Location(enum.Enum):
    INSIDE = "strictly_inside"
    BOUNDARY = "on_boundary"
    OUTSIDE = "outside"


def _scale(*points) -> float:
    return max(max(abs(float(c)) for c in p) for p in points)


def cross2(o: Point2, a: Point2, b: Point2) -> float:
    """Twice the signed area of triangle (o, a, b)."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def orientation(p: Point2, q: Point2, r: Point2, tol: Tolerances = DEFAULT_TOL) -> Orientation:
    det = cross2(p, q, r)
    s = _scale(p, q, r)
    if abs(det) <= tol.eps_geom * s * s:
        return Orientation.COLLINEAR
    return Orientation.LEFT if det > 0 else Orientation.RIGHT


def turn_angle_2d(prev: Point2, v: Point2, nxt: Point2, tol: Tolerances = DEFAULT_TOL) -> float:
    """Signed turn (exterior) angle at ``v`` when walking prev -> v -> nxt.

    Positive for a left turn. For a vertex of a convex CCW polygon this is
    pi minus the interior angle, i.e. the angle spanned by the outward
    normals of the two incident edges.
    """
    ax, ay = v[0] - prev[0], v[1] - prev[1]
    bx, by = nxt[0] - v[0], nxt[1] - v[1]
    lim = tol.eps_geom * _scale(prev, v, nxt)
    if math.hypot(ax, ay) <= lim or math.hypot(bx, by) <= lim:
        raise ZeroLengthEdge(f"zero-length edge at {tuple(v)}")
    return math.atan2(ax * by - ay * bx, ax * bx + ay * by)


def face_angle_3d(apex: Point3, a: Point3, b: Point3, tol: Tolerances = DEFAULT_TOL) -> float:
    """Unsigned angle in [0, pi] between the rays apex->a and apex->b."""
    u = np.subtract(a, apex, dtype=float)
    w = np.subtract(b, apex, dtype=float)
    nu, nw = np.linalg.norm(u), np.linalg.norm(w)
    lim = tol.eps_geom * _scale(apex, a, b)
    if nu <= lim or nw <= lim:
        raise ZeroLengthEdge(f"zero-length edge at apex {tuple(apex)}")
    # atan2 of |cross| and dot is accurate near 0 and pi, unlike acos
    return math.atan2(float(np.linalg.norm(np.cross(u, w))), float(np.dot(u, w)))


@dataclass(frozen=True)
class RigidMotion2:
    """p -> R(angle) @ F(p) + translation, F mirroring y when ``reflect``."""

    angle: float = 0.0
    translation: Tuple[float, float] = (0.0, 0.0)
    reflect: bool = False

    def matrix(self) -> np.ndarray:
        c, s = math.cos(self.angle), math.sin(self.angle)
        rot = np.array([[c, -s], [s, c]])
        if self.reflect:
            rot = rot @ np.diag([1.0, -1.0])
        return rot

    def apply(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        return pts @ self.matrix().T + np.asarray(self.translation)

    @property
    def is_identity(self) -> bool:
        return (not self.reflect and math.isclose(math.remainder(self.angle, 2 * math.pi), 0.0, abs_tol=1e-15)
                and self.translation == (0.0, 0.0))


def hinge_transform(src, dst, witness: Point2, side: Side,
                    tol: Tolerances = DEFAULT_TOL) -> RigidMotion2:
    """Rigid motion carrying segment ``src`` onto ``dst`` endpoint-by-endpoint.

    Of the two candidate motions (with and without a mirror) the one that
    puts the image of ``witness`` on ``side`` of the directed segment
    ``dst`` is returned.
    """
    (a, b), (c, d) = src, dst
    ls = math.hypot(b[0] - a[0], b[1] - a[1])
    ld = math.hypot(d[0] - c[0], d[1] - c[1])
    lim = tol.eps_geom * _scale(a, b, c, d)
    if ls <= lim or ld <= lim:
        raise DegenerateEdge("hinge edge has zero length")
    if abs(ls - ld) > tol.eps_geom * max(ls, ld):
        raise LengthMismatch(f"hinge lengths differ: {ls!r} vs {ld!r}")
    w_side = cross2(a, b, witness)
    if abs(w_side) <= tol.eps_geom * ls * max(ls, math.dist(a, witness)):
        raise DegenerateEdge("witness lies on the hinge line")
    # A proper motion keeps the witness on its current side of the edge.
    reflect = (w_side > 0) != (side is Side.LEFT)
    ay = -a[1] if reflect else a[1]
    by = -b[1] if reflect else b[1]
    angle = math.atan2(d[1] - c[1], d[0] - c[0]) - math.atan2(by - ay, b[0] - a[0])
    cs, sn = math.cos(angle), math.sin(angle)
    tx = c[0] - (cs * a[0] - sn * ay)
    ty = c[1] - (sn * a[0] + cs * ay)
    return RigidMotion2(angle=angle, translation=(tx, ty), reflect=reflect)


def segments_properly_intersect(s1, s2, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True iff the open segments share a point.

    Crossing interiors count, as does a collinear overlap longer than the
    verification slack. Contact at endpoints does not.
    """
    (a, b), (c, d) = s1, s2
    o1, o2 = orientation(a, b, c, tol), orientation(a, b, d, tol)
    o3, o4 = orientation(c, d, a, tol), orientation(c, d, b, tol)
    C = Orientation.COLLINEAR
    if C not in (o1, o2, o3, o4):
        return o1 != o2 and o3 != o4
    if o1 is C and o2 is C:
        ux, uy = b[0] - a[0], b[1] - a[1]
        n = math.hypot(ux, uy)
        t = sorted(((x[0] - a[0]) * ux + (x[1] - a[1]) * uy) / n for x in (c, d))
        overlap = min(n, t[1]) - max(0.0, t[0])
        return overlap > tol.eps_verify * _scale(a, b, c, d)
    return False


def _as_polygon(P) -> np.ndarray:
    arr = np.asarray(P, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2 or len(arr) < 3:
        raise NotConvex("polygon needs at least three 2D vertices")
    return arr


def _edge_normals(arr: np.ndarray) -> np.ndarray:
    e = np.roll(arr, -1, axis=0) - arr
    n = np.column_stack([e[:, 1], -e[:, 0]])
    length = np.linalg.norm(n, axis=1)
    return n[length > 0] / length[length > 0, None]


def _check_convex(arr: np.ndarray, tol: Tolerances) -> None:
    e = np.roll(arr, -1, axis=0) - arr
    cr = e[:, 0] * np.roll(e[:, 1], -1) - e[:, 1] * np.roll(e[:, 0], -1)
    s = float(np.abs(arr).max())
    if (cr < -tol.eps_geom * s * s).any():
        raise NotConvex("polygon is not convex and counterclockwise")


def penetration_depth(P, Q) -> float:
    """Separating-axis penetration depth of two convex polygons.

    Non-positive when the polygons are disjoint or only touch.
    """
    A, B = np.asarray(P, dtype=float), np.asarray(Q, dtype=float)
    axes = np.vstack([_edge_normals(A), _edge_normals(B)])
    pa, pb = A @ axes.T, B @ axes.T
    overlap = np.minimum(pa.max(0), pb.max(0)) - np.maximum(pa.min(0), pb.min(0))
    return float(overlap.min())


def convex_overlap(P, Q, tol: Tolerances = DEFAULT_TOL, check: bool = True) -> bool:
    """True iff the open interiors of two convex CCW polygons overlap.

    The overlap must exceed ``eps_verify`` times the coordinate scale;
    polygons sharing only an edge or a vertex do not overlap.
    """
    A, B = _as_polygon(P), _as_polygon(Q)
    if check:
        _check_convex(A, tol)
        _check_convex(B, tol)
    s = max(float(np.abs(A).max()), float(np.abs(B).max()), 1.0)
    return penetration_depth(A, B) > tol.eps_verify * s


def point_in_convex(p: Point2, P, tol: Tolerances = DEFAULT_TOL) -> Location:
    arr = _as_polygon(P)
    _check_convex(arr, tol)
    s = max(float(np.abs(arr).max()), abs(p[0]), abs(p[1]))
    band = tol.eps_geom * s
    on_edge = False
    n = len(arr)
    for k in range(n):
        a, b = arr[k], arr[(k + 1) % n]
        d = cross2(a, b, p) / math.hypot(b[0] - a[0], b[1] - a[1])
        if d < -band:
            return Location.OUTSIDE
        if d <= band:
            on_edge = True
    return Location.BOUNDARY if on_edge else Location.INSIDE


def signed_area(P) -> float:
    arr = np.asarray(P, dtype=float)
    x, y = arr[:, 0], arr[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def line_intersection(p, d, q, e, tol: Tolerances = DEFAULT_TOL):
    """Intersection of lines p + s d and q + t e, or None when parallel."""
    den = d[0] * e[1] - d[1] * e[0]
    if abs(den) <= tol.eps_angle * math.hypot(*d) * math.hypot(*e):
        return None
    s = ((q[0] - p[0]) * e[1] - (q[1] - p[1]) * e[0]) / den
    return (p[0] + s * d[0], p[1] + s * d[1])
