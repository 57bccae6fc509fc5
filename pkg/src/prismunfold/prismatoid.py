"""Nested prismatoid instances and their lateral band.

The base polygon lives in the plane z = 0, the top polygon in z = height.
Both are stored as 2D CCW vertex lists; 3D points are produced on demand.
Vertices are labelled ``"w<j>"`` (base) and ``"v<i>"`` (top).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import List, Sequence, Tuple

import numpy as np

from .exceptions import DegenerateHull, NonPositiveHeight, NotCCW, NotConvex, NotNested
from .geom import (DEFAULT_TOL, Location, Orientation, Tolerances, face_angle_3d,
                   orientation, point_in_convex, signed_area, turn_angle_2d)


@dataclass(frozen=True)
class ConvexPolygon2:
    vertices: Tuple[Tuple[float, float], ...]

    def __len__(self):
        return len(self.vertices)

    def __getitem__(self, j):
        return self.vertices[j % len(self.vertices)]

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.vertices, dtype=float)
        arr.setflags(write=False)
        return arr

    def edge(self, j: int) -> Tuple[Tuple[float, float], Tuple[float, float]]:
        return self[j], self[j + 1]

    def area(self) -> float:
        return signed_area(self.vertices)


def make_polygon(points, tol: Tolerances = DEFAULT_TOL, name: str = "polygon") -> ConvexPolygon2:
    """Check strict convexity and CCW order, returning an immutable polygon."""
    pts = [(float(x), float(y)) for x, y in points]
    n = len(pts)
    if n < 3:
        raise NotConvex(f"{name} needs at least 3 vertices, got {n}")
    if not all(math.isfinite(c) for p in pts for c in p):
        raise NotConvex(f"{name} has non-finite coordinates")
    turns = [orientation(pts[j - 1], pts[j], pts[(j + 1) % n], tol) for j in range(n)]
    if all(t is Orientation.RIGHT for t in turns):
        raise NotCCW(f"{name} is clockwise")
    if not all(t is Orientation.LEFT for t in turns):
        bad = next(j for j, t in enumerate(turns) if t is not Orientation.LEFT)
        raise NotConvex(f"{name} is not strictly convex at vertex {bad}")
    winding = sum(turn_angle_2d(pts[j - 1], pts[j], pts[(j + 1) % n], tol) for j in range(n))
    if abs(winding - 2 * math.pi) > 1e-6:
        raise NotConvex(f"{name} winds {winding / (2 * math.pi):.3f} times")
    return ConvexPolygon2(tuple(pts))


@dataclass(frozen=True)
class Prismatoid:
    base: ConvexPolygon2
    top: ConvexPolygon2
    height: float

    @property
    def n_base(self) -> int:
        return len(self.base)

    @property
    def n_top(self) -> int:
        return len(self.top)

    def point3(self, label: str) -> np.ndarray:
        kind, idx = parse_label(label)
        if kind == "w":
            x, y = self.base[idx]
            return np.array([x, y, 0.0])
        x, y = self.top[idx]
        return np.array([x, y, self.height])

    def point2(self, label: str) -> Tuple[float, float]:
        kind, idx = parse_label(label)
        return self.base[idx] if kind == "w" else self.top[idx]

    @property
    def scale(self) -> float:
        return max(float(np.abs(self.base.array).max()), float(np.abs(self.top.array).max()),
                   self.height)


def w(j: int) -> str:
    return f"w{j}"


def v(i: int) -> str:
    return f"v{i}"


def parse_label(label: str) -> Tuple[str, int]:
    kind, idx = label[0], int(label[1:])
    if kind not in "wv":
        raise ValueError(f"bad vertex label {label!r}")
    return kind, idx


def validate(base, top, height, tol: Tolerances = DEFAULT_TOL) -> Prismatoid:
    """Build a :class:`Prismatoid`, enforcing convexity, CCW order and nesting."""
    B = base if isinstance(base, ConvexPolygon2) else make_polygon(base, tol, "base")
    A = top if isinstance(top, ConvexPolygon2) else make_polygon(top, tol, "top")
    height = float(height)
    if not (math.isfinite(height) and height > 0):
        raise NonPositiveHeight(f"height must be positive, got {height!r}")
    for i, p in enumerate(A.vertices):
        where = point_in_convex(p, B.vertices, tol)
        if where is not Location.INSIDE:
            raise NotNested(f"top vertex v{i}={p} is {where.value} the base")
    return Prismatoid(B, A, height)


class FacetKind(enum.Enum):
    TRIANGLE = "triangle"
    QUAD = "quad"


@dataclass(frozen=True)
class LateralFacet:
    kind: FacetKind
    base_indices: Tuple[int, ...]
    top_indices: Tuple[int, ...]

    @property
    def start_edge(self) -> Tuple[int, int]:
        """Lateral edge (base index, top index) where the facet begins, CCW."""
        return self.base_indices[0], self.top_indices[0]

    @property
    def end_edge(self) -> Tuple[int, int]:
        return self.base_indices[-1], self.top_indices[-1]

    @property
    def base_edge(self):
        return self.base_indices if len(self.base_indices) == 2 else None

    @property
    def top_edge(self):
        return self.top_indices if len(self.top_indices) == 2 else None

    def labels(self) -> List[str]:
        """Vertex labels, counterclockwise as seen from inside the solid."""
        return [v(i) for i in self.top_indices] + [w(j) for j in reversed(self.base_indices)]


@dataclass(frozen=True)
class Band:
    facets: Tuple[LateralFacet, ...]

    def __len__(self):
        return len(self.facets)

    def __iter__(self):
        return iter(self.facets)

    def __getitem__(self, f):
        return self.facets[f % len(self.facets)]

    def lateral_edges(self) -> List[Tuple[int, int]]:
        """Lateral edge k sits between facets k-1 and k (cyclically)."""
        return [f.start_edge for f in self.facets]

    def lateral_edge_index(self, edge: Tuple[int, int]) -> int:
        try:
            return self.lateral_edges().index(tuple(edge))
        except ValueError:
            return -1

    def facet_with_base_edge(self, j: int, n_base: int) -> int:
        target = (j % n_base, (j + 1) % n_base)
        for f, facet in enumerate(self.facets):
            if facet.base_edge == target:
                return f
        raise KeyError(f"no facet holds base edge {target}")

    def facet_with_top_edge(self, i: int, n_top: int) -> int:
        target = (i % n_top, (i + 1) % n_top)
        for f, facet in enumerate(self.facets):
            if facet.top_edge == target:
                return f
        raise KeyError(f"no facet holds top edge {target}")

    def partner(self, j: int) -> int:
        """Top index joined to base vertex ``j`` (prismoid bands only)."""
        tops = {t for b, t in self.lateral_edges() if b == j}
        if len(tops) != 1:
            raise ValueError(f"base vertex w{j} has {len(tops)} lateral edges")
        return tops.pop()


def _parallel(d1, d2, tol: Tolerances) -> bool:
    n1, n2 = math.hypot(*d1), math.hypot(*d2)
    cr = d1[0] * d2[1] - d1[1] * d2[0]
    dot = d1[0] * d2[0] + d1[1] * d2[1]
    return dot > 0 and abs(cr) <= tol.eps_angle * n1 * n2


def compute_band(P: Prismatoid, tol: Tolerances = DEFAULT_TOL) -> Band:
    """Lateral facets of conv(top ∪ base) by gift wrapping around the band.

    The wrap starts on base edge (w0, w1) and pivots about the current
    lateral edge (w_a, v_b). The next facet swallows either the base edge
    at w_a or the top edge at v_b, whichever plane leaves the other
    candidate vertex inside; the signed volume of (w_a, w_a+1, v_b, v_b+1)
    is h times the cross product of the two edge directions, so the test
    reduces to comparing edge directions. Coplanar candidates form a Quad.
    """
    B, A = P.base, P.top
    nb, nt = len(B), len(A)
    d0 = np.subtract(B[1], B[0])
    normal = (d0[1], -d0[0])
    b = int(np.argmax(A.array @ np.array(normal)))
    if _parallel(np.subtract(A[b], A[b - 1]), d0, tol):
        b = (b - 1) % nt
    a = 0
    facets: List[LateralFacet] = []
    used_b = used_t = 0
    while used_b < nb or used_t < nt:
        if len(facets) > nb + nt:
            raise DegenerateHull("band pivot did not close")
        db = np.subtract(B[a + 1], B[a])
        dt = np.subtract(A[b + 1], A[b])
        if used_b < nb and used_t < nt and _parallel(db, dt, tol):
            kind = "quad"
        elif used_t >= nt:
            kind = "base"
        elif used_b >= nb:
            kind = "top"
        else:
            kind = "base" if db[0] * dt[1] - db[1] * dt[0] > 0 else "top"
        a1, b1 = (a + 1) % nb, (b + 1) % nt
        if kind == "quad":
            facets.append(LateralFacet(FacetKind.QUAD, (a, a1), (b, b1)))
            a, b, used_b, used_t = a1, b1, used_b + 1, used_t + 1
        elif kind == "base":
            facets.append(LateralFacet(FacetKind.TRIANGLE, (a, a1), (b,)))
            a, used_b = a1, used_b + 1
        else:
            facets.append(LateralFacet(FacetKind.TRIANGLE, (a,), (b, b1)))
            b, used_t = b1, used_t + 1
    if facets[0].start_edge != facets[-1].end_edge:
        raise DegenerateHull("band pivot ended on a different lateral edge")
    return Band(tuple(facets))


def is_prismoid(band: Band) -> bool:
    return all(f.kind is FacetKind.QUAD for f in band)


def facet_labels(P: Prismatoid, band: Band, facet_id: str) -> List[str]:
    """Vertex labels of a facet, CCW as seen from inside the solid.

    ``facet_id`` is ``"B"`` (base), ``"A"`` (top) or ``"L<f>"`` for band
    facet ``f``. With this orientation every facet of an unfolding lands
    counterclockwise while the base keeps its input coordinates.
    """
    if facet_id == "B":
        return [w(j) for j in range(P.n_base)]
    if facet_id == "A":
        return [v(0)] + [v(i) for i in range(P.n_top - 1, 0, -1)]
    return band[int(facet_id[1:])].labels()


def facet_points3(P: Prismatoid, band: Band, facet_id: str) -> np.ndarray:
    return np.array([P.point3(lab) for lab in facet_labels(P, band, facet_id)])


def all_facet_ids(band: Band) -> List[str]:
    return ["B"] + [f"L{f}" for f in range(len(band))] + ["A"]


def vertex_curvature(poly: ConvexPolygon2, j: int) -> float:
    return turn_angle_2d(poly[j - 1], poly[j], poly[j + 1])


def path_curvature(poly: ConvexPolygon2, i: int, k: int) -> float:
    """Total curvature of the CCW subpath (v_i, ..., v_k): interior vertices only."""
    n = len(poly)
    i, k = i % n, k % n
    if i == k:
        raise ValueError("path_curvature needs distinct endpoints")
    total, j = 0.0, (i + 1) % n
    while j != k:
        total += vertex_curvature(poly, j)
        j = (j + 1) % n
    return total


def total_angle(P: Prismatoid, band: Band, vertex: str) -> float:
    """Sum of the face angles at ``vertex`` over every incident facet."""
    total = 0.0
    for fid in all_facet_ids(band):
        labels = facet_labels(P, band, fid)
        if vertex not in labels:
            continue
        k = labels.index(vertex)
        total += face_angle_3d(P.point3(vertex), P.point3(labels[k - 1]),
                               P.point3(labels[(k + 1) % len(labels)]))
    return total


@dataclass(frozen=True)
class FlatProjection:
    base: ConvexPolygon2
    projected_top: ConvexPolygon2
    projected_band_cells: Tuple[Tuple[Tuple[float, float], ...], ...]

    def cell_area_sum(self) -> float:
        return sum(signed_area(c) for c in self.projected_band_cells)


def project_flat(P: Prismatoid, band: Band) -> FlatProjection:
    """Orthogonal projection of the band onto the base plane.

    Cells keep their band index; each is listed CCW as seen from above.
    """
    cells = []
    for facet in band:
        labels = list(reversed(facet.labels()))
        cells.append(tuple(P.point2(lab) for lab in labels))
    return FlatProjection(P.base, P.top, tuple(cells))
