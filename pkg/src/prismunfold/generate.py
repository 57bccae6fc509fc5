"""Seeded generators of nested prismatoids and prismoids."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .exceptions import GenerationFailed, GeometryError
from .geom import DEFAULT_TOL, Tolerances
from .prismatoid import Prismatoid, validate

NEST_MARGIN = 0.02
MIN_TURN = 0.01
MIN_EDGE = 0.01
MAX_TRIES = 200


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    base_vertices: int = 4
    top_vertices: int = 4
    prismoid_mode: bool = False
    height_range: Tuple[float, float] = (0.2, 2.0)
    shrink_range: Tuple[float, float] = (0.3, 0.7)

    def __post_init__(self):
        if self.base_vertices < 3 or self.top_vertices < 3:
            raise ValueError("vertex counts must be at least 3")
        lo, hi = self.height_range
        if not 0 < lo <= hi:
            raise ValueError(f"bad height_range {self.height_range}")
        lo, hi = self.shrink_range
        if not 0 < lo <= hi < 1:
            raise ValueError(f"bad shrink_range {self.shrink_range}")


def random_convex_polygon(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random strictly convex CCW polygon, bounding box scaled into [-1, 1]^2.

    Random edge vectors are centred to sum to zero and chained in order of
    angle; the result is convex by construction. Returns None when the draw
    is too close to degenerate.
    """
    vec = rng.normal(size=(n, 2))
    vec -= vec.mean(axis=0)
    ang = np.arctan2(vec[:, 1], vec[:, 0])
    vec = vec[np.argsort(ang)]
    pts = np.cumsum(vec, axis=0)
    lo, hi = pts.min(0), pts.max(0)
    pts = (pts - (lo + hi) / 2) / ((hi - lo).max() / 2)
    edges = np.roll(pts, -1, axis=0) - pts
    if np.linalg.norm(edges, axis=1).min() < MIN_EDGE:
        return None
    nxt = np.roll(edges, -1, axis=0)
    turns = np.arctan2(edges[:, 0] * nxt[:, 1] - edges[:, 1] * nxt[:, 0],
                       np.einsum("ij,ij->i", edges, nxt))
    # the smallest gap between n random directions shrinks like 1/n^2
    if turns.min() < min(MIN_TURN, 1.44 / n ** 2) or abs(turns.sum() - 2 * math.pi) > 1e-9:
        return None
    return pts


def _halfplanes(poly: np.ndarray):
    e = np.roll(poly, -1, axis=0) - poly
    n = np.column_stack([e[:, 1], -e[:, 0]])
    n /= np.linalg.norm(n, axis=1)[:, None]
    return n, np.einsum("ij,ij->i", n, poly)


def nest_margin(base: np.ndarray, top: np.ndarray) -> float:
    """Smallest distance from a top vertex to a base edge line (inside > 0)."""
    n, c = _halfplanes(base)
    return float((c[None, :] - top @ n.T).min())


def _interior_point(rng, base):
    weights = rng.dirichlet(np.ones(len(base)))
    return weights @ base


def _finish(cfg: GenConfig, rng, base, top, tol) -> Prismatoid:
    h = float(rng.uniform(*cfg.height_range))
    return validate([tuple(p) for p in base], [tuple(p) for p in top], h, tol)


def gen_nested_prismatoid(cfg: GenConfig, tol: Tolerances = DEFAULT_TOL) -> Prismatoid:
    """Base and an independent top, scaled and moved strictly inside the base."""
    if cfg.prismoid_mode:
        return gen_nested_prismoid(cfg, tol)
    rng = np.random.default_rng(cfg.seed)
    for _ in range(MAX_TRIES):
        base = random_convex_polygon(rng, cfg.base_vertices)
        shape = random_convex_polygon(rng, cfg.top_vertices)
        if base is None or shape is None:
            continue
        shape = shape - shape.mean(axis=0)
        center = _interior_point(rng, base)
        n, c = _halfplanes(base)
        room = c - n @ center - NEST_MARGIN
        if room.min() <= 0:
            continue
        reach = shape @ n.T
        with np.errstate(divide="ignore"):
            limits = np.where(reach > 0, room[None, :] / reach, np.inf)
        s = float(limits.min()) * rng.uniform(*cfg.shrink_range)
        top = center + s * shape
        if nest_margin(base, top) < NEST_MARGIN or not _edges_ok(top):
            continue
        try:
            return _finish(cfg, rng, base, top, tol)
        except GeometryError:
            continue
    raise GenerationFailed("no nested prismatoid found", cfg.seed)


def _edges_ok(top: np.ndarray) -> bool:
    edges = np.roll(top, -1, axis=0) - top
    return bool(np.linalg.norm(edges, axis=1).min() >= MIN_EDGE * 0.1)


def gen_nested_prismoid(cfg: GenConfig, tol: Tolerances = DEFAULT_TOL) -> Prismatoid:
    """Top is a homothetic copy of the base, so every lateral facet is a trapezoid."""
    rng = np.random.default_rng(cfg.seed)
    for _ in range(MAX_TRIES):
        base = random_convex_polygon(rng, cfg.base_vertices)
        if base is None:
            continue
        center = _interior_point(rng, base)
        ratio = rng.uniform(*cfg.shrink_range)
        top = center + ratio * (base - center)
        if nest_margin(base, top) < NEST_MARGIN or not _edges_ok(top):
            continue
        try:
            return _finish(cfg, rng, base, top, tol)
        except GeometryError:
            continue
    raise GenerationFailed("no nested prismoid found", cfg.seed)
