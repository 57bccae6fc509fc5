"""Fuzz harness: generate, unfold and verify many seeded instances."""
from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .exceptions import CutEdgeMissing, GeometryError
from .generate import GenConfig, gen_nested_prismatoid
from .geom import DEFAULT_TOL, Tolerances
from .io import instance_from_dict, instance_to_dict, serialize_instance
from .prismatoid import compute_band
from .rmcut import Scheme, plan_cut
from .unfold import TopRule, unfold
from .verify import verify_net


@dataclass
class FuzzReport:
    total: int = 0
    passed: int = 0
    failed: int = 0
    failures: List[dict] = field(default_factory=list)
    cut_edge_missing: int = 0
    max_isometry_error: float = 0.0
    min_stretch_margin: float = math.inf
    max_cone_excess: float = -math.inf
    stretch_warnings: int = 0

    def to_dict(self) -> dict:
        return {
            "total": self.total, "passed": self.passed, "failed": self.failed,
            "cut_edge_missing": self.cut_edge_missing,
            "max_isometry_error": self.max_isometry_error,
            "min_stretch_margin": None if math.isinf(self.min_stretch_margin) else self.min_stretch_margin,
            "max_cone_excess": None if math.isinf(self.max_cone_excess) else self.max_cone_excess,
            "stretch_warnings": self.stretch_warnings,
            "failures": self.failures,
        }

    def to_json(self) -> bytes:
        return (json.dumps(self.to_dict(), indent=1, sort_keys=True) + "\n").encode("utf-8")


def instance_config(seed: int, min_vertices: int, max_vertices: int, prismoid: bool) -> GenConfig:
    """Vertex counts for one fuzz seed, drawn independently for base and top."""
    rng = np.random.default_rng([seed, 0xF022])
    nb = int(rng.integers(min_vertices, max_vertices + 1))
    nt = nb if prismoid else int(rng.integers(min_vertices, max_vertices + 1))
    return GenConfig(seed=seed, base_vertices=nb, top_vertices=nt, prismoid_mode=prismoid)


def run_instance(cfg: GenConfig, scheme=Scheme.AUTO, tol: Tolerances = DEFAULT_TOL,
                 top_rule=TopRule.PROJECTED) -> dict:
    """Full pipeline on one generated instance; failures come back as data."""
    P = gen_nested_prismatoid(cfg, tol)
    out = {"seed": cfg.seed, "instance": P}
    try:
        band = compute_band(P, tol)
        plan = plan_cut(P, band, scheme, tol)
        net = unfold(P, band, plan, tol, top_rule)
    except CutEdgeMissing as exc:
        out.update(error="CutEdgeMissing", detail=str(exc), diagnostics=exc.diagnostics)
        return out
    except GeometryError as exc:
        out.update(error=type(exc).__name__, detail=str(exc))
        return out
    out["report"] = verify_net(P, band, plan, net, tol)
    return out


def _run(args):
    cfg, scheme, tol, top_rule = args
    res = run_instance(cfg, scheme, tol, top_rule)
    # reports travel between processes as plain values
    res["instance"] = instance_to_dict(res["instance"])
    return res


def fuzz(count: int, seed: int = 0, min_vertices: int = 3, max_vertices: int = 12,
         prismoid: bool = False, dump_dir: Optional[str] = None, scheme=Scheme.AUTO,
         tol: Tolerances = DEFAULT_TOL, top_rule=TopRule.PROJECTED, jobs: int = 1) -> FuzzReport:
    if count < 1:
        raise ValueError("count must be at least 1")
    if not 3 <= min_vertices <= max_vertices:
        raise ValueError("need 3 <= min_vertices <= max_vertices")
    tasks = [(instance_config(seed + k, min_vertices, max_vertices, prismoid), Scheme(scheme), tol,
              TopRule(top_rule)) for k in range(count)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_run, tasks, chunksize=16))
    else:
        results = [_run(t) for t in tasks]
    report = FuzzReport()
    for res in sorted(results, key=lambda r: r["seed"]):
        report.total += 1
        rep = res.get("report")
        if rep is None:
            report.failed += 1
            report.cut_edge_missing += res["error"] == "CutEdgeMissing"
            failure = {"seed": res["seed"], "instance": res["instance"], "check": res["error"],
                       "witness": {"detail": res["detail"], **res.get("diagnostics", {})}}
        else:
            iso, stretch, cones = rep["isometry"], rep["stretch"], rep["cones"]
            report.max_isometry_error = max(report.max_isometry_error, iso.value or 0.0)
            if stretch.value is not None:
                report.min_stretch_margin = min(report.min_stretch_margin, stretch.value)
            if cones.value is not None:
                report.max_cone_excess = max(report.max_cone_excess, cones.value)
            report.stretch_warnings += stretch.warning
            bad = rep.first_failure()
            if bad is None:
                report.passed += 1
                continue
            report.failed += 1
            failure = {"seed": res["seed"], "instance": res["instance"], "check": bad.name,
                       "witness": bad.witness}
        report.failures.append(failure)
        if dump_dir:
            _dump(dump_dir, failure)
    return report


def _dump(dump_dir: str, failure: dict) -> None:
    os.makedirs(dump_dir, exist_ok=True)
    P = instance_from_dict(failure["instance"])
    with open(os.path.join(dump_dir, f"seed{failure['seed']}.json"), "wb") as fh:
        fh.write(serialize_instance(P))
