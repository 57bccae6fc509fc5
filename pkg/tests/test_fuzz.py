import json

from prismunfold.fuzz import fuzz, instance_config
from prismunfold.io import parse_instance


def test_fuzz_small_corpus_clean():
    rep = fuzz(40, seed=100, min_vertices=3, max_vertices=12)
    assert rep.total == 40 and rep.failed == 0 and rep.cut_edge_missing == 0
    assert rep.max_isometry_error <= 1e-9


def test_fuzz_report_independent_of_jobs():
    a = fuzz(24, seed=7, max_vertices=9, jobs=1)
    b = fuzz(24, seed=7, max_vertices=9, jobs=2)
    assert a.to_json() == b.to_json()


def test_instance_config_prismoid_equal_counts():
    for s in range(50):
        cfg = instance_config(s, 3, 12, True)
        assert cfg.base_vertices == cfg.top_vertices and 3 <= cfg.base_vertices <= 12


def test_dump_dir_writes_failures(tmp_path, monkeypatch):
    import prismunfold.fuzz as fz
    from prismunfold.verify import CheckResult, VerifyReport

    def failing(*args, **kwargs):
        return VerifyReport((CheckResult("simple", False, {"facets": ["B", "A"]}),
                             CheckResult("isometry", True, value=0.0),
                             CheckResult("stretch", True, value=1.0),
                             CheckResult("cones", True, value=0.0)))

    monkeypatch.setattr(fz, "verify_net", failing)
    rep = fz.fuzz(3, seed=1, dump_dir=str(tmp_path))
    assert rep.failed == 3
    files = sorted(p.name for p in tmp_path.iterdir())
    assert files == ["seed1.json", "seed2.json", "seed3.json"]
    parse_instance((tmp_path / "seed1.json").read_bytes())
    assert json.loads(rep.to_json())["failures"][0]["check"] == "simple"
