import json

import pytest

import vrcollapse as vrc

STAR = "root b\na b 1\nb c 1\nb d 1\n"
GENERIC = "a b 1\nb c 2\nb d 4\n"
COUNTEREXAMPLE = "1\n1 2\n6 5 5\n16 15 15 10\n"


def test_analyze_star():
    out = vrc.analyze(STAR)
    assert out["delta"] == 0.0
    assert out["nu"] == 0.5
    assert out["threshold"] == 1.0
    assert out["levels"] == [0.0, 1.0, 2.0]


def test_analyze_counterexample():
    out = vrc.analyze(COUNTEREXAMPLE)
    assert out["delta_exact"] == "1"
    assert out["nu_exact"] == "5"
    assert out["threshold"] == 14.0


def test_rips_dump():
    dump = vrc.rips_dump(STAR, t="1")
    assert dump == "a : 0\nb : 0\nc : 0\nd : 0\na b : 1\nb c : 1\nb d : 1\n"


def test_canonical_gradient_star():
    out = vrc.gradient(STAR, kind="canonical")
    assert out["valid"]
    assert out["diam_compatible"]
    assert out["intervals"] == [
        "a c -> a b c",
        "a d -> a b d",
        "c d -> b c d",
        "a c d -> a b c d",
    ]
    assert sorted(out["critical"]) == sorted(["a", "b", "c", "d", "a b", "b c", "b d"])


def test_perturbed_differs_from_canonical():
    canonical = vrc.gradient(STAR, kind="canonical")["intervals"]
    perturbed = vrc.gradient(STAR, kind="perturbed", order="compatible", root="a")["intervals"]
    assert canonical != perturbed
    assert "c d -> a b c d" in perturbed


def test_generic_gradient_requires_distinct_distances():
    with pytest.raises(ValueError):
        vrc.gradient(STAR, kind="generic")
    out = vrc.gradient(GENERIC, kind="generic")
    assert out["valid"]
    assert len(out["intervals"]) == 3


def test_persistence_reverse_compatible_zero_additions():
    out = vrc.persistence(STAR, order="reverse-compatible", root="b", max_degree=3)
    stats = out["stats"]
    assert stats["additions"] == 0
    assert stats["columns"] == 15
    barcode = out["barcode"]
    assert set(barcode.keys()) == {"0"}
    deaths = sorted((pair[1] if pair[1] is not None else -1.0) for pair in barcode["0"])
    assert deaths == [-1.0, 1.0, 1.0, 1.0]


def test_verify_theorem2_on_random_tree():
    tree_text = vrc.random_tree(7, seed=5)
    report = vrc.verify(tree_text, format="tree", pipeline="theorem2")
    assert report["ok"]


def test_verify_apparent_collapse_fails_on_counterexample():
    report = vrc.verify(COUNTEREXAMPLE, pipeline="apparent-collapse", t="14", u="15")
    assert not report["ok"]
    assert "{b e}" in report["results"]["critical_cells"]
    assert "{b d e}" in report["results"]["critical_cells"]


def test_verify_theorem1_counterexample():
    report = vrc.verify(COUNTEREXAMPLE, pipeline="theorem1", t="14")
    assert report["ok"]


def test_compatible_order():
    assert vrc.compatible_order(STAR, root="b") == ["b", "a", "c", "d"]
    assert vrc.compatible_order(STAR, root="b", reverse=True) == ["d", "c", "a", "b"]


def test_generators_deterministic():
    a = vrc.random_tree(6, seed=9)
    b = vrc.random_tree(6, seed=9)
    assert a == b
    m = vrc.random_metric(5, seed=3)
    assert m == vrc.random_metric(5, seed=3)
    sample, density = vrc.grid_sample(GENERIC, step="1/2")
    assert density == 0.25
    assert vrc.analyze(sample, format="tree")["nu"] <= 0.25
