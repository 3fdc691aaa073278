import json
from pathlib import Path

import pytest

import dpcolor

CORPUS = Path(__file__).resolve().parents[2] / "corpus"


def cycle(n):
    return {"n": n, "rotation": [[(i + 1) % n, (i - 1) % n] for i in range(n)], "outer": list(range(n))}


def straight_cover(graph, size):
    edges = {(min(u, v), max(u, v)) for u, nbrs in enumerate(graph["rotation"]) for v in nbrs}
    return {"sizes": [size] * graph["n"], "matchings": {f"{u}-{v}": [[i, i] for i in range(size)] for u, v in edges}}


def test_check_class():
    assert dpcolor.check_class(cycle(7))["in_class"]
    report = dpcolor.check_class(cycle(5))
    assert not report["in_class"]
    assert sorted(report["five_cycle"]) == [0, 1, 2, 3, 4]


def test_solve():
    k3 = cycle(3)
    assert dpcolor.solve(k3, straight_cover(k3, 5)) is None
    phi = dpcolor.solve(k3, straight_cover(k3, 6))
    assert sorted(c for cs in phi["assignment"].values() for c in cs) == list(range(6))


def test_tree_color():
    lists = {"m": 1, "shape": "claw", "lists": {"u": [1, 2, 3, 4, 5], "v1": [1, 2, 3], "v2": [1, 4, 5], "v3": [2, 3, 4]}}
    out = dpcolor.tree_color(lists)
    assert out["coloring"] == {"u": [3, 5], "v1": [1, 2], "v2": [1, 4], "v3": [2, 4]}


def test_reducible_and_discharging():
    graph = (CORPUS / "reductions" / "L13.json").read_text()
    assert "L13_FiveStar" in {r["kind"] for r in dpcolor.reducible(graph)}
    assert dpcolor.meta_audit(graph)["verdict"] == "ReducibleFound"
    ledger = dpcolor.ledger(graph)
    assert ledger["audit"]["conservation"] and ledger["audit"]["final_sum"] == 0


def test_generate_and_errors():
    g = dpcolor.generate(n=12, seed=0)
    assert g == dpcolor.generate(n=12, seed=0)
    assert dpcolor.check_class(g)["in_class"]
    assert dpcolor.cover_violations(g, straight_cover(g, 7)) == []

    with pytest.raises(dpcolor.DpcolorError) as err:
        dpcolor.check_class("{")
    assert dpcolor.error_kind(err.value) == "Parse"
    with pytest.raises(dpcolor.DpcolorError) as err:
        dpcolor.meta_audit(cycle(5))
    assert dpcolor.error_kind(err.value) == "PreconditionViolated"
    assert json.loads(json.dumps(g)) == g
