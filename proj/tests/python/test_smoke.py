import json
import math
import os

import pytest

import parclust

DATA = os.path.join(os.path.dirname(__file__), "..", "..", "data")


def load(name):
    with open(os.path.join(DATA, name)) as fh:
        return fh.read()


def test_solve_fl_gap_instance():
    text = load("footnote2.json")
    sol = json.loads(parclust.solve_fl(text, mode="general"))
    assert sol["cost"] == 1.0
    assert sorted(sol["open"]) == ["i1", "i2"] or len(sol["open"]) == 1

    oracle = json.loads(parclust.oracle_fl(text))
    assert oracle["optimum"] == 1.0
    relaxed = json.loads(parclust.oracle_fl(text, respect_parity=False))
    assert relaxed["optimum"] == 0.0


def test_generate_roundtrip_and_solve():
    inst = parclust.generate_dict(problem="fl", nf=3, nd=4, feasible_only=True, seed=11)
    sol = parclust.solve_fl_dict(inst)
    assert set(sol) == {"cost", "open", "assignment"}
    assert len(sol["assignment"]) == 4
    opened = set(sol["open"])
    assert all(target in opened for target in sol["assignment"].values())


def test_generate_is_deterministic():
    a = parclust.generate(problem="kcenter", nd=6, k=2, seed=4)
    b = parclust.generate(problem="kcenter", nd=6, k=2, seed=4)
    assert a == b


def test_solve_kcenter_agrees_with_oracle():
    inst = parclust.generate(problem="kcenter", nd=7, k=2, feasible_only=True, seed=9)
    sol = json.loads(parclust.solve_kcenter(inst))
    opt = json.loads(parclust.oracle_kcenter(inst))
    assert sol["realized"] <= 6 * opt["optimum"] + 1e-9
    slow = json.loads(parclust.solve_kcenter(inst, linear_scan=True))
    assert slow["radius"] == sol["radius"]


def test_infeasible_raises():
    inst = {
        "nodes": [{"id": "a", "parity": "even"}],
        "metric": {"kind": "matrix", "order": ["a"], "d": [[0]]},
        "k": 1,
    }
    with pytest.raises(parclust.InfeasibleError):
        parclust.solve_kcenter(json.dumps(inst))


def test_size_guard_raises():
    inst = parclust.generate(problem="fl", nf=8, nd=3, seed=1)
    with pytest.raises(parclust.SizeGuardError):
        parclust.oracle_fl(inst)


def test_parse_error_raises():
    with pytest.raises(parclust.ParseError):
        parclust.solve_fl("not json")


def test_verify():
    report = json.loads(parclust.verify(load("footnote2.json")))
    assert report["ok"] is True
