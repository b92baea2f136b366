from fractions import Fraction
from math import comb

import pytest

from mrsections.bn import CurveParams, OutOfRange, rho
from mrsections.planner import (
    InfeasiblePlan,
    admissible_splits,
    bn_grid,
    bounds_ione,
    construction_plan,
    induction_schedule,
    plan_sweep,
    proof_inequalities,
    rho_increment,
    small_split,
    split_constraints,
    split_degrees,
)


@pytest.mark.parametrize("r", [3, 4, 7])
def test_rho_increment(r):
    assert rho_increment(1, 1, r) == r + 1
    assert rho_increment(1, 2, r) == 1
    assert rho_increment(r, r + 2, r) == 0
    with pytest.raises(ValueError):
        rho_increment(1, 0, r)


def test_bounds_examples():
    b1, b2, ok = bounds_ione(CurveParams(10, 6, 4))
    assert (b1, b2, ok) == (Fraction(11, 2), Fraction(15, 4), True)
    for r in range(3, 9):
        b1, _, ok = bounds_ione(CurveParams(r, 0, r))
        assert ok and b1 == r
    with pytest.raises(OutOfRange):
        bounds_ione(CurveParams(4, 4, 3))


def test_bounds_small_grid():
    assert all(bounds_ione(p)[2] for p in bn_grid(range(3, 6), 30))


def test_proof_inequalities_domains():
    seen = {"lines": 0, "curves": 0}
    for p in bn_grid(range(3, 7), 40):
        for name, ok in proof_inequalities(p).items():
            if ok is not None:
                assert ok, (name, p)
                seen[name] += 1
    assert seen["lines"] > 0 and seen["curves"] > 0
    assert proof_inequalities(CurveParams(3, 0, 3)) == {"lines": None, "curves": None}


def test_split_base_case():
    res = split_degrees(20, 4, 3)
    assert (res.d1, res.d2, res.direction) == (10, 10, "surplus") and res.ok


def test_split_deficit_example():
    res = split_degrees(10, 4, 3)
    assert (res.d1, res.d2, res.direction) == (6, 4, "deficit")
    assert 6 <= res.d1 <= 10 and Fraction(15, 4) <= res.d2 <= 10


def test_split_errors_and_small_rule():
    with pytest.raises(OutOfRange):
        split_degrees(9, 4, 3)
    with pytest.raises(OutOfRange):
        split_degrees(20, 3, 3)
    assert small_split(9, 4) == (5, 4)
    assert small_split(8, 4) == (5, 3)
    with pytest.raises(OutOfRange):
        small_split(10, 4)


def test_split_sweep_constraints():
    for r in range(4, 7):
        for m in range(3, 5):
            base = comb(m + r - 1, m)
            for d in range(2 * r + 2, base + 21):
                res = split_degrees(d, r, m)
                assert res.d1 + res.d2 == d
                assert split_constraints(res.d1, res.d2, r, m, res.direction) == res.constraints
                assert res.ok


def test_split_walk_is_monotone():
    prev = split_degrees(20, 4, 3)
    for d in range(21, 41):
        cur = split_degrees(d, 4, 3)
        assert (cur.d1 - prev.d1, cur.d2 - prev.d2) in {(1, 0), (0, 1)}
        prev = cur


@pytest.mark.parametrize("r", [3, 4, 5, 6])
def test_base_plan_odd_degree(r):
    plan = construction_plan(2 * r - 1, r - 1, r, r, r - 1, "general")
    assert [n.spec for n in plan.nodes] == [f"RNC({r})", f"SecantRNC({r - 1}, {r})"]
    assert [n.side for n in plan.nodes] == ["X", "Y"]
    assert plan.check()


@pytest.mark.parametrize("r", [3, 4, 5])
def test_base_plan_rho_zero(r):
    plan = construction_plan(2 * r, r + 1, r, r + 1, r - 1, "general")
    assert [n.spec for n in plan.nodes] == [f"RNC({r})", "SecantLine(2)", f"SecantRNC({r - 1}, {r + 1})"]
    assert plan.totals() == (2 * r, r + 1, 0)


def test_three_r_templates():
    r = 4
    a = construction_plan(3 * r, 2 * r + 2, r, 2 * r + 1, r - 1, "general")
    assert a.nodes[0].spec == f"Canonical({2 * r})" and a.check()
    b = construction_plan(3 * r, 2 * r + 2, r, r + 3, 2 * r - 3, "general")
    assert {n.label for n in b.nodes} >= {"R1", "L0", "R2", "L1", "L2", "N1", "N2"}
    assert b.assumptions and b.check()


def test_plan_12_9_4():
    splits = admissible_splits(12, 9, 4)
    assert splits
    for d1, d2 in splits:
        plan = construction_plan(12, 9, 4, d1, d2, "special")
        rows = plan.ledger()
        assert (rows[-1]["deg"], rows[-1]["genus"], rows[-1]["rho"]) == (12, 9, rho(CurveParams(12, 9, 4)))
        assert all(row["rho"] >= 0 for row in rows)
    plan = construction_plan(12, 9, 4, 6, 6, "general")
    assert plan.totals() == (12, 9, 4)


def test_special_plan_examples():
    assert [n.spec for n in construction_plan(7, 3, 4, 4, 3).nodes] == ["RNC(4)", "SecantRNC(3, 4)"]
    plan = construction_plan(8, 5, 4, 5, 3)
    assert [(n.spec, n.side) for n in plan.nodes] == [
        ("RNC(4)", "X"), ("SecantLine(2)", "X"), ("SecantRNC(3, 5)", "Y")]


def test_nonspecial_m2_plan():
    plan = construction_plan(10, 2, 4, 3, 7, "nonspecial-m2")
    assert plan.check() and plan.nodes[0].spec == "RNC(3)"
    with pytest.raises(InfeasiblePlan):
        construction_plan(10, 2, 4, 5, 5, "nonspecial-m2")


def test_infeasible_plans():
    with pytest.raises(InfeasiblePlan, match="d2 >= r - 1"):
        construction_plan(12, 9, 4, 10, 2, "general")
    with pytest.raises(InfeasiblePlan, match="rho"):
        construction_plan(4, 4, 3, 2, 2)
    with pytest.raises(ValueError):
        construction_plan(7, 3, 4, 4, 3, "other")


def test_plan_sweep_small():
    n, bad = plan_sweep(range(3, 6), 18)
    assert n > 100 and bad == []


def test_dot_and_dict():
    plan = construction_plan(8, 5, 4, 5, 3)
    dot = plan.to_dot()
    assert dot.startswith("graph plan {") and '"L" -- "R";' in dot
    d = plan.to_dict()
    assert d["ok"] and d["rho"] == rho(CurveParams(8, 5, 4)) and len(d["ledger"]) == 3


def test_schedule_examples():
    leaf = induction_schedule(6, 4, 3, 5)
    assert leaf.leaf == "r = 3" and not leaf.children
    assert induction_schedule(30, 5, 6, 2).leaf == "m <= 2"
    root = induction_schedule(20, 5, 4, 3)
    assert root.split == (10, 10)
    left, right = root.children
    assert (left.d, left.r, left.m, left.leaf) == (10, 4, 2, "m <= 2")
    assert (right.d, right.r, right.m, right.leaf) == (10, 3, 3, "r = 3")
    with pytest.raises(OutOfRange):
        induction_schedule(4, 4, 3, 3)


def test_schedule_uses_small_rule():
    root = induction_schedule(9, 0, 4, 3)
    assert root.rule == "small" and root.split == (5, 4)
    assert all(n.leaf for n in root.leaves())
    assert root.to_dict()["children"][0]["leaf"] == "m <= 2"
