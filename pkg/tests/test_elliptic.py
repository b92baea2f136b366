import numpy as np
import pytest

from mrsections.algebra import mat_rank
from mrsections.bn import Signature
from mrsections.elliptic import (
    DegenerateTwist,
    NotOnCurve,
    QuadricElliptic,
    TwistParam,
    WeierstrassCurve,
    bidegree_class_sum,
    class_is_H_multiple,
    class_sum,
    ec_add,
    ec_mul,
    ec_neg,
    embed_22,
    form_outside,
    form_product,
    forms_through,
    image_form,
    random_curve_through,
    random_twist,
    sample_elliptic_collection,
    sample_quadric_collection,
)
from mrsections.geom import DegenerateConfiguration, canon_q, eval_form_quadric, eval_matrix_quadric
from mrsections.suite import group_law_suite

P = 10007


def test_singular_curve_rejected():
    with pytest.raises(ValueError):
        WeierstrassCurve(P, 0, 0)


def test_doubling_example():
    E = WeierstrassCurve(5, 0, 1)
    assert ec_add((0, 1), (0, 1), E) == (0, 4)
    assert E.contains((0, 4))
    with pytest.raises(NotOnCurve):
        ec_add((1, 1), None, E)


def test_identity_and_inverse():
    rng = np.random.default_rng(0)
    E = WeierstrassCurve.random(P, rng)
    P1 = E.random_point(rng)
    assert ec_add(P1, None, E) == P1
    assert ec_add(P1, ec_neg(P1, E), E) is None
    assert class_sum([], E) is None
    assert class_sum([P1, ec_neg(P1, E)], E) is None


def test_group_law_axioms():
    rng = np.random.default_rng(1)
    E = WeierstrassCurve.random(P, rng)
    assert group_law_suite(E, rng, trials=300) == []


def test_point_count_small_prime():
    E = WeierstrassCurve(101, 2, 3)
    pts = E.points()
    assert pts[0] is None
    n = len(pts)
    # Hasse bound and Lagrange: every order divides #E
    assert abs(n - 102) <= 2 * 101 ** 0.5
    assert all(ec_mul(n, Q, E) is None for Q in pts[:20])
    assert all(n % E.order_of(Q) == 0 for Q in pts[:20])


def test_twist_validation():
    E = WeierstrassCurve(101, 2, 3)
    two_torsion = [Q for Q in E.points() if Q is not None and Q[1] == 0]
    for Q in two_torsion:
        with pytest.raises(DegenerateTwist):
            TwistParam(E, Q)
    with pytest.raises(NotOnCurve):
        TwistParam(E, None)


def test_embedding_rank_and_fibers():
    rng = np.random.default_rng(2)
    E = WeierstrassCurve.random(P, rng)
    T = random_twist(E, rng)
    phi = embed_22(E, T)
    assert phi(None) == canon_q(((1, 0), (T.T[0], 1)), P)
    pts = [E.random_point(rng) for _ in range(14)]
    M = eval_matrix_quadric([phi(Q) for Q in pts], (2, 2), P)
    assert mat_rank(M, P) == 8
    Q = pts[0]
    # the fiber of the first ruling through phi(Q) is {Q, -Q}
    assert phi(Q)[0] == phi(E.neg(Q))[0]
    assert phi(Q) != phi(E.neg(Q))
    curve = image_form(E, T, rng)
    assert curve.smooth()
    assert all(curve.contains(phi(E.random_point(rng))) for _ in range(50))


def test_class_sums_of_rulings():
    rng = np.random.default_rng(3)
    E = WeierstrassCurve.random(P, rng)
    T = random_twist(E, rng)
    assert bidegree_class_sum((1, 0), T) is None
    assert bidegree_class_sum((0, 1), T) == E.mul(-2, T.T)
    R = E.random_point(rng)
    second_fiber = [E.sub(R, T.T), E.sub(E.neg(R), T.T)]
    assert class_sum(second_fiber, E) == bidegree_class_sum((0, 1), T)
    assert T.sigma_H == E.mul(-2, T.T)
    # (l, -l) is nontrivial once the order of T does not divide 2l
    l = 3
    formal = E.sub(bidegree_class_sum((l, 0), T), bidegree_class_sum((0, l), T))
    assert formal == E.mul(2 * l, T.T) and (formal is None) == (T.order % (2 * l) == 0)


def test_hyperplane_multiples():
    rng = np.random.default_rng(4)
    E = WeierstrassCurve.random(P, rng)
    T = random_twist(E, rng)
    Q, R = E.random_point(rng), E.random_point(rng)
    fiber = [Q, E.neg(Q), E.sub(R, T.T), E.sub(E.neg(R), T.T)]
    assert class_is_H_multiple(fiber, E, T)
    assert not class_is_H_multiple([Q, E.neg(Q)], E, T)
    assert class_is_H_multiple([], E, T)
    T = random_twist(E, rng, 24)
    coll = sample_elliptic_collection(Signature(0, 2, 0), E, T, seed=4)
    assert not class_is_H_multiple(coll.epoints()[6:], E, T)


@pytest.mark.parametrize("sig,count", [((0, 0, 1), 12), ((0, 1, 0), 8), ((1, 0, 0), 8)])
def test_single_curve_sampler(sig, count):
    rng = np.random.default_rng(5)
    E = WeierstrassCurve.random(P, rng)
    s = Signature(*sig)
    T = random_twist(E, rng, 12 * (s.b + s.c))
    coll = sample_elliptic_collection(s, E, T, seed=7)
    pts = coll.epoints()
    assert len(pts) == count == s.quadric_points
    assert coll.verify()
    h = T.sigma_H
    if sig == (0, 0, 1):
        assert class_sum(pts, E) == E.mul(3, h)
    if sig == (1, 0, 0):
        assert class_sum(pts[6:], E) == E.sub(class_sum(pts[:6], E), h)
    again = sample_elliptic_collection(s, E, T, seed=7)
    assert again.to_dict() == coll.to_dict()


def test_sampler_rejects_small_twist():
    E = WeierstrassCurve(101, 2, 3)
    T = next(TwistParam(E, Q) for Q in E.points()[1:] if Q[1] and E.order_of(Q) <= 12)
    with pytest.raises(DegenerateTwist):
        sample_elliptic_collection(Signature(0, 1, 0), E, T, seed=0)


def test_residual_agrees_with_group_law():
    p = 1009
    rng = np.random.default_rng(6)
    E = WeierstrassCurve.random(p, rng)
    T = random_twist(E, rng, 8)
    phi = embed_22(E, T)
    back = {phi(Q): Q for Q in E.points()}
    curve = image_form(E, T, rng)
    done = 0
    for cls in [(1, 1), (1, 2), (2, 2)]:
        m, n = cls
        for _ in range(10):
            known_e = [E.random_point(rng) for _ in range(2 * m + 2 * n - 1)]
            known = [phi(Q) for Q in known_e]
            try:
                K = forms_through(known, cls, p)
                f = form_outside(K, curve, cls, rng)
                last = curve.residual(f, cls, known)
            except DegenerateConfiguration:
                continue
            assert curve.contains(last) and eval_form_quadric(f, cls, last, p) == 0
            total = class_sum(known_e + [back[last]], E)
            assert total == bidegree_class_sum(cls, T)
            done += 1
    assert done >= 15


def test_form_product():
    p = 101
    rng = np.random.default_rng(7)
    f = rng.integers(0, p, 9)
    g = rng.integers(0, p, 4)
    h = form_product(f, (2, 2), g, (1, 1), p)
    for _ in range(5):
        x = (tuple(int(v) for v in rng.integers(1, p, 2)), tuple(int(v) for v in rng.integers(1, p, 2)))
        lhs = eval_form_quadric(h, (3, 3), x, p)
        assert lhs == eval_form_quadric(f, (2, 2), x, p) * eval_form_quadric(g, (1, 1), x, p) % p


def test_smoothness_detects_nodal_curve():
    p = 101
    rng = np.random.default_rng(8)
    # product of two (1,1) forms is a reducible (2,2) curve, never smooth
    a, b = rng.integers(0, p, 4), rng.integers(0, p, 4)
    assert not QuadricElliptic(form_product(a, (1, 1), b, (1, 1), p), p).smooth()


@pytest.mark.parametrize("sig", [(0, 0, 1), (0, 1, 0), (1, 0, 0), (2, 1, 1)])
def test_quadric_collection(sig):
    s = Signature(*sig)
    coll = sample_quadric_collection(s, seed=3, p=P)
    assert coll.verify()
    assert len(coll.points) == s.quadric_points
    assert [k for k, _, _ in coll.groups] == ["a"] * s.a + ["b"] * s.b + ["c"] * s.c
    assert sample_quadric_collection(s, seed=3, p=P).to_dict() == coll.to_dict()


def test_random_curve_through_points():
    rng = np.random.default_rng(9)
    E = WeierstrassCurve.random(P, rng)
    curve = image_form(E, random_twist(E, rng), rng)
    pts = [curve.random_point(rng) for _ in range(6)]
    other = random_curve_through(pts, P, rng)
    assert other.smooth() and all(other.contains(x) for x in pts)
