import pytest

from mrsections.bn import (
    QUADRIC_SIGNATURE_EXCEPTIONS,
    CurveParams,
    OutOfRange,
    Signature,
    defining_signatures,
    exception_tables,
    hyperplane_caveat,
    plane_threshold,
    quadric_dim,
    quadric_exceptions,
    quadric_obstructed,
    rho,
)


@pytest.mark.parametrize("d,g,r,want", [(3, 0, 3, 0), (6, 4, 3, 0), (5, 2, 3, 2)])
def test_rho(d, g, r, want):
    assert rho(CurveParams(d, g, r)) == want
    assert CurveParams(d, g, r).bn_valid


def test_signatures():
    assert defining_signatures(6, 4) == [Signature(0, 0, 1)]
    assert defining_signatures(5, 2) == [Signature(0, 2, 0)]
    assert defining_signatures(3, 0) == [Signature(0, 0, 0)]
    with pytest.raises(OutOfRange):
        defining_signatures(4, 4)


def test_signatures_round_trip():
    for d in range(3, 25):
        for g in range(0, 30):
            if rho(CurveParams(d, g, 3)) < 0:
                continue
            sigs = defining_signatures(d, g)
            assert sigs
            assert [s.c for s in sigs] == sorted((s.c for s in sigs), reverse=True)
            assert all((s.degree, s.genus) == (d, g) for s in sigs)


def test_signature_parse_and_counts():
    s = Signature.parse("1,2,3")
    assert str(s) == "(1,2,3)"
    assert s.plane_points == 1 + 2 + 9 + 3
    assert s.quadric_points == 2 * s.degree
    with pytest.raises(ValueError):
        Signature(-1, 0, 0)


def test_thresholds():
    assert plane_threshold(2, 3) == 6
    assert plane_threshold(3, 3) == 10
    assert plane_threshold(2, 4) == 10
    assert quadric_dim(2, 2) == 9
    assert quadric_dim(2, 3) == 12
    assert quadric_dim(0, 0) == 1


def test_obstruction():
    ob = quadric_obstructed(CurveParams(6, 4, 3))
    assert ob.obstructed and ob.deficiency == 1
    assert quadric_obstructed(CurveParams(8, 9, 5)).obstructed
    for d in range(1, 20):
        for g in range(0, 10):
            if d >= g + 3:
                assert not quadric_obstructed(CurveParams(d, g, 3)).obstructed
    assert hyperplane_caveat(2, CurveParams(6, 4, 3))
    assert not hyperplane_caveat(3, CurveParams(6, 4, 3))


def test_exception_tables():
    assert quadric_exceptions(2, 2) == {(6, 4), (5, 2), (4, 1)}
    assert quadric_exceptions(3, 3) == {(6, 4), (8, 6), (7, 5)}
    assert quadric_exceptions(3, 2) == {(6, 4)}
    assert quadric_exceptions(1, 1) == set()
    assert exception_tables()["hyperplane_caveat"] == "m == 2 and d < g + r"


def test_exception_tables_agree():
    for (m, n), sigs in QUADRIC_SIGNATURE_EXCEPTIONS.items():
        dg = quadric_exceptions(m, n)
        assert {(s.degree, s.genus) for s in sigs} == dg
        for d, g in dg:
            assert set(defining_signatures(d, g)) <= sigs
