import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from mrsections.algebra import (
    PrimeField,
    det,
    field_inv,
    interpolate,
    mat_rank,
    nullspace,
    poly_deriv,
    poly_divmod,
    poly_eval,
    poly_gcd,
    poly_mul,
    resultant,
    rref,
    sqrt_mod,
)

small = st.integers(min_value=1, max_value=5)


def brute_rank(M, p):
    """Rank as the largest r with some nonzero r x r minor (sympy, exact)."""
    rows, cols = M.shape
    for r in range(min(rows, cols), 0, -1):
        for ri in itertools.combinations(range(rows), r):
            for ci in itertools.combinations(range(cols), r):
                if int(sympy.Matrix(M[np.ix_(ri, ci)].tolist()).det()) % p:
                    return r
    return 0


def test_inverse_small():
    assert field_inv(2, 5) == 3
    assert all(x * field_inv(x, 7) % 7 == 1 for x in range(1, 7))
    with pytest.raises(ZeroDivisionError):
        field_inv(0, 7)


def test_prime_field_rejects_composite():
    with pytest.raises(ValueError):
        PrimeField(10)


def test_sqrt_mod():
    p = 10007
    for x in range(1, 200):
        r = sqrt_mod(x, p)
        if r is None:
            assert pow(x, (p - 1) // 2, p) == p - 1
        else:
            assert r * r % p == x


def test_vandermonde_rank():
    p = 10007
    V = np.array([[pow(x, k, p) for k in range(4)] for x in (1, 2, 3, 4)], dtype=np.int64)
    assert mat_rank(V, p) == 4
    # Vandermonde determinant: product of differences
    assert det(V, p) == (1 * 2 * 3 * 1 * 2 * 1) % p


def test_rank_matches_minors_at_small_prime():
    rng = np.random.default_rng(1)
    for _ in range(40):
        p = int(rng.choice([2, 3, 5, 7]))
        M = rng.integers(0, p, size=tuple(rng.integers(1, 5, size=2)))
        assert mat_rank(M, p) == brute_rank(M, p)


def test_det_matches_sympy():
    rng = np.random.default_rng(2)
    p = 10007
    for n in range(1, 6):
        M = rng.integers(0, p, size=(n, n))
        assert det(M, p) == int(sympy.Matrix(M.tolist()).det()) % p


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), small, small)
def test_rank_properties(seed, rows, cols):
    p = 101
    rng = np.random.default_rng(seed)
    M = rng.integers(0, 3, size=(rows, cols))
    r = mat_rank(M, p)
    assert r <= min(rows, cols)
    perm = rng.permutation(rows)
    assert mat_rank(M[perm], p) == r
    N = rng.integers(0, 3, size=(rows, cols))
    assert mat_rank((M + N) % p, p) <= r + mat_rank(N, p)
    K = nullspace(M, p)
    assert K.shape[0] == cols - r
    assert not ((M @ K.T) % p).any()


def test_rref_pivots():
    R, piv = rref(np.array([[2, 4], [1, 2]]), 7)
    assert piv == [0]
    assert R.tolist() == [[1, 2], [0, 0]]


def test_interpolation_round_trip():
    p = 10007
    f = [3, 0, 5, 1]
    xs = [1, 2, 3, 4]
    assert interpolate(xs, [poly_eval(f, x, p) for x in xs], p) == f


def test_resultant_matches_sympy():
    p = 10007
    x = sympy.symbols("x")
    f, g = [1, 2, 3], [5, 0, 7, 1]  # ascending coefficients
    fs = sum(c * x**i for i, c in enumerate(f))
    gs = sum(c * x**i for i, c in enumerate(g))
    assert resultant(f, g, p) == int(sympy.resultant(fs, gs, x)) % p
    # common root gives zero
    assert resultant(poly_mul([1, 1], [2, 1], p), poly_mul([1, 1], [3, 1], p), p) == 0


def test_gcd_divmod_deriv():
    p = 101
    a = poly_mul([1, 1], [2, 1], p)
    b = poly_mul([1, 1], [3, 1], p)
    assert poly_gcd(a, b, p) == [1, 1]
    q, r = poly_divmod(a, [1, 1], p)
    assert q == [2, 1] and not any(r)
    assert poly_deriv([5, 3, 2], p) == [3, 4]
