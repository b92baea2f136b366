"""Exact arithmetic over a prime field and dense linear algebra mod p.

Matrices are plain ``numpy.int64`` arrays whose entries are kept reduced
to ``[0, p)``.  The modulus is restricted to ``p < 2**31`` so a product
of two entries never overflows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sympy import isprime
from sympy.ntheory import sqrt_mod as _sympy_sqrt_mod

DEFAULT_PRIME = 10007
MAX_PRIME = 2**31


def field_inv(x: int, p: int) -> int:
    """Inverse of ``x`` modulo the prime ``p``."""
    x %= p
    if x == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(x, -1, p)


def sqrt_mod(x: int, p: int) -> int | None:
    """A square root of ``x`` mod ``p``, or None for a non-residue."""
    return _sympy_sqrt_mod(x % p, p)


@dataclass(frozen=True)
class PrimeField:
    p: int = DEFAULT_PRIME

    def __post_init__(self) -> None:
        if not (2 < self.p < MAX_PRIME) or not isprime(self.p):
            raise ValueError(f"modulus must be an odd prime below 2**31, got {self.p}")

    def inv(self, x: int) -> int:
        return field_inv(x, self.p)

    def sqrt(self, x: int) -> int | None:
        return sqrt_mod(x, self.p)

    def random(self, rng: np.random.Generator, nonzero: bool = False) -> int:
        lo = 1 if nonzero else 0
        return int(rng.integers(lo, self.p))

    def matrix(self, rows) -> np.ndarray:
        return as_matrix(rows, self.p)


def as_matrix(rows, p: int) -> np.ndarray:
    a = np.array(rows, dtype=object)
    if a.size == 0:
        return np.zeros(a.shape if a.ndim == 2 else (0, 0), dtype=np.int64)
    return np.asarray(a % p, dtype=np.int64)


def rref(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p and the pivot columns.

    Pivots are the first nonzero entry found scanning down each column.
    """
    A = np.array(M, dtype=np.int64) % p
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = (A[r] * field_inv(int(A[r, c]), p)) % p
        f = A[:, c].copy()
        f[r] = 0
        A = (A - np.outer(f, A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def mat_rank(M: np.ndarray, p: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def nullspace(M: np.ndarray, p: int) -> np.ndarray:
    """Basis of the right kernel of ``M``; one basis vector per row."""
    M = np.asarray(M, dtype=np.int64)
    cols = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, pivots = rref(M, p)
    free = [j for j in range(cols) if j not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = (-R[i, f]) % p
    return basis


def det(M: np.ndarray, p: int) -> int:
    A = np.array(M, dtype=np.int64) % p
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("determinant of a non-square matrix")
    result = 1
    for c in range(n):
        nz = np.flatnonzero(A[c:, c])
        if nz.size == 0:
            return 0
        piv = c + int(nz[0])
        if piv != c:
            A[[c, piv]] = A[[piv, c]]
            result = -result
        pv = int(A[c, c])
        result = result * pv % p
        inv = field_inv(pv, p)
        f = (A[c + 1:, c] * inv) % p
        A[c + 1:] = (A[c + 1:] - np.outer(f, A[c])) % p
    return result % p


def random_combination(basis: np.ndarray, p: int, rng: np.random.Generator) -> np.ndarray:
    coeffs = rng.integers(0, p, size=basis.shape[0])
    return (coeffs.astype(np.int64) @ basis) % p if basis.shape[0] else np.zeros(basis.shape[1], np.int64)


# -- univariate polynomials, coefficient lists with the constant term first --

def poly_eval(coeffs, x: int, p: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def poly_mul(a, b, p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def poly_trim(a) -> list[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def interpolate(xs, ys, p: int) -> list[int]:
    """Coefficients of the unique polynomial of degree < len(xs) through the nodes."""
    n = len(xs)
    out = [0] * n
    for i in range(n):
        basis = [1]
        denom = 1
        for j in range(n):
            if j != i:
                basis = poly_mul(basis, [(-xs[j]) % p, 1], p)
                denom = denom * (xs[i] - xs[j]) % p
        scale = ys[i] * field_inv(denom, p) % p
        for k, c in enumerate(basis):
            out[k] = (out[k] + scale * c) % p
    return out


def resultant(f, g, p: int, deg_f: int | None = None, deg_g: int | None = None) -> int:
    """Sylvester resultant of f and g taken at formal degrees ``deg_f``, ``deg_g``."""
    m = len(f) - 1 if deg_f is None else deg_f
    n = len(g) - 1 if deg_g is None else deg_g
    f = list(f) + [0] * (m + 1 - len(f))
    g = list(g) + [0] * (n + 1 - len(g))
    size = m + n
    if size == 0:
        return 1
    S = np.zeros((size, size), dtype=np.int64)
    for i in range(n):
        for k in range(m + 1):
            S[i, i + k] = f[m - k] % p
    for i in range(m):
        for k in range(n + 1):
            S[n + i, i + k] = g[n - k] % p
    return det(S, p)


def poly_divmod(a, b, p: int) -> tuple[list[int], list[int]]:
    a, b = poly_trim(a), poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = field_inv(b[-1], p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and r:
        k = len(r) - len(b)
        c = r[-1] * inv % p
        q[k] = c
        for i, bi in enumerate(b):
            r[k + i] = (r[k + i] - c * bi) % p
        r = poly_trim(r)
    return q, r


def poly_gcd(a, b, p: int) -> list[int]:
    """Monic gcd."""
    a, b = poly_trim(a), poly_trim(b)
    while b:
        a, b = b, poly_divmod(a, b, p)[1]
    if not a:
        return []
    inv = field_inv(a[-1], p)
    return [c * inv % p for c in a]


def poly_deriv(a, p: int) -> list[int]:
    return [k * c % p for k, c in enumerate(a)][1:]
