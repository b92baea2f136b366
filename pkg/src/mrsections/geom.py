"""Projective primitives over F_p: points, plane conics, curves on P^1 x P^1.

Points are tuples of ints.  A plane point has 3 coordinates, a space point 4,
and a point of the quadric surface ``Q = P^1 x P^1`` is a pair of
2-coordinate tuples ``((s0, s1), (t0, t1))``.  Points are canonicalized by
scaling the first nonzero coordinate to 1.

A class ``(m, n)`` on Q is the zero locus of a form of degree m in
``(s0, s1)`` and degree n in ``(t0, t1)``.  Under the Segre embedding
``(s0 t0, s0 t1, s1 t0, s1 t1)`` a curve of class (m, n) has degree m + n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import NamedTuple, Sequence

import numpy as np

from .algebra import (
    det,
    field_inv,
    interpolate,
    mat_rank,
    nullspace,
    poly_eval,
    random_combination,
    resultant,
)


class DegenerateConfiguration(ValueError):
    pass


class BidegreeClass(NamedTuple):
    m: int
    n: int


def canon(pt: Sequence[int], p: int) -> tuple[int, ...]:
    v = [int(x) % p for x in pt]
    for x in v:
        if x:
            inv = field_inv(x, p)
            return tuple(y * inv % p for y in v)
    raise DegenerateConfiguration("zero vector is not a projective point")


def canon_q(pt, p: int):
    return (canon(pt[0], p), canon(pt[1], p))


def random_point(dim: int, p: int, rng: np.random.Generator) -> tuple[int, ...]:
    while True:
        v = rng.integers(0, p, size=dim + 1)
        if v.any():
            return canon(v.tolist(), p)


def random_quadric_point(p: int, rng: np.random.Generator):
    return (random_point(1, p, rng), random_point(1, p, rng))


def affine(t: int | None) -> tuple[int, int]:
    """P^1 point for an affine parameter; None is the point at infinity."""
    return (1, 0) if t is None else (t, 1)


# ----------------------------------------------------------------- monomials

@lru_cache(maxsize=None)
def monomials(nvars: int, deg: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of degree ``deg`` in lexicographically descending order."""
    if nvars == 1:
        return ((deg,),)
    out = []
    for e in range(deg, -1, -1):
        for rest in monomials(nvars - 1, deg - e):
            out.append((e,) + rest)
    return tuple(out)


def _eval_monomials(pt: Sequence[int], exps, p: int) -> list[int]:
    top = max((max(e) for e in exps), default=0)
    powers = []
    for x in pt:
        row = [1]
        for _ in range(top):
            row.append(row[-1] * x % p)
        powers.append(row)
    out = []
    for e in exps:
        v = 1
        for var, k in enumerate(e):
            v = v * powers[var][k] % p
        out.append(v)
    return out


def eval_matrix(points, deg: int, p: int, nvars: int) -> np.ndarray:
    exps = monomials(nvars, deg)
    rows = [_eval_monomials(canon(pt, p), exps, p) for pt in points]
    return np.array(rows, dtype=np.int64).reshape(len(rows), len(exps))


def eval_matrix_plane(points, m: int, p: int) -> np.ndarray:
    return eval_matrix(points, m, p, 3)


def eval_matrix_space(points, m: int, p: int) -> np.ndarray:
    return eval_matrix(points, m, p, 4)


def quadric_monomial_row(pt, cls: BidegreeClass | tuple[int, int], p: int) -> list[int]:
    m, n = cls
    s, t = canon_q(pt, p)
    left = _eval_monomials(s, monomials(2, m), p)
    right = _eval_monomials(t, monomials(2, n), p)
    return [x * y % p for x in left for y in right]


def eval_matrix_quadric(points, cls: BidegreeClass | tuple[int, int], p: int) -> np.ndarray:
    m, n = cls
    rows = [quadric_monomial_row(pt, cls, p) for pt in points]
    return np.array(rows, dtype=np.int64).reshape(len(rows), (m + 1) * (n + 1))


def eval_form_quadric(coeffs, cls, pt, p: int) -> int:
    return int(np.dot(np.asarray(coeffs, dtype=object), quadric_monomial_row(pt, cls, p)) % p)


def segre(pt, p: int) -> tuple[int, ...]:
    (s0, s1), (t0, t1) = pt
    return canon((s0 * t0, s0 * t1, s1 * t0, s1 * t1), p)


def intersection_number(c1, c2) -> int:
    return c1[0] * c2[1] + c1[1] * c2[0]


# --------------------------------------------------------------------- conics

@dataclass(frozen=True)
class Conic:
    """Ternary quadratic form; coefficients of x^2, xy, xz, y^2, yz, z^2."""

    coeffs: tuple[int, ...]
    p: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", canon(self.coeffs, self.p))

    def __call__(self, pt) -> int:
        x, y, z = pt
        a, b, c, d, e, f = self.coeffs
        return (a * x * x + b * x * y + c * x * z + d * y * y + e * y * z + f * z * z) % self.p

    def polar_matrix(self) -> np.ndarray:
        """Twice the symmetric matrix of the form (avoids halving)."""
        a, b, c, d, e, f = self.coeffs
        return np.array([[2 * a, b, c], [b, 2 * d, e], [c, e, 2 * f]], dtype=np.int64) % self.p

    @property
    def smooth(self) -> bool:
        return det(self.polar_matrix(), self.p) != 0

    def contains(self, pt) -> bool:
        return self(pt) == 0


def conic_through(points, p: int) -> Conic:
    pts = [canon(q, p) for q in points]
    if len(pts) != 5:
        raise ValueError("need exactly 5 points")
    ker = nullspace(eval_matrix_plane(pts, 2, p), p)
    if ker.shape[0] != 1:
        raise DegenerateConfiguration(f"conic through the points is not unique (kernel dim {ker.shape[0]})")
    return Conic(tuple(int(x) for x in ker[0]), p)


def conic_through_random(base_points, p: int, rng: np.random.Generator) -> Conic:
    """A random smooth conic through the given points (at most 4)."""
    pts = [canon(q, p) for q in base_points]
    while True:
        ker = nullspace(eval_matrix_plane(pts, 2, p), p)
        coeffs = random_combination(ker, p, rng)
        if not coeffs.any():
            continue
        C = Conic(tuple(int(x) for x in coeffs), p)
        if C.smooth:
            return C


def _cross(u, v, p: int) -> tuple[int, int, int]:
    return (
        (u[1] * v[2] - u[2] * v[1]) % p,
        (u[2] * v[0] - u[0] * v[2]) % p,
        (u[0] * v[1] - u[1] * v[0]) % p,
    )


@dataclass
class ConicParam:
    """Rational parametrization of a smooth conic by projection from a base point.

    The parameter ``t`` (``None`` for infinity) picks the direction
    ``u0 + t*u1`` through the base point; the image is the second
    intersection of that line with the conic.
    """

    conic: Conic
    base: tuple[int, ...]
    u0: tuple[int, ...] = field(init=False)
    u1: tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        p = self.conic.p
        self.base = canon(self.base, p)
        if not self.conic.smooth:
            raise DegenerateConfiguration("cannot parametrize a singular conic")
        if not self.conic.contains(self.base):
            raise DegenerateConfiguration("base point is not on the conic")
        basis = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        for u0, u1 in combinations(basis, 2):
            if det(np.array([self.base, u0, u1]), p):
                self.u0, self.u1 = u0, u1
                return
        raise AssertionError("unreachable")

    @property
    def p(self) -> int:
        return self.conic.p

    def _direction(self, t: int | None) -> tuple[int, ...]:
        if t is None:
            return self.u1
        return tuple((a + t * b) % self.p for a, b in zip(self.u0, self.u1))

    def __call__(self, t: int | None) -> tuple[int, ...]:
        p = self.p
        v = self._direction(t)
        polar = int(np.array(self.base) @ self.conic.polar_matrix() @ np.array(v)) % p
        cv = self.conic(v)
        return canon([(cv * b - polar * x) % p for b, x in zip(self.base, v)], p)

    def coordinate_polys(self) -> list[list[int]]:
        """Each coordinate of the (unnormalized) image as a polynomial of degree <= 2 in t."""
        p = self.p
        nodes = [0, 1, 2]
        vals = []
        for t in nodes:
            v = self._direction(t)
            polar = int(np.array(self.base) @ self.conic.polar_matrix() @ np.array(v)) % p
            cv = self.conic(v)
            vals.append([(cv * b - polar * x) % p for b, x in zip(self.base, v)])
        return [interpolate(nodes, [row[k] for row in vals], p) for k in range(3)]

    def param_of(self, pt) -> int | None:
        """Parameter of a point on the conic (the base maps from its tangent direction)."""
        p = self.p
        pt = canon(pt, p)
        if not self.conic.contains(pt):
            raise DegenerateConfiguration("point is not on the conic")
        if pt == self.base:
            line = tuple(int(x) for x in self.conic.polar_matrix() @ np.array(self.base) % p)
        else:
            line = _cross(self.base, pt, p)
        a = sum(x * y for x, y in zip(line, self.u0)) % p
        b = sum(x * y for x, y in zip(line, self.u1)) % p
        if b == 0:
            return None
        return (-a) * field_inv(b, p) % p

    def sample(self, rng: np.random.Generator) -> tuple[int, ...]:
        while True:
            q = self(int(rng.integers(0, self.p)))
            if q != self.base:
                return q


def conic_param(C: Conic, base) -> ConicParam:
    return ConicParam(C, base)


def fourth_intersection(C1: Conic, C2: Conic, common, p: int) -> tuple[int, ...]:
    """Remaining point of ``C1 & C2`` given three of their four common points."""
    common = [canon(q, p) for q in common]
    par = ConicParam(C2, common[0])
    polys = par.coordinate_polys()
    nodes = list(range(5))
    vals = [C1([poly_eval(c, t, p) for c in polys]) for t in nodes]
    f = interpolate(nodes, vals, p)
    if f[4] == 0:
        raise DegenerateConfiguration("an intersection sits at the parameter at infinity")
    known = [par.param_of(q) for q in common]
    if any(t is None for t in known):
        raise DegenerateConfiguration("a common point sits at the parameter at infinity")
    t4 = (-f[3] * field_inv(f[4], p) - sum(known)) % p
    q = par(t4)
    if q in common or not C1.contains(q):
        raise DegenerateConfiguration("conics are tangent at a common point")
    return q


# ---------------------------------------------------- rational curves on Q

SAMPLED_CLASSES = {(1, 0), (0, 1), (1, 2), (2, 1)}


@dataclass
class QuadricGraphCurve:
    """Graph parametrization u -> (phi1(u), phi2(u)) of a rational curve on Q.

    ``phi1``/``phi2`` are pairs of coefficient lists giving a P^1 point
    ``(f(u) : g(u))``.  Constant components describe ruling lines.
    """

    cls: BidegreeClass
    phi1: tuple[list[int], list[int]]
    phi2: tuple[list[int], list[int]]
    p: int

    def point(self, u: int):
        p = self.p
        s = (poly_eval(self.phi1[0], u, p), poly_eval(self.phi1[1], u, p))
        t = (poly_eval(self.phi2[0], u, p), poly_eval(self.phi2[1], u, p))
        return canon_q((s, t), self.p)

    def sample(self, count: int, rng: np.random.Generator) -> list:
        seen: list = []
        while len(seen) < count:
            u = int(rng.integers(0, self.p))
            try:
                pt = self.point(u)
            except DegenerateConfiguration:
                continue
            if pt not in seen:
                seen.append(pt)
        return seen

    def segre_points(self, count: int, rng: np.random.Generator) -> list[tuple[int, ...]]:
        return [segre(q, self.p) for q in self.sample(count, rng)]

    def form(self, rng: np.random.Generator) -> np.ndarray:
        """Coefficients of the defining form of class ``cls``, from a kernel computation."""
        m, n = self.cls
        pts = self.sample((m + 1) * (n + 1) + 4, rng)
        ker = nullspace(eval_matrix_quadric(pts, self.cls, self.p), self.p)
        if ker.shape[0] != 1:
            raise DegenerateConfiguration(f"curve form kernel has dim {ker.shape[0]}")
        return ker[0]


def _random_map(deg: int, p: int, rng: np.random.Generator) -> tuple[list[int], list[int]]:
    """Random P^1 -> P^1 map of exact degree ``deg`` (numerator, denominator)."""
    while True:
        f = rng.integers(0, p, size=deg + 1).tolist()
        g = rng.integers(0, p, size=deg + 1).tolist()
        if deg == 0:
            if f[0] or g[0]:
                return f, g
            continue
        if resultant(f, g, p, deg, deg) != 0:
            return f, g


def bidegree_curve_sample(cls, seed: int | np.random.Generator, p: int) -> QuadricGraphCurve:
    cls = BidegreeClass(*cls)
    if tuple(cls) not in SAMPLED_CLASSES:
        raise ValueError(f"unsupported class {tuple(cls)}; expected one of {sorted(SAMPLED_CLASSES)}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    ident = ([0, 1], [1])
    m, n = cls
    if cls == (1, 0):
        s = random_point(1, p, rng)
        return QuadricGraphCurve(cls, ([s[0]], [s[1]]), ident, p)
    if cls == (0, 1):
        t = random_point(1, p, rng)
        return QuadricGraphCurve(cls, ident, ([t[0]], [t[1]]), p)
    if cls == (1, 2):
        return QuadricGraphCurve(cls, _random_map(2, p, rng), ident, p)
    return QuadricGraphCurve(cls, ident, _random_map(2, p, rng), p)


# ---------------------------------------------------------- serialization

def dump_points(points, p: int, ambient: str) -> str:
    """Line format: ``# p=<p> ambient=<P2|P3|P1xP1>`` then one point per line."""
    lines = [f"# p={p} ambient={ambient}"]
    for pt in points:
        flat = [*pt[0], *pt[1]] if ambient == "P1xP1" else list(pt)
        lines.append(" ".join(str(int(x)) for x in flat))
    return "\n".join(lines) + "\n"


def load_points(text: str) -> tuple[int, str, list]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    header = dict(kv.split("=") for kv in lines[0].lstrip("#").split())
    p, ambient = int(header["p"]), header["ambient"]
    pts = []
    for ln in lines[1:]:
        xs = [int(x) for x in ln.split()]
        pts.append(((xs[0], xs[1]), (xs[2], xs[3])) if ambient == "P1xP1" else tuple(xs))
    return p, ambient, pts


def rank_of(points, deg_or_cls, p: int, ambient: str) -> int:
    if ambient == "P2":
        return mat_rank(eval_matrix_plane(points, deg_or_cls, p), p)
    if ambient == "P3":
        return mat_rank(eval_matrix_space(points, deg_or_cls, p), p)
    return mat_rank(eval_matrix_quadric(points, deg_or_cls, p), p)
