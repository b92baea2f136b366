"""Elliptic curves over F_p and their (2,2) embeddings into Q = P^1 x P^1.

Two models are used.  A :class:`WeierstrassCurve` carries the group law,
so linear equivalence of point divisors is decided by comparing sums
(Abel-Jacobi).  The map ``P -> (x(P), x(P + T))`` embeds it into Q as a
curve of class (2,2).

A :class:`QuadricElliptic` is a (2,2) curve on Q given only by its equation.
Divisor-class conditions there are imposed by residual intersection: the
points cut on the curve by a form of class (m, n) add up to the class
(m, n), so the last point of such a cut is determined by the others.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import Optional, Sequence

import numpy as np
from sympy import isprime

from .algebra import (
    field_inv,
    interpolate,
    mat_rank,
    nullspace,
    poly_deriv,
    poly_eval,
    poly_gcd,
    poly_mul,
    poly_trim,
    random_combination,
    resultant,
    sqrt_mod,
)
from .bn import Signature
from .geom import (
    BidegreeClass,
    DegenerateConfiguration,
    canon_q,
    eval_matrix_quadric,
    random_quadric_point,
)

EPoint = Optional[tuple[int, int]]  # None is the point at infinity O
O: EPoint = None


class NotOnCurve(ValueError):
    pass


class DegenerateTwist(ValueError):
    pass


# ---------------------------------------------------------------- group law

@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 = x^3 + A x + B over F_p."""

    p: int
    A: int
    B: int

    def __post_init__(self) -> None:
        if self.p <= 3 or not isprime(self.p):
            raise ValueError(f"need a prime p > 3, got {self.p}")
        object.__setattr__(self, "A", self.A % self.p)
        object.__setattr__(self, "B", self.B % self.p)
        if self.discriminant == 0:
            raise ValueError(f"singular curve A={self.A} B={self.B} mod {self.p}")

    @property
    def discriminant(self) -> int:
        return (4 * self.A**3 + 27 * self.B**2) % self.p

    @classmethod
    def random(cls, p: int, rng: np.random.Generator) -> "WeierstrassCurve":
        while True:
            A, B = (int(v) for v in rng.integers(0, p, size=2))
            if (4 * A**3 + 27 * B**2) % p:
                return cls(p, A, B)

    def rhs(self, x: int) -> int:
        return (x * x * x + self.A * x + self.B) % self.p

    def contains(self, P: EPoint) -> bool:
        if P is None:
            return True
        x, y = P
        return (y * y - self.rhs(x)) % self.p == 0

    def check(self, P: EPoint) -> EPoint:
        if not self.contains(P):
            raise NotOnCurve(f"{P} is not on {self}")
        return P

    def neg(self, P: EPoint) -> EPoint:
        if P is None:
            return None
        return (P[0], (-P[1]) % self.p)

    def add(self, P: EPoint, Q: EPoint) -> EPoint:
        self.check(P)
        self.check(Q)
        return self._add(P, Q)

    def _add(self, P: EPoint, Q: EPoint) -> EPoint:
        if P is None:
            return Q
        if Q is None:
            return P
        p = self.p
        (x1, y1), (x2, y2) = P, Q
        if x1 == x2:
            if (y1 + y2) % p == 0:
                return None
            lam = (3 * x1 * x1 + self.A) * field_inv(2 * y1, p) % p
        else:
            lam = (y2 - y1) * field_inv(x2 - x1, p) % p
        x3 = (lam * lam - x1 - x2) % p
        return (x3, (lam * (x1 - x3) - y1) % p)

    def sub(self, P: EPoint, Q: EPoint) -> EPoint:
        return self.add(P, self.neg(Q))

    def mul(self, k: int, P: EPoint) -> EPoint:
        self.check(P)
        if k < 0:
            k, P = -k, self.neg(P)
        acc: EPoint = None
        while k:
            if k & 1:
                acc = self._add(acc, P)
            P = self._add(P, P)
            k >>= 1
        return acc

    def lift_x(self, x: int) -> list[tuple[int, int]]:
        """The affine points with abscissa x (zero, one or two of them)."""
        r = sqrt_mod(self.rhs(x), self.p)
        if r is None:
            return []
        return sorted({(x % self.p, r), (x % self.p, (-r) % self.p)})

    def random_point(self, rng: np.random.Generator) -> tuple[int, int]:
        while True:
            pts = self.lift_x(int(rng.integers(0, self.p)))
            if pts:
                return pts[int(rng.integers(0, len(pts)))]

    def points(self) -> list[EPoint]:
        """All F_p-points, O first.  Only sensible for small p."""
        out: list[EPoint] = [None]
        for x in range(self.p):
            out.extend(self.lift_x(x))
        return out

    def order_of(self, P: EPoint) -> int:
        """Order of P, found by stepping up to the Hasse bound."""
        bound = self.p + 1 + 2 * isqrt(self.p) + 2
        acc = P
        for k in range(1, bound + 1):
            if acc is None:
                return k
            acc = self._add(acc, P)
        raise AssertionError("order exceeds the Hasse bound")


def ec_add(P: EPoint, Q: EPoint, E: WeierstrassCurve) -> EPoint:
    return E.add(P, Q)


def ec_neg(P: EPoint, E: WeierstrassCurve) -> EPoint:
    return E.neg(E.check(P))


def ec_mul(k: int, P: EPoint, E: WeierstrassCurve) -> EPoint:
    return E.mul(k, P)


def class_sum(points: Sequence[EPoint], E: WeierstrassCurve) -> EPoint:
    acc: EPoint = None
    for P in points:
        acc = E.add(acc, P)
    return acc


# ---------------------------------------------------------------- embedding

@dataclass(frozen=True)
class TwistParam:
    """The translation T used for the second ruling; requires 2T != O."""

    E: WeierstrassCurve
    T: tuple[int, int]

    def __post_init__(self) -> None:
        if self.T is None or not self.E.contains(self.T):
            raise NotOnCurve(f"T={self.T} is not an affine point of the curve")
        if self.E.mul(2, self.T) is None:
            raise DegenerateTwist("2T = O")

    @property
    def order(self) -> int:
        return self.E.order_of(self.T)

    @property
    def sigma_H(self) -> EPoint:
        return bidegree_class_sum((1, 1), self)


def random_twist(E: WeierstrassCurve, rng: np.random.Generator, min_order: int = 3) -> TwistParam:
    """A twist point whose order exceeds ``min_order``; resamples otherwise."""
    for _ in range(1000):
        T = E.random_point(rng)
        if E.mul(2, T) is not None and E.order_of(T) > min_order:
            return TwistParam(E, T)
    raise DegenerateTwist(f"no point of order > {min_order} found")


def _ruling(x: EPoint) -> tuple[int, int]:
    return (1, 0) if x is None else (x[0], 1)


def embed_22(E: WeierstrassCurve, T: TwistParam):
    """The map P -> (x(P), x(P + T)) into Q; O and -T go to the infinite fibers."""
    if T.E != E:
        raise ValueError("twist belongs to a different curve")

    def phi(P: EPoint):
        E.check(P)
        return canon_q((_ruling(P), _ruling(E._add(P, T.T))), E.p)

    return phi


def bidegree_class_sum(cls: BidegreeClass | tuple[int, int], T: TwistParam) -> EPoint:
    """Group-law sum of any divisor of O(m, n) restricted to the embedded curve."""
    m, n = cls
    E = T.E
    return E.mul(-2 * n, T.T)


def sigma_H(T: TwistParam) -> EPoint:
    return bidegree_class_sum((1, 1), T)


def class_is_H_multiple(points: Sequence[EPoint], E: WeierstrassCurve, T: TwistParam) -> bool:
    if len(points) % 4:
        return False
    k = len(points) // 4
    return class_sum(points, E) == E.mul(k, sigma_H(T))


def image_form(E: WeierstrassCurve, T: TwistParam, rng: np.random.Generator, count: int = 12):
    """The (2,2) equation of the embedded curve, from the kernel on sampled images."""
    phi = embed_22(E, T)
    pts = {phi(E.random_point(rng)) for _ in range(count)}
    K = nullspace(eval_matrix_quadric(sorted(pts), (2, 2), E.p), E.p)
    if K.shape[0] != 1:
        raise DegenerateConfiguration(f"image kernel has dimension {K.shape[0]}")
    return QuadricElliptic(K[0], E.p)


# ----------------------------------------------- single-curve collections

GROUP_SIZES = {"a": 2, "b": 2, "c": 6}


@dataclass
class EllipticCollection:
    """q's and constrained groups on one Weierstrass curve, with replay data."""

    sig: Signature
    E: WeierstrassCurve
    T: TwistParam
    seed: int
    q: list[EPoint]
    groups: list[tuple[str, list[EPoint]]]

    def epoints(self) -> list[EPoint]:
        return list(self.q) + [P for _, g in self.groups for P in g]

    def quadric_points(self) -> list:
        phi = embed_22(self.E, self.T)
        return [phi(P) for P in self.epoints()]

    def targets(self) -> dict[str, EPoint]:
        E, h = self.E, sigma_H(self.T)
        sq = class_sum(self.q, E)
        return {"a": E.sub(sq, h), "b": E.sub(E.mul(2, h), sq), "c": E.sub(E.mul(3, h), sq)}

    def verify(self) -> bool:
        tg = self.targets()
        return all(class_sum(g, self.E) == tg[kind] for kind, g in self.groups)

    def to_dict(self) -> dict:
        return {
            "sig": [self.sig.a, self.sig.b, self.sig.c],
            "p": self.E.p, "A": self.E.A, "B": self.E.B,
            "T": list(self.T.T), "seed": self.seed,
            "q": [list(P) if P else None for P in self.q],
            "groups": [[k, [list(P) if P else None for P in g]] for k, g in self.groups],
        }


def sample_elliptic_collection(sig: Signature, E: WeierstrassCurve, T: TwistParam,
                               seed: int, max_tries: int = 100) -> EllipticCollection:
    """All groups on the single curve E; the last point of each group solved by the group law."""
    if T.order <= 12 * (sig.b + sig.c):
        raise DegenerateTwist(f"order of T is {T.order}, too small for {sig}")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        seen: set = set()
        q = [E.random_point(rng) for _ in range(6)]
        seen.update(q)
        coll = EllipticCollection(sig, E, T, seed, q, [])
        tg = coll.targets()
        ok = len(seen) == 6
        for kind, count in (("a", sig.a), ("b", sig.b), ("c", sig.c)):
            for _ in range(count):
                free = [E.random_point(rng) for _ in range(GROUP_SIZES[kind] - 1)]
                last = E.sub(tg[kind], class_sum(free, E))
                grp = free + [last]
                if last is None or seen.intersection(grp) or len(set(grp)) != len(grp):
                    ok = False
                seen.update(grp)
                coll.groups.append((kind, grp))
        if ok:
            assert coll.verify()
            return coll
    raise DegenerateConfiguration(f"could not sample distinct points for {sig}")


# ------------------------------------------------------ curves of class (2,2)

def _form_grid(coeffs, cls) -> np.ndarray:
    m, n = cls
    return np.asarray(coeffs, dtype=np.int64).reshape(m + 1, n + 1)


def form_product(f, cls_f, g, cls_g, p: int) -> np.ndarray:
    """Coefficients of f*g in the monomial order of :func:`eval_matrix_quadric`."""
    F, G = _form_grid(f, cls_f), _form_grid(g, cls_g)
    out = np.zeros((F.shape[0] + G.shape[0] - 1, F.shape[1] + G.shape[1] - 1), dtype=object)
    for (i, k), c in np.ndenumerate(F):
        if c:
            out[i:i + G.shape[0], k:k + G.shape[1]] += int(c) * G.astype(object)
    return np.asarray(out.ravel() % p, dtype=np.int64)


def _y_coeffs(grid: np.ndarray, x: int, p: int) -> list[int]:
    """Coefficients in y (constant first) of the form at s = (x:1), t = (y:1)."""
    m, n = grid.shape[0] - 1, grid.shape[1] - 1
    out = []
    for j in range(n + 1):
        col = grid[:, n - j]
        out.append(poly_eval([int(c) for c in col[::-1]], x, p))
    return out


def affine_xy(pt, p: int) -> tuple[int, int]:
    (s0, s1), (t0, t1) = pt
    if s1 % p == 0 or t1 % p == 0:
        raise DegenerateConfiguration(f"{pt} lies on an infinite fiber")
    return s0 * field_inv(s1, p) % p, t0 * field_inv(t1, p) % p


def from_xy(x: int, y: int, p: int):
    return canon_q(((x, 1), (y, 1)), p)


@dataclass
class QuadricElliptic:
    """A curve of class (2,2) on Q given by its 9 coefficients."""

    coeffs: np.ndarray
    p: int
    grid: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.coeffs = np.asarray(self.coeffs, dtype=np.int64) % self.p
        self.grid = _form_grid(self.coeffs, (2, 2))

    def __call__(self, pt) -> int:
        return int(eval_matrix_quadric([pt], (2, 2), self.p)[0] @ self.coeffs % self.p)

    def contains(self, pt) -> bool:
        return self(pt) == 0

    def branch_quartic(self) -> list[int]:
        """Discriminant in y as a polynomial in x; interpolated from 5 values."""
        p = self.p
        xs = list(range(5))
        ys = []
        for x in xs:
            e0, e1, e2 = _y_coeffs(self.grid, x, p)
            ys.append((e1 * e1 - 4 * e0 * e2) % p)
        return poly_trim(interpolate(xs, ys, p))

    def smooth(self) -> bool:
        """Smooth iff the projection to the first ruling has 4 distinct branch points.

        The branch quartic is read as a binary form, so a degree drop of one
        is a simple branch point at infinity.
        """
        D = self.branch_quartic()
        return len(D) in (4, 5) and len(poly_gcd(D, poly_deriv(D, self.p), self.p)) == 1

    def random_point(self, rng: np.random.Generator):
        p = self.p
        while True:
            x = int(rng.integers(0, p))
            e0, e1, e2 = _y_coeffs(self.grid, x, p)
            if e2 == 0:
                continue
            r = sqrt_mod(e1 * e1 - 4 * e0 * e2, p)
            if not r:
                continue
            sign = 1 if rng.integers(0, 2) else -1
            y = (-e1 + sign * r) * field_inv(2 * e2, p) % p
            return from_xy(x, y, p)

    def residual(self, form, cls, known: Sequence) -> tuple:
        """The last point cut on this curve by ``form`` of class ``cls``.

        ``known`` lists the other 2m + 2n - 1 intersection points, all
        distinct, simple and off the infinite fibers.
        """
        p = self.p
        m, n = cls
        total = 2 * m + 2 * n
        if len(known) != total - 1:
            raise ValueError(f"need {total - 1} known points, got {len(known)}")
        G = _form_grid(form, cls) % p
        xy = [affine_xy(pt, p) for pt in known]
        xs = list(range(total + 1))
        vals = [resultant(_y_coeffs(self.grid, x, p), _y_coeffs(G, x, p), p, 2, n) for x in xs]
        R = interpolate(xs, vals, p)
        if R[total] == 0:
            raise DegenerateConfiguration("intersection reaches an infinite fiber")
        x = (-R[total - 1] * field_inv(R[total], p) - sum(a for a, _ in xy)) % p
        e0, e1, e2 = _y_coeffs(self.grid, x, p)
        if e2 == 0:
            raise DegenerateConfiguration("residual point on an infinite fiber")
        cands = set()
        for a, b in xy:
            if a == x:
                cands.add((-e1 * field_inv(e2, p) - b) % p)
        r = sqrt_mod(e1 * e1 - 4 * e0 * e2, p)
        if r is not None:
            for s in (r, -r):
                cands.add((-e1 + s) * field_inv(2 * e2, p) % p)
        hits = [y for y in cands if poly_eval(_y_coeffs(G, x, p), y, p) == 0]
        hits = [y for y in hits if (x, y) not in set(xy)]
        if len(hits) != 1:
            raise DegenerateConfiguration(f"residual point not isolated ({len(hits)} candidates)")
        return from_xy(x, hits[0], p)


def forms_through(points, cls, p: int) -> np.ndarray:
    return nullspace(eval_matrix_quadric(points, cls, p), p)


def form_outside(kernel: np.ndarray, curve: QuadricElliptic, cls, rng: np.random.Generator) -> np.ndarray:
    """A random element of ``kernel`` that is not a multiple of the curve's equation."""
    m, n = cls
    p = curve.p
    if m < 2 or n < 2:
        return random_combination(kernel, p, rng)
    cofactors = np.eye((m - 1) * (n - 1), dtype=np.int64)
    W = np.array([form_product(curve.coeffs, (2, 2), c, (m - 2, n - 2), p) for c in cofactors])
    base = mat_rank(W, p)
    for _ in range(20):
        v = random_combination(kernel, p, rng)
        if mat_rank(np.vstack([W, v]), p) > base:
            return v
    raise DegenerateConfiguration("kernel lies inside the multiples of the curve")


def random_curve_through(points, p: int, rng: np.random.Generator, tries: int = 50) -> QuadricElliptic:
    """A random smooth (2,2) curve through the given (at most 8) points."""
    K = forms_through(points, (2, 2), p)
    for _ in range(tries):
        curve = QuadricElliptic(random_combination(K, p, rng), p)
        if curve.coeffs.any() and curve.smooth():
            return curve
    raise DegenerateConfiguration("no smooth (2,2) curve through the points")


# --------------------------------------------------- per-group collections

@dataclass
class QuadricCollection:
    """An elliptic collection on Q: each group sits on its own (2,2) curve through the q's."""

    sig: Signature
    p: int
    seed: int
    q: list
    groups: list[tuple[str, QuadricElliptic, list]]

    @property
    def points(self) -> list:
        return list(self.q) + [pt for _, _, g in self.groups for pt in g]

    def verify(self) -> bool:
        """Membership of every group and distinctness of all points.

        The class conditions hold by construction: each last point is the
        residual of a form through the rest.
        """
        pts = self.points
        if len(set(pts)) != len(pts) or len(pts) != self.sig.quadric_points:
            return False
        return all(curve.contains(x) for _, curve, g in self.groups for x in list(self.q) + g)

    def to_dict(self) -> dict:
        return {
            "sig": [self.sig.a, self.sig.b, self.sig.c], "p": self.p, "seed": self.seed,
            "q": [list(map(list, pt)) for pt in self.q],
            "groups": [[k, curve.coeffs.tolist(), [list(map(list, pt)) for pt in g]]
                       for k, curve, g in self.groups],
        }


def _group_points(kind: str, curve: QuadricElliptic, q, rng: np.random.Generator) -> list:
    p = curve.p
    if kind == "b":
        # q's + p1 + p2 ~ 2H: the rest of a second (2,2) curve through q's and p1
        p1 = curve.random_point(rng)
        G = form_outside(forms_through(list(q) + [p1], (2, 2), p), curve, (2, 2), rng)
        return [p1, curve.residual(G, (2, 2), list(q) + [p1])]
    if kind == "a":
        # p1 + p2 ~ q's - H: take y1 + y2 ~ 2H - q's, then p1 + p2 + y1 + y2 ~ H
        y = _group_points("b", curve, q, rng)
        p1 = curve.random_point(rng)
        L = random_combination(forms_through(y + [p1], (1, 1), p), p, rng)
        return [p1, curve.residual(L, (1, 1), y + [p1])]
    if kind == "c":
        # q's + p1 + ... + p6 ~ 3H
        free = [curve.random_point(rng) for _ in range(5)]
        G = form_outside(forms_through(list(q) + free, (3, 3), p), curve, (3, 3), rng)
        return free + [curve.residual(G, (3, 3), list(q) + free)]
    raise ValueError(kind)


def sample_quadric_collection(sig: Signature, seed: int, p: int, max_tries: int = 50) -> QuadricCollection:
    """A general elliptic collection of signature ``sig`` on Q."""
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        try:
            q = [random_quadric_point(p, rng) for _ in range(6)]
            for pt in q:
                affine_xy(pt, p)
            coll = QuadricCollection(sig, p, seed, q, [])
            for kind, count in (("a", sig.a), ("b", sig.b), ("c", sig.c)):
                for _ in range(count):
                    curve = random_curve_through(q, p, rng)
                    coll.groups.append((kind, curve, _group_points(kind, curve, q, rng)))
        except (DegenerateConfiguration, ZeroDivisionError):
            continue
        if coll.verify():
            return coll
    raise DegenerateConfiguration(f"could not sample an elliptic collection for {sig}")


__all__ = [
    "EPoint", "O", "NotOnCurve", "DegenerateTwist", "WeierstrassCurve",
    "ec_add", "ec_neg", "ec_mul", "class_sum", "TwistParam", "random_twist",
    "embed_22", "bidegree_class_sum", "sigma_H", "class_is_H_multiple", "image_form",
    "EllipticCollection", "sample_elliptic_collection", "QuadricElliptic",
    "form_product", "forms_through", "form_outside", "random_curve_through",
    "QuadricCollection", "sample_quadric_collection", "affine_xy", "from_xy",
]
