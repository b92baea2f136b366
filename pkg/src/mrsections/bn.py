"""Brill-Noether bookkeeping: rho, defining-curve signatures, thresholds, exception tables."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb


class OutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class CurveParams:
    d: int
    g: int
    r: int

    @property
    def rho(self) -> int:
        return rho(self)

    @property
    def bn_valid(self) -> bool:
        return rho(self) >= 0

    @property
    def nonspecial(self) -> bool:
        return self.d >= self.g + self.r


@dataclass(frozen=True, order=True)
class Signature:
    """Counts of 1-secant lines, 2-secant lines and 5-secant twisted cubics."""

    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if min(self.a, self.b, self.c) < 0:
            raise ValueError(f"negative signature {self}")

    @property
    def degree(self) -> int:
        return self.a + self.b + 3 * (self.c + 1)

    @property
    def genus(self) -> int:
        return self.b + 4 * self.c

    @property
    def plane_points(self) -> int:
        return self.a + self.b + 3 * self.c + 3

    @property
    def quadric_points(self) -> int:
        return 2 * self.a + 2 * self.b + 6 * (self.c + 1)

    @classmethod
    def parse(cls, text: str) -> "Signature":
        a, b, c = (int(x) for x in text.split(","))
        return cls(a, b, c)

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"


def rho(params: CurveParams) -> int:
    d, g, r = params.d, params.g, params.r
    return (r + 1) * d - r * g - r * (r + 1)


def defining_signatures(d: int, g: int) -> list[Signature]:
    """All signatures of degree d and genus g, largest c first."""
    if rho(CurveParams(d, g, 3)) < 0:
        raise OutOfRange(f"rho({d}, {g}, 3) < 0")
    out = []
    for c in range(g // 4, -1, -1):
        b = g - 4 * c
        a = d - 3 * (c + 1) - b
        if a >= 0:
            out.append(Signature(a, b, c))
    assert out, (d, g)
    return out


def plane_threshold(m: int, r: int) -> int:
    """Dimension of degree-m forms on a hyperplane of P^r."""
    if m < 0 or r < 1:
        raise OutOfRange(f"plane_threshold({m}, {r})")
    return comb(m + r - 1, r - 1)


def quadric_dim(m: int, n: int) -> int:
    if m < 0 or n < 0:
        raise OutOfRange(f"quadric_dim({m}, {n})")
    return (m + 1) * (n + 1)


@dataclass(frozen=True)
class Obstruction:
    obstructed: bool
    deficiency: int


def quadric_obstructed(params: CurveParams) -> Obstruction:
    """Whether the curve is forced onto a quadric whose trace breaks maximal rank in degree 2.

    The deficiency is ``(r(r+3) - (4d - 2g)) / 2``, the number of independent
    quadrics containing the curve; it is reported only when obstructed.
    """
    d, g, r = params.d, params.g, params.r
    slack = r * (r + 3) - (4 * d - 2 * g)
    hit = d < g + r and slack > 0
    return Obstruction(hit, slack // 2 if hit else 0)


def hyperplane_caveat(m: int, params: CurveParams) -> bool:
    """The region where the hyperplane statement is not claimed: m = 2 and d < g + r."""
    return m == 2 and params.d < params.g + params.r


QUADRIC_EXCEPTIONS: dict[tuple[int, int], frozenset[tuple[int, int]]] = {
    (2, 2): frozenset({(6, 4), (5, 2), (4, 1)}),
    (3, 3): frozenset({(6, 4), (8, 6), (7, 5)}),
    (2, 3): frozenset({(6, 4)}),
}

# the same exceptions expressed through signatures on the quadric side
QUADRIC_SIGNATURE_EXCEPTIONS: dict[tuple[int, int], frozenset[Signature]] = {
    (2, 2): frozenset({Signature(0, 0, 1), Signature(0, 2, 0), Signature(0, 1, 0)}),
    (3, 3): frozenset({Signature(0, 0, 1), Signature(0, 2, 1), Signature(0, 1, 1)}),
    (2, 3): frozenset({Signature(0, 0, 1)}),
}


def quadric_exceptions(m: int, n: int) -> frozenset[tuple[int, int]]:
    """(d, g) pairs where the quadric-section map fails maximal rank for class (m, n)."""
    key = (min(m, n), max(m, n))
    return QUADRIC_EXCEPTIONS.get(key, frozenset())


def exception_tables() -> dict:
    return {
        "quadric": [
            {"m": m, "n": n, "dg": sorted([list(x) for x in dg])}
            for (m, n), dg in QUADRIC_EXCEPTIONS.items()
        ],
        "quadric_signatures": [
            {"m": m, "n": n, "sigs": sorted([[s.a, s.b, s.c] for s in sigs])}
            for (m, n), sigs in QUADRIC_SIGNATURE_EXCEPTIONS.items()
        ],
        "hyperplane_caveat": "m == 2 and d < g + r",
        "plane_section": {"points": 6, "c": 1, "m": 2},
    }
