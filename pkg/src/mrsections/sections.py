"""Rank verifiers for plane and quadric sections of sampled point collections.

A rank claim about a *general* configuration is tested on random samples
over F_p.  The acceptance rule is asymmetric: a generic maximal-rank claim
is certified by any seed reaching the expected rank (we ask for 90% of
seeds), while a deficiency claim must hold on every seed.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .algebra import DEFAULT_PRIME, mat_rank
from .bn import QUADRIC_SIGNATURE_EXCEPTIONS, Signature
from .elliptic import (
    WeierstrassCurve,
    random_twist,
    sample_elliptic_collection,
    sample_quadric_collection,
)
from .games import ConicGameInstance, conic_reachable_closed
from .geom import (
    Conic,
    ConicParam,
    DegenerateConfiguration,
    bidegree_curve_sample,
    canon,
    conic_through_random,
    eval_matrix_plane,
    eval_matrix_quadric,
    eval_matrix_space,
    random_point,
)

MAJORITY = 0.9
CSV_COLUMNS = ["sig", "m", "n", "#S", "dim", "rank", "expected", "verdict", "seed", "p"]


class PreconditionError(ValueError):
    pass


def verdict_of(rank: int, expected: int) -> str:
    return "maximal" if rank == expected else f"deficient({expected - rank})"


@dataclass
class RankReport:
    """Ranks of one restriction map over a batch of seeds, with the prediction."""

    ambient: str
    sig: Signature
    degree: int | tuple[int, int]
    n_points: int
    source_dim: int
    expected: int
    predicted: str  # "maximal", "deficient" or "deficient(k)"
    seeds: list[int]
    ranks: list[int]
    prime: int

    def __post_init__(self) -> None:
        cap = min(self.source_dim, self.n_points)
        assert all(r <= cap for r in self.ranks), (self.ranks, cap)

    @property
    def rank(self) -> int:
        """Most common rank over the seeds (ties go to the larger rank)."""
        counts = Counter(self.ranks)
        return max(counts, key=lambda r: (counts[r], r))

    @property
    def verdict(self) -> str:
        return verdict_of(self.rank, self.expected)

    @property
    def disagreements(self) -> list[int]:
        return [s for s, r in zip(self.seeds, self.ranks) if r != self.rank]

    @property
    def passed(self) -> bool:
        if not self.ranks:
            return False
        if self.predicted == "maximal":
            hits = sum(r == self.expected for r in self.ranks)
            return hits >= 1 and hits >= MAJORITY * len(self.ranks)
        if self.predicted == "deficient":
            return all(r < self.expected for r in self.ranks)
        return all(verdict_of(r, self.expected) == self.predicted for r in self.ranks)

    def _mn(self) -> tuple[int, int | str]:
        if isinstance(self.degree, tuple):
            return self.degree
        return self.degree, ""

    def to_dict(self) -> dict:
        m, n = self._mn()
        return {
            "ambient": self.ambient,
            "sig": [self.sig.a, self.sig.b, self.sig.c],
            "m": m, "n": n if n != "" else None,
            "points": self.n_points, "dim": self.source_dim,
            "rank": self.rank, "expected": self.expected,
            "verdict": self.verdict, "predicted": self.predicted,
            "passed": self.passed, "seeds": list(self.seeds), "ranks": list(self.ranks),
            "disagreements": self.disagreements, "p": self.prime,
        }

    def csv_rows(self) -> list[list]:
        m, n = self._mn()
        return [
            [str(self.sig), m, n, self.n_points, self.source_dim, r, self.expected,
             verdict_of(r, self.expected), s, self.prime]
            for s, r in zip(self.seeds, self.ranks)
        ]


def reports_csv(reports: Iterable[RankReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rep in reports:
        w.writerows(rep.csv_rows())
    return buf.getvalue()


# ------------------------------------------------------------------ plane

@dataclass
class ConicCollection:
    sig: Signature
    p: int
    seed: int
    q: list[tuple[int, ...]]
    groups: list[tuple[Conic, list[tuple[int, ...]]]]
    free: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def points(self) -> list[tuple[int, ...]]:
        return list(self.q) + [x for _, g in self.groups for x in g] + list(self.free)

    def verify(self) -> bool:
        pts = self.points
        if len(set(pts)) != len(pts) or len(pts) != self.sig.plane_points:
            return False
        return all(C.smooth and all(C.contains(x) for x in list(self.q) + g) for C, g in self.groups)


def sample_conic_collection(sig: Signature, seed: int, p: int = DEFAULT_PRIME,
                            max_tries: int = 50) -> ConicCollection:
    """q1, q2, q3 plus three points on each of c random conics through them, plus a + b free points."""
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        q = [random_point(2, p, rng) for _ in range(3)]
        if mat_rank(np.array(q), p) < 3:
            continue
        groups = []
        for _ in range(sig.c):
            C = conic_through_random(q, p, rng)
            par = ConicParam(C, q[0])
            groups.append((C, [par.sample(rng) for _ in range(3)]))
        free = [random_point(2, p, rng) for _ in range(sig.a + sig.b)]
        coll = ConicCollection(sig, p, seed, q, groups, free)
        if coll.verify():
            return coll
    raise DegenerateConfiguration(f"could not sample a conic collection for {sig}")


def plane_prediction(sig: Signature, m: int) -> tuple[int, int, str]:
    """(source dim, expected max rank, predicted verdict) for degree-m plane sections."""
    dim = comb(m + 2, 2)
    expected = min(sig.plane_points, dim)
    if (sig.plane_points, sig.c, m) == (6, 1, 2):
        return dim, expected, "deficient(1)"
    return dim, expected, "maximal"


def verify_plane_section(sig: Signature, m: int, seeds: Sequence[int],
                         p: int = DEFAULT_PRIME) -> RankReport:
    if m < 1:
        raise PreconditionError("need m >= 1")
    dim, expected, predicted = plane_prediction(sig, m)
    ranks = []
    for s in seeds:
        pts = sample_conic_collection(sig, s, p).points
        ranks.append(mat_rank(eval_matrix_plane(pts, m, p), p))
    return RankReport("P2", sig, m, sig.plane_points, dim, expected, predicted, list(seeds), ranks, p)


def plane_signatures(max_points: int) -> list[Signature]:
    out = []
    for c in range((max_points - 3) // 3 + 1):
        for ab in range(max_points - 3 - 3 * c + 1):
            for a in range(ab + 1):
                out.append(Signature(a, ab - a, c))
    return sorted(out)


def plane_sweep(max_points: int = 12, m_max: int = 5, seeds: Sequence[int] = range(20),
                p: int = DEFAULT_PRIME) -> list[RankReport]:
    """Every signature with #S <= max_points against every 1 <= m <= m_max.

    One collection is sampled per (signature, seed) and reused for all m.
    """
    reports = []
    for sig in plane_signatures(max_points):
        mats = [sample_conic_collection(sig, s, p).points for s in seeds]
        for m in range(1, m_max + 1):
            dim, expected, predicted = plane_prediction(sig, m)
            ranks = [mat_rank(eval_matrix_plane(pts, m, p), p) for pts in mats]
            reports.append(RankReport("P2", sig, m, sig.plane_points, dim, expected, predicted,
                                      list(seeds), ranks, p))
    return reports


def random_conics_through(q, j: int, p: int, rng: np.random.Generator) -> list[Conic]:
    return [conic_through_random(q, p, rng) for _ in range(j)]


def specialize_conic_collection(tally: Sequence[int], b: int, c: int, conics: Sequence[Conic],
                                q, seed: int, p: int = DEFAULT_PRIME) -> list[tuple[int, ...]]:
    """Place tally[k] new points on conics[k] and off every earlier conic.

    ``q`` are the common base points of the conics; they are not counted.
    """
    tally = tuple(tally)
    if len(tally) != len(conics):
        raise ValueError("one conic per tally entry")
    if not conic_reachable_closed(ConicGameInstance(b, c, tally)):
        raise PreconditionError(f"{list(tally)} is not ({b},{c})-reachable")
    q = [canon(x, p) for x in q]
    rng = np.random.default_rng(seed)
    out: list[tuple[int, ...]] = []
    for k, (n_k, C) in enumerate(zip(tally, conics)):
        par = ConicParam(C, q[0])
        placed = 0
        while placed < n_k:
            x = par.sample(rng)
            if x in q or x in out or any(D.contains(x) for D in conics[:k]):
                continue
            out.append(x)
            placed += 1
    assert conic_counts(out, conics) == list(tally)
    return out


def conic_counts(points, conics: Sequence[Conic]) -> list[int]:
    """How many points lie on each conic and on no earlier one."""
    counts = [0] * len(conics)
    for x in points:
        for k, C in enumerate(conics):
            if C.contains(x):
                counts[k] += 1
                break
    return counts


# ---------------------------------------------------------------- quadric

def quadric_prediction(sig: Signature, m: int, n: int) -> tuple[int, int, str]:
    m, n = min(m, n), max(m, n)
    dim = (m + 1) * (n + 1)
    expected = min(sig.quadric_points, dim)
    excepted = sig in QUADRIC_SIGNATURE_EXCEPTIONS.get((m, n), frozenset())
    return dim, expected, "deficient" if excepted else "maximal"


def _quadric_points(sig: Signature, seed: int, p: int, sampler: str) -> list:
    if sampler == "groups":
        return sample_quadric_collection(sig, seed, p).points
    if sampler == "single":
        rng = np.random.default_rng([seed, 1])
        E = WeierstrassCurve.random(p, rng)
        T = random_twist(E, rng, 12 * (sig.b + sig.c))
        return sample_elliptic_collection(sig, E, T, seed).quadric_points()
    raise ValueError(f"unknown sampler {sampler!r}")


def verify_quadric_section(sig: Signature, cls: tuple[int, int], seeds: Sequence[int],
                           p: int = DEFAULT_PRIME, sampler: str = "groups") -> RankReport:
    """Rank of class-(m, n) forms on an elliptic collection of signature ``sig``.

    ``sampler="groups"`` puts every group on its own (2,2) curve through the
    q's; ``"single"`` puts all points on one curve, which is not general.
    """
    m, n = sorted(cls)
    if m == n and sig.a and sig.c:
        raise PreconditionError(f"m = n requires a = 0 or c = 0, got {sig}")
    dim, expected, predicted = quadric_prediction(sig, m, n)
    ranks = [mat_rank(eval_matrix_quadric(_quadric_points(sig, s, p, sampler), (m, n), p), p)
             for s in seeds]
    return RankReport("P1xP1", sig, (m, n), sig.quadric_points, dim, expected, predicted,
                      list(seeds), ranks, p)


def quadric_signatures(max_points: int) -> list[Signature]:
    """Signatures with a = 0 or c = 0 and 2a + 2b + 6(c + 1) <= max_points."""
    budget = max_points // 2 - 3
    out = []
    for c in range(budget // 3 + 1):
        for a in range(budget - 3 * c + 1):
            for b in range(budget - 3 * c - a + 1):
                if a == 0 or c == 0:
                    out.append(Signature(a, b, c))
    return sorted(out)


QUADRIC_TABLE = [
    ((2, 2), Signature(0, 0, 1)), ((2, 2), Signature(0, 2, 0)), ((2, 2), Signature(0, 1, 0)),
    ((3, 3), Signature(0, 0, 1)), ((3, 3), Signature(0, 2, 1)), ((3, 3), Signature(0, 1, 1)),
    ((2, 3), Signature(0, 0, 1)),
]


def quadric_sweep(max_points: int = 14, n_max: int = 4, seeds: Sequence[int] = range(20),
                  p: int = DEFAULT_PRIME, extra: Iterable[tuple[tuple[int, int], Signature]] = ()) -> list[RankReport]:
    """All (sig, m, n) with 1 <= m <= n <= n_max, plus the extra (class, sig) cells."""
    cells: dict[Signature, set[tuple[int, int]]] = {}
    for sig in quadric_signatures(max_points):
        cells[sig] = {(m, n) for m in range(1, n_max + 1) for n in range(m, n_max + 1)}
    for cls, sig in extra:
        cells.setdefault(sig, set()).add(tuple(sorted(cls)))
    reports = []
    for sig in sorted(cells):
        pts = [sample_quadric_collection(sig, s, p).points for s in seeds]
        for m, n in sorted(cells[sig]):
            dim, expected, predicted = quadric_prediction(sig, m, n)
            ranks = [mat_rank(eval_matrix_quadric(x, (m, n), p), p) for x in pts]
            reports.append(RankReport("P1xP1", sig, (m, n), sig.quadric_points, dim, expected,
                                      predicted, list(seeds), ranks, p))
    return reports


# ----------------------------------------------------------- secant ideals

SECANT_UNIONS = {"one-secant": (0, 1), "two-secant": (1, 0), "five-secant": (2, 1)}


def secant_ideal_dims(seed: int = 0, p: int = DEFAULT_PRIME, per_curve: int = 10) -> tuple[int, int, int]:
    """Conditions imposed on space quadrics by a (1,2) curve united with a line or cubic on Q."""
    rng = np.random.default_rng(seed)
    out = []
    for cls in SECANT_UNIONS.values():
        C = bidegree_curve_sample((1, 2), rng, p)
        D = bidegree_curve_sample(cls, rng, p)
        pts = sorted(set(C.segre_points(per_curve, rng)) | set(D.segre_points(per_curve, rng)))
        if len(pts) < 12:
            raise DegenerateConfiguration("too few distinct sample points")
        out.append(mat_rank(eval_matrix_space(pts, 2, p), p))
    return tuple(out)


__all__ = [
    "PreconditionError", "RankReport", "verdict_of", "reports_csv", "CSV_COLUMNS",
    "ConicCollection", "sample_conic_collection", "plane_prediction", "verify_plane_section",
    "plane_signatures", "plane_sweep", "random_conics_through", "specialize_conic_collection",
    "conic_counts", "quadric_prediction", "verify_quadric_section", "quadric_signatures",
    "QUADRIC_TABLE", "quadric_sweep", "SECANT_UNIONS", "secant_ideal_dims",
]
