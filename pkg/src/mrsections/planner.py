"""Degree/genus bookkeeping for the inductive construction of reducible curves.

Everything here is exact integer or rational arithmetic; no coordinates.
A plan is a sequence of components attached one at a time.  Attaching a
rational curve of degree k that meets the partial curve in s points adds
k to the degree, s - 1 to the genus and ``(r+1)k - r(s-1)`` to rho.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import ceil, comb
from typing import Iterator

from .bn import CurveParams, OutOfRange, rho


class InfeasiblePlan(ValueError):
    pass


def _rho(d: int, g: int, r: int) -> int:
    return rho(CurveParams(d, g, r))


def rho_increment(k: int, s: int, r: int) -> int:
    if s < 1:
        raise ValueError("an attachment meets the partial curve at least once")
    return (r + 1) * k - r * (s - 1)


def excess(d: int, g: int, r: int) -> int:
    """max(0, g + r - d): how far the curve is from being nonspecial."""
    return max(0, g + r - d)


# ----------------------------------------------------------------- bounds

def bounds_ione(params: CurveParams) -> tuple[Fraction, Fraction, bool]:
    d, g, r = params.d, params.g, params.r
    if _rho(d, g, r) < 0:
        raise OutOfRange(f"rho({d}, {g}, {r}) < 0")
    e = excess(d, g, r)
    b1 = Fraction(r - 1) + Fraction(d, r)
    b2 = Fraction((r - 1) * d, 2 * r)
    ok = r + e <= b1 and (r - 1) * ceil(Fraction(e, 2)) <= b2
    return b1, b2, ok


def bn_grid(r_range=range(3, 9), d_max: int = 60) -> Iterator[CurveParams]:
    """Every (d, g, r) with d <= d_max, g >= 0 and rho >= 0."""
    for r in r_range:
        for d in range(1, d_max + 1):
            g = 0
            while _rho(d, g, r) >= 0:
                yield CurveParams(d, g, r)
                g += 1


def bounds_sweep(r_range=range(3, 9), d_max: int = 60) -> tuple[int, list[CurveParams]]:
    count, bad = 0, []
    for params in bn_grid(r_range, d_max):
        count += 1
        if not bounds_ione(params)[2]:
            bad.append(params)
    return count, bad


def proof_inequalities(params: CurveParams) -> dict[str, bool | None]:
    """The two inequalities used in the gluing recursions; None off their domain.

    ``"lines"``: g < 2d + 1 - 3r when d >= 2r and rho > 0.
    ``"curves"``: g < 2d + 5 - 5r when d < g + r - 2 and rho >= 0.
    """
    d, g, r = params.d, params.g, params.r
    p = _rho(d, g, r)
    return {
        "lines": (g < 2 * d + 1 - 3 * r) if d >= 2 * r and p > 0 else None,
        "curves": (g < 2 * d + 5 - 5 * r) if d < g + r - 2 and p >= 0 else None,
    }


def inequality_sweep(r_range=range(3, 9), d_max: int = 60) -> tuple[dict[str, int], list]:
    checked = {"lines": 0, "curves": 0}
    bad = []
    for params in bn_grid(r_range, d_max):
        for name, ok in proof_inequalities(params).items():
            if ok is None:
                continue
            checked[name] += 1
            if not ok:
                bad.append((name, params))
    return checked, bad


# --------------------------------------------------------------- splitter

@dataclass(frozen=True)
class SplitResult:
    d1: int
    d2: int
    direction: str  # "surplus" (d >= binom(m+r-1, m)) or "deficit"
    constraints: tuple[tuple[str, bool], ...] = ()

    @property
    def ok(self) -> bool:
        return all(v for _, v in self.constraints)


def split_constraints(d1: int, d2: int, r: int, m: int, direction: str) -> tuple[tuple[str, bool], ...]:
    d = d1 + d2
    c1, c2 = comb(m + r - 2, m - 1), comb(m + r - 2, m)
    out = [("d1 >= r - 1 + d/r", d1 >= Fraction(r - 1) + Fraction(d, r))]
    if m == 3:
        out.append(("d2 >= (r - 1)d/(2r)", d2 >= Fraction((r - 1) * d, 2 * r)))
    else:
        out.append(("d2 >= r - 1", d2 >= r - 1))
    if direction == "surplus":
        out += [(f"d1 >= {c1}", d1 >= c1), (f"d2 >= {c2}", d2 >= c2)]
    else:
        out += [(f"d1 <= {c1}", d1 <= c1), (f"d2 <= {c2}", d2 <= c2)]
    return tuple(out)


_WALKS: dict[tuple[int, int, str], list[tuple[int, int]]] = {}


def _walk(r: int, m: int, direction: str, d: int) -> tuple[int, int]:
    """Extend the cached walk from the base split until it reaches degree d."""
    base = comb(m + r - 1, m)
    key = (r, m, direction)
    path = _WALKS.setdefault(key, [(comb(m + r - 2, m - 1), comb(m + r - 2, m))])
    step = 1 if direction == "surplus" else -1
    while abs(d - base) >= len(path):
        d1, d2 = path[-1]
        # surplus grows d2 first, deficit shrinks d1 first
        moves = [(d1, d2 + 1), (d1 + 1, d2)] if step > 0 else [(d1 - 1, d2), (d1, d2 - 1)]
        for a, b in moves:
            if all(v for _, v in split_constraints(a, b, r, m, direction)):
                path.append((a, b))
                break
        else:
            raise AssertionError(f"no valid step from {(d1, d2)} (r={r}, m={m})")
    return path[abs(d - base)]


def split_degrees(d: int, r: int, m: int) -> SplitResult:
    if r < 4 or m < 3:
        raise OutOfRange(f"split needs r >= 4 and m >= 3, got r={r}, m={m}")
    if d < 2 * r + 2:
        raise OutOfRange(f"d = {d} < 2r + 2; use small_split")
    direction = "surplus" if d >= comb(m + r - 1, m) else "deficit"
    d1, d2 = _walk(r, m, direction, d)
    assert d1 + d2 == d
    res = SplitResult(d1, d2, direction, split_constraints(d1, d2, r, m, direction))
    assert res.ok, res
    return res


def small_split(d: int, r: int) -> tuple[int, int]:
    if d not in (2 * r, 2 * r + 1):
        raise OutOfRange(f"small split only for d in {{2r, 2r+1}}, got {d}")
    return r + 1, d - r - 1


def split_sweep(r_range=range(4, 9), m_range=range(3, 7), extra: int = 20) -> tuple[int, list]:
    count, bad = 0, []
    for r in r_range:
        for m in m_range:
            for d in range(2 * r + 2, comb(m + r - 1, m) + extra + 1):
                count += 1
                try:
                    res = split_degrees(d, r, m)
                except AssertionError as exc:
                    bad.append((d, r, m, str(exc)))
                    continue
                if not res.ok or res.d1 + res.d2 != d or min(res.d1, res.d2) < 1:
                    bad.append((d, r, m, res))
    return count, bad


# ----------------------------------------------------------- construction

@dataclass
class PlanNode:
    kind: str  # RNC, SecantLine, SecantRNC, Canonical
    label: str
    side: str  # X (ambient) or Y (hyperplane)
    k: int  # degree
    s: int  # points met on the partial curve; 0 for the first component
    meets: tuple[str, ...] = ()
    genus: int = 0  # own genus, nonzero only for a canonical curve

    @property
    def spec(self) -> str:
        if self.kind == "RNC":
            return f"RNC({self.k})"
        if self.kind == "SecantLine":
            return f"SecantLine({self.s})"
        if self.kind == "Canonical":
            return f"Canonical({self.k})"
        return f"SecantRNC({self.k}, {self.s})"

    def deltas(self, r: int) -> tuple[int, int, int]:
        if self.s == 0:
            return self.k, self.genus, _rho(self.k, self.genus, r)
        dg = self.genus + self.s - 1
        return self.k, dg, (r + 1) * self.k - r * dg


@dataclass
class ConstructionPlan:
    d: int
    g: int
    r: int
    d1: int
    d2: int
    variant: str
    nodes: list[PlanNode] = field(default_factory=list)
    assumptions: list[str] = field(default_factory=list)
    line_steps: int = 0
    rnc_steps: int = 0

    def ledger(self) -> list[dict]:
        rows, D, G, R = [], 0, 0, 0
        for nd in self.nodes:
            dd, dg, dr = nd.deltas(self.r)
            D, G, R = D + dd, G + dg, R + dr
            rows.append({"label": nd.label, "node": nd.spec, "side": nd.side,
                         "ddeg": dd, "dgenus": dg, "drho": dr, "deg": D, "genus": G, "rho": R})
        return rows

    def totals(self) -> tuple[int, int, int]:
        rows = self.ledger()
        last = rows[-1] if rows else {"deg": 0, "genus": 0, "rho": 0}
        return last["deg"], last["genus"], last["rho"]

    def side_degrees(self) -> tuple[int, int]:
        x = sum(n.k for n in self.nodes if n.side == "X")
        return x, sum(n.k for n in self.nodes if n.side == "Y")

    @property
    def nonspecial_X(self) -> bool:
        """The ceiling display: d2 >= (r-1) * ceil(max(0, g+r-d)/2)."""
        return self.d2 >= (self.r - 1) * ceil(Fraction(excess(self.d, self.g, self.r), 2))

    def check(self) -> bool:
        D, G, R = self.totals()
        return (D, G) == (self.d, self.g) and R == _rho(self.d, self.g, self.r) \
            and self.side_degrees() == (self.d1, self.d2)

    def to_dict(self) -> dict:
        return {
            "d": self.d, "g": self.g, "r": self.r, "d1": self.d1, "d2": self.d2,
            "variant": self.variant, "rho": _rho(self.d, self.g, self.r),
            "nodes": [dict(asdict(n), spec=n.spec) for n in self.nodes],
            "ledger": self.ledger(), "nonspecial_X": self.nonspecial_X,
            "line_steps": self.line_steps, "rnc_steps": self.rnc_steps,
            "assumptions": self.assumptions, "ok": self.check(),
        }

    def to_dot(self) -> str:
        lines = [f'graph plan {{', f'  label="d={self.d} g={self.g} r={self.r}";']
        for side in ("X", "Y"):
            lines.append(f'  subgraph cluster_{side} {{ label="{side}";')
            for n in self.nodes:
                if n.side == side:
                    lines.append(f'    "{n.label}" [label="{n.label}\\n{n.spec}"];')
            lines.append("  }")
        for n in self.nodes:
            for other in n.meets:
                lines.append(f'  "{n.label}" -- "{other}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


class _Builder:
    def __init__(self, plan: ConstructionPlan):
        self.plan = plan
        self.count: dict[str, int] = {}

    def add(self, kind: str, prefix: str, side: str, k: int, s: int, meets=(), genus: int = 0) -> str:
        i = self.count.get(prefix, 0)
        self.count[prefix] = i + 1
        label = prefix if i == 0 else f"{prefix}.{i}"
        self.plan.nodes.append(PlanNode(kind, label, side, k, s, tuple(meets), genus))
        return label

    def last(self, side: str) -> str:
        for n in reversed(self.plan.nodes):
            if n.side == side:
                return n.label
        return self.plan.nodes[-1].label


def _need(ok: bool, name: str) -> None:
    if not ok:
        raise InfeasiblePlan(name)


def _check_split(d: int, g: int, r: int, d1: int, d2: int) -> None:
    _need(d1 + d2 == d, "d1 + d2 = d")
    _need(_rho(d, g, r) >= 0, f"rho({d}, {g}, {r}) >= 0")
    _need(d1 >= r + excess(d, g, r), f"d1 >= r + max(0, g + r - d) at (d, g) = ({d}, {g})")
    _need(d2 >= r - 1, f"d2 >= r - 1 at (d, g) = ({d}, {g})")


def _plan_a(b: _Builder, d: int, g: int, r: int, d1: int, d2: int) -> None:
    """Recursion for d >= g + r - 2, adding one secant line per step."""
    _check_split(d, g, r, d1, d2)
    _need(d >= g + r - 2, "d >= g + r - 2")
    if d == 2 * r - 1:
        _need(g + 1 <= r, "g + 1 <= r")
        x = b.add("RNC", "R", "X", r, 0)
        b.add("SecantRNC", "Y0", "Y", r - 1, g + 1, [x])
        return
    if _rho(d, g, r) == 0:
        if (d, g) == (2 * r, r + 1):
            x = b.add("RNC", "R", "X", r, 0)
            L = b.add("SecantLine", "L", "X", 1, 2, [x])
            b.add("SecantRNC", "Y0", "Y", r - 1, r + 1, [x, L])
            return
        _need((d, g) == (3 * r, 2 * r + 2), "rho = 0 base case is (2r, r+1) or (3r, 2r+2)")
        if d2 == r - 1:
            C = b.add("Canonical", "C", "X", 2 * r, 0, genus=r + 1)
            L = b.add("SecantLine", "L", "X", 1, 1, [C])
            b.add("SecantRNC", "Y0", "Y", r - 1, r + 2, [C, L])
            return
        _need(d1 >= r + 2, "d1 >= r + 2")
        R1 = b.add("RNC", "R1", "X", r, 0)
        L0 = b.add("SecantLine", "L0", "X", 1, 2, [R1])
        R2 = b.add("SecantRNC", "R2", "Y", r - 1, r + 1, [R1, L0])
        L1 = b.add("SecantLine", "L1", "X", 1, 2, [R1, L0])
        L2 = b.add("SecantLine", "L2", "Y", 1, 3, [R2, L1])
        if d1 > r + 2:
            b.add("SecantRNC", "N1", "X", d1 - r - 2, d1 - r - 1, [L1, R1])
        if d2 > r:
            b.add("SecantRNC", "N2", "Y", d2 - r, d2 - r + 1, [L2, R2])
        b.plan.assumptions.append("L1 and L2 can be chosen consistently")
        return
    _need(d >= 2 * r, "d >= 2r in the inductive step")
    g1 = max(0, g - 1)
    e = excess(d, g, r)
    for a, c in ((d1 - 1, d2), (d1, d2 - 1)):
        if a >= r + e and c >= r - 1:
            break
    else:
        raise InfeasiblePlan(f"no smaller split from {(d1, d2)}")
    _plan_a(b, d - 1, g1, r, a, c)
    side = "Y" if a == d1 else "X"
    s = 1 if g1 == g else 2
    b.add("SecantLine", "L", side, 1, s, [b.last(side)])


def _plan_b(b: _Builder, d: int, g: int, r: int, d1: int, d2: int) -> None:
    """Recursion for d < g + r - 2, adding r to the degree and r + 1 to the genus per step."""
    if d >= g + r - 2:
        _plan_a(b, d, g, r, d1, d2)
        return
    _check_split(d, g, r, d1, d2)
    e = excess(d, g, r)
    for a, c in ((d1 - 1, d2 - r + 1), (d1 - r, d2)):
        if a >= r + e - 1 and c >= r - 1:
            break
    else:
        raise InfeasiblePlan(f"no smaller split from {(d1, d2)}")
    _plan_b(b, d - r, g - r - 1, r, a, c)
    if a == d1 - 1:
        L = b.add("SecantLine", "L", "X", 1, 1, [b.last("X")])
        b.add("SecantRNC", "R2", "Y", r - 1, r + 2, [b.last("Y"), L])
        b.plan.line_steps += 1
    else:
        b.add("SecantRNC", "R1", "X", r, r + 2, [b.last("X")])
        b.plan.rnc_steps += 1


def _plan_m2(b: _Builder, d: int, g: int, r: int, d1: int, d2: int) -> None:
    """Nonspecial split with d1 <= r: rational X, Y built from R2 and secant lines."""
    _need(d1 + d2 == d, "d1 + d2 = d")
    _need(d >= g + r, "d >= g + r")
    _need(1 <= d1 <= r, "1 <= d1 <= r")
    _need(d2 >= r - 1, "d2 >= r - 1")
    k = min(d1, g + 1)
    n2, n1 = g + 1 - k, d2 + k - g - r
    _need(n2 >= 0 and n1 >= 0, "secant line counts are nonnegative")
    R2 = b.add("RNC", "R2", "Y", r - 1, 0)
    L = b.add("SecantLine", "L", "X", 1, 1, [R2])
    if d1 > 1:
        b.add("SecantRNC", "R1", "X", d1 - 1, k, [L, R2])
    for _ in range(n2):
        b.add("SecantLine", "M", "Y", 1, 2, [R2])
    for _ in range(n1):
        b.add("SecantLine", "N", "Y", 1, 1, [R2])


VARIANTS = ("nonspecial-m2", "general", "special")


def construction_plan(d: int, g: int, r: int, d1: int, d2: int, variant: str = "special") -> ConstructionPlan:
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    if _rho(d, g, r) < 0:
        raise InfeasiblePlan(f"rho({d}, {g}, {r}) >= 0")
    plan = ConstructionPlan(d, g, r, d1, d2, variant)
    b = _Builder(plan)
    if variant == "nonspecial-m2":
        _plan_m2(b, d, g, r, d1, d2)
    elif variant == "general":
        _plan_a(b, d, g, r, d1, d2)
    else:
        _plan_b(b, d, g, r, d1, d2)
    assert plan.check(), plan.to_dict()
    return plan


def admissible_splits(d: int, g: int, r: int) -> list[tuple[int, int]]:
    lo = r + excess(d, g, r)
    return [(d1, d - d1) for d1 in range(lo, d - r + 2)]


def plan_sweep(r_range=range(3, 9), d_max: int = 30) -> tuple[int, list]:
    """Run the special variant for every admissible split on the grid; check the ledgers."""
    count, bad = 0, []
    for params in bn_grid(r_range, d_max):
        d, g, r = params.d, params.g, params.r
        for d1, d2 in admissible_splits(d, g, r):
            count += 1
            try:
                plan = construction_plan(d, g, r, d1, d2, "special")
            except (InfeasiblePlan, AssertionError) as exc:
                bad.append((d, g, r, d1, d2, str(exc)))
                continue
            if not plan.check():
                bad.append((d, g, r, d1, d2, "ledger"))
    return count, bad


# -------------------------------------------------------------- induction

LEAF_REASONS = ("m <= 2", "r = 3", "d <= 2r - 1")


@dataclass
class ScheduleNode:
    d: int
    g: int | None
    r: int
    m: int
    leaf: str | None = None
    split: tuple[int, int] | None = None
    rule: str | None = None
    children: list["ScheduleNode"] = field(default_factory=list)

    def leaves(self) -> Iterator["ScheduleNode"]:
        if self.leaf:
            yield self
        for c in self.children:
            yield from c.leaves()

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def to_dict(self) -> dict:
        out = {"d": self.d, "g": self.g, "r": self.r, "m": self.m}
        if self.leaf:
            out["leaf"] = self.leaf
        else:
            out.update(split=list(self.split), rule=self.rule,
                       children=[c.to_dict() for c in self.children])
        return out


def _legal_leaf(n: ScheduleNode) -> bool:
    return (n.leaf == "m <= 2" and n.m <= 2) or (n.leaf == "r = 3" and n.r == 3) \
        or (n.leaf == "d <= 2r - 1" and n.d <= 2 * n.r - 1)


def _schedule(d: int, g: int | None, r: int, m: int) -> ScheduleNode:
    node = ScheduleNode(d, g, r, m)
    if m <= 2:
        node.leaf = "m <= 2"
    elif r == 3:
        node.leaf = "r = 3"
    elif d <= 2 * r - 1:
        node.leaf = "d <= 2r - 1"
    else:
        if d <= 2 * r + 1:
            d1, d2 = small_split(d, r)
            node.rule = "small"
        else:
            res = split_degrees(d, r, m)
            d1, d2 = res.d1, res.d2
            node.rule = res.direction
        node.split = (d1, d2)
        left, right = _schedule(d1, None, r, m - 1), _schedule(d2, None, r - 1, m)
        assert left.m + left.r < m + r and right.m + right.r < m + r
        node.children = [left, right]
    return node


def induction_schedule(d: int, g: int, r: int, m: int) -> ScheduleNode:
    """Split (d, g, r, m) down to base cases; child genera are left symbolic (None)."""
    if r < 3 or m < 1:
        raise OutOfRange(f"need r >= 3 and m >= 1, got r={r}, m={m}")
    if _rho(d, g, r) < 0:
        raise OutOfRange(f"rho({d}, {g}, {r}) < 0")
    root = _schedule(d, g, r, m)
    assert all(_legal_leaf(n) for n in root.leaves())
    return root


def schedule_sweep(r_range=range(4, 9), m_range=range(3, 7), extra: int = 20) -> tuple[int, list]:
    count, bad = 0, []
    for r in r_range:
        for m in m_range:
            for d in range(2 * r + 2, comb(m + r - 1, m) + extra + 1):
                count += 1
                try:
                    root = induction_schedule(d, 0, r, m)
                except (AssertionError, OutOfRange) as exc:
                    bad.append((d, r, m, str(exc)))
                    continue
                if not all(_legal_leaf(n) for n in root.leaves()):
                    bad.append((d, r, m, "illegal leaf"))
    return count, bad


__all__ = [
    "InfeasiblePlan", "rho_increment", "excess", "bounds_ione", "bn_grid", "bounds_sweep",
    "proof_inequalities", "inequality_sweep", "SplitResult", "split_constraints",
    "split_degrees", "small_split", "split_sweep", "PlanNode", "ConstructionPlan",
    "VARIANTS", "construction_plan", "admissible_splits", "plan_sweep", "ScheduleNode",
    "LEAF_REASONS", "induction_schedule", "schedule_sweep",
]
