"""The dot game on conics and the signed-symbol game on elliptic curves.

Conic game: a tally ``(n_1, ..., n_j)`` of dots in ordered columns is
``(b, c)``-reachable when it can be produced by ``b`` single dots plus
``c`` moves drawn from

* M3: one dot in each of three distinct columns,
* M4: one dot in column ``i`` and two in column ``j`` with ``i < j``,
* M5: three dots in one column.

Elliptic game: ``a`` check marks, ``b`` minus signs, then ``c`` moves
placing ``-, -, +`` (three columns, ``+`` in the largest index), ``-`` and
``+-`` (two columns, the pair in the larger index) or ``+--`` in one
column.  A finished column is accepted when it holds a check mark or its
minus and plus counts differ; the first column instead fails exactly
when it has one more minus than plus and no check mark.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Sequence

DEFAULT_SCAN_CAP = 6


class InvalidInstance(ValueError):
    pass


def _check_target(target: Sequence[int]) -> tuple[int, ...]:
    t = tuple(int(x) for x in target)
    if any(x <= 0 for x in t):
        raise InvalidInstance(f"target entries must be positive: {list(t)}")
    return t


@dataclass(frozen=True)
class ConicGameInstance:
    b: int
    c: int
    target: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "target", _check_target(self.target))
        if self.b < 0 or self.c < 0:
            raise InvalidInstance("b and c must be nonnegative")
        if sum(self.target) != self.b + 3 * self.c:
            raise InvalidInstance(
                f"sum {sum(self.target)} of {list(self.target)} != b + 3c = {self.b + 3 * self.c}"
            )


@dataclass(frozen=True)
class EllipticGameInstance:
    a: int
    b: int
    c: int
    target: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "target", _check_target(self.target))
        if min(self.a, self.b, self.c) < 0:
            raise InvalidInstance("a, b and c must be nonnegative")
        if sum(self.target) != self.a + self.b + 3 * self.c:
            raise InvalidInstance(
                f"sum {sum(self.target)} of {list(self.target)} != a + b + 3c = "
                f"{self.a + self.b + 3 * self.c}"
            )


# ---------------------------------------------------------------- conic game

def _conic_moves(n: int) -> Iterator[tuple[str, tuple[int, ...], tuple[int, ...]]]:
    """(name, columns, dots per column) for every three-dot move on n columns."""
    for i in range(n):
        yield "M5", (i,), (3,)
    for i, j in combinations(range(n), 2):
        yield "M4", (i, j), (1, 2)
    for cols in combinations(range(n), 3):
        yield "M3", cols, (1, 1, 1)


def _apply(res: tuple[int, ...], cols, dots) -> tuple[int, ...] | None:
    out = list(res)
    for col, k in zip(cols, dots):
        out[col] -= k
        if out[col] < 0:
            return None
    return tuple(out)


@lru_cache(maxsize=None)
def _conic_solvable(res: tuple[int, ...], c: int) -> bool:
    # residual with zero columns removed; the b single dots fill whatever is left
    if c == 0:
        return True
    for _, cols, dots in _conic_moves(len(res)):
        nxt = _apply(res, cols, dots)
        if nxt is not None and _conic_solvable(tuple(x for x in nxt if x), c - 1):
            return True
    return False


def conic_reachable_bruteforce(inst: ConicGameInstance) -> bool:
    return _conic_solvable(inst.target, inst.c)


def conic_witness(inst: ConicGameInstance) -> list[tuple[str, tuple[int, ...]]] | None:
    """A move list realizing the tally, with 0-based column indices, or None.

    Single-dot moves come last, one ``("M2", (col,))`` per dot.
    """
    if not conic_reachable_bruteforce(inst):
        return None
    res = inst.target
    moves: list[tuple[str, tuple[int, ...]]] = []
    for c in range(inst.c, 0, -1):
        for name, cols, dots in _conic_moves(len(res)):
            nxt = _apply(res, cols, dots)
            if nxt is not None and _conic_solvable(tuple(x for x in nxt if x), c - 1):
                moves.append((name, cols))
                res = nxt
                break
    for col, left in enumerate(res):
        moves.extend([("M2", (col,))] * left)
    return moves


def conic_reachable_closed(inst: ConicGameInstance) -> bool:
    t, j = inst.target, len(inst.target)
    if inst.b == 0 and j == 2 and t[1] == 1:
        return False
    if inst.b == 0 and j == 3 and t[1] == 2 and t[2] == 1:
        return False
    return True


def _conic_reachable_with_zeros(seq: Sequence[int], b: int, c: int) -> bool:
    # zero columns never receive a move, so they only shift indices
    if sum(seq) != b + 3 * c:
        return False
    return _conic_solvable(tuple(x for x in seq if x), c)


def _bounded_sequences(total: int, lo: Sequence[int], hi: Sequence[int | None]) -> Iterator[tuple[int, ...]]:
    if not lo:
        if total == 0:
            yield ()
        return
    rest_lo = sum(lo[1:])
    top = total - rest_lo
    if hi[0] is not None:
        top = min(top, hi[0])
    for x in range(lo[0], top + 1):
        for tail in _bounded_sequences(total - x, lo[1:], hi[1:]):
            yield (x,) + tail


def updown_sequence(bounds: Sequence[int], b: int, c: int, direction: str) -> tuple[int, ...] | None:
    """A (b, c)-reachable sequence of the same length dominating or dominated by ``bounds``.

    Entries may be zero.  Candidates are scanned in lexicographic order, so
    the result is the lexicographically smallest valid sequence.
    """
    total = b + 3 * c
    j = len(bounds)
    if direction == "dominating":
        lo, hi = list(bounds), [None] * j
    elif direction == "dominated":
        lo, hi = [0] * j, list(bounds)
    else:
        raise ValueError(f"direction must be 'dominating' or 'dominated', got {direction!r}")
    for seq in _bounded_sequences(total, lo, hi):
        if _conic_reachable_with_zeros(seq, b, c):
            return seq
    return None


# ------------------------------------------------------------- elliptic game

# per-column state: (remaining capacity, balance); balance None once a check mark lands
Column = tuple[int, "int | None"]


def _shift(state: tuple[Column, ...], k: int, cap: int, bal: int | None) -> tuple[Column, ...]:
    cur_cap, cur_bal = state[k]
    new_bal = None if (bal is None or cur_bal is None) else cur_bal + bal
    return state[:k] + ((cur_cap - cap, new_bal),) + state[k + 1:]


def _minus(state, k):
    return _shift(state, k, 1, 1)


def _plus(state, k):
    return _shift(state, k, 1, -1)


def _check(state, k):
    return _shift(state, k, 1, None)


@lru_cache(maxsize=None)
def _ell_doable(a: int, b: int, c: int, state: tuple[Column, ...]) -> bool:
    if (0, 0) in state:
        return False
    state = tuple(col for col in state if col[0] != 0)
    if not state:
        return True
    n = len(state)
    if a:
        return any(_ell_doable(a - 1, b, c, _check(state, i)) for i in range(n))
    if b:
        return any(_ell_doable(a, b - 1, c, _minus(state, i)) for i in range(n))
    for i in range(n):
        if state[i][0] >= 3 and _ell_doable(a, b, c - 1, _minus(_minus(_plus(state, i), i), i)):
            return True
    for i, j in combinations(range(n), 2):
        if state[j][0] >= 2 and _ell_doable(a, b, c - 1, _minus(_minus(_plus(state, j), j), i)):
            return True
    for i, j, k in combinations(range(n), 3):
        if _ell_doable(a, b, c - 1, _minus(_minus(_plus(state, k), j), i)):
            return True
    return False


def _initial_state(target: Sequence[int]) -> tuple[Column, ...]:
    return ((target[0], -1),) + tuple((x, 0) for x in target[1:])


def elliptic_reachable(inst: EllipticGameInstance) -> bool:
    return _ell_doable(inst.a, inst.b, inst.c, _initial_state(inst.target))


def _ell_verify(target: list[int]) -> list[tuple[int, int, int, list[int]]]:
    s = sum(target)
    out = []
    if s < 0:
        return out
    for c in range(s // 3 + 1):
        for b in range(s - 3 * c + 1):
            a = s - b - 3 * c
            if a == 0 or c == 0:
                if not _ell_doable(a, b, c, _initial_state(target)):
                    out.append((a, b, c, list(target)))
    return out


def ellreach_families(m: int) -> list[list[int]]:
    """The sequences checked for a given m, in scan order (including the m = 5, 6 extras)."""
    if m < 0:
        return []
    mid = [2 * m - 4 * j for j in range(1, (m + 1) // 2)]
    fams: list[list[int]] = []
    if m % 2 == 0:
        fams += [[n1] + mid + [1] for n1 in range(2 * m - 3, (5 * m - 8) // 2 + 1)]
        fams += [[n1] + mid for n1 in range((3 * m - 4) // 2, 2 * m - 3 + 1)]
    else:
        fams += [[n1] + mid for n1 in range((3 * m - 5) // 2, (5 * m - 7) // 2 + 1)]
    if m == 5:
        fams += [[n1, 6, 2] for n1 in (6, 8, 10)]
    if m == 6:
        fams += [[n1, 8, 4] + tail for n1 in (8, 10, 12) for tail in ([], [1])]
    # m = 1 yields the degenerate [-1], whose (a, b, c) range is empty
    return fams


def ellreach_scan(m: int, cap: int = DEFAULT_SCAN_CAP) -> list[tuple[int, int, int, list[int]]]:
    """Every unreachable (a, b, c, sequence) with a = 0 or c = 0 for the families at m."""
    if m > cap:
        raise ValueError(f"m = {m} exceeds the scan cap {cap}")
    out = []
    for target in ellreach_families(m):
        out.extend(_ell_verify(target))
    return out


def ellreach_report(m_max: int, cap: int = DEFAULT_SCAN_CAP) -> str:
    """Text block in the same line format as the original scan program."""
    lines = []
    for m in range(m_max + 1):
        lines.append(f"For m = {m} ...")
        for a, b, c, seq in ellreach_scan(m, cap):
            lines.append(f"{a} {b} {c} : {seq}")
    return "\n".join(lines) + "\n"


# expected output of ``ellreach_report(6)``, frozen from the reference scan
REFERENCE_ELLREACH_OUTPUT = """\
For m = 0 ...
For m = 1 ...
For m = 2 ...
0 2 0 : [1, 1]
0 1 0 : [1]
For m = 3 ...
0 1 1 : [2, 2]
0 2 1 : [3, 2]
0 0 2 : [4, 2]
For m = 4 ...
0 0 3 : [5, 4]
For m = 5 ...
For m = 6 ...
"""

# the accompanying exception table lists each c one larger than the scan
# prints, which breaks a + b + 3c = sum(n_k); kept only for comparison
ELLREACH_TABLE_AS_PRINTED = {
    2: [((0, 2, 1), [1, 1]), ((0, 1, 1), [1])],
    3: [((0, 2, 2), [3, 2]), ((0, 0, 3), [4, 2]), ((0, 1, 2), [2, 2])],
    4: [((0, 0, 4), [5, 4])],
}


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered sequences of ``parts`` positive integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for head in range(1, total - parts + 2):
        for tail in compositions(total - head, parts - 1):
            yield (head,) + tail


def conic_instances(max_sum: int, max_len: int) -> Iterator[ConicGameInstance]:
    for c in range(max_sum // 3 + 1):
        for b in range(max_sum - 3 * c + 1):
            s = b + 3 * c
            for j in range(1, max_len + 1):
                for t in compositions(s, j):
                    yield ConicGameInstance(b, c, t)


def conic_agreement(max_sum: int = 12, max_len: int = 6) -> tuple[int, list[ConicGameInstance]]:
    """Count of instances checked and those where closed form and search disagree."""
    n = 0
    bad = []
    for inst in conic_instances(max_sum, max_len):
        n += 1
        if conic_reachable_closed(inst) != conic_reachable_bruteforce(inst):
            bad.append(inst)
    return n, bad


__all__ = [
    "REFERENCE_ELLREACH_OUTPUT",
    "ELLREACH_TABLE_AS_PRINTED",
    "ConicGameInstance",
    "EllipticGameInstance",
    "InvalidInstance",
    "conic_agreement",
    "conic_instances",
    "conic_reachable_bruteforce",
    "conic_reachable_closed",
    "conic_witness",
    "compositions",
    "elliptic_reachable",
    "ellreach_families",
    "ellreach_report",
    "ellreach_scan",
    "updown_sequence",
]
