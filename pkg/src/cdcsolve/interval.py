"""Allen interval algebra kernel.

Basic relations are members of the ``IA`` flag enum; a general relation is any
combination of them (``IA(0)`` is the empty, unsatisfiable relation).  Basic
networks are decided by reducing every constraint to an ordering of the 2n
endpoints, which also yields the unique canonical solution directly.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Optional, Tuple


class IA(enum.IntFlag):
    P = 1 << 0
    M = 1 << 1
    O = 1 << 2
    S = 1 << 3
    D = 1 << 4
    F = 1 << 5
    EQ = 1 << 6
    FI = 1 << 7
    DI = 1 << 8
    SI = 1 << 9
    OI = 1 << 10
    MI = 1 << 11
    PI = 1 << 12

    def basics(self) -> List["IA"]:
        """Basic relations contained in this relation, in declaration order."""
        return [b for b in BASICS if b & self]

    def is_basic(self) -> bool:
        return self in _BASIC_SET

    @property
    def tag(self) -> str:
        return " ".join(_TAG[b] for b in self.basics())

    def __str__(self) -> str:
        if not self:
            return "{}"
        return "{" + ", ".join(_TAG[b] for b in self.basics()) + "}"


BASICS: Tuple[IA, ...] = tuple(IA(1 << k) for k in range(13))
_BASIC_SET = frozenset(BASICS)
EMPTY = IA(0)
UNIVERSAL = IA((1 << 13) - 1)

_TAG = {
    IA.P: "p", IA.M: "m", IA.O: "o", IA.S: "s", IA.D: "d", IA.F: "f",
    IA.EQ: "eq", IA.FI: "fi", IA.DI: "di", IA.SI: "si", IA.OI: "oi",
    IA.MI: "mi", IA.PI: "pi",
}
_BY_TAG = {v: k for k, v in _TAG.items()}

_CONVERSE = {
    IA.P: IA.PI, IA.M: IA.MI, IA.O: IA.OI, IA.S: IA.SI, IA.D: IA.DI,
    IA.F: IA.FI, IA.EQ: IA.EQ, IA.FI: IA.F, IA.DI: IA.D, IA.SI: IA.S,
    IA.OI: IA.O, IA.MI: IA.M, IA.PI: IA.P,
}


def ia_from_tags(*tags: str) -> IA:
    """Build a relation from symbols such as ``"p"``, ``"oi"``."""
    rel = EMPTY
    for t in tags:
        rel |= _BY_TAG[t]
    return rel


def converse_ia(rel: IA) -> IA:
    out = EMPTY
    for b in rel.basics():
        out |= _CONVERSE[b]
    return out


@dataclass(frozen=True, order=True)
class IntInterval:
    """Closed interval ``[lo, hi]`` with integer endpoints, ``lo < hi``."""

    lo: int
    hi: int

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"degenerate interval [{self.lo}, {self.hi}]")

    def __iter__(self) -> Iterator[int]:
        return iter((self.lo, self.hi))


def _cmp(a: int, b: int) -> int:
    return (a > b) - (a < b)


# Endpoint comparison signature (x-~y-, x-~y+, x+~y-, x+~y+) -> basic relation.
_SIGNATURE = {
    (-1, -1, -1, -1): IA.P,
    (-1, -1, 0, -1): IA.M,
    (-1, -1, 1, -1): IA.O,
    (0, -1, 1, -1): IA.S,
    (1, -1, 1, -1): IA.D,
    (1, -1, 1, 0): IA.F,
    (0, -1, 1, 0): IA.EQ,
    (-1, -1, 1, 0): IA.FI,
    (-1, -1, 1, 1): IA.DI,
    (0, -1, 1, 1): IA.SI,
    (1, -1, 1, 1): IA.OI,
    (1, 0, 1, 1): IA.MI,
    (1, 1, 1, 1): IA.PI,
}


def basic_ia_of(x: IntInterval, y: IntInterval) -> IA:
    """The basic relation holding between two intervals."""
    sig = (_cmp(x.lo, y.lo), _cmp(x.lo, y.hi), _cmp(x.hi, y.lo), _cmp(x.hi, y.hi))
    return _SIGNATURE[sig]


# Endpoint indices: 0 = x-, 1 = x+, 2 = y-, 3 = y+.  Each basic relation is the
# conjunction of these (left, op, right) facts on top of x- < x+ and y- < y+.
_ORDER_PATTERN: Dict[IA, Tuple[Tuple[int, str, int], ...]] = {
    IA.P: ((1, "<", 2),),
    IA.M: ((1, "=", 2),),
    IA.O: ((0, "<", 2), (2, "<", 1), (1, "<", 3)),
    IA.S: ((0, "=", 2), (1, "<", 3)),
    IA.D: ((2, "<", 0), (1, "<", 3)),
    IA.F: ((2, "<", 0), (1, "=", 3)),
    IA.EQ: ((0, "=", 2), (1, "=", 3)),
    IA.FI: ((0, "<", 2), (1, "=", 3)),
    IA.DI: ((0, "<", 2), (3, "<", 1)),
    IA.SI: ((0, "=", 2), (3, "<", 1)),
    IA.OI: ((2, "<", 0), (0, "<", 3), (3, "<", 1)),
    IA.MI: ((3, "=", 0),),
    IA.PI: ((3, "<", 0),),
}


class IaInconsistent(Exception):
    """Raised when a basic IA network has no solution."""

    def __init__(self, message: str, pair: Optional[Tuple[int, int]] = None):
        super().__init__(message)
        self.pair = pair


@dataclass(frozen=True)
class IaBasicNetwork:
    """Basic IA network over variables ``0..n-1``.

    ``rel`` holds a basic relation for ordered pairs; missing pairs are
    unconstrained and the converse of a stored pair is implied.
    """

    n: int
    rel: Mapping[Tuple[int, int], IA]

    def __post_init__(self):
        for (i, j), r in self.rel.items():
            if i == j or not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"bad pair {(i, j)} for n={self.n}")
            back = self.rel.get((j, i))
            if back is not None and back != converse_ia(r):
                raise ValueError(f"pair {(i, j)} is not closed under converse")


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def solve_basic_ia(net: IaBasicNetwork) -> List[IntInterval]:
    """Unique canonical interval solution of a consistent basic network.

    Raises ``IaInconsistent`` when the endpoint order has a strict cycle or a
    relation is empty or non-basic.
    """
    n = net.n
    uf = _UnionFind(2 * n)
    strict: List[Tuple[int, int]] = [(2 * i, 2 * i + 1) for i in range(n)]
    for (i, j), r in net.rel.items():
        if not r:
            raise IaInconsistent(f"empty relation on {(i, j)}", (i, j))
        if not r.is_basic():
            raise IaInconsistent(f"non-basic relation {r} on {(i, j)}", (i, j))
        ends = (2 * i, 2 * i + 1, 2 * j, 2 * j + 1)
        for a, op, b in _ORDER_PATTERN[r]:
            if op == "=":
                uf.union(ends[a], ends[b])
            else:
                strict.append((ends[a], ends[b]))

    succ: Dict[int, set] = {}
    indeg: Dict[int, int] = {}
    for e in range(2 * n):
        root = uf.find(e)
        succ.setdefault(root, set())
        indeg.setdefault(root, 0)
    for a, b in strict:
        ra, rb = uf.find(a), uf.find(b)
        if ra == rb:
            raise IaInconsistent("strict order between merged endpoints")
        if rb not in succ[ra]:
            succ[ra].add(rb)
            indeg[rb] += 1

    # Longest-path layering; for a consistent basic network the class order is
    # total, so layers are exactly the ranks 0..M.
    level = {c: 0 for c in succ}
    queue = deque(c for c, d in indeg.items() if d == 0)
    seen = 0
    while queue:
        c = queue.popleft()
        seen += 1
        for s in succ[c]:
            if level[c] + 1 > level[s]:
                level[s] = level[c] + 1
            indeg[s] -= 1
            if indeg[s] == 0:
                queue.append(s)
    if seen != len(succ):
        raise IaInconsistent("cyclic endpoint order")

    out = [IntInterval(level[uf.find(2 * i)], level[uf.find(2 * i + 1)]) for i in range(n)]
    for (i, j), r in net.rel.items():
        if basic_ia_of(out[i], out[j]) != r:
            raise IaInconsistent("endpoint order is not total", (i, j))
    return out


@dataclass(frozen=True)
class DirectionVector:
    """Occupancy of the three parts of the line cut by a reference interval."""

    d1: bool
    d2: bool
    d3: bool

    def is_valid(self) -> bool:
        return any(self) and (self.d1, self.d2, self.d3) != (True, False, True)

    def __iter__(self):
        return iter((self.d1, self.d2, self.d3))

    def __str__(self) -> str:
        return "(" + ",".join(str(int(v)) for v in self) + ")"

    @classmethod
    def of(cls, *bits) -> "DirectionVector":
        return cls(*(bool(b) for b in bits))


def direction_vector(i: IntInterval, j: IntInterval) -> DirectionVector:
    """Which of (-inf, j.lo], (j.lo, j.hi), [j.hi, inf) the open interior of ``i`` meets."""
    return DirectionVector(i.lo < j.lo, i.lo < j.hi and i.hi > j.lo, i.hi > j.hi)


_VECTOR_IA = {
    (1, 0, 0): IA.P | IA.M,
    (0, 1, 0): IA.S | IA.D | IA.F | IA.EQ,
    (0, 0, 1): IA.PI | IA.MI,
    (1, 1, 0): IA.O | IA.FI,
    (0, 1, 1): IA.OI | IA.SI,
    (1, 1, 1): IA.DI,
}


def vector_to_ia(v: DirectionVector) -> IA:
    key = tuple(int(b) for b in v)
    try:
        return _VECTOR_IA[key]
    except KeyError:
        raise ValueError(f"{v} is not a direction relation vector") from None


def vector_pair_to_basic(s: DirectionVector, t: DirectionVector) -> IA:
    """Relation of (I, J) given dir(I, J) = s and dir(J, I) = t."""
    return vector_to_ia(s) & converse_ia(vector_to_ia(t))


# Relations that can arise as the intersection of a vector relation with the
# converse of another (plus the empty relation).
B_STAR = frozenset(
    [IA.O, IA.S, IA.D, IA.F, IA.EQ, IA.FI, IA.DI, IA.SI, IA.OI, IA.P | IA.M, IA.PI | IA.MI]
)


def meet_free_refine(rel: IA) -> IA:
    """Drop ``m``/``mi`` from ``p|m`` and ``pi|mi``; other relations pass through."""
    if rel and rel not in B_STAR:
        raise ValueError(f"{rel} is outside the refinable domain")
    return rel & _NO_MEETS


_NO_MEETS = UNIVERSAL ^ (IA.M | IA.MI)
