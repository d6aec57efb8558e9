"""Direction relation matrices and projective interval networks.

A matrix is stored as a 9-bit integer: bit ``phi - 1`` holds tile ``phi``
where ``phi = 3*(s-1) + t``, row ``s = 1`` is the northern band (NW, N, NE) and
column ``t = 1`` the western one.  Text form is row-major from NW, e.g.
``"011/001/000"``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Mapping, Sequence, Tuple

from .grid import Frame, IntRect, PixelRegion, count_prefix, mbr_of, rect_has_pixel, tile_rect
from .interval import (
    IA,
    DirectionVector,
    IaBasicNetwork,
    converse_ia,
    meet_free_refine,
    vector_to_ia,
)

TILE_NAMES = ("NW", "N", "NE", "W", "O", "E", "SW", "S", "SE")


class Model(enum.Enum):
    CDC = "cdc"
    CDC_D = "cdc-d"
    CDC_S = "cdc-s"

    @classmethod
    def parse(cls, text: str) -> "Model":
        key = text.strip().lower().replace("_", "-")
        for m in cls:
            if m.value == key:
                return m
        raise ValueError(f"unknown model {text!r} (expected cdc, cdc-d or cdc-s)")

    @property
    def connected(self) -> bool:
        return self is not Model.CDC_D


@dataclass(frozen=True, order=True)
class DirectionMatrix:
    bits: int

    def __post_init__(self):
        if not 0 <= self.bits < 512:
            raise ValueError(f"matrix bits out of range: {self.bits}")

    @classmethod
    def parse(cls, text: str) -> "DirectionMatrix":
        digits = text.strip().replace("/", "")
        if len(digits) != 9 or set(digits) - {"0", "1"}:
            raise ValueError(f"malformed matrix {text!r}: expected 9 binary digits")
        bits = sum(1 << i for i, ch in enumerate(digits) if ch == "1")
        return cls(bits)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "DirectionMatrix":
        return cls.parse("".join(str(int(v)) for row in rows for v in row))

    @classmethod
    def from_tiles(cls, *phis: int) -> "DirectionMatrix":
        return cls(sum(1 << (phi - 1) for phi in set(phis)))

    def __getitem__(self, phi: int) -> bool:
        return bool(self.bits >> (phi - 1) & 1)

    def cell(self, s: int, t: int) -> bool:
        return self[3 * (s - 1) + t]

    @property
    def tiles(self) -> List[int]:
        return [phi for phi in range(1, 10) if self[phi]]

    @property
    def rows(self) -> Tuple[Tuple[int, int, int], ...]:
        return tuple(tuple(int(self.cell(s, t)) for t in (1, 2, 3)) for s in (1, 2, 3))

    def __or__(self, other: "DirectionMatrix") -> "DirectionMatrix":
        return DirectionMatrix(self.bits | other.bits)

    def within(self, other: "DirectionMatrix") -> bool:
        """Entrywise containment: every tile of ``self`` is a tile of ``other``."""
        return self.bits & ~other.bits == 0

    def __str__(self) -> str:
        return "/".join("".join(str(v) for v in row) for row in self.rows)

    def __repr__(self) -> str:
        return f"DirectionMatrix({str(self)!r})"


CENTER = DirectionMatrix.from_tiles(5)


@lru_cache(maxsize=None)
def _is_4_connected(bits: int) -> bool:
    cells = [divmod(i, 3) for i in range(9) if bits >> i & 1]
    if not cells:
        return False
    seen = {cells[0]}
    stack = [cells[0]]
    present = set(cells)
    while stack:
        r, c = stack.pop()
        for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
            if nb in present and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(cells)


def is_valid_matrix(m: DirectionMatrix, model: Model = Model.CDC) -> bool:
    if model is Model.CDC_D:
        return m.bits != 0
    return _is_4_connected(m.bits)


@lru_cache(maxsize=None)
def enumerate_basic(model: Model = Model.CDC) -> Tuple[DirectionMatrix, ...]:
    """All basic relations of the model, ascending by bit encoding."""
    return tuple(
        DirectionMatrix(b) for b in range(1, 512) if is_valid_matrix(DirectionMatrix(b), model)
    )


def x_projection(m: DirectionMatrix) -> DirectionVector:
    """Column-OR vector: West, middle, East."""
    return DirectionVector(*(any(m.cell(s, t) for s in (1, 2, 3)) for t in (1, 2, 3)))


def y_projection(m: DirectionMatrix) -> DirectionVector:
    """Row-OR vector: South, middle, North."""
    return DirectionVector(*(any(m.cell(s, t) for t in (1, 2, 3)) for s in (3, 2, 1)))


_SPLIT = DirectionVector(True, False, True)
_SPAN = DirectionVector(True, True, True)


def _interval_relation(v: DirectionVector) -> IA:
    # A disconnected region on both sides but not in the middle still has a
    # bounding interval that strictly contains the reference one.
    return vector_to_ia(_SPAN if v == _SPLIT else v)


@lru_cache(maxsize=None)
def _pair_relation(a: int, b: int, axis: str) -> IA:
    proj = x_projection if axis == "x" else y_projection
    return _interval_relation(proj(DirectionMatrix(a))) & converse_ia(
        _interval_relation(proj(DirectionMatrix(b)))
    )


def projective_pair_relation(d_ij: DirectionMatrix, d_ji: DirectionMatrix, axis: str) -> IA:
    """Interval relation between the ``axis`` projections of v_i and v_j."""
    if axis not in ("x", "y"):
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    return _pair_relation(d_ij.bits, d_ji.bits, axis)


@lru_cache(maxsize=None)
def _refined_pair(a: int, b: int, axis: str) -> IA:
    return meet_free_refine(_pair_relation(a, b, axis))


@dataclass(frozen=True)
class CdcBasicNetwork:
    """Basic network over variables ``0..n-1``; ``delta[(i, j)]`` constrains v_i to v_j."""

    n: int
    delta: Mapping[Tuple[int, int], DirectionMatrix]

    def __post_init__(self):
        for (i, j) in self.delta:
            if i == j:
                raise ValueError(f"diagonal constraint on variable {i} is implicit")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"pair {(i, j)} out of range for n={self.n}")

    def missing_pairs(self) -> List[Tuple[int, int]]:
        return [
            (i, j) for i in range(self.n) for j in range(self.n) if i != j and (i, j) not in self.delta
        ]

    def is_complete(self) -> bool:
        return len(self.delta) == self.n * (self.n - 1)

    def validate(self, model: Model) -> None:
        if not self.is_complete():
            raise ValueError(f"missing constraints for pairs {self.missing_pairs()[:5]}")
        for pair, m in self.delta.items():
            if not is_valid_matrix(m, model):
                raise ValueError(f"{m} on {pair} is not a valid {model.value} relation")

    @classmethod
    def from_pairs(cls, n: int, items: Mapping[Tuple[int, int], str]) -> "CdcBasicNetwork":
        return cls(n, {pair: DirectionMatrix.parse(t) for pair, t in items.items()})


@dataclass(frozen=True)
class CdcDisjunctiveNetwork:
    """Network whose constraints are nonempty sets of basic relations."""

    n: int
    rel: Mapping[Tuple[int, int], Tuple[DirectionMatrix, ...]]

    def __post_init__(self):
        for (i, j), cands in self.rel.items():
            if i == j:
                raise ValueError(f"diagonal constraint on variable {i} is implicit")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"pair {(i, j)} out of range for n={self.n}")
            if not cands:
                raise ValueError(f"empty candidate set on {(i, j)}")

    def candidates(self, i: int, j: int, model: Model) -> Tuple[DirectionMatrix, ...]:
        cands = self.rel.get((i, j))
        if cands is None:
            return enumerate_basic(Model.CDC_D if model is Model.CDC_D else Model.CDC)
        return tuple(sorted(set(cands)))

    def is_basic(self) -> bool:
        return all(len(set(c)) == 1 for c in self.rel.values()) and len(self.rel) == self.n * (self.n - 1)

    def to_basic(self) -> CdcBasicNetwork:
        return CdcBasicNetwork(self.n, {p: c[0] for p, c in self.rel.items()})


class ProjectiveInconsistency(Exception):
    def __init__(self, axis: str, pair: Tuple[int, int]):
        super().__init__(f"empty {axis}-projective relation on pair {pair}")
        self.axis = axis
        self.pair = pair


def projective_networks(net: CdcBasicNetwork) -> Tuple[IaBasicNetwork, IaBasicNetwork]:
    """Meet-free x- and y-projective interval networks.

    Raises ``ProjectiveInconsistency`` naming the first pair whose refined
    relation is empty (x before y, pairs in lexicographic order).
    """
    rel = {"x": {}, "y": {}}
    for axis in ("x", "y"):
        for i in range(net.n):
            for j in range(i + 1, net.n):
                r = _refined_pair(net.delta[(i, j)].bits, net.delta[(j, i)].bits, axis)
                if not r:
                    raise ProjectiveInconsistency(axis, (i, j))
                rel[axis][(i, j)] = r
    return IaBasicNetwork(net.n, rel["x"]), IaBasicNetwork(net.n, rel["y"])


def dir_of_digital(a: PixelRegion, mbr_b: IntRect) -> DirectionMatrix:
    """Direction of a digital region to a reference rectangle, from a pixel scan."""
    bits = 0
    for phi in range(1, 10):
        r = tile_rect(mbr_b, phi, a.frame)
        if not r.is_pixel_empty() and a.occ[r.slices].any():
            bits |= 1 << (phi - 1)
    return DirectionMatrix(bits)


def dir_of_prefix(prefix, mbr_b: IntRect, frame: Frame) -> DirectionMatrix:
    """Same as :func:`dir_of_digital` but from the region's prefix-count grid."""
    bits = 0
    for phi in range(1, 10):
        if rect_has_pixel(prefix, tile_rect(mbr_b, phi, frame)):
            bits |= 1 << (phi - 1)
    return DirectionMatrix(bits)


def network_of_regions(regions: Sequence[PixelRegion]) -> CdcBasicNetwork:
    """The basic network realised by a configuration of nonempty regions."""
    mbrs = [mbr_of(r) for r in regions]
    prefixes = [count_prefix(r) for r in regions]
    delta: Dict[Tuple[int, int], DirectionMatrix] = {}
    for i, r in enumerate(regions):
        for j in range(len(regions)):
            if i != j:
                delta[(i, j)] = dir_of_prefix(prefixes[i], mbrs[j], r.frame)
    return CdcBasicNetwork(len(regions), delta)
