"""Digital-plane machinery: frames, pixel regions and integer grids.

Grids are indexed ``[k, l]`` with ``k`` along x and ``l`` along y, origin at the
lower-left corner, so pixel ``(k, l)`` is the unit square ``[k, k+1] x [l, l+1]``.
Integer grids are plain 2-D numpy arrays of that shape.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Tuple

import numpy as np
from scipy import ndimage

# 4-neighbourhood structuring element.
_CROSS = ndimage.generate_binary_structure(2, 1)


@dataclass(frozen=True)
class Frame:
    """The region of discourse ``[0, n_x] x [0, n_y]``."""

    n_x: int
    n_y: int

    def __post_init__(self):
        if self.n_x <= 0 or self.n_y <= 0:
            raise ValueError(f"frame must be positive, got {self.n_x}x{self.n_y}")

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.n_x, self.n_y)

    def rect(self) -> "IntRect":
        return IntRect(0, self.n_x, 0, self.n_y)


@dataclass(frozen=True, order=True)
class IntRect:
    """Axis-aligned rectangle ``[x_lo, x_hi] x [y_lo, y_hi]`` with integer corners."""

    x_lo: int
    x_hi: int
    y_lo: int
    y_hi: int

    def __post_init__(self):
        if self.x_lo > self.x_hi or self.y_lo > self.y_hi:
            raise ValueError(f"inverted rectangle {self}")

    def is_pixel_empty(self) -> bool:
        return self.x_lo == self.x_hi or self.y_lo == self.y_hi

    def intersect(self, other: "IntRect") -> "IntRect":
        x_lo, x_hi = max(self.x_lo, other.x_lo), min(self.x_hi, other.x_hi)
        y_lo, y_hi = max(self.y_lo, other.y_lo), min(self.y_hi, other.y_hi)
        # Disjoint rectangles collapse to a pixel-empty one.
        if x_lo > x_hi:
            x_hi = x_lo
        if y_lo > y_hi:
            y_hi = y_lo
        return IntRect(x_lo, x_hi, y_lo, y_hi)

    def scaled(self, factor: int) -> "IntRect":
        return IntRect(self.x_lo * factor, self.x_hi * factor, self.y_lo * factor, self.y_hi * factor)

    @property
    def slices(self) -> Tuple[slice, slice]:
        return slice(self.x_lo, self.x_hi), slice(self.y_lo, self.y_hi)

    def __str__(self) -> str:
        return f"[{self.x_lo},{self.x_hi}]x[{self.y_lo},{self.y_hi}]"


class PixelRegion:
    """A set of pixels inside a frame, stored as a read-only Boolean grid."""

    __slots__ = ("frame", "occ")

    def __init__(self, frame: Frame, occ):
        occ = np.array(occ, dtype=bool)
        if occ.shape != frame.shape:
            raise ValueError(f"grid shape {occ.shape} does not match frame {frame.shape}")
        occ.flags.writeable = False
        self.frame = frame
        self.occ = occ

    @classmethod
    def empty(cls, frame: Frame) -> "PixelRegion":
        return cls(frame, np.zeros(frame.shape, dtype=bool))

    @classmethod
    def from_pixels(cls, frame: Frame, pixels: Iterable[Tuple[int, int]]) -> "PixelRegion":
        occ = np.zeros(frame.shape, dtype=bool)
        for k, l in pixels:
            occ[k, l] = True
        return cls(frame, occ)

    def pixels(self) -> List[Tuple[int, int]]:
        return [(int(k), int(l)) for k, l in zip(*np.nonzero(self.occ))]

    def __len__(self) -> int:
        return int(self.occ.sum())

    def __bool__(self) -> bool:
        return bool(self.occ.any())

    def __contains__(self, pixel: Tuple[int, int]) -> bool:
        k, l = pixel
        return 0 <= k < self.frame.n_x and 0 <= l < self.frame.n_y and bool(self.occ[k, l])

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self.pixels())

    def __eq__(self, other) -> bool:
        if not isinstance(other, PixelRegion):
            return NotImplemented
        return self.frame == other.frame and np.array_equal(self.occ, other.occ)

    def __hash__(self) -> int:
        return hash((self.frame, self.occ.tobytes()))

    def __or__(self, other: "PixelRegion") -> "PixelRegion":
        return PixelRegion(self.frame, self.occ | other.occ)

    def __and__(self, other: "PixelRegion") -> "PixelRegion":
        return PixelRegion(self.frame, self.occ & other.occ)

    def __sub__(self, other: "PixelRegion") -> "PixelRegion":
        return PixelRegion(self.frame, self.occ & ~other.occ)

    def issubset(self, other: "PixelRegion") -> bool:
        return not (self.occ & ~other.occ).any()

    def __repr__(self) -> str:
        return f"PixelRegion({self.frame.n_x}x{self.frame.n_y}, {len(self)} px)"


def diff_grid(grid: np.ndarray) -> np.ndarray:
    """First-index difference: row 0 is copied, row k becomes N[k] - N[k-1]."""
    grid = np.asarray(grid)
    out = grid.astype(np.int64, copy=True)
    out[1:] -= grid[:-1]
    return out


def acc_grid(grid: np.ndarray) -> np.ndarray:
    """Running sum along the first index; inverse of :func:`diff_grid`."""
    return np.cumsum(np.asarray(grid, dtype=np.int64), axis=0)


def tile_rect(mbr: IntRect, phi: int, frame: Frame) -> IntRect:
    """The ``phi``-th tile (1 = NW ... 9 = SE) of ``mbr``, clipped to the frame."""
    if not 1 <= phi <= 9:
        raise ValueError(f"tile index must be in 1..9, got {phi}")
    s, t = divmod(phi - 1, 3)
    xs = ((0, mbr.x_lo), (mbr.x_lo, mbr.x_hi), (mbr.x_hi, frame.n_x))[t]
    # Row 0 of the matrix is the northern band.
    ys = ((mbr.y_hi, frame.n_y), (mbr.y_lo, mbr.y_hi), (0, mbr.y_lo))[s]
    x_lo, x_hi = max(xs[0], 0), min(xs[1], frame.n_x)
    y_lo, y_hi = max(ys[0], 0), min(ys[1], frame.n_y)
    return IntRect(x_lo, max(x_lo, x_hi), y_lo, max(y_lo, y_hi))


def rasterize_rect(rect: IntRect, frame: Frame) -> PixelRegion:
    occ = np.zeros(frame.shape, dtype=bool)
    occ[rect.slices] = True
    return PixelRegion(frame, occ)


def connected_components(region: PixelRegion) -> List[PixelRegion]:
    """Maximal 4-connected pixel groups, ordered by their lexicographically first pixel."""
    labels, count = ndimage.label(region.occ, structure=_CROSS)
    return [PixelRegion(region.frame, labels == lab) for lab in range(1, count + 1)]


def is_connected(region: PixelRegion) -> bool:
    _, count = ndimage.label(region.occ, structure=_CROSS)
    return count == 1


def mbr_of(region: PixelRegion) -> IntRect:
    """Minimum bounding rectangle of a nonempty region."""
    ks = np.flatnonzero(region.occ.any(axis=1))
    ls = np.flatnonzero(region.occ.any(axis=0))
    if ks.size == 0:
        raise ValueError("empty region has no bounding rectangle")
    return IntRect(int(ks[0]), int(ks[-1]) + 1, int(ls[0]), int(ls[-1]) + 1)


def count_prefix(region: PixelRegion) -> np.ndarray:
    """Entry ``[k, l]`` counts the region's pixels inside ``[0, k+1] x [0, l+1]``."""
    return region.occ.astype(np.int64).cumsum(axis=0).cumsum(axis=1)


def rect_has_pixel(prefix: np.ndarray, rect: IntRect) -> bool:
    """Constant-time test whether the counted region has a pixel inside ``rect``."""

    def at(k: int, l: int) -> int:
        return 0 if k < 0 or l < 0 else int(prefix[k, l])

    x0, x1, y0, y1 = rect.x_lo - 1, rect.x_hi - 1, rect.y_lo - 1, rect.y_hi - 1
    return at(x0, y0) + at(x1, y1) > at(x1, y0) + at(x0, y1)


def _exterior_labels(occ: np.ndarray) -> Tuple[np.ndarray, int, int]:
    """Label 4-components of the complement on a one-pixel padded grid.

    Returns the labels cropped back to the frame, the label count, and the
    label of the unbounded component.
    """
    padded = np.pad(~occ, 1, constant_values=True)
    labels, count = ndimage.label(padded, structure=_CROSS)
    return labels[1:-1, 1:-1], count, int(labels[0, 0])


def holes_of(region: PixelRegion) -> List[PixelRegion]:
    """Bounded 4-components of the complement, ordered by first pixel."""
    labels, count, outside = _exterior_labels(region.occ)
    holes = []
    # Label ids follow raster order of the padded grid, which keeps the ordering
    # lexicographic in (k, l) once the outside component is skipped.
    for lab in range(1, count + 1):
        if lab == outside:
            continue
        mask = labels == lab
        if mask.any():
            holes.append(PixelRegion(region.frame, mask))
    return holes


def hole_mask(region: PixelRegion) -> np.ndarray:
    """Boolean grid of all pixels lying in some hole of ``region``."""
    labels, _, outside = _exterior_labels(region.occ)
    return (labels != 0) & (labels != outside)


class ContactType(enum.Enum):
    """Arrangement of the four pixels around a contact point.

    Letters run clockwise from the top-left pixel: ``h`` hole, ``a`` region,
    ``x`` neither.
    """

    HAXA = "haxa"
    AHAX = "ahax"
    XAHA = "xaha"
    AXAH = "axah"
    SEPARATING = "separating"  # neither empty pixel lies in a hole
    ENCLOSED = "enclosed"  # both empty pixels lie in holes


# Pixel offsets around point (k, l) in clockwise order from the top-left.
_AROUND = ((-1, 0), (0, 0), (0, -1), (-1, -1))


def contact_points(region: PixelRegion) -> List[Tuple[Tuple[int, int], ContactType]]:
    """Grid points where the region touches itself only diagonally.

    A point qualifies when exactly one diagonal pair of its four incident
    pixels belongs to the region.  Points are listed in (k, l) order.
    """
    occ = region.occ
    n_x, n_y = occ.shape
    if n_x < 2 or n_y < 2:
        return []
    tr = occ[1:, 1:]
    bl = occ[:-1, :-1]
    tl = occ[:-1, 1:]
    br = occ[1:, :-1]
    mask = (tr == bl) & (tl == br) & (tr != tl)
    if not mask.any():
        return []
    holes = hole_mask(region)
    out = []
    for i, j in zip(*np.nonzero(mask)):
        k, l = int(i) + 1, int(j) + 1
        letters = []
        for dk, dl in _AROUND:
            p = (k + dk, l + dl)
            if occ[p]:
                letters.append("a")
            else:
                letters.append("h" if holes[p] else "x")
        word = "".join(letters)
        if word.count("h") == 1:
            kind = ContactType(word)
        elif "h" in word:
            kind = ContactType.ENCLOSED
        else:
            kind = ContactType.SEPARATING
        out.append(((k, l), kind))
    return out


def refine(region: PixelRegion, factor: int) -> PixelRegion:
    """Subdivide every pixel into ``factor x factor`` sub-pixels."""
    frame = Frame(region.frame.n_x * factor, region.frame.n_y * factor)
    occ = np.repeat(np.repeat(region.occ, factor, axis=0), factor, axis=1)
    return PixelRegion(frame, occ)
