"""Turn a maximal canonical CDC solution into one made of simple regions.

Every pixel is split into 5x5 sub-pixels.  Contact points are removed by
deleting one corner sub-pixel, then each remaining hole is opened to the
outside by cutting a one-sub-pixel-wide slot upward through the middle column
of the region pixels above it.  Bounding rectangles and tile occupancy are
unchanged, so all direction matrices survive.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

import numpy as np

from .grid import ContactType, PixelRegion, contact_points, holes_of, refine
from .solver import SolveOutcome

FACTOR = 5

# Sub-pixel removed for each contact type at point (k, l), as offsets from
# (5k, 5l).  It is the corner of the region pixel that follows the hole pixel
# in the clockwise order TL, TR, BR, BL.
_CONTACT_CUT = {
    ContactType.HAXA: (0, 0),  # TR pixel (k, l)
    ContactType.AHAX: (0, -1),  # BR pixel (k, l-1)
    ContactType.XAHA: (-1, -1),  # BL pixel (k-1, l-1)
    ContactType.AXAH: (-1, 0),  # TL pixel (k-1, l)
}


class SimplifyError(ValueError):
    """Input is not a maximal canonical solution the transform can handle."""


def remove_contacts(region: PixelRegion) -> PixelRegion:
    """Refine by five and delete one sub-pixel at every contact point."""
    fine = refine(region, FACTOR)
    occ = fine.occ.copy()
    for (k, l), kind in contact_points(region):
        if kind not in _CONTACT_CUT:
            raise SimplifyError(f"contact point ({k}, {l}) of type {kind.value} cannot arise in a maximal solution")
        dk, dl = _CONTACT_CUT[kind]
        occ[FACTOR * k + dk, FACTOR * l + dl] = False
    return PixelRegion(fine.frame, occ)


def _slot_origin(hole: PixelRegion) -> Tuple[int, int]:
    """Original pixel p(h): in the top row of the hole, the leftmost one."""
    ks, ls = np.nonzero(hole.occ)
    top = ls.max()
    k = ks[ls == top].min()
    return int(k) // FACTOR, int(top) // FACTOR


def cut_slots(fine: PixelRegion, coarse: PixelRegion) -> PixelRegion:
    """Open every hole of ``fine`` to the outside; ``coarse`` is the unrefined region."""
    occ = fine.occ.copy()
    current = fine
    n_y = coarse.frame.n_y
    while True:
        holes = holes_of(current)
        if not holes:
            return current
        k, l = min(_slot_origin(h) for h in holes)
        mid = FACTOR * k + FACTOR // 2
        above = l + 1
        if above >= n_y or not coarse.occ[k, above]:
            raise SimplifyError(f"hole pixel ({k}, {l}) is not capped by the region")
        while above < n_y and coarse.occ[k, above]:
            occ[mid, FACTOR * above:FACTOR * (above + 1)] = False
            above += 1
        current = PixelRegion(fine.frame, occ)


def simplify_region(region: PixelRegion) -> PixelRegion:
    """Simple region on the 5x refined frame with the same bounding box and tiles."""
    return cut_slots(remove_contacts(region), region)


def simplify_solution(outcome: SolveOutcome) -> List[PixelRegion]:
    """Apply :func:`simplify_region` to each region of a consistent CDC outcome."""
    if not outcome.consistent:
        raise SimplifyError("only consistent outcomes can be simplified")
    if not outcome.model.connected:
        raise SimplifyError("simplification needs connected regions")
    return [simplify_region(r) for r in outcome.solution]


def simplify_regions(regions: Sequence[PixelRegion]) -> List[PixelRegion]:
    return [simplify_region(r) for r in regions]
