"""Consistency checking for basic CDC and CDC_d networks.

The pipeline follows five steps: projective interval networks, canonical
interval solutions (which fix the frame and every bounding rectangle), removal
of disallowed pixels with difference/cumulative grids, component selection,
and a final check of the candidate solution.  A consistent network yields its
maximal canonical solution.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .grid import (
    Frame,
    IntRect,
    PixelRegion,
    acc_grid,
    connected_components,
    count_prefix,
    is_connected,
    mbr_of,
    rect_has_pixel,
    tile_rect,
)
from .interval import IaInconsistent, IntInterval, solve_basic_ia
from .matrix import (
    CdcBasicNetwork,
    CdcDisjunctiveNetwork,
    DirectionMatrix,
    Model,
    ProjectiveInconsistency,
    _refined_pair,
    dir_of_digital,
    projective_networks,
)


class StageKind(enum.Enum):
    PROJECTIVE_X = "projective-x"
    PROJECTIVE_Y = "projective-y"
    COMPONENT_MISSING = "component-missing"
    VERIFICATION_FAILED = "verification-failed"


@dataclass(frozen=True)
class Stage:
    """Where the pipeline rejected a network, with 0-based witnesses."""

    kind: StageKind
    pair: Optional[Tuple[int, int]] = None
    variable: Optional[int] = None
    tile: Optional[int] = None

    def __str__(self) -> str:
        if self.kind is StageKind.COMPONENT_MISSING:
            return f"{self.kind.value}(v{self.variable + 1})"
        if self.kind is StageKind.VERIFICATION_FAILED:
            i, j = self.pair
            return f"{self.kind.value}(v{i + 1}, v{j + 1}, tile {self.tile})"
        if self.pair is not None:
            i, j = self.pair
            return f"{self.kind.value}(v{i + 1}, v{j + 1})"
        return self.kind.value


@dataclass(frozen=True)
class SolveOutcome:
    consistent: bool
    model: Model
    stage: Optional[Stage] = None
    detail: str = ""
    frame: Optional[Frame] = None
    mbrs: Tuple[IntRect, ...] = ()
    x_intervals: Tuple[IntInterval, ...] = ()
    y_intervals: Tuple[IntInterval, ...] = ()
    # Regions left after removing disallowed pixels (before component selection).
    allowed: Tuple[PixelRegion, ...] = ()
    solution: Tuple[PixelRegion, ...] = ()

    def __bool__(self) -> bool:
        return self.consistent


def _solver_model(model: Model) -> Model:
    return Model.CDC if model is Model.CDC_S else model


def canonical_rectangles(
    net: CdcBasicNetwork,
) -> Tuple[Tuple[IntInterval, ...], Tuple[IntInterval, ...], Frame, Tuple[IntRect, ...]]:
    """Steps 1-2: canonical interval solutions, frame and bounding rectangles.

    Raises ``ProjectiveInconsistency`` when a projective relation is empty and
    ``IaInconsistent`` (with an ``axis`` attribute) when a projective network
    has no solution.
    """
    nx, ny = projective_networks(net)
    xs = _solve_axis(nx, "x")
    ys = _solve_axis(ny, "y")
    frame = Frame(max(iv.hi for iv in xs), max(iv.hi for iv in ys))
    mbrs = tuple(IntRect(x.lo, x.hi, y.lo, y.hi) for x, y in zip(xs, ys))
    return tuple(xs), tuple(ys), frame, mbrs


def _solve_axis(net, axis: str) -> List[IntInterval]:
    try:
        return solve_basic_ia(net)
    except IaInconsistent as exc:
        exc.axis = axis
        raise


def disallow_counts(i: int, net: CdcBasicNetwork, mbrs: Sequence[IntRect], frame: Frame) -> np.ndarray:
    """Integer grid counting, per pixel, the forbidden tiles of other variables covering it.

    Built by adding the first-index difference grids of all forbidden tiles
    (each contributes +1/-1 on at most two columns) and accumulating once.
    """
    diff = np.zeros(frame.shape, dtype=np.int64)
    n_x = frame.n_x
    for j, m_j in enumerate(mbrs):
        if j == i:
            continue
        bits = net.delta[(i, j)].bits
        for phi in range(1, 10):
            if bits >> (phi - 1) & 1:
                continue
            r = tile_rect(m_j, phi, frame)
            if r.is_pixel_empty():
                continue
            diff[r.x_lo, r.y_lo:r.y_hi] += 1
            if r.x_hi < n_x:
                diff[r.x_hi, r.y_lo:r.y_hi] -= 1
    return acc_grid(diff)


def disallowed_pixels(i: int, net: CdcBasicNetwork, mbrs: Sequence[IntRect], frame: Frame) -> PixelRegion:
    """Pixels of ``mbrs[i]`` that lie in a tile some constraint on v_i forbids."""
    q = disallow_counts(i, net, mbrs, frame)
    occ = np.zeros(frame.shape, dtype=bool)
    sl = mbrs[i].slices
    occ[sl] = q[sl] > 0
    return PixelRegion(frame, occ)


def allowed_regions(net: CdcBasicNetwork, mbrs: Sequence[IntRect], frame: Frame) -> List[PixelRegion]:
    """Step 3: each bounding rectangle minus its disallowed pixels."""
    out = []
    for i, m in enumerate(mbrs):
        q = disallow_counts(i, net, mbrs, frame)
        occ = np.zeros(frame.shape, dtype=bool)
        sl = m.slices
        occ[sl] = q[sl] == 0
        out.append(PixelRegion(frame, occ))
    return out


def select_components(
    allowed: Sequence[PixelRegion], mbrs: Sequence[IntRect], model: Model
) -> Tuple[List[PixelRegion], Optional[int]]:
    """Step 4.  Returns the chosen regions and the first variable lacking one."""
    chosen = []
    for i, (b, m) in enumerate(zip(allowed, mbrs)):
        if not b:
            return chosen, i
        if model is Model.CDC_D:
            if mbr_of(b) != m:
                return chosen, i
            chosen.append(b)
            continue
        for comp in connected_components(b):
            if mbr_of(comp) == m:
                chosen.append(comp)
                break
        else:
            return chosen, i
    return chosen, None


def _boundary_hit(occ: np.ndarray, r: IntRect) -> bool:
    xs = slice(r.x_lo, r.x_hi)
    ys = slice(r.y_lo, r.y_hi)
    return bool(
        occ[r.x_lo, ys].any()
        or occ[r.x_hi - 1, ys].any()
        or occ[xs, r.y_lo].any()
        or occ[xs, r.y_hi - 1].any()
    )


def check_candidate(
    regions: Sequence[PixelRegion],
    net: CdcBasicNetwork,
    mbrs: Sequence[IntRect],
    frame: Frame,
    model: Model,
) -> Optional[Tuple[int, int, int]]:
    """Step 5 on a candidate built by steps 3-4.

    Only tiles required by the constraint are inspected; forbidden tiles are
    already empty by construction.  Connected regions are probed on the
    boundary pixels of ``m_i`` intersected with the tile, disconnected ones via
    prefix counts.  Returns the first failing ``(i, j, phi)`` or ``None``.
    """
    prefixes = [count_prefix(r) for r in regions] if model is Model.CDC_D else None
    for i, m_i in enumerate(mbrs):
        occ = regions[i].occ
        for j, m_j in enumerate(mbrs):
            if i == j:
                continue
            bits = net.delta[(i, j)].bits
            for phi in range(1, 10):
                if not bits >> (phi - 1) & 1:
                    continue
                r = m_i.intersect(tile_rect(m_j, phi, frame))
                if r.is_pixel_empty():
                    return (i, j, phi)
                if prefixes is not None:
                    hit = rect_has_pixel(prefixes[i], r)
                else:
                    hit = _boundary_hit(occ, r)
                if not hit:
                    return (i, j, phi)
    return None


def verify_solution(regions: Sequence[PixelRegion], net: CdcBasicNetwork, model: Model = Model.CDC) -> bool:
    """Full check: recompute every direction matrix from the pixels."""
    if len(regions) != net.n:
        return False
    if any(not r for r in regions):
        return False
    if model.connected:
        if not all(is_connected(r) for r in regions):
            return False
    mbrs = [mbr_of(r) for r in regions]
    for (i, j), d in net.delta.items():
        if dir_of_digital(regions[i], mbrs[j]) != d:
            return False
    return True


def solve_basic(net: CdcBasicNetwork, model: Model = Model.CDC) -> SolveOutcome:
    """Decide a basic network and build its maximal canonical solution."""
    model = _solver_model(model)
    net.validate(model)
    if net.n == 0:
        return SolveOutcome(True, model)

    try:
        xs, ys, frame, mbrs = canonical_rectangles(net)
    except ProjectiveInconsistency as exc:
        kind = StageKind.PROJECTIVE_X if exc.axis == "x" else StageKind.PROJECTIVE_Y
        return SolveOutcome(False, model, Stage(kind, pair=exc.pair), str(exc))
    except IaInconsistent as exc:
        kind = StageKind.PROJECTIVE_X if exc.axis == "x" else StageKind.PROJECTIVE_Y
        return SolveOutcome(False, model, Stage(kind, pair=exc.pair), f"{exc.axis}-projective network: {exc}")

    base = dict(model=model, frame=frame, mbrs=mbrs, x_intervals=xs, y_intervals=ys)
    allowed = tuple(allowed_regions(net, mbrs, frame))
    base["allowed"] = allowed

    chosen, missing = select_components(allowed, mbrs, model)
    if missing is not None:
        stage = Stage(StageKind.COMPONENT_MISSING, variable=missing)
        return SolveOutcome(False, stage=stage, detail=f"no region of v{missing + 1} spans {mbrs[missing]}", **base)

    failed = check_candidate(chosen, net, mbrs, frame, model)
    if failed is not None:
        i, j, phi = failed
        stage = Stage(StageKind.VERIFICATION_FAILED, pair=(i, j), tile=phi)
        return SolveOutcome(False, stage=stage, detail=f"v{i + 1} misses tile {phi} of v{j + 1}", **base)
    return SolveOutcome(True, solution=tuple(chosen), **base)


@dataclass(frozen=True)
class DisjunctiveOutcome:
    satisfiable: bool
    refinement: Optional[CdcBasicNetwork] = None
    outcome: Optional[SolveOutcome] = None
    leaves: int = 0  # basic networks handed to solve_basic

    def __bool__(self) -> bool:
        return self.satisfiable


def solve_disjunctive(net: CdcDisjunctiveNetwork, model: Model = Model.CDC) -> DisjunctiveOutcome:
    """Chronological backtracking over candidate matrices.

    Unordered pairs are visited in lexicographic order; each assigns
    ``(delta_ij, delta_ji)`` in ascending encoding order.  A branch is pruned as
    soon as an assigned pair has an empty projective relation on either axis.
    """
    model = _solver_model(model)
    n = net.n
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    options: List[List[Tuple[DirectionMatrix, DirectionMatrix]]] = []
    for i, j in pairs:
        fwd = net.candidates(i, j, model)
        back = net.candidates(j, i, model)
        opts = [
            (a, b)
            for a, b in itertools.product(fwd, back)
            if _refined_pair(a.bits, b.bits, "x") and _refined_pair(a.bits, b.bits, "y")
        ]
        if not opts:
            return DisjunctiveOutcome(False)
        options.append(opts)

    assignment: Dict[Tuple[int, int], DirectionMatrix] = {}
    leaves = 0

    def search(k: int) -> Optional[Tuple[CdcBasicNetwork, SolveOutcome]]:
        nonlocal leaves
        if k == len(pairs):
            basic = CdcBasicNetwork(n, dict(assignment))
            leaves += 1
            outcome = solve_basic(basic, model)
            return (basic, outcome) if outcome.consistent else None
        i, j = pairs[k]
        for a, b in options[k]:
            assignment[(i, j)] = a
            assignment[(j, i)] = b
            found = search(k + 1)
            if found is not None:
                return found
        del assignment[(i, j)], assignment[(j, i)]
        return None

    found = search(0)
    if found is None:
        return DisjunctiveOutcome(False, leaves=leaves)
    return DisjunctiveOutcome(True, found[0], found[1], leaves)
