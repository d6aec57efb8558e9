"""Converse tables and weak composition, computed with the basic-network solver.

``delta'`` is a converse of ``delta`` when ``{v1 delta v2, v2 delta' v1}`` is
consistent.  ``gamma`` belongs to the weak composition of ``alpha`` and ``beta``
when some completion of ``{v1 alpha v2, v2 beta v3, v1 gamma v3}`` with
converse-compatible reverse constraints is consistent.
"""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, List, Tuple

from .interval import IaBasicNetwork, IaInconsistent, solve_basic_ia
from .matrix import (
    CdcBasicNetwork,
    DirectionMatrix,
    Model,
    _refined_pair,
    enumerate_basic,
)
from .solver import solve_basic


def _table_model(model: Model) -> Model:
    return Model.CDC_D if model is Model.CDC_D else Model.CDC


def pairwise_consistent(d: DirectionMatrix, d_back: DirectionMatrix, model: Model = Model.CDC) -> bool:
    """Whether ``{v1 d v2, v2 d_back v1}`` is satisfiable."""
    model = _table_model(model)
    if not (_refined_pair(d.bits, d_back.bits, "x") and _refined_pair(d.bits, d_back.bits, "y")):
        return False
    return solve_basic(CdcBasicNetwork(2, {(0, 1): d, (1, 0): d_back}), model).consistent


def _converses_of(args: Tuple[int, str]) -> Tuple[int, Tuple[int, ...]]:
    bits, model_value = args
    model = Model(model_value)
    d = DirectionMatrix(bits)
    return bits, tuple(e.bits for e in enumerate_basic(model) if pairwise_consistent(d, e, model))


@dataclass(frozen=True)
class ConverseTable:
    model: Model
    entries: Dict[DirectionMatrix, Tuple[DirectionMatrix, ...]]

    def converses(self, d: DirectionMatrix) -> Tuple[DirectionMatrix, ...]:
        return self.entries[d]

    @property
    def pair_count(self) -> int:
        return sum(len(v) for v in self.entries.values())

    def size_distribution(self) -> Dict[int, int]:
        """Number of relations having each converse-set size."""
        return dict(sorted(Counter(len(v) for v in self.entries.values()).items()))

    def pairs(self) -> List[Tuple[DirectionMatrix, DirectionMatrix]]:
        return [(d, e) for d, es in self.entries.items() for e in es]


def build_converse_table(model: Model = Model.CDC, workers: int = 1) -> ConverseTable:
    """Sweep every ordered pair of basic relations through the solver."""
    model = _table_model(model)
    jobs = [(d.bits, model.value) for d in enumerate_basic(model)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_converses_of, jobs, chunksize=8))
    else:
        results = [_converses_of(job) for job in jobs]
    entries = {
        DirectionMatrix(bits): tuple(DirectionMatrix(b) for b in conv) for bits, conv in results
    }
    return ConverseTable(model, entries)


@lru_cache(maxsize=None)
def converse_table(model: Model = Model.CDC) -> ConverseTable:
    """Cached :func:`build_converse_table`."""
    return build_converse_table(_table_model(model))


@lru_cache(maxsize=None)
def _ia_triangle_ok(r01, r12, r02) -> bool:
    try:
        solve_basic_ia(IaBasicNetwork(3, {(0, 1): r01, (1, 2): r12, (0, 2): r02}))
    except IaInconsistent:
        return False
    return True


def _triangle_consistent(a, a_back, b, b_back, c, c_back, model: Model) -> bool:
    for axis in ("x", "y"):
        if not _ia_triangle_ok(
            _refined_pair(a.bits, a_back.bits, axis),
            _refined_pair(b.bits, b_back.bits, axis),
            _refined_pair(c.bits, c_back.bits, axis),
        ):
            return False
    net = CdcBasicNetwork(
        3,
        {(0, 1): a, (1, 0): a_back, (1, 2): b, (2, 1): b_back, (0, 2): c, (2, 0): c_back},
    )
    return solve_basic(net, model).consistent


def composition_contains(
    alpha: DirectionMatrix, beta: DirectionMatrix, gamma: DirectionMatrix, model: Model = Model.CDC
) -> bool:
    """Whether ``{v1 alpha v2, v2 beta v3, v1 gamma v3}`` is consistent."""
    return _contains(alpha.bits, beta.bits, gamma.bits, _table_model(model))


@lru_cache(maxsize=None)
def _contains(a: int, b: int, c: int, model: Model) -> bool:
    table = converse_table(model)
    alpha, beta, gamma = DirectionMatrix(a), DirectionMatrix(b), DirectionMatrix(c)
    for a_back, b_back, c_back in itertools.product(
        table.converses(alpha), table.converses(beta), table.converses(gamma)
    ):
        if _triangle_consistent(alpha, a_back, beta, b_back, gamma, c_back, model):
            return True
    return False


@dataclass(frozen=True)
class CompositionResult:
    alpha: DirectionMatrix
    beta: DirectionMatrix
    gammas: Tuple[DirectionMatrix, ...]

    def __contains__(self, gamma: DirectionMatrix) -> bool:
        return gamma in self.gammas


def weak_composition(alpha: DirectionMatrix, beta: DirectionMatrix, model: Model = Model.CDC) -> CompositionResult:
    """All basic relations in the weak composition of ``alpha`` and ``beta``."""
    model = _table_model(model)
    gammas = tuple(g for g in enumerate_basic(model) if _contains(alpha.bits, beta.bits, g.bits, model))
    return CompositionResult(alpha, beta, gammas)


def single_tile_components(d: DirectionMatrix) -> List[DirectionMatrix]:
    return [DirectionMatrix.from_tiles(phi) for phi in d.tiles]


def is_decomposable(
    gamma: DirectionMatrix, alpha: DirectionMatrix, beta: DirectionMatrix, model: Model = Model.CDC
) -> bool:
    """Whether ``gamma`` joins one member of each ``alpha_s o_w beta``.

    ``alpha_s`` ranges over the single-tile components of ``alpha``.  Members
    must lie within ``gamma`` entrywise, so the search is over small sets.
    """
    model = _table_model(model)
    choices = []
    for part in single_tile_components(alpha):
        comp = weak_composition(part, beta, model)
        cands = sorted({g.bits for g in comp.gammas if g.within(gamma)})
        if not cands:
            return False
        choices.append(cands)

    target = gamma.bits
    # Union of what the remaining components could still contribute.
    reach = [0] * (len(choices) + 1)
    for k in range(len(choices) - 1, -1, -1):
        reach[k] = reach[k + 1] | _or_all(choices[k])

    def search(k: int, acc: int) -> bool:
        if k == len(choices):
            return acc == target
        if acc | reach[k] != target:
            return False
        return any(search(k + 1, acc | c) for c in choices[k])

    return search(0, 0)


def _or_all(values: Iterable[int]) -> int:
    out = 0
    for v in values:
        out |= v
    return out
