"""Network files, PBM bitmaps and ASCII renderings.

A network file starts with a header ``<model> <n>`` (e.g. ``cdc 3``), followed by
one constraint per line: ``i j MATRIX`` or ``i j MATRIX|MATRIX|...``.
Indices are 1-based.  ``#`` starts a comment.  Example::

    cdc 2
    1 2 100/100/000
    2 1 001/001/000
"""

from __future__ import annotations

import io
import string
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence, TextIO, Tuple, Union

import numpy as np

from .grid import Frame, PixelRegion
from .matrix import (
    CdcBasicNetwork,
    CdcDisjunctiveNetwork,
    DirectionMatrix,
    Model,
    is_valid_matrix,
)


class NetworkFormatError(ValueError):
    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


@dataclass(frozen=True)
class NetworkFile:
    model: Model
    n: int
    constraints: Dict[Tuple[int, int], Tuple[DirectionMatrix, ...]]

    @property
    def is_basic(self) -> bool:
        return all(len(c) == 1 for c in self.constraints.values())

    def missing_pairs(self) -> List[Tuple[int, int]]:
        return [
            (i, j)
            for i in range(self.n)
            for j in range(self.n)
            if i != j and (i, j) not in self.constraints
        ]

    def basic(self) -> CdcBasicNetwork:
        """The basic network; every ordered pair must carry exactly one matrix."""
        multi = [p for p, c in self.constraints.items() if len(c) != 1]
        if multi:
            i, j = multi[0]
            raise NetworkFormatError(f"pair {i + 1} {j + 1} is disjunctive; a basic network is required")
        missing = self.missing_pairs()
        if missing:
            i, j = missing[0]
            raise NetworkFormatError(f"missing constraint for pair {i + 1} {j + 1}")
        return CdcBasicNetwork(self.n, {p: c[0] for p, c in self.constraints.items()})

    def disjunctive(self) -> CdcDisjunctiveNetwork:
        return CdcDisjunctiveNetwork(self.n, dict(self.constraints))


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def parse_network_text(text: str, model_override: Optional[Model] = None) -> NetworkFile:
    """Parse a network file; ``model_override`` replaces the header's model."""
    model = None
    n = None
    constraints: Dict[Tuple[int, int], Tuple[DirectionMatrix, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 2:
                raise NetworkFormatError("header must be '<model> <n>'", lineno)
            try:
                model = model_override or Model.parse(fields[0])
                n = int(fields[1])
            except ValueError as exc:
                raise NetworkFormatError(str(exc), lineno) from None
            if n < 1:
                raise NetworkFormatError(f"variable count must be positive, got {n}", lineno)
            continue
        if len(fields) != 3:
            raise NetworkFormatError(f"expected 'i j MATRIX', got {line!r}", lineno)
        try:
            i, j = int(fields[0]), int(fields[1])
        except ValueError:
            raise NetworkFormatError(f"bad variable index in {line!r}", lineno) from None
        for v in (i, j):
            if not 1 <= v <= n:
                raise NetworkFormatError(f"index {v} out of range 1..{n}", lineno)
        if i == j:
            raise NetworkFormatError(f"diagonal constraint {i} {j} is not allowed", lineno)
        pair = (i - 1, j - 1)
        if pair in constraints:
            raise NetworkFormatError(f"duplicate constraint for pair {i} {j}", lineno)
        mats = []
        for token in fields[2].split("|"):
            try:
                m = DirectionMatrix.parse(token)
            except ValueError as exc:
                raise NetworkFormatError(str(exc), lineno) from None
            if not is_valid_matrix(m, model):
                what = "zero matrix" if m.bits == 0 else "matrix"
                raise NetworkFormatError(f"{what} {token} is not a valid {model.value} relation", lineno)
            mats.append(m)
        constraints[pair] = tuple(sorted(set(mats)))
    if n is None:
        raise NetworkFormatError("empty network file")
    return NetworkFile(model, n, constraints)


def parse_network(path: Union[str, Path], model_override: Optional[Model] = None) -> NetworkFile:
    return parse_network_text(Path(path).read_text(), model_override)


def format_network(model: Model, n: int, constraints) -> str:
    """Render constraints (basic matrices or candidate tuples) as a network file."""
    lines = [f"{model.value} {n}"]
    for (i, j) in sorted(constraints):
        value = constraints[(i, j)]
        mats = value if isinstance(value, (tuple, list)) else (value,)
        lines.append(f"{i + 1} {j + 1} " + "|".join(str(m) for m in mats))
    return "\n".join(lines) + "\n"


def print_network(net: Union[CdcBasicNetwork, CdcDisjunctiveNetwork], model: Model = Model.CDC) -> str:
    if isinstance(net, CdcBasicNetwork):
        return format_network(model, net.n, net.delta)
    return format_network(model, net.n, net.rel)


def write_pbm(region: PixelRegion, out: TextIO) -> None:
    """Plain PBM (P1); the first row written is the top of the frame."""
    n_x, n_y = region.frame.shape
    out.write(f"P1\n{n_x} {n_y}\n")
    for l in range(n_y - 1, -1, -1):
        out.write(" ".join("1" if region.occ[k, l] else "0" for k in range(n_x)) + "\n")


def pbm_text(region: PixelRegion) -> str:
    buf = io.StringIO()
    write_pbm(region, buf)
    return buf.getvalue()


def read_pbm(text: str) -> PixelRegion:
    tokens = []
    for line in text.splitlines():
        tokens.extend(_strip(line).split())
    if not tokens or tokens[0] != "P1":
        raise ValueError("not a plain PBM (P1) image")
    try:
        n_x, n_y = int(tokens[1]), int(tokens[2])
    except (IndexError, ValueError):
        raise ValueError("PBM header lacks dimensions") from None
    # Pixels may also be packed without separators.
    bits = "".join(tokens[3:])
    if len(bits) != n_x * n_y or set(bits) - {"0", "1"}:
        raise ValueError(f"PBM body must hold {n_x * n_y} binary pixels")
    rows = np.array([int(b) for b in bits], dtype=bool).reshape(n_y, n_x)
    return PixelRegion(Frame(n_x, n_y), rows[::-1].T)


def region_letter(i: int) -> str:
    letters = string.ascii_lowercase + string.ascii_uppercase
    return letters[i] if i < len(letters) else "?"


def render_ascii(regions: Sequence[PixelRegion]) -> str:
    """One character per pixel, top row first: region letter, '#' for overlap, '.' empty."""
    if not regions:
        return ""
    frame = regions[0].frame
    stack = np.stack([r.occ for r in regions])
    count = stack.sum(axis=0)
    owner = stack.argmax(axis=0)
    lines = []
    for l in range(frame.n_y - 1, -1, -1):
        row = []
        for k in range(frame.n_x):
            c = count[k, l]
            row.append("." if c == 0 else "#" if c > 1 else region_letter(int(owner[k, l])))
        lines.append("".join(row))
    return "\n".join(lines) + "\n"
