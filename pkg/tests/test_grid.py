from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from cdcsolve.grid import (
    ContactType,
    Frame,
    IntRect,
    PixelRegion,
    acc_grid,
    connected_components,
    contact_points,
    count_prefix,
    diff_grid,
    hole_mask,
    holes_of,
    is_connected,
    mbr_of,
    rasterize_rect,
    rect_has_pixel,
    refine,
    tile_rect,
)

from oracles import bfs_components, bfs_holes, naive_contacts, naive_mbr, pixel_tile

int_grids = hnp.arrays(np.int64, hnp.array_shapes(min_dims=2, max_dims=2, max_side=8), elements=st.integers(-5, 5))
bool_grids = hnp.arrays(bool, hnp.array_shapes(min_dims=2, max_dims=2, min_side=1, max_side=7))


@given(int_grids)
def test_acc_inverts_diff(g):
    assert np.array_equal(acc_grid(diff_grid(g)), g)
    assert np.array_equal(diff_grid(acc_grid(g)), g)


@given(st.data())
def test_diff_is_additive(data):
    shape = data.draw(hnp.array_shapes(min_dims=2, max_dims=2, max_side=6))
    a = data.draw(hnp.arrays(np.int64, shape, elements=st.integers(-3, 3)))
    b = data.draw(hnp.arrays(np.int64, shape, elements=st.integers(-3, 3)))
    assert np.array_equal(diff_grid(a + b), diff_grid(a) + diff_grid(b))


def test_rectangle_difference_has_two_columns():
    frame = Frame(9, 7)
    for x0, x1, y0, y1 in product(range(9), range(1, 10), range(7), range(1, 8)):
        if x0 >= x1 or y0 >= y1:
            continue
        d = diff_grid(rasterize_rect(IntRect(x0, x1, y0, y1), frame).occ.astype(int))
        cols = set(np.nonzero(d)[0].tolist())
        assert cols <= {x0, x1}
        assert np.count_nonzero(d) <= 2 * (y1 - y0)


@given(bool_grids)
def test_count_prefix_brute_force(occ):
    frame = Frame(*occ.shape)
    p = count_prefix(PixelRegion(frame, occ))
    for k, l in product(range(occ.shape[0]), range(occ.shape[1])):
        assert p[k, l] == occ[: k + 1, : l + 1].sum()


def test_rect_has_pixel_exhaustive_on_5x5(rng):
    frame = Frame(5, 5)
    for _ in range(40):
        occ = rng.random(frame.shape) < rng.random()
        prefix = count_prefix(PixelRegion(frame, occ))
        for x0, x1, y0, y1 in product(range(6), repeat=4):
            if x0 > x1 or y0 > y1:
                continue
            r = IntRect(x0, x1, y0, y1)
            assert rect_has_pixel(prefix, r) == bool(occ[x0:x1, y0:y1].any())


def test_tile_rect_matches_pixel_classification():
    frame = Frame(7, 6)
    for mbr in [IntRect(2, 5, 1, 4), IntRect(0, 7, 0, 6), IntRect(0, 1, 5, 6)]:
        for phi in range(1, 10):
            r = tile_rect(mbr, phi, frame)
            inside = {(k, l) for k in range(r.x_lo, r.x_hi) for l in range(r.y_lo, r.y_hi)}
            expected = {(k, l) for k in range(7) for l in range(6) if pixel_tile(k, l, mbr) == phi}
            assert inside == expected
    with pytest.raises(ValueError):
        tile_rect(IntRect(0, 1, 0, 1), 10, frame)


@settings(max_examples=100, deadline=None)
@given(bool_grids)
def test_components_match_bfs(occ):
    region = PixelRegion(Frame(*occ.shape), occ)
    got = [set(c.pixels()) for c in connected_components(region)]
    expected = bfs_components(region.pixels())
    assert sorted(map(sorted, got)) == sorted(map(sorted, expected))
    assert [min(c) for c in got] == sorted(min(c) for c in got)
    assert is_connected(region) == (len(expected) == 1)


@settings(max_examples=100, deadline=None)
@given(bool_grids)
def test_holes_match_bfs(occ):
    region = PixelRegion(Frame(*occ.shape), occ)
    got = [set(h.pixels()) for h in holes_of(region)]
    expected = bfs_holes(set(region.pixels()), *occ.shape)
    assert sorted(map(sorted, got)) == sorted(map(sorted, expected))
    assert set(zip(*np.nonzero(hole_mask(region)))) == set().union(*expected) if expected else not hole_mask(region).any()


@settings(max_examples=100, deadline=None)
@given(bool_grids)
def test_contact_points_match_naive(occ):
    region = PixelRegion(Frame(*occ.shape), occ)
    got = [p for p, _ in contact_points(region)]
    assert got == naive_contacts(set(region.pixels()), *occ.shape)


def _region(rows):
    """Rows given top first; '#' is a region pixel."""
    n_y, n_x = len(rows), len(rows[0])
    pix = [(k, n_y - 1 - r) for r, row in enumerate(rows) for k, ch in enumerate(row) if ch == "#"]
    return PixelRegion.from_pixels(Frame(n_x, n_y), pix)


def test_all_four_contact_types_on_rotations():
    # A 3x3 ring with one notched corner: the hole meets the notch diagonally.
    base = np.ones((4, 4), bool)
    base[1, 1] = False  # hole
    base[2:, 2:] = False  # notch to the outside, top right in (k, l)
    seen = set()
    for rot in range(4):
        occ = np.rot90(base, rot)
        (_, kind), = contact_points(PixelRegion(Frame(4, 4), occ))
        seen.add(kind)
    assert seen == {ContactType.HAXA, ContactType.AHAX, ContactType.XAHA, ContactType.AXAH}


def test_separating_and_enclosed_contacts():
    # Two squares touching at a corner.
    sep = PixelRegion.from_pixels(Frame(2, 2), [(0, 0), (1, 1)])
    assert contact_points(sep) == [((1, 1), ContactType.SEPARATING)]
    # Two diagonal holes inside a block.
    occ = np.ones((4, 4), bool)
    occ[1, 1] = occ[2, 2] = False
    (_, kind), = contact_points(PixelRegion(Frame(4, 4), occ))
    assert kind is ContactType.ENCLOSED


def test_holes_and_contacts_of_drawn_region():
    rows = [
        "#######",
        "#.###.#",
        "##.####",
        "#######",
    ]
    region = _region(rows)
    assert is_connected(region)
    assert len(holes_of(region)) == 3
    # The two diagonal holes meet at one point, enclosed on both sides.
    assert [k for _, k in contact_points(region)] == [ContactType.ENCLOSED]


def test_region_algebra_and_mbr():
    f = Frame(4, 3)
    a = PixelRegion.from_pixels(f, [(0, 0), (1, 0)])
    b = PixelRegion.from_pixels(f, [(1, 0), (3, 2)])
    assert len(a | b) == 3 and len(a & b) == 1 and (a - b).pixels() == [(0, 0)]
    assert (a & b).issubset(a) and not b.issubset(a)
    assert (3, 2) in b and (9, 9) not in b
    assert mbr_of(b) == IntRect(1, 4, 0, 3) == naive_mbr(b.pixels())
    with pytest.raises(ValueError):
        mbr_of(PixelRegion.empty(f))
    assert hash(a) == hash(PixelRegion.from_pixels(f, [(1, 0), (0, 0)]))
    with pytest.raises(ValueError):
        PixelRegion(f, np.zeros((3, 4), bool))
    with pytest.raises(ValueError):
        a.occ[0, 0] = False


def test_refine():
    f = Frame(2, 1)
    r = refine(PixelRegion.from_pixels(f, [(1, 0)]), 5)
    assert r.frame == Frame(10, 5)
    assert len(r) == 25 and mbr_of(r) == IntRect(5, 10, 0, 5)


def test_intersect_and_rect_helpers():
    a, b = IntRect(0, 3, 0, 3), IntRect(5, 6, 1, 2)
    assert a.intersect(b).is_pixel_empty()
    assert a.intersect(IntRect(1, 5, 2, 9)) == IntRect(1, 3, 2, 3)
    assert a.scaled(5) == IntRect(0, 15, 0, 15)
    assert str(a) == "[0,3]x[0,3]"
    with pytest.raises(ValueError):
        IntRect(2, 1, 0, 1)
    with pytest.raises(ValueError):
        Frame(0, 3)
