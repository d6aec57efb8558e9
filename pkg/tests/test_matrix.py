import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cdcsolve import (
    CENTER,
    CdcBasicNetwork,
    CdcDisjunctiveNetwork,
    DirectionMatrix,
    Frame,
    Model,
    PixelRegion,
    dir_of_digital,
    enumerate_basic,
    is_valid_matrix,
    network_of_regions,
    projective_networks,
    projective_pair_relation,
    x_projection,
    y_projection,
)
from cdcsolve.interval import IA, basic_ia_of, IntInterval, converse_ia
from cdcsolve.matrix import ProjectiveInconsistency, dir_of_prefix
from cdcsolve.grid import count_prefix

from oracles import bfs_components, naive_dir, naive_mbr, naive_network, random_blob, random_scatter

D = DirectionMatrix.parse


def test_parse_and_render():
    m = D("011/001/000")
    assert str(m) == "011/001/000"
    assert D("011001000") == m
    assert m.tiles == [2, 3, 6]
    assert m.cell(1, 2) and not m.cell(1, 1)
    assert m.rows == ((0, 1, 1), (0, 0, 1), (0, 0, 0))
    assert DirectionMatrix.from_rows(m.rows) == m
    assert DirectionMatrix.from_tiles(2, 3, 6) == m
    assert CENTER == D("000/010/000")


@pytest.mark.parametrize("bad", ["01100100", "0110010002", "abc/def/ghi"])
def test_parse_rejects_malformed(bad):
    with pytest.raises(ValueError):
        D(bad)


@given(st.integers(0, 511))
def test_text_round_trip(bits):
    m = DirectionMatrix(bits)
    assert D(str(m)) == m


def test_validity_against_bfs():
    count = 0
    for bits in range(512):
        m = DirectionMatrix(bits)
        cells = {(s, t) for s in range(3) for t in range(3) if m.cell(s + 1, t + 1)}
        expected = bool(cells) and len(bfs_components(cells)) == 1
        assert is_valid_matrix(m, Model.CDC) == expected
        assert is_valid_matrix(m, Model.CDC_S) == expected
        assert is_valid_matrix(m, Model.CDC_D) == (bits != 0)
        count += expected
    assert count == 218


def test_corner_pair_only_valid_when_disconnected():
    m = D("101/000/000")
    assert not is_valid_matrix(m, Model.CDC)
    assert is_valid_matrix(m, Model.CDC_D)


def test_enumeration_order_and_subset():
    cdc = enumerate_basic(Model.CDC)
    cdc_d = enumerate_basic(Model.CDC_D)
    assert list(cdc) == sorted(cdc)
    assert set(cdc) < set(cdc_d)


def test_projections():
    m = D("011/001/000")
    assert tuple(x_projection(m)) == (False, True, True)
    # South, middle, north.
    assert tuple(y_projection(m)) == (False, True, True)


def test_running_example_pair_relation():
    assert projective_pair_relation(D("011/001/000"), D("000/110/110"), "x") == IA.OI


def test_projective_pair_relation_is_converse_symmetric():
    for a in enumerate_basic(Model.CDC)[::7]:
        for b in enumerate_basic(Model.CDC):
            for axis in ("x", "y"):
                assert projective_pair_relation(a, b, axis) == converse_ia(projective_pair_relation(b, a, axis))


def test_bad_axis():
    with pytest.raises(ValueError):
        projective_pair_relation(CENTER, CENTER, "z")


regions = st.integers(0, 10_000)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1), st.booleans())
def test_projective_relation_contains_actual_interval_relation(seed, connected):
    import numpy as np

    rng = np.random.default_rng(seed)
    frame = Frame(6, 6)
    make = random_blob if connected else random_scatter
    a = make(rng, frame, int(rng.integers(1, 9)))
    b = make(rng, frame, int(rng.integers(1, 9)))
    ma, mb = naive_mbr(a), naive_mbr(b)
    dab, dba = naive_dir(a, mb), naive_dir(b, ma)
    rx = basic_ia_of(IntInterval(ma.x_lo, ma.x_hi), IntInterval(mb.x_lo, mb.x_hi))
    ry = basic_ia_of(IntInterval(ma.y_lo, ma.y_hi), IntInterval(mb.y_lo, mb.y_hi))
    assert rx & projective_pair_relation(dab, dba, "x")
    assert ry & projective_pair_relation(dab, dba, "y")


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_dir_of_digital_matches_naive(seed):
    import numpy as np

    rng = np.random.default_rng(seed)
    frame = Frame(7, 5)
    a = random_scatter(rng, frame, int(rng.integers(1, 12)))
    b = random_blob(rng, frame, int(rng.integers(1, 8)))
    ra = PixelRegion.from_pixels(frame, a)
    mb = naive_mbr(b)
    assert dir_of_digital(ra, mb) == naive_dir(a, mb)
    assert dir_of_prefix(count_prefix(ra), mb, frame) == naive_dir(a, mb)


def test_network_of_regions_matches_naive(rng):
    frame = Frame(8, 8)
    regs = [random_blob(rng, frame, int(rng.integers(1, 10))) for _ in range(5)]
    net = network_of_regions([PixelRegion.from_pixels(frame, r) for r in regs])
    assert net.delta == naive_network(regs)


def test_network_validation():
    with pytest.raises(ValueError):
        CdcBasicNetwork(2, {(0, 0): CENTER})
    with pytest.raises(ValueError):
        CdcBasicNetwork(2, {(0, 2): CENTER})
    net = CdcBasicNetwork(2, {(0, 1): CENTER})
    assert net.missing_pairs() == [(1, 0)]
    with pytest.raises(ValueError):
        net.validate(Model.CDC)
    bad = CdcBasicNetwork(2, {(0, 1): D("101/000/000"), (1, 0): CENTER})
    with pytest.raises(ValueError):
        bad.validate(Model.CDC)
    bad.validate(Model.CDC_D)


def test_disjunctive_candidates_default_to_all():
    net = CdcDisjunctiveNetwork(2, {(0, 1): (CENTER,)})
    assert net.candidates(0, 1, Model.CDC) == (CENTER,)
    assert len(net.candidates(1, 0, Model.CDC)) == 218
    assert len(net.candidates(1, 0, Model.CDC_D)) == 511
    assert not net.is_basic()
    with pytest.raises(ValueError):
        CdcDisjunctiveNetwork(2, {(0, 1): ()})


def test_projective_networks_report_empty_pair():
    west = D("100/100/100")
    net = CdcBasicNetwork(2, {(0, 1): west, (1, 0): west})
    with pytest.raises(ProjectiveInconsistency) as exc:
        projective_networks(net)
    assert exc.value.axis == "x" and exc.value.pair == (0, 1)


def test_split_projection_is_containment():
    # Parts on both sides of the reference box: the bounding interval spans it.
    split = D("000/101/000")
    assert projective_pair_relation(split, CENTER, "x") == IA.DI
