"""
Tests for picture fuzzy sets: validation, cuts, thresholds, products and maps.
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import (
    CarrierMismatchError,
    DegreeParseError,
    ThresholdError,
    TripleSumError,
)
from src.groups import (
    GroupHomomorphism,
    identity_map,
    make_cyclic,
    reduction_map,
    trivial_map,
)
from src.pfs import (
    CutThreshold,
    PictureTriple,
    cartesian_product,
    constant_pfs,
    cut_set,
    fiber_bounds,
    image,
    level_sets,
    make_pfs,
    pfs_equal,
    preimage,
    random_pfs,
    random_threshold,
    refusal_degree,
    representative_thresholds,
)
from src.registry import group_by_name

F = Fraction


def z4_example():
    """Two levels on the chain {0, 2} < Z4."""
    high, low = ("1/2", "1/4", "1/8"), ("1/4", "1/4", "1/4")
    return make_pfs(make_cyclic(4), [high, low, high, low])


@st.composite
def grid_triples(draw, denominator=12):
    """Triples on a k/denominator grid with sum at most 1."""
    a = draw(st.integers(0, denominator))
    b = draw(st.integers(0, denominator - a))
    c = draw(st.integers(0, denominator - a - b))
    return PictureTriple(F(a, denominator), F(b, denominator), F(c, denominator))


def test_make_pfs_accepts_and_rejects():
    whole = constant_pfs(make_cyclic(4), (1, 0, 0))
    assert all(x.refusal == 0 for x in whole.triples)
    accepted = PictureTriple("1/2", "1/4", "1/8")
    assert sum(accepted.as_tuple()) == F(7, 8)
    with pytest.raises(TripleSumError) as info:
        make_pfs(make_cyclic(2), [("0", "0", "0"), ("1/2", "1/3", "1/4")])
    assert info.value.index == 1


def test_make_pfs_shape_errors():
    with pytest.raises(CarrierMismatchError):
        make_pfs(make_cyclic(3), [(1, 0, 0)] * 2)
    with pytest.raises(DegreeParseError):
        make_pfs(make_cyclic(1), [("1/2", "1/4")])
    with pytest.raises(DegreeParseError):
        make_pfs(make_cyclic(1), [("0.5", "0", "0")])


def test_refusal_degree():
    z3 = make_cyclic(3)
    Q = make_pfs(z3, [(1, 0, 0), ("1/2", "1/4", "1/8"), (0, 0, 0)])
    assert [refusal_degree(Q, y) for y in range(3)] == [0, F(1, 8), 1]


def test_threshold_validation():
    with pytest.raises(ThresholdError):
        CutThreshold("1/2", "1/2", "1/2")
    with pytest.raises(ThresholdError):
        CutThreshold("2", "0", "0")
    assert CutThreshold("1/2", "1/4", "1/8").to_strings() == ["1/2", "1/4", "1/8"]


def test_cut_set_examples():
    Q = z4_example()
    assert cut_set(Q, CutThreshold(0, 0, 1)).members == (0, 1, 2, 3)
    assert cut_set(Q, CutThreshold("1/2", "1/4", "1/8")).members == (0, 2)
    assert cut_set(Q, CutThreshold("3/4", "0", "1/4")).members == ()


def test_representative_thresholds_contain_attained_levels():
    thresholds = representative_thresholds(z4_example())
    assert CutThreshold("1/2", "1/4", "1/8") in thresholds
    assert CutThreshold("1/4", "1/4", "1/4") in thresholds
    assert all(c.r + c.s + c.t <= 1 for c in thresholds)


def test_representative_thresholds_of_constant():
    Q = constant_pfs(make_cyclic(3), ("1/3", "1/6", "1/4"))
    expected = {
        (r, s, t)
        for r in (F(0), F(1, 3))
        for s in (F(0), F(1, 6))
        for t in (F(1, 4), F(1))
        if r + s + t <= 1
    }
    assert {(c.r, c.s, c.t) for c in representative_thresholds(Q)} == expected


def test_representative_thresholds_completeness():
    """Every random threshold's cut equals the cut of some listed threshold."""
    rng = random.Random(3)
    for name in ("Z4", "S3", "D4"):
        Q = random_pfs(group_by_name(name), rng, 8)
        cuts = {cut_set(Q, c) for c in representative_thresholds(Q)}
        for _ in range(1000):
            S = cut_set(Q, random_threshold(rng, 48))
            assert not S.members or S in cuts


def test_level_sets_of_z4_example():
    assert [S.members for _, S in level_sets(z4_example())] == [(0, 2), (0, 1, 2, 3)]


@settings(max_examples=60, deadline=None)
@given(triples=st.lists(grid_triples(), min_size=4, max_size=4), c=grid_triples(), d=grid_triples())
def test_cut_set_is_monotone(triples, c, d):
    """Raising r and s and lowering t can only shrink a cut."""
    Q = make_pfs(make_cyclic(4), triples)
    loose = CutThreshold(min(c.positive, d.positive), min(c.neutral, d.neutral), max(c.negative, d.negative))
    tight = CutThreshold(*c.as_tuple())
    assert cut_set(Q, tight).issubset(cut_set(Q, loose))


def test_cartesian_product_examples():
    P = make_pfs(make_cyclic(1), [("1/2", "1/4", "1/8")])
    Q = make_pfs(make_cyclic(1), [("1/3", "1/3", "1/5")])
    assert cartesian_product(P, Q)[0].as_tuple() == (F(1, 3), F(1, 4), F(1, 5))

    whole = constant_pfs(make_cyclic(2), (1, 0, 0))
    PQ = cartesian_product(z4_example(), whole)
    assert PQ.carrier.order == 8
    for y, x in enumerate(z4_example().triples):
        assert PQ[y * 2 + 1].as_tuple() == (x.positive, F(0), x.negative)


@settings(max_examples=60, deadline=None)
@given(p=grid_triples(), q=grid_triples())
def test_cartesian_product_keeps_sum_bound(p, q):
    PQ = cartesian_product(make_pfs(make_cyclic(1), [p]), make_pfs(make_cyclic(1), [q]))
    assert sum(PQ[0].as_tuple()) <= 1


def test_image_examples():
    Q = z4_example()
    f = reduction_map(4, 2)
    fQ = image(f, Q)
    assert fQ[0].as_tuple() == (F(1, 2), F(1, 4), F(1, 8))
    assert fQ[1].as_tuple() == (F(1, 4), F(1, 4), F(1, 4))
    assert pfs_equal(image(identity_map(Q.carrier), Q), Q)

    # everything outside the range of a constant map gets (0, 0, 1)
    g = trivial_map(make_cyclic(4), make_cyclic(3))
    gQ = image(g, Q)
    assert gQ[1].as_tuple() == gQ[2].as_tuple() == (0, 0, 1)


def test_image_overflow_reports_target_element():
    """σ and τ peaking on different elements of one fiber overflow the sum bound."""
    v4 = group_by_name("V4")
    P = make_pfs(v4, [("1/2", "1/2", "0"), ("1/2", "0", "1/2"), ("0", "1/2", "1/2"), ("0", "0", "1/2")])
    f = GroupHomomorphism(v4, group_by_name("Z2"), (0, 1, 1, 0))
    with pytest.raises(TripleSumError) as info:
        image(f, P)
    assert info.value.index == 1
    half = Fraction(1, 2)
    assert fiber_bounds(f, P) == [(half, half, Fraction(0)), (half, half, half)]


def test_image_bounds():
    rng = random.Random(11)
    f = reduction_map(6, 3)
    for _ in range(50):
        P = random_pfs(f.source, rng, 8)
        try:
            fP = image(f, P)
        except TripleSumError:
            continue
        for y in f.source.elements():
            assert fP[f(y)].dominates(P[y])


def test_preimage_examples():
    Q = z4_example()
    assert pfs_equal(preimage(identity_map(Q.carrier), Q), Q)
    g = trivial_map(make_cyclic(3), Q.carrier)
    assert preimage(g, Q).triples == (Q[0],) * 3
    f = reduction_map(4, 2)
    Q2 = make_pfs(f.target, [("1/2", "0", "1/4"), ("1/3", "1/3", "1/3")])
    assert pfs_equal(image(f, preimage(f, Q2)), Q2)


def test_pfs_equal_is_exact():
    Q = z4_example()
    bumped = Q.with_triple(0, PictureTriple(F(1, 2) + F(1, 1000), "1/4", "1/8"))
    assert pfs_equal(Q, Q)
    assert not pfs_equal(Q, bumped)
    with pytest.raises(CarrierMismatchError):
        pfs_equal(Q, constant_pfs(make_cyclic(2), (1, 0, 0)))
