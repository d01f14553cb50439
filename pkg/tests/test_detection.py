import pytest

from cpbundles.arith import is_metastable
from cpbundles.detection import (DetectionInstance, SplitConstructionParams,
                                 detection_hits, eo2_family, eop_degree, eop_family,
                                 ko_family, split_construction_instance, tmf2_families,
                                 toda_degree, unitary_families)
from cpbundles.errors import InvalidInput


def rank_dim(inst):
    return inst.rank, inst.dim


def test_split_construction_examples():
    assert rank_dim(split_construction_instance(SplitConstructionParams(2, 1, 1, 1))) == (2, 3)
    assert rank_dim(split_construction_instance(SplitConstructionParams(2, 1, 2, 1))) == (4, 5)
    assert rank_dim(split_construction_instance(SplitConstructionParams(8, 3, 3, 45))) == (24, 47)


def test_split_construction_rejections():
    with pytest.raises(InvalidInput):
        split_construction_instance(SplitConstructionParams(2, 1, 1, 2))
    with pytest.raises(InvalidInput):
        split_construction_instance(SplitConstructionParams(2, 3, 2, 9))


def test_ko_family():
    assert rank_dim(ko_family(0, 1)) == (2, 3)
    assert rank_dim(ko_family(1, 3)) == (6, 11)
    with pytest.raises(InvalidInput):
        ko_family(0, 0)


def test_tmf_families():
    assert rank_dim(tmf2_families(0, 3, "w")) == (24, 47)
    assert rank_dim(tmf2_families(0, 8, "w_kappa4")) == (64, 127)
    with pytest.raises(InvalidInput):
        tmf2_families(0, 2, "w")
    with pytest.raises(InvalidInput):
        tmf2_families(0, 9, "kappa")


def test_eo2_family():
    assert rank_dim(eo2_family(0, 7)) == (21, 40)
    assert rank_dim(eo2_family(1, 19)) == (57, 112)
    with pytest.raises(InvalidInput):
        eo2_family(0, 6)


def test_eop_family():
    assert eop_degree(5) == 2 * 25 * 16 + 7 + 38 == 845
    inst = eop_family(5, 85)
    assert rank_dim(inst) == (425, 848)
    with pytest.raises(InvalidInput):
        eop_family(5, 84)
    with pytest.raises(InvalidInput):
        eop_family(3, 100)


def test_unitary_families():
    assert unitary_families("ko", t=0, i=1).degree == 6
    assert unitary_families("ko", t=0, i=1).rank == 2
    u = unitary_families("eo2", t=0, l=7)
    assert (u.prime, u.rank, u.degree) == (3, 21, 80)
    u = unitary_families("eop", p=5, j=1, l=85)
    assert (u.rank, u.degree) == (425, 2 * 425 + 1 + 845)
    m = 8 * (12 * 0 + 3 + 3) - 1
    assert unitary_families("tmf_w", t=0, index=3).degree == 2 * m
    with pytest.raises(InvalidInput):
        unitary_families("eo2", t=1, l=18)
    with pytest.raises(InvalidInput):
        unitary_families("eop", p=5, j=5, l=200)
    with pytest.raises(InvalidInput):
        unitary_families("ko", t=0)


def test_eop_unitary_bound_uses_dj():
    for j in range(1, 5):
        d = eop_degree(5, j)
        lmin = -(-(d + 1) // 10)
        unitary_families("eop", p=5, j=j, l=lmin)
        with pytest.raises(InvalidInput):
            unitary_families("eop", p=5, j=j, l=lmin - 1)


def test_toda():
    t = toda_degree(9, 13)
    assert (t.degree, t.rank, t.dim) == (26, 9, 13)
    assert toda_degree(5, 10).degree == 20
    with pytest.raises(InvalidInput):
        toda_degree(5, 11)


def test_instance_validation():
    with pytest.raises(InvalidInput):
        DetectionInstance(2, 2, "projective", dim=5)
    with pytest.raises(InvalidInput):
        DetectionInstance(2, 2, "unitary")


@pytest.mark.parametrize("t", range(4))
def test_families_match_split_construction(t):
    for i in range(2 * t + 1, 2 * t + 6):
        a = ko_family(t, i)
        b = split_construction_instance(SplitConstructionParams(2, 2 * t + 1, i, 8 * t + 1))
        assert rank_dim(a) == rank_dim(b) and is_metastable(*rank_dim(a))
        assert 2 * 2 * (2 * t + 1 + i) - 2 - (8 * t + 1) == 2 * 2 * i + 1
    for variant, off, deg in (("w", 3, 45), ("w_kappa4", 8, 125)):
        k = 12 * t + off
        for i in range(k, k + 5):
            a = tmf2_families(t, i, variant)
            b = split_construction_instance(SplitConstructionParams(8, k, i, 192 * t + deg))
            assert rank_dim(a) == rank_dim(b) and is_metastable(*rank_dim(a))


def test_hits_roundtrip():
    for inst in [ko_family(1, 4), tmf2_families(1, 16, "w"), tmf2_families(0, 9, "w_kappa4"),
                 eo2_family(1, 20), eop_family(7, 1000)]:
        hits = detection_hits(inst.rank, inst.dim, inst.prime)
        assert inst in hits
    assert detection_hits(9, 13, 3) == []
