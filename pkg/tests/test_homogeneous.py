import pytest

from hopfcyc.errors import ClassNotFound, DecompositionFailed
from hopfcyc.fixtures import f4
from hopfcyc.groups import PermGroup
from hopfcyc.homogeneous import (build_homogeneous, crossed_blocks, decompose_equivariant,
                                 decompose_module, direct_sum_modules, enumerate_modules,
                                 irreducible_right_modules, quotient, regular_a_module,
                                 spectral_module, subgroup_of_group, verify_subgroup)
from hopfcyc.ktheory import multiplicities
from hopfcyc.linalg import Field

S3 = PermGroup.symmetric(3)


@pytest.fixture(scope="module")
def hs():
    return build_homogeneous(f4())


def test_subgroup_datum(hs):
    rep = verify_subgroup(hs.sd)
    assert rep.ok, rep.failures()


def test_quotient_space(hs):
    assert hs.q.verify().ok
    assert hs.q.dim == 3
    assert quotient(hs.sd).dim == 3


def test_crossed_product_and_blocks(hs):
    assert hs.cp.dim == 18
    assert hs.cp.verify().ok
    assert crossed_blocks(hs).sizes == [3, 3]
    assert hs.labels == {0: 0, 1: 1}


def test_spectral_modules(hs):
    assert [c.trivial for c in hs.classes] == [True, False]
    for sm in hs.spectral:
        assert sm.report.ok, sm.report.failures()
        assert sm.module.dim == 3 and sm.A_t.ncols == 3
        assert sm.module.verify().ok
        mu = multiplicities(sm.module, hs.blocks)
        assert mu[hs.labels[sm.t.label]] == 1 and sum(mu) == 1


def test_spectral_lookup(hs):
    assert spectral_module(hs, 1).t.label == 1
    with pytest.raises(ClassNotFound):
        spectral_module(hs, 7)


def test_regular_module_decomposes_into_each_class_once(hs):
    d = decompose_module(hs, regular_a_module(hs))
    assert d.multiplicities == {0: 1, 1: 1}
    assert d.certificate == "certified-iso"
    assert d.to_json() == {"multiplicities": {"0": 1, "1": 1}, "certificate": "certified-iso"}


def test_direct_sums_decompose_additively(hs):
    x0, x1 = (sm.module for sm in hs.spectral)
    m = direct_sum_modules([x0, x1, x1], hs.cp)
    assert decompose_module(hs, m).multiplicities == {0: 1, 1: 2}
    assert direct_sum_modules([], hs.cp).dim == 0
    assert decompose_module(hs, direct_sum_modules([], hs.cp)).multiplicities == {0: 0, 1: 0}


def test_enumerated_modules_small(hs):
    seen = set()
    for (_, counts), x, p in enumerate_modules(hs, 6):
        d = decompose_equivariant(hs, x, p)
        assert d.certificate == "certified-iso"
        seen.add((d.multiplicities[0], d.multiplicities[1]))
    assert {(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)} <= seen


def test_dual_modules_are_simple(hs):
    irr = irreducible_right_modules(hs.q.hhat)
    assert sorted(x.dim for x in irr) == [1, 1, 2]
    assert all(x.verify().ok for x in irr)


def test_whole_group_gives_representations_of_the_group():
    sd = subgroup_of_group(S3, list(range(6)), name="whole")
    hs = build_homogeneous(sd)
    assert hs.q.dim == 1
    assert sorted(hs.blocks.sizes) == [1, 1, 2]
    assert decompose_module(hs, regular_a_module(hs)).multiplicities == {0: 1, 1: 1, 2: 2}


def test_trivial_subgroup_gives_one_class():
    sd = subgroup_of_group(S3, [0], name="trivial")
    hs = build_homogeneous(sd)
    assert hs.q.dim == 6 and hs.blocks.sizes == [6]
    assert decompose_module(hs, regular_a_module(hs)).multiplicities == {0: 1}


def test_cyclic_subgroup_needs_cube_roots_of_unity():
    f = Field([1, 1, 1])
    sd = subgroup_of_group(S3, [0, S3.index[(1, 2, 0)], S3.index[(2, 0, 1)]], f, "z3")
    hs = build_homogeneous(sd)
    assert hs.q.dim == 2 and hs.blocks.sizes == [2, 2, 2]
    assert decompose_module(hs, regular_a_module(hs)).multiplicities == {0: 1, 1: 1, 2: 1}


def test_wrong_labelling_is_detected(hs):
    x0, x1 = (sm.module for sm in hs.spectral)
    swapped = type(hs)(hs.sd, hs.q, hs.cp, hs.classes, hs.spectral, hs.blocks, {0: 1, 1: 0})
    for m in (x0, x1):
        with pytest.raises(DecompositionFailed):
            decompose_module(swapped, m)
