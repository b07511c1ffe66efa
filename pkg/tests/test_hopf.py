import pytest
from hypothesis import given, strategies as st

from hopfcyc.errors import NoNormalizedIntegral
from hopfcyc.groups import PermGroup, function_algebra, group_algebra, sweedler_h4
from hopfcyc.hopf import (Hopf, central_idempotents, dual_hopf, group_likes, haar_functional,
                          integral_space, right_integral, same_structure, wedderburn_blocks)
from hopfcyc.linalg import QQ, Field, Mat

HOPFS = {
    "trivial": lambda: Hopf.trivial(QQ),
    "Z2": lambda: group_algebra(PermGroup.cyclic(2)),
    "Z3": lambda: group_algebra(PermGroup.cyclic(3)),
    "S3": lambda: group_algebra(PermGroup.symmetric(3)),
    "C(S3)": lambda: function_algebra(PermGroup.symmetric(3)),
    "H4": sweedler_h4,
}


@pytest.fixture(params=sorted(HOPFS))
def hopf(request):
    return HOPFS[request.param]()


def test_axioms_hold(hopf):
    rep = hopf.verify()
    assert rep.ok, rep.failures()


def test_dual_is_hopf_and_biduality(hopf):
    d = dual_hopf(hopf)
    assert d.verify().ok
    assert same_structure(dual_hopf(d), hopf)


def test_counit_law_on_basis(hopf):
    one = hopf.field.one
    for i in range(hopf.dim):
        left, right = {}, {}
        for (j, k), c in hopf.delta({i: one}).items():
            e = hopf.counit[j] * c
            if e:
                right[k] = right.get(k, 0) + e
            e = hopf.counit[k] * c
            if e:
                left[j] = left.get(j, 0) + e
        assert {k: v for k, v in left.items() if v} == {i: one}
        assert {k: v for k, v in right.items() if v} == {i: one}


def test_antipode_inverse(hopf):
    ident = Mat.identity(hopf.dim, hopf.field)
    assert hopf.antipode @ hopf.antipode_inv == ident


class TestSweedler:
    def test_not_involutive(self):
        assert not sweedler_h4().is_involutive()

    def test_square_of_antipode_is_conjugation_by_g(self):
        h = sweedler_h4()
        assert h.squared_antipode_is_inner({1: QQ(1)})
        assert not h.squared_antipode_is_inner(h.alg.one)

    def test_group_likes(self):
        gl = group_likes(sweedler_h4())
        assert gl.complete
        assert gl.elements == [{0: 1}, {1: 1}]

    def test_not_semisimple(self):
        h = sweedler_h4()
        assert not h.is_semisimple()
        assert not h.alg.is_semisimple()
        with pytest.raises(NoNormalizedIntegral):
            right_integral(h)

    def test_integral_is_one_dimensional_and_killed_by_counit(self):
        h = sweedler_h4()
        (eta,) = integral_space(h)
        assert h.eps(eta) == 0

    def test_self_dual(self):
        d = dual_hopf(sweedler_h4())
        assert d.verify().ok and d.dim == 4
        assert len(group_likes(d).elements) == 2


class TestGroupAlgebras:
    def test_group_likes_are_group_elements(self):
        g = PermGroup.symmetric(3)
        gl = group_likes(group_algebra(g))
        assert len(gl.elements) == 6 and gl.complete

    def test_function_algebra_group_likes_are_characters(self):
        # S3 has two one-dimensional characters over QQ
        gl = group_likes(function_algebra(PermGroup.symmetric(3)))
        assert len(gl.elements) == 2

    def test_cyclic_characters_need_extension(self):
        gl = group_likes(function_algebra(PermGroup.cyclic(3)))
        assert len(gl.elements) == 1 and gl.needs_extension
        f = Field([1, 1, 1])
        assert len(group_likes(function_algebra(PermGroup.cyclic(3), f)).elements) == 3

    def test_normalized_integral_is_averaging(self):
        h = group_algebra(PermGroup.symmetric(3))
        eta = right_integral(h)
        assert eta == {i: QQ("1/6") for i in range(6)}
        assert h.alg.is_idempotent(eta)

    def test_haar_functional(self):
        h = group_algebra(PermGroup.cyclic(2))
        assert haar_functional(h) == {0: 1}
        assert haar_functional(sweedler_h4()) is None

    def test_wedderburn_of_s3(self):
        blocks = wedderburn_blocks(group_algebra(PermGroup.symmetric(3)).alg)
        assert sorted(blocks.sizes) == [1, 1, 2]
        assert sum(b.size ** 2 for b in blocks.blocks) == 6

    def test_commutative_blocks(self):
        blocks = wedderburn_blocks(function_algebra(PermGroup.symmetric(3)).alg)
        assert blocks.sizes == [1] * 6


@given(st.integers(0, 2 ** 16))
def test_central_idempotents_partition_unity(seed):
    alg = group_algebra(PermGroup.symmetric(3)).alg
    es = central_idempotents(alg, seed=seed)
    total = alg.add(*es)
    assert total == alg.one
    for i, e in enumerate(es):
        assert alg.is_idempotent(e)
        for j, e2 in enumerate(es):
            if i != j:
                assert alg.mul(e, e2) == {}


@given(st.integers(0, 2 ** 16))
def test_block_sizes_independent_of_seed(seed):
    alg = group_algebra(PermGroup.symmetric(3)).alg
    assert sorted(wedderburn_blocks(alg, seed=seed).sizes) == [1, 1, 2]
