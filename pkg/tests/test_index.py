import pytest
from hypothesis import given, settings, strategies as st

import oracles
from hopfcyc.errors import VNotCorepresentation
from hopfcyc.groups import PermGroup, group_algebra, sweedler_h4
from hopfcyc.index import (FredholmModule, cokernel_by_complement, ind_f, index_theorem_check,
                           modular_element, phi_f, psi_compatibility, q_ind, q_ind_check,
                           verify_fredholm, worked_index_module, worked_index_z2_module,
                           z2_coaction)
from hopfcyc.linalg import QQ, Mat
from strategies import small_rationals

GOLDENS = oracles.load_goldens()["index"]
ONE = QQ(1)
CASES = {"d0": {0: ONE}, "d1": {1: ONE}, "1": {0: ONE, 1: ONE}}
MODULES = {"worked-index": worked_index_module, "worked-index-z2": worked_index_z2_module}
# the point masses are not invariant under the swap, so only p = 1 applies to the Z/2 module
VALID = {"worked-index": sorted(CASES), "worked-index-z2": ["1"]}
PAIRS = [(name, case) for name in sorted(MODULES) for case in VALID[name]]


def _strs(values):
    return [str(QQ.to_json(v)[0]).replace("/1", "") for v in values]


@pytest.fixture(params=sorted(MODULES))
def named(request):
    return request.param, MODULES[request.param]()


def test_axioms(named):
    _, fm = named
    rep = verify_fredholm(fm)
    assert rep.ok, rep.failures()
    assert fm.coaction.verify().ok


@pytest.mark.parametrize("name,case", PAIRS)
def test_index_matches_oracle(name, case):
    fm = MODULES[name]()
    assert _strs(ind_f(fm, CASES[case]).values) == GOLDENS[name][case]["index"]


@pytest.mark.parametrize("name,case", PAIRS)
def test_cokernel_character_is_basis_free(name, case):
    fm = MODULES[name]()
    ind = ind_f(fm, CASES[case])
    assert cokernel_by_complement(fm, CASES[case]) == ind.minus


@pytest.mark.parametrize("name,case", PAIRS)
@pytest.mark.parametrize("n", [0, 1])
def test_chern_character_matches_oracle(name, case, n):
    fm = MODULES[name]()
    rep = index_theorem_check(fm, CASES[case], n)
    assert rep.ok, rep.to_json()
    pairing = rep.checks[0].detail["pairing"]
    assert [v[0].replace("/1", "") for v in pairing] == GOLDENS[name][case]["chern_n%d" % n]


def test_phi_f_is_a_cyclic_cocycle(named):
    _, fm = named
    for n in (0, 1):
        obj, coords = phi_f(fm, n)
        assert obj.b(2 * n + 1).apply_sparse(coords) == {}
        assert obj.lam(2 * n).apply_sparse(coords) == coords


class TestModular:
    def test_sweedler_modular_element_is_g(self):
        assert modular_element(sweedler_h4()) == {1: ONE}

    def test_involutive_case_gives_unit(self):
        assert modular_element(group_algebra(PermGroup.symmetric(3))) == {0: ONE}


@pytest.mark.parametrize("name,case", PAIRS)
def test_quantum_index(name, case):
    fm = MODULES[name]()
    rho = modular_element(fm.hopf)
    rep = q_ind_check(fm, CASES[case], rho, 0)
    assert rep.ok, rep.to_json()
    assert q_ind(fm, CASES[case], rho) == ind_f(fm, CASES[case])(rho)


def test_psi_compatibility_for_corepresentations():
    fm = worked_index_z2_module()
    h = fm.hopf
    unit_j = next(iter(h.alg.unit))
    one = Mat.identity(1)
    for sign in (1, -1):
        pi_v = [one if j == unit_j else one.scale(QQ(sign)) for j in range(2)]
        rep = psi_compatibility(fm, pi_v)
        assert rep.ok, rep.failures()
    swap = Mat.from_rows([[0, 1], [1, 0]])
    rep = psi_compatibility(fm, [Mat.identity(2) if j == unit_j else swap for j in range(2)])
    assert rep.ok, rep.failures()


def test_bad_corepresentation_rejected():
    fm = worked_index_z2_module()
    with pytest.raises(VNotCorepresentation):
        psi_compatibility(fm, [Mat.identity(1).scale(QQ(2))] * 2)


def test_broken_module_reports_failures():
    fm = worked_index_module()
    broken = FredholmModule(fm.b, fm.gamma, fm.pi, Mat.identity(4), fm.pi_u, "broken")
    rep = verify_fredholm(broken)
    assert not rep.ok
    names = {c.name for c in rep.failures()}
    assert "gamma F = -F gamma" in names


def test_coaction_checks():
    assert z2_coaction().verify().ok


def _idempotent(s, diag):
    inv = s.inverse()
    d = Mat.from_dict({(i, i): ONE for i, x in enumerate(diag) if x}, len(diag), len(diag))
    return s @ d @ inv


@settings(max_examples=25)
@given(st.lists(small_rationals, min_size=9, max_size=9),
       st.lists(small_rationals, min_size=9, max_size=9),
       st.lists(st.booleans(), min_size=3, max_size=3),
       st.lists(st.booleans(), min_size=3, max_size=3))
def test_odd_powers_of_idempotent_difference_have_equal_trace(a, b, da, db):
    s1 = Mat.from_rows([a[0:3], a[3:6], a[6:9]]) + Mat.identity(3).scale(QQ(5))
    s2 = Mat.from_rows([b[0:3], b[3:6], b[6:9]]) + Mat.identity(3).scale(QQ(5))
    if not (s1.is_invertible() and s2.is_invertible()):
        return
    p, q = _idempotent(s1, da), _idempotent(s2, db)
    assert p @ p == p and q @ q == q
    d = p - q
    base = d.trace()
    assert base == sum(da) - sum(db)
    for n in range(3):
        assert (d ** (2 * n + 1)).trace() == base
