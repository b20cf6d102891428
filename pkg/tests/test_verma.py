"""Module builder tests: forms, radicals, singular vectors, physical
families, and the two construction paths."""

from fractions import Fraction as F

import pytest

from qads.pbw import Algebra
from qads.roots import RootData, Weight, lowest_weight_of
from qads import verma as vm


@pytest.fixture(scope="module")
def alg(fld):
    return Algebra(fld)


@pytest.fixture(scope="module")
def calg(cfld):
    return Algebra(cfld)


@pytest.fixture(scope="module")
def rd():
    return RootData(12, 1)


@pytest.fixture(scope="module")
def massless(alg):
    return vm.build_physical_irrep(alg, 2, 1)


def test_first_level_norms(fld, alg):
    # <E1 v, E1 v> = +[h1], <E2 v, E2 v> = -[h2]_{q_2}: the sign split
    # defining the spacetime form
    mu = lowest_weight_of(3, 1)  # h = (4, -2)
    V = vm.build_verma(alg, mu, (1, 1), prune=False)
    assert V.gram[(1, 0)] == [[fld.bracket(4)]]
    assert V.gram[(0, 1)] == [[-fld.bracket(-2, F(1, 2))]]
    # massless values: +[3] > 0 and -[-2] = [2] > 0
    mu = lowest_weight_of(2, 1)
    V = vm.build_verma(alg, mu, (1, 1), prune=False)
    assert V.gram[(1, 0)] == [[fld.bracket(3)]]
    assert V.gram[(0, 1)] == [[fld.bracket(2, F(1, 2))]]


def test_string_norm_products(fld, alg):
    # sl2 strings in both simple directions: norm of E_i^k v is the
    # product over j <= k of s_i [j]_{q_i} [h_i + j - 1]_{q_i} with
    # s_1 = +1, s_2 = -1 after unfolding the star signs
    mu = lowest_weight_of(F(7, 2), F(3, 2))  # h = (5, -3)
    V = vm.build_verma(alg, mu, (6, 0), prune=False)
    acc = fld.one
    for k in range(1, 7):
        acc = acc * fld.bracket(k) * fld.bracket(mu.h1 + k - 1)
        assert V.gram[(k, 0)] == [[acc]]
    V = vm.build_verma(alg, mu, (0, 12), prune=False)
    acc = fld.one
    for k in range(1, 13):
        acc = acc * (-fld.bracket(k, F(1, 2))) * \
            fld.bracket(mu.h2 + k - 1, F(1, 2))
        assert V.gram[(0, k)] == [[acc]]
    # [6]_q = 0 wall: the energy string always dies at six steps
    assert fld.is_zero(V.gram[(0, 12)][0][0])


def test_omega_trivial(alg):
    om = vm.build_physical_irrep(alg, 6, 0)
    assert om.total_dim == 1
    assert om.lw == Weight(6, 6)
    assert vm.is_unitary(om).unitary


def test_vector_rep(alg):
    with pytest.raises(vm.NotPhysical):
        vm.build_physical_irrep(alg, -1, 0)
    v5 = vm.build_physical_irrep(alg, -1, 0, force=True)
    assert v5.total_dim == 5
    want = {(F(-1), F(0)): 1, (F(0), F(-1)): 1, (F(0), F(0)): 1,
            (F(0), F(1)): 1, (F(1), F(0)): 1}
    assert v5.character() == want
    assert not vm.is_unitary(v5, e_window=2).unitary
    assert vm.relations_check(v5) and vm.serre_check(v5)


SINGULAR_PATTERNS = {
    (F(5, 2), F(1)): [(F(5, 2), F(-2)), (F(5, 2), F(1))],
    (F(2), F(1)): [(F(2), F(-2)), (F(2), F(1)), (F(3), F(0))],
    (F(1), F(1, 2)): [(F(1), F(-3, 2)), (F(1), F(1, 2)),
                      (F(2), F(1, 2))],
    (F(1, 2), F(0)): [(F(1, 2), F(-1)), (F(1, 2), F(0)),
                      (F(5, 2), F(0))],
}


@pytest.mark.parametrize("label", sorted(SINGULAR_PATTERNS))
def test_singular_patterns(alg, rd, label):
    mu = lowest_weight_of(*label)
    got = vm.primitive_singular_weights(alg, mu, vm.default_box(rd, mu),
                                        rd.window)
    assert sorted(got) == sorted(SINGULAR_PATTERNS[label])


def test_margin_flags(alg):
    # with a deliberately small box the high singulars get flagged
    mu = lowest_weight_of(2, 1)
    out = vm.find_singular_vectors(alg, mu, (6, 12))
    by_grade = {s.grade: s for s in out}
    assert not by_grade[(0, 0)].truncated
    assert not by_grade[(0, 3)].truncated  # E = 2, ceiling is 2
    assert by_grade[(1, 2)].truncated      # E = 3 > ceiling


def test_massless_build(fld, massless):
    L = massless
    assert L.total_dim == 124
    ch = L.character()
    assert min(k[0] for k in ch) == 2 and max(k[0] for k in ch) == 10
    # mirror symmetry in spin
    assert all(ch[(e, -jz)] == n for (e, jz), n in ch.items())
    assert vm.is_unitary(L).unitary
    assert vm.relations_check(L)
    assert vm.serre_check(L)


def test_both_paths_agree(alg, massless):
    Ls = vm.build_physical_irrep(alg, 2, 1, path='shift')
    assert Ls.total_dim == massless.total_dim == 124
    assert Ls.character() == massless.character()
    assert vm.is_unitary(Ls).unitary
    assert vm.relations_check(Ls) and vm.serre_check(Ls)


def test_classical_window_agreement(alg, calg, massless):
    # below the window the quantum quotient matches the classical one;
    # at E = 6 exactly, the [4][6] = 0 string null removes a j=5
    # multiplet on the quantum side
    mu = lowest_weight_of(2, 1)
    CL = vm.quotient_by_radical(vm.build_verma(calg, mu, (5, 12)))
    chq = {k: v for k, v in massless.character().items() if k[0] < 6}
    chc = {k: v for k, v in CL.character().items() if k[0] < 6}
    assert chq == chc
    at6q = {k: v for k, v in massless.character().items() if k[0] == 6}
    at6c = {k: v for k, v in CL.character().items() if k[0] == 6}
    missing = {jz: at6c[(F(6), jz)] - at6q.get((F(6), jz), 0)
               for (_, jz) in at6c}
    assert missing == {F(jz): 1 for jz in range(-5, 6)}


def test_degenerate_form_raises(alg):
    mu = lowest_weight_of(2, 1)
    V = vm.build_verma(alg, mu, (4, 6), prune=False)
    with pytest.raises(vm.DegenerateForm):
        vm.is_unitary(V)


def test_singletons(alg):
    for e0, s in ((F(1, 2), F(0)), (F(1), F(1, 2))):
        L = vm.build_physical_irrep(alg, e0, s)
        assert L.total_dim == 72
        assert L.meta['closed']
        assert vm.is_unitary(L).unitary
        ch = L.character()
        assert min(k[0] for k in ch) == e0
        assert max(k[0] for k in ch) == 12 - e0
        assert vm.relations_check(L)


def test_massive_window(alg):
    L = vm.build_physical_irrep(alg, F(5, 2), 1, force=True)
    assert not L.meta['closed']
    assert L.meta['unitarity_window'] == 6
    cert = vm.is_unitary(L)
    assert not cert.unitary
    assert cert.violation[0] == (F(13, 2), F(-5))  # the X_1^4 string state
    assert vm.is_unitary(L, e_window=6).unitary
    with pytest.raises(ValueError):
        vm.is_unitary(L, e_window=20)  # beyond the stored range
    assert vm.relations_check(L) and vm.serre_check(L)


def test_box_too_small(alg):
    with pytest.raises(vm.BoxTooSmall):
        vm.build_irrep(alg, lowest_weight_of(2, 1), e_max=5)


def test_cutoff_stability(alg, rd, massless):
    # a strictly larger rectangle changes nothing: same character, same
    # primitive singular pattern below the window
    mu = lowest_weight_of(2, 1)
    L2 = vm.build_irrep(alg, mu, box=(11, 24))
    assert L2.character() == massless.character()
    a = vm.primitive_singular_weights(alg, mu, (9, 20), rd.window)
    b = vm.primitive_singular_weights(alg, mu, (11, 24), rd.window)
    assert a == b


def test_antipode_axiom_on_blocks(fld, alg):
    # m (S x id) Delta (X) = eps(X) = 0 for raising and lowering
    # generators, as exact block matrices on the vector irrep
    from qads.pbw import D_SIMPLE, antipode_scale_lower, antipode_scale_raise
    v5 = vm.build_physical_irrep(alg, -1, 0, force=True)
    for i in (1, 2):
        d = D_SIMPLE[i]
        for kind in ('up', 'down'):
            ssc = (antipode_scale_raise if kind == 'up'
                   else antipode_scale_lower)(fld, i)
            for g in v5.support():
                B = v5.block(kind, i, g)
                if B is None:
                    continue
                w = v5.weight_at(g)
                h = w.h1 if i == 1 else w.h2
                hs = h + (2 if kind == 'up' else -2)
                # S(X) q_i^{H_i/2} acts Cartan-first, the mirrored
                # S(q_i^{-H_i/2}) X = q_i^{H_i/2} X acts Cartan-last
                first = ssc * fld.qpow(d * F(h, 2))
                second = fld.qpow(d * F(hs, 2))
                for row in B:
                    for x in row:
                        assert fld.is_zero(first * x + second * x)
