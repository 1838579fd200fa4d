import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import divisor_sigma

from mvoa import latticekit as lk
from mvoa.mooncodes import is_doubled, orbifold_chain


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_variants_even_unimodular(m):
    L = lk.e8_variant(m)
    c = lk.classify_lattice(L)
    assert c.even and c.unimodular and c.det == 1
    assert lk.norm_counts(L, 2)[Fraction(2)] == 240
    assert lk.frame_contained(L)
    assert len(lk.frame_cosets(L)) == 256


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_frame_tau_code_is_chain_code(m):
    assert lk.frame_tau_code(lk.e8_variant(m)) == orbifold_chain()[m - 1].S


def test_fifth_chain_code_not_from_a_lattice():
    S5 = orbifold_chain()[4].S
    assert any(not is_doubled(w, 16) for w in S5.words())
    for m in range(1, 5):
        assert all(is_doubled(w, 16) for w in lk.frame_tau_code(lk.e8_variant(m)).words())


@pytest.mark.parametrize("m", [3, 4])
def test_printed_lists_are_not_integral(m):
    gens = lk.e8_generators(m, printed=True)
    pairs = [lk.dot(a, b) for a, b in itertools.combinations(gens, 2)]
    norms = [lk.dot(a, a) for a in gens]
    assert any(p.denominator != 1 for p in pairs) or any(n % 2 for n in norms)


def test_printed_lists_differ_by_one_sign():
    for m in (3, 4):
        fixed, printed = lk.e8_generators(m), lk.e8_generators(m, printed=True)
        diff = [(i, j) for i, (a, b) in enumerate(zip(fixed, printed)) for j in range(8) if a[j] != b[j]]
        assert len(diff) == 1


def test_theta_matches_eisenstein_e4():
    th = lk.theta_series(lk.e8_variant(2), 5)
    expect = [1] + [240 * int(divisor_sigma(n, 3)) for n in range(1, 6)]
    assert th.graded(5) == expect


def test_scaled_identity():
    Z = lk.scaled_identity(1)
    assert not lk.classify_lattice(Z).even
    L2 = lk.scaled_identity(2)
    c = lk.classify_lattice(L2)
    assert c.even and c.det == 2 ** 16 and not c.unimodular
    assert lk.norm_counts(L2, 4) == {Fraction(0): 1, Fraction(4): 16}


def test_contains_and_units():
    L = lk.e8_variant(1)
    assert L.contains([Fraction(1, 2)] * 8)
    assert not L.contains([1] + [0] * 7)
    with pytest.raises(ValueError):
        lk.Lattice.from_generators([[Fraction(1, 3)] + [0] * 7])


def test_vectors_of_norm_count():
    vs = lk.vectors_of_norm(lk.e8_variant(1), 2)
    assert len(vs) == 240
    assert all(sum(x * x for x in v) == 2 * lk.Q ** 2 for v in vs)


# ---------------------------------------------------------------- conformal vectors: Fock-space oracle


def _state(eps, a):
    """(1/16) a(-1)^2 1 + (eps/4)(e^a + e^-a) as {('h', a, a): c, ('e', v): c}."""
    a = tuple(Fraction(x) for x in a)
    na = tuple(-x for x in a)
    return {("h", a, a): Fraction(1, 16), ("e", a): Fraction(eps, 4), ("e", na): Fraction(eps, 4)}


def _form(x, y):
    total = Fraction(0)
    for kx, cx in x.items():
        for ky, cy in y.items():
            if kx[0] != ky[0]:
                continue
            if kx[0] == "e":
                total += cx * cy * (kx[1] == ky[1])
            else:
                # Wick: <a1(-1)a2(-1)1, b1(-1)b2(-1)1> sums the two contractions
                a1, a2, b1, b2 = kx[1], kx[2], ky[1], ky[2]
                total += cx * cy * (lk.dot(a1, b1) * lk.dot(a2, b2) + lk.dot(a1, b2) * lk.dot(a2, b1))
    return total


def _norm4(L):
    return [tuple(Fraction(x, lk.Q) for x in v) for v in lk.vectors_of_norm(L, 4)]


def test_cv_inner_matches_fock_oracle():
    vecs = _norm4(lk.e8_variant(1))[::97]
    for a, b in itertools.product(vecs, repeat=2):
        for eps, delta in itertools.product((1, -1), repeat=2):
            assert lk.cv_inner(eps, a, delta, b) == _form(_state(eps, a), _state(delta, b))


def test_conformal_vector_norm():
    a = [2, 0, 0, 0, 0, 0, 0, 0]
    # an Ising vector has <e, e> = c/2 = 1/4
    assert lk.cv_inner(1, a, 1, a) == Fraction(1, 4)
    assert lk.cv_inner(1, a, -1, a) == 0
    with pytest.raises(ValueError):
        lk.cv_inner(1, [1] * 8, 1, a)


def test_bound_scan_e8():
    r = lk.conformal_bound_scan(lk.e8_variant(1))
    assert r.labels == 2160
    assert r.violations == []
    assert r.max_offdiag == Fraction(9, 128)
    assert r.min_distance >= Fraction(1, 3)


def test_bound_scan_oracle_on_sample():
    vecs = _norm4(lk.e8_variant(1))
    reps = [v for v in vecs if v > tuple(-x for x in v)][::41]
    top = max(lk.cv_inner(1, a, 1, b) for a, b in itertools.combinations(reps, 2))
    assert top <= Fraction(9, 128)


def test_bound_scan_on_2z8():
    r = lk.conformal_bound_scan(lk.scaled_identity(2))
    assert r.labels == 16 and r.max_offdiag == 0 and not r.violations


@given(st.integers(0, 2159), st.integers(0, 239))
def test_tau_action_involutive(i, j):
    vecs = _norm4(lk.e8_variant(1))
    roots = [tuple(Fraction(x, lk.Q) for x in v) for v in lk.vectors_of_norm(lk.e8_variant(1), 2)]
    label = (1, vecs[i % len(vecs)])
    b = vecs[j % len(vecs)]
    once = lk.tau_action(b, label)
    assert lk.tau_action(b, once) == label
    assert lk.tau_sign(b, roots[j]) in (1, -1)
