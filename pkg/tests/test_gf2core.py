from math import comb

import pytest
from hypothesis import given, settings

from mvoa import gf2core as g
from mvoa.gf2core import BinaryWord, LinearCode
from strategies import brute_we, brute_words, code_and_word, codes


def test_word_roundtrip_and_ops():
    w = BinaryWord.from_str("1100101")
    assert str(w) == "1100101"
    assert w.weight == 4
    assert w.support() == (0, 1, 4, 6)
    assert str(w.complement()) == "0011010"
    assert w.dot(BinaryWord.from_str("1000001")) == 0
    assert str(w + BinaryWord.ones(7)) == "0011010"
    assert str(w.concat(BinaryWord.from_str("1"))) == "11001011"
    with pytest.raises(ValueError):
        BinaryWord.from_str("102")
    with pytest.raises(ValueError):
        w + BinaryWord.zeros(3)


@given(codes())
def test_span_matches_closure(C):
    assert set(C.words()) == brute_words(C)
    assert C.size() == len(brute_words(C))


@given(codes())
def test_text_roundtrip(C):
    assert LinearCode.from_text(C.to_text()) == C


@given(codes())
def test_dual_by_brute_force(C):
    n = C.length
    words = brute_words(C)
    perp = {v for v in range(1 << n) if all(bin(v & w).count("1") % 2 == 0 for w in words)}
    assert set(g.dual(C).words()) == perp
    assert g.dual(g.dual(C)) == C


@given(codes(max_length=10), codes(max_length=10))
def test_intersection(A, B):
    if A.length != B.length:
        B = LinearCode(A.length, [x & ((1 << A.length) - 1) for x in B.generators])
    assert set(g.intersection(A, B).words()) == brute_words(A) & brute_words(B)


@given(code_and_word(max_length=12))
def test_support_subcode(cv):
    C, beta = cv
    expect = {w for w in brute_words(C) if w & ~beta == 0}
    assert set(g.support_subcode(C, beta).words()) == expect


@given(codes(max_length=12))
def test_coset_representatives(F):
    D = LinearCode(F.length, [x for x in F.basis[: len(F.basis) // 2]])
    reps = g.coset_representatives(F, D)
    assert len(reps) == 1 << (F.dim - D.dim)
    assert reps[0] == 0
    assert len({D.reduce(r) for r in reps}) == len(reps)
    assert all(r in F for r in reps)


@settings(max_examples=1000)
@given(codes(max_length=16, max_gens=12))
def test_weight_enumerator_vs_brute_force(C):
    assert list(g.weight_enumerator(C).counts) == brute_we(brute_words(C), C.length)


@settings(max_examples=1000)
@given(codes(max_length=16, max_gens=12))
def test_macwilliams_vs_brute_force(C):
    W = g.WeightEnumerator(C.length, tuple(brute_we(brute_words(C), C.length)))
    D = g.dual(C)
    assert list(g.macwilliams_transform(W, C.dim).counts) == brute_we(brute_words(D), C.length)


@settings(max_examples=1000)
@given(code_and_word(max_length=16, max_gens=12))
def test_coset_we_vs_brute_force(cv):
    C, v = cv
    expect = brute_we({w ^ v for w in brute_words(C)}, C.length)
    assert list(g.coset_weight_enumerator(C, v).counts) == expect


def test_dual_sum_route_is_taken():
    # dim > codim forces the MacWilliams / dual-sum path
    C = g.even_all(14)
    assert not g._use_direct(C)
    W = g.weight_enumerator(C)
    assert list(W.counts) == [0 if w % 2 else comb(14, w) for w in range(15)]
    odd = g.coset_weight_enumerator(C, 1)
    assert odd.nonzero() == {w: comb(14, w) for w in range(1, 15, 2)}


def test_macwilliams_rejects_inconsistent_input():
    with pytest.raises(ArithmeticError):
        g.macwilliams_transform(g.WeightEnumerator(3, (1, 1, 1, 0)), 1)
    # three weight-1 words cannot sit in a 2-dimensional code of length 3
    with pytest.raises(ArithmeticError):
        g.macwilliams_transform(g.WeightEnumerator(3, (1, 3, 0, 0)), 2)


def test_krawtchouk_orthogonality():
    n = 6
    K = g.krawtchouk(n)
    for i in range(n + 1):
        for j in range(n + 1):
            s = sum(K[i][k] * K[k][j] for k in range(n + 1))
            assert s == (1 << n if i == j else 0)


def test_standard_codes():
    h = g.hamming8()
    assert h.dim == 4 and g.is_self_dual(h) and g.is_doubly_even(h)
    assert g.weight_enumerator(h).nonzero() == {0: 1, 4: 14, 8: 1}
    rm = g.reed_muller(1, 4)
    assert g.weight_enumerator(rm).nonzero() == {0: 1, 8: 30, 16: 1}
    assert g.reed_muller(2, 4).dim == 11
    assert g.dual(g.reed_muller(1, 4)) == g.reed_muller(2, 4)
    assert g.standard_code("hamming8") == h
    assert g.even_all(5).dim == 4


def test_classify_and_min_weight():
    assert g.min_weight(g.zero_code(5)) is None
    c = g.classify(g.hamming8())
    assert (c.is_even, c.is_doubly_even, c.is_self_dual, c.min_weight) == (True, True, True, 4)
    C = LinearCode(6, [0b000011, 0b001100])
    assert g.words_of_weight(C, 2) == [0b000011, 0b001100]
    assert g.bounded_min_weight(C) == 2


@pytest.mark.parametrize("n,k", [(20, 3), (30, 28)])
def test_large_routes_agree(n, k):
    C = LinearCode(n, [((2654435761 * (i + 1)) >> 3) & ((1 << n) - 1) for i in range(k)])
    W = g.weight_enumerator(C)
    D = g.dual(C)
    assert g.macwilliams_transform(W, C.dim) == g.weight_enumerator(D)


def test_compress_and_restrict():
    assert g.compress(0b1011, 0b1010) == 0b11
    C = LinearCode(4, [0b1111])
    R = g.restrict(C, 0b0110)
    assert R.length == 2 and R.basis == (0b11,)
    assert g.direct_sum([C, C]).basis == (0b11110000, 0b1111)
