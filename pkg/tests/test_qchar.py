import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mvoa import qchar as qc
from mvoa.gf2core import LinearCode, project, support_subcode, weight_enumerator
from mvoa.modrep import (
    H0,
    HALF,
    SIXTEENTH,
    TDecomp,
    descriptor_coset_fuse,
    descriptor_induce,
    induce_collapsed,
    multiplicity,
)
from mvoa.mooncodes import d_e8_cubed, moonshine_codes, series_codes
from mvoa.qchar import DEN, QSeries

ORDER = 2
T = ORDER * DEN


# ---------------------------------------------------------------- series arithmetic


series = st.dictionaries(st.integers(0, 3 * DEN), st.integers(-50, 50), max_size=6).map(lambda d: QSeries(d, 3 * DEN))


def _naive_mul(a, b, t):
    out = {}
    for (e1, c1), (e2, c2) in itertools.product(a.coeffs.items(), b.coeffs.items()):
        if e1 + e2 <= t:
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return QSeries({e: c for e, c in out.items() if c}, t)


@given(series, series)
def test_mul_matches_convolution(a, b):
    assert a * b == _naive_mul(a, b, 3 * DEN)
    assert a * b == b * a
    assert a + b - b == a


@given(series)
def test_inverse(a):
    f = QSeries({**a.coeffs, 0: 1}, a.trunc)
    assert f * f.inverse() == QSeries.one(a.trunc)


def test_substitute_and_shift():
    f = QSeries({0: 1, DEN: 2}, 2 * DEN)
    assert f.substitute(3).coeffs == {0: 1, 3 * DEN: 2}
    assert f.shift(-DEN)[-1] == 1
    assert f[Fraction(1, 3)] == 0
    with pytest.raises(IndexError):
        f[5]


# ---------------------------------------------------------------- Ising characters, by partition counting


def _distinct_half_odd(order, parity):
    """Partitions into distinct parts n - 1/2 with parity of part count, by weight (in 1/2 units)."""
    parts = [2 * n - 1 for n in range(1, order + 1)]
    counts = {}
    for r in range(len(parts) + 1):
        if r % 2 != parity:
            continue
        for combo in itertools.combinations(parts, r):
            s = sum(combo)
            if s <= 2 * order:
                counts[s] = counts.get(s, 0) + 1
    return counts


def _partitions_distinct(order):
    counts = [0] * (order + 1)
    for r in range(order + 1):
        for combo in itertools.combinations(range(1, order + 1), r):
            if sum(combo) <= order:
                counts[sum(combo)] += 1
    return counts


def test_ising_characters_by_partitions():
    order = 6
    c0 = qc.ising_char(H0, order)
    for s, c in _distinct_half_odd(order, 0).items():
        assert c0[Fraction(s, 2)] == c
    c1 = qc.ising_char(HALF, order)
    for s, c in _distinct_half_odd(order, 1).items():
        assert c1[Fraction(s, 2)] == c
    c2 = qc.ising_char(SIXTEENTH, order)
    for n, c in enumerate(_partitions_distinct(order - 1)):
        assert c2[Fraction(1, 16) + n] == c


def test_ising_known_heads():
    assert qc.ising_char(H0, 4).graded() == [1, 0, 1, 1, 2]
    assert qc.ising_char(SIXTEENTH, 3)[Fraction(1, 16)] == 1


# ---------------------------------------------------------------- descriptor characters vs brute force


@st.composite
def descriptors(draw, max_length=12, max_dim=10):
    n = draw(st.integers(1, max_length))
    tau = draw(st.integers(0, (1 << n) - 1))
    comp = ((1 << n) - 1) & ~tau
    k = draw(st.integers(0, max_dim))
    gens = [x & comp for x in draw(st.lists(st.integers(0, (1 << n) - 1), min_size=k, max_size=k))]
    off = draw(st.integers(0, (1 << n) - 1)) & comp
    mult = draw(st.sampled_from((1, 2, 4)))
    return TDecomp(n, tau, LinearCode(n, gens), off, mult)


def brute_descriptor_char(d, order):
    t = order * DEN
    total = QSeries({}, t)
    span = {0}
    for b in d.gamma_code.basis:
        span |= {w ^ b for w in span}
    for c in span:
        w = c ^ d.gamma_offset
        term = QSeries.one(t)
        for i in range(d.ambient_length):
            if d.tau >> i & 1:
                h = SIXTEENTH
            else:
                h = HALF if w >> i & 1 else H0
            term = term * qc.ising_char(h, order)
        total = total + term
    return total.scale(d.mult)


@settings(max_examples=1000)
@given(descriptors())
def test_descriptor_char_vs_brute_force(d):
    assert qc.descriptor_char(d, ORDER) == brute_descriptor_char(d, ORDER)


@settings(max_examples=1000)
@given(descriptors(), st.data())
def test_gamma_offset_invariance(d, data):
    words = list(d.gamma_code.words()) if d.gamma_code.dim <= 10 else [0]
    c = data.draw(st.sampled_from(words))
    shifted = TDecomp(d.ambient_length, d.tau, d.gamma_code, d.gamma_offset ^ c, d.mult)
    assert qc.descriptor_char(shifted, ORDER) == qc.descriptor_char(d, ORDER)
    # fusing with a word supported on tau does nothing either
    assert descriptor_coset_fuse(d, d.tau) == d


@st.composite
def induction_data(draw):
    n = draw(st.integers(2, 10))
    full = (1 << n) - 1
    D = LinearCode(n, draw(st.lists(st.integers(0, full), max_size=4)))
    F = D + LinearCode(n, draw(st.lists(st.integers(0, full), max_size=3)))
    tau = draw(st.integers(0, full))
    comp = full & ~tau
    off = draw(st.integers(0, full)) & comp
    return D, F, TDecomp(n, tau, project(D, comp), off, 1)


@settings(max_examples=300)
@given(induction_data())
def test_collapsed_induction_equals_explicit_sum(data):
    D, F, d = data
    explicit = qc.sum_series(qc.descriptor_chars(descriptor_induce(d, D, F), ORDER), T)
    assert qc.descriptor_char(induce_collapsed(d, D, F), ORDER) == explicit


def test_moonshine_induction_collapses():
    pair = moonshine_codes()
    D3 = d_e8_cubed()
    explicit = dict(qc._induced_terms(4 * DEN))
    for chi in pair.S.words():
        c = induce_collapsed(qc.w_descriptor(chi), D3, pair.D)
        assert c.mult == multiplicity(support_subcode(pair.D, chi))
        if chi:
            assert qc.descriptor_char(c, 4) == explicit[chi]
        if bin(chi).count("1") == 24:
            assert c.mult == 2 ** 6


def test_chi_zero_term_is_code_character():
    pair = moonshine_codes()
    D3 = d_e8_cubed()
    ds = descriptor_induce(qc.w_descriptor(0), D3, pair.D)
    induced = qc.sum_series(qc.descriptor_chars(ds, 4), 4 * DEN)
    assert induced == qc.code_char(weight_enumerator(pair.D), 4)
    assert induced == qc.moonshine_terms(4)[0]


# ---------------------------------------------------------------- named characters


def test_e8_character():
    q = qc.e8_char(6)
    assert q == qc.e8_oracle(6)
    assert q.graded(4) == [1, 248, 4124, 34752, 213126]
    terms = qc.e8_terms(2)
    w2 = {a: t[2] for a, t in terms.items()}
    assert w2[0] == 156 and w2[0xFFFF] == 128
    assert sorted(v for a, v in w2.items() if bin(a).count("1") == 8) == [128] * 30


def test_j_oracle():
    j = qc.j_oracle(4)
    assert [j[k] for k in range(-1, 4)] == [1, 0, 196884, 21493760, 864299970]


def test_moonshine_char():
    q = qc.moonshine_char(4)
    assert q.graded(4) == [1, 0, 196884, 21493760, 864299970]
    assert q.shift(-DEN) == qc.j_oracle(4)
    # only integer weights occur in a holomorphic module
    assert all(e % DEN == 0 for e in q.coeffs)


def test_char_2b():
    r = qc.char_2B(4)
    assert (r.ch_plus[2], r.ch_minus[2], r.trace[2]) == (98580, 98304, 276)
    assert r.ch_plus + r.ch_minus == qc.moonshine_char(4)
    assert r.ch_minus == r.closed_form_minus
    assert r.trace.graded(4) == [1, 0, 276, -2048, 11202]


def test_char_3c():
    assert qc.char_3C_direct(6) == qc.char_3C(6)
    assert qc.char_3C(6).graded(6) == [1, 0, 0, 248, 0, 0, 4124]


def test_series_character_n1_matches_moonshine():
    assert qc.series_char(1, 3) == qc.moonshine_char(3)


def test_series_weight_one_vanishes_n2():
    q = qc.series_char(2, 1)
    assert q[0] == 1 and q[1] == 0
    assert series_codes(2).S.dim == 9


def test_serialisation():
    q = qc.e8_char(1)
    assert q.to_csv().splitlines()[:2] == ["0,1", "48,248"]
    obj = q.to_json_obj()
    assert obj["denominator"] == DEN
    assert obj["coefficients"][1] == [48, "248"]
