import json

import pytest

from mvoa import hypotheses as h
from mvoa.gf2core import LinearCode, hamming8, is_doubly_even, support_subcode
from mvoa.mooncodes import e8_codes

NEG_D = LinearCode(8, [0x0F, 0xF0])
NEG_S = LinearCode(8, [0xFF])


def test_condition1_flags():
    S, D = e8_codes()
    assert all(h.condition1(D, S).values())
    bad = h.condition1(LinearCode(8, [0b111]), LinearCode(8))
    assert bad["D_even"] is False


def test_hamming_search_on_d_e8():
    _, D = e8_codes()
    blocks = h.hamming_decomposition_search(D)
    assert blocks is not None and len(blocks) == 2
    supports = [h._support(b) for b in blocks]
    assert supports[0] & supports[1] == 0 and supports[0] | supports[1] == 0xFFFF
    assert all(h._is_hamming_block(b, s) for b, s in zip(blocks, supports))


def test_hamming_search_fails_without_weight4_structure():
    assert h.hamming_decomposition_search(NEG_D) is None
    with pytest.raises(ValueError):
        h.hamming_decomposition_search(LinearCode(6))


def test_maximal_doubly_even():
    C = LinearCode(8, list(hamming8().basis) + [0b11])
    H = h.maximal_doubly_even(LinearCode(8), C)
    assert is_doubly_even(H) and h.is_maximal_doubly_even(H, C)
    assert not h.is_maximal_doubly_even(LinearCode(8), C)
    with pytest.raises(ValueError):
        h.maximal_doubly_even(LinearCode(8, [0b11]), C)


def test_e8_pair_passes_with_witnesses():
    S, D = e8_codes()
    rep = h.check_conditions(D, S)
    assert rep.passed
    assert len(rep.witnesses) == 32 * 31
    for w in rep.witnesses[::37]:
        checks = h.verify_witness(D, w)
        assert all(checks.values()), checks


def test_unordered_pairs():
    S, D = e8_codes()
    rep = h.check_conditions(D, S, ordered=False)
    assert rep.passed and len(rep.witnesses) == 32 * 31 // 2


def test_negative_pair_fails_with_reason():
    rep = h.check_conditions(NEG_D, NEG_S)
    assert all(rep.condition1.values())
    assert not rep.passed
    assert rep.failures and "Hamming" in rep.failures[0][2]


def test_tampered_witness_is_caught():
    S, D = e8_codes()
    w = h.check_conditions(D, S).witnesses[5]
    bogus = h.PairWitness(w.alpha, w.beta, w.E, w.E_blocks, LinearCode(16), w.H_alpha_beta)
    assert not all(h.verify_witness(D, bogus).values())


def test_h_pair_subcodes_have_right_support():
    S, D = e8_codes()
    rep = h.check_conditions(D, S)
    for w in rep.witnesses[:50]:
        assert support_subcode(D, w.beta).contains_code(w.H_beta)
        assert w.H_beta + w.E == w.H_alpha_beta + w.E


def test_report_json():
    rep = h.check_conditions(NEG_D, NEG_S)
    obj = json.loads(h.report_json(rep))
    assert obj["schema"] == 1 and obj["pass"] is False
    assert obj["failures"][0]["alpha"] in ("00000000", "11111111")
    S, D = e8_codes()
    obj = json.loads(h.report_json(h.check_conditions(D, S), with_witnesses=True))
    assert obj["pass"] and len(obj["witnesses"]) == 992


def test_length_mismatch():
    with pytest.raises(ValueError):
        h.check_conditions(LinearCode(8), LinearCode(16))
