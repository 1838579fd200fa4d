"""Decision procedure for the code conditions on a pair (D, S).

condition1: D and S even, length divisible by 8, S inside D and inside D^perp.
Pair condition: for each alpha != beta in S, a self-dual Hamming-sum subcode E of D
split along alpha, and maximal doubly-even H^beta, H^(alpha+beta) with equal sums with E.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Sequence

from .gf2core import (
    LinearCode,
    dual,
    is_doubly_even,
    is_even,
    is_self_dual,
    is_self_orthogonal,
    mask_of,
    popcount,
    support_subcode,
    word_str,
    words_of_weight,
)


@dataclass(frozen=True)
class PairWitness:
    alpha: int
    beta: int
    E: LinearCode
    E_blocks: tuple[LinearCode, ...]
    H_beta: LinearCode
    H_alpha_beta: LinearCode


@dataclass
class HypothesisReport:
    length: int
    condition1: dict[str, bool]
    witnesses: list[PairWitness] = field(default_factory=list)
    failures: list[tuple[int, int, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(self.condition1.values()) and not self.failures

    def to_json(self, with_witnesses: bool = False) -> dict:
        n = self.length
        out: dict = {
            "pass": self.passed,
            "condition1": self.condition1,
            "pairs_checked": len(self.witnesses) + len(self.failures),
            "failures": [
                {"alpha": word_str(a, n), "beta": word_str(b, n), "reason": r} for a, b, r in self.failures
            ],
        }
        if with_witnesses:
            out["witnesses"] = [
                {
                    "alpha": word_str(w.alpha, n),
                    "beta": word_str(w.beta, n),
                    "E": w.E.to_text(),
                    "H_beta": w.H_beta.to_text(),
                    "H_alpha_beta": w.H_alpha_beta.to_text(),
                }
                for w in self.witnesses
            ]
        return out


# ---------------------------------------------------------------- Hamming blocks


def _is_hamming_block(C: LinearCode, block: int) -> bool:
    return (
        popcount(block) == 8
        and C.dim == 4
        and all(b & ~block == 0 for b in C.basis)
        and is_doubly_even(C)
        and all(popcount(w) in (0, 4, 8) for w in C.words())
    )


def _hamming_in(block: int, w4: Sequence[int], length: int) -> LinearCode | None:
    """An [8,4,4] code on block spanned by 1_block and weight-4 codewords, if any."""
    inside = [w for w in w4 if w & ~block == 0]
    b0 = block & -block
    through = [w for w in inside if w & b0]
    for a, b, c in itertools.combinations(through, 3):
        if popcount(a & b) != 2 or popcount(a & c) != 2 or popcount(b & c) != 2:
            continue
        code = LinearCode(length, [block, a, b, c])
        if code.dim == 4 and _is_hamming_block(code, block):
            return code
    return None


class _Searcher:
    """Hamming-sum decompositions of supports inside a fixed code D."""

    def __init__(self, D: LinearCode):
        self.D = D
        self.w4 = words_of_weight(D, 4) if D.length <= 64 else []
        self._blocks: dict[int, LinearCode | None] = {}
        self._memo: dict[int, tuple[LinearCode, ...] | None] = {}

    def block_code(self, block: int) -> LinearCode | None:
        if block not in self._blocks:
            self._blocks[block] = _hamming_in(block, self.w4, self.D.length) if block in self.D else None
        return self._blocks[block]

    def decompose(self, support: int) -> tuple[LinearCode, ...] | None:
        """Partition support into 8-blocks each carrying a Hamming subcode of D."""
        if support == 0:
            return ()
        if support in self._memo:
            return self._memo[support]
        t = support & -support
        result = None
        cands = sorted({a | c for a in self.w4 if a & t and a & ~support == 0
                        for c in self.w4 if c & a == 0 and c & ~support == 0})
        for block in cands:
            code = self.block_code(block)
            if code is None:
                continue
            rest = self.decompose(support & ~block)
            if rest is not None:
                result = (code,) + rest
                break
        self._memo[support] = result
        return result


def hamming_decomposition_search(C: LinearCode, support: int | None = None) -> list[LinearCode] | None:
    """Disjoint [8,4,4] subcodes of C covering support (default: all coordinates)."""
    if C.length % 8:
        raise ValueError("length must be divisible by 8")
    s = mask_of(C.length) if support is None else support
    found = _Searcher(C).decompose(s)
    return None if found is None else list(found)


# ---------------------------------------------------------------- maximal doubly-even subcodes


def _extend_once(H: LinearCode, ambient: LinearCode) -> int | None:
    """A word of ambient, outside H, orthogonal to H, weight 0 mod 4; None if H is maximal."""
    inter = LinearCode(ambient.length, _intersect_basis(ambient, dual(H)))
    reps = []
    rows = LinearCode(ambient.length, H.basis)
    for b in inter.basis:
        r = rows.reduce(b)
        if r:
            reps.append(r)
            rows = rows + LinearCode(ambient.length, [r])
    # weight mod 4 is constant on each class r + H (H doubly even, r orthogonal to H)
    for k in range(1, 1 << len(reps)):
        v = 0
        for j in range(len(reps)):
            if k >> j & 1:
                v ^= reps[j]
        if popcount(v) % 4 == 0:
            return v
    return None


def _intersect_basis(A: LinearCode, B: LinearCode) -> tuple[int, ...]:
    return dual(dual(A) + dual(B)).basis


def is_maximal_doubly_even(H: LinearCode, ambient: LinearCode) -> bool:
    return ambient.contains_code(H) and is_doubly_even(H) and _extend_once(H, ambient) is None


def maximal_doubly_even(seed: LinearCode, ambient: LinearCode) -> LinearCode:
    """Grow seed greedily to a maximal doubly-even self-orthogonal subcode of ambient."""
    if not is_doubly_even(seed) or not ambient.contains_code(seed):
        raise ValueError("seed must be a doubly-even subcode of ambient")
    if is_doubly_even(ambient):
        return ambient
    H = seed
    while True:
        v = _extend_once(H, ambient)
        if v is None:
            return H
        H = H + LinearCode(H.length, [v])


# ---------------------------------------------------------------- conditions


def condition1(D: LinearCode, S: LinearCode) -> dict[str, bool]:
    return {
        "D_even": is_even(D),
        "S_even": is_even(S),
        "length_mult_8": D.length % 8 == 0,
        "S_in_D": D.contains_code(S),
        "S_in_D_perp": dual(D).contains_code(S),
    }


def _h_pair(D: LinearCode, E: LinearCode, beta: int, ab: int, sub) -> tuple[LinearCode, LinearCode] | None:
    """H^beta, H^(alpha+beta) with H^beta + E = H^(alpha+beta) + E, or None."""
    Db, Dab = sub(beta), sub(ab)
    Eb, Eab = support_subcode(E, beta), support_subcode(E, ab)
    Hb = maximal_doubly_even(Eb, Db)
    target = Hb + E
    # H^(alpha+beta) must lie in (H^beta + E) restricted to supp(alpha+beta)
    inside = LinearCode(D.length, _intersect_basis(support_subcode(target, ab), Dab))
    seed = Eab
    if is_doubly_even(inside):
        Hab = inside
    else:
        Hab = maximal_doubly_even(seed, LinearCode(D.length, _intersect_basis(inside, Dab)))
    if Hab + E != target or not is_maximal_doubly_even(Hab, Dab):
        return None
    return Hb, Hab


def check_conditions(D: LinearCode, S: LinearCode, ordered: bool = True) -> HypothesisReport:
    """Check both conditions; pairs are ordered (alpha, beta), alpha != beta, unless ordered=False."""
    if D.length != S.length:
        raise ValueError("length mismatch")
    report = HypothesisReport(D.length, condition1(D, S))
    if not all(report.condition1.values()):
        return report
    n = D.length
    full = mask_of(n)
    searcher = _Searcher(D)
    sub_cache: dict[int, LinearCode] = {}

    def sub(w: int) -> LinearCode:
        if w not in sub_cache:
            sub_cache[w] = support_subcode(D, w)
        return sub_cache[w]

    E_cache: dict[int, tuple[LinearCode, tuple[LinearCode, ...]] | None] = {}

    def E_for(alpha: int):
        if alpha not in E_cache:
            left = searcher.decompose(alpha)
            right = searcher.decompose(full & ~alpha)
            if left is None or right is None:
                E_cache[alpha] = None
            else:
                blocks = left + right
                E = LinearCode(n, [b for c in blocks for b in c.basis])
                E_cache[alpha] = (E, blocks)
        return E_cache[alpha]

    words = sorted(S.words())
    pairs = itertools.permutations(words, 2) if ordered else itertools.combinations(words, 2)
    for alpha, beta in pairs:
        found = E_for(alpha)
        if found is None:
            report.failures.append((alpha, beta, "no self-dual Hamming-sum subcode E = E_alpha + E_alpha^c in D"))
            continue
        E, blocks = found
        hs = _h_pair(D, E, beta, alpha ^ beta, sub)
        if hs is None:
            report.failures.append((alpha, beta, "no maximal doubly-even H^beta, H^(alpha+beta) with equal sums"))
            continue
        report.witnesses.append(PairWitness(alpha, beta, E, blocks, hs[0], hs[1]))
    return report


def verify_witness(D: LinearCode, w: PairWitness) -> dict[str, bool]:
    """Recheck every predicate of a witness from the witness data alone."""
    n = D.length
    a, b = w.alpha, w.beta
    full = mask_of(n)
    block_ok = all(_is_hamming_block(c, _support(c)) for c in w.E_blocks)
    supports = [_support(c) for c in w.E_blocks]
    disjoint = sum(popcount(s) for s in supports) == popcount(_or(supports))
    split = all(s & a == s or s & a == 0 for s in supports) and _or(supports) == full
    ab = a ^ b
    Db, Dab = support_subcode(D, b), support_subcode(D, ab)
    return {
        "E_in_D": D.contains_code(w.E),
        "E_self_dual": is_self_dual(w.E),
        "E_is_block_sum": w.E == LinearCode(n, [x for c in w.E_blocks for x in c.basis]),
        "blocks_hamming": block_ok,
        "blocks_disjoint_cover": disjoint and split,
        "H_beta_in_D_beta": Db.contains_code(w.H_beta),
        "H_ab_in_D_ab": Dab.contains_code(w.H_alpha_beta),
        "H_beta_contains_E_beta": w.H_beta.contains_code(support_subcode(w.E, b)),
        "H_ab_contains_E_ab": w.H_alpha_beta.contains_code(support_subcode(w.E, ab)),
        "H_beta_maximal": is_maximal_doubly_even(w.H_beta, Db) and is_self_orthogonal(w.H_beta),
        "H_ab_maximal": is_maximal_doubly_even(w.H_alpha_beta, Dab) and is_self_orthogonal(w.H_alpha_beta),
        "sums_equal": w.H_beta + w.E == w.H_alpha_beta + w.E,
    }


def _support(C: LinearCode) -> int:
    return _or(C.basis)


def _or(xs) -> int:
    out = 0
    for x in xs:
        out |= x
    return out


def report_json(report: HypothesisReport, with_witnesses: bool = False) -> str:
    return json.dumps({"schema": 1, **report.to_json(with_witnesses)}, indent=1)
