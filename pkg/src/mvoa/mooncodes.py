"""The named codes: E8 frame codes, orbifold chain, moonshine, Leech and series pairs."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .gf2core import (
    BinaryWord,
    LinearCode,
    dual,
    intersection,
    is_even,
    mask_of,
    min_weight,
    popcount,
    reed_muller,
    words_of_weight,
)

BLOCK = 16
ONES16 = mask_of(BLOCK)


def _w(s: str) -> int:
    return BinaryWord.from_str(s).bits


S_E8_GENERATORS = (
    "1" * 16,
    "0" * 8 + "1" * 8,
    ("0" * 4 + "1" * 4) * 2,
    ("00" + "11") * 4,
    "01" * 8,
)

CHAIN_GENERATORS = (
    "1" * 16,
    "1" * 8 + "0" * 8,
    ("1" * 4 + "0" * 4) * 2,
    "1100" * 4,
    "10" * 8,
)


@lru_cache(maxsize=None)
def e8_codes() -> tuple[LinearCode, LinearCode]:
    S = LinearCode(BLOCK, [_w(g) for g in S_E8_GENERATORS])
    return S, dual(S)


def s_e8_words() -> list[int]:
    return sorted(e8_codes()[0].words())


@dataclass(frozen=True)
class ChainStage:
    index: int
    S: LinearCode
    D: LinearCode


@lru_cache(maxsize=None)
def orbifold_chain() -> tuple[ChainStage, ...]:
    out = []
    for i in range(1, 6):
        S = LinearCode(BLOCK, [_w(g) for g in CHAIN_GENERATORS[:i]])
        out.append(ChainStage(i, S, dual(S)))
    return tuple(out)


def verify_chain() -> dict[str, bool]:
    chain = orbifold_chain()
    S_E8, D_E8 = e8_codes()
    even16 = LinearCode(BLOCK, [1 | 1 << i for i in range(1, BLOCK)])
    checks = {
        "D1_all_even": chain[0].D == even16,
        "S2_listed": set(chain[1].S.words()) == {0, _w("1" * 8 + "0" * 8), _w("0" * 8 + "1" * 8), ONES16},
        "nested": all(
            chain[i + 1].S.contains_code(chain[i].S) and chain[i].D.contains_code(chain[i + 1].D)
            and chain[i + 1].S.dim == chain[i].S.dim + 1
            for i in range(4)
        ),
        "S5_is_S_E8": chain[4].S == S_E8,
        "D5_is_D_E8": chain[4].D == D_E8,
        "dims": [st.D.dim for st in chain] == [15, 14, 13, 12, 11],
    }
    return checks


# ---------------------------------------------------------------- moonshine pair


def blocks(word: int, nblocks: int) -> tuple[int, ...]:
    return tuple(word >> (BLOCK * i) & ONES16 for i in range(nblocks))


def join(parts: Sequence[int]) -> int:
    out = 0
    for i, p in enumerate(parts):
        out |= p << (BLOCK * i)
    return out


@dataclass(frozen=True)
class MoonshinePair:
    S: LinearCode
    D: LinearCode


def _series_generators(n: int) -> list[int]:
    nb = 2 * n + 1
    gens = [ONES16 << (BLOCK * i) for i in range(1, nb)]
    gens += [join([a] * nb) for a in e8_codes()[0].basis]
    return gens


@lru_cache(maxsize=None)
def series_codes(n: int) -> MoonshinePair:
    """S(n) on 2n+1 blocks of 16, and its dual."""
    if n < 1:
        raise ValueError("n must be positive")
    S = LinearCode(BLOCK * (2 * n + 1), _series_generators(n))
    return MoonshinePair(S, dual(S))


@lru_cache(maxsize=None)
def moonshine_codes() -> MoonshinePair:
    S_E8, _ = e8_codes()
    gens = [ONES16, ONES16 << BLOCK, ONES16 << 2 * BLOCK]
    gens += [join([a, a, a]) for a in S_E8.basis]
    S = LinearCode(3 * BLOCK, gens)
    return MoonshinePair(S, dual(S))


def d_e8_cubed() -> LinearCode:
    _, D = e8_codes()
    return LinearCode(3 * BLOCK, [b << (BLOCK * i) for i in range(3) for b in D.basis])


def shape_words() -> set[int]:
    """The set-builder description: (a,a,a), (a,a,a^c), (a,a^c,a), (a^c,a,a)."""
    out = set()
    for a in s_e8_words():
        c = a ^ ONES16
        out |= {join([a, a, a]), join([a, a, c]), join([a, c, a]), join([c, a, a])}
    return out


def in_d_nat_by_sum(word: int, nblocks: int = 3) -> bool:
    _, D_E8 = e8_codes()
    parts = blocks(word, nblocks)
    total = 0
    for p in parts:
        total ^= p
    return all(popcount(p) % 2 == 0 for p in parts) and total in D_E8


def verify_moonshine(samples: int = 10_000, seed: int = 0) -> dict[str, object]:
    pair = moonshine_codes()
    S_set = set(pair.S.words())
    rng = random.Random(seed)
    agree = 0
    for _ in range(samples):
        # random even triple; half the draws are forced into D by fixing the third block
        parts = [rng.getrandbits(BLOCK) for _ in range(3)]
        parts = [p ^ (popcount(p) & 1) for p in parts]
        if rng.random() < 0.5:
            _, D_E8 = e8_codes()
            target = rng.choice(list(D_E8.basis)) if rng.random() < 0.5 else 0
            parts[2] = parts[0] ^ parts[1] ^ target
        w = join(parts)
        agree += (w in pair.D) == in_d_nat_by_sum(w)
    return {
        "dim_S": pair.S.dim,
        "dim_D": pair.D.dim,
        "set_builder_matches_span": S_set == shape_words(),
        "membership_agreements": agree,
        "membership_samples": samples,
        "contains_D_E8_cubed": pair.D.contains_code(d_e8_cubed()),
        "S_in_D": pair.D.contains_code(pair.S),
        "double_dual": dual(pair.D) == pair.S,
        "no_weight_2": not words_of_weight(pair.D, 2),
    }


# ---------------------------------------------------------------- Leech pair


DOUBLED_PAIR = 0b11


@lru_cache(maxsize=None)
def lambda_codes() -> tuple[LinearCode, LinearCode]:
    S = moonshine_codes().S
    S_L = intersection(S, dual(LinearCode(3 * BLOCK, [DOUBLED_PAIR])))
    return S_L, dual(S_L)


def is_doubled(word: int, length: int) -> bool:
    return all((word >> (2 * i) & 1) == (word >> (2 * i + 1) & 1) for i in range(length // 2))


def adjacent_pairs(length: int) -> list[int]:
    return [DOUBLED_PAIR << (2 * i) for i in range(length // 2)]


# ---------------------------------------------------------------- assembly


@dataclass(frozen=True)
class AssemblyRow:
    """chi = (b_0, ..., b_{2n}); block i carries V^{b_i}, fused with R when twisted[i]."""

    chi: int
    alpha: int
    shape: str
    parts: tuple[int, ...]
    twisted: tuple[bool, ...]


def series_recipe(chi: int, n: int) -> AssemblyRow:
    nb = 2 * n + 1
    parts = blocks(chi, nb)
    a0 = parts[0]
    if any(p not in (a0, a0 ^ ONES16) for p in parts):
        raise ValueError("word is not of the form (a or a^c, ...)")
    # pick alpha so that it occurs an odd number of times
    alpha = a0 if sum(p == a0 for p in parts) % 2 == 1 else a0 ^ ONES16
    twisted = tuple(p != alpha for p in parts)
    major = max((a0, a0 ^ ONES16), key=lambda w: sum(p == w for p in parts))
    shape = "".join("a" if p == major else "c" for p in parts)
    return AssemblyRow(chi, alpha, shape, parts, twisted)


def assembly_table() -> list[AssemblyRow]:
    rows = []
    for chi in sorted(moonshine_codes().S.words()):
        row = series_recipe(chi, 1)
        if row.shape not in ("aaa", "aac", "aca", "caa"):
            raise AssertionError(f"unexpected shape {row.shape}")
        rows.append(row)
    return rows


def holomorphy_check(D: LinearCode, S: LinearCode) -> bool:
    if D.length != S.length:
        raise ValueError("length mismatch")
    return S == dual(D)


# ---------------------------------------------------------------- RM(1,4) automorphisms

Perm = tuple[int, ...]


def _affine_generators() -> dict[str, Perm]:
    gens: dict[str, Perm] = {}
    for i in range(4):
        gens[f"g({i + 1})"] = tuple(v ^ (1 << i) for v in range(16))
    for i, j in itertools.permutations(range(4), 2):
        gens[f"g({i + 1},{j + 1})"] = tuple(v ^ ((v >> j & 1) << i) for v in range(16))
    return gens


def permute_word(word: int, perm: Perm) -> int:
    out = 0
    for i, p in enumerate(perm):
        if word >> i & 1:
            out |= 1 << p
    return out


def _compose(p: Perm, q: Perm) -> Perm:
    """Apply p then q."""
    return tuple(q[x] for x in p)


def _inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def schreier_sims_order(gens: Sequence[Perm], degree: int) -> int:
    """Group order by deterministic Schreier-Sims."""
    ident = tuple(range(degree))
    base: list[int] = []
    levels: list[list[Perm]] = []
    trans: list[dict[int, Perm]] = []

    def orbit(point: int, level_gens: list[Perm]) -> dict[int, Perm]:
        reps = {point: ident}
        queue = [point]
        for x in queue:
            for g in level_gens:
                y = g[x]
                if y not in reps:
                    reps[y] = _compose(reps[x], g)
                    queue.append(y)
        return reps

    def sift(g: Perm, start: int) -> tuple[Perm, int]:
        for i in range(start, len(base)):
            y = g[base[i]]
            if y not in trans[i]:
                return g, i
            g = _compose(g, _inverse(trans[i][y]))
        return g, len(base)

    def install(g: Perm, lo: int, hi: int) -> None:
        # g fixes base[:hi]; it joins the generators of levels lo..hi
        if hi == len(base):
            base.append(next(x for x in range(degree) if g[x] != x))
            levels.append([])
            trans.append({})
        for k in range(lo, hi + 1):
            levels[k].append(g)
            trans[k] = orbit(base[k], levels[k])

    for g in gens:
        h, j = sift(g, 0)
        if h != ident:
            install(h, 0, j)

    i = len(base) - 1
    while i >= 0:
        found = False
        for x, u in list(trans[i].items()):
            for s in levels[i]:
                h = _compose(_compose(u, s), _inverse(trans[i][s[x]]))
                r, j = sift(h, i + 1)
                if r != ident:
                    install(r, i + 1, j)
                    i = j
                    found = True
                    break
            if found:
                break
        if not found:
            i -= 1

    order = 1
    for t in trans:
        order *= len(t)
    return order


@dataclass(frozen=True)
class AutGroup:
    generators: dict[str, Perm]
    order: int
    preserves: dict[str, bool]


@lru_cache(maxsize=None)
def rm41_aut() -> AutGroup:
    gens = _affine_generators()
    S = e8_codes()[0]
    rm = reed_muller(1, 4)
    if rm != S:
        raise AssertionError("RM(1,4) does not match the S_E8 generators")
    preserves = {name: LinearCode(BLOCK, [permute_word(b, p) for b in S.basis]) == S for name, p in gens.items()}
    order = schreier_sims_order(list(gens.values()), BLOCK)
    return AutGroup(gens, order, preserves)


# ---------------------------------------------------------------- registry


def named_code(key: str) -> LinearCode:
    S_E8, D_E8 = e8_codes()
    if key == "s_e8":
        return S_E8
    if key == "d_e8":
        return D_E8
    if key == "s_nat":
        return moonshine_codes().S
    if key == "d_nat":
        return moonshine_codes().D
    if key == "d_e8_cubed":
        return d_e8_cubed()
    if key == "s_lambda":
        return lambda_codes()[0]
    if key == "d_lambda":
        return lambda_codes()[1]
    if key.startswith("chain") and key[5:].isdigit() and 1 <= int(key[5:]) <= 5:
        return orbifold_chain()[int(key[5:]) - 1].S
    if key.startswith("dchain") and key[6:].isdigit() and 1 <= int(key[6:]) <= 5:
        return orbifold_chain()[int(key[6:]) - 1].D
    if key.startswith("series_s") and key[8:].isdigit():
        return series_codes(int(key[8:])).S
    if key.startswith("series_d") and key[8:].isdigit():
        return series_codes(int(key[8:])).D
    raise KeyError(key)


CODE_KEYS = (
    "d_e8", "s_e8", "d_nat", "s_nat", "d_e8_cubed", "d_lambda", "s_lambda",
    "chain1", "chain2", "chain3", "chain4", "chain5",
    "dchain1", "dchain2", "dchain3", "dchain4", "dchain5",
    "series_s<n>", "series_d<n>",
)


def d_nat_min_weight() -> int | None:
    return min_weight(moonshine_codes().D)


def all_even(C: LinearCode) -> bool:
    return is_even(C)
