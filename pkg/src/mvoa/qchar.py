"""Exact truncated q-series in q^(1/48) and the character computations."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .gf2core import (
    LinearCode,
    WeightEnumerator,
    compress,
    coset_representatives,
    coset_weight_enumerators,
    macwilliams_transform,
    popcount,
    restrict,
    weight_enumerator,
)
from .modrep import (
    H0,
    HALF,
    SIXTEENTH,
    TDecomp,
    descriptor_coset_fuse,
    descriptor_induce,
    descriptor_tensor,
    group_descriptors,
    induce_collapsed,
    ising,
    v_e8_descriptor,
)
from .mooncodes import (
    BLOCK,
    DOUBLED_PAIR,
    blocks,
    d_e8_cubed,
    e8_codes,
    moonshine_codes,
    s_e8_words,
    series_codes,
    series_recipe,
)

DEN = 48
DEFAULT_ORDER = 6


@dataclass(frozen=True)
class CharConfig:
    order: int = DEFAULT_ORDER


class QSeries:
    """sum_e c_e q^(e/48) for e <= trunc; coefficients beyond trunc are unknown."""

    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs: Mapping[int, int] | None = None, trunc: int = DEFAULT_ORDER * DEN):
        self.trunc = trunc
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if c and e <= trunc}

    @classmethod
    def one(cls, trunc: int) -> "QSeries":
        return cls({0: 1}, trunc)

    @classmethod
    def monomial(cls, e: int, trunc: int, c: int = 1) -> "QSeries":
        return cls({e: c}, trunc)

    @classmethod
    def from_weights(cls, coeffs: Mapping[Fraction | int, int], order: int) -> "QSeries":
        out = {}
        for w, c in coeffs.items():
            e = Fraction(w) * DEN
            if e.denominator != 1:
                raise ValueError(f"weight {w} not a multiple of 1/{DEN}")
            out[int(e)] = c
        return cls(out, order * DEN)

    def _trunc_with(self, other: "QSeries") -> int:
        return min(self.trunc, other.trunc)

    def __add__(self, other: "QSeries") -> "QSeries":
        t = self._trunc_with(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return QSeries(out, t)

    def __neg__(self) -> "QSeries":
        return QSeries({e: -c for e, c in self.coeffs.items()}, self.trunc)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def scale(self, k: int) -> "QSeries":
        return QSeries({e: k * c for e, c in self.coeffs.items()}, self.trunc)

    def __mul__(self, other: "QSeries | int") -> "QSeries":
        if isinstance(other, int):
            return self.scale(other)
        # a term e1*e2 is reliable up to min(t1 + low2, t2 + low1)
        low1 = min(self.coeffs, default=0)
        low2 = min(other.coeffs, default=0)
        t = min(self.trunc + low2, other.trunc + low1)
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e <= t:
                    out[e] = out.get(e, 0) + c1 * c2
        return QSeries(out, t)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QSeries":
        if k < 0:
            raise ValueError("negative power")
        result = QSeries.one(self.trunc)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def truncate(self, trunc: int) -> "QSeries":
        if trunc > self.trunc:
            raise ValueError("cannot extend truncation")
        return QSeries(self.coeffs, trunc)

    def shift(self, e: int) -> "QSeries":
        return QSeries({k + e: c for k, c in self.coeffs.items()}, self.trunc + e)

    def substitute(self, k: int, trunc: int | None = None) -> "QSeries":
        """q -> q^k."""
        t = self.trunc * k if trunc is None else min(trunc, self.trunc * k)
        return QSeries({e * k: c for e, c in self.coeffs.items()}, t)

    def inverse(self) -> "QSeries":
        """1/f for f = 1 + (positive exponents), on the exponent lattice of f."""
        if self.coeffs.get(0) != 1 or min(self.coeffs) < 0:
            raise ValueError("inverse needs constant term 1")
        t = self.trunc
        inv: dict[int, int] = {0: 1}
        terms = sorted((e, c) for e, c in self.coeffs.items() if e > 0)
        for n in range(1, t + 1):
            s = 0
            for e, c in terms:
                if e > n:
                    break
                s -= c * inv.get(n - e, 0)
            if s:
                inv[n] = s
        return QSeries(inv, t)

    def __getitem__(self, weight: Fraction | int) -> int:
        e = Fraction(weight) * DEN
        if e.denominator != 1:
            return 0
        if e > self.trunc:
            raise IndexError(f"weight {weight} beyond truncation")
        return self.coeffs.get(int(e), 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        t = min(self.trunc, other.trunc)
        a = {e: c for e, c in self.coeffs.items() if e <= t}
        b = {e: c for e, c in other.coeffs.items() if e <= t}
        return a == b

    def __repr__(self) -> str:
        terms = " + ".join(f"{c}q^({Fraction(e, DEN)})" for e, c in sorted(self.coeffs.items())[:8])
        return f"QSeries({terms} ... ; trunc {Fraction(self.trunc, DEN)})"

    def graded(self, top: int | None = None) -> list[int]:
        """Coefficients at integer weights 0..top."""
        top = self.trunc // DEN if top is None else top
        return [self.coeffs.get(DEN * k, 0) for k in range(top + 1)]

    def items(self) -> list[tuple[int, int]]:
        return sorted(self.coeffs.items())

    def to_csv(self) -> str:
        return "".join(f"{e},{c}\n" for e, c in self.items())

    def to_json_obj(self) -> dict:
        return {
            "denominator": DEN,
            "trunc": self.trunc,
            "coefficients": [[e, str(c)] for e, c in self.items()],
        }


def _trunc(order: int) -> int:
    if order < 0:
        raise ValueError("order must be nonnegative")
    return order * DEN


# ---------------------------------------------------------------- Ising characters


def _fermion_product(sign: int, t: int) -> QSeries:
    """prod_{n>=1} (1 + sign q^(n-1/2))."""
    f = QSeries.one(t)
    e = DEN // 2
    while e <= t:
        f = f * QSeries({0: 1, e: sign}, t)
        e += DEN
    return f


@lru_cache(maxsize=None)
def _ising_cached(h: Fraction, t: int) -> QSeries:
    if h == SIXTEENTH:
        f = QSeries.one(t)
        for n in range(1, t // DEN + 1):
            f = f * QSeries({0: 1, n * DEN: 1}, t)
        return f.shift(DEN // 16).truncate(t)
    plus, minus = _fermion_product(1, t), _fermion_product(-1, t)
    s = plus + minus if h == H0 else plus - minus
    return QSeries({e: c // 2 for e, c in s.coeffs.items()}, t)


def ising_char(h: Fraction | int | str, order: int = DEFAULT_ORDER) -> QSeries:
    return _ising_cached(ising(h), _trunc(order))


@lru_cache(maxsize=None)
def _power(h: Fraction, k: int, t: int) -> QSeries:
    if k == 0:
        return QSeries.one(t)
    return _power(h, k - 1, t) * _ising_cached(h, t)


def _pattern_sum(counts: WeightEnumerator | list[int], m: int, t: int) -> QSeries:
    """sum_w A_w c0^(m-w) c_half^w."""
    total = QSeries({}, t)
    for w in range(m + 1):
        a = counts[w]
        if a:
            total = total + (_power(H0, m - w, t) * _power(HALF, w, t)).scale(a)
    return total


def code_char(W: WeightEnumerator, order: int = DEFAULT_ORDER) -> QSeries:
    return _pattern_sum(W, W.length, _trunc(order))


def _gamma_enumerators(gamma: LinearCode, comp: int, offsets: list[int]) -> list[WeightEnumerator]:
    code = restrict(gamma, comp)
    return coset_weight_enumerators(code, [compress(v, comp) for v in offsets])


def descriptor_chars(ds: list[TDecomp], order: int = DEFAULT_ORDER) -> list[QSeries]:
    """Characters of several descriptors; Gamma codes shared between entries are enumerated once."""
    t = _trunc(order)
    out: list[QSeries | None] = [None] * len(ds)
    groups: dict[tuple, list[int]] = {}
    for i, d in enumerate(ds):
        groups.setdefault((d.ambient_length, d.tau, d.gamma_code.basis), []).append(i)
    for idxs in groups.values():
        d0 = ds[idxs[0]]
        comp = d0.complement
        m = popcount(comp)
        wes = _gamma_enumerators(d0.gamma_code, comp, [ds[i].gamma_offset for i in idxs])
        pre = _power(SIXTEENTH, popcount(d0.tau), t)
        for i, we in zip(idxs, wes):
            out[i] = (pre * _pattern_sum(we, m, t)).scale(ds[i].mult).truncate(t)
    return out  # type: ignore[return-value]


def descriptor_char(d: TDecomp, order: int = DEFAULT_ORDER) -> QSeries:
    return descriptor_chars([d], order)[0]


def sum_series(items: Iterable[QSeries], t: int) -> QSeries:
    total = QSeries({}, t)
    for s in items:
        total = total + s
    return total


# ---------------------------------------------------------------- V_E8


def e8_terms(order: int = DEFAULT_ORDER) -> dict[int, QSeries]:
    """Character of V_E8^alpha for each alpha in S_E8."""
    words = s_e8_words()
    chars = descriptor_chars([v_e8_descriptor(a) for a in words], order)
    return dict(zip(words, chars))


def e8_char(order: int = DEFAULT_ORDER) -> QSeries:
    return sum_series(e8_terms(order).values(), _trunc(order))


def euler_phi(power: int, order: int) -> QSeries:
    """prod_{n>=1} (1 - q^n)^power."""
    t = _trunc(order)
    f = QSeries.one(t)
    for n in range(1, order + 1):
        f = f * QSeries({0: 1, n * DEN: -1}, t) ** power
    return f


def theta_e8(order: int) -> QSeries:
    from .latticekit import e8_variant, theta_series

    return theta_series(e8_variant(1), order)


def e8_oracle(order: int = DEFAULT_ORDER) -> QSeries:
    """Theta_E8 / phi^8."""
    return theta_e8(order) * euler_phi(8, order).inverse()


def j_oracle(order: int = DEFAULT_ORDER) -> QSeries:
    """J = Theta_E8^3 / (q phi^24) - 744, exponents in q (J has a q^-1 term)."""
    big = order + 1
    f = theta_e8(big) ** 3 * euler_phi(24, big).inverse()
    return f.shift(-DEN) - QSeries.one(order * DEN).scale(744)


# ---------------------------------------------------------------- moonshine module


XI1 = 1


def block_descriptor(beta: int, twisted: bool) -> TDecomp:
    d = v_e8_descriptor(beta)
    return descriptor_coset_fuse(d, XI1) if twisted else d


def w_descriptor(chi: int, n: int = 1) -> TDecomp:
    """The tensor descriptor W^chi before induction."""
    row = series_recipe(chi, n)
    return descriptor_tensor(block_descriptor(b, t) for b, t in zip(row.parts, row.twisted))


@lru_cache(maxsize=None)
def _induced_terms(t: int) -> tuple[tuple[int, QSeries], ...]:
    """(chi, character of V^chi) for every nonzero chi in S, induced over D/D^3 coset by coset."""
    pair = moonshine_codes()
    D3 = d_e8_cubed()
    order = t // DEN
    out = []
    for chi in sorted(pair.S.words()):
        if chi == 0:
            continue
        ds = descriptor_induce(w_descriptor(chi), D3, pair.D)
        grouped = group_descriptors(ds)
        merged = [TDecomp(d.ambient_length, d.tau, d.gamma_code, d.gamma_offset, m) for d, m in grouped]
        out.append((chi, sum_series(descriptor_chars(merged, order), t)))
    return tuple(out)


def moonshine_terms(order: int = DEFAULT_ORDER) -> dict[int, QSeries]:
    t = _trunc(order)
    pair = moonshine_codes()
    W = macwilliams_transform(weight_enumerator(pair.S), pair.S.dim)
    terms = {0: code_char(W, order)}
    terms.update(dict(_induced_terms(t)))
    return terms


def moonshine_char(order: int = DEFAULT_ORDER) -> QSeries:
    return sum_series(moonshine_terms(order).values(), _trunc(order))


@dataclass(frozen=True)
class TwoB:
    ch_plus: QSeries
    ch_minus: QSeries
    trace: QSeries
    closed_form_minus: QSeries


def minus_closed_form(order: int = DEFAULT_ORDER) -> QSeries:
    """2^11 q^(3/2) prod(1+q^n)^24 (prod(1+q^(n-1/2))^24 - prod(1-q^(n-1/2))^24)."""
    t = _trunc(order)
    e = QSeries.one(t)
    for n in range(1, order + 1):
        e = e * QSeries({0: 1, n * DEN: 1}, t)
    diff = _fermion_product(1, t) ** 24 - _fermion_product(-1, t) ** 24
    return (e ** 24 * diff).shift(3 * DEN // 2).truncate(t).scale(1 << 11)


def char_2B(order: int = DEFAULT_ORDER) -> TwoB:
    t = _trunc(order)
    plus, minus = [], []
    for chi, ch in moonshine_terms(order).items():
        (minus if popcount(chi & DOUBLED_PAIR) & 1 else plus).append(ch)
    p, m = sum_series(plus, t), sum_series(minus, t)
    return TwoB(p, m, p - m, minus_closed_form(order))


def _rotate(word: int) -> int:
    a, b, c = blocks(word, 3)
    return c | a << BLOCK | b << 2 * BLOCK


def char_3C_direct(order: int = DEFAULT_ORDER) -> QSeries:
    """Trace of the cyclic block rotation: only rotation-fixed chi and fixed cosets contribute.

    On a fixed summand X (x) X (x) X the rotation has trace ch_X(q^3).
    """
    t = _trunc(order)
    pair = moonshine_codes()
    D3 = d_e8_cubed()
    fixed_cosets = [mu for mu in coset_representatives(pair.D, D3) if D3.reduce(_rotate(mu) ^ mu) == 0]
    total = QSeries({}, t)
    for chi in sorted(pair.S.words()):
        if _rotate(chi) != chi:
            continue
        row = series_recipe(chi, 1)
        for mu in fixed_cosets:
            x = descriptor_coset_fuse(block_descriptor(row.parts[0], row.twisted[0]), blocks(mu, 3)[0])
            total = total + descriptor_char(x, order).substitute(3, t)
    return total


def char_3C(order: int = DEFAULT_ORDER) -> QSeries:
    return e8_char(order).substitute(3, _trunc(order))


# ---------------------------------------------------------------- series construction


def series_char(n: int, order: int = DEFAULT_ORDER) -> QSeries:
    """Character of the series module, each V^chi induced from D_E8^(2n+1) in collapsed form."""
    t = _trunc(order)
    pair = series_codes(n)
    _, D_E8 = e8_codes()
    nb = 2 * n + 1
    Dbig = LinearCode(BLOCK * nb, [b << (BLOCK * i) for i in range(nb) for b in D_E8.basis])
    W = macwilliams_transform(weight_enumerator(pair.S), pair.S.dim)
    total = code_char(W, order)
    ds = [induce_collapsed(w_descriptor(chi, n), Dbig, pair.D) for chi in sorted(pair.S.words()) if chi]
    return total + sum_series(descriptor_chars(ds, order), t)


def series_json(q: QSeries) -> str:
    return json.dumps(q.to_json_obj())
