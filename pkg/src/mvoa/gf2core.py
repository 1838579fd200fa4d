"""Linear algebra over GF(2) on int bitmasks.

Coordinate i (0-based) is bit i of the mask. Reports and the text format
use the usual left-to-right 0/1 string, coordinate 1 first.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

DIRECT_WE_MAX_DIM = 26
_LOW_SPAN_BITS = 13


def popcount(x: int) -> int:
    return x.bit_count()


def mask_of(length: int) -> int:
    return (1 << length) - 1


@dataclass(frozen=True, order=True)
class BinaryWord:
    length: int
    bits: int

    def __post_init__(self) -> None:
        if self.length < 0 or self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits {self.bits:#x} do not fit length {self.length}")

    @classmethod
    def from_str(cls, s: str) -> "BinaryWord":
        s = s.strip()
        if any(ch not in "01" for ch in s):
            raise ValueError(f"not a 0/1 string: {s!r}")
        bits = 0
        for i, ch in enumerate(s):
            if ch == "1":
                bits |= 1 << i
        return cls(len(s), bits)

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> "BinaryWord":
        bits = 0
        for i in support:
            bits |= 1 << i
        return cls(length, bits)

    @classmethod
    def zeros(cls, length: int) -> "BinaryWord":
        return cls(length, 0)

    @classmethod
    def ones(cls, length: int) -> "BinaryWord":
        return cls(length, mask_of(length))

    @property
    def weight(self) -> int:
        return popcount(self.bits)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.length) if self.bits >> i & 1)

    def complement(self) -> "BinaryWord":
        return BinaryWord(self.length, self.bits ^ mask_of(self.length))

    def dot(self, other: "BinaryWord") -> int:
        _check_len(self, other)
        return popcount(self.bits & other.bits) & 1

    def concat(self, other: "BinaryWord") -> "BinaryWord":
        return BinaryWord(self.length + other.length, self.bits | other.bits << self.length)

    def __add__(self, other: "BinaryWord") -> "BinaryWord":
        _check_len(self, other)
        return BinaryWord(self.length, self.bits ^ other.bits)

    def __getitem__(self, i: int) -> int:
        return self.bits >> i & 1

    def __str__(self) -> str:
        return "".join("1" if self.bits >> i & 1 else "0" for i in range(self.length))


def _check_len(a: BinaryWord, b: BinaryWord) -> None:
    if a.length != b.length:
        raise ValueError(f"length mismatch: {a.length} vs {b.length}")


def word_str(bits: int, length: int) -> str:
    return "".join("1" if bits >> i & 1 else "0" for i in range(length))


def _as_int(w: BinaryWord | int, length: int) -> int:
    if isinstance(w, BinaryWord):
        if w.length != length:
            raise ValueError(f"word of length {w.length} in code of length {length}")
        return w.bits
    if w < 0 or w >> length:
        raise ValueError(f"word {w:#x} does not fit length {length}")
    return w


def _reduce(v: int, rows: dict[int, int]) -> int:
    for p, r in rows.items():
        if v >> p & 1:
            v ^= r
    return v


def _insert(v: int, rows: dict[int, int]) -> bool:
    """Add v to a fully reduced echelon form keyed by leading bit."""
    v = _reduce(v, rows)
    if not v:
        return False
    p = v.bit_length() - 1
    for q in rows:
        if rows[q] >> p & 1:
            rows[q] ^= v
    rows[p] = v
    return True


class LinearCode:
    """Span of generator words, kept as a canonical reduced basis."""

    __slots__ = ("length", "generators", "_rows", "basis")

    def __init__(self, length: int, generators: Iterable[BinaryWord | int] = ()):
        if length < 0:
            raise ValueError("negative length")
        self.length = length
        gens = tuple(_as_int(g, length) for g in generators)
        self.generators = gens
        rows: dict[int, int] = {}
        for g in gens:
            _insert(g, rows)
        self._rows = dict(sorted(rows.items(), reverse=True))
        self.basis: tuple[int, ...] = tuple(self._rows.values())

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(self._rows)

    def size(self) -> int:
        return 1 << self.dim

    def reduce(self, v: BinaryWord | int) -> int:
        """Canonical coset representative of v modulo the code."""
        return _reduce(_as_int(v, self.length), self._rows)

    def __contains__(self, v: BinaryWord | int) -> bool:
        return self.reduce(v) == 0

    def contains_code(self, other: "LinearCode") -> bool:
        return other.length == self.length and all(self.reduce(b) == 0 for b in other.basis)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.length == other.length and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.length, self.basis))

    def __add__(self, other: "LinearCode") -> "LinearCode":
        if other.length != self.length:
            raise ValueError("length mismatch")
        return LinearCode(self.length, self.basis + other.basis)

    def __repr__(self) -> str:
        return f"LinearCode(n={self.length}, k={self.dim})"

    def basis_words(self) -> list[BinaryWord]:
        return [BinaryWord(self.length, b) for b in self.basis]

    def words(self) -> Iterator[int]:
        """All codewords, Gray-code order. Only sensible for small dim."""
        w = 0
        yield w
        for i in range(1, 1 << self.dim):
            w ^= self.basis[(i & -i).bit_length() - 1]
            yield w

    def to_text(self) -> str:
        lines = [f"n={self.length} k={self.dim}"]
        lines += [word_str(b, self.length) for b in self.basis]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "LinearCode":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        head = dict(tok.split("=") for tok in lines[0].split())
        n, k = int(head["n"]), int(head["k"])
        rows = [BinaryWord.from_str(ln) for ln in lines[1:]]
        if len(rows) != k or any(r.length != n for r in rows):
            raise ValueError("malformed code text")
        code = cls(n, rows)
        if code.dim != k:
            raise ValueError(f"rows have rank {code.dim}, header says {k}")
        return code


def zero_code(length: int) -> LinearCode:
    return LinearCode(length)


def dual(C: LinearCode) -> LinearCode:
    return _dual_cached(C)


@lru_cache(maxsize=4096)
def _dual_cached(C: LinearCode) -> LinearCode:
    pivots = set(C.pivots)
    gens = []
    for f in range(C.length):
        if f in pivots:
            continue
        x = 1 << f
        for p, r in C._rows.items():
            if r >> f & 1:
                x |= 1 << p
        gens.append(x)
    return LinearCode(C.length, gens)


def intersection(A: LinearCode, B: LinearCode) -> LinearCode:
    return dual(dual(A) + dual(B))


def radical(C: LinearCode) -> LinearCode:
    return intersection(C, dual(C))


def support_subcode(C: LinearCode, beta: BinaryWord | int) -> LinearCode:
    """Codewords whose support lies inside supp(beta)."""
    outside = ~_as_int(beta, C.length) & mask_of(C.length)
    rows: dict[int, tuple[int, int]] = {}
    kernel = []
    for b in C.basis:
        part, full = b & outside, b
        for p, (rp, rf) in rows.items():
            if part >> p & 1:
                part ^= rp
                full ^= rf
        if part:
            p = part.bit_length() - 1
            for q, (rq, fq) in list(rows.items()):
                if rq >> p & 1:
                    rows[q] = (rq ^ part, fq ^ full)
            rows[p] = (part, full)
        else:
            kernel.append(full)
    return LinearCode(C.length, kernel)


def project(C: LinearCode, keep: BinaryWord | int) -> LinearCode:
    """Image of C under zeroing the coordinates outside keep (same ambient length)."""
    m = _as_int(keep, C.length)
    return LinearCode(C.length, [b & m for b in C.basis])


def compress(bits: int, keep: int) -> int:
    """Pack the bits of `bits` at the positions of `keep` into a dense word."""
    out, j = 0, 0
    while keep:
        low = keep & -keep
        if bits & low:
            out |= 1 << j
        j += 1
        keep ^= low
    return out


def restrict(C: LinearCode, keep: BinaryWord | int) -> LinearCode:
    """Projection of C onto the coordinates of keep, as a code of length wt(keep)."""
    m = _as_int(keep, C.length)
    return LinearCode(popcount(m), [compress(b, m) for b in C.basis])


def direct_sum(codes: Sequence[LinearCode]) -> LinearCode:
    gens, shift = [], 0
    for c in codes:
        gens += [b << shift for b in c.basis]
        shift += c.length
    return LinearCode(shift, gens)


def quotient_reps(F: LinearCode, D: LinearCode) -> list[int]:
    """Basis of a complement of D in F, reduced modulo D."""
    if not F.contains_code(D):
        raise ValueError("D is not a subcode of F")
    rows = dict(D._rows)
    reps = []
    for b in F.basis:
        r = _reduce(b, rows)
        if r:
            reps.append(r)
            _insert(r, rows)
    return reps


def coset_representatives(F: LinearCode, D: LinearCode) -> list[int]:
    """One representative per coset of D in F, graded lexicographic order."""
    gens = quotient_reps(F, D)
    k = len(gens)
    order = sorted(range(1 << k), key=lambda i: (popcount(i), i))
    out = []
    for idx in order:
        v = 0
        for j in range(k):
            if idx >> j & 1:
                v ^= gens[j]
        out.append(D.reduce(v))
    return out


# ---------------------------------------------------------------- enumerators


@dataclass(frozen=True)
class WeightEnumerator:
    length: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.counts) != self.length + 1:
            raise ValueError("counts must have length n+1")

    def __getitem__(self, w: int) -> int:
        return self.counts[w] if 0 <= w <= self.length else 0

    def total(self) -> int:
        return sum(self.counts)

    def nonzero(self) -> dict[int, int]:
        return {w: a for w, a in enumerate(self.counts) if a}

    def min_weight(self) -> int | None:
        for w in range(1, self.length + 1):
            if self.counts[w]:
                return w
        return None

    def to_json(self) -> str:
        return json.dumps([str(a) for a in self.counts])


def _chunks(length: int) -> int:
    return max(1, (length + 63) // 64)


def _to_array(words: Sequence[int], nchunks: int) -> np.ndarray:
    arr = np.zeros((len(words), nchunks), dtype=np.uint64)
    m64 = (1 << 64) - 1
    for i, w in enumerate(words):
        for c in range(nchunks):
            arr[i, c] = (w >> (64 * c)) & m64
    return arr


def _span_array(gens: Sequence[int], nchunks: int) -> np.ndarray:
    arr = np.zeros((1, nchunks), dtype=np.uint64)
    for g in _to_array(gens, nchunks):
        arr = np.concatenate([arr, arr ^ g])
    return arr


def iter_span_blocks(basis: Sequence[int], length: int, offset: int = 0) -> Iterator[np.ndarray]:
    """Yield the words of offset + span(basis) as uint64 blocks of shape (m, chunks)."""
    nchunks = _chunks(length)
    low, high = basis[:_LOW_SPAN_BITS], basis[_LOW_SPAN_BITS:]
    low_arr = _span_array(low, nchunks) ^ _to_array([offset], nchunks)[0]
    high_arr = _span_array(high, nchunks)
    for h in high_arr:
        yield low_arr ^ h


def _popcounts(block: np.ndarray) -> np.ndarray:
    return np.bitwise_count(block).sum(axis=1, dtype=np.int64)


def _enumerate_weights(basis: Sequence[int], length: int, offset: int = 0) -> list[int]:
    counts = np.zeros(length + 1, dtype=np.int64)
    for block in iter_span_blocks(basis, length, offset):
        counts += np.bincount(_popcounts(block), minlength=length + 1)
    return [int(c) for c in counts]


def _krawtchouk_table(n: int) -> list[list[int]]:
    """K[j][w] = coefficient of x^{n-j} y^j in (x+y)^{n-w} (x-y)^w."""
    table = [[0] * (n + 1) for _ in range(n + 1)]
    for w in range(n + 1):
        for s in range(w + 1):
            sign = -1 if s & 1 else 1
            cs = comb(w, s) * sign
            for t in range(n - w + 1):
                table[s + t][w] += cs * comb(n - w, t)
    return table


_KRAW: dict[int, list[list[int]]] = {}


def krawtchouk(n: int) -> list[list[int]]:
    if n not in _KRAW:
        _KRAW[n] = _krawtchouk_table(n)
    return _KRAW[n]


def _transform(length: int, a: Sequence[int], divisor: int) -> WeightEnumerator:
    K = krawtchouk(length)
    out = []
    for j in range(length + 1):
        s = sum(K[j][w] * a[w] for w in range(length + 1) if a[w])
        q, r = divmod(s, divisor)
        if r or q < 0:
            raise ArithmeticError(f"transform gives non-integral or negative count at weight {j}")
        out.append(q)
    return WeightEnumerator(length, tuple(out))


def macwilliams_transform(W: WeightEnumerator, dim: int) -> WeightEnumerator:
    if W.total() != 1 << dim:
        raise ArithmeticError(f"enumerator sums to {W.total()}, not 2^{dim}")
    return _transform(W.length, W.counts, 1 << dim)


def _use_direct(C: LinearCode) -> bool:
    co = C.length - C.dim
    return C.dim <= DIRECT_WE_MAX_DIM and (C.dim <= co or co > DIRECT_WE_MAX_DIM)


def weight_enumerator(C: LinearCode) -> WeightEnumerator:
    if _use_direct(C):
        return WeightEnumerator(C.length, tuple(_enumerate_weights(C.basis, C.length)))
    D = dual(C)
    if D.dim > DIRECT_WE_MAX_DIM:
        raise ValueError(f"code and dual both exceed dim {DIRECT_WE_MAX_DIM}")
    inner = WeightEnumerator(C.length, tuple(_enumerate_weights(D.basis, C.length)))
    return macwilliams_transform(inner, D.dim)


def coset_weight_enumerators(C: LinearCode, offsets: Sequence[BinaryWord | int]) -> list[WeightEnumerator]:
    """Weight enumerators of the cosets v + C for several v at once."""
    n = C.length
    vs = [_as_int(v, n) for v in offsets]
    if _use_direct(C):
        return [WeightEnumerator(n, tuple(_enumerate_weights(C.basis, n, v))) for v in vs]
    D = dual(C)
    if D.dim > DIRECT_WE_MAX_DIM:
        raise ValueError(f"code and dual both exceed dim {DIRECT_WE_MAX_DIM}")
    # dual-sum formula: signed weight counts of the dual, sign (-1)^<u,v>
    vs_arr = _to_array(vs, _chunks(n))
    signed = np.zeros((len(vs), n + 1), dtype=np.int64)
    for block in iter_span_blocks(D.basis, n):
        wts = _popcounts(block)
        for i, v in enumerate(vs_arr):
            par = _popcounts(block & v) & 1
            signed[i] += np.bincount(wts, weights=1 - 2 * par, minlength=n + 1).astype(np.int64)
    return [_transform(n, [int(x) for x in row], 1 << D.dim) for row in signed]


def coset_weight_enumerator(C: LinearCode, v: BinaryWord | int) -> WeightEnumerator:
    return coset_weight_enumerators(C, [v])[0]


# ---------------------------------------------------------------- classification


@dataclass(frozen=True)
class CodeClass:
    is_even: bool
    is_doubly_even: bool
    is_self_orthogonal: bool
    is_self_dual: bool
    min_weight: int | None


def is_even(C: LinearCode) -> bool:
    return all(popcount(b) % 2 == 0 for b in C.basis)


def is_self_orthogonal(C: LinearCode) -> bool:
    bs = C.basis
    return all(popcount(bs[i] & bs[j]) % 2 == 0 for i in range(len(bs)) for j in range(i, len(bs)))


def is_doubly_even(C: LinearCode) -> bool:
    # wt(a+b) = wt a + wt b - 2|a&b|, so basis conditions suffice
    return all(popcount(b) % 4 == 0 for b in C.basis) and is_self_orthogonal(C)


def is_self_dual(C: LinearCode) -> bool:
    return 2 * C.dim == C.length and is_self_orthogonal(C)


def bounded_min_weight(C: LinearCode, max_weight: int = 4) -> int | None:
    """Smallest w <= max_weight with a codeword of weight w, by syndrome search."""
    H = dual(C).basis
    cols = [sum(((h >> i) & 1) << r for r, h in enumerate(H)) for i in range(C.length)]
    for w in range(1, max_weight + 1):
        for idx in itertools.combinations(range(C.length), w):
            s = 0
            for i in idx:
                s ^= cols[i]
            if s == 0:
                return w
    return None


def words_of_weight(C: LinearCode, w: int) -> list[int]:
    """All codewords of weight w, by syndrome search over w-subsets."""
    H = dual(C).basis
    cols = [sum(((h >> i) & 1) << r for r, h in enumerate(H)) for i in range(C.length)]
    out = []
    for idx in itertools.combinations(range(C.length), w):
        s = 0
        for i in idx:
            s ^= cols[i]
        if s == 0:
            out.append(sum(1 << i for i in idx))
    return out


def min_weight(C: LinearCode) -> int | None:
    """None for the zero code."""
    if C.dim == 0:
        return None
    if C.dim <= DIRECT_WE_MAX_DIM or C.length - C.dim <= DIRECT_WE_MAX_DIM:
        return weight_enumerator(C).min_weight()
    w = bounded_min_weight(C, 4)
    if w is None:
        raise ValueError("minimum weight exceeds the bounded search (weights 1..4)")
    return w


def classify(C: LinearCode) -> CodeClass:
    return CodeClass(
        is_even=is_even(C),
        is_doubly_even=is_doubly_even(C),
        is_self_orthogonal=is_self_orthogonal(C),
        is_self_dual=is_self_dual(C),
        min_weight=min_weight(C),
    )


# ---------------------------------------------------------------- standard codes


def hamming8() -> LinearCode:
    """[8,4,4] code with basis (1^8), (1^4 0^4), (1^2 0^2 1^2 0^2), ((10)^4)."""
    gens = ["11111111", "11110000", "11001100", "10101010"]
    return LinearCode(8, [BinaryWord.from_str(g) for g in gens])


def reed_muller(r: int, m: int) -> LinearCode:
    """RM(r, m) on the points of F_2^m; coordinate i is the point with bits of i.

    For r = 1 the generators are the all-ones word and the coordinate
    hyperplanes x_j = 1, so every nonconstant codeword is an affine hyperplane.
    """
    if not (0 <= r <= m) or m < 0:
        raise ValueError(f"invalid Reed-Muller parameters r={r}, m={m}")
    n = 1 << m
    gens = []
    for deg in range(r + 1):
        for mono in itertools.combinations(range(m), deg):
            bits = 0
            for i in range(n):
                if all(i >> j & 1 for j in mono):
                    bits |= 1 << i
            gens.append(bits)
    return LinearCode(n, gens)


def even_all(n: int) -> LinearCode:
    if n < 1:
        raise ValueError("length must be positive")
    return LinearCode(n, [1 | 1 << i for i in range(1, n)])


def standard_code(kind: str, **params: object) -> LinearCode:
    if kind == "hamming8":
        return hamming8()
    if kind == "reed_muller":
        return reed_muller(int(params["r"]), int(params["m"]))  # type: ignore[arg-type]
    if kind == "even_all":
        return even_all(int(params["n"]))  # type: ignore[arg-type]
    if kind == "from_generators":
        gens = [BinaryWord.from_str(g) if isinstance(g, str) else g for g in params["generators"]]  # type: ignore[union-attr]
        length = int(params.get("length", gens[0].length if gens else 0))  # type: ignore[union-attr]
        return LinearCode(length, gens)
    raise ValueError(f"unknown code kind {kind!r}")
