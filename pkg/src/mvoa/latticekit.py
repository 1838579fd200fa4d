"""Rational lattices in quarter-integer coordinates over an orthonormal frame x^1..x^r."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .gf2core import LinearCode

Vector = tuple[Fraction, ...]
Q = 4  # coordinates are multiples of 1/Q


def _vec(xs: Iterable[Fraction | int]) -> Vector:
    return tuple(Fraction(x) for x in xs)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _to_units(v: Sequence[Fraction]) -> tuple[int, ...]:
    out = []
    for x in v:
        y = x * Q
        if y.denominator != 1:
            raise ValueError(f"coordinate {x} is not a multiple of 1/{Q}")
        out.append(int(y))
    return tuple(out)


def _integer_echelon(rows: list[list[int]]) -> list[list[int]]:
    """Row echelon basis of the integer row span (Euclid on columns)."""
    rows = [r[:] for r in rows if any(r)]
    ncols = len(rows[0]) if rows else 0
    basis: list[list[int]] = []
    for c in range(ncols):
        live = [r for r in rows if r[c]]
        rest = [r for r in rows if not r[c]]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[c]))
            piv = live[0]
            new = [piv]
            for r in live[1:]:
                k = r[c] // piv[c]
                r = [x - k * y for x, y in zip(r, piv)]
                (new if r[c] else rest).append(r)
            live = new
        if live:
            piv = live[0]
            if piv[c] < 0:
                piv = [-x for x in piv]
            basis.append(piv)
        rows = [r for r in rest if any(r)]
    return basis


def _det(m: list[list[Fraction]]) -> Fraction:
    a = [row[:] for row in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def _solve(m: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve x m = rhs for a row vector x (m square, nonsingular)."""
    n = len(m)
    aug = [[m[j][i] for j in range(n)] + [rhs[i]] for i in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [aug[i][n] for i in range(n)]


@dataclass(frozen=True)
class Lattice:
    rank: int
    basis: tuple[Vector, ...]
    gram: tuple[tuple[Fraction, ...], ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.basis) != self.rank or any(len(b) != self.rank for b in self.basis):
            raise ValueError("basis must be square")
        for b in self.basis:
            _to_units(b)
        g = tuple(tuple(dot(a, b) for b in self.basis) for a in self.basis)
        object.__setattr__(self, "gram", g)
        if _det([list(r) for r in g]) == 0:
            raise ValueError("basis is singular")

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence[Fraction | int]]) -> "Lattice":
        rows = [list(_to_units(_vec(g))) for g in gens]
        ech = _integer_echelon(rows)
        basis = tuple(tuple(Fraction(x, Q) for x in r) for r in ech)
        return cls(len(basis), basis)

    def contains(self, v: Sequence[Fraction | int]) -> bool:
        x = _solve([list(b) for b in self.basis], list(_vec(v)))
        return all(c.denominator == 1 for c in x)


def _x(i: int, c: Fraction | int = 1, r: int = 8) -> list[Fraction]:
    v = [Fraction(0)] * r
    v[i - 1] = Fraction(c)
    return v


def _combo(*terms: tuple[int, Fraction | int]) -> list[Fraction]:
    v = [Fraction(0)] * 8
    for i, c in terms:
        v[i - 1] += Fraction(c)
    return v


def _pm_pairs(idx: Sequence[int]) -> list[list[Fraction]]:
    out = []
    for i, j in itertools.combinations(idx, 2):
        out.append(_combo((i, 1), (j, 1)))
        out.append(_combo((i, 1), (j, -1)))
    return out


H = Fraction(1, 2)


def e8_generators(m: int, printed: bool = False) -> list[list[Fraction]]:
    """Generators of E8(m) over the frame.

    The lists for m = 3, 4 as usually printed are not integral; one sign is
    corrected in each (printed=True returns the uncorrected lists).
    """
    if m == 1:
        return [[H] * 8] + _pm_pairs(range(1, 9))
    if m == 2:
        return [
            _combo((1, H), (2, -H), (3, -H), (4, -H), (5, 1)),
            _combo((5, H), (6, H), (7, H), (8, H), (1, 1)),
        ] + _pm_pairs(range(1, 5)) + _pm_pairs(range(5, 9))
    if m == 3:
        s = 1 if printed else -1
        return [
            _combo((1, H), (2, -H), (5, -H), (6, -H), (3, 1)),
            _combo((1, s * H), (2, H), (3, -H), (4, -H), (7, -1)),
            _combo((5, -H), (6, -H), (7, H), (8, H), (1, 1)),
            _combo((1, 1), (3, 1), (5, 1), (7, 1)),
        ] + [_combo((2 * i - 1, 1), (2 * i, 1)) for i in range(1, 5)]
    if m == 4:
        s = 1 if printed else -1
        return [
            _combo((1, H), (3, -H), (5, -H), (7, -H), (2, 1)),
            _combo((1, H), (2, -H), (5, H), (6, -H), (3, -1)),
            _combo((1, -H), (2, H), (3, -H), (4, -H), (7, -1)),
            _combo((1, s * H), (3, H), (6, -H), (8, H), (5, 1)),
        ] + [_x(i, 2) for i in range(1, 9)]
    raise ValueError("e8_variant is defined for m = 1..4 only")


@lru_cache(maxsize=None)
def e8_variant(m: int) -> Lattice:
    return Lattice.from_generators(e8_generators(m))


def scaled_identity(scale: int, rank: int = 8) -> Lattice:
    return Lattice(rank, tuple(tuple(Fraction(scale if i == j else 0) for j in range(rank)) for i in range(rank)))


@dataclass(frozen=True)
class LatticeClass:
    even: bool
    det: Fraction
    unimodular: bool


def classify_lattice(L: Lattice) -> LatticeClass:
    g = L.gram
    integral = all(x.denominator == 1 for row in g for x in row)
    even = integral and all(g[i][i] % 2 == 0 for i in range(L.rank))
    det = _det([list(r) for r in g])
    return LatticeClass(even=even, det=det, unimodular=integral and abs(det) == 1)


# ---------------------------------------------------------------- cosets of the frame 2Z^r


def frame_contained(L: Lattice) -> bool:
    return all(L.contains(_x(i, 2, L.rank)) for i in range(1, L.rank + 1))


@lru_cache(maxsize=None)
def frame_cosets(L: Lattice) -> tuple[tuple[int, ...], ...]:
    """L / 2Z^r as residues in quarter units modulo 8."""
    if not frame_contained(L):
        raise ValueError("lattice does not contain the frame 2x^i")
    mod = 2 * Q
    gens = [tuple(x % mod for x in _to_units(b)) for b in L.basis]
    seen = {tuple([0] * L.rank)}
    queue = list(seen)
    for v in queue:
        for g in gens:
            w = tuple((a + b) % mod for a, b in zip(v, g))
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return tuple(sorted(seen))


def _coordinate_values(residue: int, bound: int) -> list[int]:
    """Quarter-unit values v = residue mod 8 with v^2 <= bound."""
    mod = 2 * Q
    out = []
    v = residue - mod * ((residue + int(bound ** 0.5) + mod) // mod)
    while v * v <= bound or v < 0:
        if v * v <= bound:
            out.append(v)
        v += mod
    return out


def norm_counts(L: Lattice, max_norm: int) -> dict[Fraction, int]:
    """Number of lattice vectors of each norm <= max_norm."""
    bound = max_norm * Q * Q
    total: dict[int, int] = {}
    for coset in frame_cosets(L):
        poly = {0: 1}
        for r in coset:
            vals = _coordinate_values(r, bound)
            new: dict[int, int] = {}
            for s, c in poly.items():
                for v in vals:
                    t = s + v * v
                    if t <= bound:
                        new[t] = new.get(t, 0) + c
            poly = new
        for s, c in poly.items():
            total[s] = total.get(s, 0) + c
    return {Fraction(s, Q * Q): c for s, c in sorted(total.items())}


def theta_series(L: Lattice, order: int):
    """Theta series in q^(norm/2) up to q^order."""
    from .qchar import DEN, QSeries

    counts = norm_counts(L, 2 * order)
    coeffs = {}
    for nrm, c in counts.items():
        e = nrm / 2 * DEN
        if e.denominator != 1:
            raise ValueError(f"norm {nrm} is off the q^(1/{DEN}) grid")
        coeffs[int(e)] = c
    return QSeries(coeffs, order * DEN)


def vectors_of_norm(L: Lattice, norm: int) -> list[tuple[int, ...]]:
    """All vectors of the given norm, in quarter units."""
    target = norm * Q * Q
    out = []
    for coset in frame_cosets(L):
        choices = [_coordinate_values(r, target) for r in coset]

        def rec(i: int, acc: int, prefix: tuple[int, ...]) -> None:
            if i == len(choices):
                if acc == target:
                    out.append(prefix)
                return
            for v in choices[i]:
                t = acc + v * v
                if t <= target:
                    rec(i + 1, t, prefix + (v,))

        rec(0, 0, ())
    return sorted(out)


def frame_tau_code(L: Lattice) -> LinearCode:
    """Doubled tau-words: pair (2i-1, 2i) is set iff the x^i coefficient lies in 1/2 + Z."""
    words = set()
    for coset in frame_cosets(L):
        w = 0
        for i, r in enumerate(coset):
            if r % Q == 0:
                continue
            if r % Q != Q // 2:
                raise ValueError("coset coefficient outside the half-integer grid")
            w |= 0b11 << (2 * i)
        words.add(w)
    code = LinearCode(2 * L.rank, words)
    if code.size() != len(words):
        raise ValueError("extracted word set is not linear")
    return code


# ---------------------------------------------------------------- conformal vectors


def _norm_units(a: Sequence[int]) -> int:
    return sum(x * x for x in a)


def cv_inner(eps: int, a: Sequence[Fraction | int], delta: int, b: Sequence[Fraction | int]) -> Fraction:
    """<e^eps(a), e^delta(b)> for norm-4 vectors a, b."""
    a, b = _vec(a), _vec(b)
    if dot(a, a) != 4 or dot(b, b) != 4:
        raise ValueError("conformal vector labels need norm-4 vectors")
    if eps not in (1, -1) or delta not in (1, -1):
        raise ValueError("signs must be +1 or -1")
    ab = dot(a, b)
    same = a == b or a == tuple(-x for x in b)
    return ab * ab / 128 + (Fraction(eps * delta, 8) if same else 0)


def tau_sign(a: Sequence[Fraction | int], x: Sequence[Fraction | int]) -> int:
    a, x = _vec(a), _vec(x)
    if dot(a, a) != 4:
        raise ValueError("a must have norm 4")
    p = dot(a, x)
    if p.denominator != 1:
        raise ValueError("pairing is not integral")
    return -1 if p % 2 else 1


def tau_action(b: Sequence[Fraction | int], label: tuple[int, Vector]) -> tuple[int, Vector]:
    """tau_b on e^eps(a): the sign flips iff <a,b> is odd."""
    eps, a = label
    return (eps * tau_sign(b, a), a)


@dataclass(frozen=True)
class BoundScan:
    labels: int
    pairs: int
    max_offdiag: Fraction
    min_distance: Fraction
    violations: list


BOUND = Fraction(1, 12)


def conformal_bound_scan(L: Lattice) -> BoundScan:
    vecs = vectors_of_norm(L, 4)
    reps = [v for v in vecs if v > tuple(-x for x in v)]
    if not reps:
        return BoundScan(0, 0, Fraction(0), Fraction(0), [])
    arr = np.array(reps, dtype=np.int64)
    gram = arr @ arr.T  # inner products times Q^2
    n = len(reps)
    off = ~np.eye(n, dtype=bool)
    # a != +-b: every sign pair gives <a,b>^2/128; a = b with opposite signs gives 0
    scale = Q ** 4 * 128
    top = int(np.abs(gram[off]).max()) if n > 1 else 0
    max_off = Fraction(top * top, scale)
    bad = np.argwhere(off & (12 * gram * gram > scale))
    viol = [(reps[i], reps[j], Fraction(int(gram[i, j]) ** 2, scale)) for i, j in bad]
    labels = 2 * n
    pairs = labels * (labels - 1) // 2
    return BoundScan(labels, pairs, max_off, Fraction(1, 2) - 2 * max_off, viol)
