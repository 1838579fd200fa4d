"""Module labels: Ising and Hamming fusion, frame switching, sigma twists, and
T-decomposition descriptors of code-VOA modules."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .cocycle import epsilon_bits
from .gf2core import (
    BinaryWord,
    LinearCode,
    coset_representatives,
    hamming8,
    mask_of,
    popcount,
    project,
    radical,
    support_subcode,
    word_str,
)
from .mooncodes import BLOCK, e8_codes

H0 = Fraction(0)
HALF = Fraction(1, 2)
SIXTEENTH = Fraction(1, 16)
ISING = (H0, HALF, SIXTEENTH)


def ising(h: Fraction | int | str) -> Fraction:
    x = Fraction(h)
    if x not in ISING:
        raise ValueError(f"not an Ising weight: {h}")
    return x


def tau_word(label: Sequence[Fraction]) -> BinaryWord:
    return BinaryWord.from_support(len(label), [i for i, h in enumerate(label) if ising(h) == SIXTEENTH])


def fuse_ising(a: Fraction, b: Fraction) -> frozenset[Fraction]:
    a, b = ising(a), ising(b)
    if a == H0:
        return frozenset({b})
    if b == H0:
        return frozenset({a})
    if a == HALF and b == HALF:
        return frozenset({H0})
    if a == SIXTEENTH and b == SIXTEENTH:
        return frozenset({H0, HALF})
    return frozenset({SIXTEENTH})


def fuse_tlabels(x: Sequence[Fraction], y: Sequence[Fraction]) -> list[tuple[Fraction, ...]]:
    """All constituents of the componentwise fusion of two T-labels."""
    if len(x) != len(y):
        raise ValueError("length mismatch")
    out: list[tuple[Fraction, ...]] = [()]
    for a, b in zip(x, y):
        out = [t + (h,) for t in out for h in sorted(fuse_ising(a, b))]
    return out


# ---------------------------------------------------------------- Hamming labels

HAMMING8 = hamming8()


@dataclass(frozen=True)
class HammingLabel:
    """H(1/2, w) or H(1/16, w) with w taken modulo the Hamming code."""

    kind: str
    word: int

    def __post_init__(self) -> None:
        if self.kind not in ("half", "sixteenth"):
            raise ValueError(f"bad kind {self.kind!r}")
        object.__setattr__(self, "word", HAMMING8.reduce(self.word & 0xFF))

    def __str__(self) -> str:
        h = "1/2" if self.kind == "half" else "1/16"
        return f"H({h},{word_str(self.word, 8)})"


XI1 = 1
IDENTITY_LABEL = HammingLabel("half", 0)


def fuse_hamming(x: HammingLabel, y: HammingLabel) -> HammingLabel:
    kind = "half" if x.kind == y.kind else "sixteenth"
    return HammingLabel(kind, x.word ^ y.word)


def all_hamming_labels() -> list[HammingLabel]:
    reps = sorted({HAMMING8.reduce(w) for w in range(256)})
    return [HammingLabel(k, w) for k in ("half", "sixteenth") for w in reps]


_A = HammingLabel("half", XI1)
_B = HammingLabel("sixteenth", 0)
_AB = HammingLabel("sixteenth", XI1)

# images of the two generators H(1/2,xi1), H(1/16,0)
_FRAME_GEN_IMAGES = {
    "e->d": (_B, _AB),
    "e->f": (_AB, _A),
}


def frame_switch(x: HammingLabel, frame: str) -> HammingLabel:
    """Relabel a module under a change of Hamming frame, extended multiplicatively."""
    if frame not in _FRAME_GEN_IMAGES:
        raise ValueError(f"unknown frame change {frame!r}")
    ia, ib = _FRAME_GEN_IMAGES[frame]
    table = {
        IDENTITY_LABEL: IDENTITY_LABEL,
        _A: ia,
        _B: ib,
        _AB: fuse_hamming(ia, ib),
    }
    if x not in table:
        raise ValueError(f"label {x} is outside the group generated by the frame table")
    return table[x]


# ---------------------------------------------------------------- representation characters


@dataclass(frozen=True)
class RepCharacter:
    """Signs of e^b on a basis of base_code; the rest follows from the cocycle."""

    base_code: LinearCode
    signs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.signs) != self.base_code.dim or any(s not in (1, -1) for s in self.signs):
            raise ValueError("one sign per basis word required")

    def value(self, word: int) -> int:
        """Sign of e^word as an ordered product over basis words."""
        acc, sign = 0, 1
        # coordinates of word in the reduced basis, read off the pivot bits
        coeffs = []
        rest = word
        for p, b in zip(self.base_code.pivots, self.base_code.basis):
            if rest >> p & 1:
                coeffs.append(True)
                rest ^= b
            else:
                coeffs.append(False)
        if rest:
            raise ValueError("word not in base code")
        for c, b, s in zip(coeffs, self.base_code.basis, self.signs):
            if c:
                sign *= s * epsilon_bits(acc, b)
                acc ^= b
        return sign


def sigma_twist(phi: RepCharacter, alpha: BinaryWord) -> RepCharacter:
    if alpha.length != phi.base_code.length:
        raise ValueError("length mismatch")
    signs = tuple(s * (-1 if popcount(alpha.bits & b) & 1 else 1) for s, b in zip(phi.signs, phi.base_code.basis))
    return RepCharacter(phi.base_code, signs)


# ---------------------------------------------------------------- descriptors


def multiplicity(C_mu: LinearCode) -> int:
    """Dimension of an irreducible representation of the extension over C_mu."""
    r = radical(C_mu)
    k = C_mu.dim - r.dim
    if k % 2:
        raise ArithmeticError("odd symplectic rank")
    return 1 << (k // 2)


@dataclass(frozen=True)
class TDecomp:
    """A module as a T-module: tau-word, Gamma coset (offset + gamma_code), multiplicity.

    gamma_code and gamma_offset are stored in ambient coordinates and vanish on supp(tau).
    """

    ambient_length: int
    tau: int
    gamma_code: LinearCode
    gamma_offset: int
    mult: int = 1

    def __post_init__(self) -> None:
        if self.gamma_code.length != self.ambient_length:
            raise ValueError("gamma code length mismatch")
        if any(b & self.tau for b in self.gamma_code.basis) or self.gamma_offset & self.tau:
            raise ValueError("gamma data must vanish on supp(tau)")

    @property
    def complement(self) -> int:
        return mask_of(self.ambient_length) & ~self.tau

    def canonical(self) -> "TDecomp":
        return TDecomp(self.ambient_length, self.tau, self.gamma_code, self.gamma_code.reduce(self.gamma_offset), self.mult)

    def key(self) -> tuple:
        return (self.ambient_length, self.tau, self.gamma_code.basis, self.gamma_code.reduce(self.gamma_offset))

    def to_json(self) -> dict:
        n = self.ambient_length
        return {
            "tau": word_str(self.tau, n),
            "gamma_gens": [word_str(b, n) for b in self.gamma_code.basis],
            "gamma_offset": word_str(self.gamma_offset, n),
            "mult": str(self.mult),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TDecomp":
        tau = BinaryWord.from_str(obj["tau"])
        n = tau.length
        gens = [BinaryWord.from_str(g) for g in obj["gamma_gens"]]
        off = BinaryWord.from_str(obj["gamma_offset"])
        return cls(n, tau.bits, LinearCode(n, gens), off.bits, int(obj["mult"]))


def trivial_descriptor(length: int = 0) -> TDecomp:
    return TDecomp(length, 0, LinearCode(length), 0, 1)


def code_descriptor(D: LinearCode) -> TDecomp:
    """The code VOA M_D itself."""
    return TDecomp(D.length, 0, D, 0, 1)


def v_e8_descriptor(alpha: BinaryWord | int) -> TDecomp:
    S_E8, D_E8 = e8_codes()
    a = alpha.bits if isinstance(alpha, BinaryWord) else alpha
    if a not in S_E8:
        raise ValueError("alpha must lie in S_E8")
    comp = mask_of(BLOCK) & ~a
    mult = multiplicity(support_subcode(D_E8, a))
    gamma = project(D_E8, comp)
    # odd half-pattern parity on the complement when 0 < wt(alpha) < 16
    offset = comp & -comp if 0 < popcount(a) < BLOCK else 0
    return TDecomp(BLOCK, a, gamma, offset, mult)


def descriptor_coset_fuse(d: TDecomp, mu: BinaryWord | int) -> TDecomp:
    m = mu.bits if isinstance(mu, BinaryWord) else mu
    if m >> d.ambient_length:
        raise ValueError("length mismatch")
    return TDecomp(d.ambient_length, d.tau, d.gamma_code, d.gamma_offset ^ (m & d.complement), d.mult)


def descriptor_tensor(parts: Iterable[TDecomp]) -> TDecomp:
    n = tau = off = 0
    gens: list[int] = []
    mult = 1
    for d in parts:
        tau |= d.tau << n
        off |= d.gamma_offset << n
        gens += [b << n for b in d.gamma_code.basis]
        mult *= d.mult
        n += d.ambient_length
    return TDecomp(n, tau, LinearCode(n, gens), off, mult)


def descriptor_induce(d: TDecomp, D: LinearCode, F: LinearCode) -> list[TDecomp]:
    """One fused descriptor per coset of D in F (graded lexicographic order)."""
    if not F.contains_code(D):
        raise ValueError("D is not contained in F")
    return [descriptor_coset_fuse(d, mu) for mu in coset_representatives(F, D)]


def induce_collapsed(d: TDecomp, D: LinearCode, F: LinearCode) -> TDecomp:
    """The induced module as one descriptor.

    The union of the fused Gamma cosets is offset + proj(F); each pattern is hit
    |F_tau / D_tau| times, which multiplies into the multiplicity.
    """
    if not F.contains_code(D):
        raise ValueError("D is not contained in F")
    if not d.gamma_code.contains_code(project(D, d.complement)):
        raise ValueError("descriptor is not built over D")
    gamma = project(F, d.complement) + d.gamma_code
    index = support_subcode(F, d.tau).dim - support_subcode(D, d.tau).dim
    return TDecomp(d.ambient_length, d.tau, gamma, d.gamma_offset, d.mult << index)


def group_descriptors(ds: Iterable[TDecomp]) -> list[tuple[TDecomp, int]]:
    """Merge descriptors with identical (tau, Gamma coset); multiplicities add."""
    acc: dict[tuple, list] = {}
    for d in ds:
        k = d.key()
        if k in acc:
            acc[k][1] += d.mult
        else:
            acc[k] = [d.canonical(), d.mult]
    return [(d, m) for d, m in acc.values()]


def descriptors_json(ds: Sequence[TDecomp]) -> str:
    return json.dumps([d.to_json() for d in ds], indent=1)
