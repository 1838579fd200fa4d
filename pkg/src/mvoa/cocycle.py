"""Sign cocycle for the extension {±e^a} of an even code.

Generators e^{xi_i} square to 1 and anticommute; e^a is the ordered product
over supp(a) in increasing coordinate order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2core import BinaryWord, popcount


def _transpositions(a: int, b: int) -> int:
    # pairs i in supp a, j in supp b with i > j
    count = 0
    while b:
        low = b & -b
        j = low.bit_length() - 1
        count += popcount(a >> (j + 1))
        b ^= low
    return count


def epsilon_bits(a: int, b: int) -> int:
    return -1 if _transpositions(a, b) & 1 else 1


def epsilon(alpha: BinaryWord, beta: BinaryWord) -> int:
    """Sign with e^alpha e^beta = epsilon * e^(alpha+beta)."""
    if alpha.length != beta.length:
        raise ValueError("length mismatch")
    return epsilon_bits(alpha.bits, beta.bits)


def square_sign(alpha: BinaryWord) -> int:
    w = alpha.weight
    return -1 if (w * (w - 1) // 2) & 1 else 1


def comm_sign(alpha: BinaryWord, beta: BinaryWord) -> int:
    if alpha.length != beta.length:
        raise ValueError("length mismatch")
    e = popcount(alpha.bits & beta.bits) + alpha.weight * beta.weight
    return -1 if e & 1 else 1


@dataclass(frozen=True)
class SignedWord:
    word: BinaryWord
    sign: int = 1

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def __mul__(self, other: "SignedWord") -> "SignedWord":
        s = self.sign * other.sign * epsilon(self.word, other.word)
        return SignedWord(self.word + other.word, s)

    def __neg__(self) -> "SignedWord":
        return SignedWord(self.word, -self.sign)
