"""Shared hypothesis strategies for random binary codes."""

from hypothesis import strategies as st

from mvoa.gf2core import LinearCode


@st.composite
def codes(draw, min_length=1, max_length=16, max_gens=12):
    n = draw(st.integers(min_length, max_length))
    k = draw(st.integers(0, max_gens))
    gens = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=k, max_size=k))
    return LinearCode(n, gens)


@st.composite
def code_and_word(draw, **kw):
    C = draw(codes(**kw))
    v = draw(st.integers(0, (1 << C.length) - 1))
    return C, v


def brute_words(C: LinearCode) -> set[int]:
    """Span by closure, independent of the echelon basis."""
    span = {0}
    for g in C.generators:
        span |= {w ^ g for w in span}
    return span


def brute_we(words, n: int) -> list[int]:
    counts = [0] * (n + 1)
    for w in words:
        counts[bin(w).count("1")] += 1
    return counts
