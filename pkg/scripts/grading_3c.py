"""Where the 3C trace puts 248: conformal weight vs the normalized series q^-1 * trace."""

from mvoa import qchar as qc


def main(order: int = 7) -> None:
    t = qc.char_3C_direct(order)
    print("conformal weight :", list(range(order + 1)))
    print("trace            :", t.graded(order))
    norm = t.shift(-qc.DEN)
    print("q^-1 * trace     :", {k: norm[k] for k in range(-1, order) if norm[k]})
    print("substitution route agrees:", t == qc.char_3C(order))


if __name__ == "__main__":
    main()
