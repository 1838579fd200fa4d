"""E8 variants over the frame 2Z^8: classification, frame codes, conformal-vector bound."""

from fractions import Fraction

from mvoa import latticekit as lk
from mvoa.gf2core import word_str
from mvoa.mooncodes import is_doubled, orbifold_chain


def main() -> None:
    chain = orbifold_chain()
    for m in range(1, 5):
        L = lk.e8_variant(m)
        c = lk.classify_lattice(L)
        code = lk.frame_tau_code(L)
        print(f"E8({m}): even={c.even} det={c.det} roots={lk.norm_counts(L, 2)[Fraction(2)]} "
              f"tau-code dim={code.dim} equals chain S^{m}: {code == chain[m - 1].S}")
    for m in (3, 4):
        pr = lk.e8_generators(m, printed=True)
        odd = [(i, j, lk.dot(a, b)) for i, a in enumerate(pr) for j, b in enumerate(pr)
               if i < j and lk.dot(a, b).denominator != 1]
        print(f"uncorrected E8({m}) list: non-integral pairs {odd[:3]}")
    S5 = chain[4].S
    bad = sorted(w for w in S5.words() if not is_doubled(w, 16))
    print(f"S^5 has {len(bad)} non-doubled words, e.g. {word_str(bad[0], 16)}")
    r = lk.conformal_bound_scan(lk.e8_variant(1))
    print(f"bound scan: {r.labels} vectors, {r.pairs} pairs, max <e,f> = {r.max_offdiag}, "
          f"min <e-f,e-f> = {r.min_distance}, violations = {len(r.violations)}")


if __name__ == "__main__":
    main()
