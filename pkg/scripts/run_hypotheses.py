"""Check the code conditions on the standard pairs and time each run."""

import argparse
import time
from dataclasses import dataclass

from mvoa import hypotheses as h
from mvoa.gf2core import LinearCode
from mvoa.mooncodes import d_e8_cubed, e8_codes, moonshine_codes


@dataclass
class Config:
    skip_large: bool = False
    recheck_every: int = 50


def pairs(cfg: Config):
    S, D = e8_codes()
    yield "D_E8, S_E8", D, S
    yield "negative", LinearCode(8, [0x0F, 0xF0]), LinearCode(8, [0xFF])
    if not cfg.skip_large:
        yield "D_E8^3, S_nat", d_e8_cubed(), moonshine_codes().S


def main(cfg: Config) -> None:
    for name, D, S in pairs(cfg):
        t0 = time.perf_counter()
        rep = h.check_conditions(D, S)
        dt = time.perf_counter() - t0
        sample = rep.witnesses[:: cfg.recheck_every]
        ok = all(all(h.verify_witness(D, w).values()) for w in sample)
        reason = rep.failures[0][2] if rep.failures else "-"
        print(f"{name:>14}: pass={rep.passed} witnesses={len(rep.witnesses)} "
              f"rechecked={len(sample)} ok={ok} failures={len(rep.failures)} ({reason}) {dt:.1f}s")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--skip-large", action="store_true")
    p.add_argument("--recheck-every", type=int, default=Config.recheck_every)
    main(Config(**vars(p.parse_args())))
