"""Compute the graded characters (V_E8, moonshine, 2B, 3C) and dump them as JSON."""

import argparse
import json
import time
from dataclasses import dataclass
from pathlib import Path

from mvoa import qchar as qc


@dataclass
class Config:
    order: int = 6
    out: Path = Path("results/characters.json")


def main(cfg: Config) -> None:
    rows = {}
    t0 = time.perf_counter()
    rows["e8"] = qc.e8_char(cfg.order).graded()
    rows["moonshine"] = qc.moonshine_char(cfg.order).graded()
    r = qc.char_2B(cfg.order)
    rows["2b_plus"], rows["2b_minus"], rows["2b_trace"] = r.ch_plus.graded(), r.ch_minus.graded(), r.trace.graded()
    rows["3c"] = qc.char_3C_direct(cfg.order).graded()
    rows["j_oracle"] = [qc.j_oracle(cfg.order)[k] for k in range(-1, cfg.order)]
    elapsed = time.perf_counter() - t0
    for k, v in rows.items():
        print(f"{k:>10}: {v}")
    print(f"order {cfg.order}: {elapsed:.1f}s")
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    cfg.out.write_text(json.dumps({k: [str(x) for x in v] for k, v in rows.items()}, indent=1), encoding="utf-8")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--order", type=int, default=Config.order)
    p.add_argument("--out", type=Path, default=Config.out)
    main(Config(**vars(p.parse_args())))
