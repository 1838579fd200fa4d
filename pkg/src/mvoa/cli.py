"""mvoa command line: every report is JSON (schema 1), CSV or plain text."""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from . import cocycle, gf2core, hypotheses, latticekit, modrep, mooncodes, qchar
from .gf2core import LinearCode, word_str

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    order: int = qchar.DEFAULT_ORDER
    format: str = "json"
    out: Path | None = None
    threads: int | None = None
    args: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.order < 0:
            raise UsageError("order must be >= 0")
        if self.format not in ("json", "csv", "text"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.threads is not None and self.threads < 1:
            raise UsageError("threads must be >= 1")


# ---------------------------------------------------------------- helpers


def _code(spec: str) -> LinearCode:
    """A registry key, or a path to a code in the n=.. k=.. text format."""
    try:
        return mooncodes.named_code(spec)
    except KeyError:
        pass
    p = Path(spec)
    if p.is_file():
        return LinearCode.from_text(p.read_text(encoding="utf-8"))
    raise UsageError(f"unknown code {spec!r}; keys: {', '.join(mooncodes.CODE_KEYS)}")


def _code_report(C: LinearCode) -> dict:
    W = gf2core.weight_enumerator(C)
    cls = gf2core.classify(C)
    return {
        "length": C.length,
        "dim": C.dim,
        "basis": [word_str(b, C.length) for b in C.basis],
        "weight_enumerator": {str(w): str(a) for w, a in W.nonzero().items()},
        "even": cls.is_even,
        "doubly_even": cls.is_doubly_even,
        "self_orthogonal": cls.is_self_orthogonal,
        "self_dual": cls.is_self_dual,
        "min_weight": cls.min_weight,
    }


def _series_report(q: qchar.QSeries, order: int) -> dict:
    return {"graded": [str(c) for c in q.graded(order)], "series": q.to_json_obj()}


def _frac(x: Fraction) -> str:
    return str(x)


# ---------------------------------------------------------------- subcommands


def cmd_codes(cfg: RunConfig) -> tuple[bool, dict]:
    action, target = cfg.args["action"], cfg.args["target"]
    if action == "build":
        C = _code(target)
        return True, {"code": target, **_code_report(C), "text": C.to_text()}
    if target == "moonshine":
        pair = mooncodes.moonshine_codes()
        WS = gf2core.weight_enumerator(pair.S)
        WD = gf2core.macwilliams_transform(WS, pair.S.dim)
        checks = mooncodes.verify_moonshine()
        ok = (
            pair.D.dim == 41
            and WD[2] == 0
            and WS.nonzero() == {0: 1, 16: 3, 24: 120, 32: 3, 48: 1}
            and mooncodes.d_nat_min_weight() == 4
            and all(v for k, v in checks.items() if isinstance(v, bool))
            and checks["membership_agreements"] == checks["membership_samples"]
        )
        return ok, {
            "dim_S": pair.S.dim,
            "dim_D": pair.D.dim,
            "A2_D": str(WD[2]),
            "min_weight_D": mooncodes.d_nat_min_weight(),
            "we_S": {str(w): str(a) for w, a in WS.nonzero().items()},
            "we_D_low": [str(WD[w]) for w in range(9)],
            "checks": checks,
        }
    if target == "e8":
        S, D = mooncodes.e8_codes()
        ok = (
            gf2core.weight_enumerator(S).nonzero() == {0: 1, 8: 30, 16: 1}
            and gf2core.radical(D) == S
            and S == gf2core.reed_muller(1, 4)
        )
        return ok, {"S_E8": _code_report(S), "D_E8": _code_report(D)}
    if target == "lambda":
        S_L, D_L = mooncodes.lambda_codes()
        w2 = gf2core.words_of_weight(D_L, 2)
        ok = (
            sorted(w2) == sorted(mooncodes.adjacent_pairs(S_L.length))
            and all(mooncodes.is_doubled(w, S_L.length) for w in S_L.words())
        )
        return ok, {
            "dim_S": S_L.dim,
            "dim_D": D_L.dim,
            "weight2_words": [word_str(w, D_L.length) for w in sorted(w2)],
            "all_S_doubled": all(mooncodes.is_doubled(w, S_L.length) for w in S_L.words()),
        }
    if target == "rm41":
        g = mooncodes.rm41_aut()
        ok = g.order == 322560 and all(g.preserves.values())
        return ok, {"order": g.order, "generators": sorted(g.generators), "preserves": g.preserves}
    if target == "assembly":
        rows = mooncodes.assembly_table()
        counts: dict[str, int] = {}
        for r in rows:
            counts[r.shape] = counts.get(r.shape, 0) + 1
        ok = counts == {"aaa": 32, "aac": 32, "aca": 32, "caa": 32}
        pair = mooncodes.moonshine_codes()
        return ok and mooncodes.holomorphy_check(pair.D, pair.S), {"shapes": counts}
    raise UsageError(f"unknown verify target {target!r}")


def cmd_hypotheses(cfg: RunConfig) -> tuple[bool, dict]:
    D, S = _code(cfg.args["D"]), _code(cfg.args["S"])
    rep = hypotheses.check_conditions(D, S, ordered=not cfg.args.get("unordered", False))
    out = rep.to_json(with_witnesses=cfg.args.get("witnesses", False))
    if rep.witnesses and cfg.args.get("recheck", True):
        # rechecking every witness on big pairs is slow; a spread sample suffices for the report
        step = max(1, len(rep.witnesses) // 64)
        sample = rep.witnesses[::step]
        rechecked = all(all(hypotheses.verify_witness(D, w).values()) for w in sample)
        out["witnesses_rechecked"] = len(sample)
        out["recheck_pass"] = rechecked
    else:
        rechecked = True
    return rep.passed and rechecked, out


def cmd_chain(cfg: RunConfig) -> tuple[bool, dict]:
    checks = mooncodes.verify_chain()
    stages = [
        {
            "index": st.index,
            "S": [word_str(b, st.S.length) for b in st.S.basis],
            "dim_D": st.D.dim,
            "all_doubled": all(mooncodes.is_doubled(w, st.S.length) for w in st.S.words()),
        }
        for st in mooncodes.orbifold_chain()
    ]
    return all(checks.values()), {"checks": checks, "stages": stages}


def cmd_lattice(cfg: RunConfig) -> tuple[bool, dict]:
    action = cfg.args["action"]
    if action == "variant":
        m = cfg.args["m"]
        L = latticekit.e8_variant(m)
        c = latticekit.classify_lattice(L)
        counts = latticekit.norm_counts(L, cfg.args.get("max_norm", 4))
        ok = c.even and c.unimodular and counts.get(Fraction(2), 0) == 240
        return ok, {
            "m": m,
            "even": c.even,
            "det": _frac(c.det),
            "unimodular": c.unimodular,
            "norm_counts": {_frac(k): v for k, v in counts.items()},
        }
    if action == "theta":
        L = latticekit.e8_variant(cfg.args["m"])
        th = latticekit.theta_series(L, cfg.order)
        return True, _series_report(th, cfg.order)
    if action == "scan-bound":
        L = latticekit.e8_variant(cfg.args["m"])
        r = latticekit.conformal_bound_scan(L)
        ok = not r.violations and r.min_distance >= Fraction(1, 3)
        return ok, {
            "labels": r.labels,
            "pairs": r.pairs,
            "max_offdiag": _frac(r.max_offdiag),
            "min_distance": _frac(r.min_distance),
            "bound": _frac(latticekit.BOUND),
            "violations": len(r.violations),
        }
    if action == "frame-codes":
        chain = mooncodes.orbifold_chain()
        rows = []
        ok = True
        for m in range(1, 5):
            code = latticekit.frame_tau_code(latticekit.e8_variant(m))
            match = code == chain[m - 1].S
            ok &= match
            rows.append({"m": m, "dim": code.dim, "equals_chain_S": match, "permutation": None})
        S5 = chain[4].S
        bad = [w for w in S5.words() if not mooncodes.is_doubled(w, S5.length)]
        ok &= bool(bad)
        return ok, {
            "variants": rows,
            "S5_non_doubled_example": word_str(min(bad), S5.length) if bad else None,
            "S5_non_doubled_count": len(bad),
        }
    raise UsageError(f"unknown lattice action {action!r}")


def cmd_char(cfg: RunConfig) -> tuple[bool, dict | qchar.QSeries]:
    which, order = cfg.args["which"], cfg.order
    if which == "moonshine":
        q = qchar.moonshine_char(order)
        # the normalized character q^-1 ch(q) is J
        ok = q.shift(-qchar.DEN) == qchar.j_oracle(order)
        return ok, {"name": which, "matches_j_oracle": ok, **_series_report(q, order)}
    if which == "2b":
        r = qchar.char_2B(order)
        total = qchar.moonshine_char(order)
        ok = r.ch_plus + r.ch_minus == total and r.ch_minus == r.closed_form_minus
        return ok, {
            "name": which,
            "plus": [str(c) for c in r.ch_plus.graded(order)],
            "minus": [str(c) for c in r.ch_minus.graded(order)],
            "trace": [str(c) for c in r.trace.graded(order)],
            "sum_matches_moonshine": r.ch_plus + r.ch_minus == total,
            "minus_matches_closed_form": r.ch_minus == r.closed_form_minus,
            "series": r.trace.to_json_obj(),
        }
    if which == "3c":
        sub = qchar.char_3C(order)
        direct = qchar.char_3C_direct(order)
        ok = sub == direct
        return ok, {"name": which, "direct_equals_substitution": ok, **_series_report(direct, order)}
    if which == "e8":
        q = qchar.e8_char(order)
        ok = q == qchar.e8_oracle(order)
        return ok, {"name": which, "matches_oracle": ok, **_series_report(q, order)}
    if which == "j-oracle":
        q = qchar.j_oracle(order)
        return True, {"name": which, **_series_report(q, order)}
    raise UsageError(f"unknown character {which!r}")


def cmd_series(cfg: RunConfig) -> tuple[bool, dict]:
    n = cfg.args["n"]
    if n < 1:
        raise UsageError("n must be >= 1")
    pair = mooncodes.series_codes(n)
    order = max(cfg.order, 1)
    q = qchar.series_char(n, order)
    ok = q[1] == 0 and pair.S == gf2core.dual(pair.D)
    if n == 1:
        ok &= pair == mooncodes.moonshine_codes()
    return ok, {
        "n": n,
        "length": pair.S.length,
        "dim_S": pair.S.dim,
        "dim_D": pair.D.dim,
        "weight1": str(q[1]),
        **_series_report(q, order),
    }


def _selftest_checks(full: bool) -> list[tuple[str, Callable[[], bool]]]:
    S_E8, D_E8 = mooncodes.e8_codes()
    checks: list[tuple[str, Callable[[], bool]]] = [
        ("gf2core.macwilliams_d_e8", lambda: gf2core.macwilliams_transform(gf2core.weight_enumerator(S_E8), 5)
         == gf2core.weight_enumerator(D_E8)),
        ("gf2core.hamming8_self_dual", lambda: gf2core.is_self_dual(gf2core.hamming8())),
        ("gf2core.rm14_is_s_e8", lambda: gf2core.reed_muller(1, 4) == S_E8),
        ("cocycle.laws_n8", lambda: _cocycle_laws(8)),
        ("modrep.tau_additivity_n4", lambda: _tau_additivity(4)),
        ("modrep.hamming_group", lambda: all(
            modrep.fuse_hamming(x, modrep.fuse_hamming(x, y)) == y
            for x in modrep.all_hamming_labels() for y in modrep.all_hamming_labels())),
        ("modrep.frame_switch_hom", lambda: _frame_switch_hom()),
        ("mooncodes.chain", lambda: all(mooncodes.verify_chain().values())),
        ("mooncodes.moonshine", lambda: cmd_codes(RunConfig("codes", args={"action": "verify", "target": "moonshine"}))[0]),
        ("mooncodes.lambda", lambda: cmd_codes(RunConfig("codes", args={"action": "verify", "target": "lambda"}))[0]),
        ("mooncodes.assembly", lambda: cmd_codes(RunConfig("codes", args={"action": "verify", "target": "assembly"}))[0]),
        ("mooncodes.rm41", lambda: cmd_codes(RunConfig("codes", args={"action": "verify", "target": "rm41"}))[0]),
        ("hypotheses.e8_pair", lambda: hypotheses.check_conditions(D_E8, S_E8).passed),
        ("hypotheses.negative", lambda: not hypotheses.check_conditions(
            LinearCode(8, [0x0F, 0xF0]), LinearCode(8, [0xFF])).passed),
        ("latticekit.variants", lambda: all(
            cmd_lattice(RunConfig("lattice", args={"action": "variant", "m": m}))[0] for m in range(1, 5))),
        ("latticekit.frame_codes", lambda: cmd_lattice(RunConfig("lattice", args={"action": "frame-codes"}))[0]),
        ("latticekit.bound_scan", lambda: cmd_lattice(RunConfig("lattice", args={"action": "scan-bound", "m": 1}))[0]),
        ("qchar.e8", lambda: qchar.e8_char(4) == qchar.e8_oracle(4)),
        ("qchar.moonshine", lambda: qchar.moonshine_char(4).shift(-qchar.DEN) == qchar.j_oracle(4)),
        ("qchar.2b", lambda: cmd_char(RunConfig("char", order=4, args={"which": "2b"}))[0]),
        ("qchar.3c", lambda: qchar.char_3C(6) == qchar.char_3C_direct(6)),
        ("qchar.series2", lambda: qchar.series_char(2, 1)[1] == 0),
    ]
    if full:
        checks.append(("hypotheses.moonshine_pair", lambda: hypotheses.check_conditions(
            mooncodes.d_e8_cubed(), mooncodes.moonshine_codes().S).passed))
    return checks


def _cocycle_laws(n: int) -> bool:
    words = [gf2core.BinaryWord(n, a) for a in range(1 << n)]
    for a in words:
        if cocycle.epsilon(a, a) != cocycle.square_sign(a):
            return False
        for b in words:
            if cocycle.epsilon(a, b) * cocycle.epsilon(b, a) != cocycle.comm_sign(a, b):
                return False
    return True


def _tau_additivity(n: int) -> bool:
    import itertools

    labels = list(itertools.product(modrep.ISING, repeat=n))
    for x in labels:
        for y in labels:
            tx, ty = modrep.tau_word(x).bits, modrep.tau_word(y).bits
            if any(modrep.tau_word(z).bits != tx ^ ty for z in modrep.fuse_tlabels(x, y)):
                return False
    return True


def _frame_switch_hom() -> bool:
    group = [modrep.IDENTITY_LABEL, modrep.HammingLabel("half", 1),
             modrep.HammingLabel("sixteenth", 0), modrep.HammingLabel("sixteenth", 1)]
    for frame in ("e->d", "e->f"):
        for x in group:
            for y in group:
                lhs = modrep.frame_switch(modrep.fuse_hamming(x, y), frame)
                rhs = modrep.fuse_hamming(modrep.frame_switch(x, frame), modrep.frame_switch(y, frame))
                if lhs != rhs:
                    return False
    return True


def cmd_selftest(cfg: RunConfig) -> tuple[bool, dict]:
    results = {}
    for name, fn in _selftest_checks(cfg.args.get("full", False)):
        try:
            results[name] = bool(fn())
        except Exception as exc:  # a crashing check is a failing check
            results[name] = f"error: {exc}"
    ok = all(v is True for v in results.values())
    return ok, {"checks": results}


COMMANDS: dict[str, Callable[[RunConfig], tuple[bool, object]]] = {
    "codes": cmd_codes,
    "hypotheses": cmd_hypotheses,
    "chain": cmd_chain,
    "lattice": cmd_lattice,
    "char": cmd_char,
    "series": cmd_series,
    "selftest": cmd_selftest,
}


# ---------------------------------------------------------------- output


def _text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and k != "series":
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            elif k != "series":
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(f"{pad}{x}" if not isinstance(x, (dict, list)) else _text(x, indent) for x in obj)
    return f"{pad}{obj}"


def render(cfg: RunConfig, ok: bool, report: dict) -> str:
    if cfg.format == "json":
        return json.dumps({"schema": SCHEMA, "command": cfg.command, "pass": ok, **report}, indent=1) + "\n"
    if cfg.format == "csv":
        series = report.get("series")
        if series is None:
            raise UsageError(f"csv output is only available for q-series reports, not {cfg.command!r}")
        return "".join(f"{e},{c}\n" for e, c in series["coefficients"])
    return f"pass: {ok}\n" + _text(report) + "\n"


def run(cfg: RunConfig) -> tuple[int, str]:
    ok, report = COMMANDS[cfg.command](cfg)
    return (EXIT_OK if ok else EXIT_FAIL), render(cfg, ok, report)


# ---------------------------------------------------------------- argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", type=Path, default=None)
    common.add_argument("--threads", type=int, default=None,
                        help="worker cap; the current kernels are single-threaded")
    common.add_argument("--order", type=int, default=qchar.DEFAULT_ORDER)

    p = _Parser(prog="mvoa", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("codes", parents=[common], help="build or verify named codes")
    c.add_argument("action", choices=("build", "verify"))
    c.add_argument("target", help="code key for build; moonshine|e8|lambda|rm41|assembly for verify")

    h = sub.add_parser("hypotheses", parents=[common], help="check the code conditions on a pair (D, S)")
    h.add_argument("--D", required=True, dest="D")
    h.add_argument("--S", required=True, dest="S")
    h.add_argument("--witnesses", action="store_true")
    h.add_argument("--unordered", action="store_true")

    sub.add_parser("chain", parents=[common], help="orbifold chain report")

    la = sub.add_parser("lattice", parents=[common], help="E8 variants, theta, bound scan, frame codes")
    la.add_argument("action", choices=("variant", "theta", "scan-bound", "frame-codes"))
    la.add_argument("--m", type=int, default=1, choices=(1, 2, 3, 4))
    la.add_argument("--max-norm", type=int, default=4, dest="max_norm")

    ch = sub.add_parser("char", parents=[common], help="graded characters")
    ch.add_argument("which", choices=("moonshine", "2b", "3c", "e8", "j-oracle"))

    se = sub.add_parser("series", parents=[common], help="series codes and weight-1 check")
    se.add_argument("--n", type=int, required=True)

    st = sub.add_parser("selftest", parents=[common], help="run the invariant checks")
    st.add_argument("--full", action="store_true", help="include the slow length-48 hypotheses check")
    return p


def parse_config(argv: Sequence[str]) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    base = {k: ns.pop(k) for k in ("command", "order", "format", "out", "threads")}
    return RunConfig(**base, args=ns)


def _error_json(kind: str, message: str) -> str:
    return json.dumps({"schema": SCHEMA, "pass": False, "error": kind, "message": message}) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv)
        t0 = time.perf_counter()
        code, text = run(cfg)
    except UsageError as exc:
        sys.stderr.write(_error_json("usage", str(exc)))
        return EXIT_USAGE
    except (ValueError, ArithmeticError, KeyError) as exc:
        sys.stderr.write(_error_json("invalid-input", str(exc)))
        return EXIT_FAIL
    if cfg.out is not None:
        cfg.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    sys.stderr.write(f"[mvoa] {cfg.command} done in {time.perf_counter() - t0:.2f}s\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
