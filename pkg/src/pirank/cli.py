"""Command-line front end: ``pirank <command> ...``.

Exit codes: 0 success, 2 bad input, 3 search budget exhausted, 4 a
hypothesis of the requested check fails, 5 an asserted inequality or
invariant fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from .adjunction import InvariantViolation, fuzz_dependence, fuzz_updown, instance_from_text, verify_dependence_theorem
from .graph import to_text
from .prank import INF, BudgetExceeded, primitivity_rank
from .stacking import StackingError, find_stacking, format_stacking, verify_stacking
from .twocomplex import (classify_immersion, complex_from_text, find_relator_with_pi, fuzz_pushout, fuzz_reduction,
                         infer_map, map_from_text, one_relator_pushout, presentation_complex, pushout_inequality,
                         complex_to_text)
from .words import DomainError, MalformedInput, format_word, maximal_root, parse_letters, reduce

EXIT_INPUT, EXIT_BUDGET, EXIT_HYPOTHESIS, EXIT_INVARIANT = 2, 3, 4, 5


class Failure(Exception):
    def __init__(self, code: int, message: str, report: dict | None = None):
        super().__init__(message)
        self.code = code
        self.report = report


def read_word(text: str, rank: int | None) -> tuple:
    """Parse an ASCII word; letters beyond ``rank`` are renamed a, b, ... in alphabetical order.

    Without a declared rank, the rank is the number of distinct letters.
    """
    raw = parse_letters(text)
    if not raw:
        raise MalformedInput("empty word")
    used = sorted({abs(x) for x in raw})
    renamed = {}
    if rank is None:
        rank = len(used)
    if used[-1] > rank:
        if len(used) > rank:
            raise MalformedInput(f"{text!r} uses {len(used)} letters but the rank is {rank}")
        renamed = {old: new for new, old in enumerate(used, 1)}
        raw = tuple(renamed[abs(x)] * (1 if x > 0 else -1) for x in raw)
    w = reduce(raw)
    if not w:
        raise MalformedInput(f"{text!r} reduces to the trivial word")
    return w, rank, {format_word((o,)): format_word((n,)) for o, n in renamed.items()}


def _read_file(path: str, suffix: str = "") -> str:
    p = Path(path)
    if p.exists():
        return p.read_text()
    data = resources.files("pirank") / "data" / (p.name if p.suffix else p.name + suffix)
    if data.is_file():
        return data.read_text()
    raise MalformedInput(f"no such file: {path}")


# -- commands -------------------------------------------------------------------------


def cmd_rank(args) -> tuple[dict, list[str]]:
    w, rank, renamed = read_word(args.word, args.rank)
    try:
        pr = primitivity_rank(w, rank, budget=args.budget)
    except BudgetExceeded as exc:
        raise Failure(EXIT_BUDGET, str(exc), {"word": format_word(w), "partial": exc.partial}) from exc
    subs = pr.w_subgroups
    head = f"pi={pr.pi_text()}, verdict={pr.verdict}"
    if pr.pi == 2 and len(subs) == 1:
        head += f", unique peripheral subgroup {subs[0].generators_text()}"
    elif subs:
        head += (", w-subgroup " if len(subs) == 1 else ", w-subgroups ") + ", ".join(s.generators_text() for s in subs)
    lines = [head]
    for i, s in enumerate(subs, 1):
        lines.append(f"w-subgroup {i}: {s.generators_text()}, presentation {s.presentation_text()}")
        lines += ["  " + ln for ln in to_text(s.graph).splitlines()]
    report = {"word": format_word(w), "rank": rank, "renamed": renamed, "pi": None if pr.pi == INF else int(pr.pi),
              "verdict": pr.verdict, "hypotheses": {"cyclically reduced core": True},
              "w_subgroups": [{"generators": [format_word(g) for g in s.basis_words], "rank": s.rank,
                               "presentation": s.presentation_text(), "graph": to_text(s.graph)} for s in subs]}
    return report, lines


def cmd_stack(args) -> tuple[dict, list[str]]:
    w, rank, renamed = read_word(args.word, args.rank)
    root = maximal_root(w)
    hyp = {"indivisible": root.exponent == 1}
    if not hyp["indivisible"]:
        raise Failure(EXIT_HYPOTHESIS, f"{format_word(w)} is a proper power of {format_word(root.root)}",
                      {"word": format_word(w), "hypotheses": hyp})
    try:
        st = find_stacking(w, rank, max_nodes=args.budget or 0)
    except BudgetExceeded as exc:
        raise Failure(EXIT_BUDGET, str(exc), {"word": format_word(w), "hypotheses": hyp}) from exc
    except StackingError as exc:
        raise Failure(EXIT_INVARIANT, str(exc), {"word": format_word(w), "hypotheses": hyp}) from exc
    ok = verify_stacking(w, st)
    if not ok:
        raise Failure(EXIT_INVARIANT, "the stacking found does not verify", {"word": format_word(w)})
    text = format_stacking(st)
    lines = [f"stacking of {format_word(w)}" + (f" (renamed {renamed})" if renamed else "")]
    lines += text.splitlines() + ["verified"]
    report = {"word": format_word(w), "rank": rank, "renamed": renamed, "hypotheses": hyp,
              "stacking": {f"{k[0]} {k[1]}": list(v) for k, v in st.orders.items()}, "verified": ok}
    return report, lines


def _checklist_lines(hyp: dict) -> list[str]:
    return [f"  [{'x' if ok else ' '}] {name}" for name, ok in hyp.items()]


def cmd_verify(args) -> tuple[dict, list[str]]:
    inst = instance_from_text(_read_file(args.instance, ".inst"))
    try:
        rep = verify_dependence_theorem(inst)
    except InvariantViolation as exc:
        raise Failure(EXIT_INVARIANT, str(exc)) from exc
    lines = [rep.summary(), "hypotheses:"] + _checklist_lines(rep.hypotheses)
    if rep.hypotheses_ok:
        lines.append(f"chi(Gamma)={rep.chi_gamma} deg(sigma)={rep.deg_sigma} chi(Gamma_u)={rep.chi_gamma_u} "
                     f"chi(Gamma_u^I)={rep.chi_gamma_u_I} chi(C)={rep.chi_c}")
        if rep.free_rank_bound is not None:
            lines.append(f"free image rank bound: {rep.free_rank_bound}")
    if not rep.hypotheses_ok:
        raise Failure(EXIT_HYPOTHESIS, rep.summary(), rep.to_json())
    return rep.to_json(), lines


def cmd_pushout(args) -> tuple[dict, list[str]]:
    f = map_from_text(_read_file(args.map, ".map"))
    try:
        rep = pushout_inequality(f)
        if not rep.hypotheses_ok:
            raise Failure(EXIT_HYPOTHESIS, rep.summary(), rep.to_json())
        res = one_relator_pushout(f)
    except InvariantViolation as exc:
        raise Failure(EXIT_INVARIANT, str(exc)) from exc
    lines = [rep.summary(), "hypotheses:"] + _checklist_lines(rep.hypotheses)
    lines.append(f"chi(Y)={res.chi_y} branching={f.branching()} chi(Y_hat)={res.chi_y_hat} "
                 f"chi(Y_hat^I)={res.chi_y_hat_I}")
    lines.append("Y_hat:")
    lines += ["  " + ln for ln in complex_to_text(res.y_hat).splitlines()]
    report = rep.to_json()
    report["y_hat"] = complex_to_text(res.y_hat)
    report["y_hat_I"] = complex_to_text(res.y_hat_I)
    return report, lines


def cmd_classify(args) -> tuple[dict, list[str]]:
    w, rank, _ = read_word(args.word, args.rank)
    y = complex_from_text(_read_file(args.complex, ".cx"))
    x = presentation_complex([w], rank)
    f = infer_map(y, x)
    try:
        pr = primitivity_rank(w, rank, budget=args.budget)
    except BudgetExceeded as exc:
        raise Failure(EXIT_BUDGET, str(exc)) from exc
    try:
        cl = classify_immersion(f, pr)
    except InvariantViolation as exc:
        raise Failure(EXIT_INVARIANT, str(exc)) from exc
    hyp = {"immersion": f.is_immersion(), "connected": y.is_connected()}
    report = {"word": format_word(w), "pi": None if pr.pi == INF else int(pr.pi), "chi_Y": y.euler_characteristic(),
              "classification": cl.kind, "detail": cl.detail, "subgroup_index": cl.subgroup_index,
              "hypotheses": hyp}
    lines = [str(cl), f"pi={pr.pi_text()} chi(Y)={y.euler_characteristic()}", "hypotheses:"] + _checklist_lines(hyp)
    if cl.kind == "precondition-failure":
        raise Failure(EXIT_HYPOTHESIS, str(cl), report)
    if cl.kind == "boundary-case-violation":
        raise Failure(EXIT_INVARIANT, str(cl), report)
    return report, lines


def cmd_fuzz(args) -> tuple[dict, list[str]]:
    seed, n = args.seed, args.trials
    if args.kind == "updown":
        s = fuzz_updown(seed, n)
        report = {"kind": "updown", "trials": n, "passed": s.passed, "min_good": s.min_good, "failures": s.failures}
        line = f"{s.passed}/{n} instances: >=2 good vertices"
        bad = s.failures
    elif args.kind == "dependence":
        s = fuzz_dependence(seed, n)
        ok = n - s.violations
        report = {"kind": "dependence", "trials": n, "passed": ok, "equality_cases": len(s.equality_cases),
                  "violations": s.violations}
        line = f"{ok}/{n} instances: inequality holds ({len(s.equality_cases)} equality cases)"
        bad = s.violations
    elif args.kind == "pushout":
        s = fuzz_pushout(seed, n)
        ok = n - len(s.violations)
        report = {"kind": "pushout", "trials": n, "passed": ok, "asserted": s.asserted, "equality": s.equality,
                  "violations": s.violations}
        line = f"{ok}/{n} instances: pushout inequality holds ({s.asserted} asserted, {s.equality} tight)"
        bad = s.violations
    else:
        w = find_relator_with_pi(3)
        s = fuzz_reduction(seed, n, w, 3)
        report = {"kind": "reduction", "word": format_word(w), "trials": n, "nonnegative": s.nonnegative,
                  "reduced": s.reduced, "failures": s.failures}
        line = f"{s.reduced}/{s.nonnegative} immersions with chi>=0 over <abc | {format_word(w)}> reduce to graphs"
        bad = s.failures
    if bad:
        raise Failure(EXIT_INVARIANT, line, report)
    return report, [line]


COMMANDS = {"rank": cmd_rank, "stack": cmd_stack, "verify": cmd_verify, "pushout": cmd_pushout,
            "classify": cmd_classify, "fuzz": cmd_fuzz}


def _positive(text: str) -> int:
    k = int(text)
    if k <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return k


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--rank", type=_positive, help="rank of the free group")
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--budget", type=_positive, help="maximum search nodes")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=_positive, default=1000)
    p = argparse.ArgumentParser(prog="pirank", description="Primitivity rank, stackings, adjunction spaces "
                                "and one-relator pushouts.")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("rank", parents=[common], help="primitivity rank and w-subgroups of a word")
    s.add_argument("word")
    s = sub.add_parser("stack", parents=[common], help="a stacking of an indivisible word")
    s.add_argument("word")
    s = sub.add_parser("verify", parents=[common], help="check the dependence inequality on an instance file")
    s.add_argument("instance")
    s = sub.add_parser("pushout", parents=[common], help="one-relator pushout of a branched map file")
    s.add_argument("map")
    s = sub.add_parser("classify", parents=[common], help="classify an immersion into a one-relator complex")
    s.add_argument("word")
    s.add_argument("complex")
    s = sub.add_parser("fuzz", parents=[common], help="randomised checks")
    s.add_argument("kind", choices=["updown", "dependence", "pushout", "reduction"])
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    code, report, lines = 0, None, []
    try:
        report, lines = COMMANDS[args.command](args)
    except Failure as exc:
        code, report, lines = exc.code, exc.report, [str(exc)]
    except BudgetExceeded as exc:
        code, lines = EXIT_BUDGET, [str(exc)]
    except InvariantViolation as exc:
        code, lines = EXIT_INVARIANT, [f"invariant violated: {exc}"]
    except (MalformedInput, ValueError, OSError) as exc:
        code = EXIT_HYPOTHESIS if isinstance(exc, DomainError) else EXIT_INPUT
        lines = [f"error: {exc}"]
    if args.json:
        out = dict(report or {})
        out["exit"] = code
        if code:
            out["error"] = lines[0]
        print(json.dumps(out, sort_keys=True, indent=2, default=str))
    else:
        stream = sys.stdout if code == 0 else sys.stderr
        for ln in lines:
            print(ln, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
