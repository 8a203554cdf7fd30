"""Command line interface: ``equicohom <command> --bundle FILE``.

Exit codes: 0 pass, 1 validation failure, 2 hypothesis failure,
3 internal invariant violation (a result the theory rules out).
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import time
from pathlib import Path

from . import classify as cl
from .bundle import Bundle, load_bundle, validate_bundle
from .cohomology import BREDON, TWISTED, EquivariantComplex
from .errors import (EquicohomError, HypothesisViolation, LiftInvariantViolation,
                     NotCohomologous, ParseError, ValidationError)

log = logging.getLogger("equicohom")

EXIT_PASS, EXIT_INVALID, EXIT_HYPOTHESIS, EXIT_INTERNAL = 0, 1, 2, 3


class CommandFailure(Exception):
    def __init__(self, code: int, report: dict):
        super().__init__(report.get("error", ""))
        self.code = code
        self.report = report


def _groups(gs) -> list:
    return [{"rank": g.rank, "torsion": list(g.torsion), "group": str(g)} for g in gs]


def _degrees(args, bundle: Bundle, C: EquivariantComplex) -> list[int]:
    degs = args.degrees if args.degrees is not None else bundle.degrees
    degs = sorted(set(int(d) for d in degs))
    top = C.max_dim - 1
    bad = [d for d in degs if not 0 <= d <= top]
    if bad:
        raise ValidationError(f"degrees {bad} need simplices above the truncation D = {C.max_dim}")
    return degs


def _verdict(ok: bool, witness=None) -> dict:
    return {"pass": bool(ok), "witness": witness if not ok else None}


def _prepare(args) -> tuple[Bundle, dict]:
    bundle = load_bundle(args.bundle)
    if args.max_dim is not None:
        bundle = bundle.truncate(args.max_dim)
    checks = validate_bundle(bundle)
    structural = {k: v for k, v in checks.items() if k != "hypotheses"}
    if not all(v["pass"] for v in structural.values()):
        raise CommandFailure(EXIT_INVALID, {"status": "fail", "validation": checks})
    return bundle, checks


def _require_hypotheses(bundle: Bundle):
    hyp = bundle.hypotheses()
    if hyp:
        raise HypothesisViolation("; ".join(hyp))


def cmd_validate(args) -> dict:
    bundle = load_bundle(args.bundle)
    if args.max_dim is not None:
        bundle = bundle.truncate(args.max_dim)
    checks = validate_bundle(bundle)
    structural = all(v["pass"] for k, v in checks.items() if k != "hypotheses")
    report = {"status": "pass" if structural else "fail", "validation": checks}
    if not structural:
        raise CommandFailure(EXIT_INVALID, report)
    return report


def cmd_cohomology(args) -> dict:
    bundle, _ = _prepare(args)
    C = bundle.complex()
    if args.flavor == BREDON:
        _require_hypotheses(bundle)
    degs = _degrees(args, bundle, C)
    groups = C.cohomology(args.flavor, max(degs)) if degs else []
    return {"status": "pass", "flavor": args.flavor,
            "cohomology": {str(d): _groups([groups[d]])[0] for d in degs}}


def cmd_compare(args) -> dict:
    bundle, _ = _prepare(args)
    _require_hypotheses(bundle)
    C = bundle.complex()
    degs = _degrees(args, bundle, C)
    top = max(degs) if degs else -1
    br = C.cohomology(BREDON, top) if degs else []
    tw = C.cohomology(TWISTED, top) if degs else []
    rng = random.Random(args.seed)
    per = {}
    all_ok = True
    for d in degs:
        equal = br[d].invariants == tw[d].invariants
        inverse = maps = True
        for _ in range(args.samples):
            f = C.random_cochain(d, rng, BREDON)
            T = C.random_cochain(d, rng, TWISTED)
            inverse &= C.twisted_to_bredon(C.bredon_to_twisted(f)).equals(f) and C.bredon_to_twisted(C.twisted_to_bredon(T)).equals(T)
            maps &= C.coboundary(C.bredon_to_twisted(f)).equals(C.bredon_to_twisted(C.coboundary(f)))
        per[str(d)] = {"bredon": _groups([br[d]])[0], "twisted": _groups([tw[d]])[0],
                       "equal": equal, "psi_gamma_inverse": inverse, "cochain_map": maps}
        all_ok &= equal and inverse and maps
    report = {"status": "pass" if all_ok else "fail", "degrees": per}
    if not all_ok:
        raise CommandFailure(EXIT_INTERNAL, report)
    return report


def cmd_classify(args) -> dict:
    bundle, _ = _prepare(args)
    C = bundle.complex()
    degs = _degrees(args, bundle, C)
    rng = random.Random(args.seed)
    per = {}
    all_ok = True
    for n in degs:
        res = {"psi_gamma_id": True, "gamma_psi_id": True, "lift_invariants": True,
               "lift_roundtrip": True, "cochain_map": True, "cocycle_iff_L": True}
        witness = None
        for k in range(args.samples):
            T = cl.random_cocycle(C, n, rng) if k % 2 else C.random_cochain(n, rng)
            lift = cl.lift_cochain(T, args.method)
            problems = cl.check_lift(lift)
            res["lift_invariants"] &= not problems
            res["lift_roundtrip"] &= not cl.check_lift_roundtrip(lift)
            back = cl.cochain_of_lift(lift)
            res["psi_gamma_id"] &= back.equals(T)
            res["gamma_psi_id"] &= cl.lift_cochain(back, args.method).equals(lift)
            res["cochain_map"] &= C.coboundary(back).equals(cl.cochain_of_lift(lift.delta()))
            res["cocycle_iff_L"] &= C.coboundary(T).is_zero() == lift.in_L()
            if problems and witness is None:
                witness = problems[0]
        ok = all(res.values())
        all_ok &= ok
        per[str(n)] = {**res, "samples": args.samples, "witness": witness}
    report = {"status": "pass" if all_ok else "fail", "method": args.method, "degrees": per}
    if not all_ok:
        raise CommandFailure(EXIT_INTERNAL, report)
    return report


def _read_cochains(path: str, C: EquivariantComplex, n: int):
    data = json.loads(Path(path).read_text())
    try:
        f0 = C.from_vector(n, data["f0"])
        f1 = C.from_vector(n, data["f1"])
        h = C.from_vector(n - 1, data["h"]) if data.get("h") is not None else None
    except (KeyError, TypeError) as exc:
        raise ParseError(f"cochain file needs f0, f1 and h vectors ({exc})", location=path) from None
    return f0, f1, h


def cmd_homotopy(args) -> dict:
    bundle, _ = _prepare(args)
    C = bundle.complex()
    degs = _degrees(args, bundle, C)
    rng = random.Random(args.seed)
    per = {}
    all_ok = True
    for n in degs:
        if args.cochains:
            pairs = [_read_cochains(args.cochains, C, n)]
        else:
            pairs = []
            for _ in range(args.samples):
                f0 = cl.random_cocycle(C, n, rng)
                h = C.random_cochain(n - 1, rng) if n > 0 else None
                f1 = f0 - C.coboundary(h) if h is not None else f0
                pairs.append((f0, f1, h))
        res = {"endpoints": True, "projection": True, "lift": True}
        witness = None
        for f0, f1, h in pairs:
            V = cl.vertical_homotopy(f0, f1, h, args.method)
            problems = cl.check_vertical_homotopy(V, f0, f1, args.method)
            for key, found in problems.items():
                res[key] &= not found
                if found and witness is None:
                    witness = found[0]
        all_ok &= all(res.values())
        per[str(n)] = {"endpoints": res["endpoints"], "projection": res["projection"],
                       "lift_invariants": res["lift"], "pairs": len(pairs), "witness": witness}
    report = {"status": "pass" if all_ok else "fail", "degrees": per}
    if not all_ok:
        raise CommandFailure(EXIT_INTERNAL, report)
    return report


COMMANDS = {"validate": cmd_validate, "cohomology": cmd_cohomology, "compare": cmd_compare,
            "classify": cmd_classify, "homotopy": cmd_homotopy}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="equicohom", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--bundle", required=True, help="path to a JSON problem bundle")
        s.add_argument("--degree", "--degrees", dest="degrees", type=int, nargs="+",
                       help="degrees to compute (default: the bundle's list)")
        s.add_argument("--json-out", help="also write the report to this file")
        s.add_argument("--max-dim", type=int, help="truncate the bundle at dimension D")
        s.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
        s.add_argument("--timing", action="store_true", help="include wall-clock timing (breaks byte-identity)")
        if name == "cohomology":
            s.add_argument("--flavor", choices=(BREDON, TWISTED), default=TWISTED)
        if name in ("compare", "classify", "homotopy"):
            s.add_argument("--samples", type=int, default=20, help="random cochains per degree")
        if name in ("classify", "homotopy"):
            s.add_argument("--method", choices=("orbit", "direct"),
                           default="orbit" if name == "classify" else "direct",
                           help="build lifts through G/H × Δ[q] or by the unfolded formula")
        if name == "homotopy":
            s.add_argument("--cochains", help="JSON file with f0, f1, h as flat vectors")
    return p


def run(argv=None) -> tuple[int, dict, str]:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    base = {"command": args.command, "bundle": Path(args.bundle).stem}
    try:
        report = {**base, **COMMANDS[args.command](args)}
        code = EXIT_PASS
    except CommandFailure as exc:
        report, code = {**base, **exc.report}, exc.code
    except (ParseError, ValidationError, NotCohomologous) as exc:
        report, code = {**base, "status": "fail", "error": f"{type(exc).__name__}: {exc}"}, EXIT_INVALID
    except HypothesisViolation as exc:
        report, code = {**base, "status": "fail", "error": f"HypothesisViolation: {exc}"}, EXIT_HYPOTHESIS
    except (LiftInvariantViolation, EquicohomError) as exc:
        report, code = {**base, "status": "fail", "error": f"{type(exc).__name__}: {exc}"}, EXIT_INTERNAL
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - start, 3)
    text = json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if args.json_out:
        Path(args.json_out).write_text(text)
    return code, report, text


def main(argv=None) -> int:
    level = os.environ.get("EQUICOHOM_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    code, _, text = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
