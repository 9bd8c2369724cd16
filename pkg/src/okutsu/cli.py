"""Command-line front end.

Exit status: 0 on success, 1 on usage or input errors, 2 when the mathematics
fails (reducible input, unstable family, exhausted budget, failed checks).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import registry
from .chains import MLVChain, compute_chain, global_invariants, slopes_and_secondary, step_invariants, verify_chain
from .errors import BudgetExhausted, OkutsuError, PrecisionError, ReducibleError, UnstableAtPrecision
from .frames import (conjecture_probe, frame_from_chain, main_invariant, ramification_polygon,
                     sequence_from_frame, tame_checks, verify_frame, verify_sequence)
from .parse import ParseError, parse_input, parse_poly
from .poly import format_poly
from .report import chain_report, compare_expected, observed_values, render_pretty
from .values import fmt_value
from .vf import RootValuation

COMMANDS = ("chain", "verify-chain", "invariants", "weight", "distance", "krasner", "frame",
            "sequence", "tame-check", "conjecture-probe")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _options(p: argparse.ArgumentParser, with_g: bool = False):
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json",
                     help="JSON output (default)")
    fmt.add_argument("--pretty", dest="fmt", action="store_const", const="pretty",
                     help="indented text output")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    p.add_argument("--samples", type=int, default=200, help="sample count for OF0/OS0")
    p.add_argument("--prec", type=int, default=None, help="Puiseux precision k (denominators p^k)")
    p.add_argument("--p", type=int, default=None, help="residue characteristic for the examples")
    if with_g:
        p.add_argument("--g", default=None, help="second polynomial (same field)")
    p.set_defaults(fmt="json")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="okutsu", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", parser_class=_Parser, metavar="COMMAND")
    helps = {
        "chain": "compute an MLV chain and the full report",
        "verify-chain": "check the MLV conditions for the computed chain",
        "invariants": "e, f, d, depth, step invariants and secondary slopes",
        "weight": "w(g) = v_F(g)/deg g",
        "distance": "d(g) and the multiset of v(theta - alpha)",
        "krasner": "ramification polygon and Krasner's constant omega",
        "frame": "Okutsu frame, with sampled OF0 and exact OF1-OF3",
        "sequence": "Okutsu sequence, with sampled OS0 and exact OS1-OS3",
        "tame-check": "tame-case identities (use --force on non-tame input)",
        "conjecture-probe": "compare delta and omega on one instance",
    }
    for name in COMMANDS:
        sp = sub.add_parser(name, help=helps[name])
        sp.add_argument("input", help='"<field>; <polynomial>" or a registry id such as A1')
        _options(sp, with_g=name in ("weight", "distance"))
        if name == "tame-check":
            sp.add_argument("--force", action="store_true", help="run the checks on non-tame input")
    ex = sub.add_parser("example", help="run a registry example against its expected values")
    ex.add_argument("id", nargs="?", help="example id")
    ex.add_argument("--list", action="store_true", help="list the registry")
    ex.add_argument("--explain", action="store_true", help="print provenance of expected values")
    _options(ex)
    return ap


# ---------------------------------------------------------------------------------
# input resolution


def _lookup_registry(F, p, prec):
    """A registry instance whose polynomial equals F (defect inputs)."""
    K = F.field
    for rec in registry.REGISTRY.values():
        if not rec.defect or K.kind != "puiseux" or K.q != K.p:
            continue
        inst = rec.build(K.p, K.prec)
        if inst.F == F:
            return inst
    return None


def resolve(text: str, p: Optional[int], prec: Optional[int]):
    if text.strip().upper() in registry.REGISTRY:
        rec = registry.get(text.strip())
        pp = rec.fixed_p or (p or 3)
        return rec.build(pp, prec or 6)
    spec = parse_input(text, prec=prec, p=p)
    F = spec.poly
    if F.degree < 1 or not F.is_monic():
        raise UsageError("the polynomial must be monic of positive degree")
    try:
        chain = compute_chain(F)
    except (BudgetExhausted, PrecisionError):
        # defect inputs exhaust the Montes loop; the registry carries their chains
        inst = _lookup_registry(F, p, prec)
        if inst is None:
            raise
        return inst
    return registry.Instance(F, chain, RootValuation(F))


def _second(args, inst):
    if args.g is None:
        raise UsageError("this command needs --g <polynomial>")
    g = parse_poly(args.g, inst.F.field)
    if g.degree < 1:
        raise UsageError("--g must be nonconstant")
    return g


# ---------------------------------------------------------------------------------
# commands


def run_command(args) -> tuple:
    """(payload, ok) for one parsed command line."""
    cmd = args.command
    if cmd == "example":
        return _example(args)
    inst = resolve(args.input, args.p, args.prec)
    F, chain, vF = inst.F, inst.chain, inst.vF
    if cmd == "chain":
        rep = chain_report(F, chain, vF)
        rep["chain"] = chain.to_json()["steps"]
        return rep, True
    if cmd == "verify-chain":
        r = verify_chain(chain, vF=vF)
        return {"input": _inp(F), "passed": r.passed, "checks": r.to_json()}, r.passed
    if cmd == "invariants":
        e, f, d, depth = global_invariants(chain)
        pairs, ok = slopes_and_secondary(chain)
        return {"input": _inp(F), "invariants": {"e": e, "f": f, "d": d, "depth": depth},
                "steps": [list(step_invariants(chain, i)) for i in range(depth)],
                "slopes": [[fmt_value(g), fmt_value(l)] for g, l in pairs],
                "lambda_identity": ok}, True
    if cmd == "weight":
        g = _second(args, inst)
        return {"input": _inp(F), "g": format_poly(g), "v_F": fmt_value(vF(g)),
                "weight": fmt_value(vF.weight(g))}, True
    if cmd == "distance":
        g = _second(args, inst)
        ms = vF.distance_multiset(g)
        return {"input": _inp(F), "g": format_poly(g), "distance": fmt_value(ms[0][0]),
                "multiset": [[fmt_value(v), k] for v, k in ms]}, True
    if cmd == "krasner":
        ram = ramification_polygon(vF)
        out = {"input": _inp(F), **ram.to_json()}
        checks = ram.checks(F.degree)
        out["checks"] = checks.to_json()
        return out, checks.passed
    if cmd == "frame":
        frame = frame_from_chain(chain)
        r = verify_frame(frame, vF, samples=args.samples, seed=args.seed)
        delta, per = main_invariant(frame, vF)
        return {"input": _inp(F), "frame": frame.to_json(),
                "delta": None if delta is None else fmt_value(delta),
                "delta_levels": [lv.to_json() for lv in per],
                "checks": r.to_json()}, r.passed
    if cmd == "sequence":
        seq = sequence_from_frame(frame_from_chain(chain), vF)
        r = verify_sequence(seq, vF, samples=args.samples, seed=args.seed)
        return {"input": _inp(F), "sequence": seq.to_json(), "checks": r.to_json()}, r.passed
    if cmd == "tame-check":
        t = tame_checks(chain, vF=vF, force=args.force)
        out = {"input": _inp(F), "tame": t["tame"], "reasons": t["reasons"], "forced": t["forced"]}
        for k in ("delta", "omega"):
            if k in t:
                out[k] = fmt_value(t[k])
        if "t" in t:
            out["t"] = t["t"]
            out["multiset"] = [[fmt_value(v), k] for v, k in t["multiset"]]
        out["checks"] = t["report"].to_json()
        return out, True
    if cmd == "conjecture-probe":
        c = conjecture_probe(chain, vF=vF)
        out = {"input": _inp(F), "hypotheses_hold": c["hypotheses_hold"],
               "failed_hypotheses": c["failed_hypotheses"],
               "delta": None if c["delta"] is None else fmt_value(c["delta"]),
               "omega": None if c["omega"] is None else fmt_value(c["omega"]),
               "status": c["status"],
               "note": "one instance only; this says nothing about the general claim"}
        return out, True
    raise UsageError(f"unknown command {cmd}")


def _inp(F):
    return {"field": F.field.descriptor(), "F": format_poly(F)}


def _example(args):
    if args.list or not args.id:
        if not args.list:
            raise UsageError("example needs an id or --list; valid ids: " + ", ".join(registry.REGISTRY))
        return {"examples": [{"id": r.id, "summary": r.summary, "input": r.setup_text()}
                             for r in registry.REGISTRY.values()]}, True
    try:
        rec = registry.get(args.id)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    p = rec.fixed_p or (args.p or 3)
    prec = args.prec or 6
    if rec.fixed_p and args.p not in (None, rec.fixed_p):
        raise UsageError(f"example {rec.id} is fixed at p = {rec.fixed_p}")
    inst = rec.build(p, prec)
    out = {"id": rec.id, "summary": rec.summary, **chain_report(inst.F, inst.chain, inst.vF)}
    if rec.defect:
        out["precision"] = {"p": p, "prec": prec}
    expected = rec.expected(p)
    cmp = compare_expected(observed_values(inst.F, inst.chain, inst.vF), expected)
    out["checks"].extend(cmp.to_json())
    if args.explain:
        out["provenance"] = {k: {"value": _plain(v), "source": tag} for k, (v, tag) in expected.items()}
        rules = []
        for st in inst.chain.steps:
            if st.family is not None and st.family.rule is not None:
                rules.append({"family": st.family.rule.description,
                              "source": st.family.rule.provenance})
        if rules:
            out["provenance"]["families"] = rules
    ok = all(c["status"] != "fail" for c in out["checks"])
    return out, ok


def _plain(v):
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


def emit(payload, fmt: str, stream=None):
    stream = sys.stdout if stream is None else stream
    if fmt == "pretty":
        stream.write(render_pretty(payload) + "\n")
    else:
        stream.write(json.dumps(payload, indent=2) + "\n")


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        if not args.command:
            ap.print_help(sys.stderr)
            return 1
        payload, ok = run_command(args)
    except UsageError as exc:
        sys.stderr.write(f"okutsu: error: {exc}\n")
        return 1
    except ParseError as exc:
        sys.stderr.write(f"okutsu: {exc}\n")
        return 1
    except (OkutsuError, ValueError) as exc:
        err = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        if isinstance(exc, ReducibleError) and exc.witness:
            err["error"]["witness"] = exc.witness
        if isinstance(exc, UnstableAtPrecision):
            err["error"]["last_values"] = [fmt_value(v) for v in exc.last_values]
        emit(err, getattr(args, "fmt", "json"))
        sys.stderr.write(f"okutsu: {type(exc).__name__}: {exc}\n")
        return 2
    emit(payload, args.fmt)
    return 0 if ok else 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
