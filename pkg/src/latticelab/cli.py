"""Command-line entry point: ``latticelab <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction

import mpmath as mp

from .context import LatticeLabError, PrecisionContext, load_config
from .lattice import F_2d, F_direct, F_eta_integral, F_qseries, TwoDFamily
from .mahler import LaurentPoly2, mahler_2var
from .registry import GROUPS, IdentityEvaluationError, registry_list, run_suite, verify
from .reports import report_emit


def _quad(text: str):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("--quad expects four comma-separated numbers")
    try:
        vals = [Fraction(p) for p in parts]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad quadruple {text!r}") from None
    return [int(v) if v.denominator == 1 else v for v in vals]


def _family_for(quad):
    """A two-dimensional family containing the quadruple, as (family, factor)."""
    q = sorted(Fraction(x) for x in quad)
    q = [x / q[0] for x in q]
    if q[:3] == [1, 1, 1]:
        x = q[3]
        return TwoDFamily("F111", x), (3 + mp.mpf(x.numerator) / x.denominator) ** 2
    table = {(1, 1, 2, 2): "F12", (1, 1, 4, 4): "F14", (1, 2, 2, 4): "F22"}
    tag = table.get(tuple(q))
    if tag is None:
        raise LatticeLabError(f"no q-series family covers {tuple(quad)}; use --method integral")
    return TwoDFamily(tag, 1), 1


def _digits(args, cfg, default=None) -> int:
    if args.digits is not None:
        return args.digits
    if default is not None:
        return default
    return int(cfg.get("precision", 25))


def cmd_list(args, cfg) -> int:
    items = registry_list(status=args.status, section=args.section, kind=args.kind)
    if args.json:
        print(json.dumps([i.summary() for i in items], indent=2))
        return 0
    for i in items:
        mark = " [erratum]" if "erratum" in i.metadata else ""
        print(f"{i.id:28s} {i.status:12s} {i.section} {i.group:17s} {i.anchor}{mark}")
    print(f"{len(items)} identities", file=sys.stderr)
    return 0


def cmd_verify(args, cfg) -> int:
    try:
        rep = verify(args.id, args.digits, order=args.order, store=cfg.get("cache_dir") or None)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return 2
    except IdentityEvaluationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(rep.to_dict(), indent=2))
    return 0 if rep.passed else 1


def cmd_suite(args, cfg) -> int:
    jobs = args.jobs if args.jobs is not None else int(cfg.get("jobs", 1))
    order = args.order if args.order is not None else int(cfg.get("order", 200))
    reports = run_suite(status=args.status, section=args.section, kind=args.kind,
                        digits=args.digits, order=order, jobs=jobs)
    config = {"status": args.status, "section": args.section, "kind": args.kind,
              "digits": args.digits, "order": order}
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    report_emit(reports, args.format, args.out or "-", config=config, timestamp=stamp)
    failed = [r.id for r in reports if not r.passed]
    print(f"{len(reports) - len(failed)}/{len(reports)} passed", file=sys.stderr)
    if failed:
        print("failed: " + ", ".join(failed), file=sys.stderr)
    return 0 if not failed else 1


def cmd_eval(args, cfg) -> int:
    if args.what != "F":
        print("error: only F is supported", file=sys.stderr)
        return 2
    digits = _digits(args, cfg)
    ctx = PrecisionContext(digits)
    quad = args.quad
    if args.method == "direct":
        res = F_direct(*quad, v=args.v)
        out = {"partial": res.partial, "damped": res.damped, "v": res.v}
    elif args.method == "integral":
        out = {"value": mp.nstr(F_eta_integral(*quad, ctx), digits)}
    else:
        fam, factor = _family_for(quad)
        fn = F_qseries if args.method == "qseries" else F_2d
        with mp.workdps(ctx.dps):
            out = {"value": mp.nstr(factor * fn(fam, ctx), digits), "family": fam.tag, "x": str(fam.x)}
    out.update(quad=[str(x) for x in quad], method=args.method)
    print(json.dumps(out, indent=2))
    return 0


def cmd_mahler(args, cfg) -> int:
    digits = _digits(args, cfg, default=12)
    P = LaurentPoly2.parse(args.polynomial)
    val = mahler_2var(P, PrecisionContext(digits))
    print(json.dumps({"polynomial": P.to_text(), "digits": digits, "value": mp.nstr(val, digits)}, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="latticelab", description="Evaluate lattice sums and verify identities.")
    p.add_argument("--config", help="key = value config file (default: $LATTICELAB_CONFIG or ~/.latticelab.conf)")
    sub = p.add_subparsers(dest="command", required=True)
    sections = f"1..{len(GROUPS)} or one of: {', '.join(GROUPS)}"

    s = sub.add_parser("list", help="list registered identities")
    s.add_argument("--status", choices=["proven", "conjectural"])
    s.add_argument("--section", help=sections)
    s.add_argument("--kind", choices=["numeric", "formal_series"])
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_list)

    s = sub.add_parser("verify", help="verify one identity")
    s.add_argument("id")
    s.add_argument("--digits", type=int)
    s.add_argument("--order", type=int, help="coefficient order for formal identities")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("suite", help="verify many identities")
    s.add_argument("--status", choices=["proven", "conjectural"])
    s.add_argument("--section", help=sections)
    s.add_argument("--kind", choices=["numeric", "formal_series"])
    s.add_argument("--digits", type=int, help="override every identity's default digits")
    s.add_argument("--order", type=int)
    s.add_argument("--jobs", type=int)
    s.add_argument("--out", help="output file (default stdout)")
    s.add_argument("--format", choices=["json", "md", "csv"], default="json")
    s.set_defaults(func=cmd_suite)

    s = sub.add_parser("eval", help="evaluate F(a,b,c,d)")
    s.add_argument("what", choices=["F"])
    s.add_argument("--quad", type=_quad, required=True)
    s.add_argument("--method", choices=["direct", "integral", "qseries", "2d"], default="integral")
    s.add_argument("--digits", type=int)
    s.add_argument("--v", type=int, default=50, help="cube size for --method direct")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("mahler", help="Mahler measure of a two-variable Laurent polynomial")
    s.add_argument("polynomial")
    s.add_argument("--digits", type=int)
    s.set_defaults(func=cmd_mahler)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = load_config(args.config)
    try:
        return args.func(args, cfg)
    except (LatticeLabError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
