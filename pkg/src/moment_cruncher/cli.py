"""Command-line entry point: ``moment-cruncher <subcommand> ...``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import analyze, oracle
from .errors import MomentCruncherError, NotIndependentlyNormal
from .exact import fmt_q
from .expr import to_rational_gf
from .families import BUILTINS, ArcsineFamily, Family, GFFamily, parse_family
from .gj import avoid_counts, parse_patterns, pattern_family, probability_gf, weight_enumerator
from .moments import correlation_at, mixed_moments, moment_table
from .parallel import worker_count


class CliError(Exception):
    pass


def _n_range(text: str) -> range:
    a, sep, b = text.partition("..")
    try:
        lo, hi = int(a), int(b if sep else a)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    return range(lo, hi + 1)


def _common(p: argparse.ArgumentParser, source=True):
    if source:
        src = p.add_mutually_exclusive_group()
        src.add_argument("--gf", metavar="EXPR", help='generating function, e.g. "1/(1-s*(t+1/t)/2)"')
        src.add_argument("--family", metavar="NAME", help="built-in family, e.g. heads-count(1/3)")
        src.add_argument("--patterns", metavar="LIST", help='patterns, e.g. "HH,TT" or "HH:t1,TT:t2"')
        p.add_argument("--alphabet", type=int, default=2, help="alphabet size for --patterns (default 2)")
    p.add_argument("--n-range", type=_n_range, metavar="A..B")
    p.add_argument("--order", type=int, metavar="J")
    p.add_argument("--rmax", type=int, default=analyze.DEFAULT_R_MAX)
    p.add_argument("--depth", type=int, default=analyze.DEFAULT_DEPTH)
    p.add_argument("--hold-out", type=int, default=analyze.DEFAULT_HOLD_OUT)
    p.add_argument("--n0", type=int)
    p.add_argument("--format", choices=("json", "csv", "text"), default="text")
    p.add_argument("--out", metavar="PATH")
    p.add_argument("--signed-weights", action="store_true", help="allow negative weights (warn only)")
    p.add_argument("--seed-free", action="store_true", help=argparse.SUPPRESS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="moment-cruncher",
                                     description="Exact moments and asymptotics of GF-defined distributions.")
    sub = parser.add_subparsers(dest="command", required=True)
    _common(sub.add_parser("examples", help="list built-in families"), source=False)
    _common(sub.add_parser("moments", help="per-n exact moment tables"))
    _common(sub.add_parser("analyse", help="mean/variance, normality verdict, formulas in n and r"))
    _common(sub.add_parser("analyse2", help="bivariate mixed-moment formulas"))
    g = sub.add_parser("gj", help="Goulden-Jackson generating function from patterns")
    _common(g)
    g.add_argument("--avoid", action="store_true", help="count words avoiding all patterns")
    pl = sub.add_parser("plot", help="histogram export (CSV + SVG)")
    _common(pl)
    pl.add_argument("--n", type=int, required=True)
    pl.add_argument("--mode", choices=("standardized", "raw"), default="standardized")
    _common(sub.add_parser("verify", help="cross-check against brute-force enumeration"))
    return parser


def build_family(args) -> Family:
    if args.gf:
        return GFFamily(to_rational_gf(args.gf), args.gf, n0=1 if args.n0 is None else args.n0,
                        signed_weights=args.signed_weights)
    if args.family:
        fam = parse_family(args.family)
        if args.signed_weights and isinstance(fam, GFFamily):
            fam.signed_weights = True
        return fam
    if args.patterns:
        return pattern_family(args.alphabet, parse_patterns(args.patterns))
    raise CliError("one of --gf, --family, --patterns is required")


def _emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_examples(args):
    if args.format == "json":
        _emit(args, _json([{"name": k, "description": d, "parameter": p} for k, (d, p) in BUILTINS.items()]))
    else:
        _emit(args, "".join(f"{k:24s} {d}\n" for k, (d, _) in BUILTINS.items()))
    return 0


def cmd_moments(args):
    fam = build_family(args)
    ns = args.n_range or range(0, 11)
    order = args.order if args.order is not None else 2 * args.rmax
    if fam.markers == 1:
        tables = [moment_table(f) for f in fam.factorial_moments(ns, order)]
        if args.format == "json":
            _emit(args, _json([t.to_json() for t in tables]))
        elif args.format == "csv":
            head = ["n", "mean"] + [f"m{j}" for j in range(order + 1)]
            _emit(args, _csv([head] + [[t.n, fmt_q(t.mean)] + [fmt_q(c) for c in t.central] for t in tables]))
        else:
            lines = [f"{fam.name}"]
            for t in tables:
                lines.append(f"n={t.n} mean={fmt_q(t.mean)} var={fmt_q(t.central[2]) if order >= 2 else '-'} "
                             f"alpha={[fmt_q(a) for a in t.alpha_even]} beta={[fmt_q(b) for b in t.beta_odd]}")
            _emit(args, "\n".join(lines) + "\n")
        return 0
    tables = [mixed_moments(f, order) for f in fam.factorial_moments(ns, (order, order))]
    if args.format == "json":
        out = []
        for t in tables:
            obj = t.to_json()
            if order >= 2 and t.m(2, 0) and t.m(0, 2):
                obj["correlation"] = correlation_at(t).to_json()
            out.append(obj)
        _emit(args, _json(out))
    elif args.format == "csv":
        rows = [["n", "i", "j", "m"]] + [[t.n, i, j, fmt_q(t.m(i, j))]
                                         for t in tables for i in range(order + 1) for j in range(order + 1)]
        _emit(args, _csv(rows))
    else:
        lines = [fam.name]
        for t in tables:
            corr = ""
            if order >= 2 and t.m(2, 0) and t.m(0, 2):
                corr = f" corr={correlation_at(t).correlation_numeric:.6f}"
            lines.append(f"n={t.n} mean=({fmt_q(t.mean[0])}, {fmt_q(t.mean[1])}){corr}")
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_analyse(args):
    fam = build_family(args)
    if fam.markers != 1:
        raise CliError("analyse needs a univariate family; use analyse2")
    report = analyze.analyse_report(fam, args.rmax, args.depth, n0=args.n0, hold_out=args.hold_out)
    if args.format == "json":
        _emit(args, _json(report.to_json()))
    else:
        lines = [f"family: {report.family}", f"verdict: {report.verdict.verdict}"]
        if report.mean_variance:
            lines.append(f"mean(n) = {report.mean_variance.mean}")
            lines.append(f"variance(n) = {report.mean_variance.variance}")
        lines.append("even limits: " + ", ".join(
            f"r={r}: {'diverges' if v is None else fmt_q(v)}" for r, v in sorted(report.verdict.even_limits.items())))
        if report.even is not None:
            lines.append(report.even.render())
            lines.append(report.odd.render() + "   [alpha[2r+1] = beta[2r+1]/sqrt(m2)]")
        if report.error:
            lines.append(f"note: {report.error}")
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_analyse2(args):
    fam = build_family(args)
    if fam.markers != 2:
        raise CliError("analyse2 needs a bivariate family")
    result = analyze.analyse_moms2(fam, args.rmax, args.depth, n0=args.n0, hold_out=args.hold_out)
    if args.format == "json":
        _emit(args, _json(result.to_json()))
    else:
        lines = [f"family: {result.family}",
                 f"asymptotic squared correlation: {fmt_q(result.correlation_limit)}"]
        lines += [f.render() for f in result.formulas.values()]
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_gj(args):
    if not args.patterns:
        raise CliError("gj needs --patterns")
    P = parse_patterns(args.patterns)
    ns = args.n_range or range(0, 11)
    if args.avoid:
        counts = avoid_counts(args.alphabet, P, ns[-1])
        sel = [(n, counts[n]) for n in ns]
        if args.format == "json":
            _emit(args, _json([{"n": n, "count": c} for n, c in sel]))
        elif args.format == "csv":
            _emit(args, _csv([["n", "count"]] + [[n, c] for n, c in sel]))
        else:
            _emit(args, ",".join(str(c) for _, c in sel) + "\n")
        return 0
    F = weight_enumerator(args.alphabet, P)
    R = probability_gf(F, args.alphabet)
    dists = GFFamily(R, "gj").distributions(ns[-1])
    sel = [dists[n] for n in ns]
    if args.format == "json":
        _emit(args, _json({"weightEnumerator": F.to_json(), "probabilityGF": R.to_json(),
                           "distributions": [d.to_json() for d in sel]}))
    elif args.format == "csv":
        rows = []
        for d in sel:
            body = d.csv_rows()
            rows += [["n"] + body[0]] if not rows else []
            rows += [[d.n] + r for r in body[1:]]
        _emit(args, _csv(rows))
    else:
        lines = [f"weight enumerator: {F}", f"probability GF: {R}"]
        lines += [f"n={d.n}: " + ", ".join(f"{v}: {fmt_q(p)}" for v, p in d.support) for d in sel]
        _emit(args, "\n".join(lines) + "\n")
    return 0


def cmd_plot(args):
    fam = build_family(args)
    hist = analyze.plot_dist(fam, args.n, args.mode)
    text = _csv(hist.csv_rows())
    if args.out:
        out = Path(args.out)
        out.write_text(text)
        out.with_suffix(".svg").write_text(hist.to_svg())
    else:
        sys.stdout.write(text)
    return 0


def _oracle_for(args):
    """(distribution function n -> dict, bivariate?) by brute force, or None."""
    if args.patterns:
        P = parse_patterns(args.patterns)
        pats = {p: m for p, m in zip(P.patterns, P.marks)}
        return lambda n: oracle.enumerate_words(args.alphabet, pats, n)
    if args.family:
        fam = parse_family(args.family)
        if isinstance(fam, ArcsineFamily):
            return lambda n: oracle.enumerate_walks({1: _half(), -1: _half()}, "positive-time", n)
        name = args.family.split("(")[0].strip()
        p = _param(args.family)
        base = {
            "coin-difference": {1: p, -1: 1 - p},
            "heads-count": {1: p, 0: 1 - p},
            "point-mass": {0: 1},
            "heads-tails": {(1, 0): p, (0, 1): 1 - p},
            "independent-coins": {(0, 0): (1 - p) ** 2, (1, 0): p * (1 - p), (0, 1): p * (1 - p), (1, 1): p * p},
        }[name]
        return lambda n: oracle.iid_sum(base, n)
    return None


def _half():
    from fractions import Fraction
    return Fraction(1, 2)


def _param(text: str):
    from fractions import Fraction
    if "(" in text:
        return Fraction(text[text.index("(") + 1:text.rindex(")")].strip())
    return Fraction(1, 2)


def cmd_verify(args):
    brute = _oracle_for(args)
    if brute is None:
        raise CliError("verify needs --patterns or --family (no oracle exists for a free-form --gf)")
    fam = build_family(args)
    ns = args.n_range or range(0, 11)
    order = args.order if args.order is not None else 4
    caps = (order,) if fam.markers == 1 else (order, order)
    truncated = {f.n: f for f in fam.factorial_moments(ns, caps)}
    ok = True
    lines = []
    for n in ns:
        expected = brute(n)
        dist = fam.distribution(n)
        same_dist = dist.as_dict() == expected
        fm_expected = oracle.factorial_moments_by_enumeration(expected, order)
        fm = truncated[n].F
        fm = [list(r) for r in fm] if fam.markers == 2 else list(fm)
        same_fm = fm == fm_expected
        central_expected = oracle.moments_by_enumeration(expected, order).central
        if fam.markers == 1:
            central = list(moment_table(truncated[n]).central)
        else:
            central = [list(r) for r in mixed_moments(truncated[n], order).mixed_central]
        same_central = central == central_expected
        good = same_dist and same_fm and same_central
        ok &= good
        lines.append(f"n={n}: distribution {'ok' if same_dist else 'MISMATCH'}, factorial moments "
                     f"{'ok' if same_fm else 'MISMATCH'}, central moments {'ok' if same_central else 'MISMATCH'}")
    if args.format == "json":
        _emit(args, _json({"family": fam.name, "agree": ok, "details": lines}))
    else:
        _emit(args, "\n".join(lines + [f"{'AGREE' if ok else 'DISAGREE'}"]) + "\n")
    return 0 if ok else 1


COMMANDS = {"examples": cmd_examples, "moments": cmd_moments, "analyse": cmd_analyse,
            "analyse2": cmd_analyse2, "gj": cmd_gj, "plot": cmd_plot, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.seed_free:
            raise CliError("--seed-free is reserved; nothing in this tool is random")
        worker_count()
        return COMMANDS[args.command](args)
    except NotIndependentlyNormal as exc:
        print(f"error: NotIndependentlyNormal: {exc}", file=sys.stderr)
        return 3
    except (MomentCruncherError, CliError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
