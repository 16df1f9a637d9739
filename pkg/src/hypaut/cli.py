"""Command-line entry point.

Exit codes: 0 success, 2 domain error, 3 resource or factoring-effort limit, 64 usage.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .admissible import (
    Interpretation,
    ProblemInstance,
    admissible_primes,
    check_gorinov_conjecture,
    extremal_report,
    gorinov_bound,
    is_realizable_order,
    max_admissible_prime,
    new_admissible_prime,
    prime_order_upper_bound,
    primitive_prime_divisors,
)
from .arith import factorize, is_prime
from .cyclotomic import cyclotomic_poly, eval_int
from .errors import DomainError, FactorizationIncomplete, HypautError, ResourceError
from .forms import is_smooth_standard, klein_form, witness_for_prime
from .jacobian import is_gorenstein, ppav_full_report, quotient_singularity_type
from .tables import TABLE2_DEGREES, TABLE2_DIMS, render_table1, render_table2, table1, table2

EXIT_OK, EXIT_DOMAIN, EXIT_RESOURCE, EXIT_USAGE = 0, 2, 3, 64
FORMATS = ("json", "markdown", "csv", "plain")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _int_at_least(lo):
    def conv(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
        if v < lo:
            raise argparse.ArgumentTypeError(f"must be >= {lo}, got {v}")
        return v
    return conv


def _format(text):
    text = text.lower()
    if text == "md":
        return "markdown"
    if text not in FORMATS:
        raise argparse.ArgumentTypeError(f"format must be one of {', '.join(FORMATS)}")
    return text


def _add_instance(p):
    p.add_argument("--dim", type=_int_at_least(1), required=True, metavar="N")
    p.add_argument("--deg", type=_int_at_least(3), required=True, metavar="D")


def _add_format(p, default="plain"):
    p.add_argument("--format", type=_format, default=default, metavar="F",
                   help=f"one of {', '.join(FORMATS)} (default {default})")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hypaut",
                     description="Orders of automorphisms of smooth hypersurfaces.")
    parser.add_argument("--version", action="version", version=f"hypaut {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("admissible", help="admissible primes and realizable orders")
    _add_instance(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--check", type=int, metavar="Q", help="decide whether Q is realizable")
    mode.add_argument("--list", action="store_true", help="list every admissible prime")
    mode.add_argument("--max", action="store_true", help="largest admissible prime")
    mode.add_argument("--bound", action="store_true", help="upper bounds for prime orders")
    mode.add_argument("--new", action="store_true",
                      help="a prime admissible in dimension n but not below")
    _add_format(p)

    p = sub.add_parser("table", help="regenerate table 1 or table 2")
    p.add_argument("--which", type=int, choices=(1, 2), required=True)
    p.add_argument("--rows", type=int, nargs="+", metavar="N", help="only these dimensions")
    _add_format(p, "markdown")

    p = sub.add_parser("klein", help="Klein form, its automorphism and extremal data")
    _add_instance(p)
    p.add_argument("--witness", type=int, metavar="P",
                   help="automorphism order to use (default: detected from the signature)")
    p.add_argument("--singularity", action="store_true",
                   help="also report the quotient singularity type")
    _add_format(p)

    p = sub.add_parser("jacobian", help="p.p.a.v. report for the intermediate Jacobian")
    _add_instance(p)
    p.add_argument("--stabilizer", type=int, metavar="K",
                   help="Galois element a -> a^K used for the permutation")
    _add_format(p)

    p = sub.add_parser("gorinov", help="the divisibility bound for |Aut(X)|")
    _add_instance(p)
    p.add_argument("--check-conjecture", action="store_true",
                   help="check that every prime factor is admissible")
    _add_format(p)

    p = sub.add_parser("witness", help="a smooth form with an automorphism of prime order P")
    _add_instance(p)
    p.add_argument("--prime", type=int, required=True, metavar="P")
    _add_format(p)

    p = sub.add_parser("factor", help="factor an integer")
    p.add_argument("value", type=int)
    _add_format(p)

    p = sub.add_parser("cyclotomic", help="the m-th cyclotomic polynomial")
    p.add_argument("m", type=_int_at_least(1))
    p.add_argument("--at", type=int, metavar="X", help="also evaluate at X")
    _add_format(p)
    return parser


def _render_report(obj: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(obj, indent=2) + "\n"
    flat = [(k, v if isinstance(v, (str, int)) or v is None else json.dumps(v))
            for k, v in obj.items()]
    if fmt == "markdown":
        rows = ["| field | value |", "|---|---|"]
        rows += [f"| {k} | {'' if v is None else v} |" for k, v in flat]
        return "\n".join(rows) + "\n"
    if fmt == "csv":
        import csv
        import io

        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["field", "value"])
        w.writerows(flat)
        return buf.getvalue()
    return "".join(f"{k}: {'-' if v is None else v}\n" for k, v in flat)


def _instance_fields(inst: ProblemInstance) -> dict:
    return {"n": inst.n, "d": inst.d, "interpretation": inst.interpretation.value}


def cmd_admissible(args) -> str:
    inst = ProblemInstance(args.dim, args.deg)
    out = _instance_fields(inst)
    if args.check is not None:
        out["mode"] = "check"
        out.update(verdict=is_realizable_order(inst, args.check).to_dict())
        if args.format == "plain":
            v = out["verdict"]
            text = f"{v['value']}: {v['verdict']}"
            if v["reason"]:
                text += f" ({v['reason']}" + (f", l={v['ell']}" if v["ell"] else "") + ")"
            return text + "\n" + _interp_note(inst)
    elif args.max:
        out["mode"] = "max"
        out["max_prime"] = max_admissible_prime(inst)
        if args.format == "plain":
            return f"{out['max_prime']}\n" + _interp_note(inst)
    elif args.bound:
        out["mode"] = "bound"
        out.update(prime_order_upper_bound(inst).to_dict())
    elif args.new:
        if inst.n < 3:
            raise DomainError("--new needs --dim >= 3")
        out["mode"] = "new"
        out["new_prime"] = new_admissible_prime(inst)
        out["primitive_primes"] = primitive_prime_divisors(inst)
    else:
        out["mode"] = "list"
        out["primes"] = admissible_primes(inst)
        if args.format == "plain":
            return ", ".join(map(str, out["primes"])) + "\n" + _interp_note(inst)
    return _render_report(out, args.format)


def _interp_note(inst: ProblemInstance) -> str:
    if inst.interpretation is Interpretation.LINEAR_ONLY:
        return f"interpretation: {inst.interpretation.value}\n"
    return ""


def cmd_table(args) -> str:
    if args.which == 1:
        dims = args.rows or range(3, 11)
        return render_table1(table1(dims), args.format)
    dims = args.rows or TABLE2_DIMS
    return render_table2(table2(dims, TABLE2_DEGREES), args.format)


def _klein_prime(inst: ProblemInstance, requested: int | None) -> int | None:
    if requested is not None:
        return requested
    found = primitive_prime_divisors(inst)
    return max(found) if found else None


def cmd_klein(args) -> str:
    inst = ProblemInstance(args.dim, args.deg)
    rep = extremal_report(inst)
    p = _klein_prime(inst, args.witness)
    out = _instance_fields(inst)
    out["extremal"] = rep.to_dict()
    out["p"] = p
    if p is None:
        out.update(form=None, signature=None, smooth=None)
    else:
        w = klein_form(inst.n, inst.d, p)
        out["form"] = str(w.form)
        out["signature"] = list(w.signature.sigma)
        out["smooth"] = is_smooth_standard(w)
    if args.singularity:
        if p is None:
            raise DomainError("no automorphism order available for the singularity analysis")
        t = quotient_singularity_type(inst, p)
        gor, defect = is_gorenstein(t)
        out["singularity"] = {"type": str(t), "p": t.p, "weights": list(t.weights),
                              "count": inst.nvars, "gorenstein": gor, "weight_sum_mod_p": defect}
    return _render_report(out, args.format)


def cmd_jacobian(args) -> str:
    inst = ProblemInstance(args.dim, args.deg)
    rep = ppav_full_report(inst, args.stabilizer)
    return _render_report(rep.to_dict(), args.format)


def cmd_gorinov(args) -> str:
    inst = ProblemInstance(args.dim, args.deg)
    out = _instance_fields(inst)
    if args.check_conjecture:
        report = check_gorinov_conjecture(inst)
        out.update(report.to_dict())
    else:
        out["bound"] = gorinov_bound(inst).to_dict()
    return _render_report(out, args.format)


def cmd_witness(args) -> str:
    inst = ProblemInstance(args.dim, args.deg)
    w = witness_for_prime(inst, args.prime)
    if args.format == "plain":
        return w.form.to_text()
    out = _instance_fields(inst)
    out.update(w.to_dict())
    out["smooth"] = is_smooth_standard(w)
    return _render_report(out, args.format)


def cmd_factor(args) -> str:
    f = factorize(args.value)
    out = {"value": f.value, "sign": f.sign,
           "factors": [[p, e] for p, e in f.factors],
           "certainty": [is_prime(p)[1].value for p in f.primes]}
    if args.format == "plain":
        body = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in f.factors) or "1"
        return ("-" if f.sign < 0 else "") + body + "\n"
    return _render_report(out, args.format)


def cmd_cyclotomic(args) -> str:
    poly = cyclotomic_poly(args.m)
    out = {"m": args.m, "coefficients": list(poly.coeffs), "polynomial": str(poly)}
    if args.at is not None:
        out["at"] = args.at
        out["value"] = eval_int(poly, args.at)
    return _render_report(out, args.format)


COMMANDS = {
    "admissible": cmd_admissible,
    "table": cmd_table,
    "klein": cmd_klein,
    "jacobian": cmd_jacobian,
    "gorinov": cmd_gorinov,
    "witness": cmd_witness,
    "factor": cmd_factor,
    "cyclotomic": cmd_cyclotomic,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    try:
        text = COMMANDS[args.command](args)
    except FactorizationIncomplete as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(json.dumps({"partial": {str(p): e for p, e in exc.partial.items()},
                          "cofactor": exc.cofactor}), file=sys.stderr)
        return EXIT_RESOURCE
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (HypautError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
