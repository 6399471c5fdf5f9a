"""Command-line front end. All integers in the JSON output are decimal strings.

    gmtorsion pell <m> [--power N]
    gmtorsion cf <m> [--convergents N]
    gmtorsion group <add|neg|mul|order> <m> <x,y,z>... [--k K]
    gmtorsion lambda <m> --limit B [--criterion direct|lemma32] [--witness] [--jobs N]
    gmtorsion class <m> [--number | --map x,y,z | --represents C]
    gmtorsion torsion certify <m> <x,y,z>
    gmtorsion scan <table|candidates> [--max-s S]

Exit status: 0 ok, 2 invalid input, 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass
from typing import Any, List, Optional

from . import classgroup, lambdasieve, pell, scan, triplegroup
from .errors import GmError, InvalidArgument, NotEligible
from .triplegroup import GroupContext, PrimitiveTriple

TIMEOUT_ENV = "GMTORSION_FACTOR_TIMEOUT_MS"
DEFAULT_TIMEOUT_MS = 10_000

EXIT_CODES = {"ok": 0, "error": 1, "invalid": 2}


@dataclass
class CommandResult:
    status: str
    payload: Any = None
    diagnostics: str = ""
    # JSON-lines output: payload is a list with one document per line.
    lines: bool = False

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def render(self) -> str:
        if self.payload is None:
            return ""
        docs = self.payload if self.lines else [self.payload]
        return "".join(json.dumps(d, separators=(",", ":")) + "\n" for d in docs)


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # Let "-1,4,9" through as a positional triple.
        self._negative_number_matcher = re.compile(r"^-\d[\d,]*$")

    def error(self, message):
        raise InvalidArgument(message)


def _int(text):
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _triple_json(t):
    return [str(v) for v in t]


def _form_json(f):
    return [str(v) for v in f]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gmtorsion", description="Pell subgroups and order-two torsion in G_m.")
    parser.add_argument("--timeout-factor-ms", type=_int, default=None,
                        help=f"factorization time budget (env {TIMEOUT_ENV})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pell", help="least solutions of X^2 - mY^2 = +-1")
    p.add_argument("m", type=_int)
    p.add_argument("--power", type=_int)

    p = sub.add_parser("cf", help="continued fraction of sqrt(m)")
    p.add_argument("m", type=_int)
    p.add_argument("--convergents", type=_int)

    p = sub.add_parser("group", help="arithmetic in G_m")
    p.add_argument("op", choices=("add", "neg", "mul", "order"))
    p.add_argument("m", type=_int)
    p.add_argument("triples", nargs="+")
    p.add_argument("--k", type=_int)

    p = sub.add_parser("lambda", help="enumerate Lambda_m primes")
    p.add_argument("m", type=_int)
    p.add_argument("--limit", type=_int, required=True)
    p.add_argument("--criterion", choices=("direct", "lemma32"), default="direct")
    p.add_argument("--witness", action="store_true")
    p.add_argument("--jobs", type=_int, default=1)

    p = sub.add_parser("class", help="class group of Q(sqrt(-m)) and the map f_m")
    p.add_argument("m", type=_int)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--number", action="store_true")
    g.add_argument("--map", metavar="x,y,z")
    g.add_argument("--represents", type=_int, metavar="C")

    p = sub.add_parser("torsion", help="order-two certificates in G_m / P_m")
    p.add_argument("action", choices=("certify",))
    p.add_argument("m", type=_int)
    p.add_argument("triple")

    p = sub.add_parser("scan", help="search sqrt(2) convergents for torsion examples")
    p.add_argument("what", choices=("table", "candidates"))
    p.add_argument("--max-s", type=_int, default=scan.DEFAULT_MAX_S)
    return parser


def _timeout_seconds(args) -> float:
    ms = args.timeout_factor_ms
    if ms is None:
        env = os.environ.get(TIMEOUT_ENV)
        try:
            ms = int(env) if env else DEFAULT_TIMEOUT_MS
        except ValueError:
            raise InvalidArgument(f"{TIMEOUT_ENV} must be an integer, got {env!r}") from None
    if ms <= 0:
        raise InvalidArgument("factorization timeout must be positive")
    return ms / 1000


def _parse_triple(ctx, text):
    return triplegroup.check(ctx, PrimitiveTriple.parse(text))


def _cmd_pell(args):
    if args.power is not None:
        if args.power < 1:
            raise InvalidArgument("--power must be >= 1")
        a, b = pell.pell_power(args.m, args.power)
        return {"n": str(args.power), "a": str(a), "b": str(b)}
    fund = pell.least_pell(args.m)
    neg = fund.negative_fundamental
    return {
        "a": str(fund.a),
        "b": str(fund.b),
        "negative": None if neg is None else {"a": str(neg[0]), "b": str(neg[1])},
    }


def _cmd_cf(args):
    cf = pell.cf_sqrt(args.m)
    doc = {"m": str(cf.m), "u0": str(cf.u0), "period": [str(u) for u in cf.period], "r": str(cf.r)}
    if args.convergents is not None:
        doc["convergents"] = [[str(c.h), str(c.k)] for c in pell.convergents(cf, args.convergents)]
    return doc


_GROUP_ARITY = {"add": 2, "neg": 1, "mul": 1, "order": 1}


def _cmd_group(args):
    if len(args.triples) != _GROUP_ARITY[args.op]:
        raise InvalidArgument(f"group {args.op} takes {_GROUP_ARITY[args.op]} triple(s)")
    ctx = GroupContext(args.m)
    ts = [_parse_triple(ctx, t) for t in args.triples]
    if args.op == "add":
        return {"triple": _triple_json(triplegroup.add(ctx, *ts))}
    if args.op == "neg":
        return {"triple": _triple_json(triplegroup.neg(ctx, ts[0]))}
    if args.op == "mul":
        if args.k is None:
            raise InvalidArgument("group mul needs --k")
        return {"triple": _triple_json(triplegroup.scalar_mul(ctx, args.k, ts[0]))}
    return {"order": str(triplegroup.order(ctx, ts[0]))}


def _verdict_json(v):
    return {
        "p": str(v.p),
        "inLambda": v.in_lambda,
        "legendreM": v.legendre_m,
        "legendreNegM": v.legendre_neg_m,
        "rho": None if v.rho is None else str(v.rho),
    }


def _witness_json(w):
    return {
        "triple": _triple_json(w.triple),
        "k": str(w.k),
        "delta": str(w.delta),
        "representation": None if w.representation is None else [str(v) for v in w.representation],
    }


def _cmd_lambda(args):
    ctx = GroupContext(args.m)
    if args.criterion == "direct":
        verdicts = lambdasieve.lambda_primes(ctx, args.limit, jobs=args.jobs)
        docs = [_verdict_json(v) for v in verdicts]
    else:
        docs = []
        for p in lambdasieve.lemma32_primes(ctx, args.limit):
            doc = _verdict_json(lambdasieve.in_lambda(ctx, p))
            doc["lemma32"] = True
            docs.append(doc)
    if args.witness:
        for doc in docs:
            doc["witness"] = _witness_json(lambdasieve.triple_from_prime(ctx, int(doc["p"])))
    return docs


def _cmd_class(args):
    if args.represents is not None:
        rep = classgroup.represents(args.represents, args.m)
        return {"c": str(args.represents), "representation": None if rep is None else [str(v) for v in rep]}
    ctx = GroupContext(args.m)
    if args.map is not None:
        t = _parse_triple(ctx, args.map)
        ideal = classgroup.ideal_from_triple(ctx, t)
        form = ideal.to_form()
        return {
            "triple": _triple_json(t),
            "ideal": {"n": str(ideal.n), "t": str(ideal.t), "s": str(ideal.s), "norm": str(ideal.norm)},
            "form": _form_json(form),
            "principal": classgroup.is_principal(form),
        }
    disc = classgroup.discriminant(args.m)
    forms = classgroup.reduced_forms(disc.D)
    doc = {"m": str(args.m), "D": str(disc.D), "h": str(len(forms))}
    if not args.number:
        doc["forms"] = [_form_json(f) for f in forms]
    return doc


def _cmd_torsion(args):
    ctx = GroupContext(args.m)
    t = _parse_triple(ctx, args.triple)
    return classgroup.certify_order_two(ctx, t).to_json()


def _candidate_json(cand, cert):
    return {
        "s": str(cand.s),
        "m": str(cand.m),
        "a": str(cand.a),
        "b": str(cand.b),
        "c": str(cand.c),
        "mGreaterC": cand.satisfies_m_gt_c,
        "certificate": None if cert is None else cert.to_json(),
    }


def _cmd_scan(args):
    timeout = _timeout_seconds(args)
    if args.max_s < 1:
        raise InvalidArgument("--max-s must be >= 1")
    if args.what == "table":
        rows = scan.reproduce_table(args.max_s, timeout=timeout)
        return [_candidate_json(r.candidate, r.certificate) for r in rows]
    docs = []
    for cand in scan.scan_candidates(args.max_s, timeout=timeout):
        try:
            cert = scan.certify_candidate(cand)
        except GmError:
            cert = None
        docs.append(_candidate_json(cand, cert))
    return docs


_COMMANDS = {
    "pell": (_cmd_pell, False),
    "cf": (_cmd_cf, False),
    "group": (_cmd_group, False),
    "lambda": (_cmd_lambda, True),
    "class": (_cmd_class, False),
    "torsion": (_cmd_torsion, False),
    "scan": (_cmd_scan, True),
}


def run(argv: Optional[List[str]] = None) -> CommandResult:
    try:
        args = build_parser().parse_args(argv)
        handler, lines = _COMMANDS[args.command]
        return CommandResult("ok", handler(args), lines=lines)
    except (InvalidArgument, NotEligible) as exc:
        return CommandResult("invalid", diagnostics=f"invalid: {exc}")
    except GmError as exc:
        return CommandResult("error", diagnostics=f"error: {type(exc).__name__}: {exc}")
    except Exception as exc:  # noqa: BLE001 - reported as an internal error
        return CommandResult("error", diagnostics=f"internal error: {type(exc).__name__}: {exc}")


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    result = run(argv)
    sys.stdout.write(result.render())
    if result.diagnostics:
        print(result.diagnostics, file=sys.stderr)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
