"""Command-line front end.  Exit status: 0 success, 1 failed check, 2 usage error."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .algebra import FieldDesc, parse_polynomial
from .config import DEFAULT_CAP, DEFAULT_SLACK, Settings
from .errors import CarlitzError, DomainError, ParseError
from .gamma import carlitz_factorial, gamma_v, v_ord_factorial
from .localfield import Place, diff_valuation, make_place
from .periods import period_matrix, rho_row_gamma, rho_row_period
from .relations import is_algebraic, trdeg_gamma
from .verify import CATALOG, SuiteConfig, passes, run_suite, summarize

COMMANDS = ("factorial", "gamma", "periods", "csf", "trdeg", "algebraic", "verify")


@dataclass(frozen=True)
class CliConfig:
    p: int
    e: int
    v: str | None
    prec: int
    slack: int
    cap: int
    fmt: str
    seed: int

    @property
    def field(self) -> FieldDesc:
        return FieldDesc(self.p, self.e)

    def place(self) -> Place:
        if self.v is None:
            raise DomainError("this command needs --v")
        return make_place(parse_polynomial(self.v, self.field))


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    settings = Settings.from_env()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=2, help="characteristic")
    common.add_argument("--e", type=int, default=1, help="q = p^e")
    common.add_argument("--v", help='place, e.g. "x^2+x+1" (g^k tokens for prime-power q)')
    common.add_argument("--prec", type=int, default=settings.prec, help="series precision N")
    common.add_argument("--slack", type=int, default=DEFAULT_SLACK)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(prog="carlitz", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("factorial", parents=[common], help="Carlitz factorial Gamma_ari(n+1)")
    sp.add_argument("--n", type=int, required=True)

    sp = sub.add_parser("gamma", parents=[common], help="v-adic gamma value Gamma_{ari,v}(z)")
    sp.add_argument("--z", type=_rational, required=True)

    sp = sub.add_parser("periods", parents=[common], help="diagonal period matrix and Omega values")
    sp.add_argument("--ell", type=int, required=True)

    sp = sub.add_parser("csf", parents=[common], help="Frobenius coefficients by both routes")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--s", type=int, help="single row (default: all)")

    sp = sub.add_parser("trdeg", parents=[common], help="transcendence degree ell - gcd(ell, d)")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--ell", type=int, required=True)

    sp = sub.add_parser("algebraic", parents=[common], help="is Gamma_{ari,v}(z) algebraic")
    sp.add_argument("--z", type=_rational, required=True)
    sp.add_argument("--d", type=int, help="degree of v (or give --v)")

    sp = sub.add_parser("verify", parents=[common], help="run the identity suite")
    sp.add_argument("--ell", type=int, action="append", help="repeatable; default 1..4")
    sp.add_argument("--identity", action="append", choices=sorted(CATALOG))
    sp.add_argument("--d", type=int, action="append", help="degrees for default places")
    sp.add_argument("--samples", type=int, default=25, help="sampled z per grid point")
    return parser


def _config(args: argparse.Namespace) -> CliConfig:
    if args.prec < 1:
        raise DomainError("--prec must be positive")
    return CliConfig(args.p, args.e, args.v, args.prec, args.slack, args.cap, args.format, args.seed)


def _header(cfg: CliConfig, place: Place | None = None) -> list[str]:
    # only needed when elements print as coefficient vectors
    fd = cfg.field if place is None else place.residue
    if fd.degree == 1:
        return []
    lines = [f"# {fd.describe()}"]
    if place is not None:
        lines.append(f"# {place}")
    return lines


def _emit(cfg: CliConfig, text_lines: list[str], payload: Any) -> None:
    if cfg.fmt == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print("\n".join(text_lines))


def _cmd_factorial(args: argparse.Namespace, cfg: CliConfig) -> int:
    value = carlitz_factorial(args.n, cfg.field)
    payload: dict[str, Any] = {"n": args.n, "factorial": str(value)}
    lines = _header(cfg) + [str(value)]
    if cfg.v is not None:
        place = cfg.place()
        o = v_ord_factorial(args.n, place)
        payload["v"] = str(place.v)
        payload["ord_v"] = o
        lines.append(f"ord_v = {o}")
    _emit(cfg, lines, payload)
    return 0


def _cmd_gamma(args: argparse.Namespace, cfg: CliConfig) -> int:
    place = cfg.place()
    g = gamma_v(args.z, place, cfg.prec)
    payload = {
        "z": str(args.z),
        "v": str(place.v),
        "value": g.value.to_json(),
        "truncation_index": g.truncation_index,
        "stable": g.stable,
    }
    _emit(cfg, _header(cfg, place) + [g.value.render()], payload)
    return 0


def _cmd_periods(args: argparse.Namespace, cfg: CliConfig) -> int:
    place = cfg.place()
    pm = period_matrix(args.ell, place, cfg.prec)
    lines = _header(cfg, place)
    for s, x in enumerate(pm.diag):
        lines.append(f"Phi[{s}] = {x.render()}")
    for s, x in enumerate(pm.omega, start=1):
        lines.append(f"Omega[{s}] = {x.render()}")
    payload = {
        "ell": args.ell,
        "v": str(place.v),
        "diag": [x.to_json() for x in pm.diag],
        "omega": [x.to_json() for x in pm.omega],
    }
    _emit(cfg, lines, payload)
    return 0


def _cmd_csf(args: argparse.Namespace, cfg: CliConfig) -> int:
    place = cfg.place()
    rows = range(args.ell) if args.s is None else [args.s]
    lines = _header(cfg, place)
    payload = []
    status = 0
    for s in rows:
        a = rho_row_gamma(args.ell, s, place, cfg.prec)
        b = rho_row_period(args.ell, s, place, cfg.prec)
        dv = diff_valuation(a, b)
        ok = passes(dv, cfg.prec, cfg.slack)
        status |= 0 if ok else 1
        lines.append(f"s={s} {'PASS' if ok else 'FAIL'} diff_val={dv} c_s = {b.render()}")
        payload.append(
            {"s": s, "gamma": a.to_json(), "period": b.to_json(), "diff_valuation": dv, "pass": ok}
        )
    _emit(cfg, lines, payload)
    return status


def _cmd_trdeg(args: argparse.Namespace, cfg: CliConfig) -> int:
    value = trdeg_gamma(args.d, args.ell)
    _emit(cfg, [str(value)], {"d": args.d, "ell": args.ell, "trdeg": value})
    return 0


def _cmd_algebraic(args: argparse.Namespace, cfg: CliConfig) -> int:
    if args.d is not None:
        d = args.d
    elif cfg.v is not None:
        d = cfg.place().d
    else:
        raise DomainError("algebraic needs --d or --v")
    z: Fraction = args.z
    value = is_algebraic(z.numerator, z.denominator, d, cfg.field.q)
    _emit(cfg, ["true" if value else "false"], {"z": str(z), "d": d, "algebraic": value})
    return 0


def _cmd_verify(args: argparse.Namespace, cfg: CliConfig) -> int:
    config = SuiteConfig(
        fields=((cfg.p, cfg.e),),
        degrees=tuple(args.d or (1, 2)),
        ells=tuple(args.ell or (1, 2, 3, 4)),
        prec=cfg.prec,
        slack=cfg.slack,
        z_samples=args.samples,
        seed=cfg.seed,
        identities=tuple(args.identity or CATALOG),
        places=(cfg.v,) if cfg.v is not None else None,
    )
    reports = run_suite(config)
    ok, total = summarize(reports)
    lines = [r.line() for r in reports] + [f"{ok}/{total} passed"]
    _emit(cfg, lines, [r.to_json() for r in reports])
    return 0 if ok == total else 1


HANDLERS = {
    "factorial": _cmd_factorial,
    "gamma": _cmd_gamma,
    "periods": _cmd_periods,
    "csf": _cmd_csf,
    "trdeg": _cmd_trdeg,
    "algebraic": _cmd_algebraic,
    "verify": _cmd_verify,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        return HANDLERS[args.command](args, cfg)
    except CarlitzError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
