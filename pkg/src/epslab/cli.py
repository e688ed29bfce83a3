"""Command line interface.  Every command prints JSON; exit codes are 0 (pass),
1 (configuration or runtime error) and 2 (verification failure)."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import __version__, campaign, lfun, verify
from .campaign import EXIT_ERROR, EXIT_FAILED, EXIT_OK, Case
from .epsilon import AdditiveCharDescriptor, ResidueMultChar, TameLocalCharacter, gamma_factor, gamma_star, gauss_sum, tame_epsilon
from .errors import EpslabError
from .exactnum import CyclotomicNumber
from .localdata import TameExtensionDescriptor


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(verify.jsonable(obj), indent=2, sort_keys=True) + "\n")


def _fraction(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {s}") from exc


def _hodge(s: str) -> dict[int, int]:
    out = {}
    for part in filter(None, (x.strip() for x in s.split(","))):
        j, _, h = part.partition(":")
        out[int(j)] = int(h or 1)
    return out


def _add_descriptor(p: argparse.ArgumentParser, need_p: bool = True) -> None:
    p.add_argument("--p", type=int, required=need_p)
    p.add_argument("--eK", type=int, default=1)
    p.add_argument("--fK", type=int, default=1)
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--f", type=int, default=1)
    p.add_argument("--c", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="epslab", description=__doc__)
    ap.add_argument("--version", action="version", version=f"epslab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    ver = sub.add_parser("verify", help="run one verification case")
    vs = ver.add_subparsers(dest="kind", required=True)
    x = vs.add_parser("lemma80")
    _add_descriptor(x)
    x.add_argument("--u", type=_fraction, required=True)
    x.add_argument("--precision", type=int)
    x = vs.add_parser("snf")
    x.add_argument("--p", type=int, required=True)
    x.add_argument("--u", type=_fraction, required=True)
    x.add_argument("--f", type=int, required=True)
    x.add_argument("--fK", type=int, default=1)
    x.add_argument("--precision", type=int)
    x = vs.add_parser("nr-diagram")
    x.add_argument("--e", type=int, required=True)
    x.add_argument("--f", type=int, default=1)
    x.add_argument("--q", type=int, default=1)
    x.add_argument("--c", type=int, default=0)
    x.add_argument("--trials", type=int, default=100)
    x.add_argument("--seed", type=int, default=42)
    x = vs.add_parser("taylor-unit")
    x.add_argument("--p", type=int, required=True)
    x.add_argument("--e", type=int, required=True)
    x = vs.add_parser("hasse-davenport")
    x.add_argument("--q", type=int, required=True)
    x.add_argument("--f", type=int, required=True)
    x = vs.add_parser("le81")
    x.add_argument("--fK", type=int, required=True)
    x.add_argument("--p", type=int, default=5)
    x.add_argument("--u", type=_fraction, default=Fraction(2))
    x.add_argument("--f", type=int, default=2)
    x = vs.add_parser("conductor-induction")
    _add_descriptor(x)

    gs = sub.add_parser("gauss-sum", help="Gauss sum of a character of F_q^x")
    gs.add_argument("--q", type=int, required=True)
    gs.add_argument("--order", type=int, default=2, help="order of the character")
    gs.add_argument("--power", type=int, default=1, help="which character of that order")
    gs.add_argument("--c", type=int, default=1, help="additive twist, a nonzero element of F_q")

    te = sub.add_parser("tame-epsilon", help="epsilon factor of a tame character of K^x")
    te.add_argument("--p", type=int, required=True)
    te.add_argument("--eK", type=int, default=1)
    te.add_argument("--fK", type=int, default=1)
    te.add_argument("--order", type=int, default=1, help="order of the ramified part (1 = unramified)")
    te.add_argument("--power", type=int, default=1)
    te.add_argument("--pi-value", default="0", help="chi(pi_K) as a root of unity exp(2 pi i t), t rational")
    te.add_argument("--n", type=int, help="conductor exponent of psi (default: different exponent of K)")

    gm = sub.add_parser("gamma", help="Gamma*(j) or Gamma(V)")
    gm.add_argument("--j", type=int, action="append", default=[])
    gm.add_argument("--hodge", type=_hodge, help="comma separated j:h(j) pairs, e.g. --hodge=-1:1")

    lf = sub.add_parser("lfun", help="Dirichlet L-function checks")
    ls = lf.add_subparsers(dest="lcmd", required=True)
    fe = ls.add_parser("fe")
    fe.add_argument("--modulus", type=int, required=True)
    fe.add_argument("--s", action="append", required=True, help="complex point such as 0.5+0.5i")
    fe.add_argument("--bits", type=int, default=lfun.DEFAULT_BITS)
    fe.add_argument("--tol", type=float, default=1e-8)
    cn = ls.add_parser("class-number-qi")
    cn.add_argument("--bits", type=int, default=lfun.DEFAULT_BITS)

    rp = sub.add_parser("report", help="run a TOML campaign and write a JSON report")
    rp.add_argument("--config", help="TOML case list (default: the bundled acceptance suite)")
    rp.add_argument("--out", required=True)
    rp.add_argument("--jobs", type=int, default=1)
    rp.add_argument("--seed", type=int)
    rp.add_argument("--timings", action="store_true", help="include wall times (breaks byte-identical reports)")
    return ap


def _verify(args) -> int:
    kind = args.kind
    params = {k: v for k, v in vars(args).items() if k not in ("command", "kind") and v is not None}
    for k in ("u",):
        if k in params:
            params[k] = str(params[k])
    record = campaign.run_case(Case(kind, params), params.get("seed", 42))
    record.pop("wall_time", None)
    _emit(record)
    return {"pass": EXIT_OK, "fail": EXIT_FAILED}.get(record["status"], EXIT_ERROR)


def _gauss(args) -> int:
    chi = ResidueMultChar.of_order(args.q, args.order, args.power)
    g = gauss_sum(chi, args.c)
    z = g.embed_complex()
    _emit({"character": chi.to_json(), "c": args.c, "gauss_sum": g, "complex": [float(z.real), float(z.imag)]})
    return EXIT_OK


def _tame(args) -> int:
    d = TameExtensionDescriptor(args.p, args.eK, args.fK)
    t = Fraction(args.pi_value)
    w = CyclotomicNumber.zeta(t.denominator, t.numerator)
    rp = ResidueMultChar.of_order(d.q_K, args.order, args.power) if args.order > 1 else None
    chi = TameLocalCharacter(d, rp, w)
    psi = AdditiveCharDescriptor(args.n if args.n is not None else d.e_K - 1)
    eps = tame_epsilon(chi, psi)
    z = eps.embed_complex()
    _emit({"field": d.to_json(), "n_psi": psi.conductor_n, "epsilon": eps, "abs_squared": float(abs(z) ** 2)})
    return EXIT_OK


def _gamma(args) -> int:
    out = {"gamma_star": {str(j): str(gamma_star(j)) for j in args.j}}
    if args.hodge is not None:
        out["gamma_factor"] = str(gamma_factor(args.hodge))
    _emit(out)
    return EXIT_OK


def _lfun(args) -> int:
    if args.lcmd == "class-number-qi":
        rep = lfun.class_number_check_qi(args.bits)
        _emit(rep)
        return EXIT_OK if rep["pass"] else EXIT_FAILED
    rep = verify.run_lfun_fe(s_values=tuple(args.s), tol=args.tol, bits=args.bits, moduli=[args.modulus])
    _emit(rep)
    return EXIT_OK if rep["pass"] else EXIT_FAILED


def _report(args) -> int:
    config = campaign.load_config(args.config)
    report = campaign.run_campaign(config, jobs=max(1, args.jobs), seed=args.seed)
    text = report.dumps(timings=args.timings)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    summary = {
        "out": args.out,
        "cases": len(report.cases),
        "failed": [i for i, c in enumerate(report.cases) if c["status"] == "fail"],
        "errors": [{"index": i, "error": c["error"]} for i, c in enumerate(report.cases) if c["status"] == "error"],
        "exit_code": report.exit_code,
    }
    _emit(summary)
    return report.exit_code


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"verify": _verify, "gauss-sum": _gauss, "tame-epsilon": _tame, "gamma": _gamma, "lfun": _lfun, "report": _report}
    try:
        return handlers[args.command](args)
    except (EpslabError, ArithmeticError, ValueError, NotImplementedError, OSError) as exc:
        sys.stderr.write(f"epslab: error: {type(exc).__name__}: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
