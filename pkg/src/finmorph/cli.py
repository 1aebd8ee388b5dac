"""Command-line front end.

Exit codes: 0 success, 1 mathematical rejection or failed verification,
2 input error, 3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import __version__, certfile, corpus, liealg
from .certifier import (
    NotFinite,
    NotHomogeneous,
    SquareSystem,
    check_origin_only_zero,
    fiber_dimension,
    finiteness_certificate,
    rewrite_monomial,
    verify_certificate,
)
from .expr import ParseError, format_polynomial, format_system, parse_polynomial, read_system
from .groebner import DEFAULT_BUDGET, MonomialOrder, ResourceBudgetExceeded
from .polyring import Polynomial, Ring

EXIT_OK, EXIT_REJECTED, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
DEFAULT_SEED = 0


class InputError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def _load_square(path: str) -> SquareSystem:
    try:
        sf = read_system(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None
    if len(sf.polys) != sf.ring.nvars:
        raise InputError(
            f"{path}: {len(sf.polys)} polynomials in {sf.ring.nvars} variables; a square system is required"
        )
    try:
        return SquareSystem(sf.ring, sf.polys)
    except (NotHomogeneous, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _parse_scalars(text: str) -> list[Fraction]:
    parts = [p for p in re.split(r"[\s,]+", text.strip()) if p]
    try:
        return [Fraction(p) for p in parts]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot read {text!r} as a list of rationals") from None


def _parse_monomial(text: str, ring: Ring) -> tuple[int, ...]:
    if re.fullmatch(r"\s*\d+(\s*,\s*\d+)*\s*", text):
        exps = tuple(int(p) for p in text.split(","))
        if len(exps) != ring.nvars:
            raise InputError(f"monomial {text!r} needs {ring.nvars} exponents")
        return exps
    try:
        p = parse_polynomial(text, ring)
    except ParseError as exc:
        raise InputError(f"monomial: {exc}") from None
    if len(p) != 1 or next(iter(p))[1] != 1:
        raise InputError(f"{text!r} is not a monomial with coefficient 1")
    return next(iter(p))[0]


def _order(args) -> MonomialOrder:
    return MonomialOrder(args.order)


# -- subcommands ----------------------------------------------------------------


def cmd_check(args) -> int:
    system = _load_square(args.system)
    verdict = check_origin_only_zero(system, _order(args), args.budget)
    if verdict.eligible:
        print(f"system: {system}")
        print("origin-only zero fiber: yes (every chart ideal is the unit ideal)")
        return EXIT_OK
    names = system.ring.chart_names(verdict.chart)
    basis = ", ".join(format_polynomial(g, names) for g in verdict.witness.basis)
    print(f"system: {system}")
    print("origin-only zero fiber: no")
    print(f"witness chart: {verdict.chart} ({system.ring.names[verdict.chart - 1]} = 1)")
    print(f"chart variables: {', '.join(names)}")
    print(f"reduced basis: {{{basis}}}")
    return EXIT_REJECTED


def cmd_certify(args) -> int:
    system = _load_square(args.system)
    try:
        cert = finiteness_certificate(system, _order(args), args.budget)
    except NotFinite as exc:
        print(f"not finite: chart {exc.verdict.chart} ideal is proper; no certificate written")
        return EXIT_REJECTED
    text = certfile.dump_certificate(system, cert)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"certificate written to {args.out} (c = {cert.c}, |S| = {len(cert.generator_set)})")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _load_cert(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return certfile.load_certificate(text)
    except certfile.CertificateFormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_verify(args) -> int:
    system = _load_square(args.system)
    cert, doc = _load_cert(args.certificate)
    expected = certfile.system_hash(system.ring, system.polys)
    if doc.get("system_hash") != expected:
        print(f"FAIL: certificate is bound to {doc.get('system_hash')}, system hashes to {expected}")
        return EXIT_REJECTED
    if doc.get("degrees") != list(system.degrees):
        print("FAIL: recorded degrees do not match the system")
        return EXIT_REJECTED
    if not verify_certificate(system, cert):
        print("FAIL: certificate identities or degree bounds do not hold")
        return EXIT_REJECTED
    print(f"OK: X_k^{cert.c} lies in the ideal with controlled cofactors for every k")
    return EXIT_OK


def cmd_rewrite(args) -> int:
    system = _load_square(args.system)
    cert, doc = _load_cert(args.certificate)
    if doc.get("system_hash") != certfile.system_hash(system.ring, system.polys) \
            or not verify_certificate(system, cert):
        print("FAIL: certificate does not verify against this system")
        return EXIT_REJECTED
    alpha = _parse_monomial(args.monomial, system.ring)
    result = rewrite_monomial(system, cert, alpha, check=False)
    p_names = tuple(f"p{i + 1}" for i in range(system.n))
    target = format_polynomial(Polynomial.monomial(alpha), system.ring)
    print(f"{target} = sum over S of a_s(P) * s  (c = {cert.c})")
    for s, coeff in sorted(result.terms.items(), key=lambda t: t[0]):
        print(f"  s = {format_polynomial(Polynomial.monomial(s), system.ring)}: "
              f"a_s = {format_polynomial(coeff, p_names)}")
    ok = result.check(system)
    print(f"substitution check: {'ok' if ok else 'FAILED'}")
    return EXIT_OK if ok else EXIT_REJECTED


def cmd_fiber(args) -> int:
    system = _load_square(args.system)
    target = _parse_scalars(args.target)
    if len(target) != system.n:
        raise InputError(f"target needs {system.n} coordinates")
    length = fiber_dimension(system, target, _order(args), args.budget)
    if isinstance(length, int):
        print(f"length {length}")
    else:
        print("POSITIVE_DIMENSIONAL")
    return EXIT_OK


def cmd_corpus(args) -> int:
    if args.name == "random":
        try:
            degrees = tuple(int(d) for d in args.degrees.split(","))
            s = corpus.random_system(args.n, degrees, args.seed)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        text = format_system(s.ring, s.polys, comment=f"random_system({args.n}, {degrees}, seed={args.seed})")
        return _emit(text, args.out)
    entries = corpus.all_entries()
    if args.name is None:
        if args.out:
            out = Path(args.out)
            out.mkdir(parents=True, exist_ok=True)
            for e in entries:
                (out / f"{e.name}.sys").write_text(_entry_text(e), encoding="utf-8")
            print(f"wrote {len(entries)} systems to {out}")
        else:
            for e in entries:
                print(f"{e.name:22s} {e.expected:22s} {e.note}")
        return EXIT_OK
    try:
        entry = corpus.get_entry(args.name)
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    return _emit(_entry_text(entry), args.out)


def _entry_text(e: corpus.CorpusEntry) -> str:
    return format_system(e.ring, e.polys, comment=f"{e.name}: {e.expected}; {e.note}")


def _emit(text: str, out: Optional[str]) -> int:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _algebra(name: str) -> liealg.LieAlgebraSpec:
    try:
        return liealg.algebra(name)
    except liealg.UnknownAlgebra as exc:
        raise InputError(exc.args[0]) from None


def cmd_nilpotent(args) -> int:
    g = _algebra(args.algebra)
    x = _parse_scalars(args.element)
    if len(x) != g.dim:
        raise InputError(f"{g.name} elements have {g.dim} coordinates ({', '.join(g.labels)})")
    route_a, route_b = liealg.nilpotency_routes(g, x)
    print(f"route A (ad(x)^{g.dim} = 0): {'yes' if route_a else 'no'}")
    print(f"route B (Tr ad(x)^k = 0, k <= {g.dim}): {'yes' if route_b else 'no'}")
    if route_a != route_b:
        print("routes DISAGREE")
        return EXIT_REJECTED
    print(f"nilpotent: {'yes' if route_a else 'no'} (routes agree)")
    return EXIT_OK


def cmd_liealg_audit(args) -> int:
    g = _algebra(args.algebra)
    results = liealg.audit_algebra(g, seed=args.seed, samples=args.samples)
    for name, ok in results:
        print(f"{'PASS' if ok else 'FAIL'}  {name}")
    return EXIT_OK if all(ok for _, ok in results) else EXIT_REJECTED


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finmorph",
        description="Decide and certify finiteness of homogeneous polynomial maps.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    engine = argparse.ArgumentParser(add_help=False)
    engine.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    engine.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help=f"maximum reduction steps per Groebner run (default {DEFAULT_BUDGET})")

    p = sub.add_parser("check", parents=[engine], help="is the zero fiber just the origin?")
    p.add_argument("system")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("certify", parents=[engine], help="emit a finiteness certificate")
    p.add_argument("system")
    p.add_argument("--out", help="certificate path (default: stdout)")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("verify", help="independently verify a certificate")
    p.add_argument("system")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rewrite", help="express a monomial over the generator set")
    p.add_argument("system")
    p.add_argument("certificate")
    p.add_argument("monomial", help="e.g. 'x^3*y' or '3,1'")
    p.set_defaults(func=cmd_rewrite)

    p = sub.add_parser("fiber", parents=[engine], help="length of the fiber over a target")
    p.add_argument("system")
    p.add_argument("target", help="comma-separated rationals, e.g. '1,-6'")
    p.set_defaults(func=cmd_fiber)

    p = sub.add_parser("corpus", help="list or emit corpus systems")
    p.add_argument("name", nargs="?", help="entry name, or 'random'")
    p.add_argument("--out", help="output file (or directory when emitting every entry)")
    p.add_argument("--n", type=int, default=2, help="variables for 'random'")
    p.add_argument("--degrees", default="2,2", help="degrees for 'random'")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("nilpotent", help="test an element of a shipped Lie algebra")
    p.add_argument("algebra", help=", ".join(liealg.SHIPPED))
    p.add_argument("element", help="coordinates, e.g. '0,1,0' for e in sl2")
    p.set_defaults(func=cmd_nilpotent)

    p = sub.add_parser("liealg-audit", help="structural checks for a shipped Lie algebra")
    p.add_argument("algebra", help=", ".join(liealg.SHIPPED))
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(func=cmd_liealg_audit)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        _err(str(exc))
        return EXIT_INPUT
    except ResourceBudgetExceeded as exc:
        _err(str(exc))
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
