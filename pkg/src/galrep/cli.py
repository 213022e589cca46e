"""Command-line interface.

Exit codes: 0 for Isomorphic/congruent (and ordinary success), 1 for a
distinguishing prime or mismatching coefficient, 2 for errors and
Indeterminate verdicts.
"""
from __future__ import annotations

import argparse
import ast
import sys
from fractions import Fraction
from math import lcm

from . import bounds
from .arith import NotEllIntegral, embedding_make, prime_to_part
from .characters import CharacterError, DirichletCharacter, char_make, parse_character
from .distinguisher import (InsufficientPrecision, ValidationError, compare_1dim, compare_2dim,
                            sturm_compare)
from .eisenstein import EisensteinSpec, delta_qexp, eisenstein_qexp_t, reducible_attached_form
from .formats import (FormatError, dumps_qexp, loads_char, loads_qexp, loads_repr, read_text,
                      write_text)
from .qexp import DomainMismatch, op_pi, op_pi_p, op_theta, op_U, op_V, reduce_mod_lambda

EXIT_OK, EXIT_DISTINGUISHED, EXIT_ERROR = 0, 1, 2


class CliError(Exception):
    pass


def _emit(text: str, out: str | None):
    if out:
        write_text(out, text)
    else:
        sys.stdout.write(text)


def _character(text: str | None) -> DirichletCharacter:
    if text is None:
        return DirichletCharacter.trivial(1)
    return parse_character(text)


# ---------------------------------------------------------------------------
# bound

def cmd_bound(args) -> int:
    if args.kind == "kappa":
        report = bounds.kappa(args.N, args.ell)
        print(report)
        if args.check_identity:
            ok = bounds.kappa_index_identity_check(args.N, args.ell)
            print(f"index identity: {'OK' if ok else 'FAILED'}")
            return EXIT_OK if ok else EXIT_ERROR
    elif args.kind == "sturm":
        print(bounds.sturm_bound(args.k, args.N))
    elif args.kind == "kohnen":
        print(bounds.kohnen_bound(args.k1, args.k2, args.N, args.ell))
    elif args.kind == "index":
        print(f"index Gamma0({args.A}) cap Gamma1({args.B}): {bounds.index_gamma0_gamma1(args.A, args.B)}")
    elif args.kind == "onedim":
        res = bounds.onedim_bounds(args.N, args.ell, args.r, Fraction(args.epsilon))
        lo, hi = res.ankeny_form
        print(f"trivial: {res.trivial}")
        print(f"burgess exponent: {res.burgess_exponent}")
        print(f"ankeny (log ell N)^2 in [{lo!r}, {hi!r}]")
        print(f"implied constants: {res.implied_constants}")
    elif args.kind == "weights":
        lo, hi = bounds.weight_range(args.ell)
        print(f"weights: {lo}..{hi}" if args.ell > 2 else "weights: 2 or 4")
    return EXIT_OK


# ---------------------------------------------------------------------------
# series producers and operators

def cmd_eisenstein(args) -> int:
    psi = _character(None if args.trivial else args.psi)
    phi = _character(None if args.trivial else args.phi)
    if args.ell is not None:
        f = reducible_attached_form(psi, phi, args.theta, args.k, args.t, args.ell, args.B, N=args.N)
    else:
        f = eisenstein_qexp_t(EisensteinSpec(args.k, psi, phi, args.t, args.N), args.B)
    _emit(dumps_qexp(f), args.out)
    return EXIT_OK


def cmd_delta(args) -> int:
    _emit(dumps_qexp(delta_qexp(args.B)), args.out)
    return EXIT_OK


def _reduce_series(f, ell: int):
    m = lcm(1, *(prime_to_part(c.order, ell) for c in f.coeffs if hasattr(c, "order")))
    return reduce_mod_lambda(f, embedding_make(m, ell))


def cmd_op(args) -> int:
    f = loads_qexp(read_text(args.input))
    op = args.op
    if op == "V":
        g = op_V(f, args.d)
    elif op == "U":
        g = op_U(f, _need(args.p, "--p"))
    elif op == "pi_p":
        g = op_pi_p(f, _need(args.p, "--p"))
    elif op == "pi":
        g = op_pi(f)
    elif op == "theta":
        g = op_theta(f)
    else:
        g = _reduce_series(f, _need(args.ell, "--ell"))
    _emit(dumps_qexp(g), args.out)
    return EXIT_OK


def _need(value, flag: str):
    if value is None:
        raise CliError(f"{flag} is required for this operator")
    return value


# ---------------------------------------------------------------------------
# compare

def cmd_compare(args) -> int:
    left_text, right_text = read_text(args.left), read_text(args.right)
    if args.mode == "repr":
        verdict = compare_2dim(loads_repr(left_text), loads_repr(right_text), args.N, args.ell,
                               jobs=args.jobs)
    elif args.mode == "char":
        verdict = compare_1dim(loads_char(left_text), loads_char(right_text), args.N, args.ell)
    else:
        f, g = loads_qexp(left_text), loads_qexp(right_text)
        if args.ell is not None:
            f = f if f.domain == "finite" else _reduce_series(f, args.ell)
            g = g if g.domain == "finite" else _reduce_series(g, args.ell)
        verdict = sturm_compare(f, g)
    print(verdict)
    return verdict.exit_code


def cmd_charinfo(args) -> int:
    images = [tuple(x) for x in ast.literal_eval(args.images)]
    chi = char_make(args.modulus, images)
    print(f"character: {chi.serialize()}")
    print(f"conductor: {chi.conductor()}")
    print(f"parity: {chi.parity()}")
    print(f"order: {chi.value_order}")
    print(f"primitive part: {chi.primitive_part().serialize()}")
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="galrep", description="Distinguish mod-ell Galois representations.")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bound", help="kappa, Sturm, Kohnen, index and one-dimensional bounds")
    bsub = b.add_subparsers(dest="kind", required=True)
    p = bsub.add_parser("kappa")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--check-identity", action="store_true")
    p = bsub.add_parser("sturm")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p = bsub.add_parser("kohnen")
    p.add_argument("--k1", type=int, required=True)
    p.add_argument("--k2", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p = bsub.add_parser("index")
    p.add_argument("--A", type=int, required=True)
    p.add_argument("--B", type=int, default=1)
    p = bsub.add_parser("onedim")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--epsilon", default="0", help="rational, e.g. 1/100")
    p = bsub.add_parser("weights")
    p.add_argument("--ell", type=int, required=True)
    b.set_defaults(func=cmd_bound)

    e = sub.add_parser("eisenstein", help="write E_k^{psi,phi,t} (or its reduction) as a qexp file")
    e.add_argument("--k", type=int, required=True)
    e.add_argument("--trivial", action="store_true", help="psi = phi = trivial mod 1")
    e.add_argument("--psi", help="character, e.g. 'modulus=4 images=[(3,2,1)]'")
    e.add_argument("--phi", help="primitive character")
    e.add_argument("--t", type=int, default=1)
    e.add_argument("--N", type=int, default=None, help="ambient level (default t*u*v)")
    e.add_argument("--B", type=int, default=20, help="precision")
    e.add_argument("--ell", type=int, default=None, help="reduce (1/2)E modulo a prime above ell")
    e.add_argument("--theta", type=int, default=0, help="apply theta this many times (with --ell)")
    e.add_argument("--out", default=None)
    e.set_defaults(func=cmd_eisenstein)

    d = sub.add_parser("delta", help="write Delta as a qexp file")
    d.add_argument("--B", type=int, default=20)
    d.add_argument("--out", default=None)
    d.set_defaults(func=cmd_delta)

    o = sub.add_parser("op", help="apply an operator to a qexp file")
    o.add_argument("op", choices=["U", "V", "pi_p", "pi", "theta", "reduce"])
    o.add_argument("--p", type=int, default=None)
    o.add_argument("--d", type=int, default=1)
    o.add_argument("--ell", type=int, default=None)
    o.add_argument("--in", dest="input", required=True)
    o.add_argument("--out", default=None)
    o.set_defaults(func=cmd_op)

    c = sub.add_parser("compare", help="compare two representations, series or characters")
    c.add_argument("--left", required=True)
    c.add_argument("--right", required=True)
    c.add_argument("--N", type=int, default=1)
    c.add_argument("--ell", type=int, default=None)
    c.add_argument("--mode", choices=["repr", "series", "char"], default="repr")
    c.add_argument("--jobs", type=int, default=1)
    c.set_defaults(func=cmd_compare)

    ci = sub.add_parser("charinfo", help="conductor, parity and order of a character")
    ci.add_argument("--modulus", type=int, required=True)
    ci.add_argument("--images", default="[]", help="e.g. '[(2,1)]' or '[(3,2,1)]'")
    ci.set_defaults(func=cmd_charinfo)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "compare" and args.mode in ("repr", "char") and args.ell is None:
        print("error: --ell is required for this mode", file=sys.stderr)
        return EXIT_ERROR
    try:
        return args.func(args)
    except (CliError, FormatError, CharacterError, ValidationError, InsufficientPrecision,
            NotEllIntegral, DomainMismatch, ValueError, TypeError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
