"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 inconsistent result or
oracle disagreement, 3 size or group-order bound exceeded, 4 the
requested object does not exist (no sign matrix, more than two
eigenvalues).
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from fractions import Fraction

from .classify import analyse, classify, max_n_default
from .errors import BoundExceededError, GroupTooLargeError, XlineError
from .ffield import field_of_order
from .paley import PALEY_MATCH_MAX_N, paley_conference, switching_isomorphism
from .projgeom import enum_points, group_generators
from .seidel import SeidelMatrix, propagate, read_seidel, write_seidel
from .signedrep import (
    burnside_orbit_count,
    lift,
    orbits_on_signed_pairs,
    read_generators,
    write_generators,
)
from .spectral import (
    eigen_data,
    equiangular_params,
    gram,
    quadratic_roots,
    rational_minpoly,
    quadratic_minpoly,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INCONSISTENT = 2
EXIT_BOUND = 3
EXIT_ABSENT = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@contextmanager
def _open_out(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="\n") as fh:
            yield fh


def _parse_modulus(text):
    if text is None:
        return None
    try:
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise UsageError(f"bad --modulus {text!r}") from exc


def _group_spec(args):
    if args.family is None or args.d is None or args.q is None:
        raise UsageError("--family, --d and --q are required (or pass --gens FILE)")
    ctx = field_of_order(args.q, _parse_modulus(args.modulus))
    return group_generators(args.family, ctx, args.d)


def _signed_input(args):
    """``(label, n, generators)`` from --gens FILE or from a built-in family."""
    if getattr(args, "gens", None):
        with open(args.gens) as fh:
            n, gens = read_generators(fh)
        return args.gens, n, gens
    spec = _group_spec(args)
    n = (spec.ctx.q**spec.d - 1) // (spec.ctx.q - 1)
    max_n = args.max_n or max_n_default()
    if n > max_n:
        raise BoundExceededError(f"n = {n} exceeds the bound {max_n}")
    basis = enum_points(spec.ctx, spec.d)
    return spec.label, n, [lift(basis, M) for M in spec.generators]


def _emit_json(obj, dest):
    with _open_out(dest) as fh:
        fh.write(json.dumps(obj, indent=2) + "\n")


# -- commands -------------------------------------------------------------------


def _classify_case(family, d, q, modulus, seed_sign, max_n, paley):
    ctx = field_of_order(q, modulus)
    report = classify(group_generators(family, ctx, d), seed_sign, max_n, paley)
    return report.as_dict(), report.summary(), report.consistent


def _read_batch(path):
    cases = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) not in (3, 4):
                raise UsageError(f"{path}:{lineno}: expected 'family d q [modulus]'")
            fam, d, q = parts[0], int(parts[1]), int(parts[2])
            cases.append((fam, d, q, _parse_modulus(parts[3]) if len(parts) == 4 else None))
    return cases


def cmd_classify(args) -> int:
    max_n = args.max_n or max_n_default()
    if args.batch:
        cases = _read_batch(args.batch)
        jobs = [(f, d, q, m, args.seed_sign, max_n, args.paley_check) for f, d, q, m in cases]
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                results = list(pool.map(_classify_case, *zip(*jobs)))
        else:
            results = [_classify_case(*j) for j in jobs]
    elif args.gens:
        with open(args.gens) as fh:
            n, gens = read_generators(fh)
        rep = analyse(gens, n, args.gens, args.seed_sign, max_n)
        results = [(rep.as_dict(), rep.summary(), rep.consistent)]
    else:
        spec = _group_spec(args)
        rep = classify(spec, args.seed_sign, max_n, args.paley_check)
        results = [(rep.as_dict(), rep.summary(), rep.consistent)]

    if args.json is not None:
        payload = [r[0] for r in results] if args.batch else results[0][0]
        _emit_json(payload, args.json)
    if args.json != "-":
        print("\n\n".join(r[1] for r in results))
    return EXIT_OK if all(r[2] for r in results) else EXIT_INCONSISTENT


def cmd_seidel(args) -> int:
    label, n, gens = _signed_input(args)
    res = propagate(gens, n, args.seed_sign)
    if res.matrix is None:
        print(f"{label}: no invariant sign matrix exists", file=sys.stderr)
        print(f"certificate: {res.certificate}", file=sys.stderr)
        return EXIT_ABSENT
    with _open_out(args.out) as fh:
        write_seidel(res.matrix, fh)
    return EXIT_OK


def _read_matrix(path) -> SeidelMatrix:
    if path == "-":
        return read_seidel(sys.stdin)
    with open(path) as fh:
        return read_seidel(fh)


def cmd_spectrum(args) -> int:
    E = _read_matrix(args.file)
    mp = quadratic_minpoly(E)
    if mp is None:
        print("more than two eigenvalues", file=sys.stderr)
        return EXIT_ABSENT
    sp = eigen_data(mp[0], mp[1], E.n)
    dim, cos = equiangular_params(sp)
    if args.json is not None:
        out = sp.as_dict()
        out["cosine"] = cos.to_json()
        out["dimension"] = dim
        out["schema"] = 1
        _emit_json(out, args.json)
    if args.json != "-":
        print(f"n                {E.n}")
        print(f"beta, alpha      {sp.beta}, {sp.alpha}")
        print(f"lambda1          {sp.lambda1}  multiplicity {sp.m1}")
        print(f"lambda2          {sp.lambda2}  multiplicity {sp.m2}")
        print(f"equiangular      {E.n} lines in dimension {dim}, cosine {cos}")
    return EXIT_OK


def cmd_orbits(args) -> int:
    label, n, gens = _signed_input(args)
    if args.write_gens:
        with _open_out(args.write_gens) as fh:
            write_generators(gens, fh)
    rep = orbits_on_signed_pairs(gens, n)
    if args.json is not None:
        out = {"schema": 1, "group": label, "n": n, **rep.as_dict()}
        _emit_json(out, args.json)
    if args.json != "-" and args.write_gens != "-":
        print(f"group            {label}")
        print(f"n                {n}")
        print(f"orbits on X2     {rep.orbit_count_X2}")
        print(
            f"orbits on YxY    {rep.orbit_count_YxY} = {rep.orbit_count_delta} + "
            f"{rep.orbit_count_delta_prime} + {rep.orbit_count_nabla}"
        )
        print(f"transitive on Y  {rep.transitive_on_Y}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    label, n, gens = _signed_input(args)
    uf = orbits_on_signed_pairs(gens, n).orbit_count_YxY
    burnside = burnside_orbit_count(gens, n, args.max_group_order)
    agree = uf == burnside
    print(f"{label}: orbit count {uf} = Burnside {burnside}" if agree else
          f"{label}: orbit count {uf} != Burnside {burnside}")
    print("AGREE" if agree else "DISAGREE")
    return EXIT_OK if agree else EXIT_INCONSISTENT


def cmd_paley(args) -> int:
    C = paley_conference(field_of_order(args.q, _parse_modulus(args.modulus)))
    if args.compare:
        E = _read_matrix(args.compare)
        if E.n > PALEY_MATCH_MAX_N:
            raise BoundExceededError(f"matching is limited to n <= {PALEY_MATCH_MAX_N}")
        found = switching_isomorphism(E, C)
        print("MATCH" if found else "NO MATCH")
        if found:
            v, pi = found
            print(f"switch at vertex {v}, permutation {' '.join(map(str, pi))}")
        return EXIT_OK if found else EXIT_ABSENT
    with _open_out(args.out) as fh:
        write_seidel(C, fh)
    return EXIT_OK


def cmd_gram(args) -> int:
    try:
        omega, c = Fraction(args.omega), Fraction(args.c)
    except ValueError as exc:
        raise UsageError(f"bad rational: {exc}") from exc
    E = _read_matrix(args.file)
    mp = rational_minpoly(gram(omega, c, E))
    if mp is None:
        print("more than two eigenvalues", file=sys.stderr)
        return EXIT_ABSENT
    mu1, mu2 = quadratic_roots(*mp)
    print(f"S = {omega}*I + {c}*E,  S^2 = {mp[0]}*S + {mp[1]}*I")
    print(f"eigenvalues      {mu1}, {mu2}")
    base = quadratic_minpoly(E)
    if base is not None:
        l1, l2 = quadratic_roots(*base)
        shifted = sorted([omega + c * l1, omega + c * l2], reverse=True)
        ok = shifted == [mu1, mu2]
        print(f"affine image     {shifted[0]}, {shifted[1]}  {'AGREE' if ok else 'DISAGREE'}")
        if not ok:
            return EXIT_INCONSISTENT
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def _add_group_args(p, gens=True):
    p.add_argument("--family", help="sl, glplus or gl")
    p.add_argument("--d", type=int, help="dimension of the vector space")
    p.add_argument("--q", type=int, help="field order p^k, p odd")
    p.add_argument("--modulus", help="c0,c1,...,ck of the defining polynomial (monic)")
    p.add_argument("--max-n", type=int, default=None, help="bound on the number of lines")
    if gens:
        p.add_argument("--gens", help="signed generator file instead of a built-in family")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="xline", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="run the full decision pipeline")
    _add_group_args(p)
    p.add_argument("--seed-sign", type=int, choices=(1, -1), default=1)
    p.add_argument("--json", metavar="PATH", help="write the JSON report ('-' for stdout)")
    p.add_argument("--paley-check", action="store_true", help="compare with the Paley matrix")
    p.add_argument("--batch", metavar="FILE", help="one 'family d q [modulus]' per line")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for --batch")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("seidel", help="write the invariant sign matrix")
    _add_group_args(p)
    p.add_argument("--seed-sign", type=int, choices=(1, -1), default=1)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_seidel)

    p = sub.add_parser("spectrum", help="exact spectrum of a sign matrix file")
    p.add_argument("file")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("orbits", help="orbit counts on signed pairs")
    _add_group_args(p)
    p.add_argument("--json", metavar="PATH")
    p.add_argument("--write-gens", metavar="PATH", help="also write the signed generators")
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("oracle", help="compare orbit counting with the Burnside sum")
    _add_group_args(p)
    p.add_argument("--max-group-order", type=int, default=10**6)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("paley", help="write or compare with the Paley conference matrix")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--modulus")
    p.add_argument("--out", default="-")
    p.add_argument("--compare", metavar="FILE", help="switching-isomorphism test against FILE")
    p.set_defaults(func=cmd_paley)

    p = sub.add_parser("gram", help="spectrum of omega*I + c*E")
    p.add_argument("file")
    p.add_argument("--omega", required=True)
    p.add_argument("--c", required=True)
    p.set_defaults(func=cmd_gram)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BoundExceededError, GroupTooLargeError) as exc:
        print(f"xline: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (UsageError, XlineError, ValueError, OSError) as exc:
        print(f"xline: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())
