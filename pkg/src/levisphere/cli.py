"""Command-line interface: ``levisphere {classify,expand,poset,witness,verify}``.

Every command writes deterministic output to stdout (JSON with sorted keys,
or DOT/CSV where asked).  Exit codes: 0 success, 1 a verification found a
disagreement, 2 usage or precondition error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .compositions import (
    BlockStructure,
    act,
    format_composition,
    format_split_partition,
    is_split_partition,
    parse_composition,
    parse_split_partition,
)
from .keypoly import key_polynomial
from .posets import build_orbit_poset, build_support_poset, to_dot, to_json
from .spherical import PreconditionError, classify, construct_witness, expansion_coefficient
from .splitschur import dschur_expand, is_multiplicity_free, is_split_symmetric
from .symgroup import Permutation, is_standard_coxeter, left_descents
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_USAGE = 2

MAX_UNFORCED_N = 7


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _parse_index_set(text: str, flag: str) -> tuple[int, ...]:
    text = text.strip().strip("{}")
    out = []
    for tok in text.replace(" ", ",").split(","):
        if not tok:
            continue
        try:
            out.append(int(tok))
        except ValueError:
            raise UsageError(f"{flag}: bad entry {tok!r}") from None
    return tuple(out)


def _parse_perm(text: str, flag: str) -> Permutation:
    try:
        return Permutation.parse(text)
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _parse_comp(text: str, flag: str, n: int | None = None) -> tuple[int, ...]:
    try:
        return parse_composition(text, n)
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _blocks(args, n: int) -> BlockStructure:
    try:
        if args.I is not None:
            return BlockStructure.from_I(_parse_index_set(args.I, "--I"), n)
        return BlockStructure.from_D(_parse_index_set(args.D, "--D"), n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _require_descents(w: Permutation, blocks: BlockStructure) -> None:
    J = left_descents(w)
    if not blocks.I <= J:
        raise UsageError(
            f"I = {sorted(blocks.I)} is not contained in J(w) = {sorted(J)} for w = {w}"
        )


def _partition(text: str, n: int) -> tuple[int, ...]:
    lam = _parse_comp(text, "--lambda", n)
    if any(a < b for a, b in zip(lam, lam[1:])):
        raise UsageError(f"--lambda: {format_composition(lam)} is not a partition")
    return lam


def _split_partition(text: str, blocks: BlockStructure) -> tuple[int, ...]:
    try:
        gamma = parse_split_partition(text, blocks)
    except ValueError as exc:
        raise UsageError(f"--gamma: {exc}") from None
    if len(gamma) != blocks.n or not is_split_partition(gamma, blocks):
        raise UsageError(f"--gamma: {text!r} is not a split partition for D = {list(blocks.D)}")
    return gamma


# -- commands ------------------------------------------------------------------


def cmd_classify(args) -> int:
    w = _parse_perm(args.w, "--w")
    blocks = _blocks(args, w.n)
    _require_descents(w, blocks)
    _emit(classify(w, blocks.I, bound=args.bound).to_json_obj())
    return EXIT_OK


def cmd_expand(args) -> int:
    w = _parse_perm(args.w, "--w")
    lam = _partition(args.lam, w.n)
    blocks = _blocks(args, w.n)
    _require_descents(w, blocks)
    alpha = act(w, lam)
    kappa = key_polynomial(alpha, engine=args.engine)
    if not is_split_symmetric(kappa, blocks):
        # cannot happen when I is inside J(w); report rather than expand garbage
        _emit({"alpha": format_composition(alpha), "error": "key polynomial is not symmetric in the blocks"})
        return EXIT_DISAGREE
    exp = dschur_expand(kappa, blocks)
    mult_free = is_multiplicity_free(exp)

    if args.coeff_of is not None:
        gamma = _split_partition(args.coeff_of, blocks)
        out = {"gamma": format_split_partition(gamma, blocks), "coeff": exp.coeff(gamma)}
        if args.mult_free:
            out["mult_free"] = mult_free
        _emit(out)
        return EXIT_OK
    if args.mult_free:
        _emit({"mult_free": mult_free})
        return EXIT_OK
    if args.format == "csv":
        sys.stdout.write("gamma,coeff\n")
        for row in exp.to_json_obj():
            sys.stdout.write(f"{row['gamma']},{row['coeff']}\n")
        return EXIT_OK
    _emit(
        {
            "w": str(w),
            "lambda": list(lam),
            "alpha": list(alpha),
            "D": list(blocks.D),
            "engine": args.engine,
            "terms": len(exp.coeffs),
            "max_coeff": exp.max_coeff(),
            "mult_free": mult_free,
            "expansion": exp.to_json_obj(),
        }
    )
    return EXIT_OK


def cmd_poset(args) -> int:
    if args.orbit:
        gamma_text = args.gamma
        n = len(parse_split_partition(gamma_text)) if "|" in gamma_text else len(_parse_comp(gamma_text, "--gamma"))
        blocks = _blocks(args, n)
        P = build_orbit_poset(_split_partition(gamma_text, blocks), blocks, nonnegative=args.nonnegative)
    else:
        if args.c is None or args.lam is None:
            raise UsageError("--c and --lambda are required unless --orbit is given")
        c = _parse_perm(args.c, "--c")
        if is_standard_coxeter(c, method="pattern") is None:
            raise UsageError(f"--c: {c} is not a product of distinct simple reflections")
        lam = _partition(args.lam, c.n)
        blocks = _blocks(args, c.n)
        gamma = _split_partition(args.gamma, blocks)
        P = build_support_poset(act(c, lam), gamma, blocks, engine=args.engine)
    if args.format == "dot":
        sys.stdout.write(to_dot(P))
    else:
        sys.stdout.write(to_json(P) + "\n")
    return EXIT_OK


def cmd_witness(args) -> int:
    w = _parse_perm(args.w, "--w")
    blocks = _blocks(args, w.n)
    _require_descents(w, blocks)
    try:
        r = construct_witness(w, blocks.I)
    except PreconditionError as exc:
        raise UsageError(str(exc)) from None
    except RuntimeError as exc:
        _emit({"w": str(w), "I": sorted(blocks.I), "error": str(exc)})
        return EXIT_DISAGREE
    # recompute from scratch before printing
    coeff = expansion_coefficient(w, r.lam, blocks, r.gamma)
    out = {"w": str(w), "I": sorted(blocks.I), "D": list(blocks.D), **r.to_json_obj(blocks), "verified_coeff": coeff}
    _emit(out)
    return EXIT_OK if coeff >= 2 else EXIT_DISAGREE


def cmd_verify(args) -> int:
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    if args.n > MAX_UNFORCED_N and not args.force:
        raise UsageError(f"--n {args.n} exceeds {MAX_UNFORCED_N}; pass --force to run anyway")
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    rep = run_suite(args.suite, args.n, args.bound, jobs=args.jobs, samples=args.samples, seed=args.seed)
    obj = rep.to_json_obj()
    if not args.timing:
        obj.pop("elapsed_ms", None)
    _emit(obj)
    return EXIT_OK if rep.ok else EXIT_DISAGREE


# -- parser --------------------------------------------------------------------------


def _add_levi(p: argparse.ArgumentParser, required: bool = True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--I", metavar="LIST", help='simple reflections of the Levi, e.g. "2,3,4" or ""')
    g.add_argument("--D", metavar="LIST", help='block ends d_1 < d_2 < ..., e.g. "1,7,8"')


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="levisphere", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="decide sphericality of (w, I) three ways")
    p.add_argument("--w", required=True, help="permutation in one-line notation")
    _add_levi(p)
    p.add_argument("--bound", type=int, default=3, help="largest part of the sampled partitions")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("expand", help="split-Schur expansion of a key polynomial")
    p.add_argument("--w", required=True)
    p.add_argument("--lambda", dest="lam", required=True, help="partition with n parts")
    _add_levi(p)
    p.add_argument("--engine", choices=("demazure", "kohnert"), default="demazure")
    p.add_argument("--coeff-of", metavar="GAMMA", help='print one coefficient, e.g. "9|765554|2|2"')
    p.add_argument("--mult-free", action="store_true", help="print the multiplicity-free flag")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("poset", help="export the t-move poset of a support or an orbit")
    p.add_argument("--c", help="standard Coxeter element")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--gamma", required=True, help="split partition")
    _add_levi(p)
    p.add_argument("--orbit", action="store_true", help="whole orbit of gamma instead of a support")
    p.add_argument("--nonnegative", action="store_true", help="with --orbit, drop vectors with a negative entry")
    p.add_argument("--engine", choices=("demazure", "kohnert"), default="demazure")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("witness", help="(lambda, gamma) with coefficient >= 2 for a non-spherical (w, I)")
    p.add_argument("--w", required=True)
    _add_levi(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bound", type=int, default=3)
    p.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--samples", type=int, default=200, help="instances for the randomised suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--force", action="store_true", help=f"allow n > {MAX_UNFORCED_N}")
    p.add_argument("--timing", action="store_true", help="include elapsed_ms (makes output nondeterministic)")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"levisphere {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
