"""Command-line interface: ``biclosed <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 invalid input or config,
3 rank too large, 4 not biclosed, 5 not associative, 6 associativity oracles
disagree, 7 order isomorphism or lattice check failed.  Errors are written to
stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys

from . import __version__
from .bijection import (
    associative_via_biclosed, biclosed_to_semigroup, classify, semigroup_to_biclosed,
)
from .enumeration import (
    BRUTE_FORCE_LIMIT, FORCED_LIMIT, csv_rows, enum_biclosed_bruteforce,
    enum_biclosed_classified, enum_biclosed_from_semigroups, enum_semigroups, report,
)
from .errors import (
    CrossCheckFailure, LatticeViolation, NotAssociative, NotBiclosed, RankTooLarge,
)
from .permutation import Permutation, parse_permutation
from .root_system import (
    RootSet, act_set, format_roots, is_biclosed, is_positive_system, stabilizer,
)
from .semigroup import (
    PreorderDecomposition, QuasitrivialOp, act_op, associativity_witness, is_associative,
    to_preorder,
)

EXIT_VERIFY, EXIT_CONFIG, EXIT_RANK = 1, 2, 3
EXIT_NOT_BICLOSED, EXIT_NOT_ASSOCIATIVE, EXIT_DISAGREE, EXIT_ORDER = 4, 5, 6, 7


class CommandError(Exception):
    def __init__(self, code: int, kind: str, message: str, **extra):
        super().__init__(message)
        self.code, self.kind, self.extra = code, kind, extra


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CommandError(EXIT_CONFIG, "InvalidConfig", message)


def _dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False)


def _check_rank(n: int, force: bool) -> None:
    if n < 0:
        raise CommandError(EXIT_CONFIG, "InvalidConfig", "rank must be non-negative")
    limit = FORCED_LIMIT if force else BRUTE_FORCE_LIMIT
    if n > limit:
        raise RankTooLarge(f"rank {n} exceeds the limit {limit}"
                           + ("" if force else " (use --force-large for n=5)"))


def _read_input(args) -> dict:
    if args.json is not None:
        text = args.json
    elif args.input == "-":
        text = sys.stdin.read()
    elif args.input:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    else:
        raise CommandError(EXIT_CONFIG, "InvalidConfig", "give --input PATH or --json TEXT")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CommandError(EXIT_CONFIG, "InvalidInput", f"malformed JSON: {exc}") from exc


def _parse_object(obj: dict):
    """A RootSet, a QuasitrivialOp or a PreorderDecomposition, by its keys."""
    try:
        if "roots" in obj:
            return RootSet.from_json(obj)
        if "table" in obj:
            return QuasitrivialOp.from_json(obj)
        if "blocks" in obj:
            return PreorderDecomposition.from_json(obj)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, (NotAssociative, NotBiclosed)):
            raise
        raise CommandError(EXIT_CONFIG, "InvalidInput", str(exc)) from exc
    raise CommandError(EXIT_CONFIG, "InvalidInput",
                       'expected an object with "roots", "table" or "blocks"')


def _sidecars(C: RootSet, F: QuasitrivialOp) -> dict:
    P = to_preorder(F)
    form = classify(C)
    return {"preorder": P.to_json(), "structure": str(P),
            "canonical": form.to_json(), "canonical_string": str(form)}


def cmd_enumerate(args, out):
    if args.report:
        n = args.n if args.n is not None else (args.m - 1 if args.m else None)
        if n is None:
            raise CommandError(EXIT_CONFIG, "InvalidConfig", "--report needs --n or --m")
        _check_rank(n, args.force_large)
        out.write(_dumps(report(n, force=args.force_large, jobs=args.jobs).to_json()) + "\n")
        return 0
    if args.object == "semigroup":
        m = args.m if args.m is not None else (args.n + 1 if args.n is not None else None)
        if m is None:
            raise CommandError(EXIT_CONFIG, "InvalidConfig", "give --m (or --n) for semigroups")
        if m < 1:
            raise CommandError(EXIT_CONFIG, "InvalidConfig", "m must be at least 1")
        _check_rank(m - 1, args.force_large)
        items = [F.to_json() for F in enum_semigroups(m)]
        n = m - 1
    else:
        n = args.n if args.n is not None else (args.m - 1 if args.m is not None else None)
        if n is None:
            raise CommandError(EXIT_CONFIG, "InvalidConfig", "give --n (or --m) for biclosed sets")
        _check_rank(n, args.force_large)
        if args.method == "bruteforce":
            sets = enum_biclosed_bruteforce(n, force=args.force_large, jobs=args.jobs)
        elif args.method == "classified":
            sets = enum_biclosed_classified(n)
        else:
            sets = enum_biclosed_from_semigroups(n)
        items = [C.to_json() for C in sets]

    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["Biclosed set", "Quasitrivial semigroup structure"])
        writer.writerows(csv_rows(n))
        out.write(buf.getvalue())
    elif args.format == "json":
        out.write(_dumps(items) + "\n")
    elif args.format == "jsonl":
        for item in items:
            out.write(_dumps(item) + "\n")
    else:
        raise CommandError(EXIT_CONFIG, "InvalidConfig", f"format {args.format} not valid here")
    return 0


def cmd_convert(args, out):
    obj = _parse_object(_read_input(args))
    if isinstance(obj, PreorderDecomposition):
        from .semigroup import from_preorder
        obj = from_preorder(obj)
    if isinstance(obj, RootSet):
        F = biclosed_to_semigroup(obj)
        result = {"input": "biclosed", "semigroup": F.to_json(), **_sidecars(obj, F)}
    else:
        C = semigroup_to_biclosed(obj)
        result = {"input": "semigroup", "biclosed": C.to_json(),
                  "roots": format_roots(C), **_sidecars(C, obj)}
    out.write(_dumps(result) + "\n")
    return 0


def cmd_check(args, out):
    obj = _parse_object(_read_input(args))
    if not isinstance(obj, QuasitrivialOp):
        raise CommandError(EXIT_CONFIG, "InvalidInput", "check expects an operation table")
    result = {"m": obj.m}
    if args.via in ("direct", "both"):
        result["direct"] = is_associative(obj)
        witness = associativity_witness(obj)
        if witness:
            result["witness"] = list(witness)
    if args.via in ("biclosed", "both"):
        result["via_biclosed"] = associative_via_biclosed(obj)
    verdicts = {v for k, v in result.items() if k in ("direct", "via_biclosed")}
    if len(verdicts) != 1:
        result["agree"] = False
        out.write(_dumps(result) + "\n")
        raise CommandError(EXIT_DISAGREE, "OracleDisagreement",
                           "direct and biclosed associativity verdicts differ", result=result)
    result["associative"] = verdicts.pop()
    if args.via == "both":
        result["agree"] = True
    out.write(_dumps(result) + "\n")
    return 0


def cmd_classify(args, out):
    obj = _parse_object(_read_input(args))
    if not isinstance(obj, RootSet):
        raise CommandError(EXIT_CONFIG, "InvalidInput", "classify expects a root set")
    form = classify(obj)
    result = {"canonical": form.to_json(), "canonical_string": str(form),
              "roots": format_roots(obj), "positive_system": is_positive_system(obj),
              "parabolic": not form.delta1, "horocyclic": not form.delta2}
    if args.stabilizer:
        result["stabilizer"] = [str(w) for w in stabilizer(obj)]
    out.write(_dumps(result) + "\n")
    return 0


def _equivariance_holds(sigma: Permutation, obj) -> bool:
    if isinstance(obj, RootSet):
        return act_op(sigma, biclosed_to_semigroup(obj)) == biclosed_to_semigroup(act_set(sigma, obj))
    return semigroup_to_biclosed(act_op(sigma, obj)) == act_set(sigma, semigroup_to_biclosed(obj))


def cmd_act(args, out):
    if args.random:
        if args.n is None:
            raise CommandError(EXIT_CONFIG, "InvalidConfig", "--random needs --n")
        _check_rank(args.n, args.force_large)
        rng = random.Random(args.seed)
        sets = enum_biclosed_classified(args.n)
        results = []
        for _ in range(args.random):
            C = rng.choice(sets)
            sigma = Permutation(tuple(rng.sample(range(1, args.n + 2), args.n + 1)))
            results.append({"perm": sigma.to_json(), "input": C.to_json(),
                            "equivariant": _equivariance_holds(sigma, C)})
        ok = all(r["equivariant"] for r in results)
        out.write(_dumps({"checks": results, "pass": ok}) + "\n")
        if not ok:
            raise CommandError(EXIT_DISAGREE, "EquivarianceFailure", "equivariance failed")
        return 0

    obj = _parse_object(_read_input(args))
    if isinstance(obj, PreorderDecomposition):
        from .semigroup import from_preorder
        obj = from_preorder(obj)
    if args.perm is None:
        raise CommandError(EXIT_CONFIG, "InvalidConfig", "act needs --perm")
    m = obj.m
    try:
        sigma = parse_permutation(args.perm, m)
    except ValueError as exc:
        raise CommandError(EXIT_CONFIG, "MalformedPermutation", str(exc)) from exc
    if isinstance(obj, RootSet):
        image = act_set(sigma, obj)
        result = {"perm": sigma.to_json(), "result": image.to_json(), "roots": format_roots(image)}
    else:
        image = act_op(sigma, obj)
        result = {"perm": sigma.to_json(), "result": image.to_json()}
    if args.verify_equivariance:
        if isinstance(obj, RootSet) and not is_biclosed(obj):
            from .root_system import require_biclosed
            require_biclosed(obj)
        ok = _equivariance_holds(sigma, obj)
        result["equivariant"] = ok
        if not ok:
            out.write(_dumps(result) + "\n")
            raise CommandError(EXIT_DISAGREE, "EquivarianceFailure", "equivariance failed")
    out.write(_dumps(result) + "\n")
    return 0


def cmd_poset(args, out):
    from .checks import check_lattice, check_order_isomorphism
    from .order import Poset, leq_op, leq_set, to_dot
    _check_rank(args.n, args.force_large)
    sets = enum_biclosed_bruteforce(args.n, force=args.force_large, jobs=args.jobs)
    if args.check_isomorphism or args.check_lattice:
        results = []
        if args.check_isomorphism:
            results.append(check_order_isomorphism((args.n,)))
        if args.check_lattice:
            results.append(check_lattice((args.n,)))
        out.write(_dumps({"n": args.n, "checks": [r.to_json() for r in results]}) + "\n")
        failed = [r.name for r in results if not r.passed]
        if failed:
            raise CommandError(EXIT_ORDER, "OrderCheckFailure", f"{failed[0]} failed")
        return 0
    labels = []
    for C in sets:
        F = biclosed_to_semigroup(C)
        labels.append(f"{classify(C)}\n{to_preorder(F)}")
    if args.object == "semigroup":
        poset = Poset([biclosed_to_semigroup(C) for C in sets], leq_op)
    else:
        poset = Poset(sets, leq_set)
    out.write(to_dot(poset, labels, name=f"A{args.n}"))
    return 0


def cmd_verify(args, out):
    from .checks import run_all
    if args.n > 3 and not (args.n == 4 and args.force_large):
        raise RankTooLarge(f"verify supports n <= 3 (n = 4 with --force-large), got {args.n}")
    if args.n < 1:
        raise CommandError(EXIT_CONFIG, "InvalidConfig", "verify needs n >= 1")
    results = run_all(args.n)
    out.write(_dumps({"n": args.n, "pass": all(r.passed for r in results),
                      "criteria": [r.to_json() for r in results]}) + "\n")
    failed = [r.name for r in results if not r.passed]
    if failed:
        raise CommandError(EXIT_VERIFY, "VerificationFailure", f"criterion {failed[0]} failed",
                           failed=failed)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="biclosed", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = _Parser(add_help=False)
    common.add_argument("--output", help="write to this file instead of stdout")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for brute force")
    common.add_argument("--force-large", action="store_true", help="allow rank 5 brute force")
    inputs = _Parser(add_help=False)
    inputs.add_argument("--input", help="JSON file ('-' for stdin)")
    inputs.add_argument("--json", help="inline JSON object")

    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate", parents=[common], help="list biclosed sets or semigroups")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--object", choices=["biclosed", "semigroup"], default="biclosed")
    p.add_argument("--method", choices=["bruteforce", "classified", "semigroup"], default="bruteforce")
    p.add_argument("--format", choices=["jsonl", "json", "csv"], default="jsonl")
    p.add_argument("--report", action="store_true", help="cross-checked counts and tallies")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("convert", parents=[common, inputs], help="apply the bijection")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("check", parents=[common, inputs], help="test associativity")
    p.add_argument("--via", choices=["direct", "biclosed", "both"], default="both")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", parents=[common, inputs], help="canonical form of a biclosed set")
    p.add_argument("--stabilizer", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("act", parents=[common, inputs], help="apply a permutation")
    p.add_argument("--perm", help='cycles "(1,2)(3,4)" or images "[2,1,3,4]"')
    p.add_argument("--verify-equivariance", action="store_true")
    p.add_argument("--random", type=int, default=0, help="check this many random instances")
    p.add_argument("--n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_act)

    p = sub.add_parser("poset", parents=[common], help="Hasse diagram and order checks")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--object", choices=["biclosed", "semigroup"], default="biclosed")
    p.add_argument("--check-isomorphism", action="store_true")
    p.add_argument("--check-lattice", action="store_true")
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("verify", parents=[common], help="run every acceptance criterion")
    p.add_argument("--n", type=int, default=3)
    p.set_defaults(func=cmd_verify)
    return parser


def _error(code: int, kind: str, message: str, **extra) -> int:
    sys.stderr.write(_dumps({"error": kind, "message": message, **extra}) + "\n")
    return code


def main(argv=None) -> int:
    out = None
    try:
        args = build_parser().parse_args(argv)
        buf = io.StringIO()
        try:
            code = args.func(args, buf)
        finally:
            text = buf.getvalue()
            if args.output:
                with open(args.output, "w", encoding="utf-8") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
        return code
    except CommandError as exc:
        return _error(exc.code, exc.kind, str(exc), **exc.extra)
    except RankTooLarge as exc:
        return _error(EXIT_RANK, "RankTooLarge", str(exc))
    except NotBiclosed as exc:
        return _error(EXIT_NOT_BICLOSED, "NotBiclosed", str(exc),
                      witness=[exc.witness[0], list(exc.witness[1]), list(exc.witness[2])])
    except NotAssociative as exc:
        return _error(EXIT_NOT_ASSOCIATIVE, "NotAssociative", str(exc),
                      witness=list(exc.witness) if exc.witness else None)
    except (CrossCheckFailure, LatticeViolation) as exc:
        return _error(EXIT_ORDER, type(exc).__name__, str(exc))
    except (ValueError, OSError) as exc:
        return _error(EXIT_CONFIG, "InvalidInput", str(exc))


if __name__ == "__main__":
    sys.exit(main())
