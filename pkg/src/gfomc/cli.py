"""The ``gfomc`` command line.

Every command prints ``key: value`` lines.  Rationals are printed as
``num/den`` in lowest terms.  Exit status is 0 on success, 1 when a
computation or a verification check fails, and 2 on usage or input errors.
"""

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import _config
from .blocks import SystemSingularError
from .formula import model_count
from .lineage import ground_lineage, pr_exact
from .query import (
    QuerySyntaxError,
    classify,
    minimize_query,
    parse_query,
    sym_key,
    zigzag_query,
)
from .reduction import (
    P2cnfFormatError,
    brute_p2cnf,
    brute_pp2cnf,
    parse_p2cnf,
    parse_pp2cnf,
    pp2cnf_via_ccp,
    type1_pipeline,
)
from .suites import CHECKS, SUITES, run_check, run_suite
from .tid import TidFormatError, read_tid

__all__ = ["main", "run"]


class UsageError(Exception):
    pass


def _frac(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _bool(b):
    return "true" if b else "false"


def _syms(s):
    return ",".join(sorted(s, key=sym_key)) or "-"


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _query(path):
    return minimize_query(parse_query(_read(path)))


def _tid(path):
    return read_tid(_read(path))


def _fraction_arg(text):
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError("c must lie strictly between 0 and 1")
    return value


# ---------------------------------------------------------------------------
# commands


def cmd_classify(args, out):
    Q = _query(args.query)
    rep = classify(Q)
    out(f"bipartite: {_bool(rep.bipartite)}")
    if not rep.bipartite:
        for d in rep.diagnostics:
            out(f"diagnostic: {d}")
        return 0
    out(f"type: {rep.type}")
    out(f"unsafe: {_bool(rep.unsafe)}")
    out(f"length: {rep.length if rep.unsafe else '-'}")
    out(f"final: {_bool(rep.final)}")
    out(f"forbidden: {_bool(rep.forbidden)}")
    out(f"ubiquitous_left: {_syms(rep.ubiquitous_left)}")
    out(f"ubiquitous_right: {_syms(rep.ubiquitous_right)}")
    if rep.witness_path:
        for i, c in enumerate(rep.witness_path):
            out(f"path_{i}: {c}")
    for d in rep.diagnostics:
        out(f"diagnostic: {d}")
    return 0


def cmd_prob(args, out):
    Q, tid = _query(args.query), _tid(args.tid)
    out(f"probability: {_frac(pr_exact(Q, tid))}")
    return 0


def cmd_count(args, out):
    Q, tid = _query(args.query), _tid(args.tid)
    uncertain = tid.uncertain()
    F = ground_lineage(Q, tid)
    out(f"uncertain_tuples: {len(uncertain)}")
    out(f"worlds: {2 ** len(uncertain)}")
    out(f"count: {model_count(F, uncertain)}")
    return 0


def cmd_minimize(args, out):
    Q = _query(args.query)
    out(f"clauses: {len(Q)}")
    for i, c in enumerate(Q.clauses):
        out(f"clause_{i}: {c}")
    return 0


def cmd_zg(args, out):
    Q = _query(args.query)
    Z = zigzag_query(Q)
    rep = classify(Z)
    out(f"type: {rep.type}")
    out(f"unsafe: {_bool(rep.unsafe)}")
    out(f"length: {rep.length if rep.unsafe else '-'}")
    out(f"clauses: {len(Z)}")
    for i, c in enumerate(Z.clauses):
        out(f"clause_{i}: {c}")
    return 0


def cmd_reduce_t1(args, out):
    Q = _query(args.query)
    phi = parse_p2cnf(_read(args.p2cnf))
    res = type1_pipeline(Q, phi, args.c, args.mode)
    out(f"n: {phi.n}")
    out(f"m: {phi.m}")
    out(f"c: {_frac(args.c)}")
    out(f"mode: {args.mode}")
    out(f"count: {res.phi_count}")
    if "t_offset" in res.diagnostics:
        out(f"t_offset: {res.diagnostics['t_offset']}")
    if args.check:
        brute = brute_p2cnf(phi)
        out(f"brute_count: {brute}")
        if brute != res.phi_count:
            out("status: fail")
            return 1
    if args.table:
        for key in sorted(res.table):
            out("signature {} {} {} {} {}: {}".format(*key, res.table[key]))
    return 0


def cmd_ccp(args, out):
    phi = parse_pp2cnf(_read(args.pp2cnf))
    count = pp2cnf_via_ccp(phi, args.colors)
    out(f"nx: {phi.nx}")
    out(f"ny: {phi.ny}")
    out(f"clauses: {len(phi.edges)}")
    out(f"colors: {args.colors}")
    out(f"count: {count}")
    if args.check:
        brute = brute_pp2cnf(phi)
        out(f"brute_count: {brute}")
        if brute != count:
            out("status: fail")
            return 1
    return 0


def _report(result, out):
    c = result.check
    status = "pass" if result.ok else "fail"
    out(
        f"{c.name}: {status} checked={result.passed} skipped={result.skipped}"
        f" anchor=\"{c.anchor}\""
    )


def _save_counterexample(result, directory):
    path = Path(directory) / f"counterexample-{result.check.name}.json"
    path.write_text(json.dumps(result.failure, indent=2, sort_keys=True) + "\n")
    return path


def cmd_verify(args, out):
    if args.replay:
        try:
            data = json.loads(_read(args.replay))
            check = CHECKS[data["check"]]
            seed, trial = int(data["seed"]), int(data["trial"])
        except (ValueError, KeyError, TypeError) as e:
            raise UsageError(f"bad replay file: {e}") from None
        out(f"replay: {check.name}")
        out(f"seed: {seed}")
        out(f"trial: {trial}")
        result = run_check(check, seed, only=trial)
        _report(result, out)
        if not result.ok:
            out(f"instance: {json.dumps(result.failure['instance'])}")
        out(f"status: {'pass' if result.ok else 'fail'}")
        return 0 if result.ok else 1
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}")
    out(f"suite: {args.suite}")
    out(f"seed: {args.seed}")
    if args.trials:
        out(f"trials: {args.trials}")
    results = run_suite(args.suite, args.seed, args.trials)
    failed = 0
    for r in results:
        _report(r, out)
        if not r.ok:
            failed += 1
            out(f"counterexample: {json.dumps(r.failure['instance'])}")
            if args.save_dir:
                out(f"counterexample_file: {_save_counterexample(r, args.save_dir)}")
    out(f"checks: {len(results)}")
    out(f"failed: {failed}")
    out(f"status: {'fail' if failed else 'pass'}")
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parser():
    p = _Parser(prog="gfomc", description="Generalized model counting over TIDs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("classify", help="classify a query")
    s.add_argument("query")
    s.set_defaults(fn=cmd_classify)

    s = sub.add_parser("prob", help="probability of a query on a TID")
    s.add_argument("query")
    s.add_argument("tid")
    s.set_defaults(fn=cmd_prob)

    s = sub.add_parser("count", help="number of worlds of a TID satisfying a query")
    s.add_argument("query")
    s.add_argument("tid")
    s.set_defaults(fn=cmd_count)

    s = sub.add_parser("minimize", help="print the minimized query")
    s.add_argument("query")
    s.set_defaults(fn=cmd_minimize)

    s = sub.add_parser("zg", help="print the zig-zag query")
    s.add_argument("query")
    s.set_defaults(fn=cmd_zg)

    s = sub.add_parser("reduce-t1", help="count a P2CNF through a type I query")
    s.add_argument("query")
    s.add_argument("p2cnf")
    s.add_argument("--c", type=_fraction_arg, default=Fraction(1, 2))
    s.add_argument("--mode", choices=["semantic", "paper"], default="semantic")
    s.add_argument("--table", action="store_true", help="print the signature table")
    s.add_argument("--check", action="store_true", help="compare with brute force")
    s.set_defaults(fn=cmd_reduce_t1)

    s = sub.add_parser("ccp", help="count a PP2CNF through coloring counts")
    s.add_argument("pp2cnf")
    s.add_argument("--colors", type=int, default=3)
    s.add_argument("--check", action="store_true", help="compare with brute force")
    s.set_defaults(fn=cmd_ccp)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("suite", nargs="?", default="all", help=", ".join([*SUITES, "all"]))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=None)
    s.add_argument("--replay", metavar="FILE", help="rerun one saved counterexample")
    s.add_argument("--save-dir", metavar="DIR", help="write counterexamples here")
    s.set_defaults(fn=cmd_verify)
    return p


def run(argv, out=print):
    """Run the command line on ``argv`` and return the exit status."""
    try:
        args = _parser().parse_args(argv)
        return args.fn(args, out)
    except UsageError as e:
        print(f"gfomc: error: {e}", file=sys.stderr)
        return 2
    except (QuerySyntaxError, TidFormatError, P2cnfFormatError) as e:
        print(f"gfomc: input error: {e}", file=sys.stderr)
        return 2
    except (_config.CapExceeded, SystemSingularError, ArithmeticError, ValueError) as e:
        print(f"gfomc: failed: {e}", file=sys.stderr)
        return 1


def main(argv=None):
    sys.exit(run(sys.argv[1:] if argv is None else argv))
