"""Command line entry point.

Exit codes: 0 success, 1 usage error, 2 verdict failure, 3 config error.
"""

from __future__ import annotations

import argparse
import sys

from .. import codec, oracle, proofs, vm
from ..problems import builtin_suite
from ..search import BudgetExhausted
from .config import ConfigError, load_config
from .experiment import ALGORITHMS, config_for, run_cell, run_suite
from .report import emit_report

EXIT_OK, EXIT_USAGE, EXIT_VERDICT, EXIT_CONFIG = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="levinsearch", description="Universal search experiments on a toy VM.")
    p.add_argument("--config", help="problem/search config file")
    p.add_argument("--t-max", type=int)
    p.add_argument("--phase-factor", type=int)
    p.add_argument("--quantum", type=int, dest="scheduler_quantum")
    p.add_argument("--proof-max-length", type=int)
    p.add_argument("--cap-combine", choices=("min", "t-only"))
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--wall-time", action="store_true", help="include wall time in reports")
    sub = p.add_subparsers(dest="cmd", required=True)
    r = sub.add_parser("run")
    r.add_argument("algo", choices=ALGORITHMS)
    r.add_argument("problem")
    sub.add_parser("suite")
    k = sub.add_parser("kraft-audit")
    k.add_argument("max_len", type=int)
    kt = sub.add_parser("kt")
    kt.add_argument("hex_bytes")
    kt.add_argument("max_len", type=int)
    kt.add_argument("max_t", type=int)
    o = sub.add_parser("oracle")
    o.add_argument("problem")
    o.add_argument("--max-len", type=int, default=21)
    o.add_argument("--max-steps", type=int, default=64)
    d = sub.add_parser("proof-dump")
    d.add_argument("bitstring")
    return p


def _problems(args):
    if args.config:
        loaded = load_config(args.config)
        return loaded.problems, loaded.search
    return builtin_suite(), None


def _lookup(problems, name):
    for prob, ref in problems:
        if prob.name == name:
            return prob, ref
    raise UsageError(f"unknown problem {name!r}; known: {', '.join(p.name for p, _ in problems)}")


def _write(args, data: bytes) -> None:
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data.decode())


def _overrides(args):
    return dict(t_max=args.t_max, phase_factor=args.phase_factor,
                scheduler_quantum=args.scheduler_quantum,
                proof_max_length=args.proof_max_length, cap_combine=args.cap_combine)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _dispatch(args)
    except UsageError as e:
        print(f"levinsearch: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as e:
        print(f"levinsearch: config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except BudgetExhausted as e:
        print(f"levinsearch: {e}", file=sys.stderr)
        return EXIT_VERDICT


def _dispatch(args) -> int:
    if args.cmd == "kraft-audit":
        if args.max_len < 1:
            raise UsageError("max-len must be >= 1")
        s = codec.kraft_sum(codec.enumerate_codewords(args.max_len))
        print(f"{s.numerator}/{s.denominator}")
        return EXIT_OK
    if args.cmd == "kt":
        try:
            x = bytes.fromhex(args.hex_bytes)
            value = oracle.levin_complexity(x, args.max_len, args.max_t)
        except ValueError as e:
            raise UsageError(str(e)) from None
        print("none" if value is None else value)
        return EXIT_OK
    if args.cmd == "proof-dump":
        try:
            proof = proofs.decode_proof(args.bitstring)
        except (ValueError, proofs.StepRejected) as e:
            print(f"rejected: {e}")
            return EXIT_VERDICT
        print(proof.listing())
        return EXIT_OK

    problems, base = _problems(args)
    if args.cmd == "oracle":
        prob, _ = _lookup(problems, args.problem)
        try:
            res = oracle.brute_force_inverse(prob, args.max_len, args.max_steps)
        except ValueError as e:
            raise UsageError(str(e)) from None
        if res.minimal_program is None:
            print(f"{prob.name}: no accepted program up to length {args.max_len}")
        else:
            p = vm.parse(res.minimal_program.body)
            print(f"{prob.name}: {res.minimal_program.bits} {p.mnemonic} "
                  f"l={p.length} steps={res.runtime} score={res.min_levin_score}")
        return EXIT_OK
    if args.cmd == "run":
        prob, ref = _lookup(problems, args.problem)
        report = run_cell(args.algo, prob, ref, config_for(args.algo, base, **_overrides(args)))
        _write(args, emit_report(report, args.format, args.wall_time))
        return EXIT_OK if report.passed else EXIT_VERDICT
    if args.cmd == "suite":
        reports = run_suite(problems, base, **_overrides(args))
        _write(args, emit_report(reports, args.format, args.wall_time))
        failed = [f"{r.algorithm}/{r.problem}:{v.name}" for r in reports
                  for v in r.verdicts if not v.passed]
        for f in failed:
            print(f"verdict failed: {f}", file=sys.stderr)
        return EXIT_VERDICT if failed else EXIT_OK
    raise UsageError(f"unknown command {args.cmd!r}")


if __name__ == "__main__":
    sys.exit(main())
