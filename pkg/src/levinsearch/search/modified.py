"""Levin search over proofs instead of programs.

Phase ``t`` materializes ``floor(t * 2^-l(f))`` bits of every proof ``f`` with
``l(f) <= log2 t``.  A proof that checks out yields a pair ``(p, t_p)``; its
bound is evaluated under ``floor(t * 2^-(l(p) + l(t_p)))`` steps, and the pair
with the smallest bound so far becomes ``p_fast``.  After the sweep at most one
program, ``p_fast``, is actually run.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .. import proofs, vm
from ..codec import Codeword
from ..problems import InversionProblem, verify
from .space import check_reference, proof_space
from .types import (BudgetExhausted, Phase, SearchConfig, SearchTrace,
                    UnsoundVerification, floor_log2)


def evaluate_bound(v: proofs.Verified, y: bytes, budget: int) -> tuple[Optional[int], int]:
    """``(bound value or None, steps spent)`` for a verified pair."""
    tb = v.t_p
    if isinstance(tb, proofs.Const):
        return (tb.n, 1) if budget >= 1 else (None, 0)
    prog = tb.t_p if isinstance(tb, proofs.Prog) else v.p
    res = vm.execute(prog, y, budget)
    if isinstance(res, vm.OutOfBudget):
        return None, budget
    if isinstance(tb, proofs.Prog):
        return proofs.bound_value_from_output(res.output), res.steps
    # runtime form: the bound is the observed running time of p itself
    return res.steps, res.steps


def modified_levin(problem: InversionProblem, p_star: vm.Program,
                   cfg: SearchConfig = SearchConfig()) -> SearchTrace:
    check_reference(problem, p_star)
    trace = SearchTrace("modified", problem.name)
    y = problem.target_y
    space = proof_space(cfg)
    p_fast: Optional[vm.Program] = None  # the empty-string sentinel
    t_fast: Optional[int] = None
    f_fast: Optional[Codeword] = None
    tb_fast = None
    t = cfg.t_initial
    while True:
        phase = Phase(t)
        trace.phases.append(phase)
        top = floor_log2(t)
        best_bound = None
        for f in space:
            lf = f.total_length
            if lf > top:
                break
            budget = t >> lf
            res = proofs.check_proof_budgeted(f, budget, p_star)
            phase.granted += budget
            phase.consumed += res.work
            status = type(res).__name__.lower()
            if isinstance(res, proofs.Verified):
                eb = t >> (res.p.length + res.t_p.length)
                phase.granted += eb
                value, spent = evaluate_bound(res, y, eb)
                phase.consumed += spent
                if value is None:
                    status += "/bound-pending"
                else:
                    status += f"/bound={value}"
                    if best_bound is None or value < best_bound:
                        best_bound = value
                        phase.best_proof = f.bits
                    if t_fast is None or value < t_fast:
                        p_fast, t_fast, f_fast, tb_fast = res.p, value, f, res.t_p
            phase.candidates.append((f.bits, budget, res.work, status))

        if p_fast is not None:
            cap = min(t, t_fast) if cfg.cap_combine == "min" else t
            outcome = vm.execute(p_fast, y, cap)
            spent = vm.steps_of(outcome)
            if isinstance(outcome, vm.OutOfBudget):
                phase.executed.append((p_fast.mnemonic, cap, spent, "budget"))
                phase.consumed += spent
            else:
                ok, vsteps = verify(problem, outcome.output)
                phase.consumed += spent + vsteps
                phase.executed.append((p_fast.mnemonic, cap, spent + vsteps,
                                       "accepted" if ok else "rejected"))
                trace.total_steps += phase.consumed
                if not ok:
                    raise UnsoundVerification(
                        f"{p_fast.mnemonic} proved equivalent to {p_star.mnemonic} "
                        f"but fails {problem.name}")
                trace.winner = p_fast
                trace.winner_output = outcome.output
                trace.T_stop = t
                _report(trace, p_star, p_fast, t_fast, f_fast, tb_fast)
                return trace
        trace.total_steps += phase.consumed
        t *= cfg.phase_factor
        if t > cfg.t_max:
            raise BudgetExhausted(trace, f"modified: no winner up to t_max={cfg.t_max}")


def _report(trace, p_star, p_fast, t_fast, f_fast, tb_fast):
    br = trace.bound_report
    br.l_pstar = p_star.length
    lf = f_fast.total_length
    br.l_fstar = lf
    br.d_p = 40 * (1 << (p_fast.length + tb_fast.length))
    br.c_p = 40 * (1 << (lf + 1)) * lf * lf
    br.c_p_terms = f"40*2^({lf}+1)*O({lf}^2)"
    trace.extra["t_fast"] = t_fast
    trace.extra["f_star"] = f_fast.bits
    trace.extra["bound_form"] = type(tb_fast).__name__
    trace.extra["p_star"] = p_star.mnemonic
    trace.extra["factor"] = Fraction(trace.total_steps, lf * lf * trace.T_stop)
