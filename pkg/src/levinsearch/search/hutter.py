"""Hutter's fastest-and-shortest search on virtual time.

Three processes share the machine in fixed proportions, one quantum each for
A and B and eight for C per ten-quantum epoch:

* A walks the proof space and adds every verified ``(p, t_p)`` to ``L``.
* B evaluates the bounds of the pairs in ``L``, each with a share proportional
  to ``2^-(l(p) + l(t_p))``, and keeps the pair with the smallest bound as
  ``p_fast``.
* C runs the current ``p_fast`` for k = 1, 2, 4, ... steps until it halts.

Processes are generators that yield once per unit of work.  A process with
nothing to do still burns its quanta, so the shares stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .. import proofs, vm
from ..codec import Codeword
from ..problems import InversionProblem, verify
from .types import (BudgetExhausted, SearchConfig, SearchTrace,
                    UnsoundVerification)
from .space import check_reference, proof_space

SHARES = (("A", 1), ("B", 1), ("C", 8))


@dataclass
class _Shared:
    p_fast: vm.Program
    t_fast: float = float("inf")
    f_fast: Optional[Codeword] = None
    tb_fast: Optional[proofs.TimeBound] = None
    version: int = 0
    pending: list = field(default_factory=list)
    found: list = field(default_factory=list)
    done: bool = False
    output: bytes = b""
    k: int = 1


def _process_a(space, p_star, sh: _Shared):
    for f in space:
        res = proofs.check_proof(f, p_star)
        for _ in range(max(res.work, 1) - 1):
            yield
        if isinstance(res, proofs.Verified):
            sh.found.append((f.bits, res.p.mnemonic, str(res.t_p)))
            sh.pending.append(_Eval(f, res, len(sh.found) - 1))
        yield


class _Eval:
    def __init__(self, f: Codeword, res: proofs.Verified, order: int):
        self.f = f
        self.p = res.p
        self.t_p = res.t_p
        self.order = order
        self.spent = 0
        # inverse share: the pair runs one unit per 2^(l(p)+l(t_p)) of pass
        self.stride = 1 << (res.p.length + res.t_p.length)
        self.state = None

    def step(self, y: bytes) -> Optional[int]:
        """One unit of bound evaluation; returns the bound once known."""
        self.spent += 1
        tb = self.t_p
        if isinstance(tb, proofs.Const):
            return tb.n
        if self.state is None:
            prog = tb.t_p if isinstance(tb, proofs.Prog) else self.p
            self.state = vm.start(prog, y)
        res = vm.run(self.state, 1)
        if isinstance(res, vm.OutOfBudget):
            return None
        if isinstance(tb, proofs.Prog):
            return proofs.bound_value_from_output(res.output)
        return res.steps


def _process_b(y, sh: _Shared):
    while True:
        if not sh.pending:
            yield
            continue
        ev = min(sh.pending, key=lambda e: ((e.spent + 1) * e.stride, e.order))
        value = ev.step(y)
        if value is not None:
            sh.pending.remove(ev)
            if value < sh.t_fast:
                sh.t_fast = value
                sh.p_fast = ev.p
                sh.f_fast = ev.f
                sh.tb_fast = ev.t_p
                sh.version += 1
        yield


def _process_c(problem, sh: _Shared):
    y = problem.target_y
    while True:
        version = sh.version
        state = vm.start(sh.p_fast, y)
        spent = 0
        while True:
            if sh.version != version:
                # new p_fast: restart at the current k
                version = sh.version
                state = vm.start(sh.p_fast, y)
                spent = 0
            res = vm.run(state, 0)
            if not isinstance(res, vm.OutOfBudget):
                break
            if spent >= sh.k:
                break
            vm.run(state, 1)
            spent += 1
            yield
        res = vm.run(state, 0)
        if isinstance(res, vm.OutOfBudget):
            sh.k *= 2
            continue
        ok, vsteps = verify(problem, res.output)
        for _ in range(vsteps):
            yield
        if not ok:
            raise UnsoundVerification(
                f"{state.program.mnemonic} output {list(res.output)} fails {problem.name}")
        sh.output = res.output
        sh.done = True
        return


def hutter_search(problem: InversionProblem, p_star: vm.Program,
                  cfg: SearchConfig = SearchConfig()) -> SearchTrace:
    check_reference(problem, p_star)
    trace = SearchTrace("hutter", problem.name)
    y = problem.target_y
    sh = _Shared(p_fast=p_star)
    procs = {"A": _process_a(proof_space(cfg), p_star, sh),
             "B": _process_b(y, sh),
             "C": _process_c(problem, sh)}
    live = {"A": True, "B": True, "C": True}
    q = cfg.scheduler_quantum
    epochs: list[tuple[int, int, int]] = []
    partial = None
    total = 0
    while not sh.done:
        used = {"A": 0, "B": 0, "C": 0}
        for name, quanta in SHARES:
            for _ in range(quanta * q):
                if live[name]:
                    try:
                        next(procs[name])
                    except StopIteration:
                        live[name] = False
                used[name] += 1
                total += 1
                if sh.done:
                    break
            if sh.done:
                break
        row = (used["A"], used["B"], used["C"])
        if sh.done and sum(row) < 10 * q:
            partial = row
        else:
            epochs.append(row)
        if total > cfg.t_max and not sh.done:
            trace.total_steps = total
            raise BudgetExhausted(trace, f"hutter: no answer within {cfg.t_max} virtual steps")

    trace.winner = sh.p_fast
    trace.winner_output = sh.output
    trace.T_stop = sh.k
    trace.total_steps = total
    trace.extra["epochs"] = epochs
    trace.extra["partial_epoch"] = partial
    trace.extra["quantum"] = q
    trace.extra["L"] = sh.found
    trace.extra["t_fast"] = None if sh.t_fast == float("inf") else sh.t_fast
    trace.extra["p_star"] = p_star.mnemonic
    br = trace.bound_report
    br.l_pstar = p_star.length
    if sh.f_fast is not None:
        lf = sh.f_fast.total_length
        br.l_fstar = lf
        br.d_p = 40 * (1 << (sh.p_fast.length + sh.tb_fast.length))
        br.c_p = 40 * (1 << (lf + 1)) * lf * lf
        br.c_p_terms = f"40*2^({lf}+1)*O({lf}^2)"
    return trace
