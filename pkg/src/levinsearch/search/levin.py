"""Levin's universal search, as a simulated-parallel and a sequential loop.

Each phase ``t`` gives every program codeword ``p`` with ``l(p) <= log2 t`` a
fresh run of ``floor(t * 2^-l(p))`` steps.  A program that halts within its
budget has its output verified, and the verification steps come out of the
same budget, so a phase never consumes more than it granted.
"""

from __future__ import annotations

from typing import Optional

from .. import vm
from ..codec import enumerate_codewords
from ..problems import InversionProblem, PlantedReference, verify
from .types import (BudgetExhausted, Phase, SearchConfig, SearchTrace,
                    floor_log2, program_of)


def phase_candidates(t: int) -> list[tuple[str, int]]:
    """``(body, budget)`` for every codeword given a nonzero budget in phase t."""
    top = floor_log2(t)
    if top < 1:
        return []
    out = []
    for cw in enumerate_codewords(top):
        budget = t >> cw.total_length
        if budget:
            out.append((cw.body, budget))
    return out


def _finish(problem, outcome, budget):
    """Verify a halted run inside what is left of its budget."""
    used = vm.steps_of(outcome)
    ok, vsteps = verify(problem, outcome.output, budget - used)
    return ok, used + vsteps


def _levin_bound(trace: SearchTrace, reference: Optional[PlantedReference]):
    if reference is None:
        return
    br = trace.bound_report
    br.l_pstar = reference.p_star.length
    br.t_star = reference.t_star
    br.levin_bound = (1 << (br.l_pstar + 1)) * br.t_star


def _next_t(t: int, cfg: SearchConfig, trace: SearchTrace) -> int:
    t *= cfg.phase_factor
    if t > cfg.t_max:
        raise BudgetExhausted(trace, f"{trace.algorithm}: no winner up to t_max={cfg.t_max}")
    return t


def levin_sequential(problem: InversionProblem, cfg: SearchConfig = SearchConfig(),
                     reference: Optional[PlantedReference] = None) -> SearchTrace:
    trace = SearchTrace("levin-seq", problem.name)
    _levin_bound(trace, reference)
    y = problem.target_y
    t = cfg.t_initial
    while True:
        phase = Phase(t)
        trace.phases.append(phase)
        for body, budget in phase_candidates(t):
            phase.granted += budget
            outcome = vm.execute(program_of(body), y, budget)
            if isinstance(outcome, vm.OutOfBudget):
                used, status = budget, "budget"
            else:
                ok, used = _finish(problem, outcome, budget)
                status = "accepted" if ok else "rejected"
            phase.consumed += used
            trace.total_steps += used
            phase.candidates.append((body, budget, used, status))
            if status == "accepted":
                trace.winner = program_of(body)
                trace.winner_output = outcome.output
                trace.T_stop = t
                return trace
        t = _next_t(t, cfg, trace)


def levin_parallel(problem: InversionProblem, cfg: SearchConfig = SearchConfig(),
                   reference: Optional[PlantedReference] = None) -> SearchTrace:
    """All phase candidates advance round-robin, ``scheduler_quantum`` steps per turn.

    The winner is the first success in enumeration order, so the phase runs
    until every candidate ahead of the earliest success has finished.
    """
    trace = SearchTrace("levin-par", problem.name)
    _levin_bound(trace, reference)
    y = problem.target_y
    q = cfg.scheduler_quantum
    t = cfg.t_initial
    while True:
        phase = Phase(t)
        trace.phases.append(phase)
        cands = phase_candidates(t)
        phase.granted = sum(b for _, b in cands)
        states = [vm.start(program_of(body), y) for body, _ in cands]
        used = [0] * len(cands)
        status = [""] * len(cands)
        outputs: list[bytes] = [b""] * len(cands)
        active = list(range(len(cands)))
        frontier = 0  # every candidate below this index has finished
        best = None
        while active:
            still = []
            for i in active:
                budget = cands[i][1]
                res = vm.run(states[i], min(q, budget - states[i].steps_executed))
                if isinstance(res, vm.OutOfBudget):
                    if res.state.steps_executed >= budget:
                        used[i], status[i] = budget, "budget"
                    else:
                        still.append(i)
                    continue
                ok, used[i] = _finish(problem, res, budget)
                status[i] = "accepted" if ok else "rejected"
                outputs[i] = res.output
                if ok and (best is None or i < best):
                    best = i
            active = still
            while frontier < len(cands) and status[frontier]:
                frontier += 1
            if best is not None and frontier >= best:
                break
        for i, (body, budget) in enumerate(cands):
            if not status[i]:
                used[i] = states[i].steps_executed
                status[i] = "preempted"
            phase.candidates.append((body, budget, used[i], status[i]))
        phase.consumed = sum(used)
        trace.total_steps += phase.consumed
        if best is not None:
            trace.winner = program_of(cands[best][0])
            trace.winner_output = outputs[best]
            trace.T_stop = t
            return trace
        t = _next_t(t, cfg, trace)
