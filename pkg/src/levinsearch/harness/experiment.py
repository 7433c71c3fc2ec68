from __future__ import annotations

import dataclasses
import time
from typing import Optional

from .. import fixtures, vm
from ..problems import InversionProblem, PlantedReference
from ..search import (SearchConfig, hutter_search, levin_parallel,
                      levin_sequential, modified_levin)
from .report import (RunReport, hutter_verdicts, levin_verdicts,
                     modified_verdicts, oracle_check)

ALGORITHMS = ("levin-par", "levin-seq", "hutter", "modified")

DEFAULT_T_MAX = {
    "levin-par": 1 << 26,
    "levin-seq": 1 << 26,
    "hutter": 1 << 22,      # virtual steps
    "modified": 1 << 400,   # phase t; seeded proofs are long
}


def config_for(algo: str, base: Optional[SearchConfig] = None, **overrides) -> SearchConfig:
    base = base or SearchConfig()
    overrides = {k: v for k, v in overrides.items() if v is not None}
    overrides.setdefault("t_max", DEFAULT_T_MAX[algo])
    return dataclasses.replace(base, **overrides)


def run_cell(algo: str, problem: InversionProblem, reference: Optional[PlantedReference],
             cfg: SearchConfig, p_star: Optional[vm.Program] = None) -> RunReport:
    """Run one (algorithm, problem) pair and attach its verdicts.

    For the proof-driven searches ``p_star`` defaults to the seeded fixture's
    reference and the fixture's canonical proof is added to the proof space.
    """
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}")
    start = time.perf_counter()
    if algo in ("levin-par", "levin-seq"):
        fn = levin_parallel if algo == "levin-par" else levin_sequential
        trace = fn(problem, cfg, reference)
        report = RunReport(cfg, problem.name, algo, trace)
        report.verdicts = levin_verdicts(problem, trace, cfg, reference)
        report.oracle, v = oracle_check(problem, trace, reference)
        report.verdicts.append(v)
    else:
        if p_star is None:
            fx = fixtures.by_problem().get(problem.name)
            if fx is not None:
                p_star = fx.p_star
                if not cfg.seeded_proofs:
                    cfg = dataclasses.replace(cfg, seeded_proofs=(fx.proof().source,))
            elif reference is not None:
                p_star = reference.p_star
            else:
                raise ValueError(f"no reference program for problem {problem.name!r}")
        if algo == "hutter":
            trace = hutter_search(problem, p_star, cfg)
            report = RunReport(cfg, problem.name, algo, trace)
            report.verdicts = hutter_verdicts(problem, trace)
        else:
            trace = modified_levin(problem, p_star, cfg)
            report = RunReport(cfg, problem.name, algo, trace)
            report.verdicts = modified_verdicts(problem, trace)
    report.wall_time = time.perf_counter() - start
    return report


def run_suite(problems, base: Optional[SearchConfig] = None, **overrides) -> list[RunReport]:
    reports = []
    for algo in ALGORITHMS:
        for prob, ref in problems:
            reports.append(run_cell(algo, prob, ref, config_for(algo, base, **overrides)))
    return reports
