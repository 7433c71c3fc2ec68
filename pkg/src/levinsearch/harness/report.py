"""Run reports and bound verdicts computed from search traces.

Verdicts use virtual step counts only.  Wall time is kept on the report but
left out of serialized output unless asked for, so identical runs serialize
to identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .. import oracle, proofs
from ..codec import CODEC_ID
from ..problems import InversionProblem, PlantedReference, verify
from ..search.types import SearchConfig, SearchTrace
from ..vm import MACHINE_ID

ORACLE_STEPS = 1 << 10


@dataclass
class Verdict:
    name: str
    formula: str
    lhs: Any
    rhs: Any
    passed: bool


@dataclass
class RunReport:
    config: SearchConfig
    problem: str
    algorithm: str
    trace: SearchTrace
    oracle: dict = field(default_factory=dict)
    verdicts: list[Verdict] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)


# -- verdicts -----------------------------------------------------------------

def kraft_verdict(trace: SearchTrace) -> Verdict:
    bad = [p.t for p in trace.phases if p.granted > p.t]
    return Verdict("phase-budget", "sum of granted budgets <= t in every phase",
                   len(bad), 0, not bad)


def geometric_verdict(trace: SearchTrace) -> Verdict:
    lhs = sum(p.t for p in trace.phases)
    return Verdict("geometric-identity", "sum of phase t = 2*T_stop - 2",
                   lhs, 2 * trace.T_stop - 2, lhs == 2 * trace.T_stop - 2)


def winner_verdict(problem: InversionProblem, trace: SearchTrace) -> Verdict:
    ok = trace.winner is not None and verify(problem, trace.winner_output)[0]
    return Verdict("winner-verifies", "f(winner output) = y",
                   list(trace.winner_output), list(problem.target_y), ok)


def levin_verdicts(problem, trace, cfg, reference: Optional[PlantedReference]):
    out = [kraft_verdict(trace), winner_verdict(problem, trace)]
    if cfg.t_initial == 2 and cfg.phase_factor == 2:
        out.append(geometric_verdict(trace))
    out.append(Verdict("total-below-2T", "total_steps < 2*T_stop",
                       trace.total_steps, 2 * trace.T_stop,
                       trace.total_steps < 2 * trace.T_stop))
    br = trace.bound_report
    if br.levin_bound is not None:
        out.append(Verdict("levin-bound", "total_steps < 2^(l(p*)+1) * t*",
                           trace.total_steps, br.levin_bound,
                           trace.total_steps < br.levin_bound))
    return out


def oracle_check(problem, trace, reference: Optional[PlantedReference]):
    max_len = reference.p_star.length if reference else trace.winner.length
    res = oracle.brute_force_inverse(problem, min(max_len, oracle.MAX_LEN), ORACLE_STEPS)
    got = trace.winner.body if trace.winner else None
    want = res.minimal_program.body if res.minimal_program else None
    summary = {"max_len": res.exhausted_length, "max_steps": res.exhausted_steps,
               "minimal_program": res.minimal_program.bits if res.minimal_program else None,
               "score": res.min_levin_score}
    return summary, Verdict("oracle-agreement", "winner = brute-force minimal program",
                            got, want, got == want)


def hutter_verdicts(problem, trace: SearchTrace):
    q = trace.extra["quantum"]
    bad = [i for i, row in enumerate(trace.extra["epochs"]) if row != (q, q, 8 * q)]
    out = [Verdict("resource-split", "A:B:C = 1:1:8 quanta in every complete epoch",
                   len(bad), 0, not bad),
           winner_verdict(problem, trace)]
    return out


def modified_verdicts(problem, trace: SearchTrace):
    many = [p.t for p in trace.phases if len(p.executed) > 1]
    seen = False
    early = []
    for p in trace.phases:
        seen = seen or any(c[3].startswith("verified") for c in p.candidates)
        if not seen and p.executed:
            early.append(p.t)
    out = [Verdict("single-execution", "<= 1 p_fast run per phase, none before a verified proof",
                   len(many) + len(early), 0, not many and not early),
           winner_verdict(problem, trace)]
    lf = trace.bound_report.l_fstar
    rhs = lf * lf * trace.T_stop
    out.append(Verdict("proof-search-bound", "total_steps <= l(f*)^2 * T_stop",
                       trace.total_steps, rhs, trace.total_steps <= rhs))
    return out


# -- serialization ------------------------------------------------------------

def _plain(v):
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, bytes):
        return list(v)
    if isinstance(v, tuple):
        return [_plain(x) for x in v]
    if isinstance(v, list):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    if isinstance(v, (proofs.Const, proofs.Prog, proofs.Runtime)):
        return str(v)
    return v


def trace_rows(trace: SearchTrace) -> list[dict]:
    """Per-phase rows (per-epoch for hutter); ``consumed`` sums to total_steps."""
    if trace.algorithm == "hutter":
        rows = []
        epochs = list(trace.extra["epochs"])
        if trace.extra.get("partial_epoch"):
            epochs.append(trace.extra["partial_epoch"])
        for i, (a, b, c) in enumerate(epochs):
            rows.append({"index": i, "t": None, "granted": 10 * trace.extra["quantum"],
                         "consumed": a + b + c, "a": a, "b": b, "c": c})
        return rows
    return [{"index": i, "t": p.t, "granted": p.granted, "consumed": p.consumed,
             "candidates": len(p.candidates), "executed": len(p.executed)}
            for i, p in enumerate(trace.phases)]


def report_dict(report: RunReport, wall_time: bool = False) -> dict:
    tr = report.trace
    cfg = asdict(report.config)
    cfg["seeded_proofs"] = [c.bits for c in report.config.seeded_proofs]
    out = {
        "machine": MACHINE_ID,
        "codec": CODEC_ID,
        "algorithm": report.algorithm,
        "problem": report.problem,
        "config": cfg,
        "winner": tr.winner.codeword.bits if tr.winner else None,
        "winner_mnemonic": tr.winner.mnemonic if tr.winner else None,
        "winner_output": list(tr.winner_output),
        "T_stop": tr.T_stop,
        "total_steps": tr.total_steps,
        "bound_report": asdict(tr.bound_report),
        "extra": _plain(tr.extra),
        "phases": trace_rows(tr),
        "oracle": report.oracle,
        "verdicts": [asdict(v) for v in report.verdicts],
        "passed": report.passed,
    }
    if wall_time:
        out["wall_time"] = report.wall_time
    return out


CSV_FIELDS = ["algorithm", "problem", "index", "t", "granted", "consumed"]


def emit_report(reports, fmt: str = "json", wall_time: bool = False) -> bytes:
    """Serialize one report or a list of them (``suite``)."""
    many = isinstance(reports, list)
    items = reports if many else [reports]
    if fmt == "json":
        body: Any = [report_dict(r, wall_time) for r in items]
        if not many:
            body = body[0]
        else:
            body = {"reports": body, "passed": all(r.passed for r in items)}
        return (json.dumps(body, indent=2) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, extrasaction="ignore",
                           lineterminator="\n")
        w.writeheader()
        for r in items:
            for row in trace_rows(r.trace):
                w.writerow({"algorithm": r.algorithm, "problem": r.problem, **row})
        return buf.getvalue().encode()
    raise ValueError(f"unknown format {fmt!r}")
