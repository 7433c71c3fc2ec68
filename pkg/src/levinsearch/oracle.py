"""Brute-force ground truth, sharing nothing with the schedulers but the VM."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import vm
from .codec import Codeword, enumerate_codewords
from .problems import InversionProblem

MAX_LEN = 31
MAX_STEPS = 1 << 16


@dataclass(frozen=True)
class OracleResult:
    minimal_program: Optional[Codeword]
    min_levin_score: Optional[int]
    exhausted_length: int
    exhausted_steps: int
    runtime: Optional[int] = None


def _guard(max_len: int, max_steps: int) -> None:
    if max_len > MAX_LEN or max_steps > MAX_STEPS:
        raise ValueError(f"oracle sweep beyond desk scale (max_len <= {MAX_LEN}, "
                         f"max_steps <= {MAX_STEPS})")


def ceil_log2(n: int) -> int:
    return (max(n, 1) - 1).bit_length()


def brute_force_inverse(problem: InversionProblem, max_len: int,
                        max_steps: int) -> OracleResult:
    """First accepted program in (length, runtime, enumeration) order.

    Acceptance is evaluated with the problem's forward map directly, with no
    step accounting for the check.
    """
    _guard(max_len, max_steps)
    best = None
    for cw in enumerate_codewords(max_len):
        if best is not None and cw.total_length > best[0]:
            break
        res = vm.execute(vm.parse(cw.body), problem.target_y, max_steps)
        if isinstance(res, vm.OutOfBudget):
            continue
        fx, _ = problem.apply_forward(res.output, problem.verify_cap)
        if fx != problem.target_y:
            continue
        key = (cw.total_length, res.steps)
        if best is None or key < best[:2]:
            best = (cw.total_length, res.steps, cw)
    if best is None:
        return OracleResult(None, None, max_len, max_steps)
    l, steps, cw = best
    return OracleResult(cw, l + ceil_log2(steps), max_len, max_steps, steps)


def levin_table(max_len: int, max_t: int) -> dict[bytes, tuple[int, Codeword]]:
    """Best ``l(p) + ceil(log2 steps)`` per output over all programs on empty input."""
    if max_t & (max_t - 1) or max_t < 1:
        raise ValueError("max_t must be a power of 2")
    _guard(max_len, max_t)
    table: dict[bytes, tuple[int, Codeword]] = {}
    for cw in enumerate_codewords(max_len):
        res = vm.execute(vm.parse(cw.body), b"", max_t)
        if isinstance(res, vm.OutOfBudget):
            continue
        score = cw.total_length + ceil_log2(res.steps)
        prev = table.get(res.output)
        if prev is None or score < prev[0]:
            table[res.output] = (score, cw)
    return table


def levin_complexity(x: bytes, max_len: int, max_t: int,
                     table: Optional[dict] = None) -> Optional[int]:
    """Kt(x) restricted to programs of length <= max_len running <= max_t steps."""
    if table is None:
        table = levin_table(max_len, max_t)
    hit = table.get(bytes(x))
    return None if hit is None else hit[0]


@dataclass(frozen=True)
class RuntimeSample:
    x: bytes
    steps: Optional[int]
    halted: bool


def runtime_bound_report(p: vm.Program, inputs, cap: int = 1 << 12) -> list[RuntimeSample]:
    """Exact step counts of ``p`` per input; nontermination within ``cap`` is flagged."""
    if not p.valid:
        raise ValueError("program is invalid")
    out = []
    for x in inputs:
        res = vm.execute(p, bytes(x), cap)
        if isinstance(res, vm.OutOfBudget):
            out.append(RuntimeSample(bytes(x), None, False))
        else:
            out.append(RuntimeSample(bytes(x), res.steps, True))
    return out
