from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Optional

from .. import vm
from ..codec import Codeword


@dataclass(frozen=True)
class SearchConfig:
    t_initial: int = 2
    phase_factor: int = 2
    t_max: int = 1 << 26
    scheduler_quantum: int = 1
    # how p_fast's run is capped in the modified search: "min" = min(t, t_fast), "t-only" = t
    cap_combine: str = "min"
    # enumerated proof space for hutter/modified: all codewords up to this length (0 = none)
    proof_max_length: int = 0
    seeded_proofs: tuple[Codeword, ...] = ()

    def __post_init__(self):
        if self.t_initial < 2:
            raise ValueError("t_initial must be >= 2")
        if self.phase_factor < 2:
            raise ValueError("phase_factor must be >= 2")
        if self.t_max < self.t_initial:
            raise ValueError("t_max must be >= t_initial")
        if self.scheduler_quantum < 1:
            raise ValueError("scheduler_quantum must be >= 1")
        if self.cap_combine not in ("min", "t-only"):
            raise ValueError(f"cap_combine must be 'min' or 't-only', not {self.cap_combine!r}")


@dataclass
class Phase:
    t: int
    granted: int = 0
    consumed: int = 0
    # (codeword bits, budget, consumed, status)
    candidates: list[tuple[str, int, int, str]] = field(default_factory=list)
    # p_fast executions: (program mnemonic, cap, consumed, status)
    executed: list[tuple[str, int, int, str]] = field(default_factory=list)
    best_proof: Optional[str] = None


@dataclass
class BoundReport:
    l_pstar: Optional[int] = None
    t_star: Optional[int] = None
    levin_bound: Optional[int] = None
    l_fstar: Optional[int] = None
    d_p: Optional[int] = None
    c_p_terms: Optional[str] = None
    c_p: Optional[int] = None


@dataclass
class SearchTrace:
    algorithm: str
    problem: str
    winner: Optional[vm.Program] = None
    winner_output: bytes = b""
    T_stop: int = 0
    total_steps: int = 0
    phases: list[Phase] = field(default_factory=list)
    bound_report: BoundReport = field(default_factory=BoundReport)
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def winner_codeword(self) -> Optional[Codeword]:
        return None if self.winner is None else self.winner.codeword


class BudgetExhausted(RuntimeError):
    def __init__(self, trace: SearchTrace, msg: str):
        self.trace = trace
        super().__init__(msg)


class UnsoundVerification(RuntimeError):
    """A search winner failed problem verification; the calculus is broken."""


@lru_cache(maxsize=1 << 16)
def program_of(body: str) -> vm.Program:
    return vm.parse(body)


def floor_log2(t: int) -> int:
    return t.bit_length() - 1
