"""Inversion problems: find ``x`` with ``f(x) == y``.

A search candidate receives ``y`` as its VM input and must emit ``x``.
Forward maps are either built-in pure functions, charged one step per input
byte plus one per output byte, or VM programs charged their exact step count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Union

from . import vm

DEFAULT_VERIFY_CAP = 256


def _identity(x: bytes) -> bytes:
    return bytes(x)


def _increment(x: bytes) -> bytes:
    return bytes((b + 1) & 0xFF for b in x)


def _swap(x: bytes) -> bytes:
    if len(x) < 2:
        return bytes(x)
    return bytes([x[1], x[0]]) + bytes(x[2:])


BUILTINS: dict[str, Callable[[bytes], bytes]] = {
    "identity": _identity,
    "increment": _increment,
    "swap": _swap,
}


@dataclass(frozen=True)
class Builtin:
    name: str

    def __post_init__(self):
        if self.name not in BUILTINS:
            raise ValueError(f"unknown builtin forward {self.name!r}")

    def __str__(self):
        return f"builtin:{self.name}"


Forward = Union[Builtin, vm.Program]


@dataclass(frozen=True)
class InversionProblem:
    name: str
    forward: Forward
    target_y: bytes
    verify_cap: int = DEFAULT_VERIFY_CAP

    def __post_init__(self):
        if not self.target_y:
            raise ValueError(f"problem {self.name!r}: target_y must be nonempty")
        if isinstance(self.forward, vm.Program) and not self.forward.valid:
            raise ValueError(f"problem {self.name!r}: forward program is invalid")
        if self.verify_cap < 1:
            raise ValueError(f"problem {self.name!r}: verify_cap must be >= 1")

    def apply_forward(self, x: bytes, cap: Optional[int] = None) -> tuple[Optional[bytes], int]:
        """Evaluate f(x) under ``cap`` steps: ``(value or None, steps used)``."""
        cap = self.verify_cap if cap is None else min(cap, self.verify_cap)
        if isinstance(self.forward, Builtin):
            fx = BUILTINS[self.forward.name](x)
            cost = len(x) + len(fx)
            if cost > cap:
                return None, cap
            return fx, cost
        res = vm.execute(self.forward, x, cap)
        if isinstance(res, vm.Halted):
            return res.output, res.steps
        return None, vm.steps_of(res)


def verify(problem: InversionProblem, candidate_x: bytes,
           cap: Optional[int] = None) -> tuple[bool, int]:
    """Accept iff f(candidate_x) equals the target within the cap.

    ``cap`` further restricts ``problem.verify_cap``; searches pass the
    remaining step budget of the candidate being checked.
    """
    fx, steps = problem.apply_forward(bytes(candidate_x), cap)
    return fx is not None and fx == problem.target_y, steps


@dataclass(frozen=True)
class PlantedReference:
    p_star: vm.Program
    t_star: int
    run_steps: int
    verify_steps: int


def plant(problem: InversionProblem, p_star: vm.Program, cap: int = 1 << 16) -> PlantedReference:
    """Run ``p_star`` on the target and derive t* = runtime + verification time."""
    res = vm.execute(p_star, problem.target_y, cap)
    if not isinstance(res, vm.Halted):
        raise ValueError(f"{problem.name}: planted program does not halt within {cap}")
    ok, vsteps = verify(problem, res.output)
    if not ok:
        raise ValueError(f"{problem.name}: planted program {p_star.mnemonic} fails verification")
    return PlantedReference(p_star, res.steps + vsteps, res.steps, vsteps)


def builtin_suite() -> list[tuple[InversionProblem, PlantedReference]]:
    """The desk-scale problem suite, each with a self-checked planted p*."""
    specs = [
        (InversionProblem("identity", Builtin("identity"), bytes([5])), ",."),
        (InversionProblem("increment", Builtin("increment"), bytes([5])), ",-."),
        # y = [5, 0]; the swapped preimage [0, 5] is emitted as 0 then the read byte
        (InversionProblem("echo-swap", Builtin("swap"), bytes([5, 0])), ".,."),
    ]
    return [(prob, plant(prob, vm.from_mnemonic(src))) for prob, src in specs]


def suite_by_name() -> dict[str, tuple[InversionProblem, PlantedReference]]:
    return {prob.name: (prob, ref) for prob, ref in builtin_suite()}
