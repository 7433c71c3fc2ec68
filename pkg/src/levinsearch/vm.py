"""Deterministic step-counted toy machine.

Programs are bodies of 3-bit opcodes with brainfuck-like semantics over a
sparse tape of 8-bit wrapping cells.  Every executed opcode costs exactly one
step; reaching the end of the opcode list halts at no cost.  Execution can be
suspended when a step budget runs out and resumed later from the same
:class:`MachineState`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from typing import Union

from .codec import Codeword

MACHINE_ID = "toyvm-8bit-v1"


class Op(IntEnum):
    RIGHT = 0
    LEFT = 1
    INC = 2
    DEC = 3
    READ = 4
    WRITE = 5
    JZ = 6
    JNZ = 7


MNEMONIC = {Op.RIGHT: ">", Op.LEFT: "<", Op.INC: "+", Op.DEC: "-",
            Op.READ: ",", Op.WRITE: ".", Op.JZ: "[", Op.JNZ: "]"}
_FROM_MNEMONIC = {v: k for k, v in MNEMONIC.items()}


@dataclass(frozen=True)
class Program:
    body: str
    opcodes: tuple[Op, ...]
    valid: bool
    # jump target per opcode index; only meaningful for JZ/JNZ
    jumps: tuple[int, ...] = field(repr=False, default=())

    @property
    def codeword(self) -> Codeword:
        return Codeword(self.body)

    @property
    def length(self) -> int:
        """l(p): total codeword length."""
        return 2 * len(self.body) + 1

    @property
    def straight_line(self) -> bool:
        return self.valid and Op.JZ not in self.opcodes and Op.JNZ not in self.opcodes

    @property
    def mnemonic(self) -> str:
        if not self.valid:
            return "<invalid:" + self.body + ">"
        return "".join(MNEMONIC[o] for o in self.opcodes)

    def __len__(self) -> int:
        return len(self.opcodes)


def parse(body: str) -> Program:
    """Decode a codeword body into a program; bad bodies give ``valid=False``."""
    if isinstance(body, Codeword):
        body = body.body
    if len(body) % 3:
        return Program(body, (), False)
    ops = tuple(Op(int(body[i:i + 3], 2)) for i in range(0, len(body), 3))
    jumps = [0] * len(ops)
    stack = []
    for i, op in enumerate(ops):
        if op is Op.JZ:
            stack.append(i)
        elif op is Op.JNZ:
            if not stack:
                return Program(body, ops, False)
            j = stack.pop()
            jumps[i] = j
            jumps[j] = i
    if stack:
        return Program(body, ops, False)
    return Program(body, ops, True, tuple(jumps))


def from_opcodes(ops) -> Program:
    return parse("".join(format(int(o), "03b") for o in ops))


def from_mnemonic(text: str) -> Program:
    try:
        ops = [_FROM_MNEMONIC[c] for c in text if not c.isspace()]
    except KeyError as e:
        raise ValueError(f"unknown mnemonic {e.args[0]!r}") from None
    return from_opcodes(ops)


@dataclass
class MachineState:
    program: Program
    input: bytes = b""
    instruction_index: int = 0
    tape: dict[int, int] = field(default_factory=dict)
    head: int = 0
    input_cursor: int = 0
    output: bytearray = field(default_factory=bytearray)
    steps_executed: int = 0

    def copy(self) -> "MachineState":
        return MachineState(self.program, self.input, self.instruction_index,
                            dict(self.tape), self.head, self.input_cursor,
                            bytearray(self.output), self.steps_executed)

    @property
    def halted(self) -> bool:
        if not self.program.valid:
            return self.steps_executed >= 1
        return self.instruction_index >= len(self.program.opcodes)


@dataclass(frozen=True)
class Halted:
    output: bytes
    steps: int


@dataclass(frozen=True)
class OutOfBudget:
    state: MachineState


@dataclass(frozen=True)
class InvalidProgram:
    steps: int = 1
    output: bytes = b""


RunOutcome = Union[Halted, OutOfBudget, InvalidProgram]


def start(program: Program, x: bytes = b"") -> MachineState:
    return MachineState(program, bytes(x))


def run(state: MachineState, budget: int) -> RunOutcome:
    """Advance ``state`` by at most ``budget`` steps, in place."""
    if budget < 0:
        raise ValueError("budget must be >= 0")
    prog = state.program
    if not prog.valid:
        if state.steps_executed == 0 and budget >= 1:
            state.steps_executed = 1
        if state.steps_executed >= 1:
            return InvalidProgram()
        return OutOfBudget(state)

    ops = prog.opcodes
    jumps = prog.jumps
    n = len(ops)
    ip = state.instruction_index
    tape = state.tape
    head = state.head
    inp = state.input
    cur = state.input_cursor
    out = state.output
    left = budget
    while ip < n and left > 0:
        op = ops[ip]
        left -= 1
        if op == 2:
            tape[head] = (tape.get(head, 0) + 1) & 0xFF
        elif op == 3:
            tape[head] = (tape.get(head, 0) - 1) & 0xFF
        elif op == 0:
            head += 1
        elif op == 1:
            head -= 1
        elif op == 4:
            if cur < len(inp):
                tape[head] = inp[cur]
                cur += 1
            else:
                tape[head] = 0
        elif op == 5:
            out.append(tape.get(head, 0))
        elif op == 6:
            if not tape.get(head, 0):
                ip = jumps[ip]
        else:
            if tape.get(head, 0):
                ip = jumps[ip]
        ip += 1
    state.instruction_index = ip
    state.head = head
    state.input_cursor = cur
    state.steps_executed += budget - left
    if ip >= n:
        return Halted(bytes(out), state.steps_executed)
    return OutOfBudget(state)


def execute(program: Program, x: bytes, budget: int) -> RunOutcome:
    """Fresh run of ``program`` on ``x``."""
    return run(start(program, x), budget)


class NonTermination(Exception):
    """The program did not halt within the granted cap."""


def behavior(program: Program, x: bytes, cap: int) -> bytes:
    """Output of ``program`` on ``x`` if it halts within ``cap`` steps."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    res = execute(program, x, cap)
    if isinstance(res, OutOfBudget):
        raise NonTermination(f"{program.mnemonic} exceeded {cap} steps")
    return res.output


def steps_of(outcome: RunOutcome) -> int:
    if isinstance(outcome, OutOfBudget):
        return outcome.state.steps_executed
    return outcome.steps
