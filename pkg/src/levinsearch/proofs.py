"""A tiny sound calculus over toy-VM programs, and its budgeted checker.

Formulas talk about I/O equivalence of programs (``Equiv``), step bounds
(``Bound``) and the search goal ``Goal{p, t, p*}``: p computes what p* computes
and t bounds the running time of p.  A proof is a codeword whose body is a
sequence of steps; each step is a 3-bit rule tag followed by operands that are
themselves codewords (program literals, step indices, rewrite positions).

Only soundness matters here.  The rules are deliberately weak so that each can
be validated exhaustively at desk scale:

    AX_REFL      lit p                 |- Equiv{p, p}
    AX_BOUND_SL  0 lit p               |- Bound{Const{|p|}, p}    p straight-line
                 1 lit p lit q         |- Bound{Prog{q}, p}       q READ-free, value(q) >= |p|
    AX_BOUND_RT  lit p                 |- Bound{Runtime{p}, p}
    R_PEEPHOLE   i k     Equiv{a, b}   |- Equiv{a, b - (b[k] b[k+1])}   cancelling pair
    R_SYM        i       Equiv{a, b}   |- Equiv{b, a}
    R_TRANS      i j     Equiv{a, b}, Equiv{b, c} |- Equiv{a, c}
    R_GOAL       i j     Equiv{p*, p}, Bound{t, p} |- Goal{p, t, p*}
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from typing import Optional, Sequence, Union

from . import codec, vm
from .codec import Codeword, MalformedCodeword


class Rule(IntEnum):
    AX_REFL = 0
    AX_BOUND_SL = 1
    AX_BOUND_RT = 2
    R_PEEPHOLE = 3
    R_SYM = 4
    R_TRANS = 5
    R_GOAL = 6


AXIOMS = (Rule.AX_REFL, Rule.AX_BOUND_SL, Rule.AX_BOUND_RT)
N_AXIOMS = len(AXIOMS)

CANCELLING = {(vm.Op.INC, vm.Op.DEC), (vm.Op.DEC, vm.Op.INC),
              (vm.Op.RIGHT, vm.Op.LEFT), (vm.Op.LEFT, vm.Op.RIGHT)}


# -- time bounds and formulas ------------------------------------------------

@dataclass(frozen=True)
class Const:
    n: int

    @property
    def length(self) -> int:
        return len(codec.encode_int(self.n))

    def __str__(self):
        return f"Const{{{self.n}}}"


@dataclass(frozen=True)
class Prog:
    t_p: vm.Program

    @property
    def length(self) -> int:
        return self.t_p.length

    def __str__(self):
        return f"Prog{{{self.t_p.mnemonic}}}"


@dataclass(frozen=True)
class Runtime:
    p: vm.Program

    @property
    def length(self) -> int:
        # evaluating the bound is running p itself; no separate bound program
        return 0

    def __str__(self):
        return "Runtime"


TimeBound = Union[Const, Prog, Runtime]


def bound_value_from_output(output: bytes) -> int:
    """Big-endian natural number; empty output is 0."""
    return int.from_bytes(output, "big") if output else 0


@dataclass(frozen=True)
class Equiv:
    p: vm.Program
    q: vm.Program

    @property
    def size(self) -> int:
        return self.p.length + self.q.length

    def __str__(self):
        return f"Equiv{{{self.p.mnemonic}, {self.q.mnemonic}}}"


@dataclass(frozen=True)
class Bound:
    t: TimeBound
    p: vm.Program

    @property
    def size(self) -> int:
        return self.t.length + self.p.length

    def __str__(self):
        return f"Bound{{{self.t}, {self.p.mnemonic}}}"


@dataclass(frozen=True)
class Goal:
    p: vm.Program
    t: TimeBound
    p_star: vm.Program

    @property
    def size(self) -> int:
        return self.p.length + self.t.length + self.p_star.length

    def __str__(self):
        return f"Goal{{{self.p.mnemonic}, {self.t}, {self.p_star.mnemonic}}}"


Formula = Union[Equiv, Bound, Goal]


@dataclass(frozen=True)
class ProofStep:
    rule: Rule
    operands: tuple = ()

    def encode(self) -> str:
        r = self.rule
        bits = format(int(r), "03b")
        if r in (Rule.AX_REFL, Rule.AX_BOUND_RT):
            (p,) = self.operands
            return bits + p.codeword.bits
        if r is Rule.AX_BOUND_SL:
            p = self.operands[0]
            if len(self.operands) == 1:
                return bits + "0" + p.codeword.bits
            return bits + "1" + p.codeword.bits + self.operands[1].codeword.bits
        return bits + "".join(codec.encode_int(n) for n in self.operands)

    def __str__(self):
        ops = []
        for o in self.operands:
            ops.append(o.mnemonic if isinstance(o, vm.Program) else str(o))
        return f"{self.rule.name}({', '.join(ops)})"


@dataclass
class Proof:
    source: Codeword
    steps: list[ProofStep]
    formulas: list[Formula]

    @property
    def final(self) -> Formula:
        return self.formulas[-1]

    @property
    def length(self) -> int:
        return self.source.total_length

    def listing(self) -> str:
        lines = [f"proof l(f)={self.length} bits={self.source.bits}"]
        for i, (s, f) in enumerate(zip(self.steps, self.formulas)):
            lines.append(f"  {i:3d}  {str(s):<40s} |- {f}")
        return "\n".join(lines)


# -- checking -----------------------------------------------------------------

class StepRejected(Exception):
    def __init__(self, rule, index: int, reason: str):
        self.rule = rule
        self.index = index
        self.reason = reason
        name = rule.name if isinstance(rule, Rule) else str(rule)
        super().__init__(f"step {index} ({name}): {reason}")


def _need(formulas, i, own, kind, rule):
    if i >= own:
        raise StepRejected(rule, own, f"operand {i} does not precede step")
    f = formulas[i]
    if not isinstance(f, kind):
        raise StepRejected(rule, own, f"operand {i} is not an {kind.__name__}")
    return f


def check_step(formulas: Sequence[Formula], step: ProofStep,
               offset: int = 0) -> tuple[Formula, int]:
    """Validate ``step`` against the formulas proved so far.

    Returns the new formula and the checking work it cost: matching an axiom
    schema costs ``N_AXIOMS`` times the formula size, an inference costs a
    scan over the ``offset`` proof bits preceding the step plus the sizes of
    the cited and produced formulas.
    """
    own = len(formulas)
    r = step.rule
    ops = step.operands
    if r is Rule.AX_REFL:
        (p,) = ops
        f = Equiv(p, p)
        return f, N_AXIOMS * f.size
    if r is Rule.AX_BOUND_SL:
        p = ops[0]
        if not p.straight_line or len(p) < 1:
            raise StepRejected(r, own, "program is not a nonempty straight-line program")
        n = len(p)
        if len(ops) == 1:
            f = Bound(Const(n), p)
            return f, N_AXIOMS * f.size
        q = ops[1]
        if not q.straight_line or vm.Op.READ in q.opcodes:
            raise StepRejected(r, own, "bound program must be straight-line without READ")
        out = vm.execute(q, b"", len(q))
        if bound_value_from_output(out.output) < n:
            raise StepRejected(r, own, f"bound program value below {n}")
        f = Bound(Prog(q), p)
        return f, N_AXIOMS * f.size + len(q)
    if r is Rule.AX_BOUND_RT:
        (p,) = ops
        if not p.valid:
            raise StepRejected(r, own, "program is invalid")
        f = Bound(Runtime(p), p)
        return f, N_AXIOMS * f.size

    scan = offset
    if r is Rule.R_PEEPHOLE:
        i, k = ops
        e = _need(formulas, i, own, Equiv, r)
        b = e.q
        if not b.valid:
            raise StepRejected(r, own, "rewritten program is invalid")
        if k + 1 >= len(b):
            raise StepRejected(r, own, f"position {k} out of range")
        if (b.opcodes[k], b.opcodes[k + 1]) not in CANCELLING:
            raise StepRejected(r, own, f"no cancelling pair at position {k}")
        b2 = vm.from_opcodes(b.opcodes[:k] + b.opcodes[k + 2:])
        f = Equiv(e.p, b2)
        return f, scan + e.size + f.size
    if r is Rule.R_SYM:
        (i,) = ops
        e = _need(formulas, i, own, Equiv, r)
        f = Equiv(e.q, e.p)
        return f, scan + e.size + f.size
    if r is Rule.R_TRANS:
        i, j = ops
        e1 = _need(formulas, i, own, Equiv, r)
        e2 = _need(formulas, j, own, Equiv, r)
        if e1.q != e2.p:
            raise StepRejected(r, own, "middle programs differ")
        f = Equiv(e1.p, e2.q)
        return f, scan + e1.size + e2.size + f.size
    if r is Rule.R_GOAL:
        i, j = ops
        e = _need(formulas, i, own, Equiv, r)
        b = _need(formulas, j, own, Bound, r)
        if e.q != b.p:
            raise StepRejected(r, own, "bound is about a different program")
        f = Goal(e.q, b.t, e.p)
        return f, scan + e.size + b.size + f.size
    raise StepRejected(r, own, "unknown rule")


class _NeedMore(Exception):
    pass


class _Reader:
    def __init__(self, bits: str, complete: bool):
        self.bits = bits
        self.pos = 0
        self.complete = complete

    def take(self, n: int) -> str:
        if self.pos + n > len(self.bits):
            raise self._short()
        s = self.bits[self.pos:self.pos + n]
        self.pos += n
        return s

    def codeword_body(self) -> str:
        try:
            body, used = codec.decode(self.bits, self.pos)
        except MalformedCodeword:
            raise self._short() from None
        self.pos += used
        return body

    def number(self) -> int:
        body = self.codeword_body()
        return int(body, 2) if body else 0

    def program(self) -> vm.Program:
        return vm.parse(self.codeword_body())

    def _short(self):
        if self.complete:
            return StepRejected("MALFORMED", -1, "proof body ends inside a step")
        return _NeedMore()


def _read_step(rd: _Reader, index: int) -> ProofStep:
    tag = int(rd.take(3), 2)
    if tag == 7:
        raise StepRejected("TAG7", index, "unused rule tag")
    r = Rule(tag)
    if r in (Rule.AX_REFL, Rule.AX_BOUND_RT):
        return ProofStep(r, (rd.program(),))
    if r is Rule.AX_BOUND_SL:
        form = rd.take(1)
        p = rd.program()
        if form == "0":
            return ProofStep(r, (p,))
        return ProofStep(r, (p, rd.program()))
    if r is Rule.R_SYM:
        return ProofStep(r, (rd.number(),))
    return ProofStep(r, (rd.number(), rd.number()))


@dataclass(frozen=True)
class Verified:
    p: vm.Program
    t_p: TimeBound
    p_star: vm.Program
    proof: Proof = field(compare=False, repr=False)
    work: int = field(compare=False, default=0)

    @property
    def pair(self) -> tuple[vm.Program, TimeBound]:
        return self.p, self.t_p


@dataclass(frozen=True)
class Incomplete:
    materialized: int
    work: int = 0


@dataclass(frozen=True)
class Rejected:
    reason: str
    materialized: int
    work: int = 0


CheckResult = Union[Verified, Incomplete, Rejected]


def check_proof_budgeted(f: Union[Codeword, str], char_budget: int,
                         p_star: Optional[vm.Program] = None) -> CheckResult:
    """Materialize at most ``char_budget`` bits of ``f`` and check what is there.

    ``work`` on every result counts materialized bits plus step-checking work.
    Materialization never exceeds ``l(f)``.  When ``p_star`` is given, a goal
    about a different reference program is rejected.
    """
    if char_budget < 0:
        raise ValueError("char_budget must be >= 0")
    if isinstance(f, str):
        try:
            f = Codeword.from_bits(f)
        except MalformedCodeword as e:
            return Rejected(str(e), min(char_budget, len(f)), min(char_budget, len(f)))
    bits = f.bits
    total = len(bits)
    avail = min(char_budget, total)
    header = len(f.body) + 1
    if avail < header:
        return Incomplete(avail, avail)
    complete = avail == total
    rd = _Reader(bits[header:avail], complete)
    steps: list[ProofStep] = []
    formulas: list[Formula] = []
    work = 0
    if complete and not rd.bits:
        return Rejected("empty step list", avail, avail)
    while rd.pos < len(rd.bits):
        start = rd.pos
        try:
            step = _read_step(rd, len(steps))
            formula, cost = check_step(formulas, step, header + start)
        except _NeedMore:
            return Incomplete(avail, avail + work)
        except StepRejected as e:
            if e.index < 0:
                e = StepRejected(e.rule, len(steps), e.reason)
            used = header + max(rd.pos, start)
            return Rejected(str(e), used, used + work)
        except ValueError as e:
            used = header + rd.pos
            return Rejected(f"step {len(steps)}: {e}", used, used + work)
        work += cost
        steps.append(step)
        formulas.append(formula)
    if not complete:
        return Incomplete(avail, avail + work)
    final = formulas[-1]
    if not isinstance(final, Goal):
        return Rejected(f"final formula is not a goal: {final}", avail, avail + work)
    if p_star is not None and final.p_star != p_star:
        return Rejected("goal concerns a different reference program", avail, avail + work)
    proof = Proof(f, steps, formulas)
    return Verified(final.p, final.t, final.p_star, proof, avail + work)


def check_proof(f: Union[Codeword, str], p_star: Optional[vm.Program] = None) -> CheckResult:
    """Unbudgeted check (the whole codeword is materialized)."""
    n = f.total_length if isinstance(f, Codeword) else len(f)
    return check_proof_budgeted(f, n, p_star)


def decode_proof(f: Union[Codeword, str]) -> Proof:
    """Parse and check a full proof regardless of its final formula."""
    if isinstance(f, str):
        f = Codeword.from_bits(f)
    rd = _Reader(f.body, True)
    steps: list[ProofStep] = []
    formulas: list[Formula] = []
    while rd.pos < len(rd.bits):
        step = _read_step(rd, len(steps))
        formula, _ = check_step(formulas, step)
        steps.append(step)
        formulas.append(formula)
    if not steps:
        raise StepRejected("EMPTY", 0, "empty step list")
    return Proof(f, steps, formulas)


# -- construction -------------------------------------------------------------

class RewriteError(ValueError):
    def __init__(self, index: int, reason: str):
        self.index = index
        super().__init__(f"rewrite {index}: {reason}")


def encode_steps(steps: Sequence[ProofStep]) -> Codeword:
    return Codeword("".join(s.encode() for s in steps))


BoundForm = Union[str, vm.Program]


def build_goal_proof(p_star: Union[vm.Program, Codeword], rewrites: Sequence[int],
                     bound_form: BoundForm = "const") -> Proof:
    """Canonical proof of ``Goal{p, t, p_star}`` where p is p* after ``rewrites``.

    Each rewrite is the position of a cancelling opcode pair to delete.
    ``bound_form`` is ``"const"``, ``"runtime"`` or a READ-free straight-line
    program whose big-endian output bounds the step count.
    """
    if isinstance(p_star, Codeword):
        p_star = vm.parse(p_star.body)
    steps = [ProofStep(Rule.AX_REFL, (p_star,))]
    formulas: list[Formula] = [Equiv(p_star, p_star)]
    for n, k in enumerate(rewrites):
        step = ProofStep(Rule.R_PEEPHOLE, (len(formulas) - 1, k))
        try:
            f, _ = check_step(formulas, step)
        except StepRejected as e:
            raise RewriteError(n, e.reason) from None
        steps.append(step)
        formulas.append(f)
    equiv_index = len(formulas) - 1
    p = formulas[-1].q
    if bound_form == "const":
        bstep = ProofStep(Rule.AX_BOUND_SL, (p,))
    elif bound_form == "runtime":
        bstep = ProofStep(Rule.AX_BOUND_RT, (p,))
    elif isinstance(bound_form, vm.Program):
        bstep = ProofStep(Rule.AX_BOUND_SL, (p, bound_form))
    else:
        raise ValueError(f"unknown bound form {bound_form!r}")
    f, _ = check_step(formulas, bstep)
    steps.append(bstep)
    formulas.append(f)
    gstep = ProofStep(Rule.R_GOAL, (equiv_index, len(formulas) - 1))
    f, _ = check_step(formulas, gstep)
    steps.append(gstep)
    formulas.append(f)
    return Proof(encode_steps(steps), steps, formulas)


def enumerate_proofs(max_length: int):
    """Every candidate proof codeword up to ``max_length`` bits, in codec order."""
    return codec.enumerate_codewords(max_length)
