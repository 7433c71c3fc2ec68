"""Seeded proof fixtures for the proof-driven searches.

Each fixture pairs a suite problem with a padded reference program p* (the
planted solution plus one cancelling opcode pair) and the canonical proof that
strips the pair and bounds the result.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import proofs, vm
from .problems import InversionProblem, suite_by_name
from .search.types import SearchConfig


@dataclass(frozen=True)
class Fixture:
    name: str
    problem: str
    p_star_src: str
    rewrites: tuple[int, ...]
    bound: str = "const"  # "const", "runtime" or "prog:<mnemonic>"

    @property
    def p_star(self) -> vm.Program:
        return vm.from_mnemonic(self.p_star_src)

    def proof(self) -> proofs.Proof:
        form = self.bound
        if form.startswith("prog:"):
            form = vm.from_mnemonic(form[5:])
        return proofs.build_goal_proof(self.p_star, self.rewrites, form)

    def resolve(self) -> InversionProblem:
        return suite_by_name()[self.problem][0]

    def config(self, **kw) -> SearchConfig:
        kw.setdefault("t_max", 1 << 400)
        return SearchConfig(seeded_proofs=(self.proof().source,), **kw)


FIXTURES = [
    Fixture("identity", "identity", ",+-.", (1,)),
    Fixture("increment", "increment", ",-+-.", (1,)),
    Fixture("echo-swap", "echo-swap", ".,><.", (2,)),
    Fixture("identity-prog", "identity", ",+-.", (1,), "prog:++."),
]

RUNTIME_FIXTURE = Fixture("identity-runtime", "identity", ",+-.", (1,), "runtime")


def by_problem() -> dict[str, Fixture]:
    """The default seeded fixture for each suite problem."""
    out = {}
    for fx in FIXTURES:
        out.setdefault(fx.problem, fx)
    return out
