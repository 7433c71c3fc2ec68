from __future__ import annotations

from .. import vm
from ..codec import Codeword, enumerate_codewords
from ..problems import InversionProblem, verify
from .types import SearchConfig

REFERENCE_CAP = 1 << 16


def proof_space(cfg: SearchConfig) -> list[Codeword]:
    """Enumerated proof codewords plus seeds, deduplicated, in codec order."""
    space = set(cfg.seeded_proofs)
    if cfg.proof_max_length >= 1:
        space.update(enumerate_codewords(cfg.proof_max_length))
    return sorted(space, key=Codeword.sort_key)


def check_reference(problem: InversionProblem, p_star: vm.Program) -> None:
    if not p_star.valid:
        raise ValueError(f"reference program {p_star.body!r} is invalid")
    res = vm.execute(p_star, problem.target_y, REFERENCE_CAP)
    if not isinstance(res, vm.Halted) or not verify(problem, res.output)[0]:
        raise ValueError(f"reference program {p_star.mnemonic} does not solve {problem.name}")
