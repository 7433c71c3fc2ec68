from .hutter import hutter_search
from .levin import levin_parallel, levin_sequential, phase_candidates
from .modified import modified_levin
from .space import proof_space
from .types import (BoundReport, BudgetExhausted, Phase, SearchConfig,
                    SearchTrace, UnsoundVerification)

__all__ = [
    "BoundReport", "BudgetExhausted", "Phase", "SearchConfig", "SearchTrace",
    "UnsoundVerification", "hutter_search", "levin_parallel", "levin_sequential",
    "modified_levin", "phase_candidates", "proof_space",
]
