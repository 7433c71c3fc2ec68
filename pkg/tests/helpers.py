"""Independent soundness oracle: exhaustive I/O on every input of length <= 2."""

from functools import lru_cache

from levinsearch import proofs, vm

CAP = 4096

ALL_INPUTS = [b""] + [bytes([a]) for a in range(256)] + [
    bytes([a, b]) for a in range(256) for b in range(256)]


@lru_cache(maxsize=None)
def io_table(body: str) -> tuple:
    """(output or None, steps or None) per input, for the program with this body."""
    p = vm.parse(body)
    rows = []
    for x in ALL_INPUTS:
        res = vm.execute(p, x, CAP)
        if isinstance(res, vm.OutOfBudget):
            rows.append((None, None))
        else:
            rows.append((res.output, res.steps))
    return tuple(rows)


def io_equivalent(p: vm.Program, q: vm.Program) -> bool:
    a, b = io_table(p.body), io_table(q.body)
    return all(x[0] == y[0] for x, y in zip(a, b))


def bound_holds(p: vm.Program, t_p) -> bool:
    rows = io_table(p.body)
    if isinstance(t_p, proofs.Runtime):
        return t_p.p == p
    for x, (out, steps) in zip(ALL_INPUTS, rows):
        if steps is None:
            return False
        if isinstance(t_p, proofs.Const):
            limit = t_p.n
        else:
            res = vm.execute(t_p.t_p, x, CAP)
            if not isinstance(res, vm.Halted):
                return False
            limit = proofs.bound_value_from_output(res.output)
        if limit < steps:
            return False
    return True


def sound(v: proofs.Verified) -> bool:
    return io_equivalent(v.p, v.p_star) and bound_holds(v.p, v.t_p)
