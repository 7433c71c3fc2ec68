import pytest

from levinsearch import vm
from levinsearch.codec import enumerate_codewords
from levinsearch.problems import (Builtin, InversionProblem, builtin_suite,
                                  plant, suite_by_name, verify)


def test_verify_identity():
    prob = InversionProblem("id", Builtin("identity"), b"\x05")
    assert verify(prob, b"\x05") == (True, 2)


def test_verify_increment():
    prob = InversionProblem("inc", Builtin("increment"), b"\x05")
    assert verify(prob, b"\x04")[0]
    assert not verify(prob, b"\x05")[0]


def test_verify_cap_rejects():
    prob = InversionProblem("id", Builtin("identity"), b"\x05")
    assert verify(prob, b"\x05", cap=1) == (False, 1)


def test_vm_forward_costs_exact_steps():
    # forward map written for the VM: add one to the first byte
    prob = InversionProblem("vm-inc", vm.from_mnemonic(",+."), b"\x05")
    assert verify(prob, b"\x04") == (True, 3)
    assert verify(prob, b"\x05") == (False, 3)


def test_vm_forward_over_cap_rejected():
    prob = InversionProblem("slow", vm.from_mnemonic("+[]"), b"\x05", verify_cap=10)
    assert verify(prob, b"") == (False, 10)


def test_problem_validation():
    with pytest.raises(ValueError):
        InversionProblem("empty", Builtin("identity"), b"")
    with pytest.raises(ValueError):
        InversionProblem("bad", vm.parse("110"), b"\x01")
    with pytest.raises(ValueError):
        Builtin("nope")


def test_suite_contents():
    suite = suite_by_name()
    assert {"identity", "increment", "echo-swap"} <= set(suite)
    ident = suite["identity"][1]
    assert ident.p_star.mnemonic == ",." and ident.p_star.length == 13
    inc = suite["increment"][1]
    assert inc.p_star.mnemonic == ",-." and inc.run_steps == 3
    # t* = runtime + verification, 1 step per byte in and out
    assert ident.t_star == 2 + 2
    assert inc.t_star == 3 + 2
    assert suite["echo-swap"][1].t_star == 3 + 4


def test_every_planted_reference_verifies():
    for prob, ref in builtin_suite():
        res = vm.execute(ref.p_star, prob.target_y, 100)
        assert verify(prob, res.output)[0]


def test_plant_rejects_wrong_program():
    prob = InversionProblem("id", Builtin("identity"), b"\x05")
    with pytest.raises(ValueError):
        plant(prob, vm.from_mnemonic(",-."))


@pytest.mark.parametrize("name", ["identity", "increment", "echo-swap"])
def test_planted_optimality_witness(name):
    # no strictly shorter codeword solves the problem within t* steps
    prob, ref = suite_by_name()[name]
    for cw in enumerate_codewords(ref.p_star.length - 1):
        res = vm.execute(vm.parse(cw.body), prob.target_y, ref.t_star)
        if isinstance(res, vm.OutOfBudget):
            continue
        assert not verify(prob, res.output)[0], cw.bits
