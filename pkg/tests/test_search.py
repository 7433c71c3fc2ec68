import dataclasses

import pytest

from levinsearch import fixtures, proofs, vm
from levinsearch.codec import count_codewords
from levinsearch.problems import Builtin, InversionProblem, suite_by_name, verify
from levinsearch.search import (BudgetExhausted, SearchConfig, hutter_search,
                                levin_parallel, levin_sequential, modified_levin)
from levinsearch.search import hutter as hutter_mod
from levinsearch.search.levin import phase_candidates
from levinsearch.search.space import proof_space

P = vm.from_mnemonic
SUITE = suite_by_name()


@pytest.fixture(scope="module")
def levin_runs():
    out = {}
    for name, (prob, ref) in SUITE.items():
        out[name] = (levin_sequential(prob, SearchConfig(), ref),
                     levin_parallel(prob, SearchConfig(), ref))
    return out


def test_phase_candidates_small():
    assert phase_candidates(2) == [("", 1)]
    assert phase_candidates(4) == [("", 2)]
    assert phase_candidates(8) == [("", 4), ("0", 1), ("1", 1)]
    # every codeword of length <= log2 t gets a nonzero budget
    assert len(phase_candidates(1 << 13)) == count_codewords(13)


def test_identity_winner(levin_runs):
    seq, _ = levin_runs["identity"]
    assert seq.winner.mnemonic == ",." and seq.winner.length == 13
    assert seq.T_stop == 1 << 15
    assert seq.winner_output == b"\x05"


def test_increment_winner(levin_runs):
    seq, _ = levin_runs["increment"]
    assert seq.winner.mnemonic == ",-."
    assert seq.winner_output == b"\x04"


@pytest.mark.parametrize("name", sorted(SUITE))
def test_phase_budget_never_exceeds_t(levin_runs, name):
    for trace in levin_runs[name]:
        for ph in trace.phases:
            assert ph.granted <= ph.t
            assert ph.consumed <= ph.granted
            assert all(used <= budget for _, budget, used, _ in ph.candidates)


@pytest.mark.parametrize("name", sorted(SUITE))
def test_geometric_identity(levin_runs, name):
    seq, _ = levin_runs[name]
    assert [ph.t for ph in seq.phases] == [2 << i for i in range(len(seq.phases))]
    assert sum(ph.t for ph in seq.phases) == 2 * seq.T_stop - 2


@pytest.mark.parametrize("name", sorted(SUITE))
def test_parallel_agrees_with_sequential(levin_runs, name):
    seq, par = levin_runs[name]
    assert (seq.winner, seq.T_stop) == (par.winner, par.T_stop)


def test_parallel_agreement_across_quanta():
    prob, ref = SUITE["increment"]
    seq = levin_sequential(prob)
    for q in (1, 3, 64):
        par = levin_parallel(prob, SearchConfig(scheduler_quantum=q))
        assert (par.winner, par.T_stop) == (seq.winner, seq.T_stop)


def test_winner_verifies(levin_runs):
    for name, (seq, par) in levin_runs.items():
        prob = SUITE[name][0]
        assert verify(prob, seq.winner_output)[0]
        assert verify(prob, par.winner_output)[0]


def test_levin_bound_reported(levin_runs):
    seq, _ = levin_runs["identity"]
    br = seq.bound_report
    assert (br.l_pstar, br.t_star) == (13, 4)
    assert br.levin_bound == (1 << 14) * 4
    assert seq.total_steps < br.levin_bound


def test_budget_exhausted():
    prob, _ = SUITE["increment"]
    with pytest.raises(BudgetExhausted) as e:
        levin_sequential(prob, SearchConfig(t_max=1 << 10))
    assert e.value.trace.phases[-1].t == 1 << 10


def test_unsolvable_problem_exhausts():
    # two output bytes need a longer program than t_max allows
    prob = InversionProblem("two-bytes", Builtin("identity"), b"\x07\x07")
    with pytest.raises(BudgetExhausted):
        levin_parallel(prob, SearchConfig(t_max=1 << 12))


def test_config_validation():
    for bad in (dict(t_initial=1), dict(phase_factor=1), dict(t_max=1),
                dict(scheduler_quantum=0), dict(cap_combine="max")):
        with pytest.raises(ValueError):
            SearchConfig(**bad)


# --- modified search ------------------------------------------------------

def test_modified_identity_fixture():
    fx = fixtures.by_problem()["identity"]
    trace = modified_levin(fx.resolve(), fx.p_star, fx.config())
    assert trace.winner.mnemonic == ",."
    assert trace.extra["t_fast"] == 2
    assert trace.winner_output == b"\x05"
    assert trace.bound_report.l_fstar == fx.proof().length


@pytest.mark.parametrize("fx", fixtures.FIXTURES + [fixtures.RUNTIME_FIXTURE],
                         ids=lambda f: f.name)
def test_modified_single_execution(fx):
    trace = modified_levin(fx.resolve(), fx.p_star, fx.config())
    first_verified = None
    for i, ph in enumerate(trace.phases):
        assert len(ph.executed) <= 1
        if first_verified is None and any(s.startswith("verified") for *_, s in ph.candidates):
            first_verified = i
        if first_verified is None:
            assert ph.executed == []
    assert first_verified is not None
    assert verify(fx.resolve(), trace.winner_output)[0]


def test_modified_cap_t_only_same_winner():
    fx = fixtures.by_problem()["increment"]
    a = modified_levin(fx.resolve(), fx.p_star, fx.config())
    b = modified_levin(fx.resolve(), fx.p_star, fx.config(cap_combine="t-only"))
    assert (a.winner, a.T_stop) == (b.winner, b.T_stop)


def test_modified_empty_space_exhausts():
    prob, _ = SUITE["identity"]
    with pytest.raises(BudgetExhausted):
        modified_levin(prob, P(",+-."), SearchConfig(t_max=1 << 16))


def test_modified_rejects_bad_reference():
    prob, _ = SUITE["identity"]
    with pytest.raises(ValueError):
        modified_levin(prob, P(",-."), SearchConfig())


def test_proof_space_ordering_and_dedup():
    fx = fixtures.by_problem()["identity"]
    cfg = SearchConfig(proof_max_length=7, seeded_proofs=(fx.proof().source,) * 2)
    space = proof_space(cfg)
    assert len(space) == count_codewords(7) + 1
    keys = [c.sort_key() for c in space]
    assert keys == sorted(keys)


# --- hutter search --------------------------------------------------------

def test_hutter_shares_per_epoch():
    prob, _ = SUITE["identity"]
    slow = P(",>++++++++[-]<.")
    for q in (1, 2, 5):
        trace = hutter_search(prob, slow, SearchConfig(scheduler_quantum=q, proof_max_length=9))
        assert trace.extra["epochs"]
        assert all(e == (q, q, 8 * q) for e in trace.extra["epochs"])
        epochs = len(trace.extra["epochs"])
        partial = trace.extra["partial_epoch"]
        assert trace.total_steps == 10 * q * epochs + (sum(partial) if partial else 0)
        assert verify(prob, trace.winner_output)[0]
        assert trace.extra["p_star"] == slow.mnemonic


def test_hutter_identity_fixture():
    fx = fixtures.by_problem()["identity"]
    trace = hutter_search(fx.resolve(), fx.p_star, fx.config())
    assert trace.extra["epochs"] == [(1, 1, 8)]
    assert trace.total_steps == 14
    assert verify(fx.resolve(), trace.winner_output)[0]


def test_hutter_empty_proof_space_runs_reference():
    prob, _ = SUITE["identity"]
    trace = hutter_search(prob, P(",+-."), SearchConfig())
    assert trace.winner == P(",+-.")
    assert trace.extra["L"] == [] and trace.extra["t_fast"] is None


def test_hutter_budget_exhausted():
    prob, _ = SUITE["identity"]
    slow = P(",>++++++++[-]<.")
    with pytest.raises(BudgetExhausted):
        hutter_search(prob, slow, SearchConfig(t_max=10))


def _verified(src, rewrites, form="const"):
    p_star = P(src)
    proof = proofs.build_goal_proof(p_star, rewrites, form)
    return proof.source, proofs.check_proof(proof.source, p_star)


def test_hutter_b_picks_smallest_bound():
    prob, _ = SUITE["identity"]
    sh = hutter_mod._Shared(p_fast=P(",+-."))
    f1, v1 = _verified(",+-.", [], "const")   # bound 4 on p*
    f2, v2 = _verified(",+-.", [1], "const")  # bound 2 on ",."
    sh.pending = [hutter_mod._Eval(f1, v1, 0), hutter_mod._Eval(f2, v2, 1)]
    b = hutter_mod._process_b(prob.target_y, sh)
    for _ in range(4):
        next(b)
    assert sh.pending == []
    assert sh.p_fast == P(",.") and sh.t_fast == 2
    assert sh.f_fast == f2


def test_hutter_b_stride_share():
    # a runtime bound is evaluated one step at a time; the cheaper pair
    # (shorter p) is stepped more often than the longer one
    prob = InversionProblem("id", Builtin("identity"), b"\x05")
    sh = hutter_mod._Shared(p_fast=P(",+-."))
    fa, va = _verified(",.", [], "runtime")
    fb, vb = _verified(",+-.", [], "runtime")
    ea, eb = hutter_mod._Eval(fa, va, 0), hutter_mod._Eval(fb, vb, 1)
    assert eb.stride == ea.stride << 12
    sh.pending = [ea, eb]
    b = hutter_mod._process_b(prob.target_y, sh)
    next(b)
    next(b)
    assert ea.spent == 2 and eb.spent == 0
    assert sh.p_fast == P(",.") and sh.t_fast == 2


def test_hutter_c_restarts_on_new_p_fast():
    prob, _ = SUITE["identity"]
    slow = P(",>++++++++[-]<.")
    sh = hutter_mod._Shared(p_fast=slow)
    c = hutter_mod._process_c(prob, sh)
    for _ in range(7):  # rounds k = 1, 2 run out, k = 4 is in progress
        next(c)
    assert sh.k == 4 and not sh.done
    sh.p_fast, sh.version = P(",."), sh.version + 1
    for _ in range(10):
        try:
            next(c)
        except StopIteration:
            break
    assert sh.done and sh.output == b"\x05"
    assert sh.k == 4  # the switch restarted at the current k


def test_config_replace_keeps_seeds():
    fx = fixtures.by_problem()["identity"]
    cfg = dataclasses.replace(fx.config(), t_max=1 << 30)
    assert cfg.seeded_proofs == (fx.proof().source,)
