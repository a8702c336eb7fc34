import math

import pytest
from hypothesis import given, strategies as st

from shankslift import selmer
from shankslift.fixtures import fixture_load
from shankslift.numfield.field import build_field
from shankslift.numfield.ideals import factor_rational_prime
from shankslift.selmer import (COMPUTED, FIXTURE, GlobalLedger, IncompleteLedger, LocalConditionSummary,
                               WrongCharacteristic, add_auxiliary, aux_prime_scan, balance_status, c3_prime_test,
                               is_balanced, kernel_ledger, minimal_ledger, nice_prime_test, selmer_rank_bound_7489,
                               wiles_difference)
from shankslift.shanks import parameter_for_ell

F349 = build_field(parameter_for_ell(349))
WILD = fixture_load("wild_place_3")


def test_minimal_ledger_is_balanced():
    led = minimal_ledger(7489, WILD)
    assert [(e.label, e.dim_N, e.dim_h0) for e in led.entries] == [("3", 4, 1), ("inf", 0, 3), ("7489", 1, 1)]
    assert wiles_difference(led) == 0 and is_balanced(led)
    assert balance_status(led) == "consistent"  # the wild entry is transcribed


def test_empty_ledger():
    assert wiles_difference(GlobalLedger()) == 0
    assert balance_status(GlobalLedger()) == "verified"


def test_required_places():
    led = GlobalLedger(entries=(LocalConditionSummary("inf", 0, 3, 0),), p=3)
    with pytest.raises(IncompleteLedger):
        wiles_difference(led)
    with pytest.raises(IncompleteLedger):
        wiles_difference(GlobalLedger(entries=(LocalConditionSummary("x", None, 1, 0),)))


entry_st = st.builds(LocalConditionSummary, st.text("abc", min_size=1, max_size=3), st.integers(0, 5),
                     st.integers(0, 5), st.integers(0, 5))


@given(st.lists(entry_st, max_size=5), entry_st)
def test_additivity(entries, extra):
    led = GlobalLedger(tuple(entries))
    assert wiles_difference(led.with_entry(extra)) - wiles_difference(led) == extra.dim_N - extra.dim_h0


def test_auxiliary_entries_preserve_balance():
    led = minimal_ledger(7489, WILD)
    for kind, v, p in (("c3", 19, 3), ("nice", 2, 5), ("c3", 7, 3), ("nice", 3, 7)):
        led = add_auxiliary(led, kind, v, p)
        assert wiles_difference(led) == 0
    assert balance_status(led) == "consistent"


def test_provenance_not_upgraded():
    led = minimal_ledger(7489, WILD)
    assert led.entries[0].provenance == FIXTURE
    assert all(e.provenance == COMPUTED for e in led.entries[1:])


def test_kernel_ledger():
    w = LocalConditionSummary("w", 1, 1, 1, h1=2)
    assert kernel_ledger(None, w, {"ker_S": 1, "ker_S_dual": 1, "ker_w_dual": 0}) == 1
    assert kernel_ledger(None, w, {"ker_S": 0, "ker_S_dual": 0, "ker_w_dual": 0}) == 1
    flat = LocalConditionSummary("w", 1, 1, 1, h1=1)
    assert kernel_ledger(None, flat, {"ker_S": 1, "ker_S_dual": 1, "ker_w_dual": 1}) == 1
    base = minimal_ledger(7489, WILD)
    assert kernel_ledger(base, w, {"ker_S": 1, "ker_S_dual": 1, "ker_w_dual": 0}) == 1
    with pytest.raises(IncompleteLedger):
        kernel_ledger(None, w, {"ker_S": 1, "ker_S_dual": None, "ker_w_dual": 0})


def test_rank_bound():
    assert selmer_rank_bound_7489(fixture_load("selmerone").payload).value == 1
    assert selmer_rank_bound_7489({"dim_H1_T": 0, "frattini_gens_over_3_only": 5}).value == 0
    res = selmer_rank_bound_7489({"dim_H1_T": 2, "frattini_gens_over_3_only": 6})
    assert res.value == 2 and res.warning
    with pytest.raises(selmer.FixtureMissing):
        selmer_rank_bound_7489({})


def test_nice_prime_test():
    assert nice_prime_test(2, 5, (2, 1), False)
    assert nice_prime_test(2, 5, (1, 2), False)
    assert not nice_prime_test(6, 5, (1, 1), False)
    assert not nice_prime_test(2, 5, (2, 1), True)
    with pytest.raises(WrongCharacteristic):
        nice_prime_test(2, 3, (2, 1), False)


def test_c3_prime_test_against_dedekind():
    for w in (5, 7, 11, 13, 19, 43, 193, 271, 331, 367, 373):
        rep = c3_prime_test(w, F349)
        inert = len(factor_rational_prime(F349, w)) == 1
        assert rep.passed == (inert and w % 3 == 1)
    assert c3_prime_test(19, F349).passed
    assert not c3_prime_test(5, F349).passed  # 5 = 2 mod 3


def test_scan_contains_paper_primes():
    paper = fixture_load("levelraising_349")["aux_primes"]
    scan = aux_prime_scan(F349, 400, paper)
    assert set(paper) <= set(scan.primes)
    assert all(scan.paper_status().values())
    assert aux_prime_scan(F349, 2).primes == []


def test_scan_density_is_one_third():
    # f is irreducible mod w for 2/3 of primes (Frobenius of order 3 in Z/3);
    # independent of that, w = 1 mod 3 for half of them.
    scan = aux_prime_scan(F349, 30000)
    assert math.isclose(scan.fraction, 1 / 3, abs_tol=0.05)
