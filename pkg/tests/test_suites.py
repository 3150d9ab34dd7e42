import math

import pytest

from oracles import NaiveField, literal_linear_search
from paleylab.characters import gauss_sum, make_character
from paleylab.errors import BruteForceCapExceeded, CaseNotApplicable
from paleylab.field import field_of_order
from paleylab.suites import (
    _epsilon_exponent,
    clique_replay,
    linear_search,
    valid_d,
    verify_fourier,
    verify_gauss_formulas,
    verify_inequalities,
    verify_main,
    verify_peisert,
)


def test_valid_d():
    assert valid_d(9) == [2, 4]
    assert valid_d(25) == [2, 3, 4, 6, 12]
    assert valid_d(27) == [13]


def test_fourier_q9_d4():
    rep = verify_fourier(9, 4)
    assert rep.ok
    lin = next(c for c in rep.cases if c.tag == "linear-uniqueness")
    assert lin.inputs["space"] == 7 and lin.computed == [[0, 1, 2]]
    assert rep.notes[0]["epsilon"] == "-1"


@pytest.mark.parametrize("q,d", [(9, 2), (9, 4), (25, 2), (25, 3), (25, 6)])
def test_linear_search_matches_literal_enumeration(q, d):
    F = field_of_order(q)
    r = math.isqrt(q)
    chi = make_character(F, d)
    e = _epsilon_exponent(gauss_sum(chi).normalized(), d)
    constraints = [c for c in range(1, q) if int(chi.exponents[c]) != e]
    fast, _ = linear_search(F, constraints, r)
    slow = literal_linear_search(NaiveField(F.p, F.modulus, F.generator), d, e, r)
    assert fast == slow == [tuple(sorted(F.subfield(F.s // 2)))]


def test_linear_search_without_constraints_lists_everything():
    F = field_of_order(9)
    sols, _ = linear_search(F, [], 3)
    assert sols == [(0, 1, v) for v in range(2, 9)]


def test_fourier_preconditions():
    with pytest.raises(BruteForceCapExceeded):
        verify_fourier(81, 5)
    assert verify_fourier(81, 5, search=False).ok
    with pytest.raises(CaseNotApplicable):
        verify_fourier(81, 4, search=False)


def test_main_small_grid_and_determinism():
    a = verify_main([9, 25, 49])
    b = verify_main([9, 25, 49], jobs=2)
    assert a.ok and a.to_json() == b.to_json()
    omegas = {(c.inputs["q"], c.inputs["d"]): c.computed for c in a.cases if c.tag == "clique-number-criterion"}
    assert omegas[(9, 4)] == 3 and omegas[(25, 3)] == 5 and omegas[(49, 3)] <= 6 and omegas[(25, 12)] <= 4


def test_gauss_small_bound():
    rep = verify_gauss_formulas(49)
    assert rep.ok
    by = {(c.inputs["q"], c.inputs["d"], c.inputs["j"], c.tag): c.computed for c in rep.cases if "j" in c.inputs}
    assert by[(25, 3, 1, "gauss-stick")] == "5"
    assert by[(49, 4, 1, "gauss-stick")] == "7"
    assert by[(49, 4, 1, "gauss-gauss_peisert")] == "7"
    assert by[(9, 4, 1, "gauss-stick")] == "-3"
    assert any(n["q"] == 9 and n["d"] == 8 for n in rep.notes)
    assert rep.table[0] == ["p", "s", "d", "j", "value", "formula", "match"]


def test_clique_replay_equality_at_q9():
    ok, lhs, rhs = clique_replay(9, 3)
    assert ok and lhs == rhs == 36
    assert not clique_replay(9, 4)[0]


def test_inequalities_small_and_reproducible():
    a = verify_inequalities(trials=30, seed=5)
    b = verify_inequalities(trials=30, seed=5)
    assert a.ok and a.to_json() == b.to_json()
    assert a.totals("parseval") == (30, 30)
    assert verify_inequalities(trials=30, seed=6).to_json() != a.to_json()


def test_peisert_small():
    rep = verify_peisert([9, 49], samples=30, seed=1)
    assert rep.ok
    assert rep.totals("peisert-clique-number") == (2, 2)
