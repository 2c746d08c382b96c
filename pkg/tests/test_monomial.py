import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from lcmfilt.monomial import (
    DimensionMismatch, Monomial, MonomialIdeal, NotSquarefreeError, ZeroIdealError, count_squarefree_multiples,
    divides, lcm, minimalize, parse_monomial, polarize,
)

ABCDE = "abcde"


def m(text, names=ABCDE):
    return parse_monomial(text, names)


def test_lcm_of_squarefree_pair():
    assert lcm(m("bd"), m("cd")) == m("bcd")


def test_lcm_takes_componentwise_max():
    assert lcm(Monomial((2, 0, 1)), Monomial((1, 3, 0))) == Monomial((2, 3, 1))


def test_lcm_rejects_mixed_rings():
    with pytest.raises(DimensionMismatch):
        lcm(Monomial((1, 0)), Monomial((1, 0, 0)))


def test_divides():
    assert divides(m("bd"), m("bcd"))
    assert not divides(m("bcd"), m("bd"))


def test_minimalize_drops_multiples_and_duplicates():
    gens = [m("abcd"), m("abcde"), m("abcde"), m("bcde")]
    assert minimalize(gens) == [m("abcd"), m("bcde")]


def test_parse_with_powers():
    assert parse_monomial("x1x3^2", ["x1", "x2", "x3"]) == Monomial((1, 0, 2))
    with pytest.raises(ValueError):
        parse_monomial("q", ABCDE)


def test_ideal_records_redundancy():
    ideal = MonomialIdeal.parse("ab abc b", ABCDE)
    assert ideal.reduced
    assert ideal.generators == (m("b"),)


def test_ideal_json_round_trip():
    ideal = MonomialIdeal.parse("abc bd cd e", ABCDE)
    again = MonomialIdeal.from_json(ideal.to_json())
    assert again == ideal
    assert again.names == tuple(ABCDE)


def test_malformed_json_is_value_error():
    with pytest.raises(ValueError):
        MonomialIdeal.from_json({"generators": []})


def test_zero_ideal_guard():
    with pytest.raises(ZeroIdealError):
        MonomialIdeal.from_generators(3, []).require_nonzero()


def test_polarize_squarefree_is_identity():
    ideal = MonomialIdeal.parse("abc bd cd e", ABCDE)
    assert polarize(ideal).ideal == ideal


def test_polarize_round_trip():
    ideal = MonomialIdeal.from_exponents(2, [(2, 0), (1, 1), (0, 3)])
    pol = polarize(ideal)
    assert pol.ideal.is_squarefree()
    assert pol.depolarize() == ideal


def test_count_squarefree_rejects_powers():
    with pytest.raises(NotSquarefreeError):
        count_squarefree_multiples(MonomialIdeal.from_exponents(2, [(2, 0)]), 1)


@pytest.mark.parametrize("seed", range(30))
def test_count_squarefree_matches_enumeration(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 8)
    gens = [tuple(rng.randint(0, 1) for _ in range(n)) for _ in range(rng.randint(1, 6))]
    gens = [g for g in gens if any(g)] or [(1,) + (0,) * (n - 1)]
    ideal = MonomialIdeal.from_exponents(n, gens)
    for d in range(n + 1):
        assert count_squarefree_multiples(ideal, d) == oracles.squarefree_count(gens, n, d)


exponents = st.integers(min_value=1, max_value=5).flatmap(
    lambda n: st.lists(st.tuples(*[st.integers(0, 3)] * n), min_size=1, max_size=8)
)


@settings(max_examples=150, deadline=None)
@given(exponents)
def test_minimalize_agrees_with_oracle(vectors):
    got = {g.exponents for g in minimalize(Monomial(v) for v in vectors)}
    assert got == oracles.minimal(vectors)


@settings(max_examples=100, deadline=None)
@given(exponents)
def test_minimalize_is_idempotent_antichain(vectors):
    once = minimalize(Monomial(v) for v in vectors)
    assert minimalize(once) == once
    for a in once:
        for b in once:
            assert a == b or not divides(a, b)
