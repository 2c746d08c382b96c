import random

import pytest

import oracles
from lcmfilt import fixtures
from lcmfilt.filtration import stepwise_filtration
from lcmfilt.monomial import Monomial, MonomialIdeal, NotSquarefreeError
from lcmfilt.simplicial import (
    SimplicialComplex, VoidComplexError, betti_at, betti_at_lower, betti_numbers, f_vector, lower_koszul,
    reduced_betti_numbers, sensitive_corners, sr_complex, sr_ideal, stepwise_complex_filtration,
    stepwise_complex_step, upper_koszul,
)


def cx(n, facets):
    return SimplicialComplex.from_facets(n, facets)


SMALL = cx(5, [(0, 1), (0, 2), (0, 3), (1, 2)])  # ab, ac, ad, bc


def test_sr_ideal_of_small_complex():
    assert sr_ideal(SMALL) == fixtures.example_small()


def test_sr_complex_of_small_ideal():
    assert sr_complex(fixtures.example_small()) == SMALL


def test_large_example_ideal_from_facets():
    big = cx(7, [(0, 1, 2), (0, 3), (0, 4), (2, 3), (3, 4), (5, 6)])
    assert sr_ideal(big) == fixtures.example_large()


def test_void_and_irrelevant():
    void = SimplicialComplex.void(3)
    assert void.is_void()
    with pytest.raises(VoidComplexError):
        sr_ideal(void)
    irrelevant = cx(3, [()])
    assert irrelevant.is_irrelevant()
    assert sr_ideal(irrelevant) == MonomialIdeal.parse("a b c", "abc")
    assert sr_complex(MonomialIdeal.from_generators(3, [])) == SimplicialComplex.simplex(3)


def test_sr_complex_needs_squarefree():
    with pytest.raises(NotSquarefreeError):
        sr_complex(MonomialIdeal.from_exponents(2, [(2, 0)]))


def test_one_step_matches_ideal_side():
    step = stepwise_complex_step(SMALL)
    assert step == sr_complex(MonomialIdeal.parse("abce bcd bde cde", "abcde"))


def test_literal_rule_misses_a_face():
    # ae and be are non-faces only through the generator e, so abe holds one generator
    literal = stepwise_complex_step(SMALL, rule="codim1")
    pairs = stepwise_complex_step(SMALL)
    assert literal.is_subcomplex_of(pairs)
    assert pairs.contains((0, 1, 4)) and not literal.contains((0, 1, 4))


def test_complex_json_is_one_based():
    data = SMALL.to_json()
    assert data["facets"][0] == [1, 2]
    assert SimplicialComplex.from_json(data) == SMALL


def test_f_vector_and_betti_of_test_complexes():
    for c in fixtures.sample_complexes().values():
        assert f_vector(c) == [1, 7, 7]
        assert betti_numbers(c) == [2, 2]


def test_circle_homology():
    circle = cx(3, [(0, 1), (1, 2), (0, 2)])
    assert reduced_betti_numbers(circle) == {-1: 0, 0: 0, 1: 1}
    assert betti_numbers(circle, 2) == [1, 1]


def test_projective_plane_depends_on_field():
    # six-vertex triangulation of RP^2
    rp2 = cx(6, [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5), (1, 2, 4), (2, 4, 5), (2, 3, 5), (1, 3, 5),
                 (1, 3, 4)])
    assert betti_numbers(rp2, "Q") == [1, 0, 0]
    assert betti_numbers(rp2, 2) == [1, 1, 1]


def test_upper_koszul_at_triple():
    I = MonomialIdeal.parse("ab ac bc", "abc")
    mu = Monomial((1, 1, 1))
    # removing any single vertex leaves a generator; removing two does not
    k = upper_koszul(I, mu)
    assert sorted(k.facets) == [(0,), (1,), (2,)]
    assert betti_at(I, mu, 1) == 2
    assert betti_at_lower(I, mu, 1) == 2


def test_corners_of_triangle_ideal():
    table = sensitive_corners(MonomialIdeal.parse("ab ac bc", "abc"))
    assert table.total(0) == 3
    assert table.total(1) == 2
    assert table.total(2) == 0


def random_squarefree(rng, n, r):
    sups = [rng.sample(range(n), rng.randint(1, n)) for _ in range(r)]
    return MonomialIdeal.from_supports(n, sups)


@pytest.mark.parametrize("seed", range(40))
def test_sr_round_trip_and_faces(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 7)
    I = random_squarefree(rng, n, rng.randint(1, 6))
    gens = [g.exponents for g in I.generators]
    c = sr_complex(I)
    faces = {frozenset(f) for f in c.faces()}
    assert faces == oracles.sr_faces(gens, n)
    if not c.is_void():
        assert sr_ideal(c) == I
        nonfaces = oracles.minimal_nonfaces([frozenset(f) for f in c.facets], n)
        assert {frozenset(g.support) for g in I.generators} == nonfaces


@pytest.mark.parametrize("seed", range(40))
def test_complex_side_stepwise_agrees(seed):
    rng = random.Random(500 + seed)
    n = rng.randint(2, 7)
    I = random_squarefree(rng, n, rng.randint(1, 7))
    ideal_side = [sr_complex(s) for s in stepwise_filtration(I).steps]
    complex_side = stepwise_complex_filtration(sr_complex(I), max_steps=len(ideal_side))
    assert complex_side == ideal_side


@pytest.mark.parametrize("seed", range(30))
def test_euler_characteristic(seed):
    rng = random.Random(900 + seed)
    n = rng.randint(1, 7)
    c = sr_complex(random_squarefree(rng, n, rng.randint(1, 6)))
    if c.is_void():
        return
    f = f_vector(c)
    red = reduced_betti_numbers(c)
    assert sum((-1) ** (i - 1) * x for i, x in enumerate(f)) == sum((-1) ** d * b for d, b in red.items())


@pytest.mark.parametrize("seed", range(30))
def test_hochster_upper_lower_agree(seed):
    rng = random.Random(1300 + seed)
    n = rng.randint(1, 5)
    gens = [tuple(rng.randint(0, 2) for _ in range(n)) for _ in range(rng.randint(1, 5))]
    gens = [g for g in gens if any(g)] or [(1,) * n]
    I = MonomialIdeal.from_exponents(n, gens)
    mu = Monomial(tuple(rng.randint(0, 3) for _ in range(n)))
    for i in range(n + 1):
        assert betti_at(I, mu, i) == betti_at_lower(I, mu, i)
    assert lower_koszul(I, mu).nvertices == len(mu.support)


def test_lower_formula_with_repeated_exponent():
    # mu = a^2 has one support vertex; both complexes are {empty}
    I = MonomialIdeal.from_exponents(1, [(2,)])
    mu = Monomial((2,))
    assert [betti_at(I, mu, i) for i in range(2)] == [1, 0]
    assert [betti_at_lower(I, mu, i) for i in range(2)] == [1, 0]
