# coding=utf-8
# Copyright 2024 The omcodes Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import pytest
from hypothesis import given
from hypothesis import strategies as st

from omcodes.arrangement import CentralArrangement, om_from_central_arrangement
from omcodes.catalog import battery, paper_instance
from omcodes.codes import Code, CodeMorphism, matroid_code
from omcodes.errors import ArgumentError, CapacityError, DimensionError
from omcodes.ideals import (
    Pseudomonomial,
    PseudomonomialIdeal,
    SquarefreeMonomialIdeal,
    affine_om_ideal,
    alexander_dual,
    canonical_form,
    commuting_square,
    contains,
    depolarize,
    ideal_intersect,
    ideal_quotient,
    intersect_all,
    neural_ring_map,
    om_dual_ideal,
    om_ideal,
    om_ideal_primes,
    polarize,
    pull_back_monomial,
    satisfies_incomparability,
    specialize,
    strong_monomial_map,
    strong_monomial_map_respects,
    variety,
    weak_elimination_check,
    weak_elimination_witness,
)
from omcodes.oriented_matroid import AffineOrientedMatroid, GroundMap


@st.composite
def codes(draw, max_neurons=4):
    n = draw(st.integers(min_value=1, max_value=max_neurons))
    masks = draw(st.sets(st.integers(min_value=0, max_value=(1 << n) - 1)))
    return Code.create(n, ([e + 1 for e in range(n) if mask >> e & 1] for mask in masks))


def generator_strings(I):
    return {str(p) for p in I.generators}


def monomial_strings(J):
    return {J.format_generator(g) for g in J.generators}


@pytest.fixture(scope="module")
def matroids():
    return [instance.payload for instance in battery("acyclic-arrangements", 5, d=3, size=8, seed=5)]


def test_pseudomonomial_basics():
    p = Pseudomonomial.from_sets([1, 2], [3])
    assert str(p) == "x1x2(1-x3)"
    assert p.degree == 3
    assert p.proper
    assert not Pseudomonomial.improper(2).proper
    assert Pseudomonomial.from_sets([1], []).divides(p)
    assert p.nonzero_at(0b011)
    assert not p.nonzero_at(0b111)
    assert p.signed_set() == {1, 2, -3}
    assert str(Pseudomonomial.from_sets([], [])) == "1"


@pytest.mark.parametrize(
    "n,codewords,expected",
    (
        (3, [[], [1], [2], [3], [1, 2, 3]], {"x1x2(1-x3)", "x1x3(1-x2)", "x2x3(1-x1)"}),
        (3, [[], [1], [2], [1, 2], [2, 3]], {"x1x3", "x3(1-x2)"}),
        (3, [[], [1, 2, 3]], {f"x{i}(1-x{j})" for i in (1, 2, 3) for j in (1, 2, 3) if i != j}),
        (2, [], {"1"}),
        (2, [[], [1], [2], [1, 2]], set()),
    ),
)
def test_canonical_form(n, codewords, expected):
    assert generator_strings(canonical_form(Code.create(n, codewords))) == expected


def test_canonical_form_state_dict(fig1_code):
    assert canonical_form(fig1_code).state_dict() == {"n": 3, "pos": [[1, 3], [3]], "neg": [[], [2]]}
    assert PseudomonomialIdeal.from_state_dict(canonical_form(fig1_code).state_dict()) == canonical_form(fig1_code)


def test_canonical_form_capacity():
    with pytest.raises(CapacityError):
        canonical_form(Code.create(17, [[]]))
    with pytest.raises(CapacityError):
        canonical_form(Code.create(5, [[]]), capacity=4)


@given(codes())
def test_variety_of_canonical_form_is_the_code(C):
    assert variety(canonical_form(C)) == C


@given(codes())
def test_canonical_forms_satisfy_weak_elimination(C):
    assert weak_elimination_check(canonical_form(C))


def test_weak_elimination_on_random_code_battery():
    instances = battery("random-codes", 6, size=200, seed=1)
    assert len(instances) == 200
    for instance in instances:
        I = canonical_form(instance.payload)
        assert weak_elimination_check(I)
        assert variety(I) == instance.payload


def test_incomparability_counterexample():
    I = canonical_form(Code.create(3, [[], [1], [2], [3], [1, 2, 3]]))
    assert weak_elimination_check(I)
    assert not satisfies_incomparability(I)
    assert satisfies_incomparability(canonical_form(Code.create(3, [[], [1], [2], [1, 2], [2, 3]])))


def test_weak_elimination_witness():
    p1, p2 = Pseudomonomial.from_sets([1], []), Pseudomonomial.from_sets([2], [1])
    I = PseudomonomialIdeal.create(2, [p1, p2])
    assert weak_elimination_witness(I) == (p1, p2, 1)
    assert not weak_elimination_check(I)


def test_contains(fig1_code):
    I = canonical_form(fig1_code)
    assert contains(I, Pseudomonomial.from_sets([1, 3], [2]))
    assert contains(I, Pseudomonomial.improper(1))
    assert not contains(I, Pseudomonomial.from_sets([1], []))
    with pytest.raises(DimensionError):
        contains(I, Pseudomonomial.from_sets([4], []))


def test_polarize_and_depolarize(fig1_code):
    I = canonical_form(fig1_code)
    J = polarize(I)
    assert monomial_strings(J) == {"x1x3", "x3y2"}
    assert depolarize(J) == I


def test_monomial_ideal_basics():
    J = SquarefreeMonomialIdeal.from_supports(2, [([1], []), ([1, 2], [2])])
    assert monomial_strings(J) == {"x1"}
    assert 0b0011 in J
    assert 0b0010 not in J
    assert SquarefreeMonomialIdeal.from_state_dict(J.state_dict()) == J
    assert intersect_all(2, []) == SquarefreeMonomialIdeal.unit(2)
    assert ideal_intersect(SquarefreeMonomialIdeal.unit(2), J) == J
    assert ideal_intersect(SquarefreeMonomialIdeal.zero(2), J) == SquarefreeMonomialIdeal.zero(2)
    assert SquarefreeMonomialIdeal.unit(2).format_generator(0) == "1"
    with pytest.raises(DimensionError):
        SquarefreeMonomialIdeal.create(1, [1 << 2])
    with pytest.raises(DimensionError):
        ideal_intersect(J, SquarefreeMonomialIdeal.unit(3))


def test_rank1_3_ideals(rank1_3):
    assert monomial_strings(om_ideal(rank1_3)) == {"x1x2x3", "y1y2y3"}
    assert om_ideal_primes(rank1_3) == om_ideal(rank1_3)
    assert monomial_strings(om_dual_ideal(rank1_3)) == {f"x{i}y{j}" for i in (1, 2, 3) for j in (1, 2, 3)}


def test_rank1_3_quotient_and_affine_ideal(rank1_3):
    deletion = SquarefreeMonomialIdeal.from_supports(3, [([1, 2], []), ([], [1, 2])])
    quotient = ideal_quotient(om_ideal(rank1_3), deletion)
    assert quotient.state_dict() == {"n": 3, "x": [[3], [], [1, 2, 3]], "y": [[3], [1, 2, 3], []]}
    assert monomial_strings(specialize(quotient, 3)) == {"x1x2"}
    affine = affine_om_ideal(AffineOrientedMatroid.create(rank1_3, 3))
    assert monomial_strings(affine) == {"x1x2"}
    with pytest.raises(ArgumentError):
        specialize(quotient, 4)


def test_affine_ideal_of_free_matroid(free1):
    assert affine_om_ideal(AffineOrientedMatroid.create(free1, 1)) == SquarefreeMonomialIdeal.unit(1)


@pytest.mark.parametrize(
    "n,expected",
    (
        (1, {"x1", "y1"}),
        (2, {"x1x2", "x1y2", "x2y1", "y1y2"}),
    ),
)
def test_free_matroid_ideals(n, expected):
    free = om_from_central_arrangement(CentralArrangement.create([[int(i == j) for j in range(n)] for i in range(n)]))
    assert monomial_strings(om_ideal(free)) == expected
    assert om_ideal_primes(free) == om_ideal(free)


def test_alexander_duality(m1, generic3, rank1_3):
    for M in (m1, generic3, rank1_3):
        assert alexander_dual(om_ideal(M)) == om_dual_ideal(M)
        assert alexander_dual(om_dual_ideal(M)) == om_ideal(M)


def test_ideal_identities_on_battery(matroids):
    for M in matroids:
        assert om_ideal_primes(M) == om_ideal(M)
        for g in range(1, M.n + 1):
            affine_om_ideal(AffineOrientedMatroid.create(M, g))


def test_commuting_square(generic3, m1):
    square = commuting_square(generic3)
    assert square.holds
    assert square.state_dict() == {"holds": True, "varieties_agree": True, "generators_agree": True}
    assert generator_strings(canonical_form(matroid_code(generic3, "W+"))) == {"x1x2(1-x3)", "x3(1-x1)(1-x2)"}
    with pytest.raises(ArgumentError):
        commuting_square(m1)


def test_commuting_square_on_battery(matroids):
    for M in matroids:
        assert commuting_square(M).holds


def test_strong_monomial_map(m1, generic3):
    swap = GroundMap.create([-1], n2=1)
    x1 = SquarefreeMonomialIdeal.from_supports(1, [([1], [])])
    assert monomial_strings(strong_monomial_map(swap, x1)) == {"y1"}
    assert strong_monomial_map(GroundMap.create([0], n2=1), x1) == SquarefreeMonomialIdeal.zero(1)
    identity = GroundMap.identity(3)
    assert strong_monomial_map(identity, om_dual_ideal(m1)) == om_dual_ideal(m1)
    assert strong_monomial_map_respects(identity, generic3, generic3)
    with pytest.raises(DimensionError):
        strong_monomial_map(identity, x1)


def test_strong_monomial_map_respects_strong_maps_only(m1):
    free3 = om_from_central_arrangement(CentralArrangement.create([[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    identity = GroundMap.identity(3)
    assert strong_monomial_map_respects(identity, free3, m1)
    assert not strong_monomial_map_respects(identity, m1, free3)


def test_neural_ring_map():
    f = paper_instance("fig3_morphism").payload
    images = neural_ring_map(f)
    assert [str(p) for p in images] == ["x1x3x5", "x2x4x5"]
    assert str(pull_back_monomial(f, [1, 2])) == "x1x2x3x4x5"
    assert str(pull_back_monomial(f, [])) == "1"
    with pytest.raises(DimensionError):
        pull_back_monomial(f, [3])


def test_neural_ring_map_sends_empty_trunks_to_zero(fig1_code):
    f = CodeMorphism.from_trunks(fig1_code, [[2], None])
    assert neural_ring_map(f)[1] is None
    assert pull_back_monomial(f, [1, 2]) is None
    assert str(pull_back_monomial(f, [1])) == "x2"


def test_neural_ring_map_detects_firing():
    f = paper_instance("fig3_morphism").payload
    images = neural_ring_map(f)
    for c in f.source.codewords:
        point = sum(1 << (e - 1) for e in c)
        fired = {i for i, p in enumerate(images, start=1) if p.nonzero_at(point)}
        assert fired == set(f(c))
