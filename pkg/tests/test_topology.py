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

from omcodes.catalog import battery, paper_instance
from omcodes.codes import Code, matroid_code
from omcodes.errors import ArgumentError, CapacityError
from omcodes.topology import SimplicialComplex, cone, is_collapsible, link, local_obstructions, reduced_f2_homology


TRIANGLE = SimplicialComplex.from_facets(3, [[1, 2], [1, 3], [2, 3]])
PATH = SimplicialComplex.from_facets(4, [[1, 2], [2, 3], [3, 4]])


@st.composite
def complexes(draw, max_vertices=5):
    n = draw(st.integers(min_value=1, max_value=max_vertices))
    facets = draw(st.lists(st.sets(st.integers(min_value=1, max_value=n), max_size=n), max_size=6))
    return SimplicialComplex.from_facets(n, facets or [[]])


def test_complex_of_code(fig1_code):
    complex_ = SimplicialComplex.from_code(fig1_code)
    assert complex_.facets == [frozenset({1, 2}), frozenset({2, 3})]
    assert complex_.dimension == 1
    assert [1, 2] in complex_
    assert complex_.state_dict() == {"vertices": 3, "facets": [[1, 2], [2, 3]]}
    assert SimplicialComplex.from_state_dict(complex_.state_dict()) == complex_
    with pytest.raises(ArgumentError):
        SimplicialComplex.from_facets(2, [[3]])


@pytest.mark.parametrize(
    "facets,expected",
    (
        ([[]], {-1: 1}),
        ([[1]], {-1: 0, 0: 0}),
        ([[1], [2]], {-1: 0, 0: 1}),
        ([[1, 2], [1, 3], [2, 3]], {-1: 0, 0: 0, 1: 1}),
        ([[1, 2, 3]], {-1: 0, 0: 0, 1: 0, 2: 0}),
        ([[1, 2], [3, 4]], {-1: 0, 0: 1, 1: 0}),
    ),
)
def test_reduced_homology(facets, expected):
    assert reduced_f2_homology(SimplicialComplex.from_facets(4, facets)) == expected


def test_void_complex_has_no_homology():
    with pytest.raises(ArgumentError):
        reduced_f2_homology(SimplicialComplex(vertices=2, faces=frozenset()))


@given(complexes())
def test_homology_matches_euler_characteristic(complex_):
    ranks = reduced_f2_homology(complex_)
    euler = sum((-1) ** (len(face) - 1) for face in complex_.faces)
    assert sum((-1) ** k * r for k, r in ranks.items()) == euler
    assert all(r >= 0 for r in ranks.values())


def test_links_and_cones(fig1_code):
    complex_ = SimplicialComplex.from_code(fig1_code)
    assert link(complex_, [2]).faces == {frozenset(), frozenset({1}), frozenset({3})}
    assert link(complex_, []) == complex_
    with pytest.raises(ArgumentError):
        link(complex_, [1, 3])
    coned = cone(SimplicialComplex.from_facets(2, [[1], [2]]), 3)
    assert coned.facets == [frozenset({1, 3}), frozenset({2, 3})]
    assert not any(reduced_f2_homology(coned).values())
    with pytest.raises(ArgumentError):
        cone(coned, 3)


def test_cones_collapse_to_their_apex():
    result = is_collapsible(SimplicialComplex.from_facets(3, [[1, 2], [2, 3]]))
    assert (result.status, result.apex) == ("yes", 2)
    assert result.state_dict() == {"status": "yes", "nodes": 1, "apex": 2}


def test_path_collapses():
    result = is_collapsible(PATH)
    assert result.status == "yes"
    assert result.apex is None
    assert result.state_dict()["sequence"] == [[[1], [1, 2]], [[2], [2, 3]], [[3], [3, 4]]]
    assert result.nodes == 4


def test_collapse_budget_and_exhaustion():
    assert is_collapsible(PATH, budget=2).state_dict() == {"status": "budget", "nodes": 2}
    assert is_collapsible(TRIANGLE).state_dict() == {"status": "no-exhausted", "nodes": 1}
    assert is_collapsible(SimplicialComplex.from_facets(1, [[]])).status == "no-exhausted"


def test_obstruction_in_three_cycle_code():
    report = local_obstructions(Code.create(3, [[], [1, 2], [1, 3], [2, 3]]))
    assert len(report.obstructions) == 3
    first = report.state_dict()["entries"][0]
    assert first == {"sigma": [1], "status": "obstruction", "certificate": {"homology": {"0": 1}}}


def test_contractible_links(fig1_code):
    report = local_obstructions(fig1_code)
    assert report.state_dict() == {
        "obstructions": 0,
        "entries": [{"sigma": [3], "status": "contractible", "certificate": {"status": "yes", "nodes": 1, "apex": 2}}],
    }


@pytest.mark.parametrize("name", ("sunflower2", "sunflower3", "nonconvex5"))
def test_catalog_codes_have_no_obstructions(name):
    assert not local_obstructions(paper_instance(name).payload).obstructions


def test_covector_codes_have_no_obstructions():
    for instance in battery("acyclic-arrangements", 4, d=3, size=6, seed=2):
        assert not local_obstructions(matroid_code(instance.payload, "L+")).obstructions


def test_obstruction_capacity():
    with pytest.raises(CapacityError):
        local_obstructions(Code.create(17, [[]]))
