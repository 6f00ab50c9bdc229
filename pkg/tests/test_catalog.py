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

import numpy as np
import pytest

from omcodes.arrangement import CentralArrangement, PolyhedralCover
from omcodes.catalog import BATTERY_KINDS, SeedStream, battery, instance_names, paper_instance, sunflower_code
from omcodes.codes import Code, CodeMorphism
from omcodes.errors import ArgumentError, CapacityError, UnknownInstanceError
from omcodes.oriented_matroid import OrientedMatroid, structure_flags


def test_instance_names_are_sorted_and_loadable():
    names = instance_names()
    assert names == sorted(names)
    assert {"M1", "M2", "fig1_code", "fig3_morphism", "rank1_3", "generic3"} <= set(names)
    for name in names:
        instance = paper_instance(name)
        assert instance.name == name
        assert instance.state_dict()["kind"] == instance.kind


@pytest.mark.parametrize(
    "name,payload_type,kind",
    (
        ("M1", OrientedMatroid, "matroid"),
        ("M1_arrangement", CentralArrangement, "arrangement"),
        ("fig1_code", Code, "code"),
        ("fig1_cover", PolyhedralCover, "cover"),
        ("fig3_morphism", CodeMorphism, "morphism"),
    ),
)
def test_instance_kinds(name, payload_type, kind):
    instance = paper_instance(name)
    assert isinstance(instance.payload, payload_type)
    assert instance.kind == kind


def test_arrangement_instances_carry_their_realization():
    instance = paper_instance("generic3")
    assert instance.realization.state_dict() == {"d": 2, "forms": [["1", "0"], ["0", "1"], ["1", "1"]]}
    assert "realization" in instance.state_dict()


_NONCONVEX5_WORDS = [[2, 3, 4, 5], [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 3], [1, 4], [2, 3], [3, 4], [4, 5], [3], [4], []]
_NONCONVEX6_WORDS = [[1, 2, 3, 6], [2, 3, 4], [1, 3, 5], [4, 5, 6], [2, 3], [1, 3], [4], [5], [6], []]


@pytest.mark.parametrize(
    "name,n,codewords",
    (
        ("lienkaemper_code", 5, _NONCONVEX5_WORDS),
        ("nonconvex5", 5, _NONCONVEX5_WORDS),
        ("jeffs_C2", 6, _NONCONVEX6_WORDS),
        ("nonconvex6", 6, _NONCONVEX6_WORDS),
    ),
)
def test_nonconvex_codes(name, n, codewords):
    assert paper_instance(name).payload == Code.create(n, codewords)


def test_unknown_instance():
    with pytest.raises(UnknownInstanceError):
        paper_instance("M3")


def test_sunflower_bounds():
    assert sunflower_code(2) == paper_instance("jeffs_C2").payload
    assert sunflower_code(4).n == 10
    with pytest.raises(ArgumentError):
        sunflower_code(1)


@pytest.mark.parametrize("kind", BATTERY_KINDS)
def test_batteries_are_deterministic(kind):
    first = battery(kind, 4, d=2, size=3, seed=9)
    second = battery(kind, 4, d=2, size=3, seed=9)
    assert [i.state_dict() for i in first] == [i.state_dict() for i in second]
    assert [i.name for i in first] == [f"{kind}-9-{i}" for i in range(3)]


def test_battery_contents():
    for instance in battery("acyclic-arrangements", 5, d=3, size=5, seed=4):
        assert structure_flags(instance.payload).acyclic
    for instance in battery("uniform-affine", 4, d=2, size=5, seed=4):
        assert structure_flags(instance.payload).uniform
        assert instance.g == 4
    for instance in battery("random-codes", 3, size=5, seed=4):
        assert [] in instance.payload


def test_battery_bounds():
    assert battery("random-codes", 3, size=0) == []
    with pytest.raises(ArgumentError):
        battery("polytopes", 3)
    with pytest.raises(ArgumentError):
        battery("random-codes", 0)
    with pytest.raises(CapacityError):
        battery("random-codes", 8)
    with pytest.raises(CapacityError):
        battery("acyclic-arrangements", 3, d=5)


def test_seed_stream_reduces_raw_pcg64_words():
    raw = np.random.PCG64(42)
    words = [int(raw.random_raw()) for _ in range(4)]
    stream = SeedStream(42)
    assert stream.word() == words[0]
    assert stream.integers(-3, 4, size=2).tolist() == [-3 + w % 7 for w in words[1:3]]
    assert stream.random() == (words[3] >> 11) * 2.0**-53
    assert 0.0 <= SeedStream(0).random() < 1.0
