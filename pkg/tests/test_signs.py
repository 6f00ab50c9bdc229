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

from omcodes.errors import ArgumentError, CapacityError, DimensionError
from omcodes.signs import (
    GroundSet,
    SignedVector,
    all_sign_vectors,
    compose,
    conforms,
    is_orthogonal,
    parts,
    separator,
    sign_vector_masks,
)


@st.composite
def sign_vector_pairs(draw, max_size=6):
    n = draw(st.integers(min_value=1, max_value=max_size))
    signs = st.lists(st.sampled_from("+-0"), min_size=n, max_size=n).map("".join)
    return SignedVector.parse(draw(signs)), SignedVector.parse(draw(signs))


@pytest.mark.parametrize(
    "x,y,expected",
    (
        ("+0-", "-++", "++-"),
        ("000", "+-0", "+-0"),
        ("+-+", "---", "+-+"),
    ),
)
def test_compose(x, y, expected):
    assert str(compose(SignedVector.parse(x), SignedVector.parse(y))) == expected


def test_separator_and_parts():
    X, Y = SignedVector.parse("+0-+"), SignedVector.parse("-+-0")
    assert separator(X, Y) == {1}
    assert parts(X) == ({1, 4}, {3}, {1, 3, 4})


@pytest.mark.parametrize(
    "x,y,expected",
    (
        ("++0", "+-0", True),
        ("++0", "++0", False),
        ("+00", "0+0", True),
        ("+0+", "0-0", True),
        ("+-+", "+++", True),
    ),
)
def test_is_orthogonal(x, y, expected):
    assert is_orthogonal(SignedVector.parse(x), SignedVector.parse(y)) is expected


def test_conforms_is_the_face_order():
    assert conforms(SignedVector.parse("+00"), SignedVector.parse("+-0"))
    assert not conforms(SignedVector.parse("+00"), SignedVector.parse("-00"))
    assert conforms(SignedVector.zero(3), SignedVector.parse("---"))


@given(sign_vector_pairs())
def test_composition_properties(pair):
    X, Y = pair
    XY = compose(X, Y)
    assert conforms(X, XY)
    assert XY.support == X.support | Y.support
    assert compose(XY, Y) == XY
    assert -compose(X, Y) == compose(-X, -Y)


@given(sign_vector_pairs())
def test_orthogonality_is_symmetric(pair):
    X, Y = pair
    assert is_orthogonal(X, Y) == is_orthogonal(Y, X)
    assert is_orthogonal(X, Y) == is_orthogonal(-X, Y)


def test_parse_round_trips_and_accepts_unicode_minus():
    assert str(SignedVector.parse("+−0")) == "+-0"
    assert SignedVector.parse("+-0")[2] == -1
    with pytest.raises(ArgumentError):
        SignedVector.parse("+x0")


def test_mismatched_lengths_raise():
    with pytest.raises(DimensionError):
        compose(SignedVector.parse("+0"), SignedVector.parse("+00"))
    with pytest.raises(DimensionError):
        is_orthogonal(SignedVector.parse("+"), SignedVector.parse("++"))


def test_overlapping_parts_are_rejected():
    with pytest.raises(ArgumentError):
        SignedVector.create(2, pos=0b01, neg=0b01)
    with pytest.raises(ArgumentError):
        SignedVector.from_signed_set(2, [3])


def test_ground_set_bounds():
    assert GroundSet.create(3).signed_elements == (1, 2, 3, -1, -2, -3)
    with pytest.raises(ArgumentError):
        GroundSet.create(0)
    with pytest.raises(CapacityError):
        GroundSet.create(25)


def test_sign_vector_masks_cover_every_vector():
    pos, neg = sign_vector_masks(3)
    assert len(pos) == 27
    assert not (pos & neg).any()
    assert len(set(zip(pos.tolist(), neg.tolist()))) == 27
    assert len(list(all_sign_vectors(3))) == 27
