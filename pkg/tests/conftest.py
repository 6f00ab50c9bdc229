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
from hypothesis import settings

from omcodes.arrangement import CentralArrangement, om_from_central_arrangement
from omcodes.catalog import paper_instance


settings.register_profile("omcodes", max_examples=50, deadline=None)
settings.load_profile("omcodes")


@pytest.fixture(scope="session")
def m1():
    return paper_instance("M1").payload


@pytest.fixture(scope="session")
def generic3():
    return paper_instance("generic3").payload


@pytest.fixture(scope="session")
def rank1_3():
    return paper_instance("rank1_3").payload


@pytest.fixture(scope="session")
def free1():
    # the free matroid on one element, realized by the form x on ℝ
    return om_from_central_arrangement(CentralArrangement.create([[1]]))


@pytest.fixture(scope="session")
def fig1_code():
    return paper_instance("fig1_code").payload
