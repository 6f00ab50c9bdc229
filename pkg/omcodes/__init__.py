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

__version__ = "0.0.1"

from .arrangement import CentralArrangement, PolyhedralCover, code_of_polyhedral_cover, om_from_central_arrangement
from .catalog import battery, instance_names, paper_instance, sunflower_code
from .codes import Code, CodeMorphism, apply_morphism, leq_below, matroid_code
from .errors import ArgumentError, CapacityError, DimensionError, InconsistencyError, OMCodesError, UnknownInstanceError
from .ideals import (
    PseudomonomialIdeal,
    SquarefreeMonomialIdeal,
    canonical_form,
    commuting_square,
    om_dual_ideal,
    om_ideal,
)
from .oriented_matroid import AffineOrientedMatroid, GroundMap, OrientedMatroid, validate_circuits, validate_covectors
from .signs import SignedVector
from .topology import SimplicialComplex, local_obstructions
