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

"""Simplicial complexes of codes, links, F₂ homology and collapsibility."""

import itertools
import typing
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

import cached_property
import flax.struct
from absl import logging
from sympy import GF, Matrix
from sympy.polys.matrices import DomainMatrix

from .errors import ArgumentError, CapacityError


if typing.TYPE_CHECKING:
    from .codes import Code

    cached_property = property  # pylint: disable=invalid-name
else:
    cached_property = cached_property.cached_property

DEFAULT_COLLAPSE_BUDGET = 10**6
MAX_OBSTRUCTION_NEURONS = 16

Face = FrozenSet[int]


def face_key(face: Iterable[int]) -> Tuple[int, Tuple[int, ...]]:
    members = tuple(sorted(face))
    return len(members), members


class SimplicialComplex(flax.struct.PyTreeNode):
    """A downward-closed family of subsets of {1, ..., vertices}."""

    vertices: int = flax.struct.field(pytree_node=False)
    faces: FrozenSet[Face] = flax.struct.field(pytree_node=False)

    @classmethod
    def from_facets(cls, vertices: int, facets: Iterable[Iterable[int]]) -> "SimplicialComplex":
        faces = set()
        for facet in facets:
            facet = frozenset(int(v) for v in facet)
            if any(not 1 <= v <= vertices for v in facet):
                raise ArgumentError(f"Face {sorted(facet)} uses vertices outside of 1..{vertices}.")
            if facet in faces:
                continue
            members = sorted(facet)
            for size in range(len(members) + 1):
                faces.update(frozenset(c) for c in itertools.combinations(members, size))
        return cls(vertices=vertices, faces=frozenset(faces))

    @classmethod
    def from_code(cls, C: "Code") -> "SimplicialComplex":
        return cls.from_facets(C.n, C.codewords)

    @classmethod
    def from_state_dict(cls, state: Mapping[str, Any]) -> "SimplicialComplex":
        return cls.from_facets(int(state["vertices"]), state["facets"])

    def state_dict(self) -> Dict[str, Any]:
        return {"vertices": self.vertices, "facets": [sorted(f) for f in self.facets]}

    def __contains__(self, face: Iterable[int]) -> bool:
        return frozenset(face) in self.faces

    @cached_property
    def facets(self) -> List[Face]:
        ordered = sorted(self.faces, key=face_key, reverse=True)
        facets: List[Face] = []
        for face in ordered:
            if not any(face < facet for facet in facets):
                facets.append(face)
        return sorted(facets, key=face_key)

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.faces), default=0) - 1

    @property
    def sorted_faces(self) -> List[Face]:
        return sorted(self.faces, key=face_key)


def link(complex_: SimplicialComplex, sigma: Iterable[int]) -> SimplicialComplex:
    sigma = frozenset(sigma)
    if sigma not in complex_.faces:
        raise ArgumentError(f"{sorted(sigma)} is not a face of the complex.")
    faces = frozenset(face - sigma for face in complex_.faces if sigma <= face)
    return SimplicialComplex(vertices=complex_.vertices, faces=faces)


def cone(complex_: SimplicialComplex, apex: int) -> SimplicialComplex:
    if any(apex in face for face in complex_.faces):
        raise ArgumentError(f"Apex {apex} is already a vertex of the complex.")
    faces = complex_.faces | frozenset(face | {apex} for face in complex_.faces)
    return SimplicialComplex(vertices=max(complex_.vertices, apex), faces=faces)


# Homology over F₂.
# -----------------------------------------------------------------------------
def _gf2_rank(rows: List[List[int]]) -> int:
    if not rows or not rows[0]:
        return 0
    return DomainMatrix.from_Matrix(Matrix(rows)).convert_to(GF(2)).rank()


def reduced_f2_homology(complex_: SimplicialComplex) -> Dict[int, int]:
    """Ranks of reduced homology with F₂ coefficients, by degree from -1 to the dimension.

    The chain complex is augmented by the empty face in degree -1, so the complex {∅}
    has rank 1 in degree -1 and every nonempty-vertex complex has rank 0 there.
    """
    if not complex_.faces:
        raise ArgumentError("Reduced homology of the void complex is undefined.")
    top = complex_.dimension
    by_degree: Dict[int, List[Face]] = {k: [] for k in range(-1, top + 1)}
    for face in complex_.sorted_faces:
        by_degree[len(face) - 1].append(face)

    # boundary rank from degree k to degree k - 1
    boundary_rank = {-1: 0, top + 1: 0}
    for k in range(0, top + 1):
        lower = {face: i for i, face in enumerate(by_degree[k - 1])}
        rows = [[0] * len(by_degree[k]) for _ in lower]
        for j, face in enumerate(by_degree[k]):
            for v in face:
                rows[lower[face - {v}]][j] = 1
        boundary_rank[k] = _gf2_rank(rows)

    ranks = {k: len(by_degree[k]) - boundary_rank[k] - boundary_rank[k + 1] for k in range(-1, top + 1)}
    logging.debug("Reduced F2 homology ranks %s", ranks)
    return ranks


# Collapsibility.
# -----------------------------------------------------------------------------
class CollapseResult(flax.struct.PyTreeNode):
    status: str = flax.struct.field(pytree_node=False)
    apex: Optional[int] = flax.struct.field(pytree_node=False, default=None)
    sequence: Tuple[Tuple[Face, Face], ...] = flax.struct.field(pytree_node=False, default=())
    nodes: int = flax.struct.field(pytree_node=False, default=0)

    def state_dict(self) -> Dict[str, Any]:
        state: Dict[str, Any] = {"status": self.status, "nodes": self.nodes}
        if self.apex is not None:
            state["apex"] = self.apex
        if self.status == "yes" and self.apex is None:
            state["sequence"] = [[sorted(s), sorted(t)] for s, t in self.sequence]
        return state


def _free_pairs(faces: FrozenSet[Face]) -> List[Tuple[Face, Face]]:
    cofaces: Dict[Face, List[Face]] = {}
    for face in faces:
        if len(face) < 2:
            continue
        for v in face:
            cofaces.setdefault(face - {v}, []).append(face)
    pairs = []
    for sigma, above in cofaces.items():
        if len(above) == 1:
            tau = above[0]
            if tau not in cofaces:
                pairs.append((sigma, tau))
    return sorted(pairs, key=lambda pair: (tuple(sorted(pair[0])), tuple(sorted(pair[1]))))


def is_collapsible(complex_: SimplicialComplex, budget: int = DEFAULT_COLLAPSE_BUDGET) -> CollapseResult:
    """Looks for a sequence of elementary collapses down to a single vertex.

    A vertex lying in every facet is reported as a cone apex right away. Otherwise
    free pairs are removed depth first in lexicographic order, never revisiting a
    complex, and every new complex costs one node of `budget`.
    """
    facets = complex_.facets
    start = frozenset(face for face in complex_.faces if face)
    if not start:
        return CollapseResult(status="no-exhausted")
    common = frozenset.intersection(*facets)
    if common:
        return CollapseResult(status="yes", apex=min(common), nodes=1)

    nodes = 1
    seen = {start}
    path: List[Tuple[Face, Face]] = []
    stack = [iter(_free_pairs(start))]
    states = [start]
    while stack:
        pair = next(stack[-1], None)
        if pair is None:
            stack.pop()
            states.pop()
            if stack:
                path.pop()
            continue
        state = states[-1] - set(pair)
        if state in seen:
            continue
        nodes += 1
        if nodes > budget:
            logging.warning("Collapse search exhausted its budget of %d nodes", budget)
            return CollapseResult(status="budget", nodes=budget)
        seen.add(state)
        path.append(pair)
        if len(state) == 1:
            return CollapseResult(status="yes", sequence=tuple(path), nodes=nodes)
        states.append(state)
        stack.append(iter(_free_pairs(state)))
    return CollapseResult(status="no-exhausted", nodes=nodes)


# Local obstructions.
# -----------------------------------------------------------------------------
class ObstructionEntry(flax.struct.PyTreeNode):
    sigma: Face = flax.struct.field(pytree_node=False)
    status: str = flax.struct.field(pytree_node=False)
    homology: Tuple[Tuple[int, int], ...] = flax.struct.field(pytree_node=False, default=())
    collapse: Optional[CollapseResult] = flax.struct.field(pytree_node=False, default=None)

    def state_dict(self) -> Dict[str, Any]:
        certificate: Dict[str, Any]
        if self.status == "obstruction":
            certificate = {"homology": {str(k): r for k, r in self.homology if r}}
        elif self.collapse is not None:
            certificate = self.collapse.state_dict()
        else:
            certificate = {}
        return {"sigma": sorted(self.sigma), "status": self.status, "certificate": certificate}


class ObstructionReport(flax.struct.PyTreeNode):
    entries: Tuple[ObstructionEntry, ...] = flax.struct.field(pytree_node=False, default=())

    @property
    def obstructions(self) -> List[ObstructionEntry]:
        return [entry for entry in self.entries if entry.status == "obstruction"]

    def state_dict(self) -> Dict[str, Any]:
        return {
            "obstructions": len(self.obstructions),
            "entries": [entry.state_dict() for entry in self.entries],
        }


def local_obstructions(C: "Code", budget: int = DEFAULT_COLLAPSE_BUDGET) -> ObstructionReport:
    """Examines the link of every face of Δ(C) that is not a codeword.

    A link with nonzero reduced homology is an obstruction. A link that is a cone or
    collapses is contractible. Anything else is reported as unknown.
    """
    if C.n > MAX_OBSTRUCTION_NEURONS:
        raise CapacityError(f"Obstruction search is limited to {MAX_OBSTRUCTION_NEURONS} neurons, got {C.n}.")
    complex_ = SimplicialComplex.from_code(C)
    entries = []
    for sigma in sorted(complex_.faces - C.codewords, key=face_key):
        link_ = link(complex_, sigma)
        ranks = reduced_f2_homology(link_)
        homology = tuple(sorted(ranks.items()))
        if any(ranks.values()):
            entries.append(ObstructionEntry(sigma=sigma, status="obstruction", homology=homology))
            continue
        collapse = is_collapsible(link_, budget)
        status = "contractible" if collapse.status == "yes" else "unknown"
        entries.append(ObstructionEntry(sigma=sigma, status=status, homology=homology, collapse=collapse))
    report = ObstructionReport(entries=tuple(entries))
    logging.info("Checked %d missing faces, %d obstructions", len(entries), len(report.obstructions))
    return report
