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

"""Exact rational arrangements: sign-vector feasibility, covector enumeration and cover codes.

Every sign decision goes through Fourier-Motzkin elimination over `fractions.Fraction`.
Affine inequalities ``a·x + b > 0`` are lifted to the cone ``b·x₀ + a·x > 0`` with
``x₀ > 0`` so that covers and central arrangements share one enumerator.
"""

import itertools
from fractions import Fraction
from multiprocessing import Pool
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import flax.struct
from absl import logging

from .codes import Code, CodeMorphism, apply_morphism, trunk
from .errors import ArgumentError, CapacityError, DimensionError, InconsistencyError
from .oriented_matroid import OrientedMatroid
from .signs import MAX_GROUND_SET, SignedVector, check_ground_size


Rational = Fraction
Row = Tuple[Fraction, ...]
Inequality = Tuple[Fraction, ...]  # (a_1, ..., a_d, b) meaning a·x + b > 0

RationalLike = Union[int, str, Fraction]


def to_rational(value: RationalLike) -> Fraction:
    if isinstance(value, float):
        raise ArgumentError(f"Floating point coefficient {value!r}; pass an exact integer or 'p/q' string.")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as err:
        raise ArgumentError(f"Invalid rational {value!r}: {err}") from None


def format_rational(value: Fraction) -> str:
    return str(value)


# Fourier-Motzkin elimination.
# -----------------------------------------------------------------------------
def _normalize(row: Row) -> Optional[Row]:
    """Scales `row` by a positive factor so that its first nonzero entry is ±1."""
    for value in row:
        if value:
            scale = abs(value)
            return tuple(v / scale for v in row)
    return None


class FourierMotzkin:
    """Decides feasibility of a homogeneous system over the rationals.

    The system is ``E x = 0``, ``S x > 0`` and ``N x >= 0`` in `num_variables` unknowns.
    Equalities are removed by substitution, then variables are eliminated one at a
    time; a combination of two rows is strict when either of them is.

    Args:
        num_variables (`int`):
            Number of unknowns.
        record_steps (`bool`, *optional*, defaults to `False`):
            Keep `(variable, rows before, rows after)` for every elimination in `steps`.
    """

    def __init__(self, num_variables: int, record_steps: bool = False):
        self.num_variables = num_variables
        self.record_steps = record_steps
        self.steps: List[Tuple[int, int, int]] = []

    def feasible(
        self, equalities: Iterable[Row] = (), strict: Iterable[Row] = (), nonstrict: Iterable[Row] = ()
    ) -> bool:
        equalities = [tuple(Fraction(v) for v in row) for row in equalities]
        rows: List[Tuple[Row, bool]] = [(tuple(Fraction(v) for v in row), True) for row in strict]
        rows += [(tuple(Fraction(v) for v in row), False) for row in nonstrict]
        for row, _ in rows:
            if len(row) != self.num_variables:
                raise DimensionError(f"Row of length {len(row)} in a system with {self.num_variables} unknowns.")

        # substitute the equalities away
        while equalities:
            pivot_row = equalities.pop()
            pivot = next((j for j, v in enumerate(pivot_row) if v), None)
            if pivot is None:
                continue
            factor = pivot_row[pivot]

            def substitute(row: Row) -> Row:
                ratio = row[pivot] / factor
                return tuple(v - ratio * p for v, p in zip(row, pivot_row)) if ratio else row

            equalities = [substitute(row) for row in equalities]
            rows = [(substitute(row), is_strict) for row, is_strict in rows]

        system = self._reduce(rows)
        if system is None:
            return False
        remaining = set(range(self.num_variables))
        while system and remaining:
            variable = min(remaining, key=lambda j: (self._cost(system, j), j))
            remaining.discard(variable)
            before = len(system)
            system = self._eliminate(system, variable)
            if system is None:
                return False
            if self.record_steps:
                self.steps.append((variable, before, len(system)))
        # any surviving row has no variables left
        return not any(system.values())

    @staticmethod
    def _cost(system: Dict[Row, bool], j: int) -> int:
        positive = sum(1 for row in system if row[j] > 0)
        negative = sum(1 for row in system if row[j] < 0)
        return positive * negative - positive - negative

    @staticmethod
    def _reduce(rows: Iterable[Tuple[Row, bool]]) -> Optional[Dict[Row, bool]]:
        """Normalizes and dedupes rows; `None` when some row reads 0 > 0."""
        system: Dict[Row, bool] = {}
        for row, is_strict in rows:
            normal = _normalize(row)
            if normal is None:
                if is_strict:
                    return None
                continue
            system[normal] = system.get(normal, False) or is_strict
        return system

    def _eliminate(self, system: Dict[Row, bool], j: int) -> Optional[Dict[Row, bool]]:
        positive = [(row, s) for row, s in system.items() if row[j] > 0]
        negative = [(row, s) for row, s in system.items() if row[j] < 0]
        rows = [(row, s) for row, s in system.items() if row[j] == 0]
        for p, p_strict in positive:
            for q, q_strict in negative:
                a, b = p[j], -q[j]
                rows.append((tuple(b * u + a * v for u, v in zip(p, q)), p_strict or q_strict))
        return self._reduce(rows)


def fourier_motzkin_feasible(
    num_variables: int, equalities: Iterable[Row] = (), strict: Iterable[Row] = (), nonstrict: Iterable[Row] = ()
) -> bool:
    return FourierMotzkin(num_variables).feasible(equalities, strict, nonstrict)


# Central arrangements.
# -----------------------------------------------------------------------------
class CentralArrangement(flax.struct.PyTreeNode):
    """Linear forms ℓ₁, ..., ℓₙ on ℝ^d; a zero form is a loop."""

    d: int = flax.struct.field(pytree_node=False)
    forms: Tuple[Row, ...] = flax.struct.field(pytree_node=False)

    @classmethod
    def create(cls, forms: Sequence[Sequence[RationalLike]], d: Optional[int] = None) -> "CentralArrangement":
        forms = tuple(tuple(to_rational(v) for v in form) for form in forms)
        if d is None:
            if not forms:
                raise ArgumentError("An arrangement without forms needs an explicit dimension.")
            d = len(forms[0])
        if d < 1:
            raise ArgumentError(f"Dimension must be at least 1, got {d}.")
        for form in forms:
            if len(form) != d:
                raise DimensionError(f"Form of length {len(form)} in dimension {d}.")
        return cls(d=d, forms=forms)

    @classmethod
    def from_state_dict(cls, state: Mapping[str, Any]) -> "CentralArrangement":
        return cls.create(state["forms"], d=int(state["d"]))

    def state_dict(self) -> Dict[str, Any]:
        return {"d": self.d, "forms": [[format_rational(v) for v in form] for form in self.forms]}

    @property
    def n(self) -> int:
        return len(self.forms)


def _sign_rows(forms: Sequence[Row], signs: Sequence[int]) -> Tuple[List[Row], List[Row]]:
    equalities, strict = [], []
    for form, sign in zip(forms, signs):
        if sign > 0:
            strict.append(form)
        elif sign < 0:
            strict.append(tuple(-v for v in form))
        else:
            equalities.append(form)
    return equalities, strict


def feasible_sign_vector(A: CentralArrangement, X: SignedVector) -> bool:
    """True iff some point x has sign(ℓᵢ(x)) = Xᵢ for every i."""
    if X.n != A.n:
        raise DimensionError(f"Sign vector of length {X.n} for an arrangement of {A.n} forms.")
    equalities, strict = _sign_rows(A.forms, X.entries)
    return fourier_motzkin_feasible(A.d, equalities, strict)


def _extend(
    num_variables: int,
    rows: Sequence[Row],
    base_strict: Sequence[Row],
    forced: FrozenSet[int],
    prefix: Tuple[int, ...],
) -> List[Tuple[int, ...]]:
    """Feasible full sign vectors of `rows` extending `prefix`, pruning infeasible prefixes."""
    equalities, strict = _sign_rows(rows, prefix)
    if not fourier_motzkin_feasible(num_variables, equalities, list(base_strict) + strict):
        return []
    if len(prefix) == len(rows):
        return [prefix]
    found = []
    choices = (1,) if len(prefix) in forced else (1, -1, 0)
    for sign in choices:
        found.extend(_extend(num_variables, rows, base_strict, forced, prefix + (sign,)))
    return found


def _extend_star(args) -> List[Tuple[int, ...]]:
    return _extend(*args)


def enumerate_sign_vectors(
    num_variables: int,
    rows: Sequence[Row],
    base_strict: Sequence[Row] = (),
    forced: Iterable[int] = (),
    jobs: int = 1,
) -> List[Tuple[int, ...]]:
    """All feasible sign vectors of the forms `rows`, subject to `base_strict`.

    Args:
        num_variables (`int`):
            Number of unknowns of every row.
        rows (`Sequence[Row]`):
            The forms whose signs are enumerated, in order.
        base_strict (`Sequence[Row]`, *optional*):
            Extra rows that must be positive everywhere.
        forced (`Iterable[int]`, *optional*):
            0-based positions of `rows` that may only take the sign `+`.
        jobs (`int`, *optional*, defaults to 1):
            Worker processes. With more than one, the three top-level sign branches
            are enumerated in a `multiprocessing.Pool`; the result does not depend on it.
    """
    forced = frozenset(forced)
    if not rows:
        return _extend(num_variables, rows, base_strict, forced, ())
    first = (1,) if 0 in forced else (1, -1, 0)
    branches = [(num_variables, rows, tuple(base_strict), forced, (sign,)) for sign in first]
    if jobs > 1 and len(branches) > 1:
        with Pool(min(jobs, len(branches))) as pool:
            results = pool.map(_extend_star, branches)
    else:
        results = [_extend_star(branch) for branch in branches]
    return sorted(itertools.chain.from_iterable(results))


def om_from_central_arrangement(A: CentralArrangement, jobs: int = 1) -> OrientedMatroid:
    check_ground_size(A.n)
    signs = enumerate_sign_vectors(A.d, A.forms, jobs=jobs)
    covectors = [SignedVector.from_entries(s) for s in signs]
    logging.info("Arrangement of %d forms in dimension %d has %d covectors", A.n, A.d, len(covectors))
    return OrientedMatroid.create(A.n, covectors)


# Polyhedral covers.
# -----------------------------------------------------------------------------
# 0·x - 1 > 0, the empty open polyhedron
def _empty_region(d: int) -> Tuple[Inequality, ...]:
    return (tuple([Fraction(0)] * d + [Fraction(-1)]),)


class PolyhedralCover(flax.struct.PyTreeNode):
    """Open polyhedra U₁, ..., U_m inside the open polyhedron X (`ambient`)."""

    d: int = flax.struct.field(pytree_node=False)
    regions: Tuple[Tuple[Inequality, ...], ...] = flax.struct.field(pytree_node=False)
    ambient: Tuple[Inequality, ...] = flax.struct.field(pytree_node=False, default=())

    @classmethod
    def create(
        cls,
        d: int,
        regions: Sequence[Sequence[Sequence[RationalLike]]],
        ambient: Sequence[Sequence[RationalLike]] = (),
    ) -> "PolyhedralCover":
        def parse(inequalities) -> Tuple[Inequality, ...]:
            parsed = []
            for inequality in inequalities:
                inequality = tuple(to_rational(v) for v in inequality)
                if len(inequality) != d + 1:
                    raise DimensionError(f"Inequality of length {len(inequality)} in dimension {d}, expected {d + 1}.")
                if inequality not in parsed:
                    parsed.append(inequality)
            return tuple(parsed)

        if d < 1:
            raise ArgumentError(f"Dimension must be at least 1, got {d}.")
        return cls(d=d, regions=tuple(parse(region) for region in regions), ambient=parse(ambient))

    @classmethod
    def from_state_dict(cls, state: Mapping[str, Any]) -> "PolyhedralCover":
        return cls.create(int(state["d"]), state["regions"], state.get("ambient", ()))

    def state_dict(self) -> Dict[str, Any]:
        def dump(inequalities):
            return [[format_rational(v) for v in inequality] for inequality in inequalities]

        return {"d": self.d, "regions": [dump(region) for region in self.regions], "ambient": dump(self.ambient)}

    @property
    def m(self) -> int:
        return len(self.regions)

    def distinct_inequalities(self) -> List[Inequality]:
        seen: List[Inequality] = []
        for inequality in itertools.chain(self.ambient, *self.regions):
            if inequality not in seen:
                seen.append(inequality)
        return seen


def _homogenize(inequality: Inequality) -> Row:
    return (inequality[-1],) + tuple(inequality[:-1])


def _positive_cone(d: int) -> Row:
    return (Fraction(1),) + tuple([Fraction(0)] * d)


def code_of_polyhedral_cover(P: PolyhedralCover, jobs: int = 1) -> Code:
    """The code of the cover relative to the ambient polyhedron.

    Every feasible sign vector of the lifted inequality arrangement is a cell; a cell
    lies in Uᵢ exactly when all of Uᵢ's inequalities are positive on it.
    """
    inequalities = P.distinct_inequalities()
    if len(inequalities) > MAX_GROUND_SET:
        raise CapacityError(f"Cover has {len(inequalities)} distinct inequalities, the bound is {MAX_GROUND_SET}.")
    index = {inequality: i for i, inequality in enumerate(inequalities)}
    rows = [_homogenize(inequality) for inequality in inequalities]
    forced = [index[inequality] for inequality in P.ambient]
    cells = enumerate_sign_vectors(P.d + 1, rows, base_strict=[_positive_cone(P.d)], forced=forced, jobs=jobs)
    region_rows = [[index[inequality] for inequality in region] for region in P.regions]
    codewords = set()
    for cell in cells:
        codewords.add(frozenset(i + 1 for i, region in enumerate(region_rows) if all(cell[k] > 0 for k in region)))
    logging.info("Cover of %d regions: %d cells, %d codewords", P.m, len(cells), len(codewords))
    return Code.create(P.m, codewords)


def halfspace_cover(A: CentralArrangement) -> PolyhedralCover:
    """The open positive half-spaces H₁⁺, ..., Hₙ⁺ in ℝ^d."""
    return PolyhedralCover.create(A.d, [[form + (0,)] for form in A.forms])


def signed_halfspace_cover(A: CentralArrangement) -> PolyhedralCover:
    """H₁⁺, ..., Hₙ⁺ followed by H₁⁻, ..., Hₙ⁻; its code is L± of the arrangement."""
    positive = [[form + (0,)] for form in A.forms]
    negative = [[tuple(-v for v in form) + (0,)] for form in A.forms]
    return PolyhedralCover.create(A.d, positive + negative)


def _merge(*groups: Iterable[Inequality]) -> Tuple[Inequality, ...]:
    merged: List[Inequality] = []
    for inequality in itertools.chain(*groups):
        if inequality not in merged:
            merged.append(inequality)
    return tuple(merged)


def intersection_cover(P: PolyhedralCover, sigmas: Sequence[Optional[Iterable[int]]]) -> PolyhedralCover:
    """The cover Vⱼ = ∩_{i∈σⱼ} Uᵢ realizing the image of the morphism with trunks tk(σⱼ)."""
    regions = []
    for sigma in sigmas:
        if sigma is None:
            regions.append(_empty_region(P.d))
            continue
        sigma = sorted(sigma)
        if any(not 1 <= i <= P.m for i in sigma):
            raise ArgumentError(f"Trunk set {sigma} is not a subset of [{P.m}].")
        regions.append(_merge(*(P.regions[i - 1] for i in sigma)))
    return PolyhedralCover(d=P.d, regions=tuple(regions), ambient=P.ambient)


def trunk_cover(P: PolyhedralCover, sigma: Iterable[int]) -> PolyhedralCover:
    """The cover realizing tk(σ): every region and the ambient are cut down to ∩_{j∈σ} Uⱼ."""
    sigma = sorted(sigma)
    if any(not 1 <= i <= P.m for i in sigma):
        raise ArgumentError(f"Trunk set {sigma} is not a subset of [{P.m}].")
    common = _merge(*(P.regions[j - 1] for j in sigma))
    return PolyhedralCover(
        d=P.d,
        regions=tuple(_merge(region, common) for region in P.regions),
        ambient=_merge(P.ambient, common),
    )


class PolytopeWitness(flax.struct.PyTreeNode):
    """A hyperplane code, its trunk at the ambient half-spaces, and a morphism onto a cover's code."""

    hyperplane_code: Code = flax.struct.field(pytree_node=False)
    trunk_code: Code = flax.struct.field(pytree_node=False)
    morphism: CodeMorphism = flax.struct.field(pytree_node=False)

    def state_dict(self) -> Dict[str, Any]:
        return {
            "hyperplane_code": self.hyperplane_code.state_dict(),
            "trunk_code": self.trunk_code.state_dict(),
            "morphism": self.morphism.state_dict(),
        }


def polytope_witness(P: PolyhedralCover) -> PolytopeWitness:
    """Exhibits code(P) as the image of a trunk of a hyperplane code.

    Every bounding half-space becomes a neuron. Restricting to the trunk where the
    ambient half-spaces fire and sending region i to the trunk of its own
    half-spaces reproduces the code of the cover.
    """
    inequalities = P.distinct_inequalities()
    index = {inequality: i + 1 for i, inequality in enumerate(inequalities)}
    hyperplanes = PolyhedralCover(d=P.d, regions=tuple((inequality,) for inequality in inequalities), ambient=())
    hyperplane_code = code_of_polyhedral_cover(hyperplanes)
    ambient = [index[inequality] for inequality in P.ambient]
    trunk_code = Code(n=hyperplane_code.n, codewords=trunk(hyperplane_code, ambient))
    sigmas = [frozenset(index[inequality] for inequality in region) for region in P.regions]
    morphism = CodeMorphism.from_trunks(trunk_code, sigmas)
    if apply_morphism(morphism) != code_of_polyhedral_cover(P):
        raise InconsistencyError("The hyperplane trunk does not map onto the code of the cover.")
    return PolytopeWitness(hyperplane_code=hyperplane_code, trunk_code=trunk_code, morphism=morphism)


def cover_relation_holds(P: PolyhedralCover, sigma: Iterable[int], tau: Iterable[int]) -> bool:
    """Decides ∩_{i∈σ} Uᵢ ⊆ ∪_{j∈τ} Uⱼ inside the ambient polyhedron.

    A point escapes the union when it violates one inequality of every Uⱼ, so the
    containment fails iff one of those choices is feasible together with the
    inequalities of X and of the Uᵢ.
    """
    sigma, tau = sorted(sigma), sorted(tau)
    for i in sigma + tau:
        if not 1 <= i <= P.m:
            raise ArgumentError(f"Region {i} is not in 1..{P.m}.")
    strict = [_positive_cone(P.d)] + [_homogenize(q) for q in _merge(P.ambient, *(P.regions[i - 1] for i in sigma))]
    escape_choices = []
    for j in tau:
        if not P.regions[j - 1]:
            # Uⱼ is the whole space
            return True
        escape_choices.append(P.regions[j - 1])
    for choice in itertools.product(*escape_choices):
        nonstrict = [tuple(-v for v in _homogenize(q)) for q in choice]
        if fourier_motzkin_feasible(P.d + 1, strict=strict, nonstrict=nonstrict):
            return False
    return True

