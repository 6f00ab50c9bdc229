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

"""Neural ideals and oriented matroid ideals.

Pseudomonomials x^σ(1-x)^τ are kept as a pair of n-bit masks. Squarefree monomials
in k[x₁..xₙ, y₁..yₙ] are kept as a single 2n-bit mask with the x variables in the
low n bits and the y variables in the high n bits, so that lcm is `|` and
divisibility is a subset test. Monomial ideals are always stored by their minimal
generators; the unit ideal has the single generator 0 and the zero ideal has none.
"""

from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

import flax.struct
import numpy as np
from absl import logging

from .codes import Code, CodeMorphism, matroid_code
from .errors import ArgumentError, CapacityError, DimensionError, InconsistencyError
from .oriented_matroid import AffineOrientedMatroid, GroundMap, OrientedMatroid, minor, structure_flags
from .signs import SignedSet, SignedVector, check_ground_size, elements_to_mask, mask_to_elements


MAX_CANONICAL_NEURONS = 16

# number of (pseudomonomial, codeword) pairs compared per numpy batch
_SCAN_BATCH = 1 << 22


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def _sorted_elements(mask: int) -> List[int]:
    return sorted(mask_to_elements(mask))


# Pseudomonomials and the neural ideal.
# -----------------------------------------------------------------------------
class Pseudomonomial(flax.struct.PyTreeNode):
    """x^σ(1-x)^τ with σ and τ given as bitmasks over [n]."""

    sigma: int = flax.struct.field(pytree_node=False)
    tau: int = flax.struct.field(pytree_node=False)

    @classmethod
    def from_sets(cls, sigma: Iterable[int], tau: Iterable[int]) -> "Pseudomonomial":
        return cls(sigma=elements_to_mask(sigma), tau=elements_to_mask(tau))

    @classmethod
    def improper(cls, i: int) -> "Pseudomonomial":
        return cls(sigma=1 << (i - 1), tau=1 << (i - 1))

    @property
    def proper(self) -> bool:
        return not self.sigma & self.tau

    @property
    def degree(self) -> int:
        return _popcount(self.sigma) + _popcount(self.tau)

    def divides(self, other: "Pseudomonomial") -> bool:
        return not (self.sigma & ~other.sigma) and not (self.tau & ~other.tau)

    def nonzero_at(self, point: int) -> bool:
        return (point & self.sigma) == self.sigma and not point & self.tau

    def signed_set(self) -> SignedSet:
        return frozenset(mask_to_elements(self.sigma)) | frozenset(-e for e in mask_to_elements(self.tau))

    def sort_key(self) -> Tuple[int, List[int], List[int]]:
        return self.degree, _sorted_elements(self.sigma), _sorted_elements(self.tau)

    def __str__(self) -> str:
        factors = [f"x{i}" for i in _sorted_elements(self.sigma)]
        factors += [f"(1-x{i})" for i in _sorted_elements(self.tau)]
        return "".join(factors) or "1"


class PseudomonomialIdeal(flax.struct.PyTreeNode):
    """An ideal of 𝔽₂[x₁..xₙ] given by pseudomonomial generators."""

    n: int = flax.struct.field(pytree_node=False)
    generators: FrozenSet[Pseudomonomial] = flax.struct.field(pytree_node=False)

    @classmethod
    def create(cls, n: int, generators: Iterable[Pseudomonomial]) -> "PseudomonomialIdeal":
        generators = frozenset(generators)
        for p in generators:
            if (p.sigma | p.tau) >> n:
                raise DimensionError(f"Pseudomonomial {p} uses variables outside of x1..x{n}.")
        return cls(n=n, generators=generators)

    @classmethod
    def from_state_dict(cls, state: Mapping[str, Any]) -> "PseudomonomialIdeal":
        pos, neg = state["pos"], state["neg"]
        if len(pos) != len(neg):
            raise DimensionError(f"Got {len(pos)} x-supports and {len(neg)} (1-x)-supports.")
        return cls.create(int(state["n"]), (Pseudomonomial.from_sets(s, t) for s, t in zip(pos, neg)))

    def state_dict(self) -> Dict[str, Any]:
        ordered = self.sorted_generators
        return {
            "n": self.n,
            "pos": [_sorted_elements(p.sigma) for p in ordered],
            "neg": [_sorted_elements(p.tau) for p in ordered],
        }

    @property
    def sorted_generators(self) -> List[Pseudomonomial]:
        return sorted(self.generators, key=Pseudomonomial.sort_key)

    @property
    def proper_generators(self) -> FrozenSet[Pseudomonomial]:
        return frozenset(p for p in self.generators if p.proper)

    def with_impropers(self) -> "PseudomonomialIdeal":
        return self.replace(generators=self.generators | {Pseudomonomial.improper(i) for i in range(1, self.n + 1)})

    def minimal(self) -> "PseudomonomialIdeal":
        """Proper generators that are not divisible by another generator."""
        kept: List[Pseudomonomial] = []
        for p in sorted(self.generators, key=Pseudomonomial.sort_key):
            if not any(q.divides(p) for q in kept):
                kept.append(p)
        return self.replace(generators=frozenset(p for p in kept if p.proper))


def _pseudomonomial_batch(n: int, start: int, stop: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    index = np.arange(start, stop, dtype=np.int64)
    digits = np.empty((n, index.size), dtype=np.int64)
    pos = np.zeros(index.size, dtype=np.int64)
    neg = np.zeros(index.size, dtype=np.int64)
    for i in range(n):
        digits[i] = (index // 3**i) % 3
        pos |= (digits[i] == 1).astype(np.int64) << i
        neg |= (digits[i] == 2).astype(np.int64) << i
    return pos, neg, digits


def _vanishes_on(pos: np.ndarray, neg: np.ndarray, points: np.ndarray) -> np.ndarray:
    """For each (pos, neg) pseudomonomial, whether it is zero at every point."""
    if points.size == 0:
        return np.ones(pos.shape, dtype=bool)
    vanishes = np.ones(pos.shape, dtype=bool)
    step = max(1, _SCAN_BATCH // points.size)
    for start in range(0, pos.size, step):
        p, q = pos[start : start + step, None], neg[start : start + step, None]
        nonzero = ((p & ~points[None, :]) == 0) & ((q & points[None, :]) == 0)
        vanishes[start : start + step] = ~nonzero.any(axis=1)
    return vanishes


def _code_points(C: Code) -> np.ndarray:
    return np.array(sorted(elements_to_mask(c) for c in C.codewords), dtype=np.int64)


def canonical_form(C: Code, capacity: int = MAX_CANONICAL_NEURONS) -> PseudomonomialIdeal:
    """The minimal proper pseudomonomials of the neural ideal of `C`.

    x^σ(1-x)^τ lies in the ideal iff no codeword c has σ ⊆ c and τ ∩ c = ∅. Membership is
    closed under multiplication, so a member is minimal exactly when none of the
    pseudomonomials obtained by dropping a single factor is a member.
    """
    check_ground_size(C.n)
    if C.n > capacity:
        raise CapacityError(f"Canonical form is limited to {capacity} neurons, got {C.n}.")
    n = C.n
    points = _code_points(C)
    total = 3**n
    step = max(1, min(total, _SCAN_BATCH // max(1, points.size)))
    generators = []
    for start in range(0, total, step):
        pos, neg, digits = _pseudomonomial_batch(n, start, min(total, start + step))
        minimal = _vanishes_on(pos, neg, points)
        for i in range(n):
            if not minimal.any():
                break
            bit = np.int64(1 << i)
            dropped = minimal & (digits[i] != 0)
            if not dropped.any():
                continue
            divisor = _vanishes_on(pos[dropped] & ~bit, neg[dropped] & ~bit, points)
            minimal[np.flatnonzero(dropped)[divisor]] = False
        generators.extend(Pseudomonomial(sigma=int(p), tau=int(q)) for p, q in zip(pos[minimal], neg[minimal]))
    logging.info("Canonical form of a %d-codeword code on %d neurons has %d generators", len(C), n, len(generators))
    return PseudomonomialIdeal.create(n, generators)


def variety(I: PseudomonomialIdeal) -> Code:
    """The points of 𝔽₂ⁿ at which every generator vanishes."""
    check_ground_size(I.n)
    points = np.arange(1 << I.n, dtype=np.int64)
    keep = np.ones(points.shape, dtype=bool)
    for p in I.generators:
        keep &= ~(((points & p.sigma) == p.sigma) & ((points & p.tau) == 0))
    return Code.create(I.n, (mask_to_elements(int(c)) for c in points[keep]))


def contains(I: PseudomonomialIdeal, p: Pseudomonomial) -> bool:
    """Membership in the Boolean ring 𝔽₂[x]/⟨xᵢ² - xᵢ⟩, where every ideal is the vanishing ideal of its variety."""
    if (p.sigma | p.tau) >> I.n:
        raise DimensionError(f"Pseudomonomial {p} uses variables outside of x1..x{I.n}.")
    points = _code_points(variety(I))
    return bool(_vanishes_on(np.array([p.sigma], dtype=np.int64), np.array([p.tau], dtype=np.int64), points)[0])


def weak_elimination_witness(
    I: PseudomonomialIdeal,
) -> Optional[Tuple[Pseudomonomial, Pseudomonomial, int]]:
    """First (p₁, p₂, e) whose eliminant is divisible by no generator, or None.

    The improper pseudomonomials xᵢ(1-xᵢ) are added to the generators first. For
    p₁ = x^σ(1-x)^τ and p₂ = x^α(1-x)^β crossing at e ∈ (σ∖τ) ∩ (β∖α), the eliminant
    is x^{(σ∪α)∖e}(1-x)^{(τ∪β)∖e}.
    """
    generators = I.with_impropers().sorted_generators
    for p1 in generators:
        for p2 in generators:
            crossing = p1.sigma & ~p1.tau & p2.tau & ~p2.sigma
            while crossing:
                bit = crossing & -crossing
                crossing ^= bit
                eliminant = Pseudomonomial(sigma=(p1.sigma | p2.sigma) & ~bit, tau=(p1.tau | p2.tau) & ~bit)
                if not any(q.divides(eliminant) for q in generators):
                    return p1, p2, bit.bit_length()
    return None


def weak_elimination_check(I: PseudomonomialIdeal) -> bool:
    witness = weak_elimination_witness(I)
    if witness is not None:
        p1, p2, e = witness
        logging.info("Eliminating %d between %s and %s leaves no generator", e, p1, p2)
    return witness is None


def satisfies_incomparability(I: PseudomonomialIdeal) -> bool:
    """Proper generators with nested supports are equal or opposite."""
    generators = I.proper_generators
    for p in generators:
        for q in generators:
            if p == q or (p.sigma == q.tau and p.tau == q.sigma):
                continue
            if not ((p.sigma | p.tau) & ~(q.sigma | q.tau)):
                return False
    return True


def neural_ring_map(f: CodeMorphism) -> Tuple[Optional[Pseudomonomial], ...]:
    """Images of x₁..x_m under the pullback of `f`: xᵢ ↦ x^{σᵢ}, `None` (zero) for an empty trunk.

    The image of xᵢ is nonzero at c exactly when i ∈ f(c).
    """
    return tuple(None if sigma is None else Pseudomonomial.from_sets(sigma, ()) for sigma in f.sigmas)


def pull_back_monomial(f: CodeMorphism, support: Iterable[int]) -> Optional[Pseudomonomial]:
    """The image of the monomial x^S of the target ring, `None` when it maps to zero."""
    images = neural_ring_map(f)
    sigma = 0
    for i in support:
        if not 1 <= i <= f.m:
            raise DimensionError(f"Variable x{i} is not in the target ring on {f.m} neurons.")
        image = images[i - 1]
        if image is None:
            return None
        sigma |= image.sigma
    return Pseudomonomial(sigma=sigma, tau=0)


# Squarefree monomial ideals in k[x, y].
# -----------------------------------------------------------------------------
def _minimalize(generators: Iterable[int]) -> FrozenSet[int]:
    kept: List[int] = []
    for g in sorted(set(generators), key=lambda m: (_popcount(m), m)):
        if not any(not k & ~g for k in kept):
            kept.append(g)
    return frozenset(kept)


class SquarefreeMonomialIdeal(flax.struct.PyTreeNode):
    """A squarefree monomial ideal of k[x₁..xₙ, y₁..yₙ] in minimal-generator form."""

    n: int = flax.struct.field(pytree_node=False)
    generators: FrozenSet[int] = flax.struct.field(pytree_node=False)

    @classmethod
    def create(cls, n: int, generators: Iterable[int]) -> "SquarefreeMonomialIdeal":
        generators = list(generators)
        for g in generators:
            if g < 0 or g >> (2 * n):
                raise DimensionError(f"Monomial mask {g} uses variables outside of x1..x{n}, y1..y{n}.")
        return cls(n=n, generators=_minimalize(generators))

    @classmethod
    def unit(cls, n: int) -> "SquarefreeMonomialIdeal":
        return cls(n=n, generators=frozenset({0}))

    @classmethod
    def zero(cls, n: int) -> "SquarefreeMonomialIdeal":
        return cls(n=n, generators=frozenset())

    @classmethod
    def from_supports(cls, n: int, supports: Iterable[Tuple[Iterable[int], Iterable[int]]]) -> "SquarefreeMonomialIdeal":
        return cls.create(n, (elements_to_mask(x) | elements_to_mask(y) << n for x, y in supports))

    @classmethod
    def from_state_dict(cls, state: Mapping[str, Any]) -> "SquarefreeMonomialIdeal":
        xs, ys = state["x"], state["y"]
        if len(xs) != len(ys):
            raise DimensionError(f"Got {len(xs)} x-supports and {len(ys)} y-supports.")
        return cls.from_supports(int(state["n"]), zip(xs, ys))

    def state_dict(self) -> Dict[str, Any]:
        ordered = self.sorted_generators
        return {"n": self.n, "x": [self.x_part(g) for g in ordered], "y": [self.y_part(g) for g in ordered]}

    def x_part(self, g: int) -> List[int]:
        return _sorted_elements(g & ((1 << self.n) - 1))

    def y_part(self, g: int) -> List[int]:
        return _sorted_elements(g >> self.n)

    @property
    def sorted_generators(self) -> List[int]:
        return sorted(self.generators, key=lambda g: (_popcount(g), self.x_part(g), self.y_part(g)))

    def __contains__(self, monomial: int) -> bool:
        return any(not g & ~monomial for g in self.generators)

    def format_generator(self, g: int) -> str:
        return "".join([f"x{i}" for i in self.x_part(g)] + [f"y{i}" for i in self.y_part(g)]) or "1"


def _check_same_ring(J1: SquarefreeMonomialIdeal, J2: SquarefreeMonomialIdeal):
    if J1.n != J2.n:
        raise DimensionError(f"Ideals live in rings on {J1.n} and {J2.n} elements.")


def m_xy(n: int, X: SignedVector) -> int:
    """x^{X⁺} y^{X⁻} as a mask."""
    return X.pos | X.neg << n


def complement_monomial(n: int, X: SignedVector) -> int:
    """m_xy of the complement ±[n] ∖ X."""
    full = (1 << n) - 1
    return (full & ~X.pos) | (full & ~X.neg) << n


def ideal_intersect(J1: SquarefreeMonomialIdeal, J2: SquarefreeMonomialIdeal) -> SquarefreeMonomialIdeal:
    _check_same_ring(J1, J2)
    return SquarefreeMonomialIdeal.create(J1.n, (a | b for a in J1.generators for b in J2.generators))


def intersect_all(n: int, ideals: Iterable[SquarefreeMonomialIdeal]) -> SquarefreeMonomialIdeal:
    result = SquarefreeMonomialIdeal.unit(n)
    for J in ideals:
        result = ideal_intersect(result, J)
    return result


def ideal_quotient(J1: SquarefreeMonomialIdeal, J2: SquarefreeMonomialIdeal) -> SquarefreeMonomialIdeal:
    """(J1 : J2), the intersection over generators g of J2 of ⟨m / gcd(m, g) : m ∈ J1⟩."""
    _check_same_ring(J1, J2)
    return intersect_all(
        J1.n, (SquarefreeMonomialIdeal.create(J1.n, (m & ~g for m in J1.generators)) for g in J2.generators)
    )


def specialize(J: SquarefreeMonomialIdeal, e: int) -> SquarefreeMonomialIdeal:
    """Sets x_e = 1 and y_e = 0."""
    if not 1 <= e <= J.n:
        raise ArgumentError(f"Element {e} is not in 1..{J.n}.")
    x_bit, y_bit = 1 << (e - 1), 1 << (J.n + e - 1)
    return SquarefreeMonomialIdeal.create(J.n, (g & ~x_bit for g in J.generators if not g & y_bit))


def variable_prime(n: int, variables: int) -> SquarefreeMonomialIdeal:
    """The prime ideal generated by the variables in the mask."""
    return SquarefreeMonomialIdeal.create(n, (1 << i for i in range(2 * n) if variables >> i & 1))


def alexander_dual(J: SquarefreeMonomialIdeal) -> SquarefreeMonomialIdeal:
    """Intersection over the generators g of the prime generated by the variables of g."""
    return intersect_all(J.n, (variable_prime(J.n, g) for g in J.generators))


def polarize(I: PseudomonomialIdeal) -> SquarefreeMonomialIdeal:
    return SquarefreeMonomialIdeal.create(I.n, (p.sigma | p.tau << I.n for p in I.generators))


def depolarize(J: SquarefreeMonomialIdeal) -> PseudomonomialIdeal:
    low = (1 << J.n) - 1
    return PseudomonomialIdeal.create(J.n, (Pseudomonomial(sigma=g & low, tau=g >> J.n) for g in J.generators))


# Oriented matroid ideals.
# -----------------------------------------------------------------------------
def prime(W: SignedVector) -> SquarefreeMonomialIdeal:
    """𝔭(W) = ⟨x_e : W_e = +⟩ + ⟨y_e : W_e = -⟩."""
    return variable_prime(W.n, m_xy(W.n, W))


def signed_set_monomial(n: int, S: Iterable[int]) -> int:
    """x_e for +e and y_e for -e in S; an improper pair {e, -e} gives x_e y_e."""
    variables = 0
    for x in S:
        if x == 0 or abs(x) > n:
            raise ArgumentError(f"Signed element {x} is not in ±[{n}].")
        variables |= 1 << (x - 1) if x > 0 else 1 << (n - x - 1)
    return variables


def circuit_prime(n: int, C: Iterable[int]) -> SquarefreeMonomialIdeal:
    """P_C for a signed set C ⊆ ±[n], proper or improper."""
    return variable_prime(n, signed_set_monomial(n, C))


def _all_circuit_sets(M: OrientedMatroid) -> List[SignedSet]:
    improper = [frozenset({i, -i}) for i in range(1, M.n + 1)]
    return list(M.circuit_sets) + improper


def om_ideal(M: OrientedMatroid) -> SquarefreeMonomialIdeal:
    """O(M), generated by the monomials of the complements of covectors."""
    J = SquarefreeMonomialIdeal.create(M.n, (complement_monomial(M.n, X) for X in M.covectors))
    logging.debug("O(M) on %d elements has %d minimal generators", M.n, len(J.generators))
    return J


def om_ideal_primes(M: OrientedMatroid) -> SquarefreeMonomialIdeal:
    """O(M) as the intersection of P_C over all proper and improper circuits."""
    J = intersect_all(M.n, (circuit_prime(M.n, C) for C in _all_circuit_sets(M)))
    expected = om_ideal(M)
    if J != expected:
        raise InconsistencyError(
            f"Prime decomposition has {len(J.generators)} generators, covector form has {len(expected.generators)}."
        )
    return J


def om_dual_ideal(M: OrientedMatroid) -> SquarefreeMonomialIdeal:
    """O(M)⋆ = ⟨m_xy(C)⟩ over proper and improper circuits.

    For acyclic matroids the result is checked against the intersection of 𝔭(W) over
    the topes W.
    """
    J = SquarefreeMonomialIdeal.create(M.n, (signed_set_monomial(M.n, C) for C in _all_circuit_sets(M)))
    if structure_flags(M).acyclic:
        by_topes = intersect_all(M.n, (prime(W) for W in M.topes))
        if by_topes != J:
            raise InconsistencyError("Circuit generators of O(M)⋆ disagree with the tope prime intersection.")
    return J


def _embed_deletion(J: SquarefreeMonomialIdeal, n: int, g: int) -> SquarefreeMonomialIdeal:
    """Re-indexes an ideal of M ∖ g into the ring of M."""

    def lift(mask: int) -> int:
        low, high = mask & ((1 << (g - 1)) - 1), mask >> (g - 1)
        return low | high << g

    m = J.n
    x_mask = (1 << m) - 1
    return SquarefreeMonomialIdeal.create(n, (lift(h & x_mask) | lift(h >> m) << n for h in J.generators))


def affine_om_ideal(A: AffineOrientedMatroid) -> SquarefreeMonomialIdeal:
    """O_g(M), generated by m_xy(Z) with x_g = y_g = 1 over covectors with Z_g = +.

    Checked against the quotient [O(M) : O(M ∖ g)] specialized at x_g = 1, y_g = 0.
    """
    M, g = A.base, A.g
    drop = ~(1 << (g - 1) | 1 << (M.n + g - 1))
    J = SquarefreeMonomialIdeal.create(M.n, (m_xy(M.n, Z) & drop for Z in A.positive_covectors))
    if M.n > 1:
        deletion = _embed_deletion(om_ideal(minor(M, delete=[g])), M.n, g)
    else:
        deletion = SquarefreeMonomialIdeal.unit(M.n)
    by_quotient = specialize(ideal_quotient(om_ideal(M), deletion), g)
    if by_quotient != J:
        raise InconsistencyError(
            f"Affine ideal at {g} disagrees with the quotient-specialization route "
            f"({len(J.generators)} vs {len(by_quotient.generators)} generators)."
        )
    return J


# Functoriality.
# -----------------------------------------------------------------------------
def _map_monomial(f: GroundMap, g: int) -> Optional[int]:
    image = 0
    for i in range(2 * f.n1):
        if not g >> i & 1:
            continue
        e, sign = (i + 1, 1) if i < f.n1 else (i - f.n1 + 1, -1)
        target = sign * f(e)
        if target == 0:
            return None
        image |= 1 << (target - 1) if target > 0 else 1 << (f.n2 - target - 1)
    return image


def strong_monomial_map(f: GroundMap, J: SquarefreeMonomialIdeal) -> SquarefreeMonomialIdeal:
    """The ideal generated by the images of J's generators, xᵢ ↦ x_{f(i)}, yᵢ ↦ y_{f(i)}, 0 on ∘.

    A negative image f(i) = -j swaps the variables: xᵢ ↦ y_j and yᵢ ↦ x_j. Images are
    taken by support.
    """
    if f.n1 != J.n:
        raise DimensionError(f"Map from {f.n1} elements applied to an ideal on {J.n} elements.")
    images = (_map_monomial(f, g) for g in J.generators)
    return SquarefreeMonomialIdeal.create(f.n2, (m for m in images if m is not None))


def strong_monomial_map_respects(f: GroundMap, M1: OrientedMatroid, M2: OrientedMatroid) -> bool:
    """Every generator of O(M1)⋆ maps to 0 or into O(M2)⋆."""
    if f.n1 != M1.n or f.n2 != M2.n:
        raise DimensionError(f"Map {f.n1}→{f.n2} does not fit matroids on {M1.n} and {M2.n} elements.")
    source, target = om_dual_ideal(M1), om_dual_ideal(M2)
    for g in source.sorted_generators:
        image = _map_monomial(f, g)
        if image is not None and image not in target:
            logging.info("Image of %s leaves O(M2)⋆", source.format_generator(g))
            return False
    return True


class CommutingSquare(flax.struct.PyTreeNode):
    varieties_agree: bool = flax.struct.field(pytree_node=False)
    generators_agree: bool = flax.struct.field(pytree_node=False)

    @property
    def holds(self) -> bool:
        return self.varieties_agree and self.generators_agree

    def state_dict(self) -> Dict[str, Any]:
        return {"holds": self.holds, "varieties_agree": self.varieties_agree, "generators_agree": self.generators_agree}


def commuting_square(M: OrientedMatroid) -> CommutingSquare:
    """Compares the depolarized O(M)⋆ with the neural ideal of W⁺(M).

    The varieties must coincide, and so must the minimal proper generators of the
    depolarization and the canonical form of W⁺(M).
    """
    if not structure_flags(M).acyclic:
        raise ArgumentError("The commuting square is only defined for acyclic oriented matroids.")
    depolarized = depolarize(om_dual_ideal(M))
    code = matroid_code(M, "W+")
    varieties_agree = variety(depolarized) == code
    generators_agree = depolarized.minimal().generators == canonical_form(code).generators
    if not (varieties_agree and generators_agree):
        logging.warning("Commuting square fails: varieties %s, generators %s", varieties_agree, generators_agree)
    return CommutingSquare(varieties_agree=varieties_agree, generators_agree=generators_agree)
