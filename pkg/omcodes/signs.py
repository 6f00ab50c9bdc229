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

"""Sign vectors over a finite ground set and their elementary calculus.

A sign vector on E = {1, ..., n} is stored as two n-bit masks, one for the positive
and one for the negative part (bit ``e - 1`` stands for element ``e``). The public
contract is the string encoding over ``"+0-"``.
"""

import itertools
from typing import FrozenSet, Iterable, Iterator, Sequence, Tuple

import flax.struct
import numpy as np

from .errors import ArgumentError, CapacityError, DimensionError


MAX_GROUND_SET = 24

# signed elements of ±E are encoded as +e / -e
SignedElement = int
SignedSet = FrozenSet[SignedElement]

_SYMBOL_TO_SIGN = {"+": 1, "0": 0, "-": -1, "−": -1}
_SIGN_TO_SYMBOL = {1: "+", 0: "0", -1: "-"}


def check_ground_size(n: int) -> int:
    if n < 1:
        raise ArgumentError(f"Ground set size must be at least 1, got {n}.")
    if n > MAX_GROUND_SET:
        raise CapacityError(f"Ground set size {n} exceeds the enumeration bound {MAX_GROUND_SET}.")
    return n


def mask_to_elements(mask: int) -> FrozenSet[int]:
    elements = []
    e = 1
    while mask:
        if mask & 1:
            elements.append(e)
        mask >>= 1
        e += 1
    return frozenset(elements)


def elements_to_mask(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << (e - 1)
    return mask


class GroundSet(flax.struct.PyTreeNode):
    """The ground set E = {1, ..., n} together with its signed copy ±E."""

    n: int = flax.struct.field(pytree_node=False)

    @classmethod
    def create(cls, n: int) -> "GroundSet":
        return cls(n=check_ground_size(int(n)))

    @property
    def elements(self) -> Tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    @property
    def signed_elements(self) -> Tuple[SignedElement, ...]:
        return self.elements + tuple(-e for e in self.elements)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1


class SignedVector(flax.struct.PyTreeNode):
    """An element of {+, 0, -}^E."""

    n: int = flax.struct.field(pytree_node=False)
    pos: int = flax.struct.field(pytree_node=False, default=0)
    neg: int = flax.struct.field(pytree_node=False, default=0)

    @classmethod
    def create(cls, n: int, pos: int = 0, neg: int = 0) -> "SignedVector":
        if pos & neg:
            raise ArgumentError(f"Positive and negative parts overlap on {sorted(mask_to_elements(pos & neg))}.")
        if (pos | neg) >> n:
            raise DimensionError(f"Sign vector entries outside of the ground set 1..{n}.")
        return cls(n=n, pos=pos, neg=neg)

    @classmethod
    def parse(cls, text: str) -> "SignedVector":
        pos = neg = 0
        for i, symbol in enumerate(text):
            try:
                sign = _SYMBOL_TO_SIGN[symbol]
            except KeyError:
                raise ArgumentError(f"Invalid sign symbol {symbol!r} in {text!r}.") from None
            if sign > 0:
                pos |= 1 << i
            elif sign < 0:
                neg |= 1 << i
        return cls(n=len(text), pos=pos, neg=neg)

    @classmethod
    def from_entries(cls, entries: Sequence[int]) -> "SignedVector":
        pos = neg = 0
        for i, sign in enumerate(entries):
            if sign > 0:
                pos |= 1 << i
            elif sign < 0:
                neg |= 1 << i
        return cls(n=len(entries), pos=pos, neg=neg)

    @classmethod
    def from_signed_set(cls, n: int, signed: Iterable[SignedElement]) -> "SignedVector":
        pos = neg = 0
        for x in signed:
            if x == 0 or abs(x) > n:
                raise ArgumentError(f"Signed element {x} is not in ±[{n}].")
            if x > 0:
                pos |= 1 << (x - 1)
            else:
                neg |= 1 << (-x - 1)
        return cls.create(n, pos, neg)

    @classmethod
    def zero(cls, n: int) -> "SignedVector":
        return cls(n=n)

    def __str__(self) -> str:
        return "".join(_SIGN_TO_SYMBOL[self[e]] for e in range(1, self.n + 1))

    def __repr__(self) -> str:
        return f"SignedVector({str(self)!r})"

    def __getitem__(self, e: int) -> int:
        bit = 1 << (e - 1)
        if self.pos & bit:
            return 1
        if self.neg & bit:
            return -1
        return 0

    def __neg__(self) -> "SignedVector":
        return self.replace(pos=self.neg, neg=self.pos)

    @property
    def entries(self) -> Tuple[int, ...]:
        return tuple(self[e] for e in range(1, self.n + 1))

    @property
    def support_mask(self) -> int:
        return self.pos | self.neg

    @property
    def support(self) -> FrozenSet[int]:
        return mask_to_elements(self.pos | self.neg)

    @property
    def is_zero(self) -> bool:
        return not (self.pos | self.neg)

    def signed_set(self) -> SignedSet:
        return frozenset(mask_to_elements(self.pos)) | frozenset(-e for e in mask_to_elements(self.neg))

    def restrict(self, elements: Sequence[int]) -> "SignedVector":
        """Restriction to `elements`, relabelled 1..len(elements) in the given order."""
        return SignedVector.from_entries([self[e] for e in elements])


def _check_lengths(X: SignedVector, Y: SignedVector):
    if X.n != Y.n:
        raise DimensionError(f"Sign vectors of length {X.n} and {Y.n} cannot be combined.")


def compose(X: SignedVector, Y: SignedVector) -> SignedVector:
    _check_lengths(X, Y)
    free = ~(X.pos | X.neg)
    return X.replace(pos=X.pos | (Y.pos & free), neg=X.neg | (Y.neg & free))


def separator(X: SignedVector, Y: SignedVector) -> FrozenSet[int]:
    _check_lengths(X, Y)
    return mask_to_elements(separator_mask(X.pos, X.neg, Y.pos, Y.neg))


def separator_mask(xp: int, xn: int, yp: int, yn: int) -> int:
    return (xp & yn) | (xn & yp)


def orthogonal_masks(xp: int, xn: int, yp: int, yn: int) -> bool:
    # on the common support the products X_e Y_e must take both signs
    agree = (xp & yp) | (xn & yn)
    disagree = (xp & yn) | (xn & yp)
    return not (agree | disagree) or bool(agree and disagree)


def is_orthogonal(X: SignedVector, Y: SignedVector) -> bool:
    _check_lengths(X, Y)
    return orthogonal_masks(X.pos, X.neg, Y.pos, Y.neg)


def parts(X: SignedVector) -> Tuple[FrozenSet[int], FrozenSet[int], FrozenSet[int]]:
    return mask_to_elements(X.pos), mask_to_elements(X.neg), X.support


def conforms(X: SignedVector, Y: SignedVector) -> bool:
    """X ≤ Y in the face order: Y agrees with X wherever X is nonzero."""
    _check_lengths(X, Y)
    return (X.pos & ~Y.pos) == 0 and (X.neg & ~Y.neg) == 0


def all_sign_vectors(n: int) -> Iterator[SignedVector]:
    """All of {+, 0, -}^n in canonical (string) order."""
    for symbols in itertools.product("+-0", repeat=n):
        yield SignedVector.parse("".join(symbols))


def sign_vector_masks(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Positive and negative masks of every vector in {+, 0, -}^n as two int64 arrays."""
    check_ground_size(n)
    index = np.arange(3**n, dtype=np.int64)
    pos = np.zeros(3**n, dtype=np.int64)
    neg = np.zeros(3**n, dtype=np.int64)
    for i in range(n):
        digit = (index // 3**i) % 3
        pos |= (digit == 1).astype(np.int64) << i
        neg |= (digit == 2).astype(np.int64) << i
    return pos, neg


def orthogonal_to_all(pos: np.ndarray, neg: np.ndarray, others: Iterable[SignedVector]) -> np.ndarray:
    """Boolean mask of the candidates (`pos`, `neg`) orthogonal to every vector in `others`."""
    keep = np.ones(pos.shape, dtype=bool)
    for Y in others:
        agree = (pos & Y.pos) | (neg & Y.neg)
        disagree = (pos & Y.neg) | (neg & Y.pos)
        keep &= ((agree | disagree) == 0) | ((agree != 0) & (disagree != 0))
    return keep


def sort_vectors(vectors: Iterable[SignedVector]) -> list:
    return sorted(vectors, key=str)
