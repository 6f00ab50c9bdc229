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

"""Named example objects and seeded test batteries."""

from typing import Any, Callable, Dict, List, Optional, Union

import flax.struct
import numpy as np
from absl import logging

from .arrangement import CentralArrangement, PolyhedralCover, om_from_central_arrangement
from .codes import Code, CodeMorphism
from .errors import ArgumentError, CapacityError, UnknownInstanceError
from .oriented_matroid import OrientedMatroid, minor, structure_flags


MAX_BATTERY_ELEMENTS = 7
MAX_BATTERY_DIMENSION = 4
MAX_BATTERY_ATTEMPTS = 1000

BATTERY_KINDS = ("acyclic-arrangements", "uniform-affine", "random-codes")

Payload = Union[Code, OrientedMatroid, CentralArrangement, CodeMorphism, PolyhedralCover]


class NamedInstance(flax.struct.PyTreeNode):
    name: str = flax.struct.field(pytree_node=False)
    payload: Payload = flax.struct.field(pytree_node=False)
    realization: Optional[Payload] = flax.struct.field(pytree_node=False, default=None)
    g: Optional[int] = flax.struct.field(pytree_node=False, default=None)

    @property
    def kind(self) -> str:
        return _KINDS[type(self.payload)]

    def state_dict(self) -> Dict[str, Any]:
        state = {"name": self.name, "kind": self.kind, "payload": self.payload.state_dict()}
        if self.realization is not None:
            state["realization"] = self.realization.state_dict()
        if self.g is not None:
            state["g"] = self.g
        return state


_KINDS = {
    Code: "code",
    OrientedMatroid: "matroid",
    CentralArrangement: "arrangement",
    CodeMorphism: "morphism",
    PolyhedralCover: "cover",
}


def sunflower_code(n: int) -> Code:
    """The sunflower code on P ∪ S with S = {1, ..., n+1} and P = {n+2, ..., 2n+2}.

    sᵢ = i and pᵢ = n + 1 + i. The codewords are ∅, S ∪ {p_{n+1}}, P, X ∪ {s_{n+1}} for
    ∅ ⊊ X ⊊ {s₁, ..., sₙ}, the singletons {pᵢ}, and S ∖ {sᵢ} ∪ {pᵢ} for i ≤ n.
    """
    if n < 2:
        raise ArgumentError(f"Sunflower codes need n >= 2, got {n}.")
    S = frozenset(range(1, n + 2))
    P = frozenset(range(n + 2, 2 * n + 3))

    def p(i: int) -> int:
        return n + 1 + i

    codewords = [frozenset(), S | {p(n + 1)}, P]
    for bits in range(1, (1 << n) - 1):
        codewords.append(frozenset(i + 1 for i in range(n) if bits >> i & 1) | {n + 1})
    codewords += [frozenset({p(i)}) for i in range(1, n + 2)]
    codewords += [(S - {i}) | {p(i)} for i in range(1, n + 1)]
    return Code.create(2 * n + 2, codewords)


def _interval(a: int, b: int):
    # a < x < b as x - a > 0 and -x + b > 0
    return [[1, -a], [-1, b]]


def _arrangement_matroid(name: str, forms) -> NamedInstance:
    A = CentralArrangement.create(forms)
    return NamedInstance(name=name, payload=om_from_central_arrangement(A), realization=A)


_FIG3_C = [
    [1, 2, 3, 4, 5], [2, 4, 5], [1, 2, 4, 5], [1, 4, 5], [1, 3, 4, 5], [1, 3, 5], [1, 2, 3, 5], [2, 3, 5],
    [2, 3, 4, 5], [], [1, 3], [3], [2, 3], [2], [2, 4], [4], [1, 4], [1],
]  # fmt: skip

_NONCONVEX5 = [[2, 3, 4, 5], [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 3], [1, 4], [2, 3], [3, 4], [4, 5], [3], [4], []]

_M1_FORMS = [[1, 0], [-1, 0], [0, 1]]


def _m1() -> NamedInstance:
    return _arrangement_matroid("M1", _M1_FORMS)


def _m2() -> NamedInstance:
    return NamedInstance(name="M2", payload=minor(_m1().payload, contract=[1, 2]))


def _fig1_cover() -> NamedInstance:
    cover = PolyhedralCover.create(1, [_interval(0, 2), _interval(1, 4), _interval(3, 4)], ambient=_interval(-1, 7))
    return NamedInstance(name="fig1_cover", payload=cover)


def _fig3_morphism() -> NamedInstance:
    morphism = CodeMorphism.from_trunks(Code.create(5, _FIG3_C), [[1, 3, 5], [2, 4, 5]])
    return NamedInstance(name="fig3_morphism", payload=morphism)


_INSTANCES: Dict[str, Callable[[], NamedInstance]] = {
    "M1": _m1,
    "M1_arrangement": lambda: NamedInstance(name="M1_arrangement", payload=CentralArrangement.create(_M1_FORMS)),
    "M2": _m2,
    "fig1_code": lambda: NamedInstance(name="fig1_code", payload=Code.create(3, [[], [1], [2], [1, 2], [2, 3]])),
    "fig1_cover": _fig1_cover,
    "fig3_C": lambda: NamedInstance(name="fig3_C", payload=Code.create(5, _FIG3_C)),
    "fig3_D": lambda: NamedInstance(name="fig3_D", payload=Code.create(2, [[], [1], [2], [1, 2]])),
    "fig3_morphism": _fig3_morphism,
    "lienkaemper_code": lambda: NamedInstance(name="lienkaemper_code", payload=Code.create(5, _NONCONVEX5)),
    "jeffs_C2": lambda: NamedInstance(name="jeffs_C2", payload=sunflower_code(2)),
    "nonconvex5": lambda: NamedInstance(name="nonconvex5", payload=Code.create(5, _NONCONVEX5)),
    "nonconvex6": lambda: NamedInstance(name="nonconvex6", payload=sunflower_code(2)),
    "rank1_3": lambda: _arrangement_matroid("rank1_3", [[1], [1], [1]]),
    "generic3": lambda: _arrangement_matroid("generic3", [[1, 0], [0, 1], [1, 1]]),
    "sunflower2": lambda: NamedInstance(name="sunflower2", payload=sunflower_code(2)),
    "sunflower3": lambda: NamedInstance(name="sunflower3", payload=sunflower_code(3)),
}


def instance_names() -> List[str]:
    return sorted(_INSTANCES)


def paper_instance(name: str) -> NamedInstance:
    try:
        factory = _INSTANCES[name]
    except KeyError:
        raise UnknownInstanceError(f"Unknown instance {name!r}; known instances are {instance_names()}.") from None
    return factory()


# Batteries.
# -----------------------------------------------------------------------------
class SeedStream:
    """Platform-independent draws from the raw 64-bit outputs of `numpy.random.PCG64(seed)`.

    PCG64 advances a 128-bit linear congruential state (multiplier
    0x2360ed051fc65da44385df649fccf645, increment derived from the seed) and permutes
    each state into a 64-bit word. Only those words are used: an integer in [low, high)
    is `low + word % (high - low)` and a float in [0, 1) is `(word >> 11) * 2**-53`.
    """

    def __init__(self, seed: int):
        self._bits = np.random.PCG64(seed)

    def word(self) -> int:
        return int(self._bits.random_raw())

    def integers(self, low: int, high: int, size: int) -> np.ndarray:
        span = high - low
        return np.array([low + self.word() % span for _ in range(size)], dtype=np.int64)

    def random(self) -> float:
        return (self.word() >> 11) * 2.0**-53


def _random_forms(rng: SeedStream, n: int, d: int, bound: int) -> List[List[int]]:
    forms = []
    while len(forms) < n:
        form = rng.integers(-bound, bound + 1, size=d)
        if form.any():
            forms.append([int(v) for v in form])
    return forms


def _acyclic_forms(rng: SeedStream, n: int, d: int) -> List[List[int]]:
    # every form is oriented positive at a random witness point, so the all-positive cell contains it
    witness = rng.integers(-5, 6, size=d)
    while not witness.any():
        witness = rng.integers(-5, 6, size=d)
    forms = []
    while len(forms) < n:
        (form,) = _random_forms(rng, 1, d, 3)
        value = int(np.dot(form, witness))
        if value:
            forms.append(form if value > 0 else [-v for v in form])
    return forms


def battery(kind: str, n: int, d: int = 2, size: int = 10, seed: int = 0) -> List[NamedInstance]:
    """Seeded instances for property suites.

    Args:
        kind (`str`):
            One of "acyclic-arrangements", "uniform-affine" or "random-codes".
        n (`int`):
            Number of elements (or neurons), at most `MAX_BATTERY_ELEMENTS`.
        d (`int`, *optional*, defaults to 2):
            Ambient dimension of the arrangements, at most `MAX_BATTERY_DIMENSION`.
        size (`int`, *optional*, defaults to 10):
            Number of instances.
        seed (`int`, *optional*, defaults to 0):
            Seed of the `SeedStream`; identical arguments give identical batteries on every platform.
    """
    if kind not in BATTERY_KINDS:
        raise ArgumentError(f"Unknown battery kind {kind!r}, expected one of {BATTERY_KINDS}.")
    if n < 1 or d < 1 or size < 0:
        raise ArgumentError(f"Battery sizes must be positive, got n={n}, d={d}, size={size}.")
    if n > MAX_BATTERY_ELEMENTS or d > MAX_BATTERY_DIMENSION:
        raise CapacityError(
            f"Batteries are limited to n <= {MAX_BATTERY_ELEMENTS} and d <= {MAX_BATTERY_DIMENSION}, got n={n}, d={d}."
        )
    rng = SeedStream(seed)
    instances = []
    for i in range(size):
        name = f"{kind}-{seed}-{i}"
        if kind == "random-codes":
            words = [[e + 1 for e in range(n) if bits >> e & 1] for bits in range(1, 1 << n) if rng.random() < 0.5]
            instances.append(NamedInstance(name=name, payload=Code.create(n, [[]] + words)))
        elif kind == "acyclic-arrangements":
            instances.append(_arrangement_matroid(name, _acyclic_forms(rng, n, d)))
        else:
            instances.append(_uniform_affine(rng, name, n, d))
    logging.info("Generated %d %s instances (n=%d, d=%d, seed=%d)", size, kind, n, d, seed)
    return instances


def _uniform_affine(rng: SeedStream, name: str, n: int, d: int) -> NamedInstance:
    for _ in range(MAX_BATTERY_ATTEMPTS):
        instance = _arrangement_matroid(name, _random_forms(rng, n, d, 9))
        if structure_flags(instance.payload).uniform:
            return instance.replace(g=n)
    raise CapacityError(f"No uniform arrangement of {n} forms in dimension {d} after {MAX_BATTERY_ATTEMPTS} draws.")
