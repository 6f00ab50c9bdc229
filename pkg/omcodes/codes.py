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

"""Combinatorial codes, trunks, code morphisms and the matroid-to-code maps."""

from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import flax.struct
from absl import logging

from .errors import ArgumentError, CapacityError, DimensionError, InconsistencyError
from .oriented_matroid import AffineOrientedMatroid, GroundMap, OrientedMatroid, is_strong_map, structure_flags
from .topology import SimplicialComplex


MAX_ISOMORPHISM_CODEWORDS = 12
DEFAULT_LEQ_BUDGET = 100_000

Codeword = FrozenSet[int]
CodewordMap = Dict[Codeword, Codeword]

MATROID_CODE_MODES = ("W+", "L+", "L±", "Lpm")


def codeword_key(codeword: Iterable[int]) -> Tuple[int, Tuple[int, ...]]:
    members = tuple(sorted(codeword))
    return len(members), members


class Code(flax.struct.PyTreeNode):
    """A set of codewords, each a subset of [n]."""

    n: int = flax.struct.field(pytree_node=False)
    codewords: FrozenSet[Codeword] = flax.struct.field(pytree_node=False)

    @classmethod
    def create(cls, n: int, codewords: Iterable[Iterable[int]]) -> "Code":
        if n < 0:
            raise ArgumentError(f"Number of neurons must be non-negative, got {n}.")
        words = frozenset(frozenset(int(i) for i in c) for c in codewords)
        for c in words:
            if any(not 1 <= i <= n for i in c):
                raise ArgumentError(f"Codeword {sorted(c)} is not a subset of [{n}].")
        return cls(n=n, codewords=words)

    @classmethod
    def from_state_dict(cls, state: Mapping[str, Any]) -> "Code":
        return cls.create(int(state["n"]), state["codewords"])

    def state_dict(self) -> Dict[str, Any]:
        return {"n": self.n, "codewords": [sorted(c) for c in self.sorted_codewords]}

    @property
    def sorted_codewords(self) -> List[Codeword]:
        return sorted(self.codewords, key=codeword_key)

    def __len__(self) -> int:
        return len(self.codewords)

    def __contains__(self, codeword: Iterable[int]) -> bool:
        return frozenset(codeword) in self.codewords


# Trunks.
# -----------------------------------------------------------------------------
def trunk(C: Code, sigma: Iterable[int]) -> FrozenSet[Codeword]:
    sigma = frozenset(sigma)
    return frozenset(c for c in C.codewords if sigma <= c)


def _meet(words: Iterable[Codeword]) -> Codeword:
    words = list(words)
    return frozenset.intersection(*words) if words else frozenset()


def is_trunk(C: Code, S: Iterable[Iterable[int]]) -> bool:
    S = frozenset(frozenset(c) for c in S)
    if not S:
        return True
    return S == trunk(C, _meet(S))


def trunks(C: Code) -> List[Optional[Codeword]]:
    """Every distinct trunk of `C` by its canonical defining set, `None` for the empty trunk.

    The canonical set of a nonempty trunk is the intersection of its codewords, so
    the defining sets are exactly the intersections of nonempty families of codewords.
    """
    closure = set(C.codewords)
    frontier = set(closure)
    while frontier:
        fresh = {a & b for a in frontier for b in C.codewords} - closure
        closure |= fresh
        frontier = fresh
    defining: List[Optional[Codeword]] = sorted(closure, key=codeword_key)
    defining.append(None)
    return defining


# Morphisms.
# -----------------------------------------------------------------------------
class CodeMorphism(flax.struct.PyTreeNode):
    """The morphism defined by trunks tk(σ₁), ..., tk(σ_m) of `source`.

    A `None` entry in `sigmas` is the empty trunk; its neuron never fires.
    """

    source: Code = flax.struct.field(pytree_node=False)
    sigmas: Tuple[Optional[Codeword], ...] = flax.struct.field(pytree_node=False)

    @classmethod
    def from_trunks(cls, source: Code, sigmas: Sequence[Optional[Iterable[int]]]) -> "CodeMorphism":
        resolved = []
        for sigma in sigmas:
            if sigma is None:
                resolved.append(None)
                continue
            sigma = frozenset(int(i) for i in sigma)
            if any(not 1 <= i <= source.n for i in sigma):
                raise ArgumentError(f"Trunk set {sorted(sigma)} is not a subset of [{source.n}].")
            resolved.append(sigma)
        return cls(source=source, sigmas=tuple(resolved))

    @classmethod
    def from_state_dict(cls, state: Mapping[str, Any]) -> "CodeMorphism":
        return cls.from_trunks(Code.from_state_dict(state["code"]), state["trunks"])

    def state_dict(self) -> Dict[str, Any]:
        return {
            "code": self.source.state_dict(),
            "trunks": [None if s is None else sorted(s) for s in self.sigmas],
        }

    @property
    def m(self) -> int:
        return len(self.sigmas)

    def __call__(self, codeword: Iterable[int]) -> Codeword:
        codeword = frozenset(codeword)
        return frozenset(i + 1 for i, s in enumerate(self.sigmas) if s is not None and s <= codeword)

    def induced_map(self) -> CodewordMap:
        return {c: self(c) for c in self.source.codewords}


def identity_morphism(C: Code) -> CodeMorphism:
    return CodeMorphism.from_trunks(C, [{i} for i in range(1, C.n + 1)])


def apply_morphism(f: CodeMorphism) -> Code:
    return Code.create(f.m, {f(c) for c in f.source.codewords})


def compose_morphisms(f: CodeMorphism, g: CodeMorphism) -> CodeMorphism:
    """g ∘ f, where `g` is defined on the image of `f`.

    The i-th trunk of g ∘ f is the preimage under f of g's i-th trunk, itself a trunk
    of f's source with canonical set the intersection of its members.
    """
    if g.source.n != f.m:
        raise DimensionError(f"Cannot compose a morphism onto {f.m} neurons with one from {g.source.n} neurons.")
    mapping = f.induced_map()
    sigmas: List[Optional[Codeword]] = []
    for sigma in g.sigmas:
        preimage = [c for c, image in mapping.items() if sigma is not None and sigma <= image]
        sigmas.append(_meet(preimage) if preimage else None)
    return CodeMorphism.from_trunks(f.source, sigmas)


def is_morphism(C: Code, D: Code, mapping: Mapping[Codeword, Codeword]) -> bool:
    """True iff the preimage of every simple trunk of `D` is a trunk of `C`."""
    mapping = {frozenset(k): frozenset(v) for k, v in mapping.items()}
    missing = [sorted(c) for c in C.sorted_codewords if c not in mapping]
    if missing:
        raise ArgumentError(f"Map is not defined on codewords {missing}.")
    strays = [sorted(v) for c, v in mapping.items() if c in C.codewords and v not in D.codewords]
    if strays:
        raise ArgumentError(f"Map sends codewords outside of the target: {strays}.")
    for i in range(1, D.n + 1):
        preimage = [c for c in C.codewords if i in mapping[c]]
        if not is_trunk(C, preimage):
            return False
    return True


# Matroid codes.
# -----------------------------------------------------------------------------
def _signed_codeword(n: int, pos: int, neg: int) -> Codeword:
    return frozenset(e for e in range(1, n + 1) if pos >> (e - 1) & 1) | frozenset(
        n + e for e in range(1, n + 1) if neg >> (e - 1) & 1
    )


def _positive_codeword(n: int, pos: int) -> Codeword:
    return frozenset(e for e in range(1, n + 1) if pos >> (e - 1) & 1)


def _code_from_vectors(n: int, vectors, mode: str) -> Code:
    if mode == "W+" or mode == "L+":
        return Code.create(n, {_positive_codeword(n, X.pos) for X in vectors})
    if mode in ("L±", "Lpm"):
        return Code.create(2 * n, {_signed_codeword(n, X.pos, X.neg) for X in vectors})
    raise ArgumentError(f"Unknown code mode {mode!r}, expected one of {MATROID_CODE_MODES}.")


def matroid_code(M: OrientedMatroid, mode: str = "W+") -> Code:
    """W⁺ (positive parts of topes), L⁺ (of covectors) or L± (covectors on 2n neurons)."""
    vectors = M.topes if mode == "W+" else M.covectors
    return _code_from_vectors(M.n, vectors, mode)


def affine_code(A: AffineOrientedMatroid, mode: str = "L±") -> Code:
    """The code of the g-positive part of `A`."""
    vectors = A.positive_covectors
    if mode == "W+":
        vectors = [X for X in vectors if X in A.base.topes]
    return _code_from_vectors(A.base.n, vectors, mode)


def w_plus_morphism(f: GroundMap, M1: OrientedMatroid, M2: OrientedMatroid) -> CodewordMap:
    """The code map W⁺(M2) → W⁺(M1), σ ↦ f⁻¹(σ), of a strong map f: M1 → M2.

    Both matroids must be acyclic: for the contraction of a non-acyclic matroid the
    preimage of a positive tope need not be the positive part of any tope.
    """
    for name, M in (("source", M1), ("target", M2)):
        if not structure_flags(M).acyclic:
            raise ArgumentError(
                f"The {name} matroid is not acyclic; preimages of positive tope parts need not be positive tope parts."
            )
    verdict = is_strong_map(f, M1, M2)
    if not verdict.verdict:
        raise ArgumentError("The ground map does not induce a strong map.")
    source, target = matroid_code(M2, "W+"), matroid_code(M1, "W+")
    mapping = {sigma: frozenset(e for e in range(1, f.n1 + 1) if f(e) in sigma) for sigma in source.codewords}
    strays = [sorted(v) for v in mapping.values() if v not in target.codewords]
    if strays:
        raise InconsistencyError(f"Preimages {strays} are not positive tope parts of the source matroid.")
    if not is_morphism(source, target, mapping):
        raise InconsistencyError("The induced code map pulls back a trunk to a non-trunk.")
    return mapping


# Isomorphism and the order on codes.
# -----------------------------------------------------------------------------
def _containment_profile(C: Code) -> Dict[Codeword, Tuple[int, int]]:
    return {
        c: (sum(1 for d in C.codewords if d < c), sum(1 for d in C.codewords if c < d)) for c in C.codewords
    }


def find_isomorphism(C: Code, D: Code, capacity: int = MAX_ISOMORPHISM_CODEWORDS) -> Optional[CodewordMap]:
    if len(C) != len(D):
        return None
    if len(C) > capacity:
        raise CapacityError(f"Isomorphism search is limited to {capacity} codewords, got {len(C)}.")
    profile_c, profile_d = _containment_profile(C), _containment_profile(D)
    if sorted(profile_c.values()) != sorted(profile_d.values()):
        return None

    source = sorted(C.codewords, key=lambda c: (profile_c[c], codeword_key(c)))
    target = sorted(D.codewords, key=codeword_key)
    assignment: CodewordMap = {}
    used = set()

    def extend(k: int) -> bool:
        if k == len(source):
            inverse = {v: u for u, v in assignment.items()}
            return is_morphism(C, D, assignment) and is_morphism(D, C, inverse)
        c = source[k]
        for d in target:
            if d in used or profile_d[d] != profile_c[c]:
                continue
            # morphisms are monotone, so containment among assigned codewords must carry over
            if any((u <= c) != (v <= d) or (c <= u) != (d <= v) for u, v in assignment.items()):
                continue
            assignment[c] = d
            used.add(d)
            if extend(k + 1):
                return True
            del assignment[c]
            used.discard(d)
        return False

    return dict(assignment) if extend(0) else None


def is_isomorphic(C: Code, D: Code) -> bool:
    return find_isomorphism(C, D) is not None


def _matches(words: FrozenSet[Codeword], n: int, D: Code) -> Optional[bool]:
    """Whether the code `words` on `n` neurons is isomorphic to `D`; `None` when the search is over capacity."""
    if len(words) != len(D):
        return False
    # equal codeword sets are isomorphic through the identity
    if words == D.codewords:
        return True
    try:
        return is_isomorphic(Code(n=n, codewords=words), D)
    except CapacityError:
        logging.debug("Isomorphism check on %d codewords skipped, over capacity", len(words))
        return None


class LeqResult(flax.struct.PyTreeNode):
    status: str = flax.struct.field(pytree_node=False)
    kind: Optional[str] = flax.struct.field(pytree_node=False, default=None)
    witness: Tuple[Optional[Codeword], ...] = flax.struct.field(pytree_node=False, default=())
    nodes: int = flax.struct.field(pytree_node=False, default=0)

    def state_dict(self) -> Dict[str, Any]:
        state: Dict[str, Any] = {"status": self.status, "nodes": self.nodes}
        if self.status == "yes":
            state["kind"] = self.kind
            state["witness"] = [None if s is None else sorted(s) for s in self.witness]
        return state


def _sigma_weight(sigma: Optional[Codeword]) -> int:
    return 0 if sigma is None else len(sigma)


def _multisets_by_weight(weights: Sequence[int], m: int) -> Iterator[Tuple[int, ...]]:
    """Size-`m` multisets of indices into `weights`, lazily, by increasing total weight."""
    if m == 0:
        yield ()
        return
    if not weights:
        return
    order = sorted(range(len(weights)), key=lambda i: (weights[i], i))
    ranked = [weights[i] for i in order]
    lightest, heaviest = ranked[0], ranked[-1]

    def pick(start: int, count: int, total: int) -> Iterator[Tuple[int, ...]]:
        if count == 0:
            if total == 0:
                yield ()
            return
        for k in range(start, len(order)):
            rest = total - ranked[k]
            # ranked is nondecreasing, so later picks weigh at least ranked[k]
            if rest < (count - 1) * ranked[k]:
                break
            if rest > (count - 1) * heaviest:
                continue
            for tail in pick(k, count - 1, rest):
                yield (order[k],) + tail

    for total in range(m * lightest, m * heaviest + 1):
        yield from pick(0, m, total)


def leq_below(D: Code, C: Code, budget: int = DEFAULT_LEQ_BUDGET) -> LeqResult:
    """Searches for a witness of D ≤ C: a trunk of C, or trunks of C whose image is D.

    Every candidate examined counts one node against `budget`; running out returns
    `status="budget-exceeded"`. Trunk tuples are tried as multisets in order of
    increasing total size of their defining sets. Candidates too large for the
    isomorphism search are skipped, and an otherwise exhausted search that skipped
    any also ends as `"budget-exceeded"`.
    """
    nodes = 0
    skipped = 0
    defining = trunks(C)
    for sigma in defining:
        nodes += 1
        if nodes > budget:
            logging.warning("leq search exhausted its budget of %d nodes", budget)
            return LeqResult(status="budget-exceeded", nodes=budget)
        words = frozenset() if sigma is None else trunk(C, sigma)
        match = _matches(words, C.n, D)
        if match:
            return LeqResult(status="yes", kind="trunk", witness=(sigma,), nodes=nodes)
        skipped += match is None

    for combo in _multisets_by_weight([_sigma_weight(s) for s in defining], D.n):
        nodes += 1
        if nodes > budget:
            logging.warning("leq search exhausted its budget of %d nodes", budget)
            return LeqResult(status="budget-exceeded", nodes=budget)
        f = CodeMorphism.from_trunks(C, [defining[i] for i in combo])
        image = apply_morphism(f)
        match = _matches(image.codewords, image.n, D)
        if match:
            return LeqResult(status="yes", kind="morphism", witness=f.sigmas, nodes=nodes)
        skipped += match is None
    if skipped:
        logging.warning("leq search skipped %d candidates over the isomorphism capacity", skipped)
        return LeqResult(status="budget-exceeded", nodes=nodes)
    logging.info("No witness for D ≤ C after %d nodes", nodes)
    return LeqResult(status="no-exhausted", nodes=nodes)


def simplicial_complex(C: Code) -> SimplicialComplex:
    return SimplicialComplex.from_code(C)
