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

"""JSON command-line front end.

    omcodes <group> <action> [--file PATH | --name INSTANCE] [options]

Every command reads one JSON document (a file, `-` for stdin, or a catalog
instance) and writes one JSON document to stdout. Logs go to stderr.
"""

import argparse
import json
import os
import sys
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import flax.struct
from absl import logging

from . import arrangement, catalog, codes, ideals, oriented_matroid, topology
from .errors import ArgumentError, CapacityError, OMCodesError
from .signs import SignedVector, sort_vectors


EXIT_CODES = {"ok": 0, "invalid-input": 1, "capacity": 2, "budget": 2}
USAGE_EXIT_CODE = 64

COMMANDS: Dict[str, Tuple[str, ...]] = {
    "validate": ("covectors", "circuits"),
    "convert": ("circuits", "covectors", "arrangement", "topes", "flags", "tope-graph", "minor", "double"),
    "code": ("matroid", "cover", "trunk", "complex", "canonical"),
    "morphism": ("apply", "check", "iso", "w-plus"),
    "leq": (),
    "ideal": (
        "canonical", "variety", "om", "primes", "dual", "affine", "quotient", "commuting-square", "weak-elimination",
    ),  # fmt: skip
    "topology": ("homology", "collapsible", "link", "obstructions"),
    "catalog": ("show", "list", "sunflower", "battery"),
}


class UsageError(Exception):
    """Malformed command line; the message is the usage text."""


class CommandResult(flax.struct.PyTreeNode):
    status: str = flax.struct.field(pytree_node=False)
    payload: Optional[Any] = flax.struct.field(pytree_node=False, default=None)
    diagnostics: Tuple[str, ...] = flax.struct.field(pytree_node=False, default=())

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self) -> str:
        document = self.payload if self.status == "ok" else {"status": self.status, "diagnostics": list(self.diagnostics)}
        return json.dumps(document, ensure_ascii=False, separators=(",", ":"))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def parse_args(argv: Sequence[str]) -> argparse.Namespace:
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group()
    source.add_argument("--file", help="JSON input file, or - for standard input.")
    source.add_argument("--name", help="Catalog instance used as input.")
    common.add_argument("--mode", default="W+", choices=codes.MATROID_CODE_MODES, help="Matroid code map.")
    common.add_argument("--budget", type=int, default=None, help="Node budget of search commands.")
    common.add_argument("--seed", type=int, default=0, help="Battery seed.")
    common.add_argument("--jobs", type=int, default=int(os.getenv("OMCODES_JOBS", "1")), help="Enumeration workers.")
    common.add_argument("--kind", default="acyclic-arrangements", choices=catalog.BATTERY_KINDS, help="Battery kind.")
    common.add_argument("--n", type=int, default=2, help="Sunflower or battery size parameter.")
    common.add_argument("--d", type=int, default=2, help="Battery dimension.")
    common.add_argument("--size", type=int, default=10, help="Number of battery instances.")
    common.add_argument(
        "--verbosity", default="warning", choices=["debug", "info", "warning", "error"], help="Log level on stderr."
    )

    parser = _Parser(prog="omcodes", description="Oriented matroids and combinatorial neural codes.")
    groups = parser.add_subparsers(dest="group", parser_class=_Parser)
    groups.required = True
    for group, actions in COMMANDS.items():
        sub = groups.add_parser(group, parents=[common])
        if actions:
            sub.add_argument("action", choices=actions)
    args = parser.parse_args(argv)
    if not hasattr(args, "action"):
        args.action = None
    return args


# Input documents.
# -----------------------------------------------------------------------------
def _load_document(args: argparse.Namespace) -> Any:
    if args.name is not None:
        return catalog.paper_instance(args.name)
    if args.file is None:
        raise UsageError("one of --file or --name is required")
    if args.file == "-":
        return json.load(sys.stdin)
    with open(args.file, encoding="utf-8") as handle:
        return json.load(handle)


def _payload(document: Any) -> Any:
    return document.payload if isinstance(document, catalog.NamedInstance) else document


def _as_matroid(document: Any, jobs: int = 1) -> oriented_matroid.OrientedMatroid:
    document = _payload(document)
    if isinstance(document, oriented_matroid.OrientedMatroid):
        return document
    if isinstance(document, arrangement.CentralArrangement):
        return arrangement.om_from_central_arrangement(document, jobs=jobs)
    if "forms" in document:
        return arrangement.om_from_central_arrangement(
            arrangement.CentralArrangement.from_state_dict(document), jobs=jobs
        )
    if "circuits" in document and "covectors" not in document:
        n = int(document["n"])
        return oriented_matroid.covectors_from_circuits(n, [SignedVector.parse(s) for s in document["circuits"]])
    return oriented_matroid.OrientedMatroid.from_state_dict(document)


def _g(document: Any) -> int:
    if isinstance(document, catalog.NamedInstance):
        if document.g is None:
            raise ArgumentError(f"Instance {document.name!r} has no distinguished element g.")
        return document.g
    return int(document["g"])


def _as_code(document: Any) -> codes.Code:
    document = _payload(document)
    if isinstance(document, codes.Code):
        return document
    return codes.Code.from_state_dict(document)


def _as_complex(document: Any) -> topology.SimplicialComplex:
    document = _payload(document)
    if isinstance(document, codes.Code):
        return topology.SimplicialComplex.from_code(document)
    if "codewords" in document:
        return topology.SimplicialComplex.from_code(codes.Code.from_state_dict(document))
    return topology.SimplicialComplex.from_state_dict(document)


def _as_morphism(document: Any) -> codes.CodeMorphism:
    document = _payload(document)
    if isinstance(document, codes.CodeMorphism):
        return document
    return codes.CodeMorphism.from_state_dict(document)


def _as_cover(document: Any) -> arrangement.PolyhedralCover:
    document = _payload(document)
    if isinstance(document, arrangement.PolyhedralCover):
        return document
    return arrangement.PolyhedralCover.from_state_dict(document)


def _as_ideal(document: Any) -> ideals.SquarefreeMonomialIdeal:
    return ideals.SquarefreeMonomialIdeal.from_state_dict(_payload(document))


def _codeword_pairs(mapping: Mapping[frozenset, frozenset]) -> List[List[List[int]]]:
    return sorted(([sorted(k), sorted(v)] for k, v in mapping.items()), key=lambda kv: codes.codeword_key(kv[0]))


# Commands.
# -----------------------------------------------------------------------------
def _validate(args, document) -> Any:
    document = _payload(document)
    if isinstance(document, oriented_matroid.OrientedMatroid):
        document = {**document.state_dict(), "circuits": [str(C) for C in sort_vectors(document.circuits)]}
    n = int(document["n"])
    if args.action == "covectors":
        vectors = [SignedVector.parse(s) for s in document["covectors"]]
        return oriented_matroid.validate_covectors(n, vectors).state_dict()
    vectors = [SignedVector.parse(s) for s in document["circuits"]]
    return oriented_matroid.validate_circuits(n, vectors).state_dict()


def _convert(args, document) -> Any:
    M = _as_matroid(document, jobs=args.jobs)
    action = args.action
    if action == "circuits":
        return {"n": M.n, "circuits": [str(C) for C in sort_vectors(M.circuits)]}
    if action in ("covectors", "arrangement"):
        return M.state_dict()
    if action == "topes":
        return {"n": M.n, "topes": [str(T) for T in sort_vectors(M.topes)]}
    if action == "flags":
        return oriented_matroid.structure_flags(M).state_dict()
    if action == "tope-graph":
        return M.tope_graph.state_dict()
    if action == "minor":
        raw = _payload(document)
        delete = raw.get("delete", []) if isinstance(raw, Mapping) else []
        contract = raw.get("contract", []) if isinstance(raw, Mapping) else []
        return oriented_matroid.minor(M, delete=delete, contract=contract).state_dict()
    return oriented_matroid.antiparallel_double(M).state_dict()


def _code(args, document) -> Any:
    action = args.action
    if action == "matroid":
        M = _as_matroid(document, jobs=args.jobs)
        raw = _payload(document)
        has_g = isinstance(document, catalog.NamedInstance) and document.g is not None
        if has_g or (isinstance(raw, Mapping) and "g" in raw):
            return codes.affine_code(oriented_matroid.AffineOrientedMatroid.create(M, _g(document)), args.mode).state_dict()
        return codes.matroid_code(M, args.mode).state_dict()
    if action == "cover":
        return arrangement.code_of_polyhedral_cover(_as_cover(document), jobs=args.jobs).state_dict()
    if action == "trunk":
        C = codes.Code.from_state_dict(document["code"])
        words = codes.trunk(C, document["sigma"])
        return codes.Code(n=C.n, codewords=frozenset(words)).state_dict()
    if action == "complex":
        return _as_complex(document).state_dict()
    return _as_code(document).state_dict()


def _morphism(args, document) -> Any:
    action = args.action
    if action == "apply":
        return codes.apply_morphism(_as_morphism(document)).state_dict()
    if action == "check":
        C, D = codes.Code.from_state_dict(document["source"]), codes.Code.from_state_dict(document["target"])
        mapping = {frozenset(k): frozenset(v) for k, v in document["map"]}
        return {"morphism": codes.is_morphism(C, D, mapping)}
    if action == "iso":
        C, D = codes.Code.from_state_dict(document["C"]), codes.Code.from_state_dict(document["D"])
        found = codes.find_isomorphism(C, D)
        return {"isomorphic": found is not None, "map": None if found is None else _codeword_pairs(found)}
    f = oriented_matroid.GroundMap.from_state_dict(document["map"])
    M1, M2 = _as_matroid(document["source"], args.jobs), _as_matroid(document["target"], args.jobs)
    return {"map": _codeword_pairs(codes.w_plus_morphism(f, M1, M2))}


def _leq(args, document) -> Any:
    D, C = codes.Code.from_state_dict(document["D"]), codes.Code.from_state_dict(document["C"])
    budget = codes.DEFAULT_LEQ_BUDGET if args.budget is None else args.budget
    return codes.leq_below(D, C, budget).state_dict()


def _ideal(args, document) -> Any:
    action = args.action
    if action == "canonical":
        return ideals.canonical_form(_as_code(document)).state_dict()
    if action == "variety":
        return ideals.variety(ideals.PseudomonomialIdeal.from_state_dict(_payload(document))).state_dict()
    if action == "quotient":
        J = ideals.ideal_quotient(_as_ideal(document["J1"]), _as_ideal(document["J2"]))
        if document.get("specialize") is not None:
            J = ideals.specialize(J, int(document["specialize"]))
        return J.state_dict()
    if action == "weak-elimination":
        raw = _payload(document)
        if isinstance(raw, codes.Code) or "codewords" in raw:
            I = ideals.canonical_form(_as_code(document))
        else:
            I = ideals.PseudomonomialIdeal.from_state_dict(raw)
        witness = ideals.weak_elimination_witness(I)
        return {
            "holds": witness is None,
            "incomparability": ideals.satisfies_incomparability(I),
            "witness": None if witness is None else [str(witness[0]), str(witness[1]), witness[2]],
        }
    if action == "dual":
        raw = _payload(document)
        if isinstance(raw, Mapping) and "x" in raw:
            return ideals.alexander_dual(_as_ideal(raw)).state_dict()
        return ideals.om_dual_ideal(_as_matroid(document, args.jobs)).state_dict()

    M = _as_matroid(document, args.jobs)
    if action == "om":
        return ideals.om_ideal(M).state_dict()
    if action == "primes":
        return ideals.om_ideal_primes(M).state_dict()
    if action == "affine":
        return ideals.affine_om_ideal(oriented_matroid.AffineOrientedMatroid.create(M, _g(document))).state_dict()
    return ideals.commuting_square(M).state_dict()


def _topology(args, document) -> Any:
    action = args.action
    budget = topology.DEFAULT_COLLAPSE_BUDGET if args.budget is None else args.budget
    if action == "homology":
        ranks = topology.reduced_f2_homology(_as_complex(document))
        return {"ranks": {str(k): r for k, r in sorted(ranks.items())}}
    if action == "collapsible":
        return topology.is_collapsible(_as_complex(document), budget).state_dict()
    if action == "link":
        return topology.link(_as_complex(document["complex"]), document["sigma"]).state_dict()
    return topology.local_obstructions(_as_code(document), budget).state_dict()


def _catalog(args) -> Any:
    if args.action == "list":
        return {"instances": catalog.instance_names()}
    if args.action == "sunflower":
        return catalog.sunflower_code(args.n).state_dict()
    if args.action == "battery":
        instances = catalog.battery(args.kind, args.n, d=args.d, size=args.size, seed=args.seed)
        return {"instances": [instance.state_dict() for instance in instances]}
    if args.name is None:
        raise UsageError("catalog show needs --name")
    return catalog.paper_instance(args.name).state_dict()


_HANDLERS: Dict[str, Callable[[argparse.Namespace, Any], Any]] = {
    "validate": _validate,
    "convert": _convert,
    "code": _code,
    "morphism": _morphism,
    "leq": _leq,
    "ideal": _ideal,
    "topology": _topology,
}


def _budget_status(payload: Any) -> bool:
    return isinstance(payload, Mapping) and payload.get("status") in ("budget", "budget-exceeded")


def run(argv: Sequence[str]) -> CommandResult:
    """Parses `argv` and runs the command.

    Malformed command lines raise `UsageError`; every other failure becomes a
    non-ok `CommandResult`.
    """
    args = parse_args(argv)
    logging.set_verbosity(args.verbosity)
    try:
        if args.group == "catalog":
            payload = _catalog(args)
        else:
            payload = _HANDLERS[args.group](args, _load_document(args))
    except CapacityError as err:
        return CommandResult(status="capacity", diagnostics=(str(err),))
    except (OMCodesError, ValueError, KeyError, TypeError, OSError) as err:
        logging.info("Rejected input: %s", err)
        return CommandResult(status="invalid-input", diagnostics=(f"{type(err).__name__}: {err}",))
    if _budget_status(payload):
        return CommandResult(status="budget", diagnostics=(f"search stopped after {payload['nodes']} nodes",))
    return CommandResult(status="ok", payload=payload)


def main(argv: Optional[Sequence[str]] = None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        result = run(argv)
    except UsageError as err:
        print(err, file=sys.stderr)
        sys.exit(USAGE_EXIT_CODE)
    print(result.to_json())
    sys.exit(result.exit_code)


if __name__ == "__main__":
    main()
