"""JSON interchange documents.

A document is *normalized* when it is the compact ``json.dumps`` output with
the key order used here; ``dumps(parse(text)) == text`` holds for such text.
"""
from __future__ import annotations

import json
from typing import Any

from .bounds import BoundsReport
from .constructions import PROVENANCES, ConstructedInstance
from .core import Multiset, Partition, ResolutionReport
from .errors import MalformedInputError
from .oracle import ExactResult
from .zebra import Category, Puzzle, PuzzleSolution, Rule


def dumps(doc: Any) -> str:
    return json.dumps(doc, separators=(",", ":"))


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(f"not valid JSON: {exc}") from None


def _need(doc: dict, key: str, kind: type | tuple[type, ...]) -> Any:
    if not isinstance(doc, dict) or key not in doc:
        raise MalformedInputError(f"document lacks field {key!r}")
    value = doc[key]
    if not isinstance(value, kind) or isinstance(value, bool) and kind is int:
        raise MalformedInputError(f"field {key!r} has the wrong type")
    return value


def _int_lists(value: Any, what: str) -> list[list[int]]:
    if not isinstance(value, list) or not all(
        isinstance(row, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in row)
        for row in value
    ):
        raise MalformedInputError(f"{what} must be an array of integer arrays")
    return value


# --- multisets and partitions ------------------------------------------------


def multiset_to_doc(ms: Multiset) -> dict:
    return {"m": ms.m, "components": ms.element_lists()}


def multiset_from_doc(doc: dict) -> Multiset:
    m = _need(doc, "m", int)
    comps = _int_lists(_need(doc, "components", list), "components")
    return Multiset.from_elements(m, [sorted(c) for c in comps])


def partition_to_doc(p: Partition) -> list[list[int]]:
    return p.as_lists()


def partition_from_doc(doc: Any) -> Partition:
    return Partition.of(_int_lists(doc, "partition"))


def instance_to_doc(inst: ConstructedInstance) -> dict:
    return {
        "m": inst.m,
        "components": inst.ms.element_lists(),
        "n": inst.n,
        "partition": partition_to_doc(inst.p),
        "claimed_size": inst.claimed_size,
        "provenance": inst.provenance,
    }


def instance_from_doc(doc: dict) -> ConstructedInstance:
    ms = multiset_from_doc(doc)
    p = partition_from_doc(_need(doc, "partition", list))
    provenance = _need(doc, "provenance", str)
    if provenance not in PROVENANCES:
        raise MalformedInputError(f"unknown provenance {provenance!r}")
    n = doc.get("n", p.n)
    size = doc.get("claimed_size", len(ms))
    return ConstructedInstance(ms, p, n, ms.m, size, provenance)


def report_to_doc(report: ResolutionReport) -> dict:
    return {
        "status": report.status.value,
        "witnesses": [partition_to_doc(w) for w in report.witnesses],
        "canonical": [c.element_lists() for c in report.canonical],
        "nodes_explored": report.nodes_explored,
    }


# --- bounds and searches ------------------------------------------------------


def bounds_to_doc(report: BoundsReport) -> dict:
    return report.as_dict()


def exact_to_doc(result: ExactResult) -> dict:
    return {
        "value": result.value,
        "exhausted": result.exhausted,
        "nodes": result.nodes,
        "candidates": result.candidates,
        "witness": None if result.witness is None else instance_to_doc(result.witness),
    }


# --- puzzles --------------------------------------------------------------------


def puzzle_to_doc(pz: Puzzle) -> dict:
    return {
        "n": pz.n,
        "m": pz.m,
        "categories": [{"name": c.name, "values": list(c.values)} for c in pz.categories],
        "rules": [
            {"cat_a": r.cat_a, "val_a": r.val_a, "cat_b": r.cat_b, "val_b": r.val_b}
            for r in pz.rules
        ],
        "seed": pz.seed,
    }


def puzzle_from_doc(doc: dict) -> Puzzle:
    n = _need(doc, "n", int)
    m = _need(doc, "m", int)
    cats = []
    for raw in _need(doc, "categories", list):
        name = _need(raw, "name", str)
        values = _need(raw, "values", list)
        if not all(isinstance(v, str) for v in values):
            raise MalformedInputError(f"values of {name!r} must be strings")
        cats.append(Category(name, tuple(values)))
    rules = []
    for raw in _need(doc, "rules", list):
        rules.append(
            Rule(
                _need(raw, "cat_a", str),
                _need(raw, "val_a", str),
                _need(raw, "cat_b", str),
                _need(raw, "val_b", str),
            )
        )
    seed = doc.get("seed")
    if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)):
        raise MalformedInputError("seed must be an integer or null")
    return Puzzle(n, m, tuple(cats), tuple(rules), seed)


def solution_to_doc(pz: Puzzle, sol: PuzzleSolution) -> dict:
    return {
        "persons": [
            {cat.name: sol.assignment[c][p] for c, cat in enumerate(pz.categories)}
            for p in range(pz.n)
        ]
    }
