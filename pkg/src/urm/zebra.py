"""Zebra puzzles with pairwise same-person rules.

A puzzle has ``n`` persons and ``m`` categories, each category holding ``n``
values.  A rule ``(cat_a, val_a, cat_b, val_b)`` says the person with
``val_a`` also has ``val_b``.  Gluing values along rules yields blocks; the
category sets of the blocks form a multiset over ``[m]``, and the puzzle has a
unique solution exactly when that multiset is uniquely resolvable.  A
multiset of ``g`` components needs ``n*m - g`` rules.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .bounds import bounds_report
from .constructions import ConstructedInstance, best_construction
from .core import Multiset, elements_of
from .errors import CapacityError, InconsistentPuzzleError, MalformedInputError

MAX_SOLVER_N = 8
MAX_SOLVER_M = 8


@dataclass(frozen=True)
class Category:
    name: str
    values: tuple[str, ...]


@dataclass(frozen=True)
class Rule:
    cat_a: str
    val_a: str
    cat_b: str
    val_b: str


@dataclass(frozen=True)
class Puzzle:
    n: int
    m: int
    categories: tuple[Category, ...]
    rules: tuple[Rule, ...] = ()
    seed: Optional[int] = None
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "categories", tuple(self.categories))
        object.__setattr__(self, "rules", tuple(self.rules))
        if self.n < 1 or self.m < 1:
            raise MalformedInputError("puzzle needs n >= 1 and m >= 1")
        if len(self.categories) != self.m:
            raise MalformedInputError(f"expected {self.m} categories, got {len(self.categories)}")
        index: dict[tuple[str, str], tuple[int, int]] = {}
        names = set()
        for c, cat in enumerate(self.categories):
            if cat.name in names:
                raise MalformedInputError(f"duplicate category {cat.name!r}")
            names.add(cat.name)
            if len(cat.values) != self.n:
                raise MalformedInputError(
                    f"category {cat.name!r} has {len(cat.values)} values, expected {self.n}"
                )
            if len(set(cat.values)) != self.n:
                raise MalformedInputError(f"category {cat.name!r} repeats a value")
            for v, value in enumerate(cat.values):
                index[(cat.name, value)] = (c, v)
        for rule in self.rules:
            if rule.cat_a == rule.cat_b:
                raise MalformedInputError(f"rule {rule} relates a category to itself")
            for key in ((rule.cat_a, rule.val_a), (rule.cat_b, rule.val_b)):
                if key not in index:
                    raise MalformedInputError(f"rule mentions unknown value {key}")
        object.__setattr__(self, "_index", index)

    def locate(self, category: str, value: str) -> tuple[int, int]:
        """``(category index, value index)`` of a named value."""
        return self._index[(category, value)]


@dataclass(frozen=True)
class PuzzleSolution:
    """``assignment[c][p]`` is the value person ``p`` holds in category ``c``.

    Persons are identified by their value in the first category, so
    ``assignment[0]`` is always the first category's value list.
    """

    assignment: tuple[tuple[str, ...], ...]

    def person(self, p: int) -> tuple[str, ...]:
        return tuple(col[p] for col in self.assignment)


def default_naming(n: int, m: int) -> list[tuple[str, list[str]]]:
    return [(f"attr{c + 1}", [f"attr{c + 1}_v{v + 1}" for v in range(n)]) for c in range(m)]


def puzzle_from_multiset(
    inst: ConstructedInstance,
    naming: Optional[Sequence[tuple[str, Sequence[str]]]] = None,
    seed: int = 0,
) -> Puzzle:
    """Turn a resolved multiset into rules, one chain per multi-category component.

    Class ``i`` becomes person ``i``; the person's value in each category is
    drawn through a seeded permutation.  A component covering categories
    ``c_1 < ... < c_s`` contributes the ``s - 1`` rules linking consecutive
    ``c_t``.
    """
    n, m = inst.n, inst.m
    if naming is None:
        naming = default_naming(n, m)
    if len(naming) != m or any(len(values) != n for _, values in naming):
        raise MalformedInputError(f"naming must supply {m} categories with {n} values each")
    rng = random.Random(seed)
    categories = [Category(name, tuple(values)) for name, values in naming]
    holds = []  # holds[c][person] -> value index
    for _ in range(m):
        perm = list(range(n))
        rng.shuffle(perm)
        holds.append(perm)
    rules = []
    for person, cls in enumerate(inst.p.classes):
        for j in cls:
            cats = [e - 1 for e in elements_of(inst.ms.masks[j])]
            for a, b in zip(cats, cats[1:]):
                rules.append(
                    Rule(
                        categories[a].name,
                        categories[a].values[holds[a][person]],
                        categories[b].name,
                        categories[b].values[holds[b][person]],
                    )
                )
    return Puzzle(n, m, tuple(categories), tuple(rules), seed)


def _blocks(pz: Puzzle) -> list[list[tuple[int, int]]]:
    """Connected groups of values under the rules, ordered by first value."""
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for rule in pz.rules:
        ra = find(pz.locate(rule.cat_a, rule.val_a))
        rb = find(pz.locate(rule.cat_b, rule.val_b))
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for c in range(pz.m):
        for v in range(pz.n):
            groups.setdefault(find((c, v)), []).append((c, v))
    out = sorted(groups.values())
    for block in out:
        cats = [c for c, _ in block]
        if len(set(cats)) != len(cats):
            c = next(c for c in cats if cats.count(c) > 1)
            names = [pz.categories[c].values[v] for cc, v in block if cc == c]
            raise InconsistentPuzzleError(
                f"rules put {', '.join(names)} ({pz.categories[c].name}) on one person"
            )
    return out


def puzzle_to_multiset(pz: Puzzle) -> Multiset:
    masks = []
    for block in _blocks(pz):
        mask = 0
        for c, _ in block:
            mask |= 1 << c
        masks.append(mask)
    return Multiset(pz.m, tuple(masks))


def solve_puzzle(pz: Puzzle, limit: int = 2) -> list[PuzzleSolution]:
    """Up to ``limit`` solutions in a deterministic order.

    Rules are propagated by gluing values into blocks first; the search then
    hands blocks that carry no first-category value to persons, each person
    taking at most one value per category.
    """
    if pz.n > MAX_SOLVER_N or pz.m > MAX_SOLVER_M:
        raise CapacityError(f"solver is guarded at n, m <= {MAX_SOLVER_N}")
    if limit < 1:
        raise MalformedInputError("limit must be >= 1")
    n, m = pz.n, pz.m
    full = (1 << m) - 1
    blocks = _blocks(pz)
    masks = [sum(1 << c for c in {c for c, _ in b}) for b in blocks]
    owner = [-1] * len(blocks)
    covers = [0] * n
    for i, block in enumerate(blocks):
        for c, v in block:
            if c == 0:
                owner[i] = v
                covers[v] |= masks[i]
    free = [i for i in range(len(blocks)) if owner[i] < 0]
    # most constrained (largest) blocks first
    free.sort(key=lambda i: (-len(blocks[i]), i))
    solutions: list[PuzzleSolution] = []

    def emit() -> None:
        grid = [[""] * n for _ in range(m)]
        for i, block in enumerate(blocks):
            for c, v in block:
                grid[c][owner[i]] = pz.categories[c].values[v]
        solutions.append(PuzzleSolution(tuple(tuple(col) for col in grid)))

    def rec(t: int) -> bool:
        if t == len(free):
            if all(cv == full for cv in covers):
                emit()
                return len(solutions) >= limit
            return False
        i = free[t]
        for p in range(n):
            if not covers[p] & masks[i]:
                covers[p] |= masks[i]
                owner[i] = p
                if rec(t + 1):
                    return True
                owner[i] = -1
                covers[p] ^= masks[i]
        return False

    rec(0)
    return solutions


def generate_minimal_puzzle(n: int, m: int, seed: int = 0) -> Puzzle:
    """Puzzle with ``n*m - g`` rules built from the largest known construction."""
    return puzzle_from_multiset(best_construction(n, m), None, seed)


def check_puzzle(pz: Puzzle) -> dict:
    """Rule count against the smallest count any unique puzzle of this shape needs."""
    ms = puzzle_to_multiset(pz)
    report = bounds_report(pz.n, pz.m)
    nm = pz.n * pz.m
    solutions = None
    if pz.n <= MAX_SOLVER_N and pz.m <= MAX_SOLVER_M:
        solutions = len(solve_puzzle(pz, 2))
    return {
        "n": pz.n,
        "m": pz.m,
        "rules": len(pz.rules),
        "components": len(ms),
        "min_rules": None if report.exact is None else nm - report.exact,
        "min_rules_range": [nm - report.upper, nm - report.lower],
        "unique": None if solutions is None else solutions == 1,
        "minimal": None if report.exact is None else len(pz.rules) == nm - report.exact,
    }
