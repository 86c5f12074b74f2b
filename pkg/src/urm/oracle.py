"""Brute-force ground truth for small instances.

Nothing here shares code paths with the optimized resolver: the naive
resolver assigns components to classes one index at a time, and the exact
searches enumerate multisets of set partitions of ``[m]``.
"""
from __future__ import annotations

import random
import threading
import time
from dataclasses import dataclass
from typing import Iterator, Optional

from .constructions import ConstructedInstance
from .core import (
    Multiset,
    Partition,
    ResolutionReport,
    Status,
    balance_check,
    canonicalize,
    enumerate_resolutions,
    full_mask,
    mask_from_elements,
    subset_criterion,
)
from .errors import CapacityError, MalformedInputError

MAX_SET_PARTITION_M = 6
MAX_NAIVE_K = 14
CERTIFIED_MAX_M = 4


def set_partitions(m: int) -> list[tuple[int, ...]]:
    """All set partitions of ``[m]`` as tuples of block masks.

    Generated in restricted-growth-string order; blocks are listed by their
    smallest element.
    """
    if m < 1:
        raise MalformedInputError(f"m must be >= 1, got {m}")
    if m > MAX_SET_PARTITION_M:
        raise CapacityError(f"set_partitions is guarded at m <= {MAX_SET_PARTITION_M}")
    out = []
    rgs = [0] * m

    def rec(i: int, blocks: int) -> None:
        if i == m:
            masks = [0] * blocks
            for e, b in enumerate(rgs):
                masks[b] |= 1 << e
            out.append(tuple(masks))
            return
        for b in range(blocks + 1):
            rgs[i] = b
            rec(i + 1, max(blocks, b + 1))

    rgs[0] = 0
    rec(1, 1)
    return out


def _naive_partitions(ms: Multiset, n: int, nodes: list[int]) -> Iterator[Partition]:
    # Each component, in index order, joins an open class or opens a new one.
    # Classes are unlabeled, so each index partition appears once.
    full = ms.full
    classes: list[list[int]] = []
    covers: list[int] = []

    def rec(j: int) -> Iterator[Partition]:
        nodes[0] += 1
        if j == ms.k:
            if len(classes) == n and all(c == full for c in covers):
                yield Partition(tuple(tuple(c) for c in classes)).normalized()
            return
        b = ms.masks[j]
        for t in range(len(classes)):
            if not covers[t] & b:
                classes[t].append(j)
                covers[t] |= b
                yield from rec(j + 1)
                covers[t] ^= b
                classes[t].pop()
        if len(classes) < n:
            classes.append([j])
            covers.append(b)
            yield from rec(j + 1)
            covers.pop()
            classes.pop()

    yield from rec(0)


def _check_naive(ms: Multiset, n: int) -> None:
    if ms.k > MAX_NAIVE_K:
        raise CapacityError(f"naive resolver is guarded at k <= {MAX_NAIVE_K}")
    if n < 1:
        raise MalformedInputError("n must be >= 1")


def naive_resolve(ms: Multiset, n: int, limit: int = 2) -> ResolutionReport:
    """Resolve by brute force over index partitions into at most ``n`` classes.

    The only pruning is dropping a component into a class it overlaps;
    full-cover and class-count filters run at the leaves.
    """
    _check_naive(ms, n)
    if limit < 1:
        raise MalformedInputError("limit must be >= 1")
    stop = max(limit, 2)
    nodes = [0]
    found: list[Partition] = []
    exhausted = True
    for p in _naive_partitions(ms, n, nodes):
        found.append(p)
        if len(found) >= stop:
            exhausted = False
            break
    found.sort(key=lambda p: p.classes)
    if not found:
        status = Status.UNRESOLVABLE
    else:
        status = Status.UNIQUE if len(found) == 1 else Status.MULTIPLE
    witnesses = tuple(found[:2])
    return ResolutionReport(
        status, witnesses, tuple(canonicalize(ms, w) for w in witnesses), nodes[0], exhausted
    )


def naive_all_resolutions(ms: Multiset, n: int) -> list[Partition]:
    _check_naive(ms, n)
    return sorted(_naive_partitions(ms, n, [0]), key=lambda p: p.classes)


# ---------------------------------------------------------------------------
# Exhaustive searches


@dataclass(frozen=True)
class SearchBudget:
    max_candidates: int = 10**6
    max_nodes: int = 10**8
    time_cap: float = 600.0  # seconds

    def __post_init__(self) -> None:
        if self.max_candidates <= 0 or self.max_nodes <= 0 or self.time_cap <= 0:
            raise MalformedInputError("budget fields must be positive")


@dataclass(frozen=True)
class ExactResult:
    value: int
    witness: Optional[ConstructedInstance]
    exhausted: bool
    nodes: int = 0
    candidates: int = 0
    elapsed: float = 0.0


class _OutOfBudget(Exception):
    pass


class _Meter:
    def __init__(self, budget: SearchBudget, cancel: Optional[threading.Event]):
        self.budget = budget
        self.cancel = cancel
        self.nodes = 0
        self.candidates = 0
        self.start = time.monotonic()

    def node(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _OutOfBudget
        if self.nodes % 1024 == 0:
            self._poll()

    def candidate(self) -> None:
        self.candidates += 1
        if self.candidates > self.budget.max_candidates:
            raise _OutOfBudget
        self._poll()

    def _poll(self) -> None:
        if self.cancel is not None and self.cancel.is_set():
            raise _OutOfBudget
        if time.monotonic() - self.start > self.budget.time_cap:
            raise _OutOfBudget

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self.start


def _is_unique(ms: Multiset, n: int) -> bool:
    if ms.k <= MAX_NAIVE_K:
        return naive_resolve(ms, n, 2).status is Status.UNIQUE
    return enumerate_resolutions(ms, n, 2).status is Status.UNIQUE


def _witness(chosen: list[tuple[int, ...]], n: int, m: int) -> ConstructedInstance:
    masks: list[int] = []
    classes = []
    for part in chosen:
        start = len(masks)
        masks.extend(part)
        classes.append(tuple(range(start, len(masks))))
    return ConstructedInstance(
        Multiset(m, tuple(masks)), Partition(tuple(classes)), n, m, len(masks), "SEARCH"
    )


def _max_gain_table(n: int, m: int) -> list[list[int]]:
    """``table[r][B]``: largest total size of ``r`` classes whose
    ``2**d - 2`` costs fit in ``B`` (``-1`` when infeasible)."""
    cap = (1 << m) - 2
    table = [[-1] * (cap + 1) for _ in range(n + 1)]
    table[0] = [0] * (cap + 1)
    for r in range(1, n + 1):
        prev, row = table[r - 1], table[r]
        for b in range(cap + 1):
            best = -1
            for d in range(1, m + 1):
                cost = (1 << d) - 2
                if cost > b:
                    break
                if prev[b - cost] >= 0:
                    best = max(best, prev[b - cost] + d)
            row[b] = best
    return table


def g_exact_search(
    n: int,
    m: int,
    budget: SearchBudget = SearchBudget(),
    cancel: Optional[threading.Event] = None,
) -> ExactResult:
    """Largest uniquely resolvable multiset for ``(n, m)`` by exhaustive search.

    Candidates are ``n``-multisets of set partitions of ``[m]`` in which no
    component other than ``[m]`` repeats and whose class sizes pass the
    subset criterion; uniqueness is checked with :func:`naive_resolve`.
    ``exhausted`` is only ever true for ``m <= 4``.
    """
    if n < 1:
        raise MalformedInputError("n must be >= 1")
    parts = sorted(set_partitions(m), key=len, reverse=True)
    full = full_mask(m)
    cap = (1 << m) - 2
    gain = _max_gain_table(n, m)
    meter = _Meter(budget, cancel)
    best_value = 0
    best: Optional[list[tuple[int, ...]]] = None
    chosen: list[tuple[int, ...]] = []
    used: set[int] = set()

    def rec(start: int, remaining: int, cost: int, size: int) -> None:
        nonlocal best_value, best
        meter.node()
        if remaining == 0:
            if size <= best_value:
                return
            meter.candidate()
            ms = Multiset(m, tuple(b for part in chosen for b in part))
            if _is_unique(ms, n):
                best_value, best = size, list(chosen)
            return
        if size + gain[remaining][cap - cost] <= best_value:
            return
        for i in range(start, len(parts)):
            part = parts[i]
            d = len(part)
            new_cost = cost + (1 << d) - 2
            if new_cost > cap:
                continue
            if part == (full,):
                chosen.append(part)
                rec(i, remaining - 1, new_cost, size + 1)
                chosen.pop()
                continue
            if any(b in used for b in part):
                continue
            used.update(part)
            chosen.append(part)
            rec(i + 1, remaining - 1, new_cost, size + d)
            chosen.pop()
            used.difference_update(part)

    finished = True
    try:
        rec(0, n, 0, 0)
    except _OutOfBudget:
        finished = False
    witness = _witness(best, n, m) if best is not None else None
    return ExactResult(
        best_value,
        witness,
        finished and m <= CERTIFIED_MAX_M,
        meter.nodes,
        meter.candidates,
        meter.elapsed,
    )


def p_k_search(
    k: int,
    m: int,
    budget: SearchBudget = SearchBudget(),
    cancel: Optional[threading.Event] = None,
) -> ExactResult:
    """Most classes of size exactly ``k`` that form a uniquely resolvable multiset."""
    if not 2 <= k <= m:
        raise MalformedInputError(f"need 2 <= k <= m; got k={k}, m={m}")
    parts = [p for p in set_partitions(m) if len(p) == k]
    meter = _Meter(budget, cancel)
    top = min(len(parts), ((1 << m) - 2) // ((1 << k) - 2))
    chosen: list[tuple[int, ...]] = []
    used: set[int] = set()
    hit: Optional[list[tuple[int, ...]]] = None

    def rec(start: int, remaining: int, target: int) -> bool:
        nonlocal hit
        meter.node()
        if remaining == 0:
            meter.candidate()
            ms = Multiset(m, tuple(b for part in chosen for b in part))
            if _is_unique(ms, target):
                hit = list(chosen)
                return True
            return False
        for i in range(start, len(parts) - remaining + 1):
            part = parts[i]
            if any(b in used for b in part):
                continue
            used.update(part)
            chosen.append(part)
            if rec(i + 1, remaining - 1, target):
                return True
            chosen.pop()
            used.difference_update(part)
        return False

    finished = True
    value = 0
    try:
        for target in range(top, 0, -1):
            if rec(0, target, target):
                value = target
                break
    except _OutOfBudget:
        finished = False
    witness = _witness(hit, value, m) if hit is not None else None
    return ExactResult(
        value, witness, finished and m <= CERTIFIED_MAX_M, meter.nodes, meter.candidates, meter.elapsed
    )


# ---------------------------------------------------------------------------
# Random corpus


def random_balanced_multisets(
    count: int = 200, seed: int = 0, max_m: int = 5, max_k: int = 12
) -> list[tuple[Multiset, int]]:
    """Seeded random ``(multiset, n)`` pairs where every element has multiplicity n.

    Half are stacks of random set partitions (always resolvable); the other
    half scatter each element over ``n`` random slots (usually not).
    """
    rng = random.Random(seed)
    out: list[tuple[Multiset, int]] = []
    while len(out) < count:
        m = rng.randint(2, max_m)
        n = rng.randint(2, 4)
        if len(out) % 2 == 0:
            masks: list[int] = []
            for _ in range(n):
                labels = [rng.randrange(m) for _ in range(m)]
                blocks: dict[int, list[int]] = {}
                for e, lab in enumerate(labels, start=1):
                    blocks.setdefault(lab, []).append(e)
                masks.extend(mask_from_elements(b) for b in blocks.values())
            if len(masks) > max_k:
                continue
            rng.shuffle(masks)
        else:
            k = rng.randint(n, max_k)
            slots = [0] * k
            for e in range(m):
                for j in rng.sample(range(k), n):
                    slots[j] |= 1 << e
            masks = [b for b in slots if b]
        ms = Multiset(m, tuple(masks))
        assert balance_check(ms, n)
        out.append((ms, n))
    return out


def subset_criterion_holds(ms: Multiset, p: Partition) -> bool:
    return subset_criterion(p.sizes, ms.m)
