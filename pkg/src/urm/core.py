"""Ground-set data model and the resolution engine.

Subsets of ``[m] = {1..m}`` are stored as ``int`` bit patterns: element ``e``
lives at bit ``e - 1``.  A :class:`Multiset` is an ordered tuple of such masks,
and a :class:`Partition` groups 0-based component indices into classes, each
of which must be an exact cover of ``[m]``.

Two partitions are the same resolution when they differ only by the order of
their classes.  Uniqueness is decided at that level, so two copies of a
proper subset sitting in different classes always give a second resolution,
while copies of ``[m]`` (each a whole class) do not.
"""
from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import CapacityError, MalformedInputError

DEFAULT_MAX_M = 24
MAX_COMPONENTS = 4096
MAX_CLASS_ROWS = 2_000_000


def max_m() -> int:
    """The active ground-set cap; ``URM_MAX_M`` may only lower it."""
    raw = os.environ.get("URM_MAX_M")
    if not raw:
        return DEFAULT_MAX_M
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_MAX_M
    return max(1, min(value, DEFAULT_MAX_M))


def full_mask(m: int) -> int:
    return (1 << m) - 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_from_elements(elements: Iterable[int]) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << (e - 1)
    return mask


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


def lowest_bit(mask: int) -> int:
    return mask & -mask


class SubsetMask(NamedTuple):
    """A subset of ``[m]`` with its ground-set size attached."""

    bits: int
    m: int

    @classmethod
    def from_elements(cls, elements: Iterable[int], m: int) -> "SubsetMask":
        elements = list(elements)
        for e in elements:
            if not 1 <= e <= m:
                raise MalformedInputError(f"element {e} outside [1, {m}]")
        return cls(mask_from_elements(elements), m)

    def elements(self) -> tuple[int, ...]:
        return elements_of(self.bits)

    def __len__(self) -> int:
        return popcount(self.bits)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements())) + "}"


def _check_m(m: int) -> None:
    if m < 1:
        raise MalformedInputError(f"ground-set size must be >= 1, got {m}")
    cap = max_m()
    if m > cap:
        raise CapacityError(f"m={m} exceeds the configured cap of {cap}")


@dataclass(frozen=True)
class Multiset:
    """The family ``F = {C_1, ..., C_k}``; position ``j`` is component ``j``."""

    m: int
    masks: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_m(self.m)
        object.__setattr__(self, "masks", tuple(int(x) for x in self.masks))
        full = full_mask(self.m)
        for j, mask in enumerate(self.masks):
            if mask == 0:
                raise MalformedInputError(f"component {j} is empty")
            if mask & ~full:
                raise MalformedInputError(f"component {j} has elements beyond m={self.m}")

    @classmethod
    def from_elements(cls, m: int, components: Iterable[Iterable[int]]) -> "Multiset":
        masks = []
        for j, comp in enumerate(components):
            comp = list(comp)
            for e in comp:
                if not isinstance(e, int) or not 1 <= e <= m:
                    raise MalformedInputError(f"component {j}: element {e!r} outside [1, {m}]")
            if len(set(comp)) != len(comp):
                raise MalformedInputError(f"component {j} lists an element twice")
            masks.append(mask_from_elements(comp))
        return cls(m, tuple(masks))

    @property
    def k(self) -> int:
        return len(self.masks)

    def __len__(self) -> int:
        return len(self.masks)

    @property
    def full(self) -> int:
        return full_mask(self.m)

    @property
    def components(self) -> tuple[SubsetMask, ...]:
        return tuple(SubsetMask(b, self.m) for b in self.masks)

    def element_lists(self) -> list[list[int]]:
        return [list(elements_of(b)) for b in self.masks]

    def repeated_proper_masks(self) -> list[int]:
        """Masks other than ``[m]`` that occur more than once (sorted)."""
        seen: set[int] = set()
        repeated: set[int] = set()
        for b in self.masks:
            if b in seen and b != self.full:
                repeated.add(b)
            seen.add(b)
        return sorted(repeated)

    def permuted(self, order: Sequence[int]) -> "Multiset":
        return Multiset(self.m, tuple(self.masks[i] for i in order))

    def __str__(self) -> str:
        return "{" + ", ".join(str(c) for c in self.components) + "}"


@dataclass(frozen=True)
class Partition:
    """Component indices grouped into classes (0-based)."""

    classes: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "classes", tuple(tuple(int(i) for i in c) for c in self.classes)
        )

    @classmethod
    def of(cls, classes: Iterable[Iterable[int]]) -> "Partition":
        return cls(tuple(tuple(c) for c in classes))

    @property
    def n(self) -> int:
        return len(self.classes)

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def normalized(self) -> "Partition":
        """Same partition with classes sorted internally and among themselves."""
        return Partition(tuple(sorted(tuple(sorted(c)) for c in self.classes)))

    def as_lists(self) -> list[list[int]]:
        return [list(c) for c in self.classes]


@dataclass(frozen=True, order=True)
class CanonicalPartition:
    """A partition seen through its masks only.

    Each class becomes its sorted tuple of masks and the classes are sorted,
    so renaming classes or swapping equal-mask components changes nothing.
    """

    classes: tuple[tuple[int, ...], ...]

    def element_lists(self) -> list[list[list[int]]]:
        return [[list(elements_of(b)) for b in cls] for cls in self.classes]

    def __str__(self) -> str:
        return (
            "{"
            + ", ".join(
                "{" + ",".join("".join(map(str, elements_of(b))) for b in cls) + "}"
                for cls in self.classes
            )
            + "}"
        )


class Status(str, enum.Enum):
    UNRESOLVABLE = "UNRESOLVABLE"
    UNIQUE = "UNIQUE"
    MULTIPLE = "MULTIPLE"


@dataclass(frozen=True)
class ResolutionReport:
    status: Status
    witnesses: tuple[Partition, ...] = ()
    canonical: tuple[CanonicalPartition, ...] = ()
    nodes_explored: int = 0
    complete: bool = True  # False when the search stopped at `limit`

    @property
    def count(self) -> int:
        return len(self.witnesses)


def _status_for(found: int) -> Status:
    if found == 0:
        return Status.UNRESOLVABLE
    return Status.UNIQUE if found == 1 else Status.MULTIPLE


# ---------------------------------------------------------------------------
# Elementary checks


def balance_check(ms: Multiset, n: int) -> bool:
    """True iff every element of ``[m]`` lies in exactly ``n`` components."""
    counts = [0] * ms.m
    for b in ms.masks:
        for e in elements_of(b):
            counts[e - 1] += 1
    return all(c == n for c in counts)


def _check_indices(ms: Multiset, p: Partition) -> None:
    for cls in p.classes:
        for i in cls:
            if not 0 <= i < ms.k:
                raise MalformedInputError(f"component index {i} outside [0, {ms.k})")


def is_valid_partition(ms: Multiset, p: Partition) -> bool:
    _check_indices(ms, p)
    seen: set[int] = set()
    for cls in p.classes:
        if not cls:
            return False
        cover = 0
        for i in cls:
            if i in seen:
                return False
            seen.add(i)
            if cover & ms.masks[i]:
                return False
            cover |= ms.masks[i]
        if cover != ms.full:
            return False
    return len(seen) == ms.k


def canonicalize(ms: Multiset, p: Partition) -> CanonicalPartition:
    if not is_valid_partition(ms, p):
        raise MalformedInputError("partition is not a resolution of the multiset")
    return CanonicalPartition(
        tuple(sorted(tuple(sorted(ms.masks[i] for i in cls)) for cls in p.classes))
    )


def subset_criterion(sizes: Sequence[int], m: int) -> bool:
    """Necessary condition for uniqueness: ``sum(2**d - 2) <= 2**m - 2``."""
    for d in sizes:
        if d < 1:
            raise MalformedInputError(f"class sizes must be >= 1, got {d}")
    return sum((1 << d) - 2 for d in sizes) <= (1 << m) - 2


def induced_proper_subsets(ms: Multiset, cls: Iterable[int]) -> frozenset[int]:
    """Every union of a non-empty, non-total sub-collection of the class."""
    cls = list(cls)
    masks = []
    cover = 0
    for i in cls:
        if not 0 <= i < ms.k:
            raise MalformedInputError(f"component index {i} outside [0, {ms.k})")
        if cover & ms.masks[i]:
            raise MalformedInputError("class components overlap")
        cover |= ms.masks[i]
        masks.append(ms.masks[i])
    d = len(masks)
    out = set()
    for sel in range(1, (1 << d) - 1):
        union = 0
        for t in range(d):
            if sel >> t & 1:
                union |= masks[t]
        out.add(union)
    return frozenset(out)


# ---------------------------------------------------------------------------
# Resolution engine


def _check_caps(ms: Multiset, n: int, limit: int) -> None:
    if limit < 1:
        raise MalformedInputError("limit must be >= 1")
    if n < 1:
        raise MalformedInputError("class count n must be >= 1")
    _check_m(ms.m)
    if ms.k > MAX_COMPONENTS:
        raise CapacityError(f"k={ms.k} exceeds the component cap of {MAX_COMPONENTS}")


def exact_cover_classes(ms: Multiset, max_rows: int = MAX_CLASS_ROWS) -> list[tuple[int, ...]]:
    """All index sets whose masks form an exact cover of ``[m]``.

    Each class is produced once, grown from its lowest index by repeatedly
    adding a higher-indexed component that covers the lowest uncovered
    element (candidates in increasing index order).
    """
    full = ms.full
    masks = ms.masks
    by_element: list[list[int]] = [[] for _ in range(ms.m)]
    for j, b in enumerate(masks):
        for e in elements_of(b):
            by_element[e - 1].append(j)

    rows: list[tuple[int, ...]] = []
    members: list[int] = []

    def grow(anchor: int, cover: int) -> None:
        if cover == full:
            rows.append(tuple(members))
            if len(rows) > max_rows:
                raise CapacityError(f"more than {max_rows} candidate classes")
            return
        free = ~cover & full
        e = (free & -free).bit_length() - 1
        for j in by_element[e]:
            if j > anchor and not masks[j] & cover:
                members.append(j)
                grow(anchor, cover | masks[j])
                members.pop()

    for a in range(ms.k):
        members.append(a)
        grow(a, masks[a])
        members.pop()
    return rows


def _iter_exact_partitions(k: int, rows: list[tuple[int, ...]], counter: list[int]) -> Iterator[list[int]]:
    # Algorithm X over component indices; rows are candidate classes.
    cols: dict[int, set[int]] = {j: set() for j in range(k)}
    for r, row in enumerate(rows):
        for j in row:
            cols[j].add(r)

    def select(r: int) -> list[set[int]]:
        removed = []
        for j in rows[r]:
            for other in cols[j]:
                for jj in rows[other]:
                    if jj != j:
                        cols[jj].discard(other)
            removed.append(cols.pop(j))
        return removed

    def deselect(r: int, removed: list[set[int]]) -> None:
        for j in reversed(rows[r]):
            cols[j] = removed.pop()
            for other in cols[j]:
                for jj in rows[other]:
                    if jj != j:
                        cols[jj].add(other)

    chosen: list[int] = []

    def search() -> Iterator[list[int]]:
        counter[0] += 1
        if not cols:
            yield list(chosen)
            return
        # fewest candidate classes first; lowest index breaks ties
        j = min(cols, key=lambda c: (len(cols[c]), c))
        for r in sorted(cols[j]):
            chosen.append(r)
            removed = select(r)
            yield from search()
            deselect(r, removed)
            chosen.pop()

    yield from search()


def enumerate_resolutions(ms: Multiset, n: int, limit: int = 2) -> ResolutionReport:
    """Search for resolutions of ``ms`` into ``n`` exact covers.

    Stops once ``limit`` distinct resolutions are found (never before two,
    since one alone cannot tell UNIQUE from MULTIPLE).  The report carries the
    first two as witnesses; ``complete`` tells whether the space was exhausted.
    """
    _check_caps(ms, n, limit)
    if n > ms.k or not balance_check(ms, n):
        return ResolutionReport(Status.UNRESOLVABLE)
    rows = exact_cover_classes(ms)
    stop = max(limit, 2)
    counter = [0]
    found: list[Partition] = []
    complete = True
    for chosen in _iter_exact_partitions(ms.k, rows, counter):
        assert len(chosen) == n  # balance forces exactly n exact covers
        found.append(Partition(tuple(rows[r] for r in chosen)).normalized())
        if len(found) >= stop:
            complete = False
            break
    return _report(ms, found, counter[0], complete)


def _report(ms: Multiset, found: list[Partition], nodes: int, complete: bool) -> ResolutionReport:
    witnesses = tuple(found[:2])
    return ResolutionReport(
        status=_status_for(len(found)),
        witnesses=witnesses,
        canonical=tuple(canonicalize(ms, w) for w in witnesses),
        nodes_explored=nodes,
        complete=complete,
    )


def all_resolutions(ms: Multiset, n: int, limit: int = 10**6) -> list[Partition]:
    """Every resolution (normalized), up to ``limit``; mainly for cross-checks."""
    _check_caps(ms, n, limit)
    if n > ms.k or not balance_check(ms, n):
        return []
    rows = exact_cover_classes(ms)
    out = []
    for chosen in _iter_exact_partitions(ms.k, rows, [0]):
        out.append(Partition(tuple(rows[r] for r in chosen)).normalized())
        if len(out) >= limit:
            break
    return sorted(out, key=lambda p: p.classes)


def is_uniquely_resolvable(ms: Multiset, n: int) -> bool:
    return enumerate_resolutions(ms, n, 2).status is Status.UNIQUE
