"""Explicit uniquely resolvable multisets.

Every builder returns a :class:`ConstructedInstance`: the multiset, the
partition it was built around, and the size it promises.  Components are laid
out class by class, so class ``i`` occupies a contiguous run of indices.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import (
    Multiset,
    Partition,
    full_mask,
    induced_proper_subsets,
    is_valid_partition,
    popcount,
)
from .errors import MalformedInputError, RegimeError

PROVENANCES = ("PAIR", "CENTRAL", "MIXED", "TRIVIAL", "THEOREM12", "SHIFT", "SINGLETONS", "SEARCH")


@dataclass(frozen=True)
class ConstructedInstance:
    ms: Multiset
    p: Partition
    n: int
    m: int
    claimed_size: int
    provenance: str

    def __post_init__(self) -> None:
        if self.provenance not in PROVENANCES:
            raise MalformedInputError(f"unknown provenance {self.provenance!r}")
        if self.p.n != self.n or self.ms.m != self.m:
            raise MalformedInputError("instance parameters disagree with its partition")
        if len(self.ms) != self.claimed_size:
            raise MalformedInputError(
                f"instance has {len(self.ms)} components, claimed {self.claimed_size}"
            )
        if not is_valid_partition(self.ms, self.p):
            raise MalformedInputError("instance partition is not a resolution")

    @property
    def size(self) -> int:
        return len(self.ms)


def _from_classes(classes: Iterable[Iterable[int]], m: int, provenance: str) -> ConstructedInstance:
    masks: list[int] = []
    index_classes = []
    for cls in classes:
        start = len(masks)
        masks.extend(cls)
        index_classes.append(tuple(range(start, len(masks))))
    ms = Multiset(m, tuple(masks))
    return ConstructedInstance(
        ms, Partition(tuple(index_classes)), len(index_classes), m, len(masks), provenance
    )


def boundary(m: int) -> int:
    """``2**(m-1) - 1``: the number of complementary pairs of proper subsets."""
    return (1 << (m - 1)) - 1


def trivial_construction(n: int, m: int) -> ConstructedInstance:
    if n < 1 or m < 1:
        raise RegimeError("trivial construction needs n >= 1 and m >= 1")
    return _from_classes([[full_mask(m)]] * n, m, "TRIVIAL")


def singletons_construction(m: int) -> ConstructedInstance:
    """One class made of all ``m`` singletons (the only option when n = 1)."""
    if m < 1:
        raise RegimeError("m must be >= 1")
    return _from_classes([[1 << i for i in range(m)]], m, "SINGLETONS")


def theorem12_construction(m: int) -> ConstructedInstance:
    """Singletons ``{1}..{m}`` as one class and ``[m]`` as the other (n = 2)."""
    if m < 1:
        raise RegimeError("m must be >= 1")
    return _from_classes([[1 << i for i in range(m)], [full_mask(m)]], m, "THEOREM12")


def complement_pairs(m: int) -> list[tuple[int, int]]:
    """Complementary pairs ``(C, [m] - C)`` with ``1 in C``, ordered by ``C``."""
    full = full_mask(m)
    return [(c, full ^ c) for c in range(1, full, 2)]


def pair_construction(n: int, m: int) -> ConstructedInstance:
    if m < 2 or not 1 <= n <= boundary(m):
        raise RegimeError(f"pair construction needs 1 <= n <= 2^(m-1)-1; got n={n}, m={m}")
    return _from_classes(complement_pairs(m)[:n], m, "PAIR")


def complement_free_family(size: int) -> list[int]:
    """``2**(size-1) - 1`` pairwise non-complementary proper subsets of ``[size]``.

    Members all have at least ``ceil(size/2)`` elements.  For even ``size`` the
    half-size sets are taken one per complementary pair, keeping the one that
    contains element 1.  Returned in increasing bit-pattern order.
    """
    if size < 2:
        raise RegimeError(f"complement-free family needs N >= 2, got {size}")
    full = full_mask(size)
    half = size // 2
    out = []
    for c in range(1, full):
        bits = popcount(c)
        if size % 2:
            keep = bits >= half + 1
        else:
            keep = bits > half or (bits == half and c & 1)
        if keep:
            out.append(c)
    return out


def central_regime_capacity(m: int, k: int) -> int:
    """Largest n the central construction supports (0 when k is out of range)."""
    if not 2 <= k < m:
        return 0
    block = m // (k - 1)
    if block < 2:
        return 0
    return (1 << (block - 1)) - 1


def central_construction(n: int, m: int, k: int) -> ConstructedInstance:
    """``n`` classes of size ``k``, each a central component plus block leftovers.

    ``[m]`` is cut into ``k - 1`` consecutive blocks of ``m // (k-1)`` elements;
    the ``m % (k-1)`` trailing elements join every central component.  Class
    ``j`` takes the ``j``-th member of the complement-free family inside each
    block as its share of the central component.
    """
    if not 2 <= k < m:
        raise RegimeError(f"central construction needs 2 <= k < m; got k={k}, m={m}")
    block = m // (k - 1)
    if block < 2:
        raise RegimeError(f"central construction needs floor(m/(k-1)) >= 2; got {block}")
    cap = (1 << (block - 1)) - 1
    if not 1 <= n <= cap:
        raise RegimeError(
            f"central construction needs 1 <= n <= 2^(floor(m/(k-1))-1)-1 = {cap}; got n={n}"
        )
    family = complement_free_family(block)
    block_full = full_mask(block)
    used = (k - 1) * block
    remainder = full_mask(m) ^ full_mask(used)
    classes = []
    for j in range(n):
        central = remainder
        leftovers = []
        for i in range(k - 1):
            shift = i * block
            central |= family[j] << shift
            leftovers.append((block_full ^ family[j]) << shift)
        classes.append([central, *leftovers])
    return _from_classes(classes, m, "CENTRAL")


def near_boundary_range(m: int) -> tuple[int, int] | None:
    """Inclusive n-range where the exact formula holds, or None for m < 4."""
    if m < 4:
        return None
    return (1 << (m - 1)) + 1 - (1 << (m // 2)), boundary(m)


def mixed_size3_count(n: int, m: int) -> int:
    return (boundary(m) - n) // 2


def mixed_construction(n: int, m: int) -> ConstructedInstance:
    """Size-3 central classes topped up with complement pairs (extremal)."""
    rng = near_boundary_range(m)
    if rng is None or not rng[0] <= n <= rng[1]:
        raise RegimeError(
            f"mixed construction needs m >= 4 and 2^(m-1)+1-2^floor(m/2) <= n <= 2^(m-1)-1; "
            f"got n={n}, m={m}"
        )
    k = mixed_size3_count(n, m)
    classes: list[list[int]] = []
    blocked: set[int] = set()
    if k:
        core = central_construction(k, m, 3)
        for cls in core.p.classes:
            classes.append([core.ms.masks[i] for i in cls])
            blocked |= induced_proper_subsets(core.ms, cls)
    for c, comp in complement_pairs(m):
        if len(classes) == n:
            break
        if c in blocked or comp in blocked:
            continue
        classes.append([c, comp])
    if len(classes) != n:
        raise RegimeError(f"ran out of complement pairs for n={n}, m={m}")
    return _from_classes(classes, m, "MIXED")


def shift_construction(n: int, m: int) -> ConstructedInstance:
    """All complement pairs plus ``n - 2^(m-1) + 1`` copies of ``[m]``."""
    pairs = boundary(m)
    if n <= pairs:
        raise RegimeError(
            f"shift construction needs n > 2^(m-1)-1 = {pairs}; got n={n} (use pair/mixed)"
        )
    classes = [list(pair) for pair in complement_pairs(m)]
    classes += [[full_mask(m)]] * (n - pairs)
    return _from_classes(classes, m, "SHIFT")


def eliminate_singletons(ms: Multiset, p: Partition) -> tuple[Multiset, Partition]:
    """Rewrite a resolution so that no class is a lone copy of ``[m]``.

    Repeatedly: merge the two lowest-indexed components of the lowest-indexed
    class of size >= 3, then split a lone ``[m]`` into the first of those two
    components and its complement.  The freed index slot is reused, so ``k`` is
    unchanged.  ``p`` is assumed to be the unique resolution of ``ms``.
    """
    if not is_valid_partition(ms, p):
        raise RegimeError("input partition is not a resolution of the multiset")
    masks = list(ms.masks)
    classes = [sorted(c) for c in p.classes]
    if not any(len(c) == 1 for c in classes):
        raise RegimeError("no class of size 1 to eliminate")
    if not any(len(c) >= 3 for c in classes):
        raise RegimeError("no class of size >= 3 to merge from")
    full = ms.full
    while True:
        lone = next((c for c in classes if len(c) == 1), None)
        if lone is None:
            break
        big = next((c for c in classes if len(c) >= 3), None)
        if big is None:
            raise RegimeError("a size-1 class remains but no class of size >= 3 is left")
        first, second = big[0], big[1]
        piece = masks[first]
        masks[first] = piece | masks[second]
        big.remove(second)
        masks[lone[0]] = piece
        masks[second] = full ^ piece
        lone.append(second)
        lone.sort()
    return Multiset(ms.m, tuple(masks)), Partition(tuple(tuple(c) for c in classes))


# ---------------------------------------------------------------------------
# Choosing the largest applicable construction


def log_ratio_k(n: int, m: int) -> int:
    """``floor((m+1) / (log2(n+1) + 2)) + 1``."""
    # floor((m+1)/(L+2)) = largest q with q*(L+2) <= m+1, i.e. (n+1)^q * 4^q <= 2^(m+1)
    q = 0
    while (4 * (n + 1)) ** (q + 1) <= 1 << (m + 1):
        q += 1
    return q + 1


def central_fits(n: int, m: int, k: int) -> bool:
    return n >= 1 and n <= central_regime_capacity(m, k)


def construction_plan(n: int, m: int) -> tuple[str, dict, int]:
    """Pick the largest construction for ``(n, m)`` without building it.

    Returns ``(kind, kwargs, size)`` where ``kind`` names a builder in
    :data:`BUILDERS`.
    """
    if n < 1 or m < 1:
        raise RegimeError("n and m must be >= 1")
    options: list[tuple[int, int, str, dict]] = [(n, 0, "trivial", {"n": n, "m": m})]
    if n == 1:
        options.append((m, 1, "singletons", {"m": m}))
    if n == 2:
        options.append((m + 1, 2, "theorem12", {"m": m}))
    pairs = boundary(m)
    if n > pairs:
        options.append((n + pairs, 3, "shift", {"n": n, "m": m}))
    rng = near_boundary_range(m)
    if rng and rng[0] <= n <= rng[1]:
        options.append((2 * n + mixed_size3_count(n, m), 4, "mixed", {"n": n, "m": m}))
    if m >= 2 and 1 <= n <= pairs:
        options.append((2 * n, 5, "pair", {"n": n, "m": m}))
        for k in range(3, m):
            if central_fits(n, m, k):
                options.append((k * n, 6, "central", {"n": n, "m": m, "k": k}))
    size, _, kind, kwargs = max(options, key=lambda o: (o[0], -o[1]))
    return kind, kwargs, size


BUILDERS = {
    "trivial": trivial_construction,
    "singletons": singletons_construction,
    "theorem12": theorem12_construction,
    "pair": pair_construction,
    "central": central_construction,
    "mixed": mixed_construction,
    "shift": shift_construction,
}


def best_construction(n: int, m: int) -> ConstructedInstance:
    """The largest instance among all constructions applicable to ``(n, m)``."""
    kind, kwargs, size = construction_plan(n, m)
    inst = BUILDERS[kind](**kwargs)
    assert inst.size == size
    return inst


def best_construction_size(n: int, m: int) -> int:
    return construction_plan(n, m)[2]
