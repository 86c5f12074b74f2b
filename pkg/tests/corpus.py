"""Shared instances for the test modules."""
from urm.constructions import (
    BUILDERS,
    boundary,
    central_regime_capacity,
    near_boundary_range,
)
from urm.core import Multiset, Partition
from urm.errors import RegimeError
from urm.zebra import Category, Puzzle, Rule

# (2, 4): {1,2},{3,4} | {1},{2,3},{4}
UNIQUE_EXAMPLE = Multiset.from_elements(4, [[1, 2], [3, 4], [1], [2, 3], [4]])
UNIQUE_CLASSES = Partition.of([[0, 1], [2, 3, 4]])

# (3, 5): two resolutions
AMBIGUOUS_EXAMPLE = Multiset.from_elements(
    5, [[1, 2], [3, 4], [5], [1, 4], [3, 5], [2], [1, 5], [2, 3], [4]]
)
AMBIGUOUS_P = Partition.of([[0, 1, 2], [3, 4, 5], [6, 7, 8]])
AMBIGUOUS_ALT = Partition.of([[0, 4, 8], [3, 7, 2], [6, 1, 5]])

# (2, 5) puzzle with four rules
PUZZLE_CATEGORIES = (
    Category("Color", ("Red", "Blue")),
    Category("Drink", ("Coffee", "Tea")),
    Category("Pet", ("Dog", "Cat")),
    Category("Subject", ("Math", "CS")),
    Category("Sport", ("Tennis", "Chess")),
)
PUZZLE_RULES = (
    Rule("Color", "Red", "Drink", "Coffee"),
    Rule("Pet", "Dog", "Subject", "Math"),
    Rule("Sport", "Tennis", "Pet", "Dog"),
    Rule("Drink", "Tea", "Pet", "Cat"),
)
PUZZLE = Puzzle(2, 5, PUZZLE_CATEGORIES, PUZZLE_RULES)
PUZZLE_MULTISET = Multiset.from_elements(5, [[1, 2], [3, 4, 5], [1], [2, 3], [4], [5]])


def all_constructions(max_n, max_m, max_k=None):
    """Every builder output with n <= max_n, 2 <= m <= max_m (and size <= max_k)."""
    out = []
    for m in range(1, max_m + 1):
        for n in range(1, max_n + 1):
            calls = [("trivial", (n, m))]
            if n == 1:
                calls.append(("singletons", (m,)))
            if n == 2:
                calls.append(("theorem12", (m,)))
            if m >= 2 and n <= boundary(m):
                calls.append(("pair", (n, m)))
            else:
                calls.append(("shift", (n, m)))
            rng = near_boundary_range(m)
            if rng and rng[0] <= n <= rng[1]:
                calls.append(("mixed", (n, m)))
            for k in range(3, m):
                if 1 <= n <= central_regime_capacity(m, k):
                    calls.append(("central", (n, m, k)))
            for kind, args in calls:
                try:
                    inst = BUILDERS[kind](*args)
                except RegimeError:
                    continue
                if max_k is None or inst.size <= max_k:
                    out.append(inst)
    return out
