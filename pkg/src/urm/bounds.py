"""Closed-form lower, upper and exact values of g(n, m).

Comparisons that decide which bound applies are done in integer arithmetic:
``n > 2**(m*H2(1/k))`` is tested as ``n**k * (k-1)**(m*(k-1)) > k**(k*m)``, and
``k*n > n*(m+1)/(log2(n+1)+2)`` as ``(4*(n+1))**k > 2**(m+1)``.  Floats appear
only in reported real-valued quantities.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .constructions import (
    best_construction_size,
    boundary,
    central_fits,
    log_ratio_k,
    near_boundary_range,
)
from .errors import DomainError, RegimeError

N_EQUALS_2 = "N_EQUALS_2"
SMALL = "SMALL"
THEOREM29 = "THEOREM29"
AT_OR_ABOVE_BOUNDARY = "AT_OR_ABOVE_BOUNDARY"


def binary_entropy(x: float | Fraction) -> float:
    if not 0 <= x <= 1:
        raise DomainError(f"binary entropy is defined on [0, 1], got {x}")
    if x == 0 or x == 1:
        return 0.0
    x = float(x)
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


def exceeds_entropy_power(value: int, m: int, k: int) -> bool:
    """Exact test of ``value > 2**(m * H2(1/k))`` for integer ``k >= 2``."""
    # 2^(m H2(1/k)) = (k^k / (k-1)^(k-1))^(m/k)
    return value**k * (k - 1) ** (m * (k - 1)) > k ** (k * m)


def hamming_ball_bound(m: int, k: int) -> tuple[int, float]:
    """``(sum_{i <= m//k} C(m, i), 2**(m*H2(1/k)))`` with the first <= the second."""
    if k < 2:
        raise DomainError(f"k must be >= 2, got {k}")
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    exact = sum(math.comb(m, i) for i in range(m // k + 1))
    cap = 2.0 ** (m * binary_entropy(Fraction(1, k)))
    if exceeds_entropy_power(exact, m, k):
        raise ArithmeticError(f"binomial tail {exact} exceeds the entropy cap at m={m}, k={k}")
    return exact, cap


def analytic_lower(n: int, m: int) -> float:
    return n * (m + 1) / (math.log2(n + 1) + 2)


def beats_analytic(k: int, n: int, m: int) -> bool:
    """Exact test of ``k*n > n*(m+1)/(log2(n+1)+2)``."""
    return (4 * (n + 1)) ** k > 1 << (m + 1)


def _check_small_regime(n: int, m: int) -> None:
    if m < 2 or not 1 <= n <= boundary(m):
        raise RegimeError(
            f"bound needs 1 <= n <= 2^(m-1)-1; got n={n}, m={m} (use exact_value)"
        )


@dataclass(frozen=True)
class LowerBound:
    constructive: int
    analytic: float
    k_used: int
    from_log_ratio: bool  # k_used is the log-ratio choice, not the pair fallback


def lower_bound(n: int, m: int) -> LowerBound:
    _check_small_regime(n, m)
    k = log_ratio_k(n, m)
    if k >= 2 and central_fits(n, m, k):
        return LowerBound(k * n, analytic_lower(n, m), k, True)
    return LowerBound(2 * n, analytic_lower(n, m), 2, False)


def closed_form_k(n: int, m: int) -> int:
    """``ceil((1.6/eps) * ln(1/eps))`` with ``eps = c*ln2/2``, ``c = log2(n)/m``."""
    c = math.log2(n) / m
    eps = c * math.log(2) / 2
    return math.ceil(1.6 / eps * math.log(1 / eps))


def closed_form_upper(n: int, m: int) -> int:
    c = math.log2(n) / m
    return math.ceil(n / c * (6 - 3.2 * math.log2(c)))


@dataclass(frozen=True)
class UpperBound:
    value: int
    k_used: Optional[int]
    source: str
    candidates: dict = field(default_factory=dict)


def entropy_k(n: int, m: int) -> Optional[int]:
    """Smallest ``2 <= k <= m`` with ``n > 2**(m*H2(1/k))``, if any."""
    for k in range(2, m + 1):
        if exceeds_entropy_power(n, m, k):
            return k
    return None


def upper_bound(n: int, m: int) -> UpperBound:
    _check_small_regime(n, m)
    candidates: dict[str, int] = {"trivial": n * m}
    k = entropy_k(n, m)
    if k is not None:
        candidates["entropy"] = k * n
    if n >= 2:
        candidates["closed_form"] = closed_form_upper(n, m)
    exact = exact_value(n, m)
    if exact is not None:
        candidates["exact"] = exact
    order = ["exact", "entropy", "closed_form", "trivial"]
    source = min(candidates, key=lambda s: (candidates[s], order.index(s)))
    return UpperBound(
        candidates[source], k if source == "entropy" else None, source, candidates
    )


UPPER_LABELS = {
    "exact": "exact value",
    "entropy": "small-component entropy count",
    "closed_form": "closed-form entropy bound",
    "trivial": "n*m element slots",
}


def exact_value(n: int, m: int) -> Optional[int]:
    if n < 1 or m < 1:
        raise DomainError("n and m must be >= 1")
    if n == 2:
        return m + 1
    rng = near_boundary_range(m)
    if rng and rng[0] <= n <= rng[1]:
        return 2 * n + (boundary(m) - n) // 2
    if n >= boundary(m):
        return n + boundary(m)
    if n == 1:
        return m
    return None


def exact_source(n: int, m: int) -> Optional[str]:
    if n == 2:
        return "n=2: m singletons plus [m]"
    rng = near_boundary_range(m)
    if rng and rng[0] <= n <= rng[1]:
        return "near-boundary formula 2n + floor((2^(m-1)-1-n)/2)"
    if n >= boundary(m):
        return "at/above boundary: all complement pairs plus copies of [m]"
    if n == 1:
        return "derived: n=1 forces one class of singletons"
    return None


def regime(n: int, m: int) -> str:
    if n == 2:
        return N_EQUALS_2
    rng = near_boundary_range(m)
    if rng and rng[0] <= n <= rng[1]:
        return THEOREM29
    if n >= boundary(m):
        return AT_OR_ABOVE_BOUNDARY
    return SMALL


@dataclass(frozen=True)
class BoundsReport:
    n: int
    m: int
    lower: int
    lower_analytic: Optional[float]
    upper: int
    exact: Optional[int]
    regime: str
    sources: list[str]

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "lower": self.lower,
            "lower_analytic": self.lower_analytic,
            "upper": self.upper,
            "exact": self.exact,
            "regime": self.regime,
            "sources": list(self.sources),
        }


def bounds_report(n: int, m: int) -> BoundsReport:
    if n < 1 or m < 1:
        raise DomainError("n and m must be >= 1")
    sources: list[str] = []
    exact = exact_value(n, m)
    built = best_construction_size(n, m)
    lower = built
    sources.append(f"lower {built}: largest explicit construction")
    analytic = None
    in_small = m >= 2 and n <= boundary(m)
    if in_small:
        lb = lower_bound(n, m)
        analytic = lb.analytic
        if lb.constructive > lower:
            lower = lb.constructive
        tag = "log-ratio central construction" if lb.from_log_ratio else "pair construction"
        sources.append(f"lower {lb.constructive}: {tag} (k={lb.k_used})")
        ub = upper_bound(n, m)
        upper = ub.value
        label = UPPER_LABELS[ub.source] + (f" (k={ub.k_used})" if ub.k_used else "")
        sources.append(f"upper {ub.value}: {label}")
    else:
        # n >= 2^(m-1): the shift value is exact
        upper = exact if exact is not None else n * m
    if exact is not None:
        sources.append(f"exact {exact}: {exact_source(n, m)}")
    if not lower <= upper:
        raise ArithmeticError(f"lower {lower} exceeds upper {upper} at n={n}, m={m}")
    if exact is not None and not lower <= exact <= upper:
        raise ArithmeticError(f"exact {exact} outside [{lower}, {upper}] at n={n}, m={m}")
    return BoundsReport(n, m, lower, analytic, upper, exact, regime(n, m), sources)
