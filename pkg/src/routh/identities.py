"""Exact checks of the Routh-type rational identities at sample points.

Each checker evaluates both sides exactly and compares with ``==``. The
printed inclusion-exclusion identities (``ie_n4``, ``e2_general``) carry the
numerator ``(prod x - 1)^(n-1)``; the ``*_corrected`` variants use
``(1 - prod x)^(n-1)``, which is what the left side actually equals.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterator

from .core import (
    CycleRatios,
    cyclic_blocks,
    mask_to_subset,
    naive_inclusion_exclusion,
    signed_closed_form,
)
from .exactnum import render

DEFAULT_MAX_N = 10

IE_N4 = "ie_n4"
IE_N4_CORRECTED = "ie_n4_corrected"
E2 = "e2_general"
E2_CORRECTED = "e2_corrected"
FIRST_KIND_N4 = "first_kind_n4"
FIRST_KIND_N5 = "first_kind_n5"
IDENTITY_IDS = (IE_N4, IE_N4_CORRECTED, E2, E2_CORRECTED, FIRST_KIND_N4, FIRST_KIND_N5)


@dataclass(frozen=True)
class IdentityCheckResult:
    identity_id: str
    x: CycleRatios
    lhs: Fraction
    rhs: Fraction

    @property
    def n(self) -> int:
        return self.x.n

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "identity_id": self.identity_id,
            "lhs": render(self.lhs),
            "n": self.n,
            "rhs": render(self.rhs),
            "x": self.x.as_strings(),
        }


def _require_n(x: CycleRatios, n: int):
    if x.n != n:
        raise ValueError(f"identity needs n={n}, got n={x.n}")


def _one_plus(*values: Fraction) -> Fraction:
    return prod((1 + v for v in values), start=Fraction(1))


def ie_n4_terms(x: CycleRatios) -> list[Fraction]:
    """The fifteen left-hand terms of the n = 4 inclusion-exclusion identity."""
    _require_n(x, 4)
    x1, x2, x3, x4 = x.values
    singles = [-v / (1 + v) for v in (x1, x2, x3, x4)]

    def pair(a, b):
        return a * a * b / ((1 + a) * (1 + a + a * b))

    def triple(a, b, c):
        return -(a**3) * b * b * c / ((1 + a) * (1 + a + a * b) * (1 + a + a * b + a * b * c))

    pairs = [
        pair(x1, x2), pair(x2, x3), pair(x3, x4), pair(x4, x1),
        x1 * x3 / _one_plus(x1, x3), x2 * x4 / _one_plus(x2, x4),
    ]
    triples = [triple(x1, x2, x3), triple(x2, x3, x4), triple(x3, x4, x1), triple(x4, x1, x2)]
    return [Fraction(1)] + singles + pairs + triples


def _ie_n4_denominator(x: CycleRatios) -> Fraction:
    x1, x2, x3, x4 = x.values
    return (
        (1 + x1 + x1 * x2 + x1 * x2 * x3)
        * (1 + x2 + x2 * x3 + x2 * x3 * x4)
        * (1 + x3 + x3 * x4 + x3 * x4 * x1)
        * (1 + x4 + x4 * x1 + x4 * x1 * x2)
    )


def check_ie_n4(x: CycleRatios) -> IdentityCheckResult:
    """Printed form: right side ``(x1 x2 x3 x4 - 1)^3 / (four 4-term sums)``."""
    lhs = sum(ie_n4_terms(x), Fraction(0))
    rhs = (x.product - 1) ** 3 / _ie_n4_denominator(x)
    return IdentityCheckResult(IE_N4, x, lhs, rhs)


def check_ie_n4_corrected(x: CycleRatios) -> IdentityCheckResult:
    lhs = sum(ie_n4_terms(x), Fraction(0))
    rhs = (1 - x.product) ** 3 / _ie_n4_denominator(x)
    return IdentityCheckResult(IE_N4_CORRECTED, x, lhs, rhs)


def _check_e2_range(x: CycleRatios, max_n: int):
    if not 4 <= x.n <= max_n:
        raise ValueError(f"n={x.n} outside 4..{max_n}")


def check_e2(x: CycleRatios, max_n: int = DEFAULT_MAX_N) -> IdentityCheckResult:
    """General-n identity as printed, with the left side assembled from blocks."""
    _check_e2_range(x, max_n)
    return IdentityCheckResult(E2, x, naive_inclusion_exclusion(x), signed_closed_form(x))


def check_e2_corrected(x: CycleRatios, max_n: int = DEFAULT_MAX_N) -> IdentityCheckResult:
    _check_e2_range(x, max_n)
    rhs = signed_closed_form(x) * (-1) ** (x.n - 1)
    return IdentityCheckResult(E2_CORRECTED, x, naive_inclusion_exclusion(x), rhs)


def e2_term_structure(n: int) -> Counter:
    """Count left-hand terms by their multiset of block lengths.

    The empty key is the leading 1. For n = 5 this gives five terms in
    each of (1,), (2,), (1, 1), (3,), (1, 2), (4,).
    """
    shapes = Counter({(): 1})
    for mask in range(1, (1 << n) - 1):
        blocks = cyclic_blocks(n, mask_to_subset(n, mask))
        shapes[tuple(sorted(b.length for b in blocks))] += 1
    return shapes


def first_kind_n4_terms(x: CycleRatios) -> list[Fraction]:
    _require_n(x, 4)
    x1, x2, x3, x4 = x.values
    return [
        Fraction(1),
        -x1 / _one_plus(x1, x2, x3),
        -x2 / _one_plus(x2, x3, x4),
        -x3 / _one_plus(x3, x4, x1),
        -x4 / _one_plus(x4, x1, x2),
        -x1 * x3 / _one_plus(x1, x3),
        -x2 * x4 / _one_plus(x2, x4),
    ]


def check_first_kind_n4(x: CycleRatios) -> IdentityCheckResult:
    """Signed: the right side is ``(1 - x1 x2 x3 x4) / prod(1 + x_i)``, no absolute value."""
    lhs = sum(first_kind_n4_terms(x), Fraction(0))
    rhs = (1 - x.product) / _one_plus(*x.values)
    return IdentityCheckResult(FIRST_KIND_N4, x, lhs, rhs)


def first_kind_n5_terms(x: CycleRatios) -> list[Fraction]:
    _require_n(x, 5)
    x1, x2, x3, x4, x5 = x.values
    return [
        Fraction(1),
        -x1 / _one_plus(x1, x3, x4, x5),
        -x2 / _one_plus(x1, x2, x4, x5),
        -x3 / _one_plus(x1, x2, x3, x5),
        -x4 / _one_plus(x1, x2, x3, x4),
        -x5 / _one_plus(x2, x3, x4, x5),
        -x1 * x3 / _one_plus(x1, x3),
        -x1 * x4 / _one_plus(x1, x4),
        -x2 * x4 / _one_plus(x2, x4),
        -x2 * x5 / _one_plus(x2, x5),
        -x3 * x5 / _one_plus(x3, x5),
        x1 * x2 * x4 / _one_plus(x1, x2, x4),
        x1 * x3 * x4 / _one_plus(x1, x3, x4),
        x1 * x3 * x5 / _one_plus(x1, x3, x5),
        x2 * x3 * x5 / _one_plus(x2, x3, x5),
        x2 * x4 * x5 / _one_plus(x2, x4, x5),
    ]


def check_first_kind_n5(x: CycleRatios) -> IdentityCheckResult:
    lhs = sum(first_kind_n5_terms(x), Fraction(0))
    rhs = (1 + x.product) / _one_plus(*x.values)
    return IdentityCheckResult(FIRST_KIND_N5, x, lhs, rhs)


# -- reproducible sampling ----------------------------------------------------

class Lcg:
    """64-bit linear congruential generator (Knuth's MMIX constants).

    ``state <- (6364136223846793005 * state + 1442695040888963407) mod 2**64``;
    each draw returns the top 31 bits, which is easy to reproduce anywhere.
    """

    MULTIPLIER = 6364136223846793005
    INCREMENT = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next(self) -> int:
        self.state = (self.MULTIPLIER * self.state + self.INCREMENT) & self.MASK
        return self.state >> 33

    def below(self, bound: int) -> int:
        return self.next() % bound


def sample_stream(n: int, seed: int, bound: int = 9) -> Iterator[CycleRatios]:
    """Endless deterministic stream of ratio vectors with entries ``p/q``, ``1 <= p, q <= bound``."""
    if n < 3:
        raise ValueError("n must be at least 3")
    if bound < 2:
        raise ValueError("bound must be at least 2")
    rng = Lcg(seed)
    while True:
        yield CycleRatios(tuple(
            Fraction(1 + rng.below(bound), 1 + rng.below(bound)) for _ in range(n)
        ))


def sample_ratios(n: int, seed: int, bound: int = 9) -> CycleRatios:
    return next(sample_stream(n, seed, bound))


def samples(n: int, seed: int, count: int, bound: int = 9, regime: str | None = None) -> list[CycleRatios]:
    """First ``count`` draws, optionally only those in one product regime."""
    out = []
    for x in sample_stream(n, seed, bound):
        if regime is None or x.regime == regime:
            out.append(x)
            if len(out) == count:
                return out
    return out


def rescale_to_unit_product(x: CycleRatios) -> CycleRatios:
    """Divide ``x_n`` by the product so that the product becomes exactly 1."""
    values = list(x.values)
    values[-1] /= x.product
    return CycleRatios(tuple(values))


_CHECKERS = {
    IE_N4: (check_ie_n4, 4),
    IE_N4_CORRECTED: (check_ie_n4_corrected, 4),
    E2: (check_e2, None),
    E2_CORRECTED: (check_e2_corrected, None),
    FIRST_KIND_N4: (check_first_kind_n4, 4),
    FIRST_KIND_N5: (check_first_kind_n5, 5),
}


def fixed_n(identity_id: str) -> int | None:
    return _CHECKERS[identity_id][1]


def run_identity(identity_id: str, n: int, count: int, seed: int, bound: int = 9,
                 max_n: int = DEFAULT_MAX_N) -> list[IdentityCheckResult]:
    if identity_id not in _CHECKERS:
        raise ValueError(f"unknown identity {identity_id!r}")
    checker, required = _CHECKERS[identity_id]
    if required is not None and n != required:
        raise ValueError(f"{identity_id} is stated for n={required}")
    if identity_id in (E2, E2_CORRECTED):
        if not 4 <= n <= max_n:
            raise ValueError(f"n={n} outside 4..{max_n}")
        return [checker(x, max_n) for x in samples(n, seed, count, bound)]
    return [checker(x) for x in samples(n, seed, count, bound)]
