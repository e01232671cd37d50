"""Routh-type volume formulas for an (n-1)-simplex cut along the cycle 1..n.

Indices are 1-based and cyclic: ``x.at(n + 1) == x.at(1)``. Edge ``i`` joins
vertices ``i`` and ``i + 1`` and carries the division ratio ``x_i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb, lcm, prod
from typing import Iterable, NamedTuple

from .exactnum import as_rational, render

CLOSED_FORM = "closed_form"
INCLUSION_EXCLUSION = "inclusion_exclusion"
ORACLE = "oracle"
FIRST_KIND = "first_kind"


class RegimeError(ValueError):
    """The product of the ratios is on the wrong side of 1 for this formula."""


@dataclass(frozen=True)
class CycleRatios:
    """Positive edge-division ratios ``x_1..x_n`` around the vertex cycle."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(as_rational(v) for v in self.values)
        if len(values) < 3:
            raise ValueError(f"need at least 3 ratios, got {len(values)}")
        for i, v in enumerate(values, 1):
            if v <= 0:
                raise ValueError(f"x_{i} = {render(v)} is not positive")
        object.__setattr__(self, "values", values)

    @classmethod
    def of(cls, values: Iterable) -> "CycleRatios":
        return cls(tuple(values))

    @classmethod
    def equal(cls, n: int, k) -> "CycleRatios":
        return cls((as_rational(k),) * n)

    @property
    def n(self) -> int:
        return len(self.values)

    def at(self, i: int) -> Fraction:
        return self.values[(i - 1) % len(self.values)]

    @cached_property
    def product(self) -> Fraction:
        return prod(self.values, start=Fraction(1))

    @property
    def regime(self) -> str:
        p = self.product
        return "gt1" if p > 1 else ("eq1" if p == 1 else "lt1")

    def prefix_products(self, start: int, count: int) -> list[Fraction]:
        """``[x_s, x_s x_{s+1}, ..., x_s ... x_{s+count-1}]``."""
        out = []
        acc = Fraction(1)
        for b in range(count):
            acc *= self.at(start + b)
            out.append(acc)
        return out

    def rotated(self, shift: int) -> "CycleRatios":
        s = shift % self.n
        return CycleRatios(self.values[s:] + self.values[:s])

    def reversed_reciprocal(self) -> "CycleRatios":
        """Ratios seen when the cycle is walked as ``1, n, n-1, ..., 2``.

        The new edge ``m`` is old edge ``n + 1 - m`` traversed backwards, so
        its ratio is ``1 / x_{n+1-m}``. The product goes to its reciprocal.
        """
        return CycleRatios(tuple(1 / v for v in reversed(self.values)))

    def as_strings(self) -> list[str]:
        return [render(v) for v in self.values]


class Block(NamedTuple):
    """The cyclic run ``{start, start+1, ..., start+length-1}``."""

    start: int
    length: int

    def indices(self, n: int) -> list[int]:
        return [(self.start - 1 + s) % n + 1 for s in range(self.length)]


def _check_j(x: CycleRatios, j: int, lo: int):
    if not lo <= j <= x.n - 1:
        raise ValueError(f"j={j} outside {lo}..{x.n - 1}")


def ratio_v(x: CycleRatios, i: int, j: int) -> Fraction:
    """``x_i + x_i x_{i+1} + ... + x_i ... x_{i+j-1}``.

    Geometrically this is ``|A^0_i A^j_i| / |A^j_i A^{j-1}_{i+1}|``, the split
    of segment ``A^0_i A^{j-1}_{i+1}`` by the chain point ``A^j_i``.
    """
    _check_j(x, j, 2)
    return sum(x.prefix_products(i, j), Fraction(0))


def ratio_u(x: CycleRatios, i: int, j: int) -> Fraction:
    """``x_{i+1}...x_{i+j} / (1 + x_{i+1} + ... + x_{i+1}...x_{i+j-1})``.

    The split ``|A^{j-1}_{i+1} A^j_{i+1}| / |A^j_{i+1} A^0_{i+j+1}|``.
    """
    _check_j(x, j, 2)
    pp = x.prefix_products(i + 1, j)
    return pp[-1] / (1 + sum(pp[:-1]))


def ratio_t(x: CycleRatios, i: int, j: int) -> Fraction:
    """Fraction of segment ``A^{j-1}_i A^0_{i+j}`` cut off at ``A^j_i``."""
    _check_j(x, j, 1)
    pp = x.prefix_products(i, j)
    return pp[-1] / (1 + sum(pp))


def _normalize_subset(n: int, subset: Iterable[int]) -> frozenset[int]:
    members = frozenset(subset)
    bad = [i for i in members if not 1 <= i <= n]
    if bad:
        raise ValueError(f"indices {sorted(bad)} outside 1..{n}")
    if not members:
        raise ValueError("subset must be nonempty")
    if len(members) == n:
        raise ValueError("subset must be proper")
    return members


def mask_to_subset(n: int, mask: int) -> list[int]:
    return [i + 1 for i in range(n) if mask >> i & 1]


def cyclic_blocks(n: int, subset: Iterable[int]) -> tuple[Block, ...]:
    """Maximal cyclic runs of a proper nonempty subset of ``1..n``.

    A run passing through ``n`` into ``1`` is keyed by its true start, so
    ``{6, 1, 2}`` in ``n = 6`` is ``Block(6, 3)``. Blocks come back sorted
    by start.
    """
    members = _normalize_subset(n, subset)
    blocks = []
    for k in sorted(members):
        prev = n if k == 1 else k - 1
        if prev in members:
            continue
        length = 1
        while (k - 1 + length) % n + 1 in members:
            length += 1
        blocks.append(Block(k, length))
    return tuple(blocks)


def block_value(x: CycleRatios, block: Block) -> Fraction:
    """Volume of the intersection of the corner cuts ``T_i`` over one block."""
    k, length = block
    if not 1 <= length <= x.n - 1:
        raise ValueError(f"block length {length} outside 1..{x.n - 1}")
    pp = x.prefix_products(k, length)
    value = Fraction(1)
    running = Fraction(1)
    for p in pp:
        running += p
        value *= p / running
    return value


def subset_volume(x: CycleRatios, subset: Iterable[int]) -> Fraction:
    return prod((block_value(x, b) for b in cyclic_blocks(x.n, subset)), start=Fraction(1))


class BlockTable:
    """All ``n (n - 1)`` block values of one ratio vector, scaled to integers.

    ``weight(k, L)`` and ``spare(k)`` are integers with
    ``block_value(k, L) == weight(k, L) / spare(k)``; the product of all
    spares is a common denominator for every subset volume.
    """

    def __init__(self, x: CycleRatios):
        self.x = x
        n = x.n
        self.values = {}
        for k in range(1, n + 1):
            running = Fraction(1)
            value = Fraction(1)
            for length, p in enumerate(x.prefix_products(k, n - 1), 1):
                running += p
                value *= p / running
                self.values[k, length] = value
        self.spare = [0] * (n + 1)
        for k in range(1, n + 1):
            self.spare[k] = lcm(*(self.values[k, L].denominator for L in range(1, n)))
        self.weight = {
            key: v.numerator * (self.spare[key[0]] // v.denominator)
            for key, v in self.values.items()
        }
        self.denominator = prod(self.spare[1:])

    def run_weight(self, start: int, length: int) -> int:
        """Integer weight of a whole block, spares of its inner members included."""
        n = self.x.n
        w = self.weight[start, length]
        for s in range(1, length):
            w *= self.spare[(start - 1 + s) % n + 1]
        return w


def inclusion_exclusion_sum(x: CycleRatios) -> Fraction:
    """``1 + sum over proper nonempty I of (-1)^|I| prod_B V(B)``.

    Subsets are walked grouped by their smallest missing index ``z``: indices
    ``1..z-1`` are forced in, ``z`` is out, and ``z+1..n`` vary freely. Read
    in the order ``z+1, ..., n, 1, ..., z-1`` no block wraps past ``z``, so
    blocks close as the walk proceeds and each subset costs one multiply per
    block on precomputed integer weights. The signed sum is divided by the
    common denominator once at the end.

    The sum equals ``(1 - prod x)^(n-1) / prod_k D_k``; see
    :func:`inclusion_exclusion_volume` for the volume.
    """
    n = x.n
    if n < 4:
        raise ValueError("inclusion-exclusion form needs n >= 4")
    table = BlockTable(x)
    run_weight = {(k, L): table.run_weight(k, L) for k in range(1, n + 1) for L in range(1, n)}
    spare = table.spare
    total = 0

    for z in range(1, n + 1):
        free = list(range(z + 1, n + 1))
        tail = z - 1
        closing = spare[z]

        # explicit stack: (position in free, open block start or 0, open length, acc, parity)
        stack = [(0, 0, 0, 1, tail & 1)]
        while stack:
            pos, start, length, acc, parity = stack.pop()
            if pos == len(free):
                if tail:
                    if start:
                        length += tail
                    else:
                        start, length = 1, tail
                if start:
                    acc *= run_weight[start, length]
                acc *= closing
                total += -acc if parity else acc
                continue
            p = free[pos]
            # p in I
            if start:
                stack.append((pos + 1, start, length + 1, acc, parity ^ 1))
            else:
                stack.append((pos + 1, p, 1, acc, parity ^ 1))
            # p not in I
            out = acc * spare[p]
            if start:
                out *= run_weight[start, length]
            stack.append((pos + 1, 0, 0, out, parity))

    return Fraction(total, table.denominator)


def inclusion_exclusion_volume(x: CycleRatios) -> Fraction:
    """Central volume from the corner-cut intersection volumes.

    The cuts ``T_i`` cover the simplex, so the alternating sum over *all*
    subsets vanishes and the full intersection is ``(-1)^(n+1)`` times the
    sum over proper subsets. For odd ``n`` that is the sum itself.
    Requires ``prod(x) >= 1``.
    """
    if x.product < 1:
        raise RegimeError("inclusion-exclusion volume needs prod(x) >= 1; use central_volume")
    total = inclusion_exclusion_sum(x)
    return total if x.n % 2 else -total


def naive_inclusion_exclusion(x: CycleRatios) -> Fraction:
    """Same sum as :func:`inclusion_exclusion_sum`, one bitmask at a time."""
    n = x.n
    total = Fraction(1)
    for mask in range(1, (1 << n) - 1):
        subset = mask_to_subset(n, mask)
        term = subset_volume(x, subset)
        total += -term if len(subset) % 2 else term
    return total


def inclusion_exclusion_term_count(n: int) -> dict[int, int]:
    """Number of LHS terms of each subset size (size 0 is the leading 1)."""
    return {s: comb(n, s) for s in range(n)}


def _denominators(x: CycleRatios) -> list[Fraction]:
    # 1 + x_k + x_k x_{k+1} + ... + x_k ... x_{k+n-2}
    return [1 + sum(x.prefix_products(k, x.n - 1)) for k in range(1, x.n + 1)]


def signed_closed_form(x: CycleRatios) -> Fraction:
    """``(prod x - 1)^(n-1) / prod_k D_k`` without the regime guard."""
    return (x.product - 1) ** (x.n - 1) / prod(_denominators(x), start=Fraction(1))


def closed_form_volume(x: CycleRatios) -> Fraction:
    if x.product < 1:
        raise RegimeError("closed form needs prod(x) >= 1; use central_volume")
    return signed_closed_form(x)


@dataclass(frozen=True)
class VolumeReport:
    value: Fraction
    method: str
    x: CycleRatios
    product_regime: str

    @property
    def n(self) -> int:
        return self.x.n

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "n": self.n,
            "product_regime": self.product_regime,
            "value": render(self.value),
            "x": self.x.as_strings(),
        }


def central_volume(x: CycleRatios, method: str = CLOSED_FORM) -> VolumeReport:
    """Volume of the simplex bounded by the n cutting hyperplanes.

    For ``prod(x) < 1`` the cycle is reversed, which replaces ``x`` by its
    reversed reciprocals and moves the product above 1.
    """
    regime = x.regime
    work = x.reversed_reciprocal() if regime == "lt1" else x
    if method == CLOSED_FORM:
        value = closed_form_volume(work)
    elif method == INCLUSION_EXCLUSION:
        value = inclusion_exclusion_volume(work)
    elif method == ORACLE:
        from .oracle import cevian_simplex_volume

        value = cevian_simplex_volume(work)
    else:
        raise ValueError(f"unknown method {method!r}")
    return VolumeReport(value, method, x, regime)


def first_kind_volume(x: CycleRatios) -> Fraction:
    """Volume of the simplex spanned by the n edge points."""
    signed = 1 - (-1) ** x.n * x.product
    return abs(signed) / prod((1 + v for v in x.values), start=Fraction(1))


def equal_ratio_volume(n: int, k, kind: str = "central") -> Fraction:
    """Closed forms for ``x_1 = ... = x_n = k``.

    central: ``|k - 1|^n / |k^n - 1|`` (0 at ``k = 1``);
    first_kind: ``|k^n - (-1)^n| / (k + 1)^n``.
    """
    k = as_rational(k)
    if n < 3:
        raise ValueError("n must be at least 3")
    if k <= 0:
        raise ValueError("k must be positive")
    if kind == "central":
        if k == 1:
            return Fraction(0)
        return abs(k - 1) ** n / abs(k**n - 1)
    if kind == "first_kind":
        return abs(k**n - (-1) ** n) / (k + 1) ** n
    raise ValueError(f"unknown kind {kind!r}")


__all__ = [
    "Block",
    "BlockTable",
    "CycleRatios",
    "RegimeError",
    "VolumeReport",
    "block_value",
    "central_volume",
    "closed_form_volume",
    "cyclic_blocks",
    "equal_ratio_volume",
    "first_kind_volume",
    "inclusion_exclusion_sum",
    "inclusion_exclusion_volume",
    "naive_inclusion_exclusion",
    "ratio_t",
    "ratio_u",
    "ratio_v",
    "signed_closed_form",
    "subset_volume",
]

