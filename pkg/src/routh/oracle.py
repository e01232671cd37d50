"""Coordinate-level ground truth for the Routh volumes.

Points are barycentric coordinate tuples with respect to the reference
simplex ``A^0_1 ... A^0_n``. Volume ratios are affine invariants, so the
volume of any simplex relative to the reference one is just the absolute
determinant of its coordinate rows and no metric is ever needed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .core import CycleRatios, RegimeError, cyclic_blocks, _normalize_subset

BarycentricPoint = tuple[Fraction, ...]


class DegenerateSystemError(ArithmeticError):
    """A linear system that should have a unique solution does not."""


class GeometryInvariantError(RuntimeError):
    """A construction contradicted a property that must hold for positive ratios."""


# -- exact linear algebra ---------------------------------------------------

def _eliminate(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int], int]:
    """Reduced row echelon form in place. Returns (rows, pivot columns, swaps)."""
    pivots = []
    swaps = 0
    r = 0
    for c in range(ncols):
        pivot = next((k for k in range(r, len(rows)) if rows[k][c] != 0), None)
        if pivot is None:
            continue
        if pivot != r:
            rows[r], rows[pivot] = rows[pivot], rows[r]
            swaps += 1
        lead = rows[r][c]
        rows[r] = [v / lead for v in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c] != 0:
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots, swaps


def solve_exact(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Unique solution of a (possibly overdetermined) consistent system."""
    ncols = len(matrix[0])
    rows = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    rows, pivots, _ = _eliminate(rows, ncols)
    if len(pivots) < ncols:
        raise DegenerateSystemError("system is singular")
    for row in rows[ncols:]:
        if row[-1] != 0:
            raise DegenerateSystemError("system is inconsistent")
    return [rows[k][-1] for k in range(ncols)]


def determinant(matrix: Sequence[Sequence]) -> Fraction:
    n = len(matrix)
    rows = [[Fraction(v) for v in row] for row in matrix]
    det = Fraction(1)
    for c in range(n):
        pivot = next((k for k in range(c, n) if rows[k][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        lead = rows[c][c]
        det *= lead
        for k in range(c + 1, n):
            if rows[k][c] != 0:
                f = rows[k][c] / lead
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[c])]
    return det


# -- points and hyperplanes -------------------------------------------------

def vertex(n: int, i: int) -> BarycentricPoint:
    i = (i - 1) % n
    return tuple(Fraction(int(k == i)) for k in range(n))


def is_barycentric(p: Sequence[Fraction]) -> bool:
    return sum(p) == 1


def edge_point(x: CycleRatios, i: int) -> BarycentricPoint:
    """``A^1_i`` splitting edge ``A^0_i A^0_{i+1}`` in the ratio ``x_i : 1``."""
    n = x.n
    xi = x.at(i)
    coords = [Fraction(0)] * n
    coords[(i - 1) % n] = 1 / (1 + xi)
    coords[i % n] = xi / (1 + xi)
    return tuple(coords)


@dataclass(frozen=True)
class HyperplaneFunctional:
    """Linear functional ``b -> sum c_k b_k`` on barycentric coordinates.

    The hyperplane is its zero set. Instances built by :func:`sigma` keep the
    orientation that makes the retained corner positive; ``canonical()``
    gives the scale-free normal form (first nonzero coefficient 1).
    """

    coeffs: tuple[Fraction, ...]

    def __call__(self, point: Sequence[Fraction]) -> Fraction:
        return sum((c * b for c, b in zip(self.coeffs, point)), Fraction(0))

    def canonical(self) -> "HyperplaneFunctional":
        lead = next(c for c in self.coeffs if c != 0)
        return HyperplaneFunctional(tuple(c / lead for c in self.coeffs))


def sigma(x: CycleRatios, i: int) -> HyperplaneFunctional:
    """Cutting hyperplane through ``A^1_i`` and every vertex except ``A^0_i, A^0_{i+1}``.

    Closed form ``x_i b_i - b_{i+1}``, re-checked against its defining points.
    """
    n = x.n
    coeffs = [Fraction(0)] * n
    coeffs[(i - 1) % n] = x.at(i)
    coeffs[i % n] = Fraction(-1)
    f = HyperplaneFunctional(tuple(coeffs))
    on_plane = [edge_point(x, i)] + [
        vertex(n, m) for m in range(1, n + 1) if (m - i) % n not in (0, 1)
    ]
    if any(f(p) != 0 for p in on_plane) or f(vertex(n, i)) <= 0:
        raise GeometryInvariantError(f"sigma_{i} does not pass through its defining points")
    return f


# -- the chain A^j_i ----------------------------------------------------------

def _affine(a: BarycentricPoint, b: BarycentricPoint, s: Fraction) -> BarycentricPoint:
    return tuple(p + s * (q - p) for p, q in zip(a, b))


def line_intersection(p0, p1, q0, q1) -> tuple[BarycentricPoint, Fraction]:
    """Meet of lines ``p0 p1`` and ``q0 q1``; also returns ``s`` with point = p0 + s (p1 - p0)."""
    # p0 + s (p1 - p0) = q0 + r (q1 - q0)
    matrix = [[a1 - a0, -(b1 - b0)] for a0, a1, b0, b1 in zip(p0, p1, q0, q1)]
    rhs = [b0 - a0 for a0, b0 in zip(p0, q0)]
    try:
        s, _ = solve_exact(matrix, rhs)
    except DegenerateSystemError as exc:
        raise GeometryInvariantError("chain lines do not meet in a single point") from exc
    return _affine(p0, p1, s), s


@lru_cache(maxsize=None)
def _chain(x: CycleRatios, i: int, j: int) -> tuple[BarycentricPoint, Fraction]:
    n = x.n
    if j == 0:
        return vertex(n, i), Fraction(0)
    if j == 1:
        return edge_point(x, i), x.at(i) / (1 + x.at(i))
    prev_i, _ = _chain(x, i, j - 1)
    prev_next, _ = _chain(x, i % n + 1, j - 1)
    return line_intersection(prev_i, vertex(n, i + j), vertex(n, i), prev_next)


def vertex_chain(x: CycleRatios, i: int, j: int) -> BarycentricPoint:
    """``A^j_i``: the meet of lines ``A^{j-1}_i A^0_{i+j}`` and ``A^{j-1}_{i+1} A^0_i``."""
    if not 0 <= j <= x.n - 1:
        raise ValueError(f"j={j} outside 0..{x.n - 1}")
    return _chain(x, (i - 1) % x.n + 1, j)[0]


def chain_fraction(x: CycleRatios, i: int, j: int) -> Fraction:
    """Position of ``A^j_i`` along ``A^{j-1}_i -> A^0_{i+j}`` as a fraction of the segment."""
    if not 1 <= j <= x.n - 1:
        raise ValueError(f"j={j} outside 1..{x.n - 1}")
    return _chain(x, (i - 1) % x.n + 1, j)[1]


def segment_parameter(a: BarycentricPoint, b: BarycentricPoint, p: BarycentricPoint) -> Fraction:
    """``s`` with ``p = a + s (b - a)``; raises if ``p`` is off the line."""
    s = solve_exact([[q - r] for r, q in zip(a, b)], [c - r for r, c in zip(a, p)])[0]
    return s


def split_ratio(a, b, p) -> Fraction:
    """``|a p| / |p b|`` for ``p`` on segment ``a b``."""
    s = segment_parameter(a, b, p)
    return s / (1 - s)


# -- central vertices by solving --------------------------------------------

def solve_vertex(functionals: Iterable[HyperplaneFunctional]) -> BarycentricPoint:
    """The point on all given hyperplanes, normalized to barycentric coordinates."""
    functionals = list(functionals)
    if not functionals:
        raise ValueError("need at least one functional")
    n = len(functionals[0].coeffs)
    matrix = [list(f.coeffs) for f in functionals] + [[Fraction(1)] * n]
    rhs = [Fraction(0)] * len(functionals) + [Fraction(1)]
    if len(matrix) != n:
        raise ValueError(f"need exactly {n - 1} functionals for n={n}")
    return tuple(solve_exact(matrix, rhs))


def central_vertex_planes(x: CycleRatios, i: int) -> list[int]:
    """Indices of the hyperplanes through ``A^{n-1}_i``: all but ``sigma_{i-1}``.

    ``A^j_i`` lies on ``sigma_i, ..., sigma_{i+j-1}``: the line it is taken on
    joins ``A^{j-1}_i`` (on the first ``j-1`` of them) with ``A^0_{i+j}``
    (on the same ones), and the point itself is on ``sigma_{i+j-1}``.
    """
    n = x.n
    return [(i - 1 + m) % n + 1 for m in range(n - 1)]


def cevian_simplex_vertices(x: CycleRatios) -> list[BarycentricPoint]:
    """``A^{n-1}_1 ... A^{n-1}_n``, each built twice and cross-checked."""
    points = []
    for i in range(1, x.n + 1):
        chained = vertex_chain(x, i, x.n - 1)
        solved = solve_vertex(sigma(x, m) for m in central_vertex_planes(x, i))
        if chained != solved:
            raise GeometryInvariantError(f"two constructions of A^{x.n - 1}_{i} disagree")
        points.append(chained)
    return points


def volume_ratio(points: Sequence[Sequence[Fraction]]) -> Fraction:
    """Volume of the simplex with these barycentric rows over the reference volume."""
    return abs(determinant(points))


def cevian_simplex_volume(x: CycleRatios) -> Fraction:
    """Volume of the simplex cut out by the n hyperplanes, any product regime."""
    return volume_ratio(cevian_simplex_vertices(x))


def oracle_central_volume(x: CycleRatios) -> Fraction:
    if x.product <= 1:
        raise RegimeError("the intersection of the corner cuts is a simplex only for prod(x) > 1")
    return cevian_simplex_volume(x)


def subset_vertices(x: CycleRatios, subset: Iterable[int]) -> list[BarycentricPoint]:
    """Vertices of the intersection of ``T_i`` over ``subset``.

    Slot ``m`` holds ``A^0_m`` unless ``m - 1`` is in a block starting at
    ``k``, in which case it holds ``A^{m-k}_k``.
    """
    n = x.n
    members = _normalize_subset(n, subset)
    slots = [vertex(n, m) for m in range(1, n + 1)]
    for block in cyclic_blocks(n, members):
        for s in range(1, block.length + 1):
            slot = (block.start - 1 + s) % n
            slots[slot] = vertex_chain(x, block.start, s)
    return slots


def oracle_subset_volume(x: CycleRatios, subset: Iterable[int]) -> Fraction:
    return volume_ratio(subset_vertices(x, subset))


def oracle_first_kind_volume(x: CycleRatios) -> Fraction:
    return volume_ratio([edge_point(x, i) for i in range(1, x.n + 1)])
