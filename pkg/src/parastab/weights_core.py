"""Exact invariants of full-flag weight data on marked curves.

Every quantity is computed with ``fractions.Fraction``; nothing here rounds
or approximates.  A weight system assigns to each marked point a strictly
increasing tuple of r rationals in [0, 1).  A parabolic type is a 0/1
incidence pattern with one row per point and a constant row sum, recording
which weight steps a subobject inherits.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterator, Optional, Sequence, Union

from .errors import DomainError

Rational = Union[int, Fraction]


def _frac(value: Rational) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise DomainError(f"expected a rational, got {value!r}")


@dataclass(frozen=True)
class WeightSystem:
    """Full-flag weights: one strictly increasing r-tuple in [0, 1) per point."""

    rank: int
    points: tuple[str, ...]
    weights: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if self.rank < 1:
            raise DomainError("rank must be at least 1")
        if not self.points:
            raise DomainError("a weight system needs at least one point")
        if len(set(self.points)) != len(self.points):
            raise DomainError("point labels must be distinct")
        if len(self.weights) != len(self.points):
            raise DomainError("one weight tuple is required per point")
        for label, tup in zip(self.points, self.weights):
            if len(tup) != self.rank:
                raise DomainError(f"point {label}: expected {self.rank} weights")
            for a, b in zip(tup, tup[1:]):
                if not a < b:
                    raise DomainError(f"point {label}: weights must strictly increase")
            if tup[0] < 0 or tup[-1] >= 1:
                raise DomainError(f"point {label}: weights must lie in [0, 1)")

    @property
    def npoints(self) -> int:
        return len(self.points)

    def total(self) -> Fraction:
        """Sum of all weights over all points."""
        return sum((a for tup in self.weights for a in tup), Fraction(0))

    def point_index(self, label: str) -> int:
        try:
            return self.points.index(label)
        except ValueError:
            raise DomainError(f"unknown point label {label!r}") from None


def weight_system(
    weights: Sequence[Sequence[Rational]],
    points: Optional[Sequence[str]] = None,
    rank: Optional[int] = None,
) -> WeightSystem:
    """Build a WeightSystem from raw rationals, defaulting labels to p1, p2, ..."""
    tups = tuple(tuple(_frac(a) for a in tup) for tup in weights)
    if not tups:
        raise DomainError("a weight system needs at least one point")
    r = rank if rank is not None else len(tups[0])
    labels = tuple(points) if points is not None else tuple(f"p{i + 1}" for i in range(len(tups)))
    return WeightSystem(rank=r, points=labels, weights=tups)


@dataclass(frozen=True)
class ParabolicType:
    """0/1 incidence rows, one per point, all with the same row sum.

    Row sums 0 and r are allowed so the full and empty patterns can be fed
    to owt/pdeg/t_number; chamber-level operations restrict to 0 < r' < r.
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.rows:
            raise DomainError("a type needs at least one row")
        width = len(self.rows[0])
        if width < 1:
            raise DomainError("type rows must be nonempty")
        sums = set()
        for row in self.rows:
            if len(row) != width:
                raise DomainError("all type rows must have equal length")
            if any(v not in (0, 1) for v in row):
                raise DomainError("type entries must be 0 or 1")
            sums.add(sum(row))
        if len(sums) != 1:
            raise DomainError("all type rows must have the same sum")

    @property
    def rank(self) -> int:
        return len(self.rows[0])

    @property
    def npoints(self) -> int:
        return len(self.rows)

    @property
    def subrank(self) -> int:
        return sum(self.rows[0])

    def complement(self) -> "ParabolicType":
        return ParabolicType(tuple(tuple(1 - v for v in row) for row in self.rows))

    def reversed_rows(self) -> "ParabolicType":
        """Reverse each row (step i maps to step r - i + 1)."""
        return ParabolicType(tuple(tuple(reversed(row)) for row in self.rows))

    @staticmethod
    def all_ones(r: int, n: int) -> "ParabolicType":
        return ParabolicType(tuple(tuple(1 for _ in range(r)) for _ in range(n)))

    @staticmethod
    def all_zero(r: int, n: int) -> "ParabolicType":
        return ParabolicType(tuple(tuple(0 for _ in range(r)) for _ in range(n)))

    @staticmethod
    def from_indices(r: int, index_sets: Sequence[Sequence[int]]) -> "ParabolicType":
        """Build from 1-based index selections, one set per point."""
        rows = []
        for sel in index_sets:
            chosen = set(sel)
            if not chosen <= set(range(1, r + 1)):
                raise DomainError(f"indices {sorted(chosen)} out of range 1..{r}")
            rows.append(tuple(1 if i in chosen else 0 for i in range(1, r + 1)))
        return ParabolicType(tuple(rows))


def parabolic_type(rows: Sequence[Sequence[int]]) -> ParabolicType:
    return ParabolicType(tuple(tuple(int(v) for v in row) for row in rows))


def _check_shapes(w: WeightSystem, t: ParabolicType) -> None:
    if t.rank != w.rank or t.npoints != w.npoints:
        raise DomainError("type shape does not match the weight system")


def normalize(w: WeightSystem) -> WeightSystem:
    """Translate each point's tuple so its first weight is 0."""
    shifted = tuple(tuple(a - tup[0] for a in tup) for tup in w.weights)
    return WeightSystem(rank=w.rank, points=w.points, weights=shifted)


def owt(w: WeightSystem, t: ParabolicType) -> Fraction:
    """Sum of the weights selected by the incidence pattern."""
    _check_shapes(w, t)
    return sum(
        (a for tup, row in zip(w.weights, t.rows) for a, sel in zip(tup, row) if sel),
        Fraction(0),
    )


def pdeg(d: int, w: WeightSystem) -> Fraction:
    """Degree corrected by the full weight sum."""
    return Fraction(d) + w.total()


def s_min(w: WeightSystem, t: ParabolicType) -> Fraction:
    """Minimal twisting slack of the pattern against its complement."""
    _check_shapes(w, t)
    comp = t.complement()
    r_sub = t.subrank
    r_comp = comp.subrank
    return r_comp * owt(w, t) - r_sub * owt(w, comp)


def t_number(t1: ParabolicType, t2: ParabolicType) -> Fraction:
    """Average count of strictly decreasing incidence pairs between two patterns.

    The first pattern contributes the higher index of each pair.
    """
    if t1.rank != t2.rank or t1.npoints != t2.npoints:
        raise DomainError("patterns must share rank and point count")
    if t1.subrank == 0 or t2.subrank == 0:
        raise DomainError("patterns must have positive row sum")
    r = t1.rank
    pairs = 0
    for row1, row2 in zip(t1.rows, t2.rows):
        for i in range(r):
            if not row1[i]:
                continue
            pairs += sum(row2[j] for j in range(i))
    return Fraction(pairs, t1.subrank * t2.subrank)


@dataclass(frozen=True)
class DimsResult:
    """Moduli dimension summary for one (g, n, r)."""

    fixed_det: int
    nonfixed: int
    w: tuple[int, ...]  # w[k-1] is the k-th summand, k = 1..r
    w_total: int


def _w_summand(g: int, n: int, k: int) -> int:
    # the k = 1 summand degenerates to the genus
    if k == 1:
        return g
    return k * (2 * g - 2) + (k - 1) * n - g + 1


def dims(g: int, n: int, r: int) -> DimsResult:
    """Dimensions of the fixed and non-fixed determinant moduli plus the summand ladder."""
    if g < 2 or n < 1 or r < 2:
        raise DomainError("dims requires g >= 2, n >= 1, r >= 2")
    fixed = (r * r - 1) * (g - 1) + n * (r * r - r) // 2
    nonfixed = fixed + g
    ladder = tuple(_w_summand(g, n, k) for k in range(1, r + 1))
    return DimsResult(fixed_det=fixed, nonfixed=nonfixed, w=ladder, w_total=sum(ladder[1:]))


def dim_nonreduced_stratum(g: int, n: int, r: int, d: int) -> int:
    """Dimension of the d-th non-reduced boundary stratum."""
    if g < 2 or n < 1 or r < 2:
        raise DomainError("requires g >= 2, n >= 1, r >= 2")
    if d < 1 or 2 * d > r:
        raise DomainError("stratum index must satisfy 1 <= d <= r/2")
    if 2 * d == r:
        return sum(_w_summand(g, n, j) for j in range(2, d + 1))
    head = sum(_w_summand(g, n, j) for j in range(1, d + 1))
    tail = sum(_w_summand(g, n, j) for j in range(2, r - 2 * d + 1))
    return head + tail


@dataclass(frozen=True)
class GenericityWitness:
    """A wall hit: subrank, 1-based index picks per point, and the integer level."""

    subrank: int
    pattern: tuple[tuple[int, ...], ...]
    m: int


@dataclass(frozen=True)
class GenericityResult:
    generic: bool
    witness: Optional[GenericityWitness]

    def __bool__(self) -> bool:
        return self.generic


def wall_values(
    w: WeightSystem,
) -> Iterator[tuple[int, tuple[tuple[int, ...], ...], Fraction]]:
    """Yield (subrank, index picks, level value) over every wall family.

    The level value is r' * (sum of all weights) - r * (sum of picked weights);
    integer values mark walls.
    """
    r, n = w.rank, w.npoints
    total = w.total()
    for rp in range(1, r):
        picks = tuple(combinations(range(1, r + 1), rp))
        for combo in product(picks, repeat=n):
            picked = sum(
                (w.weights[x][i - 1] for x in range(n) for i in combo[x]),
                Fraction(0),
            )
            yield rp, combo, rp * total - r * picked


def is_generic(w: WeightSystem) -> GenericityResult:
    """True iff no wall value is an integer, regardless of degree."""
    for rp, combo, value in wall_values(w):
        if value.denominator == 1:
            return GenericityResult(False, GenericityWitness(rp, combo, int(value)))
    return GenericityResult(True, None)


def is_degree_generic(w: WeightSystem, d: int) -> GenericityResult:
    """True iff no wall relevant for degree d is hit.

    A wall at integer level m matters for degree d only when m + r'*d is
    divisible by r, because only then does an integral subobject degree
    realize the equality.
    """
    r = w.rank
    for rp, combo, value in wall_values(w):
        if value.denominator == 1 and (int(value) + rp * d) % r == 0:
            return GenericityResult(False, GenericityWitness(rp, combo, int(value)))
    return GenericityResult(True, None)


def is_concentrated(w: WeightSystem) -> bool:
    """True iff every point's weight spread stays below 4 / (n * r^2)."""
    bound = Fraction(4, w.npoints * w.rank * w.rank)
    return all(tup[-1] - tup[0] < bound for tup in w.weights)


@dataclass(frozen=True)
class GenusBounds:
    """Genus thresholds above which the numerical statements become geometric."""

    chamber: int
    refined: Optional[Fraction]
    lm: Fraction
    codim: Fraction


def genus_bounds(
    w: WeightSystem,
    w2: Optional[WeightSystem] = None,
    t: Optional[ParabolicType] = None,
    l: int = 1,
    m: int = 0,
    k: int = 0,
) -> GenusBounds:
    """Compute the chamber, refined, (l, m, k) and codimension thresholds."""
    if min(l, m, k) < 0 or l < 1:
        raise DomainError("requires l >= 1 and m, k >= 0")
    r, n = w.rank, w.npoints
    if r < 2:
        raise DomainError("rank must be at least 2")
    other = w2 if w2 is not None else w
    if other.rank != r or other.npoints != n:
        raise DomainError("both weight systems must share rank and point count")

    def first_sum_floor(ws: WeightSystem) -> int:
        total = sum((tup[0] for tup in ws.weights), Fraction(0))
        return total.numerator // total.denominator

    chamber = 1 + (r - 1) * n - min(first_sum_floor(w), first_sum_floor(other))

    refined: Optional[Fraction] = None
    if t is not None:
        _check_shapes(w, t)
        if not 0 < t.subrank < r:
            raise DomainError("refined bound needs a proper pattern")
        acc = Fraction(0)
        for tup, row in zip(w.weights, t.rows):
            for a, sel in zip(tup, row):
                acc += (1 - a) * (1 - sel)
        refined = 1 + Fraction(acc.numerator // acc.denominator, t.subrank)

    lm = Fraction(m + l + 1) + Fraction(l + k, r - 1)
    codim = 1 + Fraction(l - 1, r - 1)
    return GenusBounds(chamber=chamber, refined=refined, lm=lm, codim=codim)


def stability_check(
    r: int,
    d: int,
    w: WeightSystem,
    sub: tuple[int, int, ParabolicType],
) -> str:
    """Compare the slope of a candidate subobject with the total slope.

    ``sub`` is (subrank, subdegree, pattern).  Returns "strict" when the
    subobject respects strict stability, "equality" on the semistable
    borderline and "violated" otherwise.
    """
    if r != w.rank:
        raise DomainError("rank mismatch")
    r_sub, d_sub, t = sub
    _check_shapes(w, t)
    if t.subrank != r_sub:
        raise DomainError("pattern row sum must equal the stated subrank")
    if not 0 < r_sub < r:
        raise DomainError("subrank must satisfy 0 < r' < r")
    slope_sub = Fraction(d_sub + owt(w, t), r_sub)
    slope_all = Fraction(pdeg(d, w), r)
    if slope_sub < slope_all:
        return "strict"
    if slope_sub == slope_all:
        return "equality"
    return "violated"
