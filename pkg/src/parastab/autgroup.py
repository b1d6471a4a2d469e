"""Numerical classification of moduli automorphisms and isomorphisms.

Candidate transformations are cut out by an exact degree equation, reduced
to canonical class representatives (at rank 2 every dualizing candidate
folds onto a non-dualizing one), and then filtered by the chamber
fingerprint.  Each surviving class lifts to a torsion group of line bundle
twists of size r^(2g), so group orders come out as exact integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .chamber import chamber_invariant
from .errors import DomainError
from .transform_group import (
    NumTransform,
    apply_to_degree,
    apply_to_weights,
    reduce_dual_rank2,
)
from .weights_core import (
    GenericityResult,
    WeightSystem,
    genus_bounds,
    is_degree_generic,
    is_generic,
    normalize,
)

# below this genus the torsion lifts of distinct classes may coincide
LIFT_FAITHFUL_MIN_GENUS = 4


@dataclass(frozen=True)
class CurveData:
    """Marked-curve context: genus, point labels, and symmetry classes.

    ``symmetries`` lists (perm, multiplicity) pairs; perm[i] is the image
    position of point i and multiplicity counts curve symmetries inducing
    that relabeling.  The identity is always included.
    """

    genus: int
    points: tuple[str, ...]
    symmetries: tuple[tuple[tuple[int, ...], int], ...] = ()

    def __post_init__(self) -> None:
        if self.genus < 0:
            raise DomainError("genus must be nonnegative")
        n = len(self.points)
        if n < 1:
            raise DomainError("at least one marked point is required")
        if len(set(self.points)) != n:
            raise DomainError("point labels must be distinct")
        seen = set()
        for perm, mult in self.symmetries:
            if sorted(perm) != list(range(n)):
                raise DomainError("symmetry perms must permute 0..n-1")
            if mult < 1:
                raise DomainError("symmetry multiplicities must be positive")
            if perm in seen:
                raise DomainError("duplicate symmetry perm")
            seen.add(perm)
        identity = tuple(range(n))
        if identity not in seen:
            object.__setattr__(
                self, "symmetries", ((identity, 1),) + tuple(self.symmetries)
            )

    @property
    def npoints(self) -> int:
        return len(self.points)

    def multiplicity(self, perm: tuple[int, ...]) -> int:
        for p, mult in self.symmetries:
            if p == perm:
                return mult
        raise DomainError("perm is not a symmetry of this curve")

    def order(self) -> int:
        return sum(mult for _, mult in self.symmetries)


def trivial_curve(genus: int, points: Sequence[str]) -> CurveData:
    return CurveData(genus=genus, points=tuple(points))


def candidate_transforms(
    r: int, n: int, d: int, curve: CurveData
) -> tuple[NumTransform, ...]:
    """All degree-preserving class representatives over the curve symmetries.

    The degree equation r*tdeg = (sign - 1)*d + |H| pins the twist degree
    whenever it is solvable.  At rank 2 dualizing candidates are folded onto
    their non-dualizing representatives and deduplicated.
    """
    if r < 2:
        raise DomainError("rank must be at least 2")
    if n != curve.npoints:
        raise DomainError("point count mismatch")
    out: list[NumTransform] = []
    seen = set()
    for perm, _mult in curve.symmetries:
        for sign in (1, -1):
            for hecke in product(range(r), repeat=n):
                numerator = (sign - 1) * d + sum(hecke)
                if numerator % r:
                    continue
                cand = NumTransform(perm, sign, numerator // r, hecke)
                if r == 2 and sign == -1:
                    cand = reduce_dual_rank2(cand, d)
                key = (cand.perm, cand.sign, cand.tdeg, cand.hecke)
                if key not in seen:
                    seen.add(key)
                    out.append(cand)
    return tuple(out)


@dataclass(frozen=True)
class AutResult:
    """Surviving classes and the exact order of the lifted group."""

    r: int
    d: int
    genus: int
    classes: tuple[NumTransform, ...]
    torsion_factor: int
    order: int
    generic: bool
    degree_generic: bool
    chamber_genus: int
    classification_genus: int
    lift_faithful_genus: int = LIFT_FAITHFUL_MIN_GENUS

    @property
    def genus_sufficient(self) -> bool:
        return self.genus >= self.classification_genus


def automorphism_group(
    r: int,
    n: int,
    d: int,
    g: int,
    w: WeightSystem,
    curve: CurveData,
    strict: bool = False,
) -> AutResult:
    """Classes fixing both the determinant degree and the chamber fingerprint.

    With ``strict`` the blanket genericity test must pass; by default the
    result only records the genericity flags, since weight systems sitting
    on degree-irrelevant walls still have a well-defined fingerprint.
    """
    if w.rank != r or w.npoints != n:
        raise DomainError("weight system shape mismatch")
    if curve.npoints != n or curve.genus != g:
        raise DomainError("curve data mismatch")
    blanket: GenericityResult = is_generic(w)
    relative: GenericityResult = is_degree_generic(w, d)
    if strict and not blanket:
        raise DomainError(
            f"weights are not generic: wall witness {blanket.witness}"
        )
    base = normalize(w)
    ref = chamber_invariant(r, base, d).values
    survivors = []
    for cand in candidate_transforms(r, n, d, curve):
        image = apply_to_weights(cand, base)
        if chamber_invariant(r, image, d).values == ref:
            survivors.append(cand)
    torsion = r ** (2 * g)
    order = torsion * sum(curve.multiplicity(c.perm) for c in survivors)
    bounds = genus_bounds(base)
    chamber_genus = bounds.chamber
    return AutResult(
        r=r,
        d=d,
        genus=g,
        classes=tuple(survivors),
        torsion_factor=torsion,
        order=order,
        generic=bool(blanket),
        degree_generic=bool(relative),
        chamber_genus=chamber_genus,
        classification_genus=max(chamber_genus, 6),
    )


def iso_transforms(
    r: int,
    n: int,
    d1: int,
    w1: WeightSystem,
    d2: int,
    w2: WeightSystem,
    curve_iso: Sequence[tuple[int, ...]] = (),
    strict: bool = False,
) -> tuple[NumTransform, ...]:
    """Classes carrying the first space onto the second.

    ``curve_iso`` lists the point relabelings induced by curve isomorphisms;
    the identity is always considered.  The degree equation here reads
    r*tdeg = sign*d2 - d1 + |H|.
    """
    if w1.rank != r or w2.rank != r or w1.npoints != n or w2.npoints != n:
        raise DomainError("weight system shape mismatch")
    if strict:
        for label, ws in (("first", w1), ("second", w2)):
            res = is_generic(ws)
            if not res:
                raise DomainError(
                    f"{label} weights are not generic: wall witness {res.witness}"
                )
    perms = [tuple(range(n))]
    for perm in curve_iso:
        p = tuple(perm)
        if sorted(p) != list(range(n)):
            raise DomainError("curve isomorphism perms must permute 0..n-1")
        if p not in perms:
            perms.append(p)
    base1 = normalize(w1)
    base2 = normalize(w2)
    ref2 = chamber_invariant(r, base2, d2).values
    out = []
    seen = set()
    for perm in perms:
        for sign in (1, -1):
            for hecke in product(range(r), repeat=n):
                numerator = sign * d2 - d1 + sum(hecke)
                if numerator % r:
                    continue
                cand = NumTransform(perm, sign, numerator // r, hecke)
                if r == 2 and sign == -1:
                    cand = reduce_dual_rank2(cand, d1)
                key = (cand.perm, cand.sign, cand.tdeg, cand.hecke)
                if key in seen:
                    continue
                seen.add(key)
                if apply_to_degree(cand, d1, r) != d2:
                    continue
                image = apply_to_weights(cand, base1)
                if chamber_invariant(r, image, d2).values == ref2:
                    out.append(cand)
    return tuple(out)


@dataclass(frozen=True)
class OrdersResult:
    aut: int
    threebir: int
    ratio: int


def concentrated_orders(g: int, r: int, n_points: int, aut_order: int) -> OrdersResult:
    """Exact orders of the regular and birational symmetry groups.

    For concentrated generic weights with degree coprime to the rank, the
    automorphism group has order r^(2g) * aut_order, where aut_order counts
    the symmetries of the marked curve.  The birational group adds the
    Hecke classes with trivial total shift (r^(n-1) of them) and, above
    rank 2, the dual.
    """
    if g < 0 or r < 2 or n_points < 1 or aut_order < 1:
        raise DomainError("requires g >= 0, r >= 2, n_points >= 1, aut_order >= 1")
    aut = r ** (2 * g) * aut_order
    if r == 2:
        ratio = 2 ** (n_points - 1)
    else:
        ratio = 2 * r ** (n_points - 1)
    return OrdersResult(aut=aut, threebir=aut * ratio, ratio=ratio)
