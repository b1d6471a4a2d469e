"""Exact local models: Laurent polynomial matrices and twisted conjugation.

Endomorphisms of a free module over the local ring are encoded as n^2 x n^2
matrices acting on row-major vectorizations.  A sign pattern of z-exponents
(one per index pair) twists conjugation so that the parabolic stalk algebra
maps onto plain matrices; the twisted conjugation matrix of a pair (A, B)
is integral exactly when conjugation preserves that algebra.  All
computations are exact over the rationals; series truncation appears only
in the inverse of a non-monomial determinant and failures are explicit.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Callable, Optional, Sequence, Union

from .errors import DomainError, PrecisionError

Rational = Union[int, Fraction]


class Laurent:
    """Exact Laurent polynomial: a finite map exponent -> nonzero Fraction."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[dict[int, Fraction]] = None) -> None:
        clean: dict[int, Fraction] = {}
        if coeffs:
            for exp, val in coeffs.items():
                frac = Fraction(val)
                if frac:
                    clean[int(exp)] = frac
        self.coeffs = clean

    # -- constructors -------------------------------------------------
    @staticmethod
    def const(value: Rational) -> "Laurent":
        return Laurent({0: Fraction(value)})

    @staticmethod
    def z(exp: int = 1, coeff: Rational = 1) -> "Laurent":
        return Laurent({exp: Fraction(coeff)})

    @staticmethod
    def lift(value: Union["Laurent", Rational]) -> "Laurent":
        if isinstance(value, Laurent):
            return value
        return Laurent.const(value)

    # -- structure ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self) -> Optional[int]:
        return min(self.coeffs) if self.coeffs else None

    def degree(self) -> Optional[int]:
        return max(self.coeffs) if self.coeffs else None

    def coeff(self, exp: int) -> Fraction:
        return self.coeffs.get(exp, Fraction(0))

    def is_constant(self) -> bool:
        return not self.coeffs or set(self.coeffs) == {0}

    def as_fraction(self) -> Fraction:
        if not self.is_constant():
            raise DomainError("not a constant")
        return self.coeff(0)

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def shift(self, exp: int) -> "Laurent":
        return Laurent({e + exp: c for e, c in self.coeffs.items()})

    def truncated(self, bound: int) -> "Laurent":
        """Drop all terms of exponent >= bound."""
        return Laurent({e: c for e, c in self.coeffs.items() if e < bound})

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "Laurent") -> "Laurent":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Laurent(out)

    def __neg__(self) -> "Laurent":
        return Laurent({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other: "Laurent") -> "Laurent":
        out: dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Laurent(out)

    def scale(self, value: Rational) -> "Laurent":
        frac = Fraction(value)
        return Laurent({e: c * frac for e, c in self.coeffs.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Laurent):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Laurent(0)"
        parts = [f"{c}*z^{e}" for e, c in sorted(self.coeffs.items())]
        return "Laurent(" + " + ".join(parts) + ")"


L_ZERO = Laurent()
L_ONE = Laurent.const(1)


def _poly_divmod(num: Laurent, den: Laurent) -> tuple[Laurent, Laurent]:
    """Long division of polynomials (nonnegative exponents only)."""
    if den.is_zero():
        raise DomainError("division by zero")
    rem = dict(num.coeffs)
    quo: dict[int, Fraction] = {}
    ddeg = den.degree()
    dlead = den.coeff(ddeg)
    while rem:
        rdeg = max(rem)
        if rdeg < ddeg:
            break
        factor = rem[rdeg] / dlead
        quo[rdeg - ddeg] = factor
        for e, c in den.coeffs.items():
            key = e + rdeg - ddeg
            val = rem.get(key, Fraction(0)) - factor * c
            if val:
                rem[key] = val
            else:
                rem.pop(key, None)
    return Laurent(quo), Laurent(rem)


def exact_divide(num: Laurent, den: Laurent) -> Optional[Laurent]:
    """Exact quotient in the Laurent ring, or None when it does not exist."""
    if den.is_zero():
        raise DomainError("division by zero")
    if num.is_zero():
        return L_ZERO
    vn, vd = num.valuation(), den.valuation()
    quo, rem = _poly_divmod(num.shift(-vn), den.shift(-vd))
    if not rem.is_zero():
        return None
    return quo.shift(vn - vd)


def _poly_gcd(a: Laurent, b: Laurent) -> Laurent:
    """Monic gcd of two polynomials (nonnegative exponents)."""
    while not b.is_zero():
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if a.is_zero():
        return L_ZERO
    return a.scale(1 / a.coeff(a.degree()))


def laurent_gcd(values: Sequence[Laurent]) -> Laurent:
    """Content of a list: z^(min valuation) times the monic polynomial gcd."""
    nonzero = [v for v in values if not v.is_zero()]
    if not nonzero:
        return L_ZERO
    vmin = min(v.valuation() for v in nonzero)
    acc = L_ZERO
    for v in nonzero:
        shifted = v.shift(-v.valuation())
        acc = _poly_gcd(acc, shifted) if not acc.is_zero() else shifted.scale(
            1 / shifted.coeff(shifted.degree())
        )
        if acc == L_ONE:
            break
    return acc.shift(vmin)


def series_inverse(unit: Laurent, precision: int) -> Laurent:
    """Inverse of a power series with nonzero constant term, modulo z^precision."""
    if precision < 1:
        raise DomainError("precision must be positive")
    c0 = unit.coeff(0)
    if not c0 or (unit.valuation() is not None and unit.valuation() < 0):
        raise DomainError("series inverse needs a unit power series")
    inv = {0: 1 / c0}
    for m in range(1, precision):
        acc = Fraction(0)
        for i in range(1, m + 1):
            ci = unit.coeff(i)
            if ci:
                acc += ci * inv.get(m - i, Fraction(0))
        if acc:
            inv[m] = -acc / c0
    return Laurent(inv)


@dataclass(frozen=True)
class TruncLaurent:
    """A Laurent value known exactly below ``bound`` (None means fully exact)."""

    known: Laurent
    bound: Optional[int]

    @staticmethod
    def exact(value: Laurent) -> "TruncLaurent":
        return TruncLaurent(value, None)

    def _clip(self) -> "TruncLaurent":
        if self.bound is None:
            return self
        return TruncLaurent(self.known.truncated(self.bound), self.bound)

    def _vlow(self) -> Optional[int]:
        """Lower bound for the true valuation; None means the value is exactly 0."""
        cands = []
        if not self.known.is_zero():
            cands.append(self.known.valuation())
        if self.bound is not None:
            cands.append(self.bound)
        return min(cands) if cands else None

    def __add__(self, other: "TruncLaurent") -> "TruncLaurent":
        bound = _min_bound(self.bound, other.bound)
        return TruncLaurent(self.known + other.known, bound)._clip()

    def __mul__(self, other: "TruncLaurent") -> "TruncLaurent":
        bounds = []
        if self.bound is not None:
            v = other._vlow()
            bounds.append(self.bound + v if v is not None else None)
        if other.bound is not None:
            v = self._vlow()
            bounds.append(other.bound + v if v is not None else None)
        bounds = [b for b in bounds if b is not None]
        bound = min(bounds) if bounds else None
        return TruncLaurent(self.known * other.known, bound)._clip()

    def negative_part(self) -> dict[int, Fraction]:
        """Certified coefficients at negative exponents; raises if uncertifiable."""
        if self.bound is not None and self.bound <= 0:
            raise PrecisionError(
                f"cannot certify exponents in [{self.bound}, 0); raise the precision"
            )
        return {e: c for e, c in self.known.coeffs.items() if e < 0}


def _min_bound(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


@dataclass(frozen=True)
class LaurentMatrix:
    """Immutable matrix with exact Laurent entries."""

    rows: tuple[tuple[Laurent, ...], ...]

    def __post_init__(self) -> None:
        if not self.rows or not self.rows[0]:
            raise DomainError("matrix must be nonempty")
        width = len(self.rows[0])
        if any(len(row) != width for row in self.rows):
            raise DomainError("ragged matrix")

    @staticmethod
    def build(entries: Sequence[Sequence[Union[Laurent, Rational]]]) -> "LaurentMatrix":
        return LaurentMatrix(
            tuple(tuple(Laurent.lift(v) for v in row) for row in entries)
        )

    @staticmethod
    def identity(n: int) -> "LaurentMatrix":
        return LaurentMatrix(
            tuple(
                tuple(L_ONE if i == j else L_ZERO for j in range(n))
                for i in range(n)
            )
        )

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def entry(self, i: int, j: int) -> Laurent:
        return self.rows[i][j]

    def transpose(self) -> "LaurentMatrix":
        return LaurentMatrix(tuple(zip(*self.rows)))

    def __add__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        self._match(other)
        return LaurentMatrix(
            tuple(
                tuple(a + b for a, b in zip(r1, r2))
                for r1, r2 in zip(self.rows, other.rows)
            )
        )

    def __sub__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        self._match(other)
        return LaurentMatrix(
            tuple(
                tuple(a - b for a, b in zip(r1, r2))
                for r1, r2 in zip(self.rows, other.rows)
            )
        )

    def _match(self, other: "LaurentMatrix") -> None:
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise DomainError("matrix shape mismatch")

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if self.ncols != other.nrows:
            raise DomainError("matrix shape mismatch")
        cols = other.transpose().rows
        out = []
        for row in self.rows:
            new_row = []
            for col in cols:
                acc = L_ZERO
                for a, b in zip(row, col):
                    if a.coeffs and b.coeffs:
                        acc = acc + a * b
                new_row.append(acc)
            out.append(tuple(new_row))
        return LaurentMatrix(tuple(out))

    def kron(self, other: "LaurentMatrix") -> "LaurentMatrix":
        out = []
        for r1 in self.rows:
            for r2 in other.rows:
                out.append(tuple(a * b for a in r1 for b in r2))
        return LaurentMatrix(tuple(out))

    def power(self, k: int) -> "LaurentMatrix":
        if self.nrows != self.ncols or k < 0:
            raise DomainError("power needs a square matrix and k >= 0")
        acc = LaurentMatrix.identity(self.nrows)
        for _ in range(k):
            acc = acc @ self
        return acc

    def det(self) -> Laurent:
        if self.nrows != self.ncols:
            raise DomainError("determinant needs a square matrix")
        n = self.nrows
        total = L_ZERO
        for perm in permutations(range(n)):
            sign = 1
            seen = list(perm)
            for i in range(n):
                for j in range(i + 1, n):
                    if seen[i] > seen[j]:
                        sign = -sign
            term = L_ONE
            for i in range(n):
                term = term * self.rows[i][perm[i]]
                if term.is_zero():
                    break
            total = total + (term if sign == 1 else -term)
        return total

    def _minor(self, i: int, j: int) -> "LaurentMatrix":
        return LaurentMatrix(
            tuple(
                tuple(v for jj, v in enumerate(row) if jj != j)
                for ii, row in enumerate(self.rows)
                if ii != i
            )
        )

    def adjugate(self) -> "LaurentMatrix":
        if self.nrows != self.ncols:
            raise DomainError("adjugate needs a square matrix")
        n = self.nrows
        if n == 1:
            return LaurentMatrix(((L_ONE,),))
        cof = [
            [
                self._minor(i, j).det().scale((-1) ** (i + j))
                for j in range(n)
            ]
            for i in range(n)
        ]
        return LaurentMatrix(tuple(tuple(cof[j][i] for j in range(n)) for i in range(n)))


def inverse_exact(m: LaurentMatrix) -> LaurentMatrix:
    """Exact inverse; requires the determinant to be a single monomial."""
    det = m.det()
    if det.is_zero():
        raise DomainError("matrix is singular")
    if not det.is_monomial():
        raise DomainError("determinant is not a monomial; use inverse_series")
    exp = det.valuation()
    inv_det = Laurent.z(-exp, 1 / det.coeff(exp))
    adj = m.adjugate()
    return LaurentMatrix(
        tuple(tuple(v * inv_det for v in row) for row in adj.rows)
    )


def inverse_series(m: LaurentMatrix, precision: int) -> list[list[TruncLaurent]]:
    """Inverse with entries known exactly below a tracked exponent bound."""
    det = m.det()
    if det.is_zero():
        raise DomainError("matrix is singular")
    v = det.valuation()
    unit = det.shift(-v)
    inv_unit = TruncLaurent(series_inverse(unit, precision), precision)
    adj = m.adjugate()
    shift = TruncLaurent.exact(Laurent.z(-v))
    return [
        [TruncLaurent.exact(entry) * shift * inv_unit for entry in row]
        for row in adj.rows
    ]


# ---------------------------------------------------------------------------
# index bookkeeping


def tau(n: int, i: int, j: int) -> int:
    """Row-major position of the index pair (i, j), all zero based."""
    return i * n + j


def tau_inv(n: int, p: int) -> tuple[int, int]:
    return divmod(p, n)


def sigma_pair(n: int, p: int, q: int) -> tuple[int, int]:
    """The reshuffling bijection on position pairs.

    Sends (tau(i,k), tau(j,l)) to (tau(i,j), tau(l,k)): it regroups a tensor
    square so that pure conjugation tensors become genuine rank-1 matrices.
    """
    i, k = tau_inv(n, p)
    j, l = tau_inv(n, q)
    return tau(n, i, j), tau(n, l, k)


@dataclass(frozen=True)
class IndexMaps:
    n: int
    tau: Callable[[int, int], int]
    tau_inv: Callable[[int], tuple[int, int]]
    sigma: Callable[[int, int], tuple[int, int]]
    xi: tuple[tuple[int, ...], ...]


def xi_matrix(n: int) -> tuple[tuple[int, ...], ...]:
    """Exponent pattern: entry (tau(i,j), tau(k,l)) equals -[j<i] + [l<k]."""
    if n < 1:
        raise DomainError("n must be positive")
    size = n * n
    out = []
    for p in range(size):
        i, j = tau_inv(n, p)
        row = []
        for q in range(size):
            k, l = tau_inv(n, q)
            row.append(-(1 if j < i else 0) + (1 if l < k else 0))
        out.append(tuple(row))
    return tuple(out)


def index_maps(n: int) -> IndexMaps:
    return IndexMaps(
        n=n,
        tau=lambda i, j: tau(n, i, j),
        tau_inv=lambda p: tau_inv(n, p),
        sigma=lambda p, q: sigma_pair(n, p, q),
        xi=xi_matrix(n),
    )


def sigma_reshuffle(m: LaurentMatrix) -> LaurentMatrix:
    """Apply the position bijection entrywise."""
    size = m.nrows
    n = _isqrt_exact(size)
    if m.ncols != size:
        raise DomainError("expected a square n^2 x n^2 matrix")
    out = [[L_ZERO] * size for _ in range(size)]
    for p in range(size):
        for q in range(size):
            pp, qq = sigma_pair(n, p, q)
            out[pp][qq] = m.rows[p][q]
    return LaurentMatrix(tuple(tuple(row) for row in out))


def _isqrt_exact(size: int) -> int:
    n = int(round(size ** 0.5))
    if n * n != size:
        raise DomainError(f"{size} is not a perfect square")
    return n


# ---------------------------------------------------------------------------
# rank-1 factorization and tensor recognition


def rank1_factor(
    entries: Sequence[Sequence[Union[Laurent, Rational]]],
) -> Optional[tuple[tuple[Laurent, ...], tuple[Laurent, ...]]]:
    """Write M as column * row, or None when the matrix has rank above 1.

    The zero matrix factors as a pair of zero vectors.  Over polynomials the
    row is made primitive (content split off into the column), so the
    factorization is unique up to a unit.
    """
    m = LaurentMatrix.build(entries)
    pivot_row = None
    for i, row in enumerate(m.rows):
        if any(not v.is_zero() for v in row):
            pivot_row = i
            break
    if pivot_row is None:
        return (
            tuple(L_ZERO for _ in range(m.nrows)),
            tuple(L_ZERO for _ in range(m.ncols)),
        )
    content = laurent_gcd(m.rows[pivot_row])
    base = []
    for v in m.rows[pivot_row]:
        quot = exact_divide(v, content) if not v.is_zero() else L_ZERO
        if quot is None:
            return None
        base.append(quot)
    pivot_col = next(j for j, v in enumerate(base) if not v.is_zero())
    col = []
    for i in range(m.nrows):
        quot = exact_divide(m.rows[i][pivot_col], base[pivot_col])
        if quot is None:
            return None
        col.append(quot)
    for i in range(m.nrows):
        for j in range(m.ncols):
            if col[i] * base[j] != m.rows[i][j]:
                return None
    return tuple(col), tuple(base)


def is_pure_tensor(
    m: LaurentMatrix,
) -> Optional[tuple[LaurentMatrix, LaurentMatrix]]:
    """Recognize M as (A tensor B^t) under the position bijection."""
    size = m.nrows
    n = _isqrt_exact(size)
    shuffled = sigma_reshuffle(m)
    factored = rank1_factor(shuffled.rows)
    if factored is None:
        return None
    col, row = factored
    a = LaurentMatrix(
        tuple(tuple(col[tau(n, i, j)] for j in range(n)) for i in range(n))
    )
    b = LaurentMatrix(
        tuple(tuple(row[tau(n, c, d)] for d in range(n)) for c in range(n))
    )
    return a, b


def inner_trace_conditions(m: LaurentMatrix) -> bool:
    """Both diagonal-block sum conditions that cut inner conjugations."""
    size = m.nrows
    n = _isqrt_exact(size)
    for i in range(n):
        for j in range(n):
            want = L_ONE if i == j else L_ZERO
            acc1 = L_ZERO
            acc2 = L_ZERO
            for k in range(n):
                acc1 = acc1 + m.rows[tau(n, i, j)][tau(n, k, k)]
                acc2 = acc2 + m.rows[tau(n, k, k)][tau(n, i, j)]
            if acc1 != want or acc2 != want:
                return False
    return True


def is_inner(m: LaurentMatrix) -> Optional[LaurentMatrix]:
    """Extract A when M is conjugation by A; None otherwise."""
    pair = is_pure_tensor(m)
    if pair is None:
        return None
    a, b = pair
    n = a.nrows
    ident = LaurentMatrix.identity(n)
    if a @ b != ident or b @ a != ident:
        return None
    return a


# ---------------------------------------------------------------------------
# twisted conjugation


def twist(m: LaurentMatrix, direction: int = 1) -> LaurentMatrix:
    """Scale every strictly-below-diagonal entry by z^direction."""
    return LaurentMatrix(
        tuple(
            tuple(
                v.shift(direction) if i > j else v for j, v in enumerate(row)
            )
            for i, row in enumerate(m.rows)
        )
    )


def mp_matrix(a: LaurentMatrix, b: LaurentMatrix) -> LaurentMatrix:
    """Matrix of the twisted conjugation X -> untwist(A . twist(X) . B).

    Built column by column by pushing each twisted elementary matrix through
    the map itself; equals the closed form z^xi . (A tensor B^t) entrywise,
    which the tests cross-check against mp_closed_form.
    """
    n = a.nrows
    if a.ncols != n or b.nrows != n or b.ncols != n:
        raise DomainError("expected two square matrices of equal size")
    size = n * n
    out = [[L_ZERO] * size for _ in range(size)]
    for c in range(n):
        for d in range(n):
            unit = [[L_ZERO] * n for _ in range(n)]
            unit[c][d] = L_ONE
            x_in = twist(LaurentMatrix(tuple(tuple(r) for r in unit)), 1)
            y_out = twist(a @ x_in @ b, -1)
            col = tau(n, c, d)
            for x in range(n):
                for y in range(n):
                    out[tau(n, x, y)][col] = y_out.rows[x][y]
    return LaurentMatrix(tuple(tuple(row) for row in out))


def mp_closed_form(a: LaurentMatrix, b: LaurentMatrix) -> LaurentMatrix:
    """The same matrix via the exponent pattern and the Kronecker product."""
    n = a.nrows
    xi = xi_matrix(n)
    kron = a.kron(b.transpose())
    return LaurentMatrix(
        tuple(
            tuple(v.shift(xi[p][q]) for q, v in enumerate(row))
            for p, row in enumerate(kron.rows)
        )
    )


def h_matrix(n: int) -> LaurentMatrix:
    """The cyclic shift with a z in the corner; its n-th power is z times the identity."""
    if n < 1:
        raise DomainError("n must be positive")
    rows = [[L_ZERO] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i][i + 1] = L_ONE
    rows[n - 1][0] = Laurent.z(1)
    return LaurentMatrix(tuple(tuple(row) for row in rows))


def cyclic_matrix(n: int) -> LaurentMatrix:
    """The plain cyclic permutation matrix (the z in the corner replaced by 1)."""
    rows = [[L_ZERO] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i][i + 1] = L_ONE
    rows[n - 1][0] = L_ONE
    return LaurentMatrix(tuple(tuple(row) for row in rows))


def is_parabolic(m: LaurentMatrix) -> bool:
    """Integral entries with positive valuation strictly below the diagonal."""
    for i, row in enumerate(m.rows):
        for j, v in enumerate(row):
            if v.is_zero():
                continue
            need = 1 if i > j else 0
            if v.valuation() < need:
                return False
    return True


@dataclass(frozen=True)
class HeckeReport:
    """Outcome of conjugating the parabolic stalk algebra by a matrix."""

    n: int
    parabolic_input: bool
    det_valuation: int
    k: int
    integral: bool
    offenders: tuple[tuple[int, int, int], ...]
    precision: int


def hecke_conjugation_check(a: LaurentMatrix, precision: int = 24) -> HeckeReport:
    """Check whether conjugation by ``a`` preserves the parabolic stalk algebra.

    Reports integrality of the twisted conjugation matrix of (a, a^{-1}),
    the determinant valuation and its residue k modulo n, and the offending
    positions (row, column, exponent) when integrality fails.
    """
    n = a.nrows
    if a.ncols != n:
        raise DomainError("expected a square matrix")
    det = a.det()
    if det.is_zero():
        raise DomainError("matrix is singular")
    v = det.valuation()
    if det.is_monomial():
        inv_rows = [
            [TruncLaurent.exact(entry) for entry in row]
            for row in inverse_exact(a).rows
        ]
    else:
        inv_rows = inverse_series(a, precision)
    offenders = []
    integral = True
    for c in range(n):
        for d in range(n):
            for x in range(n):
                av = TruncLaurent.exact(a.rows[x][c])
                for y in range(n):
                    value = av * inv_rows[d][y]
                    exp_shift = (1 if d < c else 0) - (1 if y < x else 0)
                    if exp_shift:
                        value = TruncLaurent(
                            value.known.shift(exp_shift),
                            None if value.bound is None else value.bound + exp_shift,
                        )
                    negative = value.negative_part()
                    if negative:
                        integral = False
                        worst = min(negative)
                        offenders.append((tau(n, x, y), tau(n, c, d), worst))
    return HeckeReport(
        n=n,
        parabolic_input=is_parabolic(a),
        det_valuation=v,
        k=v % n,
        integral=integral,
        offenders=tuple(sorted(offenders)),
        precision=precision,
    )
