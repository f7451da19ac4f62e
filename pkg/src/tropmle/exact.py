"""Exact integer and rational linear algebra.

Rationals are :class:`fractions.Fraction` throughout.  Determinants and
inverses use fraction-free (Bareiss) elimination on integer matrices, so
intermediate entries stay integral and every result is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence

from .errors import RankDeficient, SingularMatrix

Rat = Fraction


def as_rat(value) -> Fraction:
    """Parse ``value`` (int, Fraction, or a string like ``"3/4"``) as a Fraction.

    Floats are rejected: they cannot carry the exactness the library relies on.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError(f"refusing float {value!r}; pass a string or Fraction")
    # numpy integers and similar
    if hasattr(value, "__index__"):
        return Fraction(int(value))
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rat(value: Fraction) -> str:
    """Serialize as ``"p"`` or ``"p/q"``."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@total_ordering
class EpsRat:
    """A polynomial in an infinitesimal ``eps`` with rational coefficients.

    ``coeffs[d]`` is the coefficient of ``eps**d``.  Ordering is lexicographic
    on ``(coeffs[0], coeffs[1], ...)``, which is the order of the values for
    all sufficiently small ``eps > 0``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def eps(cls, degree: int, coeff=1) -> "EpsRat":
        cs = [Fraction(0)] * degree + [as_rat(coeff)]
        return cls(cs)

    @staticmethod
    def lift(value) -> "EpsRat":
        if isinstance(value, EpsRat):
            return value
        return EpsRat((value,))

    @property
    def constant(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def coeff(self, degree: int) -> Fraction:
        return self.coeffs[degree] if degree < len(self.coeffs) else Fraction(0)

    def sign(self) -> int:
        for c in self.coeffs:
            if c:
                return 1 if c > 0 else -1
        return 0

    def evaluate(self, eps: float) -> float:
        return sum(float(c) * eps**d for d, c in enumerate(self.coeffs))

    def __add__(self, other):
        if not isinstance(other, (EpsRat, Fraction, int)):
            return NotImplemented
        other = EpsRat.lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for d, c in enumerate(b):
            out[d] += c
        return EpsRat(out)

    __radd__ = __add__

    def __neg__(self):
        return EpsRat(-c for c in self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, (EpsRat, Fraction, int)):
            return NotImplemented
        return self + (-EpsRat.lift(other))

    def __rsub__(self, other):
        return EpsRat.lift(other) - self

    def __mul__(self, scalar):
        if isinstance(scalar, EpsRat):
            if len(scalar.coeffs) > 1 and len(self.coeffs) > 1:
                raise TypeError("EpsRat products are not supported")
            if len(scalar.coeffs) <= 1:
                scalar = scalar.constant
            else:
                return scalar * self.constant
        if not isinstance(scalar, (Fraction, int)):
            return NotImplemented
        if scalar == 0:
            return EpsRat()
        return EpsRat(c * scalar for c in self.coeffs)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (Fraction, int)):
            other = EpsRat.lift(other)
        if not isinstance(other, EpsRat):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __lt__(self, other):
        if isinstance(other, (Fraction, int)):
            other = EpsRat.lift(other)
        if not isinstance(other, EpsRat):
            return NotImplemented
        return (self - other).sign() < 0

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self.constant)
        return hash(self.coeffs)

    def __repr__(self):
        terms = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(format_rat(c) if d == 0 else f"{format_rat(c)}*eps^{d}")
        return "EpsRat(" + (" + ".join(terms) or "0") + ")"


# ---------------------------------------------------------------------------
# matrices are plain nested tuples/lists; integers for Bareiss routines


def _int_rows(M: Sequence[Sequence[int]]) -> list[list[int]]:
    rows = [[int(x) for x in row] for row in M]
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged matrix")
    return rows


def transpose(M):
    return tuple(zip(*M)) if M else ()


def det(M: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix by Bareiss elimination."""
    a = _int_rows(M)
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("det needs a square matrix")
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for p in range(k + 1, n):
                if a[p][k] != 0:
                    a[k], a[p] = a[p], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def inverse(M: Sequence[Sequence[int]]) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse of a nonsingular integer matrix.

    Fraction-free Gauss-Jordan on ``[M | I]``; the left block ends as a
    diagonal of ``det(M)`` (up to sign) and the right block as the adjugate.
    """
    a = _int_rows(M)
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("inverse needs a square matrix")
    for i, row in enumerate(a):
        row.extend(1 if j == i else 0 for j in range(n))
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            for p in range(k + 1, n):
                if a[p][k] != 0:
                    a[k], a[p] = a[p], a[k]
                    break
            else:
                raise SingularMatrix("matrix is singular")
        pivot, row_k = a[k][k], a[k]
        for i in range(n):
            if i == k:
                continue
            row_i = a[i]
            aik = row_i[k]
            for j in range(2 * n):
                row_i[j] = (pivot * row_i[j] - aik * row_k[j]) // prev
        prev = pivot
    return tuple(
        tuple(Fraction(a[i][n + j], a[i][i]) for j in range(n)) for i in range(n)
    )


def mat_vec(M, v):
    """``M @ v`` for any entries supporting ``*`` and ``+`` (Fraction, EpsRat)."""
    out = []
    for row in M:
        acc = 0
        for m, x in zip(row, v):
            if m:
                acc = acc + m * x
        out.append(acc)
    return tuple(out)


def mat_mul(P, Q):
    Qt = transpose(Q)
    return tuple(tuple(sum(p * q for p, q in zip(row, col)) for col in Qt) for row in P)


def solve_transpose(Atau: Sequence[Sequence[int]], b: Sequence) -> tuple:
    """Solve ``Atau^T x = b`` exactly.  Raises SingularMatrix when det = 0."""
    if len(b) != len(Atau):
        raise ValueError("dimension mismatch")
    return mat_vec(inverse(transpose(Atau)), b)


def rref(M) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals, with pivot columns."""
    a = [[as_rat(x) for x in row] for row in M]
    if not a:
        return [], []
    rows, cols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(M) -> int:
    return len(rref(M)[1])


def in_row_space(M, v) -> bool:
    """True iff ``v`` is a rational combination of the rows of ``M``."""
    return rank(list(M) + [list(v)]) == rank(M)


def _primitive(vec: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for x in vec:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    g = g or 1
    first = next((x for x in ints if x), 1)
    if first < 0:
        g = -g
    return tuple(x // g for x in ints)


def kernel_basis(A) -> tuple[tuple[int, ...], ...]:
    """Integer matrix ``B`` whose rows span ``ker(A)``; ``A @ B.T == 0``.

    ``A`` must have full row rank.
    """
    rows = [list(r) for r in A]
    k = len(rows)
    n = len(rows[0]) if rows else 0
    R, pivots = rref(rows)
    if len(pivots) < k:
        raise RankDeficient(f"matrix has rank {len(pivots)} < {k}")
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -R[r][f]
        basis.append(_primitive(v))
    return tuple(basis)


# ---------------------------------------------------------------------------
# Fourier-Motzkin feasibility


@dataclass(frozen=True)
class Constraint:
    """``sum(coeffs[i] * x[i]) <sense> rhs`` with sense one of ``<=``, ``<``, ``==``."""

    coeffs: tuple
    rhs: Fraction
    sense: str = "<="

    def __post_init__(self):
        if self.sense not in ("<=", "<", "=="):
            raise ValueError(f"unknown sense {self.sense!r}")
        object.__setattr__(self, "coeffs", tuple(as_rat(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", as_rat(self.rhs))


def _normalize(coeffs, rhs, strict):
    lead = next((abs(c) for c in coeffs if c), None)
    if lead is None:
        return coeffs, rhs, strict
    return tuple(c / lead for c in coeffs), rhs / lead, strict


def lp_feasible(constraints: Iterable[Constraint], nvars: int) -> bool:
    """Exact feasibility of a system of linear (in)equalities over the rationals.

    Equalities are eliminated by substitution, then variables are removed one
    at a time by Fourier-Motzkin; strictness propagates through combinations.
    """
    eqs, ineqs = [], []
    for con in constraints:
        if len(con.coeffs) != nvars:
            raise ValueError("constraint width does not match nvars")
        if con.sense == "==":
            eqs.append((list(con.coeffs), con.rhs))
        else:
            ineqs.append((tuple(con.coeffs), con.rhs, con.sense == "<"))

    while eqs:
        coeffs, rhs = eqs.pop()
        v = next((i for i, c in enumerate(coeffs) if c), None)
        if v is None:
            if rhs != 0:
                return False
            continue
        cv = coeffs[v]

        def sub(d, s, coeffs=coeffs, rhs=rhs, v=v, cv=cv):
            f = d[v] / cv
            if not f:
                return list(d), s
            return [di - f * ci for di, ci in zip(d, coeffs)], s - f * rhs

        eqs = [sub(d, s) for d, s in eqs]
        ineqs = [(tuple(c), s, strict) for (c, s), strict in
                 ((sub(d, s), strict) for d, s, strict in ineqs)]

    system = set()
    for c, s, strict in ineqs:
        system.add(_normalize(c, s, strict))

    for v in range(nvars):
        pos, neg, rest = [], [], set()
        for c, s, strict in system:
            if c[v] > 0:
                pos.append((c, s, strict))
            elif c[v] < 0:
                neg.append((c, s, strict))
            else:
                rest.add((c, s, strict))
        for cp, sp, tp in pos:
            for cn, sn, tn in neg:
                fp, fn = 1 / cp[v], -1 / cn[v]
                c = tuple(fp * a + fn * b for a, b in zip(cp, cn))
                rest.add(_normalize(c, fp * sp + fn * sn, tp or tn))
        system = set()
        for c, s, strict in rest:
            if any(c):
                system.add((c, s, strict))
            elif s < 0 or (strict and s == 0):
                return False
    for c, s, strict in system:
        if s < 0 or (strict and s == 0):
            return False
    return True
