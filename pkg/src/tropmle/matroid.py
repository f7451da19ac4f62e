"""Matroids given by basis lists, and the model matrix that induces them.

Ground sets are ``range(n)``; subsets are sorted tuples of indices and are
kept as integer bitmasks internally for membership tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from . import exact
from .errors import HasColoop, InvalidData, NoAllOnes, NotABasis, RankDeficient


def to_mask(subset: Iterable[int]) -> int:
    m = 0
    for i in subset:
        m |= 1 << i
    return m


def from_mask(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _as_subset(s: Iterable[int]) -> tuple[int, ...]:
    t = tuple(sorted(int(i) for i in s))
    if len(set(t)) != len(t):
        raise ValueError(f"repeated element in {t}")
    return t


@dataclass(frozen=True)
class Matroid:
    """A matroid on ``range(ground_size)`` stored by its bases.

    Bases are kept in lexicographic order so iteration and output are
    reproducible.
    """

    ground_size: int
    rank: int
    bases: tuple[tuple[int, ...], ...]
    representation: tuple | None = field(default=None, compare=False, repr=False)
    _masks: frozenset = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        bases = tuple(sorted({_as_subset(b) for b in self.bases}))
        if not bases:
            raise InvalidData("a matroid needs at least one basis")
        if any(len(b) != self.rank for b in bases):
            raise InvalidData("all bases must have size equal to the rank")
        if any(i < 0 or i >= self.ground_size for b in bases for i in b):
            raise InvalidData("basis element outside the ground set")
        object.__setattr__(self, "bases", bases)
        object.__setattr__(self, "_masks", frozenset(to_mask(b) for b in bases))

    def __contains__(self, subset) -> bool:
        return to_mask(subset) in self._masks

    def is_basis(self, subset) -> bool:
        return subset in self

    def __len__(self):
        return len(self.bases)

    def __iter__(self):
        return iter(self.bases)

    def is_uniform(self) -> bool:
        n, r = self.ground_size, self.rank
        total = 1
        for i in range(r):
            total = total * (n - i) // (i + 1)
        return len(self.bases) == total

    def loops(self) -> tuple[int, ...]:
        covered = 0
        for m in self._masks:
            covered |= m
        return tuple(i for i in range(self.ground_size) if not covered >> i & 1)

    def coloops(self) -> tuple[int, ...]:
        common = (1 << self.ground_size) - 1
        for m in self._masks:
            common &= m
        return from_mask(common)

    def _require_basis(self, tau) -> tuple[int, ...]:
        tau = _as_subset(tau)
        if tau not in self:
            raise NotABasis(f"{tau} is not a basis")
        return tau

    def satisfies_exchange_axiom(self) -> bool:
        masks = self._masks
        for b1 in self.bases:
            m1 = to_mask(b1)
            for b2 in self.bases:
                m2 = to_mask(b2)
                for i1 in from_mask(m1 & ~m2):
                    if not any(
                        (m1 & ~(1 << i1)) | (1 << i2) in masks
                        for i2 in from_mask(m2 & ~m1)
                    ):
                        return False
        return True

    def satisfies_symmetric_exchange(self) -> bool:
        masks = self._masks
        for b1 in self.bases:
            m1 = to_mask(b1)
            for b2 in self.bases:
                m2 = to_mask(b2)
                for i1 in from_mask(m1 & ~m2):
                    if not any(
                        (m1 & ~(1 << i1)) | (1 << i2) in masks
                        and (m2 & ~(1 << i2)) | (1 << i1) in masks
                        for i2 in from_mask(m2 & ~m1)
                    ):
                        return False
        return True


def matroid_from_matrix(M: Sequence[Sequence[int]]) -> Matroid:
    """Column matroid of a full-row-rank integer matrix: nonzero maximal minors."""
    rows = tuple(tuple(int(x) for x in r) for r in M)
    k = len(rows)
    n = len(rows[0]) if rows else 0
    if exact.rank(rows) < k:
        raise RankDeficient("matrix does not have full row rank")
    cols = list(zip(*rows))
    bases = [
        tau
        for tau in combinations(range(n), k)
        if exact.det(exact.transpose([cols[j] for j in tau])) != 0
    ]
    return Matroid(n, k, tuple(bases), representation=rows)


def dual(M: Matroid) -> Matroid:
    """Matroid whose bases are the complements of the bases of ``M``."""
    full = (1 << M.ground_size) - 1
    bases = tuple(from_mask(full & ~to_mask(b)) for b in M.bases)
    return Matroid(M.ground_size, M.ground_size - M.rank, bases)


def free_coextension(M: Matroid) -> Matroid:
    """Free coextension on ``range(n + 1)``: bases ``sigma + j`` for ``j`` not in ``sigma``.

    The new element is ``n``.  Requires ``M`` to have no coloops.
    """
    if M.coloops():
        raise HasColoop(f"elements {M.coloops()} are coloops")
    n = M.ground_size
    bases = set()
    for sigma in M.bases:
        for j in range(n + 1):
            if j not in sigma:
                bases.add(tuple(sorted(sigma + (j,))))
    return Matroid(n + 1, M.rank + 1, tuple(bases))


def exchange_neighbors(M: Matroid, tau, j: int) -> tuple[int, ...]:
    """All ``i`` outside ``tau`` with ``tau - j + i`` a basis."""
    tau = M._require_basis(tau)
    if j not in tau:
        raise ValueError(f"{j} is not an element of {tau}")
    base = to_mask(tau) & ~(1 << j)
    return tuple(
        i for i in range(M.ground_size)
        if i not in tau and (base | (1 << i)) in M._masks
    )


def has_O_basis_exchange(M: Matroid, tau, O: Iterable[int]) -> bool:
    """Every ``j`` in ``tau - O`` can be swapped for some ``i`` in ``O - tau``."""
    tau = M._require_basis(tau)
    O = set(O)
    outside = [i for i in O if i not in tau]
    base = to_mask(tau)
    for j in tau:
        if j in O:
            continue
        if not any((base & ~(1 << j)) | (1 << i) in M._masks for i in outside):
            return False
    return True


class ModelMatrix:
    """Integer ``k x n`` matrix of a toric model.

    Must have full row rank and contain the all-ones vector in its row span.
    Matroid, volumes and the per-basis transfer matrices are cached.
    """

    def __init__(self, A: Sequence[Sequence[int]]):
        rows = []
        for r in A:
            row = []
            for x in r:
                if isinstance(x, bool) or not hasattr(x, "__index__"):
                    raise InvalidData(f"model matrix entries must be integers, got {x!r}")
                row.append(int(x))
            rows.append(tuple(row))
        if not rows or not rows[0]:
            raise InvalidData("model matrix is empty")
        if any(len(r) != len(rows[0]) for r in rows):
            raise InvalidData("model matrix rows have different lengths")
        self.A = tuple(rows)
        self.k = len(rows)
        self.n = len(rows[0])
        if self.k > self.n:
            raise RankDeficient(f"k={self.k} rows exceed n={self.n} columns")
        if exact.rank(self.A) < self.k:
            raise RankDeficient("model matrix does not have full row rank")
        if not exact.in_row_space(self.A, [1] * self.n):
            raise NoAllOnes("all-ones vector is not in the row span of A")
        if any(not any(col) for col in zip(*self.A)):
            raise InvalidData("model matrix has a zero column")
        self._columns = tuple(zip(*self.A))
        self._transfer: dict[tuple[int, ...], tuple] = {}
        self._slack: dict[tuple, tuple] = {}

    def __repr__(self):
        return f"ModelMatrix({[list(r) for r in self.A]})"

    def __eq__(self, other):
        return isinstance(other, ModelMatrix) and self.A == other.A

    def __hash__(self):
        return hash(self.A)

    def column(self, i: int) -> tuple[int, ...]:
        return self._columns[i]

    def submatrix(self, tau) -> tuple[tuple[int, ...], ...]:
        """``A_tau``: the ``k x |tau|`` matrix of the chosen columns."""
        return exact.transpose([self._columns[j] for j in tau])

    @cached_property
    def matroid(self) -> Matroid:
        return matroid_from_matrix(self.A)

    @cached_property
    def dual_matroid(self) -> Matroid:
        return dual(self.matroid)

    @cached_property
    def homogenized_matroid(self) -> Matroid:
        return free_coextension(self.dual_matroid)

    def require_basis(self, tau) -> tuple[int, ...]:
        return self.matroid._require_basis(tau)

    def vol(self, tau) -> int:
        """Normalized volume ``|det(A_tau)|``."""
        return abs(exact.det(self.submatrix(tuple(tau))))

    @cached_property
    def volume(self) -> int:
        """Normalized volume of ``Q_A``, summed over a regular triangulation."""
        from .subdivision import regular_triangulation

        tri = regular_triangulation(self, [0] * self.n)
        return sum(self.vol(t) for t in tri.simplices)

    def transfer(self, tau) -> tuple[tuple[Fraction, ...], ...]:
        """The ``n x k`` matrix ``A^T (A_tau^T)^{-1}``.

        Row ``i`` expresses ``a_i`` in the basis ``(a_j)_{j in tau}``; applied
        to values on ``tau`` it gives the linear extension to all columns.
        """
        tau = tuple(tau)
        cached = self._transfer.get(tau)
        if cached is None:
            tau = self.require_basis(tau)
            inv = exact.inverse(exact.transpose(self.submatrix(tau)))
            cached = exact.mat_mul(exact.transpose(self.A), inv)
            self._transfer[tau] = cached
        return cached

    def functional(self, tau, values) -> tuple:
        """``psi`` with ``<psi, a_j> = values_j`` for ``j`` in ``tau``."""
        tau = self.require_basis(tau)
        return exact.solve_transpose(self.submatrix(tau), list(values))

    def extend(self, tau, values) -> tuple:
        """``A^T (A_tau^T)^{-1} values`` for values indexed by ``tau``."""
        return exact.mat_vec(self.transfer(tau), list(values))

    def slack(self, tau, omega) -> tuple[Fraction, ...]:
        """``omega - extend(tau, omega_tau)`` for rational ``omega``, memoized."""
        key = (tuple(tau), tuple(omega))
        cached = self._slack.get(key)
        if cached is None:
            heights = self.extend(key[0], [omega[j] for j in key[0]])
            cached = tuple(w - h for w, h in zip(omega, heights))
            if len(self._slack) > 4096:
                self._slack.clear()
            self._slack[key] = cached
        return cached

    def permuted(self, perm: Sequence[int]) -> "ModelMatrix":
        """Model whose column ``i`` is column ``perm[i]`` of this one."""
        return ModelMatrix([[row[p] for p in perm] for row in self.A])

    def is_curve(self) -> bool:
        return self.k == 2 and all(x == 1 for x in self.A[0])
