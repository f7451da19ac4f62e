"""Regular subdivisions of ``Q_A`` decided by exact lower-hull inequalities.

A basis ``tau`` lies in a cell of the regular subdivision induced by weights
``omega`` iff the linear functional interpolating ``omega`` on ``tau`` stays
below ``omega`` on every column.  No convex hulls are computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidData
from .exact import Constraint, EpsRat, as_rat, lp_feasible
from .matroid import ModelMatrix


def _weights(omega: Iterable, n: int) -> tuple:
    out = tuple(w if isinstance(w, EpsRat) else as_rat(w) for w in omega)
    if len(out) != n:
        raise InvalidData(f"weight vector has length {len(out)}, expected {n}")
    return out


def perturb(omega: Sequence, order: Sequence[int] | None = None) -> tuple[EpsRat, ...]:
    """``omega_i + eps**d_i`` where ``order[d - 1]`` is the index receiving ``eps**d``.

    The default order is ``0, 1, ..., n - 1``.  The perturbed weights admit no
    affine dependence among lifted points, so they induce a triangulation.
    """
    n = len(omega)
    order = range(n) if order is None else order
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of range(n)")
    out = [EpsRat.lift(w if isinstance(w, EpsRat) else as_rat(w)) for w in omega]
    for d, i in enumerate(order, start=1):
        out[i] = out[i] + EpsRat.eps(d)
    return tuple(out)


@dataclass(frozen=True)
class CellTest:
    """Outcome of :func:`lies_in_cell`.

    ``equality`` lists the columns ``i`` where the interpolated height equals
    ``omega_i``; when ``lies`` is true these form the cell containing ``tau``.
    """

    lies: bool
    equality: tuple[int, ...]
    heights: tuple

    def __bool__(self):
        return self.lies


def lies_in_cell(model: ModelMatrix, tau, omega: Sequence) -> CellTest:
    tau = model.require_basis(tau)
    omega = _weights(omega, model.n)
    heights = model.extend(tau, [omega[j] for j in tau])
    lies = all(h <= w for h, w in zip(heights, omega))
    equality = tuple(i for i, (h, w) in enumerate(zip(heights, omega)) if h == w)
    return CellTest(lies, equality, heights)


@dataclass(frozen=True)
class SubdivisionCells:
    maximal_cells: tuple[tuple[int, ...], ...]
    functionals: tuple[tuple[Fraction, ...], ...]


def maximal_cells(model: ModelMatrix, omega: Sequence) -> SubdivisionCells:
    """Maximal cells of the regular subdivision induced by rational weights."""
    omega = _weights(omega, model.n)
    if any(isinstance(w, EpsRat) for w in omega):
        raise InvalidData("maximal_cells takes rational weights")
    cells: dict[tuple, tuple[int, ...]] = {}
    for tau in model.matroid.bases:
        test = lies_in_cell(model, tau, omega)
        if not test:
            continue
        psi = model.functional(tau, [omega[j] for j in tau])
        cells.setdefault(psi, test.equality)
    found = sorted(cells.items(), key=lambda kv: kv[1])
    keep = [
        (psi, cell) for psi, cell in found
        if not any(set(cell) < set(other) for _, other in found)
    ]
    return SubdivisionCells(
        maximal_cells=tuple(cell for _, cell in keep),
        functionals=tuple(psi for psi, _ in keep),
    )


@dataclass(frozen=True)
class Triangulation:
    simplices: tuple[tuple[int, ...], ...]
    weight: tuple

    def volume(self, model: ModelMatrix) -> int:
        return sum(model.vol(t) for t in self.simplices)


def regular_triangulation(
    model: ModelMatrix, omega: Sequence, order: Sequence[int] | None = None
) -> Triangulation:
    """Regular triangulation refining the subdivision induced by ``omega``.

    Uses the lexicographic perturbation :func:`perturb`; its maximal
    simplices are exactly the bases passing :func:`lies_in_cell`.
    """
    omega = _weights(omega, model.n)
    weight = perturb(omega, order)
    if any(isinstance(x, EpsRat) for x in omega):
        test = lambda tau: lies_in_cell(model, tau, weight).lies  # noqa: E731
    else:
        degree = [0] * model.n
        for d, i in enumerate(range(model.n) if order is None else order, start=1):
            degree[i] = d
        test = lambda tau: _lies_perturbed(model, tau, omega, degree)  # noqa: E731
    simplices = tuple(tau for tau in model.matroid.bases if test(tau))
    return Triangulation(simplices=simplices, weight=weight)


def _lies_perturbed(model: ModelMatrix, tau, omega, degree) -> bool:
    """:func:`lies_in_cell` for ``omega_i + eps**degree[i]`` without EpsRat arithmetic.

    The slack on column ``i`` outside ``tau`` is a constant plus
    ``eps**degree[i] - sum_j T[i][j] eps**degree[tau_j]``; its sign is that of
    the constant, or else of the lowest-degree term.
    """
    slack = model.slack(tau, omega)
    T = model.transfer(tau)
    for i, c in enumerate(slack):
        if c > 0 or i in tau:
            continue
        if c < 0:
            return False
        low, sign = degree[i], 1
        for j, t in zip(tau, T[i]):
            if t and degree[j] < low:
                low, sign = degree[j], -t
        if sign < 0:
            return False
    return True


def refines(model: ModelMatrix, tri: Triangulation | Iterable, omega: Sequence) -> bool:
    """Whether every maximal simplex of ``tri`` lies in a cell induced by ``omega``."""
    simplices = tri.simplices if isinstance(tri, Triangulation) else tuple(tri)
    return all(lies_in_cell(model, tau, omega) for tau in simplices)


def is_face(model: ModelMatrix, O: Iterable[int]) -> bool:
    """Is there a linear form maximized on the columns in ``O`` and nowhere else?"""
    O = set(O)
    if not O:
        raise InvalidData("face test needs a nonempty index set")
    if not O <= set(range(model.n)):
        raise InvalidData("index outside the ground set")
    cons = []
    for i in range(model.n):
        row = tuple(model.column(i)) + (-1,)
        cons.append(Constraint(row, 0, "==" if i in O else "<"))
    return lp_feasible(cons, model.k + 1)
