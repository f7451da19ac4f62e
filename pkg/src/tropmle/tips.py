"""Tropical iterative proportional scaling (tIPS).

The update is ``q <- q + A^T (r - r_hat(q)) / alpha`` where ``r_hat(q)_i`` is
the minimum of ``q`` over the support of row ``i`` of a nonnegative matrix
with constant column sums ``alpha``, and ``r`` is the same minimum taken over
the data ``w``.  Runs stop on exact termination (``r_hat == r``) or when the
increments shrink by a constant ratio, in which case the geometric limit is
extrapolated exactly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exact
from .affine import TropVector, tvec
from .errors import InvalidData, NoAllOnes, TropicalMLEError
from .matroid import ModelMatrix

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ScalingModel:
    """Nonnegative integer matrix whose columns all sum to ``alpha``."""

    A: tuple[tuple[int, ...], ...]
    alpha: int

    def __post_init__(self):
        A = tuple(tuple(int(x) for x in row) for row in self.A)
        object.__setattr__(self, "A", A)
        if any(x < 0 for row in A for x in row):
            raise InvalidData("scaling matrix must be nonnegative")
        sums = {sum(col) for col in zip(*A)}
        if sums != {self.alpha} or self.alpha <= 0:
            raise InvalidData(f"column sums {sorted(sums)} are not all equal to alpha={self.alpha}")
        if any(not any(row) for row in A):
            raise InvalidData("scaling matrix has a zero row")

    @classmethod
    def from_matrix(cls, A) -> "ScalingModel":
        A = tuple(tuple(int(x) for x in row) for row in A)
        if not A or not A[0]:
            raise InvalidData("scaling matrix is empty")
        return cls(A, sum(row[0] for row in A))

    @property
    def k(self) -> int:
        return len(self.A)

    @property
    def n(self) -> int:
        return len(self.A[0])

    def supports(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(j for j, x in enumerate(row) if x) for row in self.A)

    def model(self) -> ModelMatrix:
        return ModelMatrix(self.A)


def reparametrize(model: ModelMatrix | Sequence[Sequence[int]]) -> ScalingModel:
    """Nonnegative matrix with constant column sums and the same row space.

    A row that can be traded for the all-ones vector is replaced; the other
    rows are shifted by multiples of the all-ones vector to have minimum 0,
    and the traded row becomes ``alpha * 1 - (sum of the others)``.  A matrix
    that already qualifies is returned unchanged.
    """
    A = model.A if isinstance(model, ModelMatrix) else tuple(tuple(int(x) for x in r) for r in model)
    n = len(A[0])
    ones = (1,) * n
    sums = {sum(col) for col in zip(*A)}
    if all(x >= 0 for row in A for x in row) and len(sums) == 1 and sums != {0}:
        if all(any(row) for row in A):
            return ScalingModel(A, sums.pop())
    if not exact.in_row_space(A, ones):
        raise NoAllOnes("all-ones vector is not in the row span")
    k = exact.rank(A)
    if k < len(A):
        raise InvalidData("matrix does not have full row rank")

    swap = next(
        i for i in range(len(A))
        if exact.rank([row for r, row in enumerate(A) if r != i] + [ones]) == k
    )
    rest = []
    for r, row in enumerate(A):
        if r == swap:
            continue
        low = min(row)
        rest.append(tuple(x - low for x in row))
    col_sums = [sum(col) for col in zip(*rest)] if rest else [0] * n
    alpha = max(max(col_sums), 1)
    pad = tuple(alpha - s for s in col_sums)
    out = rest[:swap] + [pad] + rest[swap:]
    if exact.rank(list(out) + list(A)) != k or exact.rank(out) != k:
        raise AssertionError("reparametrization changed the row space")
    return ScalingModel(tuple(out), alpha)


def row_minima(S: ScalingModel, x: Sequence) -> tuple[Fraction, ...]:
    x = tvec(x)
    return tuple(min(x[j] for j in sup) for sup in S.supports())


@dataclass(frozen=True)
class TipsState:
    t: int
    q: TropVector
    r_hat: tuple[Fraction, ...]
    r: tuple[Fraction, ...]

    @property
    def terminated(self) -> bool:
        return self.r_hat == self.r


def initial_state(S: ScalingModel, w: Sequence, q0: Sequence | None = None) -> TipsState:
    w = tvec(w)
    if len(w) != S.n:
        raise InvalidData(f"data vector has length {len(w)}, expected {S.n}")
    q = tvec(q0) if q0 is not None else (Fraction(0),) * S.n
    if len(q) != S.n:
        raise InvalidData(f"initial vector has length {len(q)}, expected {S.n}")
    return TipsState(0, q, row_minima(S, q), row_minima(S, w))


def tips_step(S: ScalingModel, w: Sequence, state: TipsState) -> TipsState:
    r = row_minima(S, w)
    gap = [ri - rh for ri, rh in zip(r, state.r_hat)]
    q = tuple(
        qj + sum(S.A[i][j] * gap[i] for i in range(S.k)) / S.alpha
        for j, qj in enumerate(state.q)
    )
    return TipsState(state.t + 1, q, row_minima(S, q), r)


@dataclass(frozen=True)
class TipsReport:
    """Outcome of :func:`tips_run`.

    ``status`` is ``"terminated"`` (exact fixed point reached),
    ``"converging"`` (geometric decay detected, ``limit`` extrapolated) or
    ``"undecided"``.  ``critical`` is None when no verdict could be formed.
    """

    status: str
    iterations: int
    trajectory: tuple[TropVector, ...]
    limit: TropVector | None
    ratio: Fraction | None
    fixed_point: bool
    critical: bool | None
    critical_source: str

    @property
    def terminated(self) -> bool:
        return self.status == "terminated"


def _ratio(d_prev, d_next):
    """``rho`` with ``d_next == rho * d_prev``, or None."""
    pivot = next((i for i, x in enumerate(d_prev) if x), None)
    if pivot is None:
        return None
    rho = d_next[pivot] / d_prev[pivot]
    if all(b == rho * a for a, b in zip(d_prev, d_next)):
        return rho
    return None


def _diff(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _critical_verdict(S, w, limit, model):
    from .critical import solve

    try:
        m = model if model is not None else S.model()
        result = solve(m, w)
    except TropicalMLEError as exc:
        log.info("no critical point set available: %s", exc)
        return None, "unavailable"
    return any(p.q == limit for p in result.points), "solve"


def tips_run(
    S: ScalingModel,
    w: Sequence,
    q0: Sequence | None = None,
    max_iter: int = 1000,
    convergence_tol=Fraction(1, 10**12),
    *,
    extrapolate: bool = True,
    model: ModelMatrix | None = None,
    check_critical: bool = True,
) -> TipsReport:
    """Iterate tIPS from ``q0`` (default 0) and classify the outcome."""
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    w = tvec(w)
    tol = exact.as_rat(convergence_tol)
    state = initial_state(S, w, q0)
    traj = [state.q]
    status, limit, ratio = "undecided", None, None
    if state.terminated:
        status, limit = "terminated", state.q
    while status == "undecided" and state.t < max_iter:
        state = tips_step(S, w, state)
        traj.append(state.q)
        if state.terminated:
            status, limit = "terminated", state.q
            break
        if extrapolate and len(traj) >= 4:
            d1, d2, d3 = (_diff(traj[-3], traj[-4]), _diff(traj[-2], traj[-3]),
                          _diff(traj[-1], traj[-2]))
            rho = _ratio(d1, d2)
            if rho is not None and 0 < abs(rho) < 1 and _ratio(d2, d3) == rho:
                guess = tuple(x + d / (1 - rho) for x, d in zip(traj[-2], d3))
                if row_minima(S, guess) == state.r:
                    status, limit, ratio = "converging", guess, rho
                    break
        step = max(abs(d) for d in _diff(traj[-1], traj[-2]))
        if step < tol:
            limit = state.q
            break
    if limit is None:
        limit = state.q
    fixed = row_minima(S, limit) == state.r
    critical, source = None, "none"
    if status != "undecided" and check_critical:
        critical, source = _critical_verdict(S, w, limit, model)
        if critical is None:
            critical, source = fixed, "fixed-point"
    return TipsReport(
        status=status,
        iterations=state.t,
        trajectory=tuple(traj),
        limit=limit,
        ratio=ratio,
        fixed_point=fixed,
        critical=critical,
        critical_source=source,
    )
