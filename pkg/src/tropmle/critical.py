"""Tropical critical points: cone intersections certified by triangulations.

Every basis ``tau`` contributes at most one point, the intersection of
``row(A)`` with the cone ``C_tau``.  When every maximal simplex of a regular
triangulation contributes, the contributions are all critical points and
their multiplicities add up to the normalized volume of ``Q_A``.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .affine import TropVector, check_data_vector, tau_operator, tvec, zero_set
from .errors import InvalidData, NoCertificate, NotACurve, NotAFace, NotUniform
from .matroid import ModelMatrix
from .subdivision import Triangulation, is_face, lies_in_cell, regular_triangulation


@dataclass(frozen=True)
class CriticalPoint:
    q: TropVector
    multiplicity: int
    witnesses: tuple[tuple[int, ...], ...] = ()

    @property
    def witness_tau(self):
        return self.witnesses[0] if self.witnesses else None


@dataclass(frozen=True)
class CriticalPointSet:
    points: tuple[CriticalPoint, ...]
    total_multiplicity: int
    complete: bool
    method: str = ""
    triangulation: Triangulation | None = field(default=None, compare=False)

    def as_dict(self) -> dict[TropVector, int]:
        return {p.q: p.multiplicity for p in self.points}

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


@dataclass(frozen=True)
class SimplexFailure:
    tau: tuple[int, ...]
    apex: TropVector
    violated: tuple[int, ...]  # columns where q(tau) < apex


@dataclass(frozen=True)
class Attempt:
    label: str
    order: tuple[int, ...]
    simplices: tuple[tuple[int, ...], ...]
    failures: tuple[SimplexFailure, ...]


@dataclass(frozen=True)
class Diagnostic:
    attempts: tuple[Attempt, ...]


def merge_points(points: Iterable[CriticalPoint]) -> tuple[CriticalPoint, ...]:
    """Sum multiplicities of equal points; output sorted by coordinates."""
    acc: dict[TropVector, list] = {}
    for p in points:
        slot = acc.setdefault(p.q, [0, []])
        slot[0] += p.multiplicity
        slot[1].extend(p.witnesses)
    return tuple(
        CriticalPoint(q, m, tuple(sorted(wit))) for q, (m, wit) in sorted(acc.items())
    )


def _point_set(points, model, method, tri=None) -> CriticalPointSet:
    merged = merge_points(p for p in points if p.multiplicity > 0)
    total = sum(p.multiplicity for p in merged)
    return CriticalPointSet(
        merged, total, complete=total == model.volume, method=method, triangulation=tri
    )


def _zero_solution(model: ModelMatrix, method: str) -> CriticalPointSet:
    zero = tuple(Fraction(0) for _ in range(model.n))
    return _point_set([CriticalPoint(zero, model.volume)], model, method)


def _intersect(model, w, tau):
    apex = tau_operator(model, tau, w)
    test = lies_in_cell(model, tau, [-a for a in apex])
    if not test:
        violated = tuple(
            i for i, (h, a) in enumerate(zip(test.heights, apex)) if -h < a
        )
        return None, SimplexFailure(tau, apex, violated)
    q = tuple(-h for h in test.heights)
    return CriticalPoint(q, model.vol(tau), (tau,)), None


def cone_intersection(model: ModelMatrix, w: Sequence, tau) -> CriticalPoint | None:
    """Intersection of ``row(A)`` with the cone ``C_tau``, if nonempty."""
    tau = model.require_basis(tau)
    point, _ = _intersect(model, tvec(w), tau)
    return point


def certify(model: ModelMatrix, w: Sequence, tri, threads: int = 1):
    """Run every cone intersection of ``tri``; return ``(points, failures)``."""
    w = tvec(w)
    simplices = tri.simplices if isinstance(tri, Triangulation) else tuple(tri)
    simplices = [model.require_basis(t) for t in simplices]
    if threads > 1 and len(simplices) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda t: _intersect(model, w, t), simplices))
    else:
        results = [_intersect(model, w, t) for t in simplices]
    points = [p for p, _ in results if p is not None]
    failures = tuple(f for _, f in results if f is not None)
    return points, failures


def solve_by_triangulation(
    model: ModelMatrix, w: Sequence, tri, threads: int = 1
) -> CriticalPointSet | None:
    """All critical points if every simplex of ``tri`` meets ``row(A)``, else None."""
    points, failures = certify(model, w, tri, threads)
    if failures:
        return None
    tri = tri if isinstance(tri, Triangulation) else None
    return _point_set(points, model, "triangulation", tri)


# ---------------------------------------------------------------------------
# closed forms


def solve_curve(model: ModelMatrix, w: Sequence) -> CriticalPointSet:
    """Monomial curves: ``A = (1 ... 1 / a_1 < ... < a_n)``."""
    if not model.is_curve():
        raise NotACurve("expected a 2 x n matrix with first row all ones")
    a = model.A[1]
    if any(x >= y for x, y in zip(a, a[1:])):
        raise NotACurve("second row must be strictly increasing")
    w = check_data_vector(w, model.n)
    n = model.n
    positive = [x for x in w if x > 0]
    zero = tuple(Fraction(0) for _ in range(n))
    if w[0] == 0 and len(positive) == n - 1:
        wmin = min(positive)
        q = tuple(wmin * Fraction(x - a[0], a[1] - a[0]) for x in a)
        pts = [CriticalPoint(q, a[1] - a[0], ((0, 1),)), CriticalPoint(zero, a[-1] - a[1])]
        return _point_set(pts, model, "curve")
    if w[-1] == 0 and len(positive) == n - 1:
        wmin = min(positive)
        q = tuple(wmin * Fraction(a[-1] - x, a[-1] - a[-2]) for x in a)
        pts = [
            CriticalPoint(q, a[-1] - a[-2], ((n - 2, n - 1),)),
            CriticalPoint(zero, a[-2] - a[0]),
        ]
        return _point_set(pts, model, "curve")
    return _point_set([CriticalPoint(zero, a[-1] - a[0])], model, "curve")


def polygon_edges(model: ModelMatrix) -> dict[int, tuple[int, ...]] | None:
    """Edge neighbours of each column if the columns are the vertices of a convex polygon.

    Returns None when ``A`` is not ``(1 / x / y)`` with all points in convex
    position and no three collinear.
    """
    if model.k != 3 or not all(x == 1 for x in model.A[0]) or model.n < 3:
        return None
    if not model.matroid.is_uniform():
        return None
    if not all(is_face(model, [i]) for i in range(model.n)):
        return None
    nbrs = {i: [] for i in range(model.n)}
    for i in range(model.n):
        for j in range(i + 1, model.n):
            if is_face(model, [i, j]):
                nbrs[i].append(j)
                nbrs[j].append(i)
    if any(len(v) != 2 for v in nbrs.values()):
        return None
    return {i: tuple(v) for i, v in nbrs.items()}


def solve_polygon(model: ModelMatrix, w: Sequence, edges=None) -> CriticalPointSet | None:
    """Convex polygons with every column a vertex.

    Returns None only in the single-zero case when the simplex spanned by the
    zero vertex and its two neighbours fails to meet ``row(A)``.
    """
    edges = edges or polygon_edges(model)
    if edges is None:
        raise InvalidData("columns are not the vertices of a convex polygon")
    w = check_data_vector(w, model.n)
    O = zero_set(w)
    zero = tuple(Fraction(0) for _ in range(model.n))
    if len(O) == 1:
        p = O[0]
        tau = tuple(sorted((p,) + edges[p]))
        point, _ = _intersect(model, w, tau)
        if point is None:
            return None
        rest = CriticalPoint(zero, model.volume - point.multiplicity)
        return _point_set([point, rest], model, "polygon")
    if len(O) == 2 and O[1] in edges[O[0]]:
        others = [i for i in range(model.n) if i not in O]
        tau0 = tuple(sorted(O + (others[0],)))
        vals = [Fraction(0) if j in O else Fraction(1) for j in tau0]
        height = model.extend(tau0, vals)
        v = min(others, key=lambda i: (height[i], i))
        wmin = min(x for x in w if x > 0)
        q = tuple(wmin * h / height[v] for h in height)
        tau = tuple(sorted(O + (v,)))
        point = CriticalPoint(q, model.vol(tau), (tau,))
        rest = CriticalPoint(zero, model.volume - point.multiplicity)
        return _point_set([point, rest], model, "polygon")
    return _zero_solution(model, "polygon")


# ---------------------------------------------------------------------------
# uniform matroids


@dataclass(frozen=True)
class ConstantTerm:
    tau: tuple[int, ...]
    i: int
    plus: Fraction
    minus: Fraction

    @property
    def value(self) -> Fraction:
        return self.plus / (1 - self.minus)


@dataclass(frozen=True)
class UniformCaseConstant:
    """Spread constant for a face ``O`` computed on one refining triangulation.

    ``value`` is None when no simplex containing ``O`` has an outside column,
    i.e. the condition on the data is vacuous.
    """

    value: Fraction | None
    triangulation: Triangulation
    terms: tuple[ConstantTerm, ...]


def uniform_constant(model: ModelMatrix, O: Iterable[int]) -> UniformCaseConstant:
    O = tuple(sorted(set(O)))
    if not model.matroid.is_uniform():
        raise NotUniform("M(A) is not uniform")
    if not O or not is_face(model, O):
        raise NotAFace(f"{O} is not a face of Q_A")
    e_O = [1 if i in O else 0 for i in range(model.n)]
    tri = regular_triangulation(model, e_O)
    terms = []
    for tau in tri.simplices:
        if not set(O) <= set(tau):
            continue
        T = model.transfer(tau)
        for i in range(model.n):
            if i in tau:
                continue
            plus = minus = Fraction(0)
            for col, j in enumerate(tau):
                if j in O:
                    continue
                if T[i][col] > 0:
                    plus += T[i][col]
                else:
                    minus += T[i][col]
            terms.append(ConstantTerm(tau, i, plus, minus))
    value = min((t.value for t in terms), default=None)
    return UniformCaseConstant(value, tri, tuple(terms))


def satisfies_constant_condition(w: Sequence, k: int, constant) -> bool:
    """Does ``w`` have ``k`` entries at most ``constant * min(positive entries)``?"""
    w = tvec(w)
    positive = [x for x in w if x > 0]
    if not positive or constant is None:
        return True
    bound = constant * min(positive)
    return sum(1 for x in w if x <= bound) >= k


# ---------------------------------------------------------------------------
# dispatch


def _as_curve(model: ModelMatrix):
    """Column order and curve model when ``A`` is a monomial curve up to row and column order."""
    if model.k != 2:
        return None
    rows = model.A
    if all(x == 1 for x in rows[0]):
        a = rows[1]
    elif all(x == 1 for x in rows[1]):
        a = rows[0]
    else:
        return None
    if len(set(a)) != len(a):
        return None
    perm = sorted(range(model.n), key=lambda i: a[i])
    return perm, ModelMatrix([[1] * model.n, [a[i] for i in perm]])


def _unpermute(result: CriticalPointSet, perm, model, method) -> CriticalPointSet:
    inv = [0] * len(perm)
    for pos, i in enumerate(perm):
        inv[i] = pos
    pts = []
    for p in result.points:
        q = tuple(p.q[inv[i]] for i in range(len(perm)))
        wit = tuple(tuple(sorted(perm[j] for j in t)) for t in p.witnesses)
        pts.append(CriticalPoint(q, p.multiplicity, wit))
    return _point_set(pts, model, method)


def _candidate_weights(model, w, O, max_triangulations, seed):
    n = model.n
    e_O = [1 if i in O else 0 for i in range(n)]
    zero = [0] * n
    neg_w = [-x for x in w]
    ident = tuple(range(n))
    rev = tuple(reversed(ident))
    yield "e_O", e_O, ident
    yield "e_O", e_O, rev
    yield "zero", zero, ident
    yield "zero", zero, rev
    yield "-w", neg_w, ident
    yield "-w", neg_w, rev
    rng = random.Random(seed)
    bases = [("e_O", e_O), ("zero", zero), ("-w", neg_w)]
    for t in range(max(0, 8 * max_triangulations)):
        label, omega = bases[t % len(bases)]
        order = list(ident)
        rng.shuffle(order)
        yield label, omega, tuple(order)


def search_triangulations(
    model: ModelMatrix,
    w: Sequence,
    max_triangulations: int = 32,
    seed: int = 0,
    threads: int = 1,
):
    """Try distinct lexicographically perturbed triangulations until one certifies.

    Returns ``(result, diagnostic)``; ``result`` is None when nothing certified.
    """
    w = tvec(w)
    O = set(zero_set(w))
    seen = set()
    attempts = []
    for label, omega, order in _candidate_weights(model, w, O, max_triangulations, seed):
        if len(seen) >= max_triangulations:
            break
        tri = regular_triangulation(model, omega, order)
        if tri.simplices in seen:
            continue
        seen.add(tri.simplices)
        points, failures = certify(model, w, tri, threads)
        if not failures:
            return _point_set(points, model, "triangulation", tri), None
        attempts.append(Attempt(label, tuple(order), tri.simplices, failures))
    return None, Diagnostic(tuple(attempts))


def solve(
    model: ModelMatrix,
    w: Sequence,
    *,
    max_triangulations: int = 32,
    seed: int = 0,
    threads: int = 1,
) -> CriticalPointSet:
    """All tropical critical points with multiplicities.

    Tries, in order: a basis inside the zero set of ``w``; the monomial curve
    and convex polygon closed forms; the non-face case for uniform matroids;
    then a search over perturbed regular triangulations.  Raises
    :class:`NoCertificate` (with a :class:`Diagnostic`) when no tried
    triangulation certifies.
    """
    w = check_data_vector(w, model.n)
    O = set(zero_set(w))
    if any(set(b) <= O for b in model.matroid.bases):
        return _zero_solution(model, "zero-set-contains-basis")

    curve = _as_curve(model)
    if curve is not None:
        perm, curve_model = curve
        res = solve_curve(curve_model, [w[i] for i in perm])
        return _unpermute(res, perm, model, "curve")

    edges = polygon_edges(model)
    if edges is not None:
        res = solve_polygon(model, w, edges)
        if res is not None:
            return res

    if model.matroid.is_uniform() and not is_face(model, O):
        return _zero_solution(model, "uniform-nonface")

    res, diagnostic = search_triangulations(model, w, max_triangulations, seed, threads)
    if res is None:
        raise NoCertificate(
            f"none of {len(diagnostic.attempts)} triangulations certified", diagnostic
        )
    return res
