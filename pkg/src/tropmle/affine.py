"""The tropical affine space ``L_{A,u}`` of a model and tropical data ``w``.

Points are tuples of Fractions.  The affine space is described through its
homogenization, a tropical linear space on ``n + 1`` coordinates whose
matroid is the free coextension of the dual of ``M(A)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import InvalidData
from .exact import as_rat
from .matroid import Matroid, ModelMatrix, to_mask

TropVector = tuple  # tuple[Fraction, ...]


def tvec(values: Iterable) -> TropVector:
    return tuple(as_rat(v) for v in values)


def zero_set(w: Sequence) -> tuple[int, ...]:
    """Indices where the tropical data attains its minimum 0."""
    return tuple(i for i, x in enumerate(w) if x == 0)


def check_data_vector(w: Iterable, n: int | None = None) -> TropVector:
    """Validate a tropical data vector: nonnegative with at least one zero."""
    w = tvec(w)
    if n is not None and len(w) != n:
        raise InvalidData(f"data vector has length {len(w)}, expected {n}")
    if any(x < 0 for x in w):
        raise InvalidData("tropical data must be nonnegative")
    if not any(x == 0 for x in w):
        raise InvalidData("tropical data must have at least one zero entry")
    return w


def _matroid_of(source: Union[Matroid, ModelMatrix]) -> Matroid:
    return source.matroid if isinstance(source, ModelMatrix) else source


def tau_operator(source: Union[Matroid, ModelMatrix], tau, x: Sequence) -> TropVector:
    """Map ``x`` to the vertex ``x^(tau)`` of the cone ``C_tau``.

    On ``tau`` each coordinate is lowered to the minimum over its exchange
    partners; off ``tau`` it becomes the maximum over the ``tau`` coordinates
    it can replace.
    """
    M = _matroid_of(source)
    tau = M._require_basis(tau)
    x = tvec(x)
    if len(x) != M.ground_size:
        raise InvalidData(f"vector has length {len(x)}, expected {M.ground_size}")
    masks = M._masks
    tmask = to_mask(tau)
    outside = [i for i in range(M.ground_size) if not tmask >> i & 1]
    out = list(x)
    for j in tau:
        base = tmask & ~(1 << j)
        v = x[j]
        for i in outside:
            if (base | (1 << i)) in masks and x[i] < v:
                v = x[i]
        out[j] = v
    for i in outside:
        partners = [
            out[j] for j in tau if ((tmask & ~(1 << j)) | (1 << i)) in masks
        ]
        if not partners:
            raise InvalidData(f"element {i} is a loop of the matroid")
        out[i] = max(partners)
    return tuple(out)


def pluecker(model: ModelMatrix, w: Sequence) -> dict[tuple[int, ...], Fraction]:
    """Tropical Pluecker vector of the homogenized affine space.

    Keys are the bases of the free coextension on ``range(n + 1)``; the
    homogenizing element is ``n``.
    """
    w = tvec(w)
    n = model.n
    MB = model.dual_matroid
    values = {}
    for gamma in model.homogenized_matroid.bases:
        if gamma[-1] == n:
            values[gamma] = Fraction(0)
            continue
        gmask = to_mask(gamma)
        values[gamma] = min(
            w[i] for i in gamma if (gmask & ~(1 << i)) in MB._masks
        )
    return values


@dataclass(frozen=True)
class Cone:
    """``apex + pos(e_i : i in free_directions)``, with ``free_directions`` the complement of ``tau``."""

    apex: TropVector
    tau: tuple[int, ...]
    free_directions: tuple[int, ...]

    def __contains__(self, x) -> bool:
        x = tvec(x)
        if len(x) != len(self.apex):
            return False
        free = set(self.free_directions)
        return all(
            x[i] >= a if i in free else x[i] == a for i, a in enumerate(self.apex)
        )

    def point(self, weights: dict[int, Fraction]) -> TropVector:
        """The point ``apex + sum(weights[i] * e_i)``; weights must be nonnegative."""
        out = list(self.apex)
        for i, lam in weights.items():
            if i not in self.free_directions or lam < 0:
                raise ValueError(f"invalid cone direction {i} with weight {lam}")
            out[i] += as_rat(lam)
        return tuple(out)


def vertex(model: ModelMatrix, w: Sequence, tau) -> Cone:
    tau = model.require_basis(tau)
    apex = tau_operator(model, tau, w)
    free = tuple(i for i in range(model.n) if i not in tau)
    return Cone(apex=apex, tau=tau, free_directions=free)


def contains_point(model: ModelMatrix, w: Sequence, x: Sequence, pi=None) -> bool:
    """Membership of ``x`` in ``L_{A,u}``.

    ``(x, 0)`` lies in the homogenized tropical linear space iff the bases
    maximizing ``<e_gamma, (x, 0)> - pi_gamma`` cover all ``n + 1`` elements.
    """
    x = tvec(x)
    if len(x) != model.n:
        raise InvalidData(f"point has length {len(x)}, expected {model.n}")
    if pi is None:
        pi = pluecker(model, w)
    xh = x + (Fraction(0),)
    best = None
    cover = 0
    for gamma, p in pi.items():
        s = sum(xh[i] for i in gamma) - p
        if best is None or s > best:
            best, cover = s, to_mask(gamma)
        elif s == best:
            cover |= to_mask(gamma)
    return cover == (1 << (model.n + 1)) - 1
