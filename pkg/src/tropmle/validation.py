"""Input checking for the estimator API.

These mirror ``sklearn.utils.check_array`` but keep values exact: integers
stay ``int`` and rationals become ``Fraction``.  Floats are rejected.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InvalidData
from .exact import as_rat
from .matroid import ModelMatrix


def _rows(X):
    if hasattr(X, "tolist"):
        X = X.tolist()
    return [list(r.tolist() if hasattr(r, "tolist") else r) for r in X]


def check_model(A) -> ModelMatrix:
    if isinstance(A, ModelMatrix):
        return A
    if A is None:
        raise InvalidData("no model matrix given")
    return ModelMatrix(_rows(A))


def check_rational_array(X, n_features: int | None = None) -> tuple[tuple[Fraction, ...], ...]:
    """Coerce ``X`` to a 2-D tuple of Fractions; a 1-D input becomes one row."""
    if hasattr(X, "tolist"):
        X = X.tolist()
    X = list(X)
    if not X:
        raise InvalidData("empty input")
    if not isinstance(X[0], (list, tuple)) and not hasattr(X[0], "tolist"):
        X = [X]
    try:
        out = tuple(tuple(as_rat(v) for v in row) for row in _rows(X))
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidData(f"non-rational entry: {exc}") from exc
    widths = {len(r) for r in out}
    if len(widths) != 1:
        raise InvalidData("rows have different lengths")
    if n_features is not None and widths != {n_features}:
        raise InvalidData(f"expected {n_features} features, got {widths.pop()}")
    return out


def check_subset(indices, n: int) -> tuple[int, ...]:
    out = tuple(sorted(int(i) for i in indices))
    if len(set(out)) != len(out) or any(i < 0 or i >= n for i in out):
        raise InvalidData(f"invalid index set {out} for ground set of size {n}")
    return out
