"""scikit-learn style wrappers around the functional core.

The model matrix is a constructor parameter; samples are tropical data
vectors (rows of ``X``).  Hyperparameters are plain attributes so
``get_params``/``set_params``/``clone`` work as usual, and fitted state ends
in an underscore.
"""

from __future__ import annotations

from fractions import Fraction

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .affine import tau_operator
from .critical import CriticalPointSet, solve
from .errors import InvalidData
from .tips import ScalingModel, reparametrize, tips_run
from .validation import check_model, check_rational_array, check_subset


class TropicalToricMLE(BaseEstimator):
    """Tropical critical points of a toric model for each data vector.

    Parameters
    ----------
    A : array-like of int, shape (k, n)
        Model matrix; full row rank with the all-ones vector in its row span.
    max_triangulations : int
        Budget for the triangulation search when no closed form applies.
    random_state : int
        Seed for the alternative perturbation orders of that search.
    n_jobs : int
        Worker threads for per-simplex cone intersections.
    """

    def __init__(self, A=None, max_triangulations=32, random_state=0, n_jobs=1):
        self.A = A
        self.max_triangulations = max_triangulations
        self.random_state = random_state
        self.n_jobs = n_jobs

    def _solve(self, X) -> list[CriticalPointSet]:
        X = check_rational_array(X, self.model_.n)
        return [
            solve(
                self.model_,
                w,
                max_triangulations=self.max_triangulations,
                seed=self.random_state,
                threads=self.n_jobs,
            )
            for w in X
        ]

    def fit(self, X, y=None):
        self.model_ = check_model(self.A)
        self.n_features_in_ = self.model_.n
        self.volume_ = self.model_.volume
        self.critical_points_ = self._solve(X)
        return self

    def predict(self, X) -> list[CriticalPointSet]:
        check_is_fitted(self, "model_")
        return self._solve(X)

    def fit_predict(self, X, y=None) -> list[CriticalPointSet]:
        return self.fit(X).critical_points_


class TauOperator(TransformerMixin, BaseEstimator):
    """Row-wise tau-operator ``x -> x^(tau)`` for a basis ``tau`` of ``M(A)``."""

    def __init__(self, A=None, tau=None):
        self.A = A
        self.tau = tau

    def fit(self, X=None, y=None):
        self.model_ = check_model(self.A)
        self.tau_ = self.model_.require_basis(check_subset(self.tau, self.model_.n))
        self.n_features_in_ = self.model_.n
        return self

    def transform(self, X):
        check_is_fitted(self, "tau_")
        X = check_rational_array(X, self.n_features_in_)
        return [tau_operator(self.model_, self.tau_, x) for x in X]


class TropicalIPS(BaseEstimator):
    """Tropical iterative proportional scaling on one data vector.

    ``scaling`` is an explicit nonnegative constant-column-sum matrix; when
    omitted, ``A`` is reparametrized deterministically.
    """

    def __init__(self, A=None, scaling=None, q0=None, max_iter=1000,
                 tol=Fraction(1, 10**12), check_critical=True):
        self.A = A
        self.scaling = scaling
        self.q0 = q0
        self.max_iter = max_iter
        self.tol = tol
        self.check_critical = check_critical

    def fit(self, X, y=None):
        X = check_rational_array(X)
        if len(X) != 1:
            raise InvalidData(f"tIPS runs on one data vector, got {len(X)}")
        w = X[0]
        if self.scaling is not None:
            self.scaling_ = ScalingModel.from_matrix(self.scaling)
        else:
            self.scaling_ = reparametrize(check_model(self.A))
        model = check_model(self.A) if self.A is not None else None
        self.report_ = tips_run(
            self.scaling_, w, self.q0, self.max_iter, self.tol,
            model=model, check_critical=self.check_critical,
        )
        self.limit_ = self.report_.limit
        self.n_iter_ = self.report_.iterations
        self.status_ = self.report_.status
        self.is_critical_ = self.report_.critical
        return self

    def predict(self, X=None):
        check_is_fitted(self, "limit_")
        return self.limit_
