import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from golden import BINARY, F, HIRZEBRUCH, PRISM, S, SKEW_PENTAGON
from instances import random_data, random_model, random_vector
from tropmle.affine import (
    Cone,
    check_data_vector,
    contains_point,
    pluecker,
    tau_operator,
    vertex,
    zero_set,
)
from tropmle.errors import InvalidData, NotABasis
from tropmle.matroid import Matroid, ModelMatrix

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def model_basis_vectors(seed, count=2):
    rng = random.Random(seed)
    model = random_model(rng)
    tau = rng.choice(model.matroid.bases)
    return model, tau, [random_vector(rng, model.n) for _ in range(count)], rng


class TestVertexExamples:
    def test_hirzebruch(self):
        model = ModelMatrix(HIRZEBRUCH)
        w = F(6, 8, 7, 6, 4, 0)
        assert tau_operator(model, S(2, 5, 6), w) == F(6, 6, 4, 4, 4, 0)
        assert tau_operator(model, S(1, 2, 6), w) == F(4, 4, 4, 4, 4, 0)

    def test_skew_pentagon_identifications(self):
        model = ModelMatrix(SKEW_PENTAGON)
        w = F(0, 1, 2, 3, 4)
        for tau in [S(1, 2, 5), S(1, 4, 5), S(1, 3, 4), S(1, 2, 3)]:
            assert tau_operator(model, tau, w) == F(0, 1, 2, 1, 2)
        for tau in [S(2, 3, 5), S(3, 4, 5)]:
            assert tau_operator(model, tau, w) == F(0, 1, 0, 1, 0)
        for tau in [S(2, 4, 5), S(2, 3, 4)]:
            assert tau_operator(model, tau, w) == F(0, 0, 2, 0, 2)

    def test_prism(self):
        model = ModelMatrix(PRISM)
        w = F(0, 1, 1, 1, 2, 4)
        assert tau_operator(model, S(3, 4, 5, 6), w) == F(0, 1, 0, 0, 1, 0)
        assert tau_operator(model, S(2, 3, 4, 5), w) == F(0, 0, 1, 0, 0, 1)
        assert tau_operator(model, S(1, 2, 3, 4), w) == F(0, 1, 1, 1, 1, 1)

    def test_zero_apex(self):
        model = ModelMatrix(BINARY)
        assert tau_operator(model, S(1, 2, 3), F(0, 0, 0, 5)) == F(0, 0, 0, 0)

    def test_vertex_cone(self):
        cone = vertex(ModelMatrix(HIRZEBRUCH), F(6, 8, 7, 6, 4, 0), S(2, 5, 6))
        assert cone.apex == F(6, 6, 4, 4, 4, 0)
        assert cone.free_directions == S(1, 3, 4)
        assert F(10, 6, 12, 8, 4, 0) in cone
        assert F(10, 6, 12, 8, 4, 1) not in cone
        assert cone.point({0: 4, 2: 8, 3: 4}) == F(10, 6, 12, 8, 4, 0)
        with pytest.raises(ValueError):
            cone.point({1: 1})

    def test_errors(self):
        model = ModelMatrix(HIRZEBRUCH)
        with pytest.raises(NotABasis):
            tau_operator(model, S(3, 4, 5), F(0, 0, 0, 0, 0, 0))
        with pytest.raises(InvalidData):
            tau_operator(model, S(1, 2, 3), F(0, 0, 0))
        loopy = Matroid(3, 1, ((0,), (1,)))
        with pytest.raises(InvalidData):
            tau_operator(loopy, (0,), F(0, 0, 0))

    def test_check_data_vector(self):
        assert check_data_vector(["0", "1/2"]) == F(0, Fraction(1, 2))
        assert zero_set(F(0, 2, 0)) == (0, 2)
        with pytest.raises(InvalidData):
            check_data_vector([1, 2])
        with pytest.raises(InvalidData):
            check_data_vector([0, -1])


class TestTauOperatorProperties:
    @settings(max_examples=60, deadline=None, derandomize=True)
    @given(seeds)
    def test_idempotent(self, seed):
        model, tau, (x,), _ = model_basis_vectors(seed, 1)
        y = tau_operator(model, tau, x)
        assert tau_operator(model, tau, y) == y

    @settings(max_examples=60, deadline=None, derandomize=True)
    @given(seeds, st.fractions(min_value=-10, max_value=10, max_denominator=7))
    def test_shift_invariant(self, seed, c):
        model, tau, (x,), _ = model_basis_vectors(seed, 1)
        shifted = tau_operator(model, tau, [v + c for v in x])
        assert shifted == tuple(v + c for v in tau_operator(model, tau, x))

    @settings(max_examples=60, deadline=None, derandomize=True)
    @given(seeds)
    def test_contractive(self, seed):
        model, tau, (x, y), _ = model_basis_vectors(seed)
        tx, ty = tau_operator(model, tau, x), tau_operator(model, tau, y)
        assert max(abs(a - b) for a, b in zip(tx, ty)) <= max(abs(a - b) for a, b in zip(x, y))

    @settings(max_examples=60, deadline=None, derandomize=True)
    @given(seeds, st.fractions(min_value=0, max_value=5, max_denominator=5))
    def test_positively_homogeneous_and_monotone(self, seed, lam):
        model, tau, (x, d), _ = model_basis_vectors(seed)
        tx = tau_operator(model, tau, x)
        assert tau_operator(model, tau, [lam * v for v in x]) == tuple(lam * v for v in tx)
        y = [a + abs(b) for a, b in zip(x, d)]
        assert all(a <= b for a, b in zip(tx, tau_operator(model, tau, y)))

    @settings(max_examples=60, deadline=None, derandomize=True)
    @given(seeds)
    def test_cone_collapses_to_apex(self, seed):
        model, tau, (x, d), _ = model_basis_vectors(seed)
        cone = vertex(model, x, tau)
        p = cone.point({i: abs(d[i]) for i in cone.free_directions})
        assert tau_operator(model, tau, p) == cone.apex


class TestPluecker:
    def test_binary_values(self):
        pi = pluecker(ModelMatrix(BINARY), F(0, 2, 1, 4))
        assert pi[S(2, 3)] == 1 and pi[S(2, 4)] == 2 and pi[S(3, 4)] == 1
        assert pi[S(1, 2)] == 0
        assert all(v == 0 for g, v in pi.items() if 4 in g)

    def test_keys_are_homogenized_bases(self):
        model = ModelMatrix(HIRZEBRUCH)
        assert tuple(pluecker(model, F(6, 8, 7, 6, 4, 0))) == model.homogenized_matroid.bases

    def test_apex_matches_pluecker_route(self):
        rng = random.Random(21)
        for _ in range(60):
            model = random_model(rng)
            w = random_data(rng, model.n)
            pi = pluecker(model, w)
            for tau in model.matroid.bases:
                sigma = tuple(i for i in range(model.n) if i not in tau)
                apex = tau_operator(model, tau, w)
                for j in tau:
                    assert apex[j] == pi[tuple(sorted(sigma + (j,)))]


class TestMembership:
    def test_binary_points(self):
        model = ModelMatrix(BINARY)
        w = F(0, 2, 1, 4)
        assert contains_point(model, w, F(0, 0, 0, 0))
        assert contains_point(model, w, F(0, 2, 1, 3))
        assert contains_point(model, w, F(0, 2, 1, 100))
        assert not contains_point(model, w, F(1, 1, 1, 1))
        assert not contains_point(model, w, F(0, 1, 5, 2))

    def test_skew_pentagon_hidden_vertex(self):
        # the origin is a vertex of L even though no w^(tau) equals it
        model = ModelMatrix(SKEW_PENTAGON)
        w = F(0, 1, 2, 3, 4)
        assert contains_point(model, w, F(0, 0, 0, 0, 0))
        apexes = {tau_operator(model, t, w) for t in model.matroid.bases}
        assert F(0, 0, 0, 0, 0) not in apexes

    def test_length_checked(self):
        with pytest.raises(InvalidData):
            contains_point(ModelMatrix(BINARY), F(0, 0, 0, 0), F(0, 0))

    @settings(max_examples=60, deadline=None, derandomize=True)
    @given(seeds)
    def test_cones_lie_in_affine_space(self, seed):
        rng = random.Random(seed)
        model = random_model(rng, max_n=6)
        w = random_data(rng, model.n, rational=True)
        pi = pluecker(model, w)
        tau = rng.choice(model.matroid.bases)
        cone = vertex(model, w, tau)
        assert contains_point(model, w, cone.apex, pi)
        far = cone.point({i: Fraction(rng.randint(0, 9), 2) for i in cone.free_directions})
        assert contains_point(model, w, far, pi)
