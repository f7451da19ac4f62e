import random
from fractions import Fraction

import pytest

from golden import BINARY, F, HIRZEBRUCH, PENTAGON, PRISM, S
from instances import random_curve, random_data, random_model
from tropmle.affine import contains_point
from tropmle.critical import (
    CriticalPoint,
    cone_intersection,
    merge_points,
    polygon_edges,
    satisfies_constant_condition,
    search_triangulations,
    solve,
    solve_by_triangulation,
    solve_curve,
    solve_polygon,
    uniform_constant,
)
from tropmle.errors import InvalidData, NoCertificate, NotACurve, NotAFace, NotUniform
from tropmle.matroid import ModelMatrix
from tropmle.subdivision import regular_triangulation

# every regular triangulation of this configuration fails certification for w
STUCK_A = ((1, 1, 1, 1), (4, 1, 4, 3), (5, 4, 2, 3))
STUCK_W = F(0, 5, 4, 2)


def e_O_triangulation(model, w):
    O = {i for i, x in enumerate(w) if x == 0}
    return regular_triangulation(model, [1 if i in O else 0 for i in range(model.n)])


class TestConeIntersection:
    def test_hirzebruch_256(self):
        p = cone_intersection(ModelMatrix(HIRZEBRUCH), F(6, 8, 7, 6, 4, 0), S(2, 5, 6))
        assert p.q == F(10, 6, 12, 8, 4, 0)
        assert p.multiplicity == 1 and p.witness_tau == S(2, 5, 6)

    def test_hirzebruch_126_misses(self):
        assert cone_intersection(ModelMatrix(HIRZEBRUCH), F(6, 8, 7, 6, 4, 0), S(1, 2, 6)) is None

    def test_merge(self):
        a = CriticalPoint(F(0, 0), 1, ((0,),))
        b = CriticalPoint(F(0, 0), 2, ((1,),))
        c = CriticalPoint(F(1, 0), 1, ((0,),))
        merged = merge_points([c, a, b])
        assert [(p.q, p.multiplicity) for p in merged] == [(F(0, 0), 3), (F(1, 0), 1)]
        assert merged[0].witnesses == ((0,), (1,))


class TestSolveCases:
    def test_zero_set_contains_basis(self):
        res = solve(ModelMatrix(HIRZEBRUCH), F(0, 0, 0, 5, 2, 3))
        assert res.method == "zero-set-contains-basis"
        assert res.as_dict() == {F(0, 0, 0, 0, 0, 0): 4}
        assert res.complete

    def test_uniform_nonface(self):
        # a triangle with an interior point; the zero set {1, 4} is not a face
        model = ModelMatrix([[1, 1, 1, 1], [0, 3, 0, 1], [0, 0, 3, 1]])
        res = solve(model, F(0, 3, 3, 0))
        assert res.method == "uniform-nonface"
        assert res.as_dict() == {F(0, 0, 0, 0): 9}

    def test_hirzebruch_triangulation(self):
        res = solve(ModelMatrix(HIRZEBRUCH), F(6, 8, 7, 6, 4, 0))
        assert res.method == "triangulation"
        assert res.as_dict() == {
            F(0, 0, 0, 0, 0, 0): 1,
            F(6, 6, 0, 0, 0, 0): 2,
            F(10, 6, 12, 8, 4, 0): 1,
        }

    def test_hirzebruch_fixed_triangulation(self):
        model = ModelMatrix(HIRZEBRUCH)
        tri = [S(1, 2, 3), S(2, 3, 4), S(2, 4, 5), S(2, 5, 6)]
        res = solve_by_triangulation(model, F(6, 8, 7, 6, 4, 0), tri)
        assert res.total_multiplicity == 4
        assert res.as_dict()[F(6, 6, 0, 0, 0, 0)] == 2

    def test_prism(self):
        res = solve(ModelMatrix(PRISM), F(0, 1, 1, 1, 2, 4))
        assert res.as_dict() == {
            F(0, 0, 1, 0, 0, 1): 1,
            F(0, 1, 0, 0, 1, 0): 1,
            F(0, 1, 1, 1, 2, 2): 1,
        }

    def test_threads_give_same_answer(self):
        model = ModelMatrix(PRISM)
        w = F(0, 1, 1, 1, 2, 4)
        assert solve(model, w, threads=4) == solve(model, w, threads=1)

    def test_invalid_data_vector(self):
        with pytest.raises(InvalidData):
            solve(ModelMatrix(BINARY), F(1, 2, 3, 4))


class TestNoCertificate:
    def test_frozen_instance(self):
        model = ModelMatrix(STUCK_A)
        with pytest.raises(NoCertificate) as info:
            solve(model, STUCK_W)
        diag = info.value.diagnostic
        assert diag.attempts
        for attempt in diag.attempts:
            assert attempt.failures
            assert sum(model.vol(t) for t in attempt.simplices) == model.volume
            for f in attempt.failures:
                assert f.violated
        assert info.value.category == "incomplete"

    def test_search_reports_none(self):
        res, diag = search_triangulations(ModelMatrix(STUCK_A), STUCK_W, max_triangulations=4)
        assert res is None and 1 <= len(diag.attempts) <= 4

    def test_uncertified_triangulation(self):
        model = ModelMatrix(HIRZEBRUCH)
        # 126 misses row(A) for this data vector
        tri = [S(1, 2, 6), S(2, 3, 4), S(2, 4, 5), S(2, 5, 6), S(1, 2, 3)]
        assert solve_by_triangulation(model, F(6, 8, 7, 6, 4, 0), tri) is None


class TestCurve:
    def test_example(self):
        res = solve_curve(ModelMatrix([[1, 1, 1], [0, 1, 3]]), F(0, 2, 5))
        assert res.as_dict() == {F(0, 0, 0): 2, F(0, 2, 6): 1}

    def test_right_end(self):
        res = solve_curve(ModelMatrix([[1, 1, 1], [0, 1, 3]]), F(3, 1, 0))
        assert res.as_dict() == {F(Fraction(3, 2), 1, 0): 2, F(0, 0, 0): 1}

    def test_interior_zero(self):
        res = solve_curve(ModelMatrix([[1, 1, 1], [0, 1, 3]]), F(2, 0, 2))
        assert res.as_dict() == {F(0, 0, 0): 3}

    def test_not_a_curve(self):
        with pytest.raises(NotACurve):
            solve_curve(ModelMatrix(BINARY), F(0, 1, 1, 1))
        with pytest.raises(NotACurve):
            solve_curve(ModelMatrix([[1, 1, 1], [0, 3, 1]]), F(0, 1, 1))

    def test_unsorted_curve_dispatch(self):
        model = ModelMatrix([[1, 1, 1], [3, 0, 1]])
        res = solve(model, F(5, 0, 2))
        assert res.method == "curve"
        assert res.as_dict() == {F(6, 0, 2): 1, F(0, 0, 0): 2}

    def test_matches_triangulation(self):
        rng = random.Random(31)
        for _ in range(40):
            model = random_curve(rng)
            perm = sorted(range(model.n), key=lambda i: model.A[1][i])
            model = model.permuted(perm)
            if len(set(model.A[1])) < model.n:
                continue
            w = random_data(rng, model.n, max_entry=9)
            closed = solve_curve(model, w)
            by_tri = solve_by_triangulation(model, w, e_O_triangulation(model, w))
            assert by_tri is not None
            assert closed.as_dict() == by_tri.as_dict()


class TestPolygon:
    def test_edges(self):
        edges = polygon_edges(ModelMatrix(PENTAGON))
        assert edges == {0: (1, 4), 1: (0, 2), 2: (1, 3), 3: (2, 4), 4: (0, 3)}
        assert polygon_edges(ModelMatrix(HIRZEBRUCH)) is None
        with pytest.raises(InvalidData):
            solve_polygon(ModelMatrix(HIRZEBRUCH), F(0, 1, 1, 1, 1, 1))

    def test_pentagon_single_zero(self):
        res = solve_polygon(ModelMatrix(PENTAGON), F(0, 4, 10, 6, 5))
        assert res.as_dict() == {F(0, 4, 13, 14, 5): 1, F(0, 0, 0, 0, 0): 4}

    def test_pentagon_edge_zero(self):
        for w3, w4, w5 in [(7, 3, 5), (1, 2, 3), (Fraction(5, 2), 4, 4)]:
            m = min(w3, w4, w5)
            res = solve(ModelMatrix(PENTAGON), F(0, 0, w3, w4, w5))
            assert res.as_dict() == {F(0, 0, m, 2 * m, m): 1, F(0, 0, 0, 0, 0): 4}

    def test_agrees_with_search(self):
        rng = random.Random(41)
        hexagon = ModelMatrix([[1] * 6, [0, 2, 3, 3, 1, 0], [0, 0, 1, 3, 3, 1]])
        assert polygon_edges(hexagon) is not None
        for model in [ModelMatrix(PENTAGON), ModelMatrix(BINARY), hexagon]:
            for _ in range(20):
                w = random_data(rng, model.n, max_entry=6)
                closed = solve_polygon(model, w)
                if closed is None:
                    continue
                res, _ = search_triangulations(model, w)
                if res is not None:
                    assert res.as_dict() == closed.as_dict()


class TestUniformConstant:
    def test_pentagon(self):
        const = uniform_constant(ModelMatrix(PENTAGON), S(1))
        assert const.value == 3
        assert const.triangulation.simplices == (S(1, 2, 5), S(2, 3, 5), S(3, 4, 5))

    def test_binary(self):
        assert uniform_constant(ModelMatrix(BINARY), S(1)).value == 2

    def test_errors(self):
        with pytest.raises(NotUniform):
            uniform_constant(ModelMatrix(HIRZEBRUCH), S(1))
        with pytest.raises(NotAFace):
            uniform_constant(ModelMatrix(PENTAGON), S(1, 3))

    def test_condition(self):
        assert satisfies_constant_condition(F(0, 4, 10, 6, 5), 3, 3)
        assert not satisfies_constant_condition(F(0, 4, 13, 14, 5), 3, 1)
        assert satisfies_constant_condition(F(0, 0, 0), 2, None)


class TestInvariants:
    def test_column_permutation(self):
        rng = random.Random(51)
        checked = 0
        while checked < 30:
            model = random_model(rng, max_n=6)
            w = random_data(rng, model.n)
            try:
                base = solve(model, w)
            except NoCertificate:
                continue
            perm = list(range(model.n))
            rng.shuffle(perm)
            try:
                moved = solve(model.permuted(perm), [w[p] for p in perm])
            except NoCertificate:
                continue
            expected = {tuple(q[p] for p in perm): m for q, m in base.as_dict().items()}
            assert moved.as_dict() == expected
            checked += 1

    def test_points_lie_in_affine_space(self):
        for A, w in [(HIRZEBRUCH, F(6, 8, 7, 6, 4, 0)), (PRISM, F(0, 1, 1, 1, 2, 4)),
                     (PENTAGON, F(0, 4, 10, 6, 5))]:
            model = ModelMatrix(A)
            for p in solve(model, w):
                assert contains_point(model, w, p.q)
