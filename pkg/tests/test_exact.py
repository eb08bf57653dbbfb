import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corevariety.exact import (ONE, ZERO, ConeDesc, LpStatus, Mat, PivotBudgetExceeded, kernel_basis, lp,
                               lp_standard, rank, relint_point, rref, to_rat)


def test_to_rat_parses_exact_decimals():
    assert to_rat("0.125") == to_rat("1/8")
    assert to_rat("1e-3") == to_rat(1) / 1000
    assert to_rat(0.1) == to_rat("1/10")
    assert to_rat(Fraction(-3, 6)) == to_rat("-1/2")
    with pytest.raises(TypeError):
        to_rat(True)


def test_rref_examples():
    I = Mat.identity(2)
    assert rref(I) == (I, [0, 1], 2)
    Z = Mat.zeros(3, 3)
    assert rref(Z) == (Z, [], 0)
    R, piv, r = rref(Mat([[1, 2], [2, 4]]))
    assert R == Mat([[1, 2], [0, 0]]) and piv == [0] and r == 1


def test_kernel_examples():
    K = kernel_basis(Mat([[1, 1]]))
    assert K.rows == 1 and K.row(0)[0] == -K.row(0)[1] != 0
    assert kernel_basis(Mat.identity(4)).rows == 0
    K = kernel_basis(Mat([[1, 2, 3]]))
    assert K.rows == 2 and rank(K) == 2
    assert all(sum(a * b for a, b in zip(k, (1, 2, 3))) == 0 for k in K)


def test_transpose_of_empty_shapes():
    assert Mat.zeros(0, 3).T.rows == 3
    assert Mat.zeros(3, 0).T.cols == 3


small = st.integers(-3, 3)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_rref_idempotent_and_rank_nullity(m, n, data):
    M = Mat([[data.draw(small) for _ in range(n)] for _ in range(m)])
    R, piv, r = rref(M)
    assert rref(R)[0] == R
    K = kernel_basis(M)
    assert r + K.rows == n
    for k in K:
        assert all(v == 0 for v in M.matvec(k))


def test_lp_examples():
    one = ConeDesc.build(1, ineq=[[1]])
    res = lp([1], one, [[1]], [1])
    assert res.status is LpStatus.OPTIMAL and res.point == (ONE,)
    assert lp([1], one, [[1]], [-1]).status is LpStatus.INFEASIBLE
    two = ConeDesc.build(2, ineq=[[1, 0], [0, 1]])
    res = lp([1, 1], two, [[1, 1]], [1])
    assert res.objective == 1 and res.point == (ONE, ZERO)


def test_lp_unbounded():
    res = lp([1], ConeDesc.build(1, ineq=[[1]]))
    assert res.status is LpStatus.UNBOUNDED


def test_lp_standard_drops_redundant_rows():
    res = lp_standard([[1, 1], [2, 2]], [1, 2], [0, 1])
    assert res.optimal and res.point == (ZERO, ONE)


def test_pivot_budget_is_enforced():
    with pytest.raises(PivotBudgetExceeded):
        lp_standard([[1, 1, 1]], [1], [1, 2, 3], budget=0)


def test_degenerate_lps_terminate_within_budget():
    # Many tied ratios: an anti-cycling rule is needed here.
    rng = random.Random(7)
    for _ in range(200):
        m, n = rng.randint(1, 4), rng.randint(2, 7)
        A = [[rng.choice([-1, 0, 0, 1, 2]) for _ in range(n)] for _ in range(m)]
        b = [rng.choice([0, 0, 1]) for _ in range(m)]
        c = [rng.choice([-1, 0, 1]) for _ in range(n)]
        res = lp_standard(A, b, c)
        if res.optimal:
            x = res.point
            assert all(v >= 0 for v in x)
            assert all(sum(a * v for a, v in zip(r, x)) == bb for r, bb in zip(A, b))
            assert sum(1 for v in x if v) <= m


def test_relint_examples():
    x, tight = relint_point(ConeDesc.build(1, ineq=[[1]]))
    assert x == (ONE,) and tight == frozenset()
    x, tight = relint_point(ConeDesc.build(1, ineq=[[1], [-1]]))
    assert x == (ZERO,) and tight == {0, 1}
    x, tight = relint_point(ConeDesc.build(2, eq=[[0, 1]], ineq=[[1, 0]]))
    assert x == (ONE, ZERO) and tight == frozenset()


def test_relint_needs_no_box():
    # A box on the coordinates would pin t_2 below 1 here and misreport row 1.
    x, tight = relint_point(ConeDesc.build(2, ineq=[[1, -100], [0, 1]]))
    assert tight == frozenset()
    assert x[0] - 100 * x[1] > 0 and x[1] > 0


def _random_cone_points(cone, rng, k=50):
    # conic combinations of optimal points of random objectives over a slice
    total = [sum(r[i] for r in cone.ineq) for i in range(cone.dim)]
    gens = []
    for _ in range(12):
        c = [rng.randint(-3, 3) for _ in range(cone.dim)]
        res = lp(c, cone, [total], [1])
        if res.optimal:
            gens.append(res.point)
    pts = []
    for _ in range(k):
        w = [to_rat(rng.randint(0, 3)) for _ in gens]
        pts.append(tuple(sum((a * g[i] for a, g in zip(w, gens)), ZERO) for i in range(cone.dim)))
    return pts


def test_relint_tight_rows_are_implicit_equalities():
    rng = random.Random(3)
    for _ in range(60):
        d = rng.randint(1, 4)
        eq = [[rng.randint(-2, 2) for _ in range(d)] for _ in range(rng.randint(0, 2))]
        ineq = [[rng.randint(-2, 2) for _ in range(d)] for _ in range(rng.randint(1, 6))]
        cone = ConeDesc.build(d, eq, ineq)
        x, tight = relint_point(cone)
        assert cone.contains(x)
        Bx = cone.ineq.matvec(x)
        for j, v in enumerate(Bx):
            assert (v == 0) == (j in tight)
        for y in _random_cone_points(cone, rng):
            assert cone.contains(y)
            By = cone.ineq.matvec(y)
            assert all(By[j] == 0 for j in tight)
