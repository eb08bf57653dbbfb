import random

import pytest

from corevariety.catalog import hidden_atom, indicator_at_zero
from corevariety.errors import DependentBasis, UnknownLabel
from corevariety.exact import Mat, to_rat
from corevariety.space import (Functional, from_matrix, induced_functional, monomial_grid, point_evaluation,
                               quotient, quotient_dim, restrict, vanishing_subspace)


def test_from_matrix():
    s = from_matrix(["a", "b"], [[1, 1], [1, -1]])
    assert s.dim == 2 and s.npoints == 2
    with pytest.raises(DependentBasis):
        from_matrix(["a", "b"], [[1, 1], [2, 2]])
    with pytest.raises(ValueError):
        from_matrix(["a", "a"], [[1, 1]])


def test_indicator_system_has_dimension_two():
    assert indicator_at_zero().dim == 2


def test_monomial_grid_examples():
    s = monomial_grid(1, 2, [-1, 0, 1])
    assert s.basis_names == ("1", "x", "x^2")
    assert s.evals == Mat([[1, 1, 1], [-1, 0, 1], [1, 0, 1]])
    with pytest.raises(DependentBasis):
        monomial_grid(1, 2, [0, 1])
    s = monomial_grid(2, 1, [0, 1])
    assert s.basis_names == ("1", "x", "y") and s.npoints == 4 and quotient_dim(s.full_view()) == 3


def test_monomial_grid_matches_repeated_multiplication():
    s = monomial_grid(2, 3, [["-1", "1/2", "2", "3"], ["0", "1", "-2", "1/3"]])
    for j, (x, y) in enumerate(s.ground.coords):
        for i, name in enumerate(s.basis_names):
            v = to_rat(1)
            for part in name.split("*"):
                if part == "1":
                    continue
                var, _, e = part.partition("^")
                for _ in range(int(e or 1)):
                    v *= x if var == "x" else y
            assert s.evals[i, j] == v


def test_point_evaluation():
    s = monomial_grid(1, 2, [-1, 0, 1])
    assert point_evaluation(s, "0").coeffs == (1, 0, 0)
    assert point_evaluation(s, "1").coeffs == (1, 1, 1)
    with pytest.raises(UnknownLabel):
        point_evaluation(s, "7")


def test_point_evaluation_consistent_with_columns():
    rng = random.Random(0)
    s = monomial_grid(1, 3, [-2, -1, 0, 1, 2])
    for _ in range(20):
        c = [to_rat(rng.randint(-4, 4)) for _ in range(s.dim)]
        vals = s.values(c)
        for j, lab in enumerate(s.labels):
            assert point_evaluation(s, lab)(c) == vals[j]


def test_restrict():
    s = indicator_at_zero()
    assert restrict(s, range(s.npoints))[1] == s.dim
    assert restrict(s, [])[1] == 0
    nonzero = [j for j, lab in enumerate(s.labels) if lab != "0"]
    assert restrict(s, nonzero)[1] == 1


def test_restrict_is_monotone():
    rng = random.Random(1)
    s = monomial_grid(2, 2, [-1, 0, 1])
    for _ in range(50):
        a = set(rng.sample(range(s.npoints), rng.randint(0, s.npoints)))
        b = a | set(rng.sample(range(s.npoints), rng.randint(0, 3)))
        assert restrict(s, a)[1] <= restrict(s, b)[1]


def test_quotient_and_induced_functional():
    s, L = hidden_atom()
    view = s.view([lab for lab in s.labels if lab != "0"])
    W = vanishing_subspace(view)
    assert W.rows == 1 and all(L(w) == 0 for w in W)
    q, rows = quotient(view)
    assert q.dim == 1
    Lq = induced_functional(L, view)
    assert Lq.coeffs == (2,)
    with pytest.raises(ValueError):
        induced_functional(Functional(s, [1, 0]), view)


def test_functional_arithmetic():
    s = monomial_grid(1, 1, [0, 1])
    a, b = point_evaluation(s, "0"), point_evaluation(s, "1")
    assert (a + b).coeffs == (2, 1)
    assert (2 * a - b).coeffs == (1, -1)
    assert (-a).coeffs == (-1, 0)
