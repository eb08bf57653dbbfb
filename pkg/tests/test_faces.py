import random

import pytest

import oracles
from corevariety.catalog import hidden_atom, two_generator_faces
from corevariety.corevar import decide
from corevariety.errors import NoMeasure
from corevariety.exact import ConeDesc
from corevariety.faces import (Region, classify, exposed_by_dual_face, extreme_rays, face_of, finite_fastpath,
                               in_relint, is_exposed, member)
from corevariety.generators import random_instance
from corevariety.space import Functional, combination, from_matrix, monomial_grid, point_evaluation


def _labels(view):
    return set(view.labels)


def test_strictly_positive_functional_spans_the_whole_cone():
    s = monomial_grid(1, 2, [-1, 0, 1, 2])
    L = combination(s, {lab: 1 for lab in s.labels})
    f = face_of(L)
    assert f.core == s.full_view() and f.exposed
    assert extreme_rays(f.dual_face) == []


def test_two_generator_faces():
    s, L, J = two_generator_faces()
    nonzero = set(s.labels) - {"0"}
    assert _labels(face_of(L + J).core) == set(s.labels)
    assert _labels(face_of(L).core) == nonzero
    assert _labels(face_of(J).core) == {"0"}
    assert not face_of(Functional(s, [0, 0])).core
    # the dual face of F_L is generated by f, that of F_J by g
    assert extreme_rays(face_of(L).dual_face) == [(1, 0)]
    assert extreme_rays(face_of(J).dual_face) == [(0, 1)]


def test_point_evaluation_on_quadratics_is_an_extreme_ray():
    s = monomial_grid(1, 2, [-1, 0, 1, 2])
    for lab in s.labels:
        f = face_of(point_evaluation(s, lab))
        assert _labels(f.core) == {lab}
        # the generators of the dual face cut out exactly this point
        cols = oracles.columns_of(s)
        common = set(range(s.npoints))
        for r in extreme_rays(f.dual_face):
            common &= oracles.zeros_of(cols, [oracles.F(v) for v in r])
        assert common == {s.ground.index(lab)}


def test_face_requires_a_measure():
    s = monomial_grid(1, 2, [-1, 0, 1])
    bad = Functional(s, [0, 1, 3])
    with pytest.raises(NoMeasure):
        face_of(bad)
    with pytest.raises(NoMeasure):
        is_exposed(bad)
    with pytest.raises(NoMeasure):
        in_relint(bad, point_evaluation(s, "0"))


def test_member_examples():
    s, L = hidden_atom()
    f = face_of(L)
    assert member(L, f)
    assert not member(Functional(s, [0, 1]) - Functional(s, [1, 0]), f)
    for lab in s.labels:
        assert member(point_evaluation(s, lab), f) == (lab != "0")


def test_in_relint_examples():
    s, L, J = two_generator_faces()
    assert in_relint(2 * L, L)
    assert not in_relint(L + J, L)
    assert in_relint(L + J, 3 * (L + J))
    s2 = monomial_grid(1, 2, [-1, 0, 1])
    a = combination(s2, {"-1": 1, "0": 1, "1": 1})
    b = combination(s2, {"-1": 2, "0": 1, "1": 5})
    assert in_relint(a, b)


def test_exposed_examples():
    s, L, J = two_generator_faces()
    for m in (L, J, L + J):
        assert is_exposed(m) and exposed_by_dual_face(m)
    # {1} = Z((x - 1)^2) on a quadratic grid
    q = monomial_grid(1, 2, [-1, 0, 1, 2])
    assert is_exposed(point_evaluation(q, "1"))


def _brute_exposed(system, core):
    # P from its extreme rays; the face cut out by its dual face is the common
    # zero set of the rays vanishing on the core
    cols = oracles.columns_of(system)
    rays = [r for r in oracles.extreme_rays_of_P(cols) if core <= oracles.zeros_of(cols, r)]
    cut = set(range(len(cols)))
    for r in rays:
        cut &= oracles.zeros_of(cols, r)
    return cut == core


def test_exposed_agrees_with_ray_enumeration():
    rng = random.Random(21)
    checked = 0
    for _ in range(150):
        s, L = random_instance(rng, max_points=6, max_dim=3, kind="measure")
        d = decide(L)
        if not d.has_measure:
            continue
        core = set(d.core.active)
        assert is_exposed(L, d) == _brute_exposed(s, core) == exposed_by_dual_face(L, d)
        checked += 1
    assert checked > 100


def test_face_axiom_random():
    rng = random.Random(8)
    for _ in range(80):
        s, L = random_instance(rng, max_points=6, max_dim=3, kind="measure")
        f = face_of(L)
        inside = [j for j in range(s.npoints) if j in f.core.active]
        for _ in range(3):
            k = min(2, s.npoints)
            a = combination(s, {s.labels[j]: rng.randint(1, 3) for j in rng.sample(range(s.npoints), k)})
            b = combination(s, {s.labels[j]: rng.randint(1, 3) for j in rng.sample(range(s.npoints), k)})
            if member(a + b, f):
                assert member(a, f) and member(b, f)
        if inside:
            a = point_evaluation(s, s.labels[inside[0]])
            assert member(a, f)


def test_relint_partition():
    rng = random.Random(3)
    s = monomial_grid(1, 2, [-1, 0, 1, 2])
    classes = {}
    for _ in range(60):
        support = rng.sample(s.labels, rng.randint(1, 4))
        m = combination(s, {lab: rng.randint(1, 3) for lab in support})
        core = frozenset(decide(m).core.active)
        classes.setdefault(core, []).append(m)
    reps = {c: ms[0] for c, ms in classes.items()}
    for c, ms in classes.items():
        for m in ms:
            assert [k for k, r in reps.items() if in_relint(m, r)] == [c]


def test_fastpath_regions():
    s = monomial_grid(1, 2, [-1, 0, 1, 2])
    L = combination(s, {lab: 1 for lab in s.labels})
    r = finite_fastpath(L, s.full_view())
    assert r.region is Region.INTERIOR and r.predicted == s.full_view()
    h, H = hidden_atom()
    r = finite_fastpath(H, h.full_view())
    assert r.region is Region.BOUNDARY and _labels(r.predicted) == set(h.labels) - {"0"}
    r = finite_fastpath(Functional(s, [0, 1, 3]), s.full_view())
    assert r.region is Region.OUTSIDE and r.predicted is not None and not r.predicted
    r = finite_fastpath(-L, s.full_view())
    assert r.sign == -1 and r.region is Region.INTERIOR


def test_fastpath_without_positive_function_makes_no_outside_claim():
    s = from_matrix(["a", "b", "c"], [[1, 2, 0], [1, -1, 0]])
    L = Functional(s, [1, -1])
    r = finite_fastpath(L, s.full_view())
    if r.region is Region.OUTSIDE:
        assert r.predicted is None


def test_classify_empty_view():
    s = monomial_grid(1, 1, [0, 1])
    empty = s.view([])
    assert classify(Functional(s, [0, 0]), empty) is Region.INTERIOR
    assert classify(Functional(s, [1, 0]), empty) is Region.OUTSIDE


def test_fastpath_agrees_with_iteration_on_random_instances():
    from corevariety.corevar import core_variety

    rng = random.Random(17)
    for _ in range(150):
        s, L = random_instance(rng)
        tr = core_variety(L, fastpath=True)
        assert tr.fastpath
        for r in tr.fastpath:
            if r.predicted is not None:
                assert r.predicted == tr.core


def test_extreme_rays_of_orthant_and_slice():
    orth = ConeDesc.build(3, ineq=[[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert extreme_rays(orth) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    sliced = ConeDesc.build(3, eq=[[0, 0, 1]], ineq=[[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert extreme_rays(sliced) == [(0, 1, 0), (1, 0, 0)]


def test_extreme_rays_match_oracle():
    rng = random.Random(6)
    for _ in range(40):
        s, _ = random_instance(rng, max_points=6, max_dim=3)
        cone = ConeDesc(s.dim, ConeDesc.build(s.dim).eq, s.columns)
        if oracles.rank_of(oracles.columns_of(s)) < s.dim:
            continue
        mine = {tuple(oracles.F(v) for v in r) for r in extreme_rays(cone)}
        ref = oracles.extreme_rays_of_P(oracles.columns_of(s))
        assert len(mine) == len(ref)
        for r in ref:
            assert any(oracles._parallel(r, list(m)) for m in mine)
