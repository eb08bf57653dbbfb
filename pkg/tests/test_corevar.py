import random

import pytest

import oracles
from corevariety.catalog import hidden_atom, weak_positivity
from corevariety.corevar import (Hypothesis, Status, check_hypotheses, core_variety, decide, make_staircase,
                                 step, strictly_positive_function)
from corevariety.errors import StaircaseCertificationError
from corevariety.exact import ZERO
from corevariety.generators import random_instance
from corevariety.space import Functional, combination, from_matrix, monomial_grid, point_evaluation


def _labels(view):
    return set(view.labels)


def test_step_removes_the_hidden_atom():
    s, L = hidden_atom()
    nxt, cert = step(L, s.full_view())
    assert _labels(nxt) == set(s.labels) - {"0"}
    assert cert.removed == {s.ground.index("0")}


def test_step_keeps_everything_for_strictly_positive_functional():
    s = monomial_grid(1, 2, [-1, 0, 1])
    L = combination(s, {lab: 1 for lab in s.labels})
    nxt, cert = step(L, s.full_view())
    assert nxt == s.full_view() and not cert.removed and not any(cert.witness)


def test_step_on_all_functions_of_three_points():
    s = from_matrix(["a", "b", "c"], [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    L = combination(s, {"a": 1, "b": 1})
    nxt, cert = step(L, s.full_view())
    assert _labels(nxt) == {"a", "b"}
    assert cert.removed == {2} and cert.witness == (0, 0, 1)


def test_zero_functional_with_positive_function_empties_in_one_step():
    s = monomial_grid(1, 2, [-1, 0, 1])
    tr = core_variety(Functional(s, [0, 0, 0]))
    assert not tr.core and tr.stabilized_at == 1


def test_strictly_positive_functional_has_full_core():
    s = monomial_grid(1, 2, [-2, -1, 0, 1, 2])
    L = combination(s, {lab: k + 1 for k, lab in enumerate(s.labels)})
    assert core_variety(L).core == s.full_view()


def test_constants_give_standing():
    s = monomial_grid(1, 2, [-1, 0, 1])
    L = point_evaluation(s, "1")
    h = check_hypotheses(L, core_variety(L))
    assert h.hypothesis is Hypothesis.STANDING and not h.sign_flip
    assert all(v > 0 for v in s.values(h.rho))


def test_weak_hypothesis_instance():
    s, L = weak_positivity()
    rho, zeros = strictly_positive_function(s)
    assert zeros
    d = decide(L)
    assert d.hypothesis is Hypothesis.WEAK and d.status is Status.HAS_MEASURE
    assert _labels(d.core) == set(s.labels) - {"0"}
    vals = s.values(d.rho)
    assert all(vals[j] >= 0 for j in d.core.active) and any(vals[j] for j in d.core.active) and L(d.rho) >= 0


def test_common_zero_rules_out_standing():
    s = from_matrix(["a", "b", "c"], [[1, 2, 0], [1, -1, 0]])
    _, zeros = strictly_positive_function(s)
    assert zeros == {2}


def test_decide_examples():
    s = monomial_grid(1, 2, [-1, 0, 1, 2])
    L = combination(s, {"-1": 1, "2": 1})
    d = decide(L)
    assert d.status is Status.HAS_MEASURE and d.has_measure
    assert _labels(d.core) == {"-1", "2"}
    L = Functional(s, [0, 1, 3])
    d = decide(L)
    assert d.status is Status.NO_MEASURE and not d.core
    s, L = hidden_atom()
    d = decide(L)
    assert d.status is Status.HAS_MEASURE and _labels(d.core) == set(s.labels) - {"0"}


def test_sign_flip_is_recorded():
    s = monomial_grid(1, 2, [-1, 0, 1])
    L = -point_evaluation(s, "0")
    d = decide(L)
    assert d.status is Status.HAS_MEASURE and d.sign_flipped and not d.has_measure
    assert d.functional == -L
    d2 = decide(L, flip_allowed=False)
    assert d2.status is Status.NO_MEASURE and not d2.sign_flipped
    assert d.trace.chain == decide(-L).trace.chain


def test_zero_functional_is_represented_by_zero_measure():
    s = monomial_grid(1, 1, [0, 1])
    d = decide(Functional(s, [0, 0]))
    assert d.has_measure and not d.core


@pytest.mark.parametrize("seed", range(4))
def test_trace_invariants_on_random_instances(seed):
    rng = random.Random(seed)
    for _ in range(150):
        s, L = random_instance(rng)
        tr = core_variety(L)
        chain = tr.chain
        assert chain[0] == s.full_view()
        assert tr.stabilized_at <= s.dim - 1
        for i, c in enumerate(tr.certificates):
            cur, nxt = chain[i], chain[i + 1]
            assert nxt.issubset(cur)
            assert c.removed == set(cur.active) - set(nxt.active)
            assert L(c.witness) == 0
            vals = s.values(c.witness)
            for j in cur.active:
                assert vals[j] >= 0
                assert (vals[j] > 0) == (j in c.removed)
            if not c.removed:
                assert all(w == ZERO for w in c.witness)
        if tr.core:
            assert chain[-1] == chain[-2]
            nxt, cert = step(L, tr.core)
            assert nxt == tr.core and not cert.removed


@pytest.mark.parametrize("seed", range(3))
def test_decision_matches_vertex_oracle(seed):
    rng = random.Random(100 + seed)
    for _ in range(120):
        s, L = random_instance(rng)
        d = decide(L)
        assert d.has_measure == oracles.feasible(s, L.coeffs)
        if d.has_measure:
            assert set(d.core.active) == oracles.vertex_core(s, L.coeffs)


def test_core_variety_is_idempotent_on_the_quotient():
    from corevariety.space import induced_functional

    rng = random.Random(5)
    for _ in range(100):
        s, L = random_instance(rng, kind="measure")
        core = core_variety(L).core
        if not core:
            continue
        Lq = induced_functional(L, core)
        assert len(core_variety(Lq).core) == len(core)


def test_staircase_instance_shape():
    s, L = make_staircase(3, certify=False)
    assert s.dim == 5 and s.npoints == 6


@pytest.mark.parametrize("k", [1, 3])
def test_staircase_certification(k):
    # On a finite ground set the iteration is stationary after one strict
    # step (see the notes in the README), so the generator cannot certify.
    with pytest.raises(StaircaseCertificationError) as exc:
        make_staircase(k)
    assert exc.value.trace.stabilized_at == 1
