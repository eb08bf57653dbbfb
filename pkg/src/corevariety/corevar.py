"""The core-variety iteration and the existence decision.

Starting from ``S_0 = S``, each step keeps the common zeros on ``S_i`` of
the functions ``p`` with ``L(p) = 0`` that are nonnegative on ``S_i``.  The
zero set of that cone is read off a single relative-interior element (the
step's witness), so every step is one exact LP.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .errors import InvariantViolation, StaircaseCertificationError
from .exact import ONE, ZERO, ConeDesc, LpStatus, Mat, lp, relint_point
from .space import Functional, FunctionSystem, GroundSet, SubsetView


@dataclass(frozen=True)
class StepCertificate:
    step: int
    removed: frozenset
    witness: tuple


@dataclass(frozen=True)
class CoreVarietyTrace:
    """``chain`` is ``S_0, S_1, ...``; when the last set is nonempty it appears
    twice to witness ``S_k = S_{k+1}``.  An empty set ends the chain."""

    functional: Functional
    chain: tuple
    certificates: tuple
    stabilized_at: int
    fastpath: Optional[tuple] = None

    @property
    def core(self) -> SubsetView:
        return self.chain[-1]

    @property
    def strict_steps(self) -> int:
        return sum(1 for c in self.certificates if c.removed)


class Status(str, enum.Enum):
    NO_MEASURE = "NoMeasure"
    HAS_MEASURE = "HasMeasure"
    INCONCLUSIVE = "InconclusiveHypotheses"


class Hypothesis(str, enum.Enum):
    STANDING = "Standing"
    WEAK = "WeakS_Lk"
    NONE = "None"


@dataclass(frozen=True)
class HypothesisCheck:
    hypothesis: Hypothesis
    rho: Optional[tuple]
    sign_flip: bool
    strictly_positive_exists: bool
    note: str = ""


@dataclass(frozen=True)
class Decision:
    """Outcome of :func:`decide`.

    ``status`` refers to ``functional``, the functional actually analyzed:
    the input ``L`` or, when ``sign_flipped`` is set, ``-L``.  Use
    :attr:`has_measure` to ask about the input itself.
    """

    status: Status
    trace: CoreVarietyTrace
    sign_flipped: bool
    hypothesis: Hypothesis
    functional: Functional
    rho: Optional[tuple] = None
    note: str = ""

    @property
    def core(self) -> SubsetView:
        return self.trace.core

    @property
    def has_measure(self) -> bool:
        return self.status is Status.HAS_MEASURE and not self.sign_flipped


def _nonneg_cone(system: FunctionSystem, active, extra_eq=()) -> ConeDesc:
    ineq = Mat([system.column(j) for j in active], cols=system.dim)
    return ConeDesc(system.dim, Mat(extra_eq, cols=system.dim), ineq)


def step(L: Functional, view: SubsetView, index: int = 0):
    """One iteration step from ``view``; returns ``(next_view, certificate)``."""
    sys = L.system
    if not view.active:
        return view, StepCertificate(index, frozenset(), (ZERO,) * sys.dim)
    cone = _nonneg_cone(sys, view.active, [L.coeffs])
    F, tight = relint_point(cone)
    keep = [view.active[r] for r in sorted(tight)]
    removed = frozenset(set(view.active) - set(keep))
    witness = F if removed else (ZERO,) * sys.dim
    return SubsetView(sys, keep), StepCertificate(index, removed, tuple(witness))


def core_variety(L: Functional, fastpath: bool = False) -> CoreVarietyTrace:
    """Iterate :func:`step` to the fixpoint.

    With ``fastpath`` the three-way cone classification is evaluated at every
    chain element and checked against the continued iteration; a
    disagreement raises :class:`InvariantViolation`.
    """
    sys = L.system
    view = sys.full_view()
    chain = [view]
    certs = []
    i = 0
    while True:
        nxt, cert = step(L, view, i)
        certs.append(cert)
        chain.append(nxt)
        if nxt == view or not nxt.active:
            break
        view = nxt
        i += 1
    stabilized_at = len(chain) - 2 if chain[-1] == chain[-2] else len(chain) - 1
    if not L.is_zero() and stabilized_at > max(sys.dim - 1, 0):
        raise InvariantViolation(
            f"iteration took {stabilized_at} steps, more than dim V - 1 = {sys.dim - 1}")
    fp = None
    if fastpath:
        from .faces import check_fastpath_chain

        fp = check_fastpath_chain(L, chain)
    return CoreVarietyTrace(L, tuple(chain), tuple(certs), stabilized_at, fp)


def _weak_condition(L: Functional, core: SubsetView, sign: int):
    # rho >= 0 on the core, sign*L(rho) >= 0, sum over the core of rho = 1
    sys = L.system
    rows = [sys.column(j) for j in core.active]
    rows.append(tuple(c if sign > 0 else -c for c in L.coeffs))
    cone = ConeDesc(sys.dim, Mat((), cols=sys.dim), Mat(rows, cols=sys.dim))
    total = [ZERO] * sys.dim
    for j in core.active:
        for i, v in enumerate(sys.column(j)):
            total[i] += v
    res = lp([ZERO] * sys.dim, cone, [total], [ONE])
    return res.point if res.status is LpStatus.OPTIMAL else None


def strictly_positive_function(system: FunctionSystem):
    """A relative-interior element of ``P`` and the common zeros ``Z(P)``."""
    rho, tight = relint_point(_nonneg_cone(system, range(system.npoints)))
    return rho, frozenset(tight)


def check_hypotheses(L: Functional, trace: CoreVarietyTrace) -> HypothesisCheck:
    """Which sign-normalization hypothesis applies to ``L`` (or ``-L``)."""
    rho, zeros = strictly_positive_function(L.system)
    if not zeros:
        v = L(rho)
        if v > 0:
            return HypothesisCheck(Hypothesis.STANDING, rho, False, True)
        if v < 0:
            return HypothesisCheck(Hypothesis.STANDING, rho, True, True)
        return HypothesisCheck(Hypothesis.NONE, rho, False, True,
                               "L vanishes at a strictly positive function, so S_1 is empty")
    core = trace.core
    if not core.active:
        return HypothesisCheck(Hypothesis.NONE, None, False, False, "P has common zeros")
    for sign in (1, -1):
        r = _weak_condition(L, core, sign)
        if r is not None:
            return HypothesisCheck(Hypothesis.WEAK, r, sign < 0, False)
    return HypothesisCheck(Hypothesis.NONE, None, False, False,
                           "P has common zeros and no nonnegative rho on the core variety")


def decide(L: Functional, flip_allowed: bool = True, fastpath: bool = False) -> Decision:
    """Decide whether ``L`` (or ``-L``, see :class:`Decision`) has a representing measure.

    The zero functional is represented by the zero measure, so it is reported
    as ``HasMeasure`` even though its core variety is empty.
    """
    trace = core_variety(L, fastpath=fastpath)
    if L.is_zero():
        return Decision(Status.HAS_MEASURE, trace, False, Hypothesis.NONE, L,
                        note="zero functional: represented by the zero measure")
    hyp = check_hypotheses(L, trace)
    if not trace.core.active:
        return Decision(Status.NO_MEASURE, trace, False, hyp.hypothesis, L, hyp.rho, hyp.note)
    if hyp.hypothesis is Hypothesis.NONE:
        return Decision(Status.INCONCLUSIVE, trace, False, hyp.hypothesis, L, None, hyp.note)
    if hyp.sign_flip:
        if flip_allowed:
            return Decision(Status.HAS_MEASURE, trace, True, hyp.hypothesis, -L, hyp.rho,
                            "analyzed -L")
        return Decision(Status.NO_MEASURE, trace, False, hyp.hypothesis, L, hyp.rho,
                        "-L has a representing measure, hence L has none")
    return Decision(Status.HAS_MEASURE, trace, False, hyp.hypothesis, L, hyp.rho)


def make_staircase(k: int, certify: bool = True):
    """Finite analogue of the long-chain example: ``k + 3`` points ``p0..p{k+2}``
    and the basis ``f0..fk`` plus the constant ``rho``, with ``L(rho) = 1`` and
    ``L(f_i) = 0``.

    ``f0`` is the indicator of ``p0``; for ``i >= 1``, ``f_i`` is ``-1`` at
    ``p{i-1}``, ``1`` at ``p{i}`` and zero elsewhere.  With ``certify`` the
    iteration is run and :class:`StaircaseCertificationError` is raised unless
    it removes exactly ``p{i}`` at step ``i`` for ``i = 0..k``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    n = k + 3
    labels = [f"p{j}" for j in range(n)]
    rows = []
    for i in range(k + 1):
        r = [ZERO] * n
        r[i] = ONE
        if i >= 1:
            r[i - 1] = -ONE
        rows.append(r)
    rows.append([ONE] * n)
    names = [f"f{i}" for i in range(k + 1)] + ["rho"]
    system = FunctionSystem(GroundSet(tuple(labels)), tuple(names), Mat(rows, cols=n))
    L = Functional(system, [ZERO] * (k + 1) + [ONE])
    if certify:
        trace = core_variety(L)
        expected = [frozenset({j}) for j in range(k + 1)]
        got = [c.removed for c in trace.certificates if c.removed]
        if got != expected or trace.stabilized_at != k + 1:
            raise StaircaseCertificationError(
                f"staircase k={k}: expected {k + 1} single-point removals, the iteration "
                f"stabilized after {trace.stabilized_at} step(s) removing "
                f"{[sorted(labels[j] for j in g) for g in got]}",
                system, L, trace)
    return system, L
