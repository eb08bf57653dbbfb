"""Faces of the moment cone ``M``, labelled by core varieties.

On a finite ground set ``M`` is the polyhedral cone spanned by the point
evaluations, and the face ``F_L`` is spanned by the evaluations at points of
``CV(L)``.  Its dual face is the set of nonnegative functions vanishing on
``CV(L)``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Optional

from .corevar import Decision, decide, step
from .errors import InvariantViolation, NoMeasure
from .exact import ONE, ZERO, ConeDesc, LpStatus, Mat, kernel_basis, lp, lp_standard, rank, relint_point
from .space import Functional, SubsetView


@dataclass(frozen=True)
class FaceDescriptor:
    core: SubsetView
    exposed: bool
    dual_face: ConeDesc


def _decision_with_measure(L: Functional, decision: Optional[Decision] = None) -> Decision:
    d = decision if decision is not None else decide(L)
    if not d.has_measure:
        raise NoMeasure("functional has no representing measure")
    return d


def dual_face(L: Functional, core: SubsetView) -> ConeDesc:
    """``{p in P : p = 0 on core}`` in basis coordinates."""
    sys = L.system
    eq = Mat([sys.column(j) for j in core.active], cols=sys.dim)
    return ConeDesc(sys.dim, eq, sys.columns)


def face_of(L: Functional, decision: Optional[Decision] = None) -> FaceDescriptor:
    d = _decision_with_measure(L, decision)
    core = d.core
    return FaceDescriptor(core, _exposed_from_trace(d), dual_face(L, core))


def _exposed_from_trace(d: Decision) -> bool:
    chain = d.trace.chain
    return len(chain) < 2 or chain[1] == d.core


def is_exposed(L: Functional, decision: Optional[Decision] = None) -> bool:
    """``F_L`` is exposed iff the first step already reaches ``CV(L)``."""
    return _exposed_from_trace(_decision_with_measure(L, decision))


def exposed_by_dual_face(L: Functional, decision: Optional[Decision] = None) -> bool:
    """Polyhedral check: a relative-interior element of the dual face has zero
    set exactly ``CV(L)``."""
    d = _decision_with_measure(L, decision)
    _, tight = relint_point(dual_face(L, d.core))
    return frozenset(tight) == frozenset(d.core.active)


def member(m: Functional, face: FaceDescriptor) -> bool:
    d = decide(m)
    return d.has_measure and d.core.issubset(face.core)


def in_relint(m: Functional, L: Functional) -> bool:
    """``m`` lies in the relative interior of ``F_L`` iff ``CV(m) = CV(L)``."""
    dm, dl = decide(m), decide(L)
    if not (dm.has_measure and dl.has_measure):
        raise NoMeasure("both functionals must have representing measures")
    return dm.core == dl.core


def extreme_rays(cone: ConeDesc, limit: Optional[int] = None) -> list:
    """Extreme rays of a pointed cone by enumerating row subsets.

    Exponential in general; meant for the small cones that arise as dual
    faces.  Rays are returned scaled so their first nonzero entry is ``+-1``.
    """
    N = kernel_basis(cone.eq) if cone.eq.rows else Mat.identity(cone.dim)
    q = N.rows
    if q == 0:
        return []
    G = [N.matvec(r) for r in cone.ineq]
    rows = []
    seen = set()
    for g in G:
        if not any(g):
            continue
        piv = next(v for v in g if v)
        key = tuple(v / abs(piv) for v in g)
        if key not in seen:
            seen.add(key)
            rows.append(key)
    rays = set()
    count = 0
    for sub in itertools.combinations(range(len(rows)), q - 1):
        count += 1
        if limit is not None and count > limit:
            raise RuntimeError("ray enumeration limit reached")
        A = Mat([rows[i] for i in sub], cols=q)
        if q > 1 and rank(A) != q - 1:
            continue
        k = kernel_basis(A).row(0) if q > 1 else (ONE,)
        for d in (k, tuple(-v for v in k)):
            if all(sum(a * b for a, b in zip(r, d)) >= 0 for r in rows):
                x = N.vecmat(d)
                piv = next(v for v in x if v)
                rays.add(tuple(v / abs(piv) for v in x))
                break
    return sorted(rays)


class Region(str, enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class FastPathResult:
    """Classification of ``sign * L`` against ``M_k``, the cone spanned by the
    evaluations at points of ``view``, and the core variety it predicts.
    ``predicted`` is ``None`` when no prediction is justified."""

    view: SubsetView
    region: Region
    sign: int
    predicted: Optional[SubsetView]


def classify(L: Functional, view: SubsetView) -> Region:
    sys = L.system
    if not view.active:
        return Region.INTERIOR if L.is_zero() else Region.OUTSIDE
    A = [[sys.evals[i, j] for j in view.active] for i in range(sys.dim)]
    if not lp_standard(A, L.coeffs, [ZERO] * len(view)).optimal:
        return Region.OUTSIDE
    # strict positivity of the induced functional on the nonnegative cone of the view
    cone = ConeDesc(sys.dim, Mat((), cols=sys.dim), Mat([sys.column(j) for j in view.active], cols=sys.dim))
    total = [sum((sys.evals[i, j] for j in view.active), ZERO) for i in range(sys.dim)]
    res = lp([-c for c in L.coeffs], cone, [total], [ONE])
    if res.status is LpStatus.INFEASIBLE:
        return Region.INTERIOR
    if res.status is not LpStatus.OPTIMAL:  # pragma: no cover - L vanishes on the unbounded directions
        raise InvariantViolation("interiority LP unbounded for a member of M_k")
    return Region.INTERIOR if -res.objective > 0 else Region.BOUNDARY


def finite_fastpath(L: Functional, view: SubsetView, standing: Optional[bool] = None) -> FastPathResult:
    """Three-way classification with its predicted core variety.

    Interior predicts ``CV = view``; boundary predicts the next iterate;
    outside predicts ``CV = {}`` when the system has a strictly positive
    function (``standing``; computed when not given).
    """
    sign = 1
    region = classify(L, view)
    if region is Region.OUTSIDE:
        alt = classify(-L, view)
        if alt is not Region.OUTSIDE:
            region, sign = alt, -1
    if region is Region.INTERIOR:
        predicted = view
    elif region is Region.BOUNDARY:
        predicted = step(L, view)[0]
    else:
        if standing is None:
            from .corevar import strictly_positive_function

            standing = not strictly_positive_function(L.system)[1]
        predicted = SubsetView(L.system, ()) if (standing or not view.active) else None
    return FastPathResult(view, region, sign, predicted)


def check_fastpath_chain(L: Functional, chain) -> tuple:
    """Classify at every distinct chain element and compare with the final set."""
    from .corevar import strictly_positive_function

    standing = not strictly_positive_function(L.system)[1]
    final = chain[-1]
    out = []
    for k, view in enumerate(chain):
        if k and view == chain[k - 1]:
            break
        r = finite_fastpath(L, view, standing)
        if r.predicted is not None and r.predicted != final:
            raise InvariantViolation(
                f"fast path at step {k} predicts {list(r.predicted.labels)} "
                f"({r.region.value}), the iteration gives {list(final.labels)}")
        out.append(r)
    return tuple(out)
