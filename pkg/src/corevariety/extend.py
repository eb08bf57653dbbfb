"""Positive extensions from a subspace and finite truncation towers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .corevar import Status, core_variety, decide
from .errors import InvalidNesting, InvariantViolation
from .exact import ONE, ZERO, ConeDesc, LpStatus, Mat, Rat, lp, lp_standard, to_rat
from .measure import AtomicMeasure
from .space import Functional, FunctionSystem, SubsetView

FINITE_SCOPE_NOTE = (
    "finite ground set: the set of normalized point evaluations is compact, so the "
    "boundary-functional hypothesis holds vacuously and positive extension is "
    "equivalent to conic membership")


def subsystem(full: FunctionSystem, names: Sequence[str]) -> FunctionSystem:
    """The system spanned by the named basis functions of ``full``."""
    pos = {b: i for i, b in enumerate(full.basis_names)}
    try:
        rows = [pos[str(n)] for n in names]
    except KeyError as e:
        raise InvalidNesting(f"basis function {e.args[0]!r} is not in the larger system") from None
    if len(set(rows)) != len(rows):
        raise InvalidNesting("repeated basis function")
    return FunctionSystem(full.ground, tuple(full.basis_names[i] for i in rows),
                          full.evals.select_rows(rows))


def _row_map(sub: FunctionSystem, full: FunctionSystem):
    if sub.ground != full.ground:
        raise InvalidNesting("systems live on different ground sets")
    pos = {b: i for i, b in enumerate(full.basis_names)}
    rows = []
    for i, b in enumerate(sub.basis_names):
        j = pos.get(b)
        if j is None or sub.evals.row(i) != full.evals.row(j):
            raise InvalidNesting(f"basis function {b!r} of the smaller system is not a row of the larger one")
        rows.append(j)
    return rows


@dataclass(frozen=True)
class ExtensionProblem:
    sub: FunctionSystem
    full: FunctionSystem
    L_on_sub: Functional

    def __post_init__(self):
        object.__setattr__(self, "_rows", tuple(_row_map(self.sub, self.full)))
        if not self.L_on_sub.system.same_as(self.sub):
            raise ValueError("the functional must live on the smaller system")

    @property
    def rows(self) -> tuple:
        """Row of ``full`` holding each basis function of ``sub``."""
        return self._rows

    def restrict(self, L_full: Functional) -> Functional:
        return Functional(self.sub, tuple(L_full.coeffs[i] for i in self.rows))


def extension_problem(full: FunctionSystem, sub_names: Sequence[str], coeffs) -> ExtensionProblem:
    sub = subsystem(full, sub_names)
    return ExtensionProblem(sub, full, Functional(sub, coeffs))


@dataclass(frozen=True)
class ExtensionResult:
    extension: Functional
    measure: AtomicMeasure
    note: str = FINITE_SCOPE_NOTE


def v_positive_extension(p: ExtensionProblem) -> Optional[ExtensionResult]:
    """A ``V``-positive extension of ``L_on_sub`` with a measure representing it,
    or ``None`` when no extension exists (see :func:`separating_function`)."""
    sub = p.sub
    n = sub.npoints
    res = lp_standard(sub.evals.tolist(), p.L_on_sub.coeffs, [ZERO] * n)
    if not res.optimal:
        return None
    nu = AtomicMeasure(p.full, tuple((j, x) for j, x in enumerate(res.point) if x > 0))
    ext = nu.functional()
    if p.restrict(ext) != p.L_on_sub:  # pragma: no cover
        raise InvariantViolation("extension does not restrict to the given functional")
    return ExtensionResult(ext, nu)


def separating_function(p: ExtensionProblem) -> Optional[tuple]:
    """Coefficients (over ``sub``) of some ``q >= 0`` on ``S`` with ``L(q) < 0``,
    normalized by ``sum_s q(s) = 1``; ``None`` if there is none."""
    sub = p.sub
    cone = ConeDesc(sub.dim, Mat((), cols=sub.dim), sub.columns)
    total = [sum(r, ZERO) for r in sub.evals]
    res = lp([-c for c in p.L_on_sub.coeffs], cone, [total], [ONE])
    if res.status is LpStatus.OPTIMAL and res.objective > 0:
        return res.point
    return None


@dataclass(frozen=True)
class TailEntry:
    name: str
    max_ratio: Rat
    at: Optional[str]


def tail_diagnostic(p: ExtensionProblem, rho, tail) -> list:
    """Advisory check for truncated grids: for each basis function ``f`` of the
    subspace, ``max |f(s) / rho(s)|`` over the ``tail`` points.

    ``rho`` is a basis index of ``full`` or a coefficient vector over it and
    must be strictly positive on the ground set.  Large values suggest the
    grid is too short for ``f / rho`` to look small far out.
    """
    full = p.full
    if isinstance(rho, int):
        coeffs = [ZERO] * full.dim
        coeffs[rho] = ONE
    else:
        coeffs = [to_rat(c) for c in rho]
    rv = full.values(coeffs)
    if any(v <= 0 for v in rv):
        raise ValueError("rho must be strictly positive on the ground set")
    idx = sorted({t if isinstance(t, int) else full.ground.index(t) for t in tail})
    out = []
    if not idx:
        return out
    for i, name in enumerate(p.sub.basis_names):
        row = p.sub.evals.row(i)
        best, at = None, None
        for j in idx:
            r = abs(row[j] / rv[j])
            if best is None or r > best:
                best, at = r, full.labels[j]
        out.append(TailEntry(name, best, at))
    return out


@dataclass(frozen=True)
class TowerSpec:
    """Levels ``V_1 < V_2 < ...`` on one ground set; ``L_full`` lives on the top."""

    levels: tuple
    L_full: Functional

    def __post_init__(self):
        levels = tuple(self.levels)
        if not levels:
            raise InvalidNesting("a tower needs at least one level")
        for a, b in zip(levels, levels[1:]):
            _row_map(a, b)
            if a.dim >= b.dim:
                raise InvalidNesting("levels must be strictly nested")
        if not self.L_full.system.same_as(levels[-1]):
            raise InvalidNesting("the functional must live on the top level")
        object.__setattr__(self, "levels", levels)

    def truncation(self, j: int) -> Functional:
        rows = _row_map(self.levels[j], self.levels[-1])
        return Functional(self.levels[j], tuple(self.L_full.coeffs[i] for i in rows))


def tower_from_names(top: FunctionSystem, level_names: Sequence[Sequence[str]], coeffs) -> TowerSpec:
    levels = [subsystem(top, names) for names in level_names]
    if levels[-1].basis_names != top.basis_names:
        levels.append(top)
    return TowerSpec(tuple(levels), Functional(top, coeffs))


def tower_core_variety(t: TowerSpec, return_levels: bool = False):
    """Intersection of the per-level core varieties (indices on the shared ground set)."""
    cores = []
    for j in range(len(t.levels)):
        cv = core_variety(t.truncation(j)).core
        if cores and not set(cv.active) <= set(cores[-1].active):
            raise InvariantViolation(f"core variety of level {j} is not inside that of level {j - 1}")
        cores.append(cv)
    inter = set(cores[0].active)
    for c in cores[1:]:
        inter &= set(c.active)
    out = SubsetView(t.levels[-1], inter)
    return (out, tuple(cores)) if return_levels else out


@dataclass(frozen=True)
class TowerDecision:
    levels: tuple
    overall: Status
    failing_level: Optional[int]
    core: SubsetView
    note: str = "per-level statements for a finite tower; nothing is claimed about an infinite limit"


def tower_decide(t: TowerSpec, flip_allowed: bool = True) -> TowerDecision:
    decisions = tuple(decide(t.truncation(j), flip_allowed=flip_allowed) for j in range(len(t.levels)))
    failing = next((j for j, d in enumerate(decisions) if not d.has_measure), None)
    if failing is None:
        overall = Status.HAS_MEASURE
    elif any(d.status is Status.NO_MEASURE or d.sign_flipped for d in decisions):
        overall = Status.NO_MEASURE
    else:
        overall = Status.INCONCLUSIVE
    return TowerDecision(decisions, overall, failing, tower_core_variety(t))
