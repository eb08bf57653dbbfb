"""Finitely atomic representing measures: extraction, support coverage,
Carathéodory pruning and compression of weighted clouds."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from operator import mul
from typing import Optional, Sequence

import gmpy2
from gmpy2 import mpq, mpz

from .corevar import Decision, decide
from .errors import DependentBasis, InternalInfeasible, InvariantViolation, NoMeasure, NotInCoreVariety
from .exact import ONE, ZERO, Rat, ConeDesc, LpStatus, Mat, lp, lp_standard, row_basis_indices, to_rat
from .space import Functional, FunctionSystem, GroundSet, monomial_exponents, monomial_name, var_names, veronese


@dataclass(frozen=True, eq=False)
class AtomicMeasure:
    """Point indices of ``system`` with strictly positive rational weights."""

    system: FunctionSystem
    atoms: tuple

    def __post_init__(self):
        atoms = tuple(sorted((int(j), to_rat(w)) for j, w in self.atoms))
        idx = [j for j, _ in atoms]
        if len(set(idx)) != len(idx):
            raise ValueError("atom indices must be distinct")
        if any(w <= 0 for _, w in atoms):
            raise ValueError("atom weights must be positive")
        if idx and not (0 <= idx[0] and idx[-1] < self.system.npoints):
            raise IndexError("atom index out of range")
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def from_weights(cls, system, weights) -> "AtomicMeasure":
        """Merge ``(index, weight)`` pairs, dropping zero totals."""
        acc = {}
        for j, w in weights:
            acc[j] = acc.get(j, ZERO) + to_rat(w)
        return cls(system, tuple((j, w) for j, w in acc.items() if w != 0))

    def __len__(self):
        return len(self.atoms)

    @property
    def support(self) -> frozenset:
        return frozenset(j for j, _ in self.atoms)

    @property
    def labels(self) -> tuple:
        return tuple(self.system.labels[j] for j, _ in self.atoms)

    def weight(self, j: int) -> Rat:
        return dict(self.atoms).get(j, ZERO)

    def moments(self) -> tuple:
        acc = [ZERO] * self.system.dim
        for j, w in self.atoms:
            for i, v in enumerate(self.system.column(j)):
                if v:
                    acc[i] += w * v
        return tuple(acc)

    def functional(self) -> Functional:
        return Functional(self.system, self.moments())

    def represents(self, L: Functional) -> bool:
        return L.system.same_as(self.system) and self.moments() == L.coeffs

    def __eq__(self, other):
        if not isinstance(other, AtomicMeasure):
            return NotImplemented
        return self.atoms == other.atoms and self.system.same_as(other.system)

    def __repr__(self):
        return "AtomicMeasure({" + ", ".join(
            f"{self.system.labels[j]}: {w}" for j, w in self.atoms) + "})"


def _sum_row(system: FunctionSystem, active) -> list:
    total = [ZERO] * system.dim
    for j in active:
        for i, v in enumerate(system.column(j)):
            total[i] += v
    return total


def is_strictly_positive(L: Functional):
    """``(True, None)`` when ``L(f) > 0`` for every nonzero ``f`` in ``P``,
    otherwise ``(False, f)`` with ``f`` a normalized nonnegative function and
    ``L(f) <= 0``.

    Minimizes ``L(f)`` over ``f >= 0`` on ``S`` with ``sum_s f(s) = 1``; the
    basis is independent on ``S``, so this slice meets every ray of ``P``.
    """
    sys = L.system
    cone = ConeDesc(sys.dim, Mat((), cols=sys.dim), sys.columns)
    res = lp([-c for c in L.coeffs], cone, [_sum_row(sys, range(sys.npoints))], [ONE])
    if res.status is LpStatus.INFEASIBLE:
        return True, None  # P = {0}
    if res.status is not LpStatus.OPTIMAL:  # pragma: no cover - the slice is compact
        raise InternalInfeasible("positivity LP unbounded")
    if -res.objective > 0:
        return True, None
    return False, res.point


def _solve_on(L: Functional, cols: Sequence[int]):
    sys = L.system
    A = [[sys.evals[i, j] for j in cols] for i in range(sys.dim)]
    res = lp_standard(A, L.coeffs, [ZERO] * len(cols))
    if not res.optimal:
        return None
    return [(cols[k], x) for k, x in enumerate(res.point) if x > 0]


def _require_measure(L: Functional, decision: Optional[Decision]) -> Decision:
    d = decision if decision is not None else decide(L)
    if not d.has_measure:
        raise NoMeasure(f"functional has no representing measure ({d.status.value}"
                        + (", sign flipped" if d.sign_flipped else "") + ")")
    return d


def extract(L: Functional, order: Optional[Sequence[int]] = None,
            decision: Optional[Decision] = None, restrict_to_core: bool = True) -> AtomicMeasure:
    """A basic (vertex) representing measure for ``L``.

    Columns are offered to the simplex in ``order`` (default: increasing
    index), restricted to the core variety unless ``restrict_to_core`` is
    false.  Raises :class:`NoMeasure` when ``L`` has no measure and
    :class:`InternalInfeasible` if the LP disagrees with the decision.
    """
    d = _require_measure(L, decision)
    sys = L.system
    if L.is_zero():
        return AtomicMeasure(sys, ())
    allowed = set(d.core.active) if restrict_to_core else set(range(sys.npoints))
    if order is None:
        cols = sorted(allowed)
    else:
        cols = [j for j in order if j in allowed]
        cols += sorted(allowed - set(cols))
    atoms = _solve_on(L, cols)
    if atoms is None:
        raise InternalInfeasible("no measure on the core variety although one must exist")
    m = AtomicMeasure(sys, atoms)
    if not m.represents(L):  # pragma: no cover
        raise InternalInfeasible("extracted measure does not reproduce the functional")
    return m


def cover_point(L: Functional, s, decision: Optional[Decision] = None) -> AtomicMeasure:
    """A representing measure for ``L`` with ``s`` (label or index) in its support.

    The result is pruned to at most ``rank`` atoms whenever that is possible
    with ``s`` kept, which is always the case when ``V`` contains a strictly
    positive function.
    """
    d = _require_measure(L, decision)
    sys = L.system
    j = s if isinstance(s, int) and not isinstance(s, bool) else sys.ground.index(s)
    if j not in d.core:
        raise NotInCoreVariety(f"point {sys.labels[j]!r} is not in the core variety")
    core = list(d.core.active)
    phi = sys.column(j)
    # maximize eps subject to sum_k a_k phi(k) + eps phi(s) = L, a, eps >= 0
    A = [[sys.evals[i, k] for k in core] + [phi[i]] for i in range(sys.dim)]
    c = [ZERO] * len(core) + [ONE]
    res = lp_standard(A, L.coeffs, c)
    if res.status is LpStatus.UNBOUNDED:
        eps = ONE
    elif res.status is LpStatus.OPTIMAL and res.objective > 0:
        eps = res.objective / 2
    else:
        raise InternalInfeasible("no positive weight possible at a core point")
    rest = L - eps * Functional(sys, phi)
    atoms = [] if rest.is_zero() else _solve_on(rest, core)
    if atoms is None:
        raise InternalInfeasible("remainder functional not representable")
    m = AtomicMeasure.from_weights(sys, atoms + [(j, eps)])
    pruned = caratheodory_prune(m, keep=j)
    # Without a strictly positive function a nonnegative dependency among the
    # atoms can force s out; the unpruned measure then has rank + 1 atoms.
    if j in pruned.support:
        m = pruned
    if not m.represents(L) or j not in m.support:  # pragma: no cover
        raise InternalInfeasible("covering measure failed verification")
    return m


# ---------------------------------------------------------------------------
# pruning

def _scale_column(col):
    lam = mpz(1)
    for v in col:
        if v.denominator != 1:
            lam = gmpy2.lcm(lam, v.denominator)
    return [v.numerator * (lam // v.denominator) for v in col], lam


def _greedy_independent(cols, order):
    """Positions (in ``order``) of a greedy maximal independent set of columns."""
    dim = len(cols[0]) if cols else 0
    basis = []  # (pivot, vector) in echelon form
    chosen = []
    for p in order:
        v = list(cols[p])
        for piv, b in basis:
            if v[piv]:
                f = v[piv] / b[piv]
                v = [x - f * y for x, y in zip(v, b)]
        nz = next((i for i, x in enumerate(v) if x), None)
        if nz is not None:
            basis.append((nz, v))
            chosen.append(p)
            if len(chosen) == dim:
                break
    return chosen


def _inverse_and_det(B):
    """Exact inverse and determinant of a square rational matrix."""
    n = len(B)
    M = [[mpq(x) for x in row] + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(B)]
    det = ONE
    for c in range(n):
        r = next(i for i in range(c, n) if M[i][c])
        if r != c:
            M[c], M[r] = M[r], M[c]
            det = -det
        piv = M[c][c]
        det *= piv
        M[c] = [x / piv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return [row[n:] for row in M], det


@dataclass
class PruneStats:
    kernel_steps: int = 0
    basis_changes: int = 0
    dropped: int = 0


def _prune(cols, weights, keep: Optional[int] = None, stats: Optional[PruneStats] = None):
    """Streaming Carathéodory reduction.

    ``cols`` are rational column vectors and ``weights`` positive rationals.
    A square basis of independent columns is kept together with the integer
    adjugate and determinant of its (integer-scaled) matrix; every other
    column is then absorbed by one kernel step against the basis.  Returns
    ``[(position, weight)]`` with at most ``rank`` entries.
    """
    stats = stats if stats is not None else PruneStats()
    n = len(cols)
    if n == 0:
        return []
    order = list(range(n))
    if keep is not None:
        order.remove(keep)
        order.insert(0, keep)
    chosen = _greedy_independent(cols, order)
    r = len(chosen)
    if r == 0:
        stats.dropped += n
        return []
    if r < len(cols[0]):
        rows = row_basis_indices(Mat([[cols[p][i] for p in chosen] for i in range(len(cols[0]))], cols=r))
    else:
        rows = list(range(r))
    psi, lam = [], []
    for col in cols:
        v, l = _scale_column([col[i] for i in rows])
        psi.append(v)
        lam.append(l)
    b = [mpq(w) / lam[p] for p, w in enumerate(weights)]

    slots = list(chosen)
    bw = [b[p] for p in slots]
    inv, det = _inverse_and_det([[psi[p][i] for p in slots] for i in range(r)])
    D = mpz(det)
    adj = [[mpz(x * det) for x in row] for row in inv]

    in_basis = set(slots)
    keep_slot = 0 if keep is not None and keep in in_basis else None
    for q in order:
        if q in in_basis:
            continue
        pq = psi[q]
        bq = b[q]
        zh = [sum(map(mul, row, pq)) for row in adj]
        # a zero-weight basis slot can be handed over to q for free
        ghost = next((i for i in range(r) if bw[i] == 0 and zh[i]), None)
        if ghost is not None:
            _swap(adj, zh, ghost, D)
            D = zh[ghost]
            slots[ghost] = q
            bw[ghost] = bq
            stats.basis_changes += 1
            continue
        sD = 1 if D > 0 else -1
        flip = keep_slot is not None and zh[keep_slot] * sD < 0
        if flip:
            # raising q protects the kept atom; needs a basis atom that shrinks
            cand = [(bw[i] * D / zh[i], slots[i], i) for i in range(r)
                    if bw[i] > 0 and zh[i] * sD > 0]
            if not cand:
                flip = False
        if not flip:
            t = bq
            cand = [(bw[i] * D / -zh[i], slots[i], i) for i in range(r)
                    if bw[i] > 0 and zh[i] * sD < 0]
            tmin = min((c[0] for c in cand), default=None)
            stats.kernel_steps += 1
            if tmin is None or t <= tmin:
                # q is absorbed: weights move into the basis
                f = bq / D
                for i in range(r):
                    if zh[i]:
                        bw[i] += f * zh[i]
                for c in cand:
                    if c[0] == t:
                        bw[c[2]] = ZERO
                if keep_slot is not None and bw[keep_slot] == 0:
                    keep_slot = None
                continue
            t = tmin
            f = t / D
            for i in range(r):
                if zh[i]:
                    bw[i] += f * zh[i]
            new_w = bq - t
        else:
            t = min(c[0] for c in cand)
            stats.kernel_steps += 1
            f = t / D
            for i in range(r):
                if zh[i]:
                    bw[i] -= f * zh[i]
            new_w = bq + t
        tied = sorted((c[1], c[2]) for c in cand if c[0] == t)
        for _, i in tied:
            bw[i] = ZERO
        leave = tied[0][1]
        if keep_slot is not None and bw[keep_slot] == 0:
            keep_slot = None
        _swap(adj, zh, leave, D)
        D = zh[leave]
        in_basis.discard(slots[leave])
        in_basis.add(q)
        slots[leave] = q
        bw[leave] = new_w
        stats.basis_changes += 1
    out = [(slots[i], bw[i] * lam[slots[i]]) for i in range(r) if bw[i] > 0]
    stats.dropped += n - len(out)
    return out


def _swap(adj, zh, j, D):
    """Adjugate update when basis slot ``j`` is replaced by the column whose
    adjugate image is ``zh``; the new determinant is ``zh[j]``."""
    zj = zh[j]
    aj = adj[j]
    for i in range(len(adj)):
        if i == j:
            continue
        zi = zh[i]
        row = adj[i]
        if zi:
            adj[i] = [gmpy2.divexact(zj * x - zi * y, D) for x, y in zip(row, aj)]
        else:
            adj[i] = [gmpy2.divexact(zj * x, D) for x in row]


def caratheodory_prune(m: AtomicMeasure, keep=None, stats: Optional[PruneStats] = None) -> AtomicMeasure:
    """Same moments on a subset of ``supp m`` with at most ``rank`` atoms, where
    ``rank`` is the rank of the evaluation columns on the support.

    ``keep`` (a point index in the support) is protected from removal when
    the geometry allows it.  Raises :class:`InvariantViolation` if the result
    fails the exact moment check.
    """
    sys = m.system
    idx = [j for j, _ in m.atoms]
    cols = [sys.column(j) for j in idx]
    kpos = idx.index(keep) if keep is not None and keep in idx else None
    out = _prune(cols, [w for _, w in m.atoms], kpos, stats)
    res = AtomicMeasure(sys, tuple((idx[p], w) for p, w in out))
    if res.moments() != m.moments():
        raise InvariantViolation("pruning changed the moments")
    return res


def _prune_chunk(args):
    cols, weights = args
    return _prune(cols, weights)


def cloud_system(points: Sequence[Sequence], degree: int) -> FunctionSystem:
    """Monomials of degree ``<= degree`` on the cloud points, labelled ``p0, p1, ...``.

    Monomials that are linearly dependent on the cloud are dropped (keeping a
    row basis), since their moments are then fixed by the remaining ones.
    """
    pts = [tuple(to_rat(v) for v in p) for p in points]
    if not pts:
        raise ValueError("empty cloud")
    nv = len(pts[0])
    if any(len(p) != nv for p in pts):
        raise ValueError("cloud points have different dimensions")
    exps = monomial_exponents(nv, degree)
    cols = [veronese(p, exps) for p in pts]
    names = [monomial_name(a, var_names(nv)) for a in exps]
    ground = GroundSet(tuple(f"p{i}" for i in range(len(pts))), tuple(pts))
    evals = Mat._trusted(tuple(zip(*cols)), len(pts))
    try:
        return FunctionSystem(ground, tuple(names), evals)
    except DependentBasis:
        pivots = _greedy_independent(cols, range(len(cols)))
        rows = row_basis_indices(Mat([[cols[p][i] for p in pivots] for i in range(len(exps))],
                                     cols=len(pivots)))
        sub = Mat._trusted(tuple(evals.row(i) for i in rows), len(pts))
        return FunctionSystem(ground, tuple(names[i] for i in rows), sub)


def monomial_moments(m: AtomicMeasure, degree: int) -> tuple:
    """Moments of every monomial of degree ``<= degree``, recomputed from the
    atom coordinates (this includes monomials dropped as dependent)."""
    coords = m.system.ground.coords
    if coords is None:
        raise ValueError("the measure's points carry no coordinates")
    exps = monomial_exponents(len(coords[0]), degree)
    acc = [ZERO] * len(exps)
    for j, w in m.atoms:
        for i, v in enumerate(veronese(coords[j], exps)):
            acc[i] += w * v
    return tuple(acc)


def compress_cloud(points: Sequence[Sequence], weights: Optional[Sequence] = None, degree: int = 2,
                   workers: int = 1, stats: Optional[PruneStats] = None) -> AtomicMeasure:
    """Prune a positively weighted cloud to at most ``dim V`` of its own points
    while keeping every moment of degree ``<= degree`` exactly.

    With ``workers > 1`` the cloud is split into parts that are pruned in
    separate processes, and the concatenated survivors are pruned once more.
    """
    sys = cloud_system(points, degree)
    n = sys.npoints
    w = [ONE] * n if weights is None else [to_rat(x) for x in weights]
    if len(w) != n:
        raise ValueError("one weight per point is required")
    if any(x <= 0 for x in w):
        raise ValueError("cloud weights must be positive")
    cols = [sys.column(j) for j in range(n)]
    target = AtomicMeasure(sys, tuple(enumerate(w)))
    if workers > 1 and n > 4 * workers * sys.dim:
        size = -(-n // workers)
        parts = [(cols[i:i + size], w[i:i + size]) for i in range(0, n, size)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_prune_chunk, parts))
        idx, ws = [], []
        for k, res in enumerate(results):
            for p, x in res:
                idx.append(k * size + p)
                ws.append(x)
        out = _prune([cols[j] for j in idx], ws, None, stats)
        m = AtomicMeasure(sys, tuple((idx[p], x) for p, x in out))
    else:
        out = _prune(cols, w, None, stats)
        m = AtomicMeasure(sys, tuple(out))
    if m.moments() != target.moments():
        raise InvariantViolation("compression changed the moments")
    return m
