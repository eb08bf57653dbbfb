"""Exact rational scalars, dense exact linear algebra and an exact simplex.

Scalars are ``gmpy2.mpq`` values (always in lowest terms, positive
denominator).  Matrices are small immutable row-major containers; every
routine works in exact arithmetic and never rounds.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Optional, Sequence

from gmpy2 import mpq

Rat = type(mpq(0))

ZERO = mpq(0)
ONE = mpq(1)


def to_rat(x) -> Rat:
    """Convert ``x`` to an exact rational.

    Accepts ints, ``Fraction``/``mpq`` values and strings such as ``"3/4"``,
    ``"-2"``, ``"0.125"`` or ``"1e-3"``.  Floats are converted through their
    shortest decimal representation, so ``0.1`` becomes ``1/10``.
    """
    if isinstance(x, Rat):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Rational):
        return mpq(int(x.numerator), int(x.denominator))
    if isinstance(x, float):
        x = repr(x)
    if isinstance(x, str):
        f = Fraction(x.strip())
        return mpq(f.numerator, f.denominator)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def rat_str(x: Rat) -> str:
    return str(x)


def dot(u: Sequence[Rat], v: Sequence[Rat]) -> Rat:
    s = ZERO
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s


class Mat:
    """Immutable dense matrix of rationals, stored row-major."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Iterable[Iterable] = (), cols: Optional[int] = None):
        rows = tuple(tuple(to_rat(v) for v in r) for r in data)
        if cols is None:
            if not rows:
                raise ValueError("cols must be given for a matrix without rows")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self._data = rows

    @classmethod
    def _trusted(cls, rows: tuple, cols: int) -> "Mat":
        m = cls.__new__(cls)
        m.rows = len(rows)
        m.cols = cols
        m._data = rows
        return m

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls._trusted(
            tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), n
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls._trusted(tuple((ZERO,) * cols for _ in range(rows)), cols)

    @property
    def entries(self) -> tuple:
        return tuple(v for r in self._data for v in r)

    def row(self, i: int) -> tuple:
        return self._data[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list:
        return [list(r) for r in self._data]

    def __iter__(self):
        return iter(self._data)

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    @property
    def T(self) -> "Mat":
        if self.rows == 0:
            return Mat._trusted(tuple(() for _ in range(self.cols)), 0)
        return Mat._trusted(tuple(zip(*self._data)), self.rows)

    def select_cols(self, idx: Sequence[int]) -> "Mat":
        return Mat._trusted(tuple(tuple(r[j] for j in idx) for r in self._data), len(idx))

    def select_rows(self, idx: Sequence[int]) -> "Mat":
        return Mat._trusted(tuple(self._data[i] for i in idx), self.cols)

    def vstack(self, other: "Mat") -> "Mat":
        if other.cols != self.cols:
            raise ValueError("column mismatch")
        return Mat._trusted(self._data + other._data, self.cols)

    def matvec(self, v: Sequence[Rat]) -> tuple:
        return tuple(dot(r, v) for r in self._data)

    def vecmat(self, v: Sequence[Rat]) -> tuple:
        out = [ZERO] * self.cols
        for a, r in zip(v, self._data):
            if a:
                for j, x in enumerate(r):
                    if x:
                        out[j] += a * x
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.cols == other.cols and self._data == other._data

    def __hash__(self):
        return hash((self.cols, self._data))

    def __repr__(self):
        body = "; ".join(" ".join(str(v) for v in r) for r in self._data)
        return f"Mat({self.rows}x{self.cols}: [{body}])"


def _rref_rows(rows: list, ncols: int):
    """In-place Gauss-Jordan elimination on a list of mutable rows."""
    pivots = []
    r = 0
    nrows = len(rows)
    for j in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][j]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        piv = pr[j]
        if piv != 1:
            inv = ONE / piv
            pr = [v * inv if v else v for v in pr]
            rows[r] = pr
        nz = [k for k in range(j, ncols) if pr[k]]
        for i in range(nrows):
            if i != r:
                f = rows[i][j]
                if f:
                    row = rows[i]
                    for k in nz:
                        row[k] -= f * pr[k]
        pivots.append(j)
        r += 1
    return pivots


def rref(m: Mat):
    """Reduced row echelon form, pivot columns (increasing) and rank."""
    rows = [list(r) for r in m]
    pivots = _rref_rows(rows, m.cols)
    return Mat._trusted(tuple(tuple(r) for r in rows), m.cols), pivots, len(pivots)


def rank(m: Mat) -> int:
    return rref(m)[2]


def kernel_basis(m: Mat) -> Mat:
    """Exact basis (as rows) of the right null space of ``m``."""
    red, pivots, r = rref(m)
    free = [j for j in range(m.cols) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -red[i, f]
        basis.append(tuple(v))
    return Mat._trusted(tuple(basis), m.cols)


def row_basis_indices(m: Mat) -> list:
    """Indices of a maximal set of linearly independent rows (greedy, in order)."""
    return rref(m.T)[1] if m.rows else []


@dataclass(frozen=True)
class ConeDesc:
    """Polyhedral cone ``{x : eq @ x = 0, ineq @ x >= 0}``."""

    dim: int
    eq: Mat
    ineq: Mat

    def __post_init__(self):
        if self.eq.cols != self.dim or self.ineq.cols != self.dim:
            raise ValueError("cone rows must have dim columns")

    @classmethod
    def build(cls, dim: int, eq=(), ineq=()) -> "ConeDesc":
        return cls(dim, Mat(eq, cols=dim), Mat(ineq, cols=dim))

    def contains(self, x: Sequence[Rat]) -> bool:
        return all(v == 0 for v in self.eq.matvec(x)) and all(v >= 0 for v in self.ineq.matvec(x))


class LpStatus(str, enum.Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True)
class LpResult:
    status: LpStatus
    point: Optional[tuple] = None
    objective: Optional[Rat] = None
    basis: Optional[tuple] = None
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


class PivotBudgetExceeded(RuntimeError):
    pass


class _Tableau:
    # rows[0..m-1] are constraints, obj is the reduced-cost row; last entry of
    # every row is the right-hand side.
    def __init__(self, rows, basis, ncols, budget):
        self.rows = rows
        self.basis = basis
        self.ncols = ncols
        self.pivots = 0
        self.budget = budget
        self.obj = None

    def pivot(self, r, j):
        self.pivots += 1
        if self.pivots > self.budget:
            raise PivotBudgetExceeded(f"pivot budget {self.budget} exhausted")
        pr = self.rows[r]
        p = pr[j]
        if p != 1:
            inv = ONE / p
            pr = [v * inv if v else v for v in pr]
            self.rows[r] = pr
        nz = [k for k, v in enumerate(pr) if v]
        for i, row in enumerate(self.rows):
            if i != r:
                f = row[j]
                if f:
                    for k in nz:
                        row[k] -= f * pr[k]
        obj = self.obj
        f = obj[j]
        if f:
            for k in nz:
                obj[k] -= f * pr[k]
        self.basis[r] = j

    def set_objective(self, c):
        # maximize c.x ; row holds -c reduced against the current basis
        obj = [-v if v else ZERO for v in c] + [ZERO] * (self.ncols - len(c)) + [ZERO]
        for i, b in enumerate(self.basis):
            f = obj[b]
            if f:
                row = self.rows[i]
                for k, v in enumerate(row):
                    if v:
                        obj[k] -= f * v
        self.obj = obj

    def run(self, allowed):
        """Bland's rule on the columns in ``allowed``; returns False if unbounded."""
        rows = self.rows
        while True:
            obj = self.obj
            j = next((k for k in allowed if obj[k] < 0), None)
            if j is None:
                return True
            best = None
            for i, row in enumerate(rows):
                a = row[j]
                if a > 0:
                    ratio = row[-1] / a
                    if best is None or ratio < best[0] or (ratio == best[0] and self.basis[i] < self.basis[best[1]]):
                        best = (ratio, i)
            if best is None:
                return False
            self.pivot(best[1], j)


def lp_standard(A, b, c, basis=None, budget=None) -> LpResult:
    """Maximize ``c.x`` subject to ``A x = b``, ``x >= 0`` by exact simplex.

    ``basis`` may give, per row, a column that is a unit vector in that row
    with ``b >= 0`` (``None`` where an artificial is needed).  Entering and
    leaving variables follow Bland's lowest-index rule, so the method never
    cycles.  The optimal point is basic: it has at most ``len(b)`` nonzeros.
    """
    A = [[to_rat(v) for v in r] for r in A]
    b = [to_rat(v) for v in b]
    c = [to_rat(v) for v in c]
    m, n = len(A), len(c)
    if basis is None:
        basis = [None] * m
    rows = []
    for i in range(m):
        if basis[i] is None and b[i] < 0:
            rows.append([-v for v in A[i]] + [-b[i]])
        else:
            rows.append(list(A[i]) + [b[i]])
    need = [i for i in range(m) if basis[i] is None]
    nart = len(need)
    for i, row in enumerate(rows):
        rhs = row.pop()
        row.extend([ZERO] * nart)
        row.append(rhs)
    bas = list(basis)
    for k, i in enumerate(need):
        rows[i][n + k] = ONE
        bas[i] = n + k
    if budget is None:
        budget = 10 * (m + n + nart + 1) ** 2
    t = _Tableau(rows, bas, n + nart, budget)
    if nart:
        t.set_objective([ZERO] * n + [-ONE] * nart)
        t.run(range(n + nart))
        if t.obj[-1] != 0:
            return LpResult(LpStatus.INFEASIBLE, pivots=t.pivots)
        # drive zero-level artificials out of the basis, dropping redundant rows
        i = 0
        while i < len(t.rows):
            if t.basis[i] >= n:
                row = t.rows[i]
                j = next((k for k in range(n) if row[k]), None)
                if j is None:
                    del t.rows[i]
                    del t.basis[i]
                    continue
                t.pivot(i, j)
            i += 1
        for row in t.rows:
            del row[n:n + nart]
        t.ncols = n
    t.set_objective(c)
    if not t.run(range(n)):
        return LpResult(LpStatus.UNBOUNDED, pivots=t.pivots)
    x = [ZERO] * n
    for i, j in enumerate(t.basis):
        x[j] = t.rows[i][-1]
    return LpResult(LpStatus.OPTIMAL, tuple(x), dot(c, x), tuple(t.basis), t.pivots)


def _unit_column(row) -> Optional[int]:
    nz = [j for j, v in enumerate(row) if v]
    if len(nz) == 1 and row[nz[0]] > 0:
        return nz[0]
    return None


def lp(c, cone: ConeDesc, extra_eq=None, extra_rhs=None, budget=None) -> LpResult:
    """Maximize ``c.x`` over ``x`` in ``cone`` with ``extra_eq @ x = extra_rhs``.

    Variables are free unless an inequality row of the cone is a positive
    multiple of a unit vector; such variables are kept as native ``x_j >= 0``
    columns, so a cone ``x >= 0`` with equality rhs pairs is solved directly
    in standard form.
    """
    d = cone.dim
    c = [to_rat(v) for v in c]
    if len(c) != d:
        raise ValueError("objective length must equal cone.dim")
    E = [] if extra_eq is None else [[to_rat(v) for v in r] for r in extra_eq]
    rhs = [] if extra_rhs is None else [to_rat(v) for v in extra_rhs]
    if len(E) != len(rhs) or any(len(r) != d for r in E):
        raise ValueError("inconsistent extra equality rows")
    nonneg = set()
    generic = []
    for r in cone.ineq:
        j = _unit_column(r)
        if j is None:
            generic.append(r)
        else:
            nonneg.add(j)
    # column layout: each variable -> (+col, -col or None), then slacks
    plus, minus = [], []
    ncol = 0
    for j in range(d):
        plus.append(ncol)
        ncol += 1
        if j in nonneg:
            minus.append(None)
        else:
            minus.append(ncol)
            ncol += 1
    nslack = len(generic)
    ntot = ncol + nslack

    def expand(r):
        out = [ZERO] * ntot
        for j, v in enumerate(r):
            if v:
                out[plus[j]] = v
                if minus[j] is not None:
                    out[minus[j]] = -v
        return out

    A, b, basis = [], [], []
    for r in cone.eq:
        A.append(expand(r))
        b.append(ZERO)
        basis.append(None)
    for k, r in enumerate(generic):
        row = [-v for v in expand(r)]
        row[ncol + k] = ONE
        A.append(row)
        b.append(ZERO)
        basis.append(ncol + k)
    for r, v in zip(E, rhs):
        A.append(expand(r))
        b.append(v)
        basis.append(None)
    cc = expand(c)
    res = lp_standard(A, b, cc, basis=basis, budget=budget)
    if not res.optimal:
        return res
    y = res.point
    x = tuple(y[plus[j]] - (y[minus[j]] if minus[j] is not None else ZERO) for j in range(d))
    return LpResult(LpStatus.OPTIMAL, x, dot(c, x), res.basis, res.pivots)


def relint_point(cone: ConeDesc):
    """A relative-interior point of ``cone`` and its implicit-equality rows.

    Solves ``max sum(t)`` subject to ``A x = 0``, ``(B x)_j >= t_j`` and
    ``0 <= t_j <= 1``.  Because the set is a cone, every inequality row that
    is not an implicit equality reaches ``t_j = 1`` at any optimum, while
    implicit equalities are pinned to ``t_j = 0``.  The returned point is
    scaled so that ``max |x_i| = 1`` (zero cone: the zero vector).

    Returns ``(point, tight_rows)`` where ``tight_rows`` is a frozenset of
    inequality row indices on which every element of the cone vanishes.
    """
    d = cone.dim
    m = cone.ineq.rows
    N = kernel_basis(cone.eq) if cone.eq.rows else Mat.identity(d)
    q = N.rows
    if q == 0:
        return (ZERO,) * d, frozenset(range(m))
    if m == 0:
        x = N.row(0)
        return _box_normalize(x), frozenset()
    G = [N.matvec(r) for r in cone.ineq]  # G[j][i] = B_j . k_i
    # columns: y+ (q), y- (q), t (m), s (m), u (m)
    yp, ym, tc, sc, uc = 0, q, 2 * q, 2 * q + m, 2 * q + 2 * m
    ntot = 2 * q + 3 * m
    A, b, basis = [], [], []
    for j in range(m):
        row = [ZERO] * ntot
        for i in range(q):
            g = G[j][i]
            if g:
                row[yp + i] = -g
                row[ym + i] = g
        row[tc + j] = ONE
        row[sc + j] = ONE
        A.append(row)
        b.append(ZERO)
        basis.append(sc + j)
    for j in range(m):
        row = [ZERO] * ntot
        row[tc + j] = ONE
        row[uc + j] = ONE
        A.append(row)
        b.append(ONE)
        basis.append(uc + j)
    c = [ZERO] * ntot
    for j in range(m):
        c[tc + j] = ONE
    res = lp_standard(A, b, c, basis=basis)
    if not res.optimal:  # pragma: no cover - the auxiliary LP is feasible and bounded
        raise RuntimeError("relative-interior LP failed")
    z = res.point
    y = [z[yp + i] - z[ym + i] for i in range(q)]
    x = N.vecmat(y)
    tight = frozenset(j for j in range(m) if z[tc + j] == 0)
    return _box_normalize(x), tight


def _box_normalize(x):
    scale = max((abs(v) for v in x), default=ZERO)
    if scale == 0:
        return tuple(x)
    return tuple(v / scale for v in x)
