"""Ground sets, function systems and functionals.

A :class:`FunctionSystem` fixes a finite ground set ``S`` and a basis
``f_1..f_n`` of the function space ``V`` through its evaluation matrix:
``evals[i][j] = f_i(s_j)``.  Column ``j`` is the coordinate image of the
point ``s_j``, which is also the coefficient vector of the point evaluation
``L_{s_j}`` in the dual basis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .errors import DependentBasis, UnknownLabel
from .exact import ONE, ZERO, Mat, Rat, dot, kernel_basis, rank, row_basis_indices, to_rat


@dataclass(frozen=True)
class GroundSet:
    labels: tuple
    coords: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("point labels must be distinct")
        if self.coords is not None:
            coords = tuple(tuple(to_rat(v) for v in c) for c in self.coords)
            if len(coords) != len(self.labels):
                raise ValueError("coords and labels differ in length")
            object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(self.labels)})

    def __len__(self):
        return len(self.labels)

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise UnknownLabel(f"unknown point label {label!r}") from None


def _independent_rows(m: Mat, chunk: int = 64) -> bool:
    # Rows are independent once some set of columns already reaches full row
    # rank, so scan columns in growing chunks instead of reducing all of them.
    if m.rows == 0:
        return True
    if m.cols < m.rows:
        return False
    start = 0
    while start < m.cols:
        stop = min(m.cols, start + chunk)
        if rank(m.select_cols(range(stop))) == m.rows:
            return True
        start = stop
        chunk *= 4
    return False


@dataclass(frozen=True, eq=False)
class FunctionSystem:
    ground: GroundSet
    basis_names: tuple
    evals: Mat

    def __post_init__(self):
        object.__setattr__(self, "basis_names", tuple(str(b) for b in self.basis_names))
        if self.evals.rows != len(self.basis_names):
            raise ValueError("one evaluation row per basis function is required")
        if self.evals.cols != len(self.ground):
            raise ValueError("one evaluation column per point is required")
        if len(set(self.basis_names)) != len(self.basis_names):
            raise ValueError("basis names must be distinct")
        if not _independent_rows(self.evals):
            raise DependentBasis("basis functions are linearly dependent on the ground set")
        object.__setattr__(self, "_columns", self.evals.T)

    @property
    def dim(self) -> int:
        return self.evals.rows

    @property
    def labels(self) -> tuple:
        return self.ground.labels

    @property
    def npoints(self) -> int:
        return self.evals.cols

    def column(self, j: int) -> tuple:
        """Coordinates of the point evaluation at point ``j``."""
        return self._columns.row(j)

    @property
    def columns(self) -> Mat:
        return self._columns

    def values(self, coeffs: Sequence) -> tuple:
        """Values on the ground set of the function with basis coefficients ``coeffs``."""
        return self.evals.vecmat([to_rat(c) for c in coeffs])

    def functional(self, coeffs: Sequence) -> "Functional":
        return Functional(self, coeffs)

    def full_view(self) -> "SubsetView":
        return SubsetView(self, range(self.npoints))

    def view(self, labels: Iterable) -> "SubsetView":
        return SubsetView(self, (self.ground.index(s) for s in labels))

    def same_as(self, other: "FunctionSystem") -> bool:
        return (self is other or (self.ground == other.ground
                                  and self.basis_names == other.basis_names
                                  and self.evals == other.evals))

    def __eq__(self, other):
        if not isinstance(other, FunctionSystem):
            return NotImplemented
        return self.same_as(other)

    def __hash__(self):
        return hash((self.ground.labels, self.basis_names))


def from_matrix(labels, evals, basis_names=None, coords=None) -> FunctionSystem:
    """Build a system from an evaluation matrix (rows = basis functions)."""
    evals = evals if isinstance(evals, Mat) else Mat(evals, cols=len(labels))
    if basis_names is None:
        basis_names = [f"f{i}" for i in range(evals.rows)]
    return FunctionSystem(GroundSet(tuple(labels), coords), tuple(basis_names), evals)


def from_functions(labels, functions: Mapping[str, Callable], coords=None) -> FunctionSystem:
    """Evaluate named callables on the points; each is called with the coordinate
    tuple when ``coords`` are given and with the label otherwise."""
    pts = coords if coords is not None else labels
    rows = [[to_rat(f(p)) for p in pts] for f in functions.values()]
    return from_matrix(labels, Mat(rows, cols=len(labels)), list(functions), coords)


def monomial_exponents(n_vars: int, degree: int) -> list:
    """Exponent tuples with total degree <= ``degree``, graded then lex (x > y > ...)."""
    out = []
    for d in range(degree + 1):
        block = [a for a in itertools.product(range(d + 1), repeat=n_vars) if sum(a) == d]
        block.sort(reverse=True)
        out.extend(block)
    return out


def var_names(n):
    """Variable names ``x, y, z`` or ``x1, x2, ...`` for ``n`` coordinates."""
    return ["x", "y", "z"][:n] if n <= 3 else [f"x{i + 1}" for i in range(n)]


def monomial_name(alpha, names) -> str:
    parts = []
    for v, e in zip(names, alpha):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) if parts else "1"


def veronese(point: Sequence[Rat], exponents) -> tuple:
    """Values of the monomials ``x^alpha`` at ``point``."""
    n = len(point)
    top = max((max(a) for a in exponents), default=0)
    powers = []
    for x in point:
        p = [ONE]
        for _ in range(top):
            p.append(p[-1] * x)
        powers.append(p)
    out = []
    for a in exponents:
        v = ONE
        for i in range(n):
            if a[i]:
                v = v * powers[i][a[i]]
        out.append(v)
    return tuple(out)


def point_label(coords) -> str:
    return ",".join(str(c) for c in coords)


def monomial_system(points: Sequence[Sequence], degree: int, labels=None) -> FunctionSystem:
    """Polynomials of degree <= ``degree`` evaluated on an explicit point list."""
    pts = [tuple(to_rat(v) for v in p) for p in points]
    if not pts:
        raise ValueError("empty point list")
    n = len(pts[0])
    exps = monomial_exponents(n, degree)
    cols = [veronese(p, exps) for p in pts]
    evals = Mat._trusted(tuple(zip(*cols)), len(pts))
    if labels is None:
        labels = [point_label(p) for p in pts]
    names = [monomial_name(a, var_names(n)) for a in exps]
    return FunctionSystem(GroundSet(tuple(labels), tuple(pts)), tuple(names), evals)


def monomial_grid(n_vars: int, degree: int, axis_points) -> FunctionSystem:
    """Monomials of degree <= ``degree`` on the tensor grid of ``axis_points``.

    ``axis_points`` is either one sequence shared by every variable or one
    sequence per variable.  Raises :class:`DependentBasis` when the grid does
    not separate the monomials.
    """
    axis_points = list(axis_points)
    if axis_points and isinstance(axis_points[0], (list, tuple)):
        axes = [[to_rat(v) for v in ax] for ax in axis_points]
        if len(axes) != n_vars:
            raise ValueError("need one axis per variable")
    else:
        axes = [[to_rat(v) for v in axis_points]] * n_vars
    pts = list(itertools.product(*axes))
    return monomial_system(pts, degree)


@dataclass(frozen=True, eq=False)
class Functional:
    """A linear functional on V, stored by its values on the basis."""

    system: FunctionSystem
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(to_rat(c) for c in self.coeffs)
        if len(coeffs) != self.system.dim:
            raise ValueError("one coefficient per basis function is required")
        object.__setattr__(self, "coeffs", coeffs)

    def __call__(self, f: Sequence) -> Rat:
        """Apply to the function with basis coefficients ``f``."""
        return dot(self.coeffs, [to_rat(v) for v in f])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __neg__(self):
        return Functional(self.system, tuple(-c for c in self.coeffs))

    def __add__(self, other):
        if not isinstance(other, Functional):
            return NotImplemented
        _same_system(self, other)
        return Functional(self.system, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        k = to_rat(k)
        return Functional(self.system, tuple(k * c for c in self.coeffs))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Functional):
            return NotImplemented
        return self.system.same_as(other.system) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Functional({', '.join(str(c) for c in self.coeffs)})"


def _same_system(a, b):
    if not a.system.same_as(b.system):
        raise ValueError("functionals live on different systems")


def point_evaluation(system: FunctionSystem, label) -> Functional:
    """The functional ``f -> f(s)``."""
    j = label if isinstance(label, int) and not isinstance(label, bool) else system.ground.index(label)
    if not 0 <= j < system.npoints:
        raise UnknownLabel(f"point index {j} out of range")
    return Functional(system, system.column(j))


def combination(system: FunctionSystem, weights: Mapping) -> Functional:
    """``sum_s w_s L_s`` for a mapping of labels (or indices) to weights."""
    acc = [ZERO] * system.dim
    for s, w in weights.items():
        w = to_rat(w)
        j = s if isinstance(s, int) else system.ground.index(s)
        for i, v in enumerate(system.column(j)):
            acc[i] += w * v
    return Functional(system, acc)


@dataclass(frozen=True, eq=False)
class SubsetView:
    """A subset of the ground points; stands for ``S_i`` and ``V|S_i``."""

    system: FunctionSystem
    active: tuple = field(default=())

    def __post_init__(self):
        act = tuple(sorted(set(int(i) for i in self.active)))
        if act and not (0 <= act[0] and act[-1] < self.system.npoints):
            raise IndexError("point index out of range")
        object.__setattr__(self, "active", act)

    @property
    def labels(self) -> tuple:
        return tuple(self.system.labels[i] for i in self.active)

    def __len__(self):
        return len(self.active)

    def __bool__(self):
        return bool(self.active)

    def __contains__(self, j):
        return j in set(self.active)

    def issubset(self, other: "SubsetView") -> bool:
        return set(self.active) <= set(other.active)

    def columns(self) -> Mat:
        """Evaluation matrix restricted to the active points (rows = basis)."""
        return self.system.evals.select_cols(self.active)

    def __eq__(self, other):
        if not isinstance(other, SubsetView):
            return NotImplemented
        return self.active == other.active and self.system.same_as(other.system)

    def __hash__(self):
        return hash(self.active)

    def __repr__(self):
        return f"SubsetView({list(self.labels)})"


def restrict(system: FunctionSystem, active) -> tuple:
    """Return ``(view, dim V|active)``."""
    view = SubsetView(system, active)
    return view, quotient_dim(view)


def quotient_dim(view: SubsetView) -> int:
    if not view.active:
        return 0
    return rank(view.columns())


def vanishing_subspace(view: SubsetView) -> Mat:
    """Basis (as coefficient rows) of the functions vanishing on the view."""
    if not view.active:
        return Mat.identity(view.system.dim)
    return kernel_basis(view.columns().T)


def quotient(view: SubsetView) -> tuple:
    """The system ``V|view`` on the active points, with a basis chosen among
    the original basis functions.  Returns ``(system, rows)``."""
    sys = view.system
    if not view.active:
        raise ValueError("quotient of the empty view")
    cols = view.columns()
    rows = row_basis_indices(cols)
    sub = cols.select_rows(rows)
    coords = None
    if sys.ground.coords is not None:
        coords = tuple(sys.ground.coords[i] for i in view.active)
    q = FunctionSystem(GroundSet(view.labels, coords), tuple(sys.basis_names[i] for i in rows), sub)
    return q, rows


def induced_functional(L: Functional, view: SubsetView) -> Functional:
    """``L~(f|view) = L(f)`` on the quotient system; L must kill every function
    vanishing on the view."""
    W = vanishing_subspace(view)
    if any(L(w) for w in W):
        raise ValueError("functional does not vanish on the functions vanishing on the view")
    q, rows = quotient(view)
    return Functional(q, tuple(L.coeffs[i] for i in rows))
