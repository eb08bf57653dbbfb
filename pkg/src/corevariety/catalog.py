"""Small named instances on grids, used by the tests and the demos."""

from __future__ import annotations

from .exact import ONE, ZERO, to_rat
from .space import Functional, FunctionSystem, from_functions, monomial_grid, point_label

DEFAULT_GRID = ("-1", "-1/2", "0", "1/2", "1")


def _grid(points):
    pts = [to_rat(p) for p in points]
    return pts, [point_label((p,)) for p in pts]


def indicator_at_zero(points=DEFAULT_GRID):
    """``V = span{f, g}`` with ``f`` the indicator of 0 and ``g = 1 - f``."""
    pts, labels = _grid(points)
    if ZERO not in pts:
        raise ValueError("the grid must contain 0")
    return from_functions(labels, {
        "f": lambda p: ONE if p[0] == 0 else ZERO,
        "g": lambda p: ZERO if p[0] == 0 else ONE,
    }, coords=[(p,) for p in pts])


def hidden_atom(points=DEFAULT_GRID):
    """``indicator_at_zero`` with ``L(f) = 0`` and ``L(g) = 2``.  The point 0
    carries no atom of any representing measure; any two nonzero points do."""
    sys = indicator_at_zero(points)
    return sys, Functional(sys, [ZERO, to_rat(2)])


def two_generator_faces(points=DEFAULT_GRID):
    """The cone for ``indicator_at_zero`` has two extreme rays: ``L = 2 L_1``
    (any nonzero point) and ``J = L_0``.  Returns ``(system, L, J)``."""
    sys, L = hidden_atom(points)
    J = Functional(sys, sys.column(sys.ground.index("0")))
    return sys, L, J


def weak_positivity(points=("-1", "-1/2", "0", "1/2", "1", "3/2", "2")):
    """Grid on ``[-1, 2]`` with ``f`` the indicator of 0, ``g = 1`` on
    ``[-1, 1]`` and ``-1`` on ``(1, 2]``, ``h`` the indicator of ``-1``, and
    ``L(f), L(g), L(h) = 0, 2, 1``.  No function in ``V`` is strictly positive
    on the grid, but ``h`` is nonnegative with ``L(h) >= 0``."""
    pts, labels = _grid(points)
    if ZERO not in pts or to_rat(-1) not in pts or not any(p > 1 for p in pts):
        raise ValueError("the grid must contain -1, 0 and a point in (1, 2]")
    sys = from_functions(labels, {
        "f": lambda p: ONE if p[0] == 0 else ZERO,
        "g": lambda p: ONE if p[0] <= 1 else -ONE,
        "h": lambda p: ONE if p[0] == -1 else ZERO,
    }, coords=[(p,) for p in pts])
    return sys, Functional(sys, [ZERO, to_rat(2), ONE])


def quadratic_line(points=("-2", "-1", "0", "1", "2")) -> FunctionSystem:
    """Polynomials of degree <= 2 on a 1-D grid."""
    return monomial_grid(1, 2, list(points))
