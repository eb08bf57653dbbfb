"""Random instances for tests and benchmarks."""

from __future__ import annotations

import random
from typing import Optional

from .errors import DependentBasis
from .exact import ONE, ZERO, Mat, to_rat
from .extend import TowerSpec, tower_from_names
from .space import Functional, FunctionSystem, GroundSet


def small_rat(rng: random.Random, lo: int = -3, hi: int = 3, den: int = 2):
    return to_rat(rng.randint(lo, hi)) / rng.randint(1, den)


def random_system(rng: random.Random, n_points: int, dim: int, constants: bool = True,
                  tries: int = 100) -> FunctionSystem:
    """Random exact evaluation matrix with independent rows; row 0 is the
    constant function when ``constants`` is set."""
    if n_points < dim:
        raise ValueError("need at least dim points for an independent basis")
    labels = tuple(f"s{j}" for j in range(n_points))
    for _ in range(tries):
        rows = []
        if constants:
            rows.append([ONE] * n_points)
        while len(rows) < dim:
            rows.append([small_rat(rng) for _ in range(n_points)])
        try:
            names = ["1"] + [f"f{i}" for i in range(1, dim)] if constants else [f"f{i}" for i in range(dim)]
            return FunctionSystem(GroundSet(labels), tuple(names), Mat(rows, cols=n_points))
        except DependentBasis:
            continue
    raise RuntimeError("could not draw an independent basis")


def random_functional(rng: random.Random, system: FunctionSystem, kind: Optional[str] = None) -> Functional:
    """A nonzero functional of one of several kinds.

    ``measure``: moments of random atoms on a random subset (often on the
    boundary of the moment cone); ``interior``: positive weights on every
    point; ``perturbed``: a measure plus a small random perturbation;
    ``random``: arbitrary coefficients.
    """
    kind = kind or rng.choice(["measure", "measure", "interior", "perturbed", "random"])
    n = system.npoints
    while True:
        if kind == "random":
            coeffs = [small_rat(rng) for _ in range(system.dim)]
        else:
            if kind == "interior":
                support = range(n)
            else:
                support = rng.sample(range(n), rng.randint(1, n))
            coeffs = [ZERO] * system.dim
            for j in support:
                w = to_rat(rng.randint(1, 4))
                for i, v in enumerate(system.column(j)):
                    coeffs[i] += w * v
            if kind == "perturbed":
                i = rng.randrange(system.dim)
                coeffs[i] += to_rat(rng.choice([-1, 1])) / rng.randint(1, 4)
        L = Functional(system, coeffs)
        if not L.is_zero():
            return L


def random_instance(rng: random.Random, max_points: int = 8, max_dim: int = 5,
                    constants: bool = True, kind: Optional[str] = None):
    dim = rng.randint(1, max_dim)
    n = rng.randint(dim, max(dim, max_points))
    system = random_system(rng, n, dim, constants)
    return system, random_functional(rng, system, kind)


def random_tower(rng: random.Random, n_levels: int, max_points: int = 8) -> TowerSpec:
    """Nested levels ``V_1 < ... < V_n`` (``V_1`` contains the constants); the
    top functional is drawn like :func:`random_functional`."""
    dims = sorted(rng.sample(range(1, n_levels + 3), n_levels))
    top_dim = dims[-1]
    n = rng.randint(top_dim, max(top_dim, max_points))
    top = random_system(rng, n, top_dim, constants=True)
    names = [list(top.basis_names[:d]) for d in dims]
    L = random_functional(rng, top)
    return tower_from_names(top, names, L.coeffs)
