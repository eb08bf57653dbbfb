"""
Towers of truncations
=====================

A functional on polynomials of degree 4 is truncated to degrees 0, 1, 2
and 4.  Core varieties can only shrink as the degree grows.
"""

from corevariety.extend import tower_decide, tower_from_names
from corevariety.space import combination, monomial_grid

grid = monomial_grid(1, 4, [-2, -1, 0, 1, 2])
names = [["1"], ["1", "x"], ["1", "x", "x^2"]]

# a measure at two points: the low degrees see the whole grid, degree 4
# pins the core to the two atoms
L = combination(grid, {"-1": 1, "2": 3})
td = tower_decide(tower_from_names(grid, names, L.coeffs))
for lv in td.levels:
    print(f"degree {len(lv.functional.coeffs) - 1}: {lv.status.value:<9} core {list(lv.core.labels)}")
print("overall:", td.overall.value, "| intersected core:", list(td.core.labels))

# lowering the fourth moment breaks the top level only
bad = list(L.coeffs)
bad[4] -= 40
td = tower_decide(tower_from_names(grid, names, bad))
print("overall:", td.overall.value, "| failing level:", td.failing_level)
