"""
Positive extensions and the tail diagnostic
===========================================

A functional on a subspace ``U`` extends to a positive functional on ``V``
exactly when it is nonnegative on every ``q in U`` that is nonnegative on
the ground set.  A failure comes with such a ``q``.
"""

from corevariety.extend import extension_problem, separating_function, tail_diagnostic, v_positive_extension
from corevariety.space import monomial_grid

grid = monomial_grid(1, 2, [-1, 0, 1])

# L(1) = 1, L(x^2) = 1/2 extends; the measure also fixes a value for L(x)
p = extension_problem(grid, ["1", "x^2"], [1, "1/2"])
res = v_positive_extension(p)
print("extension:", res.extension.coeffs, "| measure:", res.measure)

# L(x^2) = -1 cannot extend; x^2 itself is the obstruction
p = extension_problem(grid, ["1", "x^2"], [1, -1])
print("extension:", v_positive_extension(p), "| separating q:", separating_function(p))

# on a truncated line, how small is f / (1 + x^4) on the far points?
pts = list(range(-20, 21))
big = monomial_grid(1, 4, pts)
p = extension_problem(big, ["1", "x", "x^2", "x^3"], [1, 0, 0, 0])
far = [lab for lab, x in zip(big.labels, pts) if abs(x) >= 10]
for entry in tail_diagnostic(p, [1, 0, 0, 0, 1], far):
    print(f"  max |{entry.name}/rho| on the tail = {entry.max_ratio} at {entry.at}")
