"""
Without a strictly positive function
====================================

On a grid over ``[-1, 2]`` the system spanned by ``f`` (indicator of 0),
``g`` (1 up to 1, then -1) and ``h`` (indicator of -1) has no function that
is positive everywhere.  A weaker condition, a nonnegative ``rho`` on the
core with ``L(rho) >= 0``, is enough to conclude.
"""

from corevariety.catalog import weak_positivity
from corevariety.corevar import decide, strictly_positive_function
from corevariety.measure import cover_point

system, L = weak_positivity()
rho, zeros = strictly_positive_function(system)
print("common zeros of all nonnegative functions:", [system.labels[j] for j in sorted(zeros)])

d = decide(L)
print("hypothesis:", d.hypothesis.value, "| rho:", d.rho, "| status:", d.status.value)
print("core:", list(d.core.labels))

# some points need three atoms here, one more than the rank
for lab in d.core.labels:
    m = cover_point(L, lab, d)
    print(f"through {lab:>4}: {len(m)} atoms", m)
