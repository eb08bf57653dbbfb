"""
A point that no representing measure can use
=============================================

Two functions on a five-point grid: ``f`` is the indicator of 0 and
``g = 1 - f``.  The functional with ``L(f) = 0`` and ``L(g) = 2`` has many
representing measures, and none of them puts mass at 0.
"""

from corevariety.catalog import hidden_atom
from corevariety.corevar import decide
from corevariety.measure import cover_point, extract

system, L = hidden_atom()
print("points:", list(system.labels))

# decide runs the core-variety iteration and reports the surviving points
d = decide(L)
print("status:", d.status.value, "| core:", list(d.core.labels))

# the first step removes 0; its witness is f itself
for cert in d.trace.certificates:
    print(f"step {cert.step}: removed {[system.labels[j] for j in sorted(cert.removed)]}, witness {cert.witness}")

# one basic measure, then one through each surviving point
m = extract(L)
print("a basic measure:", m)
for lab in d.core.labels:
    print(f"through {lab:>4}:", cover_point(L, lab))
