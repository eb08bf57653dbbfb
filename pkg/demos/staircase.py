"""
Looking for a long chain
========================

Each strict step of the core-variety iteration lowers the dimension of the
quotient, so at most ``dim V - 1`` steps are possible.  On a finite ground
set a second strict step never happens: if ``f >= 0`` on ``S_1`` and
``L(f) = 0``, then ``f + M f_0`` is nonnegative on all of ``S`` for a large
``M``, where ``f_0`` is the first witness, so ``f`` was already usable in
the first step.  The staircase generator shows this.
"""

from corevariety.corevar import core_variety, make_staircase
from corevariety.errors import StaircaseCertificationError

for k in (1, 3, 6):
    system, L = make_staircase(k, certify=False)
    tr = core_variety(L)
    removed = [[system.labels[j] for j in sorted(c.removed)] for c in tr.certificates]
    print(f"k={k}: dim V = {system.dim}, stabilized_at = {tr.stabilized_at}, removals {removed}")

# asking the generator to certify k + 1 strict steps fails
try:
    make_staircase(3)
except StaircaseCertificationError as e:
    print("certification:", e)
