"""
Faces of a two-dimensional moment cone
======================================

For the hidden-atom system the cone of representable functionals has two
extreme rays: ``J`` (the evaluation at 0) and ``L`` (any nonzero point).
Each face is labelled by its core variety.
"""

from corevariety.catalog import two_generator_faces
from corevariety.faces import extreme_rays, face_of, in_relint
from corevariety.space import Functional

system, L, J = two_generator_faces()
zero = Functional(system, [0, 0])

for name, m in [("L + J", L + J), ("L", L), ("J", J), ("0", zero)]:
    f = face_of(m)
    gens = extreme_rays(f.dual_face)
    print(f"{name:>5}: core {list(f.core.labels)}, exposed {f.exposed}, dual face generators {gens}")

# functionals in the same relative interior share a core variety
print("2L in relint F_L:", in_relint(2 * L, L))
print("L + J in relint F_L:", in_relint(L + J, L))
