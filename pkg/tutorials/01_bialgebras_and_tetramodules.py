"""
Bialgebras and tetramodules
===========================

A tetramodule over a bialgebra A is a space with commuting left and right
A-actions, commuting left and right A-coactions, and compatibilities
between the two halves.  Everything is a sparse matrix over Q or F_p.
"""

from tetra.bialgebra import EXAMPLE_NAMES, example, verify_bialgebra
from tetra.tetramodule import (hom_space, sample_tetramodule, tautological, trivial_tetramodule,
                               verify_tetramodule)

# the example zoo, each checked against the bialgebra axioms
for name in EXAMPLE_NAMES:
    b = example(name)
    print(f"{name:9s} dim {b.dim}  over {b.field}  axioms ok: {verify_bialgebra(b).ok}")

# A itself, acting and coacting on itself, is the basic tetramodule
b = example("sweedler")
A = tautological(b)
print(verify_tetramodule(A))

# counit actions with unit coactions do not give a tetramodule once dim A > 1:
# the report names the failing compatibility
print(verify_tetramodule(trivial_tetramodule(example("qz2"), 1)).failures()[0])

# random objects come from kernels, cokernels and sums of induced objects,
# so they satisfy the axioms by construction; the recipe string rebuilds them
m = sample_tetramodule(b, seed=4)
print(m.name, "dim", m.dim, "ok", verify_tetramodule(m).ok)
print("dim Hom(A, m) =", hom_space(A, m).dim)
