"""
Internal products and the unit object
=====================================

(x)1 is a quotient of the external product, (x)2 a sub-object of it.  The
tautological object A is a unit for both, up to the four unit isomorphisms.
"""

from tetra.bialgebra import example
from tetra.tensor import (associator1, check_unit_isos, induce, otimes1, otimes2, unit_isos)
from tetra.tetramodule import sample_tetramodule, tautological, trivial_bicomodule

b = example("qz3")
A = tautological(b)
m = sample_tetramodule(b, 2)

w1, w2 = otimes1(A, m), otimes2(m, A)
print("dim m =", m.dim, " dim A(x)1 m =", w1.dim, " dim m(x)2 A =", w2.dim)

isos = unit_isos(m)
print(check_unit_isos(m, isos))

# induced object L(k) = A [x]1 k [x]1 A; its (x)1-square is free of rank dim A
L = induce(trivial_bicomodule(b, 1))
print("dim L(k) (x)1 L(k) =", otimes1(L, L).dim, "=", b.dim ** 3)

# associativity holds up to a canonical isomorphism between subquotients
a = associator1(m, A, L)
print("associator is a tetramodule map:", a.verify().ok)
