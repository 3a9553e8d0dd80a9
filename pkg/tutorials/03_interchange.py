"""
The interchange map eta
=======================

eta: (M(x)2N)(x)1(P(x)2Q) -> (M(x)1P)(x)2(N(x)1Q) is built in three steps
from the middle-factor swap.  We check the unit conditions, the two
associativity diagrams and naturality on seeded random objects.
"""

from tetra.bialgebra import example
from tetra.interchange import (Interchange, check_unit_conditions, coherence_sweep, eta,
                               tuple_recipes)
from tetra.tetramodule import build_recipe

b = example("qz2")
tup = tuple_recipes(b, seed=7)
u, v, w, x, *_ = [build_recipe(b, r) for r in tup["recipes"]]

e = eta(u, v, w, x)
print(e.steps)
print(e.diagnostics())

print(check_unit_conditions(u, v, Interchange(b)))

# a short sweep; failures would come back as replayable recipe dicts
res = coherence_sweep(b, range(5))
print(f"{res.tuples} tuples, {res.checks} checks, failures: {res.failures}")
