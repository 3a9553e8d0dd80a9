"""
S(V) through Koszul resolutions
===============================

For the symmetric algebra the Koszul pair P = S (x)1 Lambda (x)1 S and
Q = S (x)2 Lambda (x)2 S is small, everything is graded, and the Hom
complex has zero differential, so H^n is sum_{i+j=n} C(d,i) C(d,j).
"""

from tetra.koszul import expected_dims, koszul_Q, sv_gs_cohomology

for d in (1, 2):
    rep = sv_gs_cohomology(d)
    print(f"dim V = {d}: {[rep.dims[k] for k in range(2 * d + 1)]}"
          f"  formula {expected_dims(d)}")
    for c in rep.checks:
        print(f"   [{'ok' if c['pass'] else 'FAIL'}] {c['name']}")

# the codifferential needs an alternating sign on its right-hand wedge term;
# the plain difference is not a differential for dim V >= 2
print("plain difference, d^2 = 0:", koszul_Q(2, 4, literal=True).checks["d^2 = 0"])

# first three degrees for dim V = 3
rep = sv_gs_cohomology(3, K=2)
print("dim V = 3:", [rep.dims[k] for k in range(3)])
