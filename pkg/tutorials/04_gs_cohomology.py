"""
Gerstenhaber-Schack cohomology three ways
=========================================

1. the explicit bicomplex Hom(A^m, A^n) with Hochschild and co-Hochschild
   differentials;
2. Ext(A, A) in tetramodules from the bar and cobar resolutions;
3. Ext(A, A) from resolutions built by iterating the adjunction epi and mono.
"""

import time

from tetra.bialgebra import example
from tetra.homology import SizeGuardError, ext, gs_check_d_squared, gs_cohomology

print(f"{'':9s} {'gs':>10s} {'bar-cobar':>10s} {'canonical':>10s}")
for name in ("trivial", "qz2", "fp2x", "sweedler"):
    b = example(name)
    t = time.perf_counter()
    rows = [gs_cohomology(b, 3, representatives=False), ext(b, 3, "bar-cobar"),
            ext(b, 3, "canonical")]
    dims = [str([r.dims[k] for k in range(3)]) for r in rows]
    print(f"{name:9s} " + " ".join(f"{d:>10s}" for d in dims),
          f"({time.perf_counter() - t:.1f}s)")

# d1^2 = d2^2 = 0 and d1 d2 = d2 d1 as exact matrix identities
print(gs_check_d_squared(example("fp3x"), 5)["ok"])

# the cochain spaces grow like (K+1) dim(A)^K; large requests are refused
try:
    gs_cohomology(example("sweedler"), 9)
except SizeGuardError as exc:
    print("refused:", exc)
