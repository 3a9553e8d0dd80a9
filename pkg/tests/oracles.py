"""Independent brute-force references used by the tests.

Everything here works on dense nested lists of Fractions (reduced mod p
where needed) straight from the structure constants, without touching the
sparse kernel in ``tetra.exactlin``.
"""

import itertools
from fractions import Fraction


def dense(m):
    return [[Fraction(int(x.numerator), int(x.denominator)) if hasattr(x, "denominator")
             else Fraction(int(x)) for x in row] for row in m.to_lists()]


def reduce(rows, p):
    if not p:
        return rows
    return [[x.numerator * pow(x.denominator, -1, p) % p for x in r] for r in rows]


def dense_rank(rows, p=0):
    """Gaussian elimination on a copy; ``p = 0`` means the rationals."""
    a = [list(r) for r in reduce(rows, p)]
    if not a:
        return 0
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p) if p else 1 / a[r][c]
        a[r] = [x * inv % p if p else x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p if p else x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


class Tables:
    """Structure constants of a bialgebra as dense Fraction arrays."""

    def __init__(self, b):
        self.N = N = b.dim
        self.p = b.field.p
        M = dense(b.mult)            # N x N^2
        D = dense(b.comult)          # N^2 x N
        self.mult = [[[M[k][i * N + j] for k in range(N)] for j in range(N)] for i in range(N)]
        self.comult = [[[D[i * N + j][a] for j in range(N)] for i in range(N)] for a in range(N)]
        self.unit = [dense(b.unit)[i][0] for i in range(N)]
        self.counit = dense(b.counit)[0]

    def times(self, u, v):
        N = self.N
        out = [Fraction(0)] * N
        for i in range(N):
            if u[i]:
                for j in range(N):
                    if v[j]:
                        for k in range(N):
                            out[k] += u[i] * v[j] * self.mult[i][j][k]
        return out

    def basis(self, i):
        return [Fraction(int(i == j)) for j in range(self.N)]

    def legs(self, a, n):
        """``Delta^{(n)}(e_a)`` as a dict tuple -> coeff (n = 0 gives the counit)."""
        if n == 0:
            return {(): self.counit[a]} if self.counit[a] else {}
        cur = {(a,): Fraction(1)}
        for _ in range(n - 1):
            nxt = {}
            for t, c in cur.items():
                for x in range(self.N):
                    for y in range(self.N):
                        v = self.comult[t[0]][x][y]
                        if v:
                            key = (x, y) + t[1:]
                            nxt[key] = nxt.get(key, 0) + c * v
            cur = nxt
        return cur

    def act_tensor(self, a, tensor, left=True):
        """``e_a`` acting on ``A^{(x)n}`` through the iterated coproduct."""
        n = len(next(iter(tensor))) if tensor else 0
        out = {}
        for legs, c in self.legs(a, n).items():
            for t, d in tensor.items():
                part = {(): c * d}
                for x, y in zip(legs, t):
                    u, v = (self.basis(x), self.basis(y)) if left else (self.basis(y), self.basis(x))
                    prod = self.times(u, v)
                    part = {k + (z,): w * prod[z] for k, w in part.items() for z in range(self.N) if prod[z]}
                for k, w in part.items():
                    out[k] = out.get(k, 0) + w
        return {k: v for k, v in out.items() if v}


def gs_d1_dense(b, m, n):
    """Hochschild-type differential on ``Hom(A^m, A^n)`` by evaluating each
    basis cochain on every basis input of length ``m + 1``."""
    T = Tables(b)
    N = T.N
    rows = N ** (m + n + 1)
    cols = N ** (m + n)
    out = [[Fraction(0)] * cols for _ in range(rows)]
    ins = list(itertools.product(range(N), repeat=m))
    outs = list(itertools.product(range(N), repeat=n))
    flat = {t: i for i, t in enumerate(outs)}
    ins1 = list(itertools.product(range(N), repeat=m + 1))
    for oi, o in enumerate(outs):
        for ii, i in enumerate(ins):
            col = oi * N ** m + ii

            def F(args):
                # value of E_{o,i} on a pure tensor of basis vectors
                return {o: Fraction(1)} if tuple(args) == i else {}

            def F_lin(vecs):
                # multilinear extension on vectors given as lists
                acc = {}
                for idx in itertools.product(range(N), repeat=len(vecs)):
                    c = Fraction(1)
                    for v, k in zip(vecs, idx):
                        c *= v[k]
                        if not c:
                            break
                    if c:
                        for key, w in F(idx).items():
                            acc[key] = acc.get(key, 0) + c * w
                return acc

            for ji, args in enumerate(ins1):
                val = {}

                def add(d, s):
                    for k, v in d.items():
                        val[k] = val.get(k, 0) + s * v

                add(T.act_tensor(args[0], F(args[1:])) if n else
                    {(): T.counit[args[0]] * F(args[1:]).get((), 0)}, 1)
                for j in range(m):
                    vecs = [T.basis(x) for x in args]
                    merged = vecs[:j] + [T.times(vecs[j], vecs[j + 1])] + vecs[j + 2:]
                    add(F_lin(merged), (-1) ** (j + 1))
                last = (-1) ** (m + 1)
                add(T.act_tensor(args[-1], F(args[:-1]), left=False) if n else
                    {(): T.counit[args[-1]] * F(args[:-1]).get((), 0)}, last)
                for k, v in val.items():
                    if v:
                        out[flat[k] * N ** (m + 1) + ji][col] += v
    return reduce(out, T.p)


def transpose_perm(N, m, n):
    """Index map ``Hom(A^m, A^n) -> Hom(A*^n, A*^m)`` sending ``E_{o,i}`` to ``E_{i,o}``."""
    return [ (c % N ** m) * N ** n + c // N ** m for c in range(N ** (m + n))]


def f2_cohomology_by_enumeration(total, K):
    """Cohomology dims over F_2 by listing every cochain: ``|Z^k| / |B^k|``."""
    dims = []
    for k in range(K):
        dk = reduce(dense(total.differential(k)), 2)
        n = total.dims[k]
        Z = 0
        for bits in itertools.product((0, 1), repeat=n):
            if all(sum(r[j] * bits[j] for j in range(n)) % 2 == 0 for r in dk):
                Z += 1
        if k == 0:
            B = 1
        else:
            dp = reduce(dense(total.differential(k - 1)), 2)
            m = total.dims[k - 1]
            images = set()
            for bits in itertools.product((0, 1), repeat=m):
                images.add(tuple(sum(r[j] * bits[j] for j in range(m)) % 2 for r in dp))
            B = len(images)
        dims.append((Z // B).bit_length() - 1)
    return dims


def _mm(a, b, p):
    out = [[sum(x * y for x, y in zip(row, col)) % p for col in zip(*b)] for row in a]
    return out


def _kr(a, b, p):
    return [[x * y % p for x in ra for y in rb] for ra in a for rb in b]


def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def brute_hom_dim(src, tgt):
    """``log_p`` of the number of structure-preserving matrices, found by
    trying every ``dim tgt x dim src`` matrix over F_p."""
    p = src.base.field.p
    assert p, "enumeration needs a finite field"
    n = src.base.dim
    S = {k: reduce(dense(getattr(src, k)), p) for k in src._maps}
    T = {k: reduce(dense(getattr(tgt, k)), p) for k in tgt._maps}
    ds, dt = src.dim, tgt.dim
    In = _eye(n)
    count = 0
    for flat in itertools.product(range(p), repeat=ds * dt):
        X = [list(flat[r * ds:(r + 1) * ds]) for r in range(dt)]
        ok = (_mm(X, S["act_l"], p) == _mm(T["act_l"], _kr(In, X, p), p)
              and _mm(X, S["act_r"], p) == _mm(T["act_r"], _kr(X, In, p), p)
              and _mm(_kr(In, X, p), S["coact_l"], p) == _mm(T["coact_l"], X, p)
              and _mm(_kr(X, In, p), S["coact_r"], p) == _mm(T["coact_r"], X, p))
        count += ok
    d = 0
    while p ** d < count:
        d += 1
    assert p ** d == count
    return d
