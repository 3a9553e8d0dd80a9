"""Koszul resolutions of S(V) in the tetramodule category and the
resulting Gerstenhaber-Schack cohomology.

Everything is truncated at internal degree ``N``; V has degree 1 and
``Lambda^k V`` degree k.  The differentials preserve internal degree, so each
fixed-degree slice is computed exactly; actions (which raise degree) are only
evaluated where the result stays inside the truncation.

Elements are dicts ``{(f, lam, g): coeff}`` with ``f, g`` monomial indices of
S(V) and ``lam`` a sorted tuple of basis indices of V.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

from .bialgebra import sv_graded
from .exactlin import QQ, Complex, Mat, Subspace, cohomology, kernel_basis, rank
from .homology import CohomologyReport

__all__ = [
    "KoszulObject", "KoszulResolution", "koszul_P", "koszul_Q", "graded_hom_tetra",
    "GradedHom", "sv_gs_cohomology", "expected_dims", "StabilizationError",
]


class StabilizationError(AssertionError):
    pass


def expected_dims(dimV: int, K: int | None = None) -> list:
    """``dim H^n = sum_{i+j=n} C(d, i) C(d, j)``."""
    top = 2 * dimV if K is None else K
    return [sum(comb(dimV, i) * comb(dimV, n - i) for i in range(n + 1)) for n in range(top + 1)]


class _S:
    """Monomial bookkeeping for truncated S(V)."""

    def __init__(self, dimV, N, field):
        self.g = sv_graded(dimV, N, field)
        self.dimV, self.N, self.field = dimV, N, field
        self.monos = self.g.monomials
        self.index = {m: i for i, m in enumerate(self.monos)}
        self.deg = [sum(m) for m in self.monos]
        self.var = [self.index[tuple(1 if j == i else 0 for j in range(dimV))] for i in range(dimV)]
        self.var_of = {ix: i for i, ix in enumerate(self.var)}
        self.delta = {i: [] for i in range(len(self.monos))}
        n = len(self.monos)
        self._mul = {}
        for i, a in enumerate(self.monos):
            for j, b in enumerate(self.monos):
                if self.deg[i] + self.deg[j] <= N:
                    self._mul[(i, j)] = self.index[tuple(x + y for x, y in zip(a, b))]
        for r, c, v in self.g.comult.entries():
            a, b = divmod(r, n)
            self.delta[c].append((a, b, v))

    def mul(self, i, j):
        return self._mul.get((i, j))

    def delta3(self, i):
        """Legs ``(a1, a3)`` of ``(1 (x) eps (x) 1) Delta^{(3)}`` -- the same as Delta."""
        return self.delta[i]


def _wedge_left(v, lam):
    if v in lam:
        return 0, None
    pos = sum(1 for x in lam if x < v)
    return (-1) ** pos, tuple(sorted(lam + (v,)))


def _wedge_right(lam, v):
    if v in lam:
        return 0, None
    pos = sum(1 for x in lam if x > v)
    return (-1) ** pos, tuple(sorted(lam + (v,)))


def _add(out, key, c):
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


@dataclass
class KoszulObject:
    """``S [x]1 Lambda^k [x]1 S`` (kind ``"P"``) or ``S [x]2 Lambda^k [x]2 S``
    (kind ``"Q"``), truncated at total internal degree ``N``."""

    S: _S
    kind: str
    k: int
    basis: list
    index: dict

    @property
    def dim(self):
        return len(self.basis)

    def degree(self, key):
        f, lam, g = key
        return self.S.deg[f] + len(lam) + self.S.deg[g]

    def generator(self, lam):
        return (0, lam, 0)

    # structure maps on basis elements; results are dicts, or None when the
    # result would leave the truncation
    def act_l(self, a, key):
        S = self.S
        f, lam, g = key
        out = {}
        if self.kind == "P":
            m = S.mul(a, f)
            if m is None:
                return None
            return {(m, lam, g): 1}
        for a1, a3, c in S.delta3(a):
            m1, m3 = S.mul(a1, f), S.mul(a3, g)
            if m1 is None or m3 is None:
                return None
            _add(out, (m1, lam, m3), c)
        return out

    def act_r(self, key, a):
        S = self.S
        f, lam, g = key
        out = {}
        if self.kind == "P":
            m = S.mul(g, a)
            if m is None:
                return None
            return {(f, lam, m): 1}
        for a1, a3, c in S.delta3(a):
            m1, m3 = S.mul(f, a1), S.mul(g, a3)
            if m1 is None or m3 is None:
                return None
            _add(out, (m1, lam, m3), c)
        return out

    def coact_l(self, key):
        """``{(s, key'): coeff}`` with ``s`` a monomial index of S."""
        S = self.S
        f, lam, g = key
        out = {}
        if self.kind == "Q":
            for f1, f2, c in S.delta[f]:
                _add(out, (f1, (f2, lam, g)), c)
            return out
        for f1, f2, c in S.delta[f]:
            for g1, g2, e in S.delta[g]:
                s = S.mul(f1, g1)       # degree of s <= degree of key: never truncated
                _add(out, (s, (f2, lam, g2)), c * e)
        return out

    def coact_r(self, key):
        S = self.S
        f, lam, g = key
        out = {}
        if self.kind == "Q":
            for g1, g2, c in S.delta[g]:
                _add(out, ((f, lam, g1), g2), c)
            return out
        for f1, f2, c in S.delta[f]:
            for g1, g2, e in S.delta[g]:
                s = S.mul(f2, g2)
                _add(out, ((f1, lam, g1), s), c * e)
        return out


def _make(S, kind, k):
    basis = []
    for lam in itertools.combinations(range(S.dimV), k):
        for f in range(len(S.monos)):
            for g in range(len(S.monos)):
                if S.deg[f] + k + S.deg[g] <= S.N:
                    basis.append((f, lam, g))
    basis.sort(key=lambda x: (S.deg[x[0]] + k + S.deg[x[2]], x))
    return KoszulObject(S, kind, k, basis, {b: i for i, b in enumerate(basis)})


def _same(f, a: dict, b: dict) -> bool:
    """Equality of sparse vectors with coefficients reduced into ``f``."""
    def red(v):
        out = {}
        for k, c in v.items():
            c = f.convert(c)
            if c:
                out[k] = c
        return out
    return red(a) == red(b)


def _apply(fn, vec: dict) -> dict:
    out = {}
    for key, c in vec.items():
        for k2, c2 in fn(key).items():
            _add(out, k2, c * c2)
    return out




@dataclass
class KoszulResolution:
    kind: str                  # "P" (left, by induced objects) or "Q" (right)
    dimV: int
    N: int
    objects: dict              # k -> KoszulObject
    differential: dict         # k -> function on basis keys
    checks: dict = field(default_factory=dict)


def _partial(S, k):
    """Bar-type Koszul differential ``P^{-k} -> P^{-(k-1)}``."""
    def d(key):
        f, lam, g = key
        out = {}
        for j, v in enumerate(lam):
            rest = lam[:j] + lam[j + 1:]
            sgn = -1 if j % 2 else 1
            x = S.var[v]
            _add(out, (S.mul(x, f), rest, g), sgn)
            _add(out, (f, rest, S.mul(g, x)), -sgn)
        return out
    return d


def _codiff(S, l, literal=False):
    """Cobar-type Koszul differential ``Q^l -> Q^(l+1)``.

    The second term carries the sign ``(-1)^l`` so that d^2 = 0; ``literal``
    drops it (plain difference of the two wedge terms), which is not a
    differential once ``dim V >= 2``."""
    def d(key):
        f, lam, g = key
        out = {}
        for f1, f2, c in S.delta[f]:
            if f2 in S.var_of:
                s, new = _wedge_left(S.var_of[f2], lam)
                if s:
                    _add(out, (f1, new, g), s * c)
        sign = -1 if (literal or l % 2 == 0) else 1
        for g1, g2, c in S.delta[g]:
            if g1 in S.var_of:
                s, new = _wedge_right(lam, S.var_of[g1])
                if s:
                    _add(out, (f, new, g2), sign * s * c)
        return out
    return d


def _slice(obj, D):
    return [i for i, b in enumerate(obj.basis) if obj.degree(b) == D]


def _check_objects(res: KoszulResolution, S):
    """Differential squares to zero, commutes with the generating actions and
    with both coactions, and the augmented complex is exact in every
    internal degree."""
    out = {"d^2 = 0": True, "differential is a tetramodule map": True, "exact": True}
    ks = sorted(res.objects)
    step = -1 if res.kind == "P" else 1
    for k in ks:
        src = res.objects[k]
        if k not in res.differential:
            continue
        d = res.differential[k]
        k2 = k + step
        d2 = res.differential.get(k2)
        for key in src.basis:
            y = d(key)
            if d2 is not None and not _same(S.field, _apply(d2, y), {}):
                out["d^2 = 0"] = False
            # coactions
            lhs = {}
            for (s, x), c in src.coact_l(key).items():
                for x2, c2 in d(x).items():
                    _add(lhs, (s, x2), c * c2)
            tgt = res.objects[k2]
            if not _same(S.field, lhs, _apply(tgt.coact_l, y)):
                out["differential is a tetramodule map"] = False
            lhs = {}
            for (x, s), c in src.coact_r(key).items():
                for x2, c2 in d(x).items():
                    _add(lhs, (x2, s), c * c2)
            if not _same(S.field, lhs, _apply(tgt.coact_r, y)):
                out["differential is a tetramodule map"] = False
            # actions by generators of S, where the truncation allows it
            if src.degree(key) < S.N:
                for x in S.var:
                    a = _apply(d, src.act_l(x, key))
                    b = _apply(lambda z: tgt.act_l(x, z), y)
                    c_ = _apply(d, src.act_r(key, x))
                    e = _apply(lambda z: tgt.act_r(z, x), y)
                    if not (_same(S.field, a, b) and _same(S.field, c_, e)):
                        out["differential is a tetramodule map"] = False
    # exactness degreewise: the augmented complex in internal degree D
    f = S.field
    for D in range(S.N + 1):
        mats = []
        for k in ks:
            if k not in res.differential:
                continue
            k2 = k + step
            src, tgt = res.objects[k], res.objects[k2]
            si, ti = _slice(src, D), _slice(tgt, D)
            d = res.differential[k]
            loc = {tgt.basis[i]: r for r, i in enumerate(ti)}
            ent = []
            for j, i in enumerate(si):
                for key, c in d(src.basis[i]).items():
                    ent.append((loc[key], j, c))
            mats.append((k, k2, Mat.from_entries(f, len(ti), len(si), ent)))
        ranks = {(k, k2): rank(m) for k, k2, m in mats}
        # augmentation: multiplication P^0 -> S or comultiplication S -> Q^0
        sD = [i for i in range(len(S.monos)) if S.deg[i] == D]
        zero = res.objects[0]
        zi = _slice(zero, D)
        if res.kind == "P":
            ent = []
            pos = {m: r for r, m in enumerate(sD)}
            for j, i in enumerate(zi):
                fi, _, gi = zero.basis[i]
                ent.append((pos[S.mul(fi, gi)], j, 1))
            aug = rank(Mat.from_entries(f, len(sD), len(zi), ent))
        else:
            ent = []
            loc = {zero.basis[i]: r for r, i in enumerate(zi)}
            for j, m in enumerate(sD):
                for a, b, c in S.delta[m]:
                    ent.append((loc[(a, (), b)], j, c))
            aug = rank(Mat.from_entries(f, len(zi), len(sD), ent))
        if aug != len(sD):
            out["exact"] = False
        for k in ks:
            # ranks of the maps into and out of P^{-k} (resp. Q^k) in degree D
            if res.kind == "P":
                r_in = ranks.get((k + 1, k), 0)
                r_out = ranks.get((k, k - 1), 0) if k > 0 else aug
            else:
                r_in = ranks.get((k - 1, k), 0) if k > 0 else aug
                r_out = ranks.get((k, k + 1), 0)
            if len(_slice(res.objects[k], D)) != r_in + r_out:
                out["exact"] = False
    return out


def koszul_P(dimV: int, N: int, field=QQ, check: bool = True) -> KoszulResolution:
    """``P^{-k} = S [x]1 Lambda^k V [x]1 S`` for ``0 <= k <= dimV``."""
    S = _S(dimV, N, field)
    objs = {k: _make(S, "P", k) for k in range(dimV + 1)}
    diffs = {k: _partial(S, k) for k in range(1, dimV + 1)}
    res = KoszulResolution("P", dimV, N, objs, diffs)
    if check:
        res.checks = _check_objects(res, S)
    return res


def koszul_Q(dimV: int, N: int, field=QQ, check: bool = True,
             literal: bool = False) -> KoszulResolution:
    """``Q^l = S [x]2 Lambda^l V [x]2 S`` for ``0 <= l <= dimV``."""
    S = _S(dimV, N, field)
    objs = {l: _make(S, "Q", l) for l in range(dimV + 1)}
    diffs = {l: _codiff(S, l, literal) for l in range(dimV)}
    res = KoszulResolution("Q", dimV, N, objs, diffs)
    if check:
        res.checks = _check_objects(res, S)
    return res


# ---------------------------------------------------------------------------
# Hom(P^{-k}, Q^l)

@dataclass
class GradedHom:
    """Tetramodule maps ``P^{-k} -> Q^l`` parameterised by the images of the
    generators ``1 (x) lam (x) 1``; ``space`` lives in
    ``(generators of Lambda^k) x (basis of Q^l)`` coordinates."""

    p: KoszulObject
    q: KoszulObject
    gens: list
    space: Subspace
    propagation_ok: bool

    @property
    def dim(self):
        return self.space.dim

    def images(self, row: dict) -> dict:
        """``lam -> element of Q^l`` for one coordinate vector."""
        out = {lam: {} for lam in self.gens}
        n = self.q.dim
        for c, v in row.items():
            g, j = divmod(c, n)
            out[self.gens[g]][self.q.basis[j]] = v
        return out

    def vector(self, images: dict) -> dict:
        n = self.q.dim
        out = {}
        for g, lam in enumerate(self.gens):
            for key, v in images.get(lam, {}).items():
                out[g * n + self.q.index[key]] = v
        return out

    def internal_degrees(self) -> dict:
        """``{map degree: multiplicity}`` over a basis of the space."""
        out = {}
        for row in self.space.basis.rows():
            ims = self.images(row)
            degs = {self.q.degree(key) - len(lam) for lam, el in ims.items() for key in el}
            if len(degs) == 1:
                d = degs.pop()
                out[d] = out.get(d, 0) + 1
            else:
                out["mixed"] = out.get("mixed", 0) + 1
        return out


def _extend(q: KoszulObject, images: dict, key):
    """Image of ``f (x) lam (x) g`` under the bimodule map determined by
    ``images``: ``f . images[lam] . g``; ``None`` if truncation interferes."""
    f, lam, g = key
    el = images.get(lam, {})
    out = {}
    for k2, c in el.items():
        left = q.act_l(f, k2)
        if left is None:
            return None
        for k3, c3 in left.items():
            right = q.act_r(k3, g)
            if right is None:
                return None
            for k4, c4 in right.items():
                _add(out, k4, c * c3 * c4)
    return out


def graded_hom_tetra(p: KoszulObject, q: KoszulObject, propagate: bool = True) -> GradedHom:
    """Solve the coaction conditions on generators.

    The unknowns are the images ``phi(1 (x) lam (x) 1)`` in ``Q^l``; a bimodule
    map out of the free bimodule ``P^{-k}`` is determined by them.  The
    conditions ``Delta_l phi(x) = (1 (x) phi) Delta_l(x)`` (and the right-hand
    version) are imposed at the generators.  With ``propagate`` the solution
    is then checked against the coaction conditions on every basis element
    of ``P^{-k}`` that the truncation allows.
    """
    S = p.S
    f = S.field
    gens = list(itertools.combinations(range(S.dimV), p.k))
    n = q.dim
    nunk = len(gens) * n
    # row keys: (side, generator, coefficient key)
    row_index = {}
    ent = []

    def row(key):
        r = row_index.get(key)
        if r is None:
            r = row_index[key] = len(row_index)
        return r

    for g0, lam0 in enumerate(gens):
        for j, qk in enumerate(q.basis):
            col = g0 * n + j
            images = {lam0: {qk: 1}}
            for g, lam in enumerate(gens):
                x = p.generator(lam)
                # left: Delta_l^Q(phi x) - (1 (x) phi) Delta_l^P(x)
                acc = {}
                if lam == lam0:
                    for k2, c in q.coact_l(qk).items():
                        _add(acc, ("L",) + k2, c)
                    for k2, c in q.coact_r(qk).items():
                        _add(acc, ("R",) + k2, c)
                for (s, xx), c in p.coact_l(x).items():
                    im = _extend(q, images, xx)
                    for k3, c3 in (im or {}).items():
                        _add(acc, ("L", s, k3), -c * c3)
                for (xx, s), c in p.coact_r(x).items():
                    im = _extend(q, images, xx)
                    for k3, c3 in (im or {}).items():
                        _add(acc, ("R", k3, s), -c * c3)
                for key, v in acc.items():
                    ent.append((row((g,) + key), col, v))
    C = Mat.from_entries(f, len(row_index), nunk, ent)
    space = kernel_basis(C)
    hom = GradedHom(p, q, gens, space, True)
    if propagate:
        hom.propagation_ok = _propagation_check(hom)
    return hom


def _propagation_check(hom: GradedHom) -> bool:
    """Every solution, extended as a bimodule map, intertwines both
    coactions on all basis elements where no truncation is involved."""
    p, q = hom.p, hom.q
    for row in hom.space.basis.rows():
        images = hom.images(row)
        memo = {}

        def ext(key):
            if key not in memo:
                memo[key] = _extend(q, images, key)
            return memo[key]

        top = max((q.degree(k) for el in images.values() for k in el), default=0)
        for key in p.basis:
            f, lam, g = key
            if top + p.S.deg[f] + p.S.deg[g] > p.S.N:
                continue
            im = ext(key)
            if im is None:
                continue
            lhs = {}
            for k2, c in im.items():
                for k3, c3 in q.coact_l(k2).items():
                    _add(lhs, k3, c * c3)
            rhs = {}
            for (s, xx), c in p.coact_l(key).items():
                for k3, c3 in (ext(xx) or {}).items():
                    _add(rhs, (s, k3), c * c3)
            if not _same(p.S.field, lhs, rhs):
                return False
            lhs = {}
            for k2, c in im.items():
                for k3, c3 in q.coact_r(k2).items():
                    _add(lhs, k3, c * c3)
            rhs = {}
            for (xx, s), c in p.coact_r(key).items():
                for k3, c3 in (ext(xx) or {}).items():
                    _add(rhs, (k3, s), c * c3)
            if not _same(p.S.field, lhs, rhs):
                return False
    return True


def _row(f, n, vec):
    return Mat.from_entries(f, n, 1, ((i, 0, v) for i, v in vec.items()))


def _hom_complex(P: KoszulResolution, Q: KoszulResolution, propagate=True):
    d = P.dimV
    f = P.objects[0].S.field
    homs = {(k, l): graded_hom_tetra(P.objects[k], Q.objects[l], propagate)
            for k in range(d + 1) for l in range(d + 1)}
    top = 2 * d
    pieces, dims = {}, {}
    for n in range(top + 1):
        off, lst = 0, []
        for k in range(max(0, n - d), min(n, d) + 1):
            l = n - k
            lst.append((k, l, off, homs[(k, l)].dim))
            off += homs[(k, l)].dim
        pieces[n], dims[n] = lst, off
    blocks = {}
    diff = {}
    for n in range(top):
        offs = {(k, l): off for k, l, off, _ in pieces[n + 1]}
        ent = []
        sign = -1 if n % 2 == 0 else 1
        for k, l, off, _ in pieces[n]:
            h = homs[(k, l)]
            for j, row in enumerate(h.space.basis.rows()):
                images = h.images(row)
                if l < d:
                    # d_Q o phi on generators of P^{-k}
                    dq = Q.differential[l]
                    new = {lam: _apply(dq, el) for lam, el in images.items()}
                    tgt = homs[(k, l + 1)]
                    for i, _, v in tgt.space.coordinates(
                            _row(f, tgt.space.ambient_dim, tgt.vector(new))).entries():
                        ent.append((offs[(k, l + 1)] + i, off + j, v))
                if k < d:
                    # phi o d_P on generators of P^{-(k+1)}
                    tgt = homs[(k + 1, l)]
                    dp = P.differential[k + 1]
                    new = {}
                    for lam in tgt.gens:
                        acc = {}
                        for key, c in dp(P.objects[k + 1].generator(lam)).items():
                            im = _extend(Q.objects[l], images, key)
                            if im is None:
                                raise AssertionError("truncation too small for the Hom differential")
                            for k3, c3 in im.items():
                                _add(acc, k3, sign * c * c3)
                        new[lam] = acc
                    for i, _, v in tgt.space.coordinates(
                            _row(f, tgt.space.ambient_dim, tgt.vector(new))).entries():
                        ent.append((offs[(k + 1, l)] + i, off + j, v))
        diff[n] = Mat.from_entries(f, dims[n + 1], dims[n], ent)
    for n, m in diff.items():
        blocks[n] = m.is_zero()
    return homs, pieces, Complex(f, 0, top, dims, diff), blocks


def sv_gs_cohomology(dimV: int, N: int | None = None, K: int | None = None, field=QQ,
                     stabilize: bool = True, check: bool = True) -> CohomologyReport:
    """``H^n_GS(S(V))`` for ``n <= K`` via the Koszul pair.

    Raises :class:`StabilizationError` if truncation at ``N`` and ``N + 1``
    disagree.
    """
    if K is None:
        K = 2 * dimV
    if K > 2 * dimV:
        raise ValueError("K <= 2 dimV")
    if N is None:
        N = K + 4
    if N < dimV + 2:
        raise ValueError("N >= dimV + 2")

    def run(n, chk=check):
        P = koszul_P(dimV, n, field, chk)
        Q = koszul_Q(dimV, n, field, chk)
        homs, pieces, cx, zero = _hom_complex(P, Q, propagate=chk)
        H = cohomology(cx, degrees=range(K + 1), representatives=False)
        return P, Q, homs, cx, zero, {k: H[k][0] for k in range(K + 1)}

    P, Q, homs, cx, zero, dims = run(N)
    checks = []
    if check:
        for name, ok in P.checks.items():
            checks.append({"name": f"P: {name}", "pass": ok})
        for name, ok in Q.checks.items():
            checks.append({"name": f"Q: {name}", "pass": ok})
        checks.append({"name": "coaction conditions propagate",
                       "pass": all(h.propagation_ok for h in homs.values())})
    checks.append({"name": "Hom differential is zero", "pass": all(zero.values())})
    dims_kl = {f"{k},{l}": h.dim for (k, l), h in homs.items()}
    refine = {}
    for (k, l), h in homs.items():
        n = k + l
        if n > K:
            continue
        for deg, c in h.internal_degrees().items():
            refine.setdefault(n, {})
            refine[n][deg] = refine[n].get(deg, 0) + c
    info = {"N": N, "hom_dims": dims_kl,
            "internal_degrees": {n: dict(sorted(v.items(), key=str)) for n, v in refine.items()},
            "expected": expected_dims(dimV, K)}
    if stabilize:
        dims2 = run(N + 1, False)[5]
        ok = dims2 == dims
        checks.append({"name": f"stable from N={N} to N={N + 1}", "pass": ok})
        if not ok:
            raise StabilizationError(f"truncation {N} gives {dims}, {N + 1} gives {dims2}")
    return CohomologyReport("koszul", f"S(V), dim V = {dimV}", dims, (0, K), {}, checks, info)
