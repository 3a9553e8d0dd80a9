"""The interchange map

    eta_{M,N,P,Q}: (M (x)2 N) (x)1 (P (x)2 Q) -> (M (x)1 P) (x)2 (N (x)1 Q)

and executable checks of the 2-fold monoidal axioms for it.

eta is built in three steps: the factor swap phi0 on the external products,
its push-forward phi1 to (M (x)1 P) [x]2 (N (x)1 Q) which must kill the
(x)1 relations, and the restriction to the (x)2 sub-objects whose image must
land in the target sub-object.  Every step is checked, not assumed.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field

from .checks import AxiomReport, compare
from .exactlin import Mat, kronecker, perm_matrix, rank
from .tensor import (ProductCache, associator1, associator2, boxtimes1, boxtimes2,
                     otimes1_map, otimes2_map, unit_isos)
from .tetramodule import (TetraMap, build_recipe, hom_matrices, hom_space,
                          sample_tetramodule, tautological)

__all__ = [
    "EtaConstructionError", "EtaResult", "Interchange", "phi0", "eta",
    "check_unit_conditions", "check_internal_assoc", "check_external_assoc",
    "check_naturality", "twelve_left", "twelve_right", "coherence_sweep",
    "tuple_recipes", "run_tuple",
]


class EtaConstructionError(AssertionError):
    """One of the three construction steps failed (names the step)."""


def phi0(m, n, p, q) -> TetraMap:
    """Swap of the middle factors, ``(m[x]2 n)[x]1(p[x]2 q) -> (m[x]1 p)[x]2(n[x]1 q)``."""
    src = boxtimes1(boxtimes2(m, n), boxtimes2(p, q))
    tgt = boxtimes2(boxtimes1(m, p), boxtimes1(n, q))
    P = perm_matrix(m.base.field, [m.dim, n.dim, p.dim, q.dim], (0, 2, 1, 3))
    return TetraMap(src, tgt, P)


@dataclass
class EtaResult:
    map: TetraMap
    src: object          # witness of (M(x)2N)(x)1(P(x)2Q)
    tgt: object          # witness of (M(x)1P)(x)2(N(x)1Q)
    steps: AxiomReport

    @property
    def matrix(self) -> Mat:
        return self.map.matrix

    def diagnostics(self) -> dict:
        r = rank(self.matrix)
        return {"source_dim": self.matrix.ncols, "target_dim": self.matrix.nrows,
                "rank": r, "injective": r == self.matrix.ncols,
                "surjective": r == self.matrix.nrows}


class Interchange:
    """Builds eta and the maps of the coherence diagrams over one shared
    :class:`ProductCache`, so composable pieces agree on bases."""

    def __init__(self, base, cache: ProductCache | None = None, verify_phi0: bool = False):
        self.base = base
        self.cache = cache or ProductCache()
        self.A = tautological(base)
        self.verify_phi0 = verify_phi0
        self._eta = {}
        self._units = {}

    # products
    def o1(self, m, n):
        return self.cache.o1(m, n)

    def o2(self, m, n):
        return self.cache.o2(m, n)

    def units(self, m):
        key = id(m)
        if key not in self._units:
            self._units[key] = (m, unit_isos(m, check=False, cache=self.cache, unit=self.A))
        return self._units[key][1]

    def eta(self, m, n, p, q) -> EtaResult:
        key = (id(m), id(n), id(p), id(q))
        if key in self._eta:
            return self._eta[key][1]
        res = self._build(m, n, p, q)
        self._eta[key] = ((m, n, p, q), res)
        return res

    def _build(self, m, n, p, q) -> EtaResult:
        f = self.base.field
        steps = AxiomReport("eta construction")
        swap = phi0(m, n, p, q)
        if self.verify_phi0:
            ok = swap.verify().ok
            steps.add("step 1: phi0 is a tetramodule map", ok)
            if not ok:
                raise EtaConstructionError("step 1: phi0 is not a tetramodule map")
        mn, pq = self.o2(m, n), self.o2(p, q)
        mp, nq = self.o1(m, p), self.o1(n, q)
        src = self.o1(mn.result, pq.result)
        tgt = self.o2(mp.result, nq.result)
        # step 2: phi1 kills (x)1 relations of (m[x]2 n)(x)1(p[x]2 q)
        phi1 = kronecker([mp.structural, nq.structural]) @ swap.matrix
        bmn, bpq = mn.ambient, pq.ambient
        rel = (kronecker([bmn.act_r, Mat.identity(f, bpq.dim)])
               - kronecker([Mat.identity(f, bmn.dim), bpq.act_l]))
        ok = (phi1 @ rel).is_zero()
        steps.add("step 2: phi1 kills the (x)1 relations", ok)
        if not ok:
            raise EtaConstructionError("step 2: phi1 does not descend to the (x)1 quotient")
        # step 3: restrict to the (x)2 sub-objects, land in the target sub-object
        Y = phi1 @ kronecker([mn.structural, pq.structural]) @ src.splitting
        inside = tgt.structural @ (tgt.splitting @ Y)
        ok = inside == Y
        steps.add("step 3: image lies in the (x)2 sub-object", ok)
        if not ok:
            raise EtaConstructionError("step 3: image leaves (M(x)1P)(x)2(N(x)1Q)")
        X = tgt.splitting @ Y
        return EtaResult(TetraMap(src.result, tgt.result, X), src, tgt, steps)

    # map functoriality on computed products
    def map1(self, a, b, c, d, f: Mat, g: Mat) -> Mat:
        """``f (x)1 g: a (x)1 b -> c (x)1 d``."""
        return otimes1_map(self.o1(a, b), self.o1(c, d), f, g)

    def map2(self, a, b, c, d, f: Mat, g: Mat) -> Mat:
        return otimes2_map(self.o2(a, b), self.o2(c, d), f, g)


def eta(m, n, p, q, verify_phi0: bool = True) -> EtaResult:
    return Interchange(m.base, verify_phi0=verify_phi0).eta(m, n, p, q)


# ---------------------------------------------------------------------------
# unit conditions and the two comparison maps

def _I(x):
    return Mat.identity(x.base.field, x.dim)


def check_unit_conditions(m, n, ctx: Interchange | None = None) -> AxiomReport:
    ctx = ctx or Interchange(m.base)
    A = ctx.A
    rep = AxiomReport("unit conditions")
    uA = ctx.units(A)
    um, un = ctx.units(m), ctx.units(n)
    DA = uA["coact_l"].forward.matrix          # A -> A (x)2 A
    mA = uA["m_l"].forward.matrix              # A (x)1 A -> A
    AA2 = ctx.o2(A, A).result
    AA1 = ctx.o1(A, A).result

    # internal: eta_{M,N,A,A} and eta_{A,A,M,N} normalise to id of M(x)2N
    MN2 = ctx.o2(m, n).result
    uMN2 = ctx.units(MN2)
    e = ctx.eta(m, n, A, A)
    pre = ctx.map1(MN2, A, MN2, AA2, _I(MN2), DA) @ uMN2["m_r"].inverse.matrix
    post = ctx.map2(ctx.o1(m, A).result, ctx.o1(n, A).result, m, n,
                    um["m_r"].forward.matrix, un["m_r"].forward.matrix)
    compare(rep, "internal eta_{M,N,A,A} = id", post @ e.matrix @ pre, _I(MN2))
    e = ctx.eta(A, A, m, n)
    pre = ctx.map1(A, MN2, AA2, MN2, DA, _I(MN2)) @ uMN2["m_l"].inverse.matrix
    post = ctx.map2(ctx.o1(A, m).result, ctx.o1(A, n).result, m, n,
                    um["m_l"].forward.matrix, un["m_l"].forward.matrix)
    compare(rep, "internal eta_{A,A,M,N} = id", post @ e.matrix @ pre, _I(MN2))

    # external: eta_{M,A,N,A} and eta_{A,M,A,N} normalise to id of M(x)1N
    MN1 = ctx.o1(m, n).result
    uMN1 = ctx.units(MN1)
    e = ctx.eta(m, A, n, A)
    pre = ctx.map1(m, n, ctx.o2(m, A).result, ctx.o2(n, A).result,
                   um["coact_r"].forward.matrix, un["coact_r"].forward.matrix)
    post = uMN1["coact_r"].inverse.matrix @ ctx.map2(MN1, AA1, MN1, A, _I(MN1), mA)
    compare(rep, "external eta_{M,A,N,A} = id", post @ e.matrix @ pre, _I(MN1))
    e = ctx.eta(A, m, A, n)
    pre = ctx.map1(m, n, ctx.o2(A, m).result, ctx.o2(A, n).result,
                   um["coact_l"].forward.matrix, un["coact_l"].forward.matrix)
    post = uMN1["coact_l"].inverse.matrix @ ctx.map2(AA1, MN1, A, MN1, mA, _I(MN1))
    compare(rep, "external eta_{A,M,A,N} = id", post @ e.matrix @ pre, _I(MN1))
    return rep


def twelve_left(m, n, ctx: Interchange | None = None) -> tuple:
    """``eta_{M,A,A,N}`` normalised to ``M(x)1N -> M(x)2N`` together with the
    direct formula ``m (x) n |-> m_0 n_- (x) m_1 n_0`` pushed through the
    same quotient and sub-object; returns ``(from_eta, from_formula)``."""
    ctx = ctx or Interchange(m.base)
    A = ctx.A
    f = m.base.field
    um, un = ctx.units(m), ctx.units(n)
    e = ctx.eta(m, A, A, n)
    pre = ctx.map1(m, n, ctx.o2(m, A).result, ctx.o2(A, n).result,
                   um["coact_r"].forward.matrix, un["coact_l"].forward.matrix)
    post = ctx.map2(ctx.o1(m, A).result, ctx.o1(A, n).result, m, n,
                    um["m_r"].forward.matrix, un["m_l"].forward.matrix)
    a = m.base.dim
    raw = (kronecker([m.act_r, n.act_l])
           @ perm_matrix(f, [m.dim, a, a, n.dim], (0, 2, 1, 3))
           @ kronecker([m.coact_r, n.coact_l]))
    w1, w2 = ctx.o1(m, n), ctx.o2(m, n)
    return post @ e.matrix @ pre, w2.splitting @ raw @ w1.splitting


def twelve_right(m, n, ctx: Interchange | None = None) -> tuple:
    """``eta_{A,M,N,A}`` normalised to ``M(x)1N -> N(x)2M`` and the formula
    ``m (x) n |-> m_- n_0 (x) m_0 n_1``."""
    ctx = ctx or Interchange(m.base)
    A = ctx.A
    f = m.base.field
    um, un = ctx.units(m), ctx.units(n)
    e = ctx.eta(A, m, n, A)
    pre = ctx.map1(m, n, ctx.o2(A, m).result, ctx.o2(n, A).result,
                   um["coact_l"].forward.matrix, un["coact_r"].forward.matrix)
    post = ctx.map2(ctx.o1(A, n).result, ctx.o1(m, A).result, n, m,
                    un["m_l"].forward.matrix, um["m_r"].forward.matrix)
    a = m.base.dim
    # (m_-, m_0, n_0, n_1) -> (m_-, n_0, m_0, n_1) -> (m_- n_0, m_0 n_1)
    raw = (kronecker([n.act_l, m.act_r])
           @ perm_matrix(f, [a, m.dim, n.dim, a], (0, 2, 1, 3))
           @ kronecker([m.coact_l, n.coact_r]))
    w1, w2 = ctx.o1(m, n), ctx.o2(n, m)
    return post @ e.matrix @ pre, w2.splitting @ raw @ w1.splitting


# ---------------------------------------------------------------------------
# associativity diagrams

def check_internal_assoc(u, v, w, x, y, z, ctx: Interchange | None = None) -> bool:
    """Both paths around the internal-associativity square agree once the
    corners are identified by the canonical associators."""
    ctx = ctx or Interchange(u.base)
    c = ctx.cache
    UV, WX, YZ = ctx.o2(u, v).result, ctx.o2(w, x).result, ctx.o2(y, z).result
    # path 1: eta_{U,V,W,X} (x)1 id, then eta_{U(x)1W, V(x)1X, Y, Z}
    e1 = ctx.eta(u, v, w, x)
    S1, T1 = e1.src.result, e1.tgt.result
    step = ctx.map1(S1, YZ, T1, YZ, e1.matrix, _I(YZ))
    UW, VX = e1.tgt.left, e1.tgt.right
    e2 = ctx.eta(UW, VX, y, z)
    path1 = e2.matrix @ step
    # path 2: id (x)1 eta_{W,X,Y,Z}, then eta_{U,V,W(x)1Y,X(x)1Z}
    e3 = ctx.eta(w, x, y, z)
    S3, T3 = e3.src.result, e3.tgt.result
    step = ctx.map1(UV, S3, UV, T3, _I(UV), e3.matrix)
    WY, XZ = e3.tgt.left, e3.tgt.right
    e4 = ctx.eta(u, v, WY, XZ)
    path2 = e4.matrix @ step
    a_src = associator1(UV, WX, YZ, c).matrix
    a_uwy = associator1(u, w, y, c).matrix
    a_vxz = associator1(v, x, z, c).matrix
    UWY = ctx.o1(UW, y).result
    VXZ = ctx.o1(VX, z).result
    U_WY = ctx.o1(u, WY).result
    V_XZ = ctx.o1(v, XZ).result
    a_tgt = ctx.map2(UWY, VXZ, U_WY, V_XZ, a_uwy, a_vxz)
    return path2 @ a_src == a_tgt @ path1


def check_external_assoc(u, v, w, x, y, z, ctx: Interchange | None = None) -> bool:
    ctx = ctx or Interchange(u.base)
    c = ctx.cache
    UV, XY = ctx.o2(u, v).result, ctx.o2(x, y).result
    VW, YZ = ctx.o2(v, w).result, ctx.o2(y, z).result
    # top then right
    e_top = ctx.eta(UV, w, XY, z)
    e_uvxy = ctx.eta(u, v, x, y)
    WZ = e_top.tgt.right
    right = ctx.map2(e_uvxy.src.result, WZ, e_uvxy.tgt.result, WZ, e_uvxy.matrix, _I(WZ))
    path1 = right @ e_top.matrix
    # left then bottom
    e_left = ctx.eta(u, VW, x, YZ)
    e_vwyz = ctx.eta(v, w, y, z)
    UX = e_left.tgt.left
    bottom = ctx.map2(UX, e_vwyz.src.result, UX, e_vwyz.tgt.result, _I(UX), e_vwyz.matrix)
    path2 = bottom @ e_left.matrix
    a_uvw = associator2(u, v, w, c).matrix
    a_xyz = associator2(x, y, z, c).matrix
    a_src = ctx.map1(ctx.o2(UV, w).result, ctx.o2(XY, z).result,
                     ctx.o2(u, VW).result, ctx.o2(x, YZ).result, a_uvw, a_xyz)
    UX_, VY = e_uvxy.tgt.left, e_uvxy.tgt.right
    a_tgt = associator2(UX_, VY, WZ, c).matrix
    return path2 @ a_src == a_tgt @ path1


# ---------------------------------------------------------------------------
# naturality

def check_naturality(f: TetraMap, position: int, others, ctx: Interchange | None = None) -> bool:
    """Insert ``f: X -> X'`` at argument ``position`` (1..4) of eta with the
    three ``others`` fixed, and compare both composites."""
    if position not in (1, 2, 3, 4):
        raise ValueError("position must be 1..4")
    ctx = ctx or Interchange(f.source.base)
    others = list(others)
    src_args = others[:position - 1] + [f.source] + others[position - 1:]
    tgt_args = others[:position - 1] + [f.target] + others[position - 1:]
    m, n, p, q = src_args
    m2, n2, p2, q2 = tgt_args
    F = f.matrix
    e = ctx.eta(m, n, p, q)
    e2 = ctx.eta(m2, n2, p2, q2)
    I = _I
    mn, pq = ctx.o2(m, n).result, ctx.o2(p, q).result
    mn2, pq2 = ctx.o2(m2, n2).result, ctx.o2(p2, q2).result
    mp, nq = ctx.o1(m, p).result, ctx.o1(n, q).result
    mp2, nq2 = ctx.o1(m2, p2).result, ctx.o1(n2, q2).result
    fm = F if position == 1 else I(m)
    fn = F if position == 2 else I(n)
    fp = F if position == 3 else I(p)
    fq = F if position == 4 else I(q)
    src_map = ctx.map1(mn, pq, mn2, pq2, ctx.map2(m, n, m2, n2, fm, fn),
                       ctx.map2(p, q, p2, q2, fp, fq))
    tgt_map = ctx.map2(mp, nq, mp2, nq2, ctx.map1(m, p, m2, p2, fm, fp),
                       ctx.map1(n, q, n2, q2, fn, fq))
    return e2.matrix @ src_map == tgt_map @ e.matrix


# ---------------------------------------------------------------------------
# seeded sweep

@dataclass
class SweepResult:
    checks: int = 0
    failures: list = field(default_factory=list)
    tuples: int = 0

    @property
    def ok(self):
        return not self.failures


def tuple_recipes(b, seed: int, max_dim: int = 3) -> dict:
    """The objects used for ``seed``: six arguments and a morphism target.

    The target contains a copy of the first argument, so the random
    morphism used for naturality is never forced to be zero."""
    objs = [sample_tetramodule(b, 6 * seed + i, max_dim).name for i in range(6)]
    extra = sample_tetramodule(b, 10_000 + seed, max_dim).name
    return {"seed": seed, "recipes": objs, "target": f"({objs[0]}) + ({extra})"}


def _digest(m: Mat) -> str:
    h = hashlib.sha256()
    h.update(f"{m.nrows}x{m.ncols}".encode())
    for i, j, v in m.entries():
        h.update(f";{i},{j},{v}".encode())
    return h.hexdigest()[:16]


def run_tuple(b, spec: dict) -> list:
    """All coherence checks on one tuple; returns ``[(name, ok, detail)]``.

    ``spec`` is what :func:`tuple_recipes` returns (or a dumped failure), so a
    tuple can be replayed from its recipes alone.
    """
    u, v, w, x, y, z = [build_recipe(b, r) for r in spec["recipes"]]
    out = []
    ctx = Interchange(b, verify_phi0=True)
    try:
        e = ctx.eta(u, v, w, x)
        out.append(("phi0 is a tetramodule map", e.steps.get("step 1: phi0 is a tetramodule map").ok, None))
        out.append(("eta construction", e.steps.ok, {"eta_digest": _digest(e.matrix)}))
        for c in check_unit_conditions(u, v, ctx).checks:
            out.append((c.name, c.ok, c.witness))
        l1, l2 = twelve_left(u, v, ctx)
        out.append(("eta_{M,A,A,N} matches the direct formula", l1 == l2, None))
        r1, r2 = twelve_right(u, v, ctx)
        out.append(("eta_{A,M,N,A} matches the direct formula", r1 == r2, None))
        out.append(("internal associativity", check_internal_assoc(u, v, w, x, y, z, ctx), None))
        out.append(("external associativity", check_external_assoc(u, v, w, x, y, z, ctx), None))
        rng = random.Random(spec["seed"])
        tgt = build_recipe(b, spec["target"])
        H = hom_matrices(hom_space(u, tgt), u, tgt)
        X = Mat.zeros(b.field, tgt.dim, u.dim)
        for h in H:
            # +-1 coefficients keep X nonzero in every characteristic
            X = X + h.scale(rng.choice((-1, 1)))
        fmap = TetraMap(u, tgt, X)
        out.append(("random morphism is a nonzero tetramodule map",
                    fmap.verify().ok and not X.is_zero(), {"hom_dim": len(H)}))
        for pos in (1, 2, 3, 4):
            out.append((f"naturality at position {pos}",
                        check_naturality(fmap, pos, [v, w, x], ctx), None))
    except AssertionError as exc:
        out.append((f"construction: {exc}", False, None))
    return out


def coherence_sweep(b, seeds, max_dim: int = 3, on_failure=None) -> SweepResult:
    """Run every coherence check on seeded random tuples.

    A failure is recorded as the tuple spec plus the failing check name, which
    is enough for :func:`run_tuple` to replay it.
    """
    out = SweepResult()
    for s in seeds:
        spec = tuple_recipes(b, s, max_dim)
        out.tuples += 1
        for name, ok, _ in run_tuple(b, spec):
            out.checks += 1
            if not ok:
                fail = dict(spec, check=name)
                out.failures.append(fail)
                if on_failure:
                    on_failure(fail)
    return out
