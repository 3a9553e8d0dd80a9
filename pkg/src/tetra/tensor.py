"""External products, internal products, unit isomorphisms, induced and
coinduced objects.

``boxtimes1`` keeps the left action of the left factor and the right action
of the right factor and multiplies the coaction legs; ``boxtimes2`` is the
dual recipe.  ``otimes1`` is the quotient of ``M boxtimes_1 N`` by
``ma (x) n - m (x) an``; ``otimes2`` is the sub-object of ``M boxtimes_2 N``
cut out by ``Delta_r (x) id = id (x) Delta_l``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

from .checks import AxiomReport, compare
from .exactlin import Mat, image_basis, kernel_basis, kronecker, perm_matrix, quotient_data
from .tetramodule import (Bicomodule, Bimodule, TetraMap, Tetramodule, forget1,
                          forget2, hom_space, quotient_object, sub_object,
                          tautological)

__all__ = [
    "boxtimes1", "boxtimes2", "boxtimes1_all", "boxtimes2_all", "ProductWitness",
    "otimes1", "otimes2", "otimes1_map", "otimes2_map", "UnitIso", "unit_isos",
    "check_unit_isos", "induce", "coinduce", "canonical_epi", "canonical_mono",
    "adjunction_check", "adjunction_check2", "ProductCache", "associator1",
    "associator1_inverse", "associator2", "associator2_inverse",
]


class _Partial:
    """Space carrying whichever structure maps survive a partial product."""

    def __init__(self, base, dim, maps, name=""):
        self.base, self.dim, self.name = base, dim, name
        self._maps = tuple(k for k in ("act_l", "act_r", "coact_l", "coact_r")
                           if maps.get(k) is not None)
        for k in self._maps:
            setattr(self, k, maps[k])

    def has(self, k):
        return k in self._maps


def _finish(base, dim, maps, name):
    if all(maps.get(k) is not None for k in ("act_l", "act_r", "coact_l", "coact_r")):
        return Tetramodule(base, dim, maps["act_l"], maps["act_r"],
                           maps["coact_l"], maps["coact_r"], name=name)
    return _Partial(base, dim, maps, name)


def _has(m, k):
    return m.has(k)


def _shared_base(m, n):
    if m.base is not n.base and not m.base.same_structure(n.base):
        raise ValueError("objects live over different bialgebras")
    return m.base


def boxtimes1(m, n):
    b = _shared_base(m, n)
    f, a = b.field, b.dim
    dm, dn = m.dim, n.dim
    Im, In_ = Mat.identity(f, dm), Mat.identity(f, dn)
    maps = {}
    if _has(m, "act_l"):
        maps["act_l"] = kronecker([m.act_l, In_])
    if _has(n, "act_r"):
        maps["act_r"] = kronecker([Im, n.act_r])
    if _has(m, "coact_l") and _has(n, "coact_l"):
        maps["coact_l"] = (kronecker([b.mult, Im, In_])
                           @ perm_matrix(f, [a, dm, a, dn], (0, 2, 1, 3))
                           @ kronecker([m.coact_l, n.coact_l]))
    if _has(m, "coact_r") and _has(n, "coact_r"):
        maps["coact_r"] = (kronecker([Im, In_, b.mult])
                           @ perm_matrix(f, [dm, a, dn, a], (0, 2, 1, 3))
                           @ kronecker([m.coact_r, n.coact_r]))
    return _finish(b, dm * dn, maps, f"{m.name}[x]1{n.name}")


def boxtimes2(m, n):
    b = _shared_base(m, n)
    f, a = b.field, b.dim
    dm, dn = m.dim, n.dim
    Im, In_ = Mat.identity(f, dm), Mat.identity(f, dn)
    maps = {}
    if _has(m, "act_l") and _has(n, "act_l"):
        maps["act_l"] = (kronecker([m.act_l, n.act_l])
                         @ perm_matrix(f, [a, a, dm, dn], (0, 2, 1, 3))
                         @ kronecker([b.comult, Im, In_]))
    if _has(m, "act_r") and _has(n, "act_r"):
        maps["act_r"] = (kronecker([m.act_r, n.act_r])
                         @ perm_matrix(f, [dm, dn, a, a], (0, 2, 1, 3))
                         @ kronecker([Im, In_, b.comult]))
    if _has(m, "coact_l"):
        maps["coact_l"] = kronecker([m.coact_l, In_])
    if _has(n, "coact_r"):
        maps["coact_r"] = kronecker([Im, n.coact_r])
    return _finish(b, dm * dn, maps, f"{m.name}[x]2{n.name}")


def boxtimes1_all(objs):
    return reduce(boxtimes1, objs)


def boxtimes2_all(objs):
    return reduce(boxtimes2, objs)


@dataclass(frozen=True, eq=False)
class ProductWitness:
    """Result of an internal product.

    For ``otimes1``: ``structural`` is the projection from the ambient
    ``boxtimes_1`` space and ``splitting`` a section of it.  For ``otimes2``:
    ``structural`` is the inclusion into the ambient ``boxtimes_2`` space and
    ``splitting`` a left inverse.
    """

    kind: str
    result: Tetramodule
    structural: Mat
    splitting: Mat
    ambient: Tetramodule
    left: object
    right: object

    @property
    def dim(self):
        return self.result.dim

    def structural_map(self) -> TetraMap:
        if self.kind == "otimes1":
            return TetraMap(self.ambient, self.result, self.structural)
        return TetraMap(self.result, self.ambient, self.structural)


def otimes1(m, n) -> ProductWitness:
    b = _shared_base(m, n)
    f = b.field
    Im, In_ = Mat.identity(f, m.dim), Mat.identity(f, n.dim)
    amb = boxtimes1(m, n)
    rel = kronecker([m.act_r, In_]) - kronecker([Im, n.act_l])
    S = image_basis(rel)
    proj, sect = quotient_data(amb.dim, S)
    res = quotient_object(amb, proj, sect, S.inclusion(), name=f"{m.name}(x)1{n.name}")
    return ProductWitness("otimes1", res, proj, sect, amb, m, n)


def otimes2(m, n) -> ProductWitness:
    b = _shared_base(m, n)
    f = b.field
    Im, In_ = Mat.identity(f, m.dim), Mat.identity(f, n.dim)
    amb = boxtimes2(m, n)
    eq = kronecker([m.coact_r, In_]) - kronecker([Im, n.coact_l])
    K = kernel_basis(eq)
    incl, lam = K.inclusion(), K.left_inverse()
    res = sub_object(amb, incl, lam, name=f"{m.name}(x)2{n.name}")
    return ProductWitness("otimes2", res, incl, lam, amb, m, n)


def otimes1_map(src: ProductWitness, tgt: ProductWitness, f: Mat, g: Mat) -> Mat:
    """``f (x)_1 g`` between two computed quotients."""
    return tgt.structural @ kronecker([f, g]) @ src.splitting


def otimes2_map(src: ProductWitness, tgt: ProductWitness, f: Mat, g: Mat) -> Mat:
    """``f (x)_2 g`` between two computed sub-objects."""
    return tgt.splitting @ kronecker([f, g]) @ src.structural


# ---------------------------------------------------------------------------
# unit object

@dataclass(frozen=True, eq=False)
class UnitIso:
    name: str
    forward: TetraMap
    inverse: TetraMap
    witness: ProductWitness


def unit_isos(m: Tetramodule, check: bool = True, cache=None, unit=None) -> dict:
    """The four unit maps ``m_l: A(x)1 M -> M``, ``m_r: M(x)1 A -> M``,
    ``Delta_l: M -> A(x)2 M``, ``Delta_r: M -> M(x)2 A`` with inverses.

    ``cache`` (a :class:`ProductCache`) and ``unit`` (the tautological
    object) let callers share product bases with other constructions.
    """
    b = m.base
    A = unit if unit is not None else tautological(b)
    o1 = cache.o1 if cache is not None else otimes1
    o2 = cache.o2 if cache is not None else otimes2
    Id = m.identity()
    out = {}
    w = o1(A, m)
    out["m_l"] = UnitIso("m_l", TetraMap(w.result, m, m.act_l @ w.splitting),
                         TetraMap(m, w.result, w.structural @ kronecker([b.unit, Id])), w)
    w = o1(m, A)
    out["m_r"] = UnitIso("m_r", TetraMap(w.result, m, m.act_r @ w.splitting),
                         TetraMap(m, w.result, w.structural @ kronecker([Id, b.unit])), w)
    w = o2(A, m)
    out["coact_l"] = UnitIso("coact_l", TetraMap(m, w.result, w.splitting @ m.coact_l),
                             TetraMap(w.result, m, kronecker([b.counit, Id]) @ w.structural), w)
    w = o2(m, A)
    out["coact_r"] = UnitIso("coact_r", TetraMap(m, w.result, w.splitting @ m.coact_r),
                             TetraMap(w.result, m, kronecker([Id, b.counit]) @ w.structural), w)
    if check:
        rep = check_unit_isos(m, out)
        if not rep.ok:
            raise ValueError(f"unit maps are not isomorphisms:\n{rep}")
    return out


def check_unit_isos(m: Tetramodule, isos: dict | None = None) -> AxiomReport:
    if isos is None:
        isos = unit_isos(m, check=False)
    rep = AxiomReport(f"unit isomorphisms {m.name}".strip())
    for key, u in isos.items():
        F, G = u.forward.matrix, u.inverse.matrix
        ok_shape = F.nrows == G.ncols and F.ncols == G.nrows
        rep.add(f"{key} square", ok_shape and F.nrows == F.ncols,
                None if ok_shape else f"{F.shape} vs {G.shape}")
        if not ok_shape:
            continue
        compare(rep, f"{key} o inverse = id", F @ G, Mat.identity(m.field, F.nrows))
        compare(rep, f"inverse o {key} = id", G @ F, Mat.identity(m.field, F.ncols))
        if key.startswith("coact"):
            # the coaction must land inside the equalizer
            w = u.witness
            C = m.coact_l if key == "coact_l" else m.coact_r
            compare(rep, f"{key} lands in sub-object", w.structural @ (w.splitting @ C), C)
        rep.add(f"{key} is a tetramodule map", u.forward.verify().ok)
        rep.add(f"{key} inverse is a tetramodule map", u.inverse.verify().ok)
    return rep


# ---------------------------------------------------------------------------
# induced / coinduced objects

def induce(n: Bicomodule) -> Tetramodule:
    """``L(N) = A boxtimes_1 N boxtimes_1 A``."""
    A = tautological(n.base)
    out = boxtimes1(boxtimes1(A, n), A)
    return Tetramodule(out.base, out.dim, out.act_l, out.act_r, out.coact_l,
                       out.coact_r, name=f"L({n.name})")


def coinduce(m: Bimodule) -> Tetramodule:
    """``R(M) = A boxtimes_2 M boxtimes_2 A``."""
    A = tautological(m.base)
    out = boxtimes2(boxtimes2(A, m), A)
    return Tetramodule(out.base, out.dim, out.act_l, out.act_r, out.coact_l,
                       out.coact_r, name=f"R({m.name})")


def canonical_epi(m: Tetramodule) -> TetraMap:
    """``L(F_1 m) -> m``, ``a (x) x (x) b |-> a x b``."""
    X = m.act_r @ kronecker([m.act_l, m.base.identity()])
    return TetraMap(induce(forget1(m)), m, X)


def canonical_mono(m: Tetramodule) -> TetraMap:
    """``m -> R(F_2 m)``, ``x |-> x_- (x) x_0 (x) x_1``."""
    X = kronecker([m.coact_l, m.base.identity()]) @ m.coact_r
    return TetraMap(m, coinduce(forget2(m)), X)


def adjunction_check(n: Bicomodule, x: Tetramodule) -> bool:
    """``dim Hom(L n, x) == dim Hom_bicomod(n, F_1 x)``."""
    return hom_space(induce(n), x).dim == hom_space(n, forget1(x)).dim


def adjunction_check2(x: Tetramodule, m: Bimodule) -> bool:
    """``dim Hom(x, R m) == dim Hom_bimod(F_2 x, m)``."""
    return hom_space(x, coinduce(m)).dim == hom_space(forget2(x), m).dim


# ---------------------------------------------------------------------------
# associativity up to canonical isomorphism

class ProductCache:
    """Memoised internal products keyed on object identity, so that a
    diagram built from several pieces reuses one basis per object."""

    def __init__(self):
        self._memo = {}

    def _get(self, kind, m, n, fn):
        key = (kind, id(m), id(n))
        hit = self._memo.get(key)
        if hit is None:
            hit = (m, n, fn(m, n))   # keep m, n alive so ids stay unique
            self._memo[key] = hit
        return hit[2]

    def o1(self, m, n) -> ProductWitness:
        return self._get(1, m, n, otimes1)

    def o2(self, m, n) -> ProductWitness:
        return self._get(2, m, n, otimes2)


def associator1(m, n, p, cache: ProductCache | None = None) -> TetraMap:
    """Canonical ``(m(x)1 n)(x)1 p -> m(x)1 (n(x)1 p)``.

    Both sides are quotients of ``m (x) n (x) p``; the map lifts through the
    stored sections and projects back down.
    """
    c = cache or ProductCache()
    f = m.base.field
    mn = c.o1(m, n)
    l = c.o1(mn.result, p)
    np_ = c.o1(n, p)
    r = c.o1(m, np_.result)
    Im, Ip = Mat.identity(f, m.dim), Mat.identity(f, p.dim)
    X = r.structural @ kronecker([Im, np_.structural]) @ kronecker([mn.splitting, Ip]) @ l.splitting
    return TetraMap(l.result, r.result, X)


def associator1_inverse(m, n, p, cache: ProductCache | None = None) -> TetraMap:
    c = cache or ProductCache()
    f = m.base.field
    mn = c.o1(m, n)
    l = c.o1(mn.result, p)
    np_ = c.o1(n, p)
    r = c.o1(m, np_.result)
    Im, Ip = Mat.identity(f, m.dim), Mat.identity(f, p.dim)
    X = l.structural @ kronecker([mn.structural, Ip]) @ kronecker([Im, np_.splitting]) @ r.splitting
    return TetraMap(r.result, l.result, X)


def associator2(m, n, p, cache: ProductCache | None = None) -> TetraMap:
    """Canonical ``(m(x)2 n)(x)2 p -> m(x)2 (n(x)2 p)``; both sides are
    sub-objects of ``m (x) n (x) p``."""
    c = cache or ProductCache()
    f = m.base.field
    mn = c.o2(m, n)
    l = c.o2(mn.result, p)
    np_ = c.o2(n, p)
    r = c.o2(m, np_.result)
    Im, Ip = Mat.identity(f, m.dim), Mat.identity(f, p.dim)
    X = r.splitting @ kronecker([Im, np_.splitting]) @ kronecker([mn.structural, Ip]) @ l.structural
    return TetraMap(l.result, r.result, X)


def associator2_inverse(m, n, p, cache: ProductCache | None = None) -> TetraMap:
    c = cache or ProductCache()
    f = m.base.field
    mn = c.o2(m, n)
    l = c.o2(mn.result, p)
    np_ = c.o2(n, p)
    r = c.o2(m, np_.result)
    Im, Ip = Mat.identity(f, m.dim), Mat.identity(f, p.dim)
    X = l.splitting @ kronecker([mn.splitting, Ip]) @ kronecker([Im, np_.structural]) @ r.structural
    return TetraMap(r.result, l.result, X)
