"""Tetramodules, bimodules and bicomodules over a bialgebra, and their maps.

Structure maps are matrices in the lexicographic tensor bases:
``act_l: A(x)M -> M`` (A slowest), ``act_r: M(x)A -> M``,
``coact_l: M -> A(x)M`` and ``coact_r: M -> M(x)A``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Optional

from .bialgebra import Bialgebra
from .checks import AxiomReport, compare
from .exactlin import (Mat, Subspace, image_basis, kernel_basis, kronecker,
                       perm_matrix, quotient_data, tensor_index)

__all__ = [
    "Tetramodule", "Bimodule", "Bicomodule", "TetraMap", "StabilityError",
    "verify_tetramodule", "verify_bimodule", "verify_bicomodule", "verify_map",
    "tautological", "trivial_tetramodule", "trivial_bimodule", "trivial_bicomodule",
    "hom_space", "hom_matrices", "intertwiner_conditions",
    "kernel_tetra", "cokernel_tetra", "direct_sum", "forget1", "forget2",
    "sub_object", "quotient_object", "random_map", "sample_tetramodule",
    "build_recipe", "random_recipe",
]

_ACTIONS = ("act_l", "act_r")
_COACTIONS = ("coact_l", "coact_r")


class StabilityError(ValueError):
    """A subspace that should carry induced structure is not stable."""


class _Structured:
    """Shared plumbing: a space with some of the four structure maps."""

    _maps: tuple = ()

    def _check_shapes(self):
        n, d = self.base.dim, self.dim
        want = {"act_l": (d, n * d), "act_r": (d, d * n),
                "coact_l": (n * d, d), "coact_r": (d * n, d)}
        for key in self._maps:
            m = getattr(self, key)
            if m.shape != want[key]:
                raise ValueError(f"{key} has shape {m.shape}, expected {want[key]}")
            if m.field != self.base.field:
                raise ValueError(f"{key} is over the wrong field")

    def maps(self) -> dict:
        return {k: getattr(self, k) for k in self._maps}

    @property
    def field(self):
        return self.base.field

    def identity(self) -> Mat:
        return Mat.identity(self.base.field, self.dim)

    def has(self, key: str) -> bool:
        return key in self._maps

    def __repr__(self):
        tag = f" {self.name}" if getattr(self, "name", "") else ""
        return f"{type(self).__name__}({tag.strip() or '?'}, dim={self.dim})"


@dataclass(frozen=True, eq=False, repr=False)
class Tetramodule(_Structured):
    base: Bialgebra
    dim: int
    act_l: Mat
    act_r: Mat
    coact_l: Mat
    coact_r: Mat
    name: str = ""

    _maps = _ACTIONS + _COACTIONS

    def __post_init__(self):
        self._check_shapes()

    def same_structure(self, other) -> bool:
        return self.dim == other.dim and all(
            getattr(self, k) == getattr(other, k) for k in self._maps)


@dataclass(frozen=True, eq=False, repr=False)
class Bimodule(_Structured):
    base: Bialgebra
    dim: int
    act_l: Mat
    act_r: Mat
    name: str = ""

    _maps = _ACTIONS

    def __post_init__(self):
        self._check_shapes()


@dataclass(frozen=True, eq=False, repr=False)
class Bicomodule(_Structured):
    base: Bialgebra
    dim: int
    coact_l: Mat
    coact_r: Mat
    name: str = ""

    _maps = _COACTIONS

    def __post_init__(self):
        self._check_shapes()


def _rebuild(like, dim, maps, name=""):
    cls = type(like)
    return cls(like.base, dim, *[maps[k] for k in cls._maps], name=name)


@dataclass(frozen=True, eq=False)
class TetraMap:
    """A linear map between structured spaces; ``matrix`` is ``target x source``."""

    source: object
    target: object
    matrix: Mat

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ValueError(f"map matrix has shape {self.matrix.shape}, expected "
                             f"{(self.target.dim, self.source.dim)}")

    def verify(self) -> AxiomReport:
        return verify_map(self.source, self.target, self.matrix)

    def compose(self, other: "TetraMap") -> "TetraMap":
        """``self o other``."""
        return TetraMap(other.source, self.target, self.matrix @ other.matrix)

    __matmul__ = compose


# ---------------------------------------------------------------------------
# verification

def _add_bimodule_checks(rep, m):
    b, n, d = m.base, m.base.dim, m.dim
    f = b.field
    In, Id = b.identity(), Mat.identity(f, d)
    L, R = m.act_l, m.act_r

    def wit(dims):
        return lambda r, c: {"basis": list(tensor_index(c, dims)), "row": r}

    compare(rep, "left action associative", L @ kronecker([b.mult, Id]),
            L @ kronecker([In, L]), wit([n, n, d]))
    compare(rep, "right action associative", R @ kronecker([Id, b.mult]),
            R @ kronecker([R, In]), wit([d, n, n]))
    compare(rep, "actions commute", R @ kronecker([L, In]), L @ kronecker([In, R]),
            wit([n, d, n]))
    compare(rep, "left unit acts trivially", L @ kronecker([b.unit, Id]), Id, wit([d]))
    compare(rep, "right unit acts trivially", R @ kronecker([Id, b.unit]), Id, wit([d]))


def _add_bicomodule_checks(rep, m):
    b, d = m.base, m.dim
    f = b.field
    In, Id = b.identity(), Mat.identity(f, d)
    Dl, Dr = m.coact_l, m.coact_r

    def wit(r, c):
        return {"basis": [c], "row": r}

    compare(rep, "left coaction coassociative", kronecker([b.comult, Id]) @ Dl,
            kronecker([In, Dl]) @ Dl, wit)
    compare(rep, "right coaction coassociative", kronecker([Dr, In]) @ Dr,
            kronecker([Id, b.comult]) @ Dr, wit)
    compare(rep, "coactions commute", kronecker([In, Dr]) @ Dl,
            kronecker([Dl, In]) @ Dr, wit)
    compare(rep, "left counit", kronecker([b.counit, Id]) @ Dl, Id, wit)
    compare(rep, "right counit", kronecker([Id, b.counit]) @ Dr, Id, wit)


def _add_compatibility_checks(rep, m):
    b, n, d = m.base, m.base.dim, m.dim
    f = b.field
    D, mu = b.comult, b.mult
    L, R, Dl, Dr = m.act_l, m.act_r, m.coact_l, m.coact_r
    swap = (0, 2, 1, 3)

    def wit(dims):
        return lambda r, c: {"basis": list(tensor_index(c, dims)), "row": r}

    # Delta_l(am) = a' m_- (x) a'' m_0
    compare(rep, "compatibility left coaction / left action", Dl @ L,
            kronecker([mu, L]) @ perm_matrix(f, [n, n, n, d], swap) @ kronecker([D, Dl]),
            wit([n, d]))
    # Delta_l(ma) = m_- a' (x) m_0 a''
    compare(rep, "compatibility left coaction / right action", Dl @ R,
            kronecker([mu, R]) @ perm_matrix(f, [n, d, n, n], swap) @ kronecker([Dl, D]),
            wit([d, n]))
    # Delta_r(am) = a' m_0 (x) a'' m_1
    compare(rep, "compatibility right coaction / left action", Dr @ L,
            kronecker([L, mu]) @ perm_matrix(f, [n, n, d, n], swap) @ kronecker([D, Dr]),
            wit([n, d]))
    # Delta_r(ma) = m_0 a' (x) m_1 a''
    compare(rep, "compatibility right coaction / right action", Dr @ R,
            kronecker([R, mu]) @ perm_matrix(f, [d, n, n, n], swap) @ kronecker([Dr, D]),
            wit([d, n]))


def verify_tetramodule(m: Tetramodule) -> AxiomReport:
    rep = AxiomReport(f"tetramodule {m.name}".strip())
    _add_bimodule_checks(rep, m)
    _add_bicomodule_checks(rep, m)
    _add_compatibility_checks(rep, m)
    return rep


def verify_bimodule(m) -> AxiomReport:
    rep = AxiomReport(f"bimodule {m.name}".strip())
    _add_bimodule_checks(rep, m)
    return rep


def verify_bicomodule(m) -> AxiomReport:
    rep = AxiomReport(f"bicomodule {m.name}".strip())
    _add_bicomodule_checks(rep, m)
    return rep


def verify_map(src, tgt, X: Mat) -> AxiomReport:
    """Check that ``X`` intertwines every structure map both sides carry."""
    if src.base is not tgt.base and not src.base.same_structure(tgt.base):
        raise ValueError("source and target live over different bialgebras")
    b = src.base
    In = b.identity()
    rep = AxiomReport("structure map")
    keys = [k for k in src._maps if tgt.has(k)]
    for k in keys:
        S, T = getattr(src, k), getattr(tgt, k)
        if k == "act_l":
            compare(rep, k, X @ S, T @ kronecker([In, X]))
        elif k == "act_r":
            compare(rep, k, X @ S, T @ kronecker([X, In]))
        elif k == "coact_l":
            compare(rep, k, T @ X, kronecker([In, X]) @ S)
        else:
            compare(rep, k, T @ X, kronecker([X, In]) @ S)
    return rep


# ---------------------------------------------------------------------------
# constructors

def tautological(b: Bialgebra) -> Tetramodule:
    return Tetramodule(b, b.dim, b.mult, b.mult, b.comult, b.comult, name="A")


def trivial_tetramodule(b: Bialgebra, d: int) -> Tetramodule:
    """``k^d`` with counit actions and unit coactions.

    Only a tetramodule when ``dim A == 1``: otherwise the left coaction of
    ``g.m`` is ``1 (x) m`` while the compatibility demands ``g (x) m``.  The
    halves :func:`trivial_bimodule` and :func:`trivial_bicomodule` are always
    valid.
    """
    if d < 0:
        raise ValueError("dimension must be non-negative")
    Id = Mat.identity(b.field, d)
    return Tetramodule(b, d, kronecker([b.counit, Id]), kronecker([Id, b.counit]),
                       kronecker([b.unit, Id]), kronecker([Id, b.unit]),
                       name=f"triv{d}")


def trivial_bimodule(b: Bialgebra, d: int) -> Bimodule:
    Id = Mat.identity(b.field, d)
    return Bimodule(b, d, kronecker([b.counit, Id]), kronecker([Id, b.counit]),
                    name=f"trivmod({d})")


def trivial_bicomodule(b: Bialgebra, d: int) -> Bicomodule:
    Id = Mat.identity(b.field, d)
    return Bicomodule(b, d, kronecker([b.unit, Id]), kronecker([Id, b.unit]),
                      name=f"trivco({d})")


def forget1(m) -> Bicomodule:
    return Bicomodule(m.base, m.dim, m.coact_l, m.coact_r, name=m.name)


def forget2(m) -> Bimodule:
    return Bimodule(m.base, m.dim, m.act_l, m.act_r, name=m.name)


# ---------------------------------------------------------------------------
# Hom spaces

def _blocks(m, key):
    """Matrices B_t with the intertwining condition X B^src_t = B^tgt_t X."""
    n, d = m.base.dim, m.dim
    M = getattr(m, key)
    if key == "act_l":
        return [M.take_cols(range(a * d, (a + 1) * d)) for a in range(n)]
    if key == "act_r":
        return [M.take_cols(range(a, d * n, n)) for a in range(n)]
    if key == "coact_l":
        return [M.take_rows(range(a * d, (a + 1) * d)) for a in range(n)]
    return [M.take_rows(range(a, d * n, n)) for a in range(n)]


def intertwiner_conditions(src, tgt, keys=None) -> Mat:
    """Linear conditions on row-major ``vec(X)`` for ``X: src -> tgt``."""
    if keys is None:
        keys = [k for k in src._maps if tgt.has(k)]
    f = src.base.field
    ds, dt = src.dim, tgt.dim
    Is, It = Mat.identity(f, ds), Mat.identity(f, dt)
    rows = []
    for k in keys:
        for Bs, Bt in zip(_blocks(src, k), _blocks(tgt, k)):
            rows.append(It.kron(Bs.T) - Bt.kron(Is))
    if not rows:
        return Mat.zeros(f, 0, ds * dt)
    return Mat.vstack(rows)


def hom_space(m, n, keys=None) -> Subspace:
    """All structure-preserving ``X: m -> n`` as row-major vectors of length
    ``dim n * dim m``."""
    if m.base is not n.base and not m.base.same_structure(n.base):
        raise ValueError("hom_space needs a shared base bialgebra")
    return kernel_basis(intertwiner_conditions(m, n, keys))


def hom_matrices(space: Subspace, m, n) -> list:
    out = []
    dm, dn = m.dim, n.dim
    for r in space.basis.rows():
        out.append(Mat.from_entries(space.field, dn, dm,
                                    ((j // dm, j % dm, v) for j, v in r.items())))
    return out


# ---------------------------------------------------------------------------
# sub- and quotient objects

def sub_object(m, incl: Mat, lam: Mat, name=""):
    """Restrict the structure of ``m`` to the column span of ``incl``.

    ``lam`` is a left inverse of ``incl``.  Raises :class:`StabilityError`
    if some structure map leaves the subspace.
    """
    b = m.base
    In = b.identity()
    P = incl @ lam            # idempotent onto the subspace
    out = {}
    for k in m._maps:
        S = getattr(m, k)
        if k in _ACTIONS:
            Y = S @ (kronecker([In, incl]) if k == "act_l" else kronecker([incl, In]))
            if not (Y - P @ Y).is_zero():
                raise StabilityError(f"subspace not stable under {k}")
            out[k] = lam @ Y
        else:
            Y = S @ incl
            Pk = kronecker([In, P]) if k == "coact_l" else kronecker([P, In])
            if not (Y - Pk @ Y).is_zero():
                raise StabilityError(f"subspace not stable under {k}")
            out[k] = (kronecker([In, lam]) if k == "coact_l" else kronecker([lam, In])) @ Y
    return _rebuild(m, incl.ncols, out, name)


def quotient_object(m, proj: Mat, sect: Mat, rel: Mat, name=""):
    """Induced structure on ``m / span(columns of rel)``."""
    b = m.base
    In = b.identity()
    out = {}
    for k in m._maps:
        S = getattr(m, k)
        if k in _ACTIONS:
            wrap = (lambda X: kronecker([In, X])) if k == "act_l" else (lambda X: kronecker([X, In]))
            if not (proj @ S @ wrap(rel)).is_zero():
                raise StabilityError(f"relations not stable under {k}")
            out[k] = proj @ S @ wrap(sect)
        else:
            wrap = (lambda X: kronecker([In, X])) if k == "coact_l" else (lambda X: kronecker([X, In]))
            W = wrap(proj)
            if not (W @ S @ rel).is_zero():
                raise StabilityError(f"relations not stable under {k}")
            out[k] = W @ S @ sect
    return _rebuild(m, proj.nrows, out, name)


def kernel_tetra(f: TetraMap):
    K = kernel_basis(f.matrix)
    incl, lam = K.inclusion(), K.left_inverse()
    obj = sub_object(f.source, incl, lam, name="ker")
    return obj, TetraMap(obj, f.source, incl)


def cokernel_tetra(f: TetraMap):
    im = image_basis(f.matrix)
    proj, sect = quotient_data(f.target.dim, im)
    obj = quotient_object(f.target, proj, sect, im.inclusion(), name="coker")
    return obj, TetraMap(f.target, obj, proj)


def direct_sum(m, n):
    if m.base is not n.base and not m.base.same_structure(n.base):
        raise ValueError("direct_sum needs a shared base bialgebra")
    b = m.base
    f = b.field
    In = b.identity()
    D = m.dim + n.dim
    sel = lambda off, d: Mat.selection(f, D, range(off, off + d))
    pm, pn = sel(0, m.dim), sel(m.dim, n.dim)
    im, i_n = pm.T, pn.T
    out = {}
    for k in m._maps:
        if not n.has(k):
            continue
        Sm, Sn = getattr(m, k), getattr(n, k)
        if k == "act_l":
            out[k] = im @ Sm @ kronecker([In, pm]) + i_n @ Sn @ kronecker([In, pn])
        elif k == "act_r":
            out[k] = im @ Sm @ kronecker([pm, In]) + i_n @ Sn @ kronecker([pn, In])
        elif k == "coact_l":
            out[k] = kronecker([In, im]) @ Sm @ pm + kronecker([In, i_n]) @ Sn @ pn
        else:
            out[k] = kronecker([im, In]) @ Sm @ pm + kronecker([i_n, In]) @ Sn @ pn
    return _rebuild(m, D, out, name=f"({m.name}+{n.name})")


# ---------------------------------------------------------------------------
# random objects from axiom-preserving constructors

def random_map(src, tgt, rng: random.Random) -> TetraMap:
    """Random integer combination of a basis of ``hom_space(src, tgt)``."""
    H = hom_matrices(hom_space(src, tgt), src, tgt)
    X = Mat.zeros(src.base.field, tgt.dim, src.dim)
    for h in H:
        c = rng.choice((-2, -1, 1, 1, 2))
        X = X + h.scale(c)
    return TetraMap(src, tgt, X)


_TOKEN = re.compile(r"\s*(?:(\d+)|(\w+)|(.))")


def _tokens(s):
    s = s.replace("⊕", "+")
    for num, word, ch in _TOKEN.findall(s):
        if num:
            yield int(num)
        elif word:
            yield word
        elif ch.strip():
            yield ch


class _Parser:
    """Recipe grammar::

        expr  := term ('+' term)*
        term  := 'taut' | 'trivial' '(' int ')'
               | 'induce' '(' bico ')' | 'coinduce' '(' bimod ')'
               | ('ker' | 'coker') '(' expr ',' expr ',' int ')'
               | '(' expr ')'
        bico  := 'forget1' '(' expr ')' | 'trivco' '(' int ')'
        bimod := 'forget2' '(' expr ')' | 'trivmod' '(' int ')'

    ``ker(X, Y, s)`` is the kernel of a random map ``X -> Y`` drawn with seed ``s``.
    """

    def __init__(self, b, text):
        self.b = b
        self.toks = list(_tokens(text))
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, want=None):
        t = self.peek()
        if t is None or (want is not None and t != want):
            raise ValueError(f"recipe parse error near token {self.i}: expected {want!r}, got {t!r}")
        self.i += 1
        return t

    def parse(self):
        out = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing input in recipe at token {self.i}")
        return out

    def expr(self):
        m = self.term()
        while self.peek() == "+":
            self.take("+")
            m = direct_sum(m, self.term())
        return m

    def count(self):
        self.take("(")
        d = self.take()
        self.take(")")
        if not isinstance(d, int):
            raise ValueError(f"expected a dimension, got {d!r}")
        return d

    def half(self, forget, triv):
        t = self.take()
        if t == forget:
            self.take("(")
            m = self.expr()
            self.take(")")
            return forget1(m) if forget == "forget1" else forget2(m)
        if t == triv:
            d = self.count()
            return trivial_bicomodule(self.b, d) if triv == "trivco" else trivial_bimodule(self.b, d)
        raise ValueError(f"expected {forget} or {triv}, got {t!r}")

    def term(self):
        from .tensor import coinduce, induce
        t = self.take()
        if t == "(":
            m = self.expr()
            self.take(")")
            return m
        if t == "taut":
            return tautological(self.b)
        if t == "trivial":
            return trivial_tetramodule(self.b, self.count())
        if t == "induce":
            self.take("(")
            n = self.half("forget1", "trivco")
            self.take(")")
            return induce(n)
        if t == "coinduce":
            self.take("(")
            n = self.half("forget2", "trivmod")
            self.take(")")
            return coinduce(n)
        if t in ("ker", "coker"):
            self.take("(")
            x = self.expr()
            self.take(",")
            y = self.expr()
            self.take(",")
            s = self.take()
            self.take(")")
            f = random_map(x, y, random.Random(s))
            return (kernel_tetra(f) if t == "ker" else cokernel_tetra(f))[0]
        raise ValueError(f"unknown recipe token {t!r}")


def build_recipe(b: Bialgebra, recipe: str) -> Tetramodule:
    m = _Parser(b, recipe).parse()
    return Tetramodule(b, m.dim, m.act_l, m.act_r, m.coact_l, m.coact_r, name=recipe)


def _leaf(rng, b):
    r = rng.random()
    if r < 0.5:
        return "taut", b.dim
    n2 = b.dim * b.dim
    if r < 0.75:
        return "induce(trivco(1))", n2
    return "coinduce(trivmod(1))", n2


def random_recipe(b: Bialgebra, rng: random.Random, depth: int = 2):
    """Random recipe string and an upper bound for its dimension."""
    kind = rng.choice(("leaf", "sum", "ker", "coker", "ker", "coker"))
    if kind == "leaf" or depth == 0:
        return _leaf(rng, b)
    if kind == "sum":
        x, dx = _leaf(rng, b)
        y, dy = _leaf(rng, b)
        return f"{x} + {y}", dx + dy
    x, dx = random_recipe(b, rng, depth - 1)
    y, dy = _leaf(rng, b)
    s = rng.randrange(1000)
    return f"{kind}({x}, {y}, {s})", dx if kind == "ker" else dy


def sample_tetramodule(b: Bialgebra, seed: int, max_dim: int | None = None,
                       recipe: Optional[str] = None) -> Tetramodule:
    """Deterministic pseudo-random tetramodule with ``1 <= dim <= max_dim``
    (default ``2 * dim A``), built only from axiom-preserving constructors.

    With ``recipe`` given, builds exactly that recipe instead.
    """
    if recipe is not None:
        return build_recipe(b, recipe)
    if max_dim is None:
        max_dim = 2 * b.dim
    rng = random.Random(seed)
    for _ in range(500):
        text, bound = random_recipe(b, rng)
        if bound > 2 * b.dim * b.dim + 2 * b.dim:
            continue
        m = build_recipe(b, text)
        if 1 <= m.dim <= max_dim:
            return m
    return tautological(b)
