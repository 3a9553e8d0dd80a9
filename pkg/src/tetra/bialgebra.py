"""Finite-dimensional bialgebras as structure matrices, plus a small zoo.

Conventions: ``mult`` is ``n x n^2`` (column ``i*n + j`` holds ``e_i e_j``),
``comult`` is ``n^2 x n`` (column ``i`` holds ``Delta(e_i)``), ``unit`` is
``n x 1`` and ``counit`` is ``1 x n``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Optional

from .checks import AxiomReport, compare
from .exactlin import GF, QQ, FieldSpec, Mat, kronecker, perm_matrix, tensor_index

__all__ = [
    "Bialgebra", "verify_bialgebra", "group_algebra", "cyclic_group_algebra",
    "trivial_bialgebra", "sweedler_h4", "primitive_truncated_poly",
    "dual_bialgebra", "iterated_coproduct", "iterated_product",
    "tensor_power_mult", "GradedBialgebra", "sv_graded", "example",
    "EXAMPLE_NAMES",
]


@dataclass(frozen=True, eq=False)
class Bialgebra:
    field: FieldSpec
    dim: int
    mult: Mat
    comult: Mat
    unit: Mat
    counit: Mat
    antipode: Optional[Mat] = None
    name: str = ""

    def __post_init__(self):
        n = self.dim
        shapes = {"mult": (n, n * n), "comult": (n * n, n), "unit": (n, 1),
                  "counit": (1, n)}
        for key, shape in shapes.items():
            m = getattr(self, key)
            if m.shape != shape:
                raise ValueError(f"{key} has shape {m.shape}, expected {shape}")
            if m.field != self.field:
                raise ValueError(f"{key} is over {m.field}, not {self.field}")
        if self.antipode is not None and self.antipode.shape != (n, n):
            raise ValueError(f"antipode has shape {self.antipode.shape}")

    def identity(self) -> Mat:
        return Mat.identity(self.field, self.dim)

    def same_structure(self, other: "Bialgebra") -> bool:
        return (self.field == other.field and self.dim == other.dim
                and self.mult == other.mult and self.comult == other.comult
                and self.unit == other.unit and self.counit == other.counit
                and self.antipode == other.antipode)

    def __repr__(self):
        return f"Bialgebra({self.name or '?'}, dim={self.dim}, {self.field})"


def verify_bialgebra(b: Bialgebra) -> AxiomReport:
    f, n = b.field, b.dim
    I = b.identity()
    one = Mat.identity(f, 1)
    m, D, u, e = b.mult, b.comult, b.unit, b.counit
    rep = AxiomReport(f"bialgebra {b.name or ''}".strip())

    def triple(r, c):
        return {"basis": list(tensor_index(c, [n, n, n])), "row": r}

    def pair(r, c):
        return {"basis": list(tensor_index(c, [n, n])), "row": r}

    def single(r, c):
        return {"basis": [c], "row": r}

    compare(rep, "associativity", m @ kronecker([m, I]), m @ kronecker([I, m]), triple)
    compare(rep, "coassociativity", kronecker([D, I]) @ D, kronecker([I, D]) @ D, single)
    swap = perm_matrix(f, [n, n, n, n], (0, 2, 1, 3))
    compare(rep, "compatibility", D @ m, kronecker([m, m]) @ swap @ kronecker([D, D]), pair)
    compare(rep, "left unit", m @ kronecker([u, I]), I, single)
    compare(rep, "right unit", m @ kronecker([I, u]), I, single)
    compare(rep, "left counit", kronecker([e, I]) @ D, I, single)
    compare(rep, "right counit", kronecker([I, e]) @ D, I, single)
    compare(rep, "counit multiplicative", e @ m, kronecker([e, e]), pair)
    compare(rep, "unit comultiplicative", D @ u, kronecker([u, u]), single)
    compare(rep, "counit of unit", e @ u, one, single)
    if b.antipode is not None:
        S = b.antipode
        ue = u @ e
        compare(rep, "antipode left", m @ kronecker([S, I]) @ D, ue, single)
        compare(rep, "antipode right", m @ kronecker([I, S]) @ D, ue, single)
    return rep


def _from_tables(field, n, mult, comult, unit, counit, antipode=None, name=""):
    M = Mat.from_entries(field, n, n * n, ((k, i * n + j, c) for i, j, k, c in mult))
    D = Mat.from_entries(field, n * n, n, ((j * n + k, i, c) for i, j, k, c in comult))
    U = Mat.from_entries(field, n, 1, ((i, 0, c) for i, c in enumerate(unit)))
    E = Mat.from_entries(field, 1, n, ((0, i, c) for i, c in enumerate(counit)))
    S = None
    if antipode is not None:
        S = Mat.from_entries(field, n, n, antipode)
    return Bialgebra(field, n, M, D, U, E, S, name)


def group_algebra(table, field: FieldSpec = QQ, name: str = "") -> Bialgebra:
    """k[G] from a multiplication table ``table[i][j] = index of g_i g_j``."""
    n = len(table)
    if any(len(r) != n for r in table):
        raise ValueError("multiplication table must be square")
    if any(not (0 <= x < n) for r in table for x in r):
        raise ValueError("table entries must be element indices")
    for a, b_, c in itertools.product(range(n), repeat=3):
        if table[table[a][b_]][c] != table[a][table[b_][c]]:
            raise ValueError(f"table is not associative at {(a, b_, c)}")
    ids = [e for e in range(n) if all(table[e][x] == x == table[x][e] for x in range(n))]
    if not ids:
        raise ValueError("table has no identity element")
    e = ids[0]
    inv = []
    for x in range(n):
        ys = [y for y in range(n) if table[x][y] == e == table[y][x]]
        if not ys:
            raise ValueError(f"element {x} has no inverse")
        inv.append(ys[0])
    mult = [(i, j, table[i][j], 1) for i in range(n) for j in range(n)]
    comult = [(i, i, i, 1) for i in range(n)]
    unit = [1 if i == e else 0 for i in range(n)]
    anti = [(inv[i], i, 1) for i in range(n)]
    return _from_tables(field, n, mult, comult, unit, [1] * n, anti, name)


def cyclic_group_algebra(order: int, field: FieldSpec = QQ) -> Bialgebra:
    table = [[(i + j) % order for j in range(order)] for i in range(order)]
    return group_algebra(table, field, name=f"{field}[Z/{order}]")


def trivial_bialgebra(field: FieldSpec = QQ) -> Bialgebra:
    """The ground field as a one-dimensional bialgebra."""
    return group_algebra([[0]], field, name=f"{field}")


def sweedler_h4(field: FieldSpec = QQ) -> Bialgebra:
    """Sweedler's 4-dimensional Hopf algebra with basis ``1, g, x, gx``."""
    if field.characteristic == 2:
        raise ValueError("Sweedler's algebra needs characteristic != 2")
    # basis index = a + 2b for g^a x^b
    mult = []
    for a, b_, c, d in itertools.product(range(2), repeat=4):
        if b_ + d >= 2:
            continue
        sign = -1 if (b_ * c) % 2 else 1
        mult.append((a + 2 * b_, c + 2 * d, (a + c) % 2 + 2 * (b_ + d), sign))
    comult = [
        (0, 0, 0, 1),
        (1, 1, 1, 1),
        (2, 2, 0, 1), (2, 1, 2, 1),   # x  -> x(x)1 + g(x)x
        (3, 3, 1, 1), (3, 0, 3, 1),   # gx -> gx(x)g + 1(x)gx
    ]
    anti = [(0, 0, 1), (1, 1, 1), (3, 2, -1), (2, 3, 1)]
    return _from_tables(field, 4, mult, comult, [1, 0, 0, 0], [1, 1, 0, 0], anti,
                        name=f"H4 over {field}")


def primitive_truncated_poly(p: int) -> Bialgebra:
    """F_p[x]/(x^p) with x primitive."""
    field = GF(p)
    mult = [(i, j, i + j, 1) for i in range(p) for j in range(p) if i + j < p]
    comult = [(k, i, k - i, comb(k, i)) for k in range(p) for i in range(k + 1)]
    anti = [(k, k, (-1) ** k) for k in range(p)]
    unit = [1] + [0] * (p - 1)
    return _from_tables(field, p, mult, comult, unit, unit, anti,
                        name=f"F_{p}[x]/x^{p}")


def dual_bialgebra(b: Bialgebra) -> Bialgebra:
    S = b.antipode.T if b.antipode is not None else None
    name = b.name[5:] if b.name.startswith("dual ") else f"dual {b.name}"
    return Bialgebra(b.field, b.dim, b.comult.T, b.mult.T, b.counit.T, b.unit.T, S, name)


def _legs(b: Bialgebra, n: int) -> Mat:
    """A -> A^{(x) n}; zero legs is the counit."""
    if n == 0:
        return b.counit
    out = b.identity()
    for k in range(1, n):
        out = kronecker([b.comult, Mat.identity(b.field, b.dim ** (k - 1))]) @ out
    return out


def iterated_coproduct(b: Bialgebra, n: int) -> Mat:
    """``A -> A^{(x) n}`` built as ``(Delta (x) id) o ...``; ``n = 1`` is the identity."""
    if n < 1:
        raise ValueError("iterated_coproduct needs n >= 1")
    return _legs(b, n)


def iterated_product(b: Bialgebra, n: int) -> Mat:
    """``A^{(x) n} -> A``; the empty product is the unit."""
    if n == 0:
        return b.unit
    out = b.identity()
    for k in range(1, n):
        out = out @ kronecker([b.mult, Mat.identity(b.field, b.dim ** (k - 1))])
    return out


def tensor_power_mult(b: Bialgebra, n: int) -> Mat:
    """Componentwise product ``A^{(x)n} (x) A^{(x)n} -> A^{(x)n}``."""
    if n == 0:
        return Mat.identity(b.field, 1)
    order = []
    for i in range(n):
        order += [i, n + i]
    P = perm_matrix(b.field, [b.dim] * (2 * n), order)
    return kronecker([b.mult] * n) @ P


# ---------------------------------------------------------------------------
# graded S(V)

@dataclass(frozen=True, eq=False)
class GradedBialgebra:
    """Degree-truncated S(V): monomial basis ordered by degree.

    ``mult`` drops products landing above ``N``; ``comult`` is exact because
    it never raises degree.
    """

    field: FieldSpec
    dimV: int
    N: int
    monomials: tuple
    mult: Mat
    comult: Mat
    unit: Mat
    counit: Mat

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def degree(self, i: int) -> int:
        return sum(self.monomials[i])

    @property
    def piece_dims(self) -> list:
        out = [0] * (self.N + 1)
        for mono in self.monomials:
            out[sum(mono)] += 1
        return out

    def piece(self, d: int) -> list:
        return [i for i, mono in enumerate(self.monomials) if sum(mono) == d]

    def index(self, exps) -> int:
        return self._index[tuple(exps)]

    @property
    def _index(self):
        return {m: i for i, m in enumerate(self.monomials)}


def _monomials(dimV: int, d: int):
    out = []
    for combo in itertools.combinations_with_replacement(range(dimV), d):
        e = [0] * dimV
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


def sv_graded(dimV: int, N: int, field: FieldSpec = QQ) -> GradedBialgebra:
    if dimV < 1 or N < 1:
        raise ValueError("sv_graded needs dimV >= 1 and N >= 1")
    monos = []
    for d in range(N + 1):
        monos.extend(_monomials(dimV, d))
    idx = {m: i for i, m in enumerate(monos)}
    n = len(monos)
    mult, comult = [], []
    for i, a in enumerate(monos):
        for j, b_ in enumerate(monos):
            s = tuple(x + y for x, y in zip(a, b_))
            if s in idx:
                mult.append((idx[s], i * n + j, 1))
        # Delta x^a = sum_b prod C(a_v, b_v) x^b (x) x^{a-b}
        for bexp in itertools.product(*[range(k + 1) for k in a]):
            rest = tuple(x - y for x, y in zip(a, bexp))
            c = 1
            for x, y in zip(a, bexp):
                c *= comb(x, y)
            comult.append((idx[bexp] * n + idx[rest], i, c))
    M = Mat.from_entries(field, n, n * n, mult)
    D = Mat.from_entries(field, n * n, n, comult)
    U = Mat.from_entries(field, n, 1, [(0, 0, 1)])
    E = Mat.from_entries(field, 1, n, [(0, 0, 1)])
    return GradedBialgebra(field, dimV, N, tuple(monos), M, D, U, E)


# ---------------------------------------------------------------------------
# named zoo

EXAMPLE_NAMES = ("trivial", "qz2", "qz3", "sweedler", "fp2x", "fp3x", "dual-qz2")


def example(name: str) -> Bialgebra:
    if name == "trivial":
        b = trivial_bialgebra(QQ)
    elif name == "qz2":
        b = cyclic_group_algebra(2, QQ)
    elif name == "qz3":
        b = cyclic_group_algebra(3, QQ)
    elif name == "sweedler":
        b = sweedler_h4(QQ)
    elif name == "fp2x":
        b = primitive_truncated_poly(2)
    elif name == "fp3x":
        b = primitive_truncated_poly(3)
    elif name == "dual-qz2":
        b = dual_bialgebra(cyclic_group_algebra(2, QQ))
    else:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(EXAMPLE_NAMES)}")
    return Bialgebra(b.field, b.dim, b.mult, b.comult, b.unit, b.counit, b.antipode, name)
