"""Exact sparse linear algebra over Q and prime fields F_p.

Matrices are immutable and stored row-wise as ``{col: value}`` dicts holding
only nonzero entries.  Rationals are ``gmpy2.mpq``; elements of F_p are
Python ints in ``range(p)``.

Linear maps act on column vectors: a map ``V -> W`` is a ``dim W x dim V``
matrix.  Tensor bases are lexicographic with the leftmost factor varying
slowest, so ``e_i (x) e_j`` in ``V (x) W`` has index ``i * dim W + j``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq

__all__ = [
    "FieldSpec", "QQ", "GF", "Mat", "Subspace", "Complex",
    "rref", "rank", "kernel_basis", "image_basis", "quotient_data",
    "kronecker", "cohomology", "perm_matrix", "tensor_index", "flat_index",
    "NotASubspaceError",
]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Ground field: ``kind`` is ``"Q"`` or ``"Fp"``."""

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind == "Q":
            if self.p:
                raise ValueError("rationals carry no characteristic")
        elif self.kind == "Fp":
            if not _is_prime(self.p):
                raise ValueError(f"characteristic {self.p} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def zero(self):
        return 0 if self.p else mpq(0)

    @property
    def one(self):
        return 1 if self.p else mpq(1)

    def __call__(self, x):
        return self.convert(x)

    def convert(self, x):
        """Coerce int, Fraction, mpq or a ``"num/den"`` string into the field."""
        p = self.p
        if isinstance(x, str):
            x = x.strip()
            x = Fraction(x) if "/" in x else int(x)
        if p:
            if isinstance(x, int):
                return x % p
            q = Fraction(x) if not isinstance(x, Fraction) else x
            if isinstance(x, type(mpq(0))):
                q = Fraction(int(x.numerator), int(x.denominator))
            if q.denominator % p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{p}")
            return (q.numerator * pow(q.denominator, -1, p)) % p
        if isinstance(x, Fraction):
            return mpq(x.numerator, x.denominator)
        return mpq(x)

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, -1, self.p)
        return 1 / x

    def format(self, x) -> str:
        return str(x)

    def __str__(self):
        return "Q" if not self.p else f"F_{self.p}"

    def to_json(self) -> dict:
        return {"kind": "Q"} if not self.p else {"kind": "Fp", "p": self.p}

    @classmethod
    def from_json(cls, doc: dict) -> "FieldSpec":
        if doc.get("kind") == "Q":
            return QQ
        if doc.get("kind") == "Fp":
            return GF(int(doc["p"]))
        raise ValueError(f"bad field document {doc!r}")


QQ = FieldSpec("Q")


def GF(p: int) -> FieldSpec:
    return FieldSpec("Fp", p)


def flat_index(idx: Sequence[int], dims: Sequence[int]) -> int:
    out = 0
    for i, d in zip(idx, dims):
        out = out * d + i
    return out


def tensor_index(k: int, dims: Sequence[int]) -> tuple:
    """Inverse of :func:`flat_index`."""
    out = []
    for d in reversed(dims):
        k, r = divmod(k, d)
        out.append(r)
    return tuple(reversed(out))


def _clean(row: dict, p: int) -> dict:
    if p:
        return {j: v % p for j, v in row.items() if v % p}
    return {j: v for j, v in row.items() if v}


class Mat:
    """Immutable sparse matrix over a :class:`FieldSpec`."""

    __slots__ = ("field", "nrows", "ncols", "_rows")

    def __init__(self, field: FieldSpec, nrows: int, ncols: int, rows=None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [{} for _ in range(nrows)]
        self._rows = rows

    # -- construction --------------------------------------------------
    @classmethod
    def from_lists(cls, field: FieldSpec, data, ncols: int | None = None) -> "Mat":
        data = [list(r) for r in data]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        rows = []
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
            rows.append({j: v for j, v in ((j, field.convert(x)) for j, x in enumerate(r)) if v})
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def from_entries(cls, field: FieldSpec, nrows: int, ncols: int, entries) -> "Mat":
        """Sum ``(i, j, value)`` triples into a matrix (repeated positions add)."""
        rows = [{} for _ in range(nrows)]
        for i, j, v in entries:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry ({i}, {j}) outside {nrows}x{ncols}")
            r = rows[i]
            r[j] = r.get(j, 0) + field.convert(v)
        return cls(field, nrows, ncols, [_clean(r, field.p) for r in rows])

    @classmethod
    def from_columns(cls, field: FieldSpec, nrows: int, cols: Sequence[dict]) -> "Mat":
        rows = [{} for _ in range(nrows)]
        for j, c in enumerate(cols):
            for i, v in c.items():
                rows[i][j] = v
        return cls(field, nrows, len(cols), rows)

    @classmethod
    def zeros(cls, field: FieldSpec, nrows: int, ncols: int) -> "Mat":
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Mat":
        one = field.one
        return cls(field, n, n, [{i: one} for i in range(n)])

    @classmethod
    def selection(cls, field: FieldSpec, n: int, cols: Sequence[int]) -> "Mat":
        """``len(cols) x n`` matrix picking out the listed coordinates."""
        one = field.one
        return cls(field, len(cols), n, [{c: one} for c in cols])

    # -- basic access ----------------------------------------------------
    @property
    def shape(self) -> tuple:
        return (self.nrows, self.ncols)

    def row(self, i: int) -> dict:
        return self._rows[i]

    def rows(self) -> list:
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i].get(j, self.field.zero)

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    def is_zero(self) -> bool:
        return not any(self._rows)

    def entries(self):
        for i, r in enumerate(self._rows):
            for j in sorted(r):
                yield i, j, r[j]

    def to_lists(self) -> list:
        z = self.field.zero
        return [[r.get(j, z) for j in range(self.ncols)] for r in self._rows]

    def column(self, j: int) -> dict:
        return {i: r[j] for i, r in enumerate(self._rows) if j in r}

    def columns(self) -> list:
        cols = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def __repr__(self):
        return f"Mat({self.field}, {self.nrows}x{self.ncols}, nnz={self.nnz()})"

    def __str__(self):
        return "\n".join("[" + " ".join(str(x) for x in r) + "]" for r in self.to_lists())

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and self._rows == other._rows)

    __hash__ = None

    def first_difference(self, other: "Mat"):
        """First ``(i, j)`` (column-major order) where the matrices differ."""
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        diff = (self - other)
        best = None
        for i, r in enumerate(diff._rows):
            if r:
                j = min(r)
                if best is None or (j, i) < (best[1], best[0]):
                    best = (i, j)
        return best

    # -- arithmetic ------------------------------------------------------
    def _check_field(self, other):
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        p = self.field.p
        orows = other._rows
        out = []
        for r in self._rows:
            acc = {}
            for k, a in r.items():
                for j, b in orows[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            out.append(_clean(acc, p) if acc else acc)
        return Mat(self.field, self.nrows, other.ncols, out)

    def __add__(self, other: "Mat") -> "Mat":
        self._check_field(other)
        if self.shape != other.shape:
            raise ValueError(f"cannot add {self.shape} and {other.shape}")
        p = self.field.p
        out = []
        for a, b in zip(self._rows, other._rows):
            if not b:
                out.append(a)
                continue
            if not a:
                out.append(b)
                continue
            r = dict(a)
            for j, v in b.items():
                r[j] = r.get(j, 0) + v
            out.append(_clean(r, p))
        return Mat(self.field, self.nrows, self.ncols, out)

    def __neg__(self) -> "Mat":
        p = self.field.p
        if p:
            rows = [{j: (-v) % p for j, v in r.items()} for r in self._rows]
        else:
            rows = [{j: -v for j, v in r.items()} for r in self._rows]
        return Mat(self.field, self.nrows, self.ncols, rows)

    def __sub__(self, other: "Mat") -> "Mat":
        return self + (-other)

    def scale(self, c) -> "Mat":
        c = self.field.convert(c)
        if not c:
            return Mat.zeros(self.field, self.nrows, self.ncols)
        p = self.field.p
        return Mat(self.field, self.nrows, self.ncols,
                   [_clean({j: c * v for j, v in r.items()}, p) for r in self._rows])

    @property
    def T(self) -> "Mat":
        return Mat(self.field, self.ncols, self.nrows, self.columns())

    def kron(self, other: "Mat") -> "Mat":
        self._check_field(other)
        p = self.field.p
        bn, bm = other.nrows, other.ncols
        out = []
        for ra in self._rows:
            for rb in other._rows:
                if not ra or not rb:
                    out.append({})
                    continue
                r = {}
                for j, a in ra.items():
                    base = j * bm
                    for l, b in rb.items():
                        r[base + l] = a * b
                out.append(_clean(r, p) if p else r)
        return Mat(self.field, self.nrows * bn, self.ncols * bm, out)

    def take_rows(self, idx: Sequence[int]) -> "Mat":
        return Mat(self.field, len(idx), self.ncols, [self._rows[i] for i in idx])

    def take_cols(self, idx: Sequence[int]) -> "Mat":
        pos = {c: k for k, c in enumerate(idx)}
        rows = []
        for r in self._rows:
            rows.append({pos[j]: v for j, v in r.items() if j in pos})
        return Mat(self.field, self.nrows, len(idx), rows)

    @staticmethod
    def vstack(mats: Sequence["Mat"], ncols: int | None = None, field=None) -> "Mat":
        mats = list(mats)
        if not mats:
            return Mat(field, 0, ncols or 0)
        f, n = mats[0].field, mats[0].ncols
        rows = []
        for m in mats:
            if m.ncols != n or m.field != f:
                raise ValueError("vstack: incompatible blocks")
            rows.extend(m._rows)
        return Mat(f, len(rows), n, rows)

    @staticmethod
    def hstack(mats: Sequence["Mat"]) -> "Mat":
        mats = list(mats)
        f, n = mats[0].field, mats[0].nrows
        rows = [dict() for _ in range(n)]
        off = 0
        for m in mats:
            if m.nrows != n or m.field != f:
                raise ValueError("hstack: incompatible blocks")
            for i, r in enumerate(m._rows):
                if r:
                    rows[i].update((j + off, v) for j, v in r.items())
            off += m.ncols
        return Mat(f, n, off, rows)

    @staticmethod
    def block_diag(mats: Sequence["Mat"]) -> "Mat":
        mats = list(mats)
        f = mats[0].field
        rows = []
        off = 0
        for m in mats:
            for r in m._rows:
                rows.append({j + off: v for j, v in r.items()})
            off += m.ncols
        return Mat(f, len(rows), off, rows)

    def apply(self, vec: dict) -> dict:
        """Multiply by a sparse column vector ``{index: value}``."""
        p = self.field.p
        out = {}
        for i, r in enumerate(self._rows):
            s = 0
            if len(vec) < len(r):
                for j, v in vec.items():
                    a = r.get(j)
                    if a is not None:
                        s += a * v
            else:
                for j, a in r.items():
                    v = vec.get(j)
                    if v is not None:
                        s += a * v
            if p:
                s %= p
            if s:
                out[i] = s
        return out


def perm_matrix(field: FieldSpec, dims: Sequence[int], perm: Sequence[int]) -> Mat:
    """Matrix of the factor permutation ``V_0 (x) ... -> V_perm[0] (x) V_perm[1] ...``.

    Output factor ``t`` is input factor ``perm[t]``.
    """
    dims = list(dims)
    if sorted(perm) != list(range(len(dims))):
        raise ValueError(f"{perm} is not a permutation of {len(dims)} factors")
    n = 1
    for d in dims:
        n *= d
    odims = [dims[q] for q in perm]
    one = field.one
    rows = [None] * n
    for idx in itertools.product(*[range(d) for d in dims]):
        src = flat_index(idx, dims)
        dst = flat_index([idx[q] for q in perm], odims)
        rows[dst] = {src: one}
    return Mat(field, n, n, rows)


def kronecker(ms: Sequence[Mat]) -> Mat:
    """Kronecker product of a nonempty list, leftmost factor slowest."""
    ms = list(ms)
    if not ms:
        raise ValueError("kronecker of an empty list")
    out = ms[0]
    for m in ms[1:]:
        out = out.kron(m)
    return out


# ---------------------------------------------------------------------------
# elimination

def _echelon(field: FieldSpec, rows: Iterable[dict]):
    """Online row reduction.  Returns ``{pivot_col: row}`` with leading 1s,
    each row reduced against pivots that existed when it was inserted."""
    p = field.p
    pivots = {}
    for r in rows:
        if not r:
            continue
        r = dict(r)
        while r:
            c = min(r)
            prow = pivots.get(c)
            if prow is None:
                inv = field.inv(r[c])
                if p:
                    r = {j: (v * inv) % p for j, v in r.items()}
                else:
                    r = {j: v * inv for j, v in r.items()}
                pivots[c] = r
                break
            f = r[c]
            for j, v in prow.items():
                w = r.get(j, 0) - f * v
                if p:
                    w %= p
                if w:
                    r[j] = w
                else:
                    r.pop(j, None)
    return pivots


def _back_substitute(field: FieldSpec, pivots: dict) -> list:
    """Turn an echelon pivot dict into fully reduced rows (sorted by pivot)."""
    p = field.p
    cols = sorted(pivots)
    done = {}
    for c in reversed(cols):
        r = dict(pivots[c])
        hits = [j for j in r if j != c and j in done]
        for j in sorted(hits):
            f = r.get(j)
            if not f:
                continue
            for k, v in done[j].items():
                w = r.get(k, 0) - f * v
                if p:
                    w %= p
                if w:
                    r[k] = w
                else:
                    r.pop(k, None)
        done[c] = r
    return [done[c] for c in cols]


def rref(m: Mat):
    """Reduced row echelon form and the list of pivot columns."""
    piv = _echelon(m.field, m._rows)
    rows = _back_substitute(m.field, piv)
    cols = sorted(piv)
    rows = rows + [{} for _ in range(m.nrows - len(rows))]
    return Mat(m.field, m.nrows, m.ncols, rows), cols


def rank(m: Mat) -> int:
    if m.nrows > m.ncols:
        # fewer, longer rows eliminate faster on the transpose
        return len(_echelon(m.field, m.T._rows))
    return len(_echelon(m.field, m._rows))


class NotASubspaceError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class Subspace:
    """Row-spanned subspace of ``field^ambient_dim``.

    ``coord_cols`` lists coordinates on which ``basis`` restricts to the
    identity, so the coordinates of a member ``v`` are ``v[coord_cols]``.
    """

    ambient_dim: int
    basis: Mat
    coord_cols: tuple = dc_field(default=None)

    def __post_init__(self):
        if self.basis.ncols != self.ambient_dim:
            raise ValueError("basis rows must have length ambient_dim")
        if self.coord_cols is None:
            r, piv = rref(self.basis)
            if len(piv) != self.basis.nrows:
                raise ValueError("basis rows are linearly dependent")
            object.__setattr__(self, "basis", r)
            object.__setattr__(self, "coord_cols", tuple(piv))

    @classmethod
    def span(cls, field: FieldSpec, ambient_dim: int, rows) -> "Subspace":
        """Subspace spanned by arbitrary (possibly dependent) rows."""
        if isinstance(rows, Mat):
            rows = rows._rows
        piv = _echelon(field, rows)
        red = _back_substitute(field, piv)
        b = Mat(field, len(red), ambient_dim, red)
        return cls(ambient_dim, b, tuple(sorted(piv)))

    @property
    def field(self) -> FieldSpec:
        return self.basis.field

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def inclusion(self) -> Mat:
        """``ambient x dim`` matrix whose columns are the basis vectors."""
        return self.basis.T

    def left_inverse(self) -> Mat:
        return Mat.selection(self.field, self.ambient_dim, self.coord_cols)

    def residual(self, vec: dict) -> dict:
        """``vec`` minus its projection along ``coord_cols`` onto the span."""
        p = self.field.p
        r = dict(vec)
        brows = self.basis._rows
        for k, c in enumerate(self.coord_cols):
            f = vec.get(c)
            if f:
                for j, v in brows[k].items():
                    w = r.get(j, 0) - f * v
                    if p:
                        w %= p
                    if w:
                        r[j] = w
                    else:
                        r.pop(j, None)
        return r

    def contains_columns(self, m: Mat) -> bool:
        return all(not self.residual(c) for c in m.columns())

    def coordinates(self, m: Mat) -> Mat:
        """Coordinates of the columns of ``m`` (each must lie in the span)."""
        if not self.contains_columns(m):
            raise NotASubspaceError("columns are not contained in the subspace")
        return m.take_rows(list(self.coord_cols))


def kernel_basis(m: Mat) -> Subspace:
    """Basis of ``{v : m v = 0}`` normalised on the free columns."""
    field = m.field
    p = field.p
    piv = _echelon(field, m._rows)
    red = _back_substitute(field, piv)
    pcols = sorted(piv)
    pset = set(pcols)
    free = [j for j in range(m.ncols) if j not in pset]
    # column j of the RREF restricted to pivot rows
    colmap = {}
    for k, r in enumerate(red):
        pc = pcols[k]
        for j, v in r.items():
            if j != pc:
                colmap.setdefault(j, []).append((pc, v))
    one = field.one
    rows = []
    for f in free:
        v = {f: one}
        for pc, a in colmap.get(f, ()):
            v[pc] = (-a) % p if p else -a
        rows.append(v)
    return Subspace(m.ncols, Mat(field, len(rows), m.ncols, rows), tuple(free))


def image_basis(m: Mat) -> Subspace:
    """Column space of ``m`` as a subspace of the target."""
    return Subspace.span(m.field, m.nrows, m.T._rows)


def quotient_data(ambient_dim: int, s: Subspace):
    """Projection onto ``ambient / s`` and a section of it.

    The quotient is identified with the span of the standard vectors outside
    ``s.coord_cols``; ``projection @ section`` is the identity.
    """
    if s.ambient_dim != ambient_dim:
        raise ValueError("subspace lives in a different ambient space")
    field = s.field
    p = field.p
    cset = set(s.coord_cols)
    rest = [j for j in range(ambient_dim) if j not in cset]
    pos = {j: k for k, j in enumerate(rest)}
    one = field.one
    rows = [{} for _ in rest]
    for j in rest:
        rows[pos[j]][j] = one
    for k, c in enumerate(s.coord_cols):
        for j, v in s.basis._rows[k].items():
            if j in pos:
                rows[pos[j]][c] = (-v) % p if p else -v
    proj = Mat(field, len(rest), ambient_dim, rows)
    sect = Mat.selection(field, ambient_dim, rest).T
    return proj, sect


# ---------------------------------------------------------------------------
# cochain complexes

@dataclass(frozen=True, eq=False)
class Complex:
    """Cochain complex with ``d[k]: C^k -> C^(k+1)`` for ``lo <= k < hi``."""

    field: FieldSpec
    lo: int
    hi: int
    dims: dict
    d: dict

    def __post_init__(self):
        for k in range(self.lo, self.hi + 1):
            if k not in self.dims:
                raise ValueError(f"missing dimension in degree {k}")
        for k, m in self.d.items():
            if not (self.lo <= k < self.hi):
                raise ValueError(f"differential out of range in degree {k}")
            if m.shape != (self.dims[k + 1], self.dims[k]):
                raise ValueError(
                    f"differential d_{k} has shape {m.shape}, expected "
                    f"{(self.dims[k + 1], self.dims[k])}")

    def differential(self, k: int) -> Mat:
        if k in self.d:
            return self.d[k]
        rows = self.dims.get(k + 1, 0)
        return Mat.zeros(self.field, rows, self.dims.get(k, 0))

    def check_d_squared(self):
        """Raise ``ValueError`` naming the first degree where d^2 != 0."""
        for k in range(self.lo, self.hi - 1):
            if not (self.differential(k + 1) @ self.differential(k)).is_zero():
                raise ValueError(f"d^2 != 0 starting in degree {k}")


def cohomology(c: Complex, degrees=None, representatives: bool = True) -> dict:
    """Per-degree ``(dim H^k, representatives)``.

    Representatives are kernel vectors reduced modulo the image; they are
    skipped (``None``) when ``representatives`` is false, in which case only
    ranks are computed.
    """
    c.check_d_squared()
    if degrees is None:
        degrees = range(c.lo, c.hi + 1)
    out = {}
    for k in degrees:
        dk = c.differential(k)
        dprev = c.differential(k - 1) if k > c.lo else Mat.zeros(c.field, c.dims[k], 0)
        if not representatives:
            h = c.dims[k] - rank(dk) - rank(dprev)
            out[k] = (h, None)
            continue
        z = kernel_basis(dk)
        b = image_basis(dprev)
        reduced = [b.residual(r) for r in z.basis._rows]
        q = Subspace.span(c.field, c.dims[k], reduced)
        out[k] = (q.dim, q.basis)
        if q.dim != z.dim - b.dim:
            raise AssertionError("cohomology bookkeeping mismatch")
    return out
