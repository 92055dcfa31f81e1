"""Exact dense linear algebra over the rationals and prime fields.

Scalars over the rationals are plain ``int`` or ``fractions.Fraction`` values;
over a prime field they are ``int`` values reduced into ``range(p)``.  Every
other module stores its linear maps as :class:`ExactMatrix` instances.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class FieldMismatchError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class FieldDescriptor:
    """The ground field: rationals when ``p`` is None, else the prime field of order ``p``."""

    p: int | None = None

    def __post_init__(self) -> None:
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def kind(self) -> str:
        return "Rationals" if self.p is None else "PrimeField"

    def coerce(self, x) -> int | Fraction:
        if isinstance(x, str):
            x = Fraction(x)
        elif isinstance(x, (list, tuple)):
            num, den = x
            x = Fraction(int(num), int(den))
        if isinstance(x, bool):
            x = int(x)
        if self.p is None:
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else x
            if isinstance(x, int):
                return x
            raise TypeError(f"cannot coerce {x!r} to a rational")
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, int):
            return x % self.p
        raise TypeError(f"cannot coerce {x!r} into GF({self.p})")

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p is not None:
            return pow(x, -1, self.p)
        if x == 1 or x == -1:
            return x
        return 1 / Fraction(x)

    def random_element(self, rng: random.Random, bound: int = 5):
        if self.p is not None:
            return rng.randrange(self.p)
        return rng.randint(-bound, bound)

    def to_json(self) -> dict:
        if self.p is None:
            return {"kind": "rationals"}
        return {"kind": "prime", "p": self.p}

    @classmethod
    def from_json(cls, data: dict | None) -> "FieldDescriptor":
        if not data or data.get("kind", "rationals") == "rationals":
            return QQ
        return cls(int(data["p"]))

    @classmethod
    def parse(cls, text: str) -> "FieldDescriptor":
        """Parse the CLI spelling ``q`` or ``fp:P``."""
        text = text.strip().lower()
        if text in ("q", "qq", "rationals"):
            return QQ
        if text.startswith("fp:"):
            return cls(int(text[3:]))
        raise ValueError(f"unknown field {text!r}")

    def __str__(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"


QQ = FieldDescriptor()


def GF(p: int) -> FieldDescriptor:
    return FieldDescriptor(p)


class ExactMatrix:
    """Immutable dense matrix over a :class:`FieldDescriptor`.

    Maps act on column vectors, so a map from a d-dimensional space to an
    e-dimensional space is an e x d matrix.
    """

    __slots__ = ("rows", "cols", "field", "_m")

    def __init__(self, rows: int, cols: int, data: Sequence[Sequence], field: FieldDescriptor = QQ, *, _trusted: bool = False):
        self.rows = rows
        self.cols = cols
        self.field = field
        if _trusted:
            self._m = data
            return
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("entries do not match the declared shape")
        co = field.coerce
        self._m = [[co(x) for x in r] for r in data]

    # construction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field: FieldDescriptor = QQ, cols: int | None = None) -> "ExactMatrix":
        rows = list(rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows, field)

    @classmethod
    def from_flat(cls, rows: int, cols: int, entries: Sequence, field: FieldDescriptor = QQ) -> "ExactMatrix":
        if len(entries) != rows * cols:
            raise ValueError("entries length must equal rows * cols")
        return cls(rows, cols, [list(entries[r * cols:(r + 1) * cols]) for r in range(rows)], field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldDescriptor = QQ) -> "ExactMatrix":
        return cls(rows, cols, [[0] * cols for _ in range(rows)], field, _trusted=True)

    @classmethod
    def identity(cls, n: int, field: FieldDescriptor = QQ) -> "ExactMatrix":
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            m[i][i] = 1
        return cls(n, n, m, field, _trusted=True)

    @classmethod
    def shift(cls, n: int, field: FieldDescriptor = QQ) -> "ExactMatrix":
        """Lower shift e_k -> e_(k+1): the nilpotent Jordan block of size n."""
        m = [[0] * n for _ in range(n)]
        for i in range(1, n):
            m[i][i - 1] = 1
        return cls(n, n, m, field, _trusted=True)

    # access

    def __getitem__(self, idx):
        r, c = idx
        return self._m[r][c]

    def row(self, r: int) -> list:
        return list(self._m[r])

    def to_lists(self) -> list[list]:
        return [list(r) for r in self._m]

    @property
    def entries(self) -> tuple:
        return tuple(x for r in self._m for x in r)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not any(x for r in self._m for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def _check(self, other: "ExactMatrix") -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    # arithmetic

    def _wrap(self, rows: int, cols: int, m: list) -> "ExactMatrix":
        return ExactMatrix(rows, cols, m, self.field, _trusted=True)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        p = self.field.p
        if p is None:
            m = [[a + b for a, b in zip(r, s)] for r, s in zip(self._m, other._m)]
        else:
            m = [[(a + b) % p for a, b in zip(r, s)] for r, s in zip(self._m, other._m)]
        return self._wrap(self.rows, self.cols, m)

    def __neg__(self) -> "ExactMatrix":
        return self.scale(-1)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def scale(self, k) -> "ExactMatrix":
        k = self.field.coerce(k)
        p = self.field.p
        if p is None:
            m = [[k * a for a in r] for r in self._m]
        else:
            m = [[k * a % p for a in r] for r in self._m]
        return self._wrap(self.rows, self.cols, m)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        p = self.field.p
        n = other.cols
        b = other._m
        out = []
        for r in self._m:
            acc = [0] * n
            for k, a in enumerate(r):
                if a:
                    bk = b[k]
                    for c in range(n):
                        if bk[c]:
                            acc[c] += a * bk[c]
            if p is not None:
                acc = [x % p for x in acc]
            out.append(acc)
        return self._wrap(self.rows, n, out)

    def __pow__(self, k: int) -> "ExactMatrix":
        if not self.is_square() or k < 0:
            raise ValueError("power needs a square matrix and k >= 0")
        result = ExactMatrix.identity(self.rows, self.field)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self._m == other._m

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self._m)
        return f"ExactMatrix({self.rows}x{self.cols} over {self.field}: [{body}])"

    @property
    def T(self) -> "ExactMatrix":
        return self._wrap(self.cols, self.rows, [list(c) for c in zip(*self._m)] if self.rows else [[] for _ in range(self.cols)])

    def submatrix(self, rows: Iterable[int] | None = None, cols: Iterable[int] | None = None) -> "ExactMatrix":
        rows = range(self.rows) if rows is None else list(rows)
        cols = range(self.cols) if cols is None else list(cols)
        m = [[self._m[r][c] for c in cols] for r in rows]
        return self._wrap(len(rows), len(cols), m)

    def rank(self) -> int:
        return rank(self)

    # serialization

    def to_json(self) -> dict:
        if self.field.p is None:
            ent = [str(x) for x in self.entries]
        else:
            ent = list(self.entries)
        return {"rows": self.rows, "cols": self.cols, "entries": ent, "field": self.field.to_json()}

    @classmethod
    def from_json(cls, data: dict, field: FieldDescriptor | None = None) -> "ExactMatrix":
        fd = FieldDescriptor.from_json(data.get("field")) if field is None else field
        return cls.from_flat(int(data["rows"]), int(data["cols"]), data["entries"], fd)


def _same_field(ms: Sequence[ExactMatrix], field: FieldDescriptor | None) -> FieldDescriptor:
    fields = {m.field for m in ms}
    if field is not None:
        fields.add(field)
    if len(fields) > 1:
        raise FieldMismatchError("matrices over different fields")
    return fields.pop() if fields else QQ


def hstack(ms: Sequence[ExactMatrix], rows: int | None = None, field: FieldDescriptor | None = None) -> ExactMatrix:
    fd = _same_field(ms, field)
    if not ms:
        return ExactMatrix.zeros(rows or 0, 0, fd)
    r = ms[0].rows
    if any(m.rows != r for m in ms):
        raise ValueError("hstack needs equal row counts")
    data = [[x for m in ms for x in m._m[i]] for i in range(r)]
    return ExactMatrix(r, sum(m.cols for m in ms), data, fd, _trusted=True)


def vstack(ms: Sequence[ExactMatrix], cols: int | None = None, field: FieldDescriptor | None = None) -> ExactMatrix:
    fd = _same_field(ms, field)
    if not ms:
        return ExactMatrix.zeros(0, cols or 0, fd)
    c = ms[0].cols
    if any(m.cols != c for m in ms):
        raise ValueError("vstack needs equal column counts")
    data = [list(r) for m in ms for r in m._m]
    return ExactMatrix(len(data), c, data, fd, _trusted=True)


def block_diag(ms: Sequence[ExactMatrix], field: FieldDescriptor | None = None) -> ExactMatrix:
    fd = _same_field(ms, field)
    rows = sum(m.rows for m in ms)
    cols = sum(m.cols for m in ms)
    data = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for m in ms:
        for i, row in enumerate(m._m):
            data[r0 + i][c0:c0 + m.cols] = row
        r0 += m.rows
        c0 += m.cols
    return ExactMatrix(rows, cols, data, fd, _trusted=True)


def _eliminate(m: list[list], ncols: int, p: int | None, full: bool) -> list[int]:
    """In-place Gaussian elimination; returns pivot columns.

    With ``full`` the result is the reduced row echelon form, otherwise only
    a row echelon form (enough for the rank).
    """
    nrows = len(m)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for k in range(r, nrows):
            if m[k][c]:
                piv = k
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        prow = m[r]
        a = prow[c]
        if a != 1:
            if p is None:
                inv = 1 / Fraction(a) if a != -1 else -1
                prow = [x * inv if x else 0 for x in prow]
            else:
                inv = pow(a, -1, p)
                prow = [x * inv % p if x else 0 for x in prow]
            m[r] = prow
        nz = [j for j in range(c, ncols) if prow[j]]
        for k in range(r + 1 if not full else 0, nrows):
            if k == r:
                continue
            row = m[k]
            f = row[c]
            if not f:
                continue
            if p is None:
                for j in nz:
                    row[j] -= f * prow[j]
            else:
                for j in nz:
                    row[j] = (row[j] - f * prow[j]) % p
        pivots.append(c)
        r += 1
    return pivots


def rref(m: ExactMatrix) -> tuple[ExactMatrix, list[int], int]:
    """Reduced row echelon form, pivot columns and rank."""
    data = m.to_lists()
    pivots = _eliminate(data, m.cols, m.field.p, full=True)
    if m.field.p is None:
        data = [[x.numerator if isinstance(x, Fraction) and x.denominator == 1 else x for x in r] for r in data]
    return ExactMatrix(m.rows, m.cols, data, m.field, _trusted=True), pivots, len(pivots)


def rank(m: ExactMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    # eliminate on the shorter side
    data = m.to_lists() if m.rows >= m.cols else m.T.to_lists()
    return len(_eliminate(data, len(data[0]), m.field.p, full=False))


def nullspace(m: ExactMatrix) -> ExactMatrix:
    """Basis of the right kernel as columns, read off the RREF.

    The basis column for a free column f has a 1 in row f and zeros in the
    other free rows, so coordinates of a kernel vector in this basis are just
    its entries at the free positions (see :func:`kernel_with_coordinates`).
    """
    return kernel_with_coordinates(m)[0]


def free_columns(m: ExactMatrix) -> list[int]:
    _, pivots, _ = rref(m)
    piv = set(pivots)
    return [c for c in range(m.cols) if c not in piv]


def kernel_with_coordinates(m: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    """Kernel basis together with the free-row positions giving coordinates."""
    red, pivots, _ = rref(m)
    piv = set(pivots)
    free = [c for c in range(m.cols) if c not in piv]
    out = [[0] * len(free) for _ in range(m.cols)]
    p = m.field.p
    for k, f in enumerate(free):
        out[f][k] = 1
        for r, pc in enumerate(pivots):
            x = red[r, f]
            if x:
                out[pc][k] = -x if p is None else (-x) % p
    return ExactMatrix(m.cols, len(free), out, m.field, _trusted=True), free


def solve(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix | None:
    """A particular solution x of a @ x = b, or None when there is none."""
    if a.rows != b.rows:
        raise ValueError("row counts of a and b differ")
    _same_field([a, b], None)
    aug = hstack([a, b]) if a.rows else ExactMatrix.zeros(0, a.cols + b.cols, a.field)
    red, pivots, _ = rref(aug)
    if any(pc >= a.cols for pc in pivots):
        return None
    x = [[0] * b.cols for _ in range(a.cols)]
    for r, pc in enumerate(pivots):
        for k in range(b.cols):
            x[pc][k] = red[r, a.cols + k]
    return ExactMatrix(a.cols, b.cols, x, a.field, _trusted=True)


def inverse(a: ExactMatrix) -> ExactMatrix:
    if not a.is_square():
        raise ValueError("inverse of a non-square matrix")
    x = solve(a, ExactMatrix.identity(a.rows, a.field))
    if x is None or rank(a) != a.rows:
        raise ZeroDivisionError("matrix is singular")
    return x


def is_invertible(a: ExactMatrix) -> bool:
    return a.is_square() and rank(a) == a.rows


def complement_basis(b: ExactMatrix) -> tuple[ExactMatrix, ExactMatrix]:
    """For a column-space basis ``b`` (d x r) return (E, pi).

    E is a d x c matrix of standard vectors completing the columns of b to a
    basis; pi is the c x d quotient projection with pi @ b = 0 and pi @ E = I.
    """
    d = b.rows
    fd = b.field
    ident = ExactMatrix.identity(d, fd)
    _, pivots, _ = rref(hstack([b, ident]) if b.cols else ident)
    shift = b.cols
    chosen = [pc - shift for pc in pivots if pc >= shift]
    e = ident.submatrix(None, chosen)
    full = hstack([b, e]) if b.cols else e
    inv = inverse(full)
    pi = inv.submatrix(range(b.cols, d), None)
    return e, pi


def column_basis(a: ExactMatrix) -> ExactMatrix:
    """Independent columns of ``a`` spanning its column space."""
    _, pivots, _ = rref(a)
    return a.submatrix(None, pivots)


def random_matrix(rows: int, cols: int, field: FieldDescriptor, rng: random.Random, bound: int = 3) -> ExactMatrix:
    data = [[field.random_element(rng, bound) for _ in range(cols)] for _ in range(rows)]
    return ExactMatrix(rows, cols, data, field)


def vec(m: ExactMatrix) -> list:
    """Row-major flattening."""
    return [x for r in m._m for x in r]


def unvec(values: Sequence, rows: int, cols: int, field: FieldDescriptor) -> ExactMatrix:
    return ExactMatrix(rows, cols, [list(values[r * cols:(r + 1) * cols]) for r in range(rows)], field, _trusted=True)
