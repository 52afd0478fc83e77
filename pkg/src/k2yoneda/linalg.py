"""Exact sparse linear algebra over GF(p) and Q.

Vectors are dicts ``column -> nonzero scalar``.  Scalars are ints in
``[0, p)`` for prime fields and reduced ``Fraction`` objects over Q.

A ``SubspaceBasis`` keeps its rows in semi-echelon form: every row has a
distinct pivot (its smallest column) with coefficient 1.  ``rows()`` returns
the fully reduced echelon form, which is canonical for the subspace.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Vector = dict  # column -> scalar, no explicit zeros

DEFAULT_PRIME = 32003


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """GF(p) when ``p`` is a prime, the rationals when ``p`` is 0."""

    p: int = DEFAULT_PRIME

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"field modulus {self.p} is not prime")

    @classmethod
    def parse(cls, text: str | int) -> Field:
        if isinstance(text, int):
            return cls(text)
        t = text.strip().upper()
        if t in ("Q", "QQ", "RATIONALS", "0"):
            return cls(0)
        if t.startswith("GF(") and t.endswith(")"):
            t = t[3:-1]
        try:
            return cls(int(t))
        except ValueError:
            raise ValueError(f"unrecognised field {text!r}") from None

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    def __str__(self) -> str:
        return "QQ" if self.p == 0 else f"GF({self.p})"

    def __call__(self, x) -> int | Fraction:
        if self.p:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def inv(self, x):
        if self.p:
            return pow(x, -1, self.p)
        return 1 / x

    def neg(self, x):
        return (-x) % self.p if self.p else -x

    def vector(self, entries: Mapping[int, object] | Iterable[tuple[int, object]]) -> Vector:
        """Normalise and drop zeros; repeated columns are summed."""
        items = entries.items() if isinstance(entries, Mapping) else entries
        out: Vector = {}
        for c, x in items:
            out[c] = out.get(c, 0) + self(x)
        if self.p:
            return {c: x % self.p for c, x in out.items() if x % self.p}
        return {c: x for c, x in out.items() if x}

    def display(self, x) -> str:
        """Symmetric representative for prime fields, so -1 prints as -1."""
        if self.p and x > self.p // 2:
            return str(x - self.p)
        return str(x)


def add_scaled(field_: Field, v: Vector, a, w: Mapping[int, object]) -> None:
    """In place ``v += a * w``."""
    p = field_.p
    if p:
        for k, x in w.items():
            nv = (v.get(k, 0) + a * x) % p
            if nv:
                v[k] = nv
            else:
                v.pop(k, None)
    else:
        for k, x in w.items():
            nv = v.get(k, 0) + a * x
            if nv:
                v[k] = nv
            else:
                v.pop(k, None)


@dataclass
class SparseMatrix:
    """Matrix stored by columns: ``cols[j]`` maps row index to entry."""

    n_rows: int
    n_cols: int
    field: Field
    cols: list[Vector]

    @classmethod
    def from_entries(cls, n_rows: int, n_cols: int, entries: Iterable[tuple[int, int, object]], field_: Field):
        cols: list[Vector] = [{} for _ in range(n_cols)]
        for r, c, x in entries:
            if not (0 <= r < n_rows and 0 <= c < n_cols):
                raise IndexError(f"entry ({r}, {c}) out of range")
            cols[c][r] = cols[c].get(r, 0) + field_(x)
        cols = [field_.vector(col) for col in cols]
        return cls(n_rows, n_cols, field_, cols)

    @classmethod
    def from_dense(cls, rows: list[list], field_: Field):
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else 0
        entries = ((i, j, x) for i, row in enumerate(rows) for j, x in enumerate(row) if x)
        return cls.from_entries(n_rows, n_cols, entries, field_)

    @classmethod
    def identity(cls, n: int, field_: Field):
        return cls(n, n, field_, [{i: 1} for i in range(n)])

    @classmethod
    def zero(cls, n_rows: int, n_cols: int, field_: Field):
        return cls(n_rows, n_cols, field_, [{} for _ in range(n_cols)])

    def entries(self) -> Iterator[tuple[int, int, object]]:
        for c, col in enumerate(self.cols):
            for r in sorted(col):
                yield r, c, col[r]

    def rows(self) -> list[Vector]:
        out: list[Vector] = [{} for _ in range(self.n_rows)]
        for c, col in enumerate(self.cols):
            for r, x in col.items():
                out[r][c] = x
        return out

    def apply(self, v: Mapping[int, object]) -> Vector:
        out: Vector = {}
        for c, x in v.items():
            add_scaled(self.field, out, x, self.cols[c])
        return out

    def to_dense(self) -> list[list]:
        dense = [[0] * self.n_cols for _ in range(self.n_rows)]
        for r, c, x in self.entries():
            dense[r][c] = x
        return dense

    def matmul(self, other: SparseMatrix) -> SparseMatrix:
        if self.n_cols != other.n_rows:
            raise ValueError("dimension mismatch")
        return SparseMatrix(self.n_rows, other.n_cols, self.field, [self.apply(col) for col in other.cols])


@dataclass
class SubspaceBasis:
    """Linearly independent vectors in semi-echelon form inside K^ambient."""

    ambient: int
    field: Field
    _rows: dict[int, Vector] = field(default_factory=dict)

    @classmethod
    def spanned_by(cls, ambient: int, vectors: Iterable[Mapping[int, object]], field_: Field) -> SubspaceBasis:
        basis = cls(ambient, field_)
        for v in vectors:
            basis.add(v)
        return basis

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self._rows)

    def copy(self) -> SubspaceBasis:
        return SubspaceBasis(self.ambient, self.field, dict(self._rows))

    def reduce(self, v: Mapping[int, object]) -> tuple[Vector, dict[int, object]]:
        """Write ``v = sum(coef[c] * row_c) + residual`` with residual zero on every pivot."""
        p = self.field.p
        rows = self._rows
        v = dict(v)
        coefs: dict[int, object] = {}
        heap = [c for c in v if c in rows]
        heapq.heapify(heap)
        while heap:
            c = heapq.heappop(heap)
            a = v.get(c)
            if a is None:
                continue
            coefs[c] = a
            for k, x in rows[c].items():
                old = v.get(k)
                nv = ((old or 0) - a * x) % p if p else (old or 0) - a * x
                if nv:
                    v[k] = nv
                    if old is None and k in rows:
                        heapq.heappush(heap, k)
                else:
                    del v[k]
        return v, coefs

    def add(self, v: Mapping[int, object]) -> Vector | None:
        """Insert ``v``; returns the new (normalised) row, or None if ``v`` was dependent."""
        for c in v:
            if not 0 <= c < self.ambient:
                raise IndexError(f"column {c} outside ambient dimension {self.ambient}")
        r, _ = self.reduce(self.field.vector(v))
        if not r:
            return None
        piv = min(r)
        a = r[piv]
        if a != 1:
            inv = self.field.inv(a)
            p = self.field.p
            r = {k: (x * inv) % p for k, x in r.items()} if p else {k: x * inv for k, x in r.items()}
        self._rows[piv] = r
        return r

    def contains(self, v: Mapping[int, object]) -> bool:
        if any(not 0 <= c < self.ambient for c in v):
            raise ValueError("dimension mismatch")
        r, _ = self.reduce(v)
        return not r

    def rows(self) -> list[Vector]:
        """Fully reduced echelon form, ordered by increasing pivot."""
        done: dict[int, Vector] = {}
        for piv in sorted(self._rows, reverse=True):
            row = dict(self._rows[piv])
            for k in [k for k in row if k != piv and k in done]:
                add_scaled(self.field, row, self.field.neg(row[k]), done[k])
            done[piv] = row
        return [done[piv] for piv in sorted(done)]

    def canonicalize(self) -> SubspaceBasis:
        """Replace stored rows by the reduced echelon form."""
        self._rows = {min(r): r for r in self.rows()}
        return self


def rank(M: SparseMatrix) -> int:
    return len(row_space(M))


def row_space(M: SparseMatrix) -> SubspaceBasis:
    return SubspaceBasis.spanned_by(M.n_cols, M.rows(), M.field)


def column_space(M: SparseMatrix) -> SubspaceBasis:
    """Image of M, as a subspace of K^n_rows."""
    return SubspaceBasis.spanned_by(M.n_rows, (c for c in M.cols if c), M.field)


def kernel_vectors(M: SparseMatrix) -> list[Vector]:
    """One kernel vector per free column, read off the reduced row echelon form."""
    rref = row_space(M).rows()
    pivots = {min(r) for r in rref}
    by_col: dict[int, list[tuple[int, object]]] = {}
    for r in rref:
        piv = min(r)
        for c, x in r.items():
            if c != piv:
                by_col.setdefault(c, []).append((piv, x))
    neg = M.field.neg
    out = []
    for f in range(M.n_cols):
        if f in pivots:
            continue
        v = {f: M.field(1)}
        for piv, x in by_col.get(f, ()):
            v[piv] = neg(x)
        out.append(v)
    return out


def kernel_basis(M: SparseMatrix) -> SubspaceBasis:
    basis = SubspaceBasis.spanned_by(M.n_cols, kernel_vectors(M), M.field)
    return basis.canonicalize()


def in_span(v: Mapping[int, object], S: SubspaceBasis) -> bool:
    return S.contains(v)


@dataclass
class QuotientProjector:
    """Coordinates on Z/Bd, extended to the whole ambient space.

    ``combined`` holds the rows of Bd followed by complement rows; the
    complement rows (``complement_pivots``) are the chosen representatives.
    Applying the projector reduces a vector against ``combined`` and keeps the
    coefficients on complement rows, so it kills Bd and a fixed complement of Z.
    """

    boundaries: SubspaceBasis
    combined: SubspaceBasis
    complement_pivots: list[int]

    @property
    def dim(self) -> int:
        return len(self.complement_pivots)

    @property
    def index(self) -> dict[int, int]:
        return {piv: i for i, piv in enumerate(self.complement_pivots)}

    def representatives(self) -> list[Vector]:
        return [self.combined._rows[piv] for piv in self.complement_pivots]

    def __call__(self, v: Mapping[int, object]) -> Vector:
        _, coefs = self.combined.reduce(self.combined.field.vector(v))
        idx = self.index
        return {idx[c]: a for c, a in coefs.items() if c in idx}


def quotient_projector(Z: SubspaceBasis, Bd: SubspaceBasis) -> QuotientProjector:
    if Z.ambient != Bd.ambient:
        raise ValueError("dimension mismatch")
    for b in Bd.rows():
        if not Z.contains(b):
            raise ValueError("boundary subspace is not contained in the cycle subspace")
    combined = Bd.copy()
    comp = []
    for z in Z.rows():
        row = combined.add(z)
        if row is not None:
            comp.append(min(row))
    comp.sort()
    return QuotientProjector(Bd, combined, comp)
