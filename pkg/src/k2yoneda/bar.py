"""Bar-complex homology Tor^B(K, K) of a finite-dimensional connected graded algebra.

Bar_i = B_+^{(x) i}, split into slices by internal degree d.  A basis tuple
(b_1, ..., b_i) of positive-degree basis indices has differential

    d(b_1 | ... | b_i) = sum_{j=1}^{i-1} (-1)^{j+1} b_1 | ... | b_j b_{j+1} | ... | b_i.

Tor inherits a coalgebra structure from deconcatenation; the reduced
coproduct on Tor_3 is injective iff Ext^3 is generated by Ext^1 and Ext^2.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .algebra import GradedAlgebraData
from .linalg import (
    Field,
    QuotientProjector,
    SparseMatrix,
    SubspaceBasis,
    Vector,
    add_scaled,
    kernel_vectors,
    quotient_projector,
)

log = logging.getLogger(__name__)

Tuple_ = tuple[int, ...]


class NotConnectedError(ValueError):
    pass


@dataclass
class BarTensor:
    """Linear combination of bar basis tuples, homogeneous in (i, d)."""

    terms: dict[Tuple_, object]

    @property
    def length(self) -> int | None:
        lengths = {len(t) for t in self.terms}
        return lengths.pop() if len(lengths) == 1 else None

    def __bool__(self) -> bool:
        return bool(self.terms)

    def format(self, alg: GradedAlgebraData, field_: Field) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t, c in sorted(self.terms.items()):
            s = " (x) ".join(alg.labels[k] for k in t)
            coef = field_.display(c)
            parts.append(s if coef == "1" else f"{coef}*[{s}]")
        return " + ".join(parts)

    def as_pairs(self, alg: GradedAlgebraData, field_: Field) -> list[dict]:
        return [
            {"tuple": [alg.labels[k] for k in t], "coefficient": field_.display(c)}
            for t, c in sorted(self.terms.items())
        ]


@dataclass
class Homology:
    """Tor_{i,d}: slice basis, cycle representatives and the projector onto them."""

    i: int
    d: int
    basis: list[Tuple_]
    projector: QuotientProjector

    @property
    def dim(self) -> int:
        return self.projector.dim

    def representatives(self) -> list[BarTensor]:
        return [BarTensor({self.basis[c]: x for c, x in sorted(v.items())}) for v in self.projector.representatives()]

    def coordinates(self, z: BarTensor | Mapping[Tuple_, object], index: Mapping[Tuple_, int]) -> Vector:
        terms = z.terms if isinstance(z, BarTensor) else z
        return self.projector({index[t]: x for t, x in terms.items()})


class BarComplex:
    """Degree-sliced bar complex of ``alg`` over ``field``."""

    def __init__(self, alg: GradedAlgebraData, field_: Field | None = None):
        if not alg.is_connected():
            raise NotConnectedError("algebra must be connected: only the unit may have degree 0")
        self.alg = alg
        self.field = field_ or Field()
        self.deg = alg.degrees
        self.positive = alg.positive
        self.max_deg = max((self.deg[k] for k in self.positive), default=0)
        self.products: dict[tuple[int, int], Vector] = {}
        for (a, b), terms in alg.sc.items():
            v = self.field.vector((k, c) for k, c in terms)
            if v:
                self.products[(a, b)] = v
        self._slices: dict[tuple[int, int], list[Tuple_]] = {}
        self._index: dict[tuple[int, int], dict[Tuple_, int]] = {}
        self._boundaries: dict[tuple[int, int], SubspaceBasis] = {}
        self._cycles: dict[tuple[int, int], SubspaceBasis] = {}
        self._homology: dict[tuple[int, int], Homology] = {}

    # -- slices ------------------------------------------------------------

    @cached_property
    def _by_degree(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for k in self.positive:
            out.setdefault(self.deg[k], []).append(k)
        return out

    def slice_dim(self, i: int, d: int) -> int:
        return self._slice_counts(i).get(d, 0)

    def _slice_counts(self, i: int) -> dict[int, int]:
        counts = {0: 1}
        for _ in range(i):
            nxt: dict[int, int] = {}
            for d0, c in counts.items():
                for e, ks in self._by_degree.items():
                    nxt[d0 + e] = nxt.get(d0 + e, 0) + c * len(ks)
            counts = nxt
        return counts

    def slice(self, i: int, d: int) -> list[Tuple_]:
        """All i-tuples of positive basis indices with degree sum d, lexicographic."""
        key = (i, d)
        if key not in self._slices:
            self._slices[key] = list(self._gen(i, d))
        return self._slices[key]

    def index(self, i: int, d: int) -> dict[Tuple_, int]:
        key = (i, d)
        if key not in self._index:
            self._index[key] = {t: n for n, t in enumerate(self.slice(i, d))}
        return self._index[key]

    def _gen(self, i: int, d: int, prefix: Tuple_ = ()) -> Iterable[Tuple_]:
        if i == 0:
            if d == 0:
                yield prefix
            return
        lo = min((self.deg[k] for k in self.positive), default=1)
        for k in self.positive:
            rest = d - self.deg[k]
            if (i - 1) * lo <= rest <= (i - 1) * self.max_deg:
                yield from self._gen(i - 1, rest, prefix + (k,))

    def active_tuples(self, i: int, d: int) -> list[Tuple_]:
        """Tuples in slice (i, d) with at least one nonzero adjacent product."""
        if i < 2:
            return []
        found: set[Tuple_] = set()
        for (a, b) in self.products:
            rest = d - self.deg[a] - self.deg[b]
            if rest < 0:
                continue
            for j in range(i - 1):
                left_n, right_n = j, i - 2 - j
                for d1 in range(rest + 1):
                    left = self.slice(left_n, d1) if left_n else ([()] if d1 == 0 else [])
                    if not left:
                        continue
                    right = self.slice(right_n, rest - d1) if right_n else ([()] if rest == d1 else [])
                    for u in left:
                        mid = u + (a, b)
                        for v in right:
                            found.add(mid + v)
        return sorted(found)

    # -- differential -------------------------------------------------------

    def boundary_of(self, t: Tuple_) -> dict[Tuple_, object]:
        """The bar differential of a single basis tuple."""
        out: dict[Tuple_, object] = {}
        p = self.field.p
        for j in range(len(t) - 1):
            prod = self.products.get((t[j], t[j + 1]))
            if not prod:
                continue
            sign = 1 if j % 2 == 0 else -1
            head, tail = t[:j], t[j + 2 :]
            for k, c in prod.items():
                key = head + (k,) + tail
                nv = out.get(key, 0) + sign * c
                if p:
                    nv %= p
                if nv:
                    out[key] = nv
                else:
                    out.pop(key, None)
        return out

    def apply_differential(self, z: BarTensor) -> BarTensor:
        out: dict[Tuple_, object] = {}
        for t, c in z.terms.items():
            add_scaled(self.field, out, c, self.boundary_of(t))
        return BarTensor(out)

    def differential(self, i: int, d: int) -> SparseMatrix:
        """Matrix of Bar_{i,d} -> Bar_{i-1,d} in the slice bases (zero for i = 1)."""
        cols_basis = self.slice(i, d)
        if i == 1:
            return SparseMatrix.zero(0, len(cols_basis), self.field)
        idx = self.index(i - 1, d)
        cols = [{idx[s]: c for s, c in self.boundary_of(t).items()} for t in cols_basis]
        return SparseMatrix(len(self.slice(i - 1, d)), len(cols_basis), self.field, cols)

    # -- homology -----------------------------------------------------------

    def boundaries(self, i: int, d: int) -> SubspaceBasis:
        """Image of d_{i+1} inside slice (i, d)."""
        key = (i, d)
        if key not in self._boundaries:
            idx = self.index(i, d)
            basis = SubspaceBasis(len(idx), self.field)
            for t in self.active_tuples(i + 1, d):
                image = self.boundary_of(t)
                if image:
                    basis.add({idx[s]: c for s, c in image.items()})
            self._boundaries[key] = basis
        return self._boundaries[key]

    def boundary_rank(self, i: int, d: int) -> int:
        """rank of d_i : Bar_{i,d} -> Bar_{i-1,d}."""
        if i <= 1:
            return 0
        return len(self.boundaries(i - 1, d))

    def cycles(self, i: int, d: int) -> SubspaceBasis:
        key = (i, d)
        if key not in self._cycles:
            n = len(self.slice(i, d))
            if i == 1:
                basis = SubspaceBasis.spanned_by(n, ({c: 1} for c in range(n)), self.field)
            else:
                basis = SubspaceBasis.spanned_by(n, kernel_vectors(self.differential(i, d)), self.field)
            self._cycles[key] = basis.canonicalize()
        return self._cycles[key]

    def tor_dim(self, i: int, d: int) -> int:
        if i == 0:
            return 1 if d == 0 else 0
        return self.slice_dim(i, d) - self.boundary_rank(i, d) - len(self.boundaries(i, d))

    def homology(self, i: int, d: int) -> Homology:
        key = (i, d)
        if key not in self._homology:
            proj = quotient_projector(self.cycles(i, d), self.boundaries(i, d))
            self._homology[key] = Homology(i, d, self.slice(i, d), proj)
        return self._homology[key]

    def homology_representatives(self, i: int, d: int) -> tuple[list[BarTensor], QuotientProjector]:
        h = self.homology(i, d)
        return h.representatives(), h.projector

    def tensor_vector(self, z: BarTensor, i: int, d: int) -> Vector:
        idx = self.index(i, d)
        return {idx[t]: self.field(c) for t, c in z.terms.items()}

    def is_boundary(self, z: BarTensor, i: int, d: int) -> bool:
        return self.boundaries(i, d).contains(self.tensor_vector(z, i, d))

    def homology_class(self, z: BarTensor, i: int, d: int) -> Vector:
        return self.homology(i, d).projector(self.tensor_vector(z, i, d))

    def tensor_degree(self, t: Tuple_) -> int:
        return sum(self.deg[k] for k in t)

    # -- coproduct ----------------------------------------------------------

    def _class_of_tuple(self, t: Tuple_, cache: dict) -> Vector:
        if t not in cache:
            d = self.tensor_degree(t)
            h = self.homology(len(t), d)
            cache[t] = h.projector({self.index(len(t), d)[t]: 1})
        return cache[t]

    def coproduct_image(self, z: BarTensor, cache: dict | None = None) -> dict[tuple, object]:
        """Class of the reduced coproduct of the cycle ``z`` in (+)_j Tor_j (x) Tor_{i-j}.

        Keys are (j, left degree, left coordinate, right coordinate).
        """
        cache = {} if cache is None else cache
        out: dict[tuple, object] = {}
        p = self.field.p
        for t, c in z.terms.items():
            for j in range(1, len(t)):
                left, right = t[:j], t[j:]
                lc = self._class_of_tuple(left, cache)
                if not lc:
                    continue
                rc = self._class_of_tuple(right, cache)
                if not rc:
                    continue
                dl = self.tensor_degree(left)
                for a, x in lc.items():
                    for b, y in rc.items():
                        key = (j, dl, a, b)
                        nv = out.get(key, 0) + c * x * y
                        if p:
                            nv %= p
                        if nv:
                            out[key] = nv
                        else:
                            out.pop(key, None)
        return out

    def coproduct_matrix(self, i: int, d: int) -> tuple[SparseMatrix, list[tuple]]:
        """Matrix of the reduced coproduct on Tor_{i,d}; rows are labelled by the returned keys."""
        reps = self.homology(i, d).representatives()
        cache: dict = {}
        images = [self.coproduct_image(r, cache) for r in reps]
        keys = sorted({k for im in images for k in im})
        row = {k: n for n, k in enumerate(keys)}
        cols = [{row[k]: x for k, x in im.items()} for im in images]
        return SparseMatrix(len(keys), len(reps), self.field, cols), keys


def reduced_coproduct(z: BarTensor) -> dict[int, dict[tuple[Tuple_, Tuple_], object]]:
    """Deconcatenation at every interior position j: j -> {(left, right): coefficient}."""
    out: dict[int, dict[tuple[Tuple_, Tuple_], object]] = {}
    for t, c in z.terms.items():
        for j in range(1, len(t)):
            out.setdefault(j, {})[(t[:j], t[j:])] = c
    return out


def bar_differential(alg: GradedAlgebraData, i: int, d: int, field_: Field | None = None) -> SparseMatrix:
    return BarComplex(alg, field_).differential(i, d)


def default_max_degree(alg: GradedAlgebraData, i: int = 3) -> int:
    """Largest internal degree with a nonzero (i, d) bar slice."""
    return i * max((alg.degrees[k] for k in alg.positive), default=0)


def tor_dimensions(
    alg: GradedAlgebraData, i_max: int, d_max: int, field_: Field | None = None, bar: BarComplex | None = None
) -> dict[tuple[int, int], int]:
    bar = bar or BarComplex(alg, field_)
    table = {(0, 0): 1}
    for i in range(1, i_max + 1):
        for d in range(1, d_max + 1):
            if bar.slice_dim(i, d):
                table[(i, d)] = bar.tor_dim(i, d)
    return table


def coproduct_on_tor(alg_or_bar, i: int, d: int, field_: Field | None = None) -> SparseMatrix:
    bar = alg_or_bar if isinstance(alg_or_bar, BarComplex) else BarComplex(alg_or_bar, field_)
    return bar.coproduct_matrix(i, d)[0]


def coproduct_on_tor3(alg_or_bar, d: int, field_: Field | None = None) -> SparseMatrix:
    return coproduct_on_tor(alg_or_bar, 3, d, field_)


@dataclass
class TorSummary:
    field: str
    i_analyzed: int
    d_max: int
    tor: dict[tuple[int, int], int]
    kernel_dims: dict[int, int]
    witnesses: dict[int, list[BarTensor]] = field(default_factory=dict)
    tor1_support: list[int] = field(default_factory=list)

    @property
    def generated_by_lower(self) -> bool:
        return not any(self.kernel_dims.values())

    @property
    def verdict(self) -> str:
        return "generated-by-lower" if self.generated_by_lower else "new-generators-found"

    @property
    def first_failure_degree(self) -> int | None:
        return min((d for d, k in self.kernel_dims.items() if k), default=None)

    def tor_by_degree(self, i: int) -> dict[int, int]:
        return {d: v for (ii, d), v in sorted(self.tor.items()) if ii == i and v}


def k2_low_degree_test(
    alg: GradedAlgebraData,
    d_max: int | None = None,
    field_: Field | None = None,
    i: int = 3,
    bar: BarComplex | None = None,
    with_witnesses: bool = True,
) -> TorSummary:
    """Is Ext^i of ``alg`` generated by lower cohomological degrees?

    Computes Tor_1..Tor_i over all internal degrees up to ``d_max`` and the
    kernel of the reduced coproduct on Tor_i in each degree.
    """
    bar = bar or BarComplex(alg, field_)
    if d_max is None:
        d_max = default_max_degree(alg, i)
    tor = tor_dimensions(alg, i, d_max, bar=bar)
    kernel_dims: dict[int, int] = {}
    witnesses: dict[int, list[BarTensor]] = {}
    for d in range(1, d_max + 1):
        if not tor.get((i, d)):
            continue
        M, _ = bar.coproduct_matrix(i, d)
        kernel = kernel_vectors(M)
        kernel_dims[d] = len(kernel)
        log.debug("Tor_%d,%d: dim %d, coproduct kernel %d", i, d, tor[(i, d)], len(kernel))
        if kernel and with_witnesses:
            reps = bar.homology(i, d).representatives()
            ws = []
            for v in kernel:
                terms: dict = {}
                for n, c in v.items():
                    add_scaled(bar.field, terms, c, reps[n].terms)
                ws.append(BarTensor(dict(sorted(terms.items()))))
            witnesses[d] = ws
    support = [d for (ii, d), v in sorted(tor.items()) if ii == 1 and v]
    return TorSummary(str(bar.field), i, d_max, tor, kernel_dims, witnesses, support)
