"""Finite-dimensional connected graded algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping

from .presentation import MonomialPresentation, normal_words

Scalar = int | Fraction


class AlgebraFormatError(ValueError):
    pass


@dataclass
class GradedAlgebraData:
    """Basis element 0 is the unit (degree 0).  ``sc[(i, j)]`` lists the
    terms (k, c) of basis_i * basis_j; missing pairs multiply to zero and
    products involving the unit are implied."""

    labels: list[str]
    degrees: list[int]
    sc: dict[tuple[int, int], list[tuple[int, Scalar]]]
    grading: str = "degree"
    metadata: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.labels) != len(self.degrees):
            raise AlgebraFormatError("labels and degrees differ in length")
        if not self.labels or self.degrees[0] != 0:
            raise AlgebraFormatError("basis element 0 must be the unit, in degree 0")
        if len(set(self.labels)) != len(self.labels):
            raise AlgebraFormatError("duplicate basis labels")
        self.sc = {key: terms for key, terms in self.sc.items() if terms}

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def positive(self) -> list[int]:
        """Indices of the augmentation ideal basis."""
        return [i for i in range(1, self.dim)]

    def is_connected(self) -> bool:
        return all(d > 0 for d in self.degrees[1:])

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def mul_basis(self, i: int, j: int) -> list[tuple[int, Scalar]]:
        if i == 0:
            return [(j, 1)]
        if j == 0:
            return [(i, 1)]
        return self.sc.get((i, j), [])

    def multiply(self, x: Mapping[int, Scalar], y: Mapping[int, Scalar]) -> dict[int, Scalar]:
        out: dict[int, Scalar] = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.mul_basis(i, j):
                    out[k] = out.get(k, 0) + a * b * c
        return {k: v for k, v in out.items() if v}

    def hilbert(self) -> list[int]:
        top = max(self.degrees)
        dims = [0] * (top + 1)
        for d in self.degrees:
            dims[d] += 1
        return dims

    def element(self, label: str) -> Element:
        return Element(self, {self.index(label): 1})

    def one(self) -> Element:
        return Element(self, {0: 1})

    # -- structural checks -------------------------------------------------

    def check_degrees(self) -> list[tuple[int, int, int]]:
        """Structure constants violating degree additivity."""
        return [
            (i, j, k)
            for (i, j), terms in self.sc.items()
            for k, _ in terms
            if self.degrees[k] != self.degrees[i] + self.degrees[j]
        ]

    def check_associativity(self) -> list[tuple[int, int, int]]:
        bad = []
        n = self.dim
        for i, j, k in product(range(1, n), repeat=3):
            left = self.multiply(self.multiply({i: 1}, {j: 1}), {k: 1})
            right = self.multiply({i: 1}, self.multiply({j: 1}, {k: 1}))
            if left != right:
                bad.append((i, j, k))
        return bad


@dataclass
class Element:
    """Formal linear combination of basis elements of ``alg``."""

    alg: GradedAlgebraData
    terms: dict[int, Scalar]

    def __post_init__(self):
        self.terms = {k: v for k, v in self.terms.items() if v}

    def __mul__(self, other: Element) -> Element:
        return Element(self.alg, self.alg.multiply(self.terms, other.terms))

    def __add__(self, other: Element) -> Element:
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Element(self.alg, out)

    def __rmul__(self, scalar: Scalar) -> Element:
        return Element(self.alg, {k: scalar * v for k, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, Element) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_homogeneous(self) -> bool:
        return len({self.alg.degrees[k] for k in self.terms}) <= 1

    @property
    def degree(self) -> int | None:
        degs = {self.alg.degrees[k] for k in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            (f"{self.alg.labels[k]}" if v == 1 else f"{v}*{self.alg.labels[k]}") for k, v in sorted(self.terms.items())
        )


def monomial_algebra(p: MonomialPresentation, max_degree: int = 64) -> GradedAlgebraData:
    """The finite-dimensional monomial algebra K<V>/(R) on its normal-word basis."""
    words: list[tuple[int, ...]] = []
    d = 0
    while True:
        level = normal_words(p, d)
        if not level:
            break
        words.extend(level)
        d += 1
        if d > max_degree:
            raise ValueError(f"algebra has nonzero elements beyond degree {max_degree}")
    index = {w: i for i, w in enumerate(words)}
    sc = {}
    for i, u in enumerate(words):
        if not u:
            continue
        for j, v in enumerate(words):
            if v and (u + v) in index:
                sc[(i, j)] = [(index[u + v], 1)]
    labels = ["1"] + [_word_label(p, w) for w in words[1:]]
    return GradedAlgebraData(labels, [len(w) for w in words], sc, grading="word length")


def _word_label(p: MonomialPresentation, w) -> str:
    return p.format_word(w, sep="" if all(len(n) == 1 for n in p.names) else ".")


def export_algebra(alg: GradedAlgebraData) -> str:
    lines = [f"# grading: {alg.grading}"]
    lines += [f"basis: {label} {deg}" for label, deg in zip(alg.labels, alg.degrees)]
    for (i, j) in sorted(alg.sc):
        for k, c in alg.sc[(i, j)]:
            lines.append(f"sc: {i} {j} -> {k} {c}")
    return "\n".join(lines) + "\n"


def _scalar(token: str) -> Scalar:
    value = Fraction(token)
    return value.numerator if value.denominator == 1 else value


def parse_algebra(text: str, source: str | None = None) -> GradedAlgebraData:
    labels: list[str] = []
    degrees: list[int] = []
    sc: dict[tuple[int, int], list[tuple[int, Scalar]]] = {}
    grading = "degree"
    where = f"{source}:" if source else ""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if raw.startswith("# grading:"):
            grading = raw.split(":", 1)[1].strip()
            continue
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, value = line.partition(":")
        tokens = value.split()
        try:
            if key == "basis":
                if len(tokens) != 2:
                    raise ValueError("expected 'basis: <label> <degree>'")
                labels.append(tokens[0])
                degrees.append(int(tokens[1]))
            elif key == "sc":
                if len(tokens) != 5 or tokens[2] != "->":
                    raise ValueError("expected 'sc: <i> <j> -> <k> <scalar>'")
                i, j, k = int(tokens[0]), int(tokens[1]), int(tokens[3])
                if not all(0 <= t < len(labels) for t in (i, j, k)):
                    raise ValueError("structure constant refers to an undeclared basis element")
                if i == 0 or j == 0:
                    raise ValueError("unit products are implied and may not be listed")
                sc.setdefault((i, j), []).append((k, _scalar(tokens[4])))
            else:
                raise ValueError(f"unknown directive {key!r}")
        except ValueError as exc:
            raise AlgebraFormatError(f"{where}{lineno}: {exc}") from None
    if not labels:
        raise AlgebraFormatError(f"{where} no basis declared")
    return GradedAlgebraData(labels, degrees, sc, grading=grading)


def algebra_from_table(
    labels: Iterable[str], degrees: Iterable[int], products: Mapping[tuple[str, str], str | None]
) -> GradedAlgebraData:
    """Convenience builder: ``products[(a, b)] = c`` means a*b = c (coefficient 1)."""
    labels = list(labels)
    index = {l: i for i, l in enumerate(labels)}
    sc = {(index[a], index[b]): [(index[c], 1)] for (a, b), c in products.items() if c is not None}
    return GradedAlgebraData(labels, list(degrees), sc)
