"""The Yoneda algebra E(A) of a monomial algebra with finite global dimension.

Basis: the unit and the duals of all chains, graded by level.  The product
of two chain duals is the dual of the chain whose word is the concatenation
of their words at the summed level, if one exists, and zero otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Element, GradedAlgebraData, export_algebra, parse_algebra  # noqa: F401  (re-exported)
from .chains import Chain, ChainData
from .presentation import MonomialPresentation, Word


class ChainCollisionError(RuntimeError):
    pass


@dataclass
class ExtAlgebra:
    presentation: MonomialPresentation
    algebra: GradedAlgebraData
    chains: list[Chain | None]  # aligned with the basis; None for the unit
    by_word: dict[tuple[int, Word], int]

    def chain_by_word(self, level: int, w: Word | str) -> Chain | None:
        if isinstance(w, str):
            w = self.presentation.word(w)
        i = self.by_word.get((level, tuple(w)))
        return None if i is None else self.chains[i]

    def dual(self, level: int, w: Word | str) -> Element:
        """The basis element dual to the level-``level`` chain with word ``w``."""
        if isinstance(w, str):
            w = self.presentation.word(w)
        i = self.by_word.get((level, tuple(w)))
        if i is None:
            raise KeyError(f"no chain of level {level} with word {self.presentation.format_word(tuple(w))}")
        return Element(self.algebra, {i: 1})

    def letter(self, name: str) -> Element:
        return self.dual(1, (self.presentation.names.index(name),))

    def relation(self, w: Word | str) -> Element:
        return self.dual(2, w)

    def describe(self, x: Element) -> list[tuple[str, object]]:
        return [(self.chains[k].format(self.presentation) if k else "1", v) for k, v in sorted(x.terms.items())]


def chain_label(p: MonomialPresentation, c: Chain) -> str:
    sep = "" if all(len(n) == 1 for n in p.names) else "."
    return "|".join(p.format_word(part, sep) for part in c.tower)


def build_ext_algebra(chains: ChainData) -> ExtAlgebra:
    if chains.truncated:
        raise ValueError(
            f"chain enumeration truncated at level {chains.max_level}; "
            "the Ext algebra needs a terminated resolution (raise max_level)"
        )
    p = chains.presentation
    basis: list[Chain | None] = [None]
    by_word: dict[tuple[int, Word], int] = {}
    for c in chains.all_chains():
        key = (c.level, c.word)
        if key in by_word:
            other = basis[by_word[key]]
            raise ChainCollisionError(
                f"chains {other.format(p)} and {c.format(p)} share word {p.format_word(c.word)} at level {c.level}"
            )
        by_word[key] = len(basis)
        basis.append(c)
    sc = {}
    for i, ci in enumerate(basis[1:], start=1):
        for j, cj in enumerate(basis[1:], start=1):
            k = by_word.get((ci.level + cj.level, ci.word + cj.word))
            if k is not None:
                sc[(i, j)] = [(k, 1)]
    labels = ["1"] + [chain_label(p, c) for c in basis[1:]]
    degrees = [0] + [c.level for c in basis[1:]]
    alg = GradedAlgebraData(
        labels,
        degrees,
        sc,
        grading="cohomological",
        metadata={"internal_degrees": [0] + [c.internal_degree for c in basis[1:]]},
    )
    return ExtAlgebra(p, alg, basis, by_word)


def multiply(x: Element, y: Element, alg: GradedAlgebraData | None = None) -> Element:
    alg = alg or x.alg
    return Element(alg, alg.multiply(x.terms, y.terms))


def ext_hilbert(alg: GradedAlgebraData) -> list[int]:
    return alg.hilbert()


def quadratic_dual(p: MonomialPresentation) -> MonomialPresentation:
    """K<V>/(R)^! for quadratic monomial R: relations are the degree-2 words not in R."""
    if any(len(r) != 2 for r in p.relations):
        raise ValueError("quadratic dual needs all relations of degree 2")
    n = p.n_letters
    rels = [(a, b) for a in range(n) for b in range(n) if (a, b) not in p.relation_set]
    return MonomialPresentation(p.names, tuple(rels))
