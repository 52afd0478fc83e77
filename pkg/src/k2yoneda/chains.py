"""Annihilator chains of monomial algebras.

For a monomial algebra A = K<V>/(R) the minimal graded resolution of the
trivial module has one generator per chain (a_n, ..., a_1): a_1 is a letter
and each a_{i+1} is a minimal left annihilator of a_i.  The differential
sends e_c to a_n e_c' where c' drops the top word, so the chains of level n
and word length m give a basis of Ext^{n,m}_A(K, K).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal

from .presentation import MonomialPresentation, Word

DEFAULT_CHAIN_LIMIT = 1_000_000


@dataclass(frozen=True, order=True)
class Chain:
    """Annihilator tower stored top first: ``tower = (a_n, ..., a_1)``."""

    tower: tuple[Word, ...]

    @property
    def level(self) -> int:
        return len(self.tower)

    @property
    def top(self) -> Word:
        return self.tower[0]

    @property
    def word(self) -> Word:
        return tuple(a for part in self.tower for a in part)

    @property
    def internal_degree(self) -> int:
        return sum(len(part) for part in self.tower)

    def drop_top(self) -> Chain:
        return Chain(self.tower[1:])

    def extend(self, a: Word) -> Chain:
        return Chain((a,) + self.tower)

    def format(self, p: MonomialPresentation) -> str:
        return "(" + ", ".join(p.format_word(part) for part in self.tower) + ")"


def min_left_annihilators(b: Word, p: MonomialPresentation) -> list[Word]:
    """Minimal left annihilators of the nonzero word ``b``, sorted lexicographically.

    A relation can only straddle the junction a|b, so every candidate is a
    proper prefix ``a`` of a relation ``r = a c`` whose tail ``c`` starts ``b``.
    """
    if not b:
        raise ValueError("annihilators are defined for words of degree >= 1")
    if p.is_zero(b):
        raise ValueError(f"word {p.format_word(b)} is zero in A")
    found: set[Word] = set()
    for r in p.relations:
        for k in range(1, len(r)):
            a, c = r[:k], r[k:]
            if len(c) > len(b) or b[: len(c)] != c:
                continue
            if a in found or p.is_zero(a):
                continue
            if any(p.is_zero(a[i:] + b) for i in range(1, len(a))):
                continue
            found.add(a)
    return sorted(found)


@dataclass
class ChainData:
    """Chain sets C_1..C_L; ``levels[k-1]`` is C_k in canonical order."""

    presentation: MonomialPresentation
    levels: list[list[Chain]]

    @property
    def max_level(self) -> int:
        return len(self.levels)

    @property
    def terminated(self) -> bool:
        return not self.levels or not self.levels[-1]

    @property
    def truncated(self) -> bool:
        return not self.terminated

    def sizes(self) -> list[int]:
        return [len(level) for level in self.levels]

    def all_chains(self) -> Iterable[Chain]:
        for level in self.levels:
            yield from level


def enumerate_chains(
    p: MonomialPresentation, max_level: int, limit: int = DEFAULT_CHAIN_LIMIT
) -> ChainData:
    if max_level < 1:
        raise ValueError("max_level must be >= 1")
    level = [Chain(((a,),)) for a in range(p.n_letters)]
    levels = [level]
    total = len(level)
    cache: dict[Word, list[Word]] = {}
    while len(levels) < max_level:
        nxt = []
        for c in level:
            top = c.top
            if top not in cache:
                cache[top] = min_left_annihilators(top, p)
            nxt.extend(c.extend(a) for a in cache[top])
        nxt.sort()
        total += len(nxt)
        if total > limit:
            raise MemoryError(f"more than {limit} chains up to level {len(levels) + 1}")
        levels.append(nxt)
        level = nxt
    return ChainData(p, levels)


@dataclass
class BettiTable:
    """dim Ext^{n,m}_A(K, K) for levels n <= max_level."""

    entries: dict[tuple[int, int], int]
    max_level: int
    truncated: bool

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def nonzero(self) -> list[tuple[int, int]]:
        return sorted(k for k, v in self.entries.items() if v)

    def level_dims(self) -> list[int]:
        dims = [0] * (self.max_level + 1)
        for (n, _), v in self.entries.items():
            dims[n] += v
        return dims

    def max_internal_degree(self) -> int:
        return max((m for (_, m) in self.nonzero()), default=0)

    def poincare_coefficients(self, max_degree: int) -> list[int]:
        """Coefficients of sum (-1)^n b_{n,m} t^m up to t^max_degree."""
        out = [0] * (max_degree + 1)
        for (n, m), v in self.entries.items():
            if m <= max_degree:
                out[m] += (-1) ** n * v
        return out


def betti_table(chains: ChainData) -> BettiTable:
    entries = {(0, 0): 1}
    for chain in chains.all_chains():
        key = (chain.level, chain.internal_degree)
        entries[key] = entries.get(key, 0) + 1
    return BettiTable(entries, chains.max_level, chains.truncated)


@dataclass(frozen=True)
class Classification:
    kind: Literal["Koszul", "D-Koszul", "neither"]
    D: int | None
    max_level: int
    truncated: bool

    def __str__(self) -> str:
        name = f"D-Koszul with D={self.D}" if self.kind == "D-Koszul" else self.kind
        scope = f"within computed range (levels <= {self.max_level})" if self.truncated else "resolution terminated"
        return f"{name} [{scope}]"


def delta(n: int, D: int) -> int:
    """Internal degree of Ext^n for a D-Koszul algebra."""
    return (n // 2) * D + (n % 2)


def classify(bt: BettiTable) -> Classification:
    support = [k for k in bt.nonzero() if k[0] >= 1]
    if all(m == n for n, m in support):
        return Classification("Koszul", None, bt.max_level, bt.truncated)
    level2 = {m for n, m in support if n == 2}
    if len(level2) == 1:
        D = level2.pop()
        if D > 2 and all(m == delta(n, D) for n, m in support):
            return Classification("D-Koszul", D, bt.max_level, bt.truncated)
    return Classification("neither", None, bt.max_level, bt.truncated)


@dataclass(frozen=True)
class K2Check:
    b: Word
    a: Word
    reason: Literal["deg1", "product-in-R", "violation"]


@dataclass
class K2Certificate:
    s_sets: list[list[Word]]
    checks: list[K2Check] = field(default_factory=list)

    @property
    def violations(self) -> list[K2Check]:
        return [c for c in self.checks if c.reason == "violation"]

    @property
    def certified(self) -> bool:
        return not self.violations

    @property
    def verdict(self) -> str:
        return "certified" if self.certified else "criterion violated"


def s_sets(p: MonomialPresentation) -> list[list[Word]]:
    """S_1, S_2, ... up to the first set that is empty or adds nothing new."""
    current = [(a,) for a in range(p.n_letters)]
    out = [current]
    seen = set(current)
    while current:
        nxt = sorted({a for b in current for a in min_left_annihilators(b, p) if len(a) >= 2})
        out.append(nxt)
        if seen.issuperset(nxt):
            break
        seen.update(nxt)
        current = nxt
    return out


def check_k2(p: MonomialPresentation) -> K2Certificate:
    """Run the sufficient K2 criterion: for every b in S and every minimal left
    annihilator a of b, either deg(a) = 1 or ab is a relation."""
    sets = s_sets(p)
    union = sorted({b for s in sets for b in s}, key=lambda w: (len(w), w))
    cert = K2Certificate(sets)
    rels = p.relation_set
    for b in union:
        for a in min_left_annihilators(b, p):
            if len(a) == 1:
                reason = "deg1"
            elif a + b in rels:
                reason = "product-in-R"
            else:
                reason = "violation"
            cert.checks.append(K2Check(b, a, reason))
    return cert


def euler_product(bt: BettiTable, hilbert: list[int]) -> list[int]:
    """(sum (-1)^n b_{n,m} t^m) * (sum dim A_k t^k), truncated to len(hilbert) terms."""
    N = len(hilbert) - 1
    poincare = bt.poincare_coefficients(N)
    return [sum(poincare[i] * hilbert[k - i] for i in range(k + 1)) for k in range(N + 1)]
