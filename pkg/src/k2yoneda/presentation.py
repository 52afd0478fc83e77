"""Monomial algebra presentations K<V>/(R) with R a set of words.

Words are tuples of generator indices.  A word is zero in the algebra iff it
contains some relation as a contiguous subword; membership is decided by an
Aho-Corasick automaton built once per presentation.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

Word = tuple[int, ...]

DEFAULT_WORD_LIMIT = 2_000_000


class PresentationError(ValueError):
    """Raised for malformed presentation files or invalid relation sets."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


def is_subword(small: Sequence[int], big: Sequence[int]) -> bool:
    n, k = len(big), len(small)
    return any(tuple(big[i : i + k]) == tuple(small) for i in range(n - k + 1))


class SubwordAutomaton:
    """Deterministic automaton recognising words that contain a pattern.

    States are trie nodes; ``goto[s][a]`` is total over the alphabet and
    ``terminal[s]`` is true when some pattern is a suffix of the text read.
    """

    def __init__(self, n_letters: int, patterns: Iterable[Word]):
        self.n_letters = n_letters
        trie: list[dict[int, int]] = [{}]
        terminal = [False]
        for pat in patterns:
            s = 0
            for a in pat:
                nxt = trie[s].get(a)
                if nxt is None:
                    nxt = len(trie)
                    trie[s][a] = nxt
                    trie.append({})
                    terminal.append(False)
                s = nxt
            terminal[s] = True

        goto = [[0] * n_letters for _ in trie]
        fail = [0] * len(trie)
        queue: deque[int] = deque()
        for a in range(n_letters):
            child = trie[0].get(a)
            if child is not None:
                goto[0][a] = child
                queue.append(child)
        while queue:
            s = queue.popleft()
            terminal[s] = terminal[s] or terminal[fail[s]]
            for a in range(n_letters):
                child = trie[s].get(a)
                if child is None:
                    goto[s][a] = goto[fail[s]][a]
                else:
                    fail[child] = goto[fail[s]][a]
                    goto[s][a] = child
                    queue.append(child)

        self.goto = goto
        self.fail = fail
        self.terminal = terminal

    @property
    def n_states(self) -> int:
        return len(self.goto)

    def contains_pattern(self, word: Iterable[int]) -> bool:
        s = 0
        goto, terminal = self.goto, self.terminal
        for a in word:
            s = goto[s][a]
            if terminal[s]:
                return True
        return False

    def count_avoiding(self, max_degree: int) -> list[int]:
        """Number of words of each length 0..max_degree avoiding every pattern."""
        counts = {0: 1}
        dims = [1]
        for _ in range(max_degree):
            nxt: dict[int, int] = {}
            for s, c in counts.items():
                for t in self.goto[s]:
                    if not self.terminal[t]:
                        nxt[t] = nxt.get(t, 0) + c
            counts = nxt
            dims.append(sum(counts.values()))
        return dims

    def has_infinite_language(self) -> bool:
        """True iff arbitrarily long pattern-avoiding words exist."""
        # cycle detection in the graph of live states
        colour = [0] * self.n_states
        for root in range(self.n_states):
            if self.terminal[root] or colour[root]:
                continue
            stack = [(root, iter(self.goto[root]))]
            colour[root] = 1
            while stack:
                s, it = stack[-1]
                for t in it:
                    if self.terminal[t]:
                        continue
                    if colour[t] == 1:
                        return True
                    if colour[t] == 0:
                        colour[t] = 1
                        stack.append((t, iter(self.goto[t])))
                        break
                else:
                    colour[s] = 2
                    stack.pop()
        return False


@dataclass(frozen=True)
class MonomialPresentation:
    """Alphabet plus an antichain of relation words (each of degree >= 2)."""

    names: tuple[str, ...]
    relations: tuple[Word, ...]
    field_hint: int | None = field(default=None, compare=False)

    def __post_init__(self):
        validate(self.names, self.relations)
        object.__setattr__(self, "relations", tuple(sorted(self.relations)))

    @classmethod
    def from_names(cls, names: Sequence[str], relations: Iterable[Sequence[str] | str]) -> MonomialPresentation:
        """Build from generator names; a string relation is split into single-character names
        when every generator name is one character, otherwise on whitespace."""
        names = tuple(names)
        index = {n: i for i, n in enumerate(names)}
        single = all(len(n) == 1 for n in names)
        rels = []
        for rel in relations:
            if isinstance(rel, str):
                rel = list(rel.replace(" ", "")) if single else rel.split()
            try:
                rels.append(tuple(index[a] for a in rel))
            except KeyError as exc:
                raise PresentationError(f"unknown generator {exc.args[0]!r}") from None
        return cls(names, tuple(rels))

    @property
    def n_letters(self) -> int:
        return len(self.names)

    @cached_property
    def automaton(self) -> SubwordAutomaton:
        return SubwordAutomaton(self.n_letters, self.relations)

    @cached_property
    def relation_set(self) -> frozenset[Word]:
        return frozenset(self.relations)

    def word(self, text: str | Sequence[str]) -> Word:
        """Parse a word written with generator names (see ``from_names``)."""
        index = {n: i for i, n in enumerate(self.names)}
        if isinstance(text, str):
            text = list(text.replace(" ", "")) if all(len(n) == 1 for n in self.names) else text.split()
        try:
            return tuple(index[a] for a in text)
        except KeyError as exc:
            raise PresentationError(f"unknown generator {exc.args[0]!r}") from None

    def format_word(self, w: Word, sep: str | None = None) -> str:
        if not w:
            return "1"
        if sep is None:
            sep = "" if all(len(n) == 1 for n in self.names) else " "
        return sep.join(self.names[a] for a in w)

    def is_zero(self, w: Iterable[int]) -> bool:
        return self.automaton.contains_pattern(w)


def validate(names: Sequence[str], relations: Sequence[Word]) -> None:
    seen: set[str] = set()
    for n in names:
        if not n or any(ch.isspace() for ch in n) or n.startswith("#"):
            raise PresentationError(f"invalid generator name {n!r}")
        if n in seen:
            raise PresentationError(f"duplicate generator {n!r}")
        seen.add(n)
    k = len(names)
    rels: set[Word] = set()
    fmt = lambda w: " ".join(names[a] for a in w)  # noqa: E731
    for r in relations:
        if any(not (0 <= a < k) for a in r):
            raise PresentationError(f"relation {r!r} uses an undeclared generator")
        if len(r) < 2:
            raise PresentationError(f"relation {fmt(r)!r} has degree {len(r)} < 2")
        if r in rels:
            raise PresentationError(f"duplicate relation {fmt(r)!r}")
        rels.add(r)
    for r in rels:
        for s in rels:
            if r != s and len(r) < len(s) and is_subword(r, s):
                raise PresentationError(
                    f"relations are not an antichain: {fmt(r)!r} is a subword of {fmt(s)!r}"
                )


def is_zero_in_A(w: Iterable[int], p: MonomialPresentation) -> bool:
    """True iff ``w`` lies in the monomial ideal, i.e. contains a relation."""
    return p.is_zero(w)


def normal_words(p: MonomialPresentation, degree: int, limit: int = DEFAULT_WORD_LIMIT) -> list[Word]:
    """All degree-``degree`` words avoiding every relation, in lexicographic order."""
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    goto, terminal = p.automaton.goto, p.automaton.terminal
    out: list[Word] = []

    def extend(prefix: list[int], state: int):
        if len(prefix) == degree:
            if len(out) >= limit:
                raise MemoryError(f"more than {limit} normal words in degree {degree}")
            out.append(tuple(prefix))
            return
        for a in range(p.n_letters):
            t = goto[state][a]
            if not terminal[t]:
                prefix.append(a)
                extend(prefix, t)
                prefix.pop()

    extend([], 0)
    return out


def all_words(n_letters: int, degree: int) -> Iterable[Word]:
    return product(range(n_letters), repeat=degree)


def hilbert_coefficients(p: MonomialPresentation, max_degree: int) -> list[int]:
    """dim A_k for k = 0..max_degree, exact."""
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    return p.automaton.count_avoiding(max_degree)


def is_finite_dimensional(p: MonomialPresentation) -> bool:
    return not p.automaton.has_infinite_language()


def parse_presentation(text: str, source: str | None = None) -> MonomialPresentation:
    names: tuple[str, ...] | None = None
    raw_relations: list[tuple[int, list[str]]] = []
    field_hint = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        key = key.strip().lower()
        if not sep:
            raise PresentationError(f"expected 'directive: value', got {line!r}", lineno, source)
        tokens = value.split()
        if key == "generators":
            if names is not None:
                raise PresentationError("generators declared twice", lineno, source)
            if len(set(tokens)) != len(tokens):
                dup = next(t for t in tokens if tokens.count(t) > 1)
                raise PresentationError(f"duplicate generator {dup!r}", lineno, source)
            names = tuple(tokens)
        elif key == "relation":
            raw_relations.append((lineno, tokens))
        elif key == "field":
            if len(tokens) != 1:
                raise PresentationError("field directive takes one value", lineno, source)
            field_hint = 0 if tokens[0].upper() in ("Q", "QQ", "0") else _parse_int(tokens[0], lineno, source)
        else:
            raise PresentationError(f"unknown directive {key!r}", lineno, source)
    if names is None:
        raise PresentationError("missing 'generators:' directive", None, source)
    index = {n: i for i, n in enumerate(names)}
    relations = []
    for lineno, tokens in raw_relations:
        for t in tokens:
            if t not in index:
                raise PresentationError(f"unknown generator {t!r}", lineno, source)
        relations.append(tuple(index[t] for t in tokens))
        # validate the prefix so the error points at the first offending line
        try:
            validate(names, relations)
        except PresentationError as exc:
            raise PresentationError(str(exc), lineno, source) from None
    try:
        validate(names, relations)
    except PresentationError as exc:
        raise PresentationError(str(exc), None, source) from None
    return MonomialPresentation(names, tuple(relations), field_hint)


def _parse_int(token: str, lineno: int, source: str | None) -> int:
    try:
        return int(token)
    except ValueError:
        raise PresentationError(f"invalid field {token!r}", lineno, source) from None


def serialize_presentation(p: MonomialPresentation) -> str:
    lines = ["generators: " + " ".join(p.names)]
    lines += ["relation: " + " ".join(p.names[a] for a in r) for r in p.relations]
    if p.field_hint is not None:
        lines.append(f"field: {p.field_hint}")
    return "\n".join(lines) + "\n"
