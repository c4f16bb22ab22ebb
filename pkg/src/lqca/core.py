"""Automaton model: states, neighborhoods, local rules, configurations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ContractError, DimensionError, LqcaError
from .exact import ONE, ZERO, ExactComplex, ScaledComplex

Word = tuple[int, ...]


@dataclass(frozen=True)
class Alphabet:
    names: tuple[str, ...]
    quiescent: int = 0

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise LqcaError("alphabet must be non-empty")
        if any(not n or any(ch.isspace() for ch in n) for n in names):
            raise LqcaError("state names must be non-empty and contain no whitespace")
        if len(set(names)) != len(names):
            raise LqcaError("state names must be distinct")
        if not 0 <= self.quiescent < len(names):
            raise LqcaError("quiescent state out of range")

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise LqcaError(f"unknown state {name!r}") from None

    def name(self, state: int) -> str:
        return self.names[state]

    def word_name(self, word: Sequence[int]) -> str:
        return " ".join(self.names[x] for x in word)


@dataclass(frozen=True)
class Neighborhood:
    offsets: tuple[int, ...]

    def __post_init__(self):
        offsets = tuple(int(a) for a in self.offsets)
        object.__setattr__(self, "offsets", offsets)
        if not offsets:
            raise LqcaError("neighborhood must contain at least one offset")
        if any(b <= a for a, b in zip(offsets, offsets[1:])):
            raise LqcaError("neighborhood offsets must be strictly increasing")

    @property
    def size(self) -> int:
        return len(self.offsets)

    @property
    def span(self) -> int:
        return self.offsets[-1] - self.offsets[0] + 1

    @property
    def expansion_factor(self) -> Fraction:
        return Fraction(self.span + 1, self.size + 1)

    def is_simple(self) -> bool:
        return self.span == self.size

    def filled(self) -> Neighborhood:
        return Neighborhood(tuple(range(self.offsets[0], self.offsets[-1] + 1)))


class LocalSuperposition:
    """A vector of exact amplitudes indexed by state id."""

    __slots__ = ("amps",)

    def __init__(self, amps: Iterable):
        self.amps = tuple(a if isinstance(a, ExactComplex) else ExactComplex(a) for a in amps)

    @classmethod
    def basis(cls, size: int, state: int) -> LocalSuperposition:
        return cls(ONE if i == state else ZERO for i in range(size))

    @classmethod
    def from_mapping(cls, size: int, amps: Mapping[int, ExactComplex]) -> LocalSuperposition:
        return cls(amps.get(i, ZERO) for i in range(size))

    def __len__(self) -> int:
        return len(self.amps)

    def __getitem__(self, state: int) -> ExactComplex:
        return self.amps[state]

    def __iter__(self) -> Iterator[ExactComplex]:
        return iter(self.amps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LocalSuperposition):
            return NotImplemented
        return self.amps == other.amps

    def __hash__(self) -> int:
        return hash(self.amps)

    def __repr__(self) -> str:
        terms = [f"{a}|{i}>" for i, a in enumerate(self.amps) if a]
        return "LocalSuperposition(" + " + ".join(terms) + ")"

    def inner(self, other: LocalSuperposition) -> ExactComplex:
        return inner_product(self, other)

    def sq_norm(self) -> Fraction:
        return squared_norm(self)

    def scaled(self, factor) -> LocalSuperposition:
        return LocalSuperposition(a * factor for a in self.amps)


def inner_product(u: LocalSuperposition, v: LocalSuperposition) -> ExactComplex:
    """``sum_e u(e) * conj(v(e))``."""
    if len(u) != len(v):
        raise DimensionError(f"length mismatch: {len(u)} vs {len(v)}")
    re = Fraction(0)
    im = Fraction(0)
    for a, b in zip(u.amps, v.amps):
        if not a or not b:
            continue
        # a * conj(b)
        re += a.re * b.re + a.im * b.im
        im += a.im * b.re - a.re * b.im
    return ExactComplex(re, im)


def squared_norm(u: LocalSuperposition) -> Fraction:
    return sum((a.abs2() for a in u.amps), Fraction(0))


@dataclass(frozen=True, eq=False)
class Lqca:
    """A linear quantum cellular automaton with a total rule table.

    ``table`` is indexed by word number: the word ``(x_1, ..., x_r)`` sits
    at ``x_1 * k**(r-1) + ... + x_r`` for an alphabet of size ``k``.
    """

    alphabet: Alphabet
    neighborhood: Neighborhood
    table: tuple[LocalSuperposition, ...]
    _sq_norms: tuple[Fraction, ...] = field(init=False, repr=False)

    def __post_init__(self):
        k, r = len(self.alphabet), self.neighborhood.size
        table = tuple(self.table)
        object.__setattr__(self, "table", table)
        if len(table) != k**r:
            raise LqcaError(f"rule table needs {k ** r} entries, got {len(table)}")
        norms = []
        for idx, sup in enumerate(table):
            if len(sup) != k:
                raise DimensionError(f"rule {self.word_name(idx)}: expected {k} amplitudes")
            s = squared_norm(sup)
            if s <= 0:
                raise LqcaError(f"rule {self.word_name(idx)} has zero norm")
            norms.append(s)
        q = self.alphabet.quiescent
        if table[self.quiescent_word_index] != LocalSuperposition.basis(k, q):
            raise LqcaError("quiescent rule must map the all-quiescent word to the quiescent state")
        object.__setattr__(self, "_sq_norms", tuple(norms))

    @classmethod
    def from_rules(cls, alphabet: Alphabet, neighborhood: Neighborhood,
                   rules: Mapping[Word, LocalSuperposition | Mapping[int, ExactComplex]]) -> Lqca:
        k, r = len(alphabet), neighborhood.size
        table = []
        for word in itertools.product(range(k), repeat=r):
            if word not in rules:
                raise LqcaError(f"missing rule for word {alphabet.word_name(word)!r}")
            sup = rules[word]
            if not isinstance(sup, LocalSuperposition):
                sup = LocalSuperposition.from_mapping(k, sup)
            table.append(sup)
        return cls(alphabet, neighborhood, tuple(table))

    @classmethod
    def from_function(cls, alphabet: Alphabet, neighborhood: Neighborhood, fn) -> Lqca:
        k, r = len(alphabet), neighborhood.size
        return cls(alphabet, neighborhood,
                   tuple(fn(w) for w in itertools.product(range(k), repeat=r)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lqca):
            return NotImplemented
        return (self.alphabet == other.alphabet and self.neighborhood == other.neighborhood
                and self.table == other.table)

    def __hash__(self) -> int:
        return hash((self.alphabet, self.neighborhood, self.table))

    @property
    def k(self) -> int:
        return len(self.alphabet)

    @property
    def r(self) -> int:
        return self.neighborhood.size

    @property
    def quiescent(self) -> int:
        return self.alphabet.quiescent

    @property
    def size(self) -> int:
        """Table size ``|Σ|^(r+1)``."""
        return self.k ** (self.r + 1)

    @property
    def quiescent_word_index(self) -> int:
        return self.word_index((self.alphabet.quiescent,) * self.neighborhood.size)

    def is_simple(self) -> bool:
        return self.neighborhood.is_simple()

    def is_trivial(self) -> bool:
        return self.r == 1

    def word_index(self, word: Sequence[int]) -> int:
        idx = 0
        for x in word:
            idx = idx * self.k + x
        return idx

    def word(self, index: int) -> Word:
        out = []
        for _ in range(self.r):
            index, x = divmod(index, self.k)
            out.append(x)
        return tuple(reversed(out))

    def word_name(self, word: Sequence[int] | int) -> str:
        if isinstance(word, int):
            word = self.word(word)
        return self.alphabet.word_name(word)

    def words(self) -> Iterator[Word]:
        return itertools.product(range(self.k), repeat=self.r)

    def local(self, word: Sequence[int]) -> LocalSuperposition:
        return self.table[self.word_index(word)]

    def local_sq_norm(self, word: Sequence[int]) -> Fraction:
        return self._sq_norms[self.word_index(word)]

    def sq_norm_at(self, index: int) -> Fraction:
        return self._sq_norms[index]

    def inner_at(self, i: int, j: int) -> ExactComplex:
        return inner_product(self.table[i], self.table[j])


class ScaledSuperposition:
    """``vector / sqrt(sq_scale)``; the renormalized form of a rule."""

    __slots__ = ("vector", "sq_scale")

    def __init__(self, vector: LocalSuperposition, sq_scale: Fraction):
        self.vector = vector
        self.sq_scale = Fraction(sq_scale)

    def __len__(self) -> int:
        return len(self.vector)

    def __getitem__(self, state: int) -> ScaledComplex:
        return ScaledComplex(self.vector[state], self.sq_scale)

    def inner(self, other) -> ScaledComplex:
        if isinstance(other, ScaledSuperposition):
            return ScaledComplex(inner_product(self.vector, other.vector),
                                 self.sq_scale * other.sq_scale)
        return ScaledComplex(inner_product(self.vector, other), self.sq_scale)

    def sq_norm(self) -> Fraction:
        return squared_norm(self.vector) / self.sq_scale

    def exact(self) -> LocalSuperposition | None:
        """The renormalized vector when the scale has a rational root."""
        try:
            return LocalSuperposition(self[i].exact() for i in range(len(self)))
        except ValueError:
            return None


@dataclass(frozen=True, eq=False)
class NormalizedLqca:
    """An automaton whose every rule is rescaled to unit norm.

    The rules are kept as ``(base rule, squared norm)`` so the scale never
    has to be materialized as an irrational number.
    """

    base: Lqca

    @property
    def alphabet(self) -> Alphabet:
        return self.base.alphabet

    @property
    def neighborhood(self) -> Neighborhood:
        return self.base.neighborhood

    @property
    def k(self) -> int:
        return self.base.k

    @property
    def r(self) -> int:
        return self.base.r

    @property
    def quiescent(self) -> int:
        return self.base.quiescent

    @property
    def size(self) -> int:
        return self.base.size

    def is_simple(self) -> bool:
        return self.base.is_simple()

    def word_index(self, word: Sequence[int]) -> int:
        return self.base.word_index(word)

    def word(self, index: int) -> Word:
        return self.base.word(index)

    def word_name(self, word) -> str:
        return self.base.word_name(word)

    def words(self) -> Iterator[Word]:
        return self.base.words()

    def sq_scale(self, word: Sequence[int]) -> Fraction:
        return self.base.local_sq_norm(word)

    def local(self, word: Sequence[int]) -> ScaledSuperposition:
        return ScaledSuperposition(self.base.local(word), self.base.local_sq_norm(word))

    def local_sq_norm(self, word: Sequence[int]) -> Fraction:
        return Fraction(1)

    def sq_norm_at(self, index: int) -> Fraction:
        return Fraction(1)

    def inner_at(self, i: int, j: int) -> ScaledComplex:
        return ScaledComplex(self.base.inner_at(i, j),
                             self.base.sq_norm_at(i) * self.base.sq_norm_at(j))

    def exact(self) -> Lqca | None:
        """A plain :class:`Lqca` when every scale is a rational square."""
        rules = []
        for w in self.words():
            vec = self.local(w).exact()
            if vec is None:
                return None
            rules.append(vec)
        return Lqca(self.alphabet, self.neighborhood, tuple(rules))


@dataclass(frozen=True)
class Interval:
    """The integers ``lo..hi``; empty whenever ``lo > hi``."""

    lo: int
    hi: int

    @classmethod
    def empty(cls) -> Interval:
        return cls(0, -1)

    def is_empty(self) -> bool:
        return self.lo > self.hi

    def __len__(self) -> int:
        return max(0, self.hi - self.lo + 1)

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.lo, self.hi + 1))

    def __contains__(self, i) -> bool:
        return self.lo <= i <= self.hi

    def __eq__(self, other) -> bool:
        if not isinstance(other, Interval):
            return NotImplemented
        if self.is_empty() or other.is_empty():
            return self.is_empty() and other.is_empty()
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self) -> int:
        return hash(None) if self.is_empty() else hash((self.lo, self.hi))

    def issubset(self, other: Interval) -> bool:
        if self.is_empty():
            return True
        return not other.is_empty() and other.lo <= self.lo and self.hi <= other.hi

    def hull(self, other: Interval) -> Interval:
        if self.is_empty():
            return other
        if other.is_empty():
            return self
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def __repr__(self) -> str:
        return "Interval(empty)" if self.is_empty() else f"Interval[{self.lo},{self.hi}]"


class Configuration:
    """A finite configuration; only non-quiescent cells are stored."""

    __slots__ = ("cells", "quiescent", "_hash")

    def __init__(self, cells: Mapping[int, int] | Iterable[tuple[int, int]] = (), quiescent: int = 0):
        items = cells.items() if isinstance(cells, Mapping) else cells
        self.cells = tuple(sorted((int(i), int(s)) for i, s in items if s != quiescent))
        if len({i for i, _ in self.cells}) != len(self.cells):
            raise ContractError("duplicate cell index in configuration")
        self.quiescent = quiescent
        self._hash = hash((self.cells, quiescent))

    @classmethod
    def from_word(cls, word: Sequence[int], start: int = 0, quiescent: int = 0) -> Configuration:
        return cls(((start + j, x) for j, x in enumerate(word)), quiescent)

    def __getitem__(self, i: int) -> int:
        for j, s in self.cells:
            if j == i:
                return s
        return self.quiescent

    def as_dict(self) -> dict[int, int]:
        return dict(self.cells)

    def support(self) -> list[int]:
        return [i for i, _ in self.cells]

    def is_empty(self) -> bool:
        return not self.cells

    def restrict(self, interval: Interval) -> Word:
        d = dict(self.cells)
        return tuple(d.get(i, self.quiescent) for i in interval)

    def shifted(self, by: int) -> Configuration:
        return Configuration(((i + by, s) for i, s in self.cells), self.quiescent)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.cells == other.cells and self.quiescent == other.quiescent

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Configuration({dict(self.cells)})"


def idom(c: Configuration) -> Interval:
    """Smallest interval containing the support of ``c``."""
    if not c.cells:
        return Interval.empty()
    return Interval(c.cells[0][0], c.cells[-1][0])


def ext(interval: Interval, nb: Neighborhood) -> Interval:
    """Cells whose neighborhood touches ``interval``."""
    if interval.is_empty():
        return Interval.empty()
    return Interval(interval.lo - nb.offsets[-1], interval.hi - nb.offsets[0])


def neighborhood_word(c: Configuration, i: int, nb: Neighborhood) -> Word:
    d = dict(c.cells)
    return tuple(d.get(i + a, c.quiescent) for a in nb.offsets)


def configurations_in(interval: Interval, k: int, quiescent: int) -> Iterator[Configuration]:
    """Every configuration with support inside ``interval``, lexicographically."""
    cells = list(interval)
    for word in itertools.product(range(k), repeat=len(cells)):
        yield Configuration(zip(cells, word), quiescent)
