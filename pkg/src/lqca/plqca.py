"""Partitioned automata: a component shuffle followed by a per-cell matrix."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .core import Alphabet, LocalSuperposition, Lqca, Neighborhood
from .decider import decide
from .errors import ConsistencyError, LqcaError
from .exact import ONE, ZERO, ExactComplex


@dataclass(frozen=True)
class FactorAlphabets:
    factors: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        factors = tuple(tuple(f) for f in self.factors)
        object.__setattr__(self, "factors", factors)
        if not factors:
            raise LqcaError("at least one factor alphabet is required")
        for f in factors:
            if not f or len(set(f)) != len(f):
                raise LqcaError(f"factor alphabet {f} must be non-empty with distinct names")
            if any("." in name for name in f):
                raise LqcaError("factor state names may not contain '.'")

    @property
    def r(self) -> int:
        return len(self.factors)

    def tuples(self) -> list[tuple[int, ...]]:
        """Composed states as component-index tuples, first factor most significant."""
        return list(itertools.product(*(range(len(f)) for f in self.factors)))

    def names(self) -> tuple[str, ...]:
        return tuple(".".join(f[i] for f, i in zip(self.factors, t)) for t in self.tuples())

    def alphabet(self) -> Alphabet:
        # quiescent is the tuple of first factor states, i.e. composed state 0
        return Alphabet(self.names(), 0)


class QMatrix:
    """Square exact matrix with ``entries[y][x] = [δ_Q(x)](y)``."""

    def __init__(self, entries: Sequence[Sequence]):
        rows = [tuple(e if isinstance(e, ExactComplex) else ExactComplex(e) for e in row)
                for row in entries]
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise LqcaError("Q must be square")
        self.entries = tuple(rows)

    @classmethod
    def identity(cls, n: int) -> QMatrix:
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, yx: tuple[int, int]) -> ExactComplex:
        y, x = yx
        return self.entries[y][x]

    def __eq__(self, other) -> bool:
        return isinstance(other, QMatrix) and self.entries == other.entries

    def __matmul__(self, other: QMatrix) -> QMatrix:
        n = len(self)
        return QMatrix([[sum((self.entries[i][m] * other.entries[m][j] for m in range(n)), ZERO)
                         for j in range(n)] for i in range(n)])

    def column(self, x: int) -> LocalSuperposition:
        return LocalSuperposition(row[x] for row in self.entries)

    def replace(self, y: int, x: int, value) -> QMatrix:
        rows = [list(row) for row in self.entries]
        rows[y][x] = value if isinstance(value, ExactComplex) else ExactComplex(value)
        return QMatrix(rows)


def is_unitary(q: QMatrix) -> bool:
    """Exact test that the columns of ``q`` are orthonormal."""
    n = len(q)
    cols = [q.column(x) for x in range(n)]
    for i in range(n):
        if cols[i].sq_norm() != 1:
            return False
        for j in range(i + 1, n):
            if cols[i].inner(cols[j]):
                return False
    return True


@dataclass(frozen=True, eq=False)
class Plqca:
    factors: FactorAlphabets
    neighborhood: Neighborhood
    qmatrix: QMatrix

    def __post_init__(self):
        if self.neighborhood.size != self.factors.r:
            raise LqcaError(
                f"neighborhood has {self.neighborhood.size} offsets for {self.factors.r} factors")
        n = len(self.factors.tuples())
        if len(self.qmatrix) != n:
            raise LqcaError(f"Q must be {n}x{n} for these factors")
        for x in range(n):
            if not self.qmatrix.column(x).sq_norm():
                raise LqcaError(f"Q column {self.factors.names()[x]} is zero")
        if self.qmatrix.column(0) != LocalSuperposition.basis(n, 0):
            raise LqcaError("Q must map the quiescent state to itself with amplitude 1")

    @property
    def alphabet(self) -> Alphabet:
        return self.factors.alphabet()


def delta_p(factors: FactorAlphabets, word: Sequence[int]) -> int:
    """Classical part: component ``j`` of the result comes from neighbor ``j``."""
    tuples = factors.tuples()
    picked = tuple(tuples[w][j] for j, w in enumerate(word))
    return tuples.index(picked)


def compose(p: Plqca) -> Lqca:
    """The partitioned automaton as an ordinary rule table."""
    tuples = p.factors.tuples()
    lookup = {t: i for i, t in enumerate(tuples)}
    cols = [p.qmatrix.column(x) for x in range(len(tuples))]

    def rule(word):
        return cols[lookup[tuple(tuples[w][j] for j, w in enumerate(word))]]

    return Lqca.from_function(p.alphabet, p.neighborhood, rule)


@dataclass(frozen=True)
class EquivalenceReport:
    unitary: bool
    well_formed: bool

    @property
    def agree(self) -> bool:
        return self.unitary == self.well_formed


def check_theorem_equivalence(p: Plqca) -> EquivalenceReport:
    """Compare unitarity of Q with well-formedness of the composed automaton.

    Raises :class:`ConsistencyError` when they differ.
    """
    a = compose(p)
    report = EquivalenceReport(is_unitary(p.qmatrix), decide(a).well_formed)
    if not report.agree:
        raise ConsistencyError(
            f"Q unitary={report.unitary} but composed automaton well_formed={report.well_formed}; "
            f"factors={p.factors.factors} neighborhood={p.neighborhood.offsets} "
            f"Q={[[str(e) for e in row] for row in p.qmatrix.entries]}")
    return report
