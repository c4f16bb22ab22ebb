"""Deciding well-formedness, with witnesses checked against the oracle."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import oracle
from .core import Configuration, LocalSuperposition, Lqca, Neighborhood, NormalizedLqca
from .errors import ConsistencyError, ContractError, ResourceError
from .exact import ExactComplex
from .graphs import (
    CycleWitness,
    build_debruijn,
    build_pair_graph,
    closed_walk_through,
    detect_large_cycle,
    detect_small_cycle,
    scc_of_source,
)

DEFAULT_SPAN_LIMIT = 12

Word = tuple[int, ...]


@dataclass(frozen=True)
class NormFailure:
    cycle: CycleWitness
    config: Configuration
    sq_norm: Fraction


@dataclass(frozen=True)
class OrthogonalityFailure:
    walk: tuple[tuple[Word, Word], ...]
    config: Configuration
    config2: Configuration
    inner: ExactComplex


@dataclass(frozen=True)
class SimplificationReport:
    span: int
    r: int
    expansion_factor: Fraction
    size: int
    new_size: int


@dataclass(frozen=True)
class Verdict:
    norm_failure: NormFailure | None = None
    orthogonality_failure: OrthogonalityFailure | None = None
    norm_checked: bool = True
    orthogonality_checked: bool = True
    simplification: SimplificationReport | None = None

    @property
    def well_formed(self) -> bool:
        return self.norm_failure is None and self.orthogonality_failure is None


def cycle_to_config(w: CycleWitness, quiescent: int) -> Configuration:
    """Configuration whose column norm is the weight of the closed walk ``w``.

    The walk spells the configuration one appended letter per edge; the
    first non-quiescent cell is put at index 0.
    """
    letters = [label[-1] for label in w.labels]
    return _place([letters], quiescent)[0]


def walk_to_configs(walk: Sequence[tuple[Word, Word]], quiescent: int) -> tuple[Configuration, Configuration]:
    """The two configurations spelled by the components of a pair-graph walk, aligned."""
    first = [w1[-1] for w1, _ in walk]
    second = [w2[-1] for _, w2 in walk]
    c, c2 = _place([first, second], quiescent)
    return c, c2


def _place(strings: list[list[int]], quiescent: int) -> list[Configuration]:
    start = min((j for s in strings for j, x in enumerate(s) if x != quiescent), default=0)
    return [Configuration(((j - start, x) for j, x in enumerate(s)), quiescent) for s in strings]


def _verified_norm_failure(a, cycle: CycleWitness, config: Configuration) -> NormFailure:
    sq = oracle.column_sq_norm(a, config)
    if sq != cycle.sq_product or sq == 1:
        raise ConsistencyError(
            f"norm witness {config} has column squared norm {sq}, cycle says {cycle.sq_product}")
    return NormFailure(cycle, config, sq)


def _verified_ortho_failure(a, walk, c: Configuration, c2: Configuration) -> OrthogonalityFailure:
    ip = oracle.column_inner_product(a, c, c2)
    if c == c2 or not ip:
        raise ConsistencyError(f"orthogonality witness ({c}, {c2}) does not verify: {ip}")
    return OrthogonalityFailure(tuple(walk), c, c2, ip)


def check_unit_norms(a) -> NormFailure | None:
    """None when every column of the evolution operator has unit norm."""
    g = build_debruijn(a)
    cycle = detect_small_cycle(g) or detect_large_cycle(g)
    if cycle is None:
        return None
    return _verified_norm_failure(a, cycle, cycle_to_config(cycle, a.quiescent))


def check_orthogonality(a) -> OrthogonalityFailure | None:
    """None when the columns of the evolution operator are pairwise orthogonal."""
    if a.r < 2:
        raise ContractError("check_orthogonality needs r >= 2; use check_trivial")
    h = build_pair_graph(a)
    scc = scc_of_source(h)
    off_diagonal = sorted(v for v in scc if v[0] != v[1])
    if not off_diagonal:
        return None
    walk = [h.label_words(e) for e in closed_walk_through(h, off_diagonal[0], scc)]
    c, c2 = walk_to_configs(walk, a.quiescent)
    return _verified_ortho_failure(a, walk, c, c2)


def check_trivial(a, full_report: bool = False) -> Verdict:
    """Single-cell neighborhoods: rules must be orthonormal."""
    if a.r != 1:
        raise ContractError("check_trivial needs a one-cell neighborhood")
    q = a.quiescent
    single = [Configuration({0: x}, q) for x in range(a.k)]

    norm_failure = None
    for x in range(a.k):
        sq = a.sq_norm_at(x)
        if sq != 1:
            norm_failure = _verified_norm_failure(a, CycleWitness(((x,),), sq), single[x])
            break
    if norm_failure is not None and not full_report:
        return Verdict(norm_failure, None, True, False)

    ortho_failure = None
    for x in range(a.k):
        for y in range(x + 1, a.k):
            if a.inner_at(x, y):
                ortho_failure = _verified_ortho_failure(a, (((x,), (y,)),), single[x], single[y])
                break
        if ortho_failure is not None:
            break
    return Verdict(norm_failure, ortho_failure)


def decide(a, full_report: bool = False, span_limit: int = DEFAULT_SPAN_LIMIT) -> Verdict:
    """Decide well-formedness.

    Trivial automata are handled directly, non-simple ones are simplified
    first. Norms are checked before orthogonality; with ``full_report``
    the second check runs even after the first one failed.
    """
    if a.r == 1:
        return check_trivial(a, full_report)
    if not a.is_simple():
        simple, report = simplify(a, span_limit)
        v = decide(simple, full_report, span_limit)
        return Verdict(v.norm_failure, v.orthogonality_failure, v.norm_checked,
                       v.orthogonality_checked, report)
    norm_failure = check_unit_norms(a)
    if norm_failure is not None and not full_report:
        return Verdict(norm_failure, None, True, False)
    return Verdict(norm_failure, check_orthogonality(a))


def normalize(a) -> NormalizedLqca:
    """Rescale every rule to unit norm.

    Scales are kept squared; see :class:`NormalizedLqca`. Use ``.exact()``
    on the result to get a plain automaton when all scales are rational.
    """
    if isinstance(a, NormalizedLqca):
        return a
    return NormalizedLqca(a)


def pad_neighborhood(a: Lqca, offsets: Sequence[int]) -> Lqca:
    """Same automaton over a larger neighborhood; the new neighbors are ignored."""
    nb = Neighborhood(tuple(offsets))
    old = a.neighborhood.offsets
    try:
        positions = [nb.offsets.index(o) for o in old]
    except ValueError:
        raise ContractError(f"{nb.offsets} does not contain {old}") from None
    return Lqca.from_function(a.alphabet, nb, lambda w: a.local(tuple(w[p] for p in positions)))


def simplify(a, span_limit: int = DEFAULT_SPAN_LIMIT):
    """Fill the neighborhood to an interval. Returns ``(automaton, report)``."""
    nb = a.neighborhood
    report = SimplificationReport(nb.span, nb.size, nb.expansion_factor,
                                  a.size, a.k ** (nb.span + 1))
    if nb.is_simple():
        return a, report
    if nb.span > span_limit:
        raise ResourceError(
            f"span {nb.span} exceeds limit {span_limit}; simplified size would be {report.new_size}")
    if isinstance(a, NormalizedLqca):
        return NormalizedLqca(pad_neighborhood(a.base, nb.filled().offsets)), report
    return pad_neighborhood(a, nb.filled().offsets), report


def trivial_inverse(a: Lqca) -> Lqca:
    """Conjugate-transpose rule of a well-formed trivial automaton."""
    if a.r != 1:
        raise ContractError("trivial_inverse needs a one-cell neighborhood")
    if not check_trivial(a).well_formed:
        raise ContractError("automaton is not well-formed")
    k = a.k
    rules = [LocalSuperposition(a.table[x][y].conjugate() for x in range(k)) for y in range(k)]
    return Lqca(a.alphabet, Neighborhood((-a.neighborhood.offsets[0],)), tuple(rules))


__all__ = [
    "NormFailure", "OrthogonalityFailure", "SimplificationReport", "Verdict",
    "check_unit_norms", "check_orthogonality", "check_trivial", "decide",
    "normalize", "simplify", "pad_neighborhood", "trivial_inverse",
    "cycle_to_config", "walk_to_configs",
]
