import itertools
import os
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings

from lqca.core import Alphabet, LocalSuperposition, Lqca, Neighborhood
from lqca.exact import ExactComplex
from lqca.io import parse_lqca

settings.register_profile("default", deadline=None, max_examples=60)
settings.register_profile("stress", deadline=None, max_examples=1000)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

AUTOMATA = Path(__file__).resolve().parents[1] / "automata"

POOL = [Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2),
        Fraction(2), Fraction(-2), Fraction(3, 5), Fraction(4, 5)]
NONZERO_POOL = [x for x in POOL if x]


def load(name: str) -> Lqca:
    return parse_lqca((AUTOMATA / name).read_text())


def build(names, offsets, rules, quiescent=0) -> Lqca:
    """``rules`` maps word strings like ``"q p"`` to ``{target: amplitude}``."""
    alphabet = Alphabet(tuple(names), quiescent)
    k = len(names)
    table = {}
    for word, targets in rules.items():
        w = tuple(alphabet.index(n) for n in word.split())
        table[w] = LocalSuperposition.from_mapping(
            k, {alphabet.index(t): ExactComplex(v) if not isinstance(v, ExactComplex) else v
                for t, v in targets.items()})
    return Lqca.from_rules(alphabet, Neighborhood(tuple(offsets)), table)


def random_lqca(rng: random.Random, k: int = 2, offsets=(0, 1), sparse: bool = False) -> Lqca:
    """Random automaton with amplitudes from ``POOL``; the quiescent rule is fixed."""
    names = tuple("qpabcdefgh"[:k])
    alphabet = Alphabet(names, 0)
    r = len(offsets)
    table = []
    for w in itertools.product(range(k), repeat=r):
        if w == (0,) * r:
            table.append(LocalSuperposition.basis(k, 0))
            continue
        while True:
            if sparse:
                amps = [Fraction(0)] * k
                amps[rng.randrange(k)] = rng.choice(NONZERO_POOL)
            else:
                amps = [rng.choice(POOL) for _ in range(k)]
            if any(amps):
                break
        table.append(LocalSuperposition(amps))
    return Lqca(alphabet, Neighborhood(tuple(offsets)), tuple(table))


def balanced_lqca(rng: random.Random) -> Lqca:
    """Pool amplitudes with rule norms phi(v)/phi(u), so every q-cycle has weight 1.

    Here ``u, v`` are the two one-letter vertices a rule ``(u, v)`` joins in the
    de Bruijn graph; orthogonality alone then decides the verdict.
    """
    phi = [Fraction(1), rng.choice([Fraction(1), Fraction(2), Fraction(1, 2)])]
    pairs = list(itertools.product(POOL, repeat=2))
    table = [LocalSuperposition.basis(2, 0)]
    for u, v in [(0, 1), (1, 0), (1, 1)]:
        target = (phi[v] / phi[u]) ** 2
        table.append(LocalSuperposition(list(rng.choice([p for p in pairs if p[0] ** 2 + p[1] ** 2 == target]))))
    return Lqca(Alphabet(("q", "p"), 0), Neighborhood((0, 1)), tuple(table))


def sweep_automata(count: int, seed: int) -> list[Lqca]:
    """|Σ| = 2, r = 2 automata cycling through dense, single-target and norm-balanced draws."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        mode = i % 4
        if mode < 2:
            out.append(random_lqca(rng, 2, (0, 1), sparse=bool(mode)))
        else:
            out.append(balanced_lqca(rng))
    return out


@pytest.fixture
def B():
    return load("B.lqca")


@pytest.fixture
def Bprime():
    return load("Bprime.lqca")


@pytest.fixture
def Bdouble():
    return build("qp", (0, 1), {"q q": {"q": 1}, "q p": {"q": 1}, "p q": {"p": 2}, "p p": {"p": 1}})


@pytest.fixture
def F():
    return load("F.lqca")


@pytest.fixture
def shift():
    return load("shift.lqca")


@pytest.fixture
def rotation():
    return load("rotation.lqca")


PYTHAGOREAN = [(Fraction(3, 5), Fraction(4, 5)), (Fraction(5, 13), Fraction(12, 13)),
               (Fraction(8, 17), Fraction(15, 17)), (Fraction(0), Fraction(1))]
FACTOR_SHAPES = [(2,), (3,), (4,), (2, 2), (2, 3), (3, 2)]


def random_unitary_q(rng: random.Random, n: int):
    """Products of rational Givens rotations and signed permutations fixing index 0."""
    from lqca.plqca import QMatrix

    q = QMatrix.identity(n)
    if n < 2:
        return q
    for _ in range(rng.randint(1, 3)):
        perm = list(range(1, n))
        rng.shuffle(perm)
        rows = [[0] * n for _ in range(n)]
        rows[0][0] = 1
        for x, y in zip(range(1, n), perm):
            rows[y][x] = rng.choice([1, -1, ExactComplex(0, 1)])
        q = QMatrix(rows) @ q
        if n > 2:
            i, j = rng.sample(range(1, n), 2)
            c, s = rng.choice(PYTHAGOREAN)
            rows = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
            rows[i][i], rows[i][j], rows[j][i], rows[j][j] = c, -s, s, c
            q = QMatrix(rows) @ q
    return q


def perturb_q(rng: random.Random, q):
    """A non-unitary variant: one entry nudged, or one column copied over another."""
    from lqca.plqca import is_unitary

    n = len(q)
    while True:
        x = rng.randrange(1, n)
        if rng.random() < 0.5 and n > 2:
            y = rng.choice([c for c in range(1, n) if c != x])
            out = q
            for row in range(n):
                out = out.replace(row, x, q[row, y])
        else:
            row = rng.randrange(n)
            out = q.replace(row, x, q[row, x] + rng.choice([Fraction(1, 10), Fraction(-1, 2), ExactComplex(0, 1)]))
        if out.column(x).sq_norm() and not is_unitary(out):
            return out


def random_plqca(rng: random.Random, unitary: bool = True):
    from lqca.plqca import FactorAlphabets, Plqca

    shape = rng.choice(FACTOR_SHAPES)
    factors = FactorAlphabets(tuple(tuple(str(i) for i in range(m)) for m in shape))
    n = len(factors.tuples())
    q = random_unitary_q(rng, n)
    if not unitary:
        q = perturb_q(rng, q)
    offsets = rng.choice([(0,), (1,), (-1,)] if len(shape) == 1 else [(0, 1), (-1, 0), (-1, 1), (0, 2)])
    return Plqca(factors, Neighborhood(offsets), q)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
