"""Brute-force evaluation of the evolution operator on small windows.

Everything here is exponential on purpose. These routines exist to check
the graph-based decider, so they avoid sharing any code path with it.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from .core import (
    Configuration,
    Interval,
    configurations_in,
    ext,
    idom,
    neighborhood_word,
)
from .errors import ContractError, ResourceError
from .exact import ONE, ZERO, ExactComplex

DEFAULT_BOUND = 10**6


def resource_bound(bound: int | None = None) -> int:
    """Enumeration bound: explicit argument, else ``QCA_RESOURCE_BOUND``, else 10**6."""
    if bound is not None:
        return bound
    env = os.environ.get("QCA_RESOURCE_BOUND")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ResourceError(f"QCA_RESOURCE_BOUND is not an integer: {env!r}") from None
    return DEFAULT_BOUND


def _check_count(count: int, bound: int | None, what: str) -> None:
    limit = resource_bound(bound)
    if count > limit:
        raise ResourceError(f"{what} needs {count} terms, bound is {limit}")


def _prod(factors):
    result = ONE
    for f in factors:
        if not f:
            return ZERO
        result = f * result
    return result


def transition_amplitude(a, d: Configuration, c: Configuration):
    """Amplitude with which ``c`` moves to ``d`` in one step."""
    region = ext(idom(c), a.neighborhood)
    if not idom(d).issubset(region):
        return ZERO
    return _prod(a.local(neighborhood_word(c, i, a.neighborhood))[d[i]] for i in region)


def column_inner_product(a, c: Configuration, c2: Configuration):
    """Inner product of the columns for ``c`` and ``c2`` as a product of local ones."""
    nb = a.neighborhood
    region = ext(idom(c), nb).hull(ext(idom(c2), nb))
    return _prod(a.local(neighborhood_word(c, i, nb)).inner(a.local(neighborhood_word(c2, i, nb)))
                 for i in region)


def column_inner_product_direct(a, c: Configuration, c2: Configuration, interval: Interval,
                                bound: int | None = None) -> ExactComplex:
    """Same inner product, summed term by term over every word on ``interval``."""
    nb = a.neighborhood
    need = ext(idom(c), nb).hull(ext(idom(c2), nb))
    if not need.issubset(interval):
        raise ContractError(f"interval {interval} does not contain {need}")
    _check_count(a.k ** len(interval), bound, "direct inner product")
    rows = [(a.local(neighborhood_word(c, i, nb)), a.local(neighborhood_word(c2, i, nb)))
            for i in interval]
    # expand the two tensors in lockstep, one cell at a time
    terms = [(ONE, ONE)]
    for u, v in rows:
        terms = [(p * u[x], p2 * v[x].conjugate())
                 for p, p2 in terms for x in range(a.k)]
    total = ZERO
    for p, p2 in terms:
        total = total + p * p2
    return total


def column_sq_norm(a, c: Configuration) -> Fraction:
    result = Fraction(1)
    for i in ext(idom(c), a.neighborhood):
        result *= a.local(neighborhood_word(c, i, a.neighborhood)).sq_norm()
    return result


@dataclass
class WindowSuperposition:
    window: Interval
    amps: dict[Configuration, ExactComplex] = field(default_factory=dict)

    def __post_init__(self):
        amps = {}
        for c, v in self.amps.items():
            if not idom(c).issubset(self.window):
                raise ContractError(f"{c} lies outside window {self.window}")
            if not isinstance(v, ExactComplex):
                v = ExactComplex(v)
            if v:
                amps[c] = v
        self.amps = amps

    @classmethod
    def basis(cls, window: Interval, c: Configuration) -> WindowSuperposition:
        return cls(window, {c: ONE})

    def sq_norm(self) -> Fraction:
        return sum((v.abs2() for v in self.amps.values()), Fraction(0))

    def __getitem__(self, c: Configuration) -> ExactComplex:
        return self.amps.get(c, ZERO)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WindowSuperposition):
            return NotImplemented
        return self.window == other.window and self.amps == other.amps


def step(a, s: WindowSuperposition, bound: int | None = None) -> WindowSuperposition:
    """One application of the evolution operator to a window superposition."""
    nb = a.neighborhood
    out_window = ext(s.window, nb)
    cells = list(out_window)
    _check_count(a.k ** len(cells) * max(1, len(s.amps)), bound, "step")
    q = a.quiescent
    out: dict[Configuration, ExactComplex] = {}
    for c, amp in s.amps.items():
        rows = [a.local(neighborhood_word(c, i, nb)) for i in cells]
        for word in itertools.product(range(a.k), repeat=len(cells)):
            value = amp
            for sup, x in zip(rows, word):
                value = value * sup[x]
                if not value:
                    break
            if value:
                d = Configuration(zip(cells, word), q)
                out[d] = out.get(d, ZERO) + value
    return WindowSuperposition(out_window, out)


@dataclass(frozen=True)
class WindowViolation:
    kind: str  # "norm" or "orthogonality"
    config: Configuration
    config2: Configuration | None
    value: Fraction | ExactComplex


def window_order(c: Configuration):
    """Enumeration order: fewer cells first, then cells nearer the origin."""
    return (len(c.cells), tuple((abs(i), -i, s) for i, s in c.cells))


def window_check(a, radius: int, bound: int | None = None) -> WindowViolation | None:
    """Check unit norms and pairwise orthogonality of every column on a window."""
    window = Interval(-radius, radius)
    count = a.k ** len(window)
    _check_count(count * count, bound, "window check")
    configs = sorted(configurations_in(window, a.k, a.quiescent), key=window_order)
    nb = a.neighborhood
    region = ext(window, nb)
    local_inner: dict[tuple[int, int], object] = {}
    words = {c: [a.word_index(neighborhood_word(c, i, nb)) for i in region] for c in configs}

    def pair_product(w1, w2):
        result = ONE
        for i, j in zip(w1, w2):
            key = (i, j)
            f = local_inner.get(key)
            if f is None:
                f = local_inner[key] = a.inner_at(i, j)
            if not f:
                return ZERO
            result = f * result
        return result

    seen = []
    for c in configs:
        norm = column_sq_norm(a, c)
        if norm != 1:
            return WindowViolation("norm", c, None, norm)
        for prev in seen:
            ip = pair_product(words[prev], words[c])
            if ip:
                return WindowViolation("orthogonality", prev, c, ip)
        seen.append(c)
    return None

