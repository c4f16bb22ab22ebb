"""Text formats: ``.lqca`` and ``.plqca`` documents and config specs.

An ``.lqca`` document, ``#`` starts a comment::

    states q p
    quiescent q
    neighborhood 0 1
    q q -> q:1
    q p -> q:1/2
    p q -> p:2
    p p -> p:1

Each rule line names a word of ``r`` states, then the targets with nonzero
amplitude as ``state:amplitude``. Unlisted targets have amplitude 0.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .core import Alphabet, Configuration, LocalSuperposition, Lqca, Neighborhood, NormalizedLqca, idom
from .errors import LqcaError, ParseError
from .exact import ZERO, ExactComplex, format_rational, parse_complex
from .plqca import FactorAlphabets, Plqca, QMatrix


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _header(lines, keyword: str):
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise ParseError(f"expected '{keyword}' line, got end of document") from None
    head, _, rest = line.partition(" ")
    if head != keyword:
        raise ParseError(f"expected '{keyword}' line, got {head!r}", lineno)
    return lineno, rest.split()


def _parse_offsets(lineno: int, fields: list[str]) -> Neighborhood:
    try:
        offsets = tuple(int(f.replace("−", "-")) for f in fields)
    except ValueError:
        raise ParseError(f"neighborhood offsets must be integers: {' '.join(fields)}", lineno) from None
    try:
        return Neighborhood(offsets)
    except LqcaError as exc:
        raise ParseError(str(exc), lineno) from None


def _state(alphabet: Alphabet, name: str, lineno: int) -> int:
    try:
        return alphabet.index(name)
    except LqcaError:
        raise ParseError(f"unknown state {name!r}", lineno) from None


def _parse_targets(alphabet: Alphabet, terms: list[str], lineno: int) -> LocalSuperposition:
    amps: dict[int, ExactComplex] = {}
    for term in terms:
        name, sep, lit = term.rpartition(":")
        if not sep or not name:
            raise ParseError(f"expected state:amplitude, got {term!r}", lineno)
        target = _state(alphabet, name, lineno)
        if target in amps:
            raise ParseError(f"target {name!r} listed twice", lineno)
        try:
            amps[target] = parse_complex(lit)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(str(exc), lineno) from None
    return LocalSuperposition.from_mapping(len(alphabet), amps)


def parse_lqca(text: str) -> Lqca:
    lines = _lines(text)
    lineno, names = _header(lines, "states")
    try:
        provisional = Alphabet(tuple(names), 0)
    except LqcaError as exc:
        raise ParseError(str(exc), lineno) from None
    lineno, fields = _header(lines, "quiescent")
    if len(fields) != 1:
        raise ParseError("quiescent line names exactly one state", lineno)
    alphabet = Alphabet(provisional.names, _state(provisional, fields[0], lineno))
    lineno, fields = _header(lines, "neighborhood")
    nb = _parse_offsets(lineno, fields)
    k, r = len(alphabet), nb.size
    q = alphabet.quiescent

    rules: dict[tuple[int, ...], LocalSuperposition] = {}
    last = lineno
    for lineno, line in lines:
        last = lineno
        lhs, arrow, rhs = line.partition("->")
        if not arrow:
            raise ParseError("rule line needs '->'", lineno)
        word_names = lhs.split()
        if len(word_names) != r:
            raise ParseError(f"rule word must have {r} states, got {len(word_names)}", lineno)
        word = tuple(_state(alphabet, n, lineno) for n in word_names)
        if word in rules:
            raise ParseError(f"duplicate rule for word {alphabet.word_name(word)!r}", lineno)
        sup = _parse_targets(alphabet, rhs.split(), lineno)
        if not sup.sq_norm():
            raise ParseError(f"rule for word {alphabet.word_name(word)!r} has zero norm", lineno)
        if word == (q,) * r and sup != LocalSuperposition.basis(k, q):
            raise ParseError(
                f"quiescent rule must be {alphabet.name(q)}:1 (quiescent condition)", lineno)
        rules[word] = sup
    for word in itertools.product(range(k), repeat=r):
        if word not in rules:
            raise ParseError(f"missing rule for word {alphabet.word_name(word)!r}", last)
    return Lqca.from_rules(alphabet, nb, rules)


def _render_targets(alphabet: Alphabet, sup) -> str:
    return " ".join(f"{alphabet.name(y)}:{amp}" for y, amp in enumerate(sup) if amp)


def render_lqca(a: Lqca) -> str:
    lines = [
        f"states {' '.join(a.alphabet.names)}",
        f"quiescent {a.alphabet.name(a.quiescent)}",
        f"neighborhood {' '.join(str(o) for o in a.neighborhood.offsets)}",
    ]
    for w in a.words():
        lines.append(f"{a.word_name(w)} -> {_render_targets(a.alphabet, a.local(w))}")
    return "\n".join(lines) + "\n"


def render_normalized(n: NormalizedLqca) -> tuple[str, str]:
    """Document plus sidecar of squared scales for a renormalized automaton.

    Rules whose norm is rational are divided out in the document and get
    scale 1; the others keep their original amplitudes, and the renormalized
    rule is ``amplitudes / sqrt(scale)``.
    """
    base = n.base
    rules = []
    scales = []
    for w in base.words():
        sup = n.local(w)
        exact = sup.exact()
        if exact is None:
            rules.append(base.local(w))
            scales.append(sup.sq_scale)
        else:
            rules.append(exact)
            scales.append(Fraction(1))
    doc = render_lqca(Lqca(base.alphabet, base.neighborhood, tuple(rules)))
    side = ["# renormalized rule = listed amplitudes / sqrt(scale)"]
    side += [f"{base.word_name(w)} : {format_rational(s)}" for w, s in zip(base.words(), scales)]
    return doc, "\n".join(side) + "\n"


def parse_config(spec: str, alphabet: Alphabet) -> Configuration:
    """``"q,p,p@-1"``: states from cell -1 on; ``""`` is the quiescent configuration."""
    spec = spec.strip()
    if not spec:
        return Configuration((), alphabet.quiescent)
    body, at, offset = spec.rpartition("@")
    if not at:
        body, offset = spec, "0"
    try:
        start = int(offset.replace("−", "-"))
    except ValueError:
        raise ParseError(f"bad config offset {offset!r}") from None
    names = [s.strip() for s in body.split(",")]
    states = []
    for name in names:
        try:
            states.append(alphabet.index(name))
        except LqcaError:
            raise ParseError(f"unknown state {name!r} in config {spec!r}") from None
    return Configuration.from_word(states, start, alphabet.quiescent)


def render_config(c: Configuration, alphabet: Alphabet) -> str:
    if c.is_empty():
        return ""
    span = idom(c)
    return ",".join(alphabet.name(x) for x in c.restrict(span)) + f"@{span.lo}"


def parse_plqca(text: str) -> Plqca:
    lines = _lines(text)
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise ParseError("empty document") from None
    if line.split() != ["plqca", "v1"]:
        raise ParseError("expected header 'plqca v1'", lineno)
    factors = []
    pending = None
    for lineno, line in lines:
        head, _, rest = line.partition(" ")
        if head == "factor":
            factors.append(tuple(rest.split()))
            continue
        pending = (lineno, line)
        break
    if pending is None:
        raise ParseError("expected 'neighborhood' line, got end of document")
    lineno, line = pending
    head, _, rest = line.partition(" ")
    if head != "neighborhood":
        raise ParseError(f"expected 'neighborhood' line, got {head!r}", lineno)
    try:
        fa = FactorAlphabets(tuple(factors))
    except LqcaError as exc:
        raise ParseError(str(exc), lineno) from None
    nb = _parse_offsets(lineno, rest.split())
    alphabet = fa.alphabet()
    n = len(alphabet)
    entries = [[ZERO] * n for _ in range(n)]
    seen = set()
    for lineno, line in lines:
        if not line.startswith("Q "):
            raise ParseError("expected 'Q target <- source : amplitude'", lineno)
        lhs, colon, lit = line[2:].rpartition(":")
        target, arrow, source = lhs.partition("<-")
        if not colon or not arrow:
            raise ParseError("expected 'Q target <- source : amplitude'", lineno)
        y = _state(alphabet, target.strip(), lineno)
        x = _state(alphabet, source.strip(), lineno)
        if (y, x) in seen:
            raise ParseError(f"duplicate entry Q {target.strip()} <- {source.strip()}", lineno)
        seen.add((y, x))
        try:
            entries[y][x] = parse_complex(lit)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(str(exc), lineno) from None
    try:
        return Plqca(fa, nb, QMatrix(entries))
    except LqcaError as exc:
        raise ParseError(str(exc)) from None


def render_plqca(p: Plqca) -> str:
    names = p.alphabet.names
    lines = ["plqca v1"]
    lines += [f"factor {' '.join(f)}" for f in p.factors.factors]
    lines.append(f"neighborhood {' '.join(str(o) for o in p.neighborhood.offsets)}")
    for y, row in enumerate(p.qmatrix.entries):
        for x, v in enumerate(row):
            if v:
                lines.append(f"Q {names[y]} <- {names[x]} : {v}")
    return "\n".join(lines) + "\n"


__all__ = [
    "parse_lqca", "render_lqca", "render_normalized", "parse_config", "render_config",
    "parse_plqca", "render_plqca",
]
