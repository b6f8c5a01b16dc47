"""Problem-file language: a quiver, an optional arrow order, potential and options.

::

    # three loops, anticommutator potential
    quiver { vertices: 1; arrows: x: 0->0, y: 0->0, z: 0->0; }
    order: x > y > z;
    potential: x*y*z + x*z*y;
    options { degree_bound: 12; method: all; }

``a: i->j`` declares an arrow with tail ``i`` and head ``j``.  Terms of the
potential are arrow names joined by ``*``, composable right to left
(``t(a) = h(b)`` for consecutive ``a*b``), with an optional rational
coefficient ``p`` or ``p/q`` in front.  A leading ``-`` on the first term is
accepted.  ``#`` starts a comment that runs to the end of the line.

Every error is a :class:`DSLError` carrying a line and column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .pathalg import CyclicPoly, Word
from .quiver import Quiver, QuiverError

METHODS = ("structural", "condsup", "hilbert", "exactness", "all")

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym>->|[{}:;,>+\-*/])
    """,
    re.VERBOSE,
)


class DSLError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # int, ident, sym, eof
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise DSLError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            out.append(Token(kind, chunk, line, pos - line_start + 1))
        for i, ch in enumerate(chunk):
            if ch == "\n":
                line += 1
                line_start = pos + i + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


@dataclass
class ProblemFile:
    """A parsed problem: the quiver is already in the declared arrow order."""

    quiver: Quiver
    potential: CyclicPoly | None = None
    degree_bound: int | None = None
    method: str | None = None

    @property
    def degree(self) -> int | None:
        return None if self.potential is None else self.potential.degree


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, message: str, tok: Token | None = None) -> DSLError:
        tok = tok or self.tok
        return DSLError(message, tok.line, tok.col)

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "eof":
            self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind in ("sym", "ident") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = "end of input" if self.tok.kind == "eof" else repr(self.tok.text)
            raise self.error(f"expected {text!r}, found {found}")
        return self.advance()

    def keyword(self, word: str):
        self.expect(word)
        self.expect(":")

    def integer(self, what: str) -> tuple[int, Token]:
        if self.tok.kind != "int":
            raise self.error(f"expected {what} (an integer)")
        t = self.advance()
        return int(t.text), t

    def ident(self, what: str) -> Token:
        if self.tok.kind != "ident":
            raise self.error(f"expected {what}")
        return self.advance()

    # blocks ------------------------------------------------------------------

    def quiver_block(self) -> Quiver:
        self.expect("quiver")
        self.expect("{")
        self.keyword("vertices")
        n, ntok = self.integer("vertex count")
        if n < 1:
            raise self.error("vertex count must be positive", ntok)
        self.expect(";")
        self.keyword("arrows")
        edges: list[tuple[str, int, int]] = []
        seen: set[str] = set()
        while True:
            name = self.ident("arrow name")
            if name.text in seen:
                raise self.error(f"arrow {name.text!r} declared twice", name)
            seen.add(name.text)
            self.expect(":")
            tail, ttok = self.integer("tail vertex")
            self.expect("->")
            head, htok = self.integer("head vertex")
            for v, t in ((tail, ttok), (head, htok)):
                if v >= n:
                    raise self.error(f"vertex {v} out of range 0..{n - 1}", t)
            edges.append((name.text, tail, head))
            if not self.at(","):
                break
            self.advance()
        self.expect(";")
        self.expect("}")
        try:
            return Quiver.from_edges(n, edges)
        except QuiverError as exc:  # pragma: no cover - checks above cover it
            raise self.error(str(exc)) from None

    def order_block(self, q: Quiver) -> Quiver:
        start = self.tok
        self.keyword("order")
        names = []
        while True:
            t = self.ident("arrow name")
            if t.text not in q.names:
                raise self.error(f"unknown arrow {t.text!r}", t)
            if t.text in names:
                raise self.error(f"arrow {t.text!r} listed twice", t)
            names.append(t.text)
            if not self.at(">"):
                break
            self.advance()
        if len(names) < 2:
            raise self.error("an order needs at least two arrows", start)
        missing = [a for a in q.names if a not in names]
        if missing:
            raise self.error(f"order omits arrow(s) {', '.join(missing)}", start)
        self.expect(";")
        return q.reordered(names)

    def term(self, q: Quiver, sign: int) -> tuple[Fraction, Word, Token]:
        first = self.tok
        coeff = Fraction(sign)
        if self.tok.kind == "int":
            num = int(self.advance().text)
            den = 1
            if self.at("/"):
                self.advance()
                den, dtok = self.integer("denominator")
                if den == 0:
                    raise self.error("zero denominator", dtok)
            coeff *= Fraction(num, den)
            self.expect("*")
        word: list[int] = []
        while True:
            t = self.ident("arrow name")
            if t.text not in q.names:
                raise self.error(f"unknown arrow {t.text!r}", t)
            a = q.index(t.text)
            if word and q.tail(word[-1]) != q.head(a):
                raise self.error(
                    f"{t.text!r} cannot follow {q.names[word[-1]]!r}: tail of {q.names[word[-1]]} is "
                    f"{q.tail(word[-1])}, head of {t.text} is {q.head(a)}",
                    t,
                )
            word.append(a)
            if not self.at("*"):
                break
            self.advance()
        return coeff, tuple(word), first

    def terms(self, q: Quiver, stop: str | None) -> list[tuple[Fraction, Word, Token]]:
        sign = 1
        if self.at("-"):
            self.advance()
            sign = -1
        out = [self.term(q, sign)]
        while self.at("+") or self.at("-"):
            sign = 1 if self.advance().text == "+" else -1
            out.append(self.term(q, sign))
        if stop is not None:
            self.expect(stop)
        return out

    def potential_block(self, q: Quiver) -> CyclicPoly:
        self.keyword("potential")
        terms = self.terms(q, ";")
        degree = len(terms[0][1])
        acc: dict[Word, Fraction] = {}
        for c, word, tok in terms:
            if q.head(word[0]) != q.tail(word[-1]):
                raise self.error(f"term {q.format_word(word)} is not a cycle", tok)
            if len(word) != degree:
                raise self.error(f"mixed degrees: term of degree {len(word)} after degree {degree}", tok)
            acc[word] = acc.get(word, Fraction(0)) + c
        return CyclicPoly(q, acc, degree)

    def options_block(self) -> tuple[int | None, str | None]:
        self.expect("options")
        self.expect("{")
        bound = method = None
        if self.at("degree_bound"):
            self.keyword("degree_bound")
            bound, btok = self.integer("degree bound")
            if bound < 1:
                raise self.error("degree bound must be positive", btok)
            self.expect(";")
        if self.at("method"):
            self.keyword("method")
            t = self.ident("method name")
            if t.text not in METHODS:
                raise self.error(f"unknown method {t.text!r}; expected one of {', '.join(METHODS)}", t)
            method = t.text
            self.expect(";")
        self.expect("}")
        return bound, method

    def problem(self) -> ProblemFile:
        q = self.quiver_block()
        if self.at("order"):
            q = self.order_block(q)
        pot = self.potential_block(q) if self.at("potential") else None
        bound = method = None
        if self.at("options"):
            bound, method = self.options_block()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r} after the last block")
        return ProblemFile(q, pot, bound, method)


def parse(text: str) -> ProblemFile:
    """Parse a problem file; raises :class:`DSLError` on any syntax or semantic error."""
    return _Parser(text).problem()


def parse_linear_combination(q: Quiver, text: str) -> dict[Word, Fraction]:
    """Parse ``"x*y - 2*y*x"`` against ``q``; terms must be composable paths."""
    p = _Parser(text)
    terms = p.terms(q, None)
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.tok.text!r}")
    out: dict[Word, Fraction] = {}
    for c, word, _ in terms:
        out[word] = out.get(word, Fraction(0)) + c
    return {w: c for w, c in out.items() if c}


def emit(problem: ProblemFile) -> str:
    """Canonical text for a problem; ``parse(emit(p))`` reproduces ``p``."""
    q = problem.quiver
    arrows = ", ".join(f"{a.name}: {a.tail}->{a.head}" for a in q.arrows)
    lines = ["quiver {", f"  vertices: {q.vertex_count};", f"  arrows: {arrows};", "}"]
    if q.arrow_count >= 2:
        lines.append("order: " + " > ".join(q.names) + ";")
    if problem.potential:
        lines.append(f"potential: {problem.potential};")
    if problem.degree_bound is not None or problem.method is not None:
        lines.append("options {")
        if problem.degree_bound is not None:
            lines.append(f"  degree_bound: {problem.degree_bound};")
        if problem.method is not None:
            lines.append(f"  method: {problem.method};")
        lines.append("}")
    return "\n".join(lines) + "\n"
