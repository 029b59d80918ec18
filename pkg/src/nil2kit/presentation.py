"""Relator words for small presentations.

Grammar::

    relation := word "=" word
    word     := "1" | atom ( ["*"] atom )*
    atom     := name [ "^" int | "⁻¹" ] | "[" name "," name "]"

Whitespace is ignored. Without an alphabet a name is one letter, optionally
followed by digits and an ``_suffix`` (so ``xa`` reads as ``x a``); with an
alphabet, names are matched longest-first and unknown names are rejected.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, TypeVar, Union

E = TypeVar("E")

_DEFAULT_NAME = re.compile(r"[A-Za-z][0-9]*(?:_[A-Za-z0-9]+)?")
_INT = re.compile(r"[+-]?[0-9]+")


class PresentationSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.offset = len(text[:pos].encode("utf-8"))
        super().__init__(f"{message} at byte {self.offset}: {text!r}")


@dataclass(frozen=True)
class Power:
    name: str
    exp: int = 1

    def __str__(self) -> str:
        return self.name if self.exp == 1 else f"{self.name}^{self.exp}"


@dataclass(frozen=True)
class Commutator:
    left: str
    right: str

    def __str__(self) -> str:
        return f"[{self.left},{self.right}]"


Atom = Union[Power, Commutator]
Word = tuple  # tuple[Atom, ...]


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Word

    def __str__(self) -> str:
        return f"{format_word(self.lhs)}={format_word(self.rhs)}"

    @property
    def kind(self) -> str:
        """"killing" ([g,h]=1), "power" (g^k=1), "commutator" ([g,h]=w) or "general"."""
        if len(self.lhs) == 1 and isinstance(self.lhs[0], Commutator):
            return "killing" if not self.rhs else "commutator"
        if len(self.lhs) == 1 and isinstance(self.lhs[0], Power) and not self.rhs:
            return "power"
        return "general"

    def names(self) -> set[str]:
        return word_names(self.lhs) | word_names(self.rhs)


def word_names(word: Word) -> set[str]:
    out: set[str] = set()
    for a in word:
        out |= {a.name} if isinstance(a, Power) else {a.left, a.right}
    return out


def format_word(word: Word) -> str:
    """Atoms joined by "*", so names never run together."""
    return "*".join(str(a) for a in word) if word else "1"


class _Parser:
    def __init__(self, text: str, alphabet: Sequence[str] | None):
        self.text = text
        self.pos = 0
        self.alphabet = sorted(alphabet, key=len, reverse=True) if alphabet is not None else None

    def error(self, msg: str):
        raise PresentationSyntaxError(msg, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def name(self) -> str:
        self.skip()
        if self.alphabet is not None:
            for cand in self.alphabet:
                if self.text.startswith(cand, self.pos):
                    self.pos += len(cand)
                    return cand
            m = _DEFAULT_NAME.match(self.text, self.pos)
            if m:
                self.error(f"unknown generator {m.group()!r}")
            self.error("expected a generator name")
        m = _DEFAULT_NAME.match(self.text, self.pos)
        if not m:
            self.error("expected a generator name")
        self.pos = m.end()
        return m.group()

    def atom(self) -> Atom:
        if self.peek() == "[":
            self.pos += 1
            left = self.name()
            self.expect(",")
            right = self.name()
            self.expect("]")
            return Commutator(left, right)
        name = self.name()
        if self.text.startswith("⁻¹", self.pos):
            self.pos += 2
            return Power(name, -1)
        if self.peek() == "^":
            self.pos += 1
            self.skip()
            brace = self.text.startswith("{", self.pos)
            if brace:
                self.pos += 1
            m = _INT.match(self.text, self.pos)
            if not m:
                self.error("expected an integer exponent")
            self.pos = m.end()
            if brace:
                self.expect("}")
            return Power(name, int(m.group()))
        return Power(name)

    def word(self) -> Word:
        if self.peek() == "1":
            self.pos += 1
            return ()
        atoms = [self.atom()]
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                atoms.append(self.atom())
            elif ch and (ch == "[" or ch.isalpha()):
                atoms.append(self.atom())
            else:
                return tuple(atoms)

    def end(self):
        if self.peek():
            self.error("unexpected trailing input")


def parse_word(text: str, alphabet: Sequence[str] | None = None) -> Word:
    p = _Parser(text, alphabet)
    w = p.word()
    p.end()
    return w


def parse_relation(text: str, alphabet: Sequence[str] | None = None) -> Relation:
    """Parse ``w1=w2``; a bare word is read as ``w=1``."""
    p = _Parser(text, alphabet)
    lhs = p.word()
    if p.peek() == "=":
        p.pos += 1
        rhs = p.word()
    else:
        rhs = ()
    p.end()
    return Relation(lhs, rhs)


parse_relator = parse_relation


def evaluate(
    word: Word,
    assignment: dict[str, E],
    mul: Callable[[E, E], E],
    inv: Callable[[E], E],
    identity: E,
) -> E:
    """Value of ``word`` under ``assignment`` with the given group operations."""

    def power(g: E, k: int) -> E:
        if k < 0:
            g, k = inv(g), -k
        out = identity
        for _ in range(k):
            out = mul(out, g)
        return out

    out = identity
    for a in word:
        if isinstance(a, Power):
            out = mul(out, power(assignment[a.name], a.exp))
        else:
            g, h = assignment[a.left], assignment[a.right]
            out = mul(out, mul(mul(mul(g, h), inv(g)), inv(h)))
    return out


def relations_hold(
    relations: Iterable[Relation],
    assignment: dict[str, E],
    mul: Callable[[E, E], E],
    inv: Callable[[E], E],
    identity: E,
) -> list[Relation]:
    """The relations that fail under ``assignment`` (empty when all hold)."""
    return [
        r for r in relations
        if evaluate(r.lhs, assignment, mul, inv, identity) != evaluate(r.rhs, assignment, mul, inv, identity)
    ]
