"""Freely reduced groupoid words.

A word is written outermost-first: the letters ``(x_k, ..., x_1)`` denote
``x_k ∘ ... ∘ x_1``, so the rightmost letter acts first.  A word with no
letters is the unit at its vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

Letter = tuple[str, int]


class WordError(ValueError):
    pass


def letter_token(letter: Letter) -> str:
    name, exp = letter
    return name if exp == 1 else f"{name}^-1"


def parse_token(token: str) -> Letter:
    token = token.strip()
    if token.endswith("^-1"):
        return (token[:-3], -1)
    if token.endswith("⁻¹"):
        return (token[:-2], -1)
    return (token, 1)


def free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for name, exp in letters:
        if out and out[-1][0] == name and out[-1][1] == -exp:
            out.pop()
        else:
            out.append((name, exp))
    return tuple(out)


@dataclass(frozen=True, order=True)
class Word:
    letters: tuple[Letter, ...]
    d: str
    t: str

    @classmethod
    def unit(cls, v: str) -> "Word":
        return cls((), v, v)

    def is_unit(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        """Composite ``self ∘ other``; ``other`` acts first."""
        if self.d != other.t:
            raise WordError(f"words {self} and {other} are not composable")
        return Word(free_reduce(self.letters + other.letters), other.d, self.t)

    def inverse(self) -> "Word":
        return Word(tuple((n, -e) for n, e in reversed(self.letters)), self.t, self.d)

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** (-k)
        if k and self.d != self.t:
            raise WordError(f"cannot raise {self} to a power: d != t")
        out = Word.unit(self.d)
        for _ in range(k):
            out = out * self
        return out

    @property
    def tokens(self) -> list[str]:
        if not self.letters:
            return [self.d]
        return [letter_token(x) for x in self.letters]

    def __str__(self) -> str:
        return " ".join(self.tokens)


def product(words: Iterable[Word]) -> Word:
    """Composite of ``words`` listed outermost-first."""
    words = list(words)
    if not words:
        raise WordError("empty product")
    out = words[-1]
    for w in reversed(words[:-1]):
        out = w * out
    return out
