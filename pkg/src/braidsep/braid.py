"""Words in the three-strand braid group.

A word is stored as a tuple of syllables ``(generator, exponent)`` meaning
``s_gen ** exponent``.  Words are always kept in normalized form: adjacent
syllables on the same generator are merged and zero exponents dropped.  No
other rewriting is done, in particular the braid relation is never applied,
so a word is evaluated essentially as written.

Text form::

    word     := "e" | syllable { WS syllable }
    syllable := gen [ "^" int ]
    gen      := "s1" | "s2" | "σ1" | "σ2"

"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Union

from .exceptions import BraidSyntaxError

GENERATORS = (1, 2)

IDENTITY_TEXT = "e"


class Syllable(NamedTuple):
    generator: int
    exponent: int

    def __repr__(self):
        return f"({self.generator},{self.exponent})"


class FlypeForm(NamedTuple):
    """Exponents of a word spelled ``s1^a s2^b s1^c s2^epsilon``."""

    a: int
    b: int
    c: int
    epsilon: int


def normalize(syllables: Iterable) -> tuple[Syllable, ...]:
    """Merge adjacent same-generator syllables and drop zero exponents.

    Merging may produce a zero exponent, whose removal can bring two more
    syllables together, so this works as a stack.
    """
    out: list[Syllable] = []
    for gen, exp in syllables:
        gen, exp = int(gen), int(exp)
        if gen not in GENERATORS:
            raise ValueError(f"generator index {gen} outside {{1, 2}}")
        if exp == 0:
            continue
        if out and out[-1].generator == gen:
            merged = out[-1].exponent + exp
            out.pop()
            if merged != 0:
                out.append(Syllable(gen, merged))
        else:
            out.append(Syllable(gen, exp))
    return tuple(out)


@dataclass(frozen=True)
class BraidWord:
    """Immutable normalized braid word on generators s1, s2."""

    syllables: tuple[Syllable, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "syllables", normalize(self.syllables))

    @classmethod
    def identity(cls) -> "BraidWord":
        return cls(())

    def __len__(self):
        return len(self.syllables)

    def __iter__(self):
        return iter(self.syllables)

    def __getitem__(self, i):
        return self.syllables[i]

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        return concat(self, other)

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"BraidWord({format_word(self)!r})"

    @property
    def is_identity(self) -> bool:
        return not self.syllables

    @property
    def exponent_sum(self) -> int:
        return sum(s.exponent for s in self.syllables)

    @property
    def crossings(self) -> int:
        """Number of letters, i.e. crossings in the closed-braid diagram."""
        return sum(abs(s.exponent) for s in self.syllables)

    def is_palindromic(self) -> bool:
        return reverse(self) == self


WordLike = Union[BraidWord, str, Iterable]


def as_word(obj: WordLike) -> BraidWord:
    """Coerce text, a syllable sequence, or a word into a BraidWord."""
    if isinstance(obj, BraidWord):
        return obj
    if isinstance(obj, str):
        return parse(obj)
    try:
        return BraidWord(tuple(obj))
    except (TypeError, ValueError) as exc:
        raise TypeError(f"cannot interpret {obj!r} as a braid word") from exc


# -- text form ---------------------------------------------------------------

_TOKEN = re.compile(r"(?:s|σ)(\d+)(?:\^([+-]?\d+))?")
_WS = re.compile(r"\s+")


def parse(text: str) -> BraidWord:
    """Parse the text form of a braid word.

    >>> parse("s1^-1 s2^2 s1^-2 s2").syllables
    ((1,-1), (2,2), (1,-2), (2,1))
    """
    stripped = text.strip()
    if stripped == IDENTITY_TEXT:
        return BraidWord.identity()
    offset = len(text) - len(text.lstrip())
    syllables = []
    pos = offset
    end = len(text.rstrip())
    while pos < end:
        if syllables:
            ws = _WS.match(text, pos)
            if ws is None:
                raise BraidSyntaxError(
                    f"expected whitespace before {text[pos]!r}", text, pos)
            pos = ws.end()
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos] == IDENTITY_TEXT:
                raise BraidSyntaxError(
                    "'e' must stand alone as the identity word", text, pos)
            raise BraidSyntaxError(
                f"expected generator 's1' or 's2', found {text[pos]!r}", text, pos)
        if m.end() < end and not text[m.end()].isspace():
            raise BraidSyntaxError(
                f"unexpected character {text[m.end()]!r}", text, m.end())
        gen = int(m.group(1))
        if gen not in GENERATORS:
            raise BraidSyntaxError(
                f"generator index {gen} outside {{1, 2}}", text, m.start(1))
        exp = 1 if m.group(2) is None else int(m.group(2))
        if exp == 0:
            raise BraidSyntaxError("zero exponent", text, m.start(2))
        syllables.append((gen, exp))
        pos = m.end()
    return BraidWord(tuple(syllables))


def format_word(w: BraidWord) -> str:
    if not w.syllables:
        return IDENTITY_TEXT
    return " ".join(
        f"s{g}" if e == 1 else f"s{g}^{e}" for g, e in w.syllables)


# -- word operations ---------------------------------------------------------

def reverse(w: BraidWord) -> BraidWord:
    """Reverse syllable order, keeping exponents (the reversed braid w')."""
    return BraidWord(w.syllables[::-1])


def invert(w: BraidWord) -> BraidWord:
    """Group inverse: reversed order with negated exponents."""
    return BraidWord(tuple((g, -e) for g, e in reversed(w.syllables)))


def concat(*words: BraidWord) -> BraidWord:
    return BraidWord(tuple(s for w in words for s in w.syllables))


def conjugate(w: BraidWord, g: BraidWord) -> BraidWord:
    """Return g w g^-1."""
    return concat(g, w, invert(g))


def cyclic_rotate(w: BraidWord, k: int) -> BraidWord:
    """Rotate left by ``k`` whole syllables; the result is conjugate to ``w``."""
    n = len(w.syllables)
    if n == 0:
        return w
    k %= n
    return BraidWord(w.syllables[k:] + w.syllables[:k])


def as_flype_form(w: BraidWord) -> Optional[FlypeForm]:
    """Syntactic match against ``s1^a s2^b s1^c s2^(+-1)``; no conjugacy search."""
    s = w.syllables
    if len(s) != 4 or [x.generator for x in s] != [1, 2, 1, 2]:
        return None
    if abs(s[3].exponent) != 1:
        return None
    return FlypeForm(s[0].exponent, s[1].exponent, s[2].exponent, s[3].exponent)
