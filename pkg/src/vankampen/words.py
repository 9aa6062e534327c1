"""Freely reduced words, free-group endomorphisms, and braid actions.

Words live in the free group on named generators and are stored as
run-length syllable sequences ``(name, exponent)`` with nonzero exponents
and no two adjacent syllables sharing a name; the empty sequence is the
identity.  Construction always reduces, so every ``Word`` in circulation
is freely reduced.

Braid words on n strands act on the free group of rank n by the Artin
rule ``s_i: a_i -> a_i a_{i+1} a_i^-1, a_{i+1} -> a_i`` (other generators
fixed), extended to products by ``action(b1 b2) = action(b1) o action(b2)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import ParseError

Syllable = tuple[str, int]

# Generator names: identifier with an optional trailing + or - marker.
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*[+-]?")
_TOKEN_RE = re.compile(r"\S+")
_WORD_TOKEN_RE = re.compile(
    r"(?P<name>[A-Za-z_][A-Za-z0-9_]*[+-]?)(?:\^(?P<exp>-?\d+))?$"
)


def _merge(syllables: Iterable[Syllable]) -> tuple[Syllable, ...]:
    out: list[Syllable] = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            folded = out[-1][1] + exp
            if folded == 0:
                out.pop()
            else:
                out[-1] = (gen, folded)
        else:
            out.append((gen, exp))
    return tuple(out)


class Word:
    """A freely reduced word in named generators."""

    __slots__ = ("syllables",)

    def __init__(self, syllables: Iterable[Syllable] = ()):
        self.syllables: tuple[Syllable, ...] = _merge(syllables)

    @classmethod
    def gen(cls, name: str, exp: int = 1) -> Word:
        return cls(((name, exp),))

    @property
    def length(self) -> int:
        """Length as a reduced word (sum of absolute exponents)."""
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def __mul__(self, other: Word) -> Word:
        return Word(self.syllables + other.syllables)

    def inverse(self) -> Word:
        return Word((g, -e) for g, e in reversed(self.syllables))

    def __invert__(self) -> Word:
        return self.inverse()

    def __pow__(self, n: int) -> Word:
        if n == 0:
            return Word()
        base = self if n > 0 else self.inverse()
        out = base
        for _ in range(abs(n) - 1):
            out = out * base
        return out

    def letters(self) -> Iterator[tuple[str, int]]:
        """Yield single letters (name, +1 or -1), expanding exponents."""
        for g, e in self.syllables:
            step = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield (g, step)

    def exponent_sum(self, name: str) -> int:
        return sum(e for g, e in self.syllables if g == name)

    def generators(self) -> set[str]:
        return {g for g, _ in self.syllables}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.syllables == other.syllables

    def __hash__(self) -> int:
        return hash(self.syllables)

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return " ".join(g if e == 1 else f"{g}^{e}" for g, e in self.syllables)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


def parse_word(
    text: str,
    generators: Iterable[str] | None = None,
    line: int = 1,
    column_offset: int = 0,
) -> Word:
    """Parse the word grammar, e.g. ``p q^-1 p^3``; ``1`` is the identity.

    If ``generators`` is given, names outside it are rejected.  Exponents
    must be nonzero integers.  Errors carry line/column positions.
    """
    known = set(generators) if generators is not None else None
    syllables: list[Syllable] = []
    for tok in _TOKEN_RE.finditer(text):
        col = column_offset + tok.start() + 1
        piece = tok.group()
        if piece == "1":
            continue
        m = _WORD_TOKEN_RE.match(piece)
        if m is None:
            raise ParseError(f"bad word token {piece!r}", line, col)
        name = m.group("name")
        exp = int(m.group("exp")) if m.group("exp") is not None else 1
        if exp == 0:
            raise ParseError(f"zero exponent on {name!r}", line, col)
        if known is not None and name not in known:
            raise ParseError(f"unknown generator {name!r}", line, col)
        syllables.append((name, exp))
    return Word(syllables)


class FreeEndo:
    """An endomorphism of a free group, given by generator images.

    The ``inverse`` attribute, when set, has been verified to be a
    two-sided inverse on generators, so the endomorphism is a genuine
    automorphism exactly when ``is_automorphism`` is true.
    """

    __slots__ = ("domain", "images", "inverse")

    def __init__(self, domain: Iterable[str], images: Mapping[str, Word]):
        self.domain: tuple[str, ...] = tuple(domain)
        if len(set(self.domain)) != len(self.domain):
            raise ValueError("duplicate generator in domain")
        missing = [g for g in self.domain if g not in images]
        if missing:
            raise ValueError(f"no image for generator(s) {missing}")
        for g in self.domain:
            foreign = images[g].generators() - set(self.domain)
            if foreign:
                raise ValueError(f"image of {g!r} uses foreign generators {sorted(foreign)}")
        self.images: dict[str, Word] = {g: images[g] for g in self.domain}
        self.inverse: FreeEndo | None = None

    @classmethod
    def identity(cls, domain: Iterable[str]) -> FreeEndo:
        e = cls(domain, {g: Word.gen(g) for g in domain})
        e.inverse = e
        return e

    @property
    def is_automorphism(self) -> bool:
        return self.inverse is not None

    def apply(self, w: Word) -> Word:
        """Image of a word: substitute generator images and reduce."""
        out = Word()
        for g, e in w.syllables:
            if g not in self.images:
                raise ValueError(f"word uses generator {g!r} outside the domain")
            out = out * self.images[g] ** e
        return out

    def __call__(self, w: Word) -> Word:
        return self.apply(w)

    def with_inverse(self, inv: FreeEndo) -> FreeEndo:
        """Attach ``inv`` after verifying it is a two-sided inverse."""
        if inv.domain != self.domain:
            raise ValueError("inverse has a different domain")
        for g in self.domain:
            one = Word.gen(g)
            if self.apply(inv.images[g]) != one or inv.apply(self.images[g]) != one:
                raise ValueError(f"claimed inverse fails on generator {g!r}")
        out = FreeEndo(self.domain, self.images)
        back = FreeEndo(inv.domain, inv.images)
        out.inverse = back
        back.inverse = out
        return out

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FreeEndo)
            and self.domain == other.domain
            and self.images == other.images
        )

    def __hash__(self) -> int:
        return hash((self.domain, tuple(self.images[g] for g in self.domain)))

    def __str__(self) -> str:
        return ", ".join(f"{g} -> {self.images[g]}" for g in self.domain)

    def __repr__(self) -> str:
        return f"FreeEndo({str(self)!r})"


def compose(e1: FreeEndo, e2: FreeEndo) -> FreeEndo:
    """Composite ``e1 o e2``: ``compose(e1, e2)(w) == e1(e2(w))``."""
    if e1.domain != e2.domain:
        raise ValueError("domain mismatch in composition")
    out = FreeEndo(e1.domain, {g: e1.apply(e2.images[g]) for g in e1.domain})
    if e1.inverse is not None and e2.inverse is not None:
        inv = FreeEndo(
            e1.domain,
            {g: e2.inverse.apply(e1.inverse.images[g]) for g in e1.domain},
        )
        out = out.with_inverse(inv)
    return out


@dataclass(frozen=True)
class BraidWord:
    """A braid word on ``strands`` strands, stored letter by letter.

    Letters are ``(index, sign)`` with ``1 <= index < strands`` and sign
    ``+1`` or ``-1``; the word is stored exactly as given (no reduction).
    """

    strands: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.strands < 2:
            raise ValueError("need at least two strands")
        for idx, sign in self.letters:
            if not 1 <= idx < self.strands:
                raise ValueError(f"braid letter index {idx} out of range for {self.strands} strands")
            if sign not in (1, -1):
                raise ValueError(f"braid letter sign must be +1 or -1, got {sign}")

    def __mul__(self, other: BraidWord) -> BraidWord:
        if self.strands != other.strands:
            raise ValueError("strand count mismatch")
        return BraidWord(self.strands, self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, tuple((i, -s) for i, s in reversed(self.letters)))

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        parts: list[str] = []
        i = 0
        while i < len(self.letters):
            idx, sign = self.letters[i]
            j = i
            while j + 1 < len(self.letters) and self.letters[j + 1] == (idx, sign):
                j += 1
            run = (j - i + 1) * sign
            parts.append(f"s{idx}" if run == 1 else f"s{idx}^{run}")
            i = j + 1
        return " ".join(parts)


_BRAID_TOKEN_RE = re.compile(r"s(?P<idx>[1-9][0-9]*)(?:\^(?P<exp>-?\d+))?$")


def parse_braid(text: str, strands: int | None = None, line: int = 1) -> BraidWord:
    """Parse the braid grammar, e.g. ``s1 s2^-1 s1^3``.

    With ``strands=None`` the count is inferred as (largest index + 1),
    and at least 2.
    """
    letters: list[tuple[int, int]] = []
    max_idx = 1
    for tok in _TOKEN_RE.finditer(text):
        col = tok.start() + 1
        piece = tok.group()
        if piece == "1":
            continue
        m = _BRAID_TOKEN_RE.match(piece)
        if m is None:
            raise ParseError(f"bad braid token {piece!r}", line, col)
        idx = int(m.group("idx"))
        exp = int(m.group("exp")) if m.group("exp") is not None else 1
        if exp == 0:
            raise ParseError(f"zero exponent on s{idx}", line, col)
        if strands is not None and idx >= strands:
            raise ParseError(f"unknown braid generator s{idx} on {strands} strands", line, col)
        max_idx = max(max_idx, idx)
        sign = 1 if exp > 0 else -1
        letters.extend((idx, sign) for _ in range(abs(exp)))
    n = strands if strands is not None else max_idx + 1
    return BraidWord(n, tuple(letters))


def fiber_names(strands: int) -> tuple[str, ...]:
    """Default free-group generator names a1..an for an n-strand action."""
    return tuple(f"a{i}" for i in range(1, strands + 1))


def _sigma_endo(i: int, names: tuple[str, ...], sign: int) -> FreeEndo:
    a, b = names[i - 1], names[i]
    images = {g: Word.gen(g) for g in names}
    if sign == 1:
        images[a] = Word(((a, 1), (b, 1), (a, -1)))
        images[b] = Word.gen(a)
    else:
        images[a] = Word.gen(b)
        images[b] = Word(((b, -1), (a, 1), (b, 1)))
    return FreeEndo(names, images)


def braid_action(braid: BraidWord, names: Iterable[str] | None = None) -> FreeEndo:
    """The action of a braid word on the free group of rank ``strands``.

    Returns a verified automorphism (its inverse is the action of the
    inverse braid word).
    """
    gens = tuple(names) if names is not None else fiber_names(braid.strands)
    if len(gens) != braid.strands:
        raise ValueError("need one generator name per strand")
    forward = FreeEndo.identity(gens)
    for idx, sign in braid.letters:
        forward = compose(forward, _sigma_endo(idx, gens, sign))
    backward = FreeEndo.identity(gens)
    for idx, sign in braid.inverse().letters:
        backward = compose(backward, _sigma_endo(idx, gens, sign))
    return forward.with_inverse(backward)
