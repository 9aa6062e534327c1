"""Todd-Coxeter coset enumeration (HLT strategy).

``enumerate_cosets`` either closes a coset table for a subgroup of a
finitely presented group or returns ``Overflow`` once the definition
budget is spent.  Overflow is an ordinary result, not an error: it means
"index not determined within budget", never "the index is infinite".

Coincidences are processed immediately with a union-find; definitions
are made in scan order, which is breadth-first over the table, so the
standardized result is deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .presentation import Presentation
from .words import Word


@dataclass(frozen=True)
class Overflow:
    """The enumeration exceeded its coset-definition budget."""

    max_cosets: int


@dataclass(frozen=True)
class CosetTable:
    """A closed, standardized coset table.

    ``rows[c][2*i]`` is the image of coset ``c`` under generator i,
    ``rows[c][2*i + 1]`` the image under its inverse.
    """

    generators: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.rows)

    def act(self, coset: int, gen: str, exp: int = 1) -> int:
        i = self.generators.index(gen)
        col = 2 * i if exp > 0 else 2 * i + 1
        for _ in range(abs(exp)):
            coset = self.rows[coset][col]
        return coset

    def act_word(self, coset: int, w: Word) -> int:
        for g, e in w.syllables:
            coset = self.act(coset, g, 1 if e > 0 else -1)
            for _ in range(abs(e) - 1):
                coset = self.act(coset, g, 1 if e > 0 else -1)
        return coset


class _Enumerator:
    def __init__(self, gens: tuple[str, ...], max_cosets: int):
        self.ncols = 2 * len(gens)
        self.gens = gens
        self.max_cosets = max_cosets
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.parent: list[int] = [0]
        self.defined = 1
        self.queue: deque[int] = deque()

    def find(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, alpha: int, col: int) -> None:
        if self.defined >= self.max_cosets:
            raise _Budget()
        beta = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(beta)
        self.defined += 1
        self.table[alpha][col] = beta
        self.table[beta][col ^ 1] = alpha

    def merge(self, a: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        if a == b:
            return
        lo, hi = min(a, b), max(a, b)
        self.parent[hi] = lo
        self.queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        self.merge(a, b)
        while self.queue:
            dead = self.queue.popleft()
            for col in range(self.ncols):
                target = self.table[dead][col]
                if target is None:
                    continue
                self.table[dead][col] = None
                # remove the back-reference from the (possibly dead) target row
                if self.table[target][col ^ 1] == dead:
                    self.table[target][col ^ 1] = None
                mu, nu = self.find(dead), self.find(target)
                existing = self.table[mu][col]
                if existing is not None:
                    self.merge(nu, existing)
                else:
                    back = self.table[nu][col ^ 1]
                    if back is not None:
                        self.merge(mu, back)
                    else:
                        self.table[mu][col] = nu
                        self.table[nu][col ^ 1] = mu

    def scan_and_fill(self, alpha: int, word: list[int]) -> None:
        f, i = alpha, 0
        b, j = alpha, len(word) - 1
        while True:
            while i <= j and self.table[f][word[i]] is not None:
                f = self.table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and self.table[b][word[j] ^ 1] is not None:
                b = self.table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                self.table[f][word[i]] = b
                self.table[b][word[i] ^ 1] = f
                return
            self.define(f, word[i])


class _Budget(Exception):
    pass


def _word_cols(w: Word, gens: tuple[str, ...]) -> list[int]:
    index = {g: i for i, g in enumerate(gens)}
    out: list[int] = []
    for g, e in w.letters():
        out.append(2 * index[g] + (0 if e > 0 else 1))
    return out


def enumerate_cosets(
    P: Presentation,
    subgroup: Sequence[Word] = (),
    max_cosets: int = 100_000,
) -> CosetTable | Overflow:
    """Enumerate cosets of <subgroup> in the presented group.

    Returns a closed ``CosetTable`` or ``Overflow(max_cosets)``.  The
    closed table passes a full verification sweep (all relators trace
    the identity at every coset, subgroup words fix coset 0) before it
    is returned.
    """
    gens = P.generators
    for w in subgroup:
        foreign = w.generators() - set(gens)
        if foreign:
            raise ValueError(f"subgroup word uses unknown generators {sorted(foreign)}")
    rel_cols = [_word_cols(r, gens) for r in P.relators]
    sub_cols = [_word_cols(w, gens) for w in subgroup]

    enum = _Enumerator(gens, max_cosets)
    try:
        for w in sub_cols:
            if w:
                enum.scan_and_fill(0, w)
        alpha = 0
        while alpha < len(enum.table):
            if enum.alive(alpha):
                for rel in rel_cols:
                    enum.scan_and_fill(alpha, rel)
                    if not enum.alive(alpha):
                        break
                if enum.alive(alpha):
                    for col in range(enum.ncols):
                        if enum.table[alpha][col] is None:
                            enum.define(alpha, col)
            alpha += 1
    except _Budget:
        return Overflow(max_cosets)

    table = _standardize(enum)
    _verify(table, P, subgroup)
    return table


def _standardize(enum: _Enumerator) -> CosetTable:
    """Renumber live cosets breadth-first from the subgroup coset."""
    live: dict[int, int] = {}
    order: list[int] = []
    root = enum.find(0)
    live[root] = 0
    order.append(root)
    head = 0
    while head < len(order):
        c = order[head]
        head += 1
        for col in range(enum.ncols):
            t = enum.table[c][col]
            if t is None:
                raise RuntimeError("closed table has an undefined entry")
            t = enum.find(t)
            if t not in live:
                live[t] = len(order)
                order.append(t)
    rows = tuple(
        tuple(live[enum.find(enum.table[c][col])] for col in range(enum.ncols))
        for c in order
    )
    return CosetTable(enum.gens, rows)


def _verify(table: CosetTable, P: Presentation, subgroup: Sequence[Word]) -> None:
    n = table.count
    ncols = 2 * len(table.generators)
    for c in range(n):
        for col in range(0, ncols, 2):
            fwd = table.rows[c][col]
            if table.rows[fwd][col + 1] != c:
                raise RuntimeError("verification failed: actions are not mutually inverse")
    for r in P.relators:
        for c in range(n):
            if table.act_word(c, r) != c:
                raise RuntimeError(f"verification failed: relator {r} does not fix coset {c}")
    for w in subgroup:
        if table.act_word(0, w) != 0:
            raise RuntimeError(f"verification failed: subgroup word {w} moves coset 0")


def quotient_order(
    P: Presentation,
    extra_relators: Sequence[Word] = (),
    max_cosets: int = 100_000,
) -> int | Overflow:
    """Order of the quotient of ``P`` by ``extra_relators``.

    Enumerates the trivial subgroup in the presentation extended by the
    extra relator words.
    """
    extended = Presentation(P.generators, P.relators + tuple(extra_relators))
    result = enumerate_cosets(extended, (), max_cosets)
    return result.count if isinstance(result, CosetTable) else result
