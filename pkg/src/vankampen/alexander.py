"""Alexander polynomials of weighted presentations via Fox calculus.

Each generator g carries an integer weight w(g); the weight homomorphism
sends g to t^w(g).  Fox derivatives satisfy d(uv) = du + phi(u) dv and
d(g^-1) = -phi(g^-1), evaluated here directly through the weight map, so
derivatives land in Z[t, t^-1].  The Alexander polynomial is the gcd of
the (n-1)x(n-1) minors of the Alexander matrix, normalized so the lowest
exponent is 0 and the constant term is positive.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Iterable, Mapping

from .presentation import Presentation
from .words import Word


class LaurentPoly:
    """An integer Laurent polynomial in one variable t."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[int, int] = {}
        for e, c in items:
            acc[e] = acc.get(e, 0) + c
        self.coeffs: dict[int, int] = {e: c for e, c in acc.items() if c}

    @classmethod
    def zero(cls) -> LaurentPoly:
        return cls()

    @classmethod
    def one(cls) -> LaurentPoly:
        return cls({0: 1})

    @classmethod
    def term(cls, coeff: int, exp: int) -> LaurentPoly:
        return cls({exp: coeff})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by t^k."""
        return LaurentPoly({e + k: c for e, c in self.coeffs.items()})

    def normalized(self) -> LaurentPoly:
        """Canonical unit form: lowest exponent 0, constant term positive."""
        if self.is_zero:
            return self
        low = min(self.coeffs)
        out = self.shift(-low)
        if out.coeffs[0] < 0:
            out = -out
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts: list[str] = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                t = "t" if e == 1 else f"t^{e}"
                body = t if mag == 1 else f"{mag}*{t}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"


def _poly_coeff_list(p: LaurentPoly) -> tuple[list[int], int]:
    """Shift to an ordinary polynomial; return (ascending coeffs, shift)."""
    if p.is_zero:
        return [], 0
    low = min(p.coeffs)
    high = max(p.coeffs)
    return [p.coeffs.get(e, 0) for e in range(low, high + 1)], low


def _content(f: list[int]) -> int:
    g = 0
    for c in f:
        g = gcd(g, c)
    return g


def _primitive(f: list[int]) -> list[int]:
    c = _content(f)
    if c == 0:
        return []
    out = [x // c for x in f]
    if out[-1] < 0:
        out = [-x for x in out]
    return out


def _pseudo_rem(f: list[int], g: list[int]) -> list[int]:
    """Pseudo-remainder of f by g over Z (g nonzero, deg f >= deg g)."""
    f = list(f)
    dg = len(g) - 1
    lg = g[-1]
    while len(f) - 1 >= dg and any(f):
        while f and f[-1] == 0:
            f.pop()
        if len(f) - 1 < dg:
            break
        df = len(f) - 1
        lead = f[-1]
        f = [lg * c for c in f]
        for i, gc in enumerate(g):
            f[df - dg + i] -= lead * gc
        while f and f[-1] == 0:
            f.pop()
    return f


def _zpoly_gcd(f: list[int], g: list[int]) -> list[int]:
    """Gcd in Z[t] by the primitive Euclidean algorithm."""
    f = [c for c in f]
    g = [c for c in g]
    while f and f[-1] == 0:
        f.pop()
    while g and g[-1] == 0:
        g.pop()
    if not f:
        return _primitive(g) if g else []
    if not g:
        return _primitive(f)
    cont = gcd(_content(f), _content(g))
    a, b = _primitive(f), _primitive(g)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _primitive(_pseudo_rem(a, b))
        a, b = b, r
    return [cont * c for c in a]


def laurent_gcd(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """Gcd up to units, in canonical normalized form."""
    if p.is_zero:
        return q.normalized()
    if q.is_zero:
        return p.normalized()
    fp, _ = _poly_coeff_list(p)
    fq, _ = _poly_coeff_list(q)
    g = _zpoly_gcd(fp, fq)
    return LaurentPoly(dict(enumerate(g))).normalized()


@dataclass(frozen=True)
class WeightedPresentation:
    """A presentation with an integer weight for every generator.

    The weights define the map g -> t^w(g); ``weight_defect`` lists the
    relators whose total weight is nonzero (for such relators the weight
    map does not kill them, which is worth knowing but is not an error:
    the Fox matrix is still formally defined and is computed as given).
    """

    presentation: Presentation
    weights: Mapping[str, int]

    def __post_init__(self):
        missing = [g for g in self.presentation.generators if g not in self.weights]
        if missing:
            raise ValueError(f"missing weight for generator(s) {missing}")
        object.__setattr__(
            self,
            "weights",
            {g: int(self.weights[g]) for g in self.presentation.generators},
        )

    def weight_defect(self) -> list[tuple[str, int]]:
        out = []
        for r in self.presentation.relators:
            w = sum(e * self.weights[g] for g, e in r.syllables)
            if w:
                out.append((str(r), w))
        return out


def fox_derivative(w: Word, gen: str, weights: Mapping[str, int]) -> LaurentPoly:
    """The Fox derivative d w / d gen, evaluated through the weight map.

    Follows d(uv) = du + phi(u) dv with d(g) = 1 and d(g^-1) = -t^-w(g).
    """
    out = LaurentPoly.zero()
    prefix = 0  # weight of the prefix read so far
    for g, e in w.syllables:
        if g not in weights:
            raise ValueError(f"no weight for generator {g!r}")
        wg = weights[g]
        if g == gen:
            if e > 0:
                for i in range(e):
                    out = out + LaurentPoly.term(1, prefix + i * wg)
            else:
                for i in range(1, -e + 1):
                    out = out - LaurentPoly.term(1, prefix - i * wg)
        prefix += e * wg
    return out


def alexander_matrix(wp: WeightedPresentation) -> list[list[LaurentPoly]]:
    """Rows indexed by relators, columns by generators."""
    P = wp.presentation
    return [
        [fox_derivative(r, g, wp.weights) for g in P.generators]
        for r in P.relators
    ]


def _det(matrix: list[list[LaurentPoly]]) -> LaurentPoly:
    n = len(matrix)
    if n == 0:
        return LaurentPoly.one()
    if n == 1:
        return matrix[0][0]
    out = LaurentPoly.zero()
    for j in range(n):
        if matrix[0][j].is_zero:
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in matrix[1:]]
        term = matrix[0][j] * _det(minor)
        out = out + (term if j % 2 == 0 else -term)
    return out


def alexander_polynomial(wp: WeightedPresentation) -> LaurentPoly:
    """Gcd of the (n-1)x(n-1) minors of the Alexander matrix, normalized.

    With n generators and fewer than n-1 relators the gcd is over an
    empty set of minors and the result is 0; with n = 1 the empty minor
    has determinant 1 and the polynomial is trivial.
    """
    P = wp.presentation
    n = len(P.generators)
    m = len(P.relators)
    if n == 1:
        return LaurentPoly.one()
    size = n - 1
    if m < size:
        return LaurentPoly.zero()
    matrix = alexander_matrix(wp)
    acc = LaurentPoly.zero()
    for rows in combinations(range(m), size):
        for cols in combinations(range(n), size):
            sub = [[matrix[i][j] for j in cols] for i in rows]
            acc = laurent_gcd(acc, _det(sub))
            if acc == LaurentPoly.one():
                return acc
    return acc.normalized()
