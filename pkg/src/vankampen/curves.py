"""Exact multivariate polynomial arithmetic over Q and Q(eps).

Here eps is a primitive cube root of unity handled symbolically as
Q[eps]/(eps^2 + eps + 1); exactness is the point of this module.  On top
of the ring operations sit the geometric checks: nodes of the cubic
pencil f_b = b(-x^2 - x y^2 + y) + (x^3 - x y + y^3), the parameter
values where the pencil degenerates (27 b^3 = 1 up to spurious factors),
the torus-structure identity of the sextic
(y^3 + y^2 + x^2)(y^3 + y^2 + x^2 - 4/27), and the local intersection
multiplicity of its two cubic factors in the far chart.

Resultants are computed from the Sylvester matrix with fraction-free
Bareiss elimination and exact multivariate division.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from .errors import ParseError


class QEps:
    """An element a + b*eps of Q(eps), with eps^2 = -eps - 1."""

    __slots__ = ("a", "b")

    def __init__(self, a: Any = 0, b: Any = 0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def _coerce(x: Any) -> "QEps":
        if isinstance(x, QEps):
            return x
        if isinstance(x, (int, Fraction)):
            return QEps(x)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: Any) -> "QEps":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QEps(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self) -> "QEps":
        return QEps(-self.a, -self.b)

    def __sub__(self, other: Any) -> "QEps":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Any) -> "QEps":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: Any) -> "QEps":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        # (a1 + b1 e)(a2 + b2 e) with e^2 = -e - 1
        a1, b1, a2, b2 = self.a, self.b, o.a, o.b
        return QEps(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2 - b1 * b2)

    __rmul__ = __mul__

    def conjugate(self) -> "QEps":
        return QEps(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inverse(self) -> "QEps":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(eps)")
        conj = self.conjugate()
        return QEps(conj.a / n, conj.b / n)

    def __truediv__(self, other: Any) -> "QEps":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Any) -> "QEps":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "QEps":
        base = self if n >= 0 else self.inverse()
        out = QEps(1)
        for _ in range(abs(n)):
            out = out * base
        return out

    def __eq__(self, other: Any) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __str__(self) -> str:
        if not self.b:
            return str(self.a)
        eb = "e" if self.b == 1 else "-e" if self.b == -1 else f"{self.b}*e"
        if not self.a:
            return eb
        sign = "+" if self.b > 0 else "-"
        mag = abs(self.b)
        body = "e" if mag == 1 else f"{mag}*e"
        return f"{self.a} {sign} {body}"

    def __repr__(self) -> str:
        return f"QEps({str(self)!r})"


EPS = QEps(0, 1)

FIELD_Q = "Q"
FIELD_QEPS = "Q(eps)"


def _field_of(value: Any) -> str:
    return FIELD_QEPS if isinstance(value, QEps) else FIELD_Q


def _coerce_coeff(value: Any, field: str) -> Any:
    if field == FIELD_Q:
        if isinstance(value, QEps):
            raise ValueError("field mismatch: Q(eps) coefficient in a Q polynomial")
        return Fraction(value)
    return value if isinstance(value, QEps) else QEps(value)


class MultiPoly:
    """A polynomial in named variables over Q or Q(eps).

    Terms map exponent tuples (one slot per variable, in order) to
    nonzero coefficients.  Binary operations require identical variable
    tuples and coefficient fields.
    """

    __slots__ = ("variables", "field", "terms")

    def __init__(
        self,
        variables: Sequence[str],
        terms: Mapping[tuple[int, ...], Any] | Iterable[tuple[tuple[int, ...], Any]] = (),
        field: str = FIELD_Q,
    ):
        if field not in (FIELD_Q, FIELD_QEPS):
            raise ValueError(f"unknown coefficient field {field!r}")
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable name")
        self.field = field
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, ...], Any] = {}
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != len(self.variables):
                raise ValueError("exponent tuple length mismatch")
            if any(e < 0 for e in exps):
                raise ValueError("negative exponent")
            c = _coerce_coeff(c, field)
            if exps in acc:
                acc[exps] = acc[exps] + c
            else:
                acc[exps] = c
        self.terms = {e: c for e, c in acc.items() if c}

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, value: Any, variables: Sequence[str], field: str = FIELD_Q) -> MultiPoly:
        return cls(variables, {(0,) * len(tuple(variables)): value}, field)

    @classmethod
    def variable(cls, name: str, variables: Sequence[str], field: str = FIELD_Q) -> MultiPoly:
        variables = tuple(variables)
        exps = tuple(1 if v == name else 0 for v in variables)
        if sum(exps) != 1:
            raise ValueError(f"{name!r} is not among {variables}")
        return cls(variables, {exps: 1}, field)

    def _check_compatible(self, other: MultiPoly) -> None:
        if self.variables != other.variables:
            raise ValueError("variable set mismatch")
        if self.field != other.field:
            raise ValueError("field mismatch")

    def _scalar(self, value: Any) -> MultiPoly:
        return MultiPoly.constant(value, self.variables, self.field)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: Any) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            other = self._scalar(other)
        self._check_compatible(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return MultiPoly(self.variables, out, self.field)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()}, self.field)

    def __sub__(self, other: Any) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            other = self._scalar(other)
        return self + (-other)

    def __rsub__(self, other: Any) -> MultiPoly:
        return (-self) + self._scalar(other)

    def __mul__(self, other: Any) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            other = self._scalar(other)
        self._check_compatible(other)
        out: dict[tuple[int, ...], Any] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                c = c1 * c2
                out[e] = out[e] + c if e in out else c
        return MultiPoly(self.variables, out, self.field)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MultiPoly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = self._scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return (
            self.variables == other.variables
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.variables, self.field, frozenset(self.terms.items())))

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Any:
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        zero = _coerce_coeff(0, self.field)
        return self.terms.get((0,) * len(self.variables), zero)

    def degree(self, var: str) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        i = self.variables.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def valuation(self, var: str) -> int:
        """Lowest exponent of ``var``; -1 for the zero polynomial."""
        i = self.variables.index(var)
        return min((e[i] for e in self.terms), default=-1)

    def partial(self, var: str) -> MultiPoly:
        i = self.variables.index(var)
        out: dict[tuple[int, ...], Any] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = e[:i] + (e[i] - 1,) + e[i + 1:]
            nc = c * e[i]
            out[ne] = out[ne] + nc if ne in out else nc
        return MultiPoly(self.variables, out, self.field)

    def coeffs_in(self, var: str) -> list[MultiPoly]:
        """Coefficients of var^0, var^1, ... as polynomials in the same ring."""
        i = self.variables.index(var)
        d = self.degree(var)
        buckets: list[dict[tuple[int, ...], Any]] = [{} for _ in range(d + 1)]
        for e, c in self.terms.items():
            ne = e[:i] + (0,) + e[i + 1:]
            buckets[e[i]][ne] = c
        return [MultiPoly(self.variables, b, self.field) for b in buckets]

    def substitute(self, images: Mapping[str, Any]) -> MultiPoly:
        """Map every variable to a polynomial (or scalar) and expand.

        All polynomial images must share one ring; scalars are coerced
        into it.  Every variable of self must be assigned.
        """
        missing = [v for v in self.variables if v not in images]
        if missing:
            raise ValueError(f"no image for variable(s) {missing}")
        target: MultiPoly | None = None
        for v in self.variables:
            img = images[v]
            if isinstance(img, MultiPoly):
                if target is not None:
                    img._check_compatible(target)
                target = img
        if target is None:
            raise ValueError("use evaluate() for all-scalar substitution")
        polys = {
            v: images[v] if isinstance(images[v], MultiPoly) else target._scalar(images[v])
            for v in self.variables
        }
        out = target._scalar(0)
        for e, c in self.terms.items():
            term = target._scalar(_coerce_coeff(c, target.field))
            for v, k in zip(self.variables, e):
                if k:
                    term = term * polys[v] ** k
            out = out + term
        return out

    def evaluate(self, point: Mapping[str, Any]) -> Any:
        """Exact value at a point given as variable -> field element."""
        missing = [v for v in self.variables if v not in point]
        if missing:
            raise ValueError(f"no value for variable(s) {missing}")
        vals = {v: _coerce_coeff(point[v], self.field) for v in self.variables}
        acc = _coerce_coeff(0, self.field)
        for e, c in self.terms.items():
            term = c
            for v, k in zip(self.variables, e):
                for _ in range(k):
                    term = term * vals[v]
            acc = acc + term
        return acc

    def homogenize(self, newvar: str, degree: int | None = None) -> MultiPoly:
        """Pad every term with a power of ``newvar`` up to ``degree``."""
        if newvar in self.variables:
            raise ValueError(f"variable {newvar!r} already present")
        d = self.total_degree() if degree is None else degree
        if d < self.total_degree():
            raise ValueError("degree below the total degree")
        out = {e + (d - sum(e),): c for e, c in self.terms.items()}
        return MultiPoly(self.variables + (newvar,), out, self.field)

    def to_eps_field(self) -> MultiPoly:
        """The same polynomial with coefficients promoted into Q(eps)."""
        if self.field == FIELD_QEPS:
            return self
        return MultiPoly(self.variables, dict(self.terms), FIELD_QEPS)

    # -- printing ----------------------------------------------------------

    def _sorted_terms(self) -> list[tuple[tuple[int, ...], Any]]:
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts: list[str] = []
        for e, c in self._sorted_terms():
            factors = []
            for v, k in zip(self.variables, e):
                if k == 1:
                    factors.append(v)
                elif k > 1:
                    factors.append(f"{v}^{k}")
            monomial = "*".join(factors)
            if isinstance(c, QEps):
                cs = str(c)
                coeff_body = cs if ("+" not in cs and "-" not in cs[1:] and " " not in cs) else f"({cs})"
                neg = False
            else:
                neg = c < 0
                coeff_body = str(abs(c))
            if monomial:
                body = monomial if coeff_body == "1" else f"{coeff_body}*{monomial}"
            else:
                body = coeff_body
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r})"


def poly_ring(variables: Sequence[str], field: str = FIELD_Q) -> tuple[MultiPoly, ...]:
    """Generator polynomials for each named variable."""
    variables = tuple(variables)
    return tuple(MultiPoly.variable(v, variables, field) for v in variables)


# ---------------------------------------------------------------------------
# exact division and resultants


def exact_div(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Quotient f/g when g divides f exactly; raises ValueError otherwise."""
    f._check_compatible(g)
    if g.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    quotient: dict[tuple[int, ...], Any] = {}
    rem = f
    g_lead = max(g.terms)  # lex order on exponent tuples
    g_lc = g.terms[g_lead]
    while not rem.is_zero:
        r_lead = max(rem.terms)
        diff = tuple(a - b for a, b in zip(r_lead, g_lead))
        if any(d < 0 for d in diff):
            raise ValueError("not an exact division")
        qc = rem.terms[r_lead] / g_lc
        quotient[diff] = qc
        rem = rem - MultiPoly(f.variables, {diff: qc}, f.field) * g
    return MultiPoly(f.variables, quotient, f.field)


def divides(g: MultiPoly, f: MultiPoly) -> bool:
    try:
        exact_div(f, g)
        return True
    except ValueError:
        return False


def _bareiss_det(m: list[list[MultiPoly]], ring_zero: MultiPoly) -> MultiPoly:
    """Fraction-free determinant of a square MultiPoly matrix."""
    n = len(m)
    if n == 0:
        return ring_zero + 1
    sign = 1
    prev: MultiPoly | None = None
    for k in range(n - 1):
        if m[k][k].is_zero:
            pivot = next((i for i in range(k + 1, n) if not m[i][k].is_zero), None)
            if pivot is None:
                return ring_zero
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = num if prev is None else exact_div(num, prev)
            m[i][k] = ring_zero
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    """Resultant of f and g with respect to ``var`` (Sylvester/Bareiss).

    Constants in ``var`` follow res(f, c) = c^deg(f); if both are
    constant in ``var`` the resultant is 1.
    """
    f._check_compatible(g)
    zero = MultiPoly(f.variables, (), f.field)
    if f.is_zero or g.is_zero:
        return zero
    df, dg = f.degree(var), g.degree(var)
    if df == 0 and dg == 0:
        return zero + 1
    if df == 0:
        return f ** dg
    if dg == 0:
        return g ** df
    fc = f.coeffs_in(var)
    gc = g.coeffs_in(var)
    n = df + dg
    rows: list[list[MultiPoly]] = []
    for i in range(dg):
        row = [zero] * n
        for j, c in enumerate(reversed(fc)):
            row[i + j] = c
        rows.append(row)
    for i in range(df):
        row = [zero] * n
        for j, c in enumerate(reversed(gc)):
            row[i + j] = c
        rows.append(row)
    return _bareiss_det(rows, zero)


# ---------------------------------------------------------------------------
# univariate helpers over Q (used for squarefree parts and divisibility)


def _as_univariate(f: MultiPoly, var: str) -> list[Fraction]:
    """Ascending rational coefficient list; other variables must not occur."""
    if f.field != FIELD_Q:
        raise ValueError("univariate helpers work over Q")
    i = f.variables.index(var)
    coeffs = [Fraction(0)] * (f.degree(var) + 1)
    for e, c in f.terms.items():
        if any(k for j, k in enumerate(e) if j != i):
            raise ValueError(f"polynomial is not univariate in {var!r}")
        coeffs[e[i]] = c
    return coeffs


def _uni_trim(f: list[Fraction]) -> list[Fraction]:
    f = list(f)
    while f and not f[-1]:
        f.pop()
    return f


def _uni_rem(f: list[Fraction], g: list[Fraction]) -> list[Fraction]:
    f = list(f)
    dg = len(g) - 1
    while len(f) - 1 >= dg:
        lead = f[-1] / g[-1]
        for i in range(dg + 1):
            f[len(f) - 1 - dg + i] -= lead * g[i]
        f = _uni_trim(f[:-1] + [f[-1]])
        f = _uni_trim(f)
        if not f:
            break
    return f


def _uni_gcd(f: list[Fraction], g: list[Fraction]) -> list[Fraction]:
    f, g = _uni_trim(f), _uni_trim(g)
    while g:
        f, g = g, _uni_rem(f, g)
    if f:
        lead = f[-1]
        f = [c / lead for c in f]
    return f


def _uni_to_poly(coeffs: Sequence[Fraction], var: str, ring: MultiPoly) -> MultiPoly:
    i = ring.variables.index(var)
    terms = {}
    for k, c in enumerate(coeffs):
        if c:
            e = [0] * len(ring.variables)
            e[i] = k
            terms[tuple(e)] = c
    return MultiPoly(ring.variables, terms, FIELD_Q)


def _int_normalize(f: MultiPoly) -> MultiPoly:
    """Scale a Q-polynomial to integer primitive form, positive lead term."""
    if f.is_zero or f.field != FIELD_Q:
        return f
    from math import gcd, lcm

    denom = lcm(*(c.denominator for c in f.terms.values()))
    nums = [int(c * denom) for c in f.terms.values()]
    g = 0
    for x in nums:
        g = gcd(g, x)
    scale = Fraction(denom, g)
    out = MultiPoly(f.variables, {e: c * scale for e, c in f.terms.items()}, FIELD_Q)
    lead = out.terms[max(out.terms)]
    if lead < 0:
        out = -out
    return out


def squarefree_part(f: MultiPoly, var: str) -> MultiPoly:
    """Squarefree part of a univariate Q-polynomial, integer-normalized."""
    coeffs = _uni_trim(_as_univariate(f, var))
    if not coeffs:
        raise ValueError("squarefree part of the zero polynomial")
    deriv = [c * k for k, c in enumerate(coeffs)][1:]
    g = _uni_gcd(coeffs, deriv)
    gp = _uni_to_poly(g, var, f)
    return _int_normalize(exact_div(f, gp))


# ---------------------------------------------------------------------------
# the curves under study


def cubic_pencil(b: Any) -> MultiPoly:
    """f_b = b(-x^2 - x y^2 + y) + (x^3 - x y + y^3) over Q or Q(eps)."""
    field = _field_of(b)
    x, y = poly_ring(("x", "y"), field)
    return b * (-(x ** 2) - x * y ** 2 + y) + (x ** 3 - x * y + y ** 3)


def nodal_cubic() -> MultiPoly:
    """The pencil member at b = 0."""
    return cubic_pencil(Fraction(0))


def cubic_pencil_generic() -> MultiPoly:
    """f_b with b as a polynomial variable, over Q[b, x, y]."""
    b, x, y = poly_ring(("b", "x", "y"))
    return b * (-(x ** 2) - x * y ** 2 + y) + (x ** 3 - x * y + y ** 3)


def torus_sextic_factors() -> tuple[MultiPoly, MultiPoly]:
    """The two cubics whose product is the torus-type sextic."""
    x, y = poly_ring(("x", "y"))
    u = y ** 3 + y ** 2 + x ** 2
    return u, u - Fraction(4, 27)


def torus_sextic() -> MultiPoly:
    u, v = torus_sextic_factors()
    return u * v

def chart_cubic_factors() -> tuple[MultiPoly, MultiPoly]:
    """The sextic's factors in the chart ybar = y/x, zbar = 1/x.

    Obtained from the affine factors by homogenizing to degree 3 and
    substituting (1, ybar, zbar); both pass through the origin.
    """
    ybar, zbar = poly_ring(("ybar", "zbar"))
    out = []
    for factor in torus_sextic_factors():
        h = factor.homogenize("w", 3)
        out.append(h.substitute({"x": 1, "y": ybar, "w": zbar}))
    return out[0], out[1]


@dataclass(frozen=True)
class SingularPointReport:
    """Exact vanishing data of f and its gradient at a point."""

    point: tuple[Any, Any]
    f_vanishes: bool
    fx_vanishes: bool
    fy_vanishes: bool
    hessian_det: Any

    @property
    def is_node(self) -> bool:
        return (
            self.f_vanishes
            and self.fx_vanishes
            and self.fy_vanishes
            and bool(self.hessian_det)
        )


def verify_node(f: MultiPoly, pt: Sequence[Any]) -> SingularPointReport:
    """Evaluate f, grad f, and the Hessian determinant at pt, exactly."""
    if len(f.variables) != 2:
        raise ValueError("verify_node expects a bivariate polynomial")
    xv, yv = f.variables
    point = {xv: pt[0], yv: pt[1]}
    fx, fy = f.partial(xv), f.partial(yv)
    fxx, fxy, fyy = fx.partial(xv), fx.partial(yv), fy.partial(yv)
    hess = fxx.evaluate(point) * fyy.evaluate(point) - fxy.evaluate(point) ** 2
    return SingularPointReport(
        (pt[0], pt[1]),
        not f.evaluate(point),
        not fx.evaluate(point),
        not fy.evaluate(point),
        hess,
    )


@dataclass(frozen=True)
class TorusStructureReport:
    holds: bool
    constant: Fraction | None


def verify_torus_structure(outer_shift: Fraction = Fraction(4, 27)) -> TorusStructureReport:
    """Check u(u - outer_shift) - (u - 2/27)^2 is constant, u = y^3+y^2+x^2.

    With the true shift 4/27 the difference is the constant -4/729; any
    other shift leaves a non-constant difference and the check fails.
    """
    x, y = poly_ring(("x", "y"))
    u = y ** 3 + y ** 2 + x ** 2
    diff = u * (u - outer_shift) - (u - Fraction(2, 27)) ** 2
    if not diff.is_constant():
        return TorusStructureReport(False, None)
    return TorusStructureReport(True, diff.constant_value())


def singular_parameters() -> MultiPoly:
    """Parameters b where f_b has an affine singular point: eliminate x, y.

    Iterated resultants: eliminate x from the pairs (f, f_x), (f, f_y),
    and (f_x, f_y), then eliminate y along two independent routes and
    intersect the eliminants (univariate gcd) to discard route-specific
    spurious factors.  Returns the squarefree part, integer-normalized;
    every parameter with an affine singular point is a root.  Raises
    ValueError if an elimination step degenerates to the zero
    polynomial.
    """
    f = cubic_pencil_generic()
    a = resultant(f, f.partial("x"), "x")
    bb = resultant(f, f.partial("y"), "x")
    c = resultant(f.partial("x"), f.partial("y"), "x")
    if a.is_zero or bb.is_zero or c.is_zero:
        raise ValueError("degenerate elimination: vanishing resultant in x")
    r1 = resultant(a, c, "y")
    r2 = resultant(bb, c, "y")
    if r1.is_zero or r2.is_zero:
        raise ValueError("degenerate elimination: vanishing resultant in y")
    g = _uni_gcd(
        _as_univariate(squarefree_part(r1, "b"), "b"),
        _as_univariate(squarefree_part(r2, "b"), "b"),
    )
    return _int_normalize(_uni_to_poly(g, "b", r1))


def pencil_singular_candidates(b_value: Any) -> MultiPoly:
    """Gcd in y of the three specialized elimination resultants at b_value.

    Eliminates x from each pair drawn from {f, f_x, f_y} at the given
    parameter and intersects the root sets.  A singular point's
    y-coordinate is a root of all three (f_b is monic of degree 3 in x,
    so no solution escapes to infinity); a constant result certifies
    there is no affine singular point.
    """
    f = cubic_pencil(Fraction(b_value))
    fx, fy = f.partial("x"), f.partial("y")
    g: list[Fraction] | None = None
    for lhs, rhs in ((f, fx), (f, fy), (fx, fy)):
        r = _as_univariate(resultant(lhs, rhs, "x"), "y")
        g = r if g is None else _uni_gcd(g, r)
    assert g is not None
    return _int_normalize(_uni_to_poly(g, "y", f)) if g else f._scalar(0)


def intersection_multiplicity_origin(
    g: MultiPoly, h: MultiPoly, yvar: str = "ybar", zvar: str = "zbar"
) -> int:
    """Order of vanishing at zvar = 0 of res_yvar(g, h).

    Valid (and checked) when both curves pass through the origin, they
    share no component, their only common point on the line zvar = 0 is
    the origin, and no yvar-leading coefficient vanishes at zvar = 0.
    """
    for f in (g, h):
        if set(f.variables) != {yvar, zvar}:
            raise ValueError(f"expected polynomials in {yvar!r}, {zvar!r}")
        if f.evaluate({yvar: 0, zvar: 0}):
            raise ValueError("curve does not pass through the origin")
    g_line = g.substitute({yvar: MultiPoly.variable(yvar, g.variables), zvar: 0})
    h_line = h.substitute({yvar: MultiPoly.variable(yvar, h.variables), zvar: 0})
    if g_line.is_zero and h_line.is_zero:
        raise ValueError("both curves contain the line zvar = 0")
    for f, f_line in ((g, g_line), (h, h_line)):
        if f_line.is_zero:
            continue
        # common points on the line must be confined to the origin
        other = h_line if f is g else g_line
        if other.is_zero:
            if not _is_monomial_in(f_line, yvar):
                raise ValueError("degenerate direction: extra common points on zvar = 0")
        dy = f.degree(yvar)
        if dy > 0:
            lead = f.coeffs_in(yvar)[dy]
            if not lead.evaluate({yvar: 0, zvar: 0}):
                raise ValueError("degenerate direction: leading coefficient vanishes at zvar = 0")
    if not g_line.is_zero and not h_line.is_zero:
        common = _uni_gcd(_as_univariate(g_line, yvar), _as_univariate(h_line, yvar))
        if sum(1 for c in common if c) > 1:
            raise ValueError("degenerate direction: extra common points on zvar = 0")
    r = resultant(g, h, yvar)
    if r.is_zero:
        raise ValueError("common factor: resultant vanishes identically")
    return r.valuation(zvar)


def _is_monomial_in(f: MultiPoly, var: str) -> bool:
    return len(f.terms) == 1


# ---------------------------------------------------------------------------
# text grammar


_POLY_TOKEN = re.compile(
    r"(?P<num>\d+(?:/\d+)?)|(?P<var>[A-Za-z_][A-Za-z0-9_]*)(?:\^(?P<exp>-?\d+))?"
    r"|(?P<op>[+*-])|(?P<ws>\s+)"
)


def parse_polynomial(text: str, variables: Sequence[str] | None = None) -> MultiPoly:
    """Parse the grammar ``y^3 + y^2 + x^2 - 4/27`` over Q.

    Terms are separated by + or -; factors within a term are separated
    by ``*`` (or whitespace).  Variables default to the sorted set of
    names appearing in the text.
    """
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    while pos < len(text):
        m = _POLY_TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"bad character {text[pos]!r}", 1, pos + 1)
        if m.group("var") is not None:
            exp = m.group("exp")
            if exp is not None:
                if int(exp) < 0:
                    raise ParseError("negative exponent", 1, pos + 1)
                if int(exp) == 0:
                    raise ParseError("zero exponent", 1, pos + 1)
                tokens.append(("varpow", f"{m.group('var')}^{exp}", pos + 1))
            else:
                tokens.append(("varpow", m.group("var"), pos + 1))
        elif m.group("num") is not None:
            tokens.append(("num", m.group("num"), pos + 1))
        elif m.group("op") is not None:
            tokens.append(("op", m.group("op"), pos + 1))
        pos = m.end()
    if not tokens:
        raise ParseError("empty polynomial", 1, 1)

    # split into signed terms
    terms: list[tuple[int, list[tuple[str, str, int]]]] = []
    sign = 1
    factors: list[tuple[str, str, int]] = []
    expecting_factor = True
    for kind, val, col in tokens:
        if kind == "op" and val in "+-":
            if expecting_factor and factors:
                raise ParseError("dangling operator", 1, col)
            if factors:
                terms.append((sign, factors))
                factors = []
                sign = 1
            if val == "-":
                sign = -sign
            expecting_factor = True
        elif kind == "op" and val == "*":
            if expecting_factor:
                raise ParseError("misplaced '*'", 1, col)
            expecting_factor = True
        else:
            factors.append((kind, val, col))
            expecting_factor = False
    if expecting_factor and not factors:
        raise ParseError("dangling operator", 1, len(text))
    if factors:
        terms.append((sign, factors))

    seen: set[str] = set()
    parsed: list[tuple[int, Fraction, dict[str, int]]] = []
    for sgn, fs in terms:
        coeff = Fraction(1)
        exps: dict[str, int] = {}
        for kind, val, col in fs:
            if kind == "num":
                if "/" in val:
                    n, d = val.split("/")
                    if int(d) == 0:
                        raise ParseError("zero denominator", 1, col)
                    coeff *= Fraction(int(n), int(d))
                else:
                    coeff *= int(val)
            else:
                name, _, e = val.partition("^")
                k = int(e) if e else 1
                exps[name] = exps.get(name, 0) + k
                seen.add(name)
        parsed.append((sgn, coeff, exps))

    var_tuple = tuple(variables) if variables is not None else tuple(sorted(seen))
    unknown = seen - set(var_tuple)
    if unknown:
        raise ParseError(f"unknown variable(s) {sorted(unknown)}", 1, 1)
    ring_terms: list[tuple[tuple[int, ...], Any]] = []
    for sgn, coeff, exps in parsed:
        e = tuple(exps.get(v, 0) for v in var_tuple)
        ring_terms.append((e, sgn * coeff))
    return MultiPoly(var_tuple, ring_terms, FIELD_Q)
