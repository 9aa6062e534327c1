"""Exact curve checks: cube-root field, polynomial ring, nodes, resultants."""

import random
from fractions import Fraction

import pytest

from vankampen.curves import (
    EPS,
    MultiPoly,
    QEps,
    chart_cubic_factors,
    cubic_pencil,
    divides,
    exact_div,
    intersection_multiplicity_origin,
    nodal_cubic,
    parse_polynomial,
    pencil_singular_candidates,
    poly_ring,
    resultant,
    singular_parameters,
    squarefree_part,
    torus_sextic,
    torus_sextic_factors,
    verify_node,
    verify_torus_structure,
)
from vankampen.errors import ParseError


def rand_fraction(rng, span=6):
    return Fraction(rng.randint(-span, span), rng.randint(1, 4))


def rand_poly(rng, variables, field="Q", nterms=4, max_exp=3):
    terms = {}
    for _ in range(nterms):
        exps = tuple(rng.randint(0, max_exp) for _ in variables)
        coeff = rand_fraction(rng)
        if field == "Q(eps)":
            coeff = QEps(coeff, rand_fraction(rng))
        terms[exps] = coeff
    return MultiPoly(variables, terms, field)


# -- the cube-root-of-unity field ------------------------------------------


def test_eps_is_primitive_cube_root():
    assert EPS**3 == QEps(1)
    assert EPS**2 + EPS + QEps(1) == QEps(0)
    assert EPS**-1 == EPS**2
    assert EPS * EPS.inverse() == QEps(1)


def test_eps_conjugation_and_norm():
    z = QEps(Fraction(2), Fraction(-3))
    assert z.conjugate().conjugate() == z
    assert z * z.conjugate() == QEps(z.norm())
    assert z.norm() == Fraction(4) + Fraction(6) + Fraction(9)
    assert (z * z.inverse()) == QEps(1)


def test_eps_field_arithmetic_random():
    rng = random.Random(11)
    for _ in range(25):
        a = QEps(rand_fraction(rng), rand_fraction(rng))
        b = QEps(rand_fraction(rng), rand_fraction(rng))
        c = QEps(rand_fraction(rng), rand_fraction(rng))
        assert a * (b + c) == a * b + a * c
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()
        if b != QEps(0):
            assert (a / b) * b == a


def test_eps_str_forms():
    assert str(EPS) == "e"
    assert str(-EPS) == "-e"
    assert str(EPS * EPS) == "-1 - e"
    assert str(QEps(Fraction(1, 2), Fraction(-3, 4))) == "1/2 - 3/4*e"
    assert str(QEps(0)) == "0"


# -- polynomial ring basics --------------------------------------------------


def test_poly_arithmetic_is_a_ring_hom_under_evaluation():
    rng = random.Random(23)
    vs = ("x", "y")
    for field in ("Q", "Q(eps)"):
        for _ in range(15):
            f = rand_poly(rng, vs, field)
            g = rand_poly(rng, vs, field)
            h = rand_poly(rng, vs, field)
            pt = {v: rand_fraction(rng) for v in vs}
            if field == "Q(eps)":
                pt = {v: QEps(rand_fraction(rng), rand_fraction(rng)) for v in vs}
            lhs = (f * g + h).evaluate(pt)
            rhs = f.evaluate(pt) * g.evaluate(pt) + h.evaluate(pt)
            assert lhs == rhs


def test_exact_division_round_trip():
    rng = random.Random(37)
    vs = ("x", "y")
    for _ in range(20):
        f = rand_poly(rng, vs)
        g = rand_poly(rng, vs)
        if g.is_zero:
            continue
        assert exact_div(f * g, g) == f
        assert divides(g, f * g)


def test_exact_division_failure():
    x, y = poly_ring(("x", "y"))
    p = x * x + y
    with pytest.raises(ValueError):
        exact_div(p, y)
    assert not divides(y, p)


def test_substitute_translation_preserves_nodes():
    rng = random.Random(41)
    f = cubic_pencil(Fraction(1, 3))
    x, y = poly_ring(("x", "y"))
    for _ in range(5):
        a, b = rand_fraction(rng), rand_fraction(rng)
        ax = MultiPoly.constant(a, ("x", "y"))
        by = MultiPoly.constant(b, ("x", "y"))
        shifted = f.substitute({"x": x + ax, "y": y + by})
        report = verify_node(shifted, (Fraction(2, 5) - a, Fraction(1, 5) - b))
        assert report.is_node
        assert report.hessian_det == verify_node(f, (Fraction(2, 5), Fraction(1, 5))).hessian_det


def test_resultant_specializes_correctly():
    # for polynomials monic in x, res_x commutes with substituting b
    rng = random.Random(53)
    vs = ("b", "x")
    b, x = poly_ring(vs)
    for _ in range(10):
        f = x * x * x + rand_poly(rng, vs, nterms=3, max_exp=2) * x + b
        g = x * x + rand_poly(rng, vs, nterms=2, max_exp=2)
        r = resultant(f, g, "x")
        val = rand_fraction(rng)
        spec = {"b": MultiPoly.constant(val, vs), "x": x}
        lhs = r.substitute(spec)
        rhs = resultant(f.substitute(spec), g.substitute(spec), "x")
        assert lhs == rhs


def test_resultant_of_constants():
    vs = ("x",)
    (x,) = poly_ring(vs)
    three = MultiPoly.constant(3, vs)
    assert resultant(x * x + three, three, "x") == MultiPoly.constant(9, vs)
    assert resultant(three, x * x + three, "x") == MultiPoly.constant(9, vs)


def test_squarefree_part():
    p = parse_polynomial("x^3 - 3 x + 2")  # (x - 1)^2 (x + 2)
    assert str(squarefree_part(p, "x")) == "x^2 + x - 2"


# -- parsing ------------------------------------------------------------------


def test_parse_round_trip_random():
    rng = random.Random(67)
    for _ in range(20):
        f = rand_poly(rng, ("x", "y"), nterms=5)
        assert parse_polynomial(str(f), variables=("x", "y")) == f


def test_parse_accepts_fractions_and_juxtaposition():
    f = parse_polynomial("2/3 x^2 y - y + 1")
    g = parse_polynomial("2/3*x^2*y - y + 1")
    assert f == g


def test_parse_error_positions():
    cases = [
        ("x^0", 1, "zero exponent"),
        ("x^-2", 1, "negative exponent"),
        ("2/0 x", 1, "zero denominator"),
        ("x +", 3, "dangling operator"),
        ("* x", 1, "misplaced '*'"),
        ("", 1, "empty polynomial"),
        ("x $", 3, "bad character"),
    ]
    for text, col, fragment in cases:
        with pytest.raises(ParseError) as info:
            parse_polynomial(text)
        assert info.value.column == col
        assert fragment in str(info.value)


def test_parse_rejects_unknown_variables():
    with pytest.raises(ParseError) as info:
        parse_polynomial("x z", variables=("x", "y"))
    assert "unknown variable" in str(info.value)


# -- the cubic pencil ---------------------------------------------------------


def test_nodal_member_has_node_at_origin():
    report = verify_node(nodal_cubic(), (0, 0))
    assert report.is_node
    assert report.hessian_det == Fraction(-1)


def test_rational_member_has_node():
    report = verify_node(cubic_pencil(Fraction(1, 3)), (Fraction(2, 5), Fraction(1, 5)))
    assert report.is_node
    assert report.hessian_det == Fraction(1, 3)


def test_candidate_locus_matches_member():
    assert str(pencil_singular_candidates(Fraction(1, 3))) == "5*y - 1"
    assert str(pencil_singular_candidates(Fraction(1))) == "1"


def test_singular_parameter_polynomial():
    p = singular_parameters()
    assert str(p) == "108*b^7 - 733*b^4 + 27*b"
    factor = parse_polynomial("27 b^3 - 1", variables=p.variables)
    assert divides(factor, p)
    # roots: b = 0 and the roots of the two cubic factors; b = 1 is none of them
    def at(b):
        return p.evaluate({"b": b, "x": Fraction(0), "y": Fraction(0)})

    assert at(Fraction(0)) == 0
    assert at(Fraction(1, 3)) == 0
    assert at(Fraction(1)) != 0


def test_cube_root_members_have_nodes():
    b = EPS / QEps(3)
    f = cubic_pencil(b)
    node = (Fraction(2, 5) * EPS, Fraction(1, 5) * EPS.inverse())
    report = verify_node(f, node)
    assert report.is_node
    assert report.hessian_det == QEps(Fraction(1, 3))
    # the coordinate-swapped point lies on the conjugate member, not on f
    swapped = (Fraction(2, 5) * EPS.inverse(), Fraction(1, 5) * EPS)
    assert f.evaluate({"x": swapped[0], "y": swapped[1]}) != QEps(0)
    conj = cubic_pencil(EPS.inverse() / QEps(3))
    assert verify_node(conj, swapped).is_node


# -- the torus sextic ---------------------------------------------------------


def test_sextic_is_product_of_its_cubic_factors():
    f1, f2 = torus_sextic_factors()
    assert f1 * f2 == torus_sextic()
    four = MultiPoly.constant(Fraction(4, 27), ("x", "y"))
    assert f1 - f2 == four


def test_torus_structure_identity():
    report = verify_torus_structure()
    assert report.holds
    assert report.constant == Fraction(-4, 729)


def test_torus_structure_fails_when_perturbed():
    report = verify_torus_structure(outer_shift=Fraction(5, 27))
    assert not report.holds


def test_chart_factors_and_sextic_agree():
    g, h = chart_cubic_factors()
    assert str(g) == "ybar^3 + ybar^2*zbar + zbar"
    assert str(h) == "ybar^3 + ybar^2*zbar - 4/27*zbar^3 + zbar"
    vs = ("x", "y")
    chart = torus_sextic().homogenize("w", 6).substitute(
        {
            "x": MultiPoly.constant(1, ("x", "y", "w")),
            "y": MultiPoly.variable("y", ("x", "y", "w")),
            "w": MultiPoly.variable("w", ("x", "y", "w")),
        }
    )
    product = (g * h).substitute(
        {
            "ybar": MultiPoly.variable("y", ("x", "y", "w")),
            "zbar": MultiPoly.variable("w", ("x", "y", "w")),
        }
    )
    assert chart == product


# -- intersection multiplicities ----------------------------------------------


def series_mul(a, b, order):
    out = [Fraction(0)] * order
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if i + j < order:
                out[i + j] += ai * bj
    return out


def solve_branch(cubic_shift, order):
    """Series z(y) with z (1 + y^2) = -y^3 + shift * z^3, truncated."""
    z = [Fraction(0)] * order
    inv = [Fraction(0)] * order  # (1 + y^2)^-1 = 1 - y^2 + y^4 - ...
    for k in range(0, order, 2):
        inv[k] = Fraction((-1) ** (k // 2))
    for _ in range(order):
        rhs = [Fraction(0)] * order
        if order > 3:
            rhs[3] = Fraction(-1)
        cube = series_mul(series_mul(z, z, order), z, order)
        for k in range(order):
            rhs[k] += cubic_shift * cube[k]
        z = series_mul(rhs, inv, order)
    return z


def test_chart_intersection_multiplicity_is_nine():
    g, h = chart_cubic_factors()
    assert intersection_multiplicity_origin(g, h) == 9
    # independent oracle: solve both branches as series z(y), compare orders
    order = 14
    zg = solve_branch(Fraction(0), order)
    zh = solve_branch(Fraction(4, 27), order)
    diff = [a - b for a, b in zip(zg, zh)]
    first = next(k for k, c in enumerate(diff) if c)
    assert first == 9


def test_small_intersection_multiplicities():
    vs = ("ybar", "zbar")
    yb, zb = poly_ring(vs)
    assert intersection_multiplicity_origin(yb, zb) == 1
    assert intersection_multiplicity_origin(yb, yb - zb * zb) == 2
    # parabola against cusp: restricting ybar = zbar^2 leaves zbar^4 - zbar^3
    assert intersection_multiplicity_origin(yb - zb * zb, yb * yb - zb * zb * zb) == 3


def test_intersection_multiplicity_guards():
    vs = ("ybar", "zbar")
    yb, zb = poly_ring(vs)
    with pytest.raises(ValueError):
        intersection_multiplicity_origin(yb + MultiPoly.constant(1, vs), zb)
    with pytest.raises(ValueError):
        intersection_multiplicity_origin(zb * yb, zb * (yb + zb))
    with pytest.raises(ValueError):
        intersection_multiplicity_origin(yb, yb * (yb + zb))
