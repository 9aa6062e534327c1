"""Coset enumeration: indices, quotient orders, overflow, brute-force cross-checks."""

import math
import random

from vankampen.coset import CosetTable, Overflow, enumerate_cosets, quotient_order
from vankampen.presentation import parse_presentation
from vankampen.words import Word, parse_word

LEMMA = "gens: p, g+; rels: p^4 g+^-1 p^-1 g+, p^9"


def test_index_of_cyclic_subgroup_in_lemma_group():
    pres = parse_presentation(LEMMA)
    table = enumerate_cosets(pres, subgroup=(parse_word("g+"),))
    assert isinstance(table, CosetTable)
    assert table.count == 9


def test_symmetric_group_order_six():
    pres = parse_presentation("gens: a, b; rels: a^2, b^2, a b a b a b")
    assert quotient_order(pres) == 6


def test_lemma_group_is_infinite_within_budget():
    pres = parse_presentation(LEMMA)
    result = enumerate_cosets(pres, max_cosets=500)
    assert result == Overflow(500)


def test_quotient_orders_with_extra_relators():
    pres = parse_presentation(LEMMA)
    cubed = (parse_word("g+^3"),)
    assert quotient_order(pres, extra_relators=cubed) == 27
    # killing g+ turns the conjugation relator into p^3, leaving Z/3
    assert quotient_order(pres, extra_relators=(parse_word("g+"),)) == 3
    assert quotient_order(pres, extra_relators=(parse_word("g+"), parse_word("p"))) == 1


def test_trivial_and_cyclic_quotients():
    assert quotient_order(parse_presentation("gens: a; rels: a")) == 1
    assert quotient_order(parse_presentation("gens: a; rels: a^12")) == 12


def test_table_action_respects_relators_and_subgroup():
    pres = parse_presentation(LEMMA)
    sub = (parse_word("g+"),)
    table = enumerate_cosets(pres, subgroup=sub)
    for w in sub:
        assert table.act_word(0, w) == 0
    for c in range(table.count):
        for r in pres.relators:
            assert table.act_word(c, r) == c
        for g in pres.generators:
            assert table.act(table.act(c, g, 1), g, -1) == c


def test_enumeration_is_deterministic():
    pres = parse_presentation(LEMMA)
    t1 = enumerate_cosets(pres, subgroup=(parse_word("g+"),))
    t2 = enumerate_cosets(pres, subgroup=(parse_word("g+"),))
    assert t1 == t2


def multiplicative_order_mod(s, n):
    m, power = 1, s % n
    while power != 1 % n:
        power = power * s % n
        m += 1
    return m


def brute_force_metacyclic_order(n, s, m):
    """Count pairs reachable in Z/n x| Z/m where b a b^-1 = a^s."""
    seen = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        a, b = frontier.pop()
        for da, db in ((1, 0), (0, 1)):
            na = (a + da * pow(s, b, n)) % n
            nb = (b + db) % m
            if (na, nb) not in seen:
                seen.add((na, nb))
                frontier.append((na, nb))
    return len(seen)


def test_metacyclic_orders_match_brute_force():
    rng = random.Random(27)
    cases = [
        (n, s)
        for n in range(2, 13)
        for s in range(2, n)
        if math.gcd(s, n) == 1
    ]
    rng.shuffle(cases)
    for n, s in cases[:8]:
        m = multiplicative_order_mod(s, n)
        text = f"gens: a, b; rels: a^{n}, b a b^-1 a^-{s}, b^{m}"
        pres = parse_presentation(text)
        assert quotient_order(pres) == brute_force_metacyclic_order(n, s, m) == n * m


def test_overflow_propagates_from_quotient_order():
    pres = parse_presentation("gens: a, b; rels:")
    assert quotient_order(pres, max_cosets=200) == Overflow(200)
