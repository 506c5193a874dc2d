"""Coefficient-ring operators: membership, criteria, bounds, lifts."""

import math
import random
from fractions import Fraction

import pytest

from mathieulab.corealg import (
    Poly,
    QQ_POLY,
    RingElement,
    exact_divide,
    parse_poly,
    parse_ring_element,
    poly_one,
    ring_monomial,
    ring_scalar,
    t_monomial,
)
from mathieulab.errors import BadInput, NotInRadical
from mathieulab.ufdlab import (
    UfdContext,
    absorption_bound,
    factorial_map,
    gcd_lift,
    member_ufd,
    member_via_factorial,
    parse_trunc_context,
    parse_ufd_context,
    radical_via_coefficients,
    s_of,
    surjectivity_check,
    va_valuation,
)

X = ring_monomial(QQ_POLY, 1)
X2 = ring_monomial(QQ_POLY, 2)
XX1 = parse_ring_element("x^2 - x", QQ_POLY)  # x(x - 1)

CTX_X = UfdContext(QQ_POLY, X)
CTX_X2 = UfdContext(QQ_POLY, X2)
CTX_XX1 = UfdContext(QQ_POLY, XX1)
ALL_CTX = (CTX_X, CTX_X2, CTX_XX1)


def rand_p(rng, max_deg=4, coeff_deg=3, height=5):
    coeffs = []
    for _ in range(rng.randint(0, max_deg + 1)):
        data = [Fraction(rng.randint(-height, height)) for _ in range(rng.randint(0, coeff_deg + 1))]
        coeffs.append(RingElement(QQ_POLY, tuple(data)))
    return Poly(QQ_POLY, tuple(coeffs))


def test_context_validation():
    with pytest.raises(BadInput):
        UfdContext(QQ_POLY, ring_scalar(QQ_POLY, 0))
    with pytest.raises(BadInput):
        UfdContext(QQ_POLY, ring_scalar(QQ_POLY, 3))  # unit
    assert parse_ufd_context("ufd:a=x^2").a == X2


def test_member_examples():
    ok, w = member_ufd(CTX_X2, parse_poly("x^2*t - 1", QQ_POLY))
    assert ok and w == parse_poly("-t", QQ_POLY)
    assert CTX_X2.apply(w) == parse_poly("x^2*t - 1", QQ_POLY)
    ok, w = member_ufd(CTX_X2, parse_poly("x*t", QQ_POLY))
    assert not ok and w is None
    ok, w = member_ufd(CTX_X2, parse_poly("x^2", QQ_POLY))
    assert ok and w == parse_poly("-1", QQ_POLY)


def test_factorial_map_examples():
    assert factorial_map(parse_poly("t^2 - 2", QQ_POLY)).is_zero
    assert factorial_map(poly_one(QQ_POLY)) == ring_scalar(QQ_POLY, 1)
    assert factorial_map(parse_poly("t^3", QQ_POLY)) == ring_scalar(QQ_POLY, 6)


def test_member_via_factorial_examples():
    assert member_via_factorial(CTX_X2, parse_poly("t^2 - 2", QQ_POLY))
    assert not member_via_factorial(CTX_X2, parse_poly("t + 1", QQ_POLY))
    assert not member_via_factorial(CTX_X2, parse_poly("t", QQ_POLY))


def test_radical_examples():
    assert radical_via_coefficients(CTX_X2, parse_poly("x*t", QQ_POLY))
    assert not radical_via_coefficients(CTX_X2, parse_poly("t", QQ_POLY))
    assert radical_via_coefficients(CTX_XX1, parse_poly("x^2 - x", QQ_POLY) * parse_poly("t^2", QQ_POLY))


def test_absorption_bound_examples():
    assert absorption_bound(CTX_X2, parse_poly("x*t", QQ_POLY), parse_poly("t", QQ_POLY)) == 4
    assert absorption_bound(CTX_X, parse_poly("x*t", QQ_POLY), poly_one(QQ_POLY)) == 1
    assert absorption_bound(CTX_X2, parse_poly("x*t", QQ_POLY), parse_poly("t^2", QQ_POLY)) == 6
    with pytest.raises(NotInRadical):
        absorption_bound(CTX_X2, parse_poly("t", QQ_POLY), poly_one(QQ_POLY))


def test_gcd_lift_examples():
    u, lifted = gcd_lift(X2, [X, ring_monomial(QQ_POLY, 3)])
    assert u == X and lifted == [ring_scalar(QQ_POLY, 1), X2]
    u, lifted = gcd_lift(ring_monomial(QQ_POLY, 3), [X])
    assert u == X2 and lifted == [ring_scalar(QQ_POLY, 1)]
    a = parse_ring_element("x^3 - x^2", QQ_POLY)  # x^2 (x - 1)
    d1 = parse_ring_element("x^2 - x", QQ_POLY)
    u, lifted = gcd_lift(a, [d1, a])
    assert u == X and lifted == [ring_scalar(QQ_POLY, 1), X]


def test_gcd_lift_postconditions_random():
    rng = random.Random(83)
    bases = [X2, ring_monomial(QQ_POLY, 3), parse_ring_element("x^3 - x^2", QQ_POLY)]
    from mathieulab.corealg import squarefree_part

    for _ in range(40):
        a = rng.choice(bases)
        rho = squarefree_part(a)
        d_list = []
        for _ in range(rng.randint(1, 3)):
            scale = RingElement(QQ_POLY, tuple(Fraction(rng.randint(-3, 3)) for _ in range(rng.randint(1, 3))))
            if scale.is_zero:
                scale = ring_scalar(QQ_POLY, 1)
            d_list.append(rho * scale)
        if all(exact_divide(d, a) is not None for d in d_list):
            continue
        u, lifted = gcd_lift(a, d_list)
        for d, dt in zip(d_list, lifted):
            assert u * d == dt * a
        assert any(exact_divide(dt, rho) is None for dt in lifted if not dt.is_zero)


def test_valuation_examples():
    assert va_valuation(CTX_X2, ring_monomial(QQ_POLY, 6), 1) == 2
    assert va_valuation(CTX_X2, ring_scalar(QQ_POLY, 0), 0) == math.inf
    f = parse_poly("x^2*t + x^6*t", QQ_POLY)
    assert s_of(CTX_X2, f) == 0


def test_power_congruence_identities():
    # a^n t^n - n! lies in the image, for each test element and n <= 10
    for ctx in ALL_CTX:
        fact = 1
        apow = ring_scalar(QQ_POLY, 1)
        for n in range(11):
            if n:
                fact *= n
                apow = apow * ctx.a
            f = t_monomial(QQ_POLY, n, apow) - poly_one(QQ_POLY).scale(Fraction(fact))
            ok, witness = member_ufd(ctx, f)
            assert ok
            if witness is not None and not f.is_zero:
                assert ctx.apply(witness) == f


def test_ideal_tail_members():
    # a^(n+1) t^n r lies in the image for every coefficient-ring element r
    rng = random.Random(89)
    for ctx in ALL_CTX:
        for _ in range(8):
            n = rng.randint(0, 6)
            r = RingElement(QQ_POLY, tuple(Fraction(rng.randint(-5, 5))
                                           for _ in range(rng.randint(1, 4))))
            f = t_monomial(QQ_POLY, n, ctx.a ** (n + 1) * r)
            assert member_ufd(ctx, f)[0]


def test_factorial_criterion_matches_solver():
    rng = random.Random(97)
    for _ in range(60):
        ctx = ALL_CTX[rng.randrange(3)]
        p = rand_p(rng)
        assert member_via_factorial(ctx, p) == member_ufd(ctx, p.scale_argument(ctx.a))[0]


def test_radical_implies_absorption():
    rng = random.Random(101)
    from mathieulab.corealg import squarefree_part

    for ctx in ALL_CTX:
        rho = squarefree_part(ctx.a)
        p = Poly(QQ_POLY, (rho, rho * 2)) * rand_p(rng, max_deg=1, coeff_deg=1)
        if p.is_zero or not radical_via_coefficients(ctx, p):
            continue
        g = parse_poly("t + 1", QQ_POLY)
        bound = absorption_bound(ctx, p, g)
        f = p.scale_argument(ctx.a)
        for m in range(bound, bound + 4):
            assert member_ufd(ctx, g * f ** m)[0]


def test_surjectivity_truncated_example():
    ring, c, a = parse_trunc_context("trunc:k=2,c=1,a=x")
    report = surjectivity_check(ring, c, a, 10)
    assert report.status == "ONE_IN_IMAGE"
    assert report.one_witness == parse_poly("t + 1/2*x*t^2", ring)
    assert report.unresolved == ()
    assert len(report.monomials) == 11
    for n, witness in report.monomials:
        image = witness.derivative().scale(c) - a * witness
        assert image == t_monomial(ring, n)


def test_surjectivity_field_case():
    ring, c, a = parse_trunc_context("trunc:k=1,c=1,a=1")
    report = surjectivity_check(ring, c, a, 6)
    assert report.status == "ONE_IN_IMAGE" and report.unresolved == ()


def test_surjectivity_structurally_blocked():
    ring, c, a = parse_trunc_context("trunc:k=2,c=0,a=x")
    report = surjectivity_check(ring, c, a, 5)
    assert report.status == "UNDECIDED_ONE"
    assert report.note is not None and "proper ideal" in report.note


def test_surjectivity_never_reports_counterexample():
    cases = ["trunc:k=2,c=1,a=x", "trunc:k=1,c=1,a=1", "trunc:k=3,c=1,a=x",
             "trunc:k=2,c=1,a=1+x*t"]
    for text in cases:
        ring, c, a = parse_trunc_context(text)
        report = surjectivity_check(ring, c, a, 6)
        if report.status == "ONE_IN_IMAGE":
            assert report.unresolved == ()
