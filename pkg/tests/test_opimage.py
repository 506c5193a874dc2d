"""Operator-image calculus: worked examples and structural invariants.

Expected values marked as derived are computed by independent oracles
inside this module: direct differentiation for witness identities, the
Gaussian and Laguerre moment recursions for normal-form constants.
"""

import random
from fractions import Fraction

import pytest

from mathieulab.corealg import (
    QQ,
    parse_poly,
    poly_one,
    qq_poly,
    t_monomial,
)
from mathieulab.errors import BadInput, DegenerateDiagonal, UnsupportedReduction
from mathieulab.opimage import (
    JacobiOperator,
    MonomialOperator,
    apply_operator,
    hermite_operator,
    im_structure,
    laguerre_operator,
    lzero,
    member,
    parse_operator,
    reduce,
)


def double_factorial_odd(q):
    """(2q-1)!! as an exact fraction."""
    out = Fraction(1)
    for j in range(1, q + 1):
        out *= 2 * j - 1
    return out


def gaussian_moment(q):
    """Normalized even moment of exp(-t^2): (2q-1)!! / 2^q."""
    return double_factorial_odd(q) / 2 ** q


def laguerre_moment(alpha, q):
    """Normalized moment of t^alpha exp(-t): prod_{j=1..q} (alpha + j)."""
    out = Fraction(1)
    for j in range(1, q + 1):
        out *= alpha + j
    return out


def rand_qq(rng, max_deg=6, height=9):
    coeffs = [Fraction(rng.randint(-height, height)) for _ in range(rng.randint(1, max_deg + 1))]
    return qq_poly(coeffs)


MONOMIAL_SAMPLE = [
    MonomialOperator(1, 0, 1, 1),
    MonomialOperator(1, 0, 2, 1),
    MonomialOperator(1, 1, 1, 0),
    MonomialOperator(1, Fraction(1, 2), 1, 2),
    MonomialOperator(2, Fraction(-1, 3), Fraction(3, 2), 1),
    MonomialOperator(1, -1, 1, 1),
]

JACOBI_SAMPLE = [
    JacobiOperator(1, 1),
    JacobiOperator(1, 2),
    JacobiOperator(Fraction(1, 2), Fraction(1, 2)),
    JacobiOperator(1, 0),
    JacobiOperator(0, 1),
    JacobiOperator(0, 0),
]


# -- reduce -------------------------------------------------------------------

def test_reduce_examples():
    op = MonomialOperator(1, 0, 1, 1)
    rr = reduce(op, parse_poly("t^3"))
    assert rr.normal_form == parse_poly("2*t")
    assert rr.witness == parse_poly("-t^2")
    # witness identity by direct differentiation: D(t^2) = 2t - t^3
    assert apply_operator(op, parse_poly("t^2")) == parse_poly("2*t - t^3")

    hermite = hermite_operator()
    rr = reduce(hermite, parse_poly("t^2"))
    assert rr.normal_form == qq_poly([gaussian_moment(1)])  # = 1/2

    for j in range(2):
        rr = reduce(op, t_monomial(QQ, j))
        assert rr.normal_form == t_monomial(QQ, j)
        assert rr.witness.is_zero


def test_reduce_lambda_zero_rejected():
    with pytest.raises(UnsupportedReduction):
        reduce(MonomialOperator(1, 1, 0, 0), parse_poly("t"))
    with pytest.raises(UnsupportedReduction):
        lzero(MonomialOperator(1, 1, 0, 0), parse_poly("t"))


def test_reduce_normal_form_degrees():
    rng = random.Random(23)
    for op in MONOMIAL_SAMPLE:
        for _ in range(20):
            rr = reduce(op, rand_qq(rng))
            assert rr.normal_form.degree <= op.d
    for op in JACOBI_SAMPLE[:3]:  # both parameters nonzero
        for _ in range(20):
            rr = reduce(op, rand_qq(rng))
            assert rr.normal_form.degree <= 0


# -- member ---------------------------------------------------------------

def test_member_examples():
    lag = MonomialOperator(1, 1, 1, 0)
    ok, witness = member(lag, parse_poly("t - 2"))
    assert ok and witness == parse_poly("-t")
    assert apply_operator(lag, parse_poly("-t")) == parse_poly("t - 2")

    for d in (0, 1, 2):
        for alpha in (1, Fraction(1, 2), -2):
            op = MonomialOperator(1, alpha, 1, d)
            ok, witness = member(op, poly_one())
            assert not ok and witness is None

    op = MonomialOperator(1, -1, 1, 1)
    ok, witness = member(op, parse_poly("t^2"))
    assert ok and witness == parse_poly("-t")
    assert apply_operator(op, parse_poly("-t")) == parse_poly("t^2")


def test_member_without_polynomial_tail():
    # c d/dt + alpha/t with lam = 0: solvable degreewise except where the
    # multiplier c*n + alpha vanishes
    op = MonomialOperator(1, -2, 0, 0)
    ok, witness = member(op, poly_one())
    assert ok and apply_operator(op, witness) == poly_one()
    ok, _ = member(op, parse_poly("t"))  # needs n = 2, multiplier 0
    assert not ok
    ok, witness = member(op, parse_poly("t^2"))
    assert ok and apply_operator(op, witness) == parse_poly("t^2")


def test_member_jacobi_constant_obstruction():
    op = JacobiOperator(1, 1)
    ok, _ = member(op, poly_one())
    assert not ok
    ok, witness = member(op, parse_poly("t"))
    assert ok and apply_operator(op, witness) == parse_poly("t")


# -- lzero ----------------------------------------------------------------

def test_lzero_examples():
    assert lzero(MonomialOperator(1, 0, 1, 1), parse_poly("t^4")) == 3
    # oracle: variance-1/2 Gaussian-type recursion value [4,2]_0! = 3*1
    assert lzero(MonomialOperator(1, 1, 1, 0), parse_poly("t^3")) == laguerre_moment(1, 3) == 24
    for op in MONOMIAL_SAMPLE:
        assert lzero(op, poly_one()) == 1


def test_hermite_moment_identity():
    op = hermite_operator()
    for q in range(1, 21):
        assert lzero(op, t_monomial(QQ, 2 * q)) == gaussian_moment(q)


# -- im_structure -----------------------------------------------------------

def test_im_structure_examples():
    s = im_structure(MonomialOperator(1, 1, 1, 0))
    assert s.s_cap_im == "ZERO" and not s.one_in_image
    s = im_structure(MonomialOperator(1, 0, 1, 1))
    assert s.s_cap_im == "SPAN_TD"
    assert member(MonomialOperator(1, 0, 1, 1), parse_poly("t"))[0]  # t^d = D(-1)
    s = im_structure(JacobiOperator(1, 0))
    assert s.one_in_image
    ok, witness = member(JacobiOperator(1, 0), poly_one())
    assert ok and apply_operator(JacobiOperator(1, 0), witness) == poly_one()
    # the classical witness: D(t - 1) = 1 + alpha
    assert apply_operator(JacobiOperator(1, 0), parse_poly("t - 1")) == qq_poly([2])


def test_im_structure_invertible_case():
    s = im_structure(MonomialOperator(1, 0, 1, 0))
    assert s.s_cap_im == "ALL" and s.one_in_image


# -- structural properties ---------------------------------------------------

def test_witness_soundness_random():
    rng = random.Random(29)
    for op in MONOMIAL_SAMPLE + JACOBI_SAMPLE:
        for _ in range(15):
            f = rand_qq(rng)
            try:
                rr = reduce(op, f)
            except DegenerateDiagonal:
                continue
            assert apply_operator(op, rr.witness) + rr.normal_form == f
            ok, witness = member(op, f)
            if ok:
                assert apply_operator(op, witness) == f


def test_linearity_random():
    rng = random.Random(31)
    for op in MONOMIAL_SAMPLE:
        for _ in range(15):
            f, g = rand_qq(rng), rand_qq(rng)
            if member(op, f)[0] and member(op, g)[0]:
                assert member(op, f + g)[0]
            if member(op, f)[0]:
                q = Fraction(rng.randint(1, 7), rng.randint(1, 7))
                assert member(op, f.scale(q))[0]


def test_kernel_vanishing_on_image():
    # every image element is annihilated by the normal-form constant
    # functional whenever (d, alpha) != (0, 0)
    rng = random.Random(37)
    for op in MONOMIAL_SAMPLE:
        if op.d == 0 and op.alpha == 0:
            continue
        for _ in range(20):
            h = rand_qq(rng, max_deg=5)
            if op.alpha != 0:
                h = h * t_monomial(QQ, 1)  # admissible domain: t | h
            f = apply_operator(op, h)
            assert member(op, f)[0]
            assert lzero(op, f) == 0


def test_witness_determinism():
    rng = random.Random(41)
    for op in MONOMIAL_SAMPLE + JACOBI_SAMPLE[:4]:
        f = rand_qq(rng)
        try:
            first = reduce(op, f)
            second = reduce(op, f)
        except DegenerateDiagonal:
            continue
        assert first.witness == second.witness
        assert first.normal_form == second.normal_form


def test_basic_image_relation_instances():
    # t^(n+d) - (n+alpha) t^(n-1) is an image element for c = lam = 1
    rng = random.Random(43)
    for d, alpha in ((1, Fraction(0)), (0, Fraction(1)), (2, Fraction(1, 3)), (1, Fraction(-1))):
        op = MonomialOperator(1, alpha, 1, d)
        for _ in range(10):
            n = rng.randint(1, 12)
            f = t_monomial(QQ, n + d) - t_monomial(QQ, n - 1).scale(n + alpha)
            assert member(op, f)[0]


def test_jacobi_degenerate_diagonal_raises():
    with pytest.raises(DegenerateDiagonal):
        reduce(JacobiOperator(-2, 0), parse_poly("t^2"))


def test_apply_operator_rejects_inadmissible():
    with pytest.raises(BadInput):
        apply_operator(MonomialOperator(1, 1, 1, 0), poly_one())
    with pytest.raises(BadInput):
        apply_operator(JacobiOperator(1, 1), parse_poly("t"))


def member_by_linear_solve(op, f):
    """Independent membership oracle: solve D(h) = f by exact Gaussian
    elimination over the admissible monomial basis, no triangular shortcuts."""
    from mathieulab.linalg import solve_linear

    if isinstance(op, MonomialOperator):
        start = 1 if op.alpha != 0 else 0
        max_h = max(f.degree - op.d, f.degree, 0) + 1
        basis = [t_monomial(QQ, n) for n in range(start, max_h + 1)]
    else:
        factor = poly_one()
        if op.alpha != 0:
            factor = factor * parse_poly("1 - t")
        if op.beta != 0:
            factor = factor * parse_poly("1 + t")
        basis = [factor * t_monomial(QQ, n) for n in range(0, f.degree + 3)]
    try:
        columns = [apply_operator(op, h) for h in basis]
    except DegenerateDiagonal:
        raise
    out_deg = max([f.degree] + [c.degree for c in columns])
    if out_deg < 0:
        return True
    rows = [[c.coeff(i).data for c in columns] for i in range(out_deg + 1)]
    target = [f.coeff(i).data for i in range(out_deg + 1)]
    return solve_linear(rows, target) is not None


def test_membership_matches_linear_solve_oracle():
    rng = random.Random(47)
    ops = MONOMIAL_SAMPLE + [MonomialOperator(1, -2, 0, 0), MonomialOperator(2, 3, 0, 0),
                             JacobiOperator(1, 1), JacobiOperator(1, 2),
                             JacobiOperator(1, 0), JacobiOperator(0, 0)]
    for op in ops:
        for _ in range(12):
            f = rand_qq(rng, max_deg=5, height=5)
            assert member(op, f)[0] == member_by_linear_solve(op, f)
        # image elements must come back positive through both routes
        for _ in range(4):
            h = rand_qq(rng, max_deg=4, height=4)
            if isinstance(op, MonomialOperator):
                if op.alpha != 0:
                    h = h * t_monomial(QQ, 1)
            else:
                if op.alpha != 0:
                    h = h * parse_poly("1 - t")
                if op.beta != 0:
                    h = h * parse_poly("1 + t")
            image = apply_operator(op, h)
            assert member(op, image)[0]
            assert member_by_linear_solve(op, image)


def test_operator_text_format_roundtrip():
    op = parse_operator("mono:c=1,alpha=1/2,lambda=1,d=2")
    assert op == MonomialOperator(1, Fraction(1, 2), 1, 2)
    assert parse_operator(str(op)) == op
    jop = parse_operator("jacobi:alpha=1,beta=2")
    assert jop == JacobiOperator(1, 2)
    assert parse_operator(str(jop)) == jop
    assert parse_operator("mono:alpha=1") == laguerre_operator(1)
