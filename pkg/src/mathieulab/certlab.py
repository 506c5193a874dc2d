"""Number-theoretic non-membership certificates for monomial-family images.

For D = d/dt + alpha/t - t^d with rational alpha outside -(1 + (d+1)N) and
(d, alpha) != (0, 0), no nonzero polynomial keeps all of its powers inside
the polynomial image of D.  The machinery that proves it for a concrete f
with monic lowest term t^s (s >= 1) is assembled here:

* bracket factorials    [q*n, n]_alpha! = ((q-1)n+1+alpha)...(1+alpha),
  the value of the normal-form constant functional on t^(q*n) when n = d+1;
* the expansion  f^(m(d+1)) = t^(s*m*(d+1)) + sum phi_k t^k;
* the products   b_i = ((sm+i-1)(d+1)+1+alpha)...(sm(d+1)+1+alpha);
* a prime p = (s_* q) m + h in an arithmetic progression (Dirichlet) that
  divides every b_i numerator while all phi coefficients are p-integral.

Then the exact identity

    L0(f^(m(d+1))) = [sm(d+1), d+1]_alpha! * (1 + sum_i b_i phi_((sm+i)(d+1)))

forces a positive p-adic valuation on sum b_i phi, so the bracketed factor
cannot vanish, and f^(m(d+1)) is certified to lie outside the image.  The
certificate records enough integers and valuations to re-derive everything.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .corealg import Poly, QQ, format_poly, parse_poly
from .errors import (
    BadInput,
    BudgetExhausted,
    NotCoprime,
    NotNormalized,
    NotPrime,
    ZeroInput,
)
from .opimage import MonomialOperator, lzero

_F0 = Fraction(0)
_F1 = Fraction(1)

INFINITE = math.inf

# deterministic Miller-Rabin witness set, valid far beyond 3*10^18
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def vp(x: Union[Fraction, int], p: int) -> Union[int, float]:
    """p-adic valuation on the rationals; vp(0) is +infinity."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    x = Fraction(x)
    if x == 0:
        return INFINITE
    v = 0
    num = x.numerator
    while num % p == 0:
        num //= p
        v += 1
    den = x.denominator
    while den % p == 0:
        den //= p
        v -= 1
    return v


def dirichlet_prime(a: int, b: int, m_min: int, budget: int) -> Optional[tuple[int, int]]:
    """Smallest m >= m_min with a*m + b prime, trying ``budget`` candidates.

    Dirichlet guarantees infinitely many primes in the progression when
    gcd(a, b) = 1, so None only ever signals budget exhaustion.
    """
    if a < 1:
        raise BadInput("progression step must be positive")
    if math.gcd(a, b) != 1:
        raise NotCoprime(f"gcd({a}, {b}) != 1")
    for m in range(m_min, m_min + budget):
        candidate = a * m + b
        if candidate >= 2 and is_prime(candidate):
            return m, candidate
    return None


def bracket_factorial(q: int, n: int, alpha: Fraction) -> Fraction:
    """((q-1)n + 1 + alpha)((q-2)n + 1 + alpha) ... (1 + alpha); empty = 1."""
    if q < 0 or n < 1:
        raise BadInput("bracket factorial needs q >= 0 and n >= 1")
    alpha = Fraction(alpha)
    out = _F1
    for j in range(q):
        out *= j * n + 1 + alpha
    return out


def lzero_monomial(q: int, i: int, d: int, alpha: Fraction) -> Fraction:
    """Closed form of the normal-form constant functional on t^(q(d+1)+i)."""
    if not (0 <= i <= d):
        raise BadInput("residue index out of range")
    if q < 0:
        raise BadInput("q must be non-negative")
    if i > 0:
        return _F0
    return bracket_factorial(q, d + 1, alpha)


def _normalized_lowest(f: Poly) -> int:
    if f.ring != QQ:
        raise BadInput("certificates require rational coefficients")
    if f.is_zero:
        raise ZeroInput("zero polynomial")
    s = f.lowest_degree()
    if s is None or s < 1 or f.coeff(s).data != 1:
        raise NotNormalized("lowest term must be a monic t^s with s >= 1")
    return s


def phi_expansion(f: Poly, m: int, d: int) -> dict[int, Fraction]:
    """Coefficients of f^(m(d+1)) above the monic lowest term t^(s*m*(d+1))."""
    s = _normalized_lowest(f)
    if m < 1 or d < 0:
        raise BadInput("need m >= 1 and d >= 0")
    power = f ** (m * (d + 1))
    base = s * m * (d + 1)
    coeffs = power.qq_coeffs()
    if coeffs[base] != 1:
        raise NotNormalized("lowest coefficient of the power is not 1")
    return {k: coeffs[k] for k in range(base + 1, len(coeffs)) if coeffs[k] != 0}


def b_products(s: int, m: int, d: int, alpha: Fraction, i_max: int) -> list[Fraction]:
    """b_1 .. b_imax with b_i = prod_{j=0}^{i-1} ((sm+j)(d+1) + 1 + alpha)."""
    if s < 1 or m < 1 or i_max < 1:
        raise BadInput("need s, m, i_max >= 1")
    alpha = Fraction(alpha)
    out = []
    acc = _F1
    for j in range(i_max):
        acc *= (s * m + j) * (d + 1) + 1 + alpha
        out.append(acc)
    return out


def _alpha_admissible(d: int, alpha: Fraction) -> bool:
    """alpha not of the form -(1 + q(d+1)) for a non-negative integer q."""
    q = Fraction(-1 - alpha, d + 1)
    return not (q.denominator == 1 and q >= 0)


@dataclass(frozen=True, slots=True)
class Certificate:
    """Re-checkable proof data that f^(m(d+1)) avoids the operator image."""

    f: Poly
    m: int
    prime: int
    s0: int
    s_star: int
    h: int
    q: int
    r: int
    bi_valuations: tuple  # of (i, vp(b_i)), for i = 1..i_max
    phi_valuations: tuple  # of (i, vp(phi)), for the nonzero phi only
    conclusion_exponent: int  # m*(d+1)


def certificate_nonmembership(f: Poly, d: int, alpha: Fraction, budget: int = 10 ** 6) -> Certificate:
    """Search for (m, prime) proving f^(m(d+1)) outside the image of D.

    The progression step and offset come from alpha = r/q in lowest terms:
    with s0 = gcd(s(d+1), q+r), s(d+1) = s0*s_star and q+r = s0*h, the
    candidate primes are p = (s_star*q)m + h.  A candidate is rejected when
    it divides a coefficient denominator of f (the phi values must stay
    p-integral).  The assembled certificate is verified before returning.
    """
    alpha = Fraction(alpha)
    if d < 0:
        raise BadInput("d must be non-negative")
    if d == 0 and alpha == 0:
        raise BadInput("the operator d/dt - 1 is surjective; nothing to certify")
    if not _alpha_admissible(d, alpha):
        raise BadInput("alpha lies in -(1 + (d+1)N); powers of t^(d+1) stay in the image")
    s = _normalized_lowest(f)
    deg = f.degree
    q, r = alpha.denominator, alpha.numerator
    if q + r == 0:
        raise BadInput("alpha = -1 is excluded")
    s0 = math.gcd(s * (d + 1), q + r)
    s_star = s * (d + 1) // s0
    h = (q + r) // s0
    step = s_star * q
    if math.gcd(step, h) != 1:
        raise NotCoprime("progression parameters are not coprime")
    denominators = {c.data.denominator for c in f.coeffs if not c.is_zero}
    m_min = 1
    while m_min <= budget:
        found = dirichlet_prime(step, h, m_min, budget - m_min + 1)
        if found is None:
            break
        m, p = found
        m_min = m + 1
        if any(den % p == 0 for den in denominators):
            continue
        cert = _assemble(f, s, deg, d, alpha, m, p, s0, s_star, h, q, r)
        if cert is not None:
            return cert
    raise BudgetExhausted(f"no admissible prime among {budget} progression candidates")


def _assemble(f, s, deg, d, alpha, m, p, s0, s_star, h, q, r) -> Optional[Certificate]:
    i_max = (deg - s) * m
    phi = phi_expansion(f, m, d)
    bi_vals = []
    phi_vals = []
    correction = _F0
    if i_max >= 1:
        bs = b_products(s, m, d, alpha, i_max)
        for i, b in enumerate(bs, start=1):
            v = vp(b, p)
            if not (isinstance(v, int) and v > 0):
                return None
            bi_vals.append((i, v))
            coeff = phi.get((s * m + i) * (d + 1), _F0)
            if coeff != 0:
                v_phi = vp(coeff, p)
                if v_phi < 0:
                    return None
                phi_vals.append((i, v_phi))
                correction += b * coeff
    # exact cross-check of the factored identity against the reducer
    bracket = bracket_factorial(s * m, d + 1, alpha)
    op = MonomialOperator(1, alpha, 1, d)
    value = lzero(op, f ** (m * (d + 1)))
    if value != bracket * (1 + correction):
        return None
    if value == 0:
        return None
    return Certificate(
        f=f,
        m=m,
        prime=p,
        s0=s0,
        s_star=s_star,
        h=h,
        q=q,
        r=r,
        bi_valuations=tuple(bi_vals),
        phi_valuations=tuple(phi_vals),
        conclusion_exponent=m * (d + 1),
    )


def verify_certificate(cert: Certificate) -> bool:
    """Re-derive every field of a certificate from scratch."""
    try:
        m = cert.m
        if m < 1 or cert.conclusion_exponent % m != 0:
            return False
        d = cert.conclusion_exponent // m - 1
        if d < 0:
            return False
        if cert.q < 1 or math.gcd(cert.r, cert.q) != 1:
            return False
        alpha = Fraction(cert.r, cert.q)
        if d == 0 and alpha == 0:
            return False
        if not _alpha_admissible(d, alpha):
            return False
        s = _normalized_lowest(cert.f)
        if cert.q + cert.r == 0:
            return False
        if cert.s0 != math.gcd(s * (d + 1), cert.q + cert.r):
            return False
        if s * (d + 1) != cert.s0 * cert.s_star:
            return False
        if cert.q + cert.r != cert.s0 * cert.h:
            return False
        if cert.prime != cert.s_star * cert.q * m + cert.h:
            return False
        if not is_prime(cert.prime):
            return False
        i_max = (cert.f.degree - s) * m
        if len(cert.bi_valuations) != max(i_max, 0):
            return False
        phi = phi_expansion(cert.f, m, d)
        correction = _F0
        expected_phi = []
        if i_max >= 1:
            bs = b_products(s, m, d, alpha, i_max)
            for i, b in enumerate(bs, start=1):
                v = vp(b, cert.prime)
                if cert.bi_valuations[i - 1] != (i, v) or not (isinstance(v, int) and v > 0):
                    return False
                coeff = phi.get((s * m + i) * (d + 1), _F0)
                if coeff != 0:
                    v_phi = vp(coeff, cert.prime)
                    if v_phi < 0:
                        return False
                    expected_phi.append((i, v_phi))
                    correction += b * coeff
        if tuple(expected_phi) != tuple(cert.phi_valuations):
            return False
        bracket = bracket_factorial(s * m, d + 1, alpha)
        value = lzero(MonomialOperator(1, alpha, 1, d), cert.f ** (m * (d + 1)))
        return value == bracket * (1 + correction) and value != 0
    except Exception:
        return False


def certificate_to_dict(cert: Certificate) -> dict:
    return {
        "f": format_poly(cert.f),
        "m": cert.m,
        "prime": cert.prime,
        "s0": cert.s0,
        "s_star": cert.s_star,
        "h": cert.h,
        "q": cert.q,
        "r": cert.r,
        "bi_valuations": [list(pair) for pair in cert.bi_valuations],
        "phi_valuations": [list(pair) for pair in cert.phi_valuations],
        "conclusion_exponent": cert.conclusion_exponent,
    }


def certificate_from_dict(data: dict) -> Certificate:
    try:
        return Certificate(
            f=parse_poly(data["f"], QQ),
            m=int(data["m"]),
            prime=int(data["prime"]),
            s0=int(data["s0"]),
            s_star=int(data["s_star"]),
            h=int(data["h"]),
            q=int(data["q"]),
            r=int(data["r"]),
            bi_valuations=tuple((int(i), int(v)) for i, v in data["bi_valuations"]),
            phi_valuations=tuple((int(i), int(v)) for i, v in data["phi_valuations"]),
            conclusion_exponent=int(data["conclusion_exponent"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise BadInput(f"malformed certificate: {exc}") from exc
