"""Radical probing and the Mathieu verdict engine for cofinite subspaces.

A subspace V of QQ[t] containing a nonzero ideal (g) is described by the
factored modulus g and a basis of its image in QQ[t]/(g).  For such spaces
the key questions — does every large power of f land in V, what is the
largest ideal inside V, is V a Mathieu subspace — reduce to finite exact
linear algebra:

* membership of f^m in V for every m in the window [D, 2D] (D = deg g)
  already decides membership for *all* large m.  The powers of f in the
  D-dimensional algebra QQ[t]/(g) satisfy the linear recurrence given by
  the minimal polynomial of f (Cayley-Hamilton: degree <= D), so once D+1
  consecutive powers with exponent >= D lie in the subspace the recurrence
  propagates membership upward; conversely multiplication is invertible on
  the stable range im(T^D) of the multiplication operator T, so eventual
  membership propagates downward to exponent D.  The same two-sided
  recurrence argument applies to the sequence a^m * b, which makes the
  absorption condition behind the Mathieu property exactly decidable per
  pair (a, b).
* a cofinite V is a Mathieu subspace exactly when the radical of V equals
  the radical of its largest interior ideal; refuting equality needs one
  element on the gap, which is searched among Chinese-remainder idempotent
  sums, user candidates and bounded-height combinations of the basis.
  Finding one yields an exact NOT_MATHIEU verdict; exhausting the budget
  yields CONSISTENT_UP_TO_BUDGET (deciding emptiness of the gap in general
  would need elimination machinery far beyond this tool).

External vectors use per-factor residue coordinates: the coordinates of
f are the coefficients of f mod p_i^(m_i), blocks concatenated in modulus
order.  For split moduli these are plain point evaluations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from . import linalg
from .corealg import (
    Poly,
    QQ,
    euclid_divmod,
    format_poly,
    parse_poly,
    poly_divides,
    poly_gcd,
    poly_one,
    poly_xgcd,
    poly_zero,
    qq_poly,
    squarefree_part,
    t_monomial,
)
from .errors import BadInput, ZeroInput
from .opimage import OperatorSpec, member

_F0 = Fraction(0)
_F1 = Fraction(1)

NOT_MATHIEU = "NOT_MATHIEU"
MATHIEU_EXACT = "MATHIEU_EXACT"
CONSISTENT_UP_TO_BUDGET = "CONSISTENT_UP_TO_BUDGET"


def _int_divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def _has_rational_root(f: Poly) -> bool:
    """Rational-root test for integer-cleared coefficients."""
    coeffs = f.qq_coeffs()
    import math

    scale = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * scale) for c in coeffs]
    if ints[0] == 0:
        return True  # root at 0
    for p in _int_divisors(ints[0]):
        for q in _int_divisors(ints[-1]):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if f.evaluate(cand) == 0:
                    return True
    return False


class CofiniteSubspace:
    """V ⊆ QQ[t] with (g) ⊆ V, encoded by g's factorization and V/(g)."""

    def __init__(self, factors: Sequence[tuple[Poly, int]], vbar_basis: Sequence[Sequence] = (),
                 basis_coords: str = "residue"):
        if not factors:
            raise BadInput("the modulus needs at least one factor")
        normalized = []
        unverified = []
        seen = set()
        for poly, mult in factors:
            if poly.ring != QQ:
                raise BadInput("modulus factors must have rational coefficients")
            if poly.is_zero or poly.degree < 1:
                raise BadInput("modulus factors must be non-constant")
            if not isinstance(mult, int) or mult < 1:
                raise BadInput("factor multiplicities must be positive integers")
            poly = poly.monic()
            key = poly.qq_coeffs()
            if key in seen:
                raise BadInput("duplicate modulus factor; merge multiplicities")
            seen.add(key)
            if poly.degree <= 3:
                if poly.degree >= 2 and _has_rational_root(poly):
                    raise BadInput(f"factor {format_poly(poly)} is reducible")
            else:
                unverified.append(poly)  # trusted, flagged
            normalized.append((poly, mult))
        self.factors: tuple = tuple(normalized)
        self.unverified_factors: tuple = tuple(unverified)

        g = poly_one(QQ)
        blocks = []
        for poly, mult in self.factors:
            block = poly ** mult
            blocks.append(block)
            g = g * block
        self._blocks = tuple(blocks)
        self.modulus: Poly = g
        self.dim: int = g.degree

        # residue coordinates <-> coefficient coordinates
        crt_columns = [self.residue_vec(t_monomial(QQ, j)) for j in range(self.dim)]
        self._crt_matrix = [[crt_columns[j][i] for j in range(self.dim)] for i in range(self.dim)]

        converted = []
        for vec in vbar_basis:
            entries = [Fraction(v) if not isinstance(v, float) else None for v in vec]
            if None in entries:
                raise BadInput("basis vectors must be exact rationals, not floats")
            if len(entries) != self.dim:
                raise BadInput(f"basis vectors must have length {self.dim}")
            if basis_coords == "residue":
                coeff_vec = linalg.solve_linear(self._crt_matrix, entries)
                if coeff_vec is None:
                    raise BadInput("residue vector outside the quotient algebra")
                converted.append(coeff_vec)
            elif basis_coords == "coefficient":
                converted.append(entries)
            else:
                raise BadInput(f"unknown basis coordinate system {basis_coords!r}")
        self._basis = tuple(tuple(v) for v in converted)
        self._rref, self._pivots = linalg.rref(self._basis) if self._basis else ([], [])
        if len(self._rref) != len(self._basis):
            raise BadInput("basis vectors are linearly dependent")

    # -- coordinate maps -------------------------------------------------

    def residue_vec(self, f: Poly) -> list[Fraction]:
        out: list[Fraction] = []
        for block in self._blocks:
            r = euclid_divmod(f, block)[1]
            coeffs = list(r.qq_coeffs())
            coeffs += [_F0] * (block.degree - len(coeffs))
            out.extend(coeffs)
        return out

    def reduce_vec(self, f: Poly) -> list[Fraction]:
        r = euclid_divmod(f, self.modulus)[1]
        coeffs = list(r.qq_coeffs())
        return coeffs + [_F0] * (self.dim - len(coeffs))

    def mod(self, f: Poly) -> Poly:
        return euclid_divmod(f, self.modulus)[1]

    def lift(self, coeff_vec: Sequence[Fraction]) -> Poly:
        return qq_poly(coeff_vec)

    def basis_polys(self) -> list[Poly]:
        return [self.lift(v) for v in self._basis]

    # -- membership --------------------------------------------------------

    def contains_vec(self, coeff_vec: Sequence[Fraction]) -> bool:
        return linalg.in_row_span(self._rref, self._pivots, coeff_vec)

    def contains(self, f: Poly) -> bool:
        return self.contains_vec(self.reduce_vec(f))

    def is_ideal(self) -> bool:
        """V is an ideal iff its image mod g is closed under multiplication by t."""
        t = t_monomial(QQ, 1)
        return all(self.contains(t * p) for p in self.basis_polys())

    def pow_mod(self, f: Poly, e: int) -> Poly:
        base = self.mod(f)
        out = self.mod(poly_one(QQ))
        while e:
            if e & 1:
                out = self.mod(out * base)
            base = self.mod(base * base)
            e >>= 1
        return out

    # -- serialization -----------------------------------------------------

    @classmethod
    def from_dict(cls, data: dict) -> "CofiniteSubspace":
        try:
            factors = [(parse_poly(text, QQ), int(mult)) for text, mult in data["modulus"]]
            raw = data.get("vbar_basis", [])
        except (KeyError, TypeError, ValueError) as exc:
            raise BadInput(f"malformed subspace description: {exc}") from exc
        vectors = []
        for vec in raw:
            entries = []
            for v in vec:
                if isinstance(v, bool) or isinstance(v, float):
                    raise BadInput("basis entries must be integers or rational strings")
                entries.append(Fraction(v) if isinstance(v, int) else Fraction(str(v)))
            vectors.append(entries)
        return cls(factors, vectors)

    def to_dict(self) -> dict:
        return {
            "modulus": [[format_poly(p), m] for p, m in self.factors],
            "vbar_basis": [
                [str(v) for v in self.residue_vec(self.lift(vec))] for vec in self._basis
            ],
        }


def atomic_space(points: Sequence, weights: Sequence) -> CofiniteSubspace:
    """The space of polynomials whose weighted value sum vanishes.

    Weights may be any nonzero rationals; positive weights give the
    vanishing-integral space of an atomic measure.
    """
    pts = [Fraction(p) for p in points]
    wts = [Fraction(w) for w in weights]
    if len(pts) != len(wts) or not pts:
        raise BadInput("points and weights must be nonempty and aligned")
    if len(set(pts)) != len(pts):
        raise BadInput("points must be distinct")
    if any(w == 0 for w in wts):
        raise BadInput("weights must be nonzero")
    factors = [(qq_poly([-p, 1]), 1) for p in pts]
    # in residue coordinates the condition is sum_i w_i x_i = 0
    basis = linalg.nullspace([wts])
    return CofiniteSubspace(factors, basis)


# --------------------------------------------------------------------------
# radical probes and exact cofinite decisions
# --------------------------------------------------------------------------

def radical_probe(membership_oracle: Callable[[Poly], bool], f: Poly, window: Iterable[int]) -> bool:
    """Do all powers f^m for m in the window satisfy the oracle?

    This is a finite probe, not a proof of radical membership; callers
    interpret it under their chosen window rule.
    """
    exponents = sorted(set(window))
    if not exponents:
        raise BadInput("empty probe window")
    if any(m < 0 for m in exponents):
        raise BadInput("window exponents must be non-negative")
    power = poly_one(QQ)
    prev = 0
    for m in exponents:
        power = power * f ** (m - prev)
        prev = m
        if not membership_oracle(power):
            return False
    return True


def radical_member_cofinite(space: CofiniteSubspace, f: Poly) -> bool:
    """Exact decision of 'all large powers of f lie in V'.

    Checks f^m in V for m in [D, 2D], D = deg g; by the two-sided
    Cayley-Hamilton recurrence described in the module docstring this window
    is equivalent to eventual membership.
    """
    d = space.dim
    fbar = space.mod(f)
    power = space.pow_mod(fbar, d)
    for _ in range(d, 2 * d + 1):
        if not space.contains(power):
            return False
        power = space.mod(power * fbar)
    return True


def escape_exponent(op: OperatorSpec, f: Poly, budget: int) -> Optional[int]:
    """Smallest m <= budget with f^m outside the operator image, else None."""
    if f.is_zero:
        raise ZeroInput("escape exponent of the zero polynomial")
    if budget < 1:
        raise BadInput("budget must be at least 1")
    power = poly_one(QQ)
    for m in range(1, budget + 1):
        power = power * f
        if not member(op, power)[0]:
            return m
    return None


def largest_ideal(space: CofiniteSubspace) -> Poly:
    """Monic generator of the largest ideal contained in V.

    Every candidate generator divides g; (d) ⊆ V holds iff d, d*t, ...,
    d*t^(deg g - deg d - 1) all lie in V, because those products span the
    image of (d) in QQ[t]/(g).  The result is the gcd of the passing
    divisors (the sum of the passing ideals).
    """
    t = t_monomial(QQ, 1)
    passing = []
    ranges = [range(m + 1) for _, m in space.factors]
    for exponents in itertools.product(*ranges):
        divisor = poly_one(QQ)
        for (p, _), e in zip(space.factors, exponents):
            divisor = divisor * p ** e
        prod = divisor
        ok = True
        for _ in range(space.dim - divisor.degree):
            if not space.contains(prod):
                ok = False
                break
            prod = prod * t
        if ok:
            passing.append(divisor)
    out = passing[0]
    for p in passing[1:]:
        out = poly_gcd(out, p)
    return out


def definition_witness(membership_oracle: Callable[[Poly], bool], a: Poly, b: Poly,
                       budget: int) -> Optional[int]:
    """Smallest N <= budget with a^m * b inside V for every m in [N, budget]."""
    if budget < 1:
        raise BadInput("budget must be at least 1")
    last_out = 0
    power = poly_one(QQ)
    for m in range(1, budget + 1):
        power = power * a
        if not membership_oracle(power * b):
            last_out = m
    if last_out == budget:
        return None
    return last_out + 1


def _definition_holds_exactly(space: CofiniteSubspace, a: Poly, b: Poly) -> bool:
    """Exact decision of 'a^m b in V for all large m' via the [D, 2D] window."""
    d = space.dim
    abar = space.mod(a)
    bbar = space.mod(b)
    current = space.mod(space.pow_mod(abar, d) * bbar)
    for _ in range(d, 2 * d + 1):
        if not space.contains(current):
            return False
        current = space.mod(current * abar)
    return True


# --------------------------------------------------------------------------
# the Mathieu verdict engine
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SearchConfig:
    height: int = 2
    max_combinations: int = 200
    candidates: tuple = ()
    seed: Optional[int] = None  # recorded for reproducibility; search is deterministic


@dataclass(frozen=True)
class MathieuVerdict:
    status: str
    witness: Optional[tuple[Poly, Poly]]
    i_v_generator: Poly
    radical_iv_generator: Poly
    budget_used: dict = field(default_factory=dict)


def crt_idempotents(space: CofiniteSubspace) -> list[Poly]:
    """e_i = 1 mod p_i^(m_i) and 0 mod the other factor powers."""
    out = []
    for i, block in enumerate(space._blocks):
        rest = poly_one(QQ)
        for j, other in enumerate(space._blocks):
            if j != i:
                rest = rest * other
        d, u, _ = poly_xgcd(rest, block)
        if not (d.degree == 0 and d.coeff(0).data == 1):
            raise BadInput("modulus factors are not pairwise coprime")
        out.append(space.mod(u * rest))
    return out


def _atomic_positive_radical(space: CofiniteSubspace) -> Optional[Poly]:
    """Exact radical generator when V is a same-sign evaluation hyperplane.

    For g split into distinct rational roots and V the kernel of a
    functional sum w_i f(r_i) with all nonzero w_i of one sign, even powers
    force f(r_i) = 0 at every weighted point, so the radical of V is the
    ideal of polynomials vanishing there.
    """
    if any(m != 1 or p.degree != 1 for p, m in space.factors):
        return None
    d = space.dim
    if len(space._basis) != d - 1:
        return None
    ann = linalg.nullspace(list(space._basis)) if space._basis else []
    if len(ann) != 1:
        return None
    lam = ann[0]
    roots = [-p.coeff(0).data for p, _ in space.factors]
    vandermonde = [[r ** j for r in roots] for j in range(d)]
    weights = linalg.solve_linear(vandermonde, lam)
    if weights is None:
        return None
    nonzero = [w for w in weights if w != 0]
    if not nonzero or not (all(w > 0 for w in nonzero) or all(w < 0 for w in nonzero)):
        return None
    rho = poly_one(QQ)
    for r, w in zip(roots, weights):
        if w != 0:
            rho = rho * qq_poly([-r, 1])
    return rho


def _search_candidates(space: CofiniteSubspace, config: SearchConfig):
    seen = set()

    def emit(poly: Poly, family: str):
        reduced = space.mod(poly)
        if reduced.is_zero:
            return None
        key = reduced.qq_coeffs()
        if key in seen:
            return None
        seen.add(key)
        return reduced, family

    if len(space.factors) >= 2:
        idems = crt_idempotents(space)
        for mask in range(1, 1 << len(idems)):
            total = poly_zero(QQ)
            for i, e in enumerate(idems):
                if mask & (1 << i):
                    total = total + e
            item = emit(total, "crt_idempotent")
            if item:
                yield item
    else:
        item = emit(poly_one(QQ), "crt_idempotent")
        if item:
            yield item
    for cand in config.candidates:
        item = emit(cand, "user")
        if item:
            yield item
    basis = space.basis_polys()
    if basis:
        produced = 0
        values = range(-config.height, config.height + 1)
        for coords in itertools.product(values, repeat=len(basis)):
            if produced >= config.max_combinations:
                break
            if all(c == 0 for c in coords):
                continue
            total = poly_zero(QQ)
            for c, b in zip(coords, basis):
                if c:
                    total = total + b.scale(Fraction(c))
            produced += 1
            item = emit(total, "basis_combination")
            if item:
                yield item


def mathieu_check(space: CofiniteSubspace, config: Optional[SearchConfig] = None) -> MathieuVerdict:
    """Mathieu verdict for a cofinite subspace.

    The subspace is Mathieu exactly when the radical of V equals the
    radical of its largest interior ideal.  Ideals and same-sign evaluation
    hyperplanes are recognized structurally (MATHIEU_EXACT).  Otherwise the
    engine searches for a refuting element a with all large powers in V yet
    not divisible by the squarefree part of the ideal generator; a monomial
    b certifying the absorption failure is then found exactly.  Exhausting
    the search yields CONSISTENT_UP_TO_BUDGET, a semi-decision by design.
    """
    config = config or SearchConfig()
    h = largest_ideal(space)
    r = squarefree_part(h) if h.degree >= 1 else poly_one(QQ)
    budget_used = {
        "height": config.height,
        "max_combinations": config.max_combinations,
        "user_candidates": len(config.candidates),
        "window": [space.dim, 2 * space.dim],
        "seed": config.seed,
    }
    # sanity: the radical of (h) is always inside the radical of V
    if not radical_member_cofinite(space, r):
        raise BadInput("internal inconsistency: interior ideal radical escapes V")

    if space.is_ideal():
        budget_used["structural_case"] = "ideal"
        return MathieuVerdict(MATHIEU_EXACT, None, h, r, budget_used)
    rho = _atomic_positive_radical(space)
    if rho is not None and rho.qq_coeffs() == r.qq_coeffs():
        budget_used["structural_case"] = "atomic_positive_hyperplane"
        return MathieuVerdict(MATHIEU_EXACT, None, h, r, budget_used)

    tried = 0
    for cand, family in _search_candidates(space, config):
        tried += 1
        if not radical_member_cofinite(space, cand):
            continue
        if poly_divides(r, cand):
            continue
        # cand is in the radical of V but not of I_V: not a Mathieu subspace.
        witness_b = None
        for j in range(space.dim):
            mono = t_monomial(QQ, j)
            if not _definition_holds_exactly(space, cand, mono):
                witness_b = mono
                break
        if witness_b is None:
            # absorption of every monomial would push cand into I_V's radical
            raise BadInput("internal inconsistency: refuter absorbs every monomial")
        budget_used["candidates_tried"] = tried
        budget_used["witness_family"] = family
        return MathieuVerdict(NOT_MATHIEU, (cand, witness_b), h, r, budget_used)
    budget_used["candidates_tried"] = tried
    return MathieuVerdict(CONSISTENT_UP_TO_BUDGET, None, h, r, budget_used)
