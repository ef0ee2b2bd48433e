"""Finitely generated fractional ideals over a localized integer ring.

Fix a prime p and a squarefree d in {-1, 2, 3}.  The scalars are the
localization of the integers at p; the ambient algebras are the rationals
and the quadratic field generated by sqrt(d).  Finitely generated modules
over the scalars form an idempotent semiring: the sum of two modules is the
module they generate together, the product is generated by pairwise
products, and the multiplicative identity is the scalar ring itself.

Over the rationals every nonzero module is a power of p times the scalars,
so one exponent is a canonical form.  Inside the quadratic field a nonzero
module is free of rank one or two; rank-two modules are stored as a
triangular basis (a pure-rational generator p^a and a pivot c + p^b sqrt(d)
whose rational part is reduced to a canonical residue), which makes
equality syntactic.  A generator-list oracle working over plain integer
lattices cross-checks the canonical arithmetic.

Valuations all take values in max-plus semifields over exact groups, using
the convention that the class of the uniformizer sits strictly below one
(so the valuation of p has exponent minus one and scalar elements are
bounded by one).  The extension pipeline classifies the primes above p in
the quadratic field by brute-force norm-form search, builds the extended
valuations exactly, and verifies the restriction, axiom and homomorphism
contracts on fixed element batteries.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import ordered_group as og
from .core import (GammaMaxElement, GammaMaxSemiring, SemiringError, gm_leq,
                   gm_unit, gm_zero)
from .valuation import ValuationHom

SUPPORTED_D = (-1, 2, 3)


class UnsupportedInstanceError(SemiringError):
    pass


class VerificationError(SemiringError):
    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


# ---------------------------------------------------------------------------
# exact p-adic helpers on rationals


def is_prime_int(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def vp_int(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("zero has no finite valuation")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(q: Fraction, p: int) -> int:
    """Exact p-adic valuation of a nonzero rational."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("zero has no finite valuation")
    return vp_int(q.numerator, p) - vp_int(q.denominator, p)


def is_p_integral(q: Fraction, p: int) -> bool:
    q = Fraction(q)
    return q == 0 or vp(q, p) >= 0


def residue_mod_p(q: Fraction, p: int) -> int:
    """Residue of a p-integral rational modulo p."""
    q = Fraction(q)
    if q != 0 and vp(q, p) < 0:
        raise ValueError("not p-integral")
    num = q.numerator % p
    den = q.denominator % p
    return (num * pow(den, -1, p)) % p


def canonical_residue(c: Fraction, p: int, cut: int) -> Fraction:
    """Truncated base-p expansion of c below the exponent cut.

    The result r is the unique rational of the form sum of digits times
    powers of p (digits in 0..p-1, exponents below the cut) such that c - r
    is p-integral after division by p^cut.
    """
    c = Fraction(c)
    if c == 0:
        return Fraction(0)
    out = Fraction(0)
    rest = c
    level = vp(c, p)
    while level < cut and rest != 0:
        digit = residue_mod_p(rest / Fraction(p) ** level, p)
        out += Fraction(digit) * Fraction(p) ** level
        rest = c - out
        if rest == 0:
            break
        level = max(level + 1, vp(rest, p))
    return out


# ---------------------------------------------------------------------------
# elements of the quadratic field


@dataclass(frozen=True)
class QF:
    """Element a + b*sqrt(d) of the quadratic field, with exact rationals."""

    d: int
    a: Fraction
    b: Fraction

    @staticmethod
    def of(d: int, a, b=0) -> "QF":
        return QF(d, Fraction(a), Fraction(b))

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _same(self, other: "QF"):
        if self.d != other.d:
            raise SemiringError("field parameter mismatch")

    def __add__(self, other: "QF") -> "QF":
        self._same(other)
        return QF(self.d, self.a + other.a, self.b + other.b)

    def __sub__(self, other: "QF") -> "QF":
        self._same(other)
        return QF(self.d, self.a - other.a, self.b - other.b)

    def __neg__(self) -> "QF":
        return QF(self.d, -self.a, -self.b)

    def __mul__(self, other: "QF") -> "QF":
        self._same(other)
        return QF(self.d,
                  self.a * other.a + self.d * self.b * other.b,
                  self.a * other.b + self.b * other.a)

    def scale(self, q) -> "QF":
        q = Fraction(q)
        return QF(self.d, self.a * q, self.b * q)

    def conj(self) -> "QF":
        return QF(self.d, self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def inverse(self) -> "QF":
        if self.is_zero:
            raise ZeroDivisionError("zero is not invertible")
        n = self.norm()
        return QF(self.d, self.a / n, -self.b / n)

    def __pow__(self, k: int) -> "QF":
        out = QF.of(self.d, 1)
        base = self
        if k < 0:
            base = self.inverse()
            k = -k
        for _ in range(k):
            out = out * base
        return out

    def render(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*sqrt({self.d})"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*sqrt({self.d})"

    def __repr__(self):
        return f"QF({self.render()})"


def parse_qf(d: int, text: str) -> QF:
    """Parse `a/b+c/e*sqrt(d)`; `i` is accepted as sqrt(-1) shorthand."""
    text = text.strip().replace(" ", "")
    if d == -1:
        text = text.replace("i", f"sqrt({d})") if text in ("i", "-i") else text
        text = text.replace("*i", f"*sqrt({d})")
    token = f"sqrt({d})"
    if token not in text:
        return QF.of(d, Fraction(text))
    head, _, _ = text.partition(token)
    if head.endswith("*"):
        head = head[:-1]
    # split the rational part from the coefficient
    coeff_start = 0
    for k in range(len(head) - 1, 0, -1):
        if head[k] in "+-" and head[k - 1] not in "+-/*":
            coeff_start = k
            break
    rational, coeff = head[:coeff_start], head[coeff_start:]
    if coeff in ("", "+"):
        coeff = "1"
    elif coeff == "-":
        coeff = "-1"
    a = Fraction(rational) if rational else Fraction(0)
    return QF(d, a, Fraction(coeff))


# ---------------------------------------------------------------------------
# fractional ideals of the rationals


@dataclass(frozen=True)
class QfracIdeal:
    """Zero, or p^exp times the scalar ring inside the rationals."""

    p: int
    exp: int | None  # None encodes the zero module

    @property
    def is_zero(self) -> bool:
        return self.exp is None

    def _same(self, other: "QfracIdeal"):
        if self.p != other.p:
            raise SemiringError("prime mismatch")

    def __add__(self, other: "QfracIdeal") -> "QfracIdeal":
        self._same(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        return QfracIdeal(self.p, min(self.exp, other.exp))

    def __mul__(self, other: "QfracIdeal") -> "QfracIdeal":
        self._same(other)
        if self.is_zero or other.is_zero:
            return QfracIdeal(self.p, None)
        return QfracIdeal(self.p, self.exp + other.exp)

    def __le__(self, other: "QfracIdeal") -> bool:
        """Containment: p^n scalars sit inside p^m scalars iff n >= m."""
        self._same(other)
        if self.is_zero:
            return True
        if other.is_zero:
            return False
        return self.exp >= other.exp

    def contains(self, q: Fraction) -> bool:
        if self.is_zero:
            return Fraction(q) == 0
        return Fraction(q) == 0 or vp(Fraction(q), self.p) >= self.exp

    def render(self) -> str:
        if self.is_zero:
            return "0"
        if self.exp == 0:
            return "Z(p)"
        return f"p^{self.exp}"

    def __repr__(self):
        return f"QfracIdeal(p={self.p}, {self.render()})"


def qf_add(i: QfracIdeal, j: QfracIdeal) -> QfracIdeal:
    return i + j


def qf_mul(i: QfracIdeal, j: QfracIdeal) -> QfracIdeal:
    return i * j


def qf_leq(i: QfracIdeal, j: QfracIdeal) -> bool:
    return i <= j


def rational_ideal(p: int, q) -> QfracIdeal:
    q = Fraction(q)
    if q == 0:
        return QfracIdeal(p, None)
    return QfracIdeal(p, vp(q, p))


class RationalIdealSemiring:
    """Semiring handle for the fractional ideals of the rationals."""

    is_finite = False

    def __init__(self, p: int):
        if not is_prime_int(p):
            raise UnsupportedInstanceError(f"{p} is not prime")
        self.p = p
        self.zero = QfracIdeal(p, None)
        self.one = QfracIdeal(p, 0)

    def add(self, x, y):
        return x + y

    def mul(self, x, y):
        return x * y

    def leq(self, x, y):
        return x <= y

    def window(self, bound: int):
        return [self.zero] + [QfracIdeal(self.p, n)
                              for n in range(-bound, bound + 1)]

    def render(self, x):
        return x.render()

    def __repr__(self):
        return f"RationalIdealSemiring(p={self.p})"


# ---------------------------------------------------------------------------
# lattices in the quadratic field


@dataclass(frozen=True)
class QuadLattice:
    """Finitely generated module over the localized integers, canonical form.

    rank 0: the zero module.
    rank 1: one generator, normalized so a nonzero sqrt coordinate is an
        exact power of p (the generator of a rational module is a power of p).
    rank 2: a triangular basis: the pure-rational part is p^rat_exp and the
        pivot is resid + p^irr_exp * sqrt(d) with resid a canonical residue
        below rat_exp.
    """

    p: int
    d: int
    rank: int
    gen: tuple[Fraction, Fraction] | None = None
    rat_exp: int | None = None
    irr_exp: int | None = None
    resid: Fraction | None = None

    # -- construction ------------------------------------------------------

    @staticmethod
    def zero_lattice(p: int, d: int) -> "QuadLattice":
        return QuadLattice(p, d, 0)

    @staticmethod
    def one_lattice(p: int, d: int) -> "QuadLattice":
        return QuadLattice(p, d, 1, gen=(Fraction(1), Fraction(0)))

    @staticmethod
    def from_generators(p: int, d: int, gens) -> "QuadLattice":
        pts = [(Fraction(a), Fraction(b)) for a, b in gens
               if not (a == 0 and b == 0)]
        if not pts:
            return QuadLattice.zero_lattice(p, d)
        irr = [(a, b) for a, b in pts if b != 0]
        if not irr:
            exp = min(vp(a, p) for a, _ in pts)
            return QuadLattice(p, d, 1, gen=(Fraction(p) ** exp, Fraction(0)))
        b_exp = min(vp(b, p) for _, b in irr)
        pivot = next((a, b) for a, b in irr if vp(b, p) == b_exp)
        unit = Fraction(p) ** b_exp / pivot[1]
        pivot = (pivot[0] * unit, Fraction(p) ** b_exp)
        residual = []
        for a, b in pts:
            t = b / Fraction(p) ** b_exp
            rem = a - t * pivot[0]
            if rem != 0:
                residual.append(rem)
        if not residual:
            return QuadLattice(p, d, 1, gen=pivot)
        a_exp = min(vp(r, p) for r in residual)
        resid = canonical_residue(pivot[0], p, a_exp)
        return QuadLattice(p, d, 2, rat_exp=a_exp, irr_exp=b_exp, resid=resid)

    @staticmethod
    def principal(p: int, d: int, x: QF) -> "QuadLattice":
        if x.is_zero:
            return QuadLattice.zero_lattice(p, d)
        return QuadLattice.from_generators(p, d, [(x.a, x.b)])

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.rank == 0

    def generators(self) -> list[QF]:
        if self.rank == 0:
            return []
        if self.rank == 1:
            return [QF(self.d, self.gen[0], self.gen[1])]
        return [QF(self.d, Fraction(self.p) ** self.rat_exp, Fraction(0)),
                QF(self.d, self.resid, Fraction(self.p) ** self.irr_exp)]

    @property
    def scale_exponent(self) -> int:
        """Largest power of p that divides the whole module."""
        if self.rank == 0:
            raise SemiringError("the zero module has no scale")
        if self.rank == 1:
            a, b = self.gen
            if b == 0:
                return vp(a, self.p)
            return min(vp(b, self.p), vp(a, self.p)) if a != 0 else vp(b, self.p)
        exps = [self.rat_exp, self.irr_exp]
        if self.resid != 0:
            exps.append(vp(self.resid, self.p))
        return min(exps)

    def basis_matrix(self) -> list[list[Fraction]]:
        """Row basis over the scalars, triangular for rank two."""
        return [[g.a, g.b] for g in self.generators()]

    def contains(self, x: QF) -> bool:
        if x.d != self.d:
            raise SemiringError("field parameter mismatch")
        if x.is_zero:
            return True
        if self.rank == 0:
            return False
        if self.rank == 1:
            ga, gb = self.gen
            if gb != 0:
                t = x.b / gb
                return is_p_integral(t, self.p) and x.a == t * ga
            return x.b == 0 and is_p_integral(x.a / ga, self.p)
        pb = Fraction(self.p) ** self.irr_exp
        t = x.b / pb
        if not is_p_integral(t, self.p):
            return False
        rem = x.a - t * self.resid
        return rem == 0 or vp(rem, self.p) >= self.rat_exp

    def _same(self, other: "QuadLattice"):
        if self.p != other.p or self.d != other.d:
            raise SemiringError("parameter mismatch")

    def __add__(self, other: "QuadLattice") -> "QuadLattice":
        self._same(other)
        gens = [(g.a, g.b) for g in self.generators() + other.generators()]
        return QuadLattice.from_generators(self.p, self.d, gens)

    def __mul__(self, other: "QuadLattice") -> "QuadLattice":
        self._same(other)
        gens = []
        for g in self.generators():
            for h in other.generators():
                prod = g * h
                gens.append((prod.a, prod.b))
        return QuadLattice.from_generators(self.p, self.d, gens)

    def __le__(self, other: "QuadLattice") -> bool:
        self._same(other)
        return all(other.contains(g) for g in self.generators())

    def inverse(self) -> "QuadLattice":
        """Inverse of an invertible (principal) module."""
        if self.rank == 1:
            g = self.generators()[0]
            inv = g.inverse()
            return QuadLattice.from_generators(self.p, self.d, [(inv.a, inv.b)])
        raise SemiringError("only principal modules are inverted here")

    def render(self) -> str:
        if self.rank == 0:
            return "0"
        return "<" + ", ".join(g.render() for g in self.generators()) + ">"

    def __repr__(self):
        return f"QuadLattice({self.render()})"


def lat_add(m: QuadLattice, n: QuadLattice) -> QuadLattice:
    return m + n


def lat_mul(m: QuadLattice, n: QuadLattice) -> QuadLattice:
    return m * n


def lat_leq(m: QuadLattice, n: QuadLattice) -> bool:
    return m <= n


class QuadLatticeSemiring:
    """Semiring handle for finitely generated modules in the quadratic field."""

    is_finite = False

    def __init__(self, p: int, d: int):
        if not is_prime_int(p):
            raise UnsupportedInstanceError(f"{p} is not prime")
        if d not in SUPPORTED_D:
            raise UnsupportedInstanceError(f"unsupported field parameter d={d}")
        self.p = p
        self.d = d
        self.zero = QuadLattice.zero_lattice(p, d)
        self.one = QuadLattice.one_lattice(p, d)

    def add(self, x, y):
        return x + y

    def mul(self, x, y):
        return x * y

    def leq(self, x, y):
        return x <= y

    def principal(self, x: QF) -> QuadLattice:
        return QuadLattice.principal(self.p, self.d, x)

    def window(self, bound: int):
        out = [self.zero]
        for n in range(-bound, bound + 1):
            out.append(self.principal(QF.of(self.d, Fraction(self.p) ** n)))
        return out

    def render(self, x):
        return x.render()

    def __repr__(self):
        return f"QuadLatticeSemiring(p={self.p}, d={self.d})"


# ---------------------------------------------------------------------------
# generator-list oracle over plain integer lattices

# The oracle represents a module as a raw generator list and answers
# membership by integer gcd elimination after clearing denominators: an
# element lies in the localized span iff some multiple coprime to p lies in
# the integer span.  No canonical forms are involved.


def _clear_denominators(vectors):
    den = 1
    for a, b in vectors:
        den = den * Fraction(a).denominator // gcd(den, Fraction(a).denominator)
        den = den * Fraction(b).denominator // gcd(den, Fraction(b).denominator)
    cleared = [(int(Fraction(a) * den), int(Fraction(b) * den)) for a, b in vectors]
    return cleared, den


def _integer_basis(vectors):
    """Reduce integer generators to the basis {pivot, (eta, 0)}.

    The pivot is an integer combination whose second coordinate is the gcd
    of all second coordinates (None when every vector is on the axis), and
    eta generates the axis sublattice (0 when it is trivial).
    """
    vecs = [v for v in vectors if v != (0, 0)]
    pivot = None
    for a, b in vecs:
        if b == 0:
            continue
        if pivot is None:
            pivot = (a, b)
            continue
        pa, pb = pivot
        while b != 0:
            q = pb // b
            pa, pb, a, b = a, b, pa - q * a, pb - q * b
        pivot = (pa, pb)
    eta = 0
    for a, b in vecs:
        if b == 0:
            residual = a
        else:
            residual = a - (b // pivot[1]) * pivot[0]
        eta = gcd(eta, abs(residual))
    return pivot, eta


def oracle_membership(target, gens, p: int) -> bool:
    """Whether target lies in the localized integer span of the generators.

    Works by clearing denominators and gcd elimination over the plain
    integers, independently of the canonical lattice forms.
    """
    ta, tb = Fraction(target[0]), Fraction(target[1])
    if ta == 0 and tb == 0:
        return True
    gens = [(Fraction(a), Fraction(b)) for a, b in gens]
    gens = [g for g in gens if g != (Fraction(0), Fraction(0))]
    if not gens:
        return False
    cleared, _ = _clear_denominators(gens + [(ta, tb)])
    *gen_vecs, (ta, tb) = cleared
    pivot, eta = _integer_basis(gen_vecs)
    if pivot is None:
        if tb != 0:
            return False
        if ta == 0:
            return True
        return eta != 0 and vp_int(ta, p) >= vp_int(eta, p)
    pa, pb = pivot
    alpha = Fraction(tb, pb)
    if not is_p_integral(alpha, p):
        return False
    rem = Fraction(ta) - alpha * pa
    if rem == 0:
        return True
    if eta == 0:
        return False
    return vp(rem, p) >= vp_int(eta, p)


def oracle_subset(gens_a, gens_b, p: int) -> bool:
    return all(oracle_membership(g, gens_b, p) for g in gens_a)


def oracle_equal(gens_a, gens_b, p: int) -> bool:
    return oracle_subset(gens_a, gens_b, p) and oracle_subset(gens_b, gens_a, p)


def oracle_sum(gens_a, gens_b):
    return list(gens_a) + list(gens_b)


def oracle_product(gens_a, gens_b, d: int):
    out = []
    for a, b in gens_a:
        for c, e in gens_b:
            x = QF(d, Fraction(a), Fraction(b)) * QF(d, Fraction(c), Fraction(e))
            out.append((x.a, x.b))
    return out


def random_lattice_generators(rng: random.Random, p: int, exp_range=6,
                              max_gens=3):
    """Random generator list with p-exponents inside the window."""
    gens = []
    for _ in range(rng.randint(1, max_gens)):
        coords = []
        for _ in range(2):
            if rng.random() < 0.25:
                coords.append(Fraction(0))
                continue
            unit_num = rng.choice([1, 2, 3, 4, 6, 7])
            unit_den = rng.choice([1, 1, 1, 3])
            while unit_num % p == 0:
                unit_num += 1
            while unit_den % p == 0:
                unit_den += 1
            exp = rng.randint(-exp_range, exp_range)
            sign = rng.choice([1, -1])
            coords.append(sign * Fraction(unit_num, unit_den) * Fraction(p) ** exp)
        gens.append(tuple(coords))
    if all(a == 0 and b == 0 for a, b in gens):
        gens.append((Fraction(1), Fraction(0)))
    return gens


# ---------------------------------------------------------------------------
# dictionary between module homomorphisms and field valuations


def padic_valuation_hom(p: int) -> ValuationHom:
    """The p-adic valuation of the rationals as a max-plus valued map.

    The value group is the rank-one integer group; the image of p is the
    generator inverse, so the scalar ring is exactly the unit ball.
    """
    group = og.int_power(1)
    target = GammaMaxSemiring(group)

    def value(q) -> GammaMaxElement:
        q = Fraction(q)
        if q == 0:
            return target.zero
        return target.unit(-vp(q, p))

    source = RationalIdealSemiring(p)
    return ValuationHom(source, target, value, name=f"v_{p}")


class ModuleHom:
    """Homomorphism from a module semiring into a max-plus semifield,
    induced by a field valuation bounded by one on the scalars."""

    def __init__(self, semiring, w, target: GammaMaxSemiring, name="f"):
        self.semiring = semiring
        self.w = w
        self.target = target
        self.name = name
        self._check_bounded()

    def _check_bounded(self):
        p = self.semiring.p
        probes = [Fraction(p), Fraction(1), Fraction(p * p), Fraction(1, 3) if p != 3 else Fraction(1, 2)]
        for q in probes:
            d = getattr(self.semiring, "d", None)
            x = QF.of(d, q) if d is not None else q
            val = self.w(x)
            if not gm_leq(val, self.target.one):
                raise SemiringError(
                    f"valuation is not bounded by one on the scalars at {q}")

    def __call__(self, module) -> GammaMaxElement:
        if isinstance(module, QfracIdeal):
            if module.is_zero:
                return self.target.zero
            return self.w(Fraction(self.semiring.p) ** module.exp)
        if module.is_zero:
            return self.target.zero
        out = self.target.zero
        for g in module.generators():
            out = self.target.add(out, self.w(g))
        return out

    def check_on_pairs(self, pairs) -> bool:
        for m, n in pairs:
            if self(m + n) != self.target.add(self(m), self(n)):
                return False
            if self(m * n) != self.target.mul(self(m), self(n)):
                return False
        return True


def hom_from_valuation(semiring, w, target: GammaMaxSemiring) -> ModuleHom:
    """Module value: the largest valuation of a canonical generator."""
    return ModuleHom(semiring, w, target)


def valuation_from_hom(f: ModuleHom):
    """Field valuation x -> value of the principal module of x."""
    semiring = f.semiring

    def w(x):
        if isinstance(semiring, RationalIdealSemiring):
            return f(rational_ideal(semiring.p, x))
        return f(semiring.principal(x))

    return w


def module_downset(semiring, bound):
    """Membership in the family of finitely generated submodules of a fixed
    module: the saturated subsemigroup matching the module.

    bound is a module of the semiring, or the strings "all" / "zero".
    """
    if bound == "all":
        return lambda m: True
    if bound == "zero":
        return lambda m: m.is_zero
    return lambda m: semiring.leq(m, bound)


# ---------------------------------------------------------------------------
# extensions of the p-adic valuation to the quadratic field


def _squares_mod(p: int) -> set[int]:
    return {(k * k) % p for k in range(p)}


def _norm_form_solution(p: int, d: int):
    """Small solution of |a^2 - d b^2| = p, if one exists.

    Searching the sqrt coefficient first keeps the rational part as large
    as possible, picking 2+i over 1+2i at five.
    """
    bound = max(p, 4 * abs(d) + 4)
    for b in range(1, bound + 1):
        for a in range(bound + 1):
            if abs(a * a - d * b * b) == p:
                return a, b
    return None


@dataclass(frozen=True)
class ValuationExtension:
    """One prime above p in the quadratic field, with its valuation."""

    p: int
    d: int
    e: int
    f: int
    pi: QF
    kind: str  # "split" | "inert" | "ramified"

    @property
    def value_group_scale(self) -> Fraction:
        """Scale embedding the uniformizer exponents into the rationals."""
        return Fraction(1, self.e)

    def target(self) -> GammaMaxSemiring:
        return GammaMaxSemiring(og.rational_group())

    def uniformizer_exponent(self, x: QF) -> Fraction:
        """Exact exponent of the local uniformizer in a nonzero element."""
        if x.is_zero:
            raise ValueError("zero has no finite valuation")
        if self.kind == "inert":
            n = x.norm()
            v = vp(n, self.p)
            if v % self.f != 0:
                raise SemiringError("norm valuation must be even for an inert prime")
            return Fraction(v, self.f)
        if self.kind == "ramified":
            return Fraction(vp(x.norm(), self.p))
        return Fraction(self._split_exponent(x))

    def _split_exponent(self, x: QF) -> int:
        # pull out powers of p, then count exact divisions by the prime
        coords = [c for c in (x.a, x.b) if c != 0]
        t = min(vp(c, self.p) for c in coords)
        z = x.scale(Fraction(self.p) ** (-t))
        count = 0
        norm_pi = self.pi.norm()
        while True:
            nxt = (z * self.pi.conj()).scale(Fraction(1, norm_pi))
            if is_p_integral(nxt.a, self.p) and is_p_integral(nxt.b, self.p):
                z = nxt
                count += 1
            else:
                break
        return t + count

    def w(self, x: QF) -> GammaMaxElement:
        """The extended valuation, valued in the rational-exponent group."""
        group = og.rational_group()
        if x.is_zero:
            return gm_zero(group)
        exp = -self.uniformizer_exponent(x) / self.e
        return gm_unit(og.element(group, exp))

    def describe(self) -> dict:
        return {
            "kind": self.kind,
            "e": self.e,
            "f": self.f,
            "pi": self.pi.render(),
            "value_group_scale": str(self.value_group_scale),
        }


def extension_oracle(p: int, d: int) -> list[ValuationExtension]:
    """Classify the primes above p in the quadratic field by brute force.

    Ramified primes divide the discriminant; otherwise the splitting is
    decided both by a norm-form search and by brute-force squares modulo p,
    and the two classifications must agree.
    """
    if d not in SUPPORTED_D:
        raise UnsupportedInstanceError(f"unsupported field parameter d={d}")
    if not is_prime_int(p):
        raise UnsupportedInstanceError(f"{p} is not prime")
    disc = 4 * d
    if disc % p == 0:
        sol = _norm_form_solution(p, d)
        if sol is None:
            raise UnsupportedInstanceError(
                f"no ramified uniformizer found for p={p}, d={d}")
        pi = QF.of(d, sol[0], sol[1])
        return [ValuationExtension(p, d, 2, 1, pi, "ramified")]
    squares = _squares_mod(p)
    residue_split = (d % p) in squares
    sol = _norm_form_solution(p, d)
    if residue_split != (sol is not None):
        raise VerificationError(
            f"norm-form search and residue classification disagree at p={p}, d={d}")
    if residue_split:
        a, b = sol
        pi = QF.of(d, a, b)
        pis = sorted([pi, pi.conj()], key=lambda z: (z.a, z.b))
        return [ValuationExtension(p, d, 1, 1, z, "split") for z in pis]
    return [ValuationExtension(p, d, 1, 2, QF.of(d, p), "inert")]


# ---------------------------------------------------------------------------
# sample batteries and the verified pipeline


def sample_battery(p: int, d: int, seed: int = 0, extra: int = 16) -> list[QF]:
    """Fixed field elements plus seeded random ones, about forty in all."""
    P = Fraction(p)
    fixed = [
        QF.of(d, 1), QF.of(d, -1), QF.of(d, p), QF.of(d, -p), QF.of(d, p * p),
        QF.of(d, 1, 1), QF.of(d, 1, -1), QF.of(d, 0, 1), QF.of(d, 0, -1),
        QF.of(d, 2, 1), QF.of(d, 2, -1), QF.of(d, 1, 2),
        QF.of(d, Fraction(1, p)), QF.of(d, Fraction(1, p * p)),
        QF.of(d, Fraction(1, p), 1), QF.of(d, 1, Fraction(1, p)),
        QF.of(d, Fraction(3, 2) if p != 2 else Fraction(3, 5)),
        QF.of(d, P, P), QF.of(d, P, 1), QF.of(d, 1, P),
        QF.of(d, P + 1, P - 1), QF.of(d, 0, P * P),
        QF.of(d, Fraction(1, 3) if p != 3 else Fraction(1, 5), 2),
    ]
    rng = random.Random((seed, p, d, "battery").__repr__())
    out = list(fixed)
    for _ in range(extra):
        def coord():
            num = rng.randint(1, 9)
            den = rng.choice([1, 1, 2, 3])
            while num % p == 0:
                num += 1
            while den % p == 0:
                den += 1
            return rng.choice([1, -1]) * Fraction(num, den) * P ** rng.randint(-3, 3)
        out.append(QF(d, coord(), coord() if rng.random() < 0.8 else Fraction(0)))
    return out


def _check_valuation_axioms(ext: ValuationExtension, battery) -> None:
    """Multiplicativity, the ultrametric bound, and the two-sided axiom
    v(x) <= v(x+y) + v(y), all exact on the battery."""
    target = ext.target()
    wb = {i: ext.w(x) for i, x in enumerate(battery)}
    for i, x in enumerate(battery):
        for j, y in enumerate(battery):
            wxy = ext.w(x * y)
            if wxy != target.mul(wb[i], wb[j]):
                raise VerificationError(
                    "multiplicativity fails", (x.render(), y.render()))
            ws = ext.w(x + y)
            if not gm_leq(ws, target.add(wb[i], wb[j])):
                raise VerificationError(
                    "ultrametric bound fails", (x.render(), y.render()))
            if not gm_leq(wb[i], target.add(ws, wb[j])):
                raise VerificationError(
                    "two-sided valuation axiom fails", (x.render(), y.render()))


def _check_restriction(ext: ValuationExtension, battery) -> None:
    """The restriction to the rationals factors exactly through the value
    group embedding applied to the p-adic valuation."""
    j = og.embed(og.int_power(1), og.rational_group(), 1)
    base = padic_valuation_hom(ext.p)
    for x in battery:
        for q in (x.a, x.b, x.norm(), x.trace()):
            q = Fraction(q)
            restricted = ext.w(QF.of(ext.d, q))
            vq = base(q)
            lifted = gm_zero(og.rational_group()) if vq.is_zero \
                else gm_unit(j(vq.value))
            if restricted != lifted:
                raise VerificationError(
                    "restriction does not match the embedded base valuation",
                    str(q))


def _check_module_hom(ext: ValuationExtension, battery, seed: int) -> None:
    """The induced module homomorphism respects sums and products and
    extends the homomorphism of rational ideals."""
    lat = QuadLatticeSemiring(ext.p, ext.d)
    target = ext.target()
    f = hom_from_valuation(lat, ext.w, target)
    rng = random.Random((seed, ext.p, ext.d, ext.pi.render(), "hom").__repr__())
    mods = [lat.principal(x) for x in battery[:12]]
    mods += [mods[0] + mods[5], mods[1] + mods[7], lat.one, lat.zero]
    for _ in range(8):
        gens = random_lattice_generators(rng, ext.p)
        mods.append(QuadLattice.from_generators(ext.p, ext.d, gens))
    pairs = [(m, n) for m in mods for n in mods]
    if not f.check_on_pairs(pairs):
        raise VerificationError("module map is not a homomorphism")
    rat = RationalIdealSemiring(ext.p)
    base = hom_from_valuation(rat, padic_valuation_hom(ext.p),
                              GammaMaxSemiring(og.int_power(1)))
    j = og.embed(og.int_power(1), og.rational_group(), 1)
    for n in range(-4, 5):
        ideal = QfracIdeal(ext.p, n)
        lifted_module = lat.principal(QF.of(ext.d, Fraction(ext.p) ** n))
        base_val = base(ideal)
        want = gm_zero(og.rational_group()) if base_val.is_zero \
            else gm_unit(j(base_val.value))
        if f(lifted_module) != want:
            raise VerificationError("module map does not extend the base map",
                                    f"p^{n}")


@dataclass
class ExtensionReport:
    p: int
    d: int
    extensions: list[ValuationExtension]
    checks: dict

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "d": self.d,
            "extensions": [e.describe() for e in self.extensions],
            "checks": dict(sorted(self.checks.items())),
        }


def extend_valuation(p: int, d: int, seed: int = 0) -> ExtensionReport:
    """Extend the p-adic valuation to the quadratic field and verify it.

    Every extension produced by the classification oracle is checked to be
    a valuation, to restrict to the base valuation through the value-group
    embedding, and to induce a module homomorphism extending the rational
    one.  Any failure raises with the counterexample.
    """
    extensions = extension_oracle(p, d)
    degree = sum(ext.e * ext.f for ext in extensions)
    if degree != 2:
        raise VerificationError(
            f"ramification data does not sum to the field degree: {degree}")
    battery = sample_battery(p, d, seed=seed)
    for ext in extensions:
        # uniformizers and near-uniformizer sums exercise the strict and
        # degenerate ultrametric cases
        battery.extend([ext.pi, ext.pi.conj(), ext.pi * ext.pi,
                        ext.pi + QF.of(d, 1), ext.pi.scale(Fraction(1, p))])
    for ext in extensions:
        _check_valuation_axioms(ext, battery)
        _check_restriction(ext, battery)
        _check_module_hom(ext, battery, seed)
    checks = {
        "degree_sum": degree,
        "battery_size": len(battery),
        "valuation_axioms": True,
        "restriction_exact": True,
        "module_hom_extends": True,
    }
    if len(extensions) > 1:
        # distinct extensions must differ somewhere on the battery
        seen = set()
        for ext in extensions:
            signature = tuple(ext.w(x) for x in battery)
            if signature in seen:
                raise VerificationError("two extensions coincide on the battery")
            seen.add(signature)
        checks["extensions_distinct"] = True
    return ExtensionReport(p, d, extensions, checks)


# ---------------------------------------------------------------------------
# integrality of principal modules via characteristic polynomials


@dataclass
class PrincipalIntegrality:
    x: QF
    quasiintegral: bool
    witness: QuadLattice | None
    relation_checked: bool
    degree: int | None


def _witness_candidates(lat: QuadLatticeSemiring, x: QF, window: int = 2):
    p, d = lat.p, lat.d
    one = QF.of(d, 1)
    base_sets = [
        [one, x],
        [one, x, x * x],
    ]
    for k in range(-window, window + 1):
        base_sets.append([one, x.scale(Fraction(p) ** k)])
        base_sets.append([one, x, x.scale(Fraction(p) ** k)])
    for gens in base_sets:
        yield QuadLattice.from_generators(p, d, [(g.a, g.b) for g in gens])


def check_principal_integrality(p: int, d: int, x: QF,
                                window: int = 2) -> PrincipalIntegrality:
    """Decide integrality of a principal module and verify the bound.

    A witness is a bounded-search module M with 1 in M and x M inside M.
    When one exists, the characteristic polynomial of multiplication by x
    turns into the semiring bound X^2 <= c_1 X + c_0 with principal
    coefficient modules, verified by lattice arithmetic.  The bounded
    search is cross-checked against the exact criterion (trace and norm
    p-integral for a quadratic element).
    """
    lat = QuadLatticeSemiring(p, d)
    witness = None
    for m in _witness_candidates(lat, x, window):
        if m.contains(QF.of(d, 1)) and (lat.principal(x) * m) <= m:
            witness = m
            break
    exact = x.is_zero or (is_p_integral(x.trace(), p) and is_p_integral(x.norm(), p))
    if (witness is not None) != exact:
        raise VerificationError(
            "bounded witness search disagrees with the trace-norm criterion",
            x.render())
    if witness is None:
        return PrincipalIntegrality(x, False, None, False, None)
    big_x = lat.principal(x)
    c1 = lat.principal(QF.of(d, x.trace()))
    c0 = lat.principal(QF.of(d, x.norm()))
    bound = c1 * big_x + c0
    if not (big_x * big_x) <= bound:
        raise VerificationError("characteristic bound fails", x.render())
    return PrincipalIntegrality(x, True, witness, True, 2)


def check_principal_invertibility(p: int, d: int, seed: int = 0,
                                  samples: int = 40) -> bool:
    """Every nonzero principal module is invertible and every sampled
    module is a sum of principal modules of its basis."""
    lat = QuadLatticeSemiring(p, d)
    rng = random.Random((seed, p, d, "invert").__repr__())
    battery = sample_battery(p, d, seed=seed, extra=8)
    for x in battery:
        if x.is_zero:
            continue
        px = lat.principal(x)
        if px * px.inverse() != lat.one:
            return False
    for _ in range(samples):
        gens = random_lattice_generators(rng, p)
        m = QuadLattice.from_generators(p, d, gens)
        if m.is_zero:
            continue
        rebuilt = lat.zero
        for g in m.generators():
            rebuilt = rebuilt + lat.principal(g)
        if rebuilt != m:
            return False
    return True
