"""Contraction, integrality and quasiintegral closure.

The contraction of a module collapses two elements exactly when each is
below a scalar multiple of the other; every scalar then acts as a
contraction on the quotient.  On top of the contraction this module decides
integrality (the adjoined saturated subsemiring is a finite module, or
equivalently a power of the element is bounded by lower powers with scalar
coefficients) and quasiintegrality (a nonzero contracted witness s with
s*x <= s), computes quasiintegral closures, and verifies the structural
facts about contractions used by the extension pipeline.

Finite carriers are decided exactly.  Max-plus carriers use closed-form
rules justified by the value map and are spot-checked on exponent windows;
genuinely unbounded searches report that they are bounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import ordered_group as og
from .core import (GammaMaxSemiring, SemiringError, gm_leq, is_simple, leq,
                   saturated_closure, saturated_submodules)
from .finite_semiring import FiniteSemiring, make_semiring


# ---------------------------------------------------------------------------
# contraction


@dataclass
class Contraction:
    """Contraction of a finite module inside its ambient semiring."""

    ambient: FiniteSemiring
    module: tuple[int, ...]
    scalars: tuple[int, ...]
    class_of: dict
    classes: tuple[tuple[int, ...], ...]

    def class_index(self, x: int) -> int:
        return self.class_of[x]

    def rep(self, cid: int) -> int:
        return self.classes[cid][0]

    def leq(self, ca: int, cb: int) -> bool:
        """Class order: a below b iff a is below some scalar multiple of b."""
        a, b = self.rep(ca), self.rep(cb)
        return any(leq(self.ambient, a, self.ambient.mul(r, b))
                   for r in self.scalars)

    def mul(self, ca: int, cb: int) -> int:
        """Class product; well-defined when the module is the whole algebra."""
        return self.class_of[self.ambient.mul(self.rep(ca), self.rep(cb))]

    def add(self, ca: int, cb: int) -> int:
        return self.class_of[self.ambient.add(self.rep(ca), self.rep(cb))]

    def act(self, r: int, ca: int) -> int:
        return self.class_of[self.ambient.mul(r, self.rep(ca))]

    @property
    def zero_class(self) -> int:
        return self.class_of[self.ambient.zero]

    def render_class(self, cid: int) -> str:
        names = [self.ambient.names[x] for x in self.classes[cid]]
        if len(names) == 1:
            return names[0]
        return "{" + ",".join(names) + "}"

    def semiring(self) -> FiniteSemiring:
        """The contraction as a semiring (module equal to the algebra)."""
        if set(self.module) != set(self.ambient.elements()):
            raise SemiringError("only whole-algebra contractions form a semiring")
        k = len(self.classes)
        names = [self.render_class(c) for c in range(k)]
        add = [[self.add(i, j) for j in range(k)] for i in range(k)]
        mul = [[self.mul(i, j) for j in range(k)] for i in range(k)]
        return make_semiring(f"{self.ambient.name}_c", names, add, mul,
                             self.class_of[self.ambient.zero],
                             self.class_of[self.ambient.one])


def contraction_related(s, scalars, x, y, window=None) -> bool:
    """Mutual domination: x below r*y and y below t*x for scalars r, t."""
    dominated = any(leq(s, x, s.mul(r, y)) for r in scalars)
    dominates = any(leq(s, y, s.mul(t, x)) for t in scalars)
    return dominated and dominates


def contract(a: FiniteSemiring, scalars, module=None) -> Contraction:
    """Contraction classes of a finite module over a scalar subset."""
    scalars = tuple(sorted(set(scalars)))
    module = tuple(sorted(set(a.elements() if module is None else module)))
    class_of: dict[int, int] = {}
    classes: list[list[int]] = []
    for x in module:
        for cid, cls in enumerate(classes):
            if contraction_related(a, scalars, x, cls[0]):
                class_of[x] = cid
                cls.append(x)
                break
        else:
            class_of[x] = len(classes)
            classes.append([x])
    # the relation is an equivalence; a failure here means broken tables
    for x in module:
        for y in module:
            related = class_of[x] == class_of[y]
            if related != contraction_related(a, scalars, x, y):
                raise SemiringError("contraction relation is not transitive")
    return Contraction(a, module, scalars, class_of,
                       tuple(tuple(c) for c in classes))


def contraction_leq(c: Contraction, ca: int, cb: int) -> bool:
    return c.leq(ca, cb)


def factors_through_contraction(c: Contraction, target, mapping) -> bool:
    """Any map with psi(r*x) <= psi(x) is constant on contraction classes."""
    get = mapping if callable(mapping) else mapping.__getitem__
    for r in c.scalars:
        for x in c.module:
            if not leq(target, get(c.ambient.mul(r, x)), get(x)):
                return False
    return all(
        get(x) == get(cls[0])
        for cls in c.classes for x in cls)


# ---------------------------------------------------------------------------
# adjoined subsemirings and integrality on finite carriers


def adjoin_saturated(a: FiniteSemiring, scalars, x: int) -> frozenset:
    """Smallest saturated subsemiring containing the scalars and x."""
    seed = set(scalars) | {x, a.zero, a.one}
    current = saturated_closure(a, seed)
    changed = True
    while changed:
        changed = False
        extra = set()
        for u in current:
            for v in current:
                p = a.mul(u, v)
                if p not in current:
                    extra.add(p)
        if extra:
            current = saturated_closure(a, set(current) | extra)
            changed = True
    return frozenset(current)


@dataclass(frozen=True)
class IntegralWitness:
    degree: int
    coeffs: tuple

    def render(self, a: FiniteSemiring) -> str:
        terms = ", ".join(a.names[c] for c in self.coeffs)
        return f"degree {self.degree} with coefficients ({terms})"


def _power(a: FiniteSemiring, x: int, n: int) -> int:
    out = a.one
    for _ in range(n):
        out = a.mul(out, x)
    return out


def integral_witness(a: FiniteSemiring, scalars, x: int,
                     degree_bound: int | None = None) -> IntegralWitness | None:
    """Search for n > 1 and scalars c_i with x^n <= c_0 + ... + c_{n-1}x^{n-1}."""
    scalars = sorted(set(scalars))
    bound = a.size + 2 if degree_bound is None else degree_bound
    powers = [a.one]
    for _ in range(bound):
        powers.append(a.mul(powers[-1], x))
    for n in range(2, bound + 1):
        target = powers[n]
        for coeffs in product(scalars, repeat=n):
            total = a.zero
            for i, c in enumerate(coeffs):
                total = a.add(total, a.mul(c, powers[i]))
            if leq(a, target, total):
                return IntegralWitness(n, tuple(coeffs))
    return None


def is_integral(a: FiniteSemiring, scalars, x: int) -> IntegralWitness | None:
    """Exact decision: the adjoined subsemiring is a finite module.

    The module characterization and the bounded-power inequality must agree
    on a finite carrier; disagreement raises.
    """
    from .core import is_finite_module
    adjoined = adjoin_saturated(a, scalars, x)
    module_finite = is_finite_module(a, sorted(adjoined), sorted(set(scalars)))
    witness = integral_witness(a, scalars, x)
    if module_finite != (witness is not None):
        raise SemiringError("integrality characterizations disagree")
    return witness


def is_quasiintegral(a: FiniteSemiring, scalars, x: int):
    """A nonzero contracted class s with s*x <= s; returns (bool, witness)."""
    if not is_simple(a):
        raise SemiringError("quasiintegrality needs a simple algebra")
    con = contract(a, scalars)
    cx = con.class_index(x)
    for cid in range(len(con.classes)):
        if cid == con.zero_class:
            continue
        if con.leq(con.mul(cid, cx), cid):
            return True, cid
    return False, None


def quasiintegral_closure(a: FiniteSemiring, scalars,
                          cross_check: bool = True) -> frozenset:
    """Elements quasiintegral over the scalars.

    For a unitgenerated carrier the result is cross-checked against the
    intersection of the unit balls of all homomorphisms into totally
    ordered semifields that are bounded by one on the scalars.
    """
    closure = frozenset(x for x in a.elements()
                        if is_quasiintegral(a, scalars, x)[0])
    if cross_check:
        from .core import is_unitgenerated
        if is_unitgenerated(a):
            from .valuation_order import enumerate_valuation_orders
            balls = []
            for rel in enumerate_valuation_orders(a, nondegenerate=True):
                if all(rel.has(r, a.one) for r in scalars):
                    balls.append(frozenset(x for x in a.elements()
                                           if rel.has(x, a.one)))
            intersected = frozenset(a.elements())
            for ball in balls:
                intersected &= ball
            if intersected != closure:
                raise SemiringError(
                    "closure disagrees with the intersection of unit balls")
    return closure


def is_extensible(a: FiniteSemiring, scalars) -> bool:
    """Quasiintegral implies integral, elementwise."""
    for x in a.elements():
        quasi, _ = is_quasiintegral(a, scalars, x)
        if quasi and is_integral(a, scalars, x) is None:
            return False
    return True


def check_quasiintegral_hom_criterion(a: FiniteSemiring, scalars) -> bool:
    """Quasiintegral elements are exactly those that every homomorphism of
    the contraction into a totally ordered semifield bounds by one."""
    from .valuation_order import enumerate_valuation_orders
    con = contract(a, scalars)
    cs = con.semiring()
    orders = enumerate_valuation_orders(cs, nondegenerate=True)
    for x in a.elements():
        quasi, _ = is_quasiintegral(a, scalars, x)
        cx = con.class_index(x)
        bounded = all(rel.has(cx, cs.one) for rel in orders)
        if quasi != bounded:
            return False
    return True


# ---------------------------------------------------------------------------
# max-plus carriers: closed forms plus window checks


def gamma_quasiintegral(k: GammaMaxSemiring, x, window: int = 8) -> bool:
    """Over the unit ball of a max-plus semifield, quasiintegral means
    bounded by one; the witness equation s*x <= s cancels to x <= 1."""
    exact = gm_leq(x, k.one)
    for s in k.window(window):
        if s.is_zero:
            continue
        if gm_leq(k.mul(s, x), s) != exact:
            raise SemiringError("window witness disagrees with the closed form")
    return exact


@dataclass(frozen=True)
class SymbolicIntegrality:
    status: str  # "integral" | "not_integral" | "unknown"
    degree: int | None = None
    bound: int | None = None


def gamma_integral(k: GammaMaxSemiring, x, degree_bound: int = 8) -> SymbolicIntegrality:
    """Integrality over the unit ball of a max-plus semifield.

    Sums are monotone in the coefficients, so the witness search at each
    degree only needs the top coefficient of the unit ball, which is one.
    Failure up to the bound is conclusive here: with coefficients at most
    one, every term of the bound is at most x^(n-1), so an element above
    one can never be dominated at any degree.
    """
    if gm_leq(x, k.one):
        # witness x^2 <= 0 + x * x with the element itself as coefficient
        return SymbolicIntegrality("integral", degree=2)
    for n in range(2, degree_bound + 1):
        xn, total, power = k.one, k.zero, k.one
        for _ in range(n):
            xn = k.mul(xn, x)
        for _ in range(n):
            total = k.add(total, power)
            power = k.mul(power, x)
        if gm_leq(xn, total):
            return SymbolicIntegrality("integral", degree=n)
    return SymbolicIntegrality("not_integral", bound=degree_bound)


def gamma_closure_is_unit_ball(k: GammaMaxSemiring, window: int = 8) -> bool:
    """Quasiintegral closure of the unit ball is the unit ball, with a
    trivial unit group."""
    for x in k.window(window):
        if x.is_zero:
            continue
        if gamma_quasiintegral(k, x, window) != gm_leq(x, k.one):
            return False
    for x in k.window(window):
        if x.is_zero or x == k.one:
            continue
        if gm_leq(x, k.one) and gm_leq(k.inverse(x), k.one):
            return False
    return True


def windowed_contraction_classes(k, scalars_member, window: int = 8):
    """Contraction classes of a window of a symbolic carrier.

    scalars_member is a membership predicate for the scalar subset; the
    relation is evaluated with scalars drawn from the same window.
    """
    carrier = list(k.window(window))
    scalars = [r for r in carrier if scalars_member(r)]
    classes: list[list] = []
    for x in carrier:
        for cls in classes:
            y = cls[0]
            dominated = any(
                leq(k, x, k.mul(r, y)) for r in scalars)
            dominates = any(
                leq(k, y, k.mul(t, x)) for t in scalars)
            if dominated and dominates:
                cls.append(x)
                break
        else:
            classes.append([x])
    return classes


# ---------------------------------------------------------------------------
# structural checks on contractions


def check_contraction_value_iso(k: GammaMaxSemiring, window: int = 8) -> bool:
    """The contraction of a max-plus semifield over its unit ball has one
    class per value; the class order matches the value order."""
    from .valuation import unit_ball
    ball = unit_ball(k)
    classes = windowed_contraction_classes(k, ball.contains, window)
    carrier = list(k.window(window))
    if len(classes) != len(carrier):
        return False
    reps = [cls[0] for cls in classes]
    for x in reps:
        for y in reps:
            dominated = any(
                leq(k, x, k.mul(r, y))
                for r in carrier if ball.contains(r))
            if dominated != leq(k, x, y):
                return False
    return True


def check_contraction_injectivity(big: FiniteSemiring, sub, scalars) -> bool:
    """The contraction of a subalgebra embeds into the contraction of the
    ambient algebra."""
    sub = tuple(sorted(set(sub)))
    inner = contract(big, scalars, module=sub)
    outer = contract(big, scalars)
    for x in sub:
        for y in sub:
            if outer.class_of[x] == outer.class_of[y]:
                if inner.class_of[x] != inner.class_of[y]:
                    return False
    return True


def check_contraction_extensibility(a: FiniteSemiring, scalars) -> bool:
    """An extensible simple algebra stays extensible after contraction."""
    if not is_extensible(a, scalars):
        raise SemiringError("instance must start extensible")
    con = contract(a, scalars)
    cs = con.semiring()
    contracted_scalars = sorted({con.class_of[r] for r in scalars})
    return is_extensible(cs, contracted_scalars)


def check_contraction_unit_ball(p: int, window: int = 8) -> bool:
    """For the fractional-ideal semiring over a localized integer ring, the
    contraction of the unit-ball subsemiring matches the part of the full
    contraction sitting below one."""
    from .frac_ideal import QfracIdeal, RationalIdealSemiring
    s = RationalIdealSemiring(p)

    def in_ball(i: QfracIdeal) -> bool:
        return leq(s, i, s.one)

    full = windowed_contraction_classes(s, in_ball, window)
    ball_carrier = [i for i in s.window(window) if in_ball(i)]
    inner = []
    for x in ball_carrier:
        for cls in inner:
            y = cls[0]
            dominated = any(leq(s, x, s.mul(r, y)) for r in ball_carrier
                            if in_ball(r))
            dominates = any(leq(s, y, s.mul(t, x)) for t in ball_carrier
                            if in_ball(t))
            if dominated and dominates:
                cls.append(x)
                break
        else:
            inner.append([x])
    below_one = [cls for cls in full if in_ball(cls[0])]
    if len(below_one) != len(inner):
        return False
    # matching class contents under the inclusion
    inner_sets = {frozenset(cls) for cls in inner}
    below_sets = {frozenset(cls) & frozenset(ball_carrier) for cls in below_one}
    return inner_sets == below_sets


def check_contraction_facts(window: int = 8) -> dict:
    """Run the contraction facts on their bundled instances."""
    from .finite_semiring import load_corpus
    from .frac_ideal import RationalIdealSemiring
    zmax = GammaMaxSemiring(og.int_power(1))
    bz = load_corpus("b_z2")
    b_inside = (bz.zero, bz.one)
    report = {
        "value_iso_on_zmax": check_contraction_value_iso(zmax, window),
        "injectivity_on_b_in_bz2": check_contraction_injectivity(
            bz, b_inside, b_inside),
        "extensibility_on_bz2_over_b": check_contraction_extensibility(
            bz, b_inside),
        "unit_ball_on_rational_ideals_p5": check_contraction_unit_ball(5, window),
    }
    return report
