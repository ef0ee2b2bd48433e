"""Idempotent semiring primitives.

This module houses the max-plus semifield over an exact ordered group, the
canonical order x <= y iff x + y = y, saturated subsets, and the predicates
(simplicity, unit generation, module finiteness) that every other module
builds on.

Carriers are duck-typed "semiring handles".  A handle exposes:

    zero, one          distinguished elements
    add(x, y), mul(x, y)
    is_finite          bool
    elements()         full carrier (finite handles only)
    window(bound)      finite sample of the carrier, always containing
                       zero and one (finite handles return everything)
    render(x)          human-readable element name

FiniteSemiring (operation tables) and GammaMaxSemiring below both satisfy
this contract, as do the fractional-ideal carriers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import ordered_group as og


class SemiringError(ValueError):
    pass


# ---------------------------------------------------------------------------
# the max-plus semifield over an ordered group


@dataclass(frozen=True)
class GammaMaxElement:
    """Either the absorbing zero (value None) or a group element."""

    group: og.OrderedAbelianGroup
    value: og.GroupElement | None

    @property
    def is_zero(self):
        return self.value is None

    def __repr__(self):
        return f"GammaMaxElement({render_gm(self)!r})"


def gm_zero(group: og.OrderedAbelianGroup) -> GammaMaxElement:
    return GammaMaxElement(group, None)


def gm_unit(g: og.GroupElement) -> GammaMaxElement:
    return GammaMaxElement(g.group, g)


def _gm_same(x: GammaMaxElement, y: GammaMaxElement):
    if x.group != y.group:
        raise og.GroupMismatchError(f"group mismatch: {x.group!r} vs {y.group!r}")


def gm_add(x: GammaMaxElement, y: GammaMaxElement) -> GammaMaxElement:
    """Addition is max under the group order; zero is the bottom."""
    _gm_same(x, y)
    if x.is_zero:
        return y
    if y.is_zero:
        return x
    return x if og.compare(x.value, y.value) != og.LESS else y


def gm_mul(x: GammaMaxElement, y: GammaMaxElement) -> GammaMaxElement:
    _gm_same(x, y)
    if x.is_zero or y.is_zero:
        return gm_zero(x.group)
    return gm_unit(og.mul(x.value, y.value))


def gm_leq(x: GammaMaxElement, y: GammaMaxElement) -> bool:
    return gm_add(x, y) == y


def gm_inverse(x: GammaMaxElement) -> GammaMaxElement:
    if x.is_zero:
        raise SemiringError("zero has no multiplicative inverse")
    return gm_unit(og.inverse(x.value))


def render_gm(x: GammaMaxElement) -> str:
    return "0" if x.is_zero else og.render_element(x.value)


def parse_gm(group: og.OrderedAbelianGroup, text: str) -> GammaMaxElement:
    text = text.strip()
    if text == "0":
        return gm_zero(group)
    return gm_unit(og.parse_element(group, text))


class GammaMaxSemiring:
    """Semiring handle for the max-plus semifield of an ordered group."""

    is_finite = False

    def __init__(self, group: og.OrderedAbelianGroup):
        self.group = group
        self.zero = gm_zero(group)
        self.one = gm_unit(og.identity(group))

    def add(self, x, y):
        return gm_add(x, y)

    def mul(self, x, y):
        return gm_mul(x, y)

    def leq(self, x, y):
        return gm_leq(x, y)

    def inverse(self, x):
        return gm_inverse(x)

    def unit(self, *exps) -> GammaMaxElement:
        return gm_unit(og.element(self.group, *exps))

    def elements(self):
        if self.group.kind == og.TRIVIAL:
            return [self.zero, self.one]
        raise SemiringError("infinite carrier has no element list; use window()")

    def window(self, bound: int, den: int = 1):
        """Zero plus all units with exponents inside the symmetric window."""
        if self.group.kind == og.TRIVIAL:
            return [self.zero, self.one]
        if self.group.kind == og.RATIONAL:
            exps = [Fraction(k, den) for k in range(-bound * den, bound * den + 1)]
            return [self.zero] + [self.unit(e) for e in exps]
        if self.group.rank == 1:
            return [self.zero] + [self.unit(k) for k in range(-bound, bound + 1)]
        coords = range(-bound, bound + 1)
        units = []

        def rec(prefix):
            if len(prefix) == self.group.rank:
                units.append(self.unit(*prefix))
                return
            for c in coords:
                rec(prefix + (c,))

        rec(())
        return [self.zero] + units

    def render(self, x):
        return render_gm(x)

    def parse(self, text):
        return parse_gm(self.group, text)

    def __repr__(self):
        return f"GammaMaxSemiring({self.group!r})"


def boolean_gamma_max() -> GammaMaxSemiring:
    """The two-element semifield {0, 1} as a max-plus carrier."""
    return GammaMaxSemiring(og.trivial_group())


# ---------------------------------------------------------------------------
# canonical order and generic predicates


def leq(s, x, y) -> bool:
    """Canonical partial order of an idempotent semiring: x + y = y."""
    return s.add(x, y) == y


def lub_is_add(s, carrier=None) -> bool:
    """x + y is the least upper bound of {x, y}; exhaustive on the carrier."""
    carrier = list(s.elements() if carrier is None else carrier)
    in_carrier = set(carrier)
    for x in carrier:
        for y in carrier:
            z = s.add(x, y)
            if z not in in_carrier:
                continue
            if not (leq(s, x, z) and leq(s, y, z)):
                return False
            for u in carrier:
                if leq(s, x, u) and leq(s, y, u) and not leq(s, z, u):
                    return False
    return True


def is_valuation(src, target, values, carrier=None) -> bool:
    """Whether a map into a max-plus semifield is a semiring homomorphism.

    `values` is a dict or callable on the supplied carrier.  On idempotent
    sources the valuation axioms collapse to v(0)=0, v(1)=1, v(xy)=v(x)v(y)
    and v(x+y)=v(x)+v(y); the last two are checked for every pair whose sum
    or product stays inside the carrier.
    """
    carrier = list(src.elements() if carrier is None else carrier)
    lookup = values if callable(values) else values.__getitem__
    table = {}
    for x in carrier:
        try:
            table[x] = lookup(x)
        except KeyError:
            raise SemiringError("map not total") from None
        if table[x] is None:
            raise SemiringError("map not total")
    if table.get(src.zero) != target.zero or table.get(src.one) != target.one:
        return False
    in_carrier = set(carrier)
    for x in carrier:
        for y in carrier:
            p = src.mul(x, y)
            if p in in_carrier and table[p] != target.mul(table[x], table[y]):
                return False
            a = src.add(x, y)
            if a in in_carrier and table[a] != target.add(table[x], table[y]):
                return False
    return True


def _as_membership(subset):
    if callable(subset):
        return subset
    members = set(subset)
    return members.__contains__


def is_saturated(s, subset, universe=None) -> bool:
    """Additively closed and downward closed inside the given universe."""
    universe = list(s.elements() if universe is None else universe)
    member = _as_membership(subset)
    inside = [x for x in universe if member(x)]
    in_universe = set(universe)
    for x in inside:
        for y in inside:
            z = s.add(x, y)
            if z in in_universe and not member(z):
                return False
    for y in inside:
        for x in universe:
            if leq(s, x, y) and not member(x):
                return False
    return True


def saturated_closure(s, seed, universe=None) -> frozenset:
    """Least subset containing the seed, closed under + and downward closed.

    The closure of the empty set is empty; callers wanting a submodule
    should include zero in the seed.
    """
    universe = list(s.elements() if universe is None else universe)
    in_universe = set(universe)
    current = set(x for x in seed if x in in_universe)
    changed = True
    while changed:
        changed = False
        for x in list(current):
            for y in list(current):
                z = s.add(x, y)
                if z in in_universe and z not in current:
                    current.add(z)
                    changed = True
        for x in universe:
            if x in current:
                continue
            if any(leq(s, x, y) for y in current):
                current.add(x)
                changed = True
    return frozenset(current)


def units(s) -> list:
    """Invertible elements of a finite carrier."""
    elems = list(s.elements())
    out = []
    for x in elems:
        if any(s.mul(x, y) == s.one for y in elems):
            out.append(x)
    return out


def unit_inverse(s, x):
    for y in s.elements():
        if s.mul(x, y) == s.one:
            return y
    raise SemiringError(f"{s.render(x)} is not a unit")


def is_unitgenerated(s) -> bool:
    """Every element is the sum of the units below it (zero: empty sum)."""
    us = units(s)
    for x in s.elements():
        total = s.zero
        for u in us:
            if leq(s, u, x):
                total = s.add(total, u)
        if total != x:
            return False
    return True


def is_simple(s) -> bool:
    """For every nonzero x there is a y with xy >= 1."""
    elems = list(s.elements())
    for x in elems:
        if x == s.zero:
            continue
        if not any(leq(s, s.one, s.mul(x, y)) for y in elems):
            return False
    return True


def is_finite_module(s, module=None, scalars=None) -> bool:
    """Singly boundedly generated: some x has every y below a scalar multiple."""
    module = list(s.elements() if module is None else module)
    scalars = list(s.elements() if scalars is None else scalars)
    if not module:
        return False
    for x in module:
        if all(any(leq(s, y, s.mul(r, x)) for r in scalars) for y in module):
            return True
    return False


def saturated_submodules(s, module=None, scalars=None) -> list[frozenset]:
    """All nonempty subsets closed under +, scalar action and down-closure."""
    module = list(s.elements() if module is None else module)
    scalars = list(s.elements() if scalars is None else scalars)
    out = []
    n = len(module)
    if n > 16:
        raise SemiringError("carrier too large for submodule enumeration")
    for size in range(1, n + 1):
        for combo in combinations(module, size):
            subset = frozenset(combo)
            ok = True
            for x in subset:
                for y in subset:
                    if s.add(x, y) not in subset:
                        ok = False
                        break
                if not ok:
                    break
                for r in scalars:
                    if s.mul(r, x) not in subset:
                        ok = False
                        break
                if not ok:
                    break
                for y in module:
                    if leq(s, y, x) and y not in subset:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                out.append(subset)
    return out


def is_noetherian(s, module=None, scalars=None) -> bool:
    """Every saturated submodule is a finite module."""
    module = list(s.elements() if module is None else module)
    scalars = list(s.elements() if scalars is None else scalars)
    return all(
        is_finite_module(s, sorted(sub, key=module.index), scalars)
        for sub in saturated_submodules(s, module, scalars)
    )
