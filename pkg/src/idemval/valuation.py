"""Valuations as homomorphisms into max-plus semifields.

Covers valuation subsemirings of a unitgenerated carrier, the totally
ordered quotient of the unit group, the valuation induced by a valuation
subsemiring, the correspondence between saturated subsemigroups of the
value semifield and saturated submodules of the carrier, and the resulting
classification of saturated ideals.

Subsets of a max-plus carrier are represented by canonical down-sets: the
empty set, the zero singleton, an inclusive cut at a group element, an open
cut at a rational exponent, or the whole carrier.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ordered_group as og
from .core import (GammaMaxElement, GammaMaxSemiring, SemiringError, gm_leq,
                   is_saturated, is_unitgenerated, is_valuation, leq,
                   unit_inverse, units)

EMPTY = "empty"
ZERO_ONLY = "zero"
CUT = "cut"
OPEN_CUT = "open_cut"
ALL = "all"


@dataclass(frozen=True)
class DownSet:
    """Canonical saturated subset of a max-plus semifield."""

    kind: str
    bound: og.GroupElement | None = None

    def __post_init__(self):
        if self.kind in (CUT, OPEN_CUT) and self.bound is None:
            raise ValueError("cut down-sets need a bound")
        if self.kind in (EMPTY, ZERO_ONLY, ALL) and self.bound is not None:
            raise ValueError(f"{self.kind} down-sets carry no bound")

    def contains(self, x: GammaMaxElement) -> bool:
        if self.kind == EMPTY:
            return False
        if x.is_zero:
            return True
        if self.kind == ZERO_ONLY:
            return False
        if self.kind == ALL:
            return True
        cmp = og.compare(x.value, self.bound)
        if self.kind == CUT:
            return cmp != og.GREATER
        return cmp == og.LESS

    def __call__(self, x: GammaMaxElement) -> bool:
        return self.contains(x)

    def render(self) -> str:
        if self.kind == EMPTY:
            return "{}"
        if self.kind == ZERO_ONLY:
            return "{0}"
        if self.kind == ALL:
            return "all"
        rel = "<=" if self.kind == CUT else "<"
        return "{x " + rel + " " + og.render_element(self.bound) + "}"


def down_empty() -> DownSet:
    return DownSet(EMPTY)


def down_zero() -> DownSet:
    return DownSet(ZERO_ONLY)


def down_all() -> DownSet:
    return DownSet(ALL)


def down_cut(bound: og.GroupElement) -> DownSet:
    return DownSet(CUT, bound)


def down_open_cut(bound: og.GroupElement) -> DownSet:
    if bound.group.kind == og.INT_POWER:
        # on a discrete group the open cut collapses to the previous step
        prev = og.mul(bound, og.inverse(og.generator(bound.group, bound.group.rank - 1)))
        return DownSet(CUT, prev)
    return DownSet(OPEN_CUT, bound)


def unit_ball(k: GammaMaxSemiring) -> DownSet:
    """The canonical valuation subsemiring {x <= 1} of a max-plus carrier."""
    if k.group.kind == og.TRIVIAL:
        return down_all()
    return down_cut(og.identity(k.group))


def representable_downsets(k: GammaMaxSemiring, window: int) -> list[DownSet]:
    """All canonical down-sets whose cut lies inside the exponent window."""
    if k.group.kind == og.TRIVIAL:
        return [down_empty(), down_zero(), down_all()]
    if k.group.rank == 1 or k.group.kind == og.RATIONAL:
        cuts = [down_cut(x.value) for x in k.window(window) if not x.is_zero]
        return [down_empty(), down_zero()] + cuts + [down_all()]
    raise SemiringError("down-set enumeration supports rank-one groups only")


# ---------------------------------------------------------------------------
# valuation homomorphisms


class ValuationHom:
    """Homomorphism from an idempotent carrier into a max-plus semifield."""

    def __init__(self, source, target: GammaMaxSemiring, values, name="v"):
        self.source = source
        self.target = target
        self._values = values
        self.name = name

    def __call__(self, x) -> GammaMaxElement:
        if callable(self._values):
            return self._values(x)
        try:
            return self._values[x]
        except KeyError:
            raise SemiringError("map not total") from None

    def check(self, carrier=None) -> bool:
        return is_valuation(self.source, self.target, self.__call__, carrier)

    def check_value_group(self, carrier=None) -> bool:
        """The declared group is generated by the nonzero image values.

        Exact for the trivial and rank-one integer groups; sampled for the
        rest (a window cannot certify generation of a dense group).
        """
        carrier = list(self.source.elements() if carrier is None else carrier)
        exps = [self(x).value.exps for x in carrier if not self(x).is_zero]
        group = self.target.group
        if group.kind == og.TRIVIAL:
            return True
        if group == og.int_power(1):
            from math import gcd
            g = 0
            for (e,) in exps:
                g = gcd(g, abs(e))
            return g == 1
        return bool(exps)

    def __repr__(self):
        return f"ValuationHom({self.name}: {self.source!r} -> {self.target!r})"


def identity_valuation(k: GammaMaxSemiring) -> ValuationHom:
    return ValuationHom(k, k, lambda x: x, name="id")


def collapse_valuation(src) -> ValuationHom:
    """Send zero to zero and everything else to one (trivial value group)."""
    target = GammaMaxSemiring(og.trivial_group())
    return ValuationHom(
        src, target, lambda x: target.zero if x == src.zero else target.one,
        name="collapse")


# ---------------------------------------------------------------------------
# valuation subsemirings


def _membership(subset):
    return subset if callable(subset) else set(subset).__contains__


def is_valuation_subsemiring(k, subset, window: int = 8) -> bool:
    """Saturated subsemiring with the unit dichotomy x in R or 1/x in R.

    Finite carriers are checked exhaustively and must be unitgenerated;
    max-plus carriers are checked on the exponent window (unit generation
    holds by construction there).
    """
    member = _membership(subset)
    if k.is_finite:
        if not is_unitgenerated(k):
            raise SemiringError("the ambient carrier must be unitgenerated")
        carrier = list(k.elements())
        if not (member(k.zero) and member(k.one)):
            return False
        inside = [x for x in carrier if member(x)]
        for x in inside:
            for y in inside:
                if not member(k.add(x, y)) or not member(k.mul(x, y)):
                    return False
        if not is_saturated(k, member, carrier):
            return False
        for u in units(k):
            if not member(u) and not member(unit_inverse(k, u)):
                return False
        return True
    carrier = list(k.window(window))
    if not (member(k.zero) and member(k.one)):
        return False
    inside = [x for x in carrier if member(x)]
    in_carrier = set(carrier)
    for x in inside:
        for y in inside:
            p = k.mul(x, y)
            if p in in_carrier and not member(p):
                return False
            a = k.add(x, y)
            if a in in_carrier and not member(a):
                return False
    if not is_saturated(k, member, carrier):
        return False
    for x in carrier:
        if x.is_zero or member(x):
            continue
        if not member(k.inverse(x)):
            return False
    return True


def unit_classes(k, subset, window: int = 8):
    """The totally ordered group of units modulo the subsemiring's units.

    Returns (group, class_map) where class_map sends a unit of the carrier
    to its class.  Finite carriers always collapse to the trivial group
    (torsion admits no nontrivial total order); for a max-plus carrier the
    quotient is the whole value group when the subsemiring is the unit ball
    and trivial when it is everything.
    """
    member = _membership(subset)
    if k.is_finite:
        if not is_valuation_subsemiring(k, subset):
            raise SemiringError("not a valuation subsemiring")
        for u in units(k):
            if not (member(u) and member(unit_inverse(k, u))):
                raise SemiringError(
                    "finite unit classes must collapse; the subset is not saturated")
        grp = og.trivial_group()
        return grp, lambda u: og.identity(grp)
    if not is_valuation_subsemiring(k, subset, window):
        raise SemiringError("not a valuation subsemiring")
    if isinstance(subset, DownSet) and subset.kind == ALL:
        grp = og.trivial_group()
        return grp, lambda u: og.identity(grp)
    if isinstance(subset, DownSet) and subset.kind == CUT \
            and subset.bound == og.identity(k.group):
        return k.group, lambda u: u.value if isinstance(u, GammaMaxElement) else u
    raise SemiringError("unsupported subsemiring shape for unit classes")


def induced_valuation(k, subset, window: int = 8) -> ValuationHom:
    """The valuation determined by a valuation subsemiring.

    Sends a sum of units to the sum of their unit classes; the unit ball of
    the result recovers the subsemiring.
    """
    member = _membership(subset)
    grp, class_map = unit_classes(k, subset, window)
    target = GammaMaxSemiring(grp)
    if k.is_finite:
        values = {x: (target.zero if x == k.zero else target.one)
                  for x in k.elements()}
        v = ValuationHom(k, target, values, name="induced")
    else:
        if grp.kind == og.TRIVIAL:
            v = ValuationHom(
                k, target,
                lambda x: target.zero if x.is_zero else target.one,
                name="induced")
        else:
            v = ValuationHom(
                k, target,
                lambda x: target.zero if x.is_zero
                else GammaMaxElement(grp, class_map(x)),
                name="induced")
    carrier = list(k.elements() if k.is_finite else k.window(window))
    if not v.check(carrier):
        raise SemiringError("induced map fails the valuation axioms")
    for x in carrier:
        if member(x) != gm_leq(v(x), target.one):
            raise SemiringError("induced valuation does not recover the subsemiring")
    return v


# ---------------------------------------------------------------------------
# saturated subsemigroups of the value semifield vs saturated submodules


def submodule_of_subsemigroup(v: ValuationHom, u: DownSet, window: int = 8):
    """Pull a saturated subsemigroup of the value semifield back along v.

    For finite sources the result is the explicit preimage; for max-plus
    sources it is the matching down-set description.
    """
    if v.source.is_finite:
        return frozenset(x for x in v.source.elements() if u.contains(v(x)))
    if v.name == "id" or v.source is v.target:
        return u
    raise SemiringError("symbolic preimages are supported for the identity only")


def subsemigroup_of_submodule(v: ValuationHom, m, window: int = 8) -> DownSet:
    """Push a saturated submodule of the carrier forward along v."""
    if v.source.is_finite:
        member = _membership(m)
        image = {v(x) for x in v.source.elements() if member(x)}
        nonzero = [g for g in image if not g.is_zero]
        if not image:
            return down_empty()
        if not nonzero:
            return down_zero()
        if v.target.group.kind == og.TRIVIAL:
            return down_all()
        top = nonzero[0]
        for g in nonzero[1:]:
            top = v.target.add(top, g)
        return down_cut(top.value)
    if isinstance(m, DownSet):
        return m
    raise SemiringError("symbolic images need a down-set description")


def thm_roundtrip_ok(v: ValuationHom, downsets, window: int = 8) -> bool:
    """Both composites of the correspondence are the identity."""
    for u in downsets:
        m = submodule_of_subsemigroup(v, u, window)
        back = subsemigroup_of_submodule(v, m, window)
        if v.source.is_finite:
            m2 = submodule_of_subsemigroup(v, back, window)
            if m2 != m:
                return False
        else:
            if back != u:
                return False
    return True


def saturated_ideals(k, subset, window: int = 8) -> list[DownSet]:
    """Saturated ideals of a valuation subsemiring, via the value semifield.

    Ideals correspond to the nonempty saturated subsemigroups of the part
    of the value semifield below one; on a window over the rank-one integer
    group these are the zero singleton and the cuts at nonpositive powers.
    """
    v = induced_valuation(k, subset, window)
    grp = v.target.group
    if grp.kind == og.TRIVIAL:
        return [down_zero(), down_all()]
    ideals = [down_zero()]
    one = og.identity(grp)
    for x in v.target.window(window):
        if x.is_zero:
            continue
        if og.compare(x.value, one) != og.GREATER:
            ideals.append(down_cut(x.value))
    return ideals


def ideals_form_chain(k, subset, window: int = 8) -> bool:
    """Containment between the listed ideals is total."""
    ideals = saturated_ideals(k, subset, window)
    v = induced_valuation(k, subset, window)
    sample = list(k.elements() if k.is_finite else k.window(window))

    def materialize(d: DownSet):
        return frozenset(i for i, x in enumerate(sample) if d.contains(v(x)))

    sets = [materialize(d) for d in ideals]
    for a in sets:
        for b in sets:
            if not (a <= b or b <= a):
                return False
    return True
