"""Valuation orders on finite idempotent semirings.

A valuation order is a total preorder refining the canonical order,
compatible with both operations and cancellative against elements that do
not sit below zero.  On a finite carrier the space of such orders is a
finite set; this module enumerates it, converts between orders and
homomorphisms into totally ordered semifields, and decides admissibility
of strict-inequality constraint sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import ordered_group as og
from .core import GammaMaxSemiring, SemiringError, gm_leq
from .finite_semiring import (Congruence, FiniteSemiring, GuardExceededError,
                              ORDER_GUARD, is_cancellative, is_congruence,
                              is_totally_ordered, quotient)
from .valuation import ValuationHom


class DegenerateOrderError(SemiringError):
    pass


@dataclass(frozen=True)
class Relation:
    size: int
    pairs: frozenset

    def has(self, x: int, y: int) -> bool:
        return (x, y) in self.pairs

    def render(self, r: FiniteSemiring) -> str:
        header = "    " + " ".join(f"{n:>3}" for n in r.names)
        lines = [header]
        for x in range(self.size):
            row = " ".join(f"{1 if self.has(x, y) else 0:>3}" for y in range(self.size))
            lines.append(f"{r.names[x]:>3} {row}")
        return "\n".join(lines)


@dataclass(frozen=True)
class OrderCheck:
    ok: bool
    axiom: int | None = None
    witness: tuple | None = None

    def describe(self, r: FiniteSemiring) -> str:
        if self.ok:
            return "valuation order"
        names = ", ".join(r.names[i] for i in self.witness)
        labels = {
            1: "transitivity",
            2: "totality",
            3: "additive compatibility",
            4: "refinement of the canonical order",
            5: "multiplicative compatibility",
            6: "cancellation",
        }
        return f"axiom {self.axiom} ({labels[self.axiom]}) fails at ({names})"


def is_valuation_order(r: FiniteSemiring, rel: Relation) -> OrderCheck:
    """Check the six axioms, reporting the first failure with a witness."""
    n = r.size
    if rel.size != n:
        raise SemiringError("relation sized for a different carrier")
    rng = range(n)
    for x in rng:
        for y in rng:
            if not rel.has(x, y):
                continue
            for z in rng:
                if rel.has(y, z) and not rel.has(x, z):
                    return OrderCheck(False, 1, (x, y, z))
    for x in rng:
        for y in rng:
            if not rel.has(x, y) and not rel.has(y, x):
                return OrderCheck(False, 2, (x, y))
    for x in rng:
        for y in rng:
            if not rel.has(x, y):
                continue
            for z in rng:
                if not rel.has(r.add(x, z), r.add(y, z)):
                    return OrderCheck(False, 3, (x, y, z))
    for x in rng:
        for y in rng:
            if r.leq(x, y) and not rel.has(x, y):
                return OrderCheck(False, 4, (x, y))
    for x in rng:
        for y in rng:
            if not rel.has(x, y):
                continue
            for z in rng:
                if not rel.has(r.mul(x, z), r.mul(y, z)):
                    return OrderCheck(False, 5, (x, y, z))
    for x in rng:
        for y in rng:
            for z in rng:
                if rel.has(r.mul(x, z), r.mul(y, z)):
                    if not rel.has(x, y) and not rel.has(z, r.zero):
                        return OrderCheck(False, 6, (x, y, z))
    return OrderCheck(True)


def is_degenerate(r: FiniteSemiring, rel: Relation) -> bool:
    return rel.has(r.one, r.zero)


def canonical_relation(r: FiniteSemiring) -> Relation:
    pairs = frozenset((x, y) for x in range(r.size) for y in range(r.size)
                      if r.leq(x, y))
    return Relation(r.size, pairs)


def enumerate_valuation_orders(r: FiniteSemiring, nondegenerate=False,
                               prune=True) -> list[Relation]:
    """All valuation orders, smallest relations first.

    The default strategy only explores supersets of the canonical order,
    which the refinement axiom forces anyway; prune=False scans all 2^(n^2)
    relations instead (used to cross-check the pruned search).
    """
    if r.size > ORDER_GUARD:
        raise GuardExceededError(
            f"order enumeration is limited to {ORDER_GUARD} elements "
            f"({r.name} has {r.size})")
    all_pairs = [(x, y) for x in range(r.size) for y in range(r.size)]
    base = canonical_relation(r).pairs if prune else frozenset()
    free = [p for p in all_pairs if p not in base]
    found = []
    for k in range(len(free) + 1):
        for extra in combinations(free, k):
            rel = Relation(r.size, base | frozenset(extra))
            if nondegenerate and is_degenerate(r, rel):
                continue
            if is_valuation_order(r, rel).ok:
                found.append(rel)
    found.sort(key=lambda rel: (len(rel.pairs), tuple(sorted(rel.pairs))))
    return found


def order_from_hom(r: FiniteSemiring, v: ValuationHom) -> Relation:
    """x below y whenever v(x) <= v(y); always a valuation order."""
    pairs = frozenset((x, y) for x in range(r.size) for y in range(r.size)
                      if gm_leq(v(x), v(y)))
    rel = Relation(r.size, pairs)
    check = is_valuation_order(r, rel)
    if not check.ok:
        raise SemiringError(
            f"homomorphism induced a non-order: {check.describe(r)}")
    return rel


def symmetrization(r: FiniteSemiring, rel: Relation) -> Congruence:
    class_of = []
    reps: list[int] = []
    for x in range(r.size):
        for cid, rep in enumerate(reps):
            if rel.has(x, rep) and rel.has(rep, x):
                class_of.append(cid)
                break
        else:
            class_of.append(len(reps))
            reps.append(x)
    cong = Congruence.canonical(class_of)
    if not is_congruence(r, cong):
        raise SemiringError("symmetrization is not a congruence")
    return cong


def frac_semifield(d, unit_ball_subring=None, window: int = 8):
    """Fraction semifield of a totally ordered cancellative carrier.

    Returns (semifield, embedding).  Finite carriers are computed honestly
    as classes of pairs x/s and land in the two-element semifield; a
    max-plus carrier (or its unit ball) has all of the ambient semifield as
    fractions.
    """
    if isinstance(d, GammaMaxSemiring):
        if unit_ball_subring is None:
            return d, lambda x: x
        from .valuation import unit_ball
        if unit_ball_subring == unit_ball(d):
            return d, lambda x: x
        raise SemiringError("unsupported subsemiring shape for fractions")
    if not isinstance(d, FiniteSemiring):
        raise SemiringError("need a finite table or a max-plus carrier")
    if d.zero == d.one or d.size < 2:
        raise SemiringError("fractions need 0 != 1")
    if not is_cancellative(d):
        raise SemiringError(f"{d.name} is not cancellative")
    if not is_totally_ordered(d):
        raise SemiringError(f"{d.name} is not totally ordered")
    nonzero = [s for s in range(d.size) if s != d.zero]
    pairs = [(x, s) for x in range(d.size) for s in nonzero]
    reps: list[tuple[int, int]] = []
    class_of = {}
    for pr in pairs:
        x, s = pr
        for cid, (y, t) in enumerate(reps):
            if d.mul(x, t) == d.mul(y, s):
                class_of[pr] = cid
                break
        else:
            class_of[pr] = len(reps)
            reps.append(pr)
    nonzero_classes = {class_of[pr] for pr in pairs if class_of[pr] != class_of[(d.zero, d.one)]}
    if len(nonzero_classes) != 1:
        raise SemiringError(
            "fraction group of a finite chain should be trivial; got "
            f"{len(nonzero_classes)} classes")
    target = GammaMaxSemiring(og.trivial_group())

    def embed_elem(x):
        return target.zero if x == d.zero else target.one

    return target, embed_elem


def hom_from_order(r: FiniteSemiring, rel: Relation) -> ValuationHom:
    """Build the homomorphism matching a nondegenerate valuation order.

    The symmetrization congruence gives a totally ordered cancellative
    quotient whose fraction semifield receives the carrier; the resulting
    map v satisfies x below y in the order iff v(x) <= v(y).
    """
    if is_degenerate(r, rel):
        raise DegenerateOrderError(
            "degenerate order (1 below 0): the fraction semifield collapses")
    cong = symmetrization(r, rel)
    q, class_of = quotient(r, cong)
    if not is_totally_ordered(q):
        raise SemiringError("quotient by the symmetrization is not totally ordered")
    if not is_cancellative(q):
        raise SemiringError("quotient by the symmetrization is not cancellative")
    target, embed_elem = frac_semifield(q)
    values = {x: embed_elem(class_of[x]) for x in range(r.size)}
    v = ValuationHom(r, target, values, name="order")
    for x in range(r.size):
        for y in range(r.size):
            if rel.has(x, y) != gm_leq(v(x), v(y)):
                raise SemiringError("order and homomorphism disagree")
    return v


# ---------------------------------------------------------------------------
# admissibility


def is_admissible(r: FiniteSemiring, constraints) -> tuple[bool, ValuationHom | None]:
    """Whether some homomorphism makes every constraint (x, y) strict,
    in the sense v(y) < v(x).  Returns a witness homomorphism if so."""
    constraints = list(constraints)
    for rel in enumerate_valuation_orders(r, nondegenerate=True):
        if all(not rel.has(x, y) for x, y in constraints):
            return True, hom_from_order(r, rel)
    return False, None


def check_finite_character(r: FiniteSemiring, constraints) -> bool:
    """Admissibility of every subset is equivalent to admissibility of the
    whole set; a coherence check of the enumeration on finite carriers."""
    constraints = list(constraints)
    whole, _ = is_admissible(r, constraints)
    orders = enumerate_valuation_orders(r, nondegenerate=True)

    def subset_admissible(subset):
        return any(all(not rel.has(x, y) for x, y in subset) for rel in orders)

    every_subset = all(
        subset_admissible(sub)
        for k in range(len(constraints) + 1)
        for sub in combinations(constraints, k))
    return every_subset == whole
