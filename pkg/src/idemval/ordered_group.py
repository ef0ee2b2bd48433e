"""Exact totally ordered abelian groups, written multiplicatively.

Three kinds of value group are supported: the trivial group, ZZ^n under the
lexicographic order, and QQ.  Elements are exponent vectors (exact integers,
or a single exact rational), so every comparison and product is exact.  The
rank-one integer group renders its elements as powers of the symbolic
generator "γ"; rational exponents render as "γ^(a/b)" and lexicographic
elements as coordinate tuples "(a,b)".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

LESS, EQUAL, GREATER = -1, 0, 1

TRIVIAL = "trivial"
INT_POWER = "int_power"
RATIONAL = "rational"


class GroupMismatchError(ValueError):
    """Elements of two different groups were combined."""


class EmbeddingError(ValueError):
    """A requested group embedding does not exist or is not injective."""


@dataclass(frozen=True)
class OrderedAbelianGroup:
    kind: str
    rank: int = 0

    def __post_init__(self):
        if self.kind not in (TRIVIAL, INT_POWER, RATIONAL):
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.kind == INT_POWER and self.rank < 1:
            raise ValueError("int_power groups need positive rank")
        if self.kind != INT_POWER and self.rank != 0:
            raise ValueError(f"{self.kind} group carries no rank")

    def __repr__(self):
        if self.kind == TRIVIAL:
            return "Group(1)"
        if self.kind == RATIONAL:
            return "Group(Q)"
        return f"Group(Z^{self.rank})" if self.rank > 1 else "Group(Z)"


def trivial_group() -> OrderedAbelianGroup:
    return OrderedAbelianGroup(TRIVIAL)


def int_power(rank: int) -> OrderedAbelianGroup:
    return OrderedAbelianGroup(INT_POWER, rank)


def rational_group() -> OrderedAbelianGroup:
    return OrderedAbelianGroup(RATIONAL)


@dataclass(frozen=True)
class GroupElement:
    group: OrderedAbelianGroup
    exps: tuple

    def __repr__(self):
        return f"GroupElement({render_element(self)!r})"


def _check_same(g: GroupElement, h: GroupElement):
    if g.group != h.group:
        raise GroupMismatchError(f"group mismatch: {g.group!r} vs {h.group!r}")


def element(group: OrderedAbelianGroup, *exps) -> GroupElement:
    """Build a group element from exponent coordinates."""
    if group.kind == TRIVIAL:
        if exps and any(e != 0 for e in exps):
            raise ValueError("the trivial group has no nonidentity elements")
        return GroupElement(group, ())
    if group.kind == RATIONAL:
        if len(exps) != 1:
            raise ValueError("rational group elements take one exponent")
        return GroupElement(group, (Fraction(exps[0]),))
    if len(exps) != group.rank:
        raise ValueError(f"expected {group.rank} coordinates, got {len(exps)}")
    coords = []
    for e in exps:
        if isinstance(e, Fraction):
            if e.denominator != 1:
                raise ValueError("integer group coordinates must be integers")
            e = e.numerator
        coords.append(int(e))
    return GroupElement(group, tuple(coords))


def identity(group: OrderedAbelianGroup) -> GroupElement:
    if group.kind == TRIVIAL:
        return GroupElement(group, ())
    if group.kind == RATIONAL:
        return GroupElement(group, (Fraction(0),))
    return GroupElement(group, (0,) * group.rank)


def generator(group: OrderedAbelianGroup, axis: int = 0) -> GroupElement:
    """The distinguished generator γ (or the axis-th one for Z^n)."""
    if group.kind == TRIVIAL:
        raise ValueError("the trivial group has no generator")
    if group.kind == RATIONAL:
        return GroupElement(group, (Fraction(1),))
    exps = [0] * group.rank
    exps[axis] = 1
    return GroupElement(group, tuple(exps))


def mul(g: GroupElement, h: GroupElement) -> GroupElement:
    _check_same(g, h)
    return GroupElement(g.group, tuple(a + b for a, b in zip(g.exps, h.exps)))


def inverse(g: GroupElement) -> GroupElement:
    return GroupElement(g.group, tuple(-a for a in g.exps))


def power(g: GroupElement, n: int) -> GroupElement:
    return GroupElement(g.group, tuple(a * n for a in g.exps))


def compare(g: GroupElement, h: GroupElement) -> int:
    """Total order: lexicographic on Z^n coordinates, numeric on Q."""
    _check_same(g, h)
    if g.exps == h.exps:
        return EQUAL
    return LESS if g.exps < h.exps else GREATER


def leq(g: GroupElement, h: GroupElement) -> bool:
    return compare(g, h) != GREATER


def render_element(g: GroupElement) -> str:
    group = g.group
    if group.kind == TRIVIAL:
        return "1"
    if group.kind == INT_POWER and group.rank > 1:
        return "(" + ",".join(str(a) for a in g.exps) + ")"
    exp = g.exps[0]
    if exp == 0:
        return "1"
    if exp == 1:
        return "γ"
    if isinstance(exp, Fraction) and exp.denominator != 1:
        return f"γ^({exp.numerator}/{exp.denominator})"
    return f"γ^{int(exp)}"


def parse_element(group: OrderedAbelianGroup, text: str) -> GroupElement:
    """Parse the output of render_element back, bit-exactly."""
    text = text.strip()
    if text == "1":
        return identity(group)
    if group.kind == TRIVIAL:
        raise ValueError(f"cannot parse {text!r} in the trivial group")
    if group.kind == INT_POWER and group.rank > 1:
        if not (text.startswith("(") and text.endswith(")")):
            raise ValueError(f"expected coordinate tuple, got {text!r}")
        parts = text[1:-1].split(",")
        return element(group, *(int(p) for p in parts))
    if text == "γ":
        return element(group, 1)
    if not text.startswith("γ^"):
        raise ValueError(f"cannot parse group element {text!r}")
    body = text[len("γ^"):]
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    return element(group, Fraction(body))


class GroupEmbedding:
    """Order-preserving injective homomorphism given by exponent scaling."""

    def __init__(self, source: OrderedAbelianGroup, target: OrderedAbelianGroup,
                 scale=1):
        scale = Fraction(scale)
        if scale <= 0:
            raise EmbeddingError("scale must be positive (zero scale is not injective)")
        ok = (
            source.kind == TRIVIAL
            or (source.kind == target.kind and source.rank == target.rank)
            or (source == int_power(1) and target.kind == RATIONAL)
        )
        if not ok:
            raise EmbeddingError(f"no embedding of {source!r} into {target!r}")
        if source.kind == INT_POWER and target.kind == INT_POWER and scale.denominator != 1:
            # fractional scales only land in the target on a sublattice
            pass
        self.source = source
        self.target = target
        self.scale = scale

    def __call__(self, g: GroupElement) -> GroupElement:
        if g.group != self.source:
            raise GroupMismatchError("element does not belong to the source group")
        scaled = [Fraction(a) * self.scale for a in g.exps]
        if self.target.kind == TRIVIAL:
            return identity(self.target)
        if self.target.kind == INT_POWER:
            if any(s.denominator != 1 for s in scaled):
                raise EmbeddingError(
                    f"image of {render_element(g)} leaves the integer target group")
            return element(self.target, *(s.numerator for s in scaled))
        if self.source.kind == TRIVIAL:
            return identity(self.target)
        return element(self.target, scaled[0])

    def __repr__(self):
        return f"GroupEmbedding({self.source!r} -> {self.target!r}, scale={self.scale})"


def embed(source: OrderedAbelianGroup, target: OrderedAbelianGroup,
          scale=1) -> GroupEmbedding:
    return GroupEmbedding(source, target, scale)
