"""Explicit finite idempotent semirings given by operation tables.

Carriers are loaded from a small text format (see parse_table), validated
exhaustively against the semiring axioms, and support full congruence
enumeration, prime / quotient-cancellative / radical classification,
reduction, quotients and localization at the nonzero elements.  Elements
are represented by their table index; reports always use element names.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from itertools import product

from .core import SemiringError, leq

CONGRUENCE_GUARD = 6
ORDER_GUARD = 4


class InvalidSemiringError(SemiringError):
    def __init__(self, violations):
        self.violations = list(violations)
        lines = "; ".join(v.describe() for v in self.violations[:3])
        super().__init__(f"not an idempotent semiring: {lines}")


class GuardExceededError(SemiringError):
    pass


@dataclass(frozen=True)
class Violation:
    law: str
    elements: tuple[str, ...]
    detail: str

    def describe(self) -> str:
        where = ", ".join(self.elements)
        return f"{self.law} fails at ({where}): {self.detail}"


@dataclass(frozen=True)
class FiniteSemiring:
    name: str
    names: tuple[str, ...]
    add_table: tuple[tuple[int, ...], ...]
    mul_table: tuple[tuple[int, ...], ...]
    zero: int
    one: int

    is_finite = True

    @property
    def size(self) -> int:
        return len(self.names)

    def elements(self):
        return range(self.size)

    def window(self, bound=None):
        return range(self.size)

    def add(self, x: int, y: int) -> int:
        return self.add_table[x][y]

    def mul(self, x: int, y: int) -> int:
        return self.mul_table[x][y]

    def leq(self, x: int, y: int) -> bool:
        return self.add_table[x][y] == y

    def render(self, x: int) -> str:
        return self.names[x]

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise SemiringError(f"{self.name} has no element named {name!r}") from None

    def __repr__(self):
        return f"FiniteSemiring({self.name!r}, {self.size} elements)"


def validate(r: FiniteSemiring) -> list[Violation]:
    """Exhaustive axiom check; an empty list means the tables are a
    commutative idempotent semiring."""
    out = []
    n = r.size
    names = r.names
    rng = range(n)
    for t in (r.add_table, r.mul_table):
        if len(t) != n or any(len(row) != n for row in t):
            return [Violation("shape", (), "tables must be n x n")]
        for row in t:
            for v in row:
                if not (0 <= v < n):
                    return [Violation("shape", (), f"index {v} out of range")]

    def name(*idx):
        return tuple(names[i] for i in idx)

    for x in rng:
        if r.add(x, x) != x:
            out.append(Violation("idempotent addition", name(x),
                                 f"{names[x]}+{names[x]}={names[r.add(x, x)]}"))
        if r.add(r.zero, x) != x:
            out.append(Violation("additive identity", name(x),
                                 f"0+{names[x]}={names[r.add(r.zero, x)]}"))
        if r.mul(r.one, x) != x:
            out.append(Violation("multiplicative identity", name(x),
                                 f"1*{names[x]}={names[r.mul(r.one, x)]}"))
        if r.mul(r.zero, x) != r.zero:
            out.append(Violation("absorbing zero", name(x),
                                 f"0*{names[x]}={names[r.mul(r.zero, x)]}"))
    for x in rng:
        for y in rng:
            if r.add(x, y) != r.add(y, x):
                out.append(Violation("commutative addition", name(x, y),
                                     f"{names[x]}+{names[y]} != {names[y]}+{names[x]}"))
            if r.mul(x, y) != r.mul(y, x):
                out.append(Violation("commutative multiplication", name(x, y),
                                     f"{names[x]}*{names[y]} != {names[y]}*{names[x]}"))
    for x in rng:
        for y in rng:
            for z in rng:
                if r.add(r.add(x, y), z) != r.add(x, r.add(y, z)):
                    out.append(Violation("associative addition", name(x, y, z),
                                         "grouping changes the sum"))
                if r.mul(r.mul(x, y), z) != r.mul(x, r.mul(y, z)):
                    out.append(Violation("associative multiplication", name(x, y, z),
                                         "grouping changes the product"))
                lhs = r.mul(x, r.add(y, z))
                rhs = r.add(r.mul(x, y), r.mul(x, z))
                if lhs != rhs:
                    out.append(Violation(
                        "distributivity", name(x, y, z),
                        f"{names[x]}*({names[y]}+{names[z]})={names[lhs]} but "
                        f"{names[x]}*{names[y]}+{names[x]}*{names[z]}={names[rhs]}"))
    return out


def make_semiring(name, names, add_table, mul_table, zero, one,
                  check=True) -> FiniteSemiring:
    r = FiniteSemiring(name, tuple(names),
                       tuple(tuple(row) for row in add_table),
                       tuple(tuple(row) for row in mul_table),
                       zero, one)
    if check:
        violations = validate(r)
        if violations:
            raise InvalidSemiringError(violations)
    return r


# ---------------------------------------------------------------------------
# text format


def parse_table(text: str, check=True) -> FiniteSemiring:
    """Parse the .sr table format.

    Layout: a header line `semiring NAME`, then `elements:`, `zero:`,
    `one:` lines, then `add:` and `mul:` sections each holding n rows of
    n element names.  Tokens are whitespace separated, `#` starts a comment.
    """
    lines = []
    for raw in text.splitlines():
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append(stripped)
    if not lines or not lines[0].startswith("semiring"):
        raise SemiringError("expected a 'semiring <name>' header")
    name = lines[0].split(None, 1)[1].strip()
    fields = {}
    i = 1
    while i < len(lines) and ":" in lines[i] and lines[i].split(":", 1)[0] in (
            "elements", "zero", "one"):
        key, value = lines[i].split(":", 1)
        fields[key.strip()] = value.strip()
        i += 1
    for key in ("elements", "zero", "one"):
        if key not in fields:
            raise SemiringError(f"missing '{key}:' line")
    names = tuple(fields["elements"].split())
    if len(set(names)) != len(names):
        raise SemiringError("duplicate element names")
    index = {nm: k for k, nm in enumerate(names)}

    def look(nm):
        if nm not in index:
            raise SemiringError(f"unknown element name {nm!r}")
        return index[nm]

    zero, one = look(fields["zero"]), look(fields["one"])
    tables = {}
    n = len(names)
    while i < len(lines):
        section = lines[i].rstrip(":")
        if section not in ("add", "mul"):
            raise SemiringError(f"unexpected section {lines[i]!r}")
        rows = []
        for j in range(n):
            i += 1
            if i >= len(lines):
                raise SemiringError(f"{section} table is truncated")
            row = [look(tok) for tok in lines[i].split()]
            if len(row) != n:
                raise SemiringError(f"{section} row {j} has {len(row)} entries, want {n}")
            rows.append(tuple(row))
        tables[section] = tuple(rows)
        i += 1
    if "add" not in tables or "mul" not in tables:
        raise SemiringError("need both an add: and a mul: table")
    return make_semiring(name, names, tables["add"], tables["mul"], zero, one,
                         check=check)


def dump_table(r: FiniteSemiring) -> str:
    lines = [f"semiring {r.name}",
             "elements: " + " ".join(r.names),
             f"zero: {r.names[r.zero]}",
             f"one: {r.names[r.one]}"]
    for label, table in (("add", r.add_table), ("mul", r.mul_table)):
        lines.append(f"{label}:")
        for row in table:
            lines.append(" ".join(r.names[v] for v in row))
    return "\n".join(lines) + "\n"


def load_file(path, check=True) -> FiniteSemiring:
    with open(path, encoding="utf-8") as fh:
        return parse_table(fh.read(), check=check)


def corpus_names() -> list[str]:
    root = resources.files(__package__) / "corpus"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".sr"))


def load_corpus(name: str, check=True) -> FiniteSemiring:
    if not name.endswith(".sr"):
        name += ".sr"
    data = (resources.files(__package__) / "corpus" / name).read_text(encoding="utf-8")
    return parse_table(data, check=check)


# ---------------------------------------------------------------------------
# congruences


@dataclass(frozen=True)
class Congruence:
    """Partition of the carrier compatible with both operations, stored as
    the class id of each element (ids in order of first appearance)."""

    partition: tuple[int, ...]

    @staticmethod
    def canonical(class_of) -> "Congruence":
        remap, out = {}, []
        for c in class_of:
            if c not in remap:
                remap[c] = len(remap)
            out.append(remap[c])
        return Congruence(tuple(out))

    @staticmethod
    def equality(r: FiniteSemiring) -> "Congruence":
        return Congruence(tuple(range(r.size)))

    @staticmethod
    def total(r: FiniteSemiring) -> "Congruence":
        return Congruence((0,) * r.size)

    def same(self, x: int, y: int) -> bool:
        return self.partition[x] == self.partition[y]

    def classes(self) -> list[tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for x, c in enumerate(self.partition):
            out.setdefault(c, []).append(x)
        return [tuple(out[c]) for c in sorted(out)]

    def class_count(self) -> int:
        return len(set(self.partition))

    def refines(self, other: "Congruence") -> bool:
        return all(other.same(x, y)
                   for x in range(len(self.partition))
                   for y in range(len(self.partition)) if self.same(x, y))

    def meet(self, other: "Congruence") -> "Congruence":
        pairs = list(zip(self.partition, other.partition))
        return Congruence.canonical([pairs.index(p) for p in pairs])

    def render(self, r: FiniteSemiring) -> str:
        parts = []
        for cls in self.classes():
            names = [r.names[x] for x in cls]
            parts.append("{" + ",".join(names) + "}")
        return " ".join(parts)


def is_congruence(r: FiniteSemiring, part: Congruence) -> bool:
    for x in range(r.size):
        for y in range(x + 1, r.size):
            if not part.same(x, y):
                continue
            for z in range(r.size):
                if not part.same(r.add(x, z), r.add(y, z)):
                    return False
                if not part.same(r.mul(x, z), r.mul(y, z)):
                    return False
    return True


def congruence_generated(r: FiniteSemiring, pairs) -> Congruence:
    """Smallest congruence relating every given pair."""
    parent = list(range(r.size))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            return True
        return False

    for a, b in pairs:
        union(a, b)
    changed = True
    while changed:
        changed = False
        for x in range(r.size):
            for y in range(x + 1, r.size):
                if find(x) != find(y):
                    continue
                for z in range(r.size):
                    if union(r.add(x, z), r.add(y, z)):
                        changed = True
                    if union(r.mul(x, z), r.mul(y, z)):
                        changed = True
    return Congruence.canonical([find(x) for x in range(r.size)])


def _partitions(items):
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for smaller in _partitions(rest):
        for k in range(len(smaller)):
            yield smaller[:k] + [[head] + smaller[k]] + smaller[k + 1:]
        yield [[head]] + smaller


def congruences(r: FiniteSemiring) -> list[Congruence]:
    """All congruences, by filtering every set partition of the carrier."""
    if r.size > CONGRUENCE_GUARD:
        raise GuardExceededError(
            f"congruence enumeration is limited to {CONGRUENCE_GUARD} elements "
            f"({r.name} has {r.size})")
    found = []
    for blocks in _partitions(list(range(r.size))):
        class_of = [0] * r.size
        for cid, block in enumerate(blocks):
            for x in block:
                class_of[x] = cid
        cand = Congruence.canonical(class_of)
        if is_congruence(r, cand):
            found.append(cand)
    found.sort(key=lambda c: (c.class_count(), c.partition))
    return found


# ---------------------------------------------------------------------------
# classification


def is_prime(r: FiniteSemiring, c: Congruence) -> bool:
    """xy+zw ~ xw+zy forces x ~ z or y ~ w, and 0 is not related to 1."""
    if c.same(r.zero, r.one):
        return False
    for x, y, z, w in product(range(r.size), repeat=4):
        lhs = r.add(r.mul(x, y), r.mul(z, w))
        rhs = r.add(r.mul(x, w), r.mul(z, y))
        if c.same(lhs, rhs) and not (c.same(x, z) or c.same(y, w)):
            return False
    return True


def is_cancellative(r: FiniteSemiring) -> bool:
    for s in range(r.size):
        if s == r.zero:
            continue
        for x in range(r.size):
            for y in range(r.size):
                if r.mul(s, x) == r.mul(s, y) and x != y:
                    return False
    return True


def is_totally_ordered(r: FiniteSemiring) -> bool:
    return all(r.leq(x, y) or r.leq(y, x)
               for x in range(r.size) for y in range(r.size))


def is_domain(r: FiniteSemiring) -> bool:
    return is_prime(r, Congruence.equality(r))


def quotient(r: FiniteSemiring, c: Congruence) -> tuple[FiniteSemiring, list[int]]:
    """Quotient semiring plus the element -> class map."""
    classes = c.classes()
    reps = [cls[0] for cls in classes]
    class_of = list(c.partition)

    def class_name(cls):
        if len(cls) == 1:
            return r.names[cls[0]]
        return "{" + ",".join(r.names[x] for x in cls) + "}"

    names = [class_name(cls) for cls in classes]
    k = len(classes)
    add = [[class_of[r.add(reps[i], reps[j])] for j in range(k)] for i in range(k)]
    mul = [[class_of[r.mul(reps[i], reps[j])] for j in range(k)] for i in range(k)]
    q = make_semiring(f"{r.name}/~", names, add, mul,
                      class_of[r.zero], class_of[r.one])
    return q, class_of


def is_qc(r: FiniteSemiring, c: Congruence) -> bool:
    """Quotient cancellative."""
    q, _ = quotient(r, c)
    return is_cancellative(q)


def primes_above(r: FiniteSemiring, c: Congruence) -> list[Congruence]:
    return [p for p in congruences(r) if is_prime(r, p) and c.refines(p)]


def _intersection(r: FiniteSemiring, items) -> Congruence:
    acc = Congruence.total(r)
    for c in items:
        acc = acc.meet(c)
    return acc


def radical_test(r: FiniteSemiring, c: Congruence) -> bool:
    """Whether c is the intersection of the prime congruences above it.

    With no prime above c the intersection is the total congruence, the
    convention matching the degenerate reduction below.
    """
    return c == _intersection(r, primes_above(r, c))


@dataclass
class ReductionResult:
    semiring: FiniteSemiring
    class_of: list[int]
    congruence: Congruence
    degenerate: bool
    warning: str | None = None


def reduction(r: FiniteSemiring) -> ReductionResult:
    """Quotient by the intersection of all prime congruences."""
    primes = [c for c in congruences(r) if is_prime(r, c)]
    if not primes:
        total = Congruence.total(r)
        q, class_of = quotient(r, total)
        return ReductionResult(
            q, class_of, total, True,
            "no prime congruence exists; reporting the one-element quotient")
    inter = _intersection(r, primes)
    q, class_of = quotient(r, inter)
    return ReductionResult(q, class_of, inter, False)


def is_reduced(r: FiniteSemiring) -> bool:
    return reduction(r).congruence == Congruence.equality(r)


def has_zero_divisors(r: FiniteSemiring) -> bool:
    return any(r.mul(x, y) == r.zero
               for x in range(r.size) if x != r.zero
               for y in range(r.size) if y != r.zero)


def localize_at_nonzero(r: FiniteSemiring) -> tuple[FiniteSemiring, list[int]]:
    """Fraction semiring over the nonzero elements, with the canonical map.

    Pairs (x, s) with s != 0 are identified when u*x*t = u*y*s for some
    nonzero u; requires a simple carrier, which rules out zero divisors.
    """
    from .core import is_simple
    if not is_simple(r):
        raise SemiringError(f"cannot localize {r.name}: the carrier is not simple")
    if has_zero_divisors(r):
        raise SemiringError(f"cannot localize {r.name}: zero divisors present")
    nonzero = [s for s in range(r.size) if s != r.zero]
    pairs = [(x, s) for x in range(r.size) for s in nonzero]

    def equivalent(a, b):
        (x, s), (y, t) = a, b
        return any(r.mul(u, r.mul(x, t)) == r.mul(u, r.mul(y, s)) for u in nonzero)

    reps: list[tuple[int, int]] = []
    class_of_pair = {}
    for pr in pairs:
        for cid, rep in enumerate(reps):
            if equivalent(pr, rep):
                class_of_pair[pr] = cid
                break
        else:
            class_of_pair[pr] = len(reps)
            reps.append(pr)
    k = len(reps)

    def add_pair(a, b):
        (x, s), (y, t) = a, b
        return class_of_pair[(r.add(r.mul(x, t), r.mul(y, s)), r.mul(s, t))]

    def mul_pair(a, b):
        (x, s), (y, t) = a, b
        return class_of_pair[(r.mul(x, y), r.mul(s, t))]

    names = []
    for x, s in reps:
        if s == r.one:
            names.append(r.names[x])
        else:
            names.append(f"{r.names[x]}/{r.names[s]}")
    add = [[add_pair(reps[i], reps[j]) for j in range(k)] for i in range(k)]
    mul = [[mul_pair(reps[i], reps[j]) for j in range(k)] for i in range(k)]
    loc = make_semiring(f"{r.name}_(0)", names, add, mul,
                        class_of_pair[(r.zero, r.one)],
                        class_of_pair[(r.one, r.one)])
    canonical = [class_of_pair[(x, r.one)] for x in range(r.size)]
    return loc, canonical


# ---------------------------------------------------------------------------
# criterion checks used by the test suite and the CLI


def check_reduction_collapse(r: FiniteSemiring) -> bool:
    """On a simple carrier: the reduction identifies x and y exactly when
    some nonzero s has sx = sy.  Exhaustive over all pairs."""
    from .core import is_simple
    if not is_simple(r):
        raise SemiringError("the collapse criterion needs a simple carrier")
    red = reduction(r)
    nonzero = [s for s in range(r.size) if s != r.zero]
    for x in range(r.size):
        for y in range(r.size):
            witness = any(r.mul(s, x) == r.mul(s, y) for s in nonzero)
            collapsed = red.class_of[x] == red.class_of[y]
            if witness != collapsed:
                return False
    return True


def check_hom_bound_criterion(r: FiniteSemiring) -> bool:
    """On a simple carrier: some nonzero s has sx <= s exactly when every
    homomorphism into a totally ordered semifield sends x below one."""
    from .core import is_simple
    from .valuation_order import enumerate_valuation_orders
    if not is_simple(r):
        raise SemiringError("the bound criterion needs a simple carrier")
    orders = enumerate_valuation_orders(r, nondegenerate=True)
    nonzero = [s for s in range(r.size) if s != r.zero]
    for x in range(r.size):
        witness = any(leq(r, r.mul(s, x), s) for s in nonzero)
        bounded = all(rel.has(x, r.one) for rel in orders)
        if witness != bounded:
            return False
    return True
