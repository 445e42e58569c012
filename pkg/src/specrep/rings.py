"""Finite commutative rings with identity, their ideals, and decompositions.

Two ring presentations: modular arithmetic rings, whose ideals are divisor
lattices and scale to very large moduli, and explicit addition/multiplication
tables, which are axiom-checked exhaustively and capped at 64 elements.
On top of the ideal lattice sit the irreducibility filters, the arithmetical
(distributive-lattice) test, colon ideals, saturations, Krull associated
primes, and the decomposition of a proper ideal into the irreducible ideals
minimal over it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import CapExceeded, ConsistencyError, InputError
from .setsystems import ContextTriple, PointFamily, represents_mask
from . import engine

TABLE_SIZE_CAP = 64
ZMOD_CAP = 10 ** 9
ZMOD_ELEMENT_CAP = 100_000

IDEAL_FILTERS = ("proper", "irreducible", "strongly_irreducible", "radical", "prime", "maximal")


@lru_cache(maxsize=200_000)
def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; fine up to the zmod cap."""
    out: dict[int, int] = {}
    m = n
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def divisors_of(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


@dataclass(frozen=True)
class FiniteRing:
    """A finite commutative ring with identity.

    kind is "zmod" (size = modulus, tables implicit) or "tables" (explicit
    operation tables, exhaustively checked against the ring axioms).
    """

    size: int
    kind: str
    zero: int
    one: int
    add: tuple[tuple[int, ...], ...] | None = None
    mul: tuple[tuple[int, ...], ...] | None = None

    @classmethod
    def zmod(cls, n: int) -> "FiniteRing":
        if n < 2:
            raise InputError("zmod needs modulus at least 2")
        if n > ZMOD_CAP:
            raise CapExceeded(f"zmod modulus {n} exceeds the cap of {ZMOD_CAP}")
        return cls(size=n, kind="zmod", zero=0, one=1)

    @classmethod
    def from_tables(cls, add, mul) -> "FiniteRing":
        size = len(add)
        if size == 0 or size > TABLE_SIZE_CAP:
            raise CapExceeded(f"table ring size must be between 1 and {TABLE_SIZE_CAP}")
        add = tuple(tuple(row) for row in add)
        mul = tuple(tuple(row) for row in mul)
        for name, t in (("add", add), ("mul", mul)):
            if len(t) != size or any(len(row) != size for row in t):
                raise InputError(f"{name} table is not square")
            if any(not 0 <= v < size for row in t for v in row):
                raise InputError(f"{name} table has entries outside the element range")
        rng = range(size)
        zero = next((e for e in rng if all(add[a][e] == a for a in rng)), None)
        if zero is None:
            raise InputError("tables fail ring axioms: no additive identity")
        one = next((e for e in rng if all(mul[a][e] == a for a in rng)), None)
        if one is None:
            raise InputError("tables fail ring axioms: no multiplicative identity")
        for a in rng:
            if all(add[a][b] != zero for b in rng):
                raise InputError("tables fail ring axioms: missing additive inverse")
            for b in rng:
                if add[a][b] != add[b][a] or mul[a][b] != mul[b][a]:
                    raise InputError("tables fail ring axioms: operation not commutative")
                for c in rng:
                    if add[add[a][b]][c] != add[a][add[b][c]]:
                        raise InputError("tables fail ring axioms: addition not associative")
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                        raise InputError("tables fail ring axioms: multiplication not associative")
                    if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
                        raise InputError("tables fail ring axioms: distributivity fails")
        return cls(size=size, kind="tables", zero=zero, one=one, add=add, mul=mul)

    def describe(self) -> str:
        return f"zmod({self.size})" if self.kind == "zmod" else f"tables({self.size})"


@dataclass(frozen=True)
class RingIdeal:
    """An ideal, canonically a divisor for zmod and an element set for tables."""

    ring: FiniteRing
    generator: int | None = None
    elements: frozenset[int] | None = None

    @property
    def name(self) -> str:
        if self.ring.kind == "zmod":
            return f"({self.generator})"
        return "{" + ",".join(str(e) for e in sorted(self.elements)) + "}"

    def is_proper(self) -> bool:
        if self.ring.kind == "zmod":
            return self.generator > 1
        return len(self.elements) < self.ring.size

    def is_zero(self) -> bool:
        if self.ring.kind == "zmod":
            return self.generator == self.ring.size
        return self.elements == frozenset({self.ring.zero})

    def contains(self, r: int) -> bool:
        if self.ring.kind == "zmod":
            return r % self.generator == 0
        return r in self.elements

    def element_set(self) -> frozenset[int]:
        if self.ring.kind == "zmod":
            if self.ring.size > ZMOD_ELEMENT_CAP:
                raise CapExceeded("materializing elements of a huge zmod ideal")
            return frozenset(range(0, self.ring.size, self.generator))
        return self.elements

    def sort_key(self):
        if self.ring.kind == "zmod":
            return (self.generator,)
        return (len(self.elements), tuple(sorted(self.elements)))


def zmod_ideal(ring: FiniteRing, g: int) -> RingIdeal:
    """Canonicalize a generator: the least positive one, a divisor of the modulus."""
    if ring.kind != "zmod":
        raise InputError("zmod_ideal needs a zmod ring")
    d = math.gcd(g % ring.size, ring.size)
    if d == 0:
        d = ring.size
    return RingIdeal(ring=ring, generator=d)


def table_ideal(ring: FiniteRing, elements) -> RingIdeal:
    if ring.kind != "tables":
        raise InputError("table_ideal needs a table ring")
    elems = frozenset(elements)
    if not elems:
        raise InputError("an ideal contains at least the zero element")
    for a in elems:
        for b in elems:
            if ring.add[a][b] not in elems:
                raise InputError("element set is not closed under addition")
        for r in range(ring.size):
            if ring.mul[a][r] not in elems:
                raise InputError("element set is not closed under ring multiples")
    return RingIdeal(ring=ring, elements=elems)


def ideal_le(i: RingIdeal, j: RingIdeal) -> bool:
    if i.ring.kind == "zmod":
        return i.generator % j.generator == 0
    return i.elements <= j.elements


def ideal_meet(i: RingIdeal, j: RingIdeal) -> RingIdeal:
    if i.ring.kind == "zmod":
        return RingIdeal(ring=i.ring, generator=i.generator * j.generator // math.gcd(i.generator, j.generator))
    return RingIdeal(ring=i.ring, elements=i.elements & j.elements)


def ideal_join(i: RingIdeal, j: RingIdeal) -> RingIdeal:
    if i.ring.kind == "zmod":
        return RingIdeal(ring=i.ring, generator=math.gcd(i.generator, j.generator))
    ring = i.ring
    return RingIdeal(ring=ring, elements=frozenset(ring.add[a][b] for a in i.elements for b in j.elements))


def _principal_table_ideal(ring: FiniteRing, r: int) -> frozenset[int]:
    return frozenset(ring.mul[r][s] for s in range(ring.size))


@lru_cache(maxsize=32)
def _all_table_ideals(ring: FiniteRing) -> tuple[frozenset[int], ...]:
    """Every ideal of a table ring, grown from the zero ideal by adding generators."""
    principal = [_principal_table_ideal(ring, r) for r in range(ring.size)]
    start = frozenset({ring.zero})
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for ideal in frontier:
            for r in range(ring.size):
                if r in ideal:
                    continue
                grown = frozenset(ring.add[a][b] for a in ideal for b in principal[r])
                if grown not in seen:
                    seen.add(grown)
                    nxt.append(grown)
        frontier = nxt
    return tuple(sorted(seen, key=lambda s: (len(s), tuple(sorted(s)))))


def _zmod_proper_divisors(ring: FiniteRing) -> list[int]:
    return [d for d in divisors_of(ring.size) if d > 1]


def _table_is_prime(ring: FiniteRing, elems: frozenset[int]) -> bool:
    rng = range(ring.size)
    return all(a in elems or b in elems for a in rng for b in rng if ring.mul[a][b] in elems)


def _table_is_radical(ring: FiniteRing, elems: frozenset[int]) -> bool:
    for a in range(ring.size):
        if a in elems:
            continue
        power = a
        for _ in range(ring.size):
            power = ring.mul[power][a]
            if power in elems:
                return False
    return True


def _table_is_strongly_irreducible(ring: FiniteRing, elems: frozenset[int]) -> bool:
    # elementwise form: principal meets decide the general ideal condition
    principal = [_principal_table_ideal(ring, r) for r in range(ring.size)]
    rng = range(ring.size)
    for a in rng:
        for b in rng:
            if principal[a] & principal[b] <= elems and a not in elems and b not in elems:
                return False
    return True


def enumerate_ideals(ring: FiniteRing, kind: str = "proper") -> list[RingIdeal]:
    """Proper ideals matching a filter, in canonical order.

    Irreducibility is decided by the lattice definition (not the intersection
    of two strictly larger ideals), strong irreducibility by the elementwise
    criterion on principal ideals, primality/radicality elementwise for table
    rings and through exponent patterns for zmod.
    """
    if kind not in IDEAL_FILTERS:
        raise InputError(f"unknown ideal filter {kind!r}")
    if ring.kind == "zmod":
        n = ring.size
        fac = factorize(n)
        divs = _zmod_proper_divisors(ring)
        if kind == "proper":
            keep = divs
        elif kind == "irreducible":
            keep = [d for d in divs if not _zmod_reducible(d)]
        elif kind == "strongly_irreducible":
            keep = [d for d in divs if _zmod_strongly_irreducible(n, d)]
        elif kind == "radical":
            keep = [d for d in divs if all(e <= 1 for e in factorize(d).values())]
        elif kind == "prime":
            keep = [d for d in divs if d in fac]
        else:  # maximal: nothing strictly between (d) and the ring
            keep = [d for d in divs if not any(1 < e < d and d % e == 0 for e in divs)]
        return [RingIdeal(ring=ring, generator=d) for d in keep]

    ideals = _all_table_ideals(ring)
    proper = [s for s in ideals if len(s) < ring.size]
    if kind == "proper":
        keep = proper
    elif kind == "irreducible":
        keep = []
        for s in proper:
            above = [t for t in ideals if s < t]
            if not any(a & b == s for a in above for b in above):
                keep.append(s)
    elif kind == "strongly_irreducible":
        keep = [s for s in proper if _table_is_strongly_irreducible(ring, s)]
    elif kind == "radical":
        keep = [s for s in proper if _table_is_radical(ring, s)]
    elif kind == "prime":
        keep = [s for s in proper if _table_is_prime(ring, s)]
    else:
        keep = [s for s in proper if not any(s < t and len(t) < ring.size for t in ideals)]
    return [RingIdeal(ring=ring, elements=s) for s in keep]


def _zmod_reducible(d: int) -> bool:
    cands = [e for e in divisors_of(d) if e != d]
    for i, e in enumerate(cands):
        for f in cands[i:]:
            if e * f // math.gcd(e, f) == d:
                return True
    return False


def _zmod_strongly_irreducible(n: int, d: int) -> bool:
    divs = divisors_of(n)
    for e in divs:
        for f in divs:
            lcm = e * f // math.gcd(e, f)
            if lcm % d == 0 and e % d != 0 and f % d != 0:
                return False
    return True


def is_arithmetical(ring: FiniteRing) -> bool:
    """Distributivity of the ideal lattice, the finite commutative criterion."""
    if ring.kind == "zmod":
        return True
    ideals = [RingIdeal(ring=ring, elements=s) for s in _all_table_ideals(ring)]
    for i in ideals:
        for j in ideals:
            for k in ideals:
                left = ideal_meet(i, ideal_join(j, k))
                right = ideal_join(ideal_meet(i, j), ideal_meet(i, k))
                if left.elements != right.elements:
                    return False
    return True


def irreducibles_over(ring: FiniteRing, ideal: RingIdeal) -> list[RingIdeal]:
    """Irreducible ideals containing the given one."""
    if ring.kind == "zmod":
        d = ideal.generator
        out = []
        for p, e in sorted(factorize(ring.size).items()):
            for k in range(1, e + 1):
                if d % p ** k == 0:
                    out.append(RingIdeal(ring=ring, generator=p ** k))
        return sorted(out, key=RingIdeal.sort_key)
    return [b for b in enumerate_ideals(ring, "irreducible") if ideal_le(ideal, b)]


def build_irr_space(ring: FiniteRing, ideal: RingIdeal, points: str = "irreducible") -> PointFamily:
    """The family of irreducible (or prime) ideals over a proper ideal.

    Universe and fixed set are the ring elements, the target is the ideal's
    element set, and the points intersect back to the ideal; by construction
    the whole family is its own unique minimal closed representation, which
    the engine re-derives (checked in the theorem suite and tests).  Requires
    an arithmetical ring, and for zmod a modulus small enough to materialize
    element sets.
    """
    if points not in ("irreducible", "prime"):
        raise InputError("points must be 'irreducible' or 'prime'")
    if not is_arithmetical(ring):
        raise InputError("the ring is not arithmetical")
    if not ideal.is_proper():
        raise InputError("the ideal must be proper")
    if ring.kind == "zmod" and ring.size > ZMOD_ELEMENT_CAP:
        raise CapExceeded(
            f"element universe for zmod({ring.size}) exceeds {ZMOD_ELEMENT_CAP}; "
            "use irredundant_decomposition, which stays on divisors"
        )
    if points == "irreducible":
        members = irreducibles_over(ring, ideal)
    else:
        members = [b for b in enumerate_ideals(ring, "prime") if ideal_le(ideal, b)]
    if not members:
        raise ConsistencyError("a proper ideal always sits under an irreducible one")

    size = ring.size
    universe = tuple(str(i) for i in range(size))

    def mask_of_ideal(i: RingIdeal) -> int:
        m = 0
        for e in i.element_set():
            m |= 1 << e
        return m

    context = ContextTriple(
        universe=universe,
        fixed_mask=(1 << size) - 1,
        target_mask=mask_of_ideal(ideal),
    )
    return PointFamily(
        context=context,
        names=tuple(b.name for b in members),
        members=tuple(mask_of_ideal(b) for b in members),
    )


def zmod_min_irreducible_generators(n: int, d: int) -> list[int]:
    """Generators of the irreducible ideals minimal over (d) in zmod(n).

    Walks each prime's power ladder upward while the power still contains the
    ideal; the last rung per prime is the deepest, hence inclusion-minimal,
    irreducible ideal over (d).  Stays on plain integers so bulk sweeps over
    many moduli are cheap.
    """
    out = []
    for p, e in factorize(n).items():
        k = 0
        power = 1
        while k < e and d % (power * p) == 0:
            power *= p
            k += 1
        if k:
            out.append(power)
    out.sort()
    return out


def min_irreducibles_over(ring: FiniteRing, ideal: RingIdeal) -> list[RingIdeal]:
    """Inclusion-minimal irreducible ideals over the given one."""
    if ring.kind == "zmod":
        gens = zmod_min_irreducible_generators(ring.size, ideal.generator)
        return [RingIdeal(ring=ring, generator=g) for g in gens]
    over = irreducibles_over(ring, ideal)
    out = [b for b in over if not any(c is not b and ideal_le(c, b) for c in over)]
    return sorted(out, key=RingIdeal.sort_key)


def irredundant_decomposition(
    ring: FiniteRing,
    ideal: RingIdeal,
    cap: int = engine.DEFAULT_POINT_CAP,
    verify: bool | None = None,
) -> list[RingIdeal]:
    """Decompose a proper ideal of an arithmetical ring into irreducibles.

    Returns the irreducible ideals minimal over it, which intersect back to
    the ideal irredundantly.  With verify (the default when the instance is
    small enough) the family is handed to the representation engine, each
    member is checked strongly irredundant, and an exhaustive sub-family
    search confirms it is the only irredundant representation.
    """
    if not is_arithmetical(ring):
        raise InputError("the ring is not arithmetical")
    if not ideal.is_proper():
        raise InputError("the ideal must be proper")
    dec = min_irreducibles_over(ring, ideal)

    meet = dec[0]
    for b in dec[1:]:
        meet = ideal_meet(meet, b)
    if meet.sort_key() != ideal.sort_key():
        raise ConsistencyError("minimal irreducibles fail to intersect to the ideal")

    if verify is None:
        verify = (
            len(irreducibles_over(ring, ideal)) <= cap
            and (ring.kind != "zmod" or ring.size <= ZMOD_ELEMENT_CAP)
        )
    if verify:
        _verify_decomposition(ring, ideal, dec, cap)
    return dec


def _verify_decomposition(ring: FiniteRing, ideal: RingIdeal, dec: list[RingIdeal], cap: int) -> None:
    family = build_irr_space(ring, ideal)
    names = {b.name for b in dec}
    zs = tuple(i for i, name in enumerate(family.names) if name in names)
    for b in zs:
        cls = engine.classify_member(family, zs, b)
        if not cls.strongly_irredundant:
            raise ConsistencyError(f"decomposition member {family.names[b]!r} is not strongly irredundant")
    if len(family) > cap:
        raise CapExceeded(f"uniqueness search over {len(family)} ideals exceeds the cap of {cap}")
    hits = []
    full = (1 << len(family)) - 1
    for s in range(1, full + 1):
        if not represents_mask(family, s):
            continue
        irered = True
        m = s
        while m:
            low = m & -m
            if represents_mask(family, s ^ low):
                irered = False
                break
            m ^= low
        if irered:
            hits.append(s)
    want = 0
    for i in zs:
        want |= 1 << i
    if hits != [want]:
        raise ConsistencyError("the irredundant representation by irreducibles is not unique")


def colon(ideal: RingIdeal, r: int) -> RingIdeal:
    """The ideal of elements sending r into the given ideal."""
    ring = ideal.ring
    if ring.kind == "zmod":
        d = ideal.generator
        return RingIdeal(ring=ring, generator=d // math.gcd(d, r % ring.size))
    return RingIdeal(
        ring=ring,
        elements=frozenset(s for s in range(ring.size) if ring.mul[r][s] in ideal.elements),
    )


def saturation(ideal: RingIdeal, prime: RingIdeal) -> RingIdeal:
    """Elements that land in the ideal after multiplying by something outside the prime."""
    ring = ideal.ring
    if not _is_prime_ideal(prime):
        raise InputError("saturation needs a prime ideal")
    if ring.kind == "zmod":
        p = prime.generator
        d = ideal.generator
        pk = 1
        while d % (pk * p) == 0:
            pk *= p
        return RingIdeal(ring=ring, generator=pk)
    outside = [b for b in range(ring.size) if b not in prime.elements]
    elems = frozenset(
        r for r in range(ring.size) if any(ring.mul[b][r] in ideal.elements for b in outside)
    )
    return RingIdeal(ring=ring, elements=elems)


def _is_prime_ideal(ideal: RingIdeal) -> bool:
    ring = ideal.ring
    if ring.kind == "zmod":
        return ideal.is_proper() and ideal.generator in factorize(ring.size)
    return ideal.is_proper() and _table_is_prime(ring, ideal.elements)


def krull_associated_primes(ideal: RingIdeal) -> list[RingIdeal]:
    """Primes that are unions of colon ideals of the given ideal."""
    ring = ideal.ring
    primes = enumerate_ideals(ring, "prime")
    out = []
    if ring.kind == "zmod":
        colon_gens = {ideal.generator // g for g in divisors_of(ideal.generator)}
        for p in primes:
            inside = [e for e in colon_gens if e != 1 and e % p.generator == 0]
            # the union of the (e) with e a multiple of p covers p itself only
            # when p is among them
            if p.generator in inside:
                out.append(p)
        return sorted(out, key=RingIdeal.sort_key)
    colons = {colon(ideal, r).elements for r in range(ring.size)}
    for p in primes:
        union: set[int] = set()
        for c in colons:
            if c <= p.elements:
                union |= c
        if union == set(p.elements):
            out.append(p)
    return sorted(out, key=RingIdeal.sort_key)


def max_krull_associated_primes(ideal: RingIdeal) -> list[RingIdeal]:
    """Maximal members of the Krull associated primes, an antichain."""
    primes = krull_associated_primes(ideal)
    return [p for p in primes if not any(q is not p and ideal_le(p, q) for q in primes)]
