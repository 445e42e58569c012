"""Cross-operation identity suite: every instance must satisfy the theory.

Each check pits one route against another (generator vs fast path, fast
test vs exhaustive oracle, flag vs flag) and reports pass/fail/skip; a skip
happens only when an enumeration would blow a cap.  The CLI's check-theorems
command runs the suite and fails loudly with the violated check's name.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import engine, rings, topology, zrdesk
from .errors import ConsistencyError, SpecrepError
from .setsystems import (
    PointFamily,
    represents_mask,
    validate_representation,
)
from .setsystems import to_spec_space
from .topology import indices_of

EXHAUSTIVE_SUBFAMILY_CAP = 12


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # pass | fail | skip
    detail: str = ""


def _ok(name, detail=""):
    return CheckResult(name, "pass", detail)


def _bad(name, detail):
    return CheckResult(name, "fail", detail)


def _skip(name, detail):
    return CheckResult(name, "skip", detail)


def _representation_masks(family: PointFamily) -> list[int]:
    full = (1 << len(family)) - 1
    return [z for z in range(1, full + 1) if represents_mask(family, z)]


def run_family_suite(family: PointFamily, cap: int = engine.DEFAULT_POINT_CAP,
                     generator_cap: int = topology.DEFAULT_GENERATOR_CAP) -> list[CheckResult]:
    out: list[CheckResult] = []
    space = to_spec_space(family)
    n = len(space)

    ok, witness = validate_representation(family)
    out.append(_ok("family-represents-target") if ok else _bad(
        "family-represents-target", f"element {witness!r} separates the intersection from the target"))
    if not ok:
        return out

    # generator vs order fast paths
    if n <= generator_cap:
        name = "topology-generator-equivalence"
        bad = None
        tops = {}
        for kind in topology.KINDS:
            top = topology.generate_topology(space, kind, cap=generator_cap)
            tops[kind] = top
            if top.opens != topology.fast_opens(space, kind):
                bad = kind
                break
            if not topology.family_is_topology(top.opens, n):
                bad = kind
                break
        out.append(_bad(name, f"{bad} topology differs from its order fast path") if bad else _ok(name))

        name = "specialization-order-matches-inclusion"
        spec_top = tops[topology.SPECTRAL]
        mism = [
            (i, j)
            for i in range(n)
            for j in range(n)
            if spec_top.specialization_leq(i, j) != space.leq(i, j)
        ]
        out.append(_bad(name, f"order mismatch at point pair {mism[0]}") if mism else _ok(name))

        name = "closure-fast-path-vs-topology"
        bad = None
        subsets = range(1 << n) if n <= 10 else [0, space.full_mask] + [1 << i for i in range(n)]
        for kind in topology.KINDS:
            top = tops[kind]
            for ymask in subsets:
                if topology.closure_mask(space, ymask, kind) != top.closure_of(ymask):
                    bad = (kind, ymask)
                    break
            if bad:
                break
        out.append(_bad(name, f"closure mismatch in {bad[0]} at subset {bad[1]:b}") if bad else _ok(name))
    else:
        for name in ("topology-generator-equivalence", "specialization-order-matches-inclusion",
                     "closure-fast-path-vs-topology"):
            out.append(_skip(name, f"{n} points exceeds the generator cap of {generator_cap}"))

    name = "closed-sets-covered-by-minimal-points"
    if n <= cap:
        bad = None
        for y in engine.upset_masks(space):
            if y and topology.up_mask(space, topology.min_mask(space, y)) != y:
                bad = y
                break
        out.append(_bad(name, f"closed set {bad:b} not covered") if bad else _ok(name))
    else:
        out.append(_skip(name, f"{n} points exceeds the cap of {cap}"))

    name = "antichains-inverse-discrete"
    bad = None
    antichains = [topology.min_mask(space, space.full_mask), topology.max_mask(space, space.full_mask)]
    if n <= EXHAUSTIVE_SUBFAMILY_CAP:
        antichains = [m for m in range(1, space.full_mask + 1) if topology.is_antichain(space, m)]
    for am in antichains:
        if am and not topology.antichain_inverse_discrete(space, indices_of(am)):
            bad = am
            break
    out.append(_bad(name, f"antichain {bad:b} not discrete") if bad else _ok(name))

    name = "noetherian-trace-witnesses"
    held, _ = topology.noetherian_trace_holds(space, topology.max_elements(space, range(n)))
    out.append(_ok(name) if held else _bad(name, "trace criterion failed on the maximal points"))

    # engine-side checks on the full family plus every sub-representation we can afford
    if n <= EXHAUSTIVE_SUBFAMILY_CAP:
        zmasks = _representation_masks(family)
    else:
        zmasks = [space.full_mask]
    crit_mask = space.point_mask(engine.critical_points(family))

    hier = iso = corr = removal = None
    for zmask in zmasks:
        zs = indices_of(zmask)
        upz = topology.up_mask(space, zmask)
        for b in zs:
            cls = engine.classify_member(family, zs, b, space=space)
            if (cls.strongly_irredundant and not cls.irredundant) or (
                cls.strongly_irredundant != cls.tightly_irredundant
            ):
                hier = hier or (b, zmask)
            if cls.irredundant and not (cls.isolated_spectral and cls.isolated_patch):
                iso = iso or (b, zmask)
            if crit_mask >> b & 1 and cls.irredundant and not cls.strongly_irredundant:
                corr = corr or (b, zmask)
            if upz != zmask:
                in_up = engine.classify_member(family, indices_of(upz), b, space=space)
                if cls.tightly_irredundant != in_up.irredundant:
                    removal = removal or (b, zmask)
    out.append(_bad("irredundance-flag-hierarchy", f"violated at point {hier[0]} in {hier[1]:b}") if hier
               else _ok("irredundance-flag-hierarchy"))
    out.append(_bad("irredundant-implies-isolated", f"violated at point {iso[0]} in {iso[1]:b}") if iso
               else _ok("irredundant-implies-isolated"))
    out.append(_bad("critical-irredundant-implies-strongly", f"violated at point {corr[0]} in {corr[1]:b}")
               if corr else _ok("critical-irredundant-implies-strongly"))
    out.append(_bad("tight-equals-irredundant-in-up-closure", f"violated at point {removal[0]} in {removal[1]:b}")
               if removal else _ok("tight-equals-irredundant-in-up-closure"))

    name = "critical-fast-path-vs-oracle"
    if n <= cap:
        fast = engine.critical_points(family)
        slow = engine.critical_points_oracle(family, cap)
        out.append(_ok(name) if fast == slow else _bad(
            name, f"fast {fast} vs oracle {slow}"))
    else:
        out.append(_skip(name, f"{n} points exceeds the cap of {cap}"))

    name = "minimal-representation-equivalences"
    try:
        minreps = engine.minimal_representations(family, cap)
        out.append(_ok(name))
    except ConsistencyError as exc:
        minreps = None
        out.append(_bad(name, str(exc)))
    except SpecrepError as exc:
        minreps = None
        out.append(_skip(name, str(exc)))

    name = "unique-minimal-criterion"
    analysis = None
    try:
        analysis = engine.unique_minimal_analysis(family, cap)
        out.append(_ok(name))
    except ConsistencyError as exc:
        out.append(_bad(name, str(exc)))
    except SpecrepError as exc:
        out.append(_skip(name, str(exc)))

    name = "strongly-irredundant-existence"
    try:
        engine.strongly_irredundant_representation(family, cap)
        out.append(_ok(name))
    except ConsistencyError as exc:
        out.append(_bad(name, str(exc)))
    except SpecrepError as exc:
        out.append(_skip(name, str(exc)))

    name = "at-most-one-strongly-irredundant-representation"
    if analysis is not None and n <= EXHAUSTIVE_SUBFAMILY_CAP:
        strong_reps = []
        for zmask in _representation_masks(family):
            zs = indices_of(zmask)
            if all(engine.classify_member(family, zs, b, space=space).strongly_irredundant for b in zs):
                strong_reps.append(zmask)
        if analysis.cset_represents:
            expect = None if analysis.strongly_irredundant_rep is None else space.point_mask(
                analysis.strongly_irredundant_rep)
            if expect is None or strong_reps != [expect]:
                out.append(_bad(name, "strongly irredundant representations are not the predicted set"))
            else:
                out.append(_ok(name))
        else:
            out.append(_ok(name, "no uniqueness claim without a represented critical core"))
    else:
        out.append(_skip(name, "exhaustive sub-family search out of reach"))

    name = "tight-reps-in-distinct-minimal-reps"
    if minreps is not None and n <= EXHAUSTIVE_SUBFAMILY_CAP:
        min_masks = [space.point_mask(z) for z in minreps]
        containers = {}
        for zmask in _representation_masks(family):
            zs = indices_of(zmask)
            if all(engine.classify_member(family, zs, b, space=space).tightly_irredundant for b in zs):
                containers[zmask] = frozenset(m for m in min_masks if zmask & ~m == 0)
        bad = None
        items = list(containers.items())
        for i, (za, ca) in enumerate(items):
            if not ca:
                bad = f"tight representation {za:b} lies in no minimal representation"
                break
            for zb, cb in items[i + 1:]:
                if ca & cb:
                    bad = f"tight representations {za:b} and {zb:b} share a minimal representation"
                    break
            if bad:
                break
        out.append(_bad(name, bad) if bad else _ok(name))
    else:
        out.append(_skip(name, "exhaustive sub-family search out of reach"))

    return out


def run_ring_suite(ring: rings.FiniteRing, ideal: rings.RingIdeal | None,
                   cap: int = engine.DEFAULT_POINT_CAP) -> list[CheckResult]:
    out: list[CheckResult] = []
    arithmetical = rings.is_arithmetical(ring)
    out.append(_ok("ideal-lattice-distributivity-decided",
                   "arithmetical" if arithmetical else "not arithmetical"))

    name = "strongly-irreducible-within-irreducible"
    irr = {i.sort_key() for i in rings.enumerate_ideals(ring, "irreducible")}
    sirr = {i.sort_key() for i in rings.enumerate_ideals(ring, "strongly_irreducible")}
    if not sirr <= irr:
        out.append(_bad(name, "a strongly irreducible ideal failed plain irreducibility"))
    elif arithmetical and sirr != irr:
        out.append(_bad(name, "irreducible and strongly irreducible differ on an arithmetical ring"))
    else:
        out.append(_ok(name))

    if ring.kind == "zmod":
        name = "irreducible-filter-matches-prime-powers"
        fac = rings.factorize(ring.size)
        formula = sorted(p ** k for p, e in fac.items() for k in range(1, e + 1))
        got = sorted(i.generator for i in rings.enumerate_ideals(ring, "irreducible"))
        out.append(_ok(name) if got == formula else _bad(name, f"{got} vs {formula}"))

    targets = [ideal] if ideal is not None else rings.enumerate_ideals(ring, "proper")
    if not arithmetical:
        out.append(_skip("decomposition-checks", "ring is not arithmetical"))
        return out

    dec_bad = closed_bad = sat_bad = colon_bad = None
    for a in targets:
        try:
            dec = rings.irredundant_decomposition(ring, a, cap=cap)
        except SpecrepError as exc:
            dec_bad = dec_bad or f"{a.name}: {exc}"
            continue
        if ring.kind == "zmod":
            oracle = sorted(p ** e for p, e in rings.factorize(a.generator).items())
            if sorted(b.generator for b in dec) != oracle:
                dec_bad = dec_bad or f"{a.name}: decomposition differs from the prime-power oracle"
        if rings.ZMOD_ELEMENT_CAP >= ring.size:
            family = rings.build_irr_space(ring, a)
            if len(family) <= cap:
                closed = engine.minimal_closed_representations(family, cap)
                if closed != [tuple(range(len(family)))]:
                    closed_bad = closed_bad or f"{a.name}: a proper closed subfamily represents"
        sats = sorted(
            rings.saturation(a, p).sort_key() for p in rings.max_krull_associated_primes(a)
        )
        mins = sorted(b.sort_key() for b in rings.min_irreducibles_over(ring, a))
        if sats != mins:
            sat_bad = sat_bad or f"{a.name}: saturations differ from the minimal cover"
        if rings.colon(a, ring.one).sort_key() != a.sort_key():
            colon_bad = colon_bad or f"{a.name}: colon by the identity moved the ideal"
    out.append(_bad("decomposition-matches-prime-power-oracle", dec_bad) if dec_bad
               else _ok("decomposition-matches-prime-power-oracle"))
    out.append(_bad("no-proper-closed-subfamily-represents", closed_bad) if closed_bad
               else _ok("no-proper-closed-subfamily-represents"))
    out.append(_bad("saturations-at-max-krull-primes-are-the-minimal-cover", sat_bad) if sat_bad
               else _ok("saturations-at-max-krull-primes-are-the-minimal-cover"))
    out.append(_bad("colon-by-identity-is-identity", colon_bad) if colon_bad
               else _ok("colon-by-identity-is-identity"))
    return out


def run_zr_suite(pool: zrdesk.PrimePool, family: PointFamily | None,
                 members: list[zrdesk.OverringSpec] | None = None,
                 target: zrdesk.OverringSpec | None = None,
                 fixed: zrdesk.OverringSpec | None = None) -> list[CheckResult]:
    out: list[CheckResult] = []

    name = "encoding-faithfulness"
    k = len(pool)
    subsets = [frozenset(c) for r in range(k + 1) for c in combinations(pool.primes, r)]
    if len(subsets) > 64:
        subsets = subsets[:32] + subsets[-32:]
    probes = [Fraction(1, p) for p in pool.primes] + [Fraction(1, pool.primes[0] * pool.primes[-1]), Fraction(3)]
    bad = None
    full = (1 << k) - 1
    index = {p: i for i, p in enumerate(pool.primes)}

    def enc(t):
        m = 0
        for p in t:
            m |= 1 << index[p]
        return full ^ m

    for t1 in subsets:
        r1 = zrdesk.OverringSpec(pool, t1)
        for t2 in subsets:
            r2 = zrdesk.OverringSpec(pool, t2)
            # ring inclusion probed by membership alone: r1 inside r2 when no
            # inverted prime of r1 escapes r2
            ring_le = all(
                zrdesk.membership(r2, Fraction(1, p)) or not zrdesk.membership(r1, Fraction(1, p))
                for p in pool.primes
            )
            if ring_le != (enc(t1) & ~enc(t2) == 0):
                bad = f"inclusion mismatch between {r1.name} and {r2.name}"
                break
            meet = zrdesk.OverringSpec(pool, t1 | t2)
            for q in probes:
                if (zrdesk.membership(r1, q) and zrdesk.membership(r2, q)) != zrdesk.membership(meet, q):
                    bad = f"intersection mismatch at probe {q}"
                    break
            if bad:
                break
        if bad:
            break
    out.append(_bad(name, bad) if bad else _ok(name))

    name = "pool-uniqueness-sweep"
    report = zrdesk.pool_uniqueness_check(pool)
    out.append(_ok(name, f"{report.checks} checks") if report.passed
               else _bad(name, report.failures[0]))

    name = "canonical-members-witnessed-by-own-primes"
    if family is not None and members is not None and all(len(m.retained) == 1 for m in members):
        space = to_spec_space(family)
        zs = tuple(range(len(family)))
        bad = None
        for i, spec in enumerate(members):
            (p,) = spec.retained
            cls = engine.classify_member(family, zs, i, space=space)
            others = {q for j, other in enumerate(members) if j != i for q in other.retained}
            expected_irr = p in target.retained and p not in fixed.retained and p not in others
            if expected_irr and not (cls.irredundant and cls.strongly_irredundant
                                     and cls.witness_irredundant == str(p)):
                bad = f"localization at {p} should be irredundant with witness 1/{p}"
                break
        out.append(_bad(name, bad) if bad else _ok(name))
    elif family is not None:
        out.append(_skip(name, "members are not single-prime localizations"))
    else:
        out.append(_skip(name, "no member family given"))
    return out
