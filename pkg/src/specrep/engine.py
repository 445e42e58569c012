"""Irredundance classification for point families.

Everything here works on a validated C-representation: which members can be
dropped, which can be replaced by the sets above them, which belong to every
closed representation, and how the minimal representations look.  Each fast
path has a brute-force oracle next to it; the oracles recompute intersections
from scratch so the two routes stay independent.

Fast paths used throughout (both consequences of the fact that enlarging a
subfamily can only shrink the intersection, never below the target):

* a member B is strongly irredundant in Z exactly when swapping B for all
  points strictly above it breaks the representation, because every proper
  closed subset of the cone over B sits inside that maximal candidate;
* B is critical exactly when the largest up-set avoiding B, the complement
  of the down-set of B, fails to represent.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import CapExceeded, ConsistencyError, NotARepresentation
from .setsystems import (
    PointFamily,
    intersection_mask,
    represents_mask,
    require_representation,
    to_spec_space,
)
from .topology import (
    INVERSE,
    PATCH,
    SPECTRAL,
    SpecSpace,
    _bits,
    down_mask,
    indices_of,
    min_mask,
    up_mask,
)

DEFAULT_POINT_CAP = 20


def _require_cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise CapExceeded(f"{what} over {n} points exceeds the cap of {cap}")


@lru_cache(maxsize=8)
def upset_masks(space: SpecSpace) -> tuple[int, ...]:
    """All up-set masks of the space, ascending.  Exponential; cap before calling."""
    out = []
    for m in range(space.full_mask + 1):
        for i in _bits(m):
            if space.up[i] & ~m:
                break
        else:
            out.append(m)
    return tuple(out)


def intersection_table(family: PointFamily) -> list[int]:
    """inter[s] = intersection of the members chosen by submask s (empty -> D)."""
    n = len(family)
    full = (1 << n) - 1
    inter = [family.context.full_mask] * (full + 1)
    members = family.members
    for s in range(1, full + 1):
        low = s & -s
        inter[s] = inter[s ^ low] & members[low.bit_length() - 1]
    return inter


@dataclass(frozen=True)
class MemberClassification:
    """Per-member verdicts for one member B of a chosen representation Z."""

    point: int
    name: str
    irredundant: bool
    strongly_irredundant: bool
    tightly_irredundant: bool
    isolated_spectral: bool
    isolated_patch: bool
    witness_irredundant: str | None
    witness_strong: str | None


def _least_witness(family: PointFamily, gained: int) -> str | None:
    if gained == 0:
        return None
    low = (gained & -gained).bit_length() - 1
    return family.context.universe[low]


def classify_member(family: PointFamily, zs, b: int, space: SpecSpace | None = None) -> MemberClassification:
    """Classify member b inside the representation Z.

    Irredundance drops b and looks at what the intersection gains inside C;
    the witness is the least such element, which never lies in b's set.
    Strong and tight irredundance both reduce to one test on finite models:
    replace b by the points strictly above it and see whether the family
    still represents.  Isolation flags are taken in the subspace topologies
    on Z (patch is discrete, so patch isolation always holds here).
    """
    space = space or to_spec_space(family)
    ctx = family.context
    zmask = space.point_mask(zs)
    bit = 1 << b
    if not zmask & bit:
        raise ValueError(f"point index {b} is not a member of the chosen subfamily")
    if not represents_mask(family, zmask):
        raise NotARepresentation("the chosen subfamily is not a representation")

    without = zmask ^ bit
    gained = (intersection_mask(family, without) & ctx.fixed_mask) & ~ctx.target_mask
    irredundant = gained != 0

    # (Z u cone(B)) \ {B} and (Z \ {B}) u (cone(B) \ {B}) are the same set,
    # which is why strong and tight agree on finite models.
    replacement = (zmask | space.up[b]) & ~bit
    gained_strong = (intersection_mask(family, replacement) & ctx.fixed_mask) & ~ctx.target_mask
    strongly = gained_strong != 0

    if strongly and not irredundant:
        raise ConsistencyError("strong irredundance without irredundance")

    return MemberClassification(
        point=b,
        name=family.names[b],
        irredundant=irredundant,
        strongly_irredundant=strongly,
        tightly_irredundant=strongly,
        isolated_spectral=space.down[b] & zmask == bit,
        isolated_patch=True,
        witness_irredundant=_least_witness(family, gained),
        witness_strong=_least_witness(family, gained_strong),
    )


def strongly_irredundant_oracle(family: PointFamily, zs, b: int, cap: int = DEFAULT_POINT_CAP) -> bool:
    """Definition-level strong irredundance: try every closed subset of the cone.

    Enumerates every up-set Y inside the cone over b and checks whether
    (Z \\ {b}) united with Y represents; b is strongly irredundant when the
    full cone is the only Y that works.  Intersections are recomputed from
    the raw members so this stays independent of the fast path.
    """
    space = to_spec_space(family)
    ctx = family.context
    zmask = space.point_mask(zs)
    bit = 1 << b
    if not zmask & bit:
        raise ValueError(f"point index {b} is not a member of the chosen subfamily")
    if not represents_mask(family, zmask):
        raise NotARepresentation("the chosen subfamily is not a representation")
    cone = space.up[b]
    _require_cap(cone.bit_count(), cap, "closed-subset enumeration")
    base = zmask ^ bit
    working = []
    y = cone
    while True:
        ok = True
        for i in _bits(y):
            if space.up[i] & ~y & cone:
                ok = False
                break
        if ok:
            m = ctx.full_mask
            for i in _bits(base | y):
                m &= family.members[i]
            if m & ctx.fixed_mask == ctx.target_mask:
                working.append(y)
        if y == 0:
            break
        y = (y - 1) & cone
    return working == [cone]


def minimal_closed_core(upsets, inter, down, fixed: int, target: int) -> list[int]:
    """Minimal closed representations as masks, given precomputed tables.

    upsets lists the up-set masks of the space, inter the intersection of
    each point submask.  An up-set is a minimal representation when dropping
    any of its minimal points breaks representation; dropping non-minimal
    points never preserves up-set-ness, so this local test decides global
    minimality.
    """
    out = []
    for y in upsets:
        if inter[y] & fixed != target:
            continue
        minimal = True
        m = y
        while m:
            low = m & -m
            if down[low.bit_length() - 1] & y == low and inter[y ^ low] & fixed == target:
                minimal = False
                break
            m ^= low
        if minimal:
            out.append(y)
    if not out:
        raise ConsistencyError("a representation must contain a minimal closed one")
    return sorted(out, key=indices_of)


def _minimal_closed_masks(family: PointFamily, space: SpecSpace, cap: int) -> list[int]:
    _require_cap(len(family), cap, "closed-representation enumeration")
    require_representation(family)
    ctx = family.context
    inter = intersection_table(family)
    return minimal_closed_core(upset_masks(space), inter, space.down, ctx.fixed_mask, ctx.target_mask)


def minimal_closed_representations(family: PointFamily, cap: int = DEFAULT_POINT_CAP) -> list[tuple[int, ...]]:
    """All inclusion-minimal up-sets that still represent, in canonical order."""
    space = to_spec_space(family)
    return [indices_of(y) for y in _minimal_closed_masks(family, space, cap)]


def minimal_representations(family: PointFamily, cap: int = DEFAULT_POINT_CAP) -> list[tuple[int, ...]]:
    """Minimal representations: the minimal points of each minimal closed one.

    Cross-checks the defining identities on the way out: the up-set of the
    returned antichain recovers its closed representation, the patch closure
    adds nothing, every member is irredundant (equivalently strongly
    irredundant, equivalently isolated) in it, and the isolated points are
    dense.  Distinct closed representations must yield distinct antichains.
    """
    space = to_spec_space(family)
    closed = _minimal_closed_masks(family, space, cap)
    reps = []
    for y in closed:
        z = min_mask(space, y)
        if up_mask(space, z) != y:
            raise ConsistencyError("minimal points fail to regenerate their closed representation")
        if not represents_mask(family, z):
            raise ConsistencyError("minimal points of a closed representation must represent")
        _check_minimal_rep_equivalences(family, space, z)
        reps.append(z)
    if len(set(reps)) != len(reps):
        raise ConsistencyError("distinct closed representations produced equal minimal ones")
    return sorted((indices_of(z) for z in reps), key=tuple)


def _check_minimal_rep_equivalences(family: PointFamily, space: SpecSpace, zmask: int) -> None:
    isolated = 0
    for b in _bits(zmask):
        cls = classify_member(family, indices_of(zmask), b, space=space)
        if not (cls.irredundant == cls.strongly_irredundant == cls.isolated_spectral == cls.isolated_patch):
            raise ConsistencyError(
                f"irredundance and isolation disagree at point {family.names[b]!r} of a minimal representation"
            )
        if cls.isolated_spectral:
            isolated |= 1 << b
    if up_mask(space, isolated) & zmask != zmask:
        raise ConsistencyError("isolated points are not dense in a minimal representation")


def critical_mask(family: PointFamily, space: SpecSpace | None = None) -> int:
    """Members of every closed representation, by the maximal-avoiding-up-set test."""
    space = space or to_spec_space(family)
    require_representation(family)
    full = space.full_mask
    crit = 0
    for b in range(len(family)):
        if not represents_mask(family, full ^ space.down[b]):
            crit |= 1 << b
    return crit


def critical_points(family: PointFamily) -> tuple[int, ...]:
    return indices_of(critical_mask(family))


def critical_points_oracle(family: PointFamily, cap: int = DEFAULT_POINT_CAP) -> tuple[int, ...]:
    """Intersect every closed representation, recomputed from raw members."""
    space = to_spec_space(family)
    _require_cap(len(family), cap, "closed-representation enumeration")
    require_representation(family)
    ctx = family.context
    acc = space.full_mask
    for y in range(space.full_mask + 1):
        ok = True
        for i in _bits(y):
            if space.up[i] & ~y:
                ok = False
                break
        if not ok:
            continue
        m = ctx.full_mask
        for i in _bits(y):
            m &= family.members[i]
        if m & ctx.fixed_mask == ctx.target_mask:
            acc &= y
    return indices_of(acc)


def critical_core(family: PointFamily, space: SpecSpace | None = None) -> tuple[int, ...]:
    """Minimal critical points; the canonical candidate representation."""
    space = space or to_spec_space(family)
    return indices_of(min_mask(space, critical_mask(family, space)))


@dataclass(frozen=True)
class UniqueMinimalAnalysis:
    unique: bool
    cset_represents: bool
    cset: tuple[int, ...]
    minimal_representations: tuple[tuple[int, ...], ...]
    strongly_irredundant_rep: tuple[int, ...] | None


def analysis_core(inter, upsets, up, down, full_points: int, target: int, fixed: int):
    """Mask-level uniqueness analysis shared by the object API and bulk sweeps.

    Expects a validated representation.  Returns (critical mask, critical
    core mask, core represents, unique, minimal representation masks,
    strongly irredundant rep mask or None).  The cross-checks that come for
    free on the way (core-represents matches the minimal-representation
    count, members of minimal representations are irredundant iff strongly
    irredundant iff isolated, isolated points are dense) raise
    ConsistencyError when violated.
    """
    crit = 0
    for b, d in enumerate(down):
        if inter[full_points ^ d] & fixed != target:
            crit |= 1 << b
    cset = 0
    m = crit
    while m:
        low = m & -m
        if down[low.bit_length() - 1] & crit == low:
            cset |= low
        m ^= low
    cset_represents = inter[cset] & fixed == target

    closed = minimal_closed_core(upsets, inter, down, fixed, target)
    minreps = []
    for y in closed:
        z = 0
        m = y
        while m:
            low = m & -m
            if down[low.bit_length() - 1] & y == low:
                z |= low
            m ^= low
        # regeneration, member equivalences, and density of isolated points
        regen = 0
        isolated = 0
        m = z
        while m:
            low = m & -m
            b = low.bit_length() - 1
            regen |= up[b]
            irr = inter[z ^ low] & fixed != target
            strong = inter[(z | up[b]) & ~low] & fixed != target
            iso = down[b] & z == low
            if not (irr == strong == iso):
                raise ConsistencyError("irredundance and isolation disagree on a minimal representation")
            if iso:
                isolated |= low
            m ^= low
        if regen != y:
            raise ConsistencyError("minimal points fail to regenerate their closed representation")
        dense = 0
        m = isolated
        while m:
            low = m & -m
            dense |= up[low.bit_length() - 1]
            m ^= low
        if dense & z != z:
            raise ConsistencyError("isolated points are not dense in a minimal representation")
        minreps.append(z)
    if len(set(minreps)) != len(minreps):
        raise ConsistencyError("distinct closed representations produced equal minimal ones")

    unique = len(minreps) == 1
    if unique != cset_represents:
        raise ConsistencyError("critical-core representation does not match minimal-representation count")

    srep = None
    if cset_represents:
        s = 0
        m = cset
        while m:
            low = m & -m
            b = low.bit_length() - 1
            if inter[(cset | up[b]) & ~low] & fixed != target:
                s |= low
            m ^= low
        if inter[s] & fixed == target:
            srep = s
    return crit, cset, cset_represents, unique, sorted(minreps, key=indices_of), srep


def unique_minimal_analysis(family: PointFamily, cap: int = DEFAULT_POINT_CAP) -> UniqueMinimalAnalysis:
    """Uniqueness analysis around the minimal critical points.

    Checks whether they represent, verifies this is equivalent to having
    exactly one minimal representation, and in the affirmative case returns
    the set of points strongly irredundant within the critical core, which
    is then the only possible strongly irredundant representation.
    """
    space = to_spec_space(family)
    _require_cap(len(family), cap, "closed-representation enumeration")
    require_representation(family)
    ctx = family.context
    crit, cset, cset_represents, unique, minreps, srep = analysis_core(
        intersection_table(family),
        upset_masks(space),
        space.up,
        space.down,
        space.full_mask,
        ctx.target_mask,
        ctx.fixed_mask,
    )
    if crit != critical_mask(family, space):
        raise ConsistencyError("criticality routes disagree")
    return UniqueMinimalAnalysis(
        unique=unique,
        cset_represents=cset_represents,
        cset=indices_of(cset),
        minimal_representations=tuple(indices_of(z) for z in minreps),
        strongly_irredundant_rep=None if srep is None else indices_of(srep),
    )


def isolated_points(family: PointFamily, zs, kind: str = SPECTRAL) -> tuple[int, ...]:
    """Points of Z isolated in the chosen subspace topology.

    Spectral isolation of b means no other member of Z sits below b; inverse
    isolation mirrors it above; the patch subspace is discrete, so there the
    answer is all of Z.
    """
    space = to_spec_space(family)
    zmask = space.point_mask(zs)
    if kind == PATCH:
        return indices_of(zmask)
    if kind == SPECTRAL:
        rel = space.down
    elif kind == INVERSE:
        rel = space.up
    else:
        raise ValueError(f"unknown topology kind: {kind!r}")
    out = 0
    for b in _bits(zmask):
        if rel[b] & zmask == 1 << b:
            out |= 1 << b
    return indices_of(out)


def strongly_irredundant_representation(family: PointFamily, cap: int = DEFAULT_POINT_CAP) -> tuple[int, ...]:
    """Produce one strongly irredundant representation via the minimal pipeline.

    On finite models every minimal representation qualifies; the first one in
    canonical order is returned after verifying each member survives the
    replacement test.
    """
    space = to_spec_space(family)
    rep = minimal_representations(family, cap)[0]
    zmask = space.point_mask(rep)
    for b in rep:
        repl = (zmask | space.up[b]) & ~(1 << b)
        if represents_mask(family, repl):
            raise ConsistencyError("minimal representation member is not strongly irredundant")
    return rep


@dataclass(frozen=True)
class RepresentationReport:
    """Classification of a chosen subfamily plus family-level structure."""

    family: PointFamily
    chosen: tuple[int, ...]
    classifications: tuple[MemberClassification, ...]
    critical: tuple[int, ...]
    cset: tuple[int, ...]
    minimal_closed: tuple[tuple[int, ...], ...] | None
    minimal: tuple[tuple[int, ...], ...] | None
    unique_minimal: bool | None
    cset_represents: bool | None
    strongly_irredundant_rep: tuple[int, ...] | None
    notices: tuple[str, ...]


def build_report(family: PointFamily, zs=None, cap: int = DEFAULT_POINT_CAP, oracle: bool = False) -> RepresentationReport:
    """Classify every chosen member and gather the family-level analysis.

    Beyond the cap only the fast paths run; the exhaustive parts are skipped
    and a notice records that.  With oracle=True the brute-force routes are
    run next to each fast path and any disagreement raises ConsistencyError.
    """
    space = to_spec_space(family)
    require_representation(family)
    zmask = space.full_mask if zs is None else space.point_mask(zs)
    if not represents_mask(family, zmask):
        raise NotARepresentation("the chosen subfamily is not a representation")
    chosen = indices_of(zmask)
    classifications = tuple(classify_member(family, chosen, b, space=space) for b in chosen)
    crit = critical_points(family)
    cset = critical_core(family, space)
    notices: list[str] = []

    minimal_closed = minimal = None
    unique = cset_represents = None
    srep = None
    try:
        minimal_closed = tuple(minimal_closed_representations(family, cap))
        minimal = tuple(minimal_representations(family, cap))
        analysis = unique_minimal_analysis(family, cap)
        unique = analysis.unique
        cset_represents = analysis.cset_represents
        srep = analysis.strongly_irredundant_rep
    except CapExceeded:
        notices.append(
            f"exhaustive enumeration skipped: {len(family)} points exceeds the cap of {cap}"
        )

    if oracle:
        oracle_crit = critical_points_oracle(family, cap)
        if oracle_crit != crit:
            raise ConsistencyError("critical fast path disagrees with the exhaustive oracle")
        for cls in classifications:
            if strongly_irredundant_oracle(family, chosen, cls.point, cap) != cls.strongly_irredundant:
                raise ConsistencyError(
                    f"strong-irredundance fast path disagrees with the oracle at {cls.name!r}"
                )

    return RepresentationReport(
        family=family,
        chosen=chosen,
        classifications=classifications,
        critical=crit,
        cset=cset,
        minimal_closed=minimal_closed,
        minimal=minimal,
        unique_minimal=unique,
        cset_represents=cset_represents,
        strongly_irredundant_rep=srep,
        notices=tuple(notices),
    )


def _names(family: PointFamily, ixs) -> list[str]:
    return sorted(family.names[i] for i in ixs)


def report_to_dict(report: RepresentationReport) -> dict:
    """JSON-ready view; names sorted so equal inputs give equal bytes."""
    fam = report.family
    points = {}
    for cls in report.classifications:
        entry = {
            "irredundant": cls.irredundant,
            "strongly_irredundant": cls.strongly_irredundant,
            "tightly_irredundant": cls.tightly_irredundant,
            "critical": cls.point in report.critical,
            "isolated_spectral": cls.isolated_spectral,
            "isolated_patch": cls.isolated_patch,
            "witnesses": {},
        }
        if cls.irredundant:
            entry["witnesses"]["irredundant"] = cls.witness_irredundant
        if cls.strongly_irredundant:
            entry["witnesses"]["strongly_irredundant"] = cls.witness_strong
            entry["witnesses"]["tightly_irredundant"] = cls.witness_strong
        points[cls.name] = entry
    out = {
        "chosen": _names(fam, report.chosen),
        "points": points,
        "critical": _names(fam, report.critical),
        "critical_core": _names(fam, report.cset),
        "notices": list(report.notices),
    }
    if report.minimal_closed is not None:
        out["minimal_closed_representations"] = sorted(_names(fam, y) for y in report.minimal_closed)
        out["minimal_representations"] = sorted(_names(fam, z) for z in report.minimal)
        out["unique_minimal"] = report.unique_minimal
        out["critical_core_represents"] = report.cset_represents
        out["strongly_irredundant_representation"] = (
            None if report.strongly_irredundant_rep is None else _names(fam, report.strongly_irredundant_rep)
        )
    return out


_FLAG_SHORT = (
    ("irredundant", "irr"),
    ("strongly_irredundant", "strong"),
    ("tightly_irredundant", "tight"),
    ("isolated_spectral", "iso-spec"),
    ("isolated_patch", "iso-patch"),
)


def report_to_dot(report: RepresentationReport) -> str:
    """Hasse diagram of the point order with per-point flag decoration."""
    fam = report.family
    space = to_spec_space(fam)
    by_point = {cls.point: cls for cls in report.classifications}
    lines = ["digraph representation {", "  rankdir=BT;", '  node [shape=box, fontname="monospace"];']
    order = sorted(range(len(fam)), key=lambda i: fam.names[i])
    for i in order:
        tags = []
        cls = by_point.get(i)
        if cls is not None:
            tags = [short for attr, short in _FLAG_SHORT if getattr(cls, attr)]
        if i in report.critical:
            tags.append("critical")
        label = fam.names[i] if not tags else fam.names[i] + "\\n" + ",".join(tags)
        lines.append(f'  "{fam.names[i]}" [label="{label}"];')
    covers = []
    for i in range(len(fam)):
        for j in range(len(fam)):
            if i == j or not space.leq(i, j):
                continue
            between = space.up[i] & space.down[j] & ~(1 << i) & ~(1 << j)
            if between == 0:
                covers.append((fam.names[i], fam.names[j]))
    for a, b in sorted(covers):
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
