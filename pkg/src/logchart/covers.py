"""Finite abelian covers of sharp fs monoid points.

A point carries a sharp fs monoid P; its covers at annihilator n
correspond to subgroups of (Z/n)^r, where r is the rank of the group of
P.  Everything is computed at a finite level: the n-th root stage is the
monoid P again, read in coordinates where the base sits as n times
itself.  Covers are cut out of that stage as lattice-point monoids of
intermediate lattices, the fiber functor realizes each cover as a finite
character set with a translation action, and the correspondence check
counts maps on both sides of the equivalence.
"""

import itertools
from dataclasses import dataclass, field
from math import gcd, lcm

from . import cones
from . import monoid as mo
from . import zlattice as zl

__all__ = [
    "LogPoint",
    "TowerDescriptor",
    "CoverDescriptor",
    "EquivariantFiniteSet",
    "pi1_descriptor",
    "classify_covers",
    "lift_cover",
    "hom_count",
    "fiber_functor",
    "character_value",
    "equivariant_map_count",
    "galois_correspondence_check",
    "tower_inclusion",
]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class LogPoint:
    """A sharp fs monoid with the primes not invertible at the point."""

    sharp_monoid: mo.AffineMonoid
    excluded_primes: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(
            self, "excluded_primes", frozenset(int(p) for p in self.excluded_primes)
        )
        for p in self.excluded_primes:
            if not _is_prime(p):
                raise ValueError("excluded primes must be prime")
        props = mo.classify(self.sharp_monoid)
        if not (props.sharp and props.fs):
            raise ValueError("a point needs a sharp fs monoid")
        if mo.tight_coordinates(self.sharp_monoid).nf.group.torsion:
            raise AssertionError("sharp fs monoids generate torsion-free groups")

    @property
    def rank(self) -> int:
        return mo.tight_coordinates(self.sharp_monoid).nf.group.free_rank

    @property
    def base_monoid(self) -> mo.AffineMonoid:
        """The point's monoid in its own tight coordinates."""
        return mo.tight_coordinates(self.sharp_monoid).monoid


@dataclass(frozen=True)
class TowerDescriptor:
    """A finite stage of the root tower over a point.

    Level n stands for the monoid of n-th roots.  The stage monoid reuses
    the base generators, read in coordinates n times finer; the base then
    embeds as multiplication by n.  Compatible stages m | n compose.
    """

    base: LogPoint
    level: int

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("tower level must be positive")
        for p in self.base.excluded_primes:
            if self.level % p == 0:
                raise ValueError("level shares a factor with an excluded prime")

    @property
    def stage_monoid(self) -> mo.AffineMonoid:
        return self.base.base_monoid

    @property
    def base_inclusion(self) -> mo.MonoidHom:
        """The base monoid inside the stage, as multiplication by level."""
        p = self.base.base_monoid
        images = tuple(p.ambient.scale(self.level, g) for g in p.gens)
        return mo.MonoidHom(p, p, images)


def tower_inclusion(coarse: TowerDescriptor, fine: TowerDescriptor) -> mo.MonoidHom:
    """Stage m inside stage n, for m dividing n."""
    if coarse.base != fine.base:
        raise ValueError("stages belong to different points")
    if fine.level % coarse.level:
        raise ValueError("stage levels are incompatible")
    k = fine.level // coarse.level
    p = coarse.stage_monoid
    return mo.MonoidHom(p, p, tuple(p.ambient.scale(k, g) for g in p.gens))


def pi1_descriptor(pt: LogPoint):
    """Rank of the character lattice and the excluded primes."""
    return pt.rank, tuple(sorted(pt.excluded_primes))


# ---------------------------------------------------------------------------
# cover classification


@dataclass(frozen=True)
class CoverDescriptor:
    """A connected cover cut out of a tower stage.

    ``lattice_rows`` is the Hermite basis of the cover's group inside the
    stage coordinates; the cover monoid consists of the stage elements of
    that lattice, and the Galois group is the lattice modulo the base.
    """

    tower: TowerDescriptor
    lattice_rows: tuple
    monoid: mo.AffineMonoid
    inclusion: mo.MonoidHom
    galois_group: zl.FiniteAbelianGroup

    def __post_init__(self):
        for p in self.tower.base.excluded_primes:
            if self.galois_group.order % p == 0:
                raise AssertionError("cover order shares an excluded prime")


def _hnf_superlattices(n: int, r: int):
    """Hermite bases of the lattices between n Z^r and Z^r.

    Candidates run over upper-triangular matrices with divisor pivots and
    reduced off-diagonal entries; an explicit containment filter keeps
    exactly the valid ones, one per lattice by Hermite uniqueness.
    """
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    out = []
    for diag in itertools.product(divisors, repeat=r):
        free_positions = [(i, j) for i in range(r) for j in range(i + 1, r)]
        ranges = [range(diag[j]) for _, j in free_positions]
        for values in itertools.product(*ranges):
            rows = [[0] * r for _ in range(r)]
            for i in range(r):
                rows[i][i] = diag[i]
            for (i, j), v in zip(free_positions, values):
                rows[i][j] = v
            mat = tuple(tuple(row) for row in rows)
            if all(
                zl.row_lattice_member(mat, tuple(n * int(k == j) for k in range(r)), r)
                is not None
                for j in range(r)
            ):
                out.append(mat)
    return out


def _cover_from_lattice(tower: TowerDescriptor, rows) -> CoverDescriptor:
    base = tower.base.base_monoid
    r = tower.base.rank
    n = tower.level
    cone = mo.monoid_cone(base)
    transposed = [tuple(row[k] for row in rows) for k in range(r)]
    pre = cones.pullback_cone(transposed, cone, r)
    inner = mo.cone_lattice_monoid(zl.free_ambient(r), pre)
    qgens = sorted(
        tuple(sum(g[i] * rows[i][k] for i in range(r)) for k in range(r))
        for g in inner.gens
    )
    q = mo.affine_monoid(zl.free_ambient(r), qgens)
    incl = mo.MonoidHom(
        base, q, tuple(base.ambient.scale(n, g) for g in base.gens)
    )
    rel = []
    for j in range(r):
        target = tuple(n * int(k == j) for k in range(r))
        coeffs = zl.row_lattice_member(zl.mat(rows), target, r)
        if coeffs is None:
            raise AssertionError("classified lattice lost the base")
        rel.append(coeffs)
    group = zl.quotient_presentation(r, zl.mat(rel)).group
    if group.free_rank:
        raise AssertionError("cover group came out infinite")
    return CoverDescriptor(
        tower=tower,
        lattice_rows=tuple(tuple(row) for row in rows),
        monoid=q,
        inclusion=incl,
        galois_group=zl.FiniteAbelianGroup(group.torsion),
    )


def classify_covers(pt: LogPoint, n: int):
    """All connected covers with annihilator dividing n, sorted by size.

    One cover per subgroup of (Z/n)^r, realized as the stage elements
    whose class lands in the subgroup.
    """
    tower = TowerDescriptor(pt, n)
    covers = [_cover_from_lattice(tower, rows) for rows in _hnf_superlattices(n, pt.rank)]
    covers.sort(key=lambda c: (c.galois_group.order, c.lattice_rows))
    return covers


def lift_cover(cover: CoverDescriptor, n: int) -> CoverDescriptor:
    """The same cover seen at a deeper stage whose level is a multiple."""
    m = cover.tower.level
    if n % m:
        raise ValueError("target level must be a multiple of the cover level")
    k = n // m
    rows = tuple(tuple(k * x for x in row) for row in cover.lattice_rows)
    return _cover_from_lattice(TowerDescriptor(cover.tower.base, n), rows)


def _common_level(c1: CoverDescriptor, c2: CoverDescriptor):
    if c1.tower.base != c2.tower.base:
        raise ValueError("covers live over different points")
    n = lcm(c1.tower.level, c2.tower.level)
    return lift_cover(c1, n), lift_cover(c2, n)


def hom_count(pt: LogPoint, c1: CoverDescriptor, c2: CoverDescriptor) -> int:
    """Number of cover maps from the first cover to the second.

    Zero unless the second cover's monoid sits inside the first's; in the
    nonempty case the count is the order of the second Galois group, the
    maps being principally homogeneous under its character group.
    """
    if c1.tower.base != pt or c2.tower.base != pt:
        raise ValueError("covers do not belong to the given point")
    a, b = _common_level(c1, c2)
    for g in b.monoid.gens:
        if mo.membership(a.monoid, g) is None:
            return 0
    return b.galois_group.order


# ---------------------------------------------------------------------------
# fiber functor


@dataclass(frozen=True)
class EquivariantFiniteSet:
    """A finite character set with a translation action.

    ``reps`` are the coset representatives of the cover group inside the
    stage coordinates; each element is a character, stored as its value
    tuple on the representatives; ``generator_permutations`` give the
    action of the standard characters of the base lattice at the stated
    truncation.
    """

    size: int
    truncation: int
    level: int
    rank: int
    reps: tuple
    characters: tuple
    generator_permutations: tuple


def _group_elements(rows, n, r):
    """Coset representatives of the lattice mod n, sorted."""
    mat = zl.mat(rows)
    reps = []
    for x in itertools.product(range(n), repeat=r):
        if zl.row_lattice_member(mat, x, r) is not None:
            reps.append(x)
    return sorted(reps)


def fiber_functor(pt: LogPoint, cover: CoverDescriptor, truncation: int):
    """Realize a cover as its character set at a finite truncation.

    Characters are additive maps from the cover group to Z/truncation;
    the base's standard characters act by translation through the pairing
    that divides a group element into the base and reads the chosen
    character there.
    """
    if cover.tower.base != pt:
        raise ValueError("cover does not belong to the given point")
    n = cover.tower.level
    r = pt.rank
    e = cover.galois_group.exponent
    if truncation < 1 or truncation % e:
        raise ValueError("truncation must be a positive multiple of the exponent")
    rows = cover.lattice_rows
    reps = _group_elements(rows, n, r)

    # characters of the cover group: values on the lattice basis killing
    # the base lattice
    rel = []
    for j in range(r):
        target = tuple(n * int(k == j) for k in range(r))
        rel.append(zl.row_lattice_member(zl.mat(rows), target, r))
    chars = []
    for v in itertools.product(range(truncation), repeat=r):
        if all(sum(c * x for c, x in zip(row, v)) % truncation == 0 for row in rel):
            chars.append(v)

    def value(v, x):
        coeffs = zl.row_lattice_member(zl.mat(rows), x, r)
        return sum(c * w for c, w in zip(coeffs, v)) % truncation

    if len(chars) != len(reps):
        raise AssertionError("character count does not match the group order")
    tables = sorted(tuple(value(v, x) for x in reps) for v in chars)
    if len(set(tables)) != len(tables):
        raise AssertionError("characters collided on representatives")

    # translation action of the j-th standard base character
    perms = []
    for j in range(r):
        images = []
        for t in tables:
            shifted = []
            for rep, val in zip(reps, t):
                if any((e * c) % n for c in rep):
                    raise AssertionError("exponent failed to clear a representative")
                w = tuple((e * c) // n for c in rep)
                pair = (truncation // e) * w[j] % truncation
                shifted.append((val + pair) % truncation)
            images.append(tables.index(tuple(shifted)))
        perms.append(tuple(images))
    return EquivariantFiniteSet(
        size=len(tables),
        truncation=truncation,
        level=n,
        rank=r,
        reps=tuple(reps),
        characters=tuple(tables),
        generator_permutations=tuple(perms),
    )


def character_value(fs: EquivariantFiniteSet, index: int, x) -> int:
    """Value of the index-th character on a lattice element.

    The element is given in stage coordinates and must lie in the cover's
    lattice; its class is read off modulo the stage level.
    """
    rep = tuple(c % fs.level for c in x)
    try:
        pos = fs.reps.index(rep)
    except ValueError:
        raise ValueError("element does not lie in the cover lattice") from None
    return fs.characters[index][pos]


def equivariant_map_count(a: EquivariantFiniteSet, b: EquivariantFiniteSet) -> int:
    """Brute-force count of action-compatible maps between two sets."""
    if a.truncation != b.truncation or a.rank != b.rank:
        raise ValueError("sets live at different truncations")
    count = 0
    for f in itertools.product(range(b.size), repeat=a.size):
        if all(
            f[pa[x]] == pb[f[x]]
            for pa, pb in zip(a.generator_permutations, b.generator_permutations)
            for x in range(a.size)
        ):
            count += 1
    return count


@dataclass(frozen=True)
class CorrespondenceReport:
    rank: int
    level: int
    pairs: tuple
    all_match: bool


def galois_correspondence_check(pt: LogPoint, n: int) -> CorrespondenceReport:
    """Compare cover map counts with equivariant map counts, pairwise.

    For every ordered pair of classified covers the direct count from the
    monoid side must equal the brute-force equivariant count between the
    fiber sets at truncation n.
    """
    covers = classify_covers(pt, n)
    fibers = [fiber_functor(pt, c, n) for c in covers]
    pairs = []
    ok = True
    for i, c1 in enumerate(covers):
        for j, c2 in enumerate(covers):
            direct = hom_count(pt, c1, c2)
            counted = equivariant_map_count(fibers[i], fibers[j])
            match = direct == counted
            ok = ok and match
            pairs.append((i, j, direct, counted, match))
    return CorrespondenceReport(
        rank=pt.rank, level=n, pairs=tuple(pairs), all_match=ok
    )
