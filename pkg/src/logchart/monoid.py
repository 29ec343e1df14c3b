"""Finitely presented and affine commutative monoids.

An AffineMonoid is a finitely generated submonoid of an ambient finitely
generated abelian group, written additively.  Such monoids are integral
(cancellative) by construction.  The module provides:

* groupification and integralization of finite presentations,
* units, sharp quotients and a complete membership decision procedure,
* saturation through Hilbert bases of rational cones,
* exact embeddings of sharp saturated monoids into free monoids,
* sections of surjections onto sharp saturated monoids,
* fractional refinements (the carrier of an n-th root construction),
* a bounded falsifier for the cancellation-of-summands property.

Membership decisions factor through the sharp quotient: a strictly
positive integer functional on the pointed cone bounds the search depth,
so refusals are exhaustive rather than heuristic.  Unit parts of a
certificate are repaired into nonnegative coefficients with precomputed
zero-sum generator combinations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from . import cones
from . import zlattice as zl


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class MonoidPresentation:
    """Commutative monoid on ``generator_count`` generators with relations.

    Each relation is a pair (lhs, rhs) of exponent vectors: the monoid is
    the quotient of N^generator_count by the congruence they generate.
    """

    generator_count: int
    relations: tuple

    def __post_init__(self):
        if self.generator_count < 0:
            raise ValueError("negative generator count")
        rels = []
        for pair in self.relations:
            lhs, rhs = pair
            lhs, rhs = tuple(int(x) for x in lhs), tuple(int(x) for x in rhs)
            if len(lhs) != self.generator_count or len(rhs) != self.generator_count:
                raise ValueError("relation vector length mismatch")
            if any(x < 0 for x in lhs + rhs):
                raise ValueError("relation vectors must be nonnegative")
            rels.append((lhs, rhs))
        object.__setattr__(self, "relations", tuple(rels))


def free_presentation(n: int) -> MonoidPresentation:
    return MonoidPresentation(n, ())


def groupify(pres: MonoidPresentation) -> zl.QuotientPresentation:
    """The universal group receiving the presented monoid.

    Returns the quotient presentation of Z^n by the relation differences;
    ``gen_images`` are the generator classes.
    """
    rows = [zl.vec_sub(lhs, rhs) for lhs, rhs in pres.relations]
    return zl.quotient_presentation(pres.generator_count, zl.mat(rows))


# ---------------------------------------------------------------------------
# affine monoids


@dataclass(frozen=True)
class AffineMonoid:
    """Submonoid of ``ambient`` generated by ``gens`` (zero-free, unique).

    ``presentation``, when present, records a presentation whose i-th
    generator maps onto ``gens[i]``; it rides along for constructions that
    need presented input (amalgamated sums in raw mode) and is ignored by
    equality and hashing.
    """

    ambient: zl.AmbientAbelianGroup
    gens: tuple
    presentation: MonoidPresentation | None = field(
        default=None, compare=False, repr=False
    )

    def __post_init__(self):
        seen = set()
        for g in self.gens:
            r = self.ambient.reduce(g)
            if r != g:
                raise ValueError("generator not in reduced ambient coordinates")
            if r == self.ambient.zero():
                raise ValueError("zero generator not allowed; use affine_monoid")
            if r in seen:
                raise ValueError("duplicate generator; use affine_monoid")
            seen.add(r)
        if self.presentation is not None and self.presentation.generator_count != len(
            self.gens
        ):
            raise ValueError("presentation generator count mismatch")

    def free_parts(self):
        return tuple(self.ambient.free_part(g) for g in self.gens)


def affine_monoid(ambient, gens, presentation=None) -> AffineMonoid:
    """Normalizing constructor: reduces, drops zeros, removes duplicates.

    A supplied presentation is rewritten onto the surviving generator list
    (exponents of merged generators are folded together, zero-image
    generators vanish).
    """
    reduced = [ambient.reduce(g) for g in gens]
    kept = []
    index_of = {}
    fold = []  # original index -> position in kept, or None for zero images
    for g in reduced:
        if g == ambient.zero():
            fold.append(None)
            continue
        if g not in index_of:
            index_of[g] = len(kept)
            kept.append(g)
        fold.append(index_of[g])
    new_pres = None
    if presentation is not None:
        def remap(vec):
            out = [0] * len(kept)
            for j, c in enumerate(vec):
                if c and fold[j] is not None:
                    out[fold[j]] += c
            return tuple(out)

        new_pres = MonoidPresentation(
            len(kept),
            tuple((remap(l), remap(r)) for l, r in presentation.relations),
        )
    return AffineMonoid(ambient, tuple(kept), new_pres)


def free_monoid_on(n: int) -> AffineMonoid:
    amb = zl.free_ambient(n)
    return affine_monoid(amb, amb.std_gens(), free_presentation(n))


def monoid_from_torsion(group: zl.FiniteAbelianGroup) -> AffineMonoid:
    """A finite abelian group viewed as an affine monoid on its standard
    generators (every element is then a unit)."""
    amb = zl.AmbientAbelianGroup(0, group.invariant_factors)
    return affine_monoid(amb, amb.std_gens())


def integralize(pres: MonoidPresentation) -> AffineMonoid:
    """Image of the presented monoid inside its universal group."""
    qp = groupify(pres)
    return affine_monoid(qp.group, qp.gen_images, presentation=pres)


def presentation_of(m: AffineMonoid) -> MonoidPresentation:
    """A presentation with the monoid's own generators.

    Uses the stored one when available; otherwise splits a basis of the
    generator relation lattice into nonnegative pairs.  The fallback
    presents a monoid with the same groupification and the same
    integralization, which is all the raw amalgamated sum needs.
    """
    if m.presentation is not None:
        return m.presentation
    rel = zl.subgroup_relation_lattice(m.ambient, m.gens)
    pairs = []
    for row in rel:
        lhs = tuple(max(x, 0) for x in row)
        rhs = tuple(max(-x, 0) for x in row)
        pairs.append((lhs, rhs))
    return MonoidPresentation(len(m.gens), tuple(pairs))


# ---------------------------------------------------------------------------
# cached structure: cone, tight coordinates


@lru_cache(maxsize=None)
def monoid_cone(m: AffineMonoid) -> cones.Cone:
    """Rational cone spanned by the generators' free parts."""
    return cones.cone_from_rays(m.free_parts(), m.ambient.free_rank)


@dataclass(frozen=True)
class TightCoordinates:
    """The subgroup generated by the monoid, in invariant-factor form."""

    source: AffineMonoid
    monoid: AffineMonoid  # same generators, coordinates of the tight group
    nf: zl.QuotientPresentation  # abstract form over the source generators
    inclusion: zl.AbGroupHom  # tight group -> source ambient

    def to_tight(self, v):
        """Coordinates of an element of the generated subgroup; None if v
        lies outside it."""
        coeffs = zl.subgroup_member(self.source.ambient, self.source.gens, v)
        if coeffs is None:
            return None
        acc = self.nf.group.zero()
        for c, img in zip(coeffs, self.nf.gen_images):
            if c:
                acc = self.nf.group.add(acc, self.nf.group.scale(c, img))
        return acc


@lru_cache(maxsize=None)
def tight_coordinates(m: AffineMonoid) -> TightCoordinates:
    nf = zl.subgroup_normal_form(m.ambient, m.gens)
    tight = affine_monoid(nf.group, nf.gen_images)
    cols = []
    for e in nf.group.std_gens():
        coeffs = nf.lift(e)
        acc = m.ambient.zero()
        for c, g in zip(coeffs, m.gens):
            if c:
                acc = m.ambient.add(acc, m.ambient.scale(c, g))
        cols.append(acc)
    incl = zl.AbGroupHom(
        nf.group, m.ambient, zl.from_columns(cols, m.ambient.ncoords)
    )
    return TightCoordinates(source=m, monoid=tight, nf=nf, inclusion=incl)


@lru_cache(maxsize=None)
def is_tight(m: AffineMonoid) -> bool:
    """Whether the generators generate the full ambient group."""
    return zl.subgroup_quotient(m.ambient, m.gens).group.ncoords == 0


# ---------------------------------------------------------------------------
# Hilbert bases


def _rational_solve_in_span(vectors, target, dim):
    """Nonnegative rational coefficients over ``vectors`` summing to
    ``target``, via independent subsets, or None.  Exact over Q."""
    nz = [(i, v) for i, v in enumerate(vectors)]
    if all(x == 0 for x in target):
        return {i: Fraction(0) for i, _ in nz}
    maxk = zl.smith_normal_form(zl.mat([v for _, v in nz]), dim).rank if nz else 0
    for k in range(1, maxk + 1):
        for subset in itertools.combinations(nz, k):
            rows = [v for _, v in subset]
            if zl.smith_normal_form(zl.mat(rows), dim).rank != k:
                continue
            gram = [
                [Fraction(sum(a * b for a, b in zip(rows[i], rows[j])))
                 for j in range(k)]
                for i in range(k)
            ]
            rhs = [Fraction(sum(a * b for a, b in zip(rows[i], target)))
                   for i in range(k)]
            coeffs = cones._solve_rational(gram, rhs)
            if any(c < 0 for c in coeffs):
                continue
            recon = [sum(c * Fraction(r[j]) for c, r in zip(coeffs, rows))
                     for j in range(dim)]
            if all(x == y for x, y in zip(recon, target)):
                return {subset[i][0]: coeffs[i] for i in range(k)}
    return None


def _triangulate(cone: cones.Cone):
    """Simplicial subcones (tuples of rays) covering a pointed cone."""
    if len(cone.rays) == cone.dim():
        return [cone.rays]
    apex = cone.rays[0]
    out = []
    for f in cone.facet_normals:
        if sum(x * y for x, y in zip(f, apex)) == 0:
            continue
        face = cones.cone_from_rays(cone.rays_on_facet(f), cone.ambient_dim)
        for simplex in _triangulate(face):
            out.append(simplex + (apex,))
    return out


def _fraction_inverse(rows):
    n = len(rows)
    aug = [[Fraction(x) for x in rows[i]] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                fac = aug[r][col]
                aug[r] = [x - fac * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _parallelepiped_points(simplex_rays_in_lattice):
    """Nonzero lattice points of the half-open fundamental parallelepiped
    of a full-rank simplicial cone, in lattice coordinates.

    Coset representatives of Z^d modulo the ray lattice come from the
    Smith transform; each is then translated into the half-open box by
    subtracting the floor of its ray coordinates.
    """
    d = len(simplex_rays_in_lattice)
    if d == 0:
        return []
    vmat = zl.from_columns(simplex_rays_in_lattice, d)
    snf = zl.smith_normal_form(vmat)
    diag = snf.invariant_factors
    vinv = _fraction_inverse([list(r) for r in vmat])
    points = []
    for combo in itertools.product(*(range(di) for di in diag)):
        x = [0] * d
        for j, c in enumerate(combo):
            if c:
                for i in range(d):
                    x[i] += c * snf.lhs_inv[i][j]
        t = [sum(vinv[i][j] * x[j] for j in range(d)) for i in range(d)]
        floors = [ti.numerator // ti.denominator for ti in t]
        for j, fl in enumerate(floors):
            if fl:
                for i in range(d):
                    x[i] -= fl * vmat[i][j]
        if any(x):
            points.append(tuple(x))
    return points


def hilbert_basis(cone: cones.Cone):
    """Minimal generating set of cone ∩ Z^n for a pointed rational cone.

    Triangulates into simplicial subcones, collects ray generators plus the
    lattice points of each fundamental parallelepiped, and reduces the
    candidates by mutual membership in increasing order of a strictly
    positive functional.
    """
    if not cone.is_pointed():
        raise ValueError("Hilbert basis requires a pointed cone")
    if cone.dim() == 0:
        return ()
    n = cone.ambient_dim
    lattice = zl.sublattice_saturation(zl.mat(cone.rays), n)
    d = len(lattice)
    lat_cols = zl.from_columns([tuple(r) for r in lattice], n)

    def in_lattice_coords(v):
        sol = zl.solve_integer(lat_cols, v, ncols=d)
        if sol is None:
            raise AssertionError("ray outside its own saturated lattice")
        return sol

    def from_lattice_coords(c):
        return tuple(sum(c[i] * lattice[i][j] for i in range(d)) for j in range(n))

    candidates = set(cone.rays)
    for simplex in _triangulate(cone):
        rays_lc = [in_lattice_coords(r) for r in simplex]
        if len(rays_lc) != d:
            raise AssertionError("triangulation produced a degenerate simplex")
        for p in _parallelepiped_points(rays_lc):
            candidates.add(from_lattice_coords(p))
    f = cone.positive_functional()

    def fval(v):
        return sum(x * y for x, y in zip(f, v))

    kept = []
    for c in sorted(candidates, key=lambda v: (fval(v), v)):
        reducible = False
        for h in kept:
            diff = zl.vec_sub(c, h)
            if cone.contains(diff):
                reducible = True
                break
        if not reducible:
            kept.append(c)
    return tuple(sorted(kept))


# ---------------------------------------------------------------------------
# units, sharp quotient, membership


@dataclass(frozen=True)
class UnitData:
    """Units of an affine monoid and its sharp quotient."""

    group: zl.AmbientAbelianGroup  # abstract form of the unit group
    basis: tuple  # ambient elements generating the unit group
    unit_gen_indices: tuple  # indices of generators that are units
    projection: zl.AbGroupHom  # ambient -> sharp ambient
    sharp: AffineMonoid
    sharp_source: tuple  # per sharp generator: index of a source generator


@lru_cache(maxsize=None)
def unit_data(m: AffineMonoid) -> UnitData:
    """Units are exactly the generators whose free part lies in the
    lineality space of the monoid's cone, and they generate the unit
    group; the sharp quotient divides them out."""
    cone = monoid_cone(m)
    unit_idx = []
    for i, g in enumerate(m.gens):
        fp = m.ambient.free_part(g)
        if cone.contains(fp) and cone.contains(zl.vec_scale(-1, fp)):
            unit_idx.append(i)
    unit_gens = [m.gens[i] for i in unit_idx]
    qp = zl.subgroup_quotient(m.ambient, unit_gens)
    proj = zl.AbGroupHom(
        m.ambient, qp.group, zl.from_columns(qp.gen_images, qp.group.ncoords)
    )
    sharp_gens = []
    sharp_source = []
    seen = {}
    for i, g in enumerate(m.gens):
        img = proj.apply(g)
        if img == qp.group.zero() or img in seen:
            continue
        seen[img] = i
        sharp_gens.append(img)
        sharp_source.append(i)
    sharp = affine_monoid(qp.group, sharp_gens)
    if not monoid_cone(sharp).is_pointed():
        raise RuntimeError(
            "sharp quotient still has units; the lineality rule was violated"
        )
    nf = zl.subgroup_normal_form(m.ambient, unit_gens)
    return UnitData(
        group=nf.group,
        basis=tuple(unit_gens),
        unit_gen_indices=tuple(unit_idx),
        projection=proj,
        sharp=sharp,
        sharp_source=tuple(sharp_source),
    )


def units_and_sharp_quotient(m: AffineMonoid):
    """(unit group normal form, sharp quotient monoid, ambient projection)."""
    ud = unit_data(m)
    return ud.group, ud.sharp, ud.projection


@lru_cache(maxsize=None)
def _unit_zero_sums(m: AffineMonoid):
    """Per unit generator i: a nonnegative vector R over the unit
    generators with sum_j R[j]·u_j = 0 and R[i] > 0.

    Existence: -free(u_i) lies in the lineality cone spanned by the unit
    generators' free parts, so a nonnegative rational combination exists;
    clearing denominators leaves a torsion element, which a multiple by its
    order kills.
    """
    ud = unit_data(m)
    ugens = ud.basis
    r = m.ambient.free_rank
    frees = [m.ambient.free_part(u) for u in ugens]
    out = []
    for i, u in enumerate(ugens):
        target = tuple(-x for x in frees[i])
        combo = _rational_solve_in_span(frees, target, r)
        if combo is None:
            raise RuntimeError("unit generator free part escapes the lineality span")
        denom = 1
        for c in combo.values():
            denom = denom * c.denominator // gcd(denom, c.denominator)
        k = denom
        coeffs = [0] * len(ugens)
        for j, c in combo.items():
            coeffs[j] = int(c * k)
        coeffs[i] += k
        tors = m.ambient.zero()
        for cj, uj in zip(coeffs, ugens):
            if cj:
                tors = m.ambient.add(tors, m.ambient.scale(cj, uj))
        if m.ambient.free_part(tors) != (0,) * r:
            raise AssertionError("zero-sum residue has a free component")
        order = 1
        acc = tors
        while acc != m.ambient.zero():
            acc = m.ambient.add(acc, tors)
            order += 1
        out.append(tuple(c * order for c in coeffs))
    return tuple(out)


@lru_cache(maxsize=None)
def _sharp_engine(m: AffineMonoid):
    """Mutable memo table and fixed data for sharp membership searches."""
    ud = unit_data(m)
    sharp = ud.sharp
    cone = monoid_cone(sharp)
    f = cone.positive_functional() if sharp.gens else ()
    amb = sharp.ambient

    def fval(v):
        return sum(x * y for x, y in zip(f, amb.free_part(v)))

    gen_f = [fval(g) for g in sharp.gens]
    if any(x <= 0 for x in gen_f):
        raise RuntimeError("sharp generator with nonpositive functional value")
    return {
        "memo": {},
        "fval": fval,
        "gen_f": gen_f,
        "cone": cone,
        "sharp": sharp,
    }


def _sharp_solvable(m: AffineMonoid, target) -> bool:
    """Whether target is a nonnegative combination of sharp generators.

    Iterative depth-first search over the subtraction graph.  Edges
    strictly decrease the positive functional, so paths are finite; the
    memo is shared across queries, making refusals exhaustive and cheap
    to repeat.
    """
    eng = _sharp_engine(m)
    sharp, cone = eng["sharp"], eng["cone"]
    fval, gen_f = eng["fval"], eng["gen_f"]
    amb = sharp.ambient
    memo = eng["memo"]
    zero = amb.zero()
    if target == zero:
        return True
    if target in memo:
        return memo[target]
    stack = [[target, 0, fval(target)]]
    while stack:
        frame = stack[-1]
        node, idx, fnode = frame
        known = memo.get(node)
        if known is not None:
            stack.pop()
            if known and stack:
                # the parent reached this node by one subtraction
                memo[stack[-1][0]] = True
            continue
        if idx == 0 and not cone.contains(amb.free_part(node)):
            memo[node] = False
            stack.pop()
            continue
        pushed = False
        while idx < len(sharp.gens):
            g = sharp.gens[idx]
            gf = gen_f[idx]
            idx += 1
            if gf > fnode:
                continue
            child = amb.sub(node, g)
            if child == zero or memo.get(child) is True:
                memo[node] = True
                pushed = True
                break
            if memo.get(child) is False:
                continue
            frame[1] = idx
            stack.append([child, 0, fnode - gf])
            pushed = True
            break
        if not pushed:
            memo[node] = False
            stack.pop()
        elif memo.get(node) is True:
            stack.pop()
            if stack:
                memo[stack[-1][0]] = True
    return memo[target]


def _sharp_express(m: AffineMonoid, target):
    """Nonnegative coefficients over the sharp generators, or None."""
    eng = _sharp_engine(m)
    sharp = eng["sharp"]
    amb = sharp.ambient
    memo = eng["memo"]
    zero = amb.zero()
    if not _sharp_solvable(m, target):
        return None
    coeffs = [0] * len(sharp.gens)
    node = target
    guard = eng["fval"](target) + 1
    while node != zero:
        guard -= 1
        if guard < 0:
            raise AssertionError("membership reconstruction did not terminate")
        fnode = eng["fval"](node)
        for i, g in enumerate(sharp.gens):
            if eng["gen_f"][i] > fnode:
                continue
            child = amb.sub(node, g)
            if child == zero or memo.get(child) is True or (
                memo.get(child) is None and _sharp_solvable(m, child)
            ):
                coeffs[i] += 1
                node = child
                break
        else:
            raise AssertionError("solvable node lost its expression")
    return tuple(coeffs)


def membership(m: AffineMonoid, x):
    """Nonnegative integer certificate c with sum c_i·gens_i = x, or None.

    Refusal is exact: the element is provably outside the monoid.
    """
    x = m.ambient.reduce(x)
    if x == m.ambient.zero():
        return (0,) * len(m.gens)
    if not m.gens:
        return None
    ud = unit_data(m)
    xbar = ud.projection.apply(x)
    sharp_coeffs = _sharp_express(m, xbar)
    if sharp_coeffs is None:
        return None
    full = [0] * len(m.gens)
    acc = m.ambient.zero()
    for c, src in zip(sharp_coeffs, ud.sharp_source):
        if c:
            full[src] += c
            acc = m.ambient.add(acc, m.ambient.scale(c, m.gens[src]))
    residue = m.ambient.sub(x, acc)
    ucoeffs = zl.subgroup_member(m.ambient, ud.basis, residue)
    if ucoeffs is None:
        raise AssertionError("sharp residue escaped the unit group")
    ucoeffs = list(ucoeffs)
    zero_sums = _unit_zero_sums(m)
    for i in range(len(ucoeffs)):
        if ucoeffs[i] < 0:
            bump = zero_sums[i]
            times = (-ucoeffs[i] + bump[i] - 1) // bump[i]
            for j in range(len(ucoeffs)):
                ucoeffs[j] += times * bump[j]
    for c, idx in zip(ucoeffs, ud.unit_gen_indices):
        if c < 0:
            raise AssertionError("unit coefficient repair failed")
        full[idx] += c
    # final self-check, cheap and unconditional
    check = m.ambient.zero()
    for c, g in zip(full, m.gens):
        if c:
            check = m.ambient.add(check, m.ambient.scale(c, g))
    if check != x:
        raise AssertionError("membership certificate does not reproduce input")
    return tuple(full)


def contains(m: AffineMonoid, x) -> bool:
    return membership(m, x) is not None


# ---------------------------------------------------------------------------
# saturation


def cone_lattice_monoid(ambient: zl.AmbientAbelianGroup, cone: cones.Cone):
    """The monoid of ambient elements whose free part lies in the cone.

    Generator order is deterministic and significant to callers that scan
    for a violating generator: the lattice section of the Hilbert basis of
    the pointed quotient cone comes first, then a ± basis of the lineality
    lattice, then the torsion generators.
    """
    r = ambient.free_rank
    if cone.ambient_dim != r:
        raise ValueError("cone must live in the ambient free part")
    lin = cone.lineality  # saturated basis of the lineality lattice
    proj = zl.subgroup_quotient(zl.free_ambient(r), [tuple(b) for b in lin])
    if proj.group.torsion:
        raise AssertionError("quotient by a saturated lattice grew torsion")
    q = proj.group.free_rank
    pointed = cones.cone_from_rays([proj.image(ray) for ray in cone.rays], q)
    basis = hilbert_basis(pointed)
    tors_zero = (0,) * len(ambient.torsion)
    new_gens = []
    for h in basis:
        new_gens.append(tuple(proj.lift(h)) + tors_zero)
    for b in lin:
        new_gens.append(tuple(b) + tors_zero)
        new_gens.append(tuple(-x for x in b) + tors_zero)
    for idx in range(len(ambient.torsion)):
        e = [0] * ambient.ncoords
        e[r + idx] = 1
        new_gens.append(tuple(e))
    return affine_monoid(ambient, new_gens)


@lru_cache(maxsize=None)
def saturate(m: AffineMonoid) -> AffineMonoid:
    """Saturation inside the group generated by the monoid.

    In tight coordinates the saturation is (cone ∩ free lattice) x torsion:
    a positive multiple of (x, t) lands in the monoid exactly when the free
    part x lies in the cone of generator free parts, independently of the
    torsion component t.
    """
    tc = tight_coordinates(m)
    full = cone_lattice_monoid(tc.monoid.ambient, monoid_cone(tc.monoid))
    mapped = [tc.inclusion.apply(g) for g in full.gens]
    return affine_monoid(m.ambient, sorted(mapped))


@lru_cache(maxsize=None)
def is_saturated(m: AffineMonoid) -> bool:
    return all(membership(m, g) is not None for g in saturate(m).gens)


def is_sharp(m: AffineMonoid) -> bool:
    return not unit_data(m).unit_gen_indices


@dataclass(frozen=True)
class MonoidProperties:
    fine: bool
    sharp: bool
    saturated: bool
    fs: bool
    dimension: int


def classify(m: AffineMonoid) -> MonoidProperties:
    sat = is_saturated(m)
    return MonoidProperties(
        fine=True,  # affine monoids here are finitely generated and integral
        sharp=is_sharp(m),
        saturated=sat,
        fs=sat,
        dimension=monoid_cone(m).dim(),
    )


# ---------------------------------------------------------------------------
# canonical form


@dataclass(frozen=True)
class CanonicalForm:
    """Presentation-independent identity card of an affine monoid.

    Two submonoids of the same ambient group are equal as sets if and only
    if their canonical forms coincide: the unit lattice is pinned by a
    Hermite basis of its preimage in standard coordinates, and the sharp
    part by the minimal generators in the quotient coordinates derived
    from that basis.
    """

    ambient_free_rank: int
    ambient_torsion: tuple
    units_lattice: tuple  # Hermite rows in Z^(ambient ncoords)
    sharp_group_free_rank: int
    sharp_group_torsion: tuple
    sharp_generators: tuple  # sorted minimal generators, sharp coordinates


def _minimal_generators(m: AffineMonoid):
    """Unique minimal generating set of a sharp affine monoid."""
    if not m.gens:
        return ()
    cone = monoid_cone(m)
    f = cone.positive_functional()

    def fval(v):
        return sum(x * y for x, y in zip(f, m.ambient.free_part(v)))

    kept = []
    for g in sorted(m.gens, key=lambda v: (fval(v), v)):
        reducible = False
        for h in kept:
            if membership(m, m.ambient.sub(g, h)) is not None:
                reducible = True
                break
        if not reducible:
            kept.append(g)
    return tuple(sorted(kept))


def canonical_form(m: AffineMonoid) -> CanonicalForm:
    ud = unit_data(m)
    rows = [tuple(u) for u in ud.basis] + [
        tuple(r) for r in m.ambient.relation_rows()
    ]
    units_hnf = zl.hermite_normal_form(zl.mat(rows), m.ambient.ncoords)
    canon_proj = zl.subgroup_quotient(
        m.ambient, [m.ambient.reduce(r) for r in units_hnf]
    )
    grp = canon_proj.group
    imgs = []
    for g in m.gens:
        w = canon_proj.image(g)
        if w != grp.zero():
            imgs.append(w)
    sharp_canon = affine_monoid(grp, imgs)
    return CanonicalForm(
        ambient_free_rank=m.ambient.free_rank,
        ambient_torsion=m.ambient.torsion,
        units_lattice=units_hnf,
        sharp_group_free_rank=grp.free_rank,
        sharp_group_torsion=grp.torsion,
        sharp_generators=_minimal_generators(sharp_canon),
    )


def monoids_equal(a: AffineMonoid, b: AffineMonoid) -> bool:
    """Set equality of two submonoids of one ambient group."""
    if a.ambient != b.ambient:
        raise ValueError("monoids live in different ambient groups")
    return canonical_form(a) == canonical_form(b)


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class MonoidHom:
    """Homomorphism determined by generator images.

    ``gen_images[i]`` is the image of ``domain.gens[i]`` in the codomain's
    ambient group.  Construction checks that every generator relation is
    preserved (so the assignment is a well-defined homomorphism on the
    whole monoid) and that every image passes membership in the codomain.
    """

    domain: AffineMonoid
    codomain: AffineMonoid
    gen_images: tuple

    def __post_init__(self):
        imgs = tuple(self.codomain.ambient.reduce(v) for v in self.gen_images)
        object.__setattr__(self, "gen_images", imgs)
        if len(imgs) != len(self.domain.gens):
            raise ValueError("one image per domain generator required")
        rel = zl.subgroup_relation_lattice(self.domain.ambient, self.domain.gens)
        cod = self.codomain.ambient
        for row in rel:
            acc = cod.zero()
            for c, im in zip(row, imgs):
                if c:
                    acc = cod.add(acc, cod.scale(c, im))
            if acc != cod.zero():
                raise ValueError("generator images violate a domain relation")
        for im in imgs:
            if membership(self.codomain, im) is None:
                raise ValueError("generator image fails codomain membership")

    def apply(self, v):
        """Image of an element of the generated group (gp of the domain)."""
        if is_tight(self.domain):
            return hom_ambient_extension(self).apply(v)
        return self._apply_by_solving(v)

    def _apply_by_solving(self, v):
        coeffs = zl.subgroup_member(self.domain.ambient, self.domain.gens, v)
        if coeffs is None:
            raise ValueError("element outside the domain's generated group")
        cod = self.codomain.ambient
        acc = cod.zero()
        for c, im in zip(coeffs, self.gen_images):
            if c:
                acc = cod.add(acc, cod.scale(c, im))
        return acc


@lru_cache(maxsize=None)
def hom_ambient_extension(u: MonoidHom) -> zl.AbGroupHom:
    """The hom as a map of full ambient groups; needs a tight domain."""
    if not is_tight(u.domain):
        raise ValueError("ambient extension requires generators spanning the ambient")
    cols = [u._apply_by_solving(e) for e in u.domain.ambient.std_gens()]
    return zl.AbGroupHom(
        u.domain.ambient,
        u.codomain.ambient,
        zl.from_columns(cols, u.codomain.ambient.ncoords),
    )


def identity_hom(m: AffineMonoid) -> MonoidHom:
    return MonoidHom(m, m, m.gens)


def compose(after: MonoidHom, before: MonoidHom) -> MonoidHom:
    if before.codomain != after.domain:
        raise ValueError("composition mismatch")
    return MonoidHom(
        before.domain, after.codomain, tuple(after.apply(v) for v in before.gen_images)
    )


@lru_cache(maxsize=None)
def tight_group_hom(u: MonoidHom) -> zl.AbGroupHom:
    """Induced map between the groups generated by domain and codomain."""
    dom_tc = tight_coordinates(u.domain)
    cod_tc = tight_coordinates(u.codomain)
    cols = []
    for e in dom_tc.nf.group.std_gens():
        coeffs = dom_tc.nf.lift(e)
        acc = u.codomain.ambient.zero()
        for c, im in zip(coeffs, u.gen_images):
            if c:
                acc = u.codomain.ambient.add(acc, u.codomain.ambient.scale(c, im))
        w = cod_tc.to_tight(acc)
        if w is None:
            raise AssertionError("image escaped the codomain's generated group")
        cols.append(w)
    return zl.AbGroupHom(
        dom_tc.nf.group,
        cod_tc.nf.group,
        zl.from_columns(cols, cod_tc.nf.group.ncoords),
    )


# ---------------------------------------------------------------------------
# exact embeddings


def exact_embedding(m: AffineMonoid) -> MonoidHom:
    """Embedding of a sharp saturated monoid into a free monoid N^s, one
    coordinate per facet of its cone, such that the monoid equals the
    preimage of N^s in its group.

    The facet order is pinned by sorting each facet's sorted tuple of
    incident extreme rays, making the embedding reproducible.  s is the
    facet count, which can exceed the group rank for non-simplicial cones.
    """
    props = classify(m)
    if not (props.sharp and props.fs):
        raise ValueError("exact embedding requires a sharp saturated monoid")
    if is_tight(m) and not m.ambient.torsion:
        carrier = m
        coords = [m.ambient.free_part(g) for g in m.gens]
    else:
        tc = tight_coordinates(m)
        if tc.monoid.ambient.torsion:
            raise AssertionError("sharp saturated monoid has torsion in its group")
        carrier = tc.monoid
        coords = [
            tc.monoid.ambient.free_part(tc.to_tight(g)) for g in m.gens
        ]
    cone = monoid_cone(carrier)
    facets = sorted(
        cone.facet_normals, key=lambda f: tuple(sorted(cone.rays_on_facet(f)))
    )
    images = [
        tuple(sum(a * b for a, b in zip(f, fp)) for f in facets) for fp in coords
    ]
    target = free_monoid_on(len(facets))
    return MonoidHom(m, target, tuple(images))


# ---------------------------------------------------------------------------
# sections of sharp surjections


def splitting_section(f: MonoidHom) -> MonoidHom:
    """Section of a surjection f: M -> Q with Q sharp and saturated.

    Requires ker(f^gp) ⊆ M, checked exactly: the kernel is a group, so it
    is contained in M precisely when its generators lie in the unit group
    of M.  Under that hypothesis any group-theoretic section restricts to
    a monoid section, because s(q) differs from a preimage in M by a
    kernel element.
    """
    q_props = classify(f.codomain)
    if not (q_props.sharp and q_props.fs):
        raise ValueError("section target must be sharp and saturated")
    gp = tight_group_hom(f)
    ker = zl.hom_kernel_generators(gp)
    dom_tc = tight_coordinates(f.domain)
    ud = unit_data(f.domain)
    for k in ker:
        amb_k = dom_tc.inclusion.apply(k)
        if zl.subgroup_member(f.domain.ambient, ud.basis, amb_k) is None:
            raise ValueError(
                "kernel of the group map is not contained in the monoid"
            )
    cod_tc = tight_coordinates(f.codomain)
    images = []
    for qgen in f.codomain.gens:
        w = cod_tc.to_tight(qgen)
        x = zl.solve_integer(gp.matrix, w, ncols=gp.domain.ncoords)
        if x is None:
            raise ValueError("map is not surjective on groups")
        images.append(dom_tc.inclusion.apply(gp.domain.reduce(x)))
    section = MonoidHom(f.codomain, f.domain, tuple(images))
    for qgen, im in zip(f.codomain.gens, section.gen_images):
        if f.apply(im) != f.codomain.ambient.reduce(qgen):
            raise AssertionError("section composed with the map is not identity")
    return section


# ---------------------------------------------------------------------------
# fractional refinement


def fractional_refinement(m: AffineMonoid, n: int):
    """(refined monoid, inclusion) where the refined monoid acquires all
    n-th roots: the carrier is a copy of M and the inclusion is the n-th
    power map under the canonical identification."""
    if m.ambient.torsion:
        raise ValueError("fractional refinement requires a torsion-free ambient")
    if n < 1:
        raise ValueError("refinement index must be positive")
    refined = affine_monoid(m.ambient, m.gens, m.presentation)
    incl = MonoidHom(m, refined, tuple(m.ambient.scale(n, g) for g in m.gens))
    return refined, incl


# ---------------------------------------------------------------------------
# bounded falsifier for cancellation of summands


def _class_search(pres: MonoidPresentation, start, node_cap):
    """Congruence class of a word under the relation rewriting moves.

    Returns (visited set, complete flag); complete means the class was
    fully enumerated below the node cap.
    """
    moves = []
    for lhs, rhs in pres.relations:
        moves.append((lhs, rhs))
        moves.append((rhs, lhs))
    seen = {start}
    frontier = [start]
    while frontier:
        if len(seen) > node_cap:
            return seen, False
        nxt = []
        for w in frontier:
            for takeaway, add in moves:
                if all(a >= b for a, b in zip(w, takeaway)):
                    w2 = tuple(a - b + c for a, b, c in zip(w, takeaway, add))
                    if w2 not in seen:
                        seen.add(w2)
                        nxt.append(w2)
        frontier = nxt
    return seen, True


def find_pseudo_integrality_violation(
    pres: MonoidPresentation, word_length_bound: int, node_cap: int = 20000
):
    """Search for words (a, b) with a + b = a and b not the identity.

    Soundness: a + b = a is certified by an explicit rewriting path, and
    b ≠ 0 is certified by fully enumerating b's congruence class and
    checking the zero word is absent.  Returning None means no violation
    was found within the bounds; it is not a proof that none exists.
    """
    n = pres.generator_count
    if n == 0:
        return None

    def words_up_to(bound):
        for total in range(1, bound + 1):
            for w in itertools.combinations_with_replacement(range(n), total):
                vec = [0] * n
                for i in w:
                    vec[i] += 1
                yield tuple(vec)

    zero = (0,) * n
    for b in words_up_to(word_length_bound):
        cls_b, complete = _class_search(pres, b, node_cap)
        if not complete or zero in cls_b:
            continue
        for a in itertools.chain([zero], words_up_to(word_length_bound)):
            ab = zl.vec_add(a, b)
            cls_ab, _ = _class_search(pres, ab, node_cap)
            # reaching a from a+b certifies the equality even if the
            # class enumeration was truncated
            if a in cls_ab:
                return a, b
    return None


# ---------------------------------------------------------------------------
# direct sums


def monoid_direct_sum(a: AffineMonoid, b: AffineMonoid):
    """(sum monoid, left inclusion, right inclusion)."""
    amb, emb_a, emb_b = zl.ambient_direct_sum(a.ambient, b.ambient)
    gens = [emb_a.apply(g) for g in a.gens] + [emb_b.apply(g) for g in b.gens]
    total = affine_monoid(amb, gens)
    inl = MonoidHom(a, total, tuple(emb_a.apply(g) for g in a.gens))
    inr = MonoidHom(b, total, tuple(emb_b.apply(g) for g in b.gens))
    return total, inl, inr
