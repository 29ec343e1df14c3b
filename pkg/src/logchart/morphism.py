"""Structure theory of monoid homomorphisms.

Group-level kernels and cokernels, exactness, Kummer covers with their
Galois groups, smoothness and etaleness flags of charts, amalgamated sums
in raw, fine, and fs flavors, self-product decompositions, and the
ramification and Abhyankar indices of Kummer covers.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional

from . import cones
from . import zlattice as zl
from .monoid import (
    AffineMonoid,
    MonoidHom,
    MonoidPresentation,
    affine_monoid,
    canonical_form,
    compose,
    cone_lattice_monoid,
    identity_hom,
    is_saturated,
    membership,
    monoid_cone,
    presentation_of,
    saturate,
    tight_coordinates,
    tight_group_hom,
)

__all__ = [
    "MonoidHom",
    "compose",
    "identity_hom",
    "gp_kernel_cokernel",
    "is_exact",
    "is_kummer",
    "ChartClassification",
    "chart_classification",
    "ramification_index",
    "PushoutResult",
    "pushout",
    "SelfProductDecomposition",
    "self_product_decomposition",
    "abhyankar_index",
]


def gp_kernel_cokernel(u: MonoidHom):
    """Kernel and cokernel of the induced map of generated groups.

    Both come back in invariant-factor normal form.
    """
    h = tight_group_hom(u)
    return zl.hom_kernel_group(h), zl.hom_cokernel(h).group


# ---------------------------------------------------------------------------
# exactness


def _free_part_rows(h: zl.AbGroupHom):
    """Action of h on free parts.

    Torsion generators of the domain map to finite-order elements, whose
    free part vanishes, so the free columns tell the whole free story.
    """
    rd = h.domain.free_rank
    rp = h.codomain.free_rank
    return [tuple(row[:rd]) for row in h.matrix[:rp]]


def is_exact(u: MonoidHom):
    """Whether the domain is the full preimage of the codomain monoid.

    The preimage monoid {x in the domain group : u(x) lies in the codomain
    monoid} is computable because the codomain is saturated: membership
    there constrains exactly the free part to the codomain cone, so the
    preimage is the set of lattice points of a pulled-back cone.  Returns
    (True, None), or (False, w) with w a preimage generator outside the
    domain, in domain ambient coordinates.
    """
    if not is_saturated(u.codomain):
        raise ValueError("exactness needs a saturated codomain")
    h = tight_group_hom(u)
    dom_tc = tight_coordinates(u.domain)
    cod_tc = tight_coordinates(u.codomain)
    qcone = monoid_cone(cod_tc.monoid)
    rd = h.domain.free_rank
    pre = cones.pullback_cone(_free_part_rows(h), qcone, rd)
    full = cone_lattice_monoid(h.domain, pre)
    for g in full.gens:
        if membership(dom_tc.monoid, g) is None:
            return False, dom_tc.inclusion.apply(g)
    return True, None


# ---------------------------------------------------------------------------
# Kummer morphisms


def is_kummer(u: MonoidHom):
    """Injectivity on groups, finite cokernel, and the power condition.

    The cokernel exponent e is a complete power bound once the domain is
    saturated: if n·a = u(x) for some x in the domain and y is the unique
    group preimage of e·a, then n·y = e·x lies in the domain, hence so
    does y.  Returns (True, galois_group) or (False, None).
    """
    if not (is_saturated(u.domain) and is_saturated(u.codomain)):
        raise ValueError("the Kummer test needs saturated domain and codomain")
    h = tight_group_hom(u)
    if not zl.hom_is_injective(h):
        return False, None
    cok = zl.hom_cokernel(h)
    if cok.group.free_rank:
        return False, None
    g = zl.FiniteAbelianGroup(cok.group.torsion)
    dom_tc = tight_coordinates(u.domain)
    cod_tc = tight_coordinates(u.codomain)
    for q in u.codomain.gens:
        w = cod_tc.to_tight(q)
        x = zl.hom_preimage(h, h.codomain.scale(g.exponent, w))
        if x is None:
            raise AssertionError("finite cokernel must absorb the exponent")
        if membership(dom_tc.monoid, x) is None:
            return False, None
    return True, g


def ramification_index(u: MonoidHom) -> int:
    """Smallest positive integer annihilating the cokernel of the cover."""
    ok, g = is_kummer(u)
    if not ok:
        raise ValueError("ramification index needs a Kummer morphism")
    return g.exponent


# ---------------------------------------------------------------------------
# chart classification


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _coprime_to_char(p: int, order: int) -> bool:
    return p == 0 or order % p != 0


@dataclass(frozen=True)
class ChartClassification:
    injective: bool
    exact: bool
    kummer: bool
    log_smooth: bool
    log_etale: bool
    kummer_etale: bool
    residue_characteristic: int
    galois_group: Optional[zl.FiniteAbelianGroup]

    def __post_init__(self):
        if self.kummer_etale and not self.kummer:
            raise AssertionError("kummer_etale without kummer")
        if self.log_etale and not self.log_smooth:
            raise AssertionError("log_etale without log_smooth")
        if self.kummer and not self.injective:
            raise AssertionError("kummer without injective")


def chart_classification(
    u: MonoidHom, residue_characteristic: int = 0
) -> ChartClassification:
    """All chart flags of u over a point of the given characteristic.

    Smoothness asks the kernel and the torsion part of the cokernel of the
    group map to be finite of order coprime to the characteristic;
    etaleness asks the same of the kernel and the full cokernel; the
    Kummer-etale flag asks the cover's annihilator to be invertible.
    Characteristic 0 makes every coprimality condition vacuous.
    """
    p = residue_characteristic
    if p != 0 and not _is_prime(p):
        raise ValueError("residue characteristic must be 0 or a prime")
    if not (is_saturated(u.domain) and is_saturated(u.codomain)):
        raise ValueError("chart classification needs saturated monoids")
    ker, cok = gp_kernel_cokernel(u)
    injective = ker.ncoords == 0
    ker_finite = ker.free_rank == 0
    ker_order = 1
    for d in ker.torsion:
        ker_order *= d
    cok_finite = cok.free_rank == 0
    cok_torsion_order = 1
    for d in cok.torsion:
        cok_torsion_order *= d
    log_smooth = ker_finite and _coprime_to_char(p, ker_order * cok_torsion_order)
    log_etale = log_smooth and cok_finite
    exact_verdict, _ = is_exact(u)
    kummer_verdict, galois = is_kummer(u)
    kummer_etale = kummer_verdict and _coprime_to_char(p, galois.exponent)
    return ChartClassification(
        injective=injective,
        exact=exact_verdict,
        kummer=kummer_verdict,
        log_smooth=log_smooth,
        log_etale=log_etale,
        kummer_etale=kummer_etale,
        residue_characteristic=p,
        galois_group=galois if kummer_verdict else None,
    )


# ---------------------------------------------------------------------------
# amalgamated sums


@dataclass(frozen=True)
class PushoutResult:
    """Amalgamated sum of u: P -> Q and v: P -> R over P.

    Raw mode carries a presentation on the concatenated generators of Q
    and R, with the canonical inclusions given by generator indices.  Fine
    and fs modes carry the affine monoid together with the two canonical
    maps from Q and R.
    """

    mode: str
    presentation: Optional[MonoidPresentation]
    monoid: Optional[AffineMonoid]
    left: Optional[MonoidHom]
    right: Optional[MonoidHom]
    left_gen_indices: tuple
    right_gen_indices: tuple


def _raw_pushout_presentation(u: MonoidHom, v: MonoidHom) -> MonoidPresentation:
    q_pres = presentation_of(u.codomain)
    r_pres = presentation_of(v.codomain)
    s, t = q_pres.generator_count, r_pres.generator_count
    rels = []
    for lhs, rhs in q_pres.relations:
        rels.append((lhs + (0,) * t, rhs + (0,) * t))
    for lhs, rhs in r_pres.relations:
        rels.append(((0,) * s + lhs, (0,) * s + rhs))
    for qi, ri in zip(u.gen_images, v.gen_images):
        cu = membership(u.codomain, qi)
        cv = membership(v.codomain, ri)
        rels.append((tuple(cu) + (0,) * t, (0,) * s + tuple(cv)))
    return MonoidPresentation(s + t, tuple(rels))


def _fine_pushout(u: MonoidHom, v: MonoidHom):
    """Image of Q and R inside the pushout of generated groups."""
    hu = tight_group_hom(u)
    hv = tight_group_hom(v)
    codq = tight_coordinates(u.codomain)
    codr = tight_coordinates(v.codomain)
    total, emb_q, emb_r = zl.ambient_direct_sum(hu.codomain, hv.codomain)
    glue = []
    for e in hu.domain.std_gens():
        a = emb_q.apply(hu.apply(e))
        b = emb_r.apply(hv.apply(e))
        glue.append(total.sub(a, b))
    qp = zl.subgroup_quotient(total, glue)
    img_q = tuple(
        qp.image(emb_q.apply(codq.to_tight(g))) for g in u.codomain.gens
    )
    img_r = tuple(
        qp.image(emb_r.apply(codr.to_tight(g))) for g in v.codomain.gens
    )
    po = affine_monoid(qp.group, img_q + img_r)
    left = MonoidHom(u.codomain, po, img_q)
    right = MonoidHom(v.codomain, po, img_r)
    return po, left, right


def pushout(u: MonoidHom, v: MonoidHom, mode: str = "fs") -> PushoutResult:
    """Amalgamated sum over the common domain, in the requested category."""
    if u.domain != v.domain:
        raise ValueError("pushout needs homs with a common domain")
    if mode not in ("raw", "fine", "fs"):
        raise ValueError("mode must be raw, fine, or fs")
    s, t = len(u.codomain.gens), len(v.codomain.gens)
    left_idx = tuple(range(s))
    right_idx = tuple(range(s, s + t))
    if mode == "raw":
        pres = _raw_pushout_presentation(u, v)
        return PushoutResult("raw", pres, None, None, None, left_idx, right_idx)
    po, left, right = _fine_pushout(u, v)
    if mode == "fs":
        po = saturate(po)
        left = MonoidHom(u.codomain, po, left.gen_images)
        right = MonoidHom(v.codomain, po, right.gen_images)
    return PushoutResult(mode, None, po, left, right, left_idx, right_idx)


# ---------------------------------------------------------------------------
# self products of a Kummer cover


@dataclass(frozen=True)
class SelfProductDecomposition:
    """Certified splitting of the j-fold self product of a Kummer cover.

    ``product`` is the iterated fs pushout of the cover with itself,
    ``insertions`` its j canonical maps from the codomain, ``target`` the
    direct sum of the codomain with j-1 copies of the Galois group, and
    ``iso`` the canonical isomorphism onto it.  ``codomain_embedding`` and
    ``class_slots`` locate the codomain and the group copies inside the
    target's coordinates.
    """

    product: AffineMonoid
    insertions: tuple
    target: AffineMonoid
    iso: MonoidHom
    codomain_embedding: zl.AbGroupHom
    class_slots: tuple
    galois_group: zl.FiniteAbelianGroup


def self_product_decomposition(u: MonoidHom, j: int) -> SelfProductDecomposition:
    """Split the j-fold self product of a Kummer cover off its base.

    The canonical map sends the a-th insertion of q to q paired with the
    class of q in the first a-1 group slots; it is certified to agree with
    an integral matrix, to be a group isomorphism, and to carry the
    product monoid exactly onto the direct sum monoid.  Any failed check
    raises with the offending element.
    """
    ok, galois = is_kummer(u)
    if not ok:
        raise ValueError("self products need a Kummer morphism")
    if j < 1:
        raise ValueError("the number of factors must be at least 1")
    q_monoid = u.codomain
    cok = zl.hom_cokernel(tight_group_hom(u))
    cod_tc = tight_coordinates(q_monoid)

    product = q_monoid
    insertions = [identity_hom(q_monoid)]
    for _ in range(j - 1):
        res = pushout(compose(insertions[0], u), u, "fs")
        insertions = [compose(res.left, ins) for ins in insertions] + [res.right]
        product = res.monoid

    target_amb = q_monoid.ambient
    emb_q = zl.identity_group_hom(target_amb)
    slots = []
    for _ in range(j - 1):
        bigger, keep, fresh = zl.ambient_direct_sum(target_amb, cok.group)
        emb_q = zl.compose_homs(keep, emb_q)
        slots = [zl.compose_homs(keep, s) for s in slots] + [fresh]
        target_amb = bigger
    target_gens = [emb_q.apply(g) for g in q_monoid.gens]
    for slot in slots:
        for tg in cok.group.std_gens():
            target_gens.append(slot.apply(tg))
    target = affine_monoid(target_amb, target_gens)

    def canonical_image(a, q_gen):
        out = emb_q.apply(q_gen)
        cls = cok.image(cod_tc.to_tight(q_gen))
        for i in range(a - 1):
            out = target_amb.add(out, slots[i].apply(cls))
        return out

    vecs = []
    wanted = []
    for a, ins in enumerate(insertions, start=1):
        for q_gen, w in zip(q_monoid.gens, ins.gen_images):
            vecs.append(w)
            wanted.append(canonical_image(a, q_gen))
    amb_p = product.ambient
    cols = []
    for e in amb_p.std_gens():
        coeffs = zl.subgroup_member(amb_p, vecs, e)
        if coeffs is None:
            raise RuntimeError(
                "insertion images fail to generate the self product group"
            )
        acc = target_amb.zero()
        for c, im in zip(coeffs, wanted):
            if c:
                acc = target_amb.add(acc, target_amb.scale(c, im))
        cols.append(acc)
    try:
        amb_map = zl.AbGroupHom(
            amb_p, target_amb, zl.from_columns(cols, target_amb.ncoords)
        )
    except ValueError as err:
        raise RuntimeError(f"canonical self-product map is ill defined: {err}")
    for w, want in zip(vecs, wanted):
        got = amb_map.apply(w)
        if got != want:
            raise RuntimeError(
                "canonical self-product map disagrees on the insertion "
                f"image {w}: got {got}, wanted {want}"
            )
    if not zl.hom_is_injective(amb_map):
        raise RuntimeError("canonical self-product map is not injective")
    if zl.hom_cokernel(amb_map).group.ncoords != 0:
        raise RuntimeError("canonical self-product map is not surjective")
    iso_images = tuple(amb_map.apply(g) for g in product.gens)
    try:
        iso = MonoidHom(product, target, iso_images)
    except ValueError as err:
        raise RuntimeError(f"canonical map leaves the direct sum monoid: {err}")
    image_monoid = affine_monoid(target_amb, iso_images)
    if canonical_form(image_monoid) != canonical_form(target):
        raise RuntimeError(
            "canonical map does not carry the self product onto the direct sum"
        )
    return SelfProductDecomposition(
        product=product,
        insertions=tuple(insertions),
        target=target,
        iso=iso,
        codomain_embedding=emb_q,
        class_slots=tuple(slots),
        galois_group=galois,
    )


# ---------------------------------------------------------------------------
# Abhyankar index


def abhyankar_index(u: MonoidHom) -> int:
    """Least n with the codomain inside the n-th fractional refinement.

    Codomain generators are written in rational coordinates of the domain
    group; the index is the least common multiple of the denominators.
    Minimality against monoid containment follows from exactness of Kummer
    morphisms, and is asserted against every smaller candidate.
    """
    dom_tc = tight_coordinates(u.domain)
    if dom_tc.nf.group.torsion:
        raise ValueError("the Abhyankar index needs a torsion-free domain group")
    h = tight_group_hom(u)
    if not zl.hom_is_injective(h) or zl.hom_cokernel(h).group.free_rank:
        raise ValueError("the Abhyankar index needs a Kummer morphism")
    if is_saturated(u.domain) and is_saturated(u.codomain):
        ok, _ = is_kummer(u)
        if not ok:
            raise ValueError("the Abhyankar index needs a Kummer morphism")
    cod_tc = tight_coordinates(u.codomain)
    rd = h.domain.free_rank
    rp = h.codomain.free_rank
    sd = zl.smith_normal_form(zl.mat(_free_part_rows(h)), ncols=rd)
    if sd.rank != rd:
        raise AssertionError("injective map lost rank on free parts")
    solutions = []
    for qgen in u.codomain.gens:
        w = cod_tc.to_tight(qgen)
        b = zl.matvec(sd.lhs, tuple(w[:rp]))
        for i in range(rd, rp):
            if b[i] != 0:
                raise AssertionError("finite cokernel left a free residue")
        y = [Fraction(b[i], sd.invariant_factors[i]) for i in range(rd)]
        x = tuple(
            sum((Fraction(sd.rhs[k][i]) * y[i] for i in range(rd)), Fraction(0))
            for k in range(rd)
        )
        solutions.append(x)
    n = 1
    for x in solutions:
        for c in x:
            n = lcm(n, c.denominator)
    for m in range(1, n):
        if all((m * c).denominator == 1 for x in solutions for c in x):
            raise AssertionError("denominator lcm was not minimal")
    return n
