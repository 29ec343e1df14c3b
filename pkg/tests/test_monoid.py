"""Tests for presented and affine monoids.

Oracles used here and nowhere in the library:

* monoid membership by breadth-first enumeration of generator sums inside
  a coordinate box (complete for monoids with nonnegative generators),
* saturation by brute-force lattice-point enumeration: x is saturated-in
  when x lies in the generated group and k·x is a generator sum for some
  small k,
* Hilbert bases by listing all cone points in a box and keeping the
  subtraction-irreducible ones.

Expected values computed with these oracles are frozen as literals.
"""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logchart import cones
from logchart import monoid as mo
from logchart import zlattice as zl


# ---------------------------------------------------------------------------
# oracles


def bfs_monoid_points(gens, coord_cap, dim):
    """All sums of generators with every partial sum inside [0, cap]^dim.

    Complete for monoids whose generators have nonnegative coordinates:
    any representation can be reordered without leaving the box.
    """
    seen = {(0,) * dim}
    frontier = [(0,) * dim]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple(a + b for a, b in zip(v, g))
                if all(0 <= x <= coord_cap for x in w) and w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def find_positive_functional(gens, dim, bound=6):
    """Brute-force linear functional that is at least 1 on every generator."""
    for f in itertools.product(range(-bound, bound + 1), repeat=dim):
        if all(sum(a * b for a, b in zip(f, g)) >= 1 for g in gens):
            return f
    raise AssertionError("oracle requires a sharp instance")


def monoid_points_bounded(gens, f, budget, dim):
    """All generator sums y with f(y) <= budget.

    Complete as a membership list for such y: f is at least 1 on every
    generator, so the partial sums of any word only grow under f and a
    word for y never leaves the enumerated region.
    """
    seen = {(0,) * dim}
    frontier = [(0,) * dim]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple(a + b for a, b in zip(v, g))
                if sum(a * b for a, b in zip(f, w)) <= budget and w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def saturation_box_oracle(m, box_radius, k_max):
    """Minimal generators of the saturation, by definition, inside a box."""
    dim = m.ambient.free_rank
    assert not m.ambient.torsion, "oracle is for torsion-free instances"
    f = find_positive_functional(m.gens, dim)
    budget = k_max * box_radius * sum(abs(c) for c in f)
    pts = monoid_points_bounded(m.gens, f, budget, dim)
    sat = set()
    for x in itertools.product(range(-box_radius, box_radius + 1), repeat=dim):
        if zl.subgroup_member(m.ambient, m.gens, x) is None:
            continue
        if sum(a * b for a, b in zip(f, x)) < 0:
            continue
        for k in range(1, k_max + 1):
            if tuple(k * c for c in x) in pts:
                sat.add(x)
                break
    minimal = []
    for x in sorted(sat - {(0,) * dim}):
        reducible = False
        for y in sat:
            if y == (0,) * dim or y == x:
                continue
            diff = tuple(a - b for a, b in zip(x, y))
            if diff in sat:
                reducible = True
                break
        if not reducible:
            minimal.append(x)
    return sorted(minimal)


def hilbert_box_oracle(cone, box):
    """Irreducible cone lattice points, complete for cones inside the
    nonnegative orthant with all irreducibles in the box."""
    dim = cone.ambient_dim
    pts = {
        x
        for x in itertools.product(range(box + 1), repeat=dim)
        if any(x) and cone.contains(x)
    }
    out = []
    for x in sorted(pts):
        reducible = False
        for y in pts:
            if y != x:
                diff = tuple(a - b for a, b in zip(x, y))
                if all(c >= 0 for c in diff) and cone.contains(diff) and any(diff):
                    reducible = True
                    break
        if not reducible:
            out.append(x)
    return sorted(out)


# ---------------------------------------------------------------------------
# presentations and groupification


class TestGroupify:
    def test_two_torsion(self):
        pres = mo.MonoidPresentation(2, (((2, 0), (0, 2)),))
        qp = mo.groupify(pres)
        assert (qp.group.free_rank, qp.group.torsion) == (1, (2,))
        a, b = qp.gen_images
        # frozen output of the deterministic transform; the images must
        # differ by the torsion element and satisfy the relation
        assert (a, b) == ((1, 1), (1, 0))
        assert qp.group.scale(2, a) == qp.group.scale(2, b)
        assert a != b

    def test_free(self):
        qp = mo.groupify(mo.free_presentation(2))
        assert (qp.group.free_rank, qp.group.torsion) == (2, ())
        assert qp.gen_images == ((1, 0), (0, 1))

    def test_collapsing_relation(self):
        pres = mo.MonoidPresentation(1, (((2,), (1,)),))
        qp = mo.groupify(pres)
        assert qp.group.ncoords == 0

    def test_integralize_collapse(self):
        m = mo.integralize(mo.MonoidPresentation(1, (((2,), (1,)),)))
        assert m.gens == ()

    def test_integralize_identification(self):
        pres = mo.MonoidPresentation(2, (((1, 1), (0, 2)),))
        m = mo.integralize(pres)
        assert m.ambient.free_rank == 1 and m.ambient.torsion == ()
        assert m.gens == ((1,),)

    def test_integralize_free_is_free(self):
        m = mo.integralize(mo.free_presentation(2))
        assert sorted(m.gens) == [(0, 1), (1, 0)]


# ---------------------------------------------------------------------------
# membership


class TestMembership:
    def test_numerical_monoid(self):
        m = mo.affine_monoid(zl.free_ambient(1), [(2,), (3,)])
        assert mo.membership(m, (1,)) is None
        assert mo.membership(m, (7,)) == (2, 1)
        assert mo.membership(m, (0,)) == (0, 0)

    def test_refusal_in_rank_two(self):
        m = mo.affine_monoid(zl.free_ambient(2), [(2, 0), (0, 1), (1, 1)])
        assert mo.membership(m, (1, 0)) is None

    def test_ambient_mismatch(self):
        m = mo.affine_monoid(zl.free_ambient(1), [(2,)])
        with pytest.raises(ValueError):
            mo.membership(m, (1, 0))

    def test_units_repair(self):
        amb = zl.AmbientAbelianGroup(1, (2,))
        m = mo.affine_monoid(amb, [(1, 1), (-1, 0), (0, 1)])
        for target in [(5, 0), (-3, 1), (0, 1), (-7, 0)]:
            cert = mo.membership(m, target)
            assert cert is not None
            acc = amb.zero()
            for c, g in zip(cert, m.gens):
                assert c >= 0
                acc = amb.add(acc, amb.scale(c, g))
            assert acc == amb.reduce(target)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_against_bfs_oracle(self, seed):
        rng = random.Random(seed)
        dim = 2
        gens = []
        while len(gens) < 3:
            g = tuple(rng.randint(0, 3) for _ in range(dim))
            if any(g):
                gens.append(g)
        m = mo.affine_monoid(zl.free_ambient(dim), gens)
        pts = bfs_monoid_points(m.gens, 12, dim)
        for x in itertools.product(range(7), repeat=dim):
            cert = mo.membership(m, x)
            if x in pts:
                assert cert is not None
                acc = (0, 0)
                for c, g in zip(cert, m.gens):
                    acc = (acc[0] + c * g[0], acc[1] + c * g[1])
                assert acc == x
            else:
                assert cert is None


# ---------------------------------------------------------------------------
# units and sharp quotients


class TestUnits:
    def test_halfplane_units(self):
        m = mo.affine_monoid(zl.free_ambient(2), [(1, 0), (-1, 0), (0, 1)])
        group, sharp, proj = mo.units_and_sharp_quotient(m)
        assert (group.free_rank, group.torsion) == (1, ())
        assert sharp.gens == ((1,),)
        assert proj.apply((3, 0)) == (0,)

    def test_sharp_already(self):
        m = mo.free_monoid_on(2)
        group, sharp, _ = mo.units_and_sharp_quotient(m)
        assert group.ncoords == 0
        assert sorted(sharp.gens) == [(0, 1), (1, 0)]

    def test_diagonal_units(self):
        m = mo.affine_monoid(zl.free_ambient(2), [(1, 1), (-1, -1), (1, 0)])
        group, sharp, _ = mo.units_and_sharp_quotient(m)
        assert (group.free_rank, group.torsion) == (1, ())
        assert (sharp.ambient.free_rank, sharp.ambient.torsion) == (1, ())
        assert sharp.gens == ((1,),) or sharp.gens == ((-1,),)

    def test_every_unit_generator_invertible(self):
        amb = zl.AmbientAbelianGroup(1, (2,))
        m = mo.affine_monoid(amb, [(1, 1), (-1, 0), (0, 1)])
        ud = mo.unit_data(m)
        for u in ud.basis:
            assert mo.membership(m, u) is not None
            assert mo.membership(m, amb.neg(u)) is not None

    def test_torsion_generator_is_unit(self):
        amb = zl.AmbientAbelianGroup(1, (3,))
        m = mo.affine_monoid(amb, [(1, 0), (0, 1)])
        ud = mo.unit_data(m)
        assert (0, 1) in ud.basis
        assert mo.membership(m, (0, 2)) is not None


# ---------------------------------------------------------------------------
# saturation


class TestSaturate:
    def test_numerical(self):
        m = mo.affine_monoid(zl.free_ambient(1), [(2,), (3,)])
        assert mo.saturate(m).gens == ((1,),)
        assert saturation_box_oracle(m, 8, 24) == [(1,)]

    def test_rank_two(self):
        m = mo.affine_monoid(zl.free_ambient(2), [(2, 0), (0, 1), (1, 1)])
        assert mo.saturate(m).gens == ((0, 1), (1, 0))
        assert saturation_box_oracle(m, 8, 24) == [(0, 1), (1, 0)]

    def test_already_saturated(self):
        m = mo.free_monoid_on(2)
        assert mo.monoids_equal(mo.saturate(m), m)
        assert mo.is_saturated(m)

    def test_box_oracle_on_presented_instances(self):
        presentations = [
            mo.MonoidPresentation(2, (((1, 1), (0, 2)),)),
            mo.MonoidPresentation(2, ()),
            mo.MonoidPresentation(3, (((1, 1, 0), (0, 0, 2)),)),
        ]
        for pres in presentations:
            m = mo.integralize(pres)
            if m.ambient.torsion or m.ambient.free_rank > 2:
                continue
            got = sorted(mo.saturate(m).gens)
            want = saturation_box_oracle(m, 6, 8)
            assert got == want

    def test_idempotent_and_contains(self):
        instances = [
            mo.affine_monoid(zl.free_ambient(1), [(2,), (3,)]),
            mo.affine_monoid(zl.free_ambient(2), [(2, 0), (0, 1), (1, 1)]),
            mo.affine_monoid(zl.free_ambient(2), [(1, 0), (1, 2)]),
            mo.affine_monoid(zl.free_ambient(2), [(1, 0), (-1, 0), (0, 2)]),
        ]
        for m in instances:
            sat = mo.saturate(m)
            again = mo.saturate(sat)
            assert mo.monoids_equal(sat, again)
            for g in m.gens:
                assert mo.membership(sat, g) is not None
            for h in sat.gens:
                assert any(
                    mo.membership(m, m.ambient.scale(k, h)) is not None
                    for k in range(1, 65)
                )

    def test_saturation_is_computed_inside_the_generated_group(self):
        # generated by (1, 1mod2): 2*(1,0) = (2,0) lies in the monoid, but
        # (1,0) is outside the generated group, so it must stay outside
        amb = zl.AmbientAbelianGroup(1, (2,))
        m = mo.affine_monoid(amb, [(1, 1)])
        sat = mo.saturate(m)
        assert mo.monoids_equal(sat, m)
        assert mo.membership(sat, (1, 0)) is None

    def test_torsion_absorbed_when_in_group(self):
        amb = zl.AmbientAbelianGroup(1, (2,))
        m = mo.affine_monoid(amb, [(1, 1), (1, 0)])
        sat = mo.saturate(m)
        assert mo.membership(m, (0, 1)) is None
        assert mo.membership(sat, (0, 1)) is not None
        assert sorted(mo.saturate(m).gens) == [(0, 1), (1, 0)]

    def test_units_with_numerical_part(self):
        m = mo.affine_monoid(zl.free_ambient(2), [(1, 0), (-1, 0), (0, 2), (0, 3)])
        sat = mo.saturate(m)
        assert mo.membership(m, (0, 1)) is None
        assert mo.membership(sat, (0, 1)) is not None
        assert mo.membership(sat, (-5, 1)) is not None
        assert sorted(sat.gens) == [(-1, 0), (0, 1), (1, 0)]


class TestClassify:
    def test_numerical(self):
        m = mo.affine_monoid(zl.free_ambient(1), [(2,), (3,)])
        props = mo.classify(m)
        assert props.fine and props.sharp
        assert not props.saturated and not props.fs
        assert props.dimension == 1

    def test_free(self):
        props = mo.classify(mo.free_monoid_on(3))
        assert props.fs and props.sharp and props.dimension == 3

    def test_group_z(self):
        m = mo.affine_monoid(zl.free_ambient(1), [(1,), (-1,)])
        props = mo.classify(m)
        assert props.fs and not props.sharp
        assert props.dimension == 1


# ---------------------------------------------------------------------------
# Hilbert bases


class TestHilbert:
    def test_cone_over_square(self):
        c = cones.cone_from_rays([(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)], 3)
        assert mo.hilbert_basis(c) == (
            (0, 0, 1),
            (0, 1, 1),
            (1, 0, 1),
            (1, 1, 1),
        )

    def test_interior_point_needed(self):
        # the cone over (1,0),(1,2) needs the interior point (1,1)
        c = cones.cone_from_rays([(1, 0), (1, 2)], 2)
        assert mo.hilbert_basis(c) == ((1, 0), (1, 1), (1, 2))
        assert hilbert_box_oracle(c, 10) == [(1, 0), (1, 1), (1, 2)]

    def test_not_pointed_rejected(self):
        c = cones.cone_from_rays([(1, 0), (-1, 0)], 2)
        with pytest.raises(ValueError):
            mo.hilbert_basis(c)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_against_box_oracle(self, seed):
        rng = random.Random(seed)
        rays = []
        while len(rays) < rng.choice([2, 3]):
            r = tuple(rng.randint(0, 4) for _ in range(2))
            if any(r):
                rays.append(r)
        c = cones.cone_from_rays(rays, 2)
        if not c.is_pointed():
            return
        got = list(mo.hilbert_basis(c))
        assert got == hilbert_box_oracle(c, 16)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_rank_three_generates(self, seed):
        rng = random.Random(seed)
        rays = [tuple(rng.randint(0, 3) for _ in range(3)) for _ in range(4)]
        rays = [r for r in rays if any(r)]
        c = cones.cone_from_rays(rays, 3)
        if not c.is_pointed() or c.dim() == 0:
            return
        basis = mo.hilbert_basis(c)
        m = mo.affine_monoid(zl.free_ambient(3), basis)
        # every small cone lattice point is generated
        lattice = zl.sublattice_saturation(zl.mat(basis), 3)
        for x in itertools.product(range(4), repeat=3):
            if c.contains(x) and zl.row_lattice_member(lattice, x, 3) is not None:
                assert mo.membership(m, x) is not None


# ---------------------------------------------------------------------------
# exact embeddings


class TestExactEmbedding:
    def test_free_identity(self):
        emb = mo.exact_embedding(mo.free_monoid_on(2))
        assert emb.gen_images == ((1, 0), (0, 1))

    def test_flat_triangle(self):
        m = mo.affine_monoid(zl.free_ambient(2), [(1, 0), (1, 1), (1, 2)])
        emb = mo.exact_embedding(m)
        assert emb.gen_images == ((0, 2), (1, 1), (2, 0))

    def test_square_facet_count_exceeds_rank(self):
        m = mo.affine_monoid(
            zl.free_ambient(3), [(1, 0, 0), (1, 1, 0), (1, 0, 1), (1, 1, 1)]
        )
        emb = mo.exact_embedding(m)
        assert len(emb.gen_images[0]) == 4
        assert m.ambient.free_rank == 3

    def test_rejects_unsaturated(self):
        m = mo.affine_monoid(zl.free_ambient(1), [(2,), (3,)])
        with pytest.raises(ValueError):
            mo.exact_embedding(m)

    def test_preimage_recovers_monoid(self):
        for gens in [
            [(1, 0), (1, 1), (1, 2)],
            [(1, 0), (0, 1)],
            [(1, 0, 0), (1, 1, 0), (1, 0, 1), (1, 1, 1)],
        ]:
            dim = len(gens[0])
            m = mo.affine_monoid(zl.free_ambient(dim), gens)
            emb = mo.exact_embedding(m)
            amb_hom = mo.hom_ambient_extension(emb)
            s = len(emb.gen_images[0])
            quadrant = cones.cone_from_rays(
                [tuple(int(i == j) for i in range(s)) for j in range(s)], s
            )
            pre = cones.pullback_cone(amb_hom.matrix, quadrant, dim)
            got = mo.hilbert_basis(pre)
            want = mo._minimal_generators(m)
            assert got == want


# ---------------------------------------------------------------------------
# sections


class TestSplittingSection:
    def test_sharp_projection(self):
        m = mo.affine_monoid(zl.free_ambient(2), [(1, 0), (-1, 0), (0, 1)])
        _, sharp, proj = mo.units_and_sharp_quotient(m)
        f = mo.MonoidHom(m, sharp, tuple(proj.apply(g) for g in m.gens))
        s = mo.splitting_section(f)
        assert s.gen_images == ((0, 1),)
        for q in sharp.gens:
            assert f.apply(s.apply(q)) == q

    def test_direct_sum_projection(self):
        total, inl, inr = mo.monoid_direct_sum(
            mo.affine_monoid(zl.free_ambient(1), [(1,), (-1,)]),
            mo.free_monoid_on(1),
        )
        proj = mo.MonoidHom(total, mo.free_monoid_on(1), ((0,), (0,), (1,)))
        s = mo.splitting_section(proj)
        assert proj.apply(s.gen_images[0]) == (1,)

    def test_kernel_violation(self):
        f = mo.MonoidHom(mo.free_monoid_on(2), mo.free_monoid_on(1), ((1,), (1,)))
        with pytest.raises(ValueError):
            mo.splitting_section(f)


# ---------------------------------------------------------------------------
# fractional refinement


class TestFractionalRefinement:
    def test_doubling(self):
        n1 = mo.free_monoid_on(1)
        refined, incl = mo.fractional_refinement(n1, 2)
        assert refined.gens == n1.gens
        assert incl.gen_images == ((2,),)

    def test_identity_refinement(self):
        n2 = mo.free_monoid_on(2)
        _, incl = mo.fractional_refinement(n2, 1)
        assert incl.gen_images == n2.gens

    def test_torsion_rejected(self):
        amb = zl.AmbientAbelianGroup(1, (2,))
        m = mo.affine_monoid(amb, [(1, 0)])
        with pytest.raises(ValueError):
            mo.fractional_refinement(m, 2)


# ---------------------------------------------------------------------------
# pseudo-integrality falsifier


class TestPseudoIntegrality:
    def test_free_has_none(self):
        assert (
            mo.find_pseudo_integrality_violation(mo.free_presentation(1), 6) is None
        )

    def test_absorbing_relation(self):
        pres = mo.MonoidPresentation(2, (((1, 1), (1, 0)),))
        got = mo.find_pseudo_integrality_violation(pres, 4)
        assert got == ((1, 0), (0, 1))

    def test_returned_pair_is_sound(self):
        pres = mo.MonoidPresentation(2, (((1, 1), (1, 0)),))
        a, b = mo.find_pseudo_integrality_violation(pres, 4)
        ab = tuple(x + y for x, y in zip(a, b))
        cls, complete = mo._class_search(pres, ab, 10000)
        assert a in cls
        cls_b, complete_b = mo._class_search(pres, b, 10000)
        assert complete_b and (0, 0) not in cls_b

    def test_fs_pushout_presentation_clean(self):
        # quotient presentation of the saturated amalgam of a doubling map
        # with an identity map: a single free generator survives
        pres = mo.MonoidPresentation(2, (((2, 0), (0, 1)),))
        m = mo.integralize(pres)
        sat = mo.saturate(m)
        sat_pres = mo.presentation_of(sat)
        assert mo.find_pseudo_integrality_violation(sat_pres, 8) is None


# ---------------------------------------------------------------------------
# canonical forms and equality


class TestCanonicalForm:
    def test_generator_order_irrelevant(self):
        a = mo.affine_monoid(zl.free_ambient(2), [(2, 0), (0, 1), (1, 1)])
        b = mo.affine_monoid(zl.free_ambient(2), [(1, 1), (0, 1), (2, 0)])
        assert mo.canonical_form(a) == mo.canonical_form(b)

    def test_redundant_generator_irrelevant(self):
        a = mo.affine_monoid(zl.free_ambient(1), [(2,), (3,)])
        b = mo.affine_monoid(zl.free_ambient(1), [(2,), (3,), (5,)])
        assert mo.monoids_equal(a, b)

    def test_distinguishes(self):
        a = mo.affine_monoid(zl.free_ambient(1), [(2,), (3,)])
        c = mo.affine_monoid(zl.free_ambient(1), [(2,), (5,)])
        assert not mo.monoids_equal(a, c)

    def test_units_in_form(self):
        m = mo.affine_monoid(zl.free_ambient(2), [(1, 0), (-1, 0), (0, 1)])
        form = mo.canonical_form(m)
        assert form.units_lattice == ((1, 0),)
        assert form.sharp_generators == ((1,),)

    def test_equal_after_unit_shuffle(self):
        # same submonoid described with shifted generators
        a = mo.affine_monoid(zl.free_ambient(2), [(1, 0), (-1, 0), (0, 1)])
        b = mo.affine_monoid(zl.free_ambient(2), [(1, 0), (-1, 0), (5, 1)])
        assert mo.monoids_equal(a, b)


# ---------------------------------------------------------------------------
# homs


class TestMonoidHom:
    def test_rejects_non_member_image(self):
        n1 = mo.free_monoid_on(1)
        with pytest.raises(ValueError):
            mo.MonoidHom(n1, n1, ((-1,),))

    def test_rejects_relation_violation(self):
        amb = zl.AmbientAbelianGroup(0, (2,))
        m = mo.affine_monoid(amb, [(1,)])
        n1 = mo.free_monoid_on(1)
        with pytest.raises(ValueError):
            mo.MonoidHom(m, n1, ((1,),))

    def test_apply_matches_generator_images(self):
        m = mo.affine_monoid(zl.free_ambient(2), [(1, 0), (1, 1), (1, 2)])
        u = mo.exact_embedding(m)
        for g, im in zip(m.gens, u.gen_images):
            assert u.apply(g) == im
        assert u.apply((2, 2)) == tuple(
            a + b for a, b in zip(u.gen_images[0], u.gen_images[2])
        )

    def test_compose(self):
        n1 = mo.free_monoid_on(1)
        d = mo.MonoidHom(n1, n1, ((2,),))
        t = mo.MonoidHom(n1, n1, ((3,),))
        assert mo.compose(d, t).gen_images == ((6,),)

    def test_tight_group_hom_kernel(self):
        n1 = mo.free_monoid_on(1)
        d = mo.MonoidHom(n1, n1, ((2,),))
        gp = mo.tight_group_hom(d)
        assert zl.hom_is_injective(gp)
        cok = zl.hom_cokernel(gp).group
        assert (cok.free_rank, cok.torsion) == (0, (2,))
