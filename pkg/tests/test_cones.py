"""Tests for exact cone arithmetic.

Expected ray and facet sets for the fixed examples were worked out by
hand (each is small enough to check by inspecting the inequalities) and
frozen; randomized tests check the defining properties instead.
"""

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from logchart import cones
from logchart import zlattice as zl


class TestFixedCones:
    def test_quadrant(self):
        c = cones.cone_from_rays([(1, 0), (0, 1)], 2)
        assert c.rays == ((0, 1), (1, 0))
        assert c.facet_normals == ((0, 1), (1, 0))
        assert c.equations == ()
        assert c.is_pointed() and c.dim() == 2

    def test_halfplane(self):
        c = cones.cone_from_rays([(1, 0), (-1, 0), (0, 1)], 2)
        assert c.lineality == ((1, 0),)
        assert c.rays == ((0, 1),)
        assert c.facet_normals == ((0, 1),)
        assert not c.is_pointed()

    def test_line(self):
        c = cones.cone_from_rays([(1, 2), (-1, -2)], 2)
        assert c.lineality == ((1, 2),)
        assert c.rays == ()
        assert c.facet_normals == ()
        assert c.equations == ((2, -1),)
        assert c.dim() == 1

    def test_zero_cone(self):
        c = cones.cone_from_rays([], 2)
        assert c.rays == () and c.lineality == ()
        assert c.dim() == 0
        assert c.contains((0, 0)) and not c.contains((1, 0))

    def test_cone_over_square(self):
        rays = [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]
        c = cones.cone_from_rays(rays, 3)
        assert len(c.rays) == 4
        assert set(c.rays) == set(rays)
        assert len(c.facet_normals) == 4
        assert set(c.facet_normals) == {(1, 0, 0), (0, 1, 0), (-1, 0, 1), (0, -1, 1)}

    def test_non_simplicial_facet_has_rays(self):
        c = cones.cone_from_rays([(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)], 3)
        for f in c.facet_normals:
            on = c.rays_on_facet(f)
            assert len(on) == 2

    def test_positive_functional(self):
        c = cones.cone_from_rays([(1, 0), (1, 2)], 2)
        f = c.positive_functional()
        for r in c.rays:
            assert sum(x * y for x, y in zip(f, r)) > 0

    def test_redundant_inequality_removed(self):
        c = cones.cone_from_inequalities([(1, 0), (0, 1), (1, 1)], 2)
        assert c.facet_normals == ((0, 1), (1, 0))

    def test_inequalities_with_equations(self):
        c = cones.cone_from_inequalities([(1, 0, 0)], 3, equations=[(0, 0, 1)])
        assert c.equations == ((0, 0, 1),)
        assert c.lineality == ((0, 1, 0),)
        assert c.rays == ((1, 0, 0),)

    def test_intersection(self):
        a = cones.cone_from_rays([(1, 0), (1, 1)], 2)
        b = cones.cone_from_rays([(1, 1), (0, 1)], 2)
        c = cones.intersect(a, b)
        assert c.rays == ((1, 1),)

    def test_pullback(self):
        # preimage of the quadrant under (x, y) -> (x + y, y)
        c = cones.cone_from_rays([(1, 0), (0, 1)], 2)
        pre = cones.pullback_cone([(1, 1), (0, 1)], c, 2)
        assert pre.contains((1, 0)) and pre.contains((-1, 1))
        assert not pre.contains((-1, 0))
        assert set(pre.rays) == {(1, 0), (-1, 1)}


def _random_cone(rng, dim, ngens):
    gens = [
        tuple(rng.randint(-3, 3) for _ in range(dim)) for _ in range(ngens)
    ]
    return gens, cones.cone_from_rays(gens, dim)


class TestConeProperties:
    @settings(max_examples=80, deadline=None)
    @given(st.integers(1, 4), st.integers(0, 5), st.integers(0, 2**32 - 1))
    def test_generators_contained(self, dim, ngens, seed):
        rng = random.Random(seed)
        gens, c = _random_cone(rng, dim, ngens)
        for g in gens:
            assert c.contains(g)
        for r in c.generators():
            assert c.contains(r)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 4), st.integers(0, 5), st.integers(0, 2**32 - 1))
    def test_canonical_idempotent(self, dim, ngens, seed):
        rng = random.Random(seed)
        _, c = _random_cone(rng, dim, ngens)
        again = cones.cone_from_rays(c.generators(), dim)
        assert again == c

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 4), st.integers(0, 5), st.integers(0, 2**32 - 1))
    def test_h_rep_and_v_rep_agree(self, dim, ngens, seed):
        rng = random.Random(seed)
        gens, c = _random_cone(rng, dim, ngens)
        # random nonnegative combinations satisfy the constraint system
        for _ in range(10):
            coeffs = [rng.randint(0, 3) for _ in gens]
            v = tuple(
                sum(cf * g[j] for cf, g in zip(coeffs, gens)) for j in range(dim)
            )
            assert c.contains(v)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 4), st.integers(1, 5), st.integers(0, 2**32 - 1))
    def test_span_dimension_consistent(self, dim, ngens, seed):
        rng = random.Random(seed)
        gens, c = _random_cone(rng, dim, ngens)
        nz = [g for g in gens if any(g)]
        span_rank = (
            zl.smith_normal_form(zl.mat(nz), dim).rank if nz else 0
        )
        assert c.dim() == span_rank
        assert len(c.equations) == dim - span_rank

    @settings(max_examples=40, deadline=None)
    @given(st.integers(2, 4), st.integers(2, 6), st.integers(0, 2**32 - 1))
    def test_facets_are_supporting(self, dim, ngens, seed):
        rng = random.Random(seed)
        gens, c = _random_cone(rng, dim, ngens)
        for f in c.facet_normals:
            assert all(
                sum(x * y for x, y in zip(f, g)) >= 0 for g in gens if any(g)
            )
            # a facet touches the cone in dimension dim()-1
            on = c.rays_on_facet(f)
            rows = list(on) + [tuple(w) for w in c.lineality]
            got = zl.smith_normal_form(zl.mat(rows), dim).rank if rows else 0
            assert got == c.dim() - 1

    @settings(max_examples=50, deadline=None)
    @given(st.integers(1, 3), st.integers(1, 4), st.integers(0, 2**32 - 1))
    def test_pointed_iff_no_opposite_vectors(self, dim, ngens, seed):
        rng = random.Random(seed)
        gens, c = _random_cone(rng, dim, ngens)
        if c.is_pointed():
            for g in gens:
                if any(g):
                    assert not c.contains(tuple(-x for x in g))
        else:
            w = c.lineality[0]
            assert c.contains(tuple(w)) and c.contains(tuple(-x for x in w))
