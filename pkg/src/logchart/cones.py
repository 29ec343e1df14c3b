"""Exact rational polyhedral cones via the double description method.

A cone is stored in both representations at once:

* generators: a lineality basis plus extreme rays (primitive integer
  vectors, canonical representatives modulo the lineality space),
* constraints: facet normals plus equations cutting out the linear span.

Both are computed with integer arithmetic only.  The double description
loop processes one halfspace at a time; while the current lineality space
is not contained in the new hyperplane one lineality vector is pivoted
into a ray, afterwards the classic positive/negative ray combination step
applies.  Adjacency of two rays is decided by an exact rank computation
on their common tight constraints, so no genericity assumption is needed.

Canonical form: extreme ray representatives are projected orthogonally
off the lineality space (over the rationals) and scaled to primitive
integer vectors, then sorted; the lineality and equation lattices are
kept as saturated Hermite bases.  Two equal cones therefore compare equal
as tuples no matter how they were constructed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import zlattice as zl


def _primitive(v):
    """Scale an integer vector by a positive rational to make it primitive."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _rank(rows, ncols):
    if not rows:
        return 0
    return zl.smith_normal_form(zl.mat(rows), ncols).rank


def _project_off(v, basis, ncols):
    """Project v orthogonally off the span of basis rows; primitive result.

    The projection is computed over Q and rescaled by a positive integer,
    so the output generates the same ray modulo the span.
    """
    if not basis:
        return _primitive(v)
    k = len(basis)
    gram = [[Fraction(_dot(basis[i], basis[j])) for j in range(k)] for i in range(k)]
    rhs = [Fraction(_dot(basis[i], v)) for i in range(k)]
    coeff = _solve_rational(gram, rhs)
    out = [Fraction(x) for x in v]
    for i in range(k):
        for j in range(ncols):
            out[j] -= coeff[i] * basis[i][j]
    denom = 1
    for x in out:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    return _primitive(tuple(int(x * denom) for x in out))


def _solve_rational(a, b):
    """Gaussian elimination over Q; a is invertible (a Gram matrix)."""
    n = len(a)
    m = [row[:] + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def _double_description(ineqs, dim):
    """Extreme structure of {x : a.x >= 0 for a in ineqs}.

    Returns (lineality basis rows, list of (ray, tightset)); rays are
    primitive but not yet reduced modulo the lineality space.
    """
    lineality = [tuple(zl.identity(dim)[i]) for i in range(dim)]
    rays = []
    for k, a in enumerate(ineqs):
        pivot = next((i for i, w in enumerate(lineality) if _dot(a, w) != 0), None)
        if pivot is not None:
            w = lineality.pop(pivot)
            if _dot(a, w) < 0:
                w = tuple(-x for x in w)
            aw = _dot(a, w)
            lineality = [
                _primitive(tuple(aw * v[j] - _dot(a, v) * w[j] for j in range(dim)))
                for v in lineality
            ]
            new_rays = [(w, frozenset(range(k)))]
            for r, tight in rays:
                ar = _dot(a, r)
                r2 = _primitive(tuple(aw * r[j] - ar * w[j] for j in range(dim)))
                new_rays.append((r2, tight | {k}))
            rays = new_rays
            continue
        pos, zero, neg = [], [], []
        for r, tight in rays:
            ar = _dot(a, r)
            if ar > 0:
                pos.append((r, tight))
            elif ar == 0:
                zero.append((r, tight | {k}))
            else:
                neg.append((r, tight))
        ldim = len(lineality)
        combos = []
        for (p, tp), (q, tq) in itertools.product(pos, neg):
            common = tp & tq
            normals = [ineqs[i] for i in sorted(common)]
            if dim - _rank(normals, dim) != ldim + 2:
                continue
            ap, aq = _dot(a, p), _dot(a, q)
            r2 = _primitive(tuple(ap * q[j] - aq * p[j] for j in range(dim)))
            combos.append((r2, common | {k}))
        rays = pos + zero + combos
    return lineality, rays


def _canonical_lattice(rows, dim):
    if not rows:
        return ()
    return zl.sublattice_saturation(zl.mat(rows), dim)


@dataclass(frozen=True)
class Cone:
    """Rational polyhedral cone in canonical double representation."""

    ambient_dim: int
    lineality: tuple  # saturated Hermite basis of the largest linear subspace
    rays: tuple  # canonical extreme ray representatives, sorted
    facet_normals: tuple  # canonical, sorted; together with equations: H-rep
    equations: tuple  # saturated Hermite basis of span(cone) orthogonal

    def contains(self, v):
        if len(v) != self.ambient_dim:
            raise ValueError("wrong ambient dimension")
        return all(_dot(e, v) == 0 for e in self.equations) and all(
            _dot(f, v) >= 0 for f in self.facet_normals
        )

    def dim(self):
        return self.ambient_dim - len(self.equations)

    def lineality_dim(self):
        return len(self.lineality)

    def is_pointed(self):
        return not self.lineality

    def generators(self):
        """Integer vectors generating the cone over the nonnegative rationals."""
        out = list(self.rays)
        for w in self.lineality:
            out.append(tuple(w))
            out.append(tuple(-x for x in w))
        return tuple(out)

    def positive_functional(self):
        """A linear functional strictly positive on the cone minus the origin.

        Only defined for pointed cones; the sum of all facet normals works
        because a point annihilating every facet lies in the lineality space.
        """
        if not self.is_pointed():
            raise ValueError("cone is not pointed")
        f = [0] * self.ambient_dim
        for nrm in self.facet_normals:
            f = [x + y for x, y in zip(f, nrm)]
        return tuple(f)

    def rays_on_facet(self, normal):
        return tuple(r for r in self.rays if _dot(normal, r) == 0)


def _finish(lin_rows, ray_vecs, dim):
    lineality = _canonical_lattice(lin_rows, dim)
    canon = set()
    for r in ray_vecs:
        rr = _project_off(r, lineality, dim)
        if any(rr):
            canon.add(rr)
    return lineality, tuple(sorted(canon))


def cone_from_rays(generators, dim):
    """Cone generated by integer vectors, in canonical form."""
    gens = [tuple(g) for g in generators if any(g)]
    for g in gens:
        if len(g) != dim:
            raise ValueError("generator has wrong length")
    dual_lin, dual_rays = _double_description([_primitive(g) for g in gens], dim)
    equations = _canonical_lattice(dual_lin, dim)
    facets = set()
    for r, _ in dual_rays:
        rr = _project_off(r, equations, dim)
        if any(rr):
            facets.add(rr)
    facets = tuple(sorted(facets))
    ineqs = list(facets)
    for e in equations:
        ineqs.append(tuple(e))
        ineqs.append(tuple(-x for x in e))
    lin_rows, rays = _double_description(ineqs, dim)
    lineality, canon_rays = _finish(lin_rows, [r for r, _ in rays], dim)
    return Cone(dim, lineality, canon_rays, facets, equations)


def cone_from_inequalities(normals, dim, equations=()):
    """Cone {x : n.x >= 0, e.x = 0}, in the same canonical form."""
    ineqs = [_primitive(tuple(n)) for n in normals]
    for e in equations:
        ineqs.append(_primitive(tuple(e)))
        ineqs.append(_primitive(tuple(-x for x in e)))
    lin_rows, rays = _double_description(ineqs, dim)
    gens = [r for r, _ in rays]
    for w in lin_rows:
        gens.append(tuple(w))
        gens.append(tuple(-x for x in w))
    return cone_from_rays(gens, dim)


def intersect(cone_a, cone_b):
    if cone_a.ambient_dim != cone_b.ambient_dim:
        raise ValueError("ambient dimensions differ")
    return cone_from_inequalities(
        list(cone_a.facet_normals) + list(cone_b.facet_normals),
        cone_a.ambient_dim,
        equations=list(cone_a.equations) + list(cone_b.equations),
    )


def _left_mul(n, a, domain_dim):
    return tuple(sum(n[i] * a[i][j] for i in range(len(n))) for j in range(domain_dim))


def pullback_cone(matrix_rows, cone, domain_dim):
    """{x in Z^domain_dim tensored with Q : A x in cone}."""
    a = [tuple(r) for r in matrix_rows]
    if len(a) != cone.ambient_dim:
        raise ValueError("matrix rows must match cone ambient dimension")
    normals = [_left_mul(n, a, domain_dim) for n in cone.facet_normals]
    eqs = [_left_mul(e, a, domain_dim) for e in cone.equations]
    return cone_from_inequalities(normals, domain_dim, equations=eqs)
