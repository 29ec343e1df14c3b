"""Exact integer linear algebra and finitely generated abelian groups.

Everything works on plain Python ints (arbitrary precision is load-bearing:
transform matrices blow up fast) with immutable tuple-of-tuples matrices.
A matrix is a tuple of row tuples; vectors are tuples.

The normal-form routines use a fixed pivot rule, smallest nonzero absolute
value with ties broken by row-major position, so outputs are reproducible
across runs and platforms.  Several downstream results (generator images of
quotient groups, particular solutions of linear systems, section choices)
inherit their determinism from this rule.

Empty-matrix convention: an m x n matrix always has m row tuples, even when
n == 0; a 0 x n matrix is () and the few functions that can meet one take an
explicit ``ncols``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

Vector = tuple  # tuple[int, ...]
Matrix = tuple  # tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------------------
# basic matrix helpers


def mat(rows: Iterable[Sequence[int]]) -> Matrix:
    """Normalize to an immutable matrix, checking rectangularity."""
    out = tuple(tuple(int(x) for x in row) for row in rows)
    if out:
        width = len(out[0])
        if any(len(row) != width for row in out):
            raise ValueError("ragged rows in matrix")
    return out


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(m: int, n: int) -> Matrix:
    return tuple((0,) * n for _ in range(m))


def shape(a: Matrix, ncols: Optional[int] = None) -> tuple:
    if a:
        return len(a), len(a[0])
    if ncols is None:
        raise ValueError("empty matrix needs an explicit column count")
    return 0, ncols


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def matvec(a: Matrix, v: Vector) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def vec_add(u: Vector, v: Vector) -> Vector:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    return tuple(x - y for x, y in zip(u, v))


def vec_scale(c: int, v: Vector) -> Vector:
    return tuple(c * x for x in v)


def column(a: Matrix, j: int) -> Vector:
    return tuple(row[j] for row in a)


def columns_of(a: Matrix, ncols: int) -> tuple:
    return tuple(column(a, j) for j in range(ncols))


def from_columns(cols: Sequence[Vector], nrows: int) -> Matrix:
    return tuple(tuple(col[i] for col in cols) for i in range(nrows))


def det(a: Matrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def is_unimodular(a: Matrix) -> bool:
    return abs(det(a)) == 1


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ A @ V == D with U, V unimodular and D diagonal.

    ``invariant_factors`` are the positive diagonal entries d_1 | d_2 | ...
    (the zero tail is dropped); ``rank`` is their count.  ``lhs_inv`` and
    ``rhs_inv`` are the exact inverses of U and V, tracked during
    elimination so no post-hoc inversion is needed.
    """

    lhs: Matrix
    diag: Matrix
    rhs: Matrix
    lhs_inv: Matrix
    rhs_inv: Matrix
    invariant_factors: tuple
    rank: int


def _min_abs_pivot(a, t, m, n):
    """Smallest nonzero |entry| in the trailing submatrix, row-major ties."""
    best = None
    for i in range(t, m):
        for j in range(t, n):
            v = a[i][j]
            if v != 0 and (best is None or abs(v) < abs(best[0])):
                best = (v, i, j)
    return best


def smith_normal_form(a: Matrix, ncols: Optional[int] = None) -> SmithDecomposition:
    """Deterministic Smith normal form over the integers.

    Pivot selection scans the trailing submatrix for the entry of smallest
    nonzero absolute value (row-major on ties), swaps it to the corner, and
    alternates row/column reduction until the corner divides everything it
    faces; a final sweep enforces the divisibility chain.

    Examples
    --------
    >>> smith_normal_form(mat([[2, 0], [0, 3]])).invariant_factors
    (1, 6)
    >>> smith_normal_form(mat([[0, 0], [0, 0]])).invariant_factors
    ()
    """
    m, n = shape(a, ncols)
    A = [list(row) for row in a]
    U = [list(row) for row in identity(m)]
    Uinv = [list(row) for row in identity(m)]
    V = [list(row) for row in identity(n)]
    Vinv = [list(row) for row in identity(n)]

    def swap_rows(i, j):
        if i == j:
            return
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        for r in Uinv:
            r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        if i == j:
            return
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def add_row(i, j, k):
        # row_i += k * row_j  (on A and U; inverse op on Uinv columns)
        A[i][:] = [x + k * y for x, y in zip(A[i], A[j])]
        U[i][:] = [x + k * y for x, y in zip(U[i], U[j])]
        for r in Uinv:
            r[j] -= k * r[i]

    def add_col(j, i, k):
        # col_j += k * col_i
        for r in A:
            r[j] += k * r[i]
        for r in V:
            r[j] += k * r[i]
        Vinv[i][:] = [x - k * y for x, y in zip(Vinv[i], Vinv[j])]

    def negate_row(i):
        A[i][:] = [-x for x in A[i]]
        U[i][:] = [-x for x in U[i]]
        for r in Uinv:
            r[i] = -r[i]

    t = 0
    while t < min(m, n):
        found = _min_abs_pivot(A, t, m, n)
        if found is None:
            break
        while True:
            _, pi, pj = found
            swap_rows(t, pi)
            swap_cols(t, pj)
            if A[t][t] < 0:
                negate_row(t)
            pivot = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t] != 0:
                    add_row(i, t, -(A[i][t] // pivot))
                    if A[i][t] != 0:
                        dirty = True
            if not dirty:
                for j in range(t + 1, n):
                    if A[t][j] != 0:
                        add_col(j, t, -(A[t][j] // pivot))
                        if A[t][j] != 0:
                            dirty = True
            if not dirty:
                # corner clean; pull any non-multiple into play
                for i in range(t + 1, m):
                    bad = next((j for j in range(t + 1, n) if A[i][j] % pivot), None)
                    if bad is not None:
                        add_row(t, i, 1)
                        dirty = True
                        break
            if not dirty:
                break
            found = _min_abs_pivot(A, t, m, n)
        t += 1

    factors = tuple(A[i][i] for i in range(min(m, n)) if A[i][i] != 0)
    return SmithDecomposition(
        lhs=mat(U),
        diag=mat(A),
        rhs=mat(V),
        lhs_inv=mat(Uinv),
        rhs_inv=mat(Vinv),
        invariant_factors=factors,
        rank=len(factors),
    )


# ---------------------------------------------------------------------------
# Hermite normal form (row style)


def hermite_normal_form(a: Matrix, ncols: Optional[int] = None) -> Matrix:
    """Canonical basis of the row lattice: echelon rows, positive pivots,
    entries above each pivot reduced into [0, pivot).

    Zero rows are dropped, so the result is a canonical form for the lattice
    itself: two generating sets span the same lattice iff their HNFs match.

    >>> hermite_normal_form(mat([[2, 4], [3, 6]]))
    ((1, 2),)
    """
    m, n = shape(a, ncols)
    rows = [list(r) for r in a]
    top = 0
    for j in range(n):
        while True:
            live = [i for i in range(top, m) if rows[i][j] != 0]
            if not live:
                break
            ip = min(live, key=lambda i: (abs(rows[i][j]), i))
            rows[top], rows[ip] = rows[ip], rows[top]
            pivot = rows[top][j]
            done = True
            for i in range(top + 1, m):
                if rows[i][j] != 0:
                    q = rows[i][j] // pivot
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[top])]
                    if rows[i][j] != 0:
                        done = False
            if done:
                break
        if top < m and rows[top][j] != 0:
            if rows[top][j] < 0:
                rows[top] = [-x for x in rows[top]]
            pivot = rows[top][j]
            for i in range(top):
                q = rows[i][j] // pivot
                if q:
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[top])]
            top += 1
    return mat(rows[:top])


def same_lattice(gens_a: Matrix, gens_b: Matrix, ncols: int) -> bool:
    return hermite_normal_form(gens_a, ncols) == hermite_normal_form(gens_b, ncols)


# ---------------------------------------------------------------------------
# solving and saturation


def kernel_basis(a: Matrix, ncols: Optional[int] = None) -> tuple:
    """Basis (tuple of vectors) of {x in Z^n : A x = 0}."""
    m, n = shape(a, ncols)
    if m == 0 or n == 0:
        return tuple(identity(n))
    snf = smith_normal_form(a)
    return tuple(column(snf.rhs, j) for j in range(snf.rank, n))


def solve_integer(a: Matrix, b: Vector, ncols: Optional[int] = None):
    """One integral solution of A x = b, or None.

    The particular solution is the deterministic one induced by the Smith
    transforms (free coordinates set to zero).

    >>> solve_integer(mat([[2, 0], [0, 3]]), (4, 9))
    (2, 3)
    """
    m, n = shape(a, ncols)
    if len(b) != m:
        raise ValueError("dimension mismatch in solve")
    if m == 0:
        return (0,) * n
    if n == 0:
        return () if all(x == 0 for x in b) else None
    snf = smith_normal_form(a)
    c = matvec(snf.lhs, b)
    y = [0] * n
    for i in range(m):
        if i < snf.rank:
            d = snf.diag[i][i]
            if c[i] % d:
                return None
            y[i] = c[i] // d
        elif c[i] != 0:
            return None
    return matvec(snf.rhs, tuple(y))


def row_lattice_member(gens: Matrix, v: Vector, ncols: Optional[int] = None):
    """Coefficients z with z @ gens == v, or None."""
    n = len(v)
    m, _ = shape(gens, n)
    if m == 0:
        return () if all(x == 0 for x in v) else None
    return solve_integer(transpose(gens), v)


def sublattice_saturation(gens: Matrix, ncols: Optional[int] = None) -> Matrix:
    """HNF basis of (span_Q(gens) intersect Z^n).

    >>> sublattice_saturation(mat([[2, 4]]))
    ((1, 2),)
    """
    m, n = shape(gens, ncols)
    if m == 0:
        return ()
    snf = smith_normal_form(gens)
    # row lattice = {sum c_i d_i row_i(V^-1)}; since the rows of V^-1 are a
    # basis of Z^n, the rational span meets Z^n in the first `rank` of them.
    basis = [snf.rhs_inv[i] for i in range(snf.rank)]
    return hermite_normal_form(mat(basis), n)


def lattice_index(sub: Matrix, sup: Matrix, ncols: int) -> Optional[int]:
    """Index [sup : sub] when finite and sub <= sup, else None."""
    sub_h = hermite_normal_form(sub, ncols)
    sup_h = hermite_normal_form(sup, ncols)
    if len(sub_h) != len(sup_h):
        return None
    coeffs = []
    for row in sub_h:
        z = row_lattice_member(sup_h, row, ncols)
        if z is None:
            return None
        coeffs.append(z)
    return abs(det(mat(coeffs)))


# ---------------------------------------------------------------------------
# finitely generated abelian groups, invariant-factor normal form


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Invariant factor form: Z/d_1 + ... + Z/d_k with d_1 | d_2 | ..., d_i >= 2."""

    invariant_factors: tuple

    def __post_init__(self):
        fac = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fac)
        for d in fac:
            if d < 2:
                raise ValueError("invariant factors must be >= 2")
        for x, y in zip(fac, fac[1:]):
            if y % x:
                raise ValueError("invariant factors must form a divisibility chain")

    @property
    def order(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def is_trivial(self) -> bool:
        return not self.invariant_factors


@dataclass(frozen=True)
class AmbientAbelianGroup:
    """Z^free_rank + Z/d_1 + ...; coordinates run free first, then torsion
    residues in ascending invariant-factor order."""

    free_rank: int
    torsion: tuple

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        FiniteAbelianGroup(self.torsion)  # reuse the chain validation
        if self.free_rank < 0:
            raise ValueError("negative rank")

    @property
    def ncoords(self) -> int:
        return self.free_rank + len(self.torsion)

    def reduce(self, v: Sequence[int]) -> Vector:
        if len(v) != self.ncoords:
            raise ValueError("ambient coordinate mismatch")
        free = tuple(int(x) for x in v[: self.free_rank])
        tors = tuple(int(x) % d for x, d in zip(v[self.free_rank:], self.torsion))
        return free + tors

    def zero(self) -> Vector:
        return (0,) * self.ncoords

    def add(self, u, v) -> Vector:
        return self.reduce(vec_add(u, v))

    def neg(self, v) -> Vector:
        return self.reduce(vec_scale(-1, v))

    def sub(self, u, v) -> Vector:
        return self.reduce(vec_sub(u, v))

    def scale(self, c: int, v) -> Vector:
        return self.reduce(vec_scale(c, v))

    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self):
        if not self.is_finite():
            return None
        return FiniteAbelianGroup(self.torsion).order

    def finite_part(self) -> FiniteAbelianGroup:
        return FiniteAbelianGroup(self.torsion)

    def torsion_elements(self) -> tuple:
        """All torsion elements (free part zero); only for tiny torsion."""
        out = [self.zero()]
        for idx, d in enumerate(self.torsion):
            coord = self.free_rank + idx
            out = [v[:coord] + (r,) + v[coord + 1:] for v in out for r in range(d)]
        return tuple(out)

    def free_part(self, v) -> Vector:
        return tuple(v[: self.free_rank])

    def std_gens(self) -> tuple:
        n = self.ncoords
        return tuple(tuple(1 if i == j else 0 for i in range(n)) for j in range(n))

    def relation_rows(self) -> Matrix:
        """Relation rows of the standard presentation Z^ncoords -> self."""
        rows = []
        for idx, d in enumerate(self.torsion):
            row = [0] * self.ncoords
            row[self.free_rank + idx] = d
            rows.append(row)
        return mat(rows)


def free_ambient(rank: int) -> AmbientAbelianGroup:
    return AmbientAbelianGroup(free_rank=rank, torsion=())


@dataclass(frozen=True)
class QuotientPresentation:
    """Normal form of Z^ngens / row-lattice(relations), with the maps.

    ``gen_images[i]`` is the class of e_i in ``group`` coordinates; ``lift``
    picks the deterministic preimage induced by the Smith transform, so
    image(lift(w)) == w.
    """

    ngens: int
    group: AmbientAbelianGroup
    gen_images: tuple
    _lift_cols: Matrix

    def image(self, v: Vector) -> Vector:
        if len(v) != self.ngens:
            raise ValueError("coordinate mismatch in quotient image")
        acc = self.group.zero()
        for c, g in zip(v, self.gen_images):
            if c:
                acc = self.group.add(acc, self.group.scale(c, g))
        return acc

    def lift(self, w: Vector) -> Vector:
        acc = (0,) * self.ngens
        for j, c in enumerate(w):
            if c:
                acc = vec_add(acc, vec_scale(c, column(self._lift_cols, j)))
        return acc


def quotient_presentation(ngens: int, relations: Matrix) -> QuotientPresentation:
    """Normal form of Z^ngens modulo the row lattice of ``relations``."""
    if ngens == 0:
        return QuotientPresentation(
            ngens=0, group=AmbientAbelianGroup(0, ()), gen_images=(), _lift_cols=()
        )
    rel_cols = transpose(relations) if relations else zeros(ngens, 0)
    snf = smith_normal_form(rel_cols)
    nrel = len(rel_cols[0])
    diag = [snf.diag[i][i] if i < min(ngens, nrel) else 0 for i in range(ngens)]
    free_idx = [i for i in range(ngens) if diag[i] == 0]
    tors_idx = [i for i in range(ngens) if diag[i] > 1]
    group = AmbientAbelianGroup(
        free_rank=len(free_idx), torsion=tuple(diag[i] for i in tors_idx)
    )
    sel = free_idx + tors_idx
    gen_images = tuple(
        group.reduce(tuple(snf.lhs[i][j] for i in sel)) for j in range(ngens)
    )
    lift_cols = mat([[snf.lhs_inv[i][j] for j in sel] for i in range(ngens)])
    return QuotientPresentation(
        ngens=ngens, group=group, gen_images=gen_images, _lift_cols=lift_cols
    )


def cokernel(a: Matrix, ncols: Optional[int] = None) -> AmbientAbelianGroup:
    """Z^m / column-lattice(A) in invariant-factor form, for A : Z^n -> Z^m.

    >>> cokernel(mat([[1], [0]]))
    AmbientAbelianGroup(free_rank=1, torsion=())
    >>> cokernel(mat([[2, 0], [0, 3]])).torsion
    (6,)
    """
    m, n = shape(a, ncols)
    rows = mat([column(a, j) for j in range(n)]) if m else ()
    return quotient_presentation(m, rows).group


# ---------------------------------------------------------------------------
# subgroups of an ambient group, and homs between ambients


def _lifted_gen_matrix(ambient: AmbientAbelianGroup, gens: Sequence[Vector]):
    """Columns = gens followed by ambient torsion relations, as a matrix."""
    cols = [ambient.reduce(g) for g in gens] + [tuple(r) for r in ambient.relation_rows()]
    return from_columns(cols, ambient.ncoords), len(cols)


def subgroup_relation_lattice(
    ambient: AmbientAbelianGroup, gens: Sequence[Vector]
) -> Matrix:
    """HNF rows z with sum z_i gens_i == 0 in the ambient."""
    k = len(gens)
    if k == 0:
        return ()
    big, width = _lifted_gen_matrix(ambient, gens)
    ker = kernel_basis(big, ncols=width)
    return hermite_normal_form(mat([v[:k] for v in ker]), k)


def subgroup_member(ambient: AmbientAbelianGroup, gens: Sequence[Vector], v: Vector):
    """Integer coefficients z with sum z_i gens_i == v in ambient, or None."""
    k = len(gens)
    target = ambient.reduce(v)
    if k == 0:
        return () if target == ambient.zero() else None
    big, width = _lifted_gen_matrix(ambient, gens)
    sol = solve_integer(big, target, ncols=width)
    if sol is None:
        return None
    return sol[:k]


def subgroup_normal_form(
    ambient: AmbientAbelianGroup, gens: Sequence[Vector]
) -> QuotientPresentation:
    """The subgroup generated by ``gens`` as an abstract group.

    Returned as the quotient presentation whose generators are the given
    ``gens``; ``group`` is the subgroup's invariant-factor form.
    """
    rel = subgroup_relation_lattice(ambient, gens)
    return quotient_presentation(len(gens), rel)


def subgroup_quotient(
    ambient: AmbientAbelianGroup, gens: Sequence[Vector]
) -> QuotientPresentation:
    """Ambient modulo the subgroup generated by ``gens``, presented on the
    ambient's standard coordinates."""
    rows = [ambient.reduce(g) for g in gens]
    rows += [tuple(r) for r in ambient.relation_rows()]
    return quotient_presentation(ambient.ncoords, mat(rows))


@dataclass(frozen=True)
class AbGroupHom:
    """Hom of ambient groups; columns of ``matrix`` are images of the
    domain's standard generators (free then torsion)."""

    domain: AmbientAbelianGroup
    codomain: AmbientAbelianGroup
    matrix: Matrix

    def __post_init__(self):
        object.__setattr__(self, "matrix", mat(self.matrix))
        if len(self.matrix) != self.codomain.ncoords:
            raise ValueError("hom matrix must have codomain.ncoords rows")
        if self.matrix and len(self.matrix[0]) != self.domain.ncoords:
            raise ValueError("hom matrix must have domain.ncoords columns")
        for idx, d in enumerate(self.domain.torsion):
            col = column(self.matrix, self.domain.free_rank + idx)
            if self.codomain.scale(d, col) != self.codomain.zero():
                raise ValueError("hom does not kill a domain torsion relation")

    def apply(self, v: Vector) -> Vector:
        return self.codomain.reduce(matvec(self.matrix, self.domain.reduce(v)))


def hom_kernel_generators(h: AbGroupHom) -> tuple:
    """Nonzero vectors generating ker(h), in domain coordinates."""
    dom, cod = h.domain, h.codomain
    cols = [column(h.matrix, j) for j in range(dom.ncoords)]
    cols += [tuple(r) for r in cod.relation_rows()]
    big = from_columns(cols, cod.ncoords)
    ker = kernel_basis(big, ncols=len(cols))
    gens = [dom.reduce(v[: dom.ncoords]) for v in ker]
    gens += [tuple(r) for r in dom.relation_rows()]
    out, seen = [], set()
    for g in gens:
        r = dom.reduce(g)
        if r != dom.zero() and r not in seen:
            seen.add(r)
            out.append(r)
    return tuple(out)


def hom_kernel_group(h: AbGroupHom) -> AmbientAbelianGroup:
    gens = hom_kernel_generators(h)
    if not gens:
        return AmbientAbelianGroup(0, ())
    return subgroup_normal_form(h.domain, gens).group


def hom_cokernel(h: AbGroupHom) -> QuotientPresentation:
    """coker(h) = codomain / image, presented on codomain coordinates."""
    img = [h.apply(e) for e in h.domain.std_gens()]
    return subgroup_quotient(h.codomain, img)


def hom_is_injective(h: AbGroupHom) -> bool:
    return not hom_kernel_generators(h)


def hom_preimage(h: AbGroupHom, w: Vector):
    """Some domain vector mapping to w, or None when w misses the image."""
    cols = list(columns_of(h.matrix, h.domain.ncoords))
    coeffs = subgroup_member(h.codomain, cols, w)
    if coeffs is None:
        return None
    return h.domain.reduce(coeffs)


def compose_homs(after: AbGroupHom, before: AbGroupHom) -> AbGroupHom:
    if before.codomain != after.domain:
        raise ValueError("hom composition mismatch")
    cols = [
        after.apply(column(before.matrix, j)) for j in range(before.domain.ncoords)
    ]
    return AbGroupHom(
        before.domain, after.codomain, from_columns(cols, after.codomain.ncoords)
    )


def identity_group_hom(g: AmbientAbelianGroup) -> AbGroupHom:
    return AbGroupHom(g, g, identity(g.ncoords))


def ambient_direct_sum(a: AmbientAbelianGroup, b: AmbientAbelianGroup):
    """Normal form of a + b with the two embeddings.

    Returns (sum_group, emb_a, emb_b); the sum is renormalized so that its
    invariant factors form a divisibility chain even when the inputs'
    torsion lists interleave.
    """
    na, nb = a.ncoords, b.ncoords
    rows = [tuple(r) + (0,) * nb for r in a.relation_rows()]
    rows += [(0,) * na + tuple(r) for r in b.relation_rows()]
    qp = quotient_presentation(na + nb, mat(rows))
    emb_a = AbGroupHom(a, qp.group, from_columns(qp.gen_images[:na], qp.group.ncoords))
    emb_b = AbGroupHom(b, qp.group, from_columns(qp.gen_images[na:], qp.group.ncoords))
    return qp.group, emb_a, emb_b


def groups_isomorphic(a: AmbientAbelianGroup, b: AmbientAbelianGroup) -> bool:
    return a.free_rank == b.free_rank and a.torsion == b.torsion


if __name__ == "__main__":
    import doctest

    doctest.testmod()
