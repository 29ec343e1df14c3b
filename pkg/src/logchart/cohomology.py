"""Finite-dimensional cohomology over prime fields.

Four pipelines share one representation, the dense complex of matrices
modulo a prime: group cohomology of finite abelian groups from tensor
products of two-periodic cyclic complexes, degree slices of the Cech
complex of a Kummer cover with cofaces generated from the self-product
decomposition, Koszul complexes of commuting scalars, and the polydisc
dimension count that sums the Koszul answers over a character grid.

Ranks are computed by exact modular elimination; a vectorized path takes
over for larger matrices.  Character- and degree-indexed computations
are independent and their aggregation is a plain sum, so evaluation
order never matters.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from . import monoid as mo
from . import morphism as mor
from . import zlattice as zl

try:
    import numpy as _np
except ImportError:  # pragma: no cover - numpy is a declared dependency
    _np = None

__all__ = [
    "PrimeFieldComplex",
    "CharacterDatum",
    "CechSlice",
    "CechGroupComparison",
    "matrix_rank_mod",
    "cyclic_cochain_complex",
    "tensor_complexes",
    "finite_group_cohomology",
    "cech_complex_degreewise",
    "cech_vs_group_cohomology",
    "koszul_complex",
    "koszul_cohomology",
    "polydisc_cohomology",
    "smallest_field_with_level",
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


# ---------------------------------------------------------------------------
# rank over a prime field


def _rank_python(rows, ell):
    a = [list(r) for r in rows]
    m, n = len(a), len(a[0])
    rank = 0
    row = 0
    for col in range(n):
        piv = next((i for i in range(row, m) if a[i][col] % ell), None)
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = pow(a[row][col] % ell, ell - 2, ell)
        a[row] = [x * inv % ell for x in a[row]]
        for i in range(m):
            f = a[i][col] % ell
            if i != row and f:
                a[i] = [(x - f * y) % ell for x, y in zip(a[i], a[row])]
        rank += 1
        row += 1
        if row == m:
            break
    return rank


def _rank_numpy(rows, ell):
    a = _np.array(rows, dtype=_np.int64) % ell
    m, n = a.shape
    rank = 0
    row = 0
    for col in range(n):
        nz = _np.nonzero(a[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        inv = pow(int(a[row, col]), ell - 2, ell)
        a[row] = a[row] * inv % ell
        others = _np.nonzero(a[:, col])[0]
        others = others[others != row]
        if others.size:
            a[others] = (a[others] - _np.outer(a[others, col], a[row])) % ell
        rank += 1
        row += 1
        if row == m:
            break
    return rank


_VECTOR_THRESHOLD = 4096


def matrix_rank_mod(rows, ell: int) -> int:
    """Rank of an integer matrix over F_ell."""
    if not _is_prime(ell):
        raise ValueError("the characteristic must be prime")
    m = len(rows)
    n = len(rows[0]) if m else 0
    if m == 0 or n == 0:
        return 0
    if _np is not None and m * n >= _VECTOR_THRESHOLD:
        return _rank_numpy(rows, ell)
    return _rank_python(rows, ell)


# ---------------------------------------------------------------------------
# complexes


@dataclass(frozen=True)
class PrimeFieldComplex:
    """A cochain complex of finite-dimensional F_ell spaces.

    ``differentials[i]`` maps degree i to degree i+1 and is stored with
    ``dims[i+1]`` rows and ``dims[i]`` columns.  Consecutive maps are
    checked to compose to zero on construction.
    """

    characteristic: int
    dims: tuple
    differentials: tuple

    def __post_init__(self):
        ell = self.characteristic
        if not _is_prime(ell):
            raise ValueError("the characteristic must be prime")
        dims = tuple(int(d) for d in self.dims)
        if any(d < 0 for d in dims):
            raise ValueError("term dimensions must be nonnegative")
        diffs = []
        if len(self.differentials) != max(len(dims) - 1, 0):
            raise ValueError("expected one differential per adjacent pair")
        for i, mtx in enumerate(self.differentials):
            mtx = tuple(tuple(int(x) % ell for x in row) for row in mtx)
            if len(mtx) != dims[i + 1] or any(len(r) != dims[i] for r in mtx):
                raise ValueError(f"differential {i} has the wrong shape")
            diffs.append(mtx)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "differentials", tuple(diffs))
        for i in range(len(diffs) - 1):
            later, earlier = diffs[i + 1], diffs[i]
            for row in later:
                for col in range(dims[i]):
                    acc = sum(row[k] * earlier[k][col] for k in range(dims[i + 1]))
                    if acc % ell:
                        raise AssertionError(
                            f"differentials {i} and {i + 1} fail to compose to zero"
                        )

    def rank(self, i: int) -> int:
        if i < 0 or i >= len(self.differentials):
            return 0
        return matrix_rank_mod(self.differentials[i], self.characteristic)

    def cohomology_dimensions(self) -> tuple:
        """Dimension of kernel mod image in every degree of the complex."""
        out = []
        for i in range(len(self.dims)):
            out.append(self.dims[i] - self.rank(i) - self.rank(i - 1))
        return tuple(out)


def cyclic_cochain_complex(order: int, ell: int, terms: int) -> PrimeFieldComplex:
    """Cochains of a cyclic group on the trivial field module.

    The two-periodic resolution alternates multiplication by t-1 and by
    the norm element; on the trivial module these become zero and the
    group order.
    """
    if order < 1 or terms < 1:
        raise ValueError("need a positive order and at least one term")
    diffs = []
    for i in range(terms - 1):
        value = 0 if i % 2 == 0 else order % ell
        diffs.append(((value,),))
    return PrimeFieldComplex(ell, (1,) * terms, tuple(diffs))


def tensor_complexes(a: PrimeFieldComplex, b: PrimeFieldComplex) -> PrimeFieldComplex:
    """Tensor product complex with the usual alternating sign."""
    if a.characteristic != b.characteristic:
        raise ValueError("cannot tensor complexes over different fields")
    ell = a.characteristic
    la, lb = len(a.dims), len(b.dims)
    total = la + lb - 1

    def blocks(n):
        out = []
        offset = 0
        for i in range(max(0, n - lb + 1), min(n, la - 1) + 1):
            j = n - i
            out.append((i, j, offset))
            offset += a.dims[i] * b.dims[j]
        return out, offset

    dims = []
    layout = []
    for n in range(total):
        blk, size = blocks(n)
        layout.append(blk)
        dims.append(size)

    diffs = []
    for n in range(total - 1):
        mtx = [[0] * dims[n] for _ in range(dims[n + 1])]
        tgt = {(i, j): off for i, j, off in layout[n + 1]}
        for i, j, off in layout[n]:
            for ai in range(a.dims[i]):
                for bi in range(b.dims[j]):
                    col = off + ai * b.dims[j] + bi
                    if i + 1 < la and (i + 1, j) in tgt:
                        base = tgt[(i + 1, j)]
                        dmat = a.differentials[i]
                        for ar in range(a.dims[i + 1]):
                            v = dmat[ar][ai]
                            if v:
                                mtx[base + ar * b.dims[j] + bi][col] = (
                                    mtx[base + ar * b.dims[j] + bi][col] + v
                                ) % ell
                    if j + 1 < lb and (i, j + 1) in tgt:
                        base = tgt[(i, j + 1)]
                        sign = -1 if i % 2 else 1
                        dmat = b.differentials[j]
                        for br in range(b.dims[j + 1]):
                            v = dmat[br][bi]
                            if v:
                                cell = base + ai * b.dims[j + 1] + br
                                mtx[cell][col] = (mtx[cell][col] + sign * v) % ell
        diffs.append(tuple(tuple(r) for r in mtx))
    return PrimeFieldComplex(ell, tuple(dims), tuple(diffs))


def finite_group_cohomology(group, ell: int, max_degree: int) -> tuple:
    """Dimensions of the cohomology of a finite abelian group over F_ell.

    Trivial coefficients throughout; the complex is the tensor product of
    one two-periodic complex per invariant factor.
    """
    if not _is_prime(ell):
        raise ValueError("the characteristic must be prime")
    if max_degree < 0:
        raise ValueError("the degree bound must be nonnegative")
    factors = tuple(group.invariant_factors)
    terms = max_degree + 2
    acc = PrimeFieldComplex(ell, (1,), ())
    for d in factors:
        acc = tensor_complexes(acc, cyclic_cochain_complex(d, ell, terms))
        acc = _truncate(acc, terms)
    if len(acc.dims) < terms:
        pad = acc.dims + (0,) * (terms - len(acc.dims))
        diffs = list(acc.differentials)
        for i in range(len(acc.dims) - 1, terms - 1):
            diffs.append(tuple(() for _ in range(pad[i + 1])))
        acc = PrimeFieldComplex(ell, pad, tuple(diffs))
    return acc.cohomology_dimensions()[: max_degree + 1]


def _truncate(cx: PrimeFieldComplex, terms: int) -> PrimeFieldComplex:
    if len(cx.dims) <= terms:
        return cx
    return PrimeFieldComplex(
        cx.characteristic, cx.dims[:terms], cx.differentials[: terms - 1]
    )


# ---------------------------------------------------------------------------
# Cech complexes of Kummer covers


@lru_cache(maxsize=None)
def _cover_data(u: mo.MonoidHom):
    ok, galois = mor.is_kummer(u)
    if not ok:
        raise ValueError("the Cech complex needs a Kummer morphism")
    h = mo.tight_group_hom(u)
    cok = zl.hom_cokernel(h)
    dom_tc = mo.tight_coordinates(u.domain)
    cod_tc = mo.tight_coordinates(u.codomain)
    classes = tuple(
        itertools.product(*(range(d) for d in cok.group.torsion))
    )
    if cok.group.free_rank:
        raise AssertionError("Kummer cokernels are finite")
    return h, cok, dom_tc, cod_tc, galois, classes


def cover_galois_group(u: mo.MonoidHom) -> zl.FiniteAbelianGroup:
    """Deck transformation group of a Kummer cover."""
    return _cover_data(u)[4]


def cover_residue_class(u: mo.MonoidHom, q) -> tuple:
    """Class of a codomain element in the cover's Galois group.

    Two codomain elements share a degree-slice shape exactly when their
    classes agree, so this is the key for deduplicating slice work.
    """
    _, cok, _, cod_tc, _, _ = _cover_data(u)
    q = u.codomain.ambient.reduce(tuple(q))
    return cok.image(cod_tc.to_tight(q))


@lru_cache(maxsize=None)
def _self_product(u: mo.MonoidHom, factors: int):
    return mor.self_product_decomposition(u, factors)


def _insertion_vector(u, factors, a, q_gen):
    """Target coordinates of the a-th insertion of a codomain generator."""
    sp = _self_product(u, factors)
    _, cok, _, cod_tc, _, _ = _cover_data(u)
    out = sp.codomain_embedding.apply(q_gen)
    cls = cok.image(cod_tc.to_tight(q_gen))
    amb = sp.target.ambient
    for i in range(a - 1):
        out = amb.add(out, sp.class_slots[i].apply(cls))
    return out


@lru_cache(maxsize=None)
def _coface_hom(u: mo.MonoidHom, factors: int, c: int) -> zl.AbGroupHom:
    """The c-th coface from the ``factors``-fold to the next self product.

    Determined by sending the a-th insertion to insertion a, or a+1 once
    a reaches c; the matrix is solved from the insertion images, which
    generate the product group.
    """
    src = _self_product(u, factors)
    amb_src = src.target.ambient
    amb_dst = _self_product(u, factors + 1).target.ambient
    vecs = []
    wanted = []
    for a in range(1, factors + 1):
        shifted = a + 1 if a >= c else a
        for q_gen in u.codomain.gens:
            vecs.append(_insertion_vector(u, factors, a, q_gen))
            wanted.append(_insertion_vector(u, factors + 1, shifted, q_gen))
    cols = []
    for e in amb_src.std_gens():
        coeffs = zl.subgroup_member(amb_src, vecs, e)
        if coeffs is None:
            raise AssertionError("insertion images fail to generate the product")
        acc = amb_dst.zero()
        for k, im in zip(coeffs, wanted):
            if k:
                acc = amb_dst.add(acc, amb_dst.scale(k, im))
        cols.append(acc)
    hom = zl.AbGroupHom(amb_src, amb_dst, zl.from_columns(cols, amb_dst.ncoords))
    for v, w in zip(vecs, wanted):
        if hom.apply(v) != w:
            raise AssertionError("coface disagrees with the insertion rule")
    return hom


def _encode(u, factors, q_t, classes):
    sp = _self_product(u, factors)
    _, cok, _, cod_tc, _, _ = _cover_data(u)
    amb = sp.target.ambient
    out = sp.codomain_embedding.apply(cod_tc.inclusion.apply(q_t))
    for slot, g in zip(sp.class_slots, classes):
        out = amb.add(out, slot.apply(cok.group.reduce(g)))
    return out


@dataclass(frozen=True)
class CechSlice:
    """One degree slice of the augmented Cech complex of a cover."""

    degree: tuple
    complex: PrimeFieldComplex
    augmentation_dimension: int
    cohomology: tuple


def cech_slice_data(u: mo.MonoidHom, ell: int, q, length: int):
    """Terms and differentials of one degree slice, without rank work.

    Returns (augmentation dimension, PrimeFieldComplex) for the slice over
    the codomain element q, terms indexed 0..length, cofaces generated from
    the self-product insertions.  Useful when many degrees share a slice
    shape and only one representative needs its cohomology computed.
    """
    if not _is_prime(ell):
        raise ValueError("the characteristic must be prime")
    if length < 1:
        raise ValueError("need at least two terms to form a differential")
    h, cok, dom_tc, cod_tc, galois, classes = _cover_data(u)
    if galois.order % ell == 0:
        raise ValueError("the characteristic divides the cover order")
    q = u.codomain.ambient.reduce(tuple(q))

    in_cover = mo.membership(u.codomain, q) is not None
    if not in_cover:
        dims = (0,) * (length + 1)
        return 0, PrimeFieldComplex(ell, dims, tuple(() for _ in range(length)))

    q_t = cod_tc.to_tight(q)
    lift = zl.hom_preimage(h, q_t)
    aug_dim = 1 if lift is not None and mo.membership(dom_tc.monoid, lift) else 0

    bases = []
    indexes = []
    for j in range(length + 1):
        basis = list(itertools.product(classes, repeat=j))
        index = {}
        for pos, g in enumerate(basis):
            index[_encode(u, j + 1, q_t, g)] = pos
        bases.append(basis)
        indexes.append(index)

    diffs = []
    for j in range(length):
        rows = len(bases[j + 1])
        cols = len(bases[j])
        mtx = [[0] * cols for _ in range(rows)]
        for col, g in enumerate(bases[j]):
            x = _encode(u, j + 1, q_t, g)
            for c in range(1, j + 3):
                y = _coface_hom(u, j + 1, c).apply(x)
                row = indexes[j + 1].get(y)
                if row is None:
                    raise AssertionError("a coface left the degree slice")
                sign = 1 if (c - 1) % 2 == 0 else -1
                mtx[row][col] = (mtx[row][col] + sign) % ell
        diffs.append(tuple(tuple(r) for r in mtx))

    return aug_dim, PrimeFieldComplex(
        ell, tuple(len(b) for b in bases), tuple(diffs)
    )


def cech_complex_degreewise(u: mo.MonoidHom, ell: int, q, length: int) -> CechSlice:
    """Degree slice of the Cech complex of a Kummer cover, with checks.

    Builds the terms indexed 0..length of the slice over the codomain
    element q, with cofaces generated from the self-product insertions,
    and asserts exactness of the augmented complex in every degree the
    truncation can see.  Reported cohomology covers degrees up to
    length-1 and refers to the unaugmented complex.
    """
    aug_dim, cx = cech_slice_data(u, ell, q, length)
    q = u.codomain.ambient.reduce(tuple(q))
    if cx.dims[0] == 0:
        return CechSlice(q, cx, 0, (0,) * length)
    diffs = cx.differentials

    ranks = [cx.rank(j) for j in range(length)]
    if aug_dim:
        if any(diffs[0][r][0] % cx.characteristic for r in range(cx.dims[1])):
            raise AssertionError("the augmentation fails to land in the kernel")
    coh = []
    for j in range(length):
        below = ranks[j - 1] if j else 0
        coh.append(cx.dims[j] - ranks[j] - below)
    if coh[0] != aug_dim:
        raise AssertionError(
            f"augmented complex is inexact in degree 0 at slice {q}"
        )
    for j in range(1, length):
        if coh[j]:
            raise AssertionError(
                f"augmented complex is inexact in degree {j} at slice {q}"
            )
    return CechSlice(q, cx, aug_dim, tuple(coh))


@dataclass(frozen=True)
class CechGroupComparison:
    """Per-class Cech dimensions against group cohomology."""

    group_dimensions: tuple
    class_results: tuple
    totals: tuple
    normalized: tuple
    truncation_points: int
    match: bool


def cech_vs_group_cohomology(
    u: mo.MonoidHom, ell: int, max_degree: int, bound: int = 6
) -> CechGroupComparison:
    """Compare sliced Cech cohomology with group cohomology of the cover.

    Codomain elements are enumerated in a coordinate box and grouped by
    their class in the Galois group; one slice is computed per class and
    checked to be stable under translation by a base element, so the box
    total is the class count times the class answer.  The normalized
    answer is the trivial class's dimension vector, to be compared with
    the group cohomology of the Galois group with trivial coefficients.
    """
    h, cok, dom_tc, cod_tc, galois, classes = _cover_data(u)
    if galois.order % ell == 0:
        raise ValueError("the characteristic divides the cover order")
    amb = u.codomain.ambient
    free = amb.free_rank
    points = []
    axes = [range(-bound, bound + 1)] * free + [range(d) for d in amb.torsion]
    for x in itertools.product(*axes):
        v = amb.reduce(x)
        if mo.membership(u.codomain, v) is not None:
            points.append(v)
    by_class = {}
    for v in sorted(points):
        cls = cok.image(cod_tc.to_tight(v))
        by_class.setdefault(cls, []).append(v)

    shift = amb.zero()
    for w in u.gen_images:
        shift = amb.add(shift, w)

    length = max_degree + 1
    class_results = []
    totals = [0] * (max_degree + 1)
    normalized = None
    consistent = True
    for cls in sorted(by_class):
        members = by_class[cls]
        rep = members[0]
        slice_here = cech_complex_degreewise(u, ell, rep, length)
        if shift != amb.zero():
            deeper = cech_complex_degreewise(u, ell, amb.add(rep, shift), length)
            if deeper.cohomology != slice_here.cohomology:
                consistent = False
        dims = slice_here.cohomology[: max_degree + 1]
        class_results.append((cls, len(members), dims))
        for i, d in enumerate(dims):
            totals[i] += d * len(members)
        if cls == cok.group.zero():
            normalized = dims

    group_dims = finite_group_cohomology(galois, ell, max_degree)
    vanishing = all(
        all(d == 0 for d in dims)
        for cls, _, dims in class_results
        if cls != cok.group.zero()
    )
    match = (
        consistent
        and normalized is not None
        and tuple(normalized) == tuple(group_dims)
        and vanishing
    )
    return CechGroupComparison(
        group_dimensions=tuple(group_dims),
        class_results=tuple(class_results),
        totals=tuple(totals),
        normalized=tuple(normalized) if normalized is not None else (),
        truncation_points=len(points),
        match=match,
    )


# ---------------------------------------------------------------------------
# Koszul complexes and the polydisc count


@dataclass(frozen=True)
class CharacterDatum:
    """A character of the n-torus action at a finite level.

    Exponents are fractions with the fixed level as denominator, stored
    by their numerators in [0, level); the field must contain a primitive
    root of unity of that level, and the chosen one is validated.
    """

    n: int
    level: int
    numerators: tuple
    ell: int
    zeta: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("the number of circle factors must be nonnegative")
        if self.level < 1:
            raise ValueError("the level must be positive")
        nums = tuple(int(x) for x in self.numerators)
        if len(nums) != self.n or any(x < 0 or x >= self.level for x in nums):
            raise ValueError("need one numerator in [0, level) per factor")
        object.__setattr__(self, "numerators", nums)
        if not _is_prime(self.ell):
            raise ValueError("the field characteristic must be prime")
        if (self.ell - 1) % self.level:
            raise ValueError("the field has no elements of the required order")
        z = self.zeta % self.ell
        if pow(z, self.level, self.ell) != 1:
            raise ValueError("the chosen root does not have the stated level")
        for d in range(1, self.level):
            if self.level % d == 0 and pow(z, d, self.ell) == 1:
                raise ValueError("the chosen root is not primitive")
        object.__setattr__(self, "zeta", z)


def smallest_field_with_level(level: int):
    """Smallest prime with a primitive root of the level, and one root."""
    if level < 1:
        raise ValueError("the level must be positive")
    ell = level + 1
    while True:
        if _is_prime(ell) and (ell - 1) % level == 0:
            break
        ell += 1
    for z in range(1, ell):
        if pow(z, level, ell) == 1 and all(
            pow(z, d, ell) != 1 for d in range(1, level) if level % d == 0
        ):
            return ell, z
    raise AssertionError("a prime field of matching order always has a root")


def koszul_complex(scalars, ell: int) -> PrimeFieldComplex:
    """Koszul complex of commuting scalars on a one-dimensional space."""
    if not _is_prime(ell):
        raise ValueError("the characteristic must be prime")
    lam = [int(s) % ell for s in scalars]
    n = len(lam)
    bases = [list(itertools.combinations(range(n), i)) for i in range(n + 1)]
    index = [{s: p for p, s in enumerate(b)} for b in bases]
    diffs = []
    for i in range(n):
        mtx = [[0] * len(bases[i]) for _ in range(len(bases[i + 1]))]
        for col, subset in enumerate(bases[i]):
            for k in range(n):
                if k in subset:
                    continue
                bigger = tuple(sorted(subset + (k,)))
                sign = -1 if sum(1 for s in subset if s < k) % 2 else 1
                row = index[i + 1][bigger]
                mtx[row][col] = (mtx[row][col] + sign * lam[k]) % ell
        diffs.append(tuple(tuple(r) for r in mtx))
    return PrimeFieldComplex(ell, tuple(len(b) for b in bases), tuple(diffs))


def koszul_cohomology(cd: CharacterDatum, max_degree: int) -> tuple:
    """Cohomology dimensions of the character's Koszul complex.

    The scalars are the root raised to each numerator, minus one; the
    zero character keeps every binomial dimension and any other character
    kills the whole complex.
    """
    if max_degree < 0:
        raise ValueError("the degree bound must be nonnegative")
    scalars = [
        (pow(cd.zeta, num, cd.ell) - 1) % cd.ell for num in cd.numerators
    ]
    cx = koszul_complex(scalars, cd.ell)
    dims = cx.cohomology_dimensions()
    out = [dims[i] if i < len(dims) else 0 for i in range(max_degree + 1)]
    return tuple(out)


def polydisc_cohomology(n: int, level: int, ell: int = None) -> tuple:
    """Total dimensions over the character grid of a fixed level.

    Sums the Koszul cohomology over all characters with denominator
    dividing the level and asserts that only the zero character
    contributes, leaving the binomial dimensions.
    """
    if n < 0:
        raise ValueError("the number of circle factors must be nonnegative")
    if ell is None:
        ell, zeta = smallest_field_with_level(level)
    else:
        if not _is_prime(ell) or (ell - 1) % level:
            raise ValueError("the field has no elements of the required order")
        for z in range(1, ell):
            if pow(z, level, ell) == 1 and all(
                pow(z, d, ell) != 1 for d in range(1, level) if level % d == 0
            ):
                zeta = z
                break
        else:
            raise ValueError("the field has no primitive root of the level")
    totals = [0] * (n + 1)
    for nums in itertools.product(range(level), repeat=n):
        cd = CharacterDatum(n, level, nums, ell, zeta)
        dims = koszul_cohomology(cd, n)
        if any(nums) and any(dims):
            raise AssertionError("a nonzero character contributed cohomology")
        for i, d in enumerate(dims):
            totals[i] += d
    for i in range(n + 1):
        if totals[i] != comb(n, i):
            raise AssertionError("the character sum missed a binomial dimension")
    return tuple(totals)
